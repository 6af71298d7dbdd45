#include "xfem/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace xfem {
namespace {

// Tokenizer over non-comment lines that remembers line numbers for errors.
class Reader {
 public:
  explicit Reader(std::string_view doc) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= doc.size()) {
      std::size_t end = doc.find('\n', pos);
      if (end == std::string_view::npos) end = doc.size();
      ++line_no;
      std::string_view line = doc.substr(pos, end - pos);
      pos = end + 1;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string_view::npos || line[first] == '#') continue;
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens_.push_back({std::string(line.substr(i, j - i)), line_no});
        i = j;
      }
      if (end == doc.size()) break;
    }
  }

  bool done() const { return next_ >= tokens_.size(); }
  int line() const { return done() ? (tokens_.empty() ? 0 : tokens_.back().line) : tokens_[next_].line; }

  std::string word(const char* what) {
    if (done()) fail(std::string("unexpected end of document, expected ") + what);
    return tokens_[next_++].text;
  }

  double real(const char* what) {
    const std::string t = word(what);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      --next_;
      fail(std::string("invalid ") + what + " '" + t + "'");
    }
    return v;
  }

  std::size_t count(const char* what) {
    const std::string t = word(what);
    std::size_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      --next_;
      fail(std::string("invalid ") + what + " '" + t + "'");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("mesh", "line " + std::to_string(line()) + ": " + msg);
  }

 private:
  struct Token {
    std::string text;
    int line;
  };
  std::vector<Token> tokens_;
  std::size_t next_ = 0;
};

}  // namespace

Mesh load_mesh(std::string_view document) {
  Reader in(document);
  if (in.word("header") != "xfem-mesh") in.fail("missing 'xfem-mesh' magic");
  if (in.count("version") != 1) in.fail("unsupported mesh format version");
  const std::size_t n_nodes = in.count("node count");
  const std::size_t n_elems = in.count("element count");

  std::vector<Vec2> nodes(n_nodes);
  for (auto& p : nodes) {
    const double x = in.real("x coordinate");
    const double y = in.real("y coordinate");
    p = Vec2(x, y);
  }
  std::vector<Mesh::Element> elements(n_elems);
  for (std::size_t e = 0; e < n_elems; ++e) {
    for (auto& n : elements[e]) {
      n = in.count("node index");
      if (n >= n_nodes) {
        throw ValidationError("mesh", "element " + std::to_string(e) + " references node " + std::to_string(n) +
                                          " but only " + std::to_string(n_nodes) + " nodes exist");
      }
    }
  }
  Mesh::TagMap tags;
  while (!in.done()) {
    if (in.word("boundary block") != "boundary") in.fail("expected 'boundary <name> <count>'");
    const std::string name = in.word("boundary name");
    const std::size_t k = in.count("boundary node count");
    auto& ids = tags[name];
    ids.reserve(ids.size() + k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t n = in.count("boundary node index");
      if (n >= n_nodes) in.fail("boundary '" + name + "' references node " + std::to_string(n) + " out of range");
      ids.push_back(n);
    }
  }
  return Mesh(std::move(nodes), std::move(elements), std::move(tags));
}

Mesh load_mesh_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("mesh", "cannot open mesh file '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_mesh(ss.str());
}

std::string write_mesh(const Mesh& mesh) {
  std::string out = "xfem-mesh 1\n";
  out += std::to_string(mesh.node_count()) + " " + std::to_string(mesh.element_count()) + "\n";
  char buf[96];
  for (const auto& p : mesh.nodes()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    out += buf;
  }
  for (const auto& el : mesh.elements()) {
    out += std::to_string(el[0]) + " " + std::to_string(el[1]) + " " + std::to_string(el[2]) + " " +
           std::to_string(el[3]) + "\n";
  }
  for (const auto& [name, ids] : mesh.boundary_tags()) {
    out += "boundary " + name + " " + std::to_string(ids.size()) + "\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out += std::to_string(ids[i]);
      out += (i + 1 == ids.size() || (i + 1) % 16 == 0) ? "\n" : " ";
    }
  }
  return out;
}

void write_mesh_file(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("output", "cannot write mesh file '" + path.string() + "'");
  f << write_mesh(mesh);
}

}  // namespace xfem
