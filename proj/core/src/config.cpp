#include "xfem/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "xfem/mesh_io.hpp"

namespace xfem {

bool MeshSpec::operator==(const MeshSpec& o) const {
  auto same_holes = [&] {
    if (holes.size() != o.holes.size()) return false;
    for (std::size_t i = 0; i < holes.size(); ++i)
      if (holes[i].center != o.holes[i].center || holes[i].radius != o.holes[i].radius) return false;
    return true;
  };
  if (source != o.source || domain != o.domain) return false;
  switch (source) {
    case MeshSource::File:
      return path == o.path;
    case MeshSource::GradedPlate:
      return fine_zone == o.fine_zone && fine_size == o.fine_size && growth == o.growth && max_size == o.max_size &&
             anchor == o.anchor && anchor_mode == o.anchor_mode;
    case MeshSource::HoledPlate:
      return cell_size == o.cell_size && same_holes();
  }
  return false;
}

bool RunConfig::operator==(const RunConfig& o) const {
  return mesh == o.mesh && material == o.material && cracks == o.cracks && bcs == o.bcs &&
         quad_standard == o.quad_standard && quad_heaviside == o.quad_heaviside && quad_tip == o.quad_tip &&
         delta == o.delta && tip_enrichment == o.tip_enrichment && contour == o.contour &&
         propagation == o.propagation && load_factors == o.load_factors && output == o.output && sweep == o.sweep &&
         ladder == o.ladder;
}

Mesh build_mesh(const MeshSpec& spec) {
  switch (spec.source) {
    case MeshSource::File:
      return load_mesh_file(spec.path);
    case MeshSource::GradedPlate: {
      const auto& d = spec.domain;
      const auto& f = spec.fine_zone;
      const double max_size = spec.max_size > 0.0 ? spec.max_size : std::numeric_limits<double>::infinity();
      AxisGrading gx{d[0], d[1], f[0], f[1], spec.fine_size, spec.growth, max_size, spec.anchor.x(),
                     spec.anchor_mode[0]};
      AxisGrading gy{d[2], d[3], f[2], f[3], spec.fine_size, spec.growth, max_size, spec.anchor.y(),
                     spec.anchor_mode[1]};
      return graded_plate(gx, gy);
    }
    case MeshSource::HoledPlate: {
      const auto& d = spec.domain;
      return holed_plate(d[0], d[1], d[2], d[3], spec.cell_size, spec.holes);
    }
  }
  throw ValidationError("config", "unknown mesh source");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  std::string name;  // "crack", "bc", ...
  std::string arg;   // id or tag
  int line = 0;
  std::map<std::string, Entry> keys;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("config", "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& s, int line) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
    fail(line, "invalid number '" + s + "'");
  return v;
}

long to_int(const std::string& s, int line) {
  long v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail(line, "invalid integer '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, int line) {
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  fail(line, "invalid boolean '" + s + "'");
}

std::vector<double> numbers(const std::string& s, int line) {
  std::vector<double> out;
  for (const auto& w : words(s)) out.push_back(to_double(w, line));
  return out;
}

template <std::size_t N>
std::array<double, N> fixed_numbers(const std::string& s, int line) {
  const auto v = numbers(s, line);
  if (v.size() != N) fail(line, "expected " + std::to_string(N) + " numbers");
  std::array<double, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

class Reader {
 public:
  explicit Reader(Section& s) : s_(s) {}
  const Entry* get(const std::string& key) {
    auto it = s_.keys.find(key);
    if (it == s_.keys.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }
  const Entry& require(const std::string& key) {
    const Entry* e = get(key);
    if (!e) fail(s_.line, "section [" + label() + "] requires '" + key + "'");
    return *e;
  }
  template <class F>
  void opt(const std::string& key, F&& f) {
    if (const Entry* e = get(key)) f(e->value, e->line);
  }
  void done() const {
    for (const auto& [k, e] : s_.keys)
      if (!e.used) fail(e.line, "unknown key '" + k + "' in [" + label() + "]");
  }
  std::string label() const { return s_.arg.empty() ? s_.name : s_.name + " " + s_.arg; }

 private:
  Section& s_;
};

std::vector<Section> tokenize(std::string_view doc) {
  std::vector<Section> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    const auto nl = doc.find('\n', pos);
    const auto raw = doc.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? doc.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      const auto w = words(line.substr(1, line.size() - 2));
      if (w.empty() || w.size() > 2) fail(line_no, "malformed section header");
      Section s{w[0], w.size() == 2 ? w[1] : std::string(), line_no, {}};
      out.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    if (out.empty()) fail(line_no, "key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (!out.back().keys.emplace(key, Entry{value, line_no}).second) fail(line_no, "duplicate key '" + key + "'");
  }
  return out;
}

void parse_mesh(Section& sec, MeshSpec& m, const std::filesystem::path& base) {
  Reader r(sec);
  if (const Entry* p = r.get("path")) {
    m.source = MeshSource::File;
    std::filesystem::path path = p->value;
    m.path = path.is_absolute() ? path : base / path;
    if (!std::filesystem::exists(m.path)) fail(p->line, "mesh file '" + m.path.string() + "' not found");
    r.done();
    return;
  }
  const Entry& g = r.require("generator");
  const Entry& d = r.require("domain");
  m.domain = fixed_numbers<4>(d.value, d.line);
  if (!(m.domain[1] > m.domain[0] && m.domain[3] > m.domain[2])) fail(d.line, "empty domain");
  if (g.value == "graded_plate") {
    m.source = MeshSource::GradedPlate;
    const Entry& fs = r.require("fine_size");
    m.fine_size = to_double(fs.value, fs.line);
    if (m.fine_size <= 0.0) fail(fs.line, "fine_size must be positive");
    m.fine_zone = m.domain;
    r.opt("fine_zone", [&](const std::string& v, int l) { m.fine_zone = fixed_numbers<4>(v, l); });
    r.opt("growth", [&](const std::string& v, int l) {
      m.growth = to_double(v, l);
      if (m.growth < 1.0) fail(l, "growth must be >= 1");
    });
    r.opt("max_size", [&](const std::string& v, int l) { m.max_size = to_double(v, l); });
    r.opt("anchor", [&](const std::string& v, int l) {
      const auto a = fixed_numbers<2>(v, l);
      m.anchor = Vec2(a[0], a[1]);
    });
    r.opt("anchor_mode", [&](const std::string& v, int l) {
      const auto w = words(v);
      if (w.size() != 2) fail(l, "anchor_mode needs two values");
      for (int k = 0; k < 2; ++k) {
        if (w[k] == "node") m.anchor_mode[k] = AnchorMode::Node;
        else if (w[k] == "cell") m.anchor_mode[k] = AnchorMode::CellCenter;
        else fail(l, "anchor_mode must be 'node' or 'cell'");
      }
    });
  } else if (g.value == "holed_plate") {
    m.source = MeshSource::HoledPlate;
    const Entry& c = r.require("cell_size");
    m.cell_size = to_double(c.value, c.line);
    if (m.cell_size <= 0.0) fail(c.line, "cell_size must be positive");
    r.opt("holes", [&](const std::string& v, int l) {
      for (const auto& h : split(v, ';')) {
        if (h.empty()) continue;
        const auto a = fixed_numbers<3>(h, l);
        if (a[2] <= 0.0) fail(l, "hole radius must be positive");
        m.holes.push_back({Vec2(a[0], a[1]), a[2]});
      }
    });
  } else {
    fail(g.line, "unknown generator '" + g.value + "'");
  }
  r.done();
}

void parse_material(Section& sec, Material& mat) {
  Reader r(sec);
  const Entry& e = r.require("E");
  const Entry& nu = r.require("nu");
  mat.E = to_double(e.value, e.line);
  mat.nu = to_double(nu.value, nu.line);
  if (!(mat.E > 0.0)) fail(e.line, "E must be positive");
  if (!(mat.nu > -1.0 && mat.nu < 0.5)) fail(nu.line, "nu must lie in (-1, 0.5)");
  r.opt("plane_state", [&](const std::string& v, int l) {
    if (v == "strain") mat.state = PlaneState::Strain;
    else if (v == "stress") mat.state = PlaneState::Stress;
    else fail(l, "plane_state must be 'strain' or 'stress'");
  });
  r.opt("body_force", [&](const std::string& v, int l) {
    const auto a = fixed_numbers<2>(v, l);
    mat.body_force = Vec2(a[0], a[1]);
  });
  r.done();
}

CrackSpec parse_crack(Section& sec) {
  Reader r(sec);
  CrackSpec c;
  c.id = static_cast<int>(to_int(sec.arg, sec.line));
  const Entry& v = r.require("vertices");
  for (const auto& p : split(v.value, ';')) {
    if (p.empty()) continue;
    const auto a = fixed_numbers<2>(p, v.line);
    c.vertices.emplace_back(a[0], a[1]);
  }
  r.opt("tips", [&](const std::string& s, int l) {
    const auto w = words(s);
    if (w.size() != 2) fail(l, "tips needs two values");
    for (int k = 0; k < 2; ++k) {
      if (w[k] == "active") c.tips[k] = true;
      else if (w[k] == "inactive") c.tips[k] = false;
      else fail(l, "tip state must be 'active' or 'inactive'");
    }
  });
  try {
    CrackPath(c.id, c.vertices, c.tips);
  } catch (const Error& e) {
    fail(v.line, e.what());
  }
  r.done();
  return c;
}

BoundaryCondition parse_bc(Section& sec) {
  Reader r(sec);
  BoundaryCondition bc;
  bc.tag = sec.arg;
  const Entry& t = r.require("type");
  if (t.value == "fixed") bc.type = BcType::Fixed;
  else if (t.value == "displacement") bc.type = BcType::Displacement;
  else if (t.value == "traction") bc.type = BcType::Traction;
  else fail(t.line, "bc type must be fixed, displacement or traction");
  r.opt("value", [&](const std::string& s, int l) {
    if (bc.type == BcType::Fixed) fail(l, "fixed conditions take no value");
    const auto w = words(s);
    if (w.size() != 2) fail(l, "value needs two components");
    for (int k = 0; k < 2; ++k)
      if (w[k] != "free") bc.value[k] = to_double(w[k], l);
  });
  if (bc.type != BcType::Fixed && !bc.value[0] && !bc.value[1] && !sec.keys.count("value"))
    fail(sec.line, "[bc " + sec.arg + "] requires 'value'");
  r.opt("scaled", [&](const std::string& s, int l) { bc.scaled = to_bool(s, l); });
  r.done();
  return bc;
}

}  // namespace

RunConfig parse_config(std::string_view document, const std::filesystem::path& base_dir) {
  auto sections = tokenize(document);
  RunConfig cfg;
  std::set<std::string> seen;
  bool have_mesh = false, have_material = false;
  std::set<int> crack_ids;
  std::set<std::string> bc_tags;

  for (auto& sec : sections) {
    const bool repeatable = sec.name == "crack" || sec.name == "bc";
    if (!repeatable) {
      if (!sec.arg.empty()) fail(sec.line, "section [" + sec.name + "] takes no argument");
      if (!seen.insert(sec.name).second) fail(sec.line, "duplicate section [" + sec.name + "]");
    } else if (sec.arg.empty()) {
      fail(sec.line, "section [" + sec.name + "] needs an identifier");
    }
    Reader r(sec);
    if (sec.name == "mesh") {
      parse_mesh(sec, cfg.mesh, base_dir);
      have_mesh = true;
    } else if (sec.name == "material") {
      parse_material(sec, cfg.material);
      have_material = true;
    } else if (sec.name == "crack") {
      CrackSpec c = parse_crack(sec);
      if (!crack_ids.insert(c.id).second) fail(sec.line, "duplicate crack id " + sec.arg);
      cfg.cracks.push_back(std::move(c));
    } else if (sec.name == "bc") {
      if (!bc_tags.insert(sec.arg).second) fail(sec.line, "duplicate bc for tag '" + sec.arg + "'");
      cfg.bcs.push_back(parse_bc(sec));
    } else if (sec.name == "quadrature") {
      auto q = [&](const char* key, int& out) {
        r.opt(key, [&](const std::string& v, int l) {
          out = static_cast<int>(to_int(v, l));
          if (out < 1) fail(l, std::string(key) + " must be positive");
        });
      };
      q("standard", cfg.quad_standard);
      q("heaviside", cfg.quad_heaviside);
      q("tip", cfg.quad_tip);
      r.done();
    } else if (sec.name == "enrichment") {
      r.opt("delta", [&](const std::string& v, int l) {
        cfg.delta = to_double(v, l);
        if (!(cfg.delta >= 0.0 && cfg.delta < 0.5)) fail(l, "delta must lie in [0, 0.5)");
      });
      r.opt("tip_enrichment", [&](const std::string& v, int l) { cfg.tip_enrichment = to_bool(v, l); });
      r.done();
    } else if (sec.name == "contour") {
      r.opt("radius", [&](const std::string& v, int l) {
        const auto w = words(v);
        if (w.empty()) fail(l, "empty radius rule");
        if (w[0] == "auto" && w.size() == 1) {
          cfg.contour.rule = RadiusRule::Auto;
          return;
        }
        if (w.size() != 2) fail(l, "radius must be auto, fixed R, factor f or elements k");
        if (w[0] == "fixed") cfg.contour.rule = RadiusRule::Fixed;
        else if (w[0] == "factor") cfg.contour.rule = RadiusRule::Factor;
        else if (w[0] == "elements") cfg.contour.rule = RadiusRule::Elements;
        else fail(l, "unknown radius rule '" + w[0] + "'");
        cfg.contour.value = to_double(w[1], l);
        if (cfg.contour.value <= 0.0) fail(l, "radius parameter must be positive");
      });
      r.opt("n_points", [&](const std::string& v, int l) {
        cfg.contour.n_points = static_cast<int>(to_int(v, l));
        if (cfg.contour.n_points < 32) fail(l, "n_points must be at least 32");
      });
      r.done();
    } else if (sec.name == "propagation") {
      PropagationParams p;
      const Entry& da = r.require("delta_a");
      p.delta_a = to_double(da.value, da.line);
      if (p.delta_a <= 0.0) fail(da.line, "delta_a must be positive");
      const Entry& mi = r.require("max_increments");
      const long n = to_int(mi.value, mi.line);
      if (n < 1) fail(mi.line, "max_increments must be positive");
      p.max_increments = static_cast<std::size_t>(n);
      r.opt("K_IC", [&](const std::string& v, int l) {
        p.K_IC = to_double(v, l);
        if (*p.K_IC <= 0.0) fail(l, "K_IC must be positive");
      });
      cfg.propagation = p;
      r.done();
    } else if (sec.name == "schedule") {
      const Entry* lf = r.get("load_factors");
      const Entry* st = r.get("steps");
      if (lf && st) fail(st->line, "give either load_factors or steps");
      if (lf) {
        cfg.load_factors = numbers(lf->value, lf->line);
        if (cfg.load_factors.empty()) fail(lf->line, "empty load_factors");
        for (std::size_t i = 0; i < cfg.load_factors.size(); ++i) {
          if (cfg.load_factors[i] <= 0.0) fail(lf->line, "load factors must be positive");
          if (i > 0 && cfg.load_factors[i] < cfg.load_factors[i - 1]) fail(lf->line, "load factors must be monotone");
        }
      } else if (st) {
        const long n = to_int(st->value, st->line);
        if (n < 1) fail(st->line, "steps must be positive");
        cfg.load_factors.clear();
        for (long i = 1; i <= n; ++i) cfg.load_factors.push_back(static_cast<double>(i) / static_cast<double>(n));
      }
      r.done();
    } else if (sec.name == "output") {
      r.opt("directory", [&](const std::string& v, int) { cfg.output.directory = v; });
      r.opt("sif", [&](const std::string& v, int l) { cfg.output.sif = to_bool(v, l); });
      r.opt("cod", [&](const std::string& v, int l) { cfg.output.cod = to_bool(v, l); });
      r.opt("vtk", [&](const std::string& v, int l) { cfg.output.vtk = to_bool(v, l); });
      r.opt("log", [&](const std::string& v, int l) { cfg.output.log = to_bool(v, l); });
      r.opt("cod_samples", [&](const std::string& v, int l) {
        const long n = to_int(v, l);
        if (n < 2) fail(l, "cod_samples must be at least 2");
        cfg.output.cod_samples = static_cast<std::size_t>(n);
      });
      r.done();
    } else if (sec.name == "sweep") {
      const Entry& a = r.require("a_over_s");
      cfg.sweep.a_over_s = numbers(a.value, a.line);
      for (double v : cfg.sweep.a_over_s)
        if (v <= 0.0) fail(a.line, "a_over_s values must be positive");
      const Entry& h = r.require("half_length");
      cfg.sweep.half_length = to_double(h.value, h.line);
      if (cfg.sweep.half_length <= 0.0) fail(h.line, "half_length must be positive");
      r.done();
    } else if (sec.name == "ladder") {
      const Entry& s = r.require("element_sizes");
      cfg.ladder.element_sizes = numbers(s.value, s.line);
      if (cfg.ladder.element_sizes.size() < 3) fail(s.line, "ladder needs at least three sizes");
      for (double v : cfg.ladder.element_sizes)
        if (v <= 0.0) fail(s.line, "element sizes must be positive");
      r.opt("region", [&](const std::string& v, int l) { cfg.ladder.region = fixed_numbers<4>(v, l); });
      r.done();
    } else {
      fail(sec.line, "unknown section [" + sec.name + "]");
    }
  }
  if (!have_mesh) throw ValidationError("config", "missing required section [mesh]");
  if (!have_material) throw ValidationError("config", "missing required section [material]");
  if (cfg.bcs.empty()) throw ValidationError("config", "at least one [bc <tag>] section is required");

  Mesh mesh = [&] {
    try {
      return build_mesh(cfg.mesh);
    } catch (const Error& e) {
      throw ValidationError("config", std::string("mesh: ") + e.what());
    }
  }();
  for (const auto& bc : cfg.bcs)
    if (!mesh.has_tag(bc.tag)) throw ValidationError("config", "boundary tag '" + bc.tag + "' not found in mesh");
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("config", "cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string nums(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + num(v[i]);
  return s;
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::string s;
  const auto& m = c.mesh;
  s += "[mesh]\n";
  switch (m.source) {
    case MeshSource::File:
      s += "path = " + m.path.string() + "\n";
      break;
    case MeshSource::GradedPlate:
      s += "generator = graded_plate\ndomain = " + nums(m.domain) + "\n";
      s += "fine_zone = " + nums(m.fine_zone) + "\nfine_size = " + num(m.fine_size) + "\n";
      s += "growth = " + num(m.growth) + "\nmax_size = " + num(m.max_size) + "\n";
      s += "anchor = " + num(m.anchor.x()) + " " + num(m.anchor.y()) + "\n";
      s += "anchor_mode =";
      for (auto a : m.anchor_mode) s += a == AnchorMode::Node ? " node" : " cell";
      s += "\n";
      break;
    case MeshSource::HoledPlate:
      s += "generator = holed_plate\ndomain = " + nums(m.domain) + "\ncell_size = " + num(m.cell_size) + "\n";
      if (!m.holes.empty()) {
        s += "holes =";
        for (std::size_t i = 0; i < m.holes.size(); ++i) {
          const auto& h = m.holes[i];
          s += (i ? " ; " : " ") + num(h.center.x()) + " " + num(h.center.y()) + " " + num(h.radius);
        }
        s += "\n";
      }
      break;
  }
  const auto& mat = c.material;
  s += "\n[material]\nE = " + num(mat.E) + "\nnu = " + num(mat.nu) + "\n";
  s += std::string("plane_state = ") + (mat.state == PlaneState::Strain ? "strain" : "stress") + "\n";
  s += "body_force = " + num(mat.body_force.x()) + " " + num(mat.body_force.y()) + "\n";
  for (const auto& cr : c.cracks) {
    s += "\n[crack " + std::to_string(cr.id) + "]\nvertices =";
    for (std::size_t i = 0; i < cr.vertices.size(); ++i)
      s += (i ? " ; " : " ") + num(cr.vertices[i].x()) + " " + num(cr.vertices[i].y());
    s += std::string("\ntips = ") + (cr.tips[0] ? "active" : "inactive") + " " + (cr.tips[1] ? "active" : "inactive") +
         "\n";
  }
  for (const auto& bc : c.bcs) {
    s += "\n[bc " + bc.tag + "]\ntype = ";
    s += bc.type == BcType::Fixed ? "fixed" : bc.type == BcType::Displacement ? "displacement" : "traction";
    s += "\n";
    if (bc.type != BcType::Fixed) {
      s += "value =";
      for (const auto& v : bc.value) s += v ? " " + num(*v) : std::string(" free");
      s += "\n";
    }
    s += std::string("scaled = ") + flag(bc.scaled) + "\n";
  }
  s += "\n[quadrature]\nstandard = " + std::to_string(c.quad_standard) + "\nheaviside = " +
       std::to_string(c.quad_heaviside) + "\ntip = " + std::to_string(c.quad_tip) + "\n";
  s += "\n[enrichment]\ndelta = " + num(c.delta) + "\ntip_enrichment = " + flag(c.tip_enrichment) + "\n";
  s += "\n[contour]\nradius = ";
  switch (c.contour.rule) {
    case RadiusRule::Auto: s += "auto"; break;
    case RadiusRule::Fixed: s += "fixed " + num(c.contour.value); break;
    case RadiusRule::Factor: s += "factor " + num(c.contour.value); break;
    case RadiusRule::Elements: s += "elements " + num(c.contour.value); break;
  }
  s += "\nn_points = " + std::to_string(c.contour.n_points) + "\n";
  if (c.propagation) {
    const auto& p = *c.propagation;
    s += "\n[propagation]\ndelta_a = " + num(p.delta_a) + "\nmax_increments = " + std::to_string(p.max_increments) +
         "\n";
    if (p.K_IC) s += "K_IC = " + num(*p.K_IC) + "\n";
  }
  s += "\n[schedule]\nload_factors = " + nums(c.load_factors) + "\n";
  const auto& o = c.output;
  s += "\n[output]\ndirectory = " + o.directory.string() + "\nsif = " + flag(o.sif) + "\ncod = " + flag(o.cod) +
       "\nvtk = " + flag(o.vtk) + "\nlog = " + flag(o.log) + "\ncod_samples = " + std::to_string(o.cod_samples) +
       "\n";
  if (!c.sweep.a_over_s.empty())
    s += "\n[sweep]\na_over_s = " + nums(c.sweep.a_over_s) + "\nhalf_length = " + num(c.sweep.half_length) + "\n";
  if (!c.ladder.element_sizes.empty()) {
    s += "\n[ladder]\nelement_sizes = " + nums(c.ladder.element_sizes) + "\n";
    if (c.ladder.region) s += "region = " + nums(*c.ladder.region) + "\n";
  }
  return s;
}

}  // namespace xfem
