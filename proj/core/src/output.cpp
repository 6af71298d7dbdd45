#include "xfem/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace xfem {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("output", "cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ValidationError("output", "failed writing '" + path.string() + "'");
}

RunHistory stationary_history(const StationaryResult& result) {
  RunHistory h;
  StepRecord rec;
  rec.load_factor = result.state.load_factor;
  rec.cracks = result.cracks;
  rec.sifs = result.sifs;
  rec.diagnostics = result.diagnostics;
  h.steps.push_back(std::move(rec));
  h.final_state = result.state;
  h.final_cracks = result.cracks;
  return h;
}

std::string sif_csv(const RunHistory& history) {
  std::string out = "step,load_factor,crack_id,tip_id,K_I,K_II,J,theta_c_deg,a_eff\n";
  for (const auto& step : history.steps) {
    for (const auto& s : step.sifs) {
      out += std::to_string(step.step) + "," + fmt(step.load_factor) + "," + std::to_string(s.crack_id) + "," +
             std::to_string(tip_index(s.tip)) + "," + fmt(s.K_I) + "," + fmt(s.K_II) + "," + fmt(s.J) + "," +
             fmt(s.theta_c * 180.0 / kPi) + "," + fmt(s.a_eff) + "\n";
    }
  }
  return out;
}

void write_sif_csv(const RunHistory& history, const std::filesystem::path& path) {
  if (history.steps.empty()) throw ValidationError("output", "empty run history");
  write_text(path, sif_csv(history));
}

std::string cod_csv(const std::vector<CodProfile>& profiles) {
  std::string out = "step,crack_id,s,x,y,opening\n";
  for (const auto& p : profiles) {
    for (const auto& s : p.samples) {
      out += std::to_string(p.step) + "," + std::to_string(p.crack_id) + "," + fmt(s.s) + "," + fmt(s.x.x()) + "," +
             fmt(s.x.y()) + "," + fmt(s.opening) + "\n";
    }
  }
  return out;
}

void write_cod_csv(const std::vector<CodProfile>& profiles, const std::filesystem::path& path) {
  write_text(path, cod_csv(profiles));
}

namespace {

struct Cell {
  std::vector<std::size_t> points;
  Voigt stress = Voigt::Zero();
};

// Entry and exit of the crack chord through a cut element, as
// (edge index, point) pairs in boundary order.
bool crack_chord(const Mesh& mesh, ElementIndex e, const CrackPath& crack, std::pair<int, Vec2>& entry,
                 std::pair<int, Vec2>& exit) {
  const auto& v = crack.vertices();
  double best_in = std::numeric_limits<double>::infinity();
  double best_out = -1.0;
  double cum = 0.0;
  Vec2 pin, pout;
  for (std::size_t s = 0; s + 1 < v.size(); ++s) {
    const Clip c = clip_segment(mesh, e, v[s], v[s + 1]);
    const double len = (v[s + 1] - v[s]).norm();
    if (c.length > 0.0) {
      if (cum + c.t0 * len < best_in) {
        best_in = cum + c.t0 * len;
        pin = v[s] + c.t0 * (v[s + 1] - v[s]);
      }
      if (cum + c.t1 * len > best_out) {
        best_out = cum + c.t1 * len;
        pout = v[s] + c.t1 * (v[s + 1] - v[s]);
      }
    }
    cum += len;
  }
  if (best_out < 0.0) return false;
  const auto p = mesh.element_coords(e);
  auto edge_of = [&](const Vec2& x) {
    int best = 0;
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
      const double dk = point_segment_distance(x, p[k], p[(k + 1) % 4]);
      if (dk < d) {
        d = dk;
        best = k;
      }
    }
    return std::make_pair(best, d);
  };
  const auto [ein, din] = edge_of(pin);
  const auto [eout, dout] = edge_of(pout);
  const double tol = 1e-6 * mesh.element_size(e);
  if (din > tol || dout > tol || ein == eout) return false;  // crack ends inside: no split
  entry = {ein, pin};
  exit = {eout, pout};
  return true;
}

}  // namespace

std::string field_dump(const Mesh& mesh, const SolutionState& state, const Material& material) {
  const Mat3 D = elasticity_matrix(material);
  std::vector<Vec2> pts(mesh.nodes().begin(), mesh.nodes().end());
  std::vector<Vec2> disp(mesh.node_count());
  for (NodeIndex n = 0; n < mesh.node_count(); ++n) {
    const ElementIndex e = mesh.elements_of_node(n).front();
    const auto& el = mesh.element(e);
    int k = 0;
    while (el[k] != n) ++k;
    disp[n] = evaluate_field(mesh, state, e, Vec2(kQuadCorners[k][0], kQuadCorners[k][1])).u;
  }
  std::vector<Cell> cells;
  std::vector<int> cell_type;
  const QuadratureRule avg_rule = tensor_gauss_rule(2);
  const QuadratureRule side_rule = tensor_gauss_rule(6);

  for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    std::pair<int, Vec2> in, out;
    int crack = -1;
    if (state.map.is_cut(e)) {
      for (int c : state.map.element_cracks(mesh, e)) {
        if (crack_chord(mesh, e, state.map.cracks[c], in, out)) {
          crack = c;
          break;
        }
      }
    }
    if (crack < 0) {
      Cell cell;
      cell.points.assign(el.begin(), el.end());
      double w = 0.0;
      for (std::size_t q = 0; q < avg_rule.size(); ++q) {
        const double wq = avg_rule.weights[q] * mesh.shape_eval(e, avg_rule.points[q]).jacobian_det;
        cell.stress += wq * (D * strain_of(evaluate_field(mesh, state, e, avg_rule.points[q]).grad));
        w += wq;
      }
      cell.stress /= w;
      cells.push_back(std::move(cell));
      cell_type.push_back(9);
      continue;
    }
    const CrackPath& path = state.map.cracks[crack];
    // Boundary walk: polygon from the entry point along the element boundary
    // to the exit point, closed by the chord; then the complementary polygon.
    auto polygon = [&](const std::pair<int, Vec2>& a, const std::pair<int, Vec2>& b) {
      std::vector<std::size_t> ids;
      const int side = heaviside(signed_distance(path, mesh.node(el[(a.first + 1) % 4])));
      auto add_face_point = [&](const Vec2& x) {
        ids.push_back(pts.size());
        pts.push_back(x);
        const auto loc = mesh.inverse_map(e, x);
        disp.push_back(evaluate_field(mesh, state, e, loc.value_or(Vec2::Zero()), {crack, side}).u);
      };
      add_face_point(a.second);
      for (int k = a.first;; k = (k + 1) % 4) {
        ids.push_back(el[(k + 1) % 4]);
        if ((k + 1) % 4 == b.first) break;
      }
      add_face_point(b.second);
      Cell cell;
      cell.points = std::move(ids);
      double w = 0.0;
      for (std::size_t q = 0; q < side_rule.size(); ++q) {
        const Vec2 x = mesh.map_to_physical(e, side_rule.points[q]);
        if (heaviside(signed_distance(path, x)) != side) continue;
        const double wq = side_rule.weights[q] * mesh.shape_eval(e, side_rule.points[q]).jacobian_det;
        cell.stress += wq * (D * strain_of(evaluate_field(mesh, state, e, side_rule.points[q]).grad));
        w += wq;
      }
      if (w > 0.0) cell.stress /= w;
      cells.push_back(std::move(cell));
      cell_type.push_back(7);
    };
    polygon(in, out);
    polygon(out, in);
  }

  std::string s = "# vtk DataFile Version 3.0\nxfem field dump\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  s += "POINTS " + std::to_string(pts.size()) + " double\n";
  for (const auto& p : pts) s += fmt17(p.x()) + " " + fmt17(p.y()) + " 0\n";
  std::size_t total = 0;
  for (const auto& c : cells) total += c.points.size() + 1;
  s += "CELLS " + std::to_string(cells.size()) + " " + std::to_string(total) + "\n";
  for (const auto& c : cells) {
    s += std::to_string(c.points.size());
    for (std::size_t id : c.points) s += " " + std::to_string(id);
    s += "\n";
  }
  s += "CELL_TYPES " + std::to_string(cells.size()) + "\n";
  for (int t : cell_type) s += std::to_string(t) + "\n";
  s += "POINT_DATA " + std::to_string(pts.size()) + "\nVECTORS displacement double\n";
  for (const auto& u : disp) s += fmt17(u.x()) + " " + fmt17(u.y()) + " 0\n";
  s += "CELL_DATA " + std::to_string(cells.size()) + "\n";
  const char* names[] = {"sigma_xx", "sigma_yy", "sigma_xy"};
  for (int k = 0; k < 3; ++k) {
    s += std::string("SCALARS ") + names[k] + " double 1\nLOOKUP_TABLE default\n";
    for (const auto& c : cells) s += fmt17(c.stress(k)) + "\n";
  }
  s += "SCALARS von_mises double 1\nLOOKUP_TABLE default\n";
  for (const auto& c : cells) s += fmt17(von_mises(material, c.stress)) + "\n";
  return s;
}

void write_field_dump(const Mesh& mesh, const SolutionState& state, const Material& material,
                      const std::filesystem::path& path) {
  write_text(path, field_dump(mesh, state, material));
}

std::string run_log(const Mesh& mesh, const RunHistory& history) {
  std::string s;
  s += "nodes=" + std::to_string(mesh.node_count()) + "\n";
  s += "elements=" + std::to_string(mesh.element_count()) + "\n";
  s += "boundary_edges=" + std::to_string(mesh.boundary_edges().size()) + "\n";
  s += "area=" + fmt(mesh.total_area()) + "\n";
  s += "steps=" + std::to_string(history.steps.size()) + "\n";
  for (const auto& st : history.steps) {
    const std::string p = "step." + std::to_string(st.step) + ".";
    const auto& d = st.diagnostics;
    s += p + "load_factor=" + fmt(st.load_factor) + "\n";
    s += p + "heaviside_nodes=" + std::to_string(d.heaviside_nodes) + "\n";
    s += p + "tip_nodes=" + std::to_string(d.tip_nodes) + "\n";
    s += p + "demoted_nodes=" + std::to_string(d.demoted_nodes) + "\n";
    s += p + "cut_elements=" + std::to_string(d.cut_elements) + "\n";
    s += p + "perturbation_rounds=" + std::to_string(d.perturbation_rounds) + "\n";
    s += p + "dofs=" + std::to_string(d.dofs) + "\n";
    s += p + "residual=" + fmt(d.residual) + "\n";
    s += p + "seconds=" + fmt(d.seconds) + "\n";
    for (std::size_t i = 0; i < st.events.size(); ++i) s += p + "event." + std::to_string(i) + "=" + st.events[i] + "\n";
  }
  if (history.aborted) s += "aborted=" + history.abort_reason + "\n";
  return s;
}

}  // namespace xfem
