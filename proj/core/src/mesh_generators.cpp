#include "xfem/mesh_generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xfem {
namespace {

// Spacings growing from h0 until they cover `length`, rescaled to fit exactly.
std::vector<double> grow(double length, double h0, double growth, double h_max) {
  std::vector<double> h;
  if (length <= 1e-12 * std::max(1.0, h0)) return h;
  double total = 0.0;
  double next = std::min(h0 * growth, h_max);
  while (total + next < length) {
    h.push_back(next);
    total += next;
    next = std::min(next * growth, h_max);
  }
  // Either keep the overshooting step or drop the remainder; pick the closer fit.
  const double with = total + next;
  if (h.empty() || with - length < length - total) {
    h.push_back(next);
    total = with;
  }
  for (double& v : h) v *= length / total;
  return h;
}

}  // namespace

std::vector<double> graded_axis(const AxisGrading& g) {
  if (!(g.hi > g.lo) || !(g.fine_size > 0.0) || !(g.growth >= 1.0) || !(g.max_size >= g.fine_size)) {
    throw ValidationError("mesh", "invalid grading parameters");
  }
  const double flo = std::max(g.lo, g.fine_lo);
  const double fhi = std::min(g.hi, g.fine_hi);
  if (!(fhi > flo)) throw ValidationError("mesh", "fine zone does not overlap the domain");
  const double s = g.fine_size;
  const double shift = g.anchor_mode == AnchorMode::CellCenter ? 0.5 * s : 0.0;
  // Fine nodes: anchor + shift + k s, restricted to the fine zone.
  const double k_lo = std::ceil((flo - g.anchor - shift) / s - 1e-9);
  const double k_hi = std::floor((fhi - g.anchor - shift) / s + 1e-9);
  std::vector<double> fine;
  for (double k = k_lo; k <= k_hi; k += 1.0) fine.push_back(g.anchor + shift + k * s);
  if (fine.size() < 2) throw ValidationError("mesh", "fine zone smaller than one fine cell");

  const double snap = 1e-9 * s;
  std::vector<double> xs;
  // left part
  if (fine.front() - g.lo > snap) {
    auto h = grow(fine.front() - g.lo, s, g.growth, g.max_size);
    double x = fine.front();
    std::vector<double> left;
    for (double v : h) {
      x -= v;
      left.push_back(x);
    }
    left.back() = g.lo;
    xs.assign(left.rbegin(), left.rend());
  } else {
    fine.front() = g.lo;
  }
  xs.insert(xs.end(), fine.begin(), fine.end());
  if (g.hi - fine.back() > snap) {
    auto h = grow(g.hi - fine.back(), s, g.growth, g.max_size);
    double x = fine.back();
    for (double v : h) {
      x += v;
      xs.push_back(x);
    }
    xs.back() = g.hi;
  } else {
    xs.back() = g.hi;
  }
  return xs;
}

Mesh tensor_mesh(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2 || ys.size() < 2) throw ValidationError("mesh", "tensor mesh needs at least 2 coordinates per axis");
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  std::vector<Vec2> nodes;
  nodes.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) nodes.emplace_back(xs[i], ys[j]);
  auto id = [nx](std::size_t i, std::size_t j) { return j * nx + i; };
  std::vector<Mesh::Element> elems;
  elems.reserve((nx - 1) * (ny - 1));
  for (std::size_t j = 0; j + 1 < ny; ++j)
    for (std::size_t i = 0; i + 1 < nx; ++i) elems.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  Mesh::TagMap tags;
  for (std::size_t i = 0; i < nx; ++i) {
    tags["bottom"].push_back(id(i, 0));
    tags["top"].push_back(id(i, ny - 1));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    tags["left"].push_back(id(0, j));
    tags["right"].push_back(id(nx - 1, j));
  }
  tags["bottom_left"] = {id(0, 0)};
  tags["bottom_right"] = {id(nx - 1, 0)};
  tags["top_left"] = {id(0, ny - 1)};
  tags["top_right"] = {id(nx - 1, ny - 1)};
  return Mesh(std::move(nodes), std::move(elems), std::move(tags));
}

Mesh structured_mesh(double x0, double x1, double y0, double y1, std::size_t nx, std::size_t ny) {
  if (nx == 0 || ny == 0) throw ValidationError("mesh", "structured mesh needs at least one cell per axis");
  std::vector<double> xs(nx + 1), ys(ny + 1);
  for (std::size_t i = 0; i <= nx; ++i) xs[i] = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx);
  for (std::size_t j = 0; j <= ny; ++j) ys[j] = y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(ny);
  return tensor_mesh(xs, ys);
}

Mesh graded_plate(const AxisGrading& x, const AxisGrading& y) { return tensor_mesh(graded_axis(x), graded_axis(y)); }

Mesh holed_plate(double x0, double x1, double y0, double y1, double cell, const std::vector<Hole>& holes) {
  const double fx = (x1 - x0) / cell;
  const double fy = (y1 - y0) / cell;
  const auto nx = static_cast<std::size_t>(std::llround(fx));
  const auto ny = static_cast<std::size_t>(std::llround(fy));
  if (nx == 0 || ny == 0 || std::abs(fx - nx) > 1e-6 || std::abs(fy - ny) > 1e-6) {
    throw ValidationError("mesh", "holed plate: domain is not an integer number of cells");
  }
  auto gx = [&](std::size_t i) { return x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx); };
  auto gy = [&](std::size_t j) { return y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(ny); };

  struct Block {
    std::size_t i0, j0, k;  // cell range [i0, i0+k) x [j0, j0+k)
    Hole hole;
  };
  std::vector<Block> blocks;
  std::vector<char> cell_removed(nx * ny, 0);
  for (std::size_t h = 0; h < holes.size(); ++h) {
    const Hole& hole = holes[h];
    const double ci = (hole.center.x() - x0) / cell - 0.5;
    const double cj = (hole.center.y() - y0) / cell - 0.5;
    if (std::abs(ci - std::round(ci)) > 1e-6 || std::abs(cj - std::round(cj)) > 1e-6) {
      throw ValidationError("mesh", "hole " + std::to_string(h + 1) + " centre is not at a cell centre");
    }
    std::size_t k = static_cast<std::size_t>(std::ceil(2.0 * (hole.radius + 2.0 * cell) / cell));
    if (k % 2 == 0) ++k;
    const long i0 = std::lround(ci) - static_cast<long>(k / 2);
    const long j0 = std::lround(cj) - static_cast<long>(k / 2);
    if (i0 < 1 || j0 < 1 || i0 + static_cast<long>(k) > static_cast<long>(nx) - 1 ||
        j0 + static_cast<long>(k) > static_cast<long>(ny) - 1) {
      throw ValidationError("mesh", "hole " + std::to_string(h + 1) + " is too close to the plate edge");
    }
    Block b{static_cast<std::size_t>(i0), static_cast<std::size_t>(j0), k, hole};
    for (std::size_t j = b.j0; j < b.j0 + k; ++j)
      for (std::size_t i = b.i0; i < b.i0 + k; ++i) {
        if (cell_removed[j * nx + i]) throw ValidationError("mesh", "hole blocks overlap");
        cell_removed[j * nx + i] = 1;
      }
    blocks.push_back(b);
  }

  // A grid node survives unless it lies strictly inside a hole block.
  std::vector<std::size_t> grid_id((nx + 1) * (ny + 1), static_cast<std::size_t>(-1));
  std::vector<Vec2> nodes;
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      bool inside = false;
      for (const auto& b : blocks) {
        if (i > b.i0 && i < b.i0 + b.k && j > b.j0 && j < b.j0 + b.k) inside = true;
      }
      if (inside) continue;
      grid_id[j * (nx + 1) + i] = nodes.size();
      nodes.emplace_back(gx(i), gy(j));
    }
  }
  auto gid = [&](std::size_t i, std::size_t j) { return grid_id[j * (nx + 1) + i]; };

  std::vector<Mesh::Element> elems;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      if (!cell_removed[j * nx + i]) elems.push_back({gid(i, j), gid(i + 1, j), gid(i + 1, j + 1), gid(i, j + 1)});

  Mesh::TagMap tags;
  for (std::size_t i = 0; i <= nx; ++i) {
    tags["bottom"].push_back(gid(i, 0));
    tags["top"].push_back(gid(i, ny));
  }
  for (std::size_t j = 0; j <= ny; ++j) {
    tags["left"].push_back(gid(0, j));
    tags["right"].push_back(gid(nx, j));
  }
  tags["bottom_left"] = {gid(0, 0)};
  tags["bottom_right"] = {gid(nx, 0)};
  tags["top_left"] = {gid(0, ny)};
  tags["top_right"] = {gid(nx, ny)};

  for (std::size_t h = 0; h < blocks.size(); ++h) {
    const Block& b = blocks[h];
    // Block perimeter nodes, counter-clockwise from the lower-left corner.
    std::vector<std::size_t> ring;
    for (std::size_t i = b.i0; i < b.i0 + b.k; ++i) ring.push_back(gid(i, b.j0));
    for (std::size_t j = b.j0; j < b.j0 + b.k; ++j) ring.push_back(gid(b.i0 + b.k, j));
    for (std::size_t i = b.i0 + b.k; i > b.i0; --i) ring.push_back(gid(i, b.j0 + b.k));
    for (std::size_t j = b.j0 + b.k; j > b.j0; --j) ring.push_back(gid(b.i0, j));
    const std::size_t m_ring = ring.size();
    const double half = 0.5 * static_cast<double>(b.k) * cell;
    const auto layers = static_cast<std::size_t>(std::max(1L, std::lround((half - b.hole.radius) / cell)));
    // layer[l][p]: node id at layer l (0 = circle, layers = block boundary)
    std::vector<std::vector<std::size_t>> layer(layers + 1, std::vector<std::size_t>(m_ring));
    layer[layers] = ring;
    for (std::size_t p = 0; p < m_ring; ++p) {
      const Vec2 outer = nodes[ring[p]];
      const Vec2 dir = (outer - b.hole.center).normalized();
      const Vec2 inner = b.hole.center + b.hole.radius * dir;
      for (std::size_t l = 0; l < layers; ++l) {
        const double t = static_cast<double>(l) / static_cast<double>(layers);
        layer[l][p] = nodes.size();
        nodes.push_back(inner + t * (outer - inner));
      }
    }
    for (std::size_t l = 0; l < layers; ++l) {
      for (std::size_t p = 0; p < m_ring; ++p) {
        const std::size_t q = (p + 1) % m_ring;
        Mesh::Element el{layer[l][p], layer[l + 1][p], layer[l + 1][q], layer[l][q]};
        const Vec2 a = nodes[el[0]], bb = nodes[el[1]], c = nodes[el[2]], d = nodes[el[3]];
        if (cross(c - a, d - bb) < 0.0) std::swap(el[1], el[3]);
        elems.push_back(el);
      }
    }
    tags["hole" + std::to_string(h + 1)] = layer[0];
  }
  return Mesh(std::move(nodes), std::move(elems), std::move(tags));
}

}  // namespace xfem
