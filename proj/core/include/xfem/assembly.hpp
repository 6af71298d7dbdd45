#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "xfem/dof_layout.hpp"
#include "xfem/enrichment_map.hpp"
#include "xfem/material.hpp"
#include "xfem/quadrature.hpp"

namespace xfem {

struct QuadratureSet {
  QuadratureRule standard = gauss_rule(4);
  QuadratureRule heaviside = gauss_rule(35);
  QuadratureRule tip = gauss_rule(40);
};

enum class BcType { Fixed, Displacement, Traction };

/// Condition on a tagged boundary. `value` components left empty are free
/// (displacement) or zero (traction). Scaled conditions follow the load factor.
struct BoundaryCondition {
  std::string tag;
  BcType type = BcType::Fixed;
  std::array<std::optional<double>, 2> value{};
  bool scaled = true;

  friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

struct LinearSystem {
  SparseMatrix K;
  Eigen::VectorXd f;
  std::map<std::size_t, double> fixed;  ///< DOF -> prescribed value
};

/// Quadrature rule used for element e given its enrichment. Elements holding
/// a tip are split at the tip so no point sits on the singularity.
QuadratureRule element_rule(const Mesh& mesh, const EnrichmentMap& map, const QuadratureSet& rules,
                           ElementIndex e);

/// Stiffness, loads and prescribed DOFs at the given load factor.
LinearSystem assemble(const Mesh& mesh, const EnrichmentMap& map, const DofLayout& layout, const Material& material,
                      const QuadratureSet& rules, const std::vector<BoundaryCondition>& bcs, double load_factor = 1.0);

/// Element stiffness matrix and the global DOF of each row (x/y interleaved).
struct ElementMatrix {
  std::vector<std::size_t> dofs;
  Eigen::MatrixXd K;
};
ElementMatrix element_stiffness(const Mesh& mesh, const EnrichmentMap& map, const DofLayout& layout,
                                const Mat3& D, const QuadratureRule& rule, ElementIndex e);

/// Adds a prescription, rejecting a different value on the same DOF.
void prescribe(std::map<std::size_t, double>& fixed, std::size_t dof, double value);

}  // namespace xfem
