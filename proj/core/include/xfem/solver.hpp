#pragma once

#include "xfem/assembly.hpp"

namespace xfem {

/// Symmetric elimination of the prescribed DOFs: rows and columns are zeroed,
/// the diagonal is set to the mean stiffness diagonal and the right-hand side
/// is adjusted so the solution takes the prescribed values exactly.
LinearSystem apply_constraints(LinearSystem system);

struct SolveResult {
  Eigen::VectorXd u;
  double residual = 0.0;  ///< |K u - f|_inf / |f|_inf of the constrained system
  double diagonal_scale = 0.0;
  int refinement_steps = 0;
};

/// Sparse LDL^T solve of a constrained system. Throws SolverError when the
/// system is singular or indefinite or the residual exceeds 1e-9.
SolveResult solve(const LinearSystem& constrained);

/// apply_constraints followed by solve.
SolveResult solve_constrained(LinearSystem system);

}  // namespace xfem
