#include "xfem/solver.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>

namespace xfem {

LinearSystem apply_constraints(LinearSystem sys) {
  const Eigen::Index n = sys.K.rows();
  if (sys.K.cols() != n || sys.f.size() != n) throw ValidationError("constraints", "system dimensions disagree");
  if (sys.fixed.empty()) return sys;
  std::vector<char> is_fixed(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
  for (const auto& [dof, v] : sys.fixed) {
    if (dof >= static_cast<std::size_t>(n)) throw ValidationError("constraints", "prescribed DOF out of range");
    is_fixed[dof] = 1;
    values[static_cast<Eigen::Index>(dof)] = v;
  }
  double diag_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) diag_sum += sys.K.coeff(i, i);
  const double scale = n > 0 ? diag_sum / static_cast<double>(n) : 1.0;

  sys.f -= sys.K * values;
  for (Eigen::Index j = 0; j < sys.K.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(sys.K, j); it; ++it) {
      if (is_fixed[static_cast<std::size_t>(it.row())] || is_fixed[static_cast<std::size_t>(it.col())]) {
        it.valueRef() = 0.0;
      }
    }
  }
  sys.K.prune(0.0);
  for (const auto& [dof, v] : sys.fixed) {
    const auto i = static_cast<Eigen::Index>(dof);
    sys.K.coeffRef(i, i) = scale;
    sys.f[i] = scale * v;
  }
  sys.K.makeCompressed();
  return sys;
}

SolveResult solve(const LinearSystem& sys) {
  const Eigen::Index n = sys.K.rows();
  SolveResult out;
  if (n == 0) return out;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
  ldlt.compute(sys.K);
  if (ldlt.info() != Eigen::Success) throw SolverError("solve", "sparse factorization failed");
  const Eigen::VectorXd& d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  Eigen::Index worst = 0;
  const double dmin = d.minCoeff(&worst);
  if (!(dmin > 1e-14 * dmax)) {
    std::ostringstream msg;
    msg << "stiffness matrix is singular or indefinite (pivot " << dmin << " vs max " << dmax
        << " at permuted position " << worst << " of " << n << ")";
    throw SolverError("solve", msg.str());
  }
  out.u = ldlt.solve(sys.f);
  const double fnorm = sys.f.cwiseAbs().maxCoeff();
  auto residual = [&]() {
    const double r = (sys.K * out.u - sys.f).cwiseAbs().maxCoeff();
    return fnorm > 0.0 ? r / fnorm : r;
  };
  out.residual = residual();
  while (out.residual > 1e-14 && out.refinement_steps < 3) {
    const Eigen::VectorXd previous = out.u;
    out.u += ldlt.solve(sys.f - sys.K * out.u);
    const double next = residual();
    if (!(next < out.residual)) {
      out.u = previous;
      break;
    }
    out.residual = next;
    ++out.refinement_steps;
  }
  if (!out.u.allFinite() || !(out.residual < 1e-9)) {
    std::ostringstream msg;
    msg << "residual " << out.residual << " exceeds tolerance";
    throw SolverError("solve", msg.str());
  }
  return out;
}

SolveResult solve_constrained(LinearSystem system) {
  double diag_scale = 0.0;
  if (!system.fixed.empty()) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < system.K.rows(); ++i) s += system.K.coeff(i, i);
    diag_scale = s / static_cast<double>(system.K.rows());
  }
  SolveResult r = solve(apply_constraints(std::move(system)));
  r.diagonal_scale = diag_scale;
  return r;
}

}  // namespace xfem
