#pragma once

// Solver-facing NLP contract:
//   min f(x)   s.t.  cl <= c(x) <= cu,   xl <= x <= xu,
// equality rows encoded by cl == cu. Sparsity patterns are fixed for the
// lifetime of the problem; callbacks return false to signal that the point
// is outside the evaluatable domain (the solver then backs off its step).

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace revolve {

using SparsityPattern = std::vector<std::pair<int, int>>;  // (row, col)

class NlpProblem {
 public:
  virtual ~NlpProblem() = default;

  virtual int n_vars() const = 0;
  virtual int n_cons() const = 0;
  virtual void bounds(Eigen::VectorXd& xl, Eigen::VectorXd& xu, Eigen::VectorXd& cl,
                      Eigen::VectorXd& cu) const = 0;

  virtual bool objective(const Eigen::VectorXd& x, double& f) const = 0;
  virtual bool gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const = 0;
  virtual bool constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c) const = 0;
  virtual const SparsityPattern& jacobian_pattern() const = 0;
  virtual bool jacobian(const Eigen::VectorXd& x, Eigen::VectorXd& vals) const = 0;

  // Exact Hessian of sigma_f * f + lambda^T c (lower triangle, col <= row).
  // Optional: the bundled solver falls back to limited-memory quasi-Newton.
  virtual bool has_hessian() const { return false; }
  virtual const SparsityPattern& hessian_pattern() const {
    static const SparsityPattern empty;
    return empty;
  }
  virtual bool hessian(const Eigen::VectorXd& /*x*/, double /*sigma_f*/,
                       const Eigen::VectorXd& /*lambda*/, Eigen::VectorXd& /*vals*/) const {
    return false;
  }

  // Safe to call concurrently from multiple threads?
  virtual bool reentrant() const { return true; }
};

enum class SolveStatus {
  Optimal,
  AcceptableTolerance,
  MaxIterations,
  Infeasible,
  NumericalFailure,
};

const char* to_string(SolveStatus s);

struct SolveOptions {
  double tol = 1e-6;             // target scaled KKT error
  double constraint_tol = 1e-8;  // target max constraint violation
  double acceptable_tol = 1e-4;  // fallback level reported as AcceptableTolerance
  int max_iterations = 3000;
  double max_seconds = 0.0;  // wall clock budget, 0 = unlimited
  double mu_init = 0.1;

  enum class Hessian { LimitedMemory, Exact } hessian = Hessian::LimitedMemory;
  int lbfgs_memory = 6;
  bool auto_scale = true;  // gradient-based row scaling of f and c
  int print_level = 0;     // 0 silent, 1 iteration lines
};

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;             // constraint multipliers
  Eigen::VectorXd z_lower, z_upper;   // bound multipliers
  double objective = 0.0;
  double constraint_violation = 0.0;  // max-norm of c residual (unscaled)
  double dual_infeasibility = 0.0;
  double complementarity = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::string message;

  bool converged() const {
    return status == SolveStatus::Optimal || status == SolveStatus::AcceptableTolerance;
  }
};

}  // namespace revolve
