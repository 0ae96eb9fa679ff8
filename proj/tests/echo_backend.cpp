// Shared-library backend used to exercise the external-solver bridge. It
// adapts the C callbacks back into an NlpProblem and runs the bundled
// interior-point solver, so bridge results must match in-process results.

#include <Eigen/Core>

#include <cstdio>
#include <cstring>
#include <string>

#include "revolve/ipm.hpp"
#include "revolve/nlp.hpp"
#include "revolve/solver_abi.h"

namespace {

class CProblem : public revolve::NlpProblem {
 public:
  explicit CProblem(const revolve_nlp_c* c) : c_(c) {
    jpat_.reserve(c->jac_nnz);
    for (int k = 0; k < c->jac_nnz; ++k) jpat_.push_back({c->jac_rows[k], c->jac_cols[k]});
    hpat_.reserve(c->hess_nnz);
    for (int k = 0; k < c->hess_nnz; ++k) hpat_.push_back({c->hess_rows[k], c->hess_cols[k]});
  }

  int n_vars() const override { return c_->n_vars; }
  int n_cons() const override { return c_->n_cons; }

  void bounds(Eigen::VectorXd& xl, Eigen::VectorXd& xu, Eigen::VectorXd& cl,
              Eigen::VectorXd& cu) const override {
    xl.resize(c_->n_vars);
    xu.resize(c_->n_vars);
    cl.resize(c_->n_cons);
    cu.resize(c_->n_cons);
    c_->bounds(c_->user, xl.data(), xu.data(), cl.data(), cu.data());
  }

  bool objective(const Eigen::VectorXd& x, double& f) const override {
    return c_->objective(c_->user, x.data(), &f) == 1;
  }
  bool gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const override {
    grad.resize(c_->n_vars);
    return c_->gradient(c_->user, x.data(), grad.data()) == 1;
  }
  bool constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c) const override {
    c.resize(c_->n_cons);
    return c_->constraints(c_->user, x.data(), c.data()) == 1;
  }
  const revolve::SparsityPattern& jacobian_pattern() const override { return jpat_; }
  bool jacobian(const Eigen::VectorXd& x, Eigen::VectorXd& vals) const override {
    vals.resize(static_cast<int>(jpat_.size()));
    return c_->jacobian(c_->user, x.data(), vals.data()) == 1;
  }

  bool has_hessian() const override { return c_->hess_nnz > 0; }
  const revolve::SparsityPattern& hessian_pattern() const override { return hpat_; }
  bool hessian(const Eigen::VectorXd& x, double sigma_f, const Eigen::VectorXd& lambda,
               Eigen::VectorXd& vals) const override {
    vals.resize(static_cast<int>(hpat_.size()));
    return c_->hessian(c_->user, x.data(), sigma_f, lambda.data(), vals.data()) == 1;
  }

 private:
  const revolve_nlp_c* c_;
  revolve::SparsityPattern jpat_, hpat_;
};

}  // namespace

extern "C" int revolve_solve_v1(const revolve_nlp_c* nlp, const revolve_options_c* options,
                                const double* x0, double* x_out, double* lambda_out,
                                double* z_lower_out, double* z_upper_out,
                                revolve_result_c* result) {
  if (!nlp || !options || !x0 || !x_out || !lambda_out || !z_lower_out || !z_upper_out || !result)
    return 1;
  try {
    CProblem prob(nlp);
    revolve::SolveOptions opt;
    opt.tol = options->tol;
    opt.constraint_tol = options->constraint_tol;
    opt.acceptable_tol = options->acceptable_tol;
    opt.max_iterations = options->max_iterations;
    opt.max_seconds = options->max_seconds;
    opt.mu_init = options->mu_init;
    opt.hessian = options->use_exact_hessian ? revolve::SolveOptions::Hessian::Exact
                                             : revolve::SolveOptions::Hessian::LimitedMemory;
    opt.lbfgs_memory = options->lbfgs_memory;
    opt.auto_scale = options->auto_scale != 0;
    opt.print_level = options->print_level;

    const Eigen::Map<const Eigen::VectorXd> start(x0, nlp->n_vars);
    const revolve::SolveResult res = revolve::solve_interior_point(prob, start, opt);

    Eigen::Map<Eigen::VectorXd>(x_out, nlp->n_vars) = res.x;
    if (nlp->n_cons > 0) Eigen::Map<Eigen::VectorXd>(lambda_out, nlp->n_cons) = res.lambda;
    Eigen::Map<Eigen::VectorXd>(z_lower_out, nlp->n_vars) = res.z_lower;
    Eigen::Map<Eigen::VectorXd>(z_upper_out, nlp->n_vars) = res.z_upper;

    switch (res.status) {
      case revolve::SolveStatus::Optimal:
        result->status = 0;
        break;
      case revolve::SolveStatus::AcceptableTolerance:
        result->status = 1;
        break;
      case revolve::SolveStatus::MaxIterations:
        result->status = 2;
        break;
      case revolve::SolveStatus::Infeasible:
        result->status = 3;
        break;
      default:
        result->status = 4;
        break;
    }
    result->objective = res.objective;
    result->constraint_violation = res.constraint_violation;
    result->dual_infeasibility = res.dual_infeasibility;
    result->complementarity = res.complementarity;
    result->iterations = res.iterations;
    result->wall_seconds = res.wall_seconds;
    std::snprintf(result->message, sizeof(result->message), "%s", res.message.c_str());
    return 0;
  } catch (...) {
    return 1;
  }
}
