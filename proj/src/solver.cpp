#include "revolve/solver.hpp"

#include <dlfcn.h>

#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

#include "revolve/ipm.hpp"
#include "revolve/solver_abi.h"

namespace revolve {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::AcceptableTolerance:
      return "acceptable";
    case SolveStatus::MaxIterations:
      return "max_iterations";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::NumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

struct CallbackHost {
  const NlpProblem* prob = nullptr;
};

int cb_bounds(void* user, double* xl, double* xu, double* cl, double* cu) {
  const auto* p = static_cast<CallbackHost*>(user)->prob;
  Eigen::VectorXd a(p->n_vars()), b(p->n_vars()), c(p->n_cons()), d(p->n_cons());
  p->bounds(a, b, c, d);
  Eigen::Map<Eigen::VectorXd>(xl, a.size()) = a;
  Eigen::Map<Eigen::VectorXd>(xu, b.size()) = b;
  Eigen::Map<Eigen::VectorXd>(cl, c.size()) = c;
  Eigen::Map<Eigen::VectorXd>(cu, d.size()) = d;
  return 1;
}

int cb_objective(void* user, const double* x, double* f) {
  const auto* p = static_cast<CallbackHost*>(user)->prob;
  const Eigen::Map<const Eigen::VectorXd> xv(x, p->n_vars());
  return p->objective(xv, *f) ? 1 : 0;
}

int cb_gradient(void* user, const double* x, double* grad) {
  const auto* p = static_cast<CallbackHost*>(user)->prob;
  const Eigen::Map<const Eigen::VectorXd> xv(x, p->n_vars());
  Eigen::VectorXd g(p->n_vars());
  if (!p->gradient(xv, g)) return 0;
  Eigen::Map<Eigen::VectorXd>(grad, g.size()) = g;
  return 1;
}

int cb_constraints(void* user, const double* x, double* c) {
  const auto* p = static_cast<CallbackHost*>(user)->prob;
  const Eigen::Map<const Eigen::VectorXd> xv(x, p->n_vars());
  Eigen::VectorXd cv(p->n_cons());
  if (!p->constraints(xv, cv)) return 0;
  Eigen::Map<Eigen::VectorXd>(c, cv.size()) = cv;
  return 1;
}

int cb_jacobian(void* user, const double* x, double* vals) {
  const auto* p = static_cast<CallbackHost*>(user)->prob;
  const Eigen::Map<const Eigen::VectorXd> xv(x, p->n_vars());
  Eigen::VectorXd v(static_cast<int>(p->jacobian_pattern().size()));
  if (!p->jacobian(xv, v)) return 0;
  Eigen::Map<Eigen::VectorXd>(vals, v.size()) = v;
  return 1;
}

int cb_hessian(void* user, const double* x, double sigma_f, const double* lambda, double* vals) {
  const auto* p = static_cast<CallbackHost*>(user)->prob;
  const Eigen::Map<const Eigen::VectorXd> xv(x, p->n_vars());
  const Eigen::Map<const Eigen::VectorXd> lv(lambda, p->n_cons());
  Eigen::VectorXd v(static_cast<int>(p->hessian_pattern().size()));
  if (!p->hessian(xv, sigma_f, lv, v)) return 0;
  Eigen::Map<Eigen::VectorXd>(vals, v.size()) = v;
  return 1;
}

// Loaded backends stay resident: handles are cached by path.
revolve_solve_v1_fn load_backend(const std::string& path, std::string& err) {
  static std::mutex mu;
  static std::map<std::string, revolve_solve_v1_fn> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(path);
  if (it != cache.end()) {
    if (!it->second) err = "previous load attempt failed";
    return it->second;
  }
  void* handle = dlopen(path.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (!handle) {
    const char* e = dlerror();
    err = e ? e : "dlopen failed";
    cache[path] = nullptr;
    return nullptr;
  }
  auto fn = reinterpret_cast<revolve_solve_v1_fn>(dlsym(handle, "revolve_solve_v1"));
  if (!fn) {
    err = "symbol revolve_solve_v1 not found";
    cache[path] = nullptr;
    return nullptr;
  }
  cache[path] = fn;
  return fn;
}

std::string env_backend() {
  const char* e = std::getenv("REVOLVE_BACKEND");
  return e ? std::string(e) : std::string();
}

SolveResult solve_external(const std::string& path, const NlpProblem& problem,
                           const Eigen::VectorXd& x0, const SolveOptions& options) {
  std::string err;
  revolve_solve_v1_fn fn = load_backend(path, err);
  if (!fn) throw std::runtime_error("backend '" + path + "': " + err);

  const int n = problem.n_vars();
  const int m = problem.n_cons();
  const auto& jpat = problem.jacobian_pattern();
  const auto& hpat = problem.hessian_pattern();
  std::vector<int> jr(jpat.size()), jc(jpat.size()), hr, hc;
  for (size_t k = 0; k < jpat.size(); ++k) {
    jr[k] = jpat[k].first;
    jc[k] = jpat[k].second;
  }
  const bool with_hess = problem.has_hessian();
  if (with_hess) {
    hr.resize(hpat.size());
    hc.resize(hpat.size());
    for (size_t k = 0; k < hpat.size(); ++k) {
      hr[k] = hpat[k].first;
      hc[k] = hpat[k].second;
    }
  }

  CallbackHost host{&problem};
  revolve_nlp_c nlp{};
  nlp.n_vars = n;
  nlp.n_cons = m;
  nlp.jac_nnz = static_cast<int>(jpat.size());
  nlp.hess_nnz = with_hess ? static_cast<int>(hpat.size()) : 0;
  nlp.jac_rows = jr.data();
  nlp.jac_cols = jc.data();
  nlp.hess_rows = hr.data();
  nlp.hess_cols = hc.data();
  nlp.user = &host;
  nlp.bounds = cb_bounds;
  nlp.objective = cb_objective;
  nlp.gradient = cb_gradient;
  nlp.constraints = cb_constraints;
  nlp.jacobian = cb_jacobian;
  nlp.hessian = cb_hessian;

  revolve_options_c copt{};
  copt.tol = options.tol;
  copt.constraint_tol = options.constraint_tol;
  copt.acceptable_tol = options.acceptable_tol;
  copt.max_iterations = options.max_iterations;
  copt.max_seconds = options.max_seconds;
  copt.mu_init = options.mu_init;
  copt.use_exact_hessian = options.hessian == SolveOptions::Hessian::Exact ? 1 : 0;
  copt.lbfgs_memory = options.lbfgs_memory;
  copt.auto_scale = options.auto_scale ? 1 : 0;
  copt.print_level = options.print_level;

  SolveResult out;
  out.x.resize(n);
  out.lambda.resize(m);
  out.z_lower.resize(n);
  out.z_upper.resize(n);
  revolve_result_c cres{};
  const int rc = fn(&nlp, &copt, x0.data(), out.x.data(), out.lambda.data(), out.z_lower.data(),
                    out.z_upper.data(), &cres);
  if (rc != 0) throw std::runtime_error("backend '" + path + "': solve entry point failed");

  switch (cres.status) {
    case 0:
      out.status = SolveStatus::Optimal;
      break;
    case 1:
      out.status = SolveStatus::AcceptableTolerance;
      break;
    case 2:
      out.status = SolveStatus::MaxIterations;
      break;
    case 3:
      out.status = SolveStatus::Infeasible;
      break;
    default:
      out.status = SolveStatus::NumericalFailure;
      break;
  }
  out.objective = cres.objective;
  out.constraint_violation = cres.constraint_violation;
  out.dual_infeasibility = cres.dual_infeasibility;
  out.complementarity = cres.complementarity;
  out.iterations = cres.iterations;
  out.wall_seconds = cres.wall_seconds;
  cres.message[sizeof(cres.message) - 1] = '\0';
  out.message = cres.message;
  return out;
}

}  // namespace

std::vector<BackendInfo> available_backends(const std::string& requested) {
  std::vector<BackendInfo> out;
  out.push_back({"bundled", true, "built-in interior-point solver"});
  std::string ext = requested;
  if (ext.empty() || ext == "bundled") {
    const std::string env = env_backend();
    if (!env.empty() && env != "bundled") ext = env;
  }
  if (!ext.empty() && ext != "bundled") {
    std::string err;
    const bool ok = load_backend(ext, err) != nullptr;
    out.push_back({ext, ok, ok ? "revolve_solve_v1 entry point loaded" : err});
  }
  return out;
}

SolveResult solve(const NlpProblem& problem, const Eigen::VectorXd& x0,
                  const SolveOptions& options, const std::string& backend) {
  std::string name = backend;
  if (name.empty()) name = env_backend();
  if (name.empty() || name == "bundled") return solve_interior_point(problem, x0, options);
  return solve_external(name, problem, x0, options);
}

}  // namespace revolve
