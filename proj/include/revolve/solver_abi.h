#pragma once

/* C ABI for external solver backends loaded at runtime.
 *
 * A backend shared library exports revolve_solve_v1 with the signature below.
 * The host passes the problem as callbacks plus fixed sparsity patterns and
 * receives the solution through caller-owned buffers. Callbacks return 1 on
 * success and 0 when the point cannot be evaluated.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct revolve_nlp_c {
  int n_vars;
  int n_cons;
  int jac_nnz;
  int hess_nnz; /* 0 when no exact Lagrangian Hessian is offered */
  const int* jac_rows;
  const int* jac_cols;
  const int* hess_rows;
  const int* hess_cols;
  void* user;
  int (*bounds)(void* user, double* xl, double* xu, double* cl, double* cu);
  int (*objective)(void* user, const double* x, double* f);
  int (*gradient)(void* user, const double* x, double* grad);
  int (*constraints)(void* user, const double* x, double* c);
  int (*jacobian)(void* user, const double* x, double* vals);
  int (*hessian)(void* user, const double* x, double sigma_f, const double* lambda, double* vals);
} revolve_nlp_c;

typedef struct revolve_options_c {
  double tol;
  double constraint_tol;
  double acceptable_tol;
  int max_iterations;
  double max_seconds;
  double mu_init;
  int use_exact_hessian;
  int lbfgs_memory;
  int auto_scale;
  int print_level;
} revolve_options_c;

/* status: 0 optimal, 1 acceptable, 2 iteration limit, 3 infeasible, 4 numerical failure */
typedef struct revolve_result_c {
  int status;
  double objective;
  double constraint_violation;
  double dual_infeasibility;
  double complementarity;
  int iterations;
  double wall_seconds;
  char message[256];
} revolve_result_c;

/* x_out: n_vars, lambda_out: n_cons, z_lower_out/z_upper_out: n_vars.
 * Returns 0 when result was produced (any status), nonzero on hard failure. */
typedef int (*revolve_solve_v1_fn)(const revolve_nlp_c* nlp, const revolve_options_c* options,
                                   const double* x0, double* x_out, double* lambda_out,
                                   double* z_lower_out, double* z_upper_out,
                                   revolve_result_c* result);

#ifdef __cplusplus
}
#endif
