#pragma once

// Mesh construction over the longitude span [L0, Lf] and the number-theoretic
// diagnostics that separate well-covering sparse meshes from degenerate ones.
// A mesh whose rotation number (revolutions per subinterval) is close to a
// low-order rational stacks its nodes on a few circle angles; strongly
// irrational rotation numbers spread them evenly.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace revolve {

struct Mesh {
  Eigen::VectorXd points;  // N+1 strictly increasing longitudes, [L0 ... Lf]
  int intervals() const { return static_cast<int>(points.size()) - 1; }
};

Mesh uniform_mesh(double L0, double Lf, int N);

// Autocorrelated jitter for randomized meshes. r is the target lag-1
// correlation of the uniform perturbations; 0 gives independent jitter.
struct CorrelationSpec {
  double r = 0.0;      // in [0,1)
  uint64_t seed = 0;
};

// AR(1)-driven randomized mesh: interior point i sits at
//   L0 + i h + (U_i - 1/2) d,  d = min(h, 2pi),
// where U_i = Phi(G_i) and G is a stationary AR(1) Gaussian chain with
// coefficient 2 sin(pi r / 6), which makes corr(U_i, U_{i+1}) = r.
// Endpoints are exact; monotonicity holds by construction since d <= h.
Mesh randomized_mesh(double L0, double Lf, int N, const CorrelationSpec& corr);

// Revolutions per subinterval of the uniform N-mesh on [L0, Lf].
double rotation_number(double L0, double Lf, int N);

// Regular continued fraction [a0; a1, a2, ...] of x >= 0 via the recursion
// x_{k+1} = 1/(x_k - a_k). Terminates when the remainder is within
// rational_tol of an integer (near-1 remainders round up: [..,a,1] = [..,a+1]).
std::vector<long long> continued_fraction(double x, int max_terms = 32,
                                          double rational_tol = 1e-12);

struct IrrationalityVerdict {
  bool strongly_irrational = false;
  int worst_index = 0;  // 1-based position of the largest inspected quotient
  long long worst_term = 0;
};

// terms = partial quotients a_1.. of the fractional part. Strongly irrational
// means at least `depth` quotients exist and the first `depth` are all
// <= threshold; a rational (short expansion) always fails.
IrrationalityVerdict is_strongly_irrational(const std::vector<long long>& terms, int depth = 6,
                                            long long threshold = 10);

struct RotationAnalysis {
  double rho = 0.0;
  std::vector<long long> cf_terms;  // fractional-part partial quotients
  bool strongly_irrational = false;
  int worst_index = 0;
  long long worst_term = 0;
};

RotationAnalysis analyze_rotation(double L0, double Lf, int N, int depth = 6,
                                  long long threshold = 10, double rational_tol = 1e-12,
                                  int max_terms = 32);

// Points reduced mod 2pi into [0, 2pi).
Eigen::VectorXd circle_projection(const Eigen::VectorXd& points);

struct CoverageMetrics {
  double max_gap = 0.0;           // widest angular gap between adjacent projections
  double star_discrepancy = 0.0;  // D* of projections rescaled to [0,1)
  double spacing_cv = 0.0;        // std/mean of consecutive mesh spacings
};

CoverageMetrics coverage_metrics(const Eigen::VectorXd& points);

}  // namespace revolve
