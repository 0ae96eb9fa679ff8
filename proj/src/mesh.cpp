#include "revolve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "revolve/stats.hpp"

namespace revolve {

namespace {

void check_span(double L0, double Lf, int N) {
  if (!(Lf > L0)) throw std::invalid_argument("mesh: need Lf > L0");
  if (N < 1) throw std::invalid_argument("mesh: need at least one subinterval");
}

}  // namespace

Mesh uniform_mesh(double L0, double Lf, int N) {
  check_span(L0, Lf, N);
  Mesh m;
  m.points.resize(N + 1);
  const double h = (Lf - L0) / N;
  for (int i = 0; i <= N; ++i) m.points(i) = L0 + i * h;
  m.points(0) = L0;
  m.points(N) = Lf;
  return m;
}

Mesh randomized_mesh(double L0, double Lf, int N, const CorrelationSpec& corr) {
  check_span(L0, Lf, N);
  if (!(corr.r >= 0.0 && corr.r < 1.0))
    throw std::invalid_argument("randomized_mesh: correlation r must be in [0,1)");

  const double h = (Lf - L0) / N;
  const double d = std::min(h, 2.0 * M_PI);
  const double rn = 2.0 * std::sin(M_PI * corr.r / 6.0);
  const double nu = std::sqrt(1.0 - rn * rn);

  Mesh m;
  m.points.resize(N + 1);
  m.points(0) = L0;
  m.points(N) = Lf;

  SplitMix64 rng(corr.seed);
  double gprev = 0.0;
  for (int i = 1; i <= N - 1; ++i) {
    const double eps = normal_inv_cdf(rng.uniform01());
    const double gi = (i == 1) ? eps : rn * gprev + nu * eps;
    gprev = gi;
    const double ui = normal_cdf(gi);
    m.points(i) = L0 + i * h + (ui - 0.5) * d;
  }
  return m;
}

double rotation_number(double L0, double Lf, int N) {
  check_span(L0, Lf, N);
  return (Lf - L0) / (2.0 * M_PI * N);
}

std::vector<long long> continued_fraction(double x, int max_terms, double rational_tol) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("continued_fraction: x must be finite and nonnegative");
  if (max_terms < 1) throw std::invalid_argument("continued_fraction: max_terms must be >= 1");

  std::vector<long long> terms;
  terms.reserve(max_terms);
  for (int i = 0; i < max_terms; ++i) {
    double a = std::floor(x);
    double r = x - a;
    if (r >= 1.0 - rational_tol) {  // canonicalize near-integer remainders
      a += 1.0;
      r = 0.0;
    }
    terms.push_back(static_cast<long long>(a));
    if (r <= rational_tol) break;
    x = 1.0 / r;
    if (x > 9.0e18) break;  // quotient beyond integer range: numerically rational
  }
  return terms;
}

IrrationalityVerdict is_strongly_irrational(const std::vector<long long>& terms, int depth,
                                            long long threshold) {
  if (depth < 1) throw std::invalid_argument("is_strongly_irrational: depth must be >= 1");
  IrrationalityVerdict v;
  const int n = std::min<int>(depth, static_cast<int>(terms.size()));
  for (int i = 0; i < n; ++i) {
    if (terms[i] > v.worst_term) {
      v.worst_term = terms[i];
      v.worst_index = i + 1;
    }
  }
  v.strongly_irrational =
      static_cast<int>(terms.size()) >= depth && (n == 0 || v.worst_term <= threshold);
  return v;
}

RotationAnalysis analyze_rotation(double L0, double Lf, int N, int depth, long long threshold,
                                  double rational_tol, int max_terms) {
  RotationAnalysis out;
  out.rho = rotation_number(L0, Lf, N);
  // a0 is dropped: strong irrationality depends only on the fractional part
  std::vector<long long> cf = continued_fraction(out.rho, max_terms + 1, rational_tol);
  out.cf_terms.assign(cf.begin() + 1, cf.end());
  const IrrationalityVerdict v = is_strongly_irrational(out.cf_terms, depth, threshold);
  out.strongly_irrational = v.strongly_irrational;
  out.worst_index = v.worst_index;
  out.worst_term = v.worst_term;
  return out;
}

Eigen::VectorXd circle_projection(const Eigen::VectorXd& points) {
  Eigen::VectorXd proj(points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    double y = std::fmod(points(i), 2.0 * M_PI);
    if (y < 0.0) y += 2.0 * M_PI;
    proj(i) = y;
  }
  return proj;
}

CoverageMetrics coverage_metrics(const Eigen::VectorXd& points) {
  const Eigen::Index n = points.size();
  if (n < 2) throw std::invalid_argument("coverage_metrics: need at least two points");

  CoverageMetrics cm;

  std::vector<double> proj(n);
  {
    const Eigen::VectorXd p = circle_projection(points);
    for (Eigen::Index i = 0; i < n; ++i) proj[i] = p(i);
  }
  std::sort(proj.begin(), proj.end());

  double max_gap = proj.front() + 2.0 * M_PI - proj.back();  // wrap-around gap
  for (Eigen::Index i = 1; i < n; ++i) max_gap = std::max(max_gap, proj[i] - proj[i - 1]);
  cm.max_gap = max_gap;

  // star discrepancy of the projections rescaled to [0,1)
  double dstar = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = proj[i] / (2.0 * M_PI);
    dstar = std::max(dstar, std::max(double(i + 1) / n - z, z - double(i) / n));
  }
  cm.star_discrepancy = dstar;

  double mean = 0.0, var = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) mean += points(i) - points(i - 1);
  mean /= double(n - 1);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double dl = points(i) - points(i - 1) - mean;
    var += dl * dl;
  }
  var /= double(n - 1);
  cm.spacing_cv = std::sqrt(var) / mean;
  return cm;
}

}  // namespace revolve
