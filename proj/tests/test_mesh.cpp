#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "revolve/mesh.hpp"
#include "revolve/stats.hpp"

using namespace revolve;

namespace {
constexpr double kL0 = 4.89;
constexpr double kLf = 1575.635;
}  // namespace

TEST_CASE("uniform mesh hits endpoints exactly and spaces evenly") {
  const Mesh m = uniform_mesh(kL0, kLf, 43);
  CHECK(m.intervals() == 43);
  CHECK(m.points(0) == kL0);
  CHECK(m.points(43) == kLf);
  const double h = (kLf - kL0) / 43.0;
  for (int i = 0; i + 1 <= 43; ++i)
    CHECK(m.points(i + 1) - m.points(i) == doctest::Approx(h).epsilon(1e-12));
  CHECK_THROWS_AS(uniform_mesh(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(uniform_mesh(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("rotation number of the benchmark span") {
  CHECK(rotation_number(kL0, kLf, 41) == doctest::Approx(6.097).epsilon(1.7e-4));
  CHECK(rotation_number(kL0, kLf, 41) ==
        doctest::Approx((kLf - kL0) / (2.0 * M_PI * 41.0)).epsilon(1e-15));
  // full span covers just under 250 revolutions
  CHECK((kLf - kL0) / (2.0 * M_PI) == doctest::Approx(249.99183).epsilon(1e-7));
}

TEST_CASE("continued fraction expansions") {
  // golden ratio: all partial quotients are 1
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const auto cf_phi = continued_fraction(phi, 8);
  REQUIRE(cf_phi.size() == 8);
  for (long long a : cf_phi) CHECK(a == 1);

  // 0.66 = 33/50; exact integer Euclid gives [0; 1, 1, 1, 16]
  {
    long long p = 33, q = 50;
    std::vector<long long> exact;
    while (q != 0) {
      exact.push_back(p / q);
      const long long r = p % q;
      p = q;
      q = r;
    }
    CHECK(exact == std::vector<long long>{0, 1, 1, 1, 16});
    CHECK(continued_fraction(0.66) == exact);
  }

  CHECK(continued_fraction(2.0) == std::vector<long long>{2});
  CHECK(continued_fraction(0.0) == std::vector<long long>{0});
  CHECK(continued_fraction(1.0 / 3.0) == std::vector<long long>{0, 3});
  CHECK_THROWS_AS(continued_fraction(-1.0), std::invalid_argument);

  // convergents p_k/q_k reconstructed from the quotients obey |x - p/q| <= 1/q^2
  const double x = rotation_number(kL0, kLf, 41);
  const auto cf = continued_fraction(x, 12);
  long long pk = 1, pk1 = cf[0], qk = 0, qk1 = 1;
  for (size_t i = 1; i < cf.size(); ++i) {
    const long long pn = cf[i] * pk1 + pk, qn = cf[i] * qk1 + qk;
    pk = pk1;
    pk1 = pn;
    qk = qk1;
    qk1 = qn;
    CHECK(std::abs(x - double(pk1) / double(qk1)) <= 1.0 / (double(qk1) * double(qk1)));
  }
}

TEST_CASE("strong irrationality classification") {
  // depth-6 window, threshold 10
  CHECK(is_strongly_irrational({1, 1, 1, 1, 1, 1}).strongly_irrational);
  CHECK(is_strongly_irrational({10, 3, 1, 2, 4, 2}).strongly_irrational);
  CHECK_FALSE(is_strongly_irrational({10, 3, 1, 2, 4, 11}).strongly_irrational);

  // a huge early quotient marks a near-rational rotation number
  const auto v = is_strongly_irrational({6111, 20, 1, 5});
  CHECK_FALSE(v.strongly_irrational);
  CHECK(v.worst_index == 1);
  CHECK(v.worst_term == 6111);

  const auto v40 = is_strongly_irrational({4, 305, 2, 1, 5});
  CHECK_FALSE(v40.strongly_irrational);
  CHECK(v40.worst_index == 2);
  CHECK(v40.worst_term == 305);

  // rationals terminate early and can never be strongly irrational
  CHECK_FALSE(is_strongly_irrational({1, 1, 16}).strongly_irrational);
  CHECK_FALSE(is_strongly_irrational({}).strongly_irrational);

  // classification depends only on the fractional part
  const double x = rotation_number(kL0, kLf, 43);
  const auto base = continued_fraction(x);
  for (int shift : {1, 3, 10}) {
    const auto shifted = continued_fraction(x + shift);
    const std::vector<long long> f1(base.begin() + 1, base.end());
    const std::vector<long long> f2(shifted.begin() + 1, shifted.end());
    CHECK(is_strongly_irrational(f1).strongly_irrational ==
          is_strongly_irrational(f2).strongly_irrational);
  }
}

TEST_CASE("rotation analysis of benchmark meshes") {
  // N = 41: rho ~ 6.0974, expansion starts [10, 3, 1, 2, 4] -> strongly irrational
  const auto a41 = analyze_rotation(kL0, kLf, 41);
  CHECK(a41.rho == doctest::Approx(6.097).epsilon(1.7e-4));
  REQUIRE(a41.cf_terms.size() >= 5);
  CHECK(a41.cf_terms[0] == 10);
  CHECK(a41.cf_terms[1] == 3);
  CHECK(a41.cf_terms[2] == 1);
  CHECK(a41.cf_terms[3] == 2);
  CHECK(a41.cf_terms[4] == 4);
  CHECK(a41.strongly_irrational);

  // N = 250: rho within 4e-5 of 1, flagged by a giant second quotient
  const auto a250 = analyze_rotation(kL0, kLf, 250);
  CHECK(a250.rho == doctest::Approx(1.0).epsilon(4e-5));
  CHECK_FALSE(a250.strongly_irrational);
  CHECK(a250.worst_term > 10000);

  // N = 404: rho ~ 0.6188, golden-like expansion [1,1,1,1,1,1]
  const auto a404 = analyze_rotation(kL0, kLf, 404);
  CHECK(a404.rho == doctest::Approx(0.619).epsilon(4e-4));
  REQUIRE(a404.cf_terms.size() >= 6);
  for (int i = 0; i < 6; ++i) CHECK(a404.cf_terms[i] == 1);
  CHECK(a404.strongly_irrational);

  // N = 50: rho ~ 5.0; near-integer, second quotient in the thousands
  const auto a50 = analyze_rotation(kL0, kLf, 50);
  CHECK(a50.rho == doctest::Approx(5.0).epsilon(4e-5));
  CHECK_FALSE(a50.strongly_irrational);
  CHECK(a50.cf_terms[0] == 1);
  CHECK(a50.worst_term > 1000);
}

TEST_CASE("randomized mesh construction") {
  const int N = 200;
  const CorrelationSpec spec{0.6, 12345};
  const Mesh m = randomized_mesh(kL0, kLf, N, spec);
  const double h = (kLf - kL0) / N;
  const double d = std::min(h, 2.0 * M_PI);

  CHECK(m.points(0) == kL0);
  CHECK(m.points(N) == kLf);
  for (int i = 0; i < N; ++i) CHECK(m.points(i + 1) > m.points(i));
  for (int i = 1; i < N; ++i)
    CHECK(std::abs(m.points(i) - (kL0 + i * h)) <= 0.5 * d);

  // deterministic in the seed
  const Mesh m2 = randomized_mesh(kL0, kLf, N, spec);
  CHECK((m.points - m2.points).norm() == 0.0);
  const Mesh m3 = randomized_mesh(kL0, kLf, N, {0.6, 999});
  CHECK((m.points - m3.points).norm() > 0.0);

  CHECK_THROWS_AS(randomized_mesh(kL0, kLf, N, {1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(randomized_mesh(kL0, kLf, N, {-0.1, 1}), std::invalid_argument);
}

TEST_CASE("randomized mesh jitter statistics") {
  // recover the uniforms U_i from the node offsets and check their moments
  // and lag-1 correlation against the requested r
  const int N = 100000;
  const double L0 = 0.0, Lf = 2.0 * M_PI * 0.9 * N;  // h < 2pi so d = h
  const double h = (Lf - L0) / N;
  for (double r : {0.0, 0.6, 0.9}) {
    const Mesh m = randomized_mesh(L0, Lf, N, {r, 777});
    std::vector<double> u(N - 1);
    for (int i = 1; i <= N - 1; ++i) u[i - 1] = (m.points(i) - (L0 + i * h)) / h + 0.5;

    const double n = double(u.size());
    double mean = std::accumulate(u.begin(), u.end(), 0.0) / n;
    double var = 0.0, cov = 0.0;
    for (double v : u) var += (v - mean) * (v - mean);
    var /= n;
    for (size_t i = 0; i + 1 < u.size(); ++i) cov += (u[i] - mean) * (u[i + 1] - mean);
    cov /= (n - 1.0) * var;

    CHECK(std::abs(mean - 0.5) <= 0.005);
    CHECK(std::abs(var - 1.0 / 12.0) <= 0.002);
    CHECK(std::abs(cov - r) <= 0.02);
  }
}

TEST_CASE("circle projection and coverage metrics") {
  Eigen::VectorXd pts(4);
  pts << 0.0, 2.0 * M_PI + 0.5, -0.5, 13.0;
  const Eigen::VectorXd proj = circle_projection(pts);
  for (int i = 0; i < 4; ++i) {
    CHECK(proj(i) >= 0.0);
    CHECK(proj(i) < 2.0 * M_PI);
  }
  CHECK(proj(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(proj(2) == doctest::Approx(2.0 * M_PI - 0.5).epsilon(1e-12));

  // rho = 0.66: nodes cluster near three circle angles, so the largest gap
  // approaches a third of the circle (computed here by brute force)
  {
    const int n = 21;
    Eigen::VectorXd seq(n);
    for (int i = 0; i < n; ++i) seq(i) = 2.0 * M_PI * 0.66 * i;
    const CoverageMetrics cm = coverage_metrics(seq);

    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) {
      z[i] = std::fmod(0.66 * i, 1.0);
    }
    std::sort(z.begin(), z.end());
    double gap = z.front() + 1.0 - z.back();
    for (int i = 1; i < n; ++i) gap = std::max(gap, z[i] - z[i - 1]);
    CHECK(cm.max_gap == doctest::Approx(2.0 * M_PI * gap).epsilon(1e-9));
    // three clusters: the gap is a third of the circle minus the drift spread
    CHECK(cm.max_gap > 2.0 * M_PI / 3.0 - 0.8);
    CHECK(cm.max_gap < 2.0 * M_PI / 3.0);
  }

  // near-integer rotation stacks everything: gap spans almost the whole circle
  {
    const Mesh m = uniform_mesh(kL0, kLf, 250);
    const CoverageMetrics cm = coverage_metrics(m.points);
    CHECK(cm.max_gap > 0.9 * 2.0 * M_PI);
    CHECK(cm.star_discrepancy > 0.5);
  }

  // strongly irrational rotation covers the circle evenly
  {
    const Mesh m = uniform_mesh(kL0, kLf, 404);
    const CoverageMetrics cm = coverage_metrics(m.points);
    CHECK(cm.max_gap < 4.0 * (2.0 * M_PI / 405.0));
    CHECK(cm.star_discrepancy < 0.02);
    CHECK(cm.spacing_cv == doctest::Approx(0.0));
  }

  // evenly spaced circle points have discrepancy exactly 1/n
  {
    Eigen::VectorXd grid(10);
    for (int i = 0; i < 10; ++i) grid(i) = (i + 0.25) * 2.0 * M_PI / 10.0;
    CHECK(coverage_metrics(grid).star_discrepancy == doctest::Approx(0.1 - 0.025).epsilon(1e-12));
  }
}

TEST_CASE("normal distribution helpers") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.96) == doctest::Approx(0.97500210485177956).epsilon(1e-13));
  CHECK(normal_cdf(-1.96) == doctest::Approx(1.0 - 0.97500210485177956).epsilon(1e-12));
  for (double u : {1e-9, 1e-4, 0.1, 0.3, 0.5, 0.77, 0.9999, 1.0 - 1e-9}) {
    const double x = normal_inv_cdf(u);
    CHECK(std::abs(normal_cdf(x) - u) <= 1e-12);
  }
  CHECK_THROWS_AS(normal_inv_cdf(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_inv_cdf(1.0), std::invalid_argument);
}
