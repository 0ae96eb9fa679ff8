#include "revolve/ipm.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revolve {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tuning constants; values follow common interior-point practice.
constexpr double kSMax = 100.0;       // multiplier average where KKT error scaling kicks in
constexpr double kKappaEps = 10.0;    // barrier subproblem tolerance factor
constexpr double kKappaMu = 0.2;      // linear barrier decrease
constexpr double kThetaMu = 1.5;      // superlinear barrier decrease
constexpr double kTauMin = 0.99;      // fraction-to-boundary floor
constexpr double kPush = 1e-2;        // initial push away from bounds
constexpr double kKappaSigma = 1e10;  // bound-multiplier safeguard box
constexpr double kKappaRow = 1e2;     // slack-row multiplier safeguard box
constexpr double kBoundRelax = 1e-9;  // relief so equalities may pin variables on bounds
constexpr int kRefineSteps = 3;
constexpr double kGradScaleMax = 100.0;

// Filter line-search constants (Waechter-Biegler).
constexpr double kGammaTheta = 1e-5;  // infeasibility margin
constexpr double kGammaPhi = 1e-5;    // barrier-objective margin
constexpr double kDeltaSwitch = 1.0;  // switching condition scale
constexpr double kSTheta = 1.1;       // switching condition infeasibility exponent
constexpr double kSPhi = 2.3;         // switching condition descent exponent
constexpr double kEtaPhi = 1e-4;      // Armijo constant for f-type steps
constexpr double kKappaSoc = 0.99;    // required contraction per correction
constexpr int kMaxSoc = 4;
constexpr double kGammaAlpha = 0.05;  // smallest-step safety factor

double inf_norm(const Eigen::VectorXd& v) { return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0; }
double one_norm(const Eigen::VectorXd& v) { return v.size() > 0 ? v.lpNorm<1>() : 0.0; }

class Ipm {
 public:
  Ipm(const NlpProblem& prob, const SolveOptions& opt) : prob_(prob), opt_(opt) {}

  SolveResult run(const Eigen::VectorXd& x0);

 private:
  using SpMat = Eigen::SparseMatrix<double>;
  using Vec = Eigen::VectorXd;
  using Mat = Eigen::MatrixXd;

  struct Errors {
    double dual = 0.0;
    double primal = 0.0;
    double comp = 0.0;
    double total = 0.0;
  };

  // setup
  void pick_scaling(const Vec& x_start);
  bool initialize_point(const Vec& x0, std::string& why);

  // evaluation at trial points (objective + constraints only)
  bool eval_fc(const Vec& z, double& f_raw, Vec& c_raw, Vec& r) const;
  // first derivatives (+ Hessian in exact mode) at an accepted point
  bool eval_derivs(const Vec& x, Vec& g_raw, Vec& jvals) const;
  bool eval_hessian(const Vec& x);
  double violation(const Vec& c_raw) const;

  // products with the scaled constraint Jacobian at the current point
  void jac_t_mult(const Vec& jvals, const Vec& v, Vec& out) const;    // out += J~^T v over z
  void jac_t_mult_x(const Vec& jvals, const Vec& v, Vec& out) const;  // x block only

  double barrier_value(const Vec& z, double f_s) const;
  Vec barrier_grad() const;
  Errors scaled_errors(double mu) const;

  // KKT factorization and solves
  bool factorize();
  bool solve_kkt(const Vec& rhs, Vec& sol) const;
  bool restore_feasibility();
  void apply_kkt(const Vec& v, Vec& out) const;

  // limited-memory Hessian model
  void rebuild_compact();
  Vec apply_B(const Vec& v) const;
  void push_pair(const Vec& s, const Vec& yvec);

  bool looks_infeasible(bool stalled) const;
  SolveResult finalize(SolveStatus st, const std::string& msg);

  const NlpProblem& prob_;
  SolveOptions opt_;

  int n_ = 0, m_ = 0, m_ineq_ = 0, n_z_ = 0, dim_ = 0, nb_ = 0;
  std::vector<int> slack_of_;  // per row: slack index or -1 for equality rows
  Vec cl_, cu_;                // raw constraint bounds
  Vec beq_;                    // scaled right-hand side for equality rows
  Vec zl_, zu_;                // relaxed bounds on z = (x, slacks)
  std::vector<char> lo_, up_;  // finite-bound flags per z entry
  double d_f_ = 1.0;
  Vec d_c_;
  bool exact_ = false;
  bool hess_ok_ = false;

  // iterate and point data
  Vec z_, y_, zL_, zU_;
  double f_raw_ = 0.0;
  Vec c_raw_, r_, g_raw_, jvals_, hvals_;
  double viol_ = 0.0;

  // algorithm state
  double mu_ = 0.1, mu_min_ = 1e-9, tau_ = kTauMin;
  double delta_x_ = 0.0, delta_c_ = 0.0, delta_last_ = 0.0;
  double last_alpha_ = 1.0;
  int iters_ = 0;

  SpMat kkt_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower> ldlt_;
  bool analyzed_ = false;

  // limited-memory model state
  std::deque<std::pair<Vec, Vec>> pairs_;
  double sigma_ = 1.0;
  Mat wx_, minv_mat_;
  Eigen::FullPivLU<Mat> m_lu_;
  Mat v_cols_;
  Eigen::FullPivLU<Mat> g_lu_;
  bool smw_ready_ = false;

  std::chrono::steady_clock::time_point t_start_;
};

SolveResult Ipm::run(const Eigen::VectorXd& x0) {
  t_start_ = std::chrono::steady_clock::now();

  n_ = prob_.n_vars();
  m_ = prob_.n_cons();
  if (n_ <= 0) throw std::invalid_argument("solver: problem has no variables");
  if (x0.size() != n_) throw std::invalid_argument("solver: start point size mismatch");

  Vec xl(n_), xu(n_), cl(m_), cu(m_);
  prob_.bounds(xl, xu, cl, cu);
  cl_ = cl;
  cu_ = cu;
  for (int i = 0; i < n_; ++i)
    if (xl(i) > xu(i)) throw std::invalid_argument("solver: inconsistent variable bounds");
  for (int i = 0; i < m_; ++i)
    if (cl(i) > cu(i)) throw std::invalid_argument("solver: inconsistent constraint bounds");

  slack_of_.assign(m_, -1);
  m_ineq_ = 0;
  for (int i = 0; i < m_; ++i)
    if (cl(i) < cu(i)) slack_of_[i] = m_ineq_++;
  n_z_ = n_ + m_ineq_;
  dim_ = n_z_ + m_;

  exact_ = opt_.hessian == SolveOptions::Hessian::Exact && prob_.has_hessian();
  mu_ = opt_.mu_init > 0 ? opt_.mu_init : 0.1;
  mu_min_ = std::max(1e-13, opt_.tol / 100.0);
  tau_ = std::max(kTauMin, 1.0 - mu_);

  pick_scaling(x0);

  // bounds on z: variable bounds, then scaled slack bounds, all slightly relaxed
  zl_.resize(n_z_);
  zu_.resize(n_z_);
  lo_.assign(n_z_, 0);
  up_.assign(n_z_, 0);
  beq_ = Vec::Zero(m_);
  for (int i = 0; i < n_; ++i) {
    zl_(i) = xl(i);
    zu_(i) = xu(i);
  }
  for (int i = 0; i < m_; ++i) {
    if (slack_of_[i] < 0) {
      beq_(i) = d_c_(i) * cl(i);
    } else {
      zl_(n_ + slack_of_[i]) = std::isfinite(cl(i)) ? d_c_(i) * cl(i) : -kInf;
      zu_(n_ + slack_of_[i]) = std::isfinite(cu(i)) ? d_c_(i) * cu(i) : kInf;
    }
  }
  nb_ = 0;
  for (int i = 0; i < n_z_; ++i) {
    if (std::isfinite(zl_(i))) {
      zl_(i) -= kBoundRelax * std::max(1.0, std::abs(zl_(i)));
      lo_[i] = 1;
      ++nb_;
    }
    if (std::isfinite(zu_(i))) {
      zu_(i) += kBoundRelax * std::max(1.0, std::abs(zu_(i)));
      up_[i] = 1;
      ++nb_;
    }
  }

  std::string why;
  if (!initialize_point(x0, why)) return finalize(SolveStatus::NumericalFailure, why);

  // Filter of blocked (infeasibility, barrier objective) corners; margins are
  // baked in when a corner is added, so acceptability is plain non-domination.
  std::vector<std::pair<double, double>> filter;
  const double theta_0 = one_norm(r_);
  const double theta_cap = 1e4 * std::max(1.0, theta_0);
  const double theta_min = 1e-4 * std::max(1.0, theta_0);
  filter.push_back({theta_cap, -kInf});

  double best_viol = viol_;
  int last_improve = 0;
  int infeasible_hits = 0;
  int acceptable_streak = 0;
  int stall_count = 0;
  int mu_rescues = 0;
  int restorations = 0;
  int recenters = 0;

  for (iters_ = 0; iters_ < std::max(0, opt_.max_iterations); ++iters_) {
    if (!z_.allFinite() || inf_norm(z_) > 1e16)
      return finalize(SolveStatus::NumericalFailure, "iterates diverged");

    const Errors e0 = scaled_errors(0.0);
    if (opt_.print_level >= 1)
      std::fprintf(stderr,
                   "ipm %4d  f=% .8e  viol=%8.2e  dual=%8.2e  comp=%8.2e  mu=%7.1e  "
                   "alpha=%7.1e\n",
                   iters_, f_raw_, viol_, e0.dual, e0.comp, mu_, last_alpha_);

    if (opt_.print_level >= 2) {
      int worst_row = -1, worst_y = -1;
      double wv = 0.0, wy = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double v = std::max({0.0, cl_(i) - c_raw_(i), c_raw_(i) - cu_(i)});
        if (v > wv) {
          wv = v;
          worst_row = i;
        }
        if (std::abs(y_(i)) > wy) {
          wy = std::abs(y_(i));
          worst_y = i;
        }
      }
      int iL = -1, iU = -1;
      double vL = 0.0, vU = 0.0;
      for (int i = 0; i < n_z_; ++i) {
        if (lo_[i] && std::abs(zL_(i)) > vL) {
          vL = std::abs(zL_(i));
          iL = i;
        }
        if (up_[i] && std::abs(zU_(i)) > vU) {
          vU = std::abs(zU_(i));
          iU = i;
        }
      }
      std::fprintf(stderr,
                   "      viol@%d=%.2e  |y|@%d=%.2e  zL@%d=%.1e  zU@%d=%.1e  dx=%.1e  dc=%.1e\n",
                   worst_row, wv, worst_y, wy, iL, vL, iU, vU, delta_last_, delta_c_);
    }

    if (e0.total <= opt_.tol && viol_ <= opt_.constraint_tol)
      return finalize(SolveStatus::Optimal, "optimal point found");

    if (e0.total <= opt_.acceptable_tol && viol_ <= opt_.constraint_tol)
      ++acceptable_streak;
    else
      acceptable_streak = 0;
    if (acceptable_streak >= 15 && mu_ <= mu_min_ * (1.0 + 1e-12))
      return finalize(SolveStatus::AcceptableTolerance, "converged to acceptable tolerance");

    if (opt_.max_seconds > 0.0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start_).count();
      if (elapsed > opt_.max_seconds) {
        if (e0.total <= opt_.acceptable_tol && viol_ <= opt_.constraint_tol)
          return finalize(SolveStatus::AcceptableTolerance, "wall clock budget exhausted");
        return finalize(SolveStatus::MaxIterations, "wall clock budget exhausted");
      }
    }

    // infeasibility watch: stationary infeasibility measure that stopped improving
    if (viol_ < 0.999 * best_viol) {
      best_viol = viol_;
      last_improve = iters_;
    }
    if (iters_ - last_improve >= 25 && looks_infeasible(false)) {
      if (++infeasible_hits >= 3)
        return finalize(SolveStatus::Infeasible, "constraint violation cannot be reduced");
    } else {
      infeasible_hits = 0;
    }

    // monotone barrier schedule
    bool mu_changed = false;
    while (mu_ > mu_min_ && scaled_errors(mu_).total <= kKappaEps * mu_) {
      mu_ = std::max(mu_min_, std::min(kKappaMu * mu_, std::pow(mu_, kThetaMu)));
      tau_ = std::max(kTauMin, 1.0 - mu_);
      mu_changed = true;
    }
    if (mu_changed) {
      filter.clear();
      filter.push_back({theta_cap, -kInf});
    }

    // search direction with inertia-corrected regularization
    Vec dz, dy, rhs(dim_);
    double d_phi = 0.0;
    bool have_dir = false;
    delta_c_ = 1e-8 * std::pow(std::max(mu_, 1e-12), 0.25);
    delta_x_ = 0.0;
    for (int attempt = 0; attempt < 60 && !have_dir; ++attempt) {
      if (attempt > 0) {
        delta_x_ = delta_x_ == 0.0 ? std::max(1e-10, delta_last_ / 3.0) : delta_x_ * 8.0;
        delta_c_ *= 2.0;
        if (delta_x_ > 1e12)
          return finalize(SolveStatus::NumericalFailure, "KKT regularization exhausted");
      }
      if (!factorize()) continue;

      const Vec gb = barrier_grad();
      Vec top = gb;
      jac_t_mult(jvals_, y_, top);
      rhs.head(n_z_) = -top;
      rhs.tail(m_) = -r_;
      Vec sol;
      if (!solve_kkt(rhs, sol)) continue;
      dz = sol.head(n_z_);
      dy = sol.tail(m_);

      d_phi = gb.dot(dz);
      if (one_norm(r_) <= 1e-12 &&
          d_phi > delta_c_ * dy.squaredNorm() + 1e-12 * std::max(1.0, std::abs(f_raw_))) {
        continue;  // ascent direction on a feasible point: factorization too inaccurate
      }
      have_dir = true;
      delta_last_ = delta_x_;
    }
    if (!have_dir) return finalize(SolveStatus::NumericalFailure, "no usable search direction");

    // fraction-to-boundary cap for a primal direction from the current point
    auto primal_cap = [&](const Vec& d) {
      double a = 1.0;
      for (int i = 0; i < n_z_; ++i) {
        if (lo_[i] && d(i) < 0.0) a = std::min(a, -tau_ * (z_(i) - zl_(i)) / d(i));
        if (up_[i] && d(i) > 0.0) a = std::min(a, tau_ * (zu_(i) - z_(i)) / d(i));
      }
      return a;
    };
    const double a_max = primal_cap(dz);

    // Filter line search. A trial must escape every blocked corner, then
    // either make the Armijo cut on the barrier objective (f-type step, only
    // attempted near feasibility when the switching condition holds) or beat
    // the current (infeasibility, objective) pair by the filter margins.
    const double theta_k = one_norm(r_);
    const double phi_k = barrier_value(z_, d_f_ * f_raw_);
    const bool descent = d_phi < 0.0;
    double alpha_min = kGammaAlpha * kGammaTheta;
    if (descent && theta_k > 0.0) {
      double lim = std::min(kGammaTheta, kGammaPhi * theta_k / (-d_phi));
      if (theta_k <= theta_min)
        lim = std::min(lim, kDeltaSwitch * std::pow(theta_k, kSTheta) / (-d_phi));
      alpha_min = kGammaAlpha * lim;
    }

    auto filter_ok = [&](double th, double ph) {
      for (const auto& fe : filter)
        if (th >= fe.first && ph >= fe.second) return false;
      return true;
    };
    bool augment = false;
    auto acceptable = [&](double th, double ph, double frac) {
      if (!filter_ok(th, ph)) return false;
      const bool switching =
          descent && frac * std::pow(-d_phi, kSPhi) > kDeltaSwitch * std::pow(theta_k, kSTheta);
      if (theta_k <= theta_min && switching) {
        if (ph <= phi_k + kEtaPhi * frac * d_phi) {
          augment = false;
          return true;
        }
        return false;  // f-type trials stand or fall with the Armijo cut
      }
      if (th <= (1.0 - kGammaTheta) * theta_k || ph <= phi_k - kGammaPhi * theta_k) {
        augment = true;
        return true;
      }
      return false;
    };

    bool accepted = false;
    bool used_soc = false;
    double alpha = a_max, alpha_used = 0.0;
    Vec dz_fin = dz, dy_fin = dy;  // direction actually stepped (corrections may replace it)
    Vec z_t, c_t, r_t, g_t, jv_t;
    double f_t = 0.0;
    for (int bt = 0; bt < 60 && !accepted; ++bt, alpha *= 0.5) {
      if (bt > 0 && alpha < alpha_min) break;
      z_t = z_ + alpha * dz;
      const bool evald = eval_fc(z_t, f_t, c_t, r_t);
      if (evald) {
        const double th = one_norm(r_t);
        const double ph = barrier_value(z_t, d_f_ * f_t);
        if (opt_.print_level >= 4)
          std::fprintf(stderr,
                       "      try bt=%d a=%.3e th=%.6e (k %.6e) ph=%.10e (k %.10e) dphi=%.3e "
                       "fok=%d\n",
                       bt, alpha, th, theta_k, ph, phi_k, d_phi, filter_ok(th, ph) ? 1 : 0);
        if (acceptable(th, ph, alpha)) {
          dz_fin = dz;
          dy_fin = dy;
          alpha_used = alpha;
          accepted = true;
          break;
        }
        // second-order corrections: re-solve with the constraint residual
        // observed at the full step, keeping the same KKT matrix; worthwhile
        // only when the plain step failed to reduce the infeasibility
        if (bt == 0 && m_ > 0 && th >= theta_k) {
          Vec csoc = alpha * r_ + r_t;
          double th_prev = th;
          for (int p = 0; p < kMaxSoc; ++p) {
            rhs.tail(m_) = -csoc;
            Vec sol2;
            if (!solve_kkt(rhs, sol2)) break;
            const Vec dzs = sol2.head(n_z_);
            const double a_soc = primal_cap(dzs);
            const Vec zs = z_ + a_soc * dzs;
            double fs;
            Vec cs, rs;
            if (!eval_fc(zs, fs, cs, rs)) break;
            const double ths = one_norm(rs);
            const double phs = barrier_value(zs, d_f_ * fs);
            if (acceptable(ths, phs, a_max)) {
              used_soc = true;
              dz_fin = dzs;
              dy_fin = sol2.tail(m_);
              alpha_used = a_soc;
              z_t = zs;
              f_t = fs;
              c_t = cs;
              r_t = rs;
              accepted = true;
              break;
            }
            if (ths > kKappaSoc * th_prev) break;  // corrections stopped helping
            csoc = a_soc * csoc + rs;
            th_prev = ths;
          }
        }
      }
    }
    if (accepted) {
      g_t.resize(n_);
      jv_t.resize(static_cast<int>(prob_.jacobian_pattern().size()));
      if (!eval_derivs(z_t.head(n_), g_t, jv_t)) accepted = false;
    }

    // Endgame recentering: after a sharp mu drop the Newton step is almost a
    // pure dual correction. Neither theta nor phi can see the duals, so the
    // filter has nothing to accept the step by, yet the multipliers must
    // move. As long as the trial point stays feasible to tolerance, take the
    // full step anyway and let the duals recenter.
    if (!accepted && viol_ <= opt_.constraint_tol && recenters < 8 &&
        scaled_errors(0.0).total <= opt_.acceptable_tol) {
      z_t = z_ + a_max * dz;
      if (eval_fc(z_t, f_t, c_t, r_t) && violation(c_t) <= opt_.constraint_tol) {
        g_t.resize(n_);
        jv_t.resize(static_cast<int>(prob_.jacobian_pattern().size()));
        if (eval_derivs(z_t.head(n_), g_t, jv_t)) {
          ++recenters;
          dz_fin = dz;
          dy_fin = dy;
          alpha_used = a_max;
          augment = false;
          accepted = true;
          if (opt_.print_level >= 2)
            std::fprintf(stderr, "      recenter step a=%.2e\n", a_max);
        }
      }
    }

    if (!accepted) {
      ++stall_count;
      last_alpha_ = 0.0;
      const Errors en = scaled_errors(0.0);
      if (en.total <= opt_.acceptable_tol && viol_ <= opt_.constraint_tol)
        return finalize(SolveStatus::AcceptableTolerance, "line search stalled at acceptable point");
      // A failed line search at a violated point usually means the duals have
      // gone bad (a degenerate row, a poisoned curvature block). Walk back to
      // a less infeasible point and restart the duals from scratch there.
      bool restoration_failed = false;
      if (viol_ > opt_.constraint_tol && restorations < 8) {
        if (restore_feasibility()) {
          ++restorations;
          y_.setZero();
          for (int i = 0; i < n_z_; ++i) {
            if (lo_[i]) zL_(i) = mu_ / std::max(z_(i) - zl_(i), kPush);
            if (up_[i]) zU_(i) = mu_ / std::max(zu_(i) - z_(i), kPush);
          }
          if (exact_) eval_hessian(z_.head(n_));
          pairs_.clear();
          rebuild_compact();
          filter.clear();
          filter.push_back({theta_cap, -kInf});
          stall_count = 0;
          delta_last_ = 0.0;
          continue;
        }
        restoration_failed = true;
      }
      if (looks_infeasible(true))
        return finalize(SolveStatus::Infeasible, "no feasible progress possible");
      // Even a dedicated least-squares pass could not shrink the violation,
      // and the violation is far too large to blame on numerics: the iterate
      // sits at a local minimum of infeasibility that is not feasible, which
      // is the practical definition of an infeasible problem.
      if (restoration_failed && viol_ > std::max(1e5 * opt_.constraint_tol, 1e-3))
        return finalize(SolveStatus::Infeasible, "constraint violation cannot be reduced");
      if (mu_ > mu_min_ && mu_rescues < 3) {
        ++mu_rescues;
        mu_ = std::max(mu_min_, kKappaMu * mu_);
        tau_ = std::max(kTauMin, 1.0 - mu_);
        filter.clear();
        filter.push_back({theta_cap, -kInf});
        pairs_.clear();
        rebuild_compact();
        delta_last_ = std::max(delta_last_, 1e-4);
        continue;
      }
      if (stall_count >= 2)
        return finalize(SolveStatus::NumericalFailure, "line search failed to make progress");
      continue;
    }
    stall_count = 0;
    last_alpha_ = alpha_used;
    if (augment)
      filter.push_back({(1.0 - kGammaTheta) * theta_k, phi_k - kGammaPhi * theta_k});

    if (opt_.print_level >= 3) {
      std::fprintf(stderr,
                   "      step a=%8.2e  |dz|=%8.2e  |dy|=%8.2e  dphi=% 8.2e  soc=%d  "
                   "augment=%d  filter=%zu\n",
                   alpha_used, inf_norm(dz_fin), inf_norm(dy_fin), d_phi,
                   used_soc ? 1 : 0, augment ? 1 : 0, filter.size());
    }

    // bound-multiplier steps recovered from the eliminated complementarity
    // rows, for the direction that was actually taken
    Vec dzL = Vec::Zero(n_z_), dzU = Vec::Zero(n_z_);
    double a_dual = 1.0;
    for (int i = 0; i < n_z_; ++i) {
      if (lo_[i]) {
        const double sl = z_(i) - zl_(i);
        dzL(i) = mu_ / sl - zL_(i) - zL_(i) / sl * dz_fin(i);
        if (dzL(i) < 0.0) a_dual = std::min(a_dual, -tau_ * zL_(i) / dzL(i));
      }
      if (up_[i]) {
        const double su = zu_(i) - z_(i);
        dzU(i) = mu_ / su - zU_(i) + zU_(i) / su * dz_fin(i);
        if (dzU(i) < 0.0) a_dual = std::min(a_dual, -tau_ * zU_(i) / dzU(i));
      }
    }

    // bookkeeping for the quasi-Newton pair before overwriting point data
    Vec x_old, g_old, jv_old;
    if (!exact_) {
      x_old = z_.head(n_);
      g_old = g_raw_;
      jv_old = jvals_;
    }

    z_ = z_t;
    y_ += alpha_used * dy_fin;
    zL_ += a_dual * dzL;
    zU_ += a_dual * dzU;

    // A row carrying a slack is an inequality in disguise: at any central
    // point its multiplier equals the slack's bound multiplier mu/s, so it
    // inherits the same commensurate-with-mu box as the bound multipliers.
    // Without this, a degenerate row (a thrust-cone apex, say) lets the
    // multiplier random-walk far off the path, and the curvature it feeds
    // into W is no longer balanced by the barrier.
    for (int i = 0; i < m_; ++i) {
      const int si = slack_of_[i];
      if (si < 0) continue;
      const int zi = n_ + si;
      double cap = kInf;
      if (lo_[zi]) cap = std::min(cap, kKappaRow * mu_ / (z_(zi) - zl_(zi)));
      if (up_[zi]) cap = std::min(cap, kKappaRow * mu_ / (zu_(zi) - z_(zi)));
      y_(i) = std::clamp(y_(i), -cap, cap);
    }
    f_raw_ = f_t;
    c_raw_ = c_t;
    r_ = r_t;
    g_raw_ = g_t;
    jvals_ = jv_t;
    viol_ = violation(c_raw_);
    if (exact_) eval_hessian(z_.head(n_));

    // Slack gap floor: a slack that dives far below the mu scale while the
    // barrier is still large invites the degenerate escape ray (gap -> 0,
    // multiplier -> inf, mutually central the whole way), and the comp-row
    // recovery then amplifies any slack micro-motion into violent dual
    // swings. Reseat such a slack at a mu-proportional gap; the residual
    // perturbation is of the same tiny size as the gap correction.
    for (int i = 0; i < m_; ++i) {
      const int si = slack_of_[i];
      if (si < 0) continue;
      const int zi = n_ + si;
      const double floor = kGapFloor * mu_;
      double shift = 0.0;
      if (up_[zi] && zu_(zi) - z_(zi) < floor && (!lo_[zi] || zu_(zi) - floor > zl_(zi) + floor))
        shift = (zu_(zi) - floor) - z_(zi);
      else if (lo_[zi] && z_(zi) - zl_(zi) < floor && (!up_[zi] || zl_(zi) + floor < zu_(zi) - floor))
        shift = (zl_(zi) + floor) - z_(zi);
      if (shift != 0.0) {
        z_(zi) += shift;
        r_(i) -= shift;
      }
    }

    // keep bound multipliers commensurate with the barrier parameter
    for (int i = 0; i < n_z_; ++i) {
      if (lo_[i]) {
        const double sl = z_(i) - zl_(i);
        zL_(i) = std::min(std::max(zL_(i), mu_ / (kKappaSigma * sl)), kKappaSigma * mu_ / sl);
      }
      if (up_[i]) {
        const double su = zu_(i) - z_(i);
        zU_(i) = std::min(std::max(zU_(i), mu_ / (kKappaSigma * su)), kKappaSigma * mu_ / su);
      }
    }

    if (!exact_) {
      const Vec x_new = z_.head(n_);
      Vec yv = d_f_ * (g_raw_ - g_old);
      Vec tmp = Vec::Zero(n_);
      jac_t_mult_x(jvals_, y_, tmp);
      yv += tmp;
      tmp.setZero();
      jac_t_mult_x(jv_old, y_, tmp);
      yv -= tmp;
      push_pair(x_new - x_old, yv);
    }
  }

  const Errors ef = scaled_errors(0.0);
  if (ef.total <= opt_.tol && viol_ <= opt_.constraint_tol)
    return finalize(SolveStatus::Optimal, "optimal point found");
  if (ef.total <= opt_.acceptable_tol && viol_ <= opt_.constraint_tol)
    return finalize(SolveStatus::AcceptableTolerance, "iteration limit at acceptable tolerance");
  return finalize(SolveStatus::MaxIterations, "iteration limit reached");
}

void Ipm::pick_scaling(const Vec& x_start) {
  d_f_ = 1.0;
  d_c_ = Vec::Ones(m_);
  if (!opt_.auto_scale) return;
  Vec g(n_);
  if (!prob_.gradient(x_start, g) || !g.allFinite()) return;
  const double gmax = inf_norm(g);
  if (gmax > kGradScaleMax) d_f_ = kGradScaleMax / gmax;
  if (m_ == 0) return;
  const auto& pat = prob_.jacobian_pattern();
  Vec jv(static_cast<int>(pat.size()));
  if (!prob_.jacobian(x_start, jv) || !jv.allFinite()) return;
  Vec row_max = Vec::Zero(m_);
  for (size_t k = 0; k < pat.size(); ++k)
    row_max(pat[k].first) = std::max(row_max(pat[k].first), std::abs(jv(static_cast<int>(k))));
  for (int i = 0; i < m_; ++i)
    if (row_max(i) > kGradScaleMax) d_c_(i) = kGradScaleMax / row_max(i);
}

bool Ipm::initialize_point(const Vec& x0, std::string& why) {
  if (!x0.allFinite()) {
    why = "start point contains non-finite entries";
    return false;
  }
  z_ = Vec::Zero(n_z_);
  for (int i = 0; i < n_; ++i) {
    double v = x0(i);
    const double l = zl_(i), u = zu_(i);
    if (lo_[i] && up_[i]) {
      const double pl = std::min(kPush * std::max(1.0, std::abs(l)), kPush * (u - l));
      const double pu = std::min(kPush * std::max(1.0, std::abs(u)), kPush * (u - l));
      if (l + pl > u - pu)
        v = 0.5 * (l + u);
      else
        v = std::min(std::max(v, l + pl), u - pu);
    } else if (lo_[i]) {
      v = std::max(v, l + kPush * std::max(1.0, std::abs(l)));
    } else if (up_[i]) {
      v = std::min(v, u - kPush * std::max(1.0, std::abs(u)));
    }
    z_(i) = v;
  }

  Vec c(m_);
  if (m_ > 0 && (!prob_.constraints(z_.head(n_), c) || !c.allFinite())) {
    why = "cannot evaluate constraints at the initial point";
    return false;
  }
  for (int i = 0; i < m_; ++i) {
    if (slack_of_[i] < 0) continue;
    const int j = n_ + slack_of_[i];
    double v = d_c_(i) * c(i);
    const double l = zl_(j), u = zu_(j);
    if (lo_[j] && up_[j]) {
      const double pl = std::min(kPush * std::max(1.0, std::abs(l)), kPush * (u - l));
      const double pu = std::min(kPush * std::max(1.0, std::abs(u)), kPush * (u - l));
      if (l + pl > u - pu)
        v = 0.5 * (l + u);
      else
        v = std::min(std::max(v, l + pl), u - pu);
    } else if (lo_[j]) {
      v = std::max(v, l + kPush * std::max(1.0, std::abs(l)));
    } else if (up_[j]) {
      v = std::min(v, u - kPush * std::max(1.0, std::abs(u)));
    }
    z_(j) = v;
  }

  if (!eval_fc(z_, f_raw_, c_raw_, r_)) {
    why = "cannot evaluate the problem at the initial point";
    return false;
  }
  g_raw_.resize(n_);
  jvals_.resize(static_cast<int>(prob_.jacobian_pattern().size()));
  if (!eval_derivs(z_.head(n_), g_raw_, jvals_)) {
    why = "cannot evaluate derivatives at the initial point";
    return false;
  }
  viol_ = violation(c_raw_);
  y_ = Vec::Zero(m_);
  zL_ = Vec::Zero(n_z_);
  zU_ = Vec::Zero(n_z_);
  if (exact_) eval_hessian(z_.head(n_));
  for (int i = 0; i < n_z_; ++i) {
    if (lo_[i]) zL_(i) = std::min(std::max(mu_ / (z_(i) - zl_(i)), 1e-8), 1e8);
    if (up_[i]) zU_(i) = std::min(std::max(mu_ / (zu_(i) - z_(i)), 1e-8), 1e8);
  }
  sigma_ = 1.0;
  pairs_.clear();
  rebuild_compact();
  return true;
}

bool Ipm::eval_fc(const Vec& z, double& f_raw, Vec& c_raw, Vec& r) const {
  if (!prob_.objective(z.head(n_), f_raw) || !std::isfinite(f_raw)) return false;
  c_raw.resize(m_);
  if (m_ > 0 && (!prob_.constraints(z.head(n_), c_raw) || !c_raw.allFinite())) return false;
  r.resize(m_);
  for (int i = 0; i < m_; ++i) {
    const double cs = d_c_(i) * c_raw(i);
    r(i) = slack_of_[i] < 0 ? cs - beq_(i) : cs - z(n_ + slack_of_[i]);
  }
  return true;
}

bool Ipm::eval_derivs(const Vec& x, Vec& g_raw, Vec& jvals) const {
  if (!prob_.gradient(x, g_raw) || !g_raw.allFinite()) return false;
  if (m_ > 0 && (!prob_.jacobian(x, jvals) || !jvals.allFinite())) return false;
  return true;
}

bool Ipm::eval_hessian(const Vec& x) {
  hess_ok_ = false;
  const auto& pat = prob_.hessian_pattern();
  hvals_.resize(static_cast<int>(pat.size()));
  if (!prob_.hessian(x, d_f_, d_c_.cwiseProduct(y_), hvals_) || !hvals_.allFinite()) {
    hvals_.setZero();
    return false;
  }
  hess_ok_ = true;
  return true;
}

double Ipm::violation(const Vec& c_raw) const {
  double v = 0.0;
  for (int i = 0; i < m_; ++i) {
    if (std::isfinite(cl_(i))) v = std::max(v, cl_(i) - c_raw(i));
    if (std::isfinite(cu_(i))) v = std::max(v, c_raw(i) - cu_(i));
  }
  return v;
}

void Ipm::jac_t_mult(const Vec& jvals, const Vec& v, Vec& out) const {
  const auto& pat = prob_.jacobian_pattern();
  for (size_t k = 0; k < pat.size(); ++k)
    out(pat[k].second) += d_c_(pat[k].first) * jvals(static_cast<int>(k)) * v(pat[k].first);
  for (int i = 0; i < m_; ++i)
    if (slack_of_[i] >= 0) out(n_ + slack_of_[i]) -= v(i);
}

void Ipm::jac_t_mult_x(const Vec& jvals, const Vec& v, Vec& out) const {
  const auto& pat = prob_.jacobian_pattern();
  for (size_t k = 0; k < pat.size(); ++k)
    out(pat[k].second) += d_c_(pat[k].first) * jvals(static_cast<int>(k)) * v(pat[k].first);
}

double Ipm::barrier_value(const Vec& z, double f_s) const {
  double phi = f_s;
  for (int i = 0; i < n_z_; ++i) {
    if (lo_[i]) {
      const double sl = z(i) - zl_(i);
      if (sl <= 0.0) return kInf;
      phi -= mu_ * std::log(sl);
    }
    if (up_[i]) {
      const double su = zu_(i) - z(i);
      if (su <= 0.0) return kInf;
      phi -= mu_ * std::log(su);
    }
  }
  return phi;
}

Eigen::VectorXd Ipm::barrier_grad() const {
  Vec g = Vec::Zero(n_z_);
  g.head(n_) = d_f_ * g_raw_;
  for (int i = 0; i < n_z_; ++i) {
    if (lo_[i]) g(i) -= mu_ / (z_(i) - zl_(i));
    if (up_[i]) g(i) += mu_ / (zu_(i) - z_(i));
  }
  return g;
}

Ipm::Errors Ipm::scaled_errors(double mu) const {
  Errors e;
  Vec dual = Vec::Zero(n_z_);
  dual.head(n_) = d_f_ * g_raw_;
  jac_t_mult(jvals_, y_, dual);
  dual -= zL_;
  dual += zU_;
  double comp = 0.0;
  for (int i = 0; i < n_z_; ++i) {
    if (lo_[i]) comp = std::max(comp, std::abs((z_(i) - zl_(i)) * zL_(i) - mu));
    if (up_[i]) comp = std::max(comp, std::abs((zu_(i) - z_(i)) * zU_(i) - mu));
  }
  const double mult_sum = one_norm(y_) + one_norm(zL_) + one_norm(zU_);
  const double s_d = std::max(kSMax, mult_sum / std::max(1, m_ + nb_)) / kSMax;
  const double s_c = std::max(kSMax, (one_norm(zL_) + one_norm(zU_)) / std::max(1, nb_)) / kSMax;
  e.dual = inf_norm(dual) / s_d;
  e.primal = inf_norm(r_);
  e.comp = comp / s_c;
  e.total = std::max({e.dual, e.primal, e.comp});
  return e;
}

bool Ipm::factorize() {
  std::vector<Eigen::Triplet<double>> trips;
  const auto& jpat = prob_.jacobian_pattern();
  const auto& hpat = prob_.hessian_pattern();
  trips.reserve((exact_ ? hpat.size() : 0) + jpat.size() + n_z_ + m_ + m_ineq_);

  if (exact_) {
    for (size_t k = 0; k < hpat.size(); ++k) {
      const int r = std::max(hpat[k].first, hpat[k].second);
      const int c = std::min(hpat[k].first, hpat[k].second);
      trips.emplace_back(r, c, hess_ok_ ? hvals_(static_cast<int>(k)) : 0.0);
    }
  }
  for (int i = 0; i < n_z_; ++i) {
    double d = delta_x_;
    if (lo_[i]) d += zL_(i) / (z_(i) - zl_(i));
    if (up_[i]) d += zU_(i) / (zu_(i) - z_(i));
    if (i < n_ && (!exact_ || !hess_ok_)) d += exact_ ? 1.0 : sigma_;
    trips.emplace_back(i, i, d);
  }
  for (size_t k = 0; k < jpat.size(); ++k)
    trips.emplace_back(n_z_ + jpat[k].first, jpat[k].second,
                       d_c_(jpat[k].first) * jvals_(static_cast<int>(k)));
  for (int i = 0; i < m_; ++i) {
    if (slack_of_[i] >= 0) trips.emplace_back(n_z_ + i, n_ + slack_of_[i], -1.0);
    trips.emplace_back(n_z_ + i, n_z_ + i, -delta_c_);
  }

  kkt_.resize(dim_, dim_);
  kkt_.setFromTriplets(trips.begin(), trips.end());
  if (!analyzed_) {
    ldlt_.analyzePattern(kkt_);
    analyzed_ = true;
  }
  ldlt_.factorize(kkt_);
  if (ldlt_.info() != Eigen::Success) return false;

  const Vec d = ldlt_.vectorD();
  if (!d.allFinite()) return false;
  int neg = 0;
  for (int i = 0; i < d.size(); ++i) {
    if (d(i) < 0.0) ++neg;
    if (std::abs(d(i)) < 1e-300) return false;
  }
  if (neg != m_) return false;

  smw_ready_ = false;
  if (!exact_ && !pairs_.empty()) {
    const int q2 = static_cast<int>(2 * pairs_.size());
    v_cols_.resize(dim_, q2);
    Vec col = Vec::Zero(dim_);
    for (int j = 0; j < q2; ++j) {
      col.head(n_) = wx_.col(j);
      v_cols_.col(j) = ldlt_.solve(col);
    }
    Mat g = minv_mat_ - wx_.transpose() * v_cols_.topRows(n_);
    g_lu_.compute(g);
    if (!g_lu_.isInvertible()) {
      pairs_.clear();
      rebuild_compact();
      return factorize();
    }
    smw_ready_ = true;
  }
  return true;
}

void Ipm::apply_kkt(const Vec& v, Vec& out) const {
  out = kkt_.selfadjointView<Eigen::Lower>() * v;
  if (smw_ready_) out.head(n_) -= wx_ * m_lu_.solve(wx_.transpose() * v.head(n_));
}

bool Ipm::solve_kkt(const Vec& rhs, Vec& sol) const {
  auto inner = [&](const Vec& b) -> Vec {
    Vec u = ldlt_.solve(b);
    if (smw_ready_) u += v_cols_ * g_lu_.solve(wx_.transpose() * u.head(n_));
    return u;
  };
  sol = inner(rhs);
  const double bnorm = std::max(1.0, inf_norm(rhs));
  double res_norm = kInf;
  for (int pass = 0; pass < kRefineSteps; ++pass) {
    Vec resid(dim_);
    apply_kkt(sol, resid);
    resid = rhs - resid;
    res_norm = inf_norm(resid);
    if (res_norm <= 1e-11 * bnorm) break;
    sol += inner(resid);
  }
  if (res_norm == kInf) {
    Vec resid(dim_);
    apply_kkt(sol, resid);
    res_norm = inf_norm(rhs - resid);
  }
  return sol.allFinite() && res_norm <= 1e-6 * bnorm;
}

bool Ipm::restore_feasibility() {
  // Damped least-squares descent on the scaled residual, keeping the iterate
  // strictly inside the bounds. The augmented matrix reuses the KKT sparsity
  // pattern with the curvature block replaced by the damping diagonal and the
  // dual block by -I, so each solve is a Levenberg step on min 1/2 |J dz + r|^2.
  // No barrier term here: a slack parked near its bound must be free to stay,
  // and the fraction-to-boundary cap alone keeps the iterate interior.
  const auto& jpat = prob_.jacobian_pattern();
  const auto& hpat = prob_.hessian_pattern();
  const double theta_enter = one_norm(r_);
  double lam = 1e-6;
  int improved = 0;
  for (int it = 0; it < 30; ++it) {
    const double theta = one_norm(r_);
    if (theta <= 0.1 * theta_enter || theta <= 1e-12) break;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve((exact_ ? hpat.size() : 0) + jpat.size() + n_z_ + 2 * m_);
    if (exact_) {
      for (const auto& e : hpat)
        trips.emplace_back(std::max(e.first, e.second), std::min(e.first, e.second), 0.0);
    }
    for (int i = 0; i < n_z_; ++i) trips.emplace_back(i, i, lam);
    for (size_t k = 0; k < jpat.size(); ++k)
      trips.emplace_back(n_z_ + jpat[k].first, jpat[k].second,
                         d_c_(jpat[k].first) * jvals_(static_cast<int>(k)));
    for (int i = 0; i < m_; ++i) {
      if (slack_of_[i] >= 0) trips.emplace_back(n_z_ + i, n_ + slack_of_[i], -1.0);
      trips.emplace_back(n_z_ + i, n_z_ + i, -1.0);
    }
    kkt_.resize(dim_, dim_);
    kkt_.setFromTriplets(trips.begin(), trips.end());
    if (!analyzed_) {
      ldlt_.analyzePattern(kkt_);
      analyzed_ = true;
    }
    ldlt_.factorize(kkt_);
    bool ok = ldlt_.info() == Eigen::Success && ldlt_.vectorD().allFinite();
    Vec dz;
    if (ok) {
      Vec rhs(dim_);
      rhs.head(n_z_).setZero();
      rhs.tail(m_) = -r_;
      const Vec sol = ldlt_.solve(rhs);
      dz = sol.head(n_z_);
      ok = dz.allFinite();
    }
    if (!ok) {
      lam *= 10.0;
      if (lam > 1e12) break;
      continue;
    }
    double a = 1.0;
    for (int i = 0; i < n_z_; ++i) {
      if (lo_[i] && dz(i) < 0.0) a = std::min(a, -tau_ * (z_(i) - zl_(i)) / dz(i));
      if (up_[i] && dz(i) > 0.0) a = std::min(a, tau_ * (zu_(i) - z_(i)) / dz(i));
    }
    if (a < 1e-3) {
      // one variable rams its bound; re-damp so the direction shortens
      lam *= 10.0;
      if (lam > 1e12) break;
      continue;
    }
    bool stepped = false;
    for (int bt = 0; bt < 12 && !stepped; ++bt, a *= 0.5) {
      const Vec z_t = z_ + a * dz;
      double f_t;
      Vec c_t, r_t;
      if (!eval_fc(z_t, f_t, c_t, r_t)) continue;
      if (opt_.print_level >= 3 && bt == 0)
        std::fprintf(stderr,
                     "      rest it=%d lam=%8.2e |dz|=%8.2e a0=%8.2e r0=%8.2e rt=%8.2e\n",
                     it, lam, inf_norm(dz), a, theta, one_norm(r_t));
      if (one_norm(r_t) >= (1.0 - 1e-4 * a) * theta) continue;
      Vec g_t(n_), jv_t(static_cast<int>(jpat.size()));
      if (!eval_derivs(z_t.head(n_), g_t, jv_t)) continue;
      z_ = z_t;
      f_raw_ = f_t;
      c_raw_ = c_t;
      r_ = r_t;
      g_raw_ = g_t;
      jvals_ = jv_t;
      stepped = true;
    }
    if (!stepped) {
      lam *= 10.0;
      if (lam > 1e12) break;
    } else {
      ++improved;
      lam = std::max(1e-8, 0.3 * lam);
    }
  }
  viol_ = violation(c_raw_);
  smw_ready_ = false;
  if (opt_.print_level >= 2)
    std::fprintf(stderr, "      restore theta %8.2e -> %8.2e  steps=%d  lam=%8.2e\n",
                 theta_enter, one_norm(r_), improved, lam);
  return improved > 0 && one_norm(r_) <= 0.9 * theta_enter;
}

void Ipm::rebuild_compact() {
  smw_ready_ = false;
  const int q = static_cast<int>(pairs_.size());
  if (q == 0) {
    wx_.resize(n_, 0);
    minv_mat_.resize(0, 0);
    return;
  }
  Mat s(n_, q), yv(n_, q);
  for (int j = 0; j < q; ++j) {
    s.col(j) = pairs_[j].first;
    yv.col(j) = pairs_[j].second;
  }
  Mat sty = s.transpose() * yv;  // (i,j) = s_i . y_j
  Mat lmat = Mat::Zero(q, q);
  Vec dvec(q);
  for (int i = 0; i < q; ++i) {
    dvec(i) = sty(i, i);
    for (int j = 0; j < i; ++j) lmat(i, j) = sty(i, j);
  }
  minv_mat_.resize(2 * q, 2 * q);
  minv_mat_.topLeftCorner(q, q) = sigma_ * (s.transpose() * s);
  minv_mat_.topRightCorner(q, q) = lmat;
  minv_mat_.bottomLeftCorner(q, q) = lmat.transpose();
  minv_mat_.bottomRightCorner(q, q) = -Mat(dvec.asDiagonal());
  wx_.resize(n_, 2 * q);
  wx_.leftCols(q) = sigma_ * s;
  wx_.rightCols(q) = yv;
  m_lu_.compute(minv_mat_);
  if (!m_lu_.isInvertible()) {
    pairs_.pop_front();
    rebuild_compact();
  }
}

Eigen::VectorXd Ipm::apply_B(const Vec& v) const {
  if (pairs_.empty()) return sigma_ * v;
  return sigma_ * v - wx_ * m_lu_.solve(wx_.transpose() * v);
}

void Ipm::push_pair(const Vec& s, const Vec& yvec) {
  if (inf_norm(s) <= 1e-14 * (1.0 + inf_norm(z_.head(n_)))) return;
  const Vec bs = apply_B(s);
  const double s_bs = s.dot(bs);
  if (!(s_bs > 0.0) || !std::isfinite(s_bs)) return;
  Vec yd = yvec;
  double sy = s.dot(yd);
  if (sy < 0.2 * s_bs) {
    const double theta = 0.8 * s_bs / (s_bs - sy);
    yd = theta * yvec + (1.0 - theta) * bs;
    sy = s.dot(yd);
  }
  if (!(sy > 1e-16 * s_bs) || !yd.allFinite()) return;
  pairs_.emplace_back(s, yd);
  while (static_cast<int>(pairs_.size()) > std::max(1, opt_.lbfgs_memory)) pairs_.pop_front();
  sigma_ = std::min(std::max(yd.squaredNorm() / sy, 1e-8), 1e12);
  rebuild_compact();
}

bool Ipm::looks_infeasible(bool stalled) const {
  if (viol_ <= std::max(100.0 * opt_.constraint_tol, 1e-6)) return false;
  Vec gfeas = Vec::Zero(n_z_);
  jac_t_mult(jvals_, r_, gfeas);
  for (int i = 0; i < n_z_; ++i) {
    if (lo_[i] && z_(i) - zl_(i) <= 1e-6 * std::max(1.0, std::abs(zl_(i))))
      gfeas(i) = std::min(gfeas(i), 0.0);
    if (up_[i] && zu_(i) - z_(i) <= 1e-6 * std::max(1.0, std::abs(zu_(i))))
      gfeas(i) = std::max(gfeas(i), 0.0);
  }
  // stationarity of 1/2 |r|^2 relative to the attainable descent scale |J||r|
  double jnorm = 0.0;
  const auto& pat = prob_.jacobian_pattern();
  for (size_t k = 0; k < pat.size(); ++k)
    jnorm = std::max(jnorm, std::abs(d_c_(pat[k].first) * jvals_(static_cast<int>(k))));
  const bool stationary = inf_norm(gfeas) <= 1e-4 * std::max(1.0, jnorm) * inf_norm(r_);
  const bool multipliers_blown = inf_norm(y_) >= 1e8;
  (void)stalled;  // a stalled line search alone is not evidence of infeasibility
  return stationary || multipliers_blown;
}

SolveResult Ipm::finalize(SolveStatus st, const std::string& msg) {
  SolveResult out;
  out.status = st;
  out.message = msg;
  out.iterations = iters_;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start_).count();
  if (z_.size() < n_z_ || y_.size() != m_ || zL_.size() != n_z_) {
    out.x = z_.size() >= n_ ? Vec(z_.head(n_)) : Vec::Zero(std::max(0, n_));
    return out;
  }
  out.x = z_.head(n_);
  out.lambda = m_ > 0 ? Vec(d_c_.cwiseProduct(y_) / d_f_) : Vec::Zero(0);
  out.z_lower = zL_.head(n_) / d_f_;
  out.z_upper = zU_.head(n_) / d_f_;
  out.objective = f_raw_;
  out.constraint_violation = viol_;

  // honest KKT residual in user scaling at the returned point
  const auto& pat = prob_.jacobian_pattern();
  if (g_raw_.size() == n_ && (m_ == 0 || jvals_.size() == static_cast<int>(pat.size()))) {
    Vec dual = g_raw_;
    for (size_t k = 0; k < pat.size(); ++k)
      dual(pat[k].second) += jvals_(static_cast<int>(k)) * out.lambda(pat[k].first);
    dual -= out.z_lower;
    dual += out.z_upper;
    out.dual_infeasibility = inf_norm(dual);
  }
  double comp = 0.0;
  for (int i = 0; i < n_z_; ++i) {
    if (lo_[i]) comp = std::max(comp, std::abs((z_(i) - zl_(i)) * zL_(i)));
    if (up_[i]) comp = std::max(comp, std::abs((zu_(i) - z_(i)) * zU_(i)));
  }
  out.complementarity = comp / d_f_;
  return out;
}

}  // namespace

SolveResult solve_interior_point(const NlpProblem& problem, const Eigen::VectorXd& x0,
                                 const SolveOptions& options) {
  Ipm ipm(problem, options);
  return ipm.run(x0);
}

}  // namespace revolve
