#include "revolve/transcription.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace revolve {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

using Triplets = std::vector<Eigen::Triplet<double>>;

// Storage order of a compressed column-major matrix built from triplets; the
// same support always compresses to the same order, so value arrays filled in
// this order line up with the pattern across calls.
SparsityPattern compress(int rows, int cols, const Triplets& trips, Eigen::SparseMatrix<double>& m) {
  m.resize(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  SparsityPattern pat;
  pat.reserve(m.nonZeros());
  for (int c = 0; c < m.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it)
      pat.emplace_back(int(it.row()), int(it.col()));
  return pat;
}

}  // namespace

Transcription::Transcription(const ScaledProblem& problem, const Mesh& mesh, int order)
    : prob_(problem), mesh_(mesh), basis_(lgl_basis(order)) {
  if (!(prob_.def.dynamics.u_max > 0.0))
    throw std::invalid_argument("transcription requires u_max > 0");
  const int N = mesh_.intervals();
  const int K = order;

  lay_.n_sub = N;
  lay_.order = K;
  lay_.n_state_nodes = N * (K - 1) + 1;
  lay_.n_control_nodes = N * K;
  lay_.n_vars = 7 * lay_.n_state_nodes + 4 * lay_.n_control_nodes;
  lay_.n_defects = 7 * N * (K - 1);
  lay_.n_cones = lay_.n_control_nodes;
  lay_.n_boundary = prob_.def.depart.fixed_count() + prob_.def.arrive.fixed_count();
  lay_.n_cons = lay_.n_defects + lay_.n_cones + lay_.n_boundary;

  half_.resize(N);
  nodes_.resize(N * K);
  for (int i = 0; i < N; ++i) {
    const double a = mesh_.points(i), b = mesh_.points(i + 1);
    half_[i] = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int l = 0; l < K; ++l) {
      NodeRef& n = nodes_[i * K + l];
      n.sub = i;
      n.j = l;
      // endpoint nodes exactly on the mesh points (no mid/half rounding)
      n.L = l == 0 ? a : (l == K - 1 ? b : mid + half_[i] * basis_.nodes(l));
      n.quad_w = half_[i] * basis_.weights(l);
    }
  }

  for (int c = 0; c < 7; ++c)
    if (prob_.def.depart.fixed[c])
      boundary_.push_back({lay_.state_index(0, c), prob_.def.depart.value(c)});
  for (int c = 0; c < 7; ++c)
    if (prob_.def.arrive.fixed[c])
      boundary_.push_back(
          {lay_.state_index(lay_.n_state_nodes - 1, c), prob_.def.arrive.value(c)});

  // Jacobian support (values irrelevant here): defect rows couple the two
  // bracketing state nodes of each component plus every collocation node of
  // the subinterval; cone rows touch one control block; boundary rows are
  // single entries. All structural slots are inserted even where a value is
  // identically zero so the support never depends on the evaluation point.
  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(lay_.n_vars);
  Eigen::Matrix<double, 6, 1> y;
  Eigen::Matrix<double, 4, 1> u;
  Triplets trips;
  for (int i = 0; i < N; ++i) {
    int cols[10];
    for (int j = 1; j < K; ++j) {
      for (int c = 0; c < 7; ++c) {
        const int row = lay_.defect_row(i, j, c);
        trips.emplace_back(row, lay_.state_index(lay_.state_node(i, j), c), 1.0);
        trips.emplace_back(row, lay_.state_index(lay_.state_node(i, 0), c), 1.0);
        for (int l = 0; l < K; ++l) {
          gather(zeros, i, l, y, u, cols);
          for (int q = 0; q < 10; ++q) trips.emplace_back(row, cols[q], 1.0);
        }
      }
    }
  }
  for (int cn = 0; cn < lay_.n_control_nodes; ++cn)
    for (int q = 0; q < 4; ++q)
      trips.emplace_back(lay_.cone_row(cn), lay_.control_index(cn, q), 1.0);
  for (size_t b = 0; b < boundary_.size(); ++b)
    trips.emplace_back(lay_.boundary_row(int(b)), boundary_[b].var, 1.0);
  Eigen::SparseMatrix<double> tmp;
  jac_pattern_ = compress(lay_.n_cons, lay_.n_vars, trips, tmp);

  // Hessian support: the 10x10 node block, lower triangle by global index.
  // The cone-row diagonal lives inside those blocks already.
  trips.clear();
  for (int i = 0; i < N; ++i) {
    int cols[10];
    for (int l = 0; l < K; ++l) {
      gather(zeros, i, l, y, u, cols);
      for (int a = 0; a < 10; ++a)
        for (int b = 0; b <= a; ++b) {
          const int r = std::max(cols[a], cols[b]), c = std::min(cols[a], cols[b]);
          trips.emplace_back(r, c, 1.0);
        }
    }
  }
  hess_pattern_ = compress(lay_.n_vars, lay_.n_vars, trips, tmp);
}

Transcription::~Transcription() = default;

void Transcription::gather(const Eigen::VectorXd& x, int sub, int j,
                           Eigen::Matrix<double, 6, 1>& y, Eigen::Matrix<double, 4, 1>& u,
                           int* cols) const {
  const int sn = lay_.state_node(sub, j);
  const int cn = lay_.control_node(sub, j);
  cols[0] = lay_.state_index(sn, iP);
  cols[1] = lay_.state_index(sn, iF);
  cols[2] = lay_.state_index(sn, iG);
  cols[3] = lay_.state_index(sn, iH);
  cols[4] = lay_.state_index(sn, iK);
  cols[5] = lay_.state_index(sn, iM);
  for (int q = 0; q < 4; ++q) cols[6 + q] = lay_.control_index(cn, q);
  for (int q = 0; q < 6; ++q) y(q) = x(cols[q]);
  for (int q = 0; q < 4; ++q) u(q) = x(cols[6 + q]);
}

void Transcription::bounds(Eigen::VectorXd& xl, Eigen::VectorXd& xu, Eigen::VectorXd& cl,
                           Eigen::VectorXd& cu) const {
  const ProblemDef& d = prob_.def;
  xl.resize(lay_.n_vars);
  xu.resize(lay_.n_vars);

  const double t0 = d.depart.value(iT);
  const double tf = d.arrive.fixed[iT] ? d.arrive.value(iT) : kInf;
  const double m0 = d.depart.value(iM);
  for (int sn = 0; sn < lay_.n_state_nodes; ++sn) {
    xl(lay_.state_index(sn, iP)) = d.bounds.p_min;
    xu(lay_.state_index(sn, iP)) = d.bounds.p_max;
    for (int c = iF; c <= iK; ++c) {
      xl(lay_.state_index(sn, c)) = -d.bounds.fghk_abs;
      xu(lay_.state_index(sn, c)) = d.bounds.fghk_abs;
    }
    xl(lay_.state_index(sn, iT)) = t0;
    xu(lay_.state_index(sn, iT)) = tf;
    xl(lay_.state_index(sn, iM)) = d.bounds.m_min;
    xu(lay_.state_index(sn, iM)) = m0;
  }
  // controls are stored as thrust fractions: u_physical = u_max * variable
  for (int cn = 0; cn < lay_.n_control_nodes; ++cn) {
    for (int q = 0; q < 3; ++q) {
      xl(lay_.control_index(cn, q)) = -1.0;
      xu(lay_.control_index(cn, q)) = 1.0;
    }
    xl(lay_.control_index(cn, 3)) = 0.0;
    xu(lay_.control_index(cn, 3)) = 1.0;
  }

  cl.resize(lay_.n_cons);
  cu.resize(lay_.n_cons);
  cl.head(lay_.n_defects).setZero();
  cu.head(lay_.n_defects).setZero();
  cl.segment(lay_.n_defects, lay_.n_cones).setConstant(-kInf);
  cu.segment(lay_.n_defects, lay_.n_cones).setZero();
  cl.tail(lay_.n_boundary).setZero();
  cu.tail(lay_.n_boundary).setZero();
}

bool Transcription::objective(const Eigen::VectorXd& x, double& f) const {
  const ProblemDef& d = prob_.def;
  const double um = d.dynamics.u_max;
  double J = 0.0;
  try {
    for (const NodeRef& n : nodes_) {
      Eigen::Matrix<double, 6, 1> y;
      Eigen::Matrix<double, 4, 1> u;
      int cols[10];
      gather(x, n.sub, n.j, y, u, cols);
      J += n.quad_w *
           sundman_node<double>(y, n.L, (um * u).eval(), d.dynamics, d.j2, d.objective).cost;
    }
  } catch (const std::domain_error&) {
    return false;
  }
  if (!std::isfinite(J)) return false;
  f = J;
  return true;
}

bool Transcription::gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
  using D = Dual<10>;
  const ProblemDef& d = prob_.def;
  const double um = d.dynamics.u_max;
  grad.setZero(lay_.n_vars);
  try {
    for (const NodeRef& n : nodes_) {
      Eigen::Matrix<double, 6, 1> y;
      Eigen::Matrix<double, 4, 1> u;
      int cols[10];
      gather(x, n.sub, n.j, y, u, cols);
      Eigen::Matrix<D, 6, 1> yd;
      Eigen::Matrix<D, 4, 1> ud;
      for (int q = 0; q < 6; ++q) yd(q) = D::seed(y(q), q);
      for (int q = 0; q < 4; ++q) ud(q) = D::seed(u(q), 6 + q) * um;
      const D cost = sundman_node<D>(yd, n.L, ud, d.dynamics, d.j2, d.objective).cost;
      for (int q = 0; q < 10; ++q) grad(cols[q]) += n.quad_w * cost.d(q);
    }
  } catch (const std::domain_error&) {
    return false;
  }
  return grad.allFinite();
}

bool Transcription::constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c) const {
  const ProblemDef& d = prob_.def;
  const double um = d.dynamics.u_max;
  const int N = lay_.n_sub, K = lay_.order;
  c.resize(lay_.n_cons);
  try {
    Eigen::Matrix<double, 7, Eigen::Dynamic> R(7, K);
    for (int i = 0; i < N; ++i) {
      for (int l = 0; l < K; ++l) {
        Eigen::Matrix<double, 6, 1> y;
        Eigen::Matrix<double, 4, 1> u;
        int cols[10];
        gather(x, i, l, y, u, cols);
        R.col(l) = sundman_node<double>(y, nodes_[i * K + l].L, (um * u).eval(), d.dynamics,
                                        d.j2, d.objective)
                       .state;
      }
      const int s0 = lay_.state_node(i, 0);
      for (int j = 1; j < K; ++j) {
        const int sj = lay_.state_node(i, j);
        for (int comp = 0; comp < 7; ++comp) {
          double integ = 0.0;
          for (int l = 0; l < K; ++l) integ += basis_.int_matrix(j, l) * R(comp, l);
          c(lay_.defect_row(i, j, comp)) = x(lay_.state_index(sj, comp)) -
                                           x(lay_.state_index(s0, comp)) - half_[i] * integ;
        }
      }
    }
  } catch (const std::domain_error&) {
    return false;
  }
  for (int cn = 0; cn < lay_.n_control_nodes; ++cn) {
    const double ur = x(lay_.control_index(cn, 0));
    const double ut = x(lay_.control_index(cn, 1));
    const double un = x(lay_.control_index(cn, 2));
    const double T = x(lay_.control_index(cn, 3));
    c(lay_.cone_row(cn)) = ur * ur + ut * ut + un * un - T * T;
  }
  for (size_t b = 0; b < boundary_.size(); ++b)
    c(lay_.boundary_row(int(b))) = x(boundary_[b].var) - boundary_[b].value;
  return c.allFinite();
}

bool Transcription::jacobian(const Eigen::VectorXd& x, Eigen::VectorXd& vals) const {
  using D = Dual<10>;
  const ProblemDef& d = prob_.def;
  const double um = d.dynamics.u_max;
  const int N = lay_.n_sub, K = lay_.order;

  Triplets trips;
  trips.reserve(jac_pattern_.size() + 8 * size_t(N) * K);
  try {
    std::vector<Eigen::Matrix<double, 7, 10>> Jn(K);
    std::vector<std::array<int, 10>> cols(K);
    for (int i = 0; i < N; ++i) {
      for (int l = 0; l < K; ++l) {
        Eigen::Matrix<double, 6, 1> y;
        Eigen::Matrix<double, 4, 1> u;
        gather(x, i, l, y, u, cols[l].data());
        Eigen::Matrix<D, 6, 1> yd;
        Eigen::Matrix<D, 4, 1> ud;
        for (int q = 0; q < 6; ++q) yd(q) = D::seed(y(q), q);
        for (int q = 0; q < 4; ++q) ud(q) = D::seed(u(q), 6 + q) * um;
        const auto r = sundman_node<D>(yd, nodes_[i * K + l].L, ud, d.dynamics, d.j2, d.objective);
        for (int comp = 0; comp < 7; ++comp) Jn[l].row(comp) = r.state(comp).d;
      }
      for (int j = 1; j < K; ++j) {
        for (int comp = 0; comp < 7; ++comp) {
          const int row = lay_.defect_row(i, j, comp);
          trips.emplace_back(row, lay_.state_index(lay_.state_node(i, j), comp), 1.0);
          trips.emplace_back(row, lay_.state_index(lay_.state_node(i, 0), comp), -1.0);
          for (int l = 0; l < K; ++l) {
            const double coef = -half_[i] * basis_.int_matrix(j, l);
            for (int q = 0; q < 10; ++q)
              trips.emplace_back(row, cols[l][q], coef * Jn[l](comp, q));
          }
        }
      }
    }
  } catch (const std::domain_error&) {
    return false;
  }
  for (int cn = 0; cn < lay_.n_control_nodes; ++cn) {
    const int row = lay_.cone_row(cn);
    trips.emplace_back(row, lay_.control_index(cn, 0), 2.0 * x(lay_.control_index(cn, 0)));
    trips.emplace_back(row, lay_.control_index(cn, 1), 2.0 * x(lay_.control_index(cn, 1)));
    trips.emplace_back(row, lay_.control_index(cn, 2), 2.0 * x(lay_.control_index(cn, 2)));
    trips.emplace_back(row, lay_.control_index(cn, 3), -2.0 * x(lay_.control_index(cn, 3)));
  }
  for (size_t b = 0; b < boundary_.size(); ++b)
    trips.emplace_back(lay_.boundary_row(int(b)), boundary_[b].var, 1.0);

  Eigen::SparseMatrix<double> m(lay_.n_cons, lay_.n_vars);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  if (size_t(m.nonZeros()) != jac_pattern_.size()) return false;  // support drift: bug guard
  vals = Eigen::Map<const Eigen::VectorXd>(m.valuePtr(), m.nonZeros());
  return vals.allFinite();
}

bool Transcription::hessian(const Eigen::VectorXd& x, double sigma_f,
                            const Eigen::VectorXd& lambda, Eigen::VectorXd& vals) const {
  using D2 = Dual2<10>;
  const ProblemDef& d = prob_.def;
  const double um = d.dynamics.u_max;
  const int N = lay_.n_sub, K = lay_.order;

  Triplets trips;
  trips.reserve(hess_pattern_.size());
  try {
    for (int i = 0; i < N; ++i) {
      for (int l = 0; l < K; ++l) {
        Eigen::Matrix<double, 6, 1> y;
        Eigen::Matrix<double, 4, 1> u;
        int cols[10];
        gather(x, i, l, y, u, cols);
        Eigen::Matrix<D2, 6, 1> yd;
        Eigen::Matrix<D2, 4, 1> ud;
        for (int q = 0; q < 6; ++q) yd(q) = D2::seed(y(q), q);
        for (int q = 0; q < 4; ++q) ud(q) = D2::seed(u(q), 6 + q) * um;
        const auto r = sundman_node<D2>(yd, nodes_[i * K + l].L, ud, d.dynamics, d.j2, d.objective);

        // Lagrangian weight of each node output: defect rows that reference
        // this node, plus the objective quadrature weight on the cost output
        Eigen::Matrix<double, 10, 10> H = sigma_f * nodes_[i * K + l].quad_w * r.cost.H;
        for (int comp = 0; comp < 7; ++comp) {
          double wgt = 0.0;
          for (int j = 1; j < K; ++j)
            wgt += lambda(lay_.defect_row(i, j, comp)) * (-half_[i] * basis_.int_matrix(j, l));
          H += wgt * r.state(comp).H;
        }
        for (int a = 0; a < 10; ++a)
          for (int b = 0; b <= a; ++b) {
            const int rr = std::max(cols[a], cols[b]), cc = std::min(cols[a], cols[b]);
            trips.emplace_back(rr, cc, H(a, b));
          }
      }
    }
  } catch (const std::domain_error&) {
    return false;
  }
  for (int cn = 0; cn < lay_.n_control_nodes; ++cn) {
    const double lam = lambda(lay_.cone_row(cn));
    for (int q = 0; q < 3; ++q) {
      const int idx = lay_.control_index(cn, q);
      trips.emplace_back(idx, idx, 2.0 * lam);
    }
    const int idxT = lay_.control_index(cn, 3);
    trips.emplace_back(idxT, idxT, -2.0 * lam);
  }

  Eigen::SparseMatrix<double> m(lay_.n_vars, lay_.n_vars);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  if (size_t(m.nonZeros()) != hess_pattern_.size()) return false;
  vals = Eigen::Map<const Eigen::VectorXd>(m.valuePtr(), m.nonZeros());
  return vals.allFinite();
}

Eigen::VectorXd Transcription::initial_guess() const {
  const ProblemDef& d = prob_.def;
  const double span = d.Lf - d.L0;
  Eigen::VectorXd x(lay_.n_vars);

  State7<double> target = d.arrive.value;
  for (int c = 0; c < 7; ++c)
    if (!d.arrive.fixed[c]) target(c) = d.depart.value(c);
  target(iM) = d.depart.value(iM);  // mass guess held constant

  if (!d.arrive.fixed[iT]) {
    // coast estimate: average dt/dL at the two endpoint orbits
    Eigen::Matrix<double, 6, 1> y0, y1;
    const Eigen::Matrix<double, 4, 1> uz = Eigen::Matrix<double, 4, 1>::Zero();
    y0 << d.depart.value(iP), d.depart.value(iF), d.depart.value(iG), d.depart.value(iH),
        d.depart.value(iK), d.depart.value(iM);
    y1 << target(iP), target(iF), target(iG), target(iH), target(iK), target(iM);
    const double s0 =
        sundman_node<double>(y0, d.L0, uz, d.dynamics, d.j2, d.objective).state(iT);
    const double s1 =
        sundman_node<double>(y1, d.Lf, uz, d.dynamics, d.j2, d.objective).state(iT);
    target(iT) = d.depart.value(iT) + 0.5 * (s0 + s1) * span;
  }

  const int N = lay_.n_sub, K = lay_.order;
  for (int i = 0; i < N; ++i)
    for (int l = 0; l < K; ++l) {
      const int sn = lay_.state_node(i, l);
      const double a = (nodes_[i * K + l].L - d.L0) / span;
      for (int c = 0; c < 7; ++c)
        x(lay_.state_index(sn, c)) = (1.0 - a) * d.depart.value(c) + a * target(c);
    }
  // endpoint nodes exactly on the boundary data (no interpolation rounding)
  for (int c = 0; c < 7; ++c) {
    x(lay_.state_index(0, c)) = d.depart.value(c);
    x(lay_.state_index(lay_.n_state_nodes - 1, c)) = target(c);
  }
  for (int cn = 0; cn < lay_.n_control_nodes; ++cn) {
    for (int q = 0; q < 3; ++q) x(lay_.control_index(cn, q)) = 1e-10;
    x(lay_.control_index(cn, 3)) = std::sqrt(3.0) * 1e-10;  // cone exactly tight
  }
  return x;
}

double Transcription::max_defect(const Eigen::VectorXd& x) const {
  Eigen::VectorXd c;
  if (!constraints(x, c)) return std::numeric_limits<double>::quiet_NaN();
  return c.head(lay_.n_defects).cwiseAbs().maxCoeff();
}

Trajectory Transcription::extract(const Eigen::VectorXd& x) const {
  const ProblemDef& d = prob_.def;
  const UnitSystem& U = prob_.units;
  const int N = lay_.n_sub, K = lay_.order;
  // thrust-fraction variable -> canonical force -> newtons
  const double frac_to_n = d.dynamics.u_max * U.force_n();

  Trajectory tr;
  const int ns = lay_.n_state_nodes, nc = lay_.n_control_nodes;
  tr.L.resize(ns);
  tr.t.resize(ns);
  tr.p.resize(ns);
  tr.f.resize(ns);
  tr.g.resize(ns);
  tr.h.resize(ns);
  tr.k.resize(ns);
  tr.m.resize(ns);
  tr.ur.resize(ns);
  tr.ut.resize(ns);
  tr.un.resize(ns);
  tr.throttle.resize(ns);
  tr.Lc.resize(nc);
  tr.tc.resize(nc);
  tr.urc.resize(nc);
  tr.utc.resize(nc);
  tr.unc.resize(nc);
  tr.throttlec.resize(nc);

  for (int i = 0; i < N; ++i)
    for (int l = 0; l < K; ++l) {
      const int sn = lay_.state_node(i, l);
      const int cn = lay_.control_node(i, l);
      tr.L(sn) = nodes_[i * K + l].L;
      tr.p(sn) = x(lay_.state_index(sn, iP)) * U.length_km;
      tr.f(sn) = x(lay_.state_index(sn, iF));
      tr.g(sn) = x(lay_.state_index(sn, iG));
      tr.h(sn) = x(lay_.state_index(sn, iH));
      tr.k(sn) = x(lay_.state_index(sn, iK));
      tr.t(sn) = x(lay_.state_index(sn, iT)) * U.time_s;
      tr.m(sn) = x(lay_.state_index(sn, iM)) * U.mass_kg;

      tr.Lc(cn) = nodes_[i * K + l].L;
      tr.tc(cn) = tr.t(sn);
      tr.urc(cn) = x(lay_.control_index(cn, 0)) * frac_to_n;
      tr.utc(cn) = x(lay_.control_index(cn, 1)) * frac_to_n;
      tr.unc(cn) = x(lay_.control_index(cn, 2)) * frac_to_n;
      tr.throttlec(cn) = x(lay_.control_index(cn, 3)) * frac_to_n;
    }
  // state-node control columns: the value driving the subinterval to the
  // right; the final node reuses its own (left) collocation value
  for (int sn = 0; sn < ns; ++sn) {
    const int i = std::min(sn / (K - 1), N - 1);
    const int l = sn - i * (K - 1);
    const int cn = lay_.control_node(i, l);
    tr.ur(sn) = x(lay_.control_index(cn, 0)) * frac_to_n;
    tr.ut(sn) = x(lay_.control_index(cn, 1)) * frac_to_n;
    tr.un(sn) = x(lay_.control_index(cn, 2)) * frac_to_n;
    tr.throttle(sn) = x(lay_.control_index(cn, 3)) * frac_to_n;
  }

  double J = 0.0;
  objective(x, J);
  switch (d.objective) {
    case ObjectiveKind::Time: tr.objective = J * U.time_s; break;                      // s
    case ObjectiveKind::Fuel: tr.objective = J * U.force_n() * U.time_s; break;  // N s
    case ObjectiveKind::Energy:
      tr.objective = J * U.force_n() * U.force_n() * U.time_s;  // N^2 s
      break;
  }
  tr.fuel_kg = tr.m(0) - tr.m(ns - 1);
  if (d.objective == ObjectiveKind::Fuel) {
    const double c_m_s = d.dynamics.exhaust_velocity() * U.velocity_km_s() * 1e3;
    tr.fuel_consistency = std::abs(tr.fuel_kg - tr.objective / c_m_s);
  }
  return tr;
}

}  // namespace revolve
