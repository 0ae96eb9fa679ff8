#pragma once

// Collocation transcription of the L-domain optimal control problem into a
// sparse NLP. States (p,f,g,h,k,t,m) live on N(K-1)+1 shared nodes; controls
// (u_r,u_t,u_n,T) live on N*K nodes and are duplicated at interfaces so
// bang-bang switches can sit on a mesh point. Control variables are stored as
// thrust fractions (units of u_max), keeping every decision variable and the
// cone rows O(1) regardless of the canonical force scale. Constraint blocks,
// in order:
//   defects    7 per (subinterval, interior node): integral-form collocation
//   cones      |u|^2 - T^2 <= 0 per control node, in fraction units
//   boundary   one equality per fixed component at L0 and Lf

#include <memory>
#include <vector>

#include "revolve/collocation.hpp"
#include "revolve/mesh.hpp"
#include "revolve/nlp.hpp"
#include "revolve/problem.hpp"

namespace revolve {

struct DecisionLayout {
  int n_sub = 0;    // N
  int order = 0;    // K
  int n_state_nodes = 0;
  int n_control_nodes = 0;
  int n_vars = 0;
  int n_defects = 0, n_cones = 0, n_boundary = 0, n_cons = 0;

  int state_node(int sub, int j) const { return sub * (order - 1) + j; }
  int control_node(int sub, int j) const { return sub * order + j; }
  int state_index(int node, int comp) const { return 7 * node + comp; }
  int control_index(int node, int comp) const { return 7 * n_state_nodes + 4 * node + comp; }
  int defect_row(int sub, int j, int comp) const {
    return (sub * (order - 1) + (j - 1)) * 7 + comp;
  }
  int cone_row(int node) const { return n_defects + node; }
  int boundary_row(int i) const { return n_defects + n_cones + i; }
};

// Physical-unit solution histories. State rows are strictly increasing in L;
// the control columns of a state row hold the value active on the subinterval
// to its right (to the left for the final row). control_* arrays keep every
// collocation node, so interface longitudes appear twice (switch profiles).
struct Trajectory {
  Eigen::VectorXd L, t, p, f, g, h, k, m;              // per state node
  Eigen::VectorXd ur, ut, un, throttle;                // per state node
  Eigen::VectorXd Lc, tc, urc, utc, unc, throttlec;    // per control node
  double objective = 0.0;        // time: s, fuel: N s (impulse), energy: N^2 s
  double fuel_kg = 0.0;          // m(t0) - m(tf)
  double fuel_consistency = 0.0; // |fuel_kg - J/(isp g0)|, fuel objective only
};

class Transcription final : public NlpProblem {
 public:
  Transcription(const ScaledProblem& problem, const Mesh& mesh, int order);
  ~Transcription() override;

  const DecisionLayout& layout() const { return lay_; }
  const ScaledProblem& problem() const { return prob_; }
  const Mesh& mesh() const { return mesh_; }
  const LglBasis& basis() const { return basis_; }

  // Linear interpolation between the boundary states, constant mass, and
  // near-zero controls; always inside the variable bounds.
  Eigen::VectorXd initial_guess() const;

  Trajectory extract(const Eigen::VectorXd& x) const;

  // max-norm of the defect block only (diagnostic)
  double max_defect(const Eigen::VectorXd& x) const;

  // NlpProblem interface
  int n_vars() const override { return lay_.n_vars; }
  int n_cons() const override { return lay_.n_cons; }
  void bounds(Eigen::VectorXd& xl, Eigen::VectorXd& xu, Eigen::VectorXd& cl,
              Eigen::VectorXd& cu) const override;
  bool objective(const Eigen::VectorXd& x, double& f) const override;
  bool gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const override;
  bool constraints(const Eigen::VectorXd& x, Eigen::VectorXd& c) const override;
  const SparsityPattern& jacobian_pattern() const override { return jac_pattern_; }
  bool jacobian(const Eigen::VectorXd& x, Eigen::VectorXd& vals) const override;
  bool has_hessian() const override { return true; }
  const SparsityPattern& hessian_pattern() const override { return hess_pattern_; }
  bool hessian(const Eigen::VectorXd& x, double sigma_f, const Eigen::VectorXd& lambda,
               Eigen::VectorXd& vals) const override;

 private:
  struct NodeRef {
    int sub, j;     // subinterval and local node
    double L;       // collocation longitude
    double quad_w;  // (h_i/2) * w_j, the objective quadrature weight
  };
  struct BoundaryRow {
    int var;
    double value;
  };

  void gather(const Eigen::VectorXd& x, int sub, int j, Eigen::Matrix<double, 6, 1>& y,
              Eigen::Matrix<double, 4, 1>& u, int* cols) const;

  ScaledProblem prob_;
  Mesh mesh_;
  LglBasis basis_;
  DecisionLayout lay_;
  std::vector<NodeRef> nodes_;   // all N*K collocation nodes, node-major
  std::vector<double> half_;     // h_i/2 per subinterval
  std::vector<BoundaryRow> boundary_;
  SparsityPattern jac_pattern_, hess_pattern_;
};

}  // namespace revolve
