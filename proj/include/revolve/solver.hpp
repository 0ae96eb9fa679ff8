#pragma once

// Backend selection layer. Routes an NlpProblem either to the bundled
// interior-point solver or to an external shared library implementing the
// revolve_solve_v1 ABI (see solver_abi.h). Backend names: "bundled", or a
// path to a shared library; an empty name consults the REVOLVE_BACKEND
// environment variable before falling back to the bundled solver.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "revolve/nlp.hpp"

namespace revolve {

struct BackendInfo {
  std::string name;  // "bundled" or the shared-library path
  bool available = false;
  std::string detail;  // load diagnostics
};

// Probes the bundled solver plus the requested (or environment-configured)
// external backend without solving anything.
std::vector<BackendInfo> available_backends(const std::string& requested = "");

// Resolves the backend name as described above and solves. Throws
// std::runtime_error when an external backend cannot be loaded.
SolveResult solve(const NlpProblem& problem, const Eigen::VectorXd& x0,
                  const SolveOptions& options = {}, const std::string& backend = "");

}  // namespace revolve
