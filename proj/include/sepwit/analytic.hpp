#pragma once

#include <vector>

#include "sepwit/solver.hpp"

namespace sepwit {

/// Closed-form SEvalue solutions together with their supremum.
struct AnalyticSolutions {
  double g = 0.0;
  std::vector<SESolution> solutions;
};

/// The problem L = I|psi><psi|I on the bipartition (1,1).
SEProblem rank_one_problem(const StateVector& psi, Statistics stats);

/// Solutions of the two-particle rank-one problem from the Schmidt
/// (distinguishable) or Slater (bosons, fermions) form of I|psi>.
AnalyticSolutions analytic_rank_one(const StateVector& psi, Statistics stats);

/// Maximal solutions b_j = (v_j + w_j)/sqrt(2) with g = (1/2)^(K-1) and the
/// trivial solution b_j = v_j with g = 0.
AnalyticSolutions analytic_interference(const SpaceConfig& space, Statistics stats, const Partition& partition);

}  // namespace sepwit
