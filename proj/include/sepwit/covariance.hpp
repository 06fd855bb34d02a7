#pragma once

#include <Eigen/Dense>

#include "sepwit/observable.hpp"
#include "sepwit/solver.hpp"

namespace sepwit {

/// op^{(x)n} |v> for a vector on H^{(x)n}, applied one slot at a time.
Eigen::VectorXcd apply_local_operator(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& v);

/// L' = (U^{(x)N})^dagger (lambda1 L + lambda2 I) U^{(x)N}.
Observable transform_observable(const Observable& observable, Statistics stats, double lambda1, double lambda2,
                                const Eigen::MatrixXcd& u);

/// Solution of the transformed problem: g' = lambda1 g + lambda2 and
/// b'_k = (U^dagger)^{(x)N_k} b_k.
SESolution transform_solution(const SESolution& solution, double lambda1, double lambda2,
                              const Eigen::MatrixXcd& u);

}  // namespace sepwit
