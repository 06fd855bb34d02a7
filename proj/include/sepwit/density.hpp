#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sepwit/space.hpp"
#include "sepwit/tensor.hpp"

namespace sepwit {

struct WeightedState {
  double weight;
  StateVector state;
};

/// Density operator, either as an explicit matrix or as a convex mixture
/// sum_k w_k |v_k><v_k|.  Mixtures are never densified implicitly.
class DensityOperator {
 public:
  /// Explicit matrix; must be Hermitian within kTolHerm.
  DensityOperator(SpaceConfig space, Eigen::MatrixXcd matrix);
  /// Mixture; weights must be nonnegative.
  DensityOperator(SpaceConfig space, std::vector<WeightedState> mixture);

  static DensityOperator pure(const StateVector& psi);

  const SpaceConfig& space() const { return space_; }
  bool is_mixture() const { return std::holds_alternative<std::vector<WeightedState>>(rep_); }
  const Eigen::MatrixXcd& matrix() const { return std::get<Eigen::MatrixXcd>(rep_); }
  const std::vector<WeightedState>& mixture() const {
    return std::get<std::vector<WeightedState>>(rep_);
  }

  double trace() const;
  /// Explicit matrix; requires d^N <= kDenseMatrixCap.
  Eigen::MatrixXcd to_dense() const;

  /// max ||I rho I - rho|| style check: true when rho lives in the sector of
  /// `stats` within `tol`.
  bool in_sector(Statistics stats, double tol) const;

 private:
  SpaceConfig space_;
  std::variant<Eigen::MatrixXcd, std::vector<WeightedState>> rep_;
};

/// Traces out the first tensor factor; the result is an explicit matrix on
/// H^{(x)(N-1)}.
DensityOperator partial_trace_first(const DensityOperator& rho);

}  // namespace sepwit
