#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sepwit/space.hpp"
#include "sepwit/tensor.hpp"

namespace sepwit {

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Hermitian operator on H^{(x)N}, stored sparse (row-major).
///
/// Observables built by the named constructors remember their family so
/// that closed-form bounds can be looked up later.
class Observable {
 public:
  using Matrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

  enum class Family { Generic, RankOne, Interference };

  Observable(SpaceConfig space, Matrix matrix);

  static Observable from_entries(const SpaceConfig& space, std::span<const MatrixEntry> entries);
  static Observable from_dense(const SpaceConfig& space, const Eigen::MatrixXcd& dense);
  /// |psi><psi|.
  static Observable rank_one(const StateVector& psi);
  static Observable identity(const SpaceConfig& space);
  /// Pi+, Pi- or 1 as an observable.
  static Observable projector(Statistics stats, const SpaceConfig& space);
  /// nu(I) (|1..N><N+1..2N| + h.c.) in 1-based labels; requires d >= 2N.
  /// The nu(I) prefactor makes the K-separable bound (1/2)^(K-1) for every
  /// statistics.
  static Observable interference(const SpaceConfig& space, Statistics stats);

  const SpaceConfig& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  Family family() const { return family_; }
  /// The vector of a RankOne observable.
  const std::optional<StateVector>& rank_one_source() const { return source_; }
  Statistics interference_statistics() const { return interference_stats_; }

  std::vector<MatrixEntry> entries() const;
  std::size_t nonzeros() const { return static_cast<std::size_t>(matrix_.nonZeros()); }
  /// Sorted basis indices touched by a nonzero entry.
  std::vector<std::size_t> support() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  /// <u|L|v>.
  cplx matrix_element(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;
  double expectation(const Eigen::VectorXcd& v) const;

  Eigen::MatrixXcd dense() const;

 private:
  SpaceConfig space_;
  Matrix matrix_;
  Family family_ = Family::Generic;
  std::optional<StateVector> source_;
  Statistics interference_stats_ = Statistics::Distinguishable;
};

/// max |L_ij - conj(L_ji)|.
double max_asymmetry(const Observable::Matrix& matrix);
double max_asymmetry(const Eigen::MatrixXcd& matrix);

}  // namespace sepwit
