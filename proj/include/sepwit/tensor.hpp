#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sepwit/space.hpp"

namespace sepwit {

/// Bijection on {0, ..., N-1}.  Acting on product vectors it reorders the
/// factors: P_sigma |a_0, ..., a_{N-1}> = |a_sigma(0), ..., a_sigma(N-1)>.
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);
  /// Build from the 1-based notation, e.g. {2, 3, 1}.
  static Permutation from_one_based(std::span<const int> mapping);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator[](int i) const { return mapping_[i]; }
  std::span<const int> mapping() const { return mapping_; }
  /// Number of transpositions mod 2.
  int parity() const { return parity_; }
  int sign() const { return parity_ == 0 ? 1 : -1; }
  Permutation inverse() const;

 private:
  std::vector<int> mapping_;
  int parity_ = 0;
};

/// All N! permutations in lexicographic order (identity first).
std::vector<Permutation> all_permutations(int n);

/// Basis-index action of every permutation of S_N on H^{(x)N}:
/// P_sigma e_s = e_{image(sigma, s)}.  Index maps are cached when
/// N! * d^N is small enough; otherwise they are computed on the fly.
class PermutationTable {
 public:
  explicit PermutationTable(const SpaceConfig& space);

  const SpaceConfig& space() const { return space_; }
  std::size_t size() const { return perms_.size(); }
  const Permutation& permutation(std::size_t k) const { return perms_[k]; }
  int sign(std::size_t k) const { return perms_[k].sign(); }
  /// Coefficient sign of permutation k inside the projector of `stats`.
  int sign(std::size_t k, Statistics stats) const { return stats == Statistics::Fermion ? perms_[k].sign() : 1; }
  /// Position of sigma^{-1} in the table.
  std::size_t inverse_of(std::size_t k) const { return inverse_[k]; }

  std::size_t image(std::size_t k, std::size_t s) const;

 private:
  SpaceConfig space_;
  std::vector<Permutation> perms_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::uint32_t>> cache_;
};

/// Amplitude vector on H^{(x)N}; the norm is arbitrary.
class StateVector {
 public:
  StateVector(SpaceConfig space, Eigen::VectorXcd amplitudes);

  static StateVector zero(const SpaceConfig& space);
  static StateVector basis(const SpaceConfig& space, std::span<const int> multi_index);
  /// Tensor product of blocks; block k must have length d^{n_k} with
  /// sum n_k = N.
  static StateVector product(const SpaceConfig& space, std::span<const Eigen::VectorXcd> blocks);

  const SpaceConfig& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  cplx inner(const StateVector& other) const;

 private:
  SpaceConfig space_;
  Eigen::VectorXcd amplitudes_;
};

/// Matrix-free P_sigma |v>.
StateVector apply_permutation(const Permutation& sigma, const StateVector& v);

/// I|v> with I in {1, Pi+, Pi-}.
StateVector project(Statistics stats, const StateVector& v);
StateVector project(Statistics stats, const StateVector& v, const PermutationTable& table);

/// Explicit matrix of I; only for d^N <= kDenseMatrixCap.
Eigen::MatrixXcd projector_matrix(Statistics stats, const SpaceConfig& space);

/// Symmetric form (1/N!) sum_sigma Y_sigma(1) (x) ... (x) Y_sigma(N) of a
/// product operator, as an explicit matrix.
Eigen::MatrixXcd symmetrize_operator(std::span<const Eigen::MatrixXcd> factors);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// tr I: d^N, binom(d+N-1, N) or binom(d, N).
std::size_t subspace_dimension(Statistics stats, const SpaceConfig& space);

/// Sparse isometry from the sector basis of H^{(x)n} onto H^{(x)n}.
///
/// Each multi-index x contributes to exactly one sector basis vector
/// (its sorted occupation pattern) with coefficient coeff[x]; column[x]
/// is -1 when the pattern is absent from the sector (repeated labels for
/// fermions).
struct SectorCoordinates {
  int count = 0;
  std::vector<int> column;
  std::vector<double> coeff;
};

SectorCoordinates sector_coordinates(Statistics stats, int dim, int particles);

/// Orthonormal basis of the range of I (occupation-number states).
std::vector<StateVector> sector_basis(Statistics stats, const SpaceConfig& space);

}  // namespace sepwit
