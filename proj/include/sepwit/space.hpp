#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sepwit {

using cplx = std::complex<double>;

inline constexpr double kTolHerm = 1e-10;
inline constexpr double kTolTrace = 1e-10;

/// Largest particle number for which permutation sums are carried out (6! = 720).
inline constexpr int kMaxParticles = 6;
/// Largest d^N for which state vectors are materialized.
inline constexpr std::size_t kDenseVectorCap = 2'000'000;
/// Largest d^N for which explicit d^N x d^N matrices are built.
inline constexpr std::size_t kDenseMatrixCap = 4096;

enum class Statistics { Distinguishable, Boson, Fermion };

std::string_view to_string(Statistics stats);
Statistics parse_statistics(std::string_view name);

/// nu(I): 1 for distinguishable particles, N! for bosons and fermions.
double norm_factor(Statistics stats, int particles);

std::uint64_t factorial(int n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Single-particle dimension d and particle number N of H^{(x)N}.
///
/// Basis states are flattened big-endian: the multi-index (i_1, ..., i_N)
/// maps to sum_j i_j d^(N-1-j).  Every module relies on this convention.
class SpaceConfig {
 public:
  SpaceConfig(int dim, int particles);

  int dim() const { return dim_; }
  int particles() const { return particles_; }
  std::size_t total_dim() const { return total_; }

  /// d^k for 0 <= k <= N.
  std::size_t power(int k) const { return powers_[k]; }

  std::size_t flatten(std::span<const int> multi_index) const;
  std::vector<int> unflatten(std::size_t index) const;
  /// Digit of particle `slot` (0-based) in the flat index.
  int digit(std::size_t index, int slot) const {
    return static_cast<int>((index / powers_[particles_ - 1 - slot]) % dim_);
  }

  /// Whether explicit matrices of side d^N may be built.
  bool allows_dense_matrix() const { return total_ <= kDenseMatrixCap; }

  friend bool operator==(const SpaceConfig& a, const SpaceConfig& b) {
    return a.dim_ == b.dim_ && a.particles_ == b.particles_;
  }

 private:
  int dim_;
  int particles_;
  std::size_t total_;
  std::vector<std::size_t> powers_;
};

std::size_t flatten_index(std::span<const int> multi_index, const SpaceConfig& space);

}  // namespace sepwit
