#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sepwit/solver.hpp"

namespace sepwit {

/// Samples with <b|I|b> below this fraction of prod ||b_k||^2 are skipped:
/// the quotient loses about eps / fraction of relative accuracy there.
inline constexpr double kMinProjectedWeight = 1e-4;

/// Random party vectors for sampling separable states: each block is, with
/// equal odds, a dense complex Gaussian vector or one supported on 1 to 3
/// random basis states.
std::vector<Eigen::VectorXcd> sample_party_vectors(const SpaceConfig& space, const Partition& partition,
                                                   std::mt19937_64& rng);

/// Rayleigh quotients of random product vectors, for repeated evaluation of
/// one problem.
class ProductSampler {
 public:
  explicit ProductSampler(const SEProblem& problem);

  /// <b|ILI|b> and <b|I|b> for the product of `parties`.
  std::pair<double, double> quotient(std::span<const Eigen::VectorXcd> parties) const;

 private:
  cplx amplitude(std::span<const Eigen::VectorXcd> parties, std::size_t s) const;

  const SEProblem& problem_;
  PermutationTable table_;
  std::vector<std::size_t> support_;
  std::vector<MatrixEntry> entries_;
  std::vector<std::size_t> stride_;
  /// Projectors of the blocks with two or more particles.
  std::vector<std::optional<PermutationTable>> block_tables_;
  /// One permutation per double coset of the block subgroup, with its
  /// signed share of the projector.
  std::vector<std::pair<std::size_t, double>> cosets_;
};

/// Gaussian kick of relative size 10^-3 .. 1 to one or all blocks.
std::vector<Eigen::VectorXcd> perturb_party_vectors(std::span<const Eigen::VectorXcd> parties, std::mt19937_64& rng);

/// Largest Rayleigh quotient over `samples` random product vectors; a lower
/// bound on sup{g}.  Half of the draws after the first valid one are
/// perturbations of the best vector so far.
double brute_force_bound(const SEProblem& problem, std::size_t samples, std::uint64_t seed);

}  // namespace sepwit
