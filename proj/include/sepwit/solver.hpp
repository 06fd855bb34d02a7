#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sepwit/error.hpp"
#include "sepwit/observable.hpp"
#include "sepwit/partition.hpp"
#include "sepwit/space.hpp"
#include "sepwit/tensor.hpp"

namespace sepwit {

/// Observable L together with the statistics and the partition that fix
/// the set of admissible product vectors.
class SEProblem {
 public:
  SEProblem(Observable observable, Statistics stats, Partition partition);

  const Observable& observable() const { return observable_; }
  Statistics statistics() const { return stats_; }
  const Partition& partition() const { return partition_; }
  const SpaceConfig& space() const { return observable_.space(); }

 private:
  Observable observable_;
  Statistics stats_;
  Partition partition_;
};

struct SESolution {
  double g = 0.0;
  /// Block k has length d^{N_k}; normalized by the numerical solver.
  std::vector<Eigen::VectorXcd> party_vectors;
  /// I|b_1, ..., b_K>.
  StateVector projected{SpaceConfig(1, 1), Eigen::VectorXcd::Zero(1)};
  /// max_j ||(A_j - g B_j) b_j|| / ||B_j b_j||.
  double residual = 0.0;
  /// ||I L I |b> - g I |b>||.
  double chi_norm = 0.0;
  bool converged = true;
  int sweeps = 0;
};

enum class Extremum { Max, Min };

struct SolverOptions {
  int max_sweeps = 500;
  double tol_g = 1e-11;
  double tol_residual = 1e-9;
  Extremum mode = Extremum::Max;
};

/// Raised when I|b_1, ..., b_K> vanishes during an iteration.
class ZeroProjection : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// <x|X_j|y> = <b_1..x..b_K|X|b_1..y..b_K> for the j-th factor.
Eigen::MatrixXcd contracted_operator(const Eigen::MatrixXcd& x, const SpaceConfig& space,
                                     const Partition& partition,
                                     std::span<const Eigen::VectorXcd> parties, int j);
Eigen::MatrixXcd contracted_operator(const Observable& x, const Partition& partition,
                                     std::span<const Eigen::VectorXcd> parties, int j);

/// Diagnostics (g, residual, chi) of given party vectors.  Without an
/// explicit g the Rayleigh quotient is used.
SESolution evaluate_solution(const SEProblem& problem, std::vector<Eigen::VectorXcd> parties,
                             std::optional<double> g = std::nullopt);

/// Rayleigh quotient <b|ILI|b> / <b|I|b> of a product vector.
double rayleigh_quotient(const SEProblem& problem, std::span<const Eigen::VectorXcd> parties);

/// Cyclic alternating generalized eigensolves starting from `init`.
SESolution sweep_solve(const SEProblem& problem, std::vector<Eigen::VectorXcd> init,
                       const SolverOptions& options = {});

/// Independent standard complex Gaussian blocks for each party.
std::vector<Eigen::VectorXcd> random_party_vectors(const SpaceConfig& space, const Partition& partition,
                                                   std::mt19937_64& rng);

struct SupResult {
  double g = 0.0;
  SESolution best;
  std::vector<SESolution> all;
  int converged = 0;
  /// Share of starts whose converged g agrees with the extremum.
  double fraction_at_extremum = 0.0;
};

/// Multi-start search for sup{g} (or inf{g} with Extremum::Min).  Starts run
/// in parallel up to SEVALUE_THREADS threads; output is independent of the
/// thread count.
SupResult solve_sup_g(const SEProblem& problem, int starts, std::uint64_t seed,
                      const SolverOptions& options = {});

struct KSeparableResult {
  double g = 0.0;
  Partition partition;
  std::vector<std::pair<Partition, SupResult>> per_partition;
};

/// Maximum of sup{g} over all multiset-distinct partitions of N into K parts.
KSeparableResult solve_k_separable(const Observable& observable, Statistics stats, int parties,
                                   int starts, std::uint64_t seed, const SolverOptions& options = {});

struct SecondFormCheck {
  StateVector chi;
  double max_overlap = 0.0;
  /// ||I chi - chi||.
  double sector_error = 0.0;
};

SecondFormCheck verify_second_form(const SESolution& solution, const SEProblem& problem);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sepwit
