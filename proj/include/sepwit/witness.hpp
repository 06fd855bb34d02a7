#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "sepwit/density.hpp"
#include "sepwit/observable.hpp"
#include "sepwit/solver.hpp"

namespace sepwit {

enum class BoundSource { Analytic, Numeric, Oracle };

std::string_view to_string(BoundSource source);
BoundSource parse_bound_source(std::string_view name);

/// Upper: W = G I - I L I with G = sup{g}.
/// Lower: W = I (L - G) I with G = inf{g}.
enum class WitnessForm { Upper, Lower };

struct Witness {
  Observable observable;
  Statistics stats;
  /// Partition attaining the bound (the maximum over all partitions for
  /// witnesses built per K).
  Partition partition;
  double bound;
  WitnessForm form;
  BoundSource source;

  int parties() const { return partition.parties(); }
};

struct WitnessOptions {
  int starts = 64;
  std::uint64_t seed = 0;
  std::size_t oracle_samples = 100000;
  SolverOptions solver;
};

/// Bound for one fixed partition.
Witness build_witness(const SEProblem& problem, BoundSource source, WitnessForm form = WitnessForm::Upper,
                      const WitnessOptions& options = {});
/// Bound maximized over every partition of N into K parts.
Witness build_witness(const Observable& observable, Statistics stats, int parties, BoundSource source,
                      WitnessForm form = WitnessForm::Upper, const WitnessOptions& options = {});

/// tr(rho X); mixtures are evaluated term by term.
double expectation(const DensityOperator& rho, const Observable& x);
double expectation(const DensityOperator& rho, const Eigen::MatrixXcd& x);

/// tr(rho W).
double witness_value(const DensityOperator& rho, const Witness& witness);
/// <s|W|s> for a single (unnormalized) vector.
double witness_value(const StateVector& s, const Witness& witness);

struct Verdict {
  bool entangled = false;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

inline constexpr double kDefaultMargin = 1e-9;
inline constexpr double kSectorTolerance = 1e-8;

/// Entangled iff <L> exceeds the bound by more than `margin` (falls below it
/// for the lower form).
Verdict detect(const DensityOperator& rho, const Witness& witness, double margin = kDefaultMargin);

/// Sum of the r largest squared Schmidt coefficients of psi.
double schmidt_number_bound(const StateVector& psi, int r);

}  // namespace sepwit
