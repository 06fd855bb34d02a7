#pragma once

#include <string_view>
#include <utility>

#include "sepwit/density.hpp"
#include "sepwit/tensor.hpp"

namespace sepwit {

/// p I|psi><psi|I / <psi|I|psi> + (1 - p) I / tr I, as a mixture over the
/// sector basis.
DensityOperator noisy_state(const StateVector& psi, Statistics stats, double p);

/// Balanced two-particle test states: sum_n d^{-1/2}|n, n> for
/// distinguishable particles and bosons, and the floor(d/2) Slater blocks
/// |2n, 2n+1> - |2n+1, 2n> with equal weights for fermions.
StateVector fig1_state_family(int d, Statistics stats);

enum class Fig1Panel { SchmidtRank1, SchmidtRank2, Boson, Fermion };

std::string_view to_string(Fig1Panel panel);
Fig1Panel parse_fig1_panel(std::string_view name);
Statistics panel_statistics(Fig1Panel panel);

struct Threshold {
  double p_star = 1.0;
  /// Witness bound G of the panel.
  double bound = 0.0;
  /// tr I.
  std::size_t sector_dim = 0;
  bool detectable = false;
};

/// Solution of p + (1 - p)/D = G, clamped to 1 when G >= 1.
Threshold threshold_from(double bound, std::size_t sector_dim);
/// Threshold of the noisy fig1_state_family(d) against its own witness.
Threshold detection_threshold(int d, Fig1Panel panel);

/// I|Psi> for |Psi> = |0> (x) (|1, 2> + |3, 4>), d = 5, N = 3 (bosons first).
std::pair<StateVector, StateVector> appendix_b_states();

/// Truncated geometric GHZ family: sum_{n <= n_max} q^n |nN, ..., nN + N - 1>.
struct GhzFamily {
  int particles;
  cplx q;
  Statistics stats;
  int n_max;
  double tail_bound;

  int dim() const { return particles * (n_max + 1); }
  SpaceConfig space() const { return SpaceConfig(dim(), particles); }
};

GhzFamily ghz_family(int particles, cplx q, Statistics stats, int n_max = 8);

/// Normalized truncated GHZ state.
StateVector ghz_state(const GhzFamily& family);

/// Phase-averaged mixture with coefficients (1 - r^2) q^n conj(q)^n'
/// sinc(delta (n - n')) between normalized sector terms; the trace is
/// 1 - tail_bound.
DensityOperator dephased_ghz(const GhzFamily& family, double delta);

/// 2 (1 - r^2) r sinc(delta).
double ghz_expectation(double r, double delta);

double sinc(double x);

}  // namespace sepwit
