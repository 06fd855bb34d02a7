#include "sepwit/states.hpp"

#include <cmath>

#include "sepwit/analytic.hpp"
#include "sepwit/witness.hpp"

namespace sepwit {

DensityOperator noisy_state(const StateVector& psi, Statistics stats, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
  const StateVector projected = stats == Statistics::Distinguishable ? psi : project(stats, psi);
  if (!(projected.norm() > 1e-12)) throw InputError("projection of psi vanishes");
  std::vector<WeightedState> mix;
  if (p > 0.0) mix.push_back({p, projected.normalized()});
  if (p < 1.0) {
    const auto basis = sector_basis(stats, psi.space());
    const double w = (1.0 - p) / static_cast<double>(basis.size());
    for (const auto& b : basis) mix.push_back({w, b});
  }
  return DensityOperator(psi.space(), std::move(mix));
}

StateVector fig1_state_family(int d, Statistics stats) {
  if (d < 2) throw InputError("d must be at least 2");
  const SpaceConfig space(d, 2);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.total_dim()));
  if (stats == Statistics::Fermion) {
    const int blocks = d / 2;
    const double kappa = 1.0 / std::sqrt(2.0 * blocks);
    for (int n = 0; n < blocks; ++n) {
      a[2 * n * d + 2 * n + 1] = kappa;
      a[(2 * n + 1) * d + 2 * n] = -kappa;
    }
  } else {
    for (int n = 0; n < d; ++n) a[n * d + n] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return StateVector(space, std::move(a));
}

std::string_view to_string(Fig1Panel panel) {
  switch (panel) {
    case Fig1Panel::SchmidtRank1:
      return "SR>1";
    case Fig1Panel::SchmidtRank2:
      return "SR>2";
    case Fig1Panel::Boson:
      return "boson";
    case Fig1Panel::Fermion:
      return "fermion";
  }
  return "SR>1";
}

Fig1Panel parse_fig1_panel(std::string_view name) {
  for (Fig1Panel p : {Fig1Panel::SchmidtRank1, Fig1Panel::SchmidtRank2, Fig1Panel::Boson, Fig1Panel::Fermion})
    if (to_string(p) == name) return p;
  throw InputError("unknown panel '" + std::string(name) + "'");
}

Statistics panel_statistics(Fig1Panel panel) {
  switch (panel) {
    case Fig1Panel::Boson:
      return Statistics::Boson;
    case Fig1Panel::Fermion:
      return Statistics::Fermion;
    default:
      return Statistics::Distinguishable;
  }
}

Threshold threshold_from(double bound, std::size_t sector_dim) {
  Threshold t;
  t.bound = bound;
  t.sector_dim = sector_dim;
  const double inv = 1.0 / static_cast<double>(sector_dim);
  if (bound >= 1.0 - 1e-12 || sector_dim <= 1) {
    t.p_star = 1.0;
    t.detectable = false;
    return t;
  }
  t.p_star = std::max(0.0, (bound - inv) / (1.0 - inv));
  t.detectable = true;
  return t;
}

Threshold detection_threshold(int d, Fig1Panel panel) {
  const Statistics stats = panel_statistics(panel);
  const StateVector psi = fig1_state_family(d, stats);
  const double bound =
      panel == Fig1Panel::SchmidtRank2 ? schmidt_number_bound(psi, 2) : analytic_rank_one(psi, stats).g;
  return threshold_from(bound, subspace_dimension(stats, psi.space()));
}

std::pair<StateVector, StateVector> appendix_b_states() {
  const SpaceConfig space(5, 3);
  const std::vector<int> a{0, 1, 2};
  const std::vector<int> b{0, 3, 4};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.total_dim()));
  v[static_cast<Eigen::Index>(space.flatten(a))] = 1.0;
  v[static_cast<Eigen::Index>(space.flatten(b))] = 1.0;
  const StateVector psi(space, v);
  return {project(Statistics::Boson, psi), project(Statistics::Fermion, psi)};
}

GhzFamily ghz_family(int particles, cplx q, Statistics stats, int n_max) {
  if (!(std::abs(q) < 1.0)) throw InputError("|q| must be below 1");
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  if (particles < 1) throw InputError("N must be positive");
  const double tail = std::pow(std::abs(q), 2.0 * (n_max + 1));
  GhzFamily f{particles, q, stats, n_max, tail};
  (void)f.space();
  return f;
}

namespace {

/// sqrt(nu) I|nN, ..., nN + N - 1>, of unit norm, for n = 0..n_max.
std::vector<Eigen::VectorXcd> ghz_terms(const GhzFamily& family) {
  const SpaceConfig space = family.space();
  const PermutationTable table(space);
  const double scale = std::sqrt(norm_factor(family.stats, family.particles));
  std::vector<Eigen::VectorXcd> out;
  for (int n = 0; n <= family.n_max; ++n) {
    std::vector<int> labels;
    for (int j = 0; j < family.particles; ++j) labels.push_back(n * family.particles + j);
    StateVector t = StateVector::basis(space, labels);
    if (family.stats != Statistics::Distinguishable) t = project(family.stats, t, table);
    out.push_back(scale * t.amplitudes());
  }
  return out;
}

}  // namespace

StateVector ghz_state(const GhzFamily& family) {
  const auto terms = ghz_terms(family);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(terms.front().size());
  cplx c(1.0, 0.0);
  for (const auto& t : terms) {
    v += c * t;
    c *= family.q;
  }
  return StateVector(family.space(), v).normalized();
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

DensityOperator dephased_ghz(const GhzFamily& family, double delta) {
  if (!(delta >= 0.0 && delta <= M_PI)) throw InputError("delta must lie in [0, pi]");
  const auto terms = ghz_terms(family);
  const int m = family.n_max + 1;
  const double r2 = std::norm(family.q);
  Eigen::MatrixXcd c(m, m);
  for (int n = 0; n < m; ++n)
    for (int k = 0; k < m; ++k)
      c(n, k) = (1.0 - r2) * std::pow(family.q, n) * std::pow(std::conj(family.q), k) * sinc(delta * (n - k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
  std::vector<WeightedState> mix;
  for (int k = 0; k < m; ++k) {
    const double mu = es.eigenvalues()[k];
    if (!(mu > 0.0)) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(terms.front().size());
    for (int n = 0; n < m; ++n) v += es.eigenvectors()(n, k) * terms[static_cast<std::size_t>(n)];
    mix.push_back({mu, StateVector(family.space(), std::move(v))});
  }
  return DensityOperator(family.space(), std::move(mix));
}

double ghz_expectation(double r, double delta) {
  if (!(r >= 0.0 && r < 1.0)) throw InputError("r must lie in [0, 1)");
  return 2.0 * (1.0 - r * r) * r * sinc(delta);
}

}  // namespace sepwit
