#include "sepwit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sepwit {

std::vector<Eigen::VectorXcd> sample_party_vectors(const SpaceConfig& space, const Partition& partition,
                                                   std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::bernoulli_distribution dense(0.5);
  std::vector<Eigen::VectorXcd> out;
  for (int k = 0; k < partition.parties(); ++k) {
    const auto m = static_cast<Eigen::Index>(space.power(partition.size(k)));
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(m);
    if (dense(rng)) {
      for (Eigen::Index i = 0; i < m; ++i) {
        const double re = normal(rng);
        b[i] = cplx(re, normal(rng));
      }
    } else {
      std::uniform_int_distribution<Eigen::Index> count(1, std::min<Eigen::Index>(3, m));
      std::uniform_int_distribution<Eigen::Index> pos(0, m - 1);
      for (Eigen::Index c = count(rng); c > 0;) {
        const Eigen::Index i = pos(rng);
        if (b[i] != cplx(0.0)) continue;
        const double re = normal(rng);
        b[i] = cplx(re, normal(rng));
        if (b[i] != cplx(0.0)) --c;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

ProductSampler::ProductSampler(const SEProblem& problem)
    : problem_(problem), table_(problem.space()), support_(problem.observable().support()),
      entries_(problem.observable().entries()) {
  const SpaceConfig& space = problem.space();
  const Partition& part = problem.partition();
  const int n = space.particles();
  for (int k = 0; k < part.parties(); ++k) {
    stride_.push_back(space.power(n - part.offset(k) - part.size(k)));
    if (problem.statistics() != Statistics::Distinguishable && part.size(k) > 1)
      block_tables_.emplace_back(SpaceConfig(space.dim(), part.size(k)));
    else
      block_tables_.emplace_back(std::nullopt);
  }
  // Double cosets H sigma H of the block subgroup H are labelled by how many
  // slots of block k sigma sends into block l.
  std::vector<int> block_of(static_cast<std::size_t>(n));
  for (int k = 0; k < part.parties(); ++k)
    for (int i = 0; i < part.size(k); ++i) block_of[static_cast<std::size_t>(part.offset(k) + i)] = k;
  std::map<std::vector<int>, std::size_t> seen;
  const double inv = 1.0 / static_cast<double>(table_.size());
  for (std::size_t k = 0; k < table_.size(); ++k) {
    std::vector<int> key(static_cast<std::size_t>(part.parties() * part.parties()), 0);
    const Permutation& sigma = table_.permutation(k);
    for (int i = 0; i < n; ++i)
      ++key[static_cast<std::size_t>(block_of[static_cast<std::size_t>(i)] * part.parties() +
                                     block_of[static_cast<std::size_t>(sigma[i])])];
    const auto [it, fresh] = seen.emplace(std::move(key), cosets_.size());
    if (fresh) cosets_.emplace_back(k, 0.0);
    const std::size_t rep = cosets_[it->second].first;
    cosets_[it->second].second += table_.sign(rep, problem.statistics()) * inv;
  }
}

cplx ProductSampler::amplitude(std::span<const Eigen::VectorXcd> parties, std::size_t s) const {
  cplx a(1.0, 0.0);
  for (std::size_t k = 0; k < parties.size(); ++k) {
    const auto& b = parties[k];
    a *= b[static_cast<Eigen::Index>((s / stride_[k]) % static_cast<std::size_t>(b.size()))];
  }
  return a;
}

std::pair<double, double> ProductSampler::quotient(std::span<const Eigen::VectorXcd> parties) const {
  if (problem_.statistics() == Statistics::Distinguishable) {
    cplx num(0.0);
    for (const MatrixEntry& e : entries_)
      num += std::conj(amplitude(parties, e.row)) * e.value * amplitude(parties, e.col);
    double den = 1.0;
    for (const auto& b : parties) den *= b.squaredNorm();
    return {num.real(), den};
  }

  // Projecting every block onto its own sector leaves I b unchanged.
  std::vector<Eigen::VectorXcd> blocks(parties.begin(), parties.end());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (!block_tables_[k]) continue;
    const PermutationTable& t = *block_tables_[k];
    blocks[k] = project(problem_.statistics(), StateVector(t.space(), blocks[k]), t).amplitudes();
  }
  Eigen::VectorXcd full = blocks.front();
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    Eigen::VectorXcd next(full.size() * blocks[k].size());
    for (Eigen::Index i = 0; i < full.size(); ++i)
      next.segment(i * blocks[k].size(), blocks[k].size()) = full[i] * blocks[k];
    full = std::move(next);
  }
  std::vector<std::size_t> nz;
  for (Eigen::Index s = 0; s < full.size(); ++s)
    if (full[s] != cplx(0.0)) nz.push_back(static_cast<std::size_t>(s));
  const double inv = 1.0 / static_cast<double>(table_.size());
  // (I b)_r on the support of L.
  std::vector<cplx> y(support_.size());
  for (std::size_t p = 0; p < support_.size(); ++p) {
    cplx acc(0.0);
    for (std::size_t k = 0; k < table_.size(); ++k)
      acc += static_cast<double>(table_.sign(k, problem_.statistics())) * full[static_cast<Eigen::Index>(table_.image(k, support_[p]))];
    y[p] = acc * inv;
  }
  auto at = [&](std::size_t idx) {
    return y[static_cast<std::size_t>(std::lower_bound(support_.begin(), support_.end(), idx) - support_.begin())];
  };
  cplx num(0.0);
  for (const MatrixEntry& e : entries_) num += std::conj(at(e.row)) * e.value * at(e.col);

  // <b|I|b> = (1/N!) sum_sigma sign <b|P_sigma|b>, and with projected blocks
  // the summand is constant on double cosets of the block subgroup.
  double den = 0.0;
  for (const auto& [k, weight] : cosets_) {
    cplx term(0.0);
    for (std::size_t s : nz) term += std::conj(full[static_cast<Eigen::Index>(table_.image(k, s))]) * full[static_cast<Eigen::Index>(s)];
    den += weight * term.real();
  }
  return {num.real(), den};
}

std::vector<Eigen::VectorXcd> perturb_party_vectors(std::span<const Eigen::VectorXcd> parties, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> exponent(-3.0, 0.0);
  std::uniform_int_distribution<std::size_t> which(0, parties.size() - 1);
  std::bernoulli_distribution all(0.5);
  const double step = std::pow(10.0, exponent(rng));
  const std::size_t only = which(rng);
  const bool every = all(rng);
  std::vector<Eigen::VectorXcd> out(parties.begin(), parties.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!every && k != only) continue;
    Eigen::VectorXcd& b = out[k];
    const double scale = step * b.norm() / std::sqrt(static_cast<double>(b.size()));
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double re = normal(rng);
      b[i] += scale * cplx(re, normal(rng));
    }
  }
  return out;
}

double brute_force_bound(const SEProblem& problem, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("samples must be at least 1");
  const ProductSampler sampler(problem);
  std::mt19937_64 rng(splitmix64(seed));
  std::bernoulli_distribution local(0.5);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Eigen::VectorXcd> incumbent;
  for (std::size_t i = 0; i < samples; ++i) {
    auto parties = !incumbent.empty() && local(rng) ? perturb_party_vectors(incumbent, rng)
                                                     : sample_party_vectors(problem.space(), problem.partition(), rng);
    double scale = 1.0;
    for (const auto& b : parties) scale *= b.squaredNorm();
    if (!(scale > 0.0)) continue;
    const auto [num, den] = sampler.quotient(parties);
    if (!(den > kMinProjectedWeight * scale)) continue;
    if (num / den > best) {
      best = num / den;
      incumbent = std::move(parties);
    }
  }
  return best;
}

}  // namespace sepwit
