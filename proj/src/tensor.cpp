#include "sepwit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "sepwit/error.hpp"

namespace sepwit {

namespace {

int parity_of(const std::vector<int>& mapping) {
  std::vector<bool> seen(mapping.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(mapping[j])) seen[j] = true;
  }
  return static_cast<int>((mapping.size() - static_cast<std::size_t>(cycles)) % 2);
}

constexpr std::size_t kPermutationCacheLimit = std::size_t{1} << 23;

}  // namespace

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int n = size();
  std::vector<bool> hit(mapping_.size(), false);
  for (int image : mapping_) {
    if (image < 0 || image >= n || hit[static_cast<std::size_t>(image)])
      throw InputError("permutation mapping is not a bijection");
    hit[static_cast<std::size_t>(image)] = true;
  }
  parity_ = parity_of(mapping_);
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::from_one_based(std::span<const int> mapping) {
  std::vector<int> m;
  m.reserve(mapping.size());
  for (int x : mapping) m.push_back(x - 1);
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[static_cast<std::size_t>(mapping_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 1 || n > kMaxParticles) throw InputError("permutation cap exceeded");
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

PermutationTable::PermutationTable(const SpaceConfig& space)
    : space_(space), perms_(all_permutations(space.particles())) {
  inverse_.resize(perms_.size());
  for (std::size_t k = 0; k < perms_.size(); ++k) {
    const Permutation inv = perms_[k].inverse();
    for (std::size_t l = 0; l < perms_.size(); ++l) {
      if (std::equal(inv.mapping().begin(), inv.mapping().end(), perms_[l].mapping().begin())) {
        inverse_[k] = l;
        break;
      }
    }
  }
  const std::size_t total = space_.total_dim();
  if (perms_.size() * total <= kPermutationCacheLimit) {
    cache_.resize(perms_.size());
    const int n = space_.particles();
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < perms_.size(); ++k) {
      auto& map = cache_[k];
      map.resize(total);
      const auto sigma = perms_[k].mapping();
      for (std::size_t s = 0; s < total; ++s) {
        for (int i = 0; i < n; ++i) digits[static_cast<std::size_t>(i)] = space_.digit(s, i);
        std::size_t t = 0;
        for (int i = 0; i < n; ++i)
          t = t * static_cast<std::size_t>(space_.dim()) + static_cast<std::size_t>(digits[static_cast<std::size_t>(sigma[i])]);
        map[s] = static_cast<std::uint32_t>(t);
      }
    }
  }
}

std::size_t PermutationTable::image(std::size_t k, std::size_t s) const {
  if (!cache_.empty()) return cache_[k][s];
  const int n = space_.particles();
  const auto sigma = perms_[k].mapping();
  std::size_t t = 0;
  for (int i = 0; i < n; ++i)
    t = t * static_cast<std::size_t>(space_.dim()) + static_cast<std::size_t>(space_.digit(s, sigma[i]));
  return t;
}

StateVector::StateVector(SpaceConfig space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim())
    throw InputError("state vector length " + std::to_string(amplitudes_.size()) + " does not match d^N = " +
                     std::to_string(space_.total_dim()));
}

StateVector StateVector::zero(const SpaceConfig& space) {
  return StateVector(space, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.total_dim())));
}

StateVector StateVector::basis(const SpaceConfig& space, std::span<const int> multi_index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.total_dim()));
  v[static_cast<Eigen::Index>(space.flatten(multi_index))] = 1.0;
  return StateVector(space, std::move(v));
}

StateVector StateVector::product(const SpaceConfig& space, std::span<const Eigen::VectorXcd> blocks) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (const auto& block : blocks) {
    Eigen::VectorXcd next(acc.size() * block.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) next.segment(i * block.size(), block.size()) = acc[i] * block;
    acc = std::move(next);
  }
  if (static_cast<std::size_t>(acc.size()) != space.total_dim())
    throw InputError("product blocks do not multiply up to d^N");
  return StateVector(space, std::move(acc));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InputError("cannot normalize the zero vector");
  return StateVector(space_, amplitudes_ / n);
}

cplx StateVector::inner(const StateVector& other) const {
  if (!(space_ == other.space_)) throw InputError("inner product of vectors on different spaces");
  return amplitudes_.dot(other.amplitudes_);
}

StateVector apply_permutation(const Permutation& sigma, const StateVector& v) {
  const SpaceConfig& space = v.space();
  if (sigma.size() != space.particles()) throw InputError("permutation size does not match the particle number");
  const int n = space.particles();
  const std::size_t total = space.total_dim();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(total));
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t t = 0;
    for (int i = 0; i < n; ++i)
      t = t * static_cast<std::size_t>(space.dim()) + static_cast<std::size_t>(space.digit(s, sigma[i]));
    out[static_cast<Eigen::Index>(t)] = v[s];
  }
  return StateVector(space, std::move(out));
}

StateVector project(Statistics stats, const StateVector& v, const PermutationTable& table) {
  if (stats == Statistics::Distinguishable) return v;
  if (!(table.space() == v.space())) throw InputError("permutation table built for a different space");
  const std::size_t total = v.space().total_dim();
  const double scale = 1.0 / static_cast<double>(table.size());
  const Eigen::VectorXcd& in = v.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double w = (stats == Statistics::Fermion ? table.sign(k) : 1) * scale;
    for (std::size_t s = 0; s < total; ++s) {
      const cplx a = in[static_cast<Eigen::Index>(s)];
      if (a == cplx{}) continue;
      out[static_cast<Eigen::Index>(table.image(k, s))] += w * a;
    }
  }
  return StateVector(v.space(), std::move(out));
}

StateVector project(Statistics stats, const StateVector& v) {
  if (stats == Statistics::Distinguishable) return v;
  return project(stats, v, PermutationTable(v.space()));
}

Eigen::MatrixXcd projector_matrix(Statistics stats, const SpaceConfig& space) {
  if (!space.allows_dense_matrix()) throw InputError("explicit projector requested above the dense matrix cap");
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  if (stats == Statistics::Distinguishable) return Eigen::MatrixXcd::Identity(n, n);
  PermutationTable table(space);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  const double scale = 1.0 / static_cast<double>(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double w = (stats == Statistics::Fermion ? table.sign(k) : 1) * scale;
    for (Eigen::Index s = 0; s < n; ++s)
      p(static_cast<Eigen::Index>(table.image(k, static_cast<std::size_t>(s))), s) += w;
  }
  return p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd symmetrize_operator(std::span<const Eigen::MatrixXcd> factors) {
  if (factors.empty()) throw InputError("no factors given");
  const int n = static_cast<int>(factors.size());
  const Eigen::Index d = factors.front().rows();
  for (const auto& y : factors) {
    if (y.rows() != d || y.cols() != d) throw InputError("factors must be square and of equal size");
    if ((y - y.adjoint()).cwiseAbs().maxCoeff() > kTolHerm) throw InputError("factor is not Hermitian");
  }
  const SpaceConfig space(static_cast<int>(d), n);
  if (!space.allows_dense_matrix()) throw InputError("symmetric form requested above the dense matrix cap");
  const auto perms = all_permutations(n);
  const auto total = static_cast<Eigen::Index>(space.total_dim());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(total, total);
  for (const auto& sigma : perms) {
    Eigen::MatrixXcd term = factors[static_cast<std::size_t>(sigma[0])];
    for (int i = 1; i < n; ++i) term = kron(term, factors[static_cast<std::size_t>(sigma[i])]);
    sum += term;
  }
  return sum / static_cast<double>(perms.size());
}

std::size_t subspace_dimension(Statistics stats, const SpaceConfig& space) {
  const auto d = static_cast<std::uint64_t>(space.dim());
  const auto n = static_cast<std::uint64_t>(space.particles());
  switch (stats) {
    case Statistics::Distinguishable:
      return space.total_dim();
    case Statistics::Boson:
      return static_cast<std::size_t>(binomial(d + n - 1, n));
    case Statistics::Fermion:
      return static_cast<std::size_t>(binomial(d, n));
  }
  return 0;
}

SectorCoordinates sector_coordinates(Statistics stats, int dim, int particles) {
  const SpaceConfig space(dim, particles);
  const std::size_t total = space.total_dim();
  SectorCoordinates out;
  out.column.assign(total, -1);
  out.coeff.assign(total, 0.0);
  if (stats == Statistics::Distinguishable || particles == 1) {
    out.count = static_cast<int>(total);
    std::iota(out.column.begin(), out.column.end(), 0);
    std::fill(out.coeff.begin(), out.coeff.end(), 1.0);
    return out;
  }
  const double nfact = static_cast<double>(factorial(particles));
  std::vector<int> digits(static_cast<std::size_t>(particles));
  // Sorted patterns are themselves flat indices, visited in increasing order,
  // so assigning columns on first sight of the sorted index keeps the
  // lexicographic ordering.
  std::vector<int> column_of_sorted(total, -1);
  for (std::size_t s = 0; s < total; ++s) {
    bool sorted = true;
    for (int i = 0; i < particles; ++i) digits[static_cast<std::size_t>(i)] = space.digit(s, i);
    for (int i = 1; i < particles; ++i) {
      const int prev = digits[static_cast<std::size_t>(i - 1)];
      const int cur = digits[static_cast<std::size_t>(i)];
      if (cur < prev || (stats == Statistics::Fermion && cur == prev)) sorted = false;
    }
    if (sorted) column_of_sorted[s] = out.count++;
  }
  for (std::size_t s = 0; s < total; ++s) {
    for (int i = 0; i < particles; ++i) digits[static_cast<std::size_t>(i)] = space.digit(s, i);
    int inversions = 0;
    for (int i = 0; i < particles; ++i)
      for (int j = i + 1; j < particles; ++j)
        if (digits[static_cast<std::size_t>(i)] > digits[static_cast<std::size_t>(j)]) ++inversions;
    std::vector<int> sorted = digits;
    std::sort(sorted.begin(), sorted.end());
    const bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (stats == Statistics::Fermion && repeated) continue;
    const std::size_t key = space.flatten(sorted);
    out.column[s] = column_of_sorted[key];
    if (stats == Statistics::Fermion) {
      out.coeff[s] = (inversions % 2 == 0 ? 1.0 : -1.0) / std::sqrt(nfact);
    } else {
      double arrangements = nfact;
      for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        arrangements /= static_cast<double>(factorial(static_cast<int>(j - i)));
        i = j;
      }
      out.coeff[s] = 1.0 / std::sqrt(arrangements);
    }
  }
  return out;
}

std::vector<StateVector> sector_basis(Statistics stats, const SpaceConfig& space) {
  const SectorCoordinates coords = sector_coordinates(stats, space.dim(), space.particles());
  std::vector<Eigen::VectorXcd> columns(static_cast<std::size_t>(coords.count),
                                        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.total_dim())));
  for (std::size_t s = 0; s < coords.column.size(); ++s)
    if (coords.column[s] >= 0) columns[static_cast<std::size_t>(coords.column[s])][static_cast<Eigen::Index>(s)] = coords.coeff[s];
  std::vector<StateVector> out;
  out.reserve(columns.size());
  for (auto& c : columns) out.emplace_back(space, std::move(c));
  return out;
}

}  // namespace sepwit
