#include "sepwit/space.hpp"

#include <limits>

#include "sepwit/error.hpp"

namespace sepwit {

std::string_view to_string(Statistics stats) {
  switch (stats) {
    case Statistics::Distinguishable:
      return "distinguishable";
    case Statistics::Boson:
      return "boson";
    case Statistics::Fermion:
      return "fermion";
  }
  return "unknown";
}

Statistics parse_statistics(std::string_view name) {
  if (name == "distinguishable" || name == "dp" || name == "none") return Statistics::Distinguishable;
  if (name == "boson" || name == "bosons" || name == "+") return Statistics::Boson;
  if (name == "fermion" || name == "fermions" || name == "-") return Statistics::Fermion;
  throw InputError("unknown statistics '" + std::string(name) + "'");
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double norm_factor(Statistics stats, int particles) {
  return stats == Statistics::Distinguishable ? 1.0 : static_cast<double>(factorial(particles));
}

SpaceConfig::SpaceConfig(int dim, int particles) : dim_(dim), particles_(particles) {
  if (dim < 1) throw InputError("single-particle dimension must be positive");
  if (particles < 1) throw InputError("particle number must be positive");
  if (particles > kMaxParticles)
    throw InputError("particle number " + std::to_string(particles) + " exceeds the permutation cap N <= " +
                     std::to_string(kMaxParticles));
  powers_.assign(static_cast<std::size_t>(particles) + 1, 1);
  for (int k = 1; k <= particles; ++k) {
    if (powers_[k - 1] > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim))
      throw InputError("d^N overflows");
    powers_[k] = powers_[k - 1] * static_cast<std::size_t>(dim);
  }
  total_ = powers_[particles];
  if (total_ > kDenseVectorCap)
    throw InputError("d^N = " + std::to_string(total_) + " exceeds the dense cap " +
                     std::to_string(kDenseVectorCap));
}

std::size_t SpaceConfig::flatten(std::span<const int> multi_index) const {
  if (static_cast<int>(multi_index.size()) != particles_)
    throw InputError("multi-index length does not match the particle number");
  std::size_t flat = 0;
  for (int component : multi_index) {
    if (component < 0 || component >= dim_)
      throw InputError("multi-index component " + std::to_string(component) + " outside [0, d)");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(component);
  }
  return flat;
}

std::vector<int> SpaceConfig::unflatten(std::size_t index) const {
  if (index >= total_) throw InputError("flat index out of range");
  std::vector<int> multi(static_cast<std::size_t>(particles_));
  for (int j = particles_ - 1; j >= 0; --j) {
    multi[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(dim_));
    index /= static_cast<std::size_t>(dim_);
  }
  return multi;
}

std::size_t flatten_index(std::span<const int> multi_index, const SpaceConfig& space) {
  return space.flatten(multi_index);
}

}  // namespace sepwit
