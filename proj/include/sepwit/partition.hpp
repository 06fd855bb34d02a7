#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sepwit {

/// Ordered block sizes (N_1, ..., N_K) of a K-partition; block k occupies
/// the consecutive particle slots [offset(k), offset(k) + size(k)).
class Partition {
 public:
  explicit Partition(std::vector<int> parts);
  /// "1,2" or "(1,2)".
  static Partition parse(std::string_view text);
  /// K blocks of one particle each.
  static Partition full(int particles);

  int parties() const { return static_cast<int>(parts_.size()); }
  int particles() const { return total_; }
  int size(int k) const { return parts_[static_cast<std::size_t>(k)]; }
  int offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  std::span<const int> parts() const { return parts_; }

  /// Equal as multisets.
  bool same_partitioning(const Partition& other) const;
  std::string to_string() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// Multiset-distinct partitions of n into k positive parts, each listed
/// nonincreasing, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n, int k);

}  // namespace sepwit
