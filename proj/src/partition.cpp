#include "sepwit/partition.hpp"

#include <algorithm>
#include <charconv>

#include "sepwit/error.hpp"

namespace sepwit {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InputError("partition needs at least one block");
  offsets_.reserve(parts_.size());
  for (int p : parts_) {
    if (p < 1) throw InputError("partition blocks must be positive");
    offsets_.push_back(total_);
    total_ += p;
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == '(' || text[pos] == ')' || text[pos] == ',' || text[pos] == ' ')) ++pos;
    if (pos >= text.size()) break;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) throw InputError("cannot parse partition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return Partition(std::move(parts));
}

Partition Partition::full(int particles) { return Partition(std::vector<int>(static_cast<std::size_t>(particles), 1)); }

bool Partition::same_partitioning(const Partition& other) const {
  std::vector<int> a = parts_;
  std::vector<int> b = other.parts_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

namespace {

void extend(int remaining, int slots, int cap, std::vector<int>& prefix, std::vector<Partition>& out) {
  if (slots == 0) {
    if (remaining == 0) out.emplace_back(prefix);
    return;
  }
  for (int p = std::min(cap, remaining - (slots - 1)); p >= 1; --p) {
    if (p * slots < remaining) break;
    prefix.push_back(p);
    extend(remaining - p, slots - 1, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int k) {
  if (k < 1 || k > n) throw InputError("need 1 <= K <= N");
  std::vector<Partition> out;
  std::vector<int> prefix;
  extend(n, k, n, prefix, out);
  return out;
}

}  // namespace sepwit
