#ifndef RANKFN_PARTITION_HPP
#define RANKFN_PARTITION_HPP

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "rankfn/error.hpp"

namespace rankfn {

/// Integer partition stored weakly decreasing; doubles as the Jordan
/// partition of a nilpotent matrix (block sizes of its Jordan form).
class Partition {
 public:
  Partition() = default;

  /// Re-sorts `parts`; every part must be positive.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
      if (p < 1) {
        fail(ErrorKind::InvalidPartition,
             "partition parts must be positive, got " + std::to_string(p));
      }
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}

  /// Sum of the parts, i.e. the matrix size.
  int size() const noexcept { return size_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }
  int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }
  const std::vector<int>& parts() const noexcept { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }

  auto begin() const noexcept { return parts_.begin(); }
  auto end() const noexcept { return parts_.end(); }

  /// A nilpotent class is the zero matrix iff every Jordan block is 1x1.
  bool is_zero_class() const noexcept { return largest() <= 1; }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Multiset union, i.e. the Jordan partition of a direct sum.
inline Partition direct_sum(const Partition& a, const Partition& b) {
  std::vector<int> parts = a.parts();
  parts.insert(parts.end(), b.begin(), b.end());
  return Partition(std::move(parts));
}

/// Transpose of the Young diagram: result[i-1] = #{j : p[j] >= i}.
inline Partition conjugate(const Partition& p) {
  std::vector<int> out(static_cast<std::size_t>(p.largest()), 0);
  for (int part : p) {
    for (int i = 0; i < part; ++i) ++out[static_cast<std::size_t>(i)];
  }
  return Partition(std::move(out));
}

/// Parts >= 2: the blocks that survive after dropping the zero summand.
inline std::vector<int> nontrivial_blocks(const Partition& p) {
  std::vector<int> out;
  for (int part : p) {
    if (part >= 2) out.push_back(part);
  }
  return out;
}

/// All partitions of n in reverse lexicographic order, starting at (n).
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) fail(ErrorKind::InvalidPartition, "negative partition size");
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur{n};
  for (;;) {
    out.emplace_back(cur);
    // Find the rightmost part > 1, decrement it, and refill greedily.
    int rem = 0;
    while (!cur.empty() && cur.back() == 1) {
      ++rem;
      cur.pop_back();
    }
    if (cur.empty()) break;
    int k = --cur.back();
    ++rem;
    while (rem > 0) {
      int take = std::min(k, rem);
      cur.push_back(take);
      rem -= take;
    }
  }
  return out;
}

/// Partitions of n with at least one part >= 2 (classes of nonzero matrices).
inline std::vector<Partition> nonzero_partitions_of(int n) {
  std::vector<Partition> all = partitions_of(n);
  std::erase_if(all, [](const Partition& p) { return p.is_zero_class(); });
  return all;
}

/// "3,2,1,1" -> Partition. Empty string or "-" is the empty partition.
inline Partition parse_partition(std::string_view text) {
  std::vector<int> parts;
  if (text.empty() || text == "-") return Partition();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      fail(ErrorKind::ParseError,
           "malformed partition '" + std::string(text) + "'");
    }
    parts.push_back(std::stoi(std::string(tok)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Partition(std::move(parts));
}

inline std::string format_partition(const Partition& p) {
  std::string out;
  for (int part : p) {
    if (!out.empty()) out += ',';
    out += std::to_string(part);
  }
  return out;
}

}  // namespace rankfn

#endif  // RANKFN_PARTITION_HPP
