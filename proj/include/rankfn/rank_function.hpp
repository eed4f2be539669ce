#ifndef RANKFN_RANK_FUNCTION_HPP
#define RANKFN_RANK_FUNCTION_HPP

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "rankfn/error.hpp"
#include "rankfn/partition.hpp"

namespace rankfn {

/// True iff seq is the rank sequence (rk A^0, ..., rk A^n) of some n x n
/// matrix, n = seq.size() - 1: seq[0] = n, non-negative, weakly
/// decreasing and convex.
inline bool is_valid_rank_function(std::span<const int> seq) {
  if (seq.empty()) return false;
  const int n = static_cast<int>(seq.size()) - 1;
  if (seq[0] != n) return false;
  for (std::size_t m = 0; m + 1 < seq.size(); ++m) {
    if (seq[m + 1] < 0 || seq[m] < seq[m + 1]) return false;
  }
  for (std::size_t m = 0; m + 2 < seq.size(); ++m) {
    if (seq[m] + seq[m + 2] < 2 * seq[m + 1]) return false;
  }
  return true;
}

/// The sequence m -> rk(A^m) stored on m = 0..n. Values past n repeat
/// values[n], since the rank of powers of an n x n matrix has
/// stabilized by then.
class RankFunction {
 public:
  RankFunction() : values_{0} {}

  explicit RankFunction(std::vector<int> values) : values_(std::move(values)) {
    if (!is_valid_rank_function(values_)) {
      fail(ErrorKind::InvalidRankFunction,
           "not a rank function: needs r(0) = n, weakly decreasing, convex");
    }
  }

  int n() const noexcept { return static_cast<int>(values_.size()) - 1; }

  int operator()(int m) const noexcept {
    return values_[static_cast<std::size_t>(std::min(m, n()))];
  }

  /// rk(A^n); zero iff the matrix is nilpotent.
  int stable_rank() const noexcept { return values_.back(); }
  bool is_nilpotent() const noexcept { return stable_rank() == 0; }

  const std::vector<int>& values() const noexcept { return values_; }

  friend bool operator==(const RankFunction&, const RankFunction&) = default;
  friend auto operator<=>(const RankFunction& a, const RankFunction& b) {
    return a.values_ <=> b.values_;
  }

 private:
  std::vector<int> values_;
};

/// Similarity class of an n x n matrix split as (nilpotent part) (+)
/// (invertible part of size q). Only the size of the invertible part is
/// tracked; its rank function is constant q.
struct MatrixClass {
  Partition nilp;
  int q = 0;

  MatrixClass() = default;
  explicit MatrixClass(Partition nilpotent, int stable_rank = 0)
      : nilp(std::move(nilpotent)), q(stable_rank) {
    if (q < 0) fail(ErrorKind::InvalidPartition, "negative stable rank");
  }

  int n() const noexcept { return nilp.size() + q; }
  bool is_nilpotent() const noexcept { return q == 0; }
  bool is_zero() const noexcept { return q == 0 && nilp.is_zero_class(); }

  friend bool operator==(const MatrixClass&, const MatrixClass&) = default;
  friend auto operator<=>(const MatrixClass& a, const MatrixClass& b) {
    if (auto c = a.nilp <=> b.nilp; c != 0) return c;
    return a.q <=> b.q;
  }
};

/// r(m) = sum_j max(k_j - m, 0) for the Jordan form N_{k_1} (+) ... (+) N_{k_l}.
inline RankFunction partition_to_rank(const Partition& p) {
  const int n = p.size();
  std::vector<int> values(static_cast<std::size_t>(n) + 1, 0);
  for (int m = 0; m <= n; ++m) {
    int r = 0;
    for (int part : p) r += std::max(part - m, 0);
    values[static_cast<std::size_t>(m)] = r;
  }
  return RankFunction(std::move(values));
}

/// Splits a rank function into its nilpotent partition and stable rank.
/// Block size s occurs r(s-1) - 2 r(s) + r(s+1) times in the nilpotent
/// part; convexity is exactly non-negativity of these counts.
inline MatrixClass rank_to_class(const RankFunction& r) {
  const int n = r.n();
  const int q = r.stable_rank();
  std::vector<int> parts;
  for (int s = 1; s <= n; ++s) {
    const int mult = (r(s - 1) - q) - 2 * (r(s) - q) + (r(s + 1) - q);
    parts.insert(parts.end(), static_cast<std::size_t>(mult), s);
  }
  return MatrixClass(Partition(std::move(parts)), q);
}

inline MatrixClass rank_to_class(std::span<const int> seq) {
  return rank_to_class(RankFunction(std::vector<int>(seq.begin(), seq.end())));
}

/// Inverse of partition_to_rank; the rank function must be nilpotent.
inline Partition rank_to_partition(const RankFunction& r) {
  if (!r.is_nilpotent()) {
    fail(ErrorKind::NotNilpotent,
         "rank function has stable rank " + std::to_string(r.stable_rank()) +
             "; use rank_to_class");
  }
  return rank_to_class(r).nilp;
}

inline Partition rank_to_partition(std::span<const int> seq) {
  return rank_to_partition(RankFunction(std::vector<int>(seq.begin(), seq.end())));
}

/// A precedes B in the dominance order: rk(A^m) <= rk(B^m) for every m.
inline bool dominates(const RankFunction& a, const RankFunction& b) {
  if (a.n() != b.n()) {
    fail(ErrorKind::SizeMismatch, "dominance needs equal sizes, got " +
                                      std::to_string(a.n()) + " and " +
                                      std::to_string(b.n()));
  }
  return std::equal(a.values().begin(), a.values().end(), b.values().begin(),
                    [](int x, int y) { return x <= y; });
}

/// Rank function of a direct sum (nilpotent part) (+) (q x q invertible).
inline RankFunction class_rank(const MatrixClass& c) {
  const RankFunction nilp = partition_to_rank(c.nilp);
  const int n = c.n();
  std::vector<int> values(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    values[static_cast<std::size_t>(m)] = nilp(m) + c.q;
  }
  return RankFunction(std::move(values));
}

/// All similarity classes of n x n matrices (partition of n - q, q) for
/// q = 0..n, in order of increasing q.
inline std::vector<MatrixClass> classes_of(int n) {
  std::vector<MatrixClass> out;
  for (int q = 0; q <= n; ++q) {
    for (Partition& p : partitions_of(n - q)) out.emplace_back(std::move(p), q);
  }
  return out;
}

/// "10,5,1,0" -> integers; no validation beyond syntax.
inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) fail(ErrorKind::ParseError, "empty integer list");
  std::size_t pos = 0;
  for (;;) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    std::string_view digits = tok;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      fail(ErrorKind::ParseError,
           "malformed integer list '" + std::string(text) + "'");
    }
    out.push_back(std::stoi(std::string(tok)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace rankfn

#endif  // RANKFN_RANK_FUNCTION_HPP
