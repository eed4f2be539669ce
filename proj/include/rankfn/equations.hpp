#ifndef RANKFN_EQUATIONS_HPP
#define RANKFN_EQUATIONS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rankfn/error.hpp"
#include "rankfn/partition.hpp"
#include "rankfn/rank_function.hpp"

namespace rankfn {

/// A function on {0, ..., size()-1} given by its values. No shape
/// constraints; this is the g side of an equation.
class FnTable {
 public:
  FnTable() = default;
  explicit FnTable(std::vector<std::int64_t> values) : values_(std::move(values)) {
    for (auto v : values_) {
      if (v < 0) fail(ErrorKind::InvalidEquation, "function values must be non-negative");
    }
  }

  int size() const noexcept { return static_cast<int>(values_.size()); }

  std::int64_t operator()(int x) const {
    if (x < 0 || x >= size()) {
      fail(ErrorKind::TableTooShort,
           "function table has no value at " + std::to_string(x));
    }
    return values_[static_cast<std::size_t>(x)];
  }

  const std::vector<std::int64_t>& values() const noexcept { return values_; }

  friend bool operator==(const FnTable&, const FnTable&) = default;

 private:
  std::vector<std::int64_t> values_;
};

/// A table known to satisfy f(0) = 0, strictly increasing, convex.
class ConvexTable {
 public:
  const FnTable& table() const noexcept { return table_; }
  int size() const noexcept { return table_.size(); }
  std::int64_t operator()(int x) const { return table_(x); }

 private:
  explicit ConvexTable(FnTable t) : table_(std::move(t)) {}
  friend ConvexTable validate_convex_table(std::span<const std::int64_t>);

  FnTable table_;
};

/// Accepts a tabulated f only if f(0) = 0, f strictly increasing and
/// f(i) + f(i+2) >= 2 f(i+1); the error kind names the first failure.
inline ConvexTable validate_convex_table(std::span<const std::int64_t> values) {
  if (values.empty()) fail(ErrorKind::TableTooShort, "empty function table");
  if (values[0] != 0) fail(ErrorKind::NotZeroAtZero, "f(0) must be 0");
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i + 1] <= values[i]) {
      fail(ErrorKind::NotStrictlyIncreasing,
           "f(" + std::to_string(i + 1) + ") <= f(" + std::to_string(i) + ")");
    }
  }
  for (std::size_t i = 0; i + 2 < values.size(); ++i) {
    if (values[i] + values[i + 2] < 2 * values[i + 1]) {
      fail(ErrorKind::NotConvex, "f is not convex at " + std::to_string(i + 1));
    }
  }
  return ConvexTable(FnTable(std::vector<std::int64_t>(values.begin(), values.end())));
}

inline ConvexTable validate_convex_table(const std::vector<std::int64_t>& values) {
  return validate_convex_table(std::span<const std::int64_t>(values));
}

/// How a function is described on the command line and in JSON:
/// identity, squaring, or an explicit table.
struct FnSpec {
  enum class Kind { Identity, Square, Table };

  Kind kind = Kind::Identity;
  std::vector<std::int64_t> values;  // only for Kind::Table

  static FnSpec identity() { return {}; }
  static FnSpec square() { return {Kind::Square, {}}; }
  static FnSpec table(std::vector<std::int64_t> v) { return {Kind::Table, std::move(v)}; }

  /// Values on 0..n. Explicit tables must cover that range.
  FnTable tabulate(int n) const {
    std::vector<std::int64_t> out;
    switch (kind) {
      case Kind::Identity:
        for (int x = 0; x <= n; ++x) out.push_back(x);
        break;
      case Kind::Square:
        for (int x = 0; x <= n; ++x) out.push_back(std::int64_t{x} * x);
        break;
      case Kind::Table:
        if (static_cast<int>(values.size()) < n + 1) {
          fail(ErrorKind::TableTooShort,
               "function table has " + std::to_string(values.size()) +
                   " values, need " + std::to_string(n + 1));
        }
        out.assign(values.begin(), values.begin() + n + 1);
        break;
    }
    return FnTable(std::move(out));
  }

  ConvexTable convex(int n) const {
    FnTable t = tabulate(n);
    return validate_convex_table(t.values());
  }

  friend bool operator==(const FnSpec&, const FnSpec&) = default;
};

/// "id", "square" or "table:0,1,3,6".
inline FnSpec parse_fn_spec(std::string_view text) {
  if (text == "id") return FnSpec::identity();
  if (text == "square") return FnSpec::square();
  constexpr std::string_view prefix = "table:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::vector<std::int64_t> values;
    for (int v : parse_int_list(text.substr(prefix.size()))) values.push_back(v);
    return FnSpec::table(std::move(values));
  }
  fail(ErrorKind::ParseError, "unknown function '" + std::string(text) +
                                  "', expected id, square or table:v0,v1,...");
}

/// f(r_{A_1}(m)) + ... + f(r_{A_k}(m)) = g(r_B(m)) for m in S, where S is
/// {1, ..., n}, optionally with 0 added.
struct EquationSpec {
  int n = 2;
  int k = 2;
  FnSpec f;
  FnSpec g;
  bool include_zero = false;

  void validate() const {
    if (k < 2) fail(ErrorKind::InvalidEquation, "need k >= 2 left-hand matrices");
    if (n < 2) fail(ErrorKind::InvalidEquation, "need matrix size n >= 2");
  }

  int first_index() const noexcept { return include_zero ? 0 : 1; }
};

/// Candidate (A_1, ..., A_k, B). Every member must be a nonzero matrix.
struct SolutionTuple {
  std::vector<MatrixClass> lhs;
  MatrixClass rhs;

  SolutionTuple() = default;
  SolutionTuple(std::vector<MatrixClass> left, MatrixClass right)
      : lhs(std::move(left)), rhs(std::move(right)) {
    for (const auto& c : lhs) {
      if (c.is_zero()) fail(ErrorKind::TrivialMember, "zero matrix in left-hand side");
    }
    if (rhs.is_zero()) fail(ErrorKind::TrivialMember, "zero matrix on right-hand side");
  }

  static SolutionTuple nilpotent(const std::vector<Partition>& left, const Partition& right) {
    std::vector<MatrixClass> l;
    for (const auto& p : left) l.emplace_back(p);
    return SolutionTuple(std::move(l), MatrixClass(right));
  }

  int k() const noexcept { return static_cast<int>(lhs.size()); }

  bool is_nilpotent() const noexcept {
    return rhs.is_nilpotent() &&
           std::all_of(lhs.begin(), lhs.end(), [](const auto& c) { return c.is_nilpotent(); });
  }

  friend bool operator==(const SolutionTuple&, const SolutionTuple&) = default;
  friend auto operator<=>(const SolutionTuple& a, const SolutionTuple& b) {
    if (auto c = std::lexicographical_compare_three_way(a.lhs.begin(), a.lhs.end(),
                                                        b.lhs.begin(), b.lhs.end());
        c != 0) {
      return c;
    }
    return a.rhs <=> b.rhs;
  }
};

inline bool check_solution(const EquationSpec& spec, const SolutionTuple& sol) {
  spec.validate();
  if (sol.k() != spec.k) {
    fail(ErrorKind::SizeMismatch, "expected " + std::to_string(spec.k) +
                                      " left-hand classes, got " + std::to_string(sol.k()));
  }
  auto check_size = [&](const MatrixClass& c) {
    if (c.n() != spec.n) {
      fail(ErrorKind::SizeMismatch, "class of size " + std::to_string(c.n()) +
                                        " in an equation of size " + std::to_string(spec.n));
    }
  };
  for (const auto& c : sol.lhs) check_size(c);
  check_size(sol.rhs);

  const FnTable f = spec.f.tabulate(spec.n);
  const FnTable g = spec.g.tabulate(spec.n);
  std::vector<RankFunction> rows;
  for (const auto& c : sol.lhs) rows.push_back(class_rank(c));
  const RankFunction rb = class_rank(sol.rhs);

  for (int m = spec.first_index(); m <= spec.n; ++m) {
    std::int64_t lhs = 0;
    for (const auto& r : rows) lhs += f(r(m));
    if (lhs != g(rb(m))) return false;
  }
  return true;
}

namespace detail {

inline int common_size(std::span<const RankFunction> rows) {
  if (rows.empty()) fail(ErrorKind::InvalidEquation, "no left-hand matrices");
  const int n = rows.front().n();
  for (const auto& r : rows) {
    if (r.n() != n) fail(ErrorKind::SizeMismatch, "left-hand matrices differ in size");
  }
  return n;
}

}  // namespace detail

/// Solves f(r_{A_1}(m)) + ... + f(r_{A_k}(m)) = r_B(m) on m = 1..n for the
/// rank function of B. With r(m) the left-hand sum, a solution exists iff
/// 2 r(1) - r(2) <= n; B's rank function is then (n, r(1), ..., r(n)).
/// Any k >= 1 is accepted here; the public solvers add the k >= 2 rule.
inline std::optional<RankFunction> solve_rank_sum(const ConvexTable& f,
                                                  std::span<const RankFunction> lhs) {
  const int n = detail::common_size(lhs);
  if (f.size() < n + 1) {
    fail(ErrorKind::TableTooShort, "f must be tabulated on 0.." + std::to_string(n));
  }
  std::vector<std::int64_t> r(static_cast<std::size_t>(n) + 2, 0);
  for (int m = 1; m <= n + 1; ++m) {
    for (const auto& a : lhs) r[static_cast<std::size_t>(m)] += f(a(m));
  }
  if (2 * r[1] - r[2] > n) return std::nullopt;

  std::vector<int> seq(static_cast<std::size_t>(n) + 1);
  seq[0] = n;
  for (int m = 1; m <= n; ++m) seq[static_cast<std::size_t>(m)] = static_cast<int>(r[static_cast<std::size_t>(m)]);
  if (!is_valid_rank_function(seq)) {
    throw std::logic_error("solvability condition held but assembled sequence is not a rank function");
  }
  return RankFunction(std::move(seq));
}

/// The unique nilpotent B with sum_i f(r_{A_i}) = r_B on {1..n}, or
/// nothing when 2 r(1) - r(2) > n.
inline std::optional<Partition> solve_nilpotent(const ConvexTable& f,
                                                std::span<const Partition> lhs) {
  if (lhs.size() < 2) fail(ErrorKind::InvalidEquation, "need k >= 2 left-hand matrices");
  std::vector<RankFunction> rows;
  for (const auto& p : lhs) {
    if (p.is_zero_class()) fail(ErrorKind::TrivialMember, "left-hand matrix is zero");
    rows.push_back(partition_to_rank(p));
  }
  auto rb = solve_rank_sum(f, rows);
  if (!rb) return std::nullopt;
  return rank_to_partition(*rb);
}

/// Same as solve_nilpotent with invertible parts allowed. B's stable
/// rank is f(q_1) + ... + f(q_k); the invertible block itself is
/// arbitrary, so only its size is returned.
inline std::optional<MatrixClass> solve_with_stable_ranks(const ConvexTable& f,
                                                          std::span<const MatrixClass> lhs) {
  if (lhs.size() < 2) fail(ErrorKind::InvalidEquation, "need k >= 2 left-hand matrices");
  std::vector<RankFunction> rows;
  for (const auto& c : lhs) {
    if (c.is_zero()) fail(ErrorKind::TrivialMember, "left-hand matrix is zero");
    rows.push_back(class_rank(c));
  }
  const int n = detail::common_size(rows);
  if (f.size() < n + 1) {
    fail(ErrorKind::TableTooShort, "f must be tabulated on 0.." + std::to_string(n));
  }
  std::int64_t tail = 0;
  for (const auto& c : lhs) tail += f(c.q);
  if (tail > n) {
    fail(ErrorKind::NoRepresentableSolution,
         "stable rank of B would be " + std::to_string(tail) + " > n = " + std::to_string(n));
  }
  auto rb = solve_rank_sum(f, rows);
  if (!rb) return std::nullopt;
  MatrixClass out = rank_to_class(*rb);
  if (out.q != tail) throw std::logic_error("stable rank of B differs from sum of f(q_j)");
  return out;
}

/// For f = g = id: B's invertible part has size q_1 + ... + q_k and the
/// blocks of size >= 2 in B's nilpotent part are exactly those of the
/// A_j taken together.
inline bool structure_check_identity(const SolutionTuple& sol) {
  std::vector<int> expected;
  int q = 0;
  for (const auto& c : sol.lhs) {
    auto blocks = nontrivial_blocks(c.nilp);
    expected.insert(expected.end(), blocks.begin(), blocks.end());
    q += c.q;
  }
  std::sort(expected.begin(), expected.end(), std::greater<>());
  return nontrivial_blocks(sol.rhs.nilp) == expected && sol.rhs.q == q;
}

struct SearchOptions {
  std::uint64_t budget = 1'000'000;
  unsigned workers = 1;
};

namespace detail {

/// base^exp, saturating at limit + 1.
inline std::uint64_t saturating_pow(std::uint64_t base, int exp, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > (limit + 1) / base) return limit + 1;
    out *= base;
  }
  return out;
}

/// Runs body(first_index, sink) for first_index in [0, count) over up to
/// `workers` threads and concatenates the per-thread sinks.
template <typename T, typename Body>
std::vector<T> parallel_collect(std::size_t count, unsigned workers, Body body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::vector<T>> sinks(workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, sinks[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) body(i, sinks[w]);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<T> out;
  for (auto& s : sinks) out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace detail

/// Exhaustive search for nonzero nilpotent solutions of an arbitrary
/// (f, g) equation. Refuses to run when p(n)^(k+1) exceeds the budget.
/// Output is sorted lexicographically by (A_1, ..., A_k, B).
inline std::vector<SolutionTuple> search_general(const EquationSpec& spec,
                                                 const SearchOptions& opts = {}) {
  spec.validate();
  const int n = spec.n;
  const FnTable f = spec.f.tabulate(n);
  const FnTable g = spec.g.tabulate(n);

  const std::vector<Partition> all = partitions_of(n);
  const std::uint64_t cost = detail::saturating_pow(all.size(), spec.k + 1, opts.budget);
  if (cost > opts.budget) {
    fail(ErrorKind::BudgetExceeded, "search space p(" + std::to_string(n) + ")^" +
                                        std::to_string(spec.k + 1) + " exceeds budget " +
                                        std::to_string(opts.budget));
  }

  const std::vector<Partition> cands = nonzero_partitions_of(n);
  std::vector<RankFunction> ranks;
  for (const auto& p : cands) ranks.push_back(partition_to_rank(p));

  // Index right-hand candidates by their g-transformed rank values on S.
  const int m0 = spec.first_index();
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> by_value;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::vector<std::int64_t> key;
    for (int m = m0; m <= n; ++m) key.push_back(g(ranks[i](m)));
    by_value[key].push_back(i);
  }

  auto body = [&](std::size_t first, std::vector<SolutionTuple>& sink) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(spec.k), 0);
    idx[0] = first;
    for (;;) {
      std::vector<std::int64_t> key(static_cast<std::size_t>(n - m0 + 1), 0);
      for (std::size_t i : idx) {
        for (int m = m0; m <= n; ++m) key[static_cast<std::size_t>(m - m0)] += f(ranks[i](m));
      }
      if (auto it = by_value.find(key); it != by_value.end()) {
        std::vector<Partition> left;
        for (std::size_t i : idx) left.push_back(cands[i]);
        for (std::size_t j : it->second) sink.push_back(SolutionTuple::nilpotent(left, cands[j]));
      }
      // Odometer over coordinates 1..k-1.
      std::size_t pos = idx.size();
      while (pos > 1) {
        --pos;
        if (++idx[pos] < cands.size()) break;
        idx[pos] = 0;
        if (pos == 1) return;
      }
    }
  };
  auto out = detail::parallel_collect<SolutionTuple>(cands.size(), opts.workers, body);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rankfn

#endif  // RANKFN_EQUATIONS_HPP
