#ifndef RANKFN_TESTS_BRUTE_FORCE_HPP
#define RANKFN_TESTS_BRUTE_FORCE_HPP

// Test-only reference computations. Nothing here calls the solver,
// the enumerator or partition_to_rank; ranks come from literal matrix
// powers and partitions from a separate generator.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "rankfn/oracle.hpp"
#include "rankfn/partition.hpp"

namespace rankfn::testing {

/// p(n) from the recurrence on the largest part.
inline std::uint64_t partition_count(int n) {
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int s = part; s <= n; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  }
  return ways[static_cast<std::size_t>(n)];
}

/// Partitions of n by recursive generation with a bounded largest part.
inline std::vector<std::vector<int>> raw_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int cap) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rem, cap); part >= 1; --part) {
      cur.push_back(part);
      rec(rem - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

/// Rank sequence (rk N^0 .. rk N^n) of the Jordan matrix, by exact
/// matrix powers. Memoized per partition.
inline const std::vector<int>& matrix_ranks(const std::vector<int>& parts) {
  static std::map<std::vector<int>, std::vector<int>> cache;
  auto it = cache.find(parts);
  if (it == cache.end()) {
    auto m = oracle::jordan_matrix(Partition(parts), 0, 0);
    it = cache.emplace(parts, oracle::matrix_rank_function(m)).first;
  }
  return it->second;
}

inline int at(const std::vector<int>& r, int m) {
  return r[static_cast<std::size_t>(std::min<int>(m, static_cast<int>(r.size()) - 1))];
}

/// Classical dominance of partitions: partial sums of a never exceed
/// those of b.
inline bool partial_sum_dominated(const std::vector<int>& a, const std::vector<int>& b) {
  int sa = 0, sb = 0;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

using BruteTuple = std::vector<std::vector<int>>;  // A_1 .. A_k, B

/// Every nonzero nilpotent (A_1..A_k, B) with
/// sum_i f(rk A_i^m) = g(rk B^m) for m = 1..n, by scanning all
/// partitions in every coordinate. f and g are given on 0..n.
inline std::vector<BruteTuple> brute_solutions(int n, int k, const std::vector<std::int64_t>& f,
                                               const std::vector<std::int64_t>& g) {
  std::vector<std::vector<int>> nz;
  for (auto& p : raw_partitions(n)) {
    if (p.front() >= 2) nz.push_back(p);
  }
  std::vector<BruteTuple> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  if (nz.empty()) return out;
  for (;;) {
    for (const auto& b : nz) {
      bool ok = true;
      for (int m = 1; m <= n && ok; ++m) {
        std::int64_t lhs = 0;
        for (std::size_t i : idx) lhs += f[static_cast<std::size_t>(at(matrix_ranks(nz[i]), m))];
        ok = lhs == g[static_cast<std::size_t>(at(matrix_ranks(b), m))];
      }
      if (ok) {
        BruteTuple t;
        for (std::size_t i : idx) t.push_back(nz[i]);
        t.push_back(b);
        out.push_back(t);
      }
    }
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < nz.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

inline std::vector<std::int64_t> id_table(int n) {
  std::vector<std::int64_t> v;
  for (int x = 0; x <= n; ++x) v.push_back(x);
  return v;
}

inline std::vector<std::int64_t> square_table(int n) {
  std::vector<std::int64_t> v;
  for (int x = 0; x <= n; ++x) v.push_back(std::int64_t{x} * x);
  return v;
}

}  // namespace rankfn::testing

#endif  // RANKFN_TESTS_BRUTE_FORCE_HPP
