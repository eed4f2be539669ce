// Acceptance gate. Each criterion prints one PASS/FAIL line; the exit
// status is non-zero if any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rankfn/rankfn.hpp"
#include "support/brute_force.hpp"

namespace {

using namespace rankfn;
using Clock = std::chrono::steady_clock;

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Partition ones_tail(std::vector<int> head, int n) {
  int s = 0;
  for (int x : head) s += x;
  head.resize(head.size() + static_cast<std::size_t>(n - s), 1);
  return Partition(std::move(head));
}

std::vector<int> padded(std::vector<int> head, int n) {
  head.resize(static_cast<std::size_t>(n) + 1, 0);
  return head;
}

EquationSpec spec_of(int n, int k, FnSpec f = FnSpec::identity(), FnSpec g = FnSpec::identity()) {
  EquationSpec s;
  s.n = n;
  s.k = k;
  s.f = std::move(f);
  s.g = std::move(g);
  return s;
}

// 1. Worked example with n = 10: solver output and the three rows.
Result worked_n10() {
  Result r;
  const std::vector<Partition> lhs{ones_tail({2, 2}, 10), ones_tail({3, 2}, 10)};
  const auto rhs = solve_nilpotent(FnSpec::identity().convex(10), lhs);
  r.require(rhs == Partition{3, 2, 2, 2, 1}, "solver did not return (3,2,2,2,1)");
  if (!rhs) return r;
  const RankMatrix rm = rank_matrix(SolutionTuple::nilpotent(lhs, *rhs));
  r.require(rm.row(0).values() == padded({10, 2}, 10), "row 1 differs");
  r.require(rm.row(1).values() == padded({10, 3, 1}, 10), "row 2 differs");
  r.require(rm.row(2).values() == padded({10, 5, 1}, 10), "row 3 differs");
  return r;
}

// 2. Worked example with n = 8: two solutions, incomparable rank matrices.
Result worked_n8() {
  Result r;
  const auto t = SolutionTuple::nilpotent({ones_tail({2}, 8), ones_tail({3}, 8)}, ones_tail({3, 2}, 8));
  const auto u = SolutionTuple::nilpotent({ones_tail({2, 2}, 8), ones_tail({2, 2}, 8)}, Partition{2, 2, 2, 2});
  r.require(check_solution(spec_of(8, 2), t), "first tuple is not a solution");
  r.require(check_solution(spec_of(8, 2), u), "second tuple is not a solution");
  const RankMatrix a = rank_matrix(t), b = rank_matrix(u);
  r.require(!rm_leq(a, b), "first rank matrix is below the second");
  r.require(!rm_leq(b, a), "second rank matrix is below the first");
  return r;
}

// 3. Component counts and dimensions for n = 2k and n = 2k + 1.
Result closed_form_dimensions() {
  Result r;
  for (int k = 1; k <= 5; ++k) {
    const auto even = irreducible_components(enumerate_sol(2 * k, k, FnSpec::identity()));
    r.require(even.components.size() == 1, "n=2k, k=" + std::to_string(k) + ": expected 1 component, got " +
                                               std::to_string(even.components.size()));
    for (const auto& c : even.components) {
      r.require(c.dimension == 6 * k * k - 2 * k,
                "n=2k, k=" + std::to_string(k) + ": dimension " + std::to_string(c.dimension));
    }
    const auto odd = irreducible_components(enumerate_sol(2 * k + 1, k, FnSpec::identity()));
    r.require(static_cast<int>(odd.components.size()) == k,
              "n=2k+1, k=" + std::to_string(k) + ": got " + std::to_string(odd.components.size()) +
                  " components");
    for (const auto& c : odd.components) {
      r.require(c.dimension == 6 * k * k + 8 * k - 2,
                "n=2k+1, k=" + std::to_string(k) + ": dimension " + std::to_string(c.dimension));
    }
  }
  return r;
}

// 4. Linear capacity 3k^2 - k at n = 2k.
Result capacity() {
  Result r;
  for (int k = 1; k <= 5; ++k) {
    const Capacity c = sol_capacity(enumerate_sol(2 * k, k, FnSpec::identity()));
    r.require(c == Capacity::of(Rational(3 * k * k - k)),
              "k=" + std::to_string(k) + ": capacity " + c.str());
  }
  return r;
}

// 5. solve_nilpotent against an exhaustive scan over every right-hand class.
Result solver_completeness() {
  Result r;
  int discrepancies = 0, pairs = 0;
  for (const FnSpec& f : {FnSpec::identity(), FnSpec::square()}) {
    for (int n = 2; n <= 8; ++n) {
      const ConvexTable table = f.convex(n);
      const EquationSpec spec = spec_of(n, 2, f);
      const auto nz = nonzero_partitions_of(n);
      for (const auto& a : nz) {
        for (const auto& b : nz) {
          ++pairs;
          const std::vector<Partition> lhs{a, b};
          const auto solved = solve_nilpotent(table, lhs);
          std::vector<MatrixClass> found;
          for (const auto& c : classes_of(n)) {
            if (!c.is_zero() && check_solution(spec, SolutionTuple({MatrixClass(a), MatrixClass(b)}, c))) {
              found.push_back(c);
            }
          }
          const bool agree = solved.has_value() == !found.empty() &&
                             (!solved || (found.size() == 1 && found[0] == MatrixClass(*solved)));
          discrepancies += !agree;
        }
      }
    }
  }
  r.require(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  r.detail = r.ok ? std::to_string(pairs) + " pairs" : r.detail;
  return r;
}

// 6. Exact matrix rank functions against the combinatorial ones, with
// 100 random conjugations per case.
Result oracle_equivalence() {
  struct Case {
    Partition p;
    int q;
  };
  std::vector<Case> cases;
  for (int n = 0; n <= 7; ++n) {
    for (int q = 0; q <= 2; ++q) {
      for (auto& p : partitions_of(n)) cases.push_back({std::move(p), q});
    }
  }
  std::atomic<int> mismatches{0};
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const auto& c = cases[i];
      const auto want = class_rank(MatrixClass(c.p, c.q)).values();
      const std::uint64_t seed = 7919 * i;
      const auto m = oracle::jordan_matrix(c.p, c.q, seed);
      if (oracle::matrix_rank_function(m) != want) ++mismatches;
      for (std::uint64_t s = 1; s <= 100; ++s) {
        if (oracle::matrix_rank_function(oracle::random_conjugate(m, seed + s)) != want) ++mismatches;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  Result r;
  r.require(mismatches == 0, std::to_string(mismatches.load()) + " mismatches");
  if (r.ok) r.detail = std::to_string(cases.size()) + " cases x 101 matrices";
  return r;
}

// 7. Partition <-> rank function bijection plus rejection of invalid sequences.
Result round_trip() {
  Result r;
  std::set<std::vector<int>> valid_by_n[11];
  for (int n = 0; n <= 10; ++n) {
    const auto ps = partitions_of(n);
    r.require(ps.size() == testing::partition_count(n), "partition count at n=" + std::to_string(n));
    std::set<std::vector<int>> images;
    for (const auto& p : ps) {
      const RankFunction rf = partition_to_rank(p);
      r.require(rank_to_partition(rf) == p, "round trip failed for " + format_partition(p));
      images.insert(rf.values());
    }
    r.require(images.size() == ps.size(), "rank functions not distinct at n=" + std::to_string(n));
    for (const auto& c : classes_of(n)) valid_by_n[n].insert(class_rank(c).values());
  }
  r.require(partitions_of(10).size() == 42, "p(10) != 42");

  std::mt19937_64 gen(20240601);
  int rejected = 0;
  while (rejected < 1000) {
    const int n = static_cast<int>(gen() % 10) + 1;
    const auto& valid = valid_by_n[n];
    auto it = valid.begin();
    std::advance(it, static_cast<long>(gen() % valid.size()));
    std::vector<int> seq = *it;
    const auto pos = static_cast<std::size_t>(gen() % seq.size());
    const int delta = static_cast<int>(gen() % 5) - 2;
    if (delta == 0) continue;
    seq[pos] = std::max(0, seq[pos] + delta);
    if (valid.count(seq)) continue;
    ++rejected;
    r.require(!is_valid_rank_function(seq), "accepted an invalid sequence");
    bool threw = false;
    try {
      rank_to_partition(seq);
    } catch (const Error&) {
      threw = true;
    }
    r.require(threw, "rank_to_partition accepted an invalid sequence");
  }
  return r;
}

// 8. Identity-equation solutions with invertible parts have the
// block structure of the left-hand side.
Result structure() {
  Result r;
  const ConvexTable id = FnSpec::identity().convex(6);
  int checked = 0;
  for (int n = 2; n <= 6; ++n) {
    std::vector<MatrixClass> cands;
    for (const auto& c : classes_of(n)) {
      if (!c.is_zero() && c.q <= 2) cands.push_back(c);
    }
    for (int k = 2; k <= 3; ++k) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
      for (;;) {
        std::vector<MatrixClass> lhs;
        int qsum = 0;
        for (std::size_t i : idx) {
          lhs.push_back(cands[i]);
          qsum += cands[i].q;
        }
        if (qsum <= n) {
          if (auto rhs = solve_with_stable_ranks(id, lhs)) {
            const SolutionTuple sol(lhs, *rhs);
            r.require(check_solution(spec_of(n, k), sol), "solver output fails the equation");
            r.require(structure_check_identity(sol), "block structure check failed");
            ++checked;
          }
        }
        std::size_t pos = idx.size();
        while (pos > 0) {
          --pos;
          if (++idx[pos] < cands.size()) break;
          idx[pos] = 0;
        }
        if (pos == 0 && idx[0] == 0) break;
      }
    }
  }
  r.require(checked > 0, "no solutions generated");
  if (r.ok) r.detail = std::to_string(checked) + " solutions";
  return r;
}

// 9. Squares on both sides at n = 10: the (3,4,5) tuple is found and
// every reported tuple satisfies the equation, re-evaluated on exact
// matrix ranks.
Result pythagorean() {
  Result r;
  const EquationSpec spec = spec_of(10, 2, FnSpec::square(), FnSpec::square());
  const auto sols = search_general(spec);
  const auto want = SolutionTuple::nilpotent({ones_tail({2, 2, 2}, 10), ones_tail({2, 2, 2, 2}, 10)},
                                             Partition{2, 2, 2, 2, 2});
  r.require(std::find(sols.begin(), sols.end(), want) != sols.end(), "(3,4,5) tuple missing");
  for (const auto& s : sols) {
    r.require(check_solution(spec, s), "reported tuple fails check_solution");
    const auto& ra = testing::matrix_ranks(s.lhs[0].nilp.parts());
    const auto& rb = testing::matrix_ranks(s.lhs[1].nilp.parts());
    const auto& rc = testing::matrix_ranks(s.rhs.nilp.parts());
    for (std::size_t m = 1; m <= 10; ++m) {
      r.require(ra[m] * ra[m] + rb[m] * rb[m] == rc[m] * rc[m], "direct evaluation fails");
    }
  }
  if (r.ok) r.detail = std::to_string(sols.size()) + " tuples";
  return r;
}

struct Criterion {
  const char* id;
  const char* name;
  double limit_s;  // 0 = no runtime bound
  std::function<Result()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "n=10 worked example: solve + rank matrix", 1.0, worked_n10},
      {"AC2", "n=8 worked example: solutions, incomparable", 1.0, worked_n8},
      {"AC3", "closed-form component counts and dimensions, k=1..5", 120.0, closed_form_dimensions},
      {"AC4", "linear capacity 3k^2-k at n=2k, k=1..5", 0.0, capacity},
      {"AC5", "solver criterion complete and unique, n<=8, id/square", 0.0, solver_completeness},
      {"AC6", "exact-matrix oracle equivalence, n<=7, q<=2, 100 seeds", 300.0, oracle_equivalence},
      {"AC7", "partition/rank bijection n<=10 + 1000 invalid rejections", 0.0, round_trip},
      {"AC8", "block structure of identity solutions, n<=6, q<=2", 0.0, structure},
      {"AC9", "Pythagorean search at n=10 contains (3,4,5) tuple", 0.0, pythagorean},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s && r.ok) {
      r.ok = false;
      std::ostringstream os;
      os << "runtime " << secs << " s exceeds " << c.limit_s << " s";
      r.detail = os.str();
    }
    failed += !r.ok;
    std::printf("[%s] %s %s (%.3f s)%s%s\n", r.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                r.detail.empty() ? "" : ": ", r.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
