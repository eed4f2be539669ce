#ifndef RANKFN_GEOMETRY_HPP
#define RANKFN_GEOMETRY_HPP

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rankfn/equations.hpp"
#include "rankfn/error.hpp"
#include "rankfn/partition.hpp"
#include "rankfn/rank_function.hpp"

namespace rankfn {

using Rational = boost::rational<std::int64_t>;

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Rows are the rank functions of (A_1, ..., A_k, B), all of one size n.
class RankMatrix {
 public:
  RankMatrix() = default;
  explicit RankMatrix(std::vector<RankFunction> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.n() != rows_.front().n()) {
        fail(ErrorKind::SizeMismatch, "rank matrix rows differ in size");
      }
    }
  }

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int n() const noexcept { return rows_.empty() ? 0 : rows_.front().n(); }
  const RankFunction& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<RankFunction>& row_list() const noexcept { return rows_; }

  friend bool operator==(const RankMatrix&, const RankMatrix&) = default;
  friend auto operator<=>(const RankMatrix& a, const RankMatrix& b) {
    return a.rows_ <=> b.rows_;
  }

 private:
  std::vector<RankFunction> rows_;
};

inline RankMatrix rank_matrix(const SolutionTuple& sol) {
  if (!sol.is_nilpotent()) {
    fail(ErrorKind::NotNilpotent, "rank matrices are defined for nilpotent tuples");
  }
  std::vector<RankFunction> rows;
  for (const auto& c : sol.lhs) rows.push_back(class_rank(c));
  rows.push_back(class_rank(sol.rhs));
  return RankMatrix(std::move(rows));
}

inline RankMatrix rank_matrix(std::span<const Partition> tuple) {
  std::vector<RankFunction> rows;
  for (const auto& p : tuple) rows.push_back(partition_to_rank(p));
  return RankMatrix(std::move(rows));
}

/// Entrywise order on rank matrices of equal shape.
inline bool rm_leq(const RankMatrix& a, const RankMatrix& b) {
  if (a.rows() != b.rows() || a.n() != b.n()) {
    fail(ErrorKind::SizeMismatch, "rank matrices of different shape");
  }
  for (std::size_t i = 0; i < a.row_list().size(); ++i) {
    if (!dominates(a.row(i), b.row(i))) return false;
  }
  return true;
}

/// Combinatorial membership test for the closure of a product of
/// nilpotent orbits: coordinatewise dominance.
inline bool in_product_closure(std::span<const Partition> lhs, std::span<const Partition> rhs) {
  if (lhs.size() != rhs.size()) {
    fail(ErrorKind::SizeMismatch, "tuples of different length");
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!dominates(partition_to_rank(lhs[i]), partition_to_rank(rhs[i]))) return false;
  }
  return true;
}

inline bool same_orbit_tuple(std::span<const Partition> a, std::span<const Partition> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    if (partition_to_rank(a[i]) != partition_to_rank(b[i])) return false;
  }
  return true;
}

/// All nonzero nilpotent solutions of sum_i f(r_{A_i}) = r_B on {1..n}.
struct SolSet {
  int n = 0;
  int k = 0;
  FnSpec f;
  std::vector<SolutionTuple> tuples;
  std::vector<RankMatrix> rank_matrices;
};

struct EnumerateOptions {
  /// Cap on the number of partial left-hand tuples visited.
  std::uint64_t budget = 1'000'000;
  unsigned workers = 1;
};

/// Exhaustive over left-hand tuples. Branches are cut when the running
/// sum of 2 f(r_i(1)) - f(r_i(2)) can no longer stay <= n; every term is
/// >= f(1) >= 1, so the cut never drops a solution.
/// k = 1 is accepted (the single-matrix case of the same equation).
inline SolSet enumerate_sol(int n, int k, const FnSpec& fspec, const EnumerateOptions& opts = {}) {
  if (k < 1) fail(ErrorKind::InvalidEquation, "need k >= 1");
  if (n < 1) fail(ErrorKind::InvalidEquation, "need n >= 1");
  const ConvexTable f = fspec.convex(n);

  struct Cand {
    Partition p;
    RankFunction r;
    std::int64_t cost;
  };
  std::vector<Cand> cands;
  for (Partition& p : nonzero_partitions_of(n)) {
    RankFunction r = partition_to_rank(p);
    const std::int64_t cost = 2 * f(r(1)) - f(r(2));
    cands.push_back({std::move(p), std::move(r), cost});
  }
  std::int64_t min_cost = cands.empty() ? 0 : cands.front().cost;
  for (const auto& c : cands) min_cost = std::min(min_cost, c.cost);

  std::atomic<std::uint64_t> visited{0};
  std::atomic<bool> over_budget{false};

  auto body = [&](std::size_t first, std::vector<SolutionTuple>& sink) {
    std::vector<std::size_t> idx;
    std::vector<RankFunction> rows;
    auto rec = [&](auto&& self, std::int64_t spent) -> void {
      if (over_budget.load(std::memory_order_relaxed)) return;
      if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > opts.budget) {
        over_budget = true;
        return;
      }
      const int placed = static_cast<int>(idx.size());
      if (placed == k) {
        auto rb = solve_rank_sum(f, rows);
        if (!rb) return;
        std::vector<Partition> left;
        for (std::size_t i : idx) left.push_back(cands[i].p);
        sink.push_back(SolutionTuple::nilpotent(left, rank_to_partition(*rb)));
        return;
      }
      const std::int64_t reserve = (k - placed - 1) * min_cost;
      const std::size_t lo = placed == 0 ? first : 0;
      const std::size_t hi = placed == 0 ? first + 1 : cands.size();
      for (std::size_t i = lo; i < hi; ++i) {
        if (spent + cands[i].cost + reserve > n) continue;
        idx.push_back(i);
        rows.push_back(cands[i].r);
        self(self, spent + cands[i].cost);
        idx.pop_back();
        rows.pop_back();
      }
    };
    rec(rec, 0);
  };

  SolSet out;
  out.n = n;
  out.k = k;
  out.f = fspec;
  out.tuples = detail::parallel_collect<SolutionTuple>(cands.size(), opts.workers, body);
  if (over_budget) {
    fail(ErrorKind::BudgetExceeded,
         "enumeration visited more than " + std::to_string(opts.budget) + " partial tuples");
  }
  std::sort(out.tuples.begin(), out.tuples.end());
  for (const auto& t : out.tuples) {
    RankMatrix rm = rank_matrix(t);
    if (std::find(out.rank_matrices.begin(), out.rank_matrices.end(), rm) ==
        out.rank_matrices.end()) {
      out.rank_matrices.push_back(std::move(rm));
    }
  }
  return out;
}

/// Elements of `ms` with nothing strictly above them, in input order.
inline std::vector<RankMatrix> maximal_elements(std::span<const RankMatrix> ms) {
  std::vector<RankMatrix> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < ms.size() && !dominated; ++j) {
      dominated = j != i && ms[i] != ms[j] && rm_leq(ms[i], ms[j]);
    }
    if (!dominated && std::find(out.begin(), out.end(), ms[i]) == out.end()) {
      out.push_back(ms[i]);
    }
  }
  return out;
}

inline std::vector<RankMatrix> maximal_elements(const SolSet& s) {
  return maximal_elements(std::span<const RankMatrix>(s.rank_matrices));
}

/// An element above every other one, if there is one.
inline std::optional<RankMatrix> greatest_element(std::span<const RankMatrix> ms) {
  for (const auto& cand : ms) {
    if (std::all_of(ms.begin(), ms.end(), [&](const RankMatrix& m) { return rm_leq(m, cand); })) {
      return cand;
    }
  }
  return std::nullopt;
}

/// n^2 - sum_j (r(j) - r(j+1))^2, the dimension of the closure of the
/// nilpotent orbit with Jordan partition p.
inline int orbit_dimension(const Partition& p) {
  const int n = p.size();
  const RankFunction r = partition_to_rank(p);
  int from_ranks = n * n;
  for (int j = 0; j <= n; ++j) {
    const int d = r(j) - (j + 1 > n ? 0 : r(j + 1));
    from_ranks -= d * d;
  }
  int from_conjugate = n * n;
  for (int c : conjugate(p)) from_conjugate -= c * c;
  if (from_ranks != from_conjugate) {
    throw std::logic_error("orbit dimension formulas disagree");
  }
  return from_ranks;
}

/// Dimension of the product of orbit closures named by the rows.
inline int component_dimension(const RankMatrix& rm) {
  int dim = 0;
  for (const auto& row : rm.row_list()) dim += orbit_dimension(rank_to_partition(row));
  return dim;
}

/// Largest dimension of a linear space inside the orbit closure: half
/// the orbit dimension.
inline Rational orbit_capacity(const Partition& p) {
  return Rational(orbit_dimension(p), 2);
}

/// A linear capacity value, or minus infinity for the empty set.
struct Capacity {
  bool neg_inf = true;
  Rational value{0};

  static Capacity minus_infinity() { return {}; }
  static Capacity of(Rational v) { return {false, v}; }

  std::string str() const { return neg_inf ? "-inf" : format_rational(value); }

  friend bool operator==(const Capacity&, const Capacity&) = default;
};

struct Component {
  RankMatrix max_rm;
  int dimension = 0;
  Rational capacity{0};
};

struct ComponentSet {
  std::vector<Component> components;
  /// Exactly one component; checked against existence of a greatest
  /// element in the rank matrices.
  bool irreducible = false;
};

/// One component per maximal rank matrix, in the order they appear.
inline ComponentSet irreducible_components(const SolSet& s) {
  ComponentSet out;
  for (auto& m : maximal_elements(s)) {
    const int dim = component_dimension(m);
    out.components.push_back({std::move(m), dim, Rational(dim, 2)});
  }
  out.irreducible = out.components.size() == 1;
  const bool has_greatest = greatest_element(s.rank_matrices).has_value();
  if (out.irreducible != has_greatest) {
    throw std::logic_error("component count disagrees with greatest-element test");
  }
  return out;
}

/// Maximum over components of half the component dimension. For a
/// reducible set this is the formula value per component, not a proof
/// that a single linear space attains it across components.
inline Capacity sol_capacity(const SolSet& s) {
  const ComponentSet cs = irreducible_components(s);
  if (cs.components.empty()) return Capacity::minus_infinity();
  Rational best = cs.components.front().capacity;
  for (const auto& c : cs.components) best = std::max(best, c.capacity);
  return Capacity::of(best);
}

struct DominatingTuple {
  /// Coordinatewise least upper bound, (C_1, ..., C_k, D).
  std::vector<Partition> coords;
  /// Whether a coordinate came out as the single full block (n).
  std::vector<bool> full_block;
  /// Half the summed orbit dimensions: an upper bound on sol_capacity.
  Rational capacity_bound{0};
};

/// Pointwise maximum of the rank functions in each coordinate. The
/// maximum of weakly decreasing convex sequences is again one, so it is
/// a rank function, and it is the least one above every solution.
inline DominatingTuple dominating_tuple(const SolSet& s) {
  if (s.rank_matrices.empty()) {
    fail(ErrorKind::EmptySolutionSet, "no solutions to dominate");
  }
  const std::size_t rows = static_cast<std::size_t>(s.rank_matrices.front().rows());
  const int n = s.rank_matrices.front().n();
  DominatingTuple out;
  int dim = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<int> hi(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& rm : s.rank_matrices) {
      for (int m = 0; m <= n; ++m) {
        hi[static_cast<std::size_t>(m)] = std::max(hi[static_cast<std::size_t>(m)], rm.row(i)(m));
      }
    }
    if (!is_valid_rank_function(hi)) {
      throw std::logic_error("pointwise maximum is not a rank function");
    }
    Partition p = rank_to_partition(RankFunction(std::move(hi)));
    out.full_block.push_back(p.length() == 1);
    dim += orbit_dimension(p);
    out.coords.push_back(std::move(p));
  }
  out.capacity_bound = Rational(dim, 2);
  return out;
}

/// Graphviz digraph of the dominance order on partitions of n; edges are
/// covering relations, pointing from the smaller class to the larger.
inline std::string hasse_dot(int n, int max_n = 20) {
  if (n < 1) fail(ErrorKind::InvalidPartition, "need n >= 1");
  if (n > max_n) {
    fail(ErrorKind::BudgetExceeded,
         "hasse diagram limited to n <= " + std::to_string(max_n));
  }
  const std::vector<Partition> ps = partitions_of(n);
  const std::size_t count = ps.size();
  std::vector<RankFunction> rs;
  for (const auto& p : ps) rs.push_back(partition_to_rank(p));

  // above[i] holds every j strictly above i.
  constexpr std::size_t kMax = 1024;  // p(20) = 627
  std::vector<std::bitset<kMax>> above(count), below(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (i != j && dominates(rs[i], rs[j])) {
        above[i].set(j);
        below[j].set(i);
      }
    }
  }

  std::ostringstream os;
  os << "digraph dominance {\n";
  os << "  rankdir=BT;\n";
  // Nodes from the zero class (1,...,1) up to the full block (n).
  for (std::size_t i = count; i-- > 0;) os << "  \"" << format_partition(ps[i]) << "\";\n";
  for (std::size_t i = count; i-- > 0;) {
    for (std::size_t j = count; j-- > 0;) {
      if (above[i].test(j) && (above[i] & below[j]).none()) {
        os << "  \"" << format_partition(ps[i]) << "\" -> \"" << format_partition(ps[j])
           << "\";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace rankfn

#endif  // RANKFN_GEOMETRY_HPP
