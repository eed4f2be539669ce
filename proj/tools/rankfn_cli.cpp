// rankfn: command-line front end for rank functions, rank function
// equations and their solution sets. One JSON document (or DOT for
// `hasse`) on stdout; errors as JSON on stderr.
//
// Exit status: 0 success, 1 rejected input or failed verification,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankfn/json.hpp"
#include "rankfn/rankfn.hpp"

namespace {

using rankfn::json;

constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct Outcome {
  json doc;
  int status = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) rankfn::fail(rankfn::ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    rankfn::fail(rankfn::ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::vector<rankfn::Partition> parse_partitions(const std::vector<std::string>& texts) {
  std::vector<rankfn::Partition> out;
  for (const auto& t : texts) out.push_back(rankfn::parse_partition(t));
  return out;
}

void require_size(const std::vector<rankfn::Partition>& ps, int n) {
  for (const auto& p : ps) {
    if (p.size() != n) {
      rankfn::fail(rankfn::ErrorKind::SizeMismatch, "partition " + rankfn::format_partition(p) +
                                                        " has size " + std::to_string(p.size()) +
                                                        ", expected " + std::to_string(n));
    }
  }
}

/// "2,1:1" -> nilpotent part (2,1) with a 1 x 1 invertible block.
/// ":3" is a 3 x 3 invertible matrix; no colon means q = 0.
rankfn::MatrixClass parse_class(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return rankfn::MatrixClass(rankfn::parse_partition(text));
  const auto q = rankfn::parse_int_list(text.substr(colon + 1));
  if (q.size() != 1 || q[0] < 0) {
    rankfn::fail(rankfn::ErrorKind::ParseError, "malformed class '" + text + "', expected PARTS:Q");
  }
  return rankfn::MatrixClass(rankfn::parse_partition(text.substr(0, colon)), q[0]);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RANKFN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      rankfn::fail(rankfn::ErrorKind::ParseError, "RANKFN_SEED must be a non-negative integer");
    }
  }
  return 0;
}

json capacity_json(const rankfn::Capacity& c) { return c.str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank functions of matrix powers: solve, enumerate and classify rank function equations"};
  app.require_subcommand(1);

  std::string jp, r_text, fn_text = "id", gn_text = "id", spec_file, sol_file, rhs_text;
  std::vector<std::string> jps, classes;
  int n = 0, k = 2, q = 0, conjugations = 100;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  bool include_zero = false, with_rank_matrix = false, emit_matrix = false;

  auto add_fk = [&](CLI::App* sub, bool with_g) {
    sub->add_option("--n", n, "matrix size")->required();
    sub->add_option("--k", k, "number of left-hand matrices")->capture_default_str();
    sub->add_option("--f", fn_text, "id, square or table:v0,v1,...")->capture_default_str();
    if (with_g) sub->add_option("--g", gn_text, "id, square or table:v0,v1,...")->capture_default_str();
    sub->add_option("--budget", budget, "enumeration cap")->capture_default_str();
    sub->add_option("--workers", workers, "parallel workers")->capture_default_str();
  };

  auto* rank = app.add_subcommand("rank", "rank function of a class");
  rank->add_option("--jp", jp, "Jordan partition, e.g. 3,2,1")->required();
  rank->add_option("--q", q, "size of the invertible part")->capture_default_str();

  auto* unrank = app.add_subcommand("unrank", "class of a rank function");
  unrank->add_option("--r", r_text, "rank values r(0),...,r(n)")->required();

  auto* dom = app.add_subcommand("dominates", "does the first class precede the second");
  dom->add_option("--jp", jps, "two Jordan partitions")->required()->expected(2);

  auto* solve = app.add_subcommand("solve", "nilpotent B for convex f");
  solve->add_option("--n", n, "matrix size")->required();
  solve->add_option("--f", fn_text, "id, square or table:v0,v1,...")->capture_default_str();
  solve->add_option("--jp", jps, "left-hand Jordan partitions")->required();
  solve->add_flag("--rank-matrix", with_rank_matrix, "also print the rank matrix");

  auto* solve_stable = app.add_subcommand("solve-stable", "B for classes with invertible parts");
  solve_stable->add_option("--n", n, "matrix size")->required();
  solve_stable->add_option("--f", fn_text, "id, square or table:v0,v1,...")->capture_default_str();
  solve_stable->add_option("--class", classes, "left-hand classes PARTS:Q, e.g. 2,1:1")->required();

  auto* check = app.add_subcommand("check", "does a tuple solve an equation");
  check->add_option("--spec", spec_file, "EquationSpec JSON file");
  check->add_option("--solution", sol_file, "SolutionTuple JSON file");
  check->add_option("--n", n, "matrix size");
  check->add_option("--f", fn_text, "id, square or table:v0,v1,...")->capture_default_str();
  check->add_option("--g", gn_text, "id, square or table:v0,v1,...")->capture_default_str();
  check->add_option("--jp", jps, "left-hand Jordan partitions");
  check->add_option("--rhs", rhs_text, "right-hand Jordan partition");
  check->add_flag("--include-zero", include_zero, "also require the equation at m = 0");

  auto* search = app.add_subcommand("search", "exhaustive search for arbitrary f, g");
  add_fk(search, true);
  search->add_flag("--include-zero", include_zero, "also require the equation at m = 0");

  auto* enumerate = app.add_subcommand("enumerate", "all nilpotent solutions for g = id");
  add_fk(enumerate, false);

  auto* components = app.add_subcommand("components", "irreducible components of the solution set");
  add_fk(components, false);

  auto* capacity = app.add_subcommand("capacity", "linear capacity of an orbit or a solution set");
  capacity->add_option("--jp", jp, "Jordan partition (orbit capacity)");
  capacity->add_option("--n", n, "matrix size (solution set capacity)");
  capacity->add_option("--k", k, "number of left-hand matrices")->capture_default_str();
  capacity->add_option("--f", fn_text, "id, square or table:v0,v1,...")->capture_default_str();
  capacity->add_option("--budget", budget, "enumeration cap")->capture_default_str();
  capacity->add_option("--workers", workers, "parallel workers")->capture_default_str();

  auto* domtuple = app.add_subcommand("dominating-tuple", "least tuple above every solution");
  add_fk(domtuple, false);

  auto* hasse = app.add_subcommand("hasse", "DOT diagram of the dominance order");
  hasse->add_option("--n", n, "partition size")->required();

  auto* verify = app.add_subcommand("oracle-verify", "compare with exact matrix arithmetic");
  verify->add_option("--jp", jp, "Jordan partition")->required();
  verify->add_option("--q", q, "size of the invertible part")->capture_default_str();
  verify->add_option("--seed", seed, "RNG seed (default: RANKFN_SEED or 0)");
  verify->add_option("--conjugations", conjugations, "random conjugates to test")->capture_default_str();
  verify->add_flag("--emit-matrix", emit_matrix, "include the last conjugated matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const rankfn::SearchOptions search_opts{budget, workers};
  const rankfn::EnumerateOptions enum_opts{budget, workers};

  try {
    Outcome out;
    std::string text;  // non-JSON output (DOT)

    if (*rank) {
      out.doc = rankfn::class_rank(rankfn::MatrixClass(rankfn::parse_partition(jp), q));
    } else if (*unrank) {
      const auto cls = rankfn::rank_to_class(rankfn::parse_int_list(r_text));
      out.doc = cls.is_nilpotent() ? json(cls.nilp) : json(cls);
    } else if (*dom) {
      const auto ps = parse_partitions(jps);
      out.doc = json{{"dominates", rankfn::dominates(rankfn::partition_to_rank(ps[0]),
                                                     rankfn::partition_to_rank(ps[1]))}};
    } else if (*solve) {
      const auto lhs = parse_partitions(jps);
      require_size(lhs, n);
      const auto rhs = rankfn::solve_nilpotent(rankfn::parse_fn_spec(fn_text).convex(n), lhs);
      out.doc = json{{"rhs", rhs ? json(*rhs) : json(nullptr)}};
      if (with_rank_matrix && rhs) {
        std::vector<rankfn::Partition> all = lhs;
        all.push_back(*rhs);
        out.doc["rank_matrix"] = rankfn::rank_matrix(std::span<const rankfn::Partition>(all));
      }
    } else if (*solve_stable) {
      std::vector<rankfn::MatrixClass> lhs;
      for (const auto& c : classes) lhs.push_back(parse_class(c));
      for (const auto& c : lhs) {
        if (c.n() != n) rankfn::fail(rankfn::ErrorKind::SizeMismatch, "class size differs from --n");
      }
      const auto rhs = rankfn::solve_with_stable_ranks(rankfn::parse_fn_spec(fn_text).convex(n), lhs);
      out.doc = json{{"rhs", rhs ? json(*rhs) : json(nullptr)}};
    } else if (*check) {
      rankfn::EquationSpec spec;
      rankfn::SolutionTuple sol;
      if (!spec_file.empty() || !sol_file.empty()) {
        if (spec_file.empty() || sol_file.empty()) {
          rankfn::fail(rankfn::ErrorKind::ParseError, "--spec and --solution go together");
        }
        spec = read_json_file(spec_file).get<rankfn::EquationSpec>();
        sol = read_json_file(sol_file).get<rankfn::SolutionTuple>();
      } else {
        if (n == 0 || jps.empty() || rhs_text.empty()) {
          rankfn::fail(rankfn::ErrorKind::ParseError,
                       "check needs --spec/--solution or --n, --jp (repeated) and --rhs");
        }
        spec.n = n;
        spec.k = static_cast<int>(jps.size());
        spec.f = rankfn::parse_fn_spec(fn_text);
        spec.g = rankfn::parse_fn_spec(gn_text);
        spec.include_zero = include_zero;
        std::vector<rankfn::MatrixClass> lhs;
        for (const auto& t : jps) lhs.push_back(parse_class(t));
        sol = rankfn::SolutionTuple(std::move(lhs), parse_class(rhs_text));
      }
      out.doc = json{{"holds", rankfn::check_solution(spec, sol)}};
    } else if (*search) {
      rankfn::EquationSpec spec;
      spec.n = n;
      spec.k = k;
      spec.f = rankfn::parse_fn_spec(fn_text);
      spec.g = rankfn::parse_fn_spec(gn_text);
      spec.include_zero = include_zero;
      const auto tuples = rankfn::search_general(spec, search_opts);
      out.doc = json{{"spec", spec}, {"tuples", tuples}};
    } else if (*enumerate) {
      out.doc = rankfn::enumerate_sol(n, k, rankfn::parse_fn_spec(fn_text), enum_opts);
    } else if (*components) {
      const auto s = rankfn::enumerate_sol(n, k, rankfn::parse_fn_spec(fn_text), enum_opts);
      const auto cs = rankfn::irreducible_components(s);
      json dims = json::array();
      for (const auto& c : cs.components) dims.push_back(c.dimension);
      out.doc = json{{"count", cs.components.size()},
                     {"irreducible", cs.irreducible},
                     {"dimensions", dims},
                     {"capacity", capacity_json(rankfn::sol_capacity(s))},
                     {"components", cs.components}};
    } else if (*capacity) {
      if (!jp.empty()) {
        out.doc = json{{"capacity", rankfn::format_rational(rankfn::orbit_capacity(rankfn::parse_partition(jp)))}};
      } else if (n > 0) {
        const auto s = rankfn::enumerate_sol(n, k, rankfn::parse_fn_spec(fn_text), enum_opts);
        out.doc = json{{"capacity", capacity_json(rankfn::sol_capacity(s))}};
      } else {
        rankfn::fail(rankfn::ErrorKind::ParseError, "capacity needs --jp or --n");
      }
    } else if (*domtuple) {
      const auto s = rankfn::enumerate_sol(n, k, rankfn::parse_fn_spec(fn_text), enum_opts);
      const auto d = rankfn::dominating_tuple(s);
      out.doc = json{{"tuple", d.coords},
                     {"full_block", d.full_block},
                     {"capacity_bound", rankfn::format_rational(d.capacity_bound)},
                     {"capacity", capacity_json(rankfn::sol_capacity(s))}};
    } else if (*hasse) {
      text = rankfn::hasse_dot(n);
    } else if (*verify) {
      namespace orc = rankfn::oracle;
      const rankfn::MatrixClass cls(rankfn::parse_partition(jp), q);
      const std::uint64_t s = seed.value_or(default_seed());
      const auto want = rankfn::class_rank(cls).values();
      const orc::ExactMatrix m = orc::jordan_matrix(cls.nilp, cls.q, s);
      const auto got = orc::matrix_rank_function(m);
      bool agree = got == want;
      orc::ExactMatrix last = m;
      for (int i = 0; i < conjugations; ++i) {
        last = orc::random_conjugate(m, s + static_cast<std::uint64_t>(i) + 1);
        agree = agree && orc::matrix_rank_function(last) == want;
      }
      out.doc = json{{"class", cls},
                     {"seed", s},
                     {"conjugations", conjugations},
                     {"combinatorial", want},
                     {"matrix", got},
                     {"agree", agree}};
      if (emit_matrix) out.doc["conjugated_matrix"] = last;
      out.status = agree ? 0 : 1;
    }

    if (!text.empty()) {
      std::cout << text;
    } else {
      std::cout << out.doc.dump() << '\n';
    }
    return out.status;
  } catch (const rankfn::Error& e) {
    std::cerr << json{{"error", {{"kind", std::string(rankfn::to_string(e.kind()))}, {"message", e.what()}}}}.dump()
              << '\n';
    return 1;
  }
}
