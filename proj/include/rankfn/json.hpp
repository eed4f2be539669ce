#ifndef RANKFN_JSON_HPP
#define RANKFN_JSON_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "rankfn/equations.hpp"
#include "rankfn/error.hpp"
#include "rankfn/geometry.hpp"
#include "rankfn/oracle.hpp"
#include "rankfn/partition.hpp"
#include "rankfn/rank_function.hpp"

// nlohmann::json adapters for the published document formats.

namespace rankfn {

using nlohmann::json;

namespace detail {

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

}  // namespace detail

inline void to_json(json& j, const Partition& p) { j = p.parts(); }
inline void from_json(const json& j, Partition& p) {
  p = detail::guarded([&] { return Partition(j.get<std::vector<int>>()); });
}

inline void to_json(json& j, const RankFunction& r) { j = r.values(); }
inline void from_json(const json& j, RankFunction& r) {
  r = detail::guarded([&] { return RankFunction(j.get<std::vector<int>>()); });
}

inline void to_json(json& j, const MatrixClass& c) { j = json{{"nilp", c.nilp}, {"q", c.q}}; }
inline void from_json(const json& j, MatrixClass& c) {
  c = detail::guarded([&] {
    return MatrixClass(j.at("nilp").get<Partition>(), j.value("q", 0));
  });
}

inline void to_json(json& j, const FnSpec& f) {
  switch (f.kind) {
    case FnSpec::Kind::Identity: j = json{{"kind", "id"}}; break;
    case FnSpec::Kind::Square: j = json{{"kind", "square"}}; break;
    case FnSpec::Kind::Table: j = json{{"kind", "table"}, {"values", f.values}}; break;
  }
}
inline void from_json(const json& j, FnSpec& f) {
  f = detail::guarded([&] {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "id") return FnSpec::identity();
    if (kind == "square") return FnSpec::square();
    if (kind == "table") return FnSpec::table(j.at("values").get<std::vector<std::int64_t>>());
    fail(ErrorKind::ParseError, "unknown function kind '" + kind + "'");
  });
}

inline void to_json(json& j, const EquationSpec& s) {
  j = json{{"n", s.n}, {"k", s.k}, {"f", s.f}, {"g", s.g}, {"include_zero", s.include_zero}};
}
inline void from_json(const json& j, EquationSpec& s) {
  s = detail::guarded([&] {
    EquationSpec out;
    out.n = j.at("n").get<int>();
    out.k = j.at("k").get<int>();
    out.f = j.at("f").get<FnSpec>();
    out.g = j.contains("g") ? j.at("g").get<FnSpec>() : FnSpec::identity();
    out.include_zero = j.value("include_zero", false);
    return out;
  });
}

inline void to_json(json& j, const SolutionTuple& t) {
  j = json{{"lhs", t.lhs}, {"rhs", t.rhs}};
}
inline void from_json(const json& j, SolutionTuple& t) {
  t = detail::guarded([&] {
    return SolutionTuple(j.at("lhs").get<std::vector<MatrixClass>>(),
                         j.at("rhs").get<MatrixClass>());
  });
}

inline void to_json(json& j, const RankMatrix& m) { j = m.row_list(); }

inline void to_json(json& j, const SolSet& s) {
  j = json{{"n", s.n},
           {"k", s.k},
           {"f", s.f},
           {"tuples", s.tuples},
           {"rank_matrices", s.rank_matrices}};
}

inline void to_json(json& j, const Component& c) {
  j = json{{"max_rm", c.max_rm},
           {"dimension", c.dimension},
           {"capacity", format_rational(c.capacity)}};
}

}  // namespace rankfn

namespace rankfn::oracle {

inline void to_json(nlohmann::json& j, const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.n(); ++c) row.push_back(format_scalar(m(i, c)));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"n", m.n()}, {"entries", std::move(rows)}};
}

inline void from_json(const nlohmann::json& j, ExactMatrix& m) {
  const int n = rankfn::detail::guarded([&] { return j.at("n").get<int>(); });
  const auto& rows = j.at("entries");
  if (n < 0 || !rows.is_array() || static_cast<int>(rows.size()) != n) {
    fail(ErrorKind::ParseError, "matrix entries must have n rows");
  }
  ExactMatrix out(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      fail(ErrorKind::ParseError, "matrix row " + std::to_string(i) + " must have n entries");
    }
    for (int c = 0; c < n; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_string()) fail(ErrorKind::ParseError, "matrix entries are \"p/q\" strings");
      out(i, c) = parse_scalar(cell.get<std::string>());
    }
  }
  m = std::move(out);
}

}  // namespace rankfn::oracle

#endif  // RANKFN_JSON_HPP
