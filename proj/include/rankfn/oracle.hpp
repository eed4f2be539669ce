#ifndef RANKFN_ORACLE_HPP
#define RANKFN_ORACLE_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rankfn/error.hpp"
#include "rankfn/partition.hpp"

// Exact matrix arithmetic over the rationals, used to check the
// combinatorics against literal matrix powers.

namespace rankfn::oracle {

using Scalar = boost::multiprecision::cpp_rational;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Scalar(0)) {}

  static ExactMatrix identity(int n) {
    ExactMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int n() const noexcept { return n_; }

  Scalar& operator()(int i, int j) { return a_[idx(i, j)]; }
  const Scalar& operator()(int i, int j) const { return a_[idx(i, j)]; }

  bool is_zero() const {
    for (const auto& x : a_) {
      if (x != 0) return false;
    }
    return true;
  }

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.n_ != y.n_) fail(ErrorKind::SizeMismatch, "matrix sizes differ");
    ExactMatrix out(x.n_);
    for (int i = 0; i < x.n_; ++i) {
      for (int l = 0; l < x.n_; ++l) {
        const Scalar& xil = x(i, l);
        if (xil == 0) continue;
        for (int j = 0; j < x.n_; ++j) {
          if (y(l, j) != 0) out(i, j) += xil * y(l, j);
        }
      }
    }
    return out;
  }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<Scalar> a_;
};

/// Rank over Q by Gaussian elimination with exact pivots.
inline int exact_rank(ExactMatrix m) {
  const int n = m.n();
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(rank, j));
    }
    for (int r = rank + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Scalar factor = m(r, col) / m(rank, col);
      for (int j = col; j < n; ++j) m(r, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Gauss-Jordan inverse. Throws std::domain_error on a singular input.
inline ExactMatrix inverse(const ExactMatrix& m) {
  const int n = m.n();
  ExactMatrix a = m;
  ExactMatrix inv = ExactMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("matrix is singular");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Scalar p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Scalar factor = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

namespace detail {

/// Integer in [-3, 3]. Reduced from raw engine output so the stream is
/// identical across standard libraries for a given seed.
inline int small_entry(std::mt19937_64& gen) {
  return static_cast<int>(gen() % 7) - 3;
}

inline ExactMatrix random_invertible(int n, std::mt19937_64& gen) {
  for (;;) {
    ExactMatrix u(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) u(i, j) = small_entry(gen);
    }
    if (exact_rank(u) == n) return u;
  }
}

}  // namespace detail

/// Block diagonal N_{k_1} (+) ... (+) N_{k_l} (+) D with D a seeded random
/// invertible q x q integer matrix (entries in [-3, 3]).
inline ExactMatrix jordan_matrix(const Partition& p, int q, std::uint64_t seed) {
  if (q < 0) fail(ErrorKind::InvalidPartition, "negative stable rank");
  const int n = p.size() + q;
  ExactMatrix m(n);
  int offset = 0;
  for (int block : p) {
    for (int i = 0; i + 1 < block; ++i) m(offset + i, offset + i + 1) = 1;
    offset += block;
  }
  if (q > 0) {
    std::mt19937_64 gen(seed);
    const ExactMatrix d = detail::random_invertible(q, gen);
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) m(offset + i, offset + j) = d(i, j);
    }
  }
  return m;
}

/// (rk M^0, rk M^1, ..., rk M^n) with M^0 the identity.
inline std::vector<int> matrix_rank_function(const ExactMatrix& m) {
  const int n = m.n();
  std::vector<int> out{n};
  ExactMatrix power = ExactMatrix::identity(n);
  for (int e = 1; e <= n; ++e) {
    if (e > 1 && out[e - 1] == out[e - 2]) {
      // rk M^e = rk M^{e+1} forces the sequence to be constant from here on
      out.resize(static_cast<std::size_t>(n) + 1, out.back());
      break;
    }
    power = power * m;
    out.push_back(exact_rank(power));
  }
  return out;
}

/// U^{-1} M U for a seeded random invertible integer U.
inline ExactMatrix random_conjugate(const ExactMatrix& m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const ExactMatrix u = detail::random_invertible(m.n(), gen);
  return inverse(u) * m * u;
}

inline ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.n() + b.n());
  for (int i = 0; i < a.n(); ++i) {
    for (int j = 0; j < a.n(); ++j) out(i, j) = a(i, j);
  }
  for (int i = 0; i < b.n(); ++i) {
    for (int j = 0; j < b.n(); ++j) out(a.n() + i, a.n() + j) = b(i, j);
  }
  return out;
}

inline std::string format_scalar(const Scalar& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline Scalar parse_scalar(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Scalar(boost::multiprecision::cpp_int(text));
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    return Scalar(num, den);
  } catch (const std::runtime_error&) {
    fail(ErrorKind::ParseError, "malformed rational '" + text + "'");
  }
}

}  // namespace rankfn::oracle

#endif  // RANKFN_ORACLE_HPP
