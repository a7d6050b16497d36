#include "primebound/lattice.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace primebound {

IntMatrix make_int_matrix(std::size_t rows, std::size_t cols,
                          const std::vector<std::int64_t> &entries) {
  if (entries.size() != rows * cols)
    throw std::invalid_argument("make_int_matrix: wrong entry count");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = static_cast<long>(entries[i * cols + j]);
  return m;
}

RationalMatrix to_rational(const IntMatrix &m) {
  RationalMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      q(i, j) = m(i, j);
  return q;
}

namespace {

struct Position {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |entry| in the trailing block starting at (t, t).
std::optional<Position> min_abs_entry(const IntMatrix &a, std::size_t t) {
  std::optional<Position> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0)
        continue;
      Integer v = abs(a(i, j));
      if (!best || v < best_abs) {
        best = Position{i, j};
        best_abs = v;
      }
    }
  return best;
}

// row_dst -= q * row_src, applied to A and the left transform.
void row_axpy(IntMatrix &a, IntMatrix &u, std::size_t dst, std::size_t src,
              const Integer &q) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    a(dst, j) -= q * a(src, j);
  for (std::size_t j = 0; j < u.cols(); ++j)
    u(dst, j) -= q * u(src, j);
}

void col_axpy(IntMatrix &a, IntMatrix &v, std::size_t dst, std::size_t src,
              const Integer &q) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    a(i, dst) -= q * a(i, src);
  for (std::size_t i = 0; i < v.rows(); ++i)
    v(i, dst) -= q * v(i, src);
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix &m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t n = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < n; ++t) {
    auto pivot = min_abs_entry(a, t);
    if (!pivot)
      break;
    a.swap_rows(t, pivot->row);
    u.swap_rows(t, pivot->row);
    a.swap_cols(t, pivot->col);
    v.swap_cols(t, pivot->col);

    for (;;) {
      bool cleared = true;
      Integer q;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (sgn(a(i, t)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_axpy(a, u, i, t, q);
        if (sgn(a(i, t)) != 0)
          cleared = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (sgn(a(t, j)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_axpy(a, v, j, t, q);
        if (sgn(a(t, j)) != 0)
          cleared = false;
      }

      if (!cleared) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t best_i = t, best_j = t;
        Integer best_abs = abs(a(t, t));
        for (std::size_t i = t + 1; i < a.rows(); ++i)
          if (sgn(a(i, t)) != 0 && abs(a(i, t)) < best_abs) {
            best_abs = abs(a(i, t));
            best_i = i;
            best_j = t;
          }
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (sgn(a(t, j)) != 0 && abs(a(t, j)) < best_abs) {
            best_abs = abs(a(t, j));
            best_i = t;
            best_j = j;
          }
        a.swap_rows(t, best_i);
        u.swap_rows(t, best_i);
        a.swap_cols(t, best_j);
        v.swap_cols(t, best_j);
        continue;
      }

      // Row and column are clear; enforce divisibility of the trailing block.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < a.rows() && divides_all; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            row_axpy(a, u, t, i, Integer(-1));
            divides_all = false;
            break;
          }
      if (divides_all)
        break;
    }

    if (sgn(a(t, t)) < 0) {
      for (std::size_t j = 0; j < a.cols(); ++j)
        a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < u.cols(); ++j)
        u(t, j) = -u(t, j);
    }
  }

  SmithDecomposition out{std::move(a), std::move(u), std::move(v), {}};
  for (std::size_t t = 0; t < n; ++t)
    if (sgn(out.D(t, t)) != 0)
      out.elementary_divisors.push_back(out.D(t, t));
  return out;
}

namespace {

// Fraction-free forward elimination; returns the rank and the sign of the
// row permutation. The matrix is consumed.
std::pair<std::size_t, int> bareiss_echelon(IntMatrix &a) {
  std::size_t r = 0;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0)
      ++p;
    if (p == a.rows())
      continue;
    if (p != r) {
      a.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(),
                     prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return {r, sign};
}

} // namespace

std::size_t rational_rank(const IntMatrix &m) {
  IntMatrix a = m;
  return bareiss_echelon(a).first;
}

Integer determinant(const IntMatrix &m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant: matrix is not square");
  if (m.rows() == 0)
    return 1;
  IntMatrix a = m;
  auto [rank, sign] = bareiss_echelon(a);
  if (rank < m.rows())
    return 0;
  return sign * a(m.rows() - 1, m.cols() - 1);
}

Integer rank_minor_gcd(const IntMatrix &m) {
  Integer g = 1;
  for (const auto &d : smith_normal_form(m).elementary_divisors)
    g *= d;
  return g;
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == d)
      return true;
    if (n % d == 0)
      return false;
  }
  // GMP's BPSW test has no known pseudoprimes below 2^64.
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

std::size_t rank_mod_p(const IntMatrix &m, std::uint64_t p) {
  if (!is_prime(p))
    throw std::invalid_argument("rank_mod_p: " + std::to_string(p) +
                                " is not prime");
  using u128 = unsigned __int128;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  Integer modulus;
  mpz_import(modulus.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  Integer residue;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_fdiv_r(residue.get_mpz_t(), m(i, j).get_mpz_t(),
                 modulus.get_mpz_t());
      std::uint64_t v = 0;
      mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, residue.get_mpz_t());
      a[i * cols + j] = v;
    }
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t & {
    return a[i * cols + j];
  };
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<u128>(x) * y % p);
  };
  auto inverse = [&](std::uint64_t x) {
    // Fermat: x^(p-2).
    std::uint64_t result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1)
        result = mulmod(result, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return result;
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && at(piv, c) == 0)
      ++piv;
    if (piv == rows)
      continue;
    for (std::size_t j = 0; j < cols; ++j)
      std::swap(at(piv, j), at(r, j));
    const std::uint64_t inv = inverse(at(r, c));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (at(i, c) == 0)
        continue;
      const std::uint64_t f = mulmod(at(i, c), inv);
      for (std::size_t j = c; j < cols; ++j)
        at(i, j) = (at(i, j) + p - mulmod(f, at(r, j))) % p;
    }
    ++r;
  }
  return r;
}

RationalMatrix invert_rational(const IntMatrix &m) {
  return invert_rational(to_rational(m));
}

RationalMatrix invert_rational(const RationalMatrix &m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("invert_rational: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0)
      ++p;
    if (p == n)
      throw SingularMatrixError("invert_rational: matrix is singular");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0)
        continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<Rational> solve_rational(const RationalMatrix &m,
                                     const std::vector<Rational> &b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("solve_rational: dimension mismatch");
  const RationalMatrix inv = invert_rational(m);
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j)
      x[i] += inv(i, j) * b[j];
  return x;
}

std::vector<Integer> prime_factors(const Integer &n) {
  if (n < 1)
    throw std::invalid_argument("prime_factors: argument must be positive");
  std::vector<Integer> out;
  Integer rest = n;
  auto strip = [&](const Integer &d) {
    if (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
      out.push_back(d);
      while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t()))
        rest /= d;
    }
  };
  strip(Integer(2));
  for (Integer d = 3; d * d <= rest; d += 2)
    strip(d);
  if (rest > 1)
    out.push_back(rest);
  return out;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

std::string to_string(const Integer &z) { return z.get_str(); }

std::string to_fraction_string(const Rational &q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string &text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0)
    throw std::invalid_argument("parse_fraction: malformed rational '" + text +
                                "'");
  q.canonicalize();
  return q;
}

} // namespace primebound
