#pragma once

// Slow reference implementations used only by the tests.

#include "primebound/lattice.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using primebound::Integer;
using primebound::IntMatrix;

// Cofactor expansion, fine for the tiny matrices used here.
inline Integer det_cofactor(const IntMatrix &m) {
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  if (n == 1)
    return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c)
          sub(i - 1, k++) = m(i, j);
    Integer t = m(0, c) * det_cofactor(sub);
    total += (c % 2 == 0) ? t : Integer(-t);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t> &)> &f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t depth) {
    if (depth == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Largest r with a nonzero r x r minor, and the gcd of those minors.
struct MinorData {
  std::size_t rank = 0;
  Integer gcd = 1;
};

inline MinorData minors(const IntMatrix &m) {
  MinorData out;
  const std::size_t top = std::min(m.rows(), m.cols());
  for (std::size_t r = top; r >= 1; --r) {
    Integer g = 0;
    for_each_subset(m.rows(), r, [&](const std::vector<std::size_t> &rows) {
      for_each_subset(m.cols(), r, [&](const std::vector<std::size_t> &cols) {
        IntMatrix sub(r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            sub(i, j) = m(rows[i], cols[j]);
        Integer d = det_cofactor(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g != 0) {
      out.rank = r;
      out.gcd = g;
      return out;
    }
  }
  return out;
}

// Gaussian elimination over F_p with plain modular arithmetic.
inline std::size_t rank_mod(const IntMatrix &m, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> a(m.rows(),
                                           std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer r = m(i, j) % p;
      std::int64_t v = r.get_si();
      a[i][j] = v < 0 ? v + p : v;
    }
  auto power = [p](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1)
        r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t inv = power(a[rank][c], p - 2);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][c] == 0)
        continue;
      const std::int64_t f = a[i][c] * inv % p;
      for (std::size_t j = 0; j < m.cols(); ++j)
        a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t max_dim,
                               int bound) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-bound, bound);
  std::uniform_int_distribution<int> sparse(0, 3);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      m(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
  return m;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= k; ++d)
      if (k % d == 0)
        prime = false;
    if (prime)
      out.push_back(k);
  }
  return out;
}

} // namespace oracle
