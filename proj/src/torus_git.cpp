#include "primebound/torus_git.hpp"

#include <algorithm>
#include <numeric>

namespace primebound {

SupportVector::SupportVector(CharacterSupport support)
    : support_(std::move(support)) {
  if (support_.size() == 0)
    throw std::invalid_argument("support of the zero vector is empty");
}

SupportVector support_of(DatumPtr datum,
                         const std::map<Weight, bool> &coefficients) {
  std::vector<Weight> chars;
  for (const auto &[w, nonzero] : coefficients)
    if (nonzero)
      chars.push_back(w);
  if (chars.empty())
    throw std::invalid_argument("support_of: the zero vector has no support");
  return SupportVector(CharacterSupport(std::move(datum), std::move(chars)));
}

std::int64_t OneParamSubgroup::pairing(const Weight &w) const {
  if (w.size() != coords.size())
    throw std::invalid_argument("pairing: rank mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    s += coords[i] * w[i];
  return s;
}

std::string to_string(Stability s) {
  switch (s) {
  case Stability::stable:
    return "stable";
  case Stability::semistable_not_stable:
    return "semistable_not_stable";
  case Stability::unstable:
    return "unstable";
  }
  return "?";
}

namespace {

// Gaussian elimination; nullopt when m is singular.
std::optional<std::vector<Rational>> solve(RationalMatrix m,
                                           std::vector<Rational> b) {
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0)
      ++p;
    if (p == n)
      return std::nullopt;
    m.swap_rows(p, c);
    std::swap(b[p], b[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0)
        continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j)
        m(i, j) -= f * m(c, j);
      b[i] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t j = i + 1; j < n; ++j)
      s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

// Support points with their scaled Gram matrix.
struct PointSet {
  const RootDatum &datum;
  const std::vector<Weight> &points;
  std::vector<std::int64_t> gram; // scaled by datum.gram_scale()

  PointSet(const RootDatum &d, const std::vector<Weight> &pts)
      : datum(d), points(pts), gram(pts.size() * pts.size()) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        gram[i * pts.size() + j] = d.scaled_inner_product(pts[i], pts[j]);
  }

  long k(std::size_t i, std::size_t j) const {
    return static_cast<long>(gram[i * points.size() + j]);
  }

  struct AffineMin {
    std::vector<Rational> coeffs; // barycentric, sums to 1
    Rational scaled_norm;
  };

  // Point of minimal norm on the affine hull of the subset; nullopt when the
  // subset is affinely dependent.
  std::optional<AffineMin> affine_min(const std::vector<std::size_t> &s) const {
    const std::size_t n = s.size() - 1;
    const std::size_t b0 = s[0];
    RationalMatrix m(n, n);
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = k(s[i + 1], s[j + 1]) - k(s[i + 1], b0) - k(b0, s[j + 1]) +
                  k(b0, b0);
      rhs[i] = -(k(s[i + 1], b0) - k(b0, b0));
    }
    auto sol = solve(std::move(m), rhs);
    if (!sol)
      return std::nullopt;
    AffineMin out;
    out.coeffs.resize(s.size());
    Rational rest = 1;
    out.scaled_norm = k(b0, b0);
    for (std::size_t i = 0; i < n; ++i) {
      out.coeffs[i + 1] = (*sol)[i];
      rest -= (*sol)[i];
      out.scaled_norm -= (*sol)[i] * rhs[i];
    }
    out.coeffs[0] = rest;
    return out;
  }

  MinNormPoint to_point(const std::vector<std::size_t> &s,
                        const std::vector<Rational> &coeffs,
                        const Rational &scaled_norm) const {
    MinNormPoint p;
    p.point.assign(datum.rank(), Rational(0));
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t i = 0; i < datum.rank(); ++i)
        p.point[i] += coeffs[a] * static_cast<long>(points[s[a]][i]);
    p.norm_squared = scaled_norm / Rational(datum.gram_scale());
    return p;
  }
};

class FaceSearch {
public:
  FaceSearch(const PointSet &ps, std::uint64_t cap, bool stop_at_zero)
      : ps_(ps), cap_(cap), stop_at_zero_(stop_at_zero) {}

  MinNormPoint run() {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < ps_.points.size() && !done_; ++i) {
      chosen.assign(1, i);
      visit(chosen);
    }
    return ps_.to_point(best_set_, best_coeffs_, best_norm_);
  }

private:
  void visit(std::vector<std::size_t> &chosen) {
    if (++visited_ > cap_)
      throw GuardExceeded("faces", cap_);
    auto am = ps_.affine_min(chosen);
    if (!am)
      return; // every superset is affinely dependent too
    const bool inside = std::all_of(am->coeffs.begin(), am->coeffs.end(),
                                    [](const Rational &t) { return sgn(t) >= 0; });
    if (inside && (best_set_.empty() || am->scaled_norm < best_norm_)) {
      best_set_ = chosen;
      best_coeffs_ = am->coeffs;
      best_norm_ = am->scaled_norm;
      if (stop_at_zero_ && sgn(best_norm_) == 0) {
        done_ = true;
        return;
      }
    }
    if (chosen.size() > ps_.datum.rank())
      return;
    for (std::size_t next = chosen.back() + 1;
         next < ps_.points.size() && !done_; ++next) {
      chosen.push_back(next);
      visit(chosen);
      chosen.pop_back();
    }
  }

  const PointSet &ps_;
  std::uint64_t cap_;
  bool stop_at_zero_;
  bool done_ = false;
  std::uint64_t visited_ = 0;
  std::vector<std::size_t> best_set_;
  std::vector<Rational> best_coeffs_;
  Rational best_norm_;
};

MinNormPoint wolfe(const PointSet &ps, std::uint64_t cap) {
  const std::size_t n = ps.points.size();
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (ps.k(i, i) < ps.k(start, start))
      start = i;
  std::vector<std::size_t> set{start};
  std::vector<Rational> lambda{Rational(1)};

  auto dot_x = [&](std::size_t j) {
    Rational s;
    for (std::size_t a = 0; a < set.size(); ++a)
      s += lambda[a] * ps.k(set[a], j);
    return s;
  };

  std::uint64_t steps = 0;
  for (;;) {
    Rational xx;
    for (std::size_t a = 0; a < set.size(); ++a)
      xx += lambda[a] * dot_x(set[a]);
    std::size_t best = n;
    Rational best_val;
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = dot_x(j);
      if (best == n || v < best_val) {
        best = j;
        best_val = v;
      }
    }
    if (best_val >= xx)
      return ps.to_point(set, lambda, xx);
    set.push_back(best);
    lambda.push_back(Rational(0));

    for (;;) {
      if (++steps > cap)
        throw GuardExceeded("faces", cap);
      auto am = ps.affine_min(set);
      if (!am)
        throw std::logic_error("wolfe: corral became affinely dependent");
      const auto &alpha = am->coeffs;
      if (std::all_of(alpha.begin(), alpha.end(),
                      [](const Rational &t) { return sgn(t) > 0; })) {
        lambda = alpha;
        break;
      }
      Rational theta = 1;
      for (std::size_t a = 0; a < set.size(); ++a)
        if (sgn(alpha[a]) <= 0) {
          Rational t = lambda[a] / (lambda[a] - alpha[a]);
          theta = std::min(theta, t);
        }
      std::vector<std::size_t> kept;
      std::vector<Rational> kept_lambda;
      for (std::size_t a = 0; a < set.size(); ++a) {
        Rational l = (1 - theta) * lambda[a] + theta * alpha[a];
        if (sgn(l) > 0) {
          kept.push_back(set[a]);
          kept_lambda.push_back(l);
        }
      }
      set = std::move(kept);
      lambda = std::move(kept_lambda);
    }
  }
}

MinNormPoint min_norm(const SupportVector &sv, MinNormMethod method,
                      std::uint64_t cap, bool stop_at_zero) {
  const PointSet ps(sv.datum(), sv.characters());
  if (method == MinNormMethod::wolfe)
    return wolfe(ps, cap);
  return FaceSearch(ps, cap, stop_at_zero).run();
}

IntMatrix point_matrix(const RootDatum &d, const std::vector<Weight> &pts) {
  IntMatrix m(d.rank(), pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t i = 0; i < d.rank(); ++i)
      m(i, j) = static_cast<long>(pts[j][i]);
  return m;
}

// Marks every chi with -chi in cone(S), enumerating bases of span(S).
class ConeCover {
public:
  ConeCover(const RootDatum &d, const std::vector<Weight> &pts,
            std::uint64_t cap)
      : d_(d), pts_(pts), cap_(cap), covered_(pts.size(), false) {}

  bool all_covered() {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < pts_.size() && remaining_ > 0; ++i) {
      chosen.assign(1, i);
      visit(chosen);
    }
    return remaining_ == 0;
  }

private:
  void visit(std::vector<std::size_t> &chosen) {
    if (++visited_ > cap_)
      throw GuardExceeded("faces", cap_);
    std::vector<Weight> sub;
    for (auto i : chosen)
      sub.push_back(pts_[i]);
    if (rational_rank(point_matrix(d_, sub)) < chosen.size())
      return;
    if (chosen.size() == d_.rank()) {
      const RationalMatrix inv =
          invert_rational(point_matrix(d_, sub));
      for (std::size_t c = 0; c < pts_.size(); ++c) {
        if (covered_[c])
          continue;
        bool nonneg = true;
        for (std::size_t i = 0; i < inv.rows() && nonneg; ++i) {
          Rational coef;
          for (std::size_t j = 0; j < inv.cols(); ++j)
            coef -= inv(i, j) * static_cast<long>(pts_[c][j]);
          nonneg = sgn(coef) >= 0;
        }
        if (nonneg) {
          covered_[c] = true;
          --remaining_;
        }
      }
      return;
    }
    for (std::size_t next = chosen.back() + 1;
         next < pts_.size() && remaining_ > 0; ++next) {
      chosen.push_back(next);
      visit(chosen);
      chosen.pop_back();
    }
  }

  const RootDatum &d_;
  const std::vector<Weight> &pts_;
  std::uint64_t cap_;
  std::vector<bool> covered_;
  std::size_t remaining_ = pts_.size();
  std::uint64_t visited_ = 0;
};

} // namespace

MinNormPoint minimal_norm_point(const SupportVector &sv, MinNormMethod method,
                                std::uint64_t max_faces) {
  return min_norm(sv, method, max_faces, false);
}

bool is_torus_separable(const SupportVector &sv, std::uint64_t p) {
  if (!is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  return !mpz_divisible_ui_p(subset_g(sv.support()).get_mpz_t(),
                             static_cast<unsigned long>(p));
}

bool is_torus_semistable(const SupportVector &sv, MinNormMethod method,
                         std::uint64_t max_faces) {
  return sgn(min_norm(sv, method, max_faces, true).norm_squared) == 0;
}

std::optional<OneParamSubgroup> kempf_one_ps(const SupportVector &sv,
                                             MinNormMethod method,
                                             std::uint64_t max_faces) {
  const MinNormPoint mn = min_norm(sv, method, max_faces, false);
  if (sgn(mn.norm_squared) == 0)
    return std::nullopt;
  const RootDatum &d = sv.datum();
  std::vector<Rational> c(d.rank());
  Integer denom_lcm = 1;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (std::size_t j = 0; j < d.rank(); ++j)
      c[i] += d.gram()(i, j) * mn.point[j];
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
            c[i].get_den_mpz_t());
  }
  std::vector<Integer> ints(d.rank());
  Integer g = 0;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    Rational scaled = c[i] * denom_lcm;
    ints[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  OneParamSubgroup l;
  for (auto &z : ints) {
    z /= g;
    if (!z.fits_slong_p())
      throw std::overflow_error("Kempf coweight exceeds 64 bits");
    l.coords.push_back(z.get_si());
  }
  return l;
}

Stability classify_section_value(const SupportVector &sv,
                                 MinNormMethod method,
                                 std::uint64_t max_faces) {
  if (!is_torus_semistable(sv, method, max_faces))
    return Stability::unstable;
  const RootDatum &d = sv.datum();
  if (rational_rank(point_matrix(d, sv.characters())) < d.rank())
    return Stability::semistable_not_stable;
  ConeCover cover(d, sv.characters(), max_faces);
  return cover.all_covered() ? Stability::stable
                             : Stability::semistable_not_stable;
}

Rational coweight_norm_squared(const RootDatum &d, const OneParamSubgroup &l) {
  if (l.coords.size() != d.rank())
    throw std::invalid_argument("coweight_norm_squared: rank mismatch");
  const RationalMatrix inv = invert_rational(d.gram());
  Rational s;
  for (std::size_t i = 0; i < d.rank(); ++i)
    for (std::size_t j = 0; j < d.rank(); ++j)
      s += inv(i, j) * static_cast<long>(l.coords[i]) *
           static_cast<long>(l.coords[j]);
  return s;
}

std::optional<Rational>
normalized_pairing_squared(const RootDatum &d, const OneParamSubgroup &l,
                           const std::vector<Weight> &support) {
  if (support.empty())
    return std::nullopt;
  std::int64_t lo = l.pairing(support.front());
  for (const auto &w : support)
    lo = std::min(lo, l.pairing(w));
  if (lo <= 0)
    return std::nullopt;
  const Rational m(static_cast<long>(lo));
  return m * m / coweight_norm_squared(d, l);
}

OneParamSubgroup reflect(const RootDatum &d, const OneParamSubgroup &l,
                         std::size_t i) {
  OneParamSubgroup out = l;
  std::int64_t pair = 0;
  for (std::size_t r = 0; r < d.rank(); ++r)
    pair += d.cartan_entry(r, i) * l.coords[r];
  out.coords[i] -= pair;
  return out;
}

} // namespace primebound
