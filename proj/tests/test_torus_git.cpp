#include "git_oracle.hpp"
#include "oracles.hpp"

#include "primebound/torus_git.hpp"

#include <doctest.h>

#include <numeric>

using namespace primebound;

namespace {

SupportVector sv(const DatumPtr &d, std::vector<Weight> ws) {
  return SupportVector(CharacterSupport(d, std::move(ws)));
}

const std::vector<std::pair<char, unsigned>> kSmall = {
    {'A', 1}, {'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}, {'B', 3}, {'C', 3}};

} // namespace

TEST_CASE("support of a vector") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  CHECK(support_of(a1, {{{2}, true}, {{0}, false}, {{-2}, false}})
            .characters() == std::vector<Weight>{{2}});
  CHECK(support_of(a1, {{{0}, true}}).characters() ==
        std::vector<Weight>{{0}});
  CHECK(support_of(a2, {{{1, 0}, true}, {{-1, 1}, true}, {{0, -1}, true}})
            .characters()
            .size() == 3);
  CHECK_THROWS_AS(support_of(a1, {{{2}, false}}), std::invalid_argument);
  CHECK_THROWS_AS(support_of(a1, {}), std::invalid_argument);
}

TEST_CASE("torus separability") {
  const auto a1 = share(make_datum('A', 1));
  CHECK_FALSE(is_torus_separable(sv(a1, {{2}}), 2));
  CHECK(is_torus_separable(sv(a1, {{2}}), 3));
  for (std::uint64_t p : {2, 3, 5, 7})
    CHECK(is_torus_separable(sv(a1, {{0}}), p));

  std::mt19937_64 rng(4);
  const auto primes = oracle::primes_up_to(13);
  for (auto [t, n] : kSmall) {
    const auto d = share(make_datum(t, n));
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = sv(d, oracle::random_support(rng, n, 4, 4));
      const auto m = character_matrix(s.support());
      for (auto p : primes)
        CHECK(is_torus_separable(s, p) ==
              (rank_mod_p(m, p) == rational_rank(m)));
    }
  }
}

TEST_CASE("semistability and Kempf examples") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  CHECK(is_torus_semistable(sv(a1, {{1}, {-1}})));
  CHECK_FALSE(is_torus_semistable(sv(a1, {{2}})));
  CHECK(is_torus_semistable(sv(a2, {{1, 0}, {-1, 1}, {0, -1}})));

  CHECK_FALSE(kempf_one_ps(sv(a1, {{1}, {-1}})).has_value());
  CHECK(kempf_one_ps(sv(a1, {{2}}))->coords == std::vector<std::int64_t>{1});
  CHECK(kempf_one_ps(sv(a2, {{1, 0}}))->coords ==
        std::vector<std::int64_t>{2, 1});
  const auto m = minimal_norm_point(sv(a2, {{1, 0}}));
  CHECK(m.norm_squared == Rational(2, 3));
  CHECK(m.point == std::vector<Rational>{1, 0});

  // Pinned sign: the Kempf subgroup pairs positively with the support.
  const auto k = kempf_one_ps(sv(a2, {{1, 0}, {0, 1}}));
  REQUIRE(k);
  CHECK(k->pairing(Weight{1, 0}) > 0);
  CHECK(k->pairing(Weight{0, 1}) > 0);
  CHECK(k->coords == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("classification") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  CHECK(classify_section_value(sv(a1, {{2}, {0}, {-2}})) == Stability::stable);
  CHECK(classify_section_value(sv(a1, {{0}})) ==
        Stability::semistable_not_stable);
  CHECK(classify_section_value(sv(a2, {{0, 0}})) ==
        Stability::semistable_not_stable);
  CHECK(classify_section_value(sv(a1, {{2}})) == Stability::unstable);
  CHECK(classify_section_value(sv(a2, {{1, 0}, {-1, 1}, {0, -1}})) ==
        Stability::stable);
  // On a segment through 0: semistable but not spanning.
  CHECK(classify_section_value(sv(a2, {{1, 0}, {-1, 0}})) ==
        Stability::semistable_not_stable);
  // 0 on the boundary of a spanning hull.
  CHECK(classify_section_value(sv(a2, {{1, 0}, {-1, 0}, {0, 1}})) ==
        Stability::semistable_not_stable);
  CHECK(to_string(Stability::stable) == "stable");
  CHECK(to_string(Stability::semistable_not_stable) == "semistable_not_stable");
  CHECK(to_string(Stability::unstable) == "unstable");
}

TEST_CASE("Hilbert-Mumford against box search") {
  std::mt19937_64 rng(2024);
  for (auto [t, n] : kSmall) {
    CAPTURE(t);
    CAPTURE(n);
    const auto d = share(make_datum(t, n));
    for (int trial = 0; trial < 25; ++trial) {
      const auto pts = oracle::random_support(rng, n, 4, n + 2);
      const auto s = sv(d, pts);
      const bool semi = is_torus_semistable(s);
      const auto k = kempf_one_ps(s);
      const auto box = oracle::search_box(*d, pts, 8);
      if (semi)
        CHECK_FALSE(box.found_destabilizer);
      else if (!box.found_destabilizer)
        for (const auto &chi : pts)
          CHECK(k->pairing(chi) > 0);
      CHECK(k.has_value() == !semi);
      CHECK((classify_section_value(s) == Stability::unstable) == !semi);
      if (!k)
        continue;
      const auto mn = minimal_norm_point(s);
      const auto v = normalized_pairing_squared(*d, *k, pts);
      REQUIRE(v);
      CHECK(*v == mn.norm_squared);
      CHECK(*v >= *box.best);
      if (std::all_of(k->coords.begin(), k->coords.end(),
                      [](std::int64_t c) { return c >= -8 && c <= 8; }))
        CHECK(*v == *box.best);
      CHECK(std::gcd(std::accumulate(k->coords.begin(), k->coords.end(),
                                     std::int64_t{0},
                                     [](std::int64_t a, std::int64_t b) {
                                       return std::gcd(a, b);
                                     }),
                     std::int64_t{0}) == 1);
    }
  }
}

TEST_CASE("Wolfe iteration agrees with face enumeration") {
  std::mt19937_64 rng(6);
  for (auto [t, n] : kSmall) {
    const auto d = share(make_datum(t, n));
    for (int trial = 0; trial < 30; ++trial) {
      const auto s = sv(d, oracle::random_support(rng, n, 4, 7));
      const auto a = minimal_norm_point(s, MinNormMethod::faces);
      const auto b = minimal_norm_point(s, MinNormMethod::wolfe);
      CHECK(a.point == b.point);
      CHECK(a.norm_squared == b.norm_squared);
      CHECK(classify_section_value(s, MinNormMethod::faces) ==
            classify_section_value(s, MinNormMethod::wolfe));
    }
  }
}

TEST_CASE("Kempf subgroup is Weyl equivariant") {
  std::mt19937_64 rng(12);
  for (auto [t, n] : kSmall) {
    const auto d = share(make_datum(t, n));
    for (int trial = 0; trial < 20; ++trial) {
      const auto pts = oracle::random_support(rng, n, 3, 4);
      const auto k = kempf_one_ps(sv(d, pts));
      for (std::size_t i = 0; i < n; ++i) {
        std::set<Weight> moved;
        for (const auto &p : pts)
          moved.insert(d->reflect(p, i));
        const auto k2 =
            kempf_one_ps(sv(d, std::vector<Weight>(moved.begin(), moved.end())));
        REQUIRE(k.has_value() == k2.has_value());
        if (k) {
          CHECK(*k2 == reflect(*d, *k, i));
          // Pairings are preserved by the simultaneous reflection.
          for (const auto &p : pts)
            CHECK(k->pairing(p) == k2->pairing(d->reflect(p, i)));
        }
      }
    }
  }
}

TEST_CASE("face guard") {
  const auto d = share(make_datum('A', 3));
  std::mt19937_64 rng(1);
  const auto s = sv(d, oracle::random_support(rng, 3, 4, 1));
  CHECK_NOTHROW(minimal_norm_point(s, MinNormMethod::faces, 10));
  std::vector<Weight> many;
  for (std::int64_t a = 1; a <= 3; ++a)
    for (std::int64_t b = 1; b <= 3; ++b)
      for (std::int64_t c = 1; c <= 2; ++c)
        many.push_back(Weight{a, b, c});
  CHECK_THROWS_AS(minimal_norm_point(sv(d, many), MinNormMethod::faces, 10),
                  GuardExceeded);
}
