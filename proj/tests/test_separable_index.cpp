#include "torsion_oracle.hpp"

#include "primebound/separable_index.hpp"

#include <doctest.h>


using namespace primebound;

namespace {

RepSpec spec(const DatumPtr &d, const std::string &text) {
  return make_rep_spec(d, parse_rep_expr(text));
}

CharacterSupport support(const DatumPtr &d, const std::string &text) {
  return CharacterSupport::of(expand(spec(d, text)));
}

} // namespace

TEST_CASE("character matrices") {
  const auto a2 = share(make_datum('A', 2));
  CHECK(character_matrix(*a2, {{1, 0}, {-1, 1}, {0, -1}}) ==
        make_int_matrix(2, 3, {1, -1, 0, 0, 1, -1}));
  CHECK(character_matrix(*a2, {{0, 0}}) == IntMatrix(2, 1));
  const auto a1 = share(make_datum('A', 1));
  CHECK(character_matrix(support(a1, "adjoint")) ==
        make_int_matrix(1, 3, {-2, 0, 2}));
  const auto a1_root = share(make_datum('A', 1, make_int_matrix(1, 1, {2})));
  CHECK(character_matrix(support(a1_root, "adjoint")) ==
        make_int_matrix(1, 3, {-1, 0, 1}));
  CHECK_THROWS_AS(character_matrix(*a1_root, {{1}}), std::invalid_argument);
  CHECK_THROWS_AS(CharacterSupport(a1, {{1}, {1}}), std::invalid_argument);
}

TEST_CASE("subset gcds") {
  const auto a1 = share(make_datum('A', 1));
  CHECK(subset_g(*a1, {{2}}) == 2);
  CHECK(subset_g(*a1, {{1}, {-1}}) == 1);
  CHECK(subset_g(*a1, {{0}}) == 1);
  CHECK(subset_g(*share(make_datum('A', 2)), {{0, 0}}) == 1);
}

TEST_CASE("torsion primes") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  using P = std::vector<std::uint64_t>;
  CHECK(torsion_primes(support(a1, "standard")) == P{});
  CHECK(torsion_primes(support(a1, "adjoint")) == P{2});
  CHECK(torsion_primes(support(a2, "standard")) == P{});
  CHECK(torsion_primes(support(a2, "adjoint")) == P{3});

  // The isogeny form matters.
  const auto a1_root = share(make_datum('A', 1, make_int_matrix(1, 1, {2})));
  CHECK(torsion_primes(support(a1_root, "adjoint")) == P{});
  const auto a2_root =
      share(make_datum('A', 2, cartan_matrix('A', 2)));
  CHECK(torsion_primes(support(a2_root, "adjoint")) == P{});

  CHECK_THROWS_AS(torsion_primes(support(a2, "adjoint"), {.max_subsets = 3}),
                  GuardExceeded);
}

TEST_CASE("pruned enumeration agrees with the full powerset") {
  struct Case {
    char t;
    unsigned n;
    const char *rep;
  };
  for (const auto &c : std::vector<Case>{{'A', 1, "standard"},
                                         {'A', 1, "adjoint"},
                                         {'A', 1, "V(3)"},
                                         {'A', 2, "standard"},
                                         {'A', 2, "V(2,0)"},
                                         {'A', 3, "standard"},
                                         {'A', 3, "wedge(2,standard)"},
                                         {'B', 2, "standard"},
                                         {'B', 2, "V(0,1)"},
                                         {'B', 3, "V(0,0,1)"},
                                         {'C', 3, "standard"},
                                         {'G', 2, "standard"}}) {
    CAPTURE(c.t);
    CAPTURE(c.rep);
    const auto s = support(share(make_datum(c.t, c.n)), c.rep);
    REQUIRE(s.size() <= 12);
    CHECK(torsion_primes(s) == oracle::powerset_torsion(s));
  }
}

TEST_CASE("threaded enumeration matches sequential") {
  for (auto [t, n, rep] : std::vector<std::tuple<char, unsigned, const char *>>{
           {'A', 3, "adjoint"}, {'B', 3, "adjoint"}, {'G', 2, "adjoint"}}) {
    const auto s = support(share(make_datum(t, n)), rep);
    const auto seq = torsion_primes(s);
    for (unsigned th : {2u, 3u, 4u})
      CHECK(torsion_primes(s, {.threads = th}) == seq);
  }
}

TEST_CASE("gcd divisibility matches rank drop on random subsets") {
  std::mt19937_64 rng(77);
  const auto primes = oracle::primes_up_to(31);
  for (auto [t, n, rep] : std::vector<std::tuple<char, unsigned, const char *>>{
           {'A', 2, "adjoint"}, {'B', 2, "adjoint"}, {'G', 2, "adjoint"},
           {'A', 3, "adjoint"}, {'C', 3, "V(0,1,0)"}}) {
    const auto d = share(make_datum(t, n));
    const auto s = support(d, rep);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    std::uniform_int_distribution<std::size_t> size(1, n + 1);
    for (int trial = 0; trial < 40; ++trial) {
      std::set<Weight> chosen;
      const auto k = size(rng);
      while (chosen.size() < k)
        chosen.insert(s.characters()[pick(rng)]);
      const std::vector<Weight> sub(chosen.begin(), chosen.end());
      const auto g = subset_g(*d, sub);
      const auto m = character_matrix(*d, sub);
      for (auto p : primes)
        CHECK((g % p == 0) == (rank_mod_p(m, p) < rational_rank(m)));
    }
  }
}

TEST_CASE("separable index reports") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));

  const auto adj = separable_index(spec(a1, "adjoint"));
  CHECK(adj.height == 2);
  CHECK(adj.p_T == 2);
  CHECK(adj.psi == 2);
  CHECK(adj.torsion_primes == std::vector<std::uint64_t>{2});
  CHECK(adj.weak_bound == 2);
  CHECK(is_low_separable_index(adj, 3));
  CHECK_FALSE(is_low_separable_index(adj, 2));
  CHECK(check_weak_bound(adj));

  const auto std2 = separable_index(spec(a2, "standard"));
  CHECK(std2.height == 2);
  CHECK(std2.p_T == 1);
  CHECK(std2.psi == 2);
  CHECK(std2.weak_bound == 8);
  CHECK(check_weak_bound(std2));

  const auto triv = separable_index(spec(a1, "trivial"));
  CHECK(triv.height == 0);
  CHECK(triv.p_T == 1);
  CHECK(triv.psi == 1);
  CHECK(is_low_separable_index(triv, 2));
  CHECK_THROWS_AS(check_weak_bound(triv), std::invalid_argument);

  const auto std1 = separable_index(spec(a1, "standard"));
  CHECK(std1.weak_bound == 1);
  CHECK(check_weak_bound(std1));

  CHECK(separable_index(spec(a1, "sym(2,standard)")) == adj);
}

TEST_CASE("psi dominates height and torsion primes") {
  for (auto [t, n, rep] : std::vector<std::tuple<char, unsigned, const char *>>{
           {'A', 1, "V(5)"}, {'A', 2, "V(2,1)"}, {'A', 3, "adjoint"},
           {'A', 4, "wedge(2,standard)"}, {'B', 2, "adjoint"},
           {'B', 3, "standard"}, {'C', 3, "adjoint"}, {'G', 2, "adjoint"},
           {'D', 4, "standard"}}) {
    CAPTURE(rep);
    const auto r = separable_index(spec(share(make_datum(t, n)), rep));
    CHECK(r.psi >= r.height);
    for (auto p : r.torsion_primes)
      CHECK(r.psi >= p);
    CHECK(r.psi == std::max(r.height, Rational(r.p_T)));
    CHECK(r.rank == n);
    if (r.height >= 1)
      CHECK(check_weak_bound(r));
  }
}
