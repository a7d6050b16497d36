#include "primebound/representation.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <set>

using namespace primebound;

namespace {

WeightMultiset irreducible(const DatumPtr &d, Weight l) {
  return weyl_module_weights(d, l);
}

WeightMultiset of(const RepSpec &s) { return expand(s); }

RepSpec spec(const DatumPtr &d, const std::string &text) {
  return make_rep_spec(d, parse_rep_expr(text));
}

WeightMultiset literal(const DatumPtr &d,
                       std::vector<std::pair<Weight, std::uint64_t>> xs) {
  WeightMultiset m(d);
  for (auto &[w, k] : xs)
    m.add(w, k);
  return m;
}

void for_each_box_weight(std::size_t rank, std::int64_t hi,
                         const std::function<void(const Weight &)> &f) {
  Weight w = Weight::zero(rank);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == rank) {
      f(w);
      return;
    }
    for (std::int64_t k = 0; k <= hi; ++k) {
      w[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
}

// lambda - mu in the positive root cone, straight from C^-1.
bool below(const RootDatum &d, const Weight &mu, const Weight &lambda) {
  const auto &inv = d.inverse_cartan();
  for (std::size_t i = 0; i < d.rank(); ++i) {
    Rational c = 0;
    for (std::size_t j = 0; j < d.rank(); ++j)
      c += inv(i, j) * (lambda[j] - mu[j]);
    if (c.get_den() != 1 || c < 0)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("dominant weights below lambda agree with box enumeration") {
  std::mt19937_64 rng(41);
  for (auto [t, n] : std::vector<std::pair<char, unsigned>>{
           {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'G', 2}, {'D', 4}}) {
    CAPTURE(t);
    const auto d = make_datum(t, n);
    std::uniform_int_distribution<int> e(0, n <= 2 ? 3 : 2);
    for (int trial = 0; trial < 6; ++trial) {
      Weight l = Weight::zero(n);
      for (auto &c : l.coords)
        c = e(rng);
      // A dominant mu <= lambda has (mu, mu) <= (lambda, lambda), which
      // bounds every coordinate by the height-weighted sum below.
      std::int64_t hi = 0;
      for (auto c : l.coords)
        hi += c;
      hi = 2 * hi + 2;
      std::set<Weight> expected;
      for_each_box_weight(n, hi, [&](const Weight &mu) {
        if (below(d, mu, l))
          expected.insert(mu);
      });
      const auto got = dominant_weights_below(d, l);
      CHECK(std::set<Weight>(got.begin(), got.end()) == expected);
      CHECK(got.front() == l);
      for (std::size_t i = 1; i < got.size(); ++i)
        CHECK(weight_height(d, got[i - 1]) >= weight_height(d, got[i]));
    }
  }
}

TEST_CASE("weyl module weights") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  CHECK(irreducible(a1, Weight{2}) ==
        literal(a1, {{{2}, 1}, {{0}, 1}, {{-2}, 1}}));
  const auto adj = irreducible(a2, Weight{1, 1});
  CHECK(adj.dimension() == 8);
  CHECK(adj.distinct() == 7);
  CHECK(adj.multiplicity(Weight{0, 0}) == 2);
  for (const auto &r : a2->positive_roots()) {
    CHECK(adj.multiplicity(r) == 1);
    CHECK(adj.multiplicity(-r) == 1);
  }
  CHECK(irreducible(a2, Weight{0, 0}) == literal(a2, {{{0, 0}, 1}}));
  CHECK(irreducible(a2, Weight{2, 2}).multiplicity(Weight{0, 0}) == 3);
  CHECK_THROWS_AS(irreducible(a2, Weight{-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(weyl_module_weights(a2, Weight{6, 6}, GuardCaps::uniform(100)),
                  GuardExceeded);
}

TEST_CASE("zero weight multiplicities of small modules") {
  struct Case {
    char t;
    unsigned n;
    const char *rep;
    std::uint64_t dim, zero;
  };
  for (const auto &c : std::vector<Case>{{'B', 2, "adjoint", 10, 2},
                                         {'G', 2, "standard", 7, 1},
                                         {'G', 2, "adjoint", 14, 2},
                                         {'F', 4, "standard", 26, 2},
                                         {'E', 6, "standard", 27, 0},
                                         {'E', 7, "standard", 56, 0},
                                         {'D', 4, "adjoint", 28, 4},
                                         {'C', 3, "V(0,1,0)", 14, 2}}) {
    CAPTURE(c.t);
    CAPTURE(c.rep);
    const auto d = share(make_datum(c.t, c.n));
    const auto m = of(spec(d, c.rep));
    CHECK(m.dimension() == c.dim);
    CHECK(m.multiplicity(Weight::zero(c.n)) == c.zero);
  }
}

TEST_CASE("weyl dimension") {
  const auto a1 = make_datum('A', 1);
  const auto a2 = make_datum('A', 2);
  CHECK(weyl_dimension(a2, Weight{0, 0}) == 1);
  for (std::int64_t k = 0; k < 12; ++k)
    CHECK(weyl_dimension(a1, Weight{k}) == k + 1);
  CHECK(weyl_dimension(a2, Weight{1, 1}) == 8);
  CHECK(weyl_dimension(make_datum('E', 8), highest_root(make_datum('E', 8))) ==
        248);
  CHECK(weyl_dimension(make_datum('E', 7), Weight{1, 0, 0, 0, 0, 0, 0}) == 133);

  // Freudenthal totals against the product formula.
  for (auto [t, n] : std::vector<std::pair<char, unsigned>>{
           {'A', 3}, {'B', 3}, {'C', 3}, {'G', 2}, {'D', 4}}) {
    const auto d = share(make_datum(t, n));
    for_each_box_weight(n, n <= 2 ? 3 : 1, [&](const Weight &l) {
      CHECK(irreducible(d, l).dimension() == weyl_dimension(*d, l));
    });
  }
}

TEST_CASE("constructors") {
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  const auto std2 = of(spec(a2, "standard"));
  CHECK(of(spec(a2, "standard * trivial")) == std2);
  CHECK(of(spec(a1, "standard * standard")) ==
        literal(a1, {{{2}, 1}, {{0}, 2}, {{-2}, 1}}));
  CHECK(of(spec(a2, "dual(standard)")) ==
        literal(a2, {{{0, 1}, 1}, {{1, -1}, 1}, {{-1, 0}, 1}}));
  CHECK(of(spec(a2, "standard + standard")).dimension() == 6);
  CHECK(of(spec(a2, "standard + standard")).multiplicity(Weight{1, 0}) == 2);

  // Generic sym / wedge against the irreducibles they decompose into.
  for (unsigned n = 1; n <= 5; ++n) {
    const auto d = share(make_datum('A', n));
    const auto v = of(spec(d, "standard"));
    Weight two = Weight::zero(n);
    two[0] = 2;
    CHECK(symmetric_power(v, 2) == irreducible(d, two));
    for (unsigned k = 1; k <= n; ++k) {
      Weight w = Weight::zero(n);
      w[k - 1] = 1;
      CHECK(exterior_power(v, k) == irreducible(d, w));
    }
    CHECK(exterior_power(v, n + 1) == literal(d, {{Weight::zero(n), 1}}));
    CHECK(exterior_power(v, n + 2).empty());
    CHECK(symmetric_power(v, 0) == literal(d, {{Weight::zero(n), 1}}));
    CHECK(of(spec(d, "standard * dual(standard)")) ==
          of(spec(d, "adjoint + trivial")));
  }
  // sym^3 of the standard A1 module is V(3); wedge^2 of the adjoint is adjoint.
  CHECK(of(spec(a1, "sym(3,standard)")) == irreducible(a1, Weight{3}));
  CHECK(of(spec(a1, "wedge(2,adjoint)")) == irreducible(a1, Weight{2}));
  CHECK(of(spec(a2, "sym(2,adjoint)")).dimension() == 36);
  CHECK(of(spec(a2, "wedge(3,adjoint)")).dimension() == 56);
}

TEST_CASE("expanded multisets are weyl symmetric with zero weighted sum") {
  for (auto [t, n, text] : std::vector<std::tuple<char, unsigned, std::string>>{
           {'A', 2, "standard * adjoint"},
           {'A', 3, "sym(2,standard) + wedge(2,standard)"},
           {'B', 2, "dual(standard) * standard"},
           {'G', 2, "standard * standard"},
           {'C', 3, "wedge(2,standard)"},
           {'D', 4, "V(0,0,1,0) * V(0,0,0,1)"},
           {'A', 1, "sym(4,adjoint)"}}) {
    CAPTURE(text);
    const auto m = of(spec(share(make_datum(t, n)), text));
    CHECK(m.is_weyl_symmetric());
    CHECK(m.has_zero_weighted_sum());
  }
  const auto a1 = share(make_datum('A', 1));
  CHECK_FALSE(literal(a1, {{{1}, 1}}).is_weyl_symmetric());
  CHECK_FALSE(literal(a1, {{{2}, 1}, {{-2}, 2}}).is_weyl_symmetric());
}

TEST_CASE("representation height") {
  for (unsigned n = 2; n <= 9; ++n) {
    const auto d = share(make_datum('A', n - 1));
    CHECK(rep_height(of(spec(d, "standard"))) == n - 1);
  }
  const auto a1 = share(make_datum('A', 1));
  const auto a2 = share(make_datum('A', 2));
  CHECK(rep_height(of(spec(a1, "trivial"))) == 0);
  CHECK(rep_height(of(spec(a1, "adjoint"))) == 2);
  CHECK_THROWS_AS(rep_height(WeightMultiset(a1)), std::invalid_argument);

  CHECK(is_low_height(of(spec(a2, "standard")), 3));
  CHECK_FALSE(is_low_height(of(spec(a1, "adjoint")), 2));
  CHECK(is_low_height(of(spec(a1, "trivial")), 2));
  CHECK(is_low_height(Rational(5, 2), 3));
  CHECK_FALSE(is_low_height(Rational(3), 3));

  CHECK(dominant_weights_occurring(of(spec(a1, "adjoint"))) ==
        std::vector<Weight>{{0}, {2}});
  CHECK(dominant_weights_occurring(of(spec(a1, "trivial"))) ==
        std::vector<Weight>{{0}});
  CHECK(dominant_weights_occurring(of(spec(a2, "standard"))) ==
        std::vector<Weight>{{1, 0}});
}

TEST_CASE("height of a spec matches the expanded multiset") {
  std::mt19937_64 rng(8);
  for (auto [t, n] : std::vector<std::pair<char, unsigned>>{
           {'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'G', 2}, {'C', 3}}) {
    const auto d = share(make_datum(t, n));
    std::uniform_int_distribution<int> e(0, n >= 3 ? 1 : 2);
    auto rand_irr = [&] {
      std::string s = "V(";
      for (unsigned i = 0; i < n; ++i)
        s += (i ? "," : "") + std::to_string(e(rng));
      return s + ")";
    };
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = rand_irr(), b = rand_irr();
      for (const auto &text :
           {a, "dual(" + a + ")", a + " + " + b, a + " * " + b,
            "dual(" + a + " * " + b + ")", "sym(2," + a + ")",
            "wedge(2," + b + " + trivial)"}) {
        CAPTURE(text);
        const auto s = spec(d, text);
        const auto m = of(s);
        CHECK(rep_height(s) == rep_height(m));
      }
      // Dual modules have the same height.
      CHECK(rep_height(of(spec(d, "dual(" + a + ")"))) ==
            rep_height(of(spec(d, a))));
      // Heights add on tensor products of irreducibles.
      CHECK(rep_height(of(spec(d, a + " * " + b))) ==
            rep_height(of(spec(d, a))) + rep_height(of(spec(d, b))));
    }
  }
}

TEST_CASE("height is monotone for dominance") {
  for (auto [t, n, l] : std::vector<std::tuple<char, unsigned, Weight>>{
           {'A', 3, Weight{2, 1, 1}}, {'B', 3, Weight{1, 1, 1}},
           {'G', 2, Weight{2, 2}}}) {
    const auto d = make_datum(t, n);
    const auto ws = dominant_weights_below(d, l);
    for (const auto &a : ws)
      for (const auto &b : ws)
        if (dominance_leq(d, a, b))
          CHECK(weight_height(d, a) <= weight_height(d, b));
  }
}

TEST_CASE("levi restriction") {
  const auto a2 = share(make_datum('A', 2));
  const auto r = restrict_to_levi(of(spec(a2, "standard")), {0});
  CHECK(r.datum().name() == "A1");
  CHECK(r.entries() == literal(share(make_datum('A', 1)),
                               {{{1}, 1}, {{-1}, 1}, {{0}, 1}})
                           .entries());
  CHECK(rep_height(r) == 1);
  CHECK(rep_height(r) < rep_height(of(spec(a2, "standard"))));

  const auto triv = restrict_to_levi(of(spec(a2, "trivial")), {1});
  CHECK(triv.entries().size() == 1);
  CHECK(triv.multiplicity(Weight{0}) == 1);

  const auto a3 = share(make_datum('A', 3));
  const auto l = restrict_to_levi(of(spec(a3, "standard")), {0, 1});
  const auto sub = share(make_datum('A', 2));
  const auto expected = of(spec(sub, "standard + trivial"));
  CHECK(l.entries() == expected.entries());

  // Restriction preserves dimension and SL(n) restrictions drop the height.
  for (unsigned n = 3; n <= 6; ++n) {
    const auto d = share(make_datum('A', n - 1));
    const auto v = of(spec(d, "standard"));
    for (std::size_t drop = 0; drop < n - 1; ++drop) {
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < n - 1; ++i)
        if (i != drop)
          keep.push_back(i);
      const auto res = restrict_to_levi(v, keep);
      CHECK(res.dimension() == v.dimension());
      CHECK(rep_height(res) < n - 1);
    }
  }
}

TEST_CASE("parsing representation expressions") {
  const auto e = parse_rep_expr("sym(2, standard) + V(1,0) * dual(adjoint)");
  CHECK(e.kind() == RepExpr::Kind::direct_sum);
  CHECK(e.to_string() == "sym(2,standard) + V(1,0) * dual(adjoint)");
  CHECK(parse_rep_expr(e.to_string()) == e);
  CHECK(parse_rep_expr("(standard + trivial) * adjoint").to_string() ==
        "(standard + trivial) * adjoint");
  CHECK(parse_rep_expr("wedge(2,(standard))").to_string() ==
        "wedge(2,standard)");

  auto position_of = [](const std::string &text) -> std::size_t {
    try {
      parse_rep_expr(text);
    } catch (const RepParseError &err) {
      return err.position();
    }
    return std::string::npos;
  };
  CHECK(position_of("") == 0);
  CHECK(position_of("standard +") == 10);
  CHECK(position_of("V(1,x)") == 4);
  CHECK(position_of("sym(,standard)") == 4);
  CHECK(position_of("standard)") == 8);
  CHECK(position_of("bogus") == 0);

  const auto a2 = share(make_datum('A', 2));
  CHECK_THROWS_AS(spec(a2, "V(1)"), std::invalid_argument);
  CHECK_THROWS_AS(spec(a2, "V(-1,0)"), std::invalid_argument);
  CHECK_THROWS_AS(make_rep_spec(a2, RepExpr::direct_sum({})),
                  std::invalid_argument);
}

TEST_CASE("catalog highest weights") {
  CHECK(catalog_highest_weight(make_datum('A', 3), "standard") ==
        Weight{1, 0, 0});
  CHECK(catalog_highest_weight(make_datum('A', 3), "adjoint") ==
        Weight{1, 0, 1});
  CHECK(catalog_highest_weight(make_datum('C', 3), "standard") ==
        Weight{1, 0, 0});
  CHECK(catalog_highest_weight(make_datum('G', 2), "trivial") == Weight{0, 0});
  CHECK(catalog_highest_weight(make_datum('G', 2), "standard") == Weight{0, 1});
  CHECK_THROWS_AS(catalog_highest_weight(make_datum('G', 2), "spin"),
                  std::invalid_argument);
}
