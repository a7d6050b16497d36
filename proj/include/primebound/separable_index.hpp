#pragma once

// Torsion primes of the character maps nu_S : Z^|S| -> X(T), e_s -> chi_s,
// and the separable index max(height, largest torsion prime).

#include "primebound/errors.hpp"
#include "primebound/lattice.hpp"
#include "primebound/representation.hpp"

#include <cstdint>
#include <vector>

namespace primebound {

/// A set of distinct characters, sorted.
class CharacterSupport {
public:
  CharacterSupport(DatumPtr datum, std::vector<Weight> characters);

  static CharacterSupport of(const WeightMultiset &w);

  const RootDatum &datum() const { return *datum_; }
  const DatumPtr &datum_ptr() const { return datum_; }
  const std::vector<Weight> &characters() const { return characters_; }
  std::size_t size() const { return characters_.size(); }

private:
  DatumPtr datum_;
  std::vector<Weight> characters_;
};

/// rank x |S| matrix whose columns are the characters in lattice_basis
/// coordinates. Throws std::invalid_argument for a character outside X(T).
IntMatrix character_matrix(const RootDatum &d,
                           const std::vector<Weight> &characters);
inline IntMatrix character_matrix(const CharacterSupport &s) {
  return character_matrix(s.datum(), s.characters());
}

/// gcd of the rank-sized minors of nu_S (1 for rank-0 subsets).
Integer subset_g(const RootDatum &d, const std::vector<Weight> &characters);
inline Integer subset_g(const CharacterSupport &s) {
  return subset_g(s.datum(), s.characters());
}

struct TorsionOptions {
  std::uint64_t max_subsets = GuardCaps{}.max_subsets;
  /// Worker threads for the subset enumeration; 0 picks the hardware count.
  unsigned threads = 1;
};

/// Union over all S of the primes dividing g_S.
///
/// Only rationally independent subsets are enumerated. If p divides g_S then
/// rank_p(nu_S) < rank(nu_S) = r; choosing r rationally independent columns
/// S' of S gives rank_p(nu_S') <= rank_p(nu_S) < r = rank(nu_S'), so p also
/// divides g_S'. Independent subsets have at most rank(X(T)) elements.
std::vector<std::uint64_t> torsion_primes(const CharacterSupport &support,
                                          const TorsionOptions &opts = {});

struct IndexReport {
  Rational height;
  std::vector<std::uint64_t> torsion_primes;
  /// Largest torsion prime, 1 if there is none.
  std::uint64_t p_T = 1;
  Rational psi;
  Integer dimension;
  std::size_t distinct_weights = 0;
  std::size_t rank = 0;
  /// rank! * ceil(height)^rank.
  Integer weak_bound;

  friend bool operator==(const IndexReport &, const IndexReport &) = default;
};

IndexReport separable_index(const RepSpec &spec, const GuardCaps &caps = {},
                            unsigned threads = 1);

/// p > psi.
bool is_low_separable_index(const IndexReport &report, std::uint64_t p);

/// p_T <= rank! * ceil(height)^rank. Requires height >= 1.
bool check_weak_bound(const IndexReport &report);

} // namespace primebound
