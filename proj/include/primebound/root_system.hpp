#pragma once

// Root data of simple types A-G, in fundamental-weight coordinates.
//
// Conventions:
//  * cartan(i, j) = <alpha_j, alpha_i^vee>, so the fundamental-weight
//    coordinates of the simple root alpha_j are the j-th column.
//  * Weights are stored in fundamental-weight coordinates of the
//    simply-connected form; the character lattice X(T) of the actual form is
//    the integer column span of lattice_basis().
//  * The W-invariant form gives short roots squared length 2.

#include "primebound/errors.hpp"
#include "primebound/lattice.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace primebound {

struct Weight {
  std::vector<std::int64_t> coords;

  Weight() = default;
  explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  Weight(std::initializer_list<std::int64_t> c) : coords(c) {}
  static Weight zero(std::size_t rank) {
    return Weight(std::vector<std::int64_t>(rank, 0));
  }

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  std::int64_t &operator[](std::size_t i) { return coords[i]; }
  bool is_zero() const;

  auto operator<=>(const Weight &) const = default;
  bool operator==(const Weight &) const = default;

  Weight &operator+=(const Weight &o);
  Weight &operator-=(const Weight &o);
  friend Weight operator+(Weight a, const Weight &b) { return a += b; }
  friend Weight operator-(Weight a, const Weight &b) { return a -= b; }
  friend Weight operator-(Weight a);
  friend Weight operator*(std::int64_t k, Weight a);
};

/// "(a,b,c)"
std::string to_string(const Weight &w);

struct WeightHash {
  std::size_t operator()(const Weight &w) const noexcept;
};

class RootDatum {
public:
  /// Simple type with an optional character-lattice basis (default: the
  /// identity, i.e. the simply-connected form).
  static RootDatum make(char type_letter, unsigned rank,
                        std::optional<IntMatrix> lattice_basis = {});

  /// Datum spanned by a subset of the simple roots of `parent` (the
  /// semisimple part of a standard Levi subgroup, simply connected).
  static RootDatum levi(const RootDatum &parent,
                        const std::vector<std::size_t> &simple_subset);

  /// Type letter for an irreducible datum; empty for Levi data that are
  /// not recognised as a standard simple type.
  std::optional<char> type_letter() const { return type_; }
  std::size_t rank() const { return rank_; }
  /// "A2", "G2", or a Levi description.
  const std::string &name() const { return name_; }

  const IntMatrix &cartan() const { return cartan_; }
  std::int64_t cartan_entry(std::size_t i, std::size_t j) const {
    return cartan_small_[i * rank_ + j];
  }
  const RationalMatrix &inverse_cartan() const { return inverse_cartan_; }
  const IntMatrix &lattice_basis() const { return lattice_basis_; }
  /// "weight", "root" or "matrix:<entries>".
  std::string lattice_description() const;
  /// Squared lengths of the simple roots (short roots have length 2).
  const std::vector<std::int64_t> &root_lengths() const { return lengths_; }
  bool connected() const { return connected_; }

  Weight simple_root(std::size_t i) const;
  Weight fundamental_weight(std::size_t i) const;
  Weight rho() const { return Weight(std::vector<std::int64_t>(rank_, 1)); }

  /// Positive roots ordered by height, then lexicographically by their
  /// simple-root coordinates.
  const std::vector<Weight> &positive_roots() const { return positive_roots_; }
  /// Simple-root coefficients of positive_roots()[k].
  const std::vector<std::vector<std::int64_t>> &positive_root_coords() const {
    return positive_root_coords_;
  }

  /// Coefficients of a weight in the simple-root basis (C^-1 * lambda).
  std::vector<Rational> root_coordinates(const Weight &w) const;

  /// W-invariant form (short roots squared length 2).
  Rational inner_product(const Weight &a, const Weight &b) const;
  /// Gram matrix of the form on fundamental weights.
  const RationalMatrix &gram() const { return gram_; }
  /// gram() * scale is integral; used by hot loops.
  std::int64_t scaled_inner_product(const Weight &a, const Weight &b) const;
  const Integer &gram_scale() const { return gram_scale_; }

  Weight reflect(const Weight &w, std::size_t i) const;

  bool in_character_lattice(const Weight &w) const;
  /// Coordinates of w in lattice_basis(); nullopt when not integral.
  std::optional<std::vector<Integer>>
  lattice_coordinates(const Weight &w) const;

  void check_weight(const Weight &w) const;

  friend bool operator==(const RootDatum &a, const RootDatum &b) {
    return a.cartan_ == b.cartan_ && a.lattice_basis_ == b.lattice_basis_ &&
           a.lengths_ == b.lengths_;
  }

private:
  RootDatum(std::string name, std::optional<char> type, IntMatrix cartan,
            std::vector<std::int64_t> lengths, IntMatrix lattice_basis);

  std::string name_;
  std::optional<char> type_;
  std::size_t rank_ = 0;
  IntMatrix cartan_;
  std::vector<std::int64_t> cartan_small_;
  std::vector<std::int64_t> lengths_;
  IntMatrix lattice_basis_;
  RationalMatrix inverse_cartan_;
  RationalMatrix lattice_inverse_;
  RationalMatrix gram_;
  Integer gram_scale_;
  std::vector<std::int64_t> scaled_gram_;
  bool connected_ = true;
  std::vector<Weight> positive_roots_;
  std::vector<std::vector<std::int64_t>> positive_root_coords_;
};

/// Generated Cartan matrix and squared simple-root lengths for a simple
/// type. Throws std::invalid_argument for inadmissible type/rank.
IntMatrix cartan_matrix(char type_letter, unsigned rank);
std::vector<std::int64_t> simple_root_lengths(char type_letter, unsigned rank);

inline RootDatum make_datum(char type_letter, unsigned rank,
                            std::optional<IntMatrix> lattice_basis = {}) {
  return RootDatum::make(type_letter, rank, std::move(lattice_basis));
}

inline const std::vector<Weight> &positive_roots(const RootDatum &d) {
  return d.positive_roots();
}

/// Unique maximal root; requires an irreducible datum.
Weight highest_root(const RootDatum &d);

/// 1 + height of the highest root.
std::int64_t coxeter_number(const RootDatum &d);

/// Sum of the simple-root coefficients; exact, possibly non-integral.
Rational weight_height(const RootDatum &d, const Weight &w);

bool is_dominant(const Weight &w);

Weight dominant_representative(const RootDatum &d, Weight w);

/// Full Weyl orbit, sorted. Throws GuardExceeded past `cap` elements.
std::vector<Weight> weyl_orbit(const RootDatum &d, const Weight &w,
                               std::uint64_t cap = GuardCaps{}.max_orbit);

/// mu <= lambda in the dominance order.
bool dominance_leq(const RootDatum &d, const Weight &mu, const Weight &lambda);

} // namespace primebound
