#pragma once

// Characteristic-zero weight characters of representations built from
// irreducibles, plus the height of a representation.

#include "primebound/errors.hpp"
#include "primebound/root_system.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace primebound {

using DatumPtr = std::shared_ptr<const RootDatum>;

inline DatumPtr share(RootDatum d) {
  return std::make_shared<const RootDatum>(std::move(d));
}

/// Weight -> positive multiplicity, keyed in lexicographic order.
class WeightMultiset {
public:
  using Map = std::map<Weight, std::uint64_t>;

  explicit WeightMultiset(DatumPtr datum);

  void add(const Weight &w, std::uint64_t multiplicity);

  const RootDatum &datum() const { return *datum_; }
  const DatumPtr &datum_ptr() const { return datum_; }
  const Map &entries() const { return entries_; }
  std::uint64_t multiplicity(const Weight &w) const;
  std::size_t distinct() const { return entries_.size(); }
  std::uint64_t dimension() const;
  bool empty() const { return entries_.empty(); }

  /// Multiplicity constant on Weyl orbits and zero weighted sum.
  bool is_weyl_symmetric() const;
  bool has_zero_weighted_sum() const;

  friend bool operator==(const WeightMultiset &a, const WeightMultiset &b) {
    return *a.datum_ == *b.datum_ && a.entries_ == b.entries_;
  }

private:
  DatumPtr datum_;
  Map entries_;
};

/// Expression tree describing a representation. Independent of the datum
/// so it can be parsed before the group is known.
class RepExpr {
public:
  enum class Kind { irreducible, catalog, direct_sum, tensor, dual, sym, wedge };

  static RepExpr irreducible(Weight highest_weight);
  /// "trivial", "standard" or "adjoint".
  static RepExpr catalog(std::string name);
  static RepExpr direct_sum(std::vector<RepExpr> parts);
  static RepExpr tensor(std::vector<RepExpr> parts);
  static RepExpr dual(RepExpr inner);
  static RepExpr sym(unsigned k, RepExpr inner);
  static RepExpr wedge(unsigned k, RepExpr inner);

  Kind kind() const { return kind_; }
  const Weight &highest_weight() const { return weight_; }
  const std::string &catalog_name() const { return name_; }
  const std::vector<RepExpr> &children() const { return children_; }
  unsigned power() const { return power_; }

  /// Canonical text form; parse_rep_expr(to_string()) reproduces the tree.
  std::string to_string() const;

  friend bool operator==(const RepExpr &, const RepExpr &) = default;

private:
  Kind kind_ = Kind::catalog;
  Weight weight_;
  std::string name_;
  std::vector<RepExpr> children_;
  unsigned power_ = 0;
};

class RepParseError : public std::invalid_argument {
public:
  RepParseError(const std::string &msg, std::size_t position)
      : std::invalid_argument(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Grammar:
///   sum     := product ('+' product)*
///   product := unary ('*' unary)*
///   unary   := name | 'V(' ints ')' | 'dual(' sum ')'
///            | 'sym(' k ',' sum ')' | 'wedge(' k ',' sum ')' | '(' sum ')'
RepExpr parse_rep_expr(const std::string &text);

/// A representation of a fixed group.
struct RepSpec {
  DatumPtr datum;
  RepExpr expr;
};

/// Validates dimensions and dominance of every irreducible in the tree and
/// resolves catalog names. Throws std::invalid_argument.
RepSpec make_rep_spec(DatumPtr datum, RepExpr expr);

/// Highest weight behind a catalog name for this datum.
Weight catalog_highest_weight(const RootDatum &d, const std::string &name);

/// Dominant weights mu <= lambda with lambda - mu in the root lattice,
/// ordered by decreasing height (lambda first).
std::vector<Weight> dominant_weights_below(const RootDatum &d,
                                           const Weight &lambda,
                                           std::uint64_t cap = GuardCaps{}.max_orbit);

/// Freudenthal multiplicities of the dominant weights of V(lambda), in the
/// order of dominant_weights_below.
std::vector<std::pair<Weight, Integer>>
dominant_character(const RootDatum &d, const Weight &lambda,
                   std::uint64_t cap = GuardCaps{}.max_orbit);

Integer weyl_dimension(const RootDatum &d, const Weight &lambda);

WeightMultiset weyl_module_weights(const DatumPtr &d, const Weight &lambda,
                                   const GuardCaps &caps = {});

WeightMultiset expand(const RepSpec &spec, const GuardCaps &caps = {});

/// Max of 2*ht over the dominant weights present. Throws on empty input.
Rational rep_height(const WeightMultiset &w);

/// Same value as rep_height(expand(spec)), without expanding irreducible
/// summands into full weight sets.
Rational rep_height(const RepSpec &spec, const GuardCaps &caps = {});

bool is_low_height(const Rational &height, std::uint64_t p);
bool is_low_height(const WeightMultiset &w, std::uint64_t p);

std::vector<Weight> dominant_weights_occurring(const WeightMultiset &w);

/// Restriction to the semisimple part of the standard Levi subgroup given by
/// `simple_subset` (0-based indices).
WeightMultiset restrict_to_levi(const WeightMultiset &w,
                                const std::vector<std::size_t> &simple_subset);

WeightMultiset tensor_product(const WeightMultiset &a, const WeightMultiset &b,
                              std::uint64_t cap = GuardCaps{}.max_dimension);
WeightMultiset dual(const WeightMultiset &w);
WeightMultiset symmetric_power(const WeightMultiset &w, unsigned k,
                               std::uint64_t cap = GuardCaps{}.max_dimension);
WeightMultiset exterior_power(const WeightMultiset &w, unsigned k,
                              std::uint64_t cap = GuardCaps{}.max_dimension);

} // namespace primebound
