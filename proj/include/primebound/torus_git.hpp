#pragma once

// GIT for a maximal torus acting on a vector, seen through the vector's
// weight support S_w: separability of the orbit, the Hilbert-Mumford
// classification, and the Kempf destabilizing one-parameter subgroup.
//
// Sign convention: lambda destabilizes w when <lambda, chi> > 0 for every
// chi in S_w, i.e. lambda(t) w -> 0 as t -> 0.

#include "primebound/errors.hpp"
#include "primebound/separable_index.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace primebound {

/// Weight support of a nonzero vector.
class SupportVector {
public:
  explicit SupportVector(CharacterSupport support);

  const RootDatum &datum() const { return support_.datum(); }
  const CharacterSupport &support() const { return support_; }
  const std::vector<Weight> &characters() const {
    return support_.characters();
  }

private:
  CharacterSupport support_;
};

/// Weights whose coefficient flag is set. Throws on the zero vector.
SupportVector support_of(DatumPtr datum,
                         const std::map<Weight, bool> &coefficients);

/// Cocharacter in coroot coordinates; pairs with a weight (fundamental-weight
/// coordinates) by the dot product. Primitive.
struct OneParamSubgroup {
  std::vector<std::int64_t> coords;

  std::int64_t pairing(const Weight &w) const;
  friend bool operator==(const OneParamSubgroup &,
                         const OneParamSubgroup &) = default;
};

enum class Stability { stable, semistable_not_stable, unstable };
std::string to_string(Stability s);

enum class MinNormMethod {
  /// Every affinely independent subset of size <= rank + 1.
  faces,
  /// Wolfe's active-set iteration, in exact arithmetic.
  wolfe,
};

struct MinNormPoint {
  /// Fundamental-weight coordinates.
  std::vector<Rational> point;
  Rational norm_squared;
};

MinNormPoint minimal_norm_point(const SupportVector &sv,
                                MinNormMethod method = MinNormMethod::faces,
                                std::uint64_t max_faces = GuardCaps{}.max_faces);

/// p does not divide g_{S_w}.
bool is_torus_separable(const SupportVector &sv, std::uint64_t p);

/// 0 lies in the convex hull of S_w.
bool is_torus_semistable(const SupportVector &sv,
                         MinNormMethod method = MinNormMethod::faces,
                         std::uint64_t max_faces = GuardCaps{}.max_faces);

/// Primitive coweight dual to the minimal-norm point; none when semistable.
std::optional<OneParamSubgroup>
kempf_one_ps(const SupportVector &sv,
             MinNormMethod method = MinNormMethod::faces,
             std::uint64_t max_faces = GuardCaps{}.max_faces);

Stability classify_section_value(const SupportVector &sv,
                                 MinNormMethod method = MinNormMethod::faces,
                                 std::uint64_t max_faces = GuardCaps{}.max_faces);

/// Squared norm of a cocharacter under the dual of the invariant form.
Rational coweight_norm_squared(const RootDatum &d, const OneParamSubgroup &l);

/// (min_chi <l, chi>)^2 / |l|^2 when the minimum is positive, else nullopt.
std::optional<Rational>
normalized_pairing_squared(const RootDatum &d, const OneParamSubgroup &l,
                           const std::vector<Weight> &support);

/// Dual reflection s_i acting on a cocharacter.
OneParamSubgroup reflect(const RootDatum &d, const OneParamSubgroup &l,
                         std::size_t i);

} // namespace primebound
