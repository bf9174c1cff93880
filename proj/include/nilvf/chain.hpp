#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nilvf/derivation.hpp"

namespace nilvf {

/// value = sum_i coeffs[i] * a^i / i!
struct ChainCoefficients {
  std::vector<Rational> coeffs;

  /// Constant of integration (coefficient of 1).
  Rational gamma() const { return coeffs.empty() ? Rational(0) : coeffs[0]; }
  /// beta_i, the coefficient of a^{i+1}/(i+1)!.
  Rational beta(std::size_t i) const { return i + 1 < coeffs.size() ? coeffs[i + 1] : Rational(0); }
};

/// value = sum coeffs[(i, j)] * a^i b^j / (i! j!)
struct GridCoefficients {
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> coeffs;
};

RatFunc reconstruct(const ChainCoefficients& c, const RatFunc& a);
RatFunc reconstruct(const GridCoefficients& c, const RatFunc& a, const RatFunc& b);

/// Coefficients of the univariate P with f = P(a), deg P <= max_degree, in
/// the divided-power basis a^i/i!; nullopt when no rational P exists.
std::optional<ChainCoefficients> as_divided_powers(const RatFunc& f, const RatFunc& a, std::uint32_t max_degree);

/// Same for f = P(a, b) with each exponent bounded by max_degree.
std::optional<GridCoefficients> as_divided_grid(const RatFunc& f, const RatFunc& a, const RatFunc& b,
                                                std::uint32_t max_degree);

/// Same expansions when a derivation acting as d/da is known: d(a) = 1 (and
/// d(b) = 0 for the grid, with db(a) = 0, db(b) = 1). The top coefficient is
/// peeled off with iterated derivatives, which avoids a dense linear solve.
std::optional<ChainCoefficients> as_divided_powers(const RatFunc& f, const RatFunc& a, const Derivation& da,
                                                   std::uint32_t max_degree);
std::optional<GridCoefficients> as_divided_grid(const RatFunc& f, const RatFunc& a, const RatFunc& b,
                                                const Derivation& da, const Derivation& db, std::uint32_t max_degree);

/// Writes b = gamma + sum_{i<=s} beta_i a^{i+1}/(i+1)! given that every
/// annihilator kills a and b, shift(a) = 1, and shift(b) lies in
/// K<1, a, ..., a^s/s!>. Throws Precondition when the relations on a fail or
/// an annihilator moves b, NonRationalConstants when shift(b) has no rational
/// expansion or the residual b - c is not a rational number.
ChainCoefficients express_via_chain(const RatFunc& b, const RatFunc& a, std::span<const Derivation> annihilators,
                                    const Derivation& shift, std::uint32_t s);

/// Three-derivation form: D1, D2 annihilate a and b, D3(a) = 1.
ChainCoefficients express_via_chain(const RatFunc& b, const RatFunc& a, const Derivation& d1,
                                    const Derivation& d2, const Derivation& d3, std::uint32_t s);

/// Writes c in K<a^i b^j / i! j!>, 0 <= i <= m, 0 <= j <= k, where
/// D1(a) = D1(b) = 0, D2(a) = 1, D2(b) = 0, D3(a) = 0, D3(b) = 1, D1(c) = 0
/// and [D2, D3](c) = 0. D2(c) and D3(c) are expanded on their grids and c is
/// rebuilt from the potential of (D2(c), D3(c)). Throws Incompatible when that
/// pair is not closed, NonRationalConstants when an expansion or the residual
/// is not rational.
GridCoefficients express_via_grid(const RatFunc& c, const RatFunc& a, const RatFunc& b, const Derivation& d1,
                                  const Derivation& d2, const Derivation& d3, std::uint32_t m, std::uint32_t k);

}  // namespace nilvf
