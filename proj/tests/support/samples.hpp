#pragma once

// Concrete algebras of each normal form, in the coordinates of the
// triangular model, with the classification they must receive.

#include <optional>
#include <string>
#include <vector>

#include "nilvf/classifier.hpp"

namespace nilvf::testing {

struct Sample {
  std::string name;
  std::size_t nvars = 3;
  std::vector<Derivation> gens;
  NormalFormTag tag = NormalFormTag::Rank1;
  std::optional<std::uint32_t> n, m;
};

inline Derivation dd(std::size_t nvars, std::size_t i) { return Derivation::partial(nvars, i); }

/// x^e / e! for the exponent vector e.
inline RatFunc divided_monomial(std::size_t nvars, MultiPoly::Exponent e) {
  Rational c = 1;
  for (auto k : e) c /= factorial(k);
  return RatFunc(MultiPoly::monomial(nvars, std::move(e), c));
}

inline Sample rank1_sample(std::size_t nvars = 3) {
  return {"rank1", nvars, {dd(nvars, 0)}, NormalFormTag::Rank1, std::nullopt, std::nullopt};
}

/// {x2^i/i! d1 : i <= k} + {d2}.
inline Sample rank2_sample(std::uint32_t k, std::size_t nvars = 3) {
  Sample s{"rank2(" + std::to_string(k) + ")", nvars, {}, NormalFormTag::Rank2Chain, k, std::nullopt};
  for (std::uint32_t i = 0; i <= k; ++i) {
    MultiPoly::Exponent e(nvars, 0);
    e[1] = i;
    s.gens.push_back(scale(divided_monomial(nvars, e), dd(nvars, 0)));
  }
  s.gens.push_back(dd(nvars, 1));
  return s;
}

inline Sample abelian3_sample() {
  return {"abelian3", 3, {dd(3, 0), dd(3, 1), dd(3, 2)}, NormalFormTag::Abelian3, std::nullopt, std::nullopt};
}

inline Sample heisenberg3_sample() {
  return {"heisenberg3",
          3,
          {dd(3, 0), scale(RatFunc::variable(3, 2), dd(3, 0)) + dd(3, 1), dd(3, 2)},
          NormalFormTag::Heisenberg3,
          std::nullopt,
          std::nullopt};
}

/// {d3} + {x3^i/i! d1, x3^i/i! d2 : i <= n}. For n = 0 this is abelian of
/// dimension 3, so it classifies as Abelian3.
inline Sample l1_sample(std::uint32_t n) {
  Sample s{"L1(" + std::to_string(n) + ")", 3, {dd(3, 2)}, NormalFormTag::L1, n, std::nullopt};
  for (std::size_t target : {0, 1})
    for (std::uint32_t i = 0; i <= n; ++i) s.gens.push_back(scale(divided_monomial(3, {0, 0, i}), dd(3, target)));
  if (n == 0) s.tag = NormalFormTag::Abelian3, s.n.reset();
  return s;
}

/// n = 0: {d3, d2} + {x3^i x2^j/(i!j!) d1 : i, j <= m}.
/// n = 1: {d3, d2, x3 d2} + {x3^i x2^j/(i!j!) d1 : i + j <= m}; the full
/// square grid is not closed under x3 d2, the triangle is.
/// For m = 0 these collapse to Abelian3 (n = 0) and L1(1) (n = 1).
inline Sample l2_sample(std::uint32_t n, std::uint32_t m) {
  Sample s{"L2(" + std::to_string(n) + "," + std::to_string(m) + ")", 3, {dd(3, 2), dd(3, 1)},
           NormalFormTag::L2, n, m};
  if (n == 1) s.gens.push_back(scale(RatFunc::variable(3, 2), dd(3, 1)));
  for (std::uint32_t i = 0; i <= m; ++i)
    for (std::uint32_t j = 0; j <= m; ++j)
      if (n == 0 || i + j <= m) s.gens.push_back(scale(divided_monomial(3, {0, j, i}), dd(3, 0)));
  if (m == 0) {
    s.m.reset();
    if (n == 0) {
      s.tag = NormalFormTag::Abelian3;
      s.n.reset();
    } else {
      s.tag = NormalFormTag::L1;
    }
  }
  return s;
}

}  // namespace nilvf::testing
