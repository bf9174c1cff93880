#include "nilvf/classifier.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "nilvf/chain.hpp"
#include "nilvf/error.hpp"

namespace nilvf {

namespace {

[[noreturn]] void non_rational(const std::string& what) { throw Error(ErrorCode::NonRationalConstants, what); }
[[noreturn]] void internal(const std::string& what) { throw Error(ErrorCode::Internal, what); }

struct Analysis {
  const LieBasis& l;
  StructureTensor tensor;
  CentralSeries series;
  std::size_t rank;
  Subspace center;
};

Analysis analyze(const LieBasis& l) {
  if (l.dim() == 0) throw Error(ErrorCode::ZeroAlgebra, "the zero algebra has no normal form");
  StructureTensor t = structure_constants(l);
  CentralSeries series = lower_central_series(t);
  if (!series.nilpotent) {
    throw Error(ErrorCode::NotNilpotent, "lower central series stabilizes at dimension " +
                                             std::to_string(series.terms.back().dim()));
  }
  const std::size_t r = rank_over_R(l);
  if (r > 3) throw Error(ErrorCode::RankTooHigh, "rank over R is " + std::to_string(r) + " (at most 3 supported)");
  Subspace z = center(t);
  return Analysis{l, std::move(t), std::move(series), r, std::move(z)};
}

Derivation partial(std::size_t nvars, std::size_t index) { return Derivation::partial(nvars, index); }

RatFunc divided_power(const RatFunc& a, std::uint32_t i) { return a.pow(i) * Rational(1 / factorial(i)); }

RatFunc model_monomial(std::size_t nvars, std::size_t var_a, std::uint32_t i) {
  return RatFunc(MultiPoly::monomial(
      nvars,
      [&] {
        MultiPoly::Exponent e(nvars, 0);
        e[var_a] = i;
        return e;
      }(),
      1 / factorial(i)));
}

// r with r * d == e, if e is an R-multiple of d.
std::optional<RatFunc> ratio(const Derivation& e, const Derivation& d) {
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    if (d[i].is_zero()) continue;
    RatFunc r = e[i] / d[i];
    if (scale(r, d) == e) return r;
    return std::nullopt;
  }
  return std::nullopt;
}

// (x, y) with x d1 + y d2 == e for R-independent d1, d2.
std::optional<std::pair<RatFunc, RatFunc>> r_coordinates(const Derivation& e, const Derivation& d1,
                                                        const Derivation& d2) {
  const std::size_t n = e.nvars();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      const RatFunc det = d1[p] * d2[q] - d1[q] * d2[p];
      if (det.is_zero()) continue;
      RatFunc x = (e[p] * d2[q] - e[q] * d2[p]) / det;
      RatFunc y = (d1[p] * e[q] - d1[q] * e[p]) / det;
      if (scale(x, d1) + scale(y, d2) == e) return std::make_pair(std::move(x), std::move(y));
      return std::nullopt;
    }
  return std::nullopt;
}

std::size_t first_outside(const Subspace& s) {
  for (std::size_t j = 0; j < s.ambient(); ++j)
    if (!s.contains(unit_vector(s.ambient(), j))) return j;
  internal("subspace is the whole algebra");
}

const QVector& last_outside(const Subspace& candidates, const Subspace& excluded) {
  for (auto it = candidates.basis().rbegin(); it != candidates.basis().rend(); ++it)
    if (!excluded.contains(*it)) return *it;
  internal("no candidate outside the excluded subspace");
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  const std::size_t d = a.ambient();
  const auto functionals = kernel(QMatrix(b.basis().begin(), b.basis().end()), d);
  QMatrix rows;
  for (const auto& f : functionals) {
    QVector row;
    for (const auto& v : a.basis()) {
      Rational s = 0;
      for (std::size_t k = 0; k < d; ++k) s += f[k] * v[k];
      row.push_back(s);
    }
    rows.push_back(std::move(row));
  }
  std::vector<QVector> out;
  for (const auto& alpha : kernel(rows, a.dim())) {
    QVector v(d, Rational(0));
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] != 0) v = v + alpha[i] * a.basis()[i];
    out.push_back(std::move(v));
  }
  return Subspace::span(d, out);
}

Subspace span_with(const Subspace& s, const QVector& v) {
  std::vector<QVector> vs = s.basis();
  vs.push_back(v);
  return Subspace::span(s.ambient(), vs);
}

// Under rational constants the center has rank equal to its dimension.
void require_center_rank_matches(const LieBasis& l, const Subspace& z) {
  const std::size_t rz = rank_over_R(elements(l, z));
  if (rz != z.dim()) {
    non_rational("center has dimension " + std::to_string(z.dim()) + " over K but rank " + std::to_string(rz) +
                 " over R; the constants field is larger than K");
  }
}

void require_codimension_one(const Subspace& s, std::size_t d, const char* name) {
  if (s.dim() + 1 != d) {
    non_rational(std::string(name) + " has codimension " + std::to_string(d - s.dim()) +
                 " over K; expected 1 when the constants are rational");
  }
}

std::optional<QMatrix> containment(const std::vector<Derivation>& spanning, const std::vector<Derivation>& gens) {
  std::vector<std::optional<QVector>> coords;
  try {
    coords = express_in_span(spanning, gens);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Precondition) internal("normal-form spanning set is K-linearly dependent");
    throw;
  }
  QMatrix out;
  for (auto& c : coords) {
    if (!c) return std::nullopt;
    out.push_back(std::move(*c));
  }
  return out;
}

NormalFormReport make_report(const Analysis& an, NormalFormTag tag, Witnesses w, std::optional<std::uint32_t> n,
                             std::optional<std::uint32_t> m) {
  NormalFormReport r;
  r.tag = tag;
  r.n = n;
  r.m = m;
  r.witnesses = std::move(w);
  r.input = an.l;
  r.input_tensor = an.tensor;
  r.rank = an.rank;
  r.nilpotency_class = an.series.nilpotency_class;
  r.center_dim = an.center.dim();
  r.spanning = normal_form_spanning(tag, r.witnesses, n.value_or(0), m.value_or(0));
  r.model = normal_form_model(tag, n.value_or(0), m.value_or(0));
  r.model_nvars = r.model.front().nvars();
  auto coords = containment(r.spanning, an.l.gens());
  if (!coords) non_rational("input is not in the K-span of the " + std::string(to_string(tag)) + " normal form");
  r.correspondence = std::move(*coords);
  return r;
}

std::uint32_t search_limit(const LieBasis& l) { return static_cast<std::uint32_t>(l.dim() + 1); }

NormalFormReport finish_l1(const Analysis& an, Witnesses w) {
  const std::uint32_t limit = search_limit(an.l);
  for (std::uint32_t n = 0; n <= limit; ++n) {
    if (containment(normal_form_spanning(NormalFormTag::L1, w, n, 0), an.l.gens()))
      return make_report(an, NormalFormTag::L1, std::move(w), n, std::nullopt);
  }
  non_rational("no L1 normal form with rational coefficients contains the input");
}

NormalFormReport finish_l2(const Analysis& an, Witnesses w) {
  const std::uint32_t limit = search_limit(an.l);
  // Containment is monotone in n and in m separately; minimize m, then n.
  std::optional<std::uint32_t> m0;
  for (std::uint32_t m = 0; m <= limit && !m0; ++m)
    if (containment(normal_form_spanning(NormalFormTag::L2, w, limit, m), an.l.gens())) m0 = m;
  if (!m0) non_rational("no L2 normal form with rational coefficients contains the input");
  for (std::uint32_t n = 0; n <= limit; ++n)
    if (containment(normal_form_spanning(NormalFormTag::L2, w, n, *m0), an.l.gens()))
      return make_report(an, NormalFormTag::L2, std::move(w), n, *m0);
  internal("L2 containment is not monotone");
}

NormalFormReport rank1(const Analysis& an) {
  if (an.l.dim() != 1) {
    non_rational("rank 1 with K-dimension " + std::to_string(an.l.dim()) +
                 "; the constants field is larger than K");
  }
  Witnesses w;
  w.d1 = an.l[0];
  return make_report(an, NormalFormTag::Rank1, std::move(w), std::nullopt, std::nullopt);
}

NormalFormReport rank2(const Analysis& an) {
  const LieBasis& l = an.l;
  Witnesses w;
  if (l.dim() == 2) {
    w.d1 = l[0];
    w.d2 = l[1];
    return make_report(an, NormalFormTag::Rank2Chain, std::move(w), 0u, std::nullopt);
  }
  require_center_rank_matches(l, an.center);
  if (an.center.dim() != 1) non_rational("rank-2 algebra of dimension >= 3 with a center of dimension != 1");

  const Subspace ideal = ideal_RI_cap_L(l, an.center);
  require_codimension_one(ideal, l.dim(), "R D1 ∩ L");
  const Derivation d2 = l[first_outside(ideal)];
  const auto chains = jordan_chains(l, ideal, d2);
  if (chains.size() != 1) non_rational("ad D2 has more than one Jordan block on R D1 ∩ L");

  const auto& chain = chains.front().fields;
  const std::uint32_t k = static_cast<std::uint32_t>(chain.size() - 1);
  const Derivation d1 = chain.back();
  w.d1 = d1;
  w.d2 = d2;
  if (k >= 1) {
    auto a = ratio(chain[k - 1], d1);
    if (!a) internal("chain element is not an R-multiple of D1");
    w.a = *a;
    const Derivation annihilators[] = {d1};
    for (std::uint32_t t = 1; t <= k; ++t) {
      auto c = ratio(chain[k - t], d1);
      if (!c) internal("chain element is not an R-multiple of D1");
      express_via_chain(*c, *a, annihilators, d2, t - 1);
    }
  }
  return make_report(an, NormalFormTag::Rank2Chain, std::move(w), k, std::nullopt);
}

NormalFormReport dim3(const Analysis& an) {
  const LieBasis& l = an.l;
  Witnesses w;
  if (an.series.terms.size() < 2 || an.series.terms[1].dim() == 0) {
    w.d1 = l[0];
    w.d2 = l[1];
    w.d3 = l[2];
    return make_report(an, NormalFormTag::Abelian3, std::move(w), std::nullopt, std::nullopt);
  }
  if (an.series.terms[1].dim() != 1) internal("3-dimensional nilpotent algebra with derived algebra of dimension > 1");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Derivation b = bracket(l[j], l[i]);
      if (b.is_zero()) continue;
      w.d3 = l[j];
      w.d2 = l[i];
      w.d1 = std::move(b);
      return make_report(an, NormalFormTag::Heisenberg3, std::move(w), std::nullopt, std::nullopt);
    }
  internal("nonabelian algebra without a nonzero bracket");
}

// Center of rank 2: two Jordan blocks of ad D3 on the abelian ideal R Z ∩ L.
NormalFormReport center_rank2(const Analysis& an) {
  const LieBasis& l = an.l;
  const Subspace ideal = ideal_RI_cap_L(l, an.center);
  require_codimension_one(ideal, l.dim(), "R Z ∩ L");
  const Derivation d3 = l[first_outside(ideal)];
  const auto chains = jordan_chains(l, ideal, d3);
  if (chains.size() != 2) non_rational("ad D3 does not have exactly two Jordan blocks on R Z ∩ L");
  const auto& j1 = chains[0].fields;
  const auto& j2 = chains[1].fields;
  if (j1.size() < 2) internal("both Jordan blocks are trivial although dim >= 4");

  Witnesses w;
  w.d1 = j1.back();
  w.d2 = j2.back();
  w.d3 = d3;
  auto coords = r_coordinates(j1[j1.size() - 2], *w.d1, *w.d2);
  if (!coords) internal("chain element is not an R-combination of D1, D2");
  w.a = coords->first;
  return finish_l1(an, std::move(w));
}

// Coordinates (x1, x2, x3) with e = x1 d1 + x2 d2 + x3 d3 for R-independent
// d1, d2, d3.
std::optional<std::array<RatFunc, 3>> r_coordinates(const Derivation& e, const Derivation& d1, const Derivation& d2,
                                                   const Derivation& d3) {
  const std::size_t n = e.nvars();
  const Derivation* cols[] = {&d1, &d2, &d3};
  auto det3 = [&](const std::array<const Derivation*, 3>& c, std::size_t p, std::size_t q, std::size_t r) {
    auto m = [&](std::size_t row, std::size_t col) { return (*c[col])[row == 0 ? p : row == 1 ? q : r]; };
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      for (std::size_t r = q + 1; r < n; ++r) {
        const RatFunc det = det3({cols[0], cols[1], cols[2]}, p, q, r);
        if (det.is_zero()) continue;
        std::array<RatFunc, 3> x;
        for (std::size_t k = 0; k < 3; ++k) {
          std::array<const Derivation*, 3> c{cols[0], cols[1], cols[2]};
          c[k] = &e;
          x[k] = det3(c, p, q, r) / det;
        }
        if (scale(x[0], d1) + scale(x[1], d2) + scale(x[2], d3) == e) return x;
        return std::nullopt;
      }
  return std::nullopt;
}

// Divided-power coefficients as a polynomial in (A, B).
MultiPoly grid_poly(const GridCoefficients& g) {
  MultiPoly p(2);
  for (const auto& [ij, q] : g.coeffs) p.add_term({ij.first, ij.second}, q / (factorial(ij.first) * factorial(ij.second)));
  return p;
}

MultiPoly chain_poly(const ChainCoefficients& c) {
  MultiPoly p(2);
  for (std::uint32_t i = 0; i < c.coeffs.size(); ++i) p.add_term({i, 0}, c.coeffs[i] / factorial(i));
  return p;
}

// Corrections (q2, q3) in K[A, B] with dq2/dA - dq3/dB = P, chosen so that
// every generator alpha D3 + V(a) D2 + U(a, b) D1, rewritten over
// D2 - q2 D1 and D3 - q3 D1, has its D1-coefficient in the smallest square
// grid. Solutions differ by gradients of h, which enter linearly.
std::pair<MultiPoly, MultiPoly> balanced_corrections(const MultiPoly& P, const std::vector<Rational>& alpha,
                                                     const std::vector<MultiPoly>& V, const std::vector<MultiPoly>& U,
                                                     std::uint32_t bound) {
  const MultiPoly q2p = formal_integrate(P, 0);
  std::vector<MultiPoly::Exponent> hmono;
  for (std::uint32_t i = 0; i <= bound; ++i)
    for (std::uint32_t j = 0; j <= bound; ++j)
      if (i + j > 0) hmono.push_back({i, j});

  // E_g = base_g + sum_k h_k * dir_{g,k}
  std::vector<MultiPoly> base;
  std::vector<std::vector<MultiPoly>> dir(U.size());
  for (std::size_t g = 0; g < U.size(); ++g) {
    base.push_back(U[g] + V[g] * q2p);
    for (const auto& e : hmono) {
      const MultiPoly h = MultiPoly::monomial(2, e, 1);
      dir[g].push_back(alpha[g] * derivative(h, 0) + V[g] * derivative(h, 1));
    }
  }

  const std::size_t k = hmono.size();
  for (std::uint32_t m = 0; m <= bound; ++m) {
    QMatrix rows;
    for (std::size_t g = 0; g < U.size(); ++g) {
      std::map<MultiPoly::Exponent, QVector> eq;
      auto row = [&](const MultiPoly::Exponent& e) -> QVector& {
        auto it = eq.find(e);
        if (it == eq.end()) it = eq.emplace(e, QVector(k + 1, Rational(0))).first;
        return it->second;
      };
      auto outside = [m](const MultiPoly::Exponent& e) { return e[0] > m || e[1] > m; };
      for (const auto& [e, q] : base[g].terms())
        if (outside(e)) row(e)[k] += q;
      for (std::size_t t = 0; t < k; ++t)
        for (const auto& [e, q] : dir[g][t].terms())
          if (outside(e)) row(e)[t] += q;
      for (auto& [e, r] : eq) rows.push_back(std::move(r));
    }
    const Echelon ech = reduced_echelon(rows, k + 1);
    if (!ech.pivots.empty() && ech.pivots.back() == k) continue;
    MultiPoly h(2);
    for (std::size_t r = 0; r < ech.rows.size(); ++r) h.add_term(hmono[ech.pivots[r]], -ech.rows[r][k]);
    return {q2p + derivative(h, 1), derivative(h, 0)};
  }
  return {q2p, MultiPoly(2)};
}

// I2 abelian: a single Jordan block of ad D3 on I2; D2 is corrected so that
// it commutes with D3.
NormalFormReport abelian_i2(const Analysis& an, const Subspace& i2, const Derivation& d2_in) {
  const LieBasis& l = an.l;
  const Derivation d3 = l[first_outside(i2)];
  const auto chains = jordan_chains(l, i2, d3);
  if (chains.size() != 1) non_rational("ad D3 has more than one Jordan block on the abelian ideal");
  const auto& chain = chains.front().fields;
  if (chain.size() < 3) internal("Jordan block on the abelian ideal is too short");
  const std::size_t len = chain.size();
  const Derivation d1 = chain[len - 1];

  auto e1 = r_coordinates(chain[len - 2], d1, d2_in);
  if (!e1) internal("chain element is not an R-combination of D1, D2");
  RatFunc a(l.nvars());
  if (e1->second.is_zero()) {
    a = e1->first;
  } else {
    if (!e1->second.is_constant()) non_rational("chain coefficient " + e1->second.to_string() + " is not rational");
    auto e2 = r_coordinates(chain[len - 3], d1, d2_in);
    if (!e2) internal("chain element is not an R-combination of D1, D2");
    a = e2->second / e1->second;
  }

  const Derivation comm = bracket(d3, d2_in);
  RatFunc c(l.nvars());
  if (!comm.is_zero()) {
    auto r = ratio(comm, d1);
    if (!r) internal("[D3, D2] is not an R-multiple of D1");
    c = *r;
  }
  auto p = as_divided_powers(c, a, d3, static_cast<std::uint32_t>(l.dim()));
  if (!p) non_rational("[D3, D2] has no rational expansion in powers of a");
  MultiPoly poly(1);
  for (std::uint32_t i = 0; i < p->coeffs.size(); ++i) poly.add_term({i}, p->coeffs[i] / factorial(i));
  const RatFunc r0 = substitute(formal_integrate(poly, 0), std::span(&a, 1));

  Witnesses w;
  w.d1 = d1;
  w.d2 = d2_in - scale(r0, d1);
  w.d3 = d3;
  w.a = a;
  return finish_l1(an, std::move(w));
}

// I2 nonabelian and C_L(I1) = I1: a and b come from the kernels of ad D2 and
// ad D3 on I1.
NormalFormReport nonabelian_i2(const Analysis& an, const Subspace& i1, const Subspace& i2, const QVector& d2_coords) {
  const LieBasis& l = an.l;
  const std::size_t d = l.dim();
  const Derivation d2 = l.element(d2_coords);
  const std::size_t j3 = first_outside(i2);
  const Derivation d3 = l[j3];

  const Subspace m2 = intersect(i1, centralizer(an.tensor, Subspace::span(d, std::span(&d2_coords, 1))));
  const QVector e3 = unit_vector(d, j3);
  const Subspace m3 = intersect(i1, centralizer(an.tensor, Subspace::span(d, std::span(&e3, 1))));

  const auto chains_a = jordan_chains(l, m2, d3);
  const auto chains_b = jordan_chains(l, m3, d2);
  if (chains_a.size() != 1 || chains_b.size() != 1) non_rational("kernels of ad D2, ad D3 on I1 are not single blocks");
  const auto& ca = chains_a.front().fields;
  const auto& cb = chains_b.front().fields;
  if (ca.size() < 2 || cb.size() < 2) {
    internal("degenerate kernel of ad D2 or ad D3 on I1; this configuration is not supported");
  }
  const Derivation d1 = ca.back();
  auto a = ratio(ca[ca.size() - 2], d1);
  auto lambda = ratio(cb.back(), d1);
  auto b = ratio(cb[cb.size() - 2], cb.back());
  if (!a || !lambda || !b) internal("kernel chain element is not an R-multiple of D1");
  if (!lambda->is_constant()) non_rational("kernel bottoms differ by a non-rational factor");

  const Derivation comm = bracket(d3, d2);
  RatFunc r(l.nvars());
  if (!comm.is_zero()) {
    auto rr = ratio(comm, d1);
    if (!rr) internal("[D3, D2] is not an R-multiple of D1");
    r = *rr;
  }
  const std::uint32_t bound = static_cast<std::uint32_t>(d);
  auto grid = as_divided_grid(r, *a, *b, d3, d2, bound);
  if (!grid) non_rational("[D3, D2] has no rational expansion in a, b");

  // Every generator is alpha D3 + V(a) D2 + U(a, b) D1.
  std::vector<Rational> alpha;
  std::vector<MultiPoly> vs, us;
  for (const auto& g : l.gens()) {
    auto x = r_coordinates(g, d1, d2, d3);
    if (!x) internal("generator is not an R-combination of D1, D2, D3");
    if (!(*x)[2].is_constant()) non_rational("D3-coefficient " + (*x)[2].to_string() + " is not rational");
    auto v = as_divided_powers((*x)[1], *a, d3, bound);
    auto u = as_divided_grid((*x)[0], *a, *b, d3, d2, 2 * bound);
    if (!v || !u) non_rational("generator coefficients have no rational expansion in a, b");
    alpha.push_back((*x)[2].constant_value());
    vs.push_back(chain_poly(*v));
    us.push_back(grid_poly(*u));
  }
  const auto [q2, q3] = balanced_corrections(grid_poly(*grid), alpha, vs, us, bound + 1);
  const RatFunc ab[] = {*a, *b};

  Witnesses w;
  w.d1 = d1;
  w.d2 = d2 - scale(substitute(q2, std::span<const RatFunc>(ab)), d1);
  w.d3 = d3 - scale(substitute(q3, std::span<const RatFunc>(ab)), d1);
  w.a = *a;
  w.b = *b;

  // Every element c D1 of I1 expands on the (a, b) grid.
  for (const auto& e : elements(l, i1)) {
    auto c = ratio(e, d1);
    if (!c) internal("element of I1 is not an R-multiple of D1");
    express_via_grid(*c, *a, *b, d1, *w.d3, *w.d2, bound, bound);
  }
  return finish_l2(an, std::move(w));
}

// Center of rank 1.
NormalFormReport center_rank1(const Analysis& an) {
  const LieBasis& l = an.l;
  const std::size_t d = l.dim();
  const Subspace i1 = ideal_RI_cap_L(l, an.center);
  const Subspace quotient_center = central_modulo(an.tensor, i1);
  const QVector d2_coords = last_outside(quotient_center, i1);
  const Subspace i2 = ideal_RI_cap_L(l, span_with(i1, d2_coords));
  require_codimension_one(i2, d, "I2");

  if (commutator(an.tensor, i2, i2).dim() == 0) return abelian_i2(an, i2, l.element(d2_coords));

  const Subspace c = centralizer(an.tensor, i1);
  if (c.dim() > i1.dim()) {
    const QVector d4 = last_outside(intersect(c, quotient_center), i1);
    const Subspace i4 = ideal_RI_cap_L(l, span_with(i1, d4));
    require_codimension_one(i4, d, "I4");
    if (commutator(an.tensor, i4, i4).dim() != 0) internal("I4 is not abelian");
    return abelian_i2(an, i4, l.element(d4));
  }
  return nonabelian_i2(an, i1, i2, d2_coords);
}

NormalFormReport rank3(const Analysis& an) {
  if (an.l.dim() == 3) return dim3(an);
  require_center_rank_matches(an.l, an.center);
  switch (an.center.dim()) {
    case 1: return center_rank1(an);
    case 2: return center_rank2(an);
    default:
      internal("nilpotent algebra of rank 3 and dimension >= 4 with center of rank " +
               std::to_string(an.center.dim()));
  }
}

NormalFormReport dispatch(const Analysis& an) {
  switch (an.rank) {
    case 1: return rank1(an);
    case 2: return rank2(an);
    case 3: return rank3(an);
    default: internal("nonzero algebra of rank 0");
  }
}

NormalFormReport staged(const LieBasis& l, std::size_t expected_rank) {
  const Analysis an = analyze(l);
  if (an.rank != expected_rank) {
    throw Error(ErrorCode::Precondition, "algebra has rank " + std::to_string(an.rank) + ", expected " +
                                             std::to_string(expected_rank));
  }
  return dispatch(an);
}

}  // namespace

std::string_view to_string(NormalFormTag tag) {
  switch (tag) {
    case NormalFormTag::Rank1: return "Rank1";
    case NormalFormTag::Rank2Chain: return "Rank2Chain";
    case NormalFormTag::Abelian3: return "Abelian3";
    case NormalFormTag::Heisenberg3: return "Heisenberg3";
    case NormalFormTag::L1: return "L1";
    case NormalFormTag::L2: return "L2";
  }
  return "Unknown";
}

std::vector<Derivation> normal_form_spanning(NormalFormTag tag, const Witnesses& w, std::uint32_t n,
                                             std::uint32_t m) {
  std::vector<Derivation> out;
  switch (tag) {
    case NormalFormTag::Rank1:
      out = {*w.d1};
      break;
    case NormalFormTag::Rank2Chain:
      out.push_back(*w.d1);
      for (std::uint32_t i = 1; i <= n; ++i) out.push_back(scale(divided_power(*w.a, i), *w.d1));
      out.push_back(*w.d2);
      break;
    case NormalFormTag::Abelian3:
      out = {*w.d1, *w.d2, *w.d3};
      break;
    case NormalFormTag::Heisenberg3:
      out = {*w.d1, *w.d2, *w.d3};
      break;
    case NormalFormTag::L1:
      out.push_back(*w.d3);
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(divided_power(*w.a, i), *w.d1));
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(divided_power(*w.a, i), *w.d2));
      break;
    case NormalFormTag::L2:
      out.push_back(*w.d3);
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(divided_power(*w.a, i), *w.d2));
      for (std::uint32_t i = 0; i <= m; ++i)
        for (std::uint32_t j = 0; j <= m; ++j)
          out.push_back(scale(divided_power(*w.a, i) * divided_power(*w.b, j), *w.d1));
      break;
  }
  return out;
}

std::vector<Derivation> normal_form_model(NormalFormTag tag, std::uint32_t n, std::uint32_t m) {
  std::vector<Derivation> out;
  switch (tag) {
    case NormalFormTag::Rank1:
      out = {partial(1, 0)};
      break;
    case NormalFormTag::Rank2Chain:
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(model_monomial(2, 1, i), partial(2, 0)));
      out.push_back(partial(2, 1));
      break;
    case NormalFormTag::Abelian3:
      out = {partial(3, 0), partial(3, 1), partial(3, 2)};
      break;
    case NormalFormTag::Heisenberg3:
      out = {partial(3, 0), scale(RatFunc::variable(3, 2), partial(3, 0)) + partial(3, 1), partial(3, 2)};
      break;
    case NormalFormTag::L1:
      out.push_back(partial(3, 2));
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(model_monomial(3, 2, i), partial(3, 0)));
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(model_monomial(3, 2, i), partial(3, 1)));
      break;
    case NormalFormTag::L2:
      out.push_back(partial(3, 2));
      for (std::uint32_t i = 0; i <= n; ++i) out.push_back(scale(model_monomial(3, 2, i), partial(3, 1)));
      for (std::uint32_t i = 0; i <= m; ++i)
        for (std::uint32_t j = 0; j <= m; ++j)
          out.push_back(scale(model_monomial(3, 2, i) * model_monomial(3, 1, j), partial(3, 0)));
      break;
  }
  return out;
}

bool is_in_triangular(const Derivation& d) {
  const std::size_t n = d.nvars();
  for (std::size_t i = 0; i < n; ++i) {
    if (!d[i].is_polynomial()) return false;
    for (std::size_t j = 0; j <= i; ++j)
      if (d[i].num().depends_on(j)) return false;
  }
  return true;
}

bool witness_relations_hold(const NormalFormReport& r) {
  const Witnesses& w = r.witnesses;
  auto zero_bracket = [](const Derivation& x, const Derivation& y) { return bracket(x, y).is_zero(); };
  auto has = [&](bool d1, bool d2, bool d3, bool a, bool b) {
    return (!d1 || w.d1) && (!d2 || w.d2) && (!d3 || w.d3) && (!a || w.a) && (!b || w.b);
  };
  auto independent = [&](std::vector<Derivation> ds) { return rank_over_R(ds) == ds.size(); };

  switch (r.tag) {
    case NormalFormTag::Rank1:
      return has(true, false, false, false, false) && !w.d1->is_zero();
    case NormalFormTag::Rank2Chain: {
      if (!has(true, true, false, false, false)) return false;
      if (!zero_bracket(*w.d1, *w.d2) || !independent({*w.d1, *w.d2})) return false;
      if (r.n.value_or(0) == 0) return true;
      if (!w.a) return false;
      const std::size_t nv = w.a->nvars();
      return apply(*w.d1, *w.a).is_zero() && apply(*w.d2, *w.a) == RatFunc::constant(nv, 1);
    }
    case NormalFormTag::Abelian3:
      return has(true, true, true, false, false) && zero_bracket(*w.d1, *w.d2) && zero_bracket(*w.d1, *w.d3) &&
             zero_bracket(*w.d2, *w.d3) && independent({*w.d1, *w.d2, *w.d3});
    case NormalFormTag::Heisenberg3:
      return has(true, true, true, false, false) && bracket(*w.d3, *w.d2) == *w.d1 && zero_bracket(*w.d2, *w.d1) &&
             zero_bracket(*w.d3, *w.d1) && independent({*w.d1, *w.d2, *w.d3});
    case NormalFormTag::L1:
    case NormalFormTag::L2: {
      const bool l2 = r.tag == NormalFormTag::L2;
      if (!has(true, true, true, true, l2)) return false;
      if (!zero_bracket(*w.d1, *w.d2) || !zero_bracket(*w.d1, *w.d3) || !zero_bracket(*w.d2, *w.d3)) return false;
      if (!independent({*w.d1, *w.d2, *w.d3})) return false;
      const RatFunc one = RatFunc::constant(w.a->nvars(), 1);
      if (!apply(*w.d1, *w.a).is_zero() || !apply(*w.d2, *w.a).is_zero() || apply(*w.d3, *w.a) != one) return false;
      if (!l2) return true;
      return apply(*w.d1, *w.b).is_zero() && apply(*w.d3, *w.b).is_zero() && apply(*w.d2, *w.b) == one;
    }
  }
  return false;
}

namespace {

std::vector<Derivation> images(const NormalFormReport& r) {
  std::vector<Derivation> out;
  for (const auto& row : r.correspondence) {
    Derivation img(r.model_nvars);
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) img += row[i] * r.model[i];
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace

Verification verify(const NormalFormReport& r) {
  Verification v;
  const auto emb = images(r);
  v.triangular = std::all_of(emb.begin(), emb.end(), is_in_triangular);
  try {
    const LieBasis basis(emb, r.model_nvars);
    v.brackets = emb.size() == r.input.dim() && structure_constants(basis) == r.input_tensor;
  } catch (const Error&) {
    v.brackets = false;
  }
  v.witnesses = witness_relations_hold(r);
  return v;
}

LieBasis embed_into_triangular(const NormalFormReport& r) {
  const Verification v = verify(r);
  if (!v.brackets) internal("embedding does not preserve structure constants");
  if (!v.triangular) internal("embedded field outside the triangular algebra");
  if (!v.witnesses) internal("witness relations fail for " + std::string(to_string(r.tag)));
  return LieBasis(images(r), r.model_nvars);
}

NormalFormReport classify(const LieBasis& l) {
  NormalFormReport r = dispatch(analyze(l));
  r.embedded = embed_into_triangular(r).gens();
  r.verified = Verification{true, true, true};
  return r;
}

NormalFormReport classify(std::span<const Derivation> fields, std::size_t nvars) {
  return classify(k_linear_reduce(fields, nvars));
}

NormalFormReport classify_rank1(const LieBasis& l) { return staged(l, 1); }
NormalFormReport classify_rank2(const LieBasis& l) { return staged(l, 2); }
NormalFormReport classify_rank3(const LieBasis& l) { return staged(l, 3); }

}  // namespace nilvf
