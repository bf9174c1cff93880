#include "nilvf/chain.hpp"

#include <algorithm>

#include "nilvf/error.hpp"
#include "nilvf/lie.hpp"

namespace nilvf {

namespace {

using Index2 = std::pair<std::uint32_t, std::uint32_t>;

RatFunc divided_power(const RatFunc& a, std::uint32_t i) { return a.pow(i) * Rational(1 / factorial(i)); }

// Solves f = sum_t x_t basis[t] over K for scalar rows.
std::optional<QVector> solve_scalar(const RatFunc& f, const std::vector<RatFunc>& basis) {
  std::vector<std::vector<RatFunc>> rows;
  for (const auto& b : basis) rows.push_back({b});
  rows.push_back({f});
  std::size_t width = 0;
  const QMatrix m = expand_rows(rows, &width);
  const std::span<const QVector> all(m);
  auto sol = solve_in_span(all.first(basis.size()), all.subspan(basis.size()), width);
  return sol.front();
}

// Coefficients of P(u, v) in the monomial basis, from grid coefficients.
MultiPoly grid_polynomial(const GridCoefficients& g) {
  MultiPoly p(2);
  for (const auto& [ij, c] : g.coeffs) p.add_term({ij.first, ij.second}, c / (factorial(ij.first) * factorial(ij.second)));
  return p;
}

GridCoefficients grid_from_polynomial(const MultiPoly& p) {
  GridCoefficients g;
  for (const auto& [e, c] : p.terms()) g.coeffs[{e[0], e[1]}] = c * factorial(e[0]) * factorial(e[1]);
  return g;
}

std::optional<GridCoefficients> solve_grid(const RatFunc& f, const RatFunc& a, const RatFunc& b, std::uint32_t max_i,
                                           std::uint32_t max_j) {
  GridCoefficients g;
  std::vector<RatFunc> basis;
  std::vector<Index2> index;
  for (std::uint32_t i = 0; i <= max_i; ++i)
    for (std::uint32_t j = 0; j <= max_j; ++j) {
      basis.push_back(divided_power(a, i) * divided_power(b, j));
      index.emplace_back(i, j);
    }
  auto x = solve_scalar(f, basis);
  if (!x) return std::nullopt;
  for (std::size_t t = 0; t < index.size(); ++t)
    if ((*x)[t] != 0) g.coeffs[index[t]] = (*x)[t];
  return g;
}

// Smallest k <= bound with d^{k+1}(f) = 0, with d^k(f); nullopt past bound.
std::optional<std::pair<std::uint32_t, RatFunc>> top_derivative(const RatFunc& f, const Derivation& d,
                                                                std::uint32_t bound) {
  RatFunc cur = f;
  for (std::uint32_t k = 0; k <= bound; ++k) {
    RatFunc next = apply(d, cur);
    if (next.is_zero()) return std::make_pair(k, std::move(cur));
    cur = std::move(next);
  }
  return std::nullopt;
}

// Restricts a grid expansion to i <= max_i, j <= max_j (nothing at all when
// `empty`).
std::optional<GridCoefficients> within(std::optional<GridCoefficients> g, std::uint32_t max_i, std::uint32_t max_j,
                                       bool empty) {
  if (!g) return std::nullopt;
  for (const auto& [ij, c] : g->coeffs)
    if (empty || ij.first > max_i || ij.second > max_j) return std::nullopt;
  return g;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::Precondition, what);
}

}  // namespace

RatFunc reconstruct(const ChainCoefficients& c, const RatFunc& a) {
  RatFunc out(a.nvars());
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    if (c.coeffs[i] != 0) out += divided_power(a, static_cast<std::uint32_t>(i)) * c.coeffs[i];
  return out;
}

RatFunc reconstruct(const GridCoefficients& c, const RatFunc& a, const RatFunc& b) {
  RatFunc out(a.nvars());
  for (const auto& [ij, q] : c.coeffs) out += divided_power(a, ij.first) * divided_power(b, ij.second) * q;
  return out;
}

std::optional<ChainCoefficients> as_divided_powers(const RatFunc& f, const RatFunc& a, std::uint32_t max_degree) {
  std::vector<RatFunc> basis;
  for (std::uint32_t i = 0; i <= max_degree; ++i) basis.push_back(divided_power(a, i));
  auto x = solve_scalar(f, basis);
  if (!x) return std::nullopt;
  ChainCoefficients out{std::move(*x)};
  while (!out.coeffs.empty() && out.coeffs.back() == 0) out.coeffs.pop_back();
  return out;
}

std::optional<GridCoefficients> as_divided_grid(const RatFunc& f, const RatFunc& a, const RatFunc& b,
                                                std::uint32_t max_degree) {
  return solve_grid(f, a, b, max_degree, max_degree);
}

std::optional<ChainCoefficients> as_divided_powers(const RatFunc& f, const RatFunc& a, const Derivation& da,
                                                   std::uint32_t max_degree) {
  ChainCoefficients out;
  RatFunc rest = f;
  while (!rest.is_zero()) {
    auto top = top_derivative(rest, da, max_degree);
    if (!top || !top->second.is_constant()) return std::nullopt;
    const std::uint32_t i = top->first;
    const Rational c = top->second.constant_value();
    if (out.coeffs.size() <= i) out.coeffs.resize(i + 1, Rational(0));
    out.coeffs[i] += c;
    rest -= divided_power(a, i) * c;
  }
  return out;
}

std::optional<GridCoefficients> as_divided_grid(const RatFunc& f, const RatFunc& a, const RatFunc& b,
                                                const Derivation& da, const Derivation& db, std::uint32_t max_degree) {
  GridCoefficients out;
  RatFunc rest = f;
  while (!rest.is_zero()) {
    auto ta = top_derivative(rest, da, max_degree);
    if (!ta) return std::nullopt;
    auto tb = top_derivative(ta->second, db, max_degree);
    if (!tb || !tb->second.is_constant()) return std::nullopt;
    const Index2 ij{ta->first, tb->first};
    const Rational c = tb->second.constant_value();
    out.coeffs[ij] += c;
    if (out.coeffs[ij] == 0) out.coeffs.erase(ij);
    rest -= divided_power(a, ij.first) * divided_power(b, ij.second) * c;
  }
  return out;
}

ChainCoefficients express_via_chain(const RatFunc& b, const RatFunc& a, std::span<const Derivation> annihilators,
                                    const Derivation& shift, std::uint32_t s) {
  for (const auto& d : annihilators) {
    require(apply(d, a).is_zero(), "annihilator does not kill a");
    require(apply(d, b).is_zero(), "annihilator does not kill b");
  }
  require(apply(shift, a) == RatFunc::constant(a.nvars(), 1), "shift(a) != 1");

  const RatFunc target = apply(shift, b);
  auto betas = as_divided_powers(target, a, shift, s);
  if (!betas) throw Error(ErrorCode::NonRationalConstants, "shift(b) has no rational expansion in powers of a");

  // c = sum beta_i a^{i+1}/(i+1)! via formal integration of P(u) = sum beta_i u^i/i!.
  MultiPoly p(1);
  for (std::uint32_t i = 0; i < betas->coeffs.size(); ++i) p.add_term({i}, betas->coeffs[i] / factorial(i));
  const MultiPoly integral = formal_integrate(p, 0);
  const RatFunc c = substitute(integral, std::span(&a, 1));

  const RatFunc residual = b - c;
  if (!residual.is_constant())
    throw Error(ErrorCode::NonRationalConstants, "residual " + residual.to_string() + " is not a rational number");

  ChainCoefficients out;
  out.coeffs.push_back(residual.constant_value());
  for (const auto& beta : betas->coeffs) out.coeffs.push_back(beta);
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
  return out;
}

ChainCoefficients express_via_chain(const RatFunc& b, const RatFunc& a, const Derivation& d1,
                                    const Derivation& d2, const Derivation& d3, std::uint32_t s) {
  const Derivation annihilators[] = {d1, d2};
  return express_via_chain(b, a, annihilators, d3, s);
}

GridCoefficients express_via_grid(const RatFunc& c, const RatFunc& a, const RatFunc& b, const Derivation& d1,
                                  const Derivation& d2, const Derivation& d3, std::uint32_t m, std::uint32_t k) {
  const std::size_t n = a.nvars();
  const RatFunc one = RatFunc::constant(n, 1);
  require(apply(d1, a).is_zero() && apply(d1, b).is_zero(), "D1 must kill a and b");
  require(apply(d2, a) == one && apply(d2, b).is_zero(), "need D2(a) = 1, D2(b) = 0");
  require(apply(d3, a).is_zero() && apply(d3, b) == one, "need D3(a) = 0, D3(b) = 1");
  require(apply(d1, c).is_zero(), "D1(c) != 0");
  require(apply(bracket(d2, d3), c).is_zero(), "[D2, D3](c) != 0");

  const RatFunc f = apply(d2, c);
  const RatFunc g = apply(d3, c);
  auto fg = within(as_divided_grid(f, a, b, d2, d3, std::max(m, k)), m == 0 ? 0 : m - 1, k, m == 0);
  auto gg = within(as_divided_grid(g, a, b, d2, d3, std::max(m, k)), m, k == 0 ? 0 : k - 1, k == 0);
  if (!fg || !gg) throw Error(ErrorCode::NonRationalConstants, "derivatives of c have no rational grid expansion");

  const MultiPoly h = potential(grid_polynomial(*fg), grid_polynomial(*gg), 0, 1);
  const RatFunc ab[] = {a, b};
  const RatFunc residual = c - substitute(h, std::span<const RatFunc>(ab));
  if (!residual.is_constant())
    throw Error(ErrorCode::NonRationalConstants, "residual " + residual.to_string() + " is not a rational number");

  GridCoefficients out = grid_from_polynomial(h);
  if (residual.constant_value() != 0) out.coeffs[{0, 0}] = residual.constant_value();
  return out;
}

}  // namespace nilvf
