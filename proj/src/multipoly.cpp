#include "nilvf/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "nilvf/error.hpp"

namespace nilvf {

namespace {

std::uint64_t degree_sum(const MultiPoly::Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

void check_index(const MultiPoly& p, std::size_t index) {
  if (index >= p.nvars()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "variable index " + std::to_string(index + 1) + " out of range for " +
                    std::to_string(p.nvars()) + " variables");
  }
}

MultiPoly::Exponent add_exponents(const MultiPoly::Exponent& a, const MultiPoly::Exponent& b) {
  MultiPoly::Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool divides(const MultiPoly::Exponent& d, const MultiPoly::Exponent& e) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

// r -= c * x^shift * q
void subtract_shifted(MultiPoly& r, const MultiPoly& q, const MultiPoly::Exponent& shift,
                      const Rational& c) {
  for (const auto& [e, qc] : q.terms()) r.add_term(add_exponents(e, shift), -c * qc);
}

}  // namespace

bool MultiPoly::GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = degree_sum(a);
  const auto db = degree_sum(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  MultiPoly p(nvars);
  check_index(p, index);
  Exponent e(nvars, 0);
  e[index] = power;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponent exponent, const Rational& c) {
  if (exponent.size() != nvars)
    throw Error(ErrorCode::DimensionMismatch, "exponent length differs from variable count");
  MultiPoly p(nvars);
  p.add_term(exponent, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_sum(terms_.begin()->first) == 0);
}

bool MultiPoly::is_one() const { return is_constant() && !is_zero() && terms_.begin()->second == 1; }

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

const MultiPoly::Exponent& MultiPoly::leading_exponent() const {
  if (terms_.empty()) throw Error(ErrorCode::Precondition, "leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorCode::Precondition, "leading term of zero polynomial");
  return terms_.begin()->second;
}

std::uint32_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : static_cast<std::uint32_t>(degree_sum(terms_.begin()->first));
}

std::uint32_t MultiPoly::degree_in(std::size_t index) const {
  check_index(*this, index);
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[index]);
  return d;
}

void MultiPoly::add_term(const Exponent& exponent, const Rational& c) {
  if (exponent.size() != nvars_)
    throw Error(ErrorCode::DimensionMismatch, "exponent length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (nvars_ != other.nvars_)
    throw Error(ErrorCode::DimensionMismatch, "polynomials over " + std::to_string(nvars_) +
                                                  " and " + std::to_string(other.nvars_) +
                                                  " variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(*this);
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

MultiPoly MultiPoly::pow(std::uint32_t e) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string monomial_string(const MultiPoly::Exponent& exponent) {
  std::string out;
  for (std::size_t i = 0; i < exponent.size(); ++i) {
    if (exponent[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i + 1);
    if (exponent[i] > 1) out += '^' + std::to_string(exponent[i]);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational a = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const std::string mono = monomial_string(e);
    if (mono.empty()) {
      os << a.get_str();
    } else if (a == 1) {
      os << mono;
    } else if (a.get_den() == 1) {
      os << a.get_str() << '*' << mono;
    } else {
      os << '(' << a.get_str() << ")*" << mono;
    }
  }
  return os.str();
}

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "divide_exact");
  if (q.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero polynomial");
  MultiPoly r = p;
  MultiPoly quotient(p.nvars());
  const auto& lq = q.leading_exponent();
  const Rational& lc = q.leading_coefficient();
  while (!r.is_zero()) {
    const auto lr = r.leading_exponent();
    if (!divides(lq, lr)) return std::nullopt;
    MultiPoly::Exponent shift(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) shift[i] = lr[i] - lq[i];
    const Rational c = r.leading_coefficient() / lc;
    quotient.add_term(shift, c);
    subtract_shifted(r, q, shift, c);
  }
  return quotient;
}

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_coefficient());
}

std::map<std::uint32_t, MultiPoly> coefficients_in(const MultiPoly& p, std::size_t index) {
  check_index(p, index);
  std::map<std::uint32_t, MultiPoly> out;
  for (const auto& [e, c] : p.terms()) {
    auto stripped = e;
    stripped[index] = 0;
    auto [it, _] = out.try_emplace(e[index], MultiPoly(p.nvars()));
    it->second.add_term(stripped, c);
  }
  return out;
}

namespace {

MultiPoly exact_quotient(const MultiPoly& p, const MultiPoly& q) {
  auto r = divide_exact(p, q);
  if (!r) throw Error(ErrorCode::Internal, "expected exact division failed");
  return std::move(*r);
}

MultiPoly gcd_nonzero(const MultiPoly& p, const MultiPoly& q);

// Monic gcd of the coefficients of p in x_index.
MultiPoly content_in(const MultiPoly& p, std::size_t index) {
  const auto coeffs = coefficients_in(p, index);
  MultiPoly g = coeffs.begin()->second;
  for (auto it = std::next(coeffs.begin()); it != coeffs.end(); ++it) {
    if (g.is_constant()) break;
    g = gcd_nonzero(g, it->second);
  }
  return g.is_constant() ? MultiPoly::constant(p.nvars(), 1) : monic(g);
}

MultiPoly primitive_part_in(const MultiPoly& p, std::size_t index) {
  return monic(exact_quotient(p, content_in(p, index)));
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t index) {
  const std::uint32_t db = b.degree_in(index);
  const MultiPoly lb = coefficients_in(b, index).rbegin()->second;
  MultiPoly r = a;
  while (!r.is_zero()) {
    const std::uint32_t dr = r.degree_in(index);
    if (dr < db) break;
    const MultiPoly lr = coefficients_in(r, index).rbegin()->second;
    r = lb * r - lr * MultiPoly::variable(r.nvars(), index, dr - db) * b;
  }
  return r;
}

using Univariate = std::vector<Rational>;

void trim(Univariate& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

// Image of p in Q[x_index] after fixing every other variable to point[i].
Univariate specialize(const MultiPoly& p, std::size_t index, const std::vector<Rational>& point) {
  Univariate u(p.degree_in(index) + 1);
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == index) continue;
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    u[e[index]] += t;
  }
  trim(u);
  return u;
}

std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      const Rational f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() - 1;
}

// True when a specialization keeping both leading coefficients proves that
// p and q share no factor involving x_index.
bool coprime_in(const MultiPoly& p, const MultiPoly& q, std::size_t index) {
  const std::size_t n = p.nvars();
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Rational> point(n);
    for (std::size_t i = 0; i < n; ++i) point[i] = Rational(static_cast<long>(3 + 7 * i + 11 * attempt), 1 + attempt);
    const Univariate a = specialize(p, index, point);
    const Univariate b = specialize(q, index, point);
    if (a.size() != p.degree_in(index) + 1u || b.size() != q.degree_in(index) + 1u) continue;
    return univariate_gcd_degree(a, b) == 0;
  }
  return false;
}

// Recursive primitive PRS on the shared variable of least degree.
MultiPoly gcd_nonzero(const MultiPoly& p, const MultiPoly& q) {
  const std::size_t n = p.nvars();
  if (p.is_constant() || q.is_constant()) return MultiPoly::constant(n, 1);
  if (auto r = divide_exact(p, q)) return monic(q);
  if (auto r = divide_exact(q, p)) return monic(p);

  // A variable present in only one input cannot occur in the gcd.
  for (std::size_t i = 0; i < n; ++i) {
    if (p.depends_on(i) && !q.depends_on(i)) return gcd_nonzero(content_in(p, i), q);
    if (q.depends_on(i) && !p.depends_on(i)) return gcd_nonzero(p, content_in(q, i));
  }
  std::size_t v = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.depends_on(i)) continue;
    if (v == n || std::max(p.degree_in(i), q.degree_in(i)) < std::max(p.degree_in(v), q.degree_in(v))) v = i;
  }

  const MultiPoly cp = content_in(p, v);
  const MultiPoly cq = content_in(q, v);
  const MultiPoly gc = gcd_nonzero(cp, cq);
  if (coprime_in(p, q, v)) return monic(gc);

  MultiPoly a = monic(exact_quotient(p, cp));
  MultiPoly b = monic(exact_quotient(q, cq));
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  for (;;) {
    MultiPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (!r.depends_on(v)) return monic(gc);
    a = std::move(b);
    b = primitive_part_in(r, v);
  }
  return monic(gc * b);
}

}  // namespace

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "gcd of mismatched polynomials");
  if (p.is_zero() && q.is_zero()) throw Error(ErrorCode::ZeroGcd, "gcd(0, 0) is undefined");
  if (p.is_zero()) return monic(q);
  if (q.is_zero()) return monic(p);
  return gcd_nonzero(p, q);
}

MultiPoly lcm(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::Precondition, "lcm of zero polynomial");
  return monic(exact_quotient(p * q, gcd(p, q)));
}

MultiPoly derivative(const MultiPoly& p, std::size_t index) {
  check_index(p, index);
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[index] == 0) continue;
    auto d = e;
    d[index] -= 1;
    out.add_term(d, c * e[index]);
  }
  return out;
}

MultiPoly formal_integrate(const MultiPoly& p, std::size_t index) {
  check_index(p, index);
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    auto d = e;
    d[index] += 1;
    out.add_term(d, c / Rational(d[index]));
  }
  return out;
}

MultiPoly potential(const MultiPoly& f, const MultiPoly& g, std::size_t u, std::size_t v) {
  if (f.nvars() != g.nvars()) throw Error(ErrorCode::DimensionMismatch, "potential");
  check_index(f, u);
  check_index(f, v);
  if (u == v) throw Error(ErrorCode::Precondition, "potential needs two distinct variables");
  if (derivative(f, v) != derivative(g, u))
    throw Error(ErrorCode::Incompatible, "field (f, g) is not closed: df/dv != dg/du");
  MultiPoly h = formal_integrate(f, u);
  const MultiPoly rest = g - derivative(h, v);  // independent of u by closedness
  h += formal_integrate(rest, v);
  h.add_term(MultiPoly::Exponent(f.nvars(), 0), -h.constant_term());
  return h;
}

MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images) {
  if (images.size() != p.nvars())
    throw Error(ErrorCode::DimensionMismatch, "substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw Error(ErrorCode::DimensionMismatch, "substitution images disagree");
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  MultiPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

}  // namespace nilvf
