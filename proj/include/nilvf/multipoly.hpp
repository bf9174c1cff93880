#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilvf/rational.hpp"

namespace nilvf {

/// Sparse polynomial in K[x1..xn] with exact rational coefficients.
///
/// Variables are addressed by 0-based index; x(i+1) is the printed name of
/// variable i. Terms are kept in graded lexicographic order (x1 > x2 > ...),
/// largest first, so the leading term is terms().begin(). No stored
/// coefficient is ever zero.
class MultiPoly {
 public:
  using Exponent = std::vector<std::uint32_t>;

  struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
  };

  using TermMap = std::map<Exponent, Rational, GrlexGreater>;

  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);
  static MultiPoly monomial(std::size_t nvars, Exponent exponent, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rational constant_term() const;

  /// Requires a nonzero polynomial.
  const Exponent& leading_exponent() const;
  const Rational& leading_coefficient() const;

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t index) const;
  bool depends_on(std::size_t index) const { return degree_in(index) > 0; }

  /// Accumulates c * x^exponent, dropping the term if it cancels.
  void add_term(const Exponent& exponent, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(std::uint32_t e) const;

  /// Canonical text, e.g. "(1/2)*x2^2 - 3*x1 + 1". Zero prints as "0".
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

/// Exact quotient p/q if q divides p, std::nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q);

/// Scales p so its leading coefficient is 1 (zero stays zero).
MultiPoly monic(const MultiPoly& p);

/// Monic greatest common divisor. Throws ZeroGcd if both are zero.
MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);

/// Monic least common multiple of two nonzero polynomials.
MultiPoly lcm(const MultiPoly& p, const MultiPoly& q);

MultiPoly derivative(const MultiPoly& p, std::size_t index);

/// Antiderivative in x_index with zero constant term in that variable.
MultiPoly formal_integrate(const MultiPoly& p, std::size_t index);

/// h with dh/dx_u = f and dh/dx_v = g, zero constant term. Throws
/// Incompatible when df/dx_v != dg/dx_u.
MultiPoly potential(const MultiPoly& f, const MultiPoly& g, std::size_t u, std::size_t v);

/// Coefficients of p viewed as a polynomial in x_index, keyed by degree.
std::map<std::uint32_t, MultiPoly> coefficients_in(const MultiPoly& p, std::size_t index);

/// Evaluates p at x_i := images[i]; all images share one variable count.
MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images);

std::string monomial_string(const MultiPoly::Exponent& exponent);

}  // namespace nilvf
