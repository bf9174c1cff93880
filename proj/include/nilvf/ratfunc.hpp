#pragma once

#include <span>
#include <string>

#include "nilvf/multipoly.hpp"

namespace nilvf {

/// Element of R = K(x1..xn): num/den with gcd(num, den) = 1 and den monic
/// under the global graded-lex order. Zero is 0/1.
class RatFunc {
 public:
  explicit RatFunc(std::size_t nvars = 0);
  /// Polynomial embedding p/1.
  explicit RatFunc(MultiPoly p);
  /// Normalizing constructor; throws ZeroDenominator when den is zero.
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc constant(std::size_t nvars, const Rational& c);
  static RatFunc variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  /// Value of a constant element; requires is_constant().
  Rational constant_value() const;

  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator*(RatFunc a, const Rational& c);
  friend RatFunc operator*(const Rational& c, RatFunc a) { return std::move(a) * c; }
  RatFunc operator-() const;

  RatFunc pow(std::uint32_t e) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "p" for polynomials, "(p)/(q)" otherwise.
  std::string to_string() const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

/// Builds the normalized quotient num/den.
RatFunc rat_normalize(const MultiPoly& num, const MultiPoly& den);

/// Exact partial derivative by the quotient rule.
RatFunc partial_derivative(const RatFunc& f, std::size_t index);

/// Evaluates the polynomial p at x_i := images[i].
RatFunc substitute(const MultiPoly& p, std::span<const RatFunc> images);
RatFunc substitute(const RatFunc& f, std::span<const MultiPoly> images);

}  // namespace nilvf
