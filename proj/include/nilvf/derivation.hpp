#pragma once

#include <span>
#include <string>
#include <vector>

#include "nilvf/ratfunc.hpp"

namespace nilvf {

/// Sum of coeffs[i] * d/dx(i+1) with coefficients in K(x1..xn).
class Derivation {
 public:
  explicit Derivation(std::size_t nvars = 0);
  explicit Derivation(std::vector<RatFunc> coeffs);

  /// The coordinate field d/dx(index+1).
  static Derivation partial(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return coeffs_.size(); }
  const std::vector<RatFunc>& coeffs() const { return coeffs_; }
  const RatFunc& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const;
  bool has_polynomial_coeffs() const;

  Derivation& operator+=(const Derivation& other);
  Derivation& operator-=(const Derivation& other);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Rational& c, const Derivation& d);
  Derivation operator-() const;

  friend bool operator==(const Derivation&, const Derivation&) = default;

  /// Canonical text in the parser's grammar, e.g. "x3*d1 + d2".
  std::string to_string() const;

 private:
  void check_compatible(const Derivation& other) const;

  std::vector<RatFunc> coeffs_;
};

/// D(r) = sum_i coeffs_i * dr/dx_i.
RatFunc apply(const Derivation& d, const RatFunc& r);

/// [D1, D2], coefficient-wise D1(coeffs2_j) - D2(coeffs1_j).
Derivation bracket(const Derivation& d1, const Derivation& d2);

/// r * D.
Derivation scale(const RatFunc& r, const Derivation& d);

/// Triangular polynomial automorphism x_i -> x_i + p_i(x_{i+1}, ..., x_n)
/// of K[x1..xn], stored with its inverse.
class Automorphism {
 public:
  /// Rejects images that are not of triangular shape with NotInvertible.
  explicit Automorphism(std::vector<MultiPoly> images);

  static Automorphism identity(std::size_t nvars);

  std::size_t nvars() const { return images_.size(); }
  const std::vector<MultiPoly>& images() const { return images_; }
  const std::vector<MultiPoly>& inverse_images() const { return inverse_; }

  /// phi(r): substitute x_i -> images_i.
  RatFunc operator()(const RatFunc& r) const;
  /// phi^{-1}(r).
  RatFunc inverse(const RatFunc& r) const;

 private:
  std::vector<MultiPoly> images_;
  std::vector<MultiPoly> inverse_;
};

/// phi o D o phi^{-1}; the result D' satisfies D'(x_j) = phi(D(phi^{-1}(x_j))).
Derivation pushforward(const Derivation& d, const Automorphism& phi);

}  // namespace nilvf
