#include "nilvf/derivation.hpp"

#include "nilvf/error.hpp"

namespace nilvf {

Derivation::Derivation(std::size_t nvars) : coeffs_(nvars, RatFunc(nvars)) {}

Derivation::Derivation(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c.nvars() != coeffs_.size())
      throw Error(ErrorCode::DimensionMismatch, "derivation coefficient over wrong variable count");
}

Derivation Derivation::partial(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorCode::IndexOutOfRange, "partial derivative index out of range");
  Derivation d(nvars);
  d.coeffs_[index] = RatFunc::constant(nvars, 1);
  return d;
}

bool Derivation::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool Derivation::has_polynomial_coeffs() const {
  for (const auto& c : coeffs_)
    if (!c.is_polynomial()) return false;
  return true;
}

void Derivation::check_compatible(const Derivation& other) const {
  if (nvars() != other.nvars())
    throw Error(ErrorCode::DimensionMismatch, "derivations over " + std::to_string(nvars()) +
                                                  " and " + std::to_string(other.nvars()) +
                                                  " variables");
}

Derivation& Derivation::operator+=(const Derivation& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Derivation operator*(const Rational& c, const Derivation& d) {
  Derivation out(d);
  for (auto& x : out.coeffs_) x = x * c;
  return out;
}

Derivation Derivation::operator-() const { return Rational(-1) * *this; }

std::string Derivation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const RatFunc& c = coeffs_[i];
    if (c.is_zero()) continue;
    const std::string dvar = "d" + std::to_string(i + 1);
    std::string term;
    bool negative = false;
    if (c.is_polynomial() && c.num().size() == 1) {
      const auto& [e, q] = *c.num().terms().begin();
      negative = q < 0;
      const Rational a = abs(q);
      const std::string mono = monomial_string(e);
      if (a != 1) term += a.get_den() == 1 ? a.get_str() : "(" + a.get_str() + ")";
      if (!mono.empty()) term += (term.empty() ? "" : "*") + mono;
      term += (term.empty() ? "" : "*") + dvar;
    } else if (c.is_polynomial()) {
      term = "(" + c.num().to_string() + ")*" + dvar;
    } else {
      term = "(" + c.num().to_string() + ")/(" + c.den().to_string() + ")*" + dvar;
    }
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

RatFunc apply(const Derivation& d, const RatFunc& r) {
  if (d.nvars() != r.nvars())
    throw Error(ErrorCode::DimensionMismatch, "derivation and function over different variables");
  RatFunc out(r.nvars());
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    if (d[i].is_zero()) continue;
    out += d[i] * partial_derivative(r, i);
  }
  return out;
}

Derivation bracket(const Derivation& d1, const Derivation& d2) {
  if (d1.nvars() != d2.nvars())
    throw Error(ErrorCode::DimensionMismatch, "bracket of derivations over different variables");
  std::vector<RatFunc> coeffs;
  coeffs.reserve(d1.nvars());
  for (std::size_t j = 0; j < d1.nvars(); ++j) coeffs.push_back(apply(d1, d2[j]) - apply(d2, d1[j]));
  return Derivation(std::move(coeffs));
}

Derivation scale(const RatFunc& r, const Derivation& d) {
  if (d.nvars() != r.nvars())
    throw Error(ErrorCode::DimensionMismatch, "scalar and derivation over different variables");
  std::vector<RatFunc> coeffs;
  coeffs.reserve(d.nvars());
  for (const auto& c : d.coeffs()) coeffs.push_back(r * c);
  return Derivation(std::move(coeffs));
}

Automorphism::Automorphism(std::vector<MultiPoly> images) : images_(std::move(images)) {
  const std::size_t n = images_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (images_[i].nvars() != n)
      throw Error(ErrorCode::DimensionMismatch, "automorphism image over wrong variable count");
    const MultiPoly shift = images_[i] - MultiPoly::variable(n, i);
    for (std::size_t j = 0; j <= i; ++j)
      if (shift.depends_on(j))
        throw Error(ErrorCode::NotInvertible,
                    "image of x" + std::to_string(i + 1) +
                        " is not x" + std::to_string(i + 1) + " plus a polynomial in later variables");
  }
  // Back-substitution: x_i = y_i - p_i(x_{i+1}, ..., x_n) with later x_j already inverted.
  inverse_.assign(n, MultiPoly(n));
  for (std::size_t k = n; k-- > 0;) {
    const MultiPoly shift = images_[k] - MultiPoly::variable(n, k);
    std::vector<MultiPoly> sub;
    sub.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
      sub.push_back(j > k ? inverse_[j] : MultiPoly::variable(n, j));
    inverse_[k] = MultiPoly::variable(n, k) - substitute(shift, sub);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (substitute(images_[i], inverse_) != MultiPoly::variable(n, i) ||
        substitute(inverse_[i], images_) != MultiPoly::variable(n, i))
      throw Error(ErrorCode::Internal, "triangular inverse failed to round-trip");
  }
}

Automorphism Automorphism::identity(std::size_t nvars) {
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < nvars; ++i) images.push_back(MultiPoly::variable(nvars, i));
  return Automorphism(std::move(images));
}

RatFunc Automorphism::operator()(const RatFunc& r) const { return substitute(r, images_); }

RatFunc Automorphism::inverse(const RatFunc& r) const { return substitute(r, inverse_); }

Derivation pushforward(const Derivation& d, const Automorphism& phi) {
  if (d.nvars() != phi.nvars())
    throw Error(ErrorCode::DimensionMismatch, "automorphism and derivation over different variables");
  std::vector<RatFunc> coeffs;
  coeffs.reserve(d.nvars());
  for (std::size_t j = 0; j < d.nvars(); ++j)
    coeffs.push_back(phi(apply(d, RatFunc(phi.inverse_images()[j]))));
  return Derivation(std::move(coeffs));
}

}  // namespace nilvf
