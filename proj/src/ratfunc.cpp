#include "nilvf/ratfunc.hpp"

#include "nilvf/error.hpp"

namespace nilvf {

namespace {

MultiPoly quotient(const MultiPoly& p, const MultiPoly& q) {
  auto r = divide_exact(p, q);
  if (!r) throw Error(ErrorCode::Internal, "rational function normalization lost exactness");
  return std::move(*r);
}

}  // namespace

RatFunc::RatFunc(std::size_t nvars) : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}

RatFunc::RatFunc(MultiPoly p) : num_(std::move(p)), den_(MultiPoly::constant(num_.nvars(), 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars())
    throw Error(ErrorCode::DimensionMismatch, "numerator and denominator variable counts differ");
  if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.nvars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    const MultiPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = quotient(num_, g);
      den_ = quotient(den_, g);
    }
  }
  const Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ *= Rational(1 / lc);
    den_ *= Rational(1 / lc);
  }
}

RatFunc RatFunc::constant(std::size_t nvars, const Rational& c) {
  return RatFunc(MultiPoly::constant(nvars, c));
}

RatFunc RatFunc::variable(std::size_t nvars, std::size_t index) {
  return RatFunc(MultiPoly::variable(nvars, index));
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw Error(ErrorCode::Precondition, "not a constant: " + to_string());
  return num_.constant_term();
}

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (den_.is_one() && other.den_.is_one()) {
    num_ += other.num_;
    return *this;
  }
  if (den_ == other.den_) return *this = RatFunc(num_ + other.num_, den_);
  return *this = RatFunc(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  if (den_.is_one() && other.den_.is_one()) {
    num_ *= other.num_;
    return *this;
  }
  return *this = RatFunc(num_ * other.num_, den_ * other.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& other) {
  if (other.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero rational function");
  return *this = RatFunc(num_ * other.den_, den_ * other.num_);
}

RatFunc operator*(RatFunc a, const Rational& c) {
  a.num_ *= c;
  if (a.num_.is_zero()) a.den_ = MultiPoly::constant(a.nvars(), 1);
  return a;
}

RatFunc RatFunc::operator-() const {
  RatFunc out(*this);
  out.num_ = -out.num_;
  return out;
}

RatFunc RatFunc::pow(std::uint32_t e) const {
  RatFunc out(*this);
  out.num_ = num_.pow(e);
  out.den_ = den_.pow(e);  // coprimality and monic leading term survive powers
  return out;
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc rat_normalize(const MultiPoly& num, const MultiPoly& den) { return RatFunc(num, den); }

RatFunc partial_derivative(const RatFunc& f, std::size_t index) {
  if (f.is_polynomial()) return RatFunc(derivative(f.num(), index));
  return RatFunc(derivative(f.num(), index) * f.den() - f.num() * derivative(f.den(), index),
                 f.den() * f.den());
}

RatFunc substitute(const MultiPoly& p, std::span<const RatFunc> images) {
  if (images.size() != p.nvars())
    throw Error(ErrorCode::DimensionMismatch, "substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  RatFunc out(target);
  for (const auto& [e, c] : p.terms()) {
    RatFunc term = RatFunc::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= images[i].pow(e[i]);
    out += term;
  }
  return out;
}

RatFunc substitute(const RatFunc& f, std::span<const MultiPoly> images) {
  MultiPoly num = substitute(f.num(), images);
  if (f.is_polynomial()) return RatFunc(std::move(num));
  return RatFunc(std::move(num), substitute(f.den(), images));
}

}  // namespace nilvf
