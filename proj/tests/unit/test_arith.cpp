#include <doctest.h>

#include "nilvf/error.hpp"
#include "nilvf/multipoly.hpp"
#include "nilvf/ratfunc.hpp"
#include "support/generators.hpp"

using namespace nilvf;
using nilvf::testing::Gen;

namespace {

MultiPoly x(std::size_t n, std::size_t i, std::uint32_t k = 1) { return MultiPoly::variable(n, i, k); }
MultiPoly c(std::size_t n, const Rational& q) { return MultiPoly::constant(n, q); }
RatFunc rx(std::size_t n, std::size_t i) { return RatFunc::variable(n, i); }
RatFunc rc(std::size_t n, const Rational& q) { return RatFunc::constant(n, q); }

// Value of p at an integer point, computed term by term.
Rational eval(const MultiPoly& p, const std::vector<Rational>& at) {
  Rational s = 0;
  for (const auto& [e, q] : p.terms()) {
    Rational t = q;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= at[i];
    s += t;
  }
  return s;
}

}  // namespace

TEST_CASE("polynomial ring operations") {
  const std::size_t n = 2;
  CHECK((x(n, 0) + c(n, 1)) + (-x(n, 0)) == c(n, 1));
  CHECK((x(n, 0) - x(n, 1)) * (x(n, 0) + x(n, 1)) == x(n, 0, 2) - x(n, 1, 2));
  CHECK((x(n, 0) * MultiPoly(n)).is_zero());
}

TEST_CASE("graded lex order and printing") {
  const std::size_t n = 2;
  const MultiPoly p = Rational(1, 2) * x(n, 1, 2) - 3 * x(n, 0) + c(n, 1);
  CHECK(p.to_string() == "(1/2)*x2^2 - 3*x1 + 1");
  CHECK(p.leading_exponent() == MultiPoly::Exponent{0, 2});
  CHECK((x(n, 0) * x(n, 1) + x(n, 0, 2)).to_string() == "x1^2 + x1*x2");
  CHECK(MultiPoly(n).to_string() == "0");
}

TEST_CASE("ring axioms on random polynomials") {
  Gen g(11);
  for (int t = 0; t < 200; ++t) {
    const MultiPoly p = g.poly(3, 3), q = g.poly(3, 3), r = g.poly(3, 3);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    const std::vector<Rational> at{2, -1, 3};
    CHECK(eval(p * q, at) == eval(p, at) * eval(q, at));
  }
}

TEST_CASE("exact division") {
  Gen g(12);
  for (int t = 0; t < 100; ++t) {
    const MultiPoly p = g.poly(3, 3), q = g.poly(3, 2);
    if (q.is_zero()) continue;
    auto d = divide_exact(p * q, q);
    REQUIRE(d);
    CHECK(*d == p);
  }
  CHECK_FALSE(divide_exact(x(2, 0) + c(2, 1), x(2, 0)));
}

TEST_CASE("gcd") {
  const std::size_t n = 2;
  CHECK(gcd(x(n, 0, 2) - x(n, 1, 2), x(n, 0) - x(n, 1)) == x(n, 0) - x(n, 1));
  CHECK(gcd(x(n, 0) * x(n, 1) + c(n, 3), c(n, 1)) == c(n, 1));
  CHECK(gcd(x(n, 0) * x(n, 1), x(n, 0, 2)) == x(n, 0));
  CHECK_THROWS_AS(gcd(MultiPoly(n), MultiPoly(n)), Error);

  Gen g(13);
  for (int t = 0; t < 60; ++t) {
    const MultiPoly p = g.poly(3, 2), q = g.poly(3, 2), f = g.poly(3, 2);
    if (p.is_zero() || q.is_zero() || f.is_zero()) continue;
    const MultiPoly h = gcd(p * f, q * f);
    // The common factor divides the gcd, and the gcd divides both inputs.
    CHECK(divide_exact(h, f));
    CHECK(divide_exact(p * f, h));
    CHECK(divide_exact(q * f, h));
    CHECK(h.leading_coefficient() == 1);
  }
}

TEST_CASE("rational function normal form") {
  const std::size_t n = 2;
  CHECK(RatFunc(x(n, 0, 2) - x(n, 1, 2), x(n, 0) - x(n, 1)) == RatFunc(x(n, 0) + x(n, 1)));
  CHECK(RatFunc(2 * x(n, 0), c(n, 2)) == RatFunc(x(n, 0)));
  const RatFunc z(MultiPoly(n), x(n, 0) + c(n, 1));
  CHECK(z.is_zero());
  CHECK(z.den() == c(n, 1));
  CHECK_THROWS_AS(RatFunc(x(n, 0), MultiPoly(n)), Error);

  const RatFunc r(2 * x(n, 0), 4 * x(n, 1) + c(n, 2));
  CHECK(r.den().leading_coefficient() == 1);
  CHECK(r == RatFunc(x(n, 0), 2 * x(n, 1) + c(n, 1)));
}

TEST_CASE("rational function field axioms") {
  Gen g(14);
  for (int t = 0; t < 100; ++t) {
    const RatFunc a = g.rat_func(2, 2), b = g.rat_func(2, 2), d = g.rat_func(2, 2);
    CHECK(a * (b + d) == a * b + a * d);
    CHECK((a + b) - b == a);
    if (!a.is_zero()) CHECK(a / a == rc(2, 1));
  }
}

TEST_CASE("partial derivatives") {
  const std::size_t n = 2;
  CHECK(partial_derivative(RatFunc(x(n, 0, 2) * x(n, 1)), 0) == RatFunc(2 * x(n, 0) * x(n, 1)));
  const RatFunc f = rx(n, 0) / (rx(n, 0) + rc(n, 1));
  CHECK(partial_derivative(f, 0) == rc(n, 1) / (rx(n, 0) + rc(n, 1)).pow(2));
  CHECK(partial_derivative(rx(n, 0), 1).is_zero());

  // Quotient rule written out on numerator and denominator.
  Gen g(15);
  for (int t = 0; t < 60; ++t) {
    const RatFunc r = g.rat_func(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
      const RatFunc p(r.num()), q(r.den());
      const RatFunc expected =
          (RatFunc(derivative(r.num(), i)) * q - p * RatFunc(derivative(r.den(), i))) / (q * q);
      CHECK(partial_derivative(r, i) == expected);
    }
  }
}

TEST_CASE("formal integration") {
  const std::size_t n = 3;
  CHECK(formal_integrate(x(n, 2), 2) == Rational(1, 2) * x(n, 2, 2));
  CHECK(formal_integrate(c(n, 1), 1) == x(n, 1));
  CHECK(formal_integrate(x(n, 1) * x(n, 2), 2) == Rational(1, 2) * x(n, 1) * x(n, 2, 2));
  Gen g(16);
  for (int t = 0; t < 100; ++t) {
    const MultiPoly p = g.poly(3, 4);
    for (std::size_t i = 0; i < 3; ++i) CHECK(derivative(formal_integrate(p, i), i) == p);
  }
}

TEST_CASE("potential") {
  const std::size_t n = 2;
  const MultiPoly u = x(n, 0), v = x(n, 1);
  CHECK(potential(v, u, 0, 1) == u * v);
  CHECK(potential(2 * u, 3 * v.pow(2), 0, 1) == u.pow(2) + v.pow(3));
  CHECK(potential(c(n, 1), MultiPoly(n), 0, 1) == u);
  try {
    potential(v, MultiPoly(n), 0, 1);
    FAIL("expected an incompatibility error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Incompatible);
  }
}

TEST_CASE("substitution") {
  const std::size_t n = 2;
  const MultiPoly p = x(n, 0, 2) + x(n, 1);
  const MultiPoly images[] = {x(n, 0) + x(n, 1), c(n, 3)};
  CHECK(substitute(p, images) == x(n, 0, 2) + 2 * x(n, 0) * x(n, 1) + x(n, 1, 2) + c(n, 3));
  const RatFunc rimages[] = {rx(n, 1), rc(n, 1) / rx(n, 1)};
  CHECK(substitute(p, rimages) == rx(n, 1).pow(2) + rc(n, 1) / rx(n, 1));
}
