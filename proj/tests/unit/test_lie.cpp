#include <doctest.h>

#include "nilvf/error.hpp"
#include "nilvf/lie.hpp"
#include "nilvf/parse.hpp"
#include "support/samples.hpp"

using namespace nilvf;

namespace {

std::vector<Derivation> fields(std::initializer_list<const char*> texts, std::size_t n = 3) {
  std::vector<Derivation> out;
  for (const char* t : texts) out.push_back(parse_vector_field(t, n));
  return out;
}

LieBasis basis(std::initializer_list<const char*> texts, std::size_t n = 3) {
  return LieBasis(fields(texts, n), n);
}

Subspace span_of(const LieBasis& l, std::initializer_list<const char*> texts) {
  std::vector<QVector> coords;
  for (const auto& d : fields(texts, l.nvars())) coords.push_back(*l.coordinates(d));
  return Subspace::span(l.dim(), coords);
}

std::vector<std::size_t> dims(const CentralSeries& s) {
  std::vector<std::size_t> out;
  for (const auto& t : s.terms) out.push_back(t.dim());
  return out;
}

}  // namespace

TEST_CASE("linear algebra over K") {
  const QMatrix m{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(rank(m, 3) == 2);
  const auto ker = kernel(m, 3);
  REQUIRE(ker.size() == 1);
  for (const auto& row : m) {
    Rational dot = 0;
    for (std::size_t i = 0; i < 3; ++i) dot += row[i] * ker[0][i];
    CHECK(dot == 0);
  }

  SpanBuilder sb(3);
  CHECK(sb.add({1, 0, 1}));
  CHECK_FALSE(sb.add({2, 0, 2}));
  CHECK(sb.contains({3, 0, 3}));
  CHECK_FALSE(sb.contains({0, 1, 0}));
}

TEST_CASE("solve_in_span flags every inconsistent target") {
  const QVector b0{1, 0, 0};
  const QVector basis[] = {b0};
  const QVector targets[] = {{0, 1, 0}, {0, 1, 0}, {2, 0, 0}, {0, 0, 1}};
  const auto sol = solve_in_span(basis, targets, 3);
  CHECK_FALSE(sol[0]);
  CHECK_FALSE(sol[1]);
  REQUIRE(sol[2]);
  CHECK((*sol[2])[0] == 2);
  CHECK_FALSE(sol[3]);
}

TEST_CASE("k_linear_reduce") {
  CHECK(k_linear_reduce(fields({"d1", "2*d1"}), 3).gens() == fields({"d1"}));
  CHECK(k_linear_reduce(fields({"d1", "d2"}), 3).gens() == fields({"d1", "d2"}));
  CHECK(k_linear_reduce(fields({"x1*d1", "x1*d1 + d2", "d2"}), 3).gens() == fields({"x1*d1", "x1*d1 + d2"}));
  CHECK(k_linear_reduce(std::vector<Derivation>{}, 3).dim() == 0);
  CHECK(k_linear_reduce(fields({"d1", "x1*d1/(x1+1)", "(1/(x1+1))*d1"}), 3).dim() == 2);
}

TEST_CASE("structure constants") {
  const LieBasis h = basis({"d1", "x3*d1 + d2", "d3"});
  const StructureTensor t = structure_constants(h);
  // [d3, x3 d1 + d2] = d1
  CHECK(t(2, 1, 0) == 1);
  CHECK(t(1, 2, 0) == -1);
  CHECK(t(0, 1, 0) == 0);
  CHECK_FALSE(t.is_abelian());

  try {
    structure_constants(basis({"d1", "x1*d2"}));
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosed);
  }
}

TEST_CASE("lower central series") {
  const CentralSeries h = lower_central_series(basis({"d1", "x3*d1 + d2", "d3"}));
  CHECK(h.nilpotent);
  CHECK(h.nilpotency_class == 2);
  CHECK(dims(h) == std::vector<std::size_t>{3, 1, 0});

  const CentralSeries a = lower_central_series(basis({"x1*d1", "x2*d2", "x3*d3"}));
  CHECK(a.nilpotent);
  CHECK(a.nilpotency_class == 1);

  const CentralSeries bad = lower_central_series(basis({"d1", "x1*d1"}, 1));
  CHECK_FALSE(bad.nilpotent);
  CHECK(bad.terms.back().dim() == 1);
}

TEST_CASE("center and centralizers") {
  const LieBasis h = basis({"d1", "x3*d1 + d2", "d3"});
  CHECK(center(h) == span_of(h, {"d1"}));

  const LieBasis a = basis({"x1*d1", "x2*d2", "x3*d3"});
  CHECK(center(a) == Subspace::whole(3));

  const LieBasis l1 = basis({"d3", "d1", "x3*d1", "d2", "x3*d2"});
  CHECK(center(l1) == span_of(l1, {"d1", "d2"}));

  const StructureTensor t = structure_constants(l1);
  CHECK(centralizer(t, span_of(l1, {"d3"})) == span_of(l1, {"d3", "d1", "d2"}));
  CHECK(central_modulo(t, Subspace(5)) == center(t));
  // L / <d1, d2> is abelian.
  CHECK(central_modulo(t, span_of(l1, {"d1", "d2"})) == Subspace::whole(5));
  CHECK(central_modulo(t, span_of(l1, {"d1"})) == span_of(l1, {"d1", "d2", "x3*d1"}));
}

TEST_CASE("rank over R") {
  CHECK(rank_over_R(fields({"d1", "x1*d1"})) == 1);
  CHECK(rank_over_R(fields({"x1*d1", "x2*d2", "x3*d3"})) == 3);
  CHECK(rank_over_R(fields({"d1", "d2", "x2*d1 - x1*d2"})) == 2);
  CHECK(rank_over_R(fields({"x2*d1 + x1*d2", "x2^2*d1 + x1*x2*d2", "d3"})) == 2);
  CHECK(rank_over_R(std::vector<Derivation>{}) == 0);
}

TEST_CASE("R-span intersected with L") {
  const LieBasis h = basis({"d1", "x3*d1 + d2", "d3"});
  CHECK(ideal_RI_cap_L(h, span_of(h, {"d1"})) == span_of(h, {"d1"}));

  const LieBasis l1 = basis({"d3", "d1", "x3*d1", "d2", "x3*d2"});
  CHECK(ideal_RI_cap_L(l1, span_of(l1, {"d1", "d2"})) == span_of(l1, {"d1", "x3*d1", "d2", "x3*d2"}));
  CHECK(ideal_RI_cap_L(l1, Subspace::whole(5)) == Subspace::whole(5));

  try {
    ideal_RI_cap_L(l1, span_of(l1, {"x3*d1"}));
    FAIL("expected a precondition violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("Jordan chains") {
  const LieBasis l1 = basis({"d3", "d1", "x3*d1", "d2", "x3*d2"});
  const Derivation d3 = parse_vector_field("d3", 3);

  const auto one = jordan_chains(l1, span_of(l1, {"d1", "x3*d1"}), d3);
  REQUIRE(one.size() == 1);
  CHECK(one[0].length() == 2);
  CHECK(one[0].fields.back() == bracket(d3, one[0].fields.front()));

  const auto two = jordan_chains(l1, span_of(l1, {"d1", "x3*d1", "d2", "x3*d2"}), d3);
  REQUIRE(two.size() == 2);
  CHECK(two[0].length() == 2);
  CHECK(two[1].length() == 2);

  const auto trivial = jordan_chains(l1, span_of(l1, {"d1"}), parse_vector_field("d2", 3));
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].length() == 1);

  const LieBasis bad = basis({"d1", "x1*d1"}, 1);
  try {
    jordan_chains(bad, Subspace::whole(2), parse_vector_field("x1*d1", 1));
    FAIL("expected NotNilpotentOperator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNilpotentOperator);
  }
}

TEST_CASE("K-linear expansion respects relations over K only") {
  // x1 d1 and d1 are R-dependent but K-independent.
  const auto ds = fields({"d1", "x1*d1", "2*d1 - x1*d1"});
  const QMatrix e = expand(ds);
  CHECK(rank(e, e.front().size()) == 2);
  const auto coords = express_in_span(std::span(ds).first(2), std::span(ds).subspan(2));
  REQUIRE(coords[0]);
  CHECK(*coords[0] == QVector{2, -1});
}
