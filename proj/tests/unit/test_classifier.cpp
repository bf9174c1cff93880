#include <doctest.h>

#include "nilvf/classifier.hpp"
#include "nilvf/error.hpp"
#include "nilvf/parse.hpp"
#include "support/generators.hpp"
#include "support/samples.hpp"

using namespace nilvf;
using namespace nilvf::testing;

namespace {

std::vector<Derivation> fields(std::initializer_list<const char*> texts, std::size_t n = 3) {
  std::vector<Derivation> out;
  for (const char* t : texts) out.push_back(parse_vector_field(t, n));
  return out;
}

NormalFormReport run(std::initializer_list<const char*> texts, std::size_t n = 3) {
  return classify(fields(texts, n), n);
}

ErrorCode failure(std::initializer_list<const char*> texts, std::size_t n = 3) {
  try {
    run(texts, n);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::vector<Derivation> in_model(std::initializer_list<const char*> texts, std::size_t n) { return fields(texts, n); }

}  // namespace

TEST_CASE("triangular membership") {
  CHECK(is_in_triangular(parse_vector_field("x3*d1 + d2", 3)));
  CHECK_FALSE(is_in_triangular(parse_vector_field("x1*d1", 3)));
  CHECK_FALSE(is_in_triangular(parse_vector_field("x3*d3", 3)));
  CHECK_FALSE(is_in_triangular(parse_vector_field("(1/(x3 + 1))*d1", 3)));
}

TEST_CASE("rank 1") {
  const auto r = run({"d1"});
  CHECK(r.tag == NormalFormTag::Rank1);
  CHECK(r.embedded == in_model({"d1"}, 1));

  CHECK(run({"x2*d1"}, 2).tag == NormalFormTag::Rank1);
  CHECK(failure({"d1", "x2*d1"}, 2) == ErrorCode::NonRationalConstants);
}

TEST_CASE("rank 2") {
  const auto k1 = run({"d1", "x2*d1", "d2"}, 2);
  CHECK(k1.tag == NormalFormTag::Rank2Chain);
  CHECK(k1.n == 1u);
  CHECK(*k1.witnesses.a == parse_scalar("x2", 2));
  CHECK(k1.embedded == in_model({"d1", "x2*d1", "d2"}, 2));

  const auto k0 = run({"d1", "d2"}, 2);
  CHECK(k0.tag == NormalFormTag::Rank2Chain);
  CHECK(k0.n == 0u);
  CHECK(k0.embedded == in_model({"d1", "d2"}, 2));

  const auto k2 = run({"d1", "x2*d1", "(1/2)*x2^2*d1", "d2"}, 2);
  CHECK(k2.n == 2u);
  CHECK(*k2.witnesses.a == parse_scalar("x2", 2));
}

TEST_CASE("dimension 3") {
  const auto a = run({"x1*d1", "x2*d2", "x3*d3"});
  CHECK(a.tag == NormalFormTag::Abelian3);
  CHECK(a.embedded == in_model({"d1", "d2", "d3"}, 3));

  const auto h = run({"d1", "x3*d1 + d2", "d3"});
  CHECK(h.tag == NormalFormTag::Heisenberg3);
  CHECK(h.embedded == in_model({"d1", "x3*d1 + d2", "d3"}, 3));
  CHECK(h.nilpotency_class == 2);
}

TEST_CASE("L1 and L2 fixtures") {
  const auto l1 = run({"d3", "d1", "x3*d1", "d2", "x3*d2"});
  CHECK(l1.tag == NormalFormTag::L1);
  CHECK(l1.n == 1u);
  CHECK(*l1.witnesses.a == parse_scalar("x3", 3));
  CHECK(l1.embedded == in_model({"d3", "d1", "x3*d1", "d2", "x3*d2"}, 3));

  const auto l2 = run({"d3", "d2", "d1", "x3*d1", "x2*d1", "x2*x3*d1"});
  CHECK(l2.tag == NormalFormTag::L2);
  CHECK(l2.n == 0u);
  CHECK(l2.m == 1u);
  CHECK(*l2.witnesses.a == parse_scalar("x3", 3));
  CHECK(*l2.witnesses.b == parse_scalar("x2", 3));
}

TEST_CASE("noncommuting D2 is corrected in the single-block case") {
  // [d3, x3 d1 + d2] = d1 != 0, so D2 has to absorb an integral of a.
  const auto r = run({"d1", "x3*d1 + d2", "d3", "(1/2)*x3^2*d1 + x3*d2"});
  CHECK(r.tag == NormalFormTag::L1);
  CHECK(r.n == 2u);
  CHECK(bracket(*r.witnesses.d3, *r.witnesses.d2).is_zero());
  CHECK(r.verified.all());
}

TEST_CASE("L2 with n = 1") {
  const auto r = run({"d3", "d2", "d1", "x2*d1", "x3*d2", "x3*d1"});
  CHECK(r.tag == NormalFormTag::L2);
  CHECK(r.n == 1u);
  CHECK(r.m == 1u);
  CHECK(r.verified.all());
}

TEST_CASE("pushforward of the L1 fixture") {
  const auto base = fields({"d3", "d1", "x3*d1", "d2", "x3*d2"});
  const Automorphism phi({MultiPoly::variable(3, 0) + MultiPoly::variable(3, 2, 2), MultiPoly::variable(3, 1),
                          MultiPoly::variable(3, 2)});
  const auto pushed = push_all(base, phi);
  const auto r = classify(pushed, 3);
  CHECK(r.tag == NormalFormTag::L1);
  CHECK(r.n == 1u);
  CHECK(r.input_tensor == structure_constants(LieBasis(base, 3)));
  CHECK(r.embedded == fields({"d3", "d1", "x3*d1", "d2", "x3*d2"}));
}

TEST_CASE("samples survive random coordinate changes and basis mixing") {
  Gen g(41);
  std::vector<Sample> samples{rank1_sample(), rank2_sample(0), rank2_sample(2), abelian3_sample(),
                              heisenberg3_sample(), l1_sample(1), l1_sample(2), l2_sample(0, 1),
                              l2_sample(1, 2), l2_sample(1, 0)};
  for (const auto& s : samples) {
    for (int t = 0; t < 3; ++t) {
      CAPTURE(s.name);
      const auto pushed = push_all(s.gens, g.triangular(3, 2));
      const auto r = classify(pushed, 3);
      CHECK(r.tag == s.tag);
      CHECK(r.n == s.n);
      CHECK(r.m == s.m);
      CHECK(verify(r).all());
      // Re-mixing can shear the chosen witnesses of L2, which moves the
      // containment parameters but never the type.
      const auto mixed = classify(g.mix(pushed), 3);
      CHECK(mixed.tag == s.tag);
      if (s.tag != NormalFormTag::L2) {
        CHECK(mixed.n == s.n);
        CHECK(mixed.m == s.m);
      }
      CHECK(verify(mixed).all());
    }
  }
}

TEST_CASE("failures") {
  CHECK(failure({"d1", "x1*d1"}, 1) == ErrorCode::NotNilpotent);
  CHECK(failure({"d1", "d2", "d3", "d4"}, 4) == ErrorCode::RankTooHigh);
  CHECK(failure({"d1", "x1*d2"}) == ErrorCode::NotClosed);
  CHECK(failure({"0"}) == ErrorCode::ZeroAlgebra);
  // x1 is a constant of the algebra, so the field of constants is bigger than K.
  CHECK(failure({"d2", "x1*d2", "d3", "x1*d3"}) == ErrorCode::NonRationalConstants);
}

TEST_CASE("rank-specific entry points check their rank") {
  const LieBasis h(fields({"d1", "x3*d1 + d2", "d3"}), 3);
  CHECK(classify_rank3(h).tag == NormalFormTag::Heisenberg3);
  try {
    classify_rank2(h);
    FAIL("expected a precondition violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("tampered reports fail verification") {
  auto r = run({"d3", "d1", "x3*d1", "d2", "x3*d2"});
  CHECK(verify(r).all());
  auto wrong_a = r;
  wrong_a.witnesses.a = parse_scalar("x2", 3);
  CHECK_FALSE(verify(wrong_a).witnesses);
  auto wrong_model = r;
  wrong_model.model[0] = parse_vector_field("x1*d3", 3);
  CHECK_FALSE(verify(wrong_model).triangular);
  CHECK_THROWS_AS(embed_into_triangular(wrong_model), Error);
}
