#include <doctest.h>

#include "nilvf/report.hpp"

using namespace nilvf;

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorCode::Parse) == 2);
  CHECK(exit_code(ErrorCode::NotClosed) == 3);
  CHECK(exit_code(ErrorCode::NotNilpotent) == 4);
  CHECK(exit_code(ErrorCode::RankTooHigh) == 5);
  CHECK(exit_code(ErrorCode::NonRationalConstants) == 6);
  CHECK(exit_code(ErrorCode::ZeroAlgebra) == 1);
}

TEST_CASE("classification report") {
  const Report r = run_classify({"x1*d1", "x2*d2", "x3*d3"}, 3);
  CHECK(r.exit_code == 0);
  const Json& j = r.json;
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"input", "rank", "nilpotent", "class", "center_dim", "normal_form",
                                         "embedding", "verified"});
  CHECK(j["normal_form"]["tag"] == "Abelian3");
  CHECK(j["normal_form"]["n"].is_null());
  CHECK(j["embedding"] == Json::array({"d1", "d2", "d3"}));
  CHECK(j["verified"] == Json{{"brackets", true}, {"triangular", true}, {"witnesses", true}});
  CHECK(j["rank"] == 3);
  CHECK(j["class"] == 1);
  CHECK(j["center_dim"] == 3);
}

TEST_CASE("inputs are echoed canonically, including redundant ones") {
  const Report r = run_classify({"d2 + x3*d1", "d1", "d3", "2*d1"}, 3);
  REQUIRE(r.exit_code == 0);
  CHECK(r.json["input"] == Json::array({"x3*d1 + d2", "d1", "d3", "2*d1"}));
  CHECK(r.json["normal_form"]["tag"] == "Heisenberg3");
  CHECK(r.json["embedding"].size() == 4);
  CHECK(r.json["embedding"][3] == "2*d1");
}

TEST_CASE("error reports") {
  const Report nn = run_classify({"d1", "x1*d1"}, 3);
  CHECK(nn.exit_code == 4);
  CHECK(nn.json["error"]["code"] == "NotNilpotent");

  const Report pe = run_classify({"d1 + * d2"}, 3);
  CHECK(pe.exit_code == 2);
  CHECK(pe.json["error"]["line"] == 1);
  CHECK(pe.json["error"]["column"] == 6);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> in{"d3", "d2", "d1", "x3*d1", "x2*d1", "x2*x3*d1"};
  CHECK(dump(run_classify(in, 3).json) == dump(run_classify(in, 3).json));
}
