#include "nilvf/report.hpp"

#include "nilvf/parse.hpp"

namespace nilvf {

namespace {

Json strings(const std::vector<Derivation>& ds) {
  Json out = Json::array();
  for (const auto& d : ds) out.push_back(d.to_string());
  return out;
}

template <typename T, typename F>
Json optional_json(const std::optional<T>& v, F&& f) {
  return v ? Json(f(*v)) : Json(nullptr);
}

// Image in u_k of each field, through its coordinates in the spanning set.
std::vector<Derivation> images(const NormalFormReport& r, const std::vector<Derivation>& fields) {
  std::vector<Derivation> out;
  for (const auto& c : express_in_span(r.spanning, fields)) {
    if (!c) throw Error(ErrorCode::Internal, "input field outside the normal-form span");
    Derivation img(r.model_nvars);
    for (std::size_t i = 0; i < c->size(); ++i)
      if ((*c)[i] != 0) img += (*c)[i] * r.model[i];
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return 2;
    case ErrorCode::NotClosed: return 3;
    case ErrorCode::NotNilpotent: return 4;
    case ErrorCode::RankTooHigh: return 5;
    case ErrorCode::NonRationalConstants: return 6;
    default: return 1;
  }
}

Json report_json(const NormalFormReport& r, const std::vector<Derivation>& inputs) {
  const auto to_text = [](const auto& x) { return x.to_string(); };
  const Witnesses& w = r.witnesses;

  Json nf;
  nf["tag"] = std::string(to_string(r.tag));
  nf["n"] = optional_json(r.n, [](auto v) { return v; });
  nf["m"] = optional_json(r.m, [](auto v) { return v; });
  nf["witnesses"] = Json{{"a", optional_json(w.a, to_text)},
                         {"b", optional_json(w.b, to_text)},
                         {"D1", optional_json(w.d1, to_text)},
                         {"D2", optional_json(w.d2, to_text)},
                         {"D3", optional_json(w.d3, to_text)}};

  Json out;
  out["input"] = strings(inputs.empty() ? r.input.gens() : inputs);
  out["rank"] = r.rank;
  out["nilpotent"] = true;
  out["class"] = r.nilpotency_class;
  out["center_dim"] = r.center_dim;
  out["normal_form"] = std::move(nf);
  out["embedding"] = strings(inputs.empty() ? r.embedded : images(r, inputs));
  out["verified"] = Json{{"brackets", r.verified.brackets},
                         {"triangular", r.verified.triangular},
                         {"witnesses", r.verified.witnesses}};
  return out;
}

Json error_json(const Error& e) {
  Json err;
  err["code"] = std::string(to_string(e.code()));
  err["message"] = e.what();
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = p->line();
    err["column"] = p->column();
  }
  return Json{{"error", std::move(err)}};
}

Report run_classify(const std::vector<std::string>& fields, std::size_t nvars) {
  try {
    std::vector<Derivation> parsed;
    parsed.reserve(fields.size());
    for (const auto& f : fields) parsed.push_back(parse_vector_field(f, nvars));
    const NormalFormReport r = classify(parsed, nvars);
    return Report{0, report_json(r, parsed)};
  } catch (const Error& e) {
    return Report{exit_code(e.code()), error_json(e)};
  }
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace nilvf
