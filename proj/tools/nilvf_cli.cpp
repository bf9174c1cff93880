// nilvf: classify nilpotent Lie algebras of polynomial vector fields.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nilvf/parse.hpp"
#include "nilvf/report.hpp"

namespace {

using namespace nilvf;

struct FieldArgs {
  std::size_t nvars = 0;
  std::vector<std::string> fields;
};

void add_field_options(CLI::App* cmd, FieldArgs& args) {
  cmd->add_option("--nvars", args.nvars, "number of variables x1..xN")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--field", args.fields, "vector field, e.g. \"x3*d1 + d2\" (repeatable)")->required();
}

LieBasis parse_basis(const FieldArgs& args) {
  std::vector<Derivation> ds;
  for (const auto& f : args.fields) ds.push_back(parse_vector_field(f, args.nvars));
  return k_linear_reduce(ds, args.nvars);
}

int fail(const Error& e) {
  std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
  return exit_code(e.code());
}

int run_rank(const FieldArgs& args) {
  std::vector<Derivation> ds;
  for (const auto& f : args.fields) ds.push_back(parse_vector_field(f, args.nvars));
  std::cout << rank_over_R(ds) << "\n";
  return 0;
}

int run_center(const FieldArgs& args) {
  const LieBasis l = parse_basis(args);
  const Subspace z = center(structure_constants(l));
  std::cout << "dim " << z.dim() << "\n";
  for (const auto& d : elements(l, z)) std::cout << d.to_string() << "\n";
  return 0;
}

int run_nilpotency(const FieldArgs& args) {
  const LieBasis l = parse_basis(args);
  const CentralSeries s = lower_central_series(structure_constants(l));
  std::cout << "nilpotent " << (s.nilpotent ? "true" : "false") << "\n";
  if (s.nilpotent) std::cout << "class " << s.nilpotency_class << "\n";
  std::cout << "series";
  for (const auto& t : s.terms) std::cout << " " << t.dim();
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classification of nilpotent Lie algebras of vector fields of rank <= 3"};
  app.require_subcommand(1);

  FieldArgs classify_args;
  std::string json_path;
  auto* classify_cmd = app.add_subcommand("classify", "normal form and embedding into triangular vector fields");
  add_field_options(classify_cmd, classify_args);
  classify_cmd->add_option("--json", json_path, "also write the report to this file");

  std::size_t bracket_nvars = 0;
  std::string lhs, rhs;
  auto* bracket_cmd = app.add_subcommand("bracket", "Lie bracket of two vector fields");
  bracket_cmd->add_option("--nvars", bracket_nvars, "number of variables")->required()->check(CLI::PositiveNumber);
  bracket_cmd->add_option("lhs", lhs)->required();
  bracket_cmd->add_option("rhs", rhs)->required();

  FieldArgs rank_args, center_args, nil_args;
  auto* rank_cmd = app.add_subcommand("rank", "rank of the fields over K(x1..xN)");
  add_field_options(rank_cmd, rank_args);
  auto* center_cmd = app.add_subcommand("center", "center of the K-span of the fields");
  add_field_options(center_cmd, center_args);
  auto* nil_cmd = app.add_subcommand("nilpotency", "lower central series of the K-span of the fields");
  add_field_options(nil_cmd, nil_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*classify_cmd) {
      const Report r = run_classify(classify_args.fields, classify_args.nvars);
      const std::string text = dump(r.json);
      std::cout << text;
      if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!(out << text)) {
          std::cerr << "error: cannot write " << json_path << "\n";
          return 1;
        }
      }
      return r.exit_code;
    }
    if (*bracket_cmd) {
      const Derivation a = parse_vector_field(lhs, bracket_nvars);
      const Derivation b = parse_vector_field(rhs, bracket_nvars);
      std::cout << bracket(a, b).to_string() << "\n";
      return 0;
    }
    if (*rank_cmd) return run_rank(rank_args);
    if (*center_cmd) return run_center(center_args);
    if (*nil_cmd) return run_nilpotency(nil_args);
  } catch (const Error& e) {
    return fail(e);
  }
  return 1;
}
