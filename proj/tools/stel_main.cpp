// Command-line front end: parse/print/size, normalization, the EL/ELneg/SEL
// consistency checkers, the SEL reduction with its model transformations,
// model evaluation and the seeded ontology generator.
//
// Exit codes: 0 success/consistent, 1 inconsistent (or model violates the
// ontology under `eval`), 2 unknown (search bound or budget exhausted),
// 64 usage error, 65 malformed input, 66 file I/O failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stel/stel.hpp"

namespace {

constexpr int kExitConsistent = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 66;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

struct CommonOpts {
  bool allow_reserved = false;
};

stel::Ontology load_ontology(const std::string& path, const CommonOpts& opts) {
  return stel::parse_ontology(slurp(path), stel::ParseOptions{opts.allow_reserved});
}

stel::Interpretation load_model(const std::string& path) {
  return stel::read_model(slurp(path));
}

void add_reserved_flag(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_flag("--allow-reserved", opts.allow_reserved,
                "accept machine-generated names containing \"__\"");
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    spill(*path, content);
  } else {
    std::cout << content;
  }
}

std::string sig_sidecar(const stel::DecoratedSig& sig) {
  std::ostringstream out;
  out << "real = " << sig.real_plus() << ' ' << sig.real_minus() << '\n';
  for (const auto& name : sig.base) {
    out << name << " = " << sig.plus(name) << ' ' << sig.minus(name) << '\n';
  }
  return out.str();
}

std::string name_map_sidecar(const stel::NameMap& names) {
  std::ostringstream out;
  for (const auto& [name, definition] : names.definitions) {
    out << name << " = " << stel::print_concept(definition) << '\n';
  }
  return out.str();
}

void print_violations(const stel::Verdict& verdict, const stel::Ontology& onto) {
  for (const auto& v : verdict.violations) {
    std::cout << "violated: " << v.axiom_index << " (" << stel::print_axiom(onto.axioms()[v.axiom_index])
              << ") cardinalities " << v.count_a << "/" << v.count_b << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"toolkit for EL, ELneg and Statistical EL ontologies"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string onto_path, model_path, second_path;
  std::optional<std::string> out_path, map_path, sig_path, emit_model_path;
  stel::SearchBudget budget;
  bool as_conditionals = false;

  auto* parse_cmd = app.add_subcommand("parse", "parse an ontology file and report on it");
  parse_cmd->add_option("file", onto_path, "ontology file")->required();
  add_reserved_flag(parse_cmd, opts);

  auto* print_cmd = app.add_subcommand("print", "reprint an ontology in canonical form");
  print_cmd->add_option("file", onto_path, "ontology file")->required();
  print_cmd->add_option("-o,--output", out_path, "output file (default stdout)");
  add_reserved_flag(print_cmd, opts);

  auto* size_cmd = app.add_subcommand("size", "ontology size under the counting convention");
  size_cmd->add_option("file", onto_path, "ontology file")->required();
  add_reserved_flag(size_cmd, opts);

  auto* normalize_cmd = app.add_subcommand("normalize", "rewrite an EL/ELneg ontology into normal form");
  normalize_cmd->add_option("file", onto_path, "ontology file")->required();
  normalize_cmd->add_option("-o,--output", out_path, "normal-form output (default stdout)");
  normalize_cmd->add_option("--map", map_path, "fresh-name definitions sidecar");
  add_reserved_flag(normalize_cmd, opts);

  auto* check_el = app.add_subcommand("check-el", "trivial consistency check for plain EL");
  check_el->add_option("file", onto_path, "ontology file")->required();
  check_el->add_option("--emit-model", emit_model_path, "write the one-point model");
  add_reserved_flag(check_el, opts);

  auto* check_elneg = app.add_subcommand("check-elneg", "decide ELneg consistency by type elimination");
  check_elneg->add_option("file", onto_path, "ontology file")->required();
  check_elneg->add_option("--emit-model", emit_model_path, "write the witness model when consistent");
  add_reserved_flag(check_elneg, opts);

  auto* check_sel = app.add_subcommand("check-sel", "bounded model search for SEL ontologies");
  check_sel->add_option("file", onto_path, "ontology file")->required();
  check_sel->add_option("--max-domain", budget.max_domain, "largest domain size to try")
      ->default_val(stel::SearchBudget{}.max_domain);
  check_sel->add_option("--nodes", budget.node_ceiling, "backtracking node ceiling")
      ->default_val(stel::SearchBudget{}.node_ceiling);
  double time_limit = 0;
  check_sel->add_option("--time-limit", time_limit, "wall-clock ceiling in seconds");
  check_sel->add_option("--emit-model", emit_model_path, "write the model when found");
  add_reserved_flag(check_sel, opts);

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce an ELneg ontology to a SEL ontology");
  reduce_cmd->add_option("file", onto_path, "ontology file")->required();
  reduce_cmd->add_option("-o,--output", out_path, "reduced ontology output (default stdout)");
  reduce_cmd->add_option("--sig", sig_path, "decorated-signature sidecar");
  reduce_cmd->add_flag("--as-conditionals", as_conditionals,
                       "emit translated GCIs as [1,1] conditionals");
  add_reserved_flag(reduce_cmd, opts);

  auto* lift_cmd = app.add_subcommand("lift-model", "duplicate a model of a normal-form ontology "
                                                    "into a model of its reduction");
  lift_cmd->add_option("model", model_path, "model file")->required();
  lift_cmd->add_option("ontology", onto_path, "normal-form ontology file")->required();
  lift_cmd->add_option("-o,--output", out_path, "lifted model output (default stdout)");
  add_reserved_flag(lift_cmd, opts);

  auto* project_cmd = app.add_subcommand("project-model", "restrict a model of the reduction back "
                                                          "to a model of the ontology");
  project_cmd->add_option("model", model_path, "model file (of the reduced ontology)")->required();
  project_cmd->add_option("ontology", onto_path, "normal-form ontology file")->required();
  project_cmd->add_option("-o,--output", out_path, "projected model output (default stdout)");
  add_reserved_flag(project_cmd, opts);

  auto* eval_cmd = app.add_subcommand("eval", "check a model file against an ontology file");
  eval_cmd->add_option("model", model_path, "model file")->required();
  eval_cmd->add_option("ontology", onto_path, "ontology file")->required();
  add_reserved_flag(eval_cmd, opts);

  stel::GenParams gen;
  std::string gen_fragment = "elneg";
  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded random ontology");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->default_val(0);
  gen_cmd->add_option("--concepts", gen.n_concepts, "concept-name pool size")->default_val(3);
  gen_cmd->add_option("--roles", gen.n_roles, "role-name pool size")->default_val(1);
  gen_cmd->add_option("--axioms", gen.n_axioms, "number of axioms")->default_val(4);
  gen_cmd->add_option("--depth", gen.max_depth, "maximum concept depth")->default_val(2);
  gen_cmd->add_option("--fragment", gen_fragment, "el or elneg")->default_val("elneg");
  gen_cmd->add_flag("--normal-form", gen.normal_form, "restrict to the four normal-form shapes");
  gen_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (parse_cmd->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    std::cout << "status: ok\n";
    std::cout << "axioms: " << onto.axioms().size() << "\n";
    std::cout << "fragment: " << stel::fragment_name(onto.fragment()) << "\n";
    std::cout << "size: " << stel::size_of(onto) << "\n";
    return kExitConsistent;
  }

  if (print_cmd->parsed()) {
    emit(out_path, stel::print_ontology(load_ontology(onto_path, opts)));
    return kExitConsistent;
  }

  if (size_cmd->parsed()) {
    std::cout << "size: " << stel::size_of(load_ontology(onto_path, opts)) << "\n";
    return kExitConsistent;
  }

  if (normalize_cmd->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    const stel::NormalizeResult result = stel::normalize(onto);
    emit(out_path, stel::print_ontology(result.ontology));
    if (map_path) spill(*map_path, name_map_sidecar(result.names));
    std::cout << "axioms-in: " << onto.axioms().size() << "\n";
    std::cout << "axioms-out: " << result.ontology.axioms().size() << "\n";
    std::cout << "fresh-names: " << result.names.definitions.size() << "\n";
    return kExitConsistent;
  }

  if (check_el->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    const stel::Interpretation model = stel::trivial_el_model(onto);
    if (emit_model_path) spill(*emit_model_path, stel::write_model(model));
    std::cout << "verdict: consistent\n";
    return kExitConsistent;
  }

  if (check_elneg->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    const stel::ElnegVerdict verdict = stel::decide_elneg(onto);
    if (!verdict.consistent()) {
      std::cout << "verdict: inconsistent\n";
      return kExitInconsistent;
    }
    std::cout << "verdict: consistent\n";
    std::cout << "witness-size: " << verdict.witness->size() << "\n";
    if (emit_model_path) spill(*emit_model_path, stel::write_model(*verdict.witness));
    return kExitConsistent;
  }

  if (check_sel->parsed()) {
    if (time_limit > 0) budget.time_ceiling_seconds = time_limit;
    const stel::Ontology onto = load_ontology(onto_path, opts);
    const stel::CheckSelResult result = stel::check_sel(onto, budget);
    std::cout << result.report;
    if (result.model && emit_model_path) spill(*emit_model_path, stel::write_model(*result.model));
    return result.exit_code == 0 ? kExitConsistent : kExitUnknown;
  }

  if (reduce_cmd->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    const stel::ReductionOutput result = stel::reduce(onto, as_conditionals);
    emit(out_path, stel::print_ontology(result.o_red));
    if (sig_path) spill(*sig_path, sig_sidecar(result.sig));
    std::cout << "axioms: " << result.o_red.axioms().size() << "\n";
    std::cout << "size: " << stel::size_of(result.o_red) << "\n";
    return kExitConsistent;
  }

  if (lift_cmd->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    if (!stel::is_normal_form(onto)) {
      std::cerr << "error: lift-model requires a normal-form ontology (run `normalize` first)\n";
      return kExitData;
    }
    const stel::DecoratedSig sig = stel::decorate_signature(stel::signature_of(onto).concepts);
    const stel::Interpretation lifted = stel::lift_model(load_model(model_path), onto, sig);
    emit(out_path, stel::write_model(lifted));
    std::cout << "verified: input model satisfies the ontology\n";
    std::cout << "verified: lifted model satisfies the reduction\n";
    std::cout << "domain-size: " << lifted.size() << "\n";
    return kExitConsistent;
  }

  if (project_cmd->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    if (!stel::is_normal_form(onto)) {
      std::cerr << "error: project-model requires a normal-form ontology (run `normalize` first)\n";
      return kExitData;
    }
    const stel::DecoratedSig sig = stel::decorate_signature(stel::signature_of(onto).concepts);
    const stel::Interpretation projected = stel::project_model(load_model(model_path), onto, sig);
    emit(out_path, stel::write_model(projected));
    std::cout << "verified: input model satisfies the reduction\n";
    std::cout << "verified: projected model satisfies the ontology\n";
    std::cout << "domain-size: " << projected.size() << "\n";
    return kExitConsistent;
  }

  if (eval_cmd->parsed()) {
    const stel::Ontology onto = load_ontology(onto_path, opts);
    const stel::Interpretation model = load_model(model_path);
    const stel::Verdict verdict = stel::satisfies_ontology(model, onto);
    std::cout << "verdict: " << (verdict.satisfied ? "satisfied" : "violated") << "\n";
    print_violations(verdict, onto);
    return verdict.satisfied ? kExitConsistent : kExitInconsistent;
  }

  if (gen_cmd->parsed()) {
    if (gen_fragment == "el") {
      gen.fragment = stel::Fragment::EL;
    } else if (gen_fragment == "elneg") {
      gen.fragment = stel::Fragment::ELneg;
    } else {
      std::cerr << "error: --fragment must be el or elneg\n";
      return kExitUsage;
    }
    emit(out_path, stel::print_ontology(stel::gen_random(gen)));
    return kExitConsistent;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const stel::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;  // EX_SOFTWARE
  }
}
