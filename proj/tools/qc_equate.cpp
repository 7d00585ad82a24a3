#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qceq/euler.hpp"
#include "qceq/interp.hpp"
#include "qceq/json_io.hpp"
#include "qceq/rewrite.hpp"
#include "qceq/semantics.hpp"
#include "qceq/soundness.hpp"
#include "qceq/theories.hpp"

using namespace qceq;

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    try {
      return json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("stdin: ") + e.what());
    }
  }
  return read_json_file(path);
}

Circuit read_circuit(const std::string& path) { return circuit_from_json(read_input(path)); }

json nf_to_json(const NormalFormParams& p) { return json::array({p.beta0, p.beta1, p.beta2, p.beta3}); }

const std::vector<std::string> kTheories = {"QC", "QCprime", "QCugp", "QCancilla", "QCancillaprime"};

struct Common {
  std::string theory = "QC";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int samples = 100;
  int max_qubits = 5;
};

void add_theory(CLI::App* c, Common& o) {
  c->add_option("--theory", o.theory, "Equational theory")->check(CLI::IsMember(kTheories))->capture_default_str();
}
void add_tol(CLI::App* c, Common& o) { c->add_option("--tol", o.tol, "Numeric tolerance")->capture_default_str(); }
void add_sampling(CLI::App* c, Common& o) {
  c->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  c->add_option("--samples", o.samples, "Random draws per rule")->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--max-qubits", o.max_qubits, "Largest wire count for variable-arity rules")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
}

int cmd_eval(const std::string& file, const Common& o) {
  const Circuit c = read_circuit(file);
  const Matrix m = eval_matrix(c);
  emit({{"n_in", c.n_in},
        {"n_out", c.n_out},
        {"matrix", matrix_to_json(m)},
        {"isometry", is_isometry(m, o.tol)},
        {"unitary", is_unitary(m, o.tol)}});
  return kOk;
}

int cmd_equiv(const std::string& a, const std::string& b, bool up_to_phase, const Common& o) {
  const Circuit c1 = read_circuit(a), c2 = read_circuit(b);
  if (c1.n_in != c2.n_in || c1.n_out != c2.n_out)
    throw Error(ErrorCode::ArityMismatch, "circuits have different arities");
  const Matrix m1 = eval_matrix(c1), m2 = eval_matrix(c2);
  bool eq;
  double diff;
  json out;
  if (up_to_phase) {
    const cplx lam = phase_between(m1, m2);
    eq = equal_up_to_phase(m1, m2, o.tol);
    diff = max_abs_diff(m1, lam * m2);
    out["phase"] = std::arg(lam);
  } else {
    eq = equal_matrices(m1, m2, o.tol);
    diff = max_abs_diff(m1, m2);
  }
  out["equivalent"] = eq;
  out["up_to_phase"] = up_to_phase;
  out["max_abs_diff"] = diff;
  emit(out);
  return eq ? kOk : kFails;
}

int cmd_normalize(const std::string& file, const std::string& trace_out, const Common& o) {
  const Theory t = theory_from_name(o.theory);
  const Circuit c = read_circuit(file);
  const NormalizeResult r = normalize_1q(c, !trace_out.empty(), t);
  json out{{"beta", nf_to_json(r.params)}, {"circuit", circuit_to_json(nf_circuit(r.params))}};
  if (r.trace) {
    write_json_file(trace_out, derivation_to_json(*r.trace));
    out["trace"] = trace_out;
    out["steps"] = r.trace->steps.size();
  }
  emit(out);
  return kOk;
}

int cmd_synth1q(const std::string& file) {
  const json j = read_input(file);
  const Matrix u = matrix_from_json(j.is_object() && j.contains("matrix") ? j.at("matrix") : j);
  const NormalFormParams p = nf_from_unitary(u);
  emit({{"beta", nf_to_json(p)},
        {"circuit", circuit_to_json(nf_circuit(p))},
        {"max_abs_diff", max_abs_diff(nf_matrix(p), u)}});
  return kOk;
}

int cmd_expand(const std::string& file) {
  emit(circuit_to_json(expand_macros(read_circuit(file))));
  return kOk;
}

int cmd_verify_rules(bool lemmas, const Common& o) {
  SoundnessConfig cfg;
  cfg.samples = o.samples;
  cfg.max_qubits = o.max_qubits;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  cfg.lemmas = lemmas;
  const SoundnessReport rep = soundness_report(theory_from_name(o.theory), cfg);
  emit(rep.to_json());
  for (const auto& r : rep.rows)
    if (r.failures)
      std::cerr << r.rule << " (n=" << r.n << "): " << r.failures << "/" << r.samples << " instances unsound\n";
  return rep.pass ? kOk : kFails;
}

int cmd_replay(const std::string& file, bool allow_lemmas, const Common& o) {
  const Derivation d = derivation_from_json(read_input(file));
  ReplayOptions opts;
  opts.allow_lemmas = allow_lemmas;
  opts.tol = o.tol;
  try {
    const ReplayResult r = replay_checked(d, opts);
    emit({{"ok", true},
          {"theory", theory_name(d.theory)},
          {"proves", d.proves},
          {"steps", d.steps.size()},
          {"max_drift", r.max_drift},
          {"final", circuit_to_json(r.final_circuit)}});
    return kOk;
  } catch (const ReplayError& e) {
    std::cerr << e.what() << "\n";
    emit({{"ok", false},
          {"theory", theory_name(d.theory)},
          {"failed_step", e.step()},
          {"error", error_code_name(e.code())},
          {"message", e.what()}});
    return kInputError;
  }
}

int cmd_minimality(const std::string& axiom, const Common& o) {
  const Theory t = theory_from_name(o.theory);
  MinimalityConfig cfg;
  cfg.max_qubits = o.max_qubits;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  std::vector<std::string> axioms;
  if (axiom == "all") {
    for (const auto& id : list_rules(t)) axioms.push_back(id.name);
  } else {
    axioms.push_back(axiom);
  }
  json reports = json::array();
  bool pass = true;
  for (const auto& a : axioms) {
    const MinimalityReport rep = minimality_report(t, a, cfg);
    pass = pass && rep.pass;
    if (!rep.pass) std::cerr << a << ": FAIL\n";
    reports.push_back(rep.to_json());
  }
  emit(axiom == "all" ? json{{"theory", theory_name(t)}, {"reports", reports}, {"pass", pass}} : reports[0]);
  return pass ? kOk : kFails;
}

json signature_json(const RuleSignature& s) {
  json j{{"name", s.name}, {"params", s.params}, {"summary", s.summary}};
  if (s.variable_n)
    j["min_n"] = s.min_n;
  else
    j["n"] = s.n;
  return j;
}

int cmd_list_rules(bool all, const Common& o) {
  const Theory t = theory_from_name(o.theory);
  json axioms = json::array();
  for (const auto& id : list_rules(t)) axioms.push_back(signature_json(rule_signature(id.name)));
  json out{{"theory", theory_name(t)}, {"axioms", axioms}};
  if (all) {
    json defs = json::array(), lemmas = json::array();
    for (const auto& s : list_definitions()) defs.push_back(signature_json(s));
    for (const auto& s : list_lemmas()) lemmas.push_back(signature_json(s));
    out["definitions"] = defs;
    out["lemmas"] = lemmas;
  }
  emit(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuit equational theories: evaluation, rewriting and minimality checks", "qc-equate"};
  app.require_subcommand(1);
  Common o;
  std::string file, file2, trace_out, axiom = "all";
  bool up_to_phase = false, allow_lemmas = false, lemmas = false;

  auto* eval = app.add_subcommand("eval", "Print the matrix of a circuit");
  eval->add_option("circuit", file, "Circuit JSON file, or - for stdin")->required();
  add_tol(eval, o);

  auto* equiv = app.add_subcommand("equiv", "Compare the semantics of two circuits");
  equiv->add_option("a", file, "First circuit")->required();
  equiv->add_option("b", file2, "Second circuit")->required();
  equiv->add_flag("--up-to-phase", up_to_phase, "Ignore a global phase");
  add_tol(equiv, o);

  auto* normalize = app.add_subcommand("normalize", "Rewrite a one-wire circuit into normal form");
  normalize->add_option("circuit", file, "Circuit JSON file")->required();
  normalize->add_option("--trace", trace_out, "Write the derivation to this file");
  add_theory(normalize, o);

  auto* synth = app.add_subcommand("synth1q", "Normal form of a 2x2 unitary");
  synth->add_option("matrix", file, "Matrix JSON file (rows of [re, im] pairs)")->required();

  auto* expand = app.add_subcommand("expand", "Unfold RX, X, Z and multi-controlled gates");
  expand->add_option("circuit", file, "Circuit JSON file")->required();

  auto* verify = app.add_subcommand("verify-rules", "Check every rule of a theory on random instances");
  add_theory(verify, o);
  add_tol(verify, o);
  add_sampling(verify, o);
  verify->add_flag("--lemmas", lemmas, "Also check definitions and derived equations");

  auto* replay = app.add_subcommand("replay", "Replay a derivation trace");
  replay->add_option("trace", file, "Trace JSON file")->required();
  replay->add_flag("--allow-lemmas", allow_lemmas, "Accept derived equations as steps");
  add_tol(replay, o);

  auto* minimality = app.add_subcommand("minimality", "Check an axiom against its alternative interpretation");
  add_theory(minimality, o);
  add_sampling(minimality, o);
  minimality->add_option("--axiom", axiom, "Axiom name, or all")->capture_default_str();

  auto* list = app.add_subcommand("list-rules", "Print the rule catalog of a theory");
  add_theory(list, o);
  list->add_flag("--all", lemmas, "Include definitions and derived equations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (*eval) return cmd_eval(file, o);
    if (*equiv) return cmd_equiv(file, file2, up_to_phase, o);
    if (*normalize) return cmd_normalize(file, trace_out, o);
    if (*synth) return cmd_synth1q(file);
    if (*expand) return cmd_expand(file);
    if (*verify) return cmd_verify_rules(lemmas, o);
    if (*replay) return cmd_replay(file, allow_lemmas, o);
    if (*minimality) return cmd_minimality(axiom, o);
    if (*list) return cmd_list_rules(lemmas, o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
