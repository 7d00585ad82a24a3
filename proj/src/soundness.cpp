#include "qceq/soundness.hpp"

#include <algorithm>

#include "qceq/random.hpp"
#include "qceq/semantics.hpp"

namespace qceq {

namespace {

double instance_error(const RuleInstance& r) {
  const Matrix a = eval_matrix(r.lhs), b = eval_matrix(r.rhs);
  if (!r.up_to_phase) return max_abs_diff(a, b);
  return max_abs_diff(a, phase_between(a, b) * b);
}

template <class Make>
void check_rule(SoundnessReport& rep, Rng& rng, const RuleSignature& sig, const std::string& source, Make make) {
  const auto& cfg = rep.config;
  const int lo = sig.variable_n ? sig.min_n : sig.n;
  const int hi = sig.variable_n ? std::max(lo, cfg.max_qubits) : sig.n;
  for (int n = lo; n <= hi; ++n) {
    SoundnessRow row{sig.name, source, n, 0, 0, 0.0};
    for (int k = 0; k < cfg.samples; ++k) {
      const RuleInstance r = make(random_params(rng, sig.params), n);
      ++row.samples;
      const bool ok = check_soundness(r, cfg.tol);
      row.max_error = std::max(row.max_error, instance_error(r));
      if (!ok) ++row.failures;
    }
    if (row.failures) rep.pass = false;
    rep.rows.push_back(row);
  }
}

}  // namespace

SoundnessReport soundness_report(Theory t, const SoundnessConfig& cfg) {
  SoundnessReport rep;
  rep.theory = t;
  rep.config = cfg;
  Rng rng(cfg.seed);
  for (const auto& id : list_rules(t))
    check_rule(rep, rng, rule_signature(id.name), "axiom",
               [&](const std::vector<double>& p, int n) { return instantiate(id, p, n); });
  if (cfg.lemmas) {
    for (const auto& sig : list_definitions())
      check_rule(rep, rng, sig, "definition",
                 [&](const std::vector<double>& p, int n) { return definition_instantiate(sig.name, p, n); });
    for (const auto& sig : list_lemmas())
      check_rule(rep, rng, sig, "lemma",
                 [&](const std::vector<double>& p, int n) { return lemma_instantiate(sig.name, p, n); });
  }
  return rep;
}

json SoundnessReport::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows)
    rows_j.push_back({{"rule", r.rule},
                      {"source", r.source},
                      {"n", r.n},
                      {"samples", r.samples},
                      {"failures", r.failures},
                      {"max_error", r.max_error}});
  return json{{"theory", theory_name(theory)},
              {"samples", config.samples},
              {"max_qubits", config.max_qubits},
              {"tol", config.tol},
              {"seed", config.seed},
              {"lemmas", config.lemmas},
              {"rows", rows_j},
              {"pass", pass}};
}

}  // namespace qceq
