#pragma once

#include <string>
#include <vector>

#include "qceq/circuit.hpp"

namespace qceq {

enum class Theory { QC, QCprime, QCugp, QCancilla, QCancillaprime };

const char* theory_name(Theory t);
Theory theory_from_name(const std::string& name);
std::vector<Theory> all_theories();

struct RuleId {
  Theory theory = Theory::QC;
  std::string name;
};

// Shape of a rule schema. `n` is the number of input wires of the left-hand side; when
// `variable_n` is set, n is free with n >= min_n.
struct RuleSignature {
  std::string name;
  int params = 0;
  int n = 0;
  bool variable_n = false;
  int min_n = 0;
  std::string summary;
};

struct RuleInstance {
  RuleId id;
  std::vector<double> params;
  int n = 0;
  Circuit lhs;
  Circuit rhs;
  // Set for the up-to-global-phase theory.
  bool up_to_phase = false;
};

// Axioms of a theory.
std::vector<RuleId> list_rules(Theory t);
bool theory_has_rule(Theory t, const std::string& name);
const RuleSignature& rule_signature(const std::string& name);
RuleInstance instantiate(const RuleId& id, const std::vector<double>& params, int n);
bool check_soundness(const RuleInstance& r, double tol);

// Macro unfoldings and swap naturality. Usable in any theory.
std::vector<RuleSignature> list_definitions();
bool is_definition(const std::string& name);
RuleInstance definition_instantiate(const std::string& name, const std::vector<double>& params, int n);

// Derived equations, checked numerically on instantiation by the test suite.
std::vector<RuleSignature> list_lemmas();
bool is_lemma(const std::string& name);
const RuleSignature& lemma_signature(const std::string& name);
RuleInstance lemma_instantiate(const std::string& name, const std::vector<double>& params, int n);

// Controlled-pattern used by the controlled-gate lemma family: '1', '0', '1', ...
std::string alternating_pattern(int controls);

}  // namespace qceq
