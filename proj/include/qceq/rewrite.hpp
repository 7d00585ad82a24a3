#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qceq/euler.hpp"
#include "qceq/json_io.hpp"
#include "qceq/theories.hpp"

namespace qceq {

enum class Direction { LR, RL };

const char* direction_name(Direction d);
Direction direction_from_name(const std::string& s);

// Where a rule applies. `gates` are indices into the circuit's gate list. `wire_map[i]` is
// the position of rule input i in the running wire list just before the rewritten block,
// i.e. after the gates that precede the block and the unselected gates that can be moved
// ahead of it. A step whose source side has no gates is placed by `at`, a gate index.
struct Site {
  std::vector<int> gates;
  std::vector<int> wire_map;
  int at = -1;
};

struct Step {
  std::string rule;
  Direction direction = Direction::LR;
  std::vector<double> params;
  int n = -1;
  Site site;
};

struct Derivation {
  Theory theory = Theory::QC;
  Circuit initial;
  std::vector<Step> steps;
  // When present, replay checks that the result is deformation-equal to it.
  std::optional<Circuit> final_circuit;
  // Name of the equation the derivation establishes; it may not be cited by its own steps.
  std::string proves;
  std::vector<std::string> exclude;
};

struct ReplayOptions {
  bool allow_lemmas = false;
  bool safety = true;
  double tol = 1e-9;
  std::vector<std::string> exclude;
};

// Raised by replay; carries the index of the failing step.
class ReplayError : public Error {
public:
  ReplayError(ErrorCode code, std::size_t step, const std::string& what)
      : Error(code, "step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

// Resolves a step's rule: definitions always, axioms of the theory, then lemmas when allowed.
RuleInstance resolve_rule(const Step& s, Theory theory, const ReplayOptions& opts);

// Replaces the `from` side at the site by `to`. Throws NoMatch or IllegalSite.
// `landing`, when given, receives the site of the inserted block in the result, which is
// where the reverse rewrite applies.
Circuit rewrite_at(const Circuit& c, const Circuit& from, const Circuit& to, const Site& site,
                   Site* landing = nullptr);

struct StepResult {
  Circuit circuit;
  double drift = 0.0;
  Site landing;
};

StepResult apply_step_checked(const Circuit& c, const Step& s, Theory theory, const ReplayOptions& opts);
Circuit apply_step(const Circuit& c, const Step& s, Theory theory = Theory::QC, const ReplayOptions& opts = {});

struct ReplayResult {
  Circuit final_circuit;
  double max_drift = 0.0;
};

ReplayResult replay_checked(const Derivation& d, const ReplayOptions& opts);
Circuit replay(const Derivation& d, const ReplayOptions& opts = {});

// The same equation read backwards: starts at the result of `d` and ends at d.initial.
// Sites are moved through the canonical order. On several wires a reversed step can need a
// cut between gates of different wires that no gate index expresses; such derivations raise
// ReplayError. Derivations that never use a second wire always invert.
Derivation invert(const Derivation& d, const ReplayOptions& opts = {});

json step_to_json(const Step& s);
Step step_from_json(const json& j);
json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const json& j);

// Applies steps one at a time and records them.
class Rewriter {
public:
  Rewriter(Theory theory, Circuit initial, ReplayOptions opts = {});

  const Circuit& circuit() const { return current_; }
  const std::vector<Step>& steps() const { return steps_; }
  double max_drift() const { return max_drift_; }

  void apply(const Step& s);
  void apply(const std::string& rule, Direction d, std::vector<double> params, int n, std::vector<int> gates,
             std::vector<int> wire_map);
  // For steps whose source side has no gates.
  void insert(const std::string& rule, Direction d, std::vector<double> params, int n, int at,
              std::vector<int> wire_map);

  Derivation derivation(const std::string& proves = "") const;

private:
  Theory theory_;
  Circuit initial_;
  Circuit current_;
  ReplayOptions opts_;
  std::vector<Step> steps_;
  double max_drift_ = 0.0;
  Matrix cache_;
};

// Candidate sites for a rule side inside a circuit: contiguous windows of the gate list
// tried against every injective wire map. Best effort, no search over reorderings.
std::vector<Site> find_sites(const RuleInstance& r, Direction d, const Circuit& c);

struct NormalizeResult {
  NormalFormParams params;
  std::optional<Derivation> trace;
};

// Rewrites a one-wire circuit into normal form using the axioms of `theory` (QC or QCprime)
// plus derived lemmas. The result lists its gates as P RX P GPHASE.
NormalizeResult normalize_1q(const Circuit& c, bool emit_trace = false, Theory theory = Theory::QC);
// A derivation of lhs = rhs for one-wire circuits with equal semantics: lhs is normalized,
// then the normalization of rhs is run backwards. Throws NoMatch when the normal forms differ.
Derivation derive_equal_1q(const Circuit& lhs, const Circuit& rhs, Theory theory = Theory::QC);
bool decide_equiv_1q(const Circuit& c1, const Circuit& c2);
bool nf_params_equal(const NormalFormParams& a, const NormalFormParams& b, double tol);

}  // namespace qceq
