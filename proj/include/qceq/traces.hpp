#pragma once

#include <string>
#include <vector>

#include "qceq/rewrite.hpp"

namespace qceq {

struct ShippedTrace {
  std::string file;
  std::string claim;
  Derivation derivation;
  // Instance of `derivation.proves` whose two sides are the endpoints, in either order.
  std::vector<double> params;
  int n = -1;
};

// Every derivation shipped under traces/, built step by step. Each one records the equation
// it proves in `proves`, so replay refuses to cite it.
std::vector<ShippedTrace> build_traces();

// The equation a trace claims, instantiated at its recorded parameters.
RuleInstance claimed_equation(const ShippedTrace& t);
// True when the endpoints of the trace are the two sides of its claimed equation.
bool proves_claim(const ShippedTrace& t);

// Rules of d that are neither axioms of its theory nor definitions, sorted and deduplicated.
std::vector<std::string> cited_lemmas(const Derivation& d);

// Summary of a trace set: per trace the rules and lemmas it uses, lemmas with no trace of
// their own, and whether the citation graph is acyclic.
json traces_manifest(const std::vector<ShippedTrace>& traces);

}  // namespace qceq
