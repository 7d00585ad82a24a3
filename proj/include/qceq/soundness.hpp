#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qceq/json_io.hpp"
#include "qceq/theories.hpp"

namespace qceq {

struct SoundnessConfig {
  int samples = 100;
  int max_qubits = 5;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  // Also check the definitions and the derived-equation catalog.
  bool lemmas = false;
};

struct SoundnessRow {
  std::string rule;
  // "axiom", "definition" or "lemma".
  std::string source;
  int n = 0;
  int samples = 0;
  int failures = 0;
  double max_error = 0.0;
};

struct SoundnessReport {
  Theory theory = Theory::QC;
  SoundnessConfig config;
  std::vector<SoundnessRow> rows;
  bool pass = true;

  json to_json() const;
};

// Checks every rule of the theory on random parameters. Rules with a free wire count are
// checked for each n from their minimum up to max_qubits.
SoundnessReport soundness_report(Theory t, const SoundnessConfig& cfg);

}  // namespace qceq
