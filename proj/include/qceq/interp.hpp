#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qceq/json_io.hpp"
#include "qceq/theories.hpp"

namespace qceq {

enum class InterpKind { RealMod2Pi, RealModHalfPi, Parity, Indicator, SmallMatrix };

const char* interp_kind_name(InterpKind k);

struct InterpValue {
  InterpKind kind = InterpKind::Indicator;
  double value = 0.0;
  Matrix matrix;
};

bool interp_equal(const InterpValue& a, const InterpValue& b, double tol = 1e-9);
json interp_to_json(const InterpValue& v);

// Determinant interpretation at level k, in [0, 2pi).
double interp_k(const Circuit& c, int k);

// Counter-interpretation named after the axiom it refutes: S2PI, SPLUS, H2, P0, C, B, CZ, EH.
// `psi` selects the phase tracked by SPLUS.
InterpValue interp_axiom(const std::string& name, const Circuit& c, double psi = 0.0);
std::vector<std::string> counter_interpretations();
// Largest arity on which the interpretation is claimed sound for the other axioms; -1 means every arity.
int interp_qubit_bound(const std::string& name);

// Phase gates of a one-wire circuit grouped by sign constraints. Classes are indexed from 0;
// `paired` lists classes whose gates must take opposite signs.
struct SignClasses {
  Circuit expanded;
  std::vector<int> p_gates;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;
  std::vector<std::pair<int, int>> paired;
};

SignClasses sign_classes(const Circuit& c);
// Checks every pairwise diagonal / anti-diagonal constraint directly.
bool valid_sign_assignment(const SignClasses& sc, const std::vector<int>& signs);
// All valid assignments' signed phase sums, reduced mod pi/2, sorted and deduplicated.
std::vector<double> interp_E_values(const Circuit& c);
bool value_sets_equal(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-9);

// sum s'_i b_i(alpha) - sum s_i alpha_i.
double f_gap(const std::array<int, 3>& s, const std::array<int, 3>& sp, double a1, double a2, double a3);

struct MinimalityConfig {
  int max_qubits = 5;
  int samples = 100;
  std::uint64_t seed = 0;
};

struct MinimalityRow {
  std::string rule;
  int arity = 0;
  bool in_bound = true;
  bool target = false;
  int instances = 0;
  int unsound = 0;
};

struct MinimalityReport {
  Theory theory = Theory::QC;
  std::string axiom;
  std::string interpretation;
  int bound = -1;
  MinimalityConfig config;
  double psi = 0.0;
  std::vector<MinimalityRow> rows;
  bool pass = false;

  json to_json() const;
};

// Axioms: S2PI, SPLUS, H2, P0, C, B, CZ, EH (their counter-interpretations), E (sign-assignment
// value sets) and I (determinant interpretation one level below the arity of the checked instance).
MinimalityReport minimality_report(Theory t, const std::string& axiom, const MinimalityConfig& cfg);

}  // namespace qceq
