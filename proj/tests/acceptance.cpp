#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "oracle.hpp"
#include "qceq/euler.hpp"
#include "qceq/interp.hpp"
#include "qceq/random.hpp"
#include "qceq/rewrite.hpp"
#include "qceq/semantics.hpp"
#include "qceq/soundness.hpp"
#include "qceq/theories.hpp"
#include "qceq/traces.hpp"

using namespace qceq;
namespace g = gates;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Matrix nf2(const NormalFormParams& b) {
  return std::polar(1.0, b.beta0) * oracle::p(b.beta3) * oracle::rx(b.beta2) * oracle::p(b.beta1);
}

bool in_intervals(const NormalFormParams& b) {
  auto in02pi = [](double x) { return x >= 0.0 && x < kTwoPi; };
  if (!in02pi(b.beta0) || !in02pi(b.beta1) || !in02pi(b.beta3)) return false;
  if (b.beta2 < 0.0 || b.beta2 > kPi) return false;
  return !((b.beta2 == 0.0 || b.beta2 == kPi) && b.beta3 != 0.0);
}

Circuit random_1q(Rng& rng, int len) {
  Circuit c(1);
  for (int i = 0; i < len; ++i) {
    switch (rng.below(5)) {
      case 0: c.add(g::h(0)); break;
      case 1: c.add(g::p(rng.angle(), 0)); break;
      case 2: c.add(g::gphase(rng.angle())); break;
      case 3: c.add(g::rx(rng.angle(), 0)); break;
      default: c.add(g::x(0)); break;
    }
  }
  return c;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

Outcome c1_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  SoundnessConfig cfg;
  cfg.samples = 100;
  cfg.max_qubits = 6;
  cfg.tol = 1e-9;
  Outcome o;
  double worst = 0.0;
  int rows = 0;
  bool i_range = false;
  for (Theory t : {Theory::QC, Theory::QCprime, Theory::QCugp, Theory::QCancilla}) {
    const SoundnessReport r = soundness_report(t, cfg);
    for (const auto& row : r.rows) {
      ++rows;
      worst = std::max(worst, row.max_error);
      if (row.failures) {
        o.pass = false;
        o.detail += std::string(theory_name(t)) + "/" + row.rule + " ";
      }
      if (row.rule == "I" && row.n == 6) i_range = true;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && i_range && secs < 30.0;
  o.detail += std::to_string(rows) + " rule rows, max error " + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

Outcome c2_euler() {
  Rng rng(1002);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double a1 = rng.angle(), a2 = rng.angle(), a3 = rng.angle();
    const auto r = euler_e(a1, a2, a3);
    worst = std::max(worst, max_abs_diff(nf2(r.beta), oracle::rx(a3) * oracle::p(a2) * oracle::rx(a1)));
    bad += !in_intervals(r.beta);
  }
  for (int i = 0; i < 10000; ++i) {
    const double a1 = rng.angle(), a3 = rng.angle();
    const auto r = euler_eprime(a1, a3);
    worst = std::max(worst, max_abs_diff(nf2(r.beta), oracle::rx(a3) * oracle::h() * oracle::rx(a1)));
    bad += !in_intervals(r.beta);
  }
  return {worst <= 1e-9 && bad == 0, "max error " + fmt(worst) + ", out-of-interval " + std::to_string(bad)};
}

Outcome c3_uniqueness() {
  Rng rng(1003);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    NormalFormParams p;
    p.beta0 = rng.uniform(0, kTwoPi);
    p.beta1 = rng.uniform(0, kTwoPi);
    if (i % 10 == 0) {
      p.beta2 = (i % 20 == 0) ? 0.0 : kPi;
    } else {
      p.beta2 = rng.uniform(0, kPi);
      p.beta3 = rng.uniform(0, kTwoPi);
    }
    const NormalFormParams q = nf_from_unitary(nf2(p));
    worst = std::max({worst, circ_dist(q.beta0, p.beta0), circ_dist(q.beta1, p.beta1), std::abs(q.beta2 - p.beta2),
                      circ_dist(q.beta3, p.beta3)});
  }
  return {worst <= 1e-8, "max parameter error " + fmt(worst)};
}

Outcome c4_completeness() {
  Rng rng(1004);
  const std::vector<std::string> rules{"S2PI", "S0", "SPLUS", "H2", "P0", "P2PI", "EH", "PPLUS", "XPX", "E", "RXDEF"};
  ReplayOptions opts;
  opts.allow_lemmas = true;
  int missed = 0, disagree = 0, steps = 0, equal = 0;
  for (int i = 0; i < 500; ++i) {
    const Circuit a = random_1q(rng, 8);
    Circuit b = a;
    for (int k = 0; k < 5; ++k)
      if (auto s = random_step(rng, b, rules)) {
        b = apply_step(b, *s, Theory::QC, opts);
        ++steps;
      }
    missed += !decide_equiv_1q(a, b);
  }
  for (int i = 0; i < 500; ++i) {
    const Circuit a = random_1q(rng, 1 + rng.below(6)), b = random_1q(rng, 1 + rng.below(6));
    const bool m = equal_matrices(eval_matrix(a), eval_matrix(b), 1e-8);
    equal += m;
    disagree += decide_equiv_1q(a, b) != m;
  }
  return {missed == 0 && disagree == 0 && steps > 0,
          "constructed pairs missed " + std::to_string(missed) + " (" + std::to_string(steps) +
              " rewrite steps), random pairs disagreeing " + std::to_string(disagree) + " (" + std::to_string(equal) +
              " equal)"};
}

Outcome c5_determinant() {
  Rng rng(1005);
  RandomCircuitOptions opts;
  opts.macros = true;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + i % 5;
    const int k = n + rng.below(8 - n);
    const Circuit c = random_circuit(rng, n, 12, opts);
    const cplx det = eval_matrix(c).determinant();
    worst = std::max(worst, std::abs(std::pow(det, std::ldexp(1.0, k - n)) - std::polar(1.0, interp_k(c, k))));
  }
  return {worst <= 1e-8, "max deviation " + fmt(worst)};
}

Outcome c6_unbounded() {
  double worst = 0.0;
  for (int n = 3; n <= 7; ++n) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    Circuit mcp(n);
    mcp.add(g::mcp(kTwoPi, w));
    worst = std::max({worst, circ_dist(interp_k(mcp, n - 1), kPi), circ_dist(interp_k(Circuit(n), n - 1), 0.0)});
  }
  return {worst <= 1e-9, "max deviation " + fmt(worst)};
}

Outcome c7_minimality() {
  MinimalityConfig cfg;
  cfg.samples = 100;
  cfg.max_qubits = 5;
  Outcome o;
  int passed = 0;
  for (const auto& id : list_rules(Theory::QC)) {
    const MinimalityReport r = minimality_report(Theory::QC, id.name, cfg);
    if (r.pass)
      ++passed;
    else
      o.detail += id.name + " failed; ";
  }
  o.pass = passed == 10;
  o.detail += std::to_string(passed) + "/10 axioms PASS";
  return o;
}

Outcome c8_anchors() {
  const double q = kPi / 4, h = 1e-6;
  const double d13 = (2 + 6 * std::sqrt(2.0)) / 17, d2 = -1 / std::sqrt(5 + 2 * std::sqrt(2.0));
  const BValues d = b_derivs_alpha2(q, q, q);
  const BValues up = b_funcs(q, q + h, q), dn = b_funcs(q, q - h, q);
  const double closed = std::max({std::abs(d.b1 - d13), std::abs(d.b2 - d2), std::abs(d.b3 - d13)});
  const double fd = std::max({std::abs((up.b1 - dn.b1) / (2 * h) - d13), std::abs((up.b2 - dn.b2) / (2 * h) - d2),
                              std::abs((up.b3 - dn.b3) / (2 * h) - d13)});
  return {closed <= 1e-10 && fd <= 1e-5, "closed-form error " + fmt(closed) + ", finite-difference error " + fmt(fd)};
}

Outcome c9_clifford() {
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const auto b = euler_eprime(i * kPi / 2, j * kPi / 2).beta;
      for (double x : {b.beta1, b.beta2, b.beta3}) worst = std::max(worst, circ_dist(x, 0.0, kPi / 2));
    }
  return {worst <= 1e-9, "64 pairs, max distance to grid " + fmt(worst)};
}

Outcome c10_traces() {
  std::map<std::string, ShippedTrace> built;
  for (auto& t : build_traces()) built.emplace(t.file, t);
  ReplayOptions opts;
  opts.allow_lemmas = true;
  Outcome o;
  double worst = 0.0;
  int count = 0;
  for (const auto& [file, t] : built) {
    const fs::path path = fs::path(QCEQ_SOURCE_DIR) / "traces" / file;
    try {
      const Derivation d = derivation_from_json(read_json_file(path.string()));
      const ReplayResult r = replay_checked(d, opts);
      worst = std::max(worst, r.max_drift);
      ShippedTrace loaded = t;
      loaded.derivation = d;
      if (!proves_claim(loaded)) {
        o.pass = false;
        o.detail += file + " does not prove its claim; ";
      }
      ++count;
    } catch (const Error& e) {
      o.pass = false;
      o.detail += file + ": " + e.what() + "; ";
    }
  }
  o.pass = o.pass && worst <= 1e-9 && count > 0;
  o.detail += std::to_string(count) + " traces, max drift " + fmt(worst);
  return o;
}

Outcome c11_estar() {
  Rng rng(1011);
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n)
    for (int i = 0; i < 50; ++i) {
      const RuleInstance r = lemma_instantiate("ESTAR_N", random_params(rng, 3), n);
      worst = std::max(worst, max_abs_diff(eval_matrix(r.lhs), eval_matrix(r.rhs)));
    }
  return {worst <= 1e-9, "200 instances, max error " + fmt(worst)};
}

Outcome c12_sign_invariance() {
  Rng rng(1012);
  const std::vector<std::string> rules{"S2PI", "SPLUS", "H2", "P0", "EH", "PPLUS", "XPX"};
  ReplayOptions opts;
  opts.allow_lemmas = true;
  int steps = 0, changed = 0, attempts = 0;
  while (steps < 200 && attempts < 10000) {
    ++attempts;
    const Circuit c = random_1q(rng, 6);
    const auto st = random_step(rng, c, rules);
    if (!st) continue;
    const Circuit d = apply_step(c, *st, Theory::QC, opts);
    changed += !value_sets_equal(interp_E_values(c), interp_E_values(d));
    ++steps;
  }
  return {steps == 200 && changed == 0, std::to_string(steps) + " steps, " + std::to_string(changed) + " changed"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rule soundness", c1_soundness},
      {"Euler formulas", c2_euler},
      {"normal-form uniqueness", c3_uniqueness},
      {"1-qubit completeness", c4_completeness},
      {"determinant interpretation", c5_determinant},
      {"unboundedness witness", c6_unbounded},
      {"minimality matrix", c7_minimality},
      {"b-function anchors", c8_anchors},
      {"Clifford closure", c9_clifford},
      {"trace replay", c10_traces},
      {"multi-controlled Euler soundness", c11_estar},
      {"sign-assignment invariance", c12_sign_invariance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
