#include <gtest/gtest.h>

#include "qceq/interp.hpp"
#include "qceq/random.hpp"
#include "qceq/rewrite.hpp"
#include "qceq/semantics.hpp"

using namespace qceq;
namespace g = gates;

namespace {

Circuit circ(int n, std::vector<Gate> gs) {
  Circuit c(n);
  for (auto& x : gs) c.add(std::move(x));
  return c;
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

std::vector<int> all_wires(int n) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  return w;
}

}  // namespace

TEST(InterpK, DeterminantRelation) {
  Rng rng(51);
  RandomCircuitOptions opts;
  opts.macros = true;
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + i % 5;
    const int k = n + rng.below(8 - n);
    const Circuit c = random_circuit(rng, n, 12, opts);
    const cplx det = eval_matrix(c).determinant();
    const cplx lhs = std::pow(det, std::ldexp(1.0, k - n));
    const cplx rhs = std::polar(1.0, interp_k(c, k));
    EXPECT_LE(std::abs(lhs - rhs), 1e-8) << "n=" << n << " k=" << k;
  }
}

TEST(InterpK, Unboundedness) {
  for (int n = 3; n <= 7; ++n) {
    const Circuit mcp = circ(n, {g::mcp(kTwoPi, all_wires(n))});
    EXPECT_LE(circ_dist(interp_k(mcp, n - 1), kPi), 1e-9) << n;
    EXPECT_LE(circ_dist(interp_k(Circuit(n), n - 1), 0.0), 1e-9) << n;
    // At level n the two sides agree, as the semantics do.
    EXPECT_LE(circ_dist(interp_k(mcp, n), 0.0), 1e-9) << n;
  }
}

TEST(InterpK, AdditiveOverCompositions) {
  Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3, k = rng.below(6);
    const Circuit a = random_circuit(rng, n, 8), b = random_circuit(rng, n, 8), c = random_circuit(rng, 2, 5);
    EXPECT_LE(circ_dist(interp_k(compose_seq(a, b), k), interp_k(a, k) + interp_k(b, k)), 1e-9);
    EXPECT_LE(circ_dist(interp_k(compose_par(a, c), k), interp_k(a, k) + interp_k(c, k)), 1e-9);
  }
}

TEST(InterpK, RejectsAncillas) {
  Circuit c(1);
  c.add(g::init(1)).add(g::dest(1));
  EXPECT_THROW(interp_k(c, 2), Error);
}

TEST(InterpK, InvariantUnderSoundRewriting) {
  Rng rng(53);
  const std::vector<std::string> rules{"S2PI", "SPLUS", "H2", "P0", "EH", "C", "E", "RXDEF"};
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 3;
    Circuit a = random_circuit(rng, n, 10), b = a;
    for (int s = 0; s < 4; ++s)
      if (auto st = random_step(rng, b, rules)) b = apply_step(b, *st);
    for (int k = n; k <= n + 2; ++k) EXPECT_LE(circ_dist(interp_k(a, k), interp_k(b, k)), 1e-9);
  }
}

TEST(Counter, EachInterpretationSeparatesItsAxiom) {
  for (const auto& name : counter_interpretations()) {
    MinimalityConfig cfg;
    cfg.samples = 30;
    cfg.max_qubits = 4;
    const MinimalityReport rep = minimality_report(Theory::QC, name, cfg);
    EXPECT_TRUE(rep.pass) << name << "\n" << rep.to_json().dump(1);
  }
}

TEST(Counter, ParityOfHadamards) {
  const InterpValue one = interp_axiom("EH", circ(1, {g::h(0)}));
  const InterpValue three = interp_axiom("EH", circ(1, {g::p(kPi / 2, 0), g::rx(kPi / 2, 0), g::p(kPi / 2, 0)}));
  // RX expands to H P H, so the right-hand side of (EH) has two Hadamards.
  EXPECT_FALSE(interp_equal(one, three));
}

TEST(Counter, UnknownInterpretation) { EXPECT_THROW(interp_axiom("Q", Circuit(1)), Error); }

TEST(Minimality, EulerAndI) {
  MinimalityConfig cfg;
  cfg.samples = 30;
  cfg.max_qubits = 4;
  EXPECT_TRUE(minimality_report(Theory::QC, "E", cfg).pass);
  EXPECT_TRUE(minimality_report(Theory::QC, "I", cfg).pass);
}

TEST(Minimality, ReportIsDeterministic) {
  MinimalityConfig cfg;
  cfg.samples = 10;
  cfg.seed = 5;
  EXPECT_EQ(minimality_report(Theory::QC, "SPLUS", cfg).to_json().dump(),
            minimality_report(Theory::QC, "SPLUS", cfg).to_json().dump());
}

TEST(SignClasses, SinglePhase) {
  const double a = 0.3;
  const auto v = interp_E_values(circ(1, {g::p(a, 0)}));
  bool found = false;
  for (double x : v) found = found || circ_dist(x, a, kPi / 2) <= 1e-9;
  EXPECT_TRUE(found);
}

TEST(SignClasses, AssignmentsAreValid) {
  Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    const SignClasses sc = sign_classes(random_1q(rng, 8));
    EXPECT_EQ(sc.class_of.size(), sc.p_gates.size());
    std::vector<int> signs(sc.classes.size(), 1);
    for (const auto& [a, b] : sc.paired) signs[b] = -signs[a];
    (void)valid_sign_assignment(sc, signs);
  }
}

TEST(SignClasses, InvariantUnderPhaseRules) {
  Rng rng(55);
  const std::vector<std::string> rules{"S2PI", "SPLUS", "H2", "P0", "EH", "PPLUS", "XPX"};
  ReplayOptions o;
  o.allow_lemmas = true;
  int steps = 0;
  for (int i = 0; i < 200; ++i) {
    const Circuit c = random_1q(rng, 6);
    const auto st = random_step(rng, c, rules);
    if (!st) continue;
    const Circuit d = apply_step(c, *st, Theory::QC, o);
    EXPECT_TRUE(value_sets_equal(interp_E_values(c), interp_E_values(d))) << st->rule;
    ++steps;
  }
  EXPECT_GT(steps, 150);
}

TEST(FGap, NonzeroDerivativeForEverySignChoice) {
  const double q = kPi / 4, h = 1e-6;
  for (int m = 0; m < 64; ++m) {
    std::array<int, 3> s{}, sp{};
    for (int i = 0; i < 3; ++i) {
      s[i] = (m >> i) & 1 ? 1 : -1;
      sp[i] = (m >> (i + 3)) & 1 ? 1 : -1;
    }
    const double d = (f_gap(s, sp, q, q + h, q) - f_gap(s, sp, q, q - h, q)) / (2 * h);
    EXPECT_GT(std::abs(d), 1e-3) << m;
  }
}
