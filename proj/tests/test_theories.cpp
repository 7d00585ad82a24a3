#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "qceq/random.hpp"
#include "qceq/semantics.hpp"
#include "qceq/soundness.hpp"
#include "qceq/theories.hpp"

using namespace qceq;
namespace g = gates;

namespace {

std::set<std::string> names(Theory t) {
  std::set<std::string> s;
  for (const auto& id : list_rules(t)) s.insert(id.name);
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("no error raised");
}

}  // namespace

TEST(Theories, Catalogs) {
  EXPECT_EQ(names(Theory::QC),
            (std::set<std::string>{"S2PI", "SPLUS", "H2", "P0", "C", "B", "CZ", "EH", "E", "I"}));
  EXPECT_EQ(names(Theory::QCprime),
            (std::set<std::string>{"S2PI", "SPLUS", "H2", "P0", "C", "B", "CZ", "PPLUS", "EPRIME", "I"}));
  EXPECT_EQ(names(Theory::QCugp), (std::set<std::string>{"H2", "P0", "C", "B", "CZ", "EH", "E", "I"}));
  EXPECT_EQ(names(Theory::QCancilla),
            (std::set<std::string>{"S2PI", "H2", "AP", "A", "ACX", "FIVE_CX", "C", "B", "CZ", "P0", "EH", "E"}));
  EXPECT_EQ(list_rules(Theory::QC).size(), 10u);
  EXPECT_FALSE(theory_has_rule(Theory::QCprime, "EH"));
  EXPECT_TRUE(theory_has_rule(Theory::QCancilla, "FIVE_CX"));
}

TEST(Theories, TheoryNames) {
  for (Theory t : all_theories()) EXPECT_EQ(theory_from_name(theory_name(t)), t);
  EXPECT_EQ(code_of([] { theory_from_name("QCold"); }), ErrorCode::UnknownTheory);
}

TEST(Theories, InstantiateErrors) {
  EXPECT_EQ(code_of([] { instantiate({Theory::QC, "C"}, {}, 2); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { instantiate({Theory::QC, "I"}, {}, 2); }), ErrorCode::BadArity);
  EXPECT_EQ(code_of([] { instantiate({Theory::QC, "EPRIME"}, {0.0, 0.0}, 1); }), ErrorCode::UnknownRule);
  EXPECT_EQ(code_of([] { lemma_instantiate("NOPE", {}, 1); }), ErrorCode::UnknownLemma);
}

TEST(Theories, IOnThreeWires) {
  const RuleInstance r = instantiate({Theory::QC, "I"}, {}, 3);
  ASSERT_EQ(r.lhs.gates.size(), 1u);
  EXPECT_EQ(r.lhs.gates[0].kind, Kind::MCP);
  EXPECT_EQ(r.lhs.gates[0].wires, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(r.rhs.gates.empty());
  EXPECT_EQ(r.rhs.n_in, 3);
}

TEST(Theories, EulerTrivialInstance) {
  const double phi = 0.8;
  const RuleInstance r = instantiate({Theory::QC, "E"}, {0.0, phi, 0.0}, 1);
  EXPECT_LE(oracle::max_diff(eval_matrix(r.rhs), oracle::p(phi)), 1e-12);
}

TEST(Theories, CMatchesDiagonalOracle) {
  const double phi = 1.3;
  const RuleInstance r = instantiate({Theory::QC, "C"}, {phi}, 2);
  oracle::Mat d = oracle::Mat::Identity(4, 4);
  d(2, 2) = d(3, 3) = std::polar(1.0, phi);
  EXPECT_LE(oracle::max_diff(eval_matrix(r.lhs), d), 1e-12);
  EXPECT_LE(oracle::max_diff(eval_matrix(r.rhs), d), 1e-12);
}

TEST(Theories, BAndFiveCxMatchPermutationOracle) {
  const RuleInstance b = instantiate({Theory::QC, "B"}, {}, 2);
  const oracle::Mat lhs = oracle::cnot(2, 1, 0) * oracle::cnot(2, 0, 1);
  EXPECT_LE(oracle::max_diff(eval_matrix(b.lhs), lhs), 1e-12);
  EXPECT_LE(oracle::max_diff(eval_matrix(b.rhs), lhs), 1e-12);
  const RuleInstance f = instantiate({Theory::QCancilla, "FIVE_CX"}, {}, 3);
  const oracle::Mat five = oracle::cnot(3, 0, 2) * oracle::cnot(3, 1, 2);
  EXPECT_LE(oracle::max_diff(eval_matrix(f.lhs), five), 1e-12);
  EXPECT_LE(oracle::max_diff(eval_matrix(f.rhs), five), 1e-12);
}

TEST(Theories, CorruptedBIsUnsound) {
  RuleInstance r = instantiate({Theory::QC, "B"}, {}, 2);
  // CNOT then SWAP instead of SWAP then CNOT.
  std::reverse(r.rhs.gates.begin(), r.rhs.gates.end());
  EXPECT_FALSE(check_soundness(r, 1e-9));
}

TEST(Theories, AncillaRulesAreIsometries) {
  const RuleInstance r = instantiate({Theory::QCancilla, "ACX"}, {}, 1);
  const Matrix m = eval_matrix(r.lhs);
  EXPECT_EQ(m.rows(), 4);
  EXPECT_EQ(m.cols(), 2);
  EXPECT_TRUE(check_soundness(r, 1e-9));
}

TEST(Theories, XpxLemmaMatchesOracle) {
  const double phi = 0.6;
  const RuleInstance r = lemma_instantiate("XPX", {phi}, 1);
  const oracle::Mat want = std::polar(1.0, phi) * oracle::p(-phi);
  EXPECT_LE(oracle::max_diff(eval_matrix(r.lhs), want), 1e-12);
  EXPECT_LE(oracle::max_diff(eval_matrix(r.rhs), want), 1e-12);
}

TEST(Theories, UgpRulesHaveNoPhases) {
  Rng rng(31);
  for (const auto& id : list_rules(Theory::QCugp)) {
    const auto& sig = rule_signature(id.name);
    const RuleInstance r = instantiate(id, random_params(rng, sig.params), sig.n);
    EXPECT_TRUE(r.up_to_phase);
    for (const Circuit* c : {&r.lhs, &r.rhs})
      for (const auto& x : c->gates) EXPECT_NE(x.kind, Kind::GPHASE) << id.name;
  }
}

TEST(TheoriesProperty, IOnOneAndTwoWiresIsSound) {
  for (int n = 1; n <= 2; ++n) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    Circuit c(n);
    c.add(g::mcp(kTwoPi, w));
    EXPECT_LE(oracle::max_diff(eval_matrix(c), oracle::Mat::Identity(1 << n, 1 << n)), 1e-12);
  }
}

class SoundnessSuite : public ::testing::TestWithParam<Theory> {};

TEST_P(SoundnessSuite, AxiomsDefinitionsAndLemmas) {
  SoundnessConfig cfg;
  cfg.samples = 20;
  cfg.max_qubits = 4;
  cfg.seed = 7;
  cfg.lemmas = true;
  const SoundnessReport rep = soundness_report(GetParam(), cfg);
  for (const auto& r : rep.rows) EXPECT_EQ(r.failures, 0) << r.rule << " n=" << r.n << " err=" << r.max_error;
  EXPECT_TRUE(rep.pass);
}

INSTANTIATE_TEST_SUITE_P(AllTheories, SoundnessSuite,
                         ::testing::Values(Theory::QC, Theory::QCprime, Theory::QCugp, Theory::QCancilla,
                                           Theory::QCancillaprime),
                         [](const auto& info) { return std::string(theory_name(info.param)); });

TEST(TheoriesProperty, ReportIsDeterministic) {
  SoundnessConfig cfg;
  cfg.samples = 5;
  cfg.seed = 99;
  EXPECT_EQ(soundness_report(Theory::QC, cfg).to_json().dump(), soundness_report(Theory::QC, cfg).to_json().dump());
}
