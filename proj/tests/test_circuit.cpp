#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qceq/circuit.hpp"
#include "qceq/json_io.hpp"
#include "qceq/random.hpp"
#include "qceq/semantics.hpp"

using namespace qceq;
namespace g = gates;

namespace {

Circuit circ(int n, std::vector<Gate> gs) {
  Circuit c(n);
  for (auto& x : gs) c.add(std::move(x));
  return c;
}

bool only_primitive(const Circuit& c) {
  for (const auto& x : c.gates)
    if (is_macro(x.kind)) return false;
  return true;
}

}  // namespace

TEST(Circuit, AddTracksAncillaArity) {
  Circuit c(1);
  c.add(g::init(1));
  EXPECT_EQ(c.n_out, 2);
  c.add(g::cnot(0, 1));
  c.add(g::dest(0));
  EXPECT_EQ(c.n_in, 1);
  EXPECT_EQ(c.n_out, 1);
  EXPECT_EQ(c.max_width(), 2);
  EXPECT_NO_THROW(validate(c));
}

TEST(Circuit, ValidateRejectsBadWires) {
  Circuit c(2, 2, {g::cnot(0, 2)});
  EXPECT_FALSE(is_valid(c));
  Circuit d(2, 2, {g::cnot(1, 1)});
  EXPECT_FALSE(is_valid(d));
  try {
    validate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCircuit);
  }
}

TEST(Circuit, ComposeSeqChecksArity) {
  try {
    compose_seq(Circuit(1), Circuit(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST(Circuit, ComposeParShiftsWires) {
  const Circuit a = circ(1, {g::h(0)});
  const Circuit b = circ(2, {g::cnot(0, 1)});
  const Circuit c = compose_par(a, b);
  ASSERT_EQ(c.n_in, 3);
  ASSERT_EQ(c.gates.size(), 2u);
  EXPECT_EQ(c.gates[1].wires, (std::vector<int>{1, 2}));
  EXPECT_EQ(tensor_power(a, 3).n_in, 3);
  EXPECT_EQ(tensor_power(a, 3).gates.size(), 3u);
}

TEST(Circuit, DeformationIdentifiesInterchange) {
  const Circuit a = circ(2, {g::h(0), g::p(0.3, 1)});
  const Circuit b = circ(2, {g::p(0.3, 1), g::h(0)});
  EXPECT_TRUE(deformation_equal(a, b));
  EXPECT_FALSE(syntactically_equal(a, b));
  const Circuit c = circ(2, {g::h(0), g::cnot(0, 1)});
  const Circuit d = circ(2, {g::cnot(0, 1), g::h(0)});
  EXPECT_FALSE(deformation_equal(c, d));
}

TEST(Circuit, SwapIsSymmetric) {
  const Circuit a = circ(3, {g::h(2), g::swap(0, 1), g::p(0.4, 1)});
  const Circuit b = circ(3, {g::swap(1, 0), g::p(0.4, 1), g::h(2)});
  EXPECT_TRUE(deformation_equal(a, b));
}

TEST(Circuit, SwapIsAGateNode) {
  // Sliding a gate through a SWAP is a rewrite step (SWAPNATP), not a deformation.
  const Circuit a = circ(2, {g::swap(0, 1), g::p(0.4, 1)});
  const Circuit b = circ(2, {g::p(0.4, 0), g::swap(0, 1)});
  EXPECT_FALSE(deformation_equal(a, b));
  EXPECT_LE(max_abs_diff(eval_matrix(a), eval_matrix(b)), 1e-12);
}

TEST(Circuit, GlobalPhasesFloat) {
  const Circuit a = circ(1, {g::gphase(0.5), g::h(0)});
  const Circuit b = circ(1, {g::h(0), g::gphase(0.5)});
  EXPECT_TRUE(deformation_equal(a, b));
}

TEST(Circuit, ThreadRoundTrip) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Circuit c = random_circuit(rng, 1 + i % 4, 12);
    EXPECT_TRUE(syntactically_equal(unthread(thread(c)), c));
  }
}

TEST(Circuit, JsonRoundTrip) {
  Circuit c(2);
  c.add(g::gphase(0.25)).add(g::h(0)).add(g::mcp(1.5, {0, 1})).add(g::ctrl("0", g::rx(0.7, 0), {1, 0}));
  c.add(g::init(2)).add(g::cnot(2, 0)).add(g::dest(2));
  const json j = circuit_to_json(c);
  EXPECT_EQ(j.at("n_in"), 2);
  EXPECT_TRUE(syntactically_equal(circuit_from_json(j), c));
  EXPECT_EQ(circuit_to_json(circuit_from_json(j)).dump(), j.dump());
}

TEST(Circuit, JsonRejectsUnknownKind) {
  const json j = json::parse(R"({"n_in":1,"n_out":1,"gates":[{"kind":"T","wires":[0],"params":[]}]})");
  try {
    circuit_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Circuit, StripGphase) {
  const Circuit c = circ(1, {g::gphase(1.0), g::h(0), g::gphase(2.0)});
  EXPECT_EQ(strip_gphase(c).gates.size(), 1u);
}

// Threading validity is preserved by the structural operations.
TEST(CircuitProperty, OperationsPreserveValidity) {
  Rng rng(11);
  RandomCircuitOptions opts;
  opts.macros = true;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 4;
    const Circuit a = random_circuit(rng, n, 10, opts);
    const Circuit b = random_circuit(rng, n, 10, opts);
    const Circuit c = random_circuit(rng, 1 + i % 2, 6, opts);
    EXPECT_TRUE(is_valid(compose_seq(a, b)));
    EXPECT_TRUE(is_valid(compose_par(a, c)));
    EXPECT_TRUE(is_valid(expand_macros(a)));
    EXPECT_TRUE(is_valid(canonicalize(a).circuit));
  }
}

TEST(CircuitProperty, CanonicalizePreservesSemantics) {
  Rng rng(12);
  RandomCircuitOptions opts;
  opts.macros = true;
  for (int i = 0; i < 150; ++i) {
    const Circuit c = random_circuit(rng, 1 + i % 6, 14, opts);
    EXPECT_LE(max_abs_diff(eval_matrix(canonicalize(c).circuit), eval_matrix(c)), 1e-10);
    EXPECT_TRUE(deformation_equal(canonicalize(c).circuit, c));
  }
}

TEST(CircuitProperty, ExpandIsIdempotentAndPrimitive) {
  Rng rng(13);
  RandomCircuitOptions opts;
  opts.macros = true;
  for (int i = 0; i < 150; ++i) {
    const Circuit c = random_circuit(rng, 1 + i % 4, 10, opts);
    const Circuit e = expand_macros(c);
    EXPECT_TRUE(only_primitive(e));
    EXPECT_TRUE(is_primitive(e));
    EXPECT_TRUE(syntactically_equal(expand_macros(e), e));
  }
}

TEST(CircuitProperty, ExpandedMcpIsDiagonalPhase) {
  Rng rng(14);
  for (int m = 1; m <= 5; ++m) {
    for (int s = 0; s < 5; ++s) {
      const double phi = rng.angle();
      std::vector<int> wires(m);
      for (int i = 0; i < m; ++i) wires[i] = i;
      const Circuit c = expand_macros(circ(m, {g::mcp(phi, wires)}));
      EXPECT_LE(oracle::max_diff(eval_matrix(c), oracle::mcp(m, wires, phi)), 1e-10) << "m=" << m;
    }
  }
}

TEST(CircuitProperty, ExpandedMcrxIsControlledRotation) {
  Rng rng(15);
  for (int k = 0; k <= 3; ++k) {
    for (int s = 0; s < 5; ++s) {
      const double th = rng.angle();
      std::vector<int> wires(k + 1), controls(k), pattern(k, 1);
      for (int i = 0; i <= k; ++i) wires[i] = i;
      for (int i = 0; i < k; ++i) controls[i] = i;
      const Circuit c = expand_macros(circ(k + 1, {g::mcrx(th, wires)}));
      EXPECT_LE(oracle::max_diff(eval_matrix(c), oracle::controlled(k + 1, controls, pattern, k, oracle::rx(th))), 1e-10)
          << "k=" << k;
    }
  }
}

TEST(CircuitProperty, ExpandedCtrlHonoursAntiControls) {
  const double th = 0.9;
  const Circuit c = circ(3, {g::ctrl("10", g::rx(th, 0), {0, 1, 2})});
  EXPECT_LE(oracle::max_diff(eval_matrix(expand_macros(c)), oracle::controlled(3, {0, 1}, {1, 0}, 2, oracle::rx(th))),
            1e-10);
  EXPECT_LE(oracle::max_diff(eval_matrix(c), oracle::controlled(3, {0, 1}, {1, 0}, 2, oracle::rx(th))), 1e-10);
}
