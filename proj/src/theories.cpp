#include "qceq/theories.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "qceq/euler.hpp"
#include "qceq/semantics.hpp"

namespace qceq {

namespace g = gates;

const char* theory_name(Theory t) {
  switch (t) {
    case Theory::QC: return "QC";
    case Theory::QCprime: return "QCprime";
    case Theory::QCugp: return "QCugp";
    case Theory::QCancilla: return "QCancilla";
    case Theory::QCancillaprime: return "QCancillaprime";
  }
  return "?";
}

Theory theory_from_name(const std::string& name) {
  for (Theory t : all_theories())
    if (name == theory_name(t)) return t;
  throw Error(ErrorCode::UnknownTheory, "unknown theory '" + name + "'");
}

std::vector<Theory> all_theories() {
  return {Theory::QC, Theory::QCprime, Theory::QCugp, Theory::QCancilla, Theory::QCancillaprime};
}

std::string alternating_pattern(int controls) {
  std::string s;
  for (int i = 0; i < controls; ++i) s.push_back(i % 2 == 0 ? '1' : '0');
  return s;
}

namespace {

using Sides = std::pair<Circuit, Circuit>;
using Builder = std::function<Sides(const std::vector<double>&, int)>;

struct Entry {
  RuleSignature sig;
  Builder build;
};

Circuit circ(int n, std::initializer_list<Gate> gs) {
  Circuit c(n);
  for (const auto& x : gs) c.add(x);
  return c;
}

std::vector<int> range(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

Gate mcp_or_p(double phi, const std::vector<int>& wires) {
  if (wires.empty()) return g::gphase(phi);
  if (wires.size() == 1) return g::p(phi, wires[0]);
  return g::mcp(phi, wires);
}

Circuit nf_gates(const NormalFormParams& b) { return nf_circuit(b); }

RuleSignature sig(std::string name, int params, int n, std::string summary) {
  return RuleSignature{std::move(name), params, n, false, n, std::move(summary)};
}

RuleSignature vsig(std::string name, int params, int min_n, std::string summary) {
  return RuleSignature{std::move(name), params, min_n, true, min_n, std::move(summary)};
}

const std::map<std::string, Entry>& axiom_table() {
  static const std::map<std::string, Entry> table = [] {
    std::map<std::string, Entry> t;
    auto put = [&](RuleSignature s, Builder b) { t.emplace(s.name, Entry{s, std::move(b)}); };
    put(sig("S2PI", 0, 0, "GPHASE(2pi) = empty"),
        [](const auto&, int) { return Sides{circ(0, {g::gphase(kTwoPi)}), Circuit(0)}; });
    put(sig("SPLUS", 2, 0, "GPHASE(a) GPHASE(b) = GPHASE(a+b)"), [](const auto& p, int) {
      return Sides{circ(0, {g::gphase(p[0]), g::gphase(p[1])}), circ(0, {g::gphase(p[0] + p[1])})};
    });
    put(sig("H2", 0, 1, "H H = id"), [](const auto&, int) { return Sides{circ(1, {g::h(0), g::h(0)}), Circuit(1)}; });
    put(sig("P0", 0, 1, "P(0) = id"), [](const auto&, int) { return Sides{circ(1, {g::p(0.0, 0)}), Circuit(1)}; });
    put(sig("C", 1, 2, "CNOT P(a)@control CNOT = P(a)@control"), [](const auto& p, int) {
      return Sides{circ(2, {g::cnot(0, 1), g::p(p[0], 0), g::cnot(0, 1)}), circ(2, {g::p(p[0], 0)})};
    });
    put(sig("B", 0, 2, "CNOT(0,1) CNOT(1,0) = SWAP CNOT(0,1)"), [](const auto&, int) {
      return Sides{circ(2, {g::cnot(0, 1), g::cnot(1, 0)}), circ(2, {g::swap(0, 1), g::cnot(0, 1)})};
    });
    put(sig("CZ", 0, 2, "H@1 CNOT H@1 = P(pi/2)xP(pi/2) CNOT P(-pi/2)@1 CNOT"), [](const auto&, int) {
      return Sides{circ(2, {g::h(1), g::cnot(0, 1), g::h(1)}),
                   circ(2, {g::p(kPi / 2, 0), g::p(kPi / 2, 1), g::cnot(0, 1), g::p(-kPi / 2, 1), g::cnot(0, 1)})};
    });
    put(sig("EH", 0, 1, "H = P(pi/2) RX(pi/2) P(pi/2)"), [](const auto&, int) {
      return Sides{circ(1, {g::h(0)}), circ(1, {g::p(kPi / 2, 0), g::rx(kPi / 2, 0), g::p(kPi / 2, 0)})};
    });
    put(sig("E", 3, 1, "RX(a1) P(a2) RX(a3) = normal form"), [](const auto& p, int) {
      return Sides{circ(1, {g::rx(p[0], 0), g::p(p[1], 0), g::rx(p[2], 0)}),
                   nf_gates(euler_e(p[0], p[1], p[2]).beta)};
    });
    put(vsig("I", 0, 3, "MCP(2pi) on n wires = id"), [](const auto&, int n) {
      return Sides{circ(n, {g::mcp(kTwoPi, range(0, n))}), Circuit(n)};
    });
    put(sig("PPLUS", 2, 1, "P(a) P(b) = P(a+b)"), [](const auto& p, int) {
      return Sides{circ(1, {g::p(p[0], 0), g::p(p[1], 0)}), circ(1, {g::p(p[0] + p[1], 0)})};
    });
    put(sig("EPRIME", 2, 1, "RX(a1) H RX(a3) = normal form"), [](const auto& p, int) {
      return Sides{circ(1, {g::rx(p[0], 0), g::h(0), g::rx(p[1], 0)}), nf_gates(euler_eprime(p[0], p[1]).beta)};
    });
    put(sig("A", 0, 0, "INIT DEST = empty"),
        [](const auto&, int) { return Sides{circ(0, {g::init(0), g::dest(0)}), Circuit(0)}; });
    put(sig("AP", 1, 0, "INIT P(a) = INIT"),
        [](const auto& p, int) { return Sides{circ(0, {g::init(0), g::p(p[0], 0)}), circ(0, {g::init(0)})}; });
    put(sig("ACX", 0, 1, "INIT@0 CNOT(0,1) = INIT@0"),
        [](const auto&, int) { return Sides{circ(1, {g::init(0), g::cnot(0, 1)}), circ(1, {g::init(0)})}; });
    put(sig("FIVE_CX", 0, 3, "CX01 CX12 CX01 = CX12 CX02"), [](const auto&, int) {
      return Sides{circ(3, {g::cnot(0, 1), g::cnot(1, 2), g::cnot(0, 1)}), circ(3, {g::cnot(1, 2), g::cnot(0, 2)})};
    });
    return t;
  }();
  return table;
}

const std::map<std::string, Entry>& definition_table() {
  static const std::map<std::string, Entry> table = [] {
    std::map<std::string, Entry> t;
    auto put = [&](RuleSignature s, Builder b) { t.emplace(s.name, Entry{s, std::move(b)}); };
    put(sig("RXDEF", 1, 1, "RX(t) = GPHASE(-t/2) H P(t) H"), [](const auto& p, int) {
      return Sides{circ(1, {g::rx(p[0], 0)}), circ(1, {g::gphase(-p[0] / 2), g::h(0), g::p(p[0], 0), g::h(0)})};
    });
    put(sig("XDEF", 0, 1, "X = H P(pi) H"), [](const auto&, int) {
      return Sides{circ(1, {g::x(0)}), circ(1, {g::h(0), g::p(kPi, 0), g::h(0)})};
    });
    put(sig("ZDEF", 0, 1, "Z = P(pi)"),
        [](const auto&, int) { return Sides{circ(1, {g::z(0)}), circ(1, {g::p(kPi, 0)})}; });
    put(vsig("MCPDEF", 1, 1, "one level of the multi-controlled phase recursion"), [](const auto& p, int n) {
      const double phi = p[0];
      Circuit lhs = circ(n, {g::mcp(phi, range(0, n))});
      if (n == 1) return Sides{lhs, circ(1, {g::p(phi, 0)})};
      auto head = range(0, n - 1);
      auto skip = range(0, n - 2);
      skip.push_back(n - 1);
      return Sides{lhs, circ(n, {mcp_or_p(phi / 2, head), mcp_or_p(phi / 2, skip), g::cnot(n - 2, n - 1),
                                 mcp_or_p(-phi / 2, skip), g::cnot(n - 2, n - 1)})};
    });
    put(vsig("MCRXDEF", 1, 1, "one level of the multi-controlled RX recursion"), [](const auto& p, int n) {
      const double th = p[0];
      Circuit lhs = circ(n, {g::mcrx(th, range(0, n))});
      if (n == 1) return Sides{lhs, circ(1, {g::rx(th, 0)})};
      return Sides{lhs, circ(n, {g::h(n - 1), mcp_or_p(th, range(0, n)), g::h(n - 1), mcp_or_p(-th / 2, range(0, n - 1))})};
    });
    put(sig("SWAPNATP", 1, 2, "SWAP P(a)@1 = P(a)@0 SWAP"), [](const auto& p, int) {
      return Sides{circ(2, {g::swap(0, 1), g::p(p[0], 1)}), circ(2, {g::p(p[0], 0), g::swap(0, 1)})};
    });
    put(sig("SWAPNATH", 0, 2, "SWAP H@1 = H@0 SWAP"), [](const auto&, int) {
      return Sides{circ(2, {g::swap(0, 1), g::h(1)}), circ(2, {g::h(0), g::swap(0, 1)})};
    });
    put(sig("SWAPNATCNOT", 0, 2, "SWAP CNOT(0,1) = CNOT(1,0) SWAP"), [](const auto&, int) {
      return Sides{circ(2, {g::swap(0, 1), g::cnot(0, 1)}), circ(2, {g::cnot(1, 0), g::swap(0, 1)})};
    });
    put(sig("SWAPSWAP", 0, 2, "SWAP SWAP = id"),
        [](const auto&, int) { return Sides{circ(2, {g::swap(0, 1), g::swap(0, 1)}), Circuit(2)}; });
    put(sig("SWAPNATCX", 0, 3, "SWAP(0,1) CNOT(1,2) = CNOT(0,2) SWAP(0,1)"), [](const auto&, int) {
      return Sides{circ(3, {g::swap(0, 1), g::cnot(1, 2)}), circ(3, {g::cnot(0, 2), g::swap(0, 1)})};
    });
    return t;
  }();
  return table;
}

Gate bullet(int controls, const Gate& base, int first_target) {
  std::vector<int> wires = range(0, controls);
  for (int w = 0; w < base.arity_in(); ++w) wires.push_back(first_target + w);
  return g::ctrl(alternating_pattern(controls), base, wires);
}

const std::map<std::string, Entry>& lemma_table() {
  static const std::map<std::string, Entry> table = [] {
    std::map<std::string, Entry> t;
    auto put = [&](RuleSignature s, Builder b) { t.emplace(s.name, Entry{s, std::move(b)}); };
    auto same_as_axiom = [&](const std::string& name) {
      const Entry& e = axiom_table().at(name);
      t.emplace(name, e);
    };

    // Single-qubit identities.
    put(sig("P2PI", 0, 1, "P(2pi) = id"), [](const auto&, int) { return Sides{circ(1, {g::p(kTwoPi, 0)}), Circuit(1)}; });
    same_as_axiom("PPLUS");
    put(sig("XPX", 1, 1, "X P(a) X = GPHASE(a) P(-a)"), [](const auto& p, int) {
      return Sides{circ(1, {g::x(0), g::p(p[0], 0), g::x(0)}), circ(1, {g::gphase(p[0]), g::p(-p[0], 0)})};
    });
    put(sig("S0", 0, 0, "GPHASE(0) = empty"),
        [](const auto&, int) { return Sides{circ(0, {g::gphase(0.0)}), Circuit(0)}; });
    put(sig("RX2PI", 0, 1, "RX(2pi) = GPHASE(pi)"),
        [](const auto&, int) { return Sides{circ(1, {g::rx(kTwoPi, 0)}), circ(1, {g::gphase(kPi)})}; });
    put(sig("X2", 0, 1, "X X = id"), [](const auto&, int) { return Sides{circ(1, {g::x(0), g::x(0)}), Circuit(1)}; });
    put(sig("Z2", 0, 1, "Z Z = id"), [](const auto&, int) { return Sides{circ(1, {g::z(0), g::z(0)}), Circuit(1)}; });
    put(sig("PMINUSPI", 0, 1, "P(-pi) = P(pi)"),
        [](const auto&, int) { return Sides{circ(1, {g::p(-kPi, 0)}), circ(1, {g::p(kPi, 0)})}; });
    put(sig("RXPLUS", 2, 1, "RX(a) RX(b) = RX(a+b)"), [](const auto& p, int) {
      return Sides{circ(1, {g::rx(p[0], 0), g::rx(p[1], 0)}), circ(1, {g::rx(p[0] + p[1], 0)})};
    });
    put(sig("RXMINUS", 1, 1, "Z RX(t) Z = RX(-t)"), [](const auto& p, int) {
      return Sides{circ(1, {g::z(0), g::rx(p[0], 0), g::z(0)}), circ(1, {g::rx(-p[0], 0)})};
    });
    put(sig("RX0", 0, 1, "RX(0) = id"), [](const auto&, int) { return Sides{circ(1, {g::rx(0.0, 0)}), Circuit(1)}; });
    put(sig("HEULERMINUS", 0, 1, "H = P(-pi/2) RX(-pi/2) P(-pi/2)"), [](const auto&, int) {
      return Sides{circ(1, {g::h(0)}),
                   circ(1, {g::p(-kPi / 2, 0), g::rx(-kPi / 2, 0), g::p(-kPi / 2, 0)})};
    });

    // Two- and three-wire CNOT identities.
    put(sig("BPRIME", 0, 2, "CX01 CX10 CX01 = SWAP"), [](const auto&, int) {
      return Sides{circ(2, {g::cnot(0, 1), g::cnot(1, 0), g::cnot(0, 1)}), circ(2, {g::swap(0, 1)})};
    });
    put(sig("CNOT2", 0, 2, "CX01 CX01 = id"),
        [](const auto&, int) { return Sides{circ(2, {g::cnot(0, 1), g::cnot(0, 1)}), Circuit(2)}; });
    put(sig("SWAP2", 0, 2, "SWAP SWAP = id"),
        [](const auto&, int) { return Sides{circ(2, {g::swap(0, 1), g::swap(0, 1)}), Circuit(2)}; });
    put(sig("PCOMMUTCNOT", 1, 2, "P(a)@0 CX01 = CX01 P(a)@0"), [](const auto& p, int) {
      return Sides{circ(2, {g::p(p[0], 0), g::cnot(0, 1)}), circ(2, {g::cnot(0, 1), g::p(p[0], 0)})};
    });
    put(sig("PPHASEGADGET", 1, 2, "CX01 P(a)@1 CX01 = CX10 P(a)@0 CX10"), [](const auto& p, int) {
      return Sides{circ(2, {g::cnot(0, 1), g::p(p[0], 1), g::cnot(0, 1)}),
                   circ(2, {g::cnot(1, 0), g::p(p[0], 0), g::cnot(1, 0)})};
    });
    put(sig("HHCNOTHH", 0, 2, "H0 H1 CX01 H0 H1 = CX10"), [](const auto&, int) {
      return Sides{circ(2, {g::h(0), g::h(1), g::cnot(0, 1), g::h(0), g::h(1)}), circ(2, {g::cnot(1, 0)})};
    });
    put(sig("CTRLPMINUSPI", 0, 2, "MCP(-pi) = MCP(pi) on two wires"), [](const auto&, int) {
      return Sides{circ(2, {g::mcp(-kPi, {0, 1})}), circ(2, {g::mcp(kPi, {0, 1})})};
    });
    same_as_axiom("FIVE_CX");
    put(vsig("CTRL2PI_ANY", 0, 1, "MCP(2pi) = id for any number of wires"), [](const auto&, int n) {
      return Sides{circ(n, {g::mcp(kTwoPi, range(0, n))}), Circuit(n)};
    });
    put(sig("RXCOMMUTCNOT", 1, 2, "RX(t)@1 CX01 = CX01 RX(t)@1"), [](const auto& p, int) {
      return Sides{circ(2, {g::rx(p[0], 1), g::cnot(0, 1)}), circ(2, {g::cnot(0, 1), g::rx(p[0], 1)})};
    });
    put(sig("XCOMMUTCNOT", 0, 2, "X@1 CX01 = CX01 X@1"), [](const auto&, int) {
      return Sides{circ(2, {g::x(1), g::cnot(0, 1)}), circ(2, {g::cnot(0, 1), g::x(1)})};
    });
    put(sig("RXPHASEGADGET", 1, 2, "CX01 RX(t)@0 CX01 = CX10 RX(t)@1 CX10"), [](const auto& p, int) {
      return Sides{circ(2, {g::cnot(0, 1), g::rx(p[0], 0), g::cnot(0, 1)}),
                   circ(2, {g::cnot(1, 0), g::rx(p[0], 1), g::cnot(1, 0)})};
    });
    put(sig("XCNOTXX", 0, 2, "X@0 CX01 = CX01 X@0 X@1"), [](const auto&, int) {
      return Sides{circ(2, {g::x(0), g::cnot(0, 1)}), circ(2, {g::cnot(0, 1), g::x(0), g::x(1)})};
    });
    put(sig("ZCNOTZZ", 0, 2, "Z@1 CX01 = CX01 Z@0 Z@1"), [](const auto&, int) {
      return Sides{circ(2, {g::z(1), g::cnot(0, 1)}), circ(2, {g::cnot(0, 1), g::z(0), g::z(1)})};
    });
    put(sig("CNOTSTARGETCOMMUT", 0, 3, "CX02 CX12 = CX12 CX02"), [](const auto&, int) {
      return Sides{circ(3, {g::cnot(0, 2), g::cnot(1, 2)}), circ(3, {g::cnot(1, 2), g::cnot(0, 2)})};
    });
    put(sig("CNOTSCONTROLCOMMUT", 0, 3, "CX01 CX02 = CX02 CX01"), [](const auto&, int) {
      return Sides{circ(3, {g::cnot(0, 1), g::cnot(0, 2)}), circ(3, {g::cnot(0, 2), g::cnot(0, 1)})};
    });
    put(sig("THREECNOTSCONTROL", 0, 3, "CX10 CX21 CX10 = CX21 CX20"), [](const auto&, int) {
      return Sides{circ(3, {g::cnot(1, 0), g::cnot(2, 1), g::cnot(1, 0)}), circ(3, {g::cnot(2, 1), g::cnot(2, 0)})};
    });

    // Controlled-gate family. n counts every wire; controls follow the alternating pattern.
    put(vsig("MCTRLS0", 0, 0, "controlled GPHASE(0) = id"), [](const auto&, int n) {
      return Sides{circ(n, {bullet(n, g::gphase(0.0), n)}), Circuit(n)};
    });
    put(vsig("MCTRLP0", 0, 1, "controlled P(0) = id"), [](const auto&, int n) {
      return Sides{circ(n, {bullet(n - 1, g::p(0.0, 0), n - 1)}), Circuit(n)};
    });
    put(vsig("MCTRLRX0", 0, 1, "controlled RX(0) = id"), [](const auto&, int n) {
      return Sides{circ(n, {bullet(n - 1, g::rx(0.0, 0), n - 1)}), Circuit(n)};
    });
    put(vsig("MCTRLS2PI", 0, 0, "controlled GPHASE(2pi) = id"), [](const auto&, int n) {
      return Sides{circ(n, {bullet(n, g::gphase(kTwoPi), n)}), Circuit(n)};
    });
    put(vsig("MCTRLRX4PI", 0, 1, "controlled RX(4pi) = id"), [](const auto&, int n) {
      return Sides{circ(n, {bullet(n - 1, g::rx(2 * kTwoPi, 0), n - 1)}), Circuit(n)};
    });
    put(vsig("MCTRLRX2PI", 0, 1, "controlled RX(2pi) = controlled GPHASE(pi) on the controls"), [](const auto&, int n) {
      return Sides{circ(n, {bullet(n - 1, g::rx(kTwoPi, 0), n - 1)}), circ(n, {bullet(n - 1, g::gphase(kPi), n - 1)})};
    });
    put(vsig("MCTRLSPLUS", 2, 0, "controlled GPHASE addition"), [](const auto& p, int n) {
      return Sides{circ(n, {bullet(n, g::gphase(p[0]), n), bullet(n, g::gphase(p[1]), n)}),
                   circ(n, {bullet(n, g::gphase(p[0] + p[1]), n)})};
    });
    put(vsig("MCTRLPPLUS", 2, 1, "controlled P addition"), [](const auto& p, int n) {
      return Sides{circ(n, {bullet(n - 1, g::p(p[0], 0), n - 1), bullet(n - 1, g::p(p[1], 0), n - 1)}),
                   circ(n, {bullet(n - 1, g::p(p[0] + p[1], 0), n - 1)})};
    });
    put(vsig("MCTRLRXPLUS", 2, 1, "controlled RX addition"), [](const auto& p, int n) {
      return Sides{circ(n, {bullet(n - 1, g::rx(p[0], 0), n - 1), bullet(n - 1, g::rx(p[1], 0), n - 1)}),
                   circ(n, {bullet(n - 1, g::rx(p[0] + p[1], 0), n - 1)})};
    });
    put(vsig("MCTRLZRX", 1, 1, "controlled Z then RX(t) = controlled RX(-t) then Z"), [](const auto& p, int n) {
      return Sides{circ(n, {bullet(n - 1, g::z(0), n - 1), bullet(n - 1, g::rx(p[0], 0), n - 1)}),
                   circ(n, {bullet(n - 1, g::rx(-p[0], 0), n - 1), bullet(n - 1, g::z(0), n - 1)})};
    });
    put(vsig("MCTRLRXCOMMUTX", 1, 1, "controlled RX and controlled X commute"), [](const auto& p, int n) {
      return Sides{circ(n, {bullet(n - 1, g::rx(p[0], 0), n - 1), bullet(n - 1, g::x(0), n - 1)}),
                   circ(n, {bullet(n - 1, g::x(0), n - 1), bullet(n - 1, g::rx(p[0], 0), n - 1)})};
    });
    put(vsig("MCTRLPTHROUGHRXPI", 1, 1, "controlled P(a) then RX(pi) = RX(pi) then a phase on target 0"),
        [](const auto& p, int n) {
          std::vector<int> all = range(0, n);
          return Sides{circ(n, {bullet(n - 1, g::p(p[0], 0), n - 1), bullet(n - 1, g::rx(kPi, 0), n - 1)}),
                       circ(n, {bullet(n - 1, g::rx(kPi, 0), n - 1),
                                g::ctrl(alternating_pattern(n - 1) + "0", g::gphase(p[0]), all)})};
        });
    put(vsig("PALWAYSCOMMUTE", 2, 1, "MCP(a) and P(b)@0 commute"), [](const auto& p, int n) {
      return Sides{circ(n, {mcp_or_p(p[0], range(0, n)), g::p(p[1], 0)}),
                   circ(n, {g::p(p[1], 0), mcp_or_p(p[0], range(0, n))})};
    });
    put(vsig("ESTAR_N", 3, 1, "multi-controlled Euler decomposition"), [](const auto& p, int n) {
      const NormalFormParams b = euler_e(p[0], p[1], p[2]).beta;
      std::vector<int> all = range(0, n), controls = range(0, n - 1);
      Circuit lhs = circ(n, {g::mcrx(p[0], all), g::mcp(p[1], all), g::mcrx(p[2], all)});
      Circuit rhs = circ(n, {mcp_or_p(b.beta0, controls), g::mcp(b.beta1, all), g::mcrx(b.beta2, all), g::mcp(b.beta3, all)});
      return Sides{lhs, rhs};
    });
    return t;
  }();
  return table;
}

std::vector<std::string> theory_rule_names(Theory t) {
  switch (t) {
    case Theory::QC: return {"S2PI", "SPLUS", "H2", "P0", "C", "B", "CZ", "EH", "E", "I"};
    case Theory::QCprime: return {"S2PI", "SPLUS", "H2", "P0", "C", "B", "CZ", "PPLUS", "EPRIME", "I"};
    case Theory::QCugp: return {"H2", "P0", "C", "B", "CZ", "EH", "E", "I"};
    case Theory::QCancilla: return {"S2PI", "H2", "AP", "A", "ACX", "FIVE_CX", "C", "B", "CZ", "P0", "EH", "E"};
    case Theory::QCancillaprime:
      return {"S2PI", "H2", "AP", "A", "ACX", "FIVE_CX", "C", "B", "CZ", "SPLUS", "PPLUS", "EPRIME"};
  }
  return {};
}

void check_shape(const RuleSignature& s, const std::vector<double>& params, int n) {
  if (static_cast<int>(params.size()) != s.params)
    throw Error(ErrorCode::BadParams, s.name + " takes " + std::to_string(s.params) + " parameters, got " +
                                          std::to_string(params.size()));
  for (double v : params)
    if (!std::isfinite(v)) throw Error(ErrorCode::BadParams, s.name + ": non-finite parameter");
  if (s.variable_n ? n < s.min_n : n != s.n)
    throw Error(ErrorCode::BadArity, s.name + " does not act on " + std::to_string(n) + " wires");
}

RuleInstance build(const Entry& e, Theory theory, const std::vector<double>& params, int n) {
  // A negative n selects the fixed arity of the schema.
  const int arity = (!e.sig.variable_n && n < 0) ? e.sig.n : n;
  check_shape(e.sig, params, arity);
  auto [lhs, rhs] = e.build(params, arity);
  return RuleInstance{RuleId{theory, e.sig.name}, params, arity, std::move(lhs), std::move(rhs), false};
}

}  // namespace

std::vector<RuleId> list_rules(Theory t) {
  std::vector<RuleId> out;
  for (auto& n : theory_rule_names(t)) out.push_back(RuleId{t, n});
  return out;
}

bool theory_has_rule(Theory t, const std::string& name) {
  const auto names = theory_rule_names(t);
  return std::find(names.begin(), names.end(), name) != names.end();
}

const RuleSignature& rule_signature(const std::string& name) {
  auto it = axiom_table().find(name);
  if (it == axiom_table().end()) throw Error(ErrorCode::UnknownRule, "unknown rule '" + name + "'");
  return it->second.sig;
}

RuleInstance instantiate(const RuleId& id, const std::vector<double>& params, int n) {
  if (!theory_has_rule(id.theory, id.name))
    throw Error(ErrorCode::UnknownRule, id.name + " is not an axiom of " + theory_name(id.theory));
  RuleInstance r = build(axiom_table().at(id.name), id.theory, params, n);
  if (id.theory == Theory::QCugp) {
    r.lhs = strip_gphase(r.lhs);
    r.rhs = strip_gphase(r.rhs);
    r.up_to_phase = true;
  }
  return r;
}

bool check_soundness(const RuleInstance& r, double tol) {
  try {
    const Matrix a = eval_matrix(r.lhs), b = eval_matrix(r.rhs);
    return r.up_to_phase ? equal_up_to_phase(a, b, tol) : equal_matrices(a, b, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::WireCapExceeded) throw;
    return false;
  }
}

std::vector<RuleSignature> list_definitions() {
  std::vector<RuleSignature> v;
  for (const auto& [name, e] : definition_table()) v.push_back(e.sig);
  return v;
}

bool is_definition(const std::string& name) { return definition_table().count(name) > 0; }

RuleInstance definition_instantiate(const std::string& name, const std::vector<double>& params, int n) {
  auto it = definition_table().find(name);
  if (it == definition_table().end()) throw Error(ErrorCode::UnknownRule, "unknown definition '" + name + "'");
  return build(it->second, Theory::QC, params, n);
}

std::vector<RuleSignature> list_lemmas() {
  std::vector<RuleSignature> v;
  for (const auto& [name, e] : lemma_table()) v.push_back(e.sig);
  return v;
}

bool is_lemma(const std::string& name) { return lemma_table().count(name) > 0; }

const RuleSignature& lemma_signature(const std::string& name) {
  auto it = lemma_table().find(name);
  if (it == lemma_table().end()) throw Error(ErrorCode::UnknownLemma, "unknown lemma '" + name + "'");
  return it->second.sig;
}

RuleInstance lemma_instantiate(const std::string& name, const std::vector<double>& params, int n) {
  auto it = lemma_table().find(name);
  if (it == lemma_table().end()) throw Error(ErrorCode::UnknownLemma, "unknown lemma '" + name + "'");
  return build(it->second, Theory::QC, params, n);
}

}  // namespace qceq
