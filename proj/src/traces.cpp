#include "qceq/traces.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qceq/semantics.hpp"

namespace qceq {

namespace g = gates;

namespace {

Circuit circ(int n, std::initializer_list<Gate> gs) {
  Circuit c(n);
  for (const auto& x : gs) c.add(x);
  return c;
}

std::string show(const Circuit& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (i) s += ", ";
    s += describe(c.gates[i]);
  }
  return s + "]";
}

// A derivation written out step by step, with lookups by gate kind and wires.
class Script {
public:
  Script(Theory t, Circuit c) : rw_(t, std::move(c), options()) {}

  const Circuit& now() const { return rw_.circuit(); }
  const Gate& gate(int i) const { return now().gates.at(i); }
  int size() const { return static_cast<int>(now().gates.size()); }

  void lr(const std::string& rule, std::vector<int> gates, std::vector<int> wm = {}, std::vector<double> params = {},
          int n = -1) {
    step(Step{rule, Direction::LR, std::move(params), n, Site{std::move(gates), std::move(wm), -1}});
  }
  void rl(const std::string& rule, std::vector<int> gates, std::vector<int> wm = {}, std::vector<double> params = {},
          int n = -1) {
    step(Step{rule, Direction::RL, std::move(params), n, Site{std::move(gates), std::move(wm), -1}});
  }
  // Right-to-left use of a rule whose right-hand side is empty.
  void put(const std::string& rule, int at, std::vector<int> wm = {}, std::vector<double> params = {}, int n = -1) {
    step(Step{rule, Direction::RL, std::move(params), n, Site{{}, std::move(wm), at}});
  }

  // Index of the nth gate of kind k acting on exactly these wires (either order for SWAP).
  int at(Kind k, std::vector<int> wires, int nth = 0, int from = 0) const {
    int seen = 0;
    for (int i = from; i < size(); ++i) {
      const Gate& x = gate(i);
      if (x.kind != k) continue;
      bool hit = x.wires == wires;
      if (!hit && k == Kind::SWAP && wires.size() == 2) hit = x.wires == std::vector<int>{wires[1], wires[0]};
      if (hit && seen++ == nth) return i;
    }
    throw Error(ErrorCode::NoMatch, std::string("script: no ") + kind_name(k) + " #" + std::to_string(nth) + " in " +
                                        show(now()));
  }
  int phase(double a) const {
    for (int i = 0; i < size(); ++i)
      if (gate(i).kind == Kind::GPHASE && angle_eq(gate(i).params[0], a)) return i;
    throw Error(ErrorCode::NoMatch, "script: no GPHASE(" + std::to_string(a) + ") in " + show(now()));
  }
  int count(Kind k) const {
    return static_cast<int>(std::count_if(now().gates.begin(), now().gates.end(), [k](const Gate& x) { return x.kind == k; }));
  }
  // Index of the k-th gate that is not a global phase.
  int w(int k) const {
    for (int i = 0; i < size(); ++i)
      if (gate(i).kind != Kind::GPHASE && k-- == 0) return i;
    throw Error(ErrorCode::NoMatch, "script: wire gate out of range in " + show(now()));
  }
  double angle(int i) const { return gate(i).params.at(0); }

  Derivation derivation(const std::string& proves) const { return rw_.derivation(proves); }

private:
  static ReplayOptions options() {
    ReplayOptions o;
    o.allow_lemmas = true;
    return o;
  }

  void step(const Step& s) {
    try {
      rw_.apply(s);
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(rw_.steps().size()) + " (" + s.rule + ") on " + show(now()) +
                                ": " + e.what());
    }
  }

  Rewriter rw_;
};

// GPHASE(0) at index `at`.
void make_gphase0(Script& s, int at) {
  s.put("S2PI", at);
  s.rl("SPLUS", {at}, {}, {0.0, kTwoPi});
  s.lr("S2PI", {at + 1});
}

// RX(0) at index `at` on wire w.
void make_rx0(Script& s, int at, int w) {
  s.put("H2", at, {w});
  s.put("P0", at + 1, {w});
  make_gphase0(s, at);
  s.rl("RXDEF", {at, at + 1, at + 2, at + 3}, {w}, {0.0});
}

void merge_gphases(Script& s) {
  while (s.count(Kind::GPHASE) >= 2) {
    int i = -1, j = -1;
    for (int k = 0; k < s.size(); ++k)
      if (s.gate(k).kind == Kind::GPHASE) (i < 0 ? i : j) = (i < 0 ? k : (j < 0 ? k : j));
    s.lr("SPLUS", {i, j}, {}, {s.angle(i), s.angle(j)});
  }
}

// Removes a lone GPHASE whose angle is zero up to rounding.
void drop_gphase0(Script& s) {
  const int i = s.at(Kind::GPHASE, {});
  const double x = s.angle(i);
  s.put("S2PI", i + 1);
  s.lr("SPLUS", {i, i + 1}, {}, {x, kTwoPi});
  s.lr("S2PI", {i});
}

bool touches(const Gate& x, int w) { return std::find(x.wires.begin(), x.wires.end(), w) != x.wires.end(); }

// Removes H H pairs on wire w that no other gate on w separates. Assumes no gate changes the wire count.
void cancel_h_pairs(Script& s, int w) {
  for (bool again = true; again;) {
    again = false;
    int prev = -1;
    for (int i = 0; i < s.size() && !again; ++i) {
      const Gate& x = s.gate(i);
      if (!touches(x, w)) continue;
      if (x.kind == Kind::H && x.wires.size() == 1 && prev >= 0) {
        s.lr("H2", {prev, i}, {w});
        again = true;
      }
      prev = x.kind == Kind::H ? i : -1;
    }
  }
}

// Clears P(0), RX(0) and adjacent H pairs from a one-wire script.
void clear_trivial_1q(Script& s) {
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i < s.size() && !again; ++i) {
      const Gate& x = s.gate(i);
      if (x.kind == Kind::P && angle_eq(x.params[0], 0.0)) {
        s.lr("P0", {i}, {0});
        again = true;
      } else if (x.kind == Kind::RX && angle_eq(x.params[0], 0.0)) {
        s.lr("RXDEF", {i}, {0}, {x.params[0]});
        again = true;
      }
    }
    for (int k = 0; !again; ++k) {
      int a, b;
      try {
        a = s.w(k);
        b = s.w(k + 1);
      } catch (const Error&) {
        break;
      }
      if (s.gate(a).kind == Kind::H && s.gate(b).kind == Kind::H) {
        s.lr("H2", {a, b}, {0});
        again = true;
      }
    }
  }
}

ShippedTrace finish(const Script& s, std::string file, std::string claim, const std::string& proves,
                    std::vector<double> params = {}, int n = -1) {
  return ShippedTrace{std::move(file), std::move(claim), s.derivation(proves), std::move(params), n};
}

ShippedTrace from_derivation(Derivation d, std::string file, std::string claim, const std::string& proves,
                             std::vector<double> params = {}) {
  d.proves = proves;
  return ShippedTrace{std::move(file), std::move(claim), std::move(d), std::move(params), -1};
}

// ---- QC ----

ShippedTrace qc_p2pi() {
  Script s(Theory::QC, circ(1, {g::p(kTwoPi, 0)}));
  make_rx0(s, 0, 0);
  make_rx0(s, 2, 0);
  s.lr("E", {0, 1, 2}, {0}, {0.0, kTwoPi, 0.0});
  clear_trivial_1q(s);
  merge_gphases(s);
  drop_gphase0(s);
  return finish(s, "qc_P2PI.json", "P(2pi) = id, by introducing RX(0) gates and applying (E)", "P2PI");
}

ShippedTrace qc_pplus() {
  const double a = 0.9, b = 1.7;
  Script s(Theory::QC, circ(1, {g::p(a, 0), g::p(b, 0)}));
  // H H P(a) H P(0) H P(b) H H
  s.put("H2", 0, {0});
  s.put("H2", 3, {0});
  s.put("P0", 4, {0});
  s.put("H2", 7, {0});
  make_gphase0(s, 0);
  s.rl("SPLUS", {0}, {}, {-a / 2, a / 2});
  make_gphase0(s, 0);
  s.rl("SPLUS", {0}, {}, {-b / 2, b / 2});
  s.rl("RXDEF", {s.phase(-a / 2), s.w(1), s.w(2), s.w(3)}, {0}, {a});
  s.rl("RXDEF", {s.phase(-b / 2), s.w(3), s.w(4), s.w(5)}, {0}, {b});
  s.lr("E", {s.w(1), s.w(2), s.w(3)}, {0}, {a, 0.0, b});
  const int g0 = s.at(Kind::GPHASE, {}, 2);
  s.rl("E", {g0, s.w(1), s.w(2), s.w(3)}, {0}, {a + b, 0.0, 0.0});
  clear_trivial_1q(s);
  s.lr("RXDEF", {s.w(1)}, {0}, {a + b});
  clear_trivial_1q(s);
  merge_gphases(s);
  drop_gphase0(s);
  return finish(s, "qc_PPLUS.json", "P(a) P(b) = P(a+b), through RX gates and two uses of (E)", "PPLUS", {a, b});
}

ShippedTrace qc_s0() {
  Script s(Theory::QC, circ(0, {g::gphase(0.0)}));
  s.put("S2PI", 1);
  s.lr("SPLUS", {0, 1}, {}, {0.0, kTwoPi});
  s.lr("S2PI", {0});
  return finish(s, "qc_S0.json", "GPHASE(0) = empty", "S0");
}

ShippedTrace xpx(Theory t, const std::string& file) {
  const double phi = 0.7;
  return from_derivation(derive_equal_1q(circ(1, {g::x(0), g::p(phi, 0), g::x(0)}),
                                         circ(1, {g::gphase(phi), g::p(-phi, 0)}), t),
                         file, "X P(a) X = GPHASE(a) P(-a), through the one-wire normal form", "XPX", {phi});
}

ShippedTrace qc_bprime() {
  Script s(Theory::QC, circ(2, {g::cnot(0, 1), g::cnot(1, 0), g::cnot(0, 1)}));
  s.lr("B", {0, 1}, {0, 1});
  s.put("P0", 2, {0});
  s.lr("C", {1, 2, 3}, {0, 1}, {0.0});
  s.lr("P0", {1}, {0});
  return finish(s, "qc_BPRIME.json", "CX01 CX10 CX01 = SWAP, by (B), (P0), (C), (P0)", "BPRIME");
}

ShippedTrace qc_cnot2() {
  Script s(Theory::QC, circ(2, {g::cnot(0, 1), g::cnot(0, 1)}));
  s.put("P0", 1, {0});
  s.lr("C", {0, 1, 2}, {0, 1}, {0.0});
  s.lr("P0", {0}, {0});
  return finish(s, "qc_CNOT2.json", "CX01 CX01 = id", "CNOT2");
}

ShippedTrace qc_pcommutcnot() {
  const double a = 0.8;
  Script s(Theory::QC, circ(2, {g::p(a, 0), g::cnot(0, 1)}));
  s.rl("C", {0}, {0, 1}, {a});
  s.put("P0", 3, {0});
  s.lr("C", {2, 3, 4}, {0, 1}, {0.0});
  s.lr("P0", {2}, {0});
  return finish(s, "qc_PCOMMUTCNOT.json", "P(a)@0 CX01 = CX01 P(a)@0", "PCOMMUTCNOT", {a});
}

ShippedTrace qc_pphasegadget() {
  const double a = 0.8;
  Script s(Theory::QC, circ(2, {g::cnot(0, 1), g::p(a, 1), g::cnot(0, 1)}));
  s.put("SWAPSWAP", 0, {0, 1});
  s.lr("SWAPNATCNOT", {1, 2}, {0, 1});
  s.lr("SWAPNATP", {2, 3}, {0, 1}, {a});
  s.rl("B", {0, 1}, {1, 0});
  s.rl("B", {3, 4}, {0, 1});
  s.lr("C", {1, 2, 3}, {0, 1}, {a});
  return finish(s, "qc_PPHASEGADGET.json", "CX01 P(a)@1 CX01 = CX10 P(a)@0 CX10, by swap naturality, (B) twice and (C)",
                "PPHASEGADGET", {a});
}

ShippedTrace qc_hhcnothh() {
  Script s(Theory::QC, circ(2, {g::h(0), g::h(1), g::cnot(0, 1), g::h(0), g::h(1)}));
  s.lr("CZ", {s.at(Kind::H, {1}, 0), s.at(Kind::CNOT, {0, 1}), s.at(Kind::H, {1}, 1)}, {0, 1});
  s.lr("PPHASEGADGET", {s.at(Kind::CNOT, {0, 1}, 0), s.at(Kind::P, {1}, 1), s.at(Kind::CNOT, {0, 1}, 1)}, {0, 1},
       {-kPi / 2});
  s.rl("CZ",
       {s.at(Kind::P, {1}, 0), s.at(Kind::P, {0}, 0), s.at(Kind::CNOT, {1, 0}, 0), s.at(Kind::P, {0}, 1),
        s.at(Kind::CNOT, {1, 0}, 1)},
       {1, 0});
  s.lr("H2", {s.at(Kind::H, {0}, 0), s.at(Kind::H, {0}, 1)}, {0});
  s.lr("H2", {s.at(Kind::H, {0}, 0), s.at(Kind::H, {0}, 1)}, {0});
  return finish(s, "qc_HHCNOTHH.json", "H0 H1 CX01 H0 H1 = CX10, by (CZ), the phase gadget, (CZ) and (H2)", "HHCNOTHH");
}

// The five gates of MCP(pi) on (c, t), from gate index `from` on, folded back into MCP.
void fold_mcp_pi(Script& s, int c, int t, int from = 0) {
  s.rl("MCPDEF",
       {s.at(Kind::P, {c}, 0, from), s.at(Kind::P, {t}, 0, from), s.at(Kind::CNOT, {c, t}, 0, from),
        s.at(Kind::P, {t}, 1, from), s.at(Kind::CNOT, {c, t}, 1, from)},
       {c, t}, {kPi}, 2);
}

ShippedTrace qc_ctrlpminuspi() {
  Script s(Theory::QC, circ(2, {g::mcp(-kPi, {0, 1})}));
  s.lr("MCPDEF", {0}, {0, 1}, {-kPi}, 2);
  // Append MCP(pi) MCP(pi) in the H CX H form, then contract the first copy with CZ.
  s.put("H2", 5, {1});
  s.put("CNOT2", 6, {0, 1});
  s.put("H2", 7, {1});
  s.lr("CZ", {5, 6, 7}, {0, 1});
  // MCP(-pi) MCP(pi) cancels: move the phases on the control together, then the gadgets.
  s.rl("PCOMMUTCNOT", {s.at(Kind::CNOT, {0, 1}, 1), s.at(Kind::P, {0}, 1)}, {0, 1}, {kPi / 2});
  s.rl("PCOMMUTCNOT", {s.at(Kind::CNOT, {0, 1}, 0), s.at(Kind::P, {0}, 1)}, {0, 1}, {kPi / 2});
  s.lr("PPLUS", {s.at(Kind::P, {0}, 0), s.at(Kind::P, {0}, 1)}, {0}, {-kPi / 2, kPi / 2});
  s.lr("P0", {s.at(Kind::P, {0}, 0)}, {0});
  s.lr("PPHASEGADGET", {s.at(Kind::CNOT, {0, 1}, 0), s.at(Kind::P, {1}, 1), s.at(Kind::CNOT, {0, 1}, 1)}, {0, 1},
       {kPi / 2});
  s.lr("PPHASEGADGET", {s.at(Kind::CNOT, {0, 1}, 0), s.at(Kind::P, {1}, 2), s.at(Kind::CNOT, {0, 1}, 1)}, {0, 1},
       {-kPi / 2});
  s.rl("PCOMMUTCNOT", {s.at(Kind::CNOT, {1, 0}, 1), s.at(Kind::P, {1}, 1)}, {1, 0}, {kPi / 2});
  s.rl("PCOMMUTCNOT", {s.at(Kind::CNOT, {1, 0}, 0), s.at(Kind::P, {1}, 1)}, {1, 0}, {kPi / 2});
  s.lr("PPLUS", {s.at(Kind::P, {1}, 0), s.at(Kind::P, {1}, 1)}, {1}, {-kPi / 2, kPi / 2});
  s.lr("P0", {s.at(Kind::P, {1}, 0)}, {1});
  s.lr("CNOT2", {s.at(Kind::CNOT, {1, 0}, 1), s.at(Kind::CNOT, {1, 0}, 2)}, {1, 0});
  s.lr("PPLUS", {s.at(Kind::P, {0}, 0), s.at(Kind::P, {0}, 1)}, {0}, {kPi / 2, -kPi / 2});
  s.lr("P0", {s.at(Kind::P, {0}, 0)}, {0});
  s.lr("CNOT2", {s.at(Kind::CNOT, {1, 0}, 0), s.at(Kind::CNOT, {1, 0}, 1)}, {1, 0});
  s.lr("CZ", {0, 1, 2}, {0, 1});
  fold_mcp_pi(s, 0, 1);
  return finish(s, "qc_CTRLPMINUSPI.json", "MCP(-pi) = MCP(pi) on two wires", "CTRLPMINUSPI");
}

// MCP(pi) with wires {t, c} at gate index i turned into H_t CX(c,t) H_t.
void mcp_pi_to_hcxh_flipped(Script& s, int i, int c, int t) {
  s.lr("MCPDEF", {i}, {t, c}, {kPi}, 2);
  s.lr("PPHASEGADGET", {i + 2, i + 3, i + 4}, {t, c}, {-kPi / 2});
  s.rl("CZ", {i + 1, i, i + 2, i + 3, i + 4}, {c, t});
}

// MCP(pi)@(c,t) at gate index i turned into H_t CX(c,t) H_t.
void mcp_pi_to_hcxh(Script& s, int i, int c, int t) {
  s.lr("MCPDEF", {i}, {c, t}, {kPi}, 2);
  s.rl("CZ", {i, i + 1, i + 2, i + 3, i + 4}, {c, t});
}

// H_t CX(c,t) H_t H_t CX(c,t) H_t = id, with the gates named by occurrence.
void cancel_hcxh_pair(Script& s, int c, int t) {
  s.lr("H2", {s.at(Kind::H, {t}, 1), s.at(Kind::H, {t}, 2)}, {t});
  s.lr("CNOT2", {s.at(Kind::CNOT, {c, t}, 0), s.at(Kind::CNOT, {c, t}, 1)}, {c, t});
  s.lr("H2", {s.at(Kind::H, {t}, 0), s.at(Kind::H, {t}, 1)}, {t});
}

ShippedTrace qc_five_cx() {
  Script s(Theory::QC, circ(3, {g::cnot(0, 1), g::cnot(1, 2), g::cnot(0, 1)}));
  // Conjugate the middle CNOT by H on wire 2: it becomes MCP(pi)@1,2.
  s.put("H2", 0, {2});
  s.put("H2", 4, {2});
  s.lr("CZ", {1, s.at(Kind::CNOT, {1, 2}), s.at(Kind::H, {2}, 2)}, {1, 2});
  fold_mcp_pi(s, 1, 2);
  // (I) on three wires, expanded once: it cancels CX01 MCP(pi)@1,2 CX01.
  s.put("I", 1, {2, 0, 1}, {}, 3);
  s.lr("MCPDEF", {1}, {2, 0, 1}, {kTwoPi}, 3);
  s.lr("CNOT2", {s.at(Kind::CNOT, {0, 1}, 1), s.at(Kind::CNOT, {0, 1}, 2)}, {0, 1});
  s.lr("CTRLPMINUSPI", {s.at(Kind::MCP, {2, 1}, 1)}, {2, 1});
  mcp_pi_to_hcxh(s, s.at(Kind::MCP, {1, 2}), 1, 2);
  mcp_pi_to_hcxh_flipped(s, s.at(Kind::MCP, {2, 1}, 1), 1, 2);
  s.lr("H2", {s.at(Kind::H, {2}, 2), s.at(Kind::H, {2}, 3)}, {2});
  s.lr("CNOT2", {s.at(Kind::CNOT, {1, 2}, 0), s.at(Kind::CNOT, {1, 2}, 1)}, {1, 2});
  s.lr("H2", {s.at(Kind::H, {2}, 1), s.at(Kind::H, {2}, 2)}, {2});
  s.lr("CNOT2", {s.at(Kind::CNOT, {0, 1}, 0), s.at(Kind::CNOT, {0, 1}, 1)}, {0, 1});
  // H2 MCP(pi)@2,0 MCP(pi)@2,1 H2 = CX02 CX12.
  s.put("H2", 2, {2});
  mcp_pi_to_hcxh_flipped(s, s.at(Kind::MCP, {2, 0}), 0, 2);
  s.lr("H2", {s.at(Kind::H, {2}, 0), s.at(Kind::H, {2}, 1)}, {2});
  s.lr("H2", {s.at(Kind::H, {2}, 1), s.at(Kind::H, {2}, 2)}, {2});
  mcp_pi_to_hcxh_flipped(s, s.at(Kind::MCP, {2, 1}), 1, 2);
  s.lr("H2", {s.at(Kind::H, {2}, 0), s.at(Kind::H, {2}, 1)}, {2});
  s.lr("H2", {s.at(Kind::H, {2}, 0), s.at(Kind::H, {2}, 1)}, {2});
  s.lr("CNOTSTARGETCOMMUT", {0, 1}, {0, 1, 2});
  return finish(s, "qc_FIVE_CX.json", "CX01 CX12 CX01 = CX12 CX02, through (I) on three wires", "FIVE_CX");
}

// ---- QCprime ----

ShippedTrace qcprime_eh() {
  Script s(Theory::QCprime, circ(1, {g::h(0)}));
  make_rx0(s, 0, 0);
  make_rx0(s, 2, 0);
  s.lr("EPRIME", {0, 1, 2}, {0}, {0.0, 0.0});
  drop_gphase0(s);
  return finish(s, "qcprime_EH.json", "H = P(pi/2) RX(pi/2) P(pi/2), from (E') with zero angles", "EH");
}

// RX(2pi) differs from RX(0) by GPHASE(pi), which (E') exposes.
ShippedTrace qcprime_p2pi() {
  Script s(Theory::QCprime, circ(1, {g::p(kTwoPi, 0)}));
  s.put("H2", 0, {0});
  s.put("H2", 3, {0});
  make_gphase0(s, 2);
  s.rl("SPLUS", {2}, {}, {-kPi, kPi});
  s.rl("RXDEF", {s.phase(-kPi), s.w(1), s.w(2), s.w(3)}, {0}, {kTwoPi});
  make_rx0(s, 0, 0);
  s.lr("EPRIME", {s.w(0), s.w(1), s.w(2)}, {0}, {0.0, kTwoPi});
  s.rl("SPLUS", {s.at(Kind::GPHASE, {}, 1)}, {}, {0.0, kPi});
  s.rl("EPRIME", {s.w(0), s.w(1), s.w(2), s.at(Kind::GPHASE, {}, 1)}, {0}, {0.0, 0.0});
  clear_trivial_1q(s);
  merge_gphases(s);
  s.lr("S2PI", {s.phase(kTwoPi)});
  return finish(s, "qcprime_P2PI.json", "P(2pi) = id, from (E') at angles (0, 2pi) and (0, 0)", "P2PI");
}

ShippedTrace qcprime_s0() {
  Script s(Theory::QCprime, circ(0, {g::gphase(0.0)}));
  s.put("S2PI", 1);
  s.lr("SPLUS", {0, 1}, {}, {0.0, kTwoPi});
  s.lr("S2PI", {0});
  return finish(s, "qcprime_S0.json", "GPHASE(0) = empty", "S0");
}

ShippedTrace qcprime_1q(const std::string& name, const Circuit& lhs, const Circuit& rhs, const std::string& claim,
                        std::vector<double> params) {
  return from_derivation(derive_equal_1q(lhs, rhs, Theory::QCprime), "qcprime_" + name + ".json", claim, name,
                         std::move(params));
}

// ---- ancillas ----

ShippedTrace qcancillaprime_p0() {
  Script s(Theory::QCancillaprime, Circuit(1));
  s.put("H2", 0, {0});
  s.put("A", 1);
  s.rl("ACX", {s.at(Kind::INIT, {1})}, {0});
  s.lr("CZ", {s.at(Kind::H, {0}, 0), s.at(Kind::CNOT, {1, 0}), s.at(Kind::H, {0}, 1)}, {1, 0});
  s.lr("AP", {s.at(Kind::INIT, {1}), s.at(Kind::P, {1})}, {}, {kPi / 2});
  s.lr("ACX", {s.at(Kind::INIT, {1}), s.at(Kind::CNOT, {1, 0}, 0)}, {0});
  s.lr("ACX", {s.at(Kind::INIT, {1}), s.at(Kind::CNOT, {1, 0}, 0)}, {0});
  s.lr("A", {s.at(Kind::INIT, {1}), s.at(Kind::DEST, {1})});
  s.lr("PPLUS", {s.at(Kind::P, {0}, 0), s.at(Kind::P, {0}, 1)}, {0}, {kPi / 2, -kPi / 2});
  return finish(s, "qcancillaprime_P0.json", "id = P(0) without (P0), through an ancilla and (CZ)", "P0");
}

ShippedTrace qcancilla_splus() {
  const double p1 = 0.4, p2 = 1.1;
  const double a = -2 * p1, b = -2 * p2;
  Script s(Theory::QCancilla, circ(0, {g::gphase(p1), g::gphase(p2)}));
  s.put("A", 2);
  s.rl("AP", {s.at(Kind::INIT, {0})}, {}, {b});
  s.rl("AP", {s.at(Kind::INIT, {0})}, {}, {a});
  // INIT H H P(a) H P(0) H P(b) H H DEST
  s.put("H2", s.at(Kind::P, {0}, 0), {0});
  s.put("H2", s.at(Kind::P, {0}, 0) + 1, {0});
  s.put("P0", s.at(Kind::H, {0}, 2) + 1, {0});
  s.put("H2", s.at(Kind::P, {0}, 2) + 1, {0});
  s.rl("RXDEF", {s.phase(p1), s.at(Kind::H, {0}, 1), s.at(Kind::P, {0}, 0), s.at(Kind::H, {0}, 2)}, {0}, {a});
  s.rl("RXDEF", {s.phase(p2), s.at(Kind::H, {0}, 1), s.at(Kind::P, {0}, 1), s.at(Kind::H, {0}, 2)}, {0}, {b});
  s.lr("E", {s.at(Kind::RX, {0}, 0), s.at(Kind::P, {0}, 0), s.at(Kind::RX, {0}, 1)}, {0}, {a, 0.0, b});
  s.rl("E",
       {s.at(Kind::GPHASE, {}), s.at(Kind::P, {0}, 0), s.at(Kind::RX, {0}, 0), s.at(Kind::P, {0}, 1)}, {0},
       {a + b, 0.0, -2 * kTwoPi});
  s.lr("RXDEF", {s.at(Kind::RX, {0}, 0)}, {0}, {a + b});
  s.lr("RXDEF", {s.at(Kind::RX, {0}, 0)}, {0}, {-2 * kTwoPi});
  s.lr("P0", {s.at(Kind::P, {0}, 1)}, {0});
  cancel_h_pairs(s, 0);
  s.lr("AP", {s.at(Kind::INIT, {0}), s.at(Kind::P, {0}, 0)}, {}, {a + b});
  s.lr("AP", {s.at(Kind::INIT, {0}), s.at(Kind::P, {0}, 0)}, {}, {-2 * kTwoPi});
  s.lr("A", {s.at(Kind::INIT, {0}), s.at(Kind::DEST, {0})});
  s.lr("S2PI", {s.phase(kTwoPi)});
  return finish(s, "qcancilla_SPLUS.json", "GPHASE(a) GPHASE(b) = GPHASE(a+b) without (S+), through an ancilla and (E)",
                "SPLUS", {p1, p2});
}

ShippedTrace qcancilla_i3() {
  Script s(Theory::QCancilla, circ(3, {g::mcp(kTwoPi, {0, 1, 2})}));
  s.lr("MCPDEF", {0}, {0, 1, 2}, {kTwoPi}, 3);
  s.lr("CTRLPMINUSPI", {s.at(Kind::MCP, {0, 2}, 1)}, {0, 2});
  // The second MCP(pi)@0,2 becomes H0 CX20 H0; with the CX12 pair around it this is (5CX).
  s.lr("MCPDEF", {s.at(Kind::MCP, {0, 2}, 1)}, {0, 2}, {kPi}, 2);
  s.lr("PPHASEGADGET", {s.at(Kind::CNOT, {0, 2}, 0), s.at(Kind::P, {2}, 1), s.at(Kind::CNOT, {0, 2}, 1)}, {0, 2},
       {-kPi / 2});
  s.rl("CZ",
       {s.at(Kind::P, {2}, 0), s.at(Kind::P, {0}, 0), s.at(Kind::CNOT, {2, 0}, 0), s.at(Kind::P, {0}, 1),
        s.at(Kind::CNOT, {2, 0}, 1)},
       {2, 0});
  s.lr("FIVE_CX", {s.at(Kind::CNOT, {1, 2}, 0), s.at(Kind::CNOT, {2, 0}), s.at(Kind::CNOT, {1, 2}, 1)}, {1, 2, 0});
  s.put("H2", s.at(Kind::CNOT, {2, 0}) + 1, {0});
  // H0 CX20 H0 back to MCP(pi)@0,2, which cancels the first one.
  s.lr("CZ", {s.at(Kind::H, {0}, 0), s.at(Kind::CNOT, {2, 0}), s.at(Kind::H, {0}, 1)}, {2, 0});
  s.lr("PPHASEGADGET", {s.at(Kind::CNOT, {2, 0}, 0), s.at(Kind::P, {0}, 1), s.at(Kind::CNOT, {2, 0}, 1)}, {2, 0},
       {-kPi / 2});
  fold_mcp_pi(s, 0, 2);
  mcp_pi_to_hcxh(s, s.at(Kind::MCP, {0, 2}, 0), 0, 2);
  mcp_pi_to_hcxh(s, s.at(Kind::MCP, {0, 2}, 0), 0, 2);
  cancel_hcxh_pair(s, 0, 2);
  // H0 CX10 H0 back to MCP(pi)@0,1, which cancels the remaining one.
  s.lr("CZ", {s.at(Kind::H, {0}, 0), s.at(Kind::CNOT, {1, 0}), s.at(Kind::H, {0}, 1)}, {1, 0});
  s.lr("PPHASEGADGET", {s.at(Kind::CNOT, {1, 0}, 0), s.at(Kind::P, {0}, 1), s.at(Kind::CNOT, {1, 0}, 1)}, {1, 0},
       {-kPi / 2});
  fold_mcp_pi(s, 0, 1);
  mcp_pi_to_hcxh(s, s.at(Kind::MCP, {0, 1}, 0), 0, 1);
  mcp_pi_to_hcxh(s, s.at(Kind::MCP, {0, 1}, 0), 0, 1);
  cancel_hcxh_pair(s, 0, 1);
  return finish(s, "qcancilla_I3.json", "MCP(2pi) on three wires = id, through (5CX)", "I", {}, 3);
}

}  // namespace

std::vector<ShippedTrace> build_traces() {
  const double t = 1.3, a1 = 0.6, a2 = 2.1, a3 = -0.9;
  std::vector<ShippedTrace> v;
  v.push_back(qc_p2pi());
  v.push_back(qc_pplus());
  v.push_back(qc_s0());
  v.push_back(xpx(Theory::QC, "qc_XPX.json"));
  v.push_back(qc_bprime());
  v.push_back(qc_cnot2());
  v.push_back(qc_pcommutcnot());
  v.push_back(qc_pphasegadget());
  v.push_back(qc_hhcnothh());
  v.push_back(qc_ctrlpminuspi());
  v.push_back(qc_five_cx());
  v.push_back(qcprime_eh());
  v.push_back(qcprime_s0());
  v.push_back(qcprime_p2pi());
  v.push_back(xpx(Theory::QCprime, "qcprime_XPX.json"));
  v.push_back(qcprime_1q("RXMINUS", circ(1, {g::z(0), g::rx(t, 0), g::z(0)}), circ(1, {g::rx(-t, 0)}),
                         "Z RX(t) Z = RX(-t)", {t}));
  {
    const RuleInstance e = instantiate({Theory::QC, "E"}, {a1, a2, a3}, 1);
    v.push_back(qcprime_1q("E", e.lhs, e.rhs, "an instance of (E) from (E') and (P+)", {a1, a2, a3}));
  }
  v.push_back(qcancillaprime_p0());
  v.push_back(qcancilla_splus());
  v.push_back(qcancilla_i3());
  return v;
}

RuleInstance claimed_equation(const ShippedTrace& t) {
  const std::string& name = t.derivation.proves;
  if (is_lemma(name)) {
    const auto& sg = lemma_signature(name);
    return lemma_instantiate(name, t.params, t.n >= 0 ? t.n : sg.n);
  }
  const auto& sg = rule_signature(name);
  return instantiate({Theory::QC, name}, t.params, t.n >= 0 ? t.n : sg.n);
}

bool proves_claim(const ShippedTrace& t) {
  const Derivation& d = t.derivation;
  if (!d.final_circuit) return false;
  const RuleInstance r = claimed_equation(t);
  const Circuit& a = d.initial;
  const Circuit& b = *d.final_circuit;
  return (deformation_equal(a, r.lhs) && deformation_equal(b, r.rhs)) ||
         (deformation_equal(a, r.rhs) && deformation_equal(b, r.lhs));
}

std::vector<std::string> cited_lemmas(const Derivation& d) {
  std::set<std::string> out;
  for (const auto& s : d.steps)
    if (!theory_has_rule(d.theory, s.rule) && !is_definition(s.rule)) out.insert(s.rule);
  return {out.begin(), out.end()};
}

json traces_manifest(const std::vector<ShippedTrace>& traces) {
  std::map<std::string, std::vector<std::string>> proved_by;
  for (const auto& t : traces) proved_by[t.derivation.proves].push_back(t.file);

  std::map<std::string, std::set<std::string>> edges;
  json entries = json::array();
  std::set<std::string> gaps;
  for (const auto& t : traces) {
    const Derivation& d = t.derivation;
    std::set<std::string> rules;
    for (const auto& s : d.steps) rules.insert(s.rule);
    const auto lemmas = cited_lemmas(d);
    json backed = json::object();
    for (const auto& l : lemmas) {
      edges[d.proves].insert(l);
      auto it = proved_by.find(l);
      if (it == proved_by.end()) {
        gaps.insert(l);
        backed[l] = json::array();
      } else {
        backed[l] = it->second;
      }
    }
    entries.push_back({{"file", t.file},
                       {"theory", theory_name(d.theory)},
                       {"proves", d.proves},
                       {"claim", t.claim},
                       {"steps", d.steps.size()},
                       {"rules", std::vector<std::string>(rules.begin(), rules.end())},
                       {"lemmas", lemmas},
                       {"lemma_traces", backed}});
  }

  // Depth-first search for a cycle through the citation edges.
  std::map<std::string, int> state;
  std::function<bool(const std::string&)> cyclic = [&](const std::string& u) {
    state[u] = 1;
    for (const auto& v : edges[u]) {
      if (state[v] == 1) return true;
      if (state[v] == 0 && cyclic(v)) return true;
    }
    state[u] = 2;
    return false;
  };
  bool acyclic = true;
  for (const auto& [u, _] : edges)
    if (state[u] == 0 && cyclic(u)) acyclic = false;

  return json{{"traces", entries},
              {"lemmas_without_trace", std::vector<std::string>(gaps.begin(), gaps.end())},
              {"citations_acyclic", acyclic}};
}

}  // namespace qceq
