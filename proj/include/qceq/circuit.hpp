#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qceq/angle.hpp"
#include "qceq/errors.hpp"

namespace qceq {

enum class Kind { GPHASE, H, P, CNOT, SWAP, INIT, DEST, X, Z, RX, MCP, MCRX, CTRL };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);
bool is_macro(Kind k);
int kind_param_count(Kind k);

struct Gate {
  Kind kind = Kind::H;
  // Positions in the running wire list at the time the gate is applied.
  // INIT: the position the new wire occupies afterwards. DEST: the position removed.
  // CNOT: {control, target}. MCP/MCRX/CTRL: controls first, target(s) last.
  std::vector<int> wires;
  std::vector<double> params;
  // CTRL only: one character per control wire ('1' control, '0' anti-control) and the
  // controlled gate, whose wires are local to the trailing non-control wires.
  std::string pattern;
  std::shared_ptr<const Gate> base;

  int arity_in() const;
  int arity_out() const;
};

bool gates_equal(const Gate& a, const Gate& b, double eps = kEpsAngle);
std::string describe(const Gate& g);

namespace gates {
Gate gphase(double phi);
Gate h(int w);
Gate p(double phi, int w);
Gate cnot(int control, int target);
Gate swap(int a, int b);
Gate init(int w);
Gate dest(int w);
Gate x(int w);
Gate z(int w);
Gate rx(double theta, int w);
Gate mcp(double phi, std::vector<int> wires);
Gate mcrx(double theta, std::vector<int> wires);
Gate ctrl(std::string pattern, Gate base, std::vector<int> wires);
}  // namespace gates

struct Circuit {
  int n_in = 0;
  int n_out = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_in(n), n_out(n) {}
  Circuit(int in, int out, std::vector<Gate> g) : n_in(in), n_out(out), gates(std::move(g)) {}

  // Appends a gate and updates n_out for INIT/DEST.
  Circuit& add(Gate g);
  std::size_t size() const { return gates.size(); }
  bool empty() const { return gates.empty(); }
  // Largest running width reached while threading.
  int max_width() const;
};

// Throws InvalidCircuit when the gate list does not thread from n_in to n_out wires.
void validate(const Circuit& c);
bool is_valid(const Circuit& c);
bool has_ancilla_gates(const Circuit& c);
bool is_primitive(const Circuit& c);

Circuit compose_seq(const Circuit& c1, const Circuit& c2);
Circuit compose_par(const Circuit& c1, const Circuit& c2);
Circuit tensor_power(const Circuit& c, int k);

Circuit expand_macros(const Circuit& c);
// Primitive expansion of a single gate, appended to out.
void expand_gate(const Gate& g, std::vector<Gate>& out);
// Primitive expansion of g with extra all-ones controls on the given wires.
void expand_controlled(const std::vector<int>& controls, const Gate& g, std::vector<Gate>& out);

// Removes every GPHASE gate.
Circuit strip_gphase(const Circuit& c);

// Wire-identity view of a circuit. Every wire gets a stable id; `order` is a total order
// on all ids (including dead ones) consistent with the left-to-right wire order at every
// time step, so positions can be recovered after gates are permuted.
struct WireGate {
  Gate gate;
  std::vector<int> ids;
};

struct Threaded {
  std::vector<int> in_ids;
  std::vector<int> out_ids;
  std::vector<WireGate> gates;
  std::vector<int> order;
  int next_id = 0;

  std::vector<int> rank() const;
};

Threaded thread(const Circuit& c);
Circuit unthread(const Threaded& t);

struct CanonicalForm {
  Circuit circuit;
};

CanonicalForm canonicalize(const Circuit& c);
// Indices of c's gates in the order canonicalize lists them.
std::vector<int> canonical_order(const Circuit& c);
bool deformation_equal(const Circuit& c1, const Circuit& c2, double eps = kEpsAngle);
bool syntactically_equal(const Circuit& c1, const Circuit& c2, double eps = kEpsAngle);

}  // namespace qceq
