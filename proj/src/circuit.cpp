#include "qceq/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qceq {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InvalidCircuit: return "InvalidCircuit";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnknownTheory: return "UnknownTheory";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::UnknownLemma: return "UnknownLemma";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::IllegalSite: return "IllegalSite";
    case ErrorCode::SemanticDrift: return "SemanticDrift";
    case ErrorCode::UnsupportedGate: return "UnsupportedGate";
    case ErrorCode::NoInterpretation: return "NoInterpretation";
    case ErrorCode::InconsistentClasses: return "InconsistentClasses";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WireCapExceeded: return "WireCapExceeded";
  }
  return "Error";
}

namespace {

struct KindInfo {
  Kind kind;
  const char* name;
  bool macro;
  int params;
};

constexpr KindInfo kKinds[] = {
    {Kind::GPHASE, "GPHASE", false, 1}, {Kind::H, "H", false, 0},
    {Kind::P, "P", false, 1},           {Kind::CNOT, "CNOT", false, 0},
    {Kind::SWAP, "SWAP", false, 0},     {Kind::INIT, "INIT", false, 0},
    {Kind::DEST, "DEST", false, 0},     {Kind::X, "X", true, 0},
    {Kind::Z, "Z", true, 0},            {Kind::RX, "RX", true, 1},
    {Kind::MCP, "MCP", true, 1},        {Kind::MCRX, "MCRX", true, 1},
    {Kind::CTRL, "CTRL", true, 0},
};

const KindInfo& info(Kind k) { return kKinds[static_cast<int>(k)]; }

}  // namespace

const char* kind_name(Kind k) { return info(k).name; }

Kind kind_from_name(const std::string& name) {
  for (const auto& ki : kKinds)
    if (name == ki.name) return ki.kind;
  throw Error(ErrorCode::ParseError, "unknown gate kind '" + name + "'");
}

bool is_macro(Kind k) { return info(k).macro; }
int kind_param_count(Kind k) { return info(k).params; }

int Gate::arity_in() const {
  switch (kind) {
    case Kind::GPHASE:
    case Kind::INIT: return 0;
    default: return static_cast<int>(wires.size());
  }
}

int Gate::arity_out() const {
  switch (kind) {
    case Kind::GPHASE:
    case Kind::DEST: return 0;
    default: return static_cast<int>(wires.size());
  }
}

bool gates_equal(const Gate& a, const Gate& b, double eps) {
  if (a.kind != b.kind || a.wires != b.wires || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (!angle_eq(a.params[i], b.params[i], eps)) return false;
  if (a.kind == Kind::CTRL) {
    if (a.pattern != b.pattern || !a.base || !b.base) return false;
    return gates_equal(*a.base, *b.base, eps);
  }
  return true;
}

std::string describe(const Gate& g) {
  std::ostringstream os;
  os << kind_name(g.kind);
  if (!g.params.empty()) {
    os << "(";
    for (std::size_t i = 0; i < g.params.size(); ++i) os << (i ? "," : "") << g.params[i];
    os << ")";
  }
  if (g.kind == Kind::CTRL) os << "[" << g.pattern << "," << (g.base ? describe(*g.base) : "?") << "]";
  os << "@";
  for (std::size_t i = 0; i < g.wires.size(); ++i) os << (i ? "," : "") << g.wires[i];
  return os.str();
}

namespace gates {
Gate gphase(double phi) { return Gate{Kind::GPHASE, {}, {phi}, {}, nullptr}; }
Gate h(int w) { return Gate{Kind::H, {w}, {}, {}, nullptr}; }
Gate p(double phi, int w) { return Gate{Kind::P, {w}, {phi}, {}, nullptr}; }
Gate cnot(int control, int target) { return Gate{Kind::CNOT, {control, target}, {}, {}, nullptr}; }
Gate swap(int a, int b) { return Gate{Kind::SWAP, {a, b}, {}, {}, nullptr}; }
Gate init(int w) { return Gate{Kind::INIT, {w}, {}, {}, nullptr}; }
Gate dest(int w) { return Gate{Kind::DEST, {w}, {}, {}, nullptr}; }
Gate x(int w) { return Gate{Kind::X, {w}, {}, {}, nullptr}; }
Gate z(int w) { return Gate{Kind::Z, {w}, {}, {}, nullptr}; }
Gate rx(double theta, int w) { return Gate{Kind::RX, {w}, {theta}, {}, nullptr}; }
Gate mcp(double phi, std::vector<int> wires) { return Gate{Kind::MCP, std::move(wires), {phi}, {}, nullptr}; }
Gate mcrx(double theta, std::vector<int> wires) {
  return Gate{Kind::MCRX, std::move(wires), {theta}, {}, nullptr};
}
Gate ctrl(std::string pattern, Gate base, std::vector<int> wires) {
  return Gate{Kind::CTRL, std::move(wires), {}, std::move(pattern), std::make_shared<const Gate>(std::move(base))};
}
}  // namespace gates

Circuit& Circuit::add(Gate g) {
  if (g.kind == Kind::INIT) ++n_out;
  if (g.kind == Kind::DEST) --n_out;
  gates.push_back(std::move(g));
  return *this;
}

int Circuit::max_width() const {
  int w = n_in, m = n_in;
  for (const auto& g : gates) {
    if (g.kind == Kind::INIT) ++w;
    if (g.kind == Kind::DEST) --w;
    m = std::max(m, w);
  }
  return m;
}

namespace {

void check_gate_shape(const Gate& g, int width, bool local) {
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::InvalidCircuit, describe(g) + ": " + msg);
  };
  if (static_cast<int>(g.params.size()) != kind_param_count(g.kind)) fail("wrong parameter count");
  for (double v : g.params)
    if (!std::isfinite(v)) fail("non-finite angle");
  std::size_t want = 0;
  switch (g.kind) {
    case Kind::GPHASE: want = 0; break;
    case Kind::H:
    case Kind::P:
    case Kind::X:
    case Kind::Z:
    case Kind::RX:
    case Kind::INIT:
    case Kind::DEST: want = 1; break;
    case Kind::CNOT:
    case Kind::SWAP: want = 2; break;
    case Kind::MCP:
    case Kind::MCRX:
      if (g.wires.empty()) fail("needs at least one wire");
      want = g.wires.size();
      break;
    case Kind::CTRL: {
      if (!g.base) fail("missing base gate");
      const Gate& b = *g.base;
      if (b.kind == Kind::INIT || b.kind == Kind::DEST) fail("ancilla gates cannot be controlled");
      if (g.pattern.size() + b.arity_in() != g.wires.size()) fail("pattern length does not match wires");
      for (char ch : g.pattern)
        if (ch != '0' && ch != '1') fail("pattern must be over {0,1}");
      check_gate_shape(b, b.arity_in(), true);
      want = g.wires.size();
      break;
    }
  }
  if (g.wires.size() != want) fail("wrong wire count");
  for (std::size_t i = 0; i < g.wires.size(); ++i) {
    int limit = (g.kind == Kind::INIT) ? width + 1 : width;
    if (g.wires[i] < 0 || g.wires[i] >= limit) fail(local ? "local wire out of range" : "wire out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (g.wires[i] == g.wires[j]) fail("repeated wire");
  }
}

}  // namespace

void validate(const Circuit& c) {
  if (c.n_in < 0 || c.n_out < 0) throw Error(ErrorCode::InvalidCircuit, "negative arity");
  int width = c.n_in;
  for (const auto& g : c.gates) {
    check_gate_shape(g, width, false);
    if (g.kind == Kind::INIT) ++width;
    if (g.kind == Kind::DEST) --width;
  }
  if (width != c.n_out)
    throw Error(ErrorCode::InvalidCircuit,
                "threading ends with " + std::to_string(width) + " wires, expected " + std::to_string(c.n_out));
}

bool is_valid(const Circuit& c) {
  try {
    validate(c);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool has_ancilla_gates(const Circuit& c) {
  return std::any_of(c.gates.begin(), c.gates.end(),
                     [](const Gate& g) { return g.kind == Kind::INIT || g.kind == Kind::DEST; });
}

bool is_primitive(const Circuit& c) {
  return std::none_of(c.gates.begin(), c.gates.end(), [](const Gate& g) { return is_macro(g.kind); });
}

Circuit compose_seq(const Circuit& c1, const Circuit& c2) {
  if (c1.n_out != c2.n_in)
    throw Error(ErrorCode::ArityMismatch,
                "cannot compose " + std::to_string(c1.n_out) + " outputs with " + std::to_string(c2.n_in) + " inputs");
  Circuit r(c1.n_in, c2.n_out, c1.gates);
  r.gates.insert(r.gates.end(), c2.gates.begin(), c2.gates.end());
  return r;
}

namespace {

Gate shift_gate(Gate g, int by) {
  for (int& w : g.wires) w += by;
  return g;
}

}  // namespace

Circuit compose_par(const Circuit& c1, const Circuit& c2) {
  Circuit r(c1.n_in + c2.n_in, c1.n_out + c2.n_out, c1.gates);
  // c2 sees c1's wires (already at their output width) above its own.
  for (const auto& g : c2.gates) r.gates.push_back(shift_gate(g, c1.n_out));
  return r;
}

Circuit tensor_power(const Circuit& c, int k) {
  Circuit r(0);
  for (int i = 0; i < k; ++i) r = compose_par(r, c);
  return r;
}

namespace {

void emit_mcp(double phi, const std::vector<int>& q, std::vector<Gate>& out) {
  const std::size_t m = q.size();
  if (m == 0) {
    out.push_back(gates::gphase(phi));
    return;
  }
  if (m == 1) {
    out.push_back(gates::p(phi, q[0]));
    return;
  }
  std::vector<int> head(q.begin(), q.end() - 1);
  std::vector<int> skip(q.begin(), q.end() - 2);
  skip.push_back(q[m - 1]);
  emit_mcp(phi / 2, head, out);
  emit_mcp(phi / 2, skip, out);
  out.push_back(gates::cnot(q[m - 2], q[m - 1]));
  emit_mcp(-phi / 2, skip, out);
  out.push_back(gates::cnot(q[m - 2], q[m - 1]));
}

void emit_mcrx(double theta, const std::vector<int>& q, std::vector<Gate>& out) {
  const int t = q.back();
  if (q.size() == 1) {
    out.push_back(gates::gphase(-theta / 2));
    out.push_back(gates::h(t));
    out.push_back(gates::p(theta, t));
    out.push_back(gates::h(t));
    return;
  }
  std::vector<int> controls(q.begin(), q.end() - 1);
  out.push_back(gates::h(t));
  emit_mcp(theta, q, out);
  out.push_back(gates::h(t));
  emit_mcp(-theta / 2, controls, out);
}

std::vector<int> with(std::vector<int> v, const std::vector<int>& more) {
  v.insert(v.end(), more.begin(), more.end());
  return v;
}

Gate map_to(const Gate& local, const std::vector<int>& targets) {
  Gate g = local;
  for (int& w : g.wires) w = targets.at(w);
  return g;
}

void emit_ctrl(const std::vector<int>& outer, const Gate& g, std::vector<Gate>& out) {
  const std::size_t k = g.pattern.size();
  std::vector<int> controls(g.wires.begin(), g.wires.begin() + k);
  std::vector<int> targets(g.wires.begin() + k, g.wires.end());
  for (std::size_t i = 0; i < k; ++i)
    if (g.pattern[i] == '0') expand_gate(gates::x(controls[i]), out);
  expand_controlled(with(outer, controls), map_to(*g.base, targets), out);
  for (std::size_t i = k; i-- > 0;)
    if (g.pattern[i] == '0') expand_gate(gates::x(controls[i]), out);
}

}  // namespace

void expand_gate(const Gate& g, std::vector<Gate>& out) {
  switch (g.kind) {
    case Kind::X:
      out.push_back(gates::h(g.wires[0]));
      out.push_back(gates::p(kPi, g.wires[0]));
      out.push_back(gates::h(g.wires[0]));
      return;
    case Kind::Z: out.push_back(gates::p(kPi, g.wires[0])); return;
    case Kind::RX: emit_mcrx(g.params[0], g.wires, out); return;
    case Kind::MCP: emit_mcp(g.params[0], g.wires, out); return;
    case Kind::MCRX: emit_mcrx(g.params[0], g.wires, out); return;
    case Kind::CTRL: emit_ctrl({}, g, out); return;
    default: out.push_back(g); return;
  }
}

void expand_controlled(const std::vector<int>& controls, const Gate& g, std::vector<Gate>& out) {
  if (controls.empty()) {
    expand_gate(g, out);
    return;
  }
  switch (g.kind) {
    case Kind::GPHASE: emit_mcp(g.params[0], controls, out); return;
    case Kind::P: emit_mcp(g.params[0], with(controls, g.wires), out); return;
    case Kind::Z: emit_mcp(kPi, with(controls, g.wires), out); return;
    case Kind::RX: emit_mcrx(g.params[0], with(controls, g.wires), out); return;
    case Kind::X:
      emit_mcp(kPi / 2, controls, out);
      emit_mcrx(kPi, with(controls, g.wires), out);
      return;
    case Kind::H: {
      auto all = with(controls, g.wires);
      emit_mcp(kPi / 2, all, out);
      emit_mcrx(kPi / 2, all, out);
      emit_mcp(kPi / 2, all, out);
      return;
    }
    case Kind::CNOT: expand_controlled(with(controls, {g.wires[0]}), gates::x(g.wires[1]), out); return;
    case Kind::SWAP: {
      int a = g.wires[0], b = g.wires[1];
      expand_controlled(controls, gates::cnot(a, b), out);
      expand_controlled(controls, gates::cnot(b, a), out);
      expand_controlled(controls, gates::cnot(a, b), out);
      return;
    }
    case Kind::MCP: emit_mcp(g.params[0], with(controls, g.wires), out); return;
    case Kind::MCRX: emit_mcrx(g.params[0], with(controls, g.wires), out); return;
    case Kind::CTRL: emit_ctrl(controls, g, out); return;
    case Kind::INIT:
    case Kind::DEST: throw Error(ErrorCode::UnsupportedGate, "cannot control " + describe(g));
  }
}

Circuit expand_macros(const Circuit& c) {
  validate(c);
  Circuit r(c.n_in, c.n_out, {});
  for (const auto& g : c.gates) expand_gate(g, r.gates);
  return r;
}

Circuit strip_gphase(const Circuit& c) {
  Circuit r(c.n_in, c.n_out, {});
  for (const auto& g : c.gates)
    if (g.kind != Kind::GPHASE) r.gates.push_back(g);
  return r;
}

std::vector<int> Threaded::rank() const {
  std::vector<int> r(next_id, -1);
  for (std::size_t i = 0; i < order.size(); ++i) r[order[i]] = static_cast<int>(i);
  return r;
}

Threaded thread(const Circuit& c) {
  validate(c);
  Threaded t;
  std::vector<int> alive(c.n_in);
  std::iota(alive.begin(), alive.end(), 0);
  t.in_ids = alive;
  t.order = alive;
  t.next_id = c.n_in;
  for (const auto& g : c.gates) {
    WireGate wg{g, {}};
    if (g.kind == Kind::INIT) {
      const int p = g.wires[0];
      const int id = t.next_id++;
      if (p > 0) {
        auto it = std::find(t.order.begin(), t.order.end(), alive[p - 1]);
        t.order.insert(it + 1, id);
      } else if (!alive.empty()) {
        auto it = std::find(t.order.begin(), t.order.end(), alive[0]);
        t.order.insert(it, id);
      } else {
        t.order.push_back(id);
      }
      alive.insert(alive.begin() + p, id);
      wg.ids = {id};
    } else if (g.kind == Kind::DEST) {
      wg.ids = {alive[g.wires[0]]};
      alive.erase(alive.begin() + g.wires[0]);
    } else {
      for (int w : g.wires) wg.ids.push_back(alive[w]);
    }
    t.gates.push_back(std::move(wg));
  }
  t.out_ids = alive;
  return t;
}

Circuit unthread(const Threaded& t) {
  const auto rank = t.rank();
  auto rank_of = [&](int id) {
    if (id < 0 || id >= static_cast<int>(rank.size()) || rank[id] < 0)
      throw Error(ErrorCode::InvalidCircuit, "wire id " + std::to_string(id) + " has no position");
    return rank[id];
  };
  std::vector<int> alive = t.in_ids;
  std::sort(alive.begin(), alive.end(), [&](int a, int b) { return rank_of(a) < rank_of(b); });
  Circuit c(static_cast<int>(alive.size()));
  for (const auto& wg : t.gates) {
    Gate g = wg.gate;
    if (g.kind == Kind::INIT) {
      const int id = wg.ids.at(0);
      if (std::find(alive.begin(), alive.end(), id) != alive.end())
        throw Error(ErrorCode::InvalidCircuit, "wire initialised twice");
      auto it = std::lower_bound(alive.begin(), alive.end(), id,
                                 [&](int a, int b) { return rank_of(a) < rank_of(b); });
      g.wires = {static_cast<int>(it - alive.begin())};
      alive.insert(it, id);
    } else {
      g.wires.clear();
      for (int id : wg.ids) {
        auto it = std::find(alive.begin(), alive.end(), id);
        if (it == alive.end()) throw Error(ErrorCode::InvalidCircuit, "gate uses a wire that is not alive");
        g.wires.push_back(static_cast<int>(it - alive.begin()));
      }
      if (g.kind == Kind::DEST) alive.erase(alive.begin() + g.wires[0]);
    }
    c.add(std::move(g));
  }
  return c;
}

namespace {

int compare_params(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (angle_eq(a[i], b[i])) continue;
    return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare_gate_content(const Gate& a, const Gate& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (int c = compare_params(a.params, b.params)) return c;
  if (a.pattern != b.pattern) return a.pattern < b.pattern ? -1 : 1;
  if (a.base && b.base) {
    if (a.base->wires != b.base->wires) return a.base->wires < b.base->wires ? -1 : 1;
    return compare_gate_content(*a.base, *b.base);
  }
  return 0;
}

}  // namespace

namespace {

std::vector<std::size_t> canonical_permutation(const Threaded& t) {
  const auto rank = t.rank();
  const std::size_t n = t.gates.size();
  std::vector<int> depth(n, 0), min_rank(n, -1);
  std::vector<int> last_depth(t.next_id, -1);
  for (std::size_t i = 0; i < n; ++i) {
    int d = 0, mr = -1;
    for (int id : t.gates[i].ids) {
      d = std::max(d, last_depth[id] + 1);
      mr = (mr < 0) ? rank[id] : std::min(mr, rank[id]);
    }
    depth[i] = d;
    min_rank[i] = mr;
    for (int id : t.gates[i].ids) last_depth[id] = d;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (depth[a] != depth[b]) return depth[a] < depth[b];
    if (min_rank[a] != min_rank[b]) return min_rank[a] < min_rank[b];
    return compare_gate_content(t.gates[a].gate, t.gates[b].gate) < 0;
  });
  return idx;
}

}  // namespace

std::vector<int> canonical_order(const Circuit& c) {
  const auto idx = canonical_permutation(thread(c));
  return {idx.begin(), idx.end()};
}

CanonicalForm canonicalize(const Circuit& c) {
  Threaded t = thread(c);
  const auto rank = t.rank();
  Threaded sorted = t;
  sorted.gates.clear();
  for (std::size_t i : canonical_permutation(t)) {
    sorted.gates.push_back(t.gates[i]);
    auto& ids = sorted.gates.back().ids;
    if (sorted.gates.back().gate.kind == Kind::SWAP && rank[ids[0]] > rank[ids[1]]) std::swap(ids[0], ids[1]);
  }
  return CanonicalForm{unthread(sorted)};
}

bool syntactically_equal(const Circuit& c1, const Circuit& c2, double eps) {
  if (c1.n_in != c2.n_in || c1.n_out != c2.n_out || c1.gates.size() != c2.gates.size()) return false;
  for (std::size_t i = 0; i < c1.gates.size(); ++i)
    if (!gates_equal(c1.gates[i], c2.gates[i], eps)) return false;
  return true;
}

bool deformation_equal(const Circuit& c1, const Circuit& c2, double eps) {
  if (c1.n_in != c2.n_in || c1.n_out != c2.n_out)
    throw Error(ErrorCode::ArityMismatch, "deformation_equal needs circuits of equal arity");
  return syntactically_equal(canonicalize(c1).circuit, canonicalize(c2).circuit, eps);
}

}  // namespace qceq
