#include "qceq/random.hpp"

#include <algorithm>

namespace qceq {

Circuit random_circuit(Rng& rng, int n, int length, const RandomCircuitOptions& opts) {
  Circuit c(n);
  std::vector<int> kinds = {0, 1};
  if (opts.gphase) kinds.push_back(2);
  if (opts.macros) kinds.insert(kinds.end(), {3, 4, 5});
  if (n >= 2) {
    kinds.insert(kinds.end(), {6, 6});
    if (opts.swaps) kinds.push_back(7);
    if (opts.macros) kinds.insert(kinds.end(), {8, 9});
  }
  auto two = [&] {
    const int a = rng.below(n);
    int b = rng.below(n - 1);
    if (b >= a) ++b;
    return std::pair{a, b};
  };
  auto some_wires = [&] {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(w[i], w[rng.below(i + 1)]);
    w.resize(2 + rng.below(n - 1));
    return w;
  };
  for (int i = 0; i < length; ++i) {
    if (n == 0) {
      c.add(gates::gphase(rng.angle()));
      continue;
    }
    const int w = rng.below(n);
    switch (kinds[rng.below(static_cast<int>(kinds.size()))]) {
      case 0: c.add(gates::h(w)); break;
      case 1: c.add(gates::p(rng.angle(), w)); break;
      case 2: c.add(gates::gphase(rng.angle())); break;
      case 3: c.add(gates::rx(rng.angle(), w)); break;
      case 4: c.add(gates::x(w)); break;
      case 5: c.add(gates::z(w)); break;
      case 6: {
        auto [a, b] = two();
        c.add(gates::cnot(a, b));
        break;
      }
      case 7: {
        auto [a, b] = two();
        c.add(gates::swap(a, b));
        break;
      }
      case 8: c.add(gates::mcp(rng.angle(), some_wires())); break;
      case 9: c.add(gates::mcrx(rng.angle(), some_wires())); break;
    }
  }
  return c;
}

std::vector<double> random_params(Rng& rng, int count) {
  std::vector<double> v(count);
  for (auto& x : v) x = rng.angle();
  return v;
}

namespace {

bool is(const Gate& g, Kind k) { return g.kind == k; }
bool is(const Gate& g, Kind k, double a) { return g.kind == k && angle_eq(g.params[0], a); }

struct Proposer {
  Rng& rng;
  const Circuit& c;
  int n;
  // Per wire, the indices of the one-wire gates and multi-wire gates touching it, in order.
  std::vector<std::vector<int>> on_wire;
  std::vector<int> gphases;
  std::vector<Step> out;

  Proposer(Rng& r, const Circuit& circ) : rng(r), c(circ), n(circ.n_in), on_wire(circ.n_in) {
    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
      const Gate& g = c.gates[i];
      if (g.kind == Kind::GPHASE) gphases.push_back(i);
      for (int w : g.wires) on_wire[w].push_back(i);
    }
  }

  const Gate& at(int i) const { return c.gates[i]; }
  bool one_wire(int i) const { return at(i).wires.size() == 1; }

  void add(std::string rule, Direction d, std::vector<double> params, std::vector<int> gates,
           std::vector<int> wire_map, int at_index = -1) {
    out.push_back(Step{std::move(rule), d, std::move(params), -1, Site{std::move(gates), std::move(wire_map), at_index}});
  }

  // Consecutive one-wire gates on wire w matching the predicates.
  template <class... Pred>
  void runs(int w, const std::string& rule, Direction d, auto params_of, Pred... preds) {
    const auto& seq = on_wire[w];
    constexpr std::size_t m = sizeof...(Pred);
    for (std::size_t s = 0; s + m <= seq.size(); ++s) {
      std::vector<int> idx(seq.begin() + s, seq.begin() + s + m);
      if (!std::all_of(idx.begin(), idx.end(), [&](int i) { return one_wire(i); })) continue;
      std::size_t k = 0;
      const bool ok = (preds(at(idx[k++])) && ...);
      if (ok) add(rule, d, params_of(idx), idx, {w});
    }
  }

  void insertion(const std::string& rule, int wires) {
    const int pos = rng.below(static_cast<int>(c.gates.size()) + 1);
    std::vector<int> wm;
    if (wires == 1 && n > 0) wm = {rng.below(n)};
    if (wires == 1 && n == 0) return;
    add(rule, Direction::RL, {}, {}, wm, pos);
  }

  void propose(const std::string& rule) {
    auto any = [](Kind k) { return [k](const Gate& g) { return g.kind == k; }; };
    auto angle = [](Kind k, double a) { return [k, a](const Gate& g) { return is(g, k, a); }; };
    auto none = [](const std::vector<int>&) { return std::vector<double>{}; };
    auto first = [this](const std::vector<int>& idx) { return std::vector<double>{at(idx[0]).params[0]}; };
    if (rule == "S2PI" || rule == "S0") {
      const double a = rule == "S2PI" ? kTwoPi : 0.0;
      for (int i : gphases)
        if (is(at(i), Kind::GPHASE, a)) add(rule, Direction::LR, {}, {i}, {});
      insertion(rule, 0);
    } else if (rule == "SPLUS") {
      if (gphases.size() >= 2) {
        const int a = rng.below(static_cast<int>(gphases.size()));
        int b = rng.below(static_cast<int>(gphases.size()) - 1);
        if (b >= a) ++b;
        const int i = gphases[std::min(a, b)], j = gphases[std::max(a, b)];
        add(rule, Direction::LR, {at(i).params[0], at(j).params[0]}, {i, j}, {});
      }
      for (int i : gphases) {
        const double x = rng.angle();
        add(rule, Direction::RL, {x, at(i).params[0] - x}, {i}, {});
      }
    } else {
      for (int w = 0; w < n; ++w) propose_on(rule, w, any, angle, none, first);
      if (rule == "H2" || rule == "P0" || rule == "P2PI") insertion(rule, 1);
    }
  }

  void propose_on(const std::string& rule, int w, auto any, auto angle, auto none, auto first) {
    if (rule == "H2") {
      runs(w, rule, Direction::LR, none, any(Kind::H), any(Kind::H));
    } else if (rule == "P0") {
      runs(w, rule, Direction::LR, none, angle(Kind::P, 0.0));
    } else if (rule == "P2PI") {
      runs(w, rule, Direction::LR, none, angle(Kind::P, kTwoPi));
    } else if (rule == "EH") {
      runs(w, rule, Direction::LR, none, any(Kind::H));
      runs(w, rule, Direction::RL, none, angle(Kind::P, kPi / 2), angle(Kind::RX, kPi / 2), angle(Kind::P, kPi / 2));
    } else if (rule == "PPLUS") {
      runs(w, rule, Direction::LR, [this](const std::vector<int>& idx) {
        return std::vector<double>{at(idx[0]).params[0], at(idx[1]).params[0]};
      }, any(Kind::P), any(Kind::P));
      runs(w, rule, Direction::RL, [this](const std::vector<int>& idx) {
        const double x = rng.angle();
        return std::vector<double>{x, at(idx[0]).params[0] - x};
      }, any(Kind::P));
    } else if (rule == "XPX") {
      runs(w, rule, Direction::LR, [this](const std::vector<int>& idx) {
        return std::vector<double>{at(idx[1]).params[0]};
      }, any(Kind::X), any(Kind::P), any(Kind::X));
    } else if (rule == "E") {
      runs(w, rule, Direction::LR, [this](const std::vector<int>& idx) {
        return std::vector<double>{at(idx[0]).params[0], at(idx[1]).params[0], at(idx[2]).params[0]};
      }, any(Kind::RX), any(Kind::P), any(Kind::RX));
    } else if (rule == "RXDEF") {
      runs(w, rule, Direction::LR, first, any(Kind::RX));
    } else if (rule == "C") {
      propose_c(w);
    }
  }

  void propose_c(int w) {
    const auto& seq = on_wire[w];
    for (std::size_t s = 0; s < seq.size(); ++s) {
      const int i = seq[s];
      if (!is(at(i), Kind::P) || n < 2) continue;
      int t = rng.below(n - 1);
      if (t >= w) ++t;
      add("C", Direction::RL, {at(i).params[0]}, {i}, {w, t});
      // CNOT(w,t) P@w CNOT(w,t) with nothing on t in between.
      if (s == 0 || s + 1 >= seq.size()) continue;
      const int a = seq[s - 1], b = seq[s + 1];
      if (!is(at(a), Kind::CNOT) || !is(at(b), Kind::CNOT) || at(a).wires != at(b).wires || at(a).wires[0] != w)
        continue;
      const int tgt = at(a).wires[1];
      const auto& ts = on_wire[tgt];
      auto pos = std::find(ts.begin(), ts.end(), a);
      if (pos + 1 == ts.end() || *(pos + 1) != b) continue;
      add("C", Direction::LR, {at(i).params[0]}, {a, i, b}, {w, tgt});
    }
  }
};

}  // namespace

std::optional<Step> random_step(Rng& rng, const Circuit& c, const std::vector<std::string>& rules) {
  if (has_ancilla_gates(c)) throw Error(ErrorCode::UnsupportedGate, "random steps need a circuit without ancillas");
  Proposer p(rng, c);
  for (const auto& r : rules) p.propose(r);
  if (p.out.empty()) return std::nullopt;
  return p.out[rng.below(static_cast<int>(p.out.size()))];
}

}  // namespace qceq
