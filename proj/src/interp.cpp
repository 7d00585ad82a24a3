#include "qceq/interp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qceq/euler.hpp"
#include "qceq/random.hpp"

namespace qceq {

const char* interp_kind_name(InterpKind k) {
  switch (k) {
    case InterpKind::RealMod2Pi: return "RealMod2Pi";
    case InterpKind::RealModHalfPi: return "RealModHalfPi";
    case InterpKind::Parity: return "Parity";
    case InterpKind::Indicator: return "Indicator";
    case InterpKind::SmallMatrix: return "SmallMatrix";
  }
  return "?";
}

bool interp_equal(const InterpValue& a, const InterpValue& b, double tol) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case InterpKind::RealMod2Pi: return circ_dist(a.value, b.value) <= tol;
    case InterpKind::RealModHalfPi: return circ_dist(a.value, b.value, kPi / 2) <= tol;
    case InterpKind::Parity:
    case InterpKind::Indicator: return a.value == b.value;
    case InterpKind::SmallMatrix:
      return a.matrix.rows() == b.matrix.rows() && a.matrix.cols() == b.matrix.cols() &&
             max_abs_diff(a.matrix, b.matrix) <= tol;
  }
  return false;
}

json interp_to_json(const InterpValue& v) {
  json j{{"kind", interp_kind_name(v.kind)}};
  if (v.kind == InterpKind::SmallMatrix)
    j["matrix"] = matrix_to_json(v.matrix);
  else
    j["value"] = v.value;
  return j;
}

namespace {

void require_vanilla(const Circuit& c, const char* what) {
  if (has_ancilla_gates(c)) throw Error(ErrorCode::UnsupportedGate, std::string(what) + " is not defined on INIT/DEST");
}

}  // namespace

double interp_k(const Circuit& c, int k) {
  if (k < 0) throw Error(ErrorCode::BadParams, "k must be non-negative");
  require_vanilla(c, "the determinant interpretation");
  const Circuit e = expand_macros(c);
  double sum = 0.0;
  for (const auto& g : e.gates) {
    double term = 0.0;
    switch (g.kind) {
      case Kind::GPHASE: term = std::ldexp(g.params[0], k); break;
      case Kind::H: term = std::ldexp(kPi, k - 1); break;
      case Kind::P: term = std::ldexp(g.params[0], k - 1); break;
      case Kind::CNOT:
      case Kind::SWAP: term = std::ldexp(kPi, k - 2); break;
      default: throw Error(ErrorCode::UnsupportedGate, std::string("unexpected gate ") + kind_name(g.kind));
    }
    sum = wrap_2pi(sum + wrap_2pi(term, 0.0), 0.0);
  }
  return wrap_2pi(sum);
}

namespace {

// Permutation-level functor: one-wire gates and phases vanish, SWAP stays, CNOT stays or vanishes.
Matrix permutation_functor(const Circuit& e, bool keep_cnot) {
  require_vanilla(e, "the permutation interpretation");
  const int n = e.n_in;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> img(dim);
  std::iota(img.begin(), img.end(), 0);
  auto mask = [n](int w) { return std::size_t{1} << (n - 1 - w); };
  for (const auto& g : e.gates) {
    if (g.kind == Kind::CNOT && keep_cnot) {
      const std::size_t c = mask(g.wires[0]), t = mask(g.wires[1]);
      for (auto& y : img)
        if (y & c) y ^= t;
    } else if (g.kind == Kind::SWAP) {
      const std::size_t a = mask(g.wires[0]), b = mask(g.wires[1]);
      for (auto& y : img)
        if (((y & a) != 0) != ((y & b) != 0)) y ^= a | b;
    }
  }
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) m(static_cast<Eigen::Index>(img[x]), static_cast<Eigen::Index>(x)) = 1.0;
  return m;
}

InterpValue indicator(bool b) { return InterpValue{InterpKind::Indicator, b ? 1.0 : 0.0, {}}; }
InterpValue parity(int n) { return InterpValue{InterpKind::Parity, static_cast<double>(n % 2), {}}; }

}  // namespace

std::vector<std::string> counter_interpretations() { return {"S2PI", "SPLUS", "H2", "P0", "C", "B", "CZ", "EH"}; }

int interp_qubit_bound(const std::string& name) {
  if (name == "S2PI" || name == "SPLUS") return 0;
  if (name == "H2" || name == "P0" || name == "E") return 1;
  if (name == "C" || name == "CZ") return 2;
  if (name == "B" || name == "EH") return -1;
  throw Error(ErrorCode::NoInterpretation, "no counter-interpretation named " + name);
}

InterpValue interp_axiom(const std::string& name, const Circuit& c, double psi) {
  const Circuit e = expand_macros(c);
  auto any = [&](auto pred) { return std::any_of(e.gates.begin(), e.gates.end(), pred); };
  auto count = [&](auto pred) { return static_cast<int>(std::count_if(e.gates.begin(), e.gates.end(), pred)); };
  auto kind = [](Kind k) { return [k](const Gate& g) { return g.kind == k; }; };
  if (name == "S2PI") return indicator(any(kind(Kind::GPHASE)));
  if (name == "SPLUS")
    return indicator(any([&](const Gate& g) { return g.kind == Kind::GPHASE && angle_eq(g.params[0], psi); }));
  if (name == "H2") return indicator(any(kind(Kind::H)));
  if (name == "P0") return parity(count([](const Gate& g) { return g.kind == Kind::H || g.kind == Kind::P; }));
  if (name == "C") return indicator(any(kind(Kind::CNOT)));
  if (name == "EH") return parity(count(kind(Kind::H)));
  if (name == "B") return InterpValue{InterpKind::SmallMatrix, 0.0, permutation_functor(e, false)};
  if (name == "CZ") return InterpValue{InterpKind::SmallMatrix, 0.0, permutation_functor(e, true)};
  throw Error(ErrorCode::NoInterpretation, "no counter-interpretation named " + name);
}

namespace {

using M2 = std::array<cplx, 4>;

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 gate_m2(const Gate& g) {
  if (g.kind == Kind::H) {
    const double r = 1 / std::sqrt(2.0);
    return {r, r, r, -r};
  }
  if (g.kind == Kind::P) return {1.0, 0.0, 0.0, std::polar(1.0, g.params[0])};
  return {1.0, 0.0, 0.0, 1.0};
}

enum class Shape { Diagonal, AntiDiagonal, Neither };

constexpr double kShapeEps = 1e-10;

Shape classify(const M2& m) {
  if (std::abs(m[1]) < kShapeEps && std::abs(m[2]) < kShapeEps) return Shape::Diagonal;
  if (std::abs(m[0]) < kShapeEps && std::abs(m[3]) < kShapeEps) return Shape::AntiDiagonal;
  return Shape::Neither;
}

// Calls f(i, j, shape) for every pair of phase gates i < j (positions in p_gates).
void for_each_relation(const Circuit& e, const std::vector<int>& p_gates,
                       const std::function<void(int, int, Shape)>& f) {
  for (std::size_t i = 0; i < p_gates.size(); ++i) {
    M2 m{1.0, 0.0, 0.0, 1.0};
    std::size_t j = i + 1;
    for (int g = p_gates[i] + 1; g < static_cast<int>(e.gates.size()) && j < p_gates.size(); ++g) {
      if (g == p_gates[j]) {
        f(static_cast<int>(i), static_cast<int>(j), classify(m));
        ++j;
      }
      m = mul(gate_m2(e.gates[g]), m);
    }
  }
}

struct ParityUnionFind {
  std::vector<int> parent, rel;
  explicit ParityUnionFind(int n) : parent(n), rel(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
  // Root of x and the parity of x relative to it.
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 0};
    auto [r, p] = find(parent[x]);
    parent[x] = r;
    rel[x] ^= p;
    return {r, rel[x]};
  }
  void unite(int a, int b, int d) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != d) throw Error(ErrorCode::InconsistentClasses, "sign constraints contradict each other");
      return;
    }
    parent[rb] = ra;
    rel[rb] = pa ^ pb ^ d;
  }
};

}  // namespace

SignClasses sign_classes(const Circuit& c) {
  if (c.n_in > 1 || c.n_out != c.n_in) throw Error(ErrorCode::BadArity, "sign classes need a circuit on at most one wire");
  require_vanilla(c, "sign assignment");
  SignClasses sc;
  sc.expanded = expand_macros(c);
  for (int i = 0; i < static_cast<int>(sc.expanded.gates.size()); ++i)
    if (sc.expanded.gates[i].kind == Kind::P) sc.p_gates.push_back(i);
  const int m = static_cast<int>(sc.p_gates.size());
  ParityUnionFind uf(m);
  for_each_relation(sc.expanded, sc.p_gates, [&](int i, int j, Shape s) {
    if (s == Shape::Diagonal) uf.unite(i, j, 0);
    if (s == Shape::AntiDiagonal) uf.unite(i, j, 1);
  });
  std::vector<std::array<int, 2>> class_at(m, {-1, -1});
  sc.class_of.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    auto [r, p] = uf.find(i);
    int& id = class_at[r][p];
    if (id < 0) {
      id = static_cast<int>(sc.classes.size());
      sc.classes.emplace_back();
    }
    sc.class_of[i] = id;
    sc.classes[id].push_back(i);
  }
  for (const auto& ca : class_at)
    if (ca[0] >= 0 && ca[1] >= 0) sc.paired.emplace_back(std::min(ca[0], ca[1]), std::max(ca[0], ca[1]));
  std::sort(sc.paired.begin(), sc.paired.end());
  return sc;
}

bool valid_sign_assignment(const SignClasses& sc, const std::vector<int>& signs) {
  if (signs.size() != sc.p_gates.size()) return false;
  for (int s : signs)
    if (s != 1 && s != -1) return false;
  bool ok = true;
  for_each_relation(sc.expanded, sc.p_gates, [&](int i, int j, Shape s) {
    if (s == Shape::Diagonal && signs[i] != signs[j]) ok = false;
    if (s == Shape::AntiDiagonal && signs[i] == signs[j]) ok = false;
  });
  return ok;
}

namespace {

constexpr double kHalfPi = kPi / 2;

void dedupe_mod_half_pi(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > 1e-10) out.push_back(x);
  if (out.size() > 1 && circ_dist(out.front(), out.back(), kHalfPi) <= 1e-10) out.pop_back();
  v = std::move(out);
}

}  // namespace

std::vector<double> interp_E_values(const Circuit& c) {
  const SignClasses sc = sign_classes(c);
  // One free sign per component: a lone class or a pair of opposite classes.
  std::vector<double> comp_sum;
  std::vector<int> comp_of_class(sc.classes.size(), -1);
  std::vector<int> sign_of_class(sc.classes.size(), 1);
  for (const auto& [a, b] : sc.paired) {
    comp_of_class[a] = comp_of_class[b] = static_cast<int>(comp_sum.size());
    sign_of_class[b] = -1;
    comp_sum.push_back(0.0);
  }
  for (std::size_t k = 0; k < sc.classes.size(); ++k)
    if (comp_of_class[k] < 0) {
      comp_of_class[k] = static_cast<int>(comp_sum.size());
      comp_sum.push_back(0.0);
    }
  for (std::size_t i = 0; i < sc.p_gates.size(); ++i) {
    const int k = sc.class_of[i];
    comp_sum[comp_of_class[k]] += sign_of_class[k] * sc.expanded.gates[sc.p_gates[i]].params[0];
  }
  std::vector<double> values{0.0};
  for (double s : comp_sum) {
    std::vector<double> next;
    next.reserve(values.size() * 2);
    for (double v : values) {
      next.push_back(wrap_mod(v + s, kHalfPi));
      next.push_back(wrap_mod(v - s, kHalfPi));
    }
    dedupe_mod_half_pi(next);
    if (next.size() > (std::size_t{1} << 16))
      throw Error(ErrorCode::DomainError, "too many independent sign classes to enumerate");
    values = std::move(next);
  }
  return values;
}

bool value_sets_equal(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  auto covered = [tol](const std::vector<double>& x, const std::vector<double>& y) {
    return std::all_of(x.begin(), x.end(), [&](double v) {
      return std::any_of(y.begin(), y.end(), [&](double w) { return circ_dist(v, w, kHalfPi) <= tol; });
    });
  };
  return covered(a, b) && covered(b, a);
}

double f_gap(const std::array<int, 3>& s, const std::array<int, 3>& sp, double a1, double a2, double a3) {
  const BValues b = b_funcs(a1, a2, a3);
  return sp[0] * b.b1 + sp[1] * b.b2 + sp[2] * b.b3 - s[0] * a1 - s[1] * a2 - s[2] * a3;
}

json MinimalityReport::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) {
    std::string verdict = !r.in_bound && !r.target ? "skipped" : (r.unsound > 0 ? "unsound" : "sound");
    rows_j.push_back(json{{"rule", r.rule},
                          {"arity", r.arity},
                          {"in_bound", r.in_bound},
                          {"target", r.target},
                          {"instances", r.instances},
                          {"unsound", r.unsound},
                          {"verdict", verdict}});
  }
  json j{{"theory", theory_name(theory)},
         {"axiom", axiom},
         {"interpretation", interpretation},
         {"qubit_bound", bound < 0 ? json(nullptr) : json(bound)},
         {"samples", config.samples},
         {"max_qubits", config.max_qubits},
         {"seed", config.seed},
         {"rows", rows_j},
         {"verdict", pass ? "PASS" : "FAIL"}};
  if (axiom == "SPLUS") j["psi"] = psi;
  return j;
}

MinimalityReport minimality_report(Theory t, const std::string& axiom, const MinimalityConfig& cfg) {
  if (t == Theory::QCancilla || t == Theory::QCancillaprime)
    throw Error(ErrorCode::NoInterpretation, "counter-interpretations are defined on circuits without ancillas");
  if (!theory_has_rule(t, axiom))
    throw Error(ErrorCode::UnknownRule, axiom + " is not an axiom of " + theory_name(t));
  if (cfg.samples < 1) throw Error(ErrorCode::BadParams, "samples must be positive");

  MinimalityReport rep;
  rep.theory = t;
  rep.axiom = axiom;
  rep.config = cfg;
  Rng rng(cfg.seed);

  std::function<bool(const Circuit&, const Circuit&)> agree;
  int k = 0;
  if (axiom == "E") {
    rep.interpretation = "E_SIGN_SUM";
    rep.bound = 1;
    agree = [](const Circuit& a, const Circuit& b) { return value_sets_equal(interp_E_values(a), interp_E_values(b)); };
  } else if (axiom == "I") {
    if (cfg.max_qubits < 3) throw Error(ErrorCode::BadParams, "checking (I) needs max_qubits >= 3");
    k = cfg.max_qubits - 1;
    rep.interpretation = "DET_K" + std::to_string(k);
    rep.bound = k;
    agree = [k](const Circuit& a, const Circuit& b) { return circ_dist(interp_k(a, k), interp_k(b, k)) <= 1e-9; };
  } else {
    rep.bound = interp_qubit_bound(axiom);
    rep.interpretation = axiom;
    if (axiom == "SPLUS") rep.psi = rng.angle();
    const double psi = rep.psi;
    agree = [axiom, psi](const Circuit& a, const Circuit& b) {
      return interp_equal(interp_axiom(axiom, a, psi), interp_axiom(axiom, b, psi));
    };
  }

  for (const auto& id : list_rules(t)) {
    const RuleSignature& sig = rule_signature(id.name);
    std::vector<int> arities;
    if (sig.variable_n)
      for (int n = sig.min_n; n <= cfg.max_qubits; ++n) arities.push_back(n);
    else
      arities.push_back(sig.n);
    for (int n : arities) {
      MinimalityRow row;
      row.rule = sig.variable_n ? id.name + "(n=" + std::to_string(n) + ")" : id.name;
      row.arity = n;
      row.in_bound = rep.bound < 0 || n <= rep.bound;
      row.target = id.name == axiom && (axiom != "I" || n == cfg.max_qubits);
      if (row.in_bound || row.target) {
        std::vector<std::vector<double>> draws;
        if (row.target && axiom == "SPLUS") draws.push_back({rep.psi, kPi / 4});
        if (row.target && axiom == "E") {
          for (int s = 0; s < cfg.samples; ++s) draws.push_back({kPi / 4, kPi / 4 + rng.uniform(-0.1, 0.1), kPi / 4});
        } else if (sig.params == 0) {
          draws.emplace_back();
        } else {
          for (int s = 0; s < cfg.samples; ++s) draws.push_back(random_params(rng, sig.params));
        }
        for (const auto& p : draws) {
          const RuleInstance r = instantiate(id, p, n);
          ++row.instances;
          if (!agree(r.lhs, r.rhs)) ++row.unsound;
        }
      }
      rep.rows.push_back(row);
    }
  }

  bool target_flagged = false, others_sound = true;
  for (const auto& r : rep.rows) {
    if (r.target) {
      target_flagged = r.unsound > 0 && (axiom != "SPLUS" || r.unsound == 1);
    } else if (r.in_bound && r.unsound > 0) {
      others_sound = false;
    }
  }
  rep.pass = target_flagged && others_sound;
  return rep;
}

}  // namespace qceq
