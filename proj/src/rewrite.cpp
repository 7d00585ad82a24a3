#include "qceq/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <set>

namespace qceq {

const char* direction_name(Direction d) { return d == Direction::LR ? "LR" : "RL"; }

Direction direction_from_name(const std::string& s) {
  if (s == "LR") return Direction::LR;
  if (s == "RL") return Direction::RL;
  throw Error(ErrorCode::ParseError, "direction must be LR or RL, got '" + s + "'");
}

namespace {

bool listed(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Same gate up to the wires it is placed on. Angles are compared raw.
bool content_equal(const Gate& a, const Gate& b) {
  if (a.kind != b.kind || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (!angle_eq(a.params[i], b.params[i])) return false;
  if (a.kind == Kind::CTRL) {
    if (a.pattern != b.pattern || !a.base || !b.base) return false;
    return gates_equal(*a.base, *b.base);
  }
  return true;
}

std::string strip_code(const Error& e) {
  const std::string w = e.what();
  const std::string prefix = std::string(error_code_name(e.code())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

void insert_by_rank(std::vector<int>& alive, int id, const std::vector<int>& rank) {
  auto it = std::lower_bound(alive.begin(), alive.end(), id, [&](int a, int b) { return rank[a] < rank[b]; });
  alive.insert(it, id);
}

}  // namespace

RuleInstance resolve_rule(const Step& s, Theory theory, const ReplayOptions& opts) {
  if (listed(opts.exclude, s.rule)) throw Error(ErrorCode::UnknownRule, s.rule + " is excluded here");
  if (theory_has_rule(theory, s.rule)) return instantiate({theory, s.rule}, s.params, s.n);
  RuleInstance r;
  if (is_definition(s.rule)) {
    r = definition_instantiate(s.rule, s.params, s.n);
  } else if (is_lemma(s.rule)) {
    if (!opts.allow_lemmas) throw Error(ErrorCode::UnknownRule, s.rule + " is a derived lemma and lemmas are off");
    r = lemma_instantiate(s.rule, s.params, s.n);
  } else {
    throw Error(ErrorCode::UnknownRule, "'" + s.rule + "' is not a rule of " + theory_name(theory));
  }
  if (theory == Theory::QCugp) {
    r.lhs = strip_gphase(r.lhs);
    r.rhs = strip_gphase(r.rhs);
    r.up_to_phase = true;
  }
  return r;
}

Circuit rewrite_at(const Circuit& c, const Circuit& from, const Circuit& to, const Site& site, Site* landing) {
  Threaded t = thread(c);
  const int N = static_cast<int>(t.gates.size());

  std::vector<int> sel = site.gates;
  std::sort(sel.begin(), sel.end());
  if (std::adjacent_find(sel.begin(), sel.end()) != sel.end())
    throw Error(ErrorCode::IllegalSite, "a gate index is listed twice");
  for (int i : sel)
    if (i < 0 || i >= N) throw Error(ErrorCode::IllegalSite, "gate index " + std::to_string(i) + " out of range");
  if (sel.size() != from.gates.size())
    throw Error(ErrorCode::NoMatch, "site selects " + std::to_string(sel.size()) + " gates, rule side has " +
                                        std::to_string(from.gates.size()));

  int lo, hi;
  if (sel.empty()) {
    if (site.at < 0 || site.at > N)
      throw Error(ErrorCode::IllegalSite, "insertion point 'at' must lie in [0, " + std::to_string(N) + "]");
    lo = site.at;
    hi = site.at - 1;
  } else {
    lo = sel.front();
    hi = sel.back();
  }

  // Unselected gates inside the block's span either depend on it (moved after) or not (moved before).
  std::vector<char> is_sel(N, 0), after(N, 0);
  for (int i : sel) is_sel[i] = 1;
  std::vector<char> sel_id(t.next_id, 0), after_id(t.next_id, 0);
  for (int i = lo; i <= hi; ++i) {
    const auto& ids = t.gates[i].ids;
    if (is_sel[i]) {
      for (int id : ids)
        if (after_id[id])
          throw Error(ErrorCode::IllegalSite,
                      "selected gate " + std::to_string(i) + " depends on an unselected gate inside the block");
      for (int id : ids) sel_id[id] = 1;
    } else if (std::any_of(ids.begin(), ids.end(), [&](int id) { return sel_id[id] || after_id[id]; })) {
      after[i] = 1;
      for (int id : ids) after_id[id] = 1;
    }
  }

  const auto rank = t.rank();
  std::vector<int> alive = t.in_ids;
  auto advance = [&](const WireGate& wg) {
    if (wg.gate.kind == Kind::INIT) insert_by_rank(alive, wg.ids[0], rank);
    if (wg.gate.kind == Kind::DEST) alive.erase(std::find(alive.begin(), alive.end(), wg.ids[0]));
  };
  for (int i = 0; i < lo; ++i) advance(t.gates[i]);
  for (int i = lo; i <= hi; ++i)
    if (!is_sel[i] && !after[i]) advance(t.gates[i]);

  if (static_cast<int>(site.wire_map.size()) != from.n_in)
    throw Error(ErrorCode::IllegalSite, "wire map has " + std::to_string(site.wire_map.size()) +
                                            " entries, rule side has " + std::to_string(from.n_in) + " inputs");
  {
    std::set<int> seen;
    for (int w : site.wire_map) {
      if (w < 0 || w >= static_cast<int>(alive.size()))
        throw Error(ErrorCode::IllegalSite, "wire map entry " + std::to_string(w) + " out of range");
      if (!seen.insert(w).second) throw Error(ErrorCode::IllegalSite, "wire map is not injective");
    }
  }

  Threaded ts = thread(from);
  std::vector<int> bind(ts.next_id, -1);
  for (int i = 0; i < from.n_in; ++i) bind[ts.in_ids[i]] = alive[site.wire_map[i]];

  std::vector<std::vector<int>> on_wire(t.next_id);
  for (int i : sel)
    for (int id : t.gates[i].ids) on_wire[id].push_back(i);
  std::vector<std::size_t> cursor(t.next_id, 0);
  std::vector<char> matched(N, 0);
  std::set<int> born;

  for (std::size_t k = 0; k < ts.gates.size(); ++k) {
    const WireGate& sg = ts.gates[k];
    const std::string where = "rule gate " + std::to_string(k) + " (" + describe(sg.gate) + ")";
    int found = -1;
    if (sg.gate.kind == Kind::GPHASE) {
      for (int i : sel)
        if (!matched[i] && content_equal(t.gates[i].gate, sg.gate)) {
          found = i;
          break;
        }
      if (found < 0) throw Error(ErrorCode::NoMatch, where + " has no selected counterpart");
      matched[found] = 1;
      continue;
    }
    if (sg.gate.kind == Kind::INIT) {
      for (int i : sel)
        if (!matched[i] && t.gates[i].gate.kind == Kind::INIT) {
          found = i;
          break;
        }
      if (found < 0) throw Error(ErrorCode::NoMatch, where + " has no selected counterpart");
      bind[sg.ids[0]] = t.gates[found].ids[0];
      born.insert(t.gates[found].ids[0]);
    }
    std::vector<int> cids;
    for (int lid : sg.ids) cids.push_back(bind[lid]);
    int cand = -1;
    for (int cid : cids) {
      if (cursor[cid] >= on_wire[cid].size())
        throw Error(ErrorCode::NoMatch, where + " runs past the selected gates on its wire");
      const int here = on_wire[cid][cursor[cid]];
      if (cand >= 0 && here != cand)
        throw Error(ErrorCode::NoMatch, where + " spans wires whose next selected gates differ");
      cand = here;
    }
    if (found >= 0 && cand != found) throw Error(ErrorCode::NoMatch, where + " does not line up");
    found = cand;
    if (matched[found]) throw Error(ErrorCode::NoMatch, where + " matched twice");
    const WireGate& cg = t.gates[found];
    bool ids_ok = cg.ids == cids;
    if (!ids_ok && cg.gate.kind == Kind::SWAP && cids.size() == 2)
      ids_ok = cg.ids == std::vector<int>{cids[1], cids[0]};
    if (!ids_ok) throw Error(ErrorCode::NoMatch, where + " sits on different wires than gate " + std::to_string(found));
    if (!content_equal(cg.gate, sg.gate))
      throw Error(ErrorCode::NoMatch, where + " differs from gate " + std::to_string(found) + " (" +
                                          describe(cg.gate) + ")");
    matched[found] = 1;
    for (int cid : cids) ++cursor[cid];
  }

  std::vector<int> src_out;
  for (int lid : ts.out_ids) src_out.push_back(bind[lid]);

  Threaded tt = thread(to);
  if (to.n_in != from.n_in || to.n_out != from.n_out)
    throw Error(ErrorCode::ShapeMismatch, "rule sides have different shapes");
  std::vector<int> tbind(tt.next_id, -1);
  for (int i = 0; i < to.n_in; ++i) tbind[tt.in_ids[i]] = bind[ts.in_ids[i]];
  for (std::size_t j = 0; j < tt.out_ids.size(); ++j) {
    const int lid = tt.out_ids[j];
    if (lid < to.n_in) {
      if (tbind[lid] != src_out[j]) throw Error(ErrorCode::IllegalSite, "rule permutes wire identities");
    } else {
      if (!born.count(src_out[j])) throw Error(ErrorCode::IllegalSite, "rule replaces an input wire by a new one");
      tbind[lid] = src_out[j];
    }
  }

  std::vector<WireGate> block;
  std::vector<int> local = tt.in_ids;
  for (const auto& tg : tt.gates) {
    if (tg.gate.kind == Kind::INIT) {
      const int lid = tg.ids[0];
      const int p = tg.gate.wires[0];
      if (tbind[lid] < 0) {
        const int fresh = t.next_id++;
        if (p > 0) {
          auto it = std::find(t.order.begin(), t.order.end(), tbind[local[p - 1]]);
          t.order.insert(it + 1, fresh);
        } else if (!local.empty()) {
          auto it = std::find(t.order.begin(), t.order.end(), tbind[local[0]]);
          t.order.insert(it, fresh);
        } else {
          t.order.push_back(fresh);
        }
        tbind[lid] = fresh;
      }
      local.insert(local.begin() + p, lid);
    } else if (tg.gate.kind == Kind::DEST) {
      local.erase(local.begin() + tg.gate.wires[0]);
    }
    WireGate wg{tg.gate, {}};
    for (int lid : tg.ids) wg.ids.push_back(tbind[lid]);
    block.push_back(std::move(wg));
  }

  std::vector<WireGate> out;
  out.reserve(t.gates.size() + block.size());
  for (int i = 0; i < lo; ++i) out.push_back(t.gates[i]);
  for (int i = lo; i <= hi; ++i)
    if (!is_sel[i] && !after[i]) out.push_back(t.gates[i]);
  if (landing) {
    const int start = static_cast<int>(out.size());
    landing->gates.resize(block.size());
    std::iota(landing->gates.begin(), landing->gates.end(), start);
    landing->wire_map = site.wire_map;
    landing->at = block.empty() ? start : -1;
  }
  for (auto& wg : block) out.push_back(std::move(wg));
  for (int i = lo; i <= hi; ++i)
    if (after[i]) out.push_back(t.gates[i]);
  for (int i = hi + 1; i < N; ++i) out.push_back(t.gates[i]);
  t.gates = std::move(out);
  return unthread(t);
}

namespace {

// `cache` holds the semantics of c when non-empty and receives the semantics of the result.
StepResult step_impl(const Circuit& c, const Step& s, Theory theory, const ReplayOptions& opts, Matrix* cache) {
  const RuleInstance r = resolve_rule(s, theory, opts);
  const Circuit& from = s.direction == Direction::LR ? r.lhs : r.rhs;
  const Circuit& to = s.direction == Direction::LR ? r.rhs : r.lhs;
  StepResult res;
  res.circuit = rewrite_at(c, from, to, s.site, &res.landing);
  if (opts.safety && std::max(c.max_width(), res.circuit.max_width()) <= wire_cap()) {
    const Matrix a = (cache && cache->size() > 0) ? *cache : eval_matrix(c);
    Matrix b = eval_matrix(res.circuit);
    res.drift = r.up_to_phase ? max_abs_diff(a, phase_between(a, b) * b) : max_abs_diff(a, b);
    if (!(res.drift <= opts.tol))
      throw Error(ErrorCode::SemanticDrift, s.rule + " changed the semantics by " + std::to_string(res.drift));
    if (cache) *cache = r.up_to_phase ? a : std::move(b);
  } else if (cache) {
    cache->resize(0, 0);
  }
  return res;
}

}  // namespace

StepResult apply_step_checked(const Circuit& c, const Step& s, Theory theory, const ReplayOptions& opts) {
  return step_impl(c, s, theory, opts, nullptr);
}

Circuit apply_step(const Circuit& c, const Step& s, Theory theory, const ReplayOptions& opts) {
  return apply_step_checked(c, s, theory, opts).circuit;
}

ReplayResult replay_checked(const Derivation& d, const ReplayOptions& opts) {
  ReplayOptions o = opts;
  o.exclude.insert(o.exclude.end(), d.exclude.begin(), d.exclude.end());
  if (!d.proves.empty()) o.exclude.push_back(d.proves);
  ReplayResult res{d.initial, 0.0};
  validate(res.final_circuit);
  Matrix cache;
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    try {
      StepResult sr = step_impl(res.final_circuit, d.steps[k], d.theory, o, &cache);
      res.final_circuit = std::move(sr.circuit);
      res.max_drift = std::max(res.max_drift, sr.drift);
    } catch (const Error& e) {
      throw ReplayError(e.code(), k, d.steps[k].rule + ": " + strip_code(e));
    }
  }
  if (d.final_circuit && !deformation_equal(res.final_circuit, *d.final_circuit))
    throw ReplayError(ErrorCode::NoMatch, d.steps.size(), "result is not deformation-equal to the stated final circuit");
  return res;
}

Circuit replay(const Derivation& d, const ReplayOptions& opts) { return replay_checked(d, opts).final_circuit; }

namespace {

// Moves a site chosen on circuit `a` onto the deformation-equal circuit `b`. Gates are
// paired through the canonical order, where the two circuits agree gate for gate.
Site rebase_site(const Site& site, const Circuit& a, const Circuit& b) {
  const std::vector<int> oa = canonical_order(a), ob = canonical_order(b);
  if (oa.size() != ob.size()) throw Error(ErrorCode::IllegalSite, "cannot rebase a site across different circuits");
  std::vector<int> to_b(oa.size());
  for (std::size_t k = 0; k < oa.size(); ++k) to_b[oa[k]] = ob[k];
  Site out = site;
  for (int& g : out.gates) {
    if (g < 0 || g >= static_cast<int>(to_b.size())) throw Error(ErrorCode::IllegalSite, "cannot rebase gate " + std::to_string(g));
    g = to_b[g];
  }
  if (!site.gates.empty()) return out;

  const Threaded ta = thread(a), tb = thread(b);
  std::vector<int> id_to_b(ta.next_id, -1);
  for (int id : ta.in_ids) id_to_b[id] = tb.in_ids[id];
  for (std::size_t i = 0; i < ta.gates.size(); ++i)
    if (ta.gates[i].gate.kind == Kind::INIT) id_to_b[ta.gates[i].ids[0]] = tb.gates[to_b[i]].ids[0];

  auto alive_before = [](const Threaded& t, int at) {
    std::vector<int> alive = t.in_ids;
    const auto rank = t.rank();
    for (int i = 0; i < at; ++i) {
      const auto& wg = t.gates[i];
      if (wg.gate.kind == Kind::INIT) insert_by_rank(alive, wg.ids[0], rank);
      if (wg.gate.kind == Kind::DEST) alive.erase(std::find(alive.begin(), alive.end(), wg.ids[0]));
    }
    return alive;
  };
  const std::vector<int> alive_a = alive_before(ta, site.at);
  std::vector<int> touched;
  for (int w : site.wire_map) touched.push_back(alive_a.at(w));
  // Gates whose side of the insertion point must be kept: those on the touched wires and
  // every wire creation or removal.
  auto relevant = [&](const WireGate& wg) {
    if (wg.gate.kind == Kind::INIT || wg.gate.kind == Kind::DEST) return true;
    return std::any_of(wg.ids.begin(), wg.ids.end(),
                       [&](int id) { return std::find(touched.begin(), touched.end(), id) != touched.end(); });
  };
  const int size = static_cast<int>(tb.gates.size());
  int at = -1;
  for (int p = std::min(site.at, size), step = 0; step <= 2 * size + 1 && at < 0; ++step) {
    // Search outward from the original index.
    const int cand = (step % 2 == 0) ? p + step / 2 : p - (step + 1) / 2;
    if (cand < 0 || cand > size) continue;
    bool ok = true;
    for (std::size_t i = 0; i < ta.gates.size() && ok; ++i)
      if (relevant(ta.gates[i])) ok = (static_cast<int>(i) < site.at) == (to_b[i] < cand);
    if (ok) at = cand;
  }
  if (at < 0) throw Error(ErrorCode::IllegalSite, "cannot rebase an insertion point");
  out.at = at;
  const std::vector<int> alive_b = alive_before(tb, at);
  out.wire_map.clear();
  for (int id : touched) {
    auto it = std::find(alive_b.begin(), alive_b.end(), id_to_b[id]);
    if (it == alive_b.end()) throw Error(ErrorCode::IllegalSite, "cannot rebase an insertion point");
    out.wire_map.push_back(static_cast<int>(it - alive_b.begin()));
  }
  return out;
}

}  // namespace

Derivation invert(const Derivation& d, const ReplayOptions& opts) {
  ReplayOptions o = opts;
  o.exclude.insert(o.exclude.end(), d.exclude.begin(), d.exclude.end());
  std::vector<Circuit> seq{d.initial};
  std::vector<Site> landing;
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    try {
      StepResult sr = step_impl(seq.back(), d.steps[k], d.theory, o, nullptr);
      landing.push_back(sr.landing);
      seq.push_back(std::move(sr.circuit));
    } catch (const Error& e) {
      throw ReplayError(e.code(), k, d.steps[k].rule + ": " + strip_code(e));
    }
  }
  Derivation inv;
  inv.theory = d.theory;
  inv.initial = seq.back();
  inv.final_circuit = d.initial;
  inv.exclude = d.exclude;
  Circuit cur = seq.back();
  for (std::size_t k = d.steps.size(); k-- > 0;) {
    Step r = d.steps[k];
    r.direction = r.direction == Direction::LR ? Direction::RL : Direction::LR;
    try {
      r.site = rebase_site(landing[k], seq[k + 1], cur);
      cur = step_impl(cur, r, d.theory, o, nullptr).circuit;
    } catch (const Error& e) {
      throw ReplayError(e.code(), inv.steps.size(), r.rule + ": " + strip_code(e));
    }
    inv.steps.push_back(std::move(r));
  }
  return inv;
}

json step_to_json(const Step& s) {
  json site{{"gates", s.site.gates}, {"wire_map", s.site.wire_map}};
  if (s.site.at >= 0) site["at"] = s.site.at;
  return json{{"rule", s.rule}, {"direction", direction_name(s.direction)}, {"params", s.params}, {"n", s.n},
              {"site", site}};
}

Step step_from_json(const json& j) {
  try {
    Step s;
    s.rule = j.at("rule").get<std::string>();
    s.direction = direction_from_name(j.value("direction", std::string("LR")));
    s.params = j.value("params", std::vector<double>{});
    s.n = j.value("n", -1);
    const json& site = j.at("site");
    s.site.gates = site.value("gates", std::vector<int>{});
    s.site.wire_map = site.value("wire_map", std::vector<int>{});
    s.site.at = site.value("at", -1);
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad step: ") + e.what());
  }
}

json derivation_to_json(const Derivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps) steps.push_back(step_to_json(s));
  json j{{"theory", theory_name(d.theory)}, {"initial", circuit_to_json(d.initial)}, {"steps", steps}};
  if (d.final_circuit) j["final"] = circuit_to_json(*d.final_circuit);
  if (!d.proves.empty()) j["proves"] = d.proves;
  if (!d.exclude.empty()) j["exclude"] = d.exclude;
  return j;
}

Derivation derivation_from_json(const json& j) {
  try {
    Derivation d;
    d.theory = theory_from_name(j.at("theory").get<std::string>());
    d.initial = circuit_from_json(j.at("initial"));
    for (const auto& s : j.at("steps")) d.steps.push_back(step_from_json(s));
    if (j.contains("final")) d.final_circuit = circuit_from_json(j.at("final"));
    d.proves = j.value("proves", std::string());
    d.exclude = j.value("exclude", std::vector<std::string>{});
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad derivation: ") + e.what());
  }
}

Rewriter::Rewriter(Theory theory, Circuit initial, ReplayOptions opts)
    : theory_(theory), initial_(initial), current_(std::move(initial)), opts_(std::move(opts)) {
  validate(current_);
}

void Rewriter::apply(const Step& s) {
  StepResult r = step_impl(current_, s, theory_, opts_, &cache_);
  current_ = std::move(r.circuit);
  max_drift_ = std::max(max_drift_, r.drift);
  steps_.push_back(s);
}

void Rewriter::apply(const std::string& rule, Direction d, std::vector<double> params, int n, std::vector<int> gates,
                     std::vector<int> wire_map) {
  apply(Step{rule, d, std::move(params), n, Site{std::move(gates), std::move(wire_map), -1}});
}

void Rewriter::insert(const std::string& rule, Direction d, std::vector<double> params, int n, int at,
                      std::vector<int> wire_map) {
  apply(Step{rule, d, std::move(params), n, Site{{}, std::move(wire_map), at}});
}

Derivation Rewriter::derivation(const std::string& proves) const {
  Derivation d;
  d.theory = theory_;
  d.initial = initial_;
  d.steps = steps_;
  d.final_circuit = current_;
  d.proves = proves;
  d.exclude = opts_.exclude;
  return d;
}

std::vector<Site> find_sites(const RuleInstance& r, Direction d, const Circuit& c) {
  const Circuit& from = d == Direction::LR ? r.lhs : r.rhs;
  const Circuit& to = d == Direction::LR ? r.rhs : r.lhs;
  std::vector<Site> out;
  const int m = static_cast<int>(from.gates.size());
  const int n = from.n_in;
  const int width = c.max_width();
  if (m == 0 || n > width) return out;
  std::vector<std::vector<int>> maps;
  std::vector<int> cur;
  std::vector<char> used(width, 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      maps.push_back(cur);
      return;
    }
    for (int w = 0; w < width; ++w) {
      if (used[w]) continue;
      used[w] = 1;
      cur.push_back(w);
      self(self);
      cur.pop_back();
      used[w] = 0;
    }
  };
  rec(rec);
  for (int i = 0; i + m <= static_cast<int>(c.gates.size()); ++i) {
    Site s;
    s.gates.resize(m);
    std::iota(s.gates.begin(), s.gates.end(), i);
    for (const auto& wm : maps) {
      s.wire_map = wm;
      try {
        rewrite_at(c, from, to, s);
        out.push_back(s);
      } catch (const Error&) {
      }
    }
  }
  return out;
}

namespace {

constexpr double kTurnSnap = 1e-9;

// Drives a one-wire circuit to P RX P GPHASE with the axioms of QC or QCprime and a few
// derived lemmas.
class OneQubitNormalizer {
public:
  OneQubitNormalizer(const Circuit& c, Theory theory) : theory_(theory), rw_(theory, c, options()) {}

  NormalFormParams run() {
    unfold();
    if (theory_ == Theory::QCprime) {
      contract_prime();
    } else {
      for (int i = find(Kind::H); i >= 0; i = find(Kind::H)) lr("EH", {}, {i});
      contract();
      shape();
      canonical_euler();
    }
    merge_gphases();
    reduce(wires()[0]);
    reduce(wires()[2]);
    reduce(find(Kind::GPHASE));
    gphase_last();
    const auto w = wires();
    NormalFormParams p;
    p.beta0 = gate(find(Kind::GPHASE)).params[0];
    p.beta1 = gate(w[0]).params[0];
    p.beta2 = gate(w[1]).params[0];
    p.beta3 = gate(w[2]).params[0];
    return p;
  }

  Derivation derivation() const { return rw_.derivation(); }

private:
  static ReplayOptions options() {
    ReplayOptions o;
    o.allow_lemmas = true;
    return o;
  }

  const Gate& gate(int i) const { return rw_.circuit().gates[i]; }
  int size() const { return static_cast<int>(rw_.circuit().gates.size()); }

  int find(Kind k, int from = 0) const {
    for (int i = from; i < size(); ++i)
      if (gate(i).kind == k) return i;
    return -1;
  }

  int find_gphase(double a, int skip = -1) const {
    for (int i = 0; i < size(); ++i)
      if (i != skip && gate(i).kind == Kind::GPHASE && angle_eq(gate(i).params[0], a)) return i;
    throw Error(ErrorCode::NoMatch, "lost track of a global phase");
  }

  // Indices of the gates that sit on the wire.
  std::vector<int> wires() const {
    std::vector<int> v;
    for (int i = 0; i < size(); ++i)
      if (gate(i).kind != Kind::GPHASE) v.push_back(i);
    return v;
  }

  int count(Kind k) const {
    int n = 0;
    for (int i = 0; i < size(); ++i) n += gate(i).kind == k;
    return n;
  }

  static std::vector<int> wire_map_for(const std::string& rule) {
    return (rule == "S2PI" || rule == "SPLUS" || rule == "S0") ? std::vector<int>{} : std::vector<int>{0};
  }

  void lr(const std::string& rule, std::vector<double> params, std::vector<int> gates, int n = -1) {
    rw_.apply(rule, Direction::LR, std::move(params), n, std::move(gates), wire_map_for(rule));
  }
  void rl(const std::string& rule, std::vector<double> params, std::vector<int> gates) {
    rw_.apply(rule, Direction::RL, std::move(params), -1, std::move(gates), wire_map_for(rule));
  }
  void put(const std::string& rule, int at, std::vector<double> params = {}) {
    rw_.insert(rule, Direction::RL, std::move(params), -1, at, wire_map_for(rule));
  }

  void unfold() {
    for (int i = 0; i < size(); ++i) {
      const Gate& g = gate(i);
      switch (g.kind) {
        case Kind::X: lr("XDEF", {}, {i}); break;
        case Kind::Z: lr("ZDEF", {}, {i}); break;
        case Kind::MCP: lr("MCPDEF", g.params, {i}, 1); break;
        case Kind::MCRX: lr("MCRXDEF", g.params, {i}, 1); break;
        case Kind::CTRL: throw Error(ErrorCode::UnsupportedGate, "controlled gate in a one-wire circuit");
        default: continue;
      }
      i = -1;
    }
  }

  // GPHASE(0) at index `at`, built from the S-rules.
  void make_gphase0(int at) {
    put("S2PI", at);
    rl("SPLUS", {0.0, kTwoPi}, {at});
    lr("S2PI", {}, {at + 1});
  }

  // RX(0) at index `at`: H P(0) H with a zero phase, folded by the RX definition.
  void make_rx0(int at) {
    put("H2", at);
    put("P0", at + 1);
    make_gphase0(at);
    rl("RXDEF", {0.0}, {at, at + 1, at + 2, at + 3});
  }

  bool merge_adjacent_phases() {
    const auto w = wires();
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (gate(w[k]).kind == Kind::P && gate(w[k + 1]).kind == Kind::P) {
        lr("PPLUS", {gate(w[k]).params[0], gate(w[k + 1]).params[0]}, {w[k], w[k + 1]});
        return true;
      }
    return false;
  }

  void merge_phases() {
    while (merge_adjacent_phases()) {
    }
  }

  void contract() {
    merge_phases();
    while (count(Kind::RX) >= 2) {
      const auto w = wires();
      std::size_t a = 0;
      while (gate(w[a]).kind != Kind::RX) ++a;
      if (gate(w[a + 1]).kind == Kind::RX) {
        put("P0", w[a + 1]);
        continue;
      }
      const int r1 = w[a], p = w[a + 1], r2 = w[a + 2];
      lr("E", {gate(r1).params[0], gate(p).params[0], gate(r2).params[0]}, {r1, p, r2});
      merge_phases();
    }
  }

  void shape() {
    if (count(Kind::RX) == 0) make_rx0(size());
    int rx = find(Kind::RX);
    auto w = wires();
    if (w.front() == rx) put("P0", rx);
    rx = find(Kind::RX);
    w = wires();
    if (w.back() == rx) put("P0", rx + 1);
  }

  // One more Euler contraction against RX(0) puts the middle angle in [0, pi] with the
  // trailing phase zeroed at the ends of that interval.
  void canonical_euler() {
    auto w = wires();
    make_rx0(w[2] + 1);
    w = wires();
    lr("E", {gate(w[1]).params[0], gate(w[2]).params[0], 0.0}, {w[1], w[2], w[3]});
    merge_phases();
  }

  // P(a) at wire position k becomes H RX(a) H and a phase a/2.
  void p_to_rx(std::size_t k) {
    const double a = gate(wires()[k]).params[0];
    put("H2", wires()[k]);
    const auto w = wires();
    put("H2", k + 3 < w.size() ? w[k + 3] : size());
    const int g = wires()[k + 1];
    make_gphase0(g);
    rl("SPLUS", {-a / 2, a / 2}, {g});
    const auto v = wires();
    rl("RXDEF", {a}, {find_gphase(-a / 2), v[k + 1], v[k + 2], v[k + 3]});
  }

  // RX(a) RX(b) at wire positions k, k+1 become RX(a + b).
  void merge_rx(std::size_t k) {
    const double a = gate(wires()[k]).params[0];
    const double b = gate(wires()[k + 1]).params[0];
    lr("RXDEF", {a}, {wires()[k]});
    lr("RXDEF", {b}, {wires()[k + 3]});
    auto w = wires();
    lr("H2", {}, {w[k + 2], w[k + 3]});
    w = wires();
    lr("PPLUS", {a, b}, {w[k + 1], w[k + 2]});
    const int ga = find_gphase(-a / 2);
    lr("SPLUS", {-a / 2, -b / 2}, {ga, find_gphase(-b / 2, ga)});
    w = wires();
    rl("RXDEF", {a + b}, {find_gphase(-a / 2 + -b / 2), w[k], w[k + 1], w[k + 2]});
  }

  bool tidy_once() {
    const auto w = wires();
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      const Kind x = gate(w[k]).kind, y = gate(w[k + 1]).kind;
      if (x != y) continue;
      if (x == Kind::H) {
        lr("H2", {}, {w[k], w[k + 1]});
        return true;
      }
      if (x == Kind::RX) {
        merge_rx(k);
        return true;
      }
      if (x == Kind::P) {
        lr("PPLUS", {gate(w[k]).params[0], gate(w[k + 1]).params[0]}, {w[k], w[k + 1]});
        return true;
      }
    }
    return false;
  }

  // Phase gates are traded for RX between Hadamards; each (E') step then consumes one H.
  void contract_prime() {
    for (std::size_t k = 0; k < wires().size(); ++k)
      if (gate(wires()[k]).kind == Kind::P) p_to_rx(k);
    while (tidy_once()) {
    }
    if (count(Kind::H) == 0) {
      put("H2", size());
      make_rx0(size() - 1);
    }
    for (;;) {
      while (tidy_once()) {
      }
      const auto w = wires();
      std::size_t a = 0;
      while (a < w.size() && gate(w[a]).kind != Kind::H) ++a;
      if (a == w.size()) break;
      if (a == 0) {
        make_rx0(w[a]);
        continue;
      }
      if (gate(w[a - 1]).kind == Kind::P) {
        p_to_rx(a - 1);
        continue;
      }
      if (a + 1 == w.size()) {
        make_rx0(size());
        continue;
      }
      if (gate(w[a + 1]).kind == Kind::P) {
        p_to_rx(a + 1);
        continue;
      }
      lr("EPRIME", {gate(w[a - 1]).params[0], gate(w[a + 1]).params[0]}, {w[a - 1], w[a], w[a + 1]});
    }
  }

  void merge_gphases() {
    for (;;) {
      const int i = find(Kind::GPHASE);
      const int j = i < 0 ? -1 : find(Kind::GPHASE, i + 1);
      if (j < 0) break;
      lr("SPLUS", {gate(i).params[0], gate(j).params[0]}, {i, j});
    }
    if (find(Kind::GPHASE) < 0) make_gphase0(0);
  }

  void gphase_last() {
    const int i = find(Kind::GPHASE);
    if (i == size() - 1) return;
    make_gphase0(size());
    lr("SPLUS", {gate(i).params[0], 0.0}, {i, size() - 1});
  }

  // Brings the angle of gate i into [0, 2pi) by splitting off whole turns.
  void reduce(int i) {
    const bool phase = gate(i).kind == Kind::GPHASE;
    const double a = gate(i).params[0];
    const double t = wrap_2pi(a);
    if (a == t) return;
    const std::string plus = phase ? "SPLUS" : "PPLUS";
    const std::string turn = phase ? "S2PI" : "P2PI";
    const std::string zero = phase ? "S0" : "P0";
    rl(plus, {t, a - t}, {i});
    int r = phase ? find(Kind::GPHASE, i + 1) : i + 1;
    double rest = gate(r).params[0];
    while (rest > kTurnSnap) {
      if (std::abs(rest - kTwoPi) <= kTurnSnap) {
        lr(turn, {}, {r});
        return;
      }
      rl(plus, {rest - kTwoPi, kTwoPi}, {r});
      lr(turn, {}, {phase ? find(Kind::GPHASE, r + 1) : r + 1});
      rest = gate(r).params[0];
    }
    while (rest < -kTurnSnap) {
      put(turn, r + 1);
      lr(plus, {rest, kTwoPi}, {r, r + 1});
      rest = gate(r).params[0];
    }
    lr(zero, {}, {r});
  }

  Theory theory_;
  Rewriter rw_;
};

void require_one_wire(const Circuit& c) {
  if (c.n_in != 1 || c.n_out != 1) throw Error(ErrorCode::BadArity, "expected a circuit on one wire");
  for (const auto& g : c.gates)
    if (g.kind == Kind::INIT || g.kind == Kind::DEST)
      throw Error(ErrorCode::BadArity, "one-wire normal forms do not cover ancillas");
}

}  // namespace

NormalizeResult normalize_1q(const Circuit& c, bool emit_trace, Theory theory) {
  require_one_wire(c);
  validate(c);
  if (theory != Theory::QC && theory != Theory::QCprime)
    throw Error(ErrorCode::UnknownRule, std::string("no one-wire normalizer for ") + theory_name(theory));
  OneQubitNormalizer nz(c, theory);
  NormalizeResult res;
  res.params = nz.run();
  if (emit_trace) res.trace = nz.derivation();
  return res;
}

bool nf_params_equal(const NormalFormParams& a, const NormalFormParams& b, double tol) {
  return circ_dist(a.beta0, b.beta0) <= tol && circ_dist(a.beta1, b.beta1) <= tol &&
         std::abs(a.beta2 - b.beta2) <= tol && circ_dist(a.beta3, b.beta3) <= tol;
}

Derivation derive_equal_1q(const Circuit& lhs, const Circuit& rhs, Theory theory) {
  const NormalizeResult a = normalize_1q(lhs, true, theory);
  const NormalizeResult b = normalize_1q(rhs, true, theory);
  if (!nf_params_equal(a.params, b.params, 1e-8))
    throw Error(ErrorCode::NoMatch, "the two circuits have different normal forms");
  ReplayOptions o;
  o.allow_lemmas = true;
  const Derivation back = invert(*b.trace, o);
  Derivation d = *a.trace;
  d.steps.insert(d.steps.end(), back.steps.begin(), back.steps.end());
  d.final_circuit = rhs;
  return d;
}

bool decide_equiv_1q(const Circuit& c1, const Circuit& c2) {
  require_one_wire(c1);
  require_one_wire(c2);
  return nf_params_equal(normalize_1q(c1).params, normalize_1q(c2).params, 1e-8);
}

}  // namespace qceq
