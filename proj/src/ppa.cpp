#include "ppac/ppa.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ppac {

namespace {

constexpr int kSlotLeft = 0;
constexpr int kSlotCenter = 1;
constexpr int kSlotRight = 2;

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Adds one copy of src (vars mapped through var_map) plus unary output
// buffers. Fills gate_map/buffers/membership bitmap entries of the component.
std::vector<int> add_copy_with_buffers(Circuit& c, const Circuit& src,
                                       const std::vector<int>& var_map,
                                       const std::string& prefix,
                                       std::vector<int>& gate_map,
                                       std::vector<char>& member) {
  std::size_t before = c.gates.size();
  std::vector<int> raw_out = append_circuit_copy(c, src, var_map, prefix + "_", &gate_map);
  std::vector<int> buffers;
  for (std::size_t j = 0; j < raw_out.size(); ++j) {
    Gate b;
    b.id = prefix + "y" + std::to_string(j + 1);
    b.kind = GateKind::Sum;
    b.children = {raw_out[j]};
    buffers.push_back(static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(b));
  }
  member.resize(c.gates.size(), 0);
  for (std::size_t i = before; i < c.gates.size(); ++i) {
    // The shared One gate may have been created inside the copy; it belongs
    // to no component.
    if (c.gates[i].kind != GateKind::One) member[i] = 1;
  }
  return buffers;
}

Component build_component(Circuit& c, int n, int one, const std::string& label,
                          const Circuit& outer_src, const Circuit* inner_src) {
  Component k;
  k.label = label;
  k.family = inner_src ? Component::Family::TwoLayer : Component::Family::OneLayer;
  std::string p = lower(label);
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars[static_cast<std::size_t>(i)] = i;

  std::vector<int> y;  // what the outer copy consumes
  if (inner_src) {
    k.inner_out = add_copy_with_buffers(c, *inner_src, vars, p + "_i", k.inner_map,
                                        k.inner_set);
    y = k.inner_out;
  } else {
    y = vars;
  }
  k.outer_out = add_copy_with_buffers(c, outer_src, y, p + "_o", k.outer_map,
                                      k.outer_set);
  for (int i = 1; i <= n; ++i) {
    Gate h;
    h.id = p + "_h" + std::to_string(i);
    h.kind = GateKind::Sum;
    h.children = {i - 1, k.outer_out[static_cast<std::size_t>(i - 1)], one};
    k.h.push_back(static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(h));
  }
  Gate t;
  t.id = p + "_t";
  t.kind = GateKind::Prod;
  t.children = k.h;
  k.root = static_cast<int>(c.gates.size());
  c.gates.push_back(std::move(t));
  k.inner_set.resize(c.gates.size(), 0);
  k.outer_set.resize(c.gates.size(), 0);
  return k;
}

bool member_at(const std::vector<char>& set, int g) {
  return g >= 0 && g < static_cast<int>(set.size()) && set[static_cast<std::size_t>(g)];
}

}  // namespace

int PpaComposition::component_of(const Marking& s) const {
  auto at = [&](int gate) -> int {
    auto it = s.find(gate);
    return it == s.end() ? -1 : it->second;
  };
  int top = at(root);
  if (top < 0) return -1;
  int pair_root = top == 0 ? c1 : top == 1 ? c2 : c3;
  int side = at(pair_root);
  if (side < 0) return -1;
  return top * 2 + side;
}

Marking PpaComposition::root_path(int k) const {
  Marking m;
  m[root] = k / 2;
  m[k / 2 == 0 ? c1 : k / 2 == 1 ? c2 : c3] = k % 2;
  return m;
}

PpaComposition ppa_composition(const Circuit& d, const Circuit& f) {
  if (d.n != f.n) throw ValidationError("ppa_composition: input arity mismatch");
  if (static_cast<int>(d.outputs.size()) != d.n ||
      static_cast<int>(f.outputs.size()) != f.n)
    throw ValidationError("ppa_composition: circuits must have n outputs");
  PpaComposition pc;
  pc.d = d;
  pc.f = f;
  pc.n = d.n;
  Circuit& c = pc.flattened;
  c = circuit_with_inputs(pc.n, "C_" + d.name + "_" + f.name);
  Gate o;
  o.id = "one";
  o.kind = GateKind::One;
  int one = static_cast<int>(c.gates.size());
  c.gates.push_back(std::move(o));

  pc.comp[0] = build_component(c, pc.n, one, "DF", d, &f);
  pc.comp[1] = build_component(c, pc.n, one, "FD", f, &d);
  pc.comp[2] = build_component(c, pc.n, one, "DD", d, &d);
  pc.comp[3] = build_component(c, pc.n, one, "D", d, nullptr);
  pc.comp[4] = build_component(c, pc.n, one, "FF", f, &f);
  pc.comp[5] = build_component(c, pc.n, one, "F", f, nullptr);

  auto pair_sum = [&](const char* id, int a, int b) {
    Gate g;
    g.id = id;
    g.kind = GateKind::Sum;
    g.children = {a, b};
    int idx = static_cast<int>(c.gates.size());
    c.gates.push_back(std::move(g));
    return idx;
  };
  pc.c1 = pair_sum("pair1", pc.comp[0].root, pc.comp[1].root);
  pc.c2 = pair_sum("pair2", pc.comp[2].root, pc.comp[3].root);
  pc.c3 = pair_sum("pair3", pc.comp[4].root, pc.comp[5].root);
  Gate r;
  r.id = "croot";
  r.kind = GateKind::Sum;
  r.children = {pc.c1, pc.c2, pc.c3};
  pc.root = static_cast<int>(c.gates.size());
  c.gates.push_back(std::move(r));
  c.outputs = {pc.root};
  for (Component& k : pc.comp) {
    k.inner_set.resize(c.gates.size(), 0);
    k.outer_set.resize(c.gates.size(), 0);
  }
  c.validate();
  return pc;
}

Circuit extend_with_disjoint_sum(const Circuit& base, const Circuit& extra,
                                 const std::string& prefix) {
  if (base.n != extra.n)
    throw ValidationError("extend_with_disjoint_sum: input arity mismatch");
  Circuit c = base;
  std::vector<int> var_map(static_cast<std::size_t>(c.n));
  for (int i = 1; i <= c.n; ++i) {
    int v = c.var_gate(i);
    if (v < 0)
      throw ValidationError("extend_with_disjoint_sum: base lacks a gate for x" +
                            std::to_string(i));
    var_map[static_cast<std::size_t>(i - 1)] = v;
  }
  int base_out = c.out();
  int extra_out = append_circuit_copy(c, extra, var_map, prefix).at(0);
  Gate root;
  root.id = prefix + "root";
  while (c.find(root.id) >= 0) root.id += "_";
  root.kind = GateKind::Sum;
  root.children = {base_out, extra_out};
  c.outputs = {static_cast<int>(c.gates.size())};
  c.gates.push_back(std::move(root));
  c.validate();
  return c;
}

PpaCircuit make_ppa_circuit(const Circuit& d, const Circuit& f,
                            const std::optional<Circuit>& tail) {
  PpaCircuit p;
  p.comp = ppa_composition(d, f);
  p.tail = tail;
  if (!tail) {
    p.flattened = p.comp.flattened;
    return p;
  }
  if (tail->n != d.n)
    throw ValidationError("make_ppa_circuit: tail input arity mismatch");
  if (circuit_degree(*tail).at(0) >= d.n)
    throw ValidationError("make_ppa_circuit: tail must have syntactic degree < n");
  p.flattened = extend_with_disjoint_sum(p.comp.flattened, *tail, "tail_");
  return p;
}

IndexSets index_sets(const PpaComposition& pc, const Circuit& host,
                     const Marking& s, int k) {
  const Component& comp = pc.comp[static_cast<std::size_t>(k)];
  AccessGraph g = accessibility_graph(host, s, host.out());
  IndexSets is;
  for (int i = 0; i < pc.n; ++i) {
    auto it = s.find(comp.h[static_cast<std::size_t>(i)]);
    if (it == s.end())
      throw ContractViolation("index_sets: h gate unmarked in component " + comp.label);
    if (it->second == kSlotCenter) is.out.insert(i + 1);
  }
  const std::vector<char>& in_set =
      comp.family == Component::Family::TwoLayer ? comp.inner_set : comp.outer_set;
  for (const auto& [child, parent] : g.edges) {
    if (child < pc.n && member_at(in_set, parent)) is.in.insert(child + 1);
    if (comp.family == Component::Family::TwoLayer) {
      for (int i = 0; i < pc.n; ++i)
        if (child == comp.inner_out[static_cast<std::size_t>(i)] &&
            member_at(comp.outer_set, parent))
          is.middle.insert(i + 1);
    }
  }
  if (comp.family == Component::Family::OneLayer) is.middle = is.in;
  return is;
}

const char* mu_case_name(MuCase c) {
  switch (c) {
    case MuCase::Flip: return "flip";
    case MuCase::Swap: return "swap";
    case MuCase::Mirror: return "mirror";
  }
  return "?";
}

namespace {

std::optional<int> mark_of(const Marking& s, int gate) {
  auto it = s.find(gate);
  if (it == s.end()) return std::nullopt;
  return it->second;
}

// Marks of the outer and inner copies agree gate-by-gate (as partial maps).
bool copies_agree(const Marking& s, const Component& comp, const Circuit& src) {
  for (std::size_t i = 0; i < src.gates.size(); ++i) {
    if (src.gates[i].kind != GateKind::Sum) continue;
    if (mark_of(s, comp.outer_map[i]) != mark_of(s, comp.inner_map[i])) return false;
  }
  for (std::size_t j = 0; j < comp.outer_out.size(); ++j)
    if (mark_of(s, comp.outer_out[j]).has_value() !=
        mark_of(s, comp.inner_out[j]).has_value())
      return false;
  return true;
}

const Circuit& outer_source(const PpaComposition& pc, int k) {
  return k == 1 || k == 4 || k == 5 ? pc.f : pc.d;
}
const Circuit& inner_source(const PpaComposition& pc, int k) {
  return k == 0 || k == 4 ? pc.f : pc.d;
}

void erase_component_marks(Marking& s, const Component& comp) {
  for (auto it = s.begin(); it != s.end();) {
    int g = it->first;
    bool inside = member_at(comp.outer_set, g) || member_at(comp.inner_set, g) ||
                  std::find(comp.h.begin(), comp.h.end(), g) != comp.h.end();
    it = inside ? s.erase(it) : ++it;
  }
}

[[noreturn]] void violate(const Circuit& host, const Marking& s, const std::string& what) {
  throw ContractViolation(what + " [marking " + marking_to_string(host, s) + "]");
}

}  // namespace

MuCase classify_mu_case(const PpaComposition& pc, const Circuit& host,
                        const Marking& s, int k) {
  IndexSets is = index_sets(pc, host, s, k);
  if (!std::includes(is.in.begin(), is.in.end(), is.out.begin(), is.out.end()))
    violate(host, s, "index set 'out' is not contained in 'in'");
  if (is.out != is.in) return MuCase::Flip;
  const Component& comp = pc.comp[static_cast<std::size_t>(k)];
  if (comp.family == Component::Family::OneLayer) return MuCase::Mirror;
  if (k == 0 || k == 1) return MuCase::Swap;
  return copies_agree(s, comp, outer_source(pc, k)) ? MuCase::Mirror : MuCase::Swap;
}

Marking mu(const PpaComposition& pc, const Circuit& host, const Marking& s) {
  ClosureReport cr = check_closed(host, s, host.out());
  if (!cr.closed) violate(host, s, "mu: marking not closed: " + cr.describe(host));
  if (!is_maximal(host, s, host.out())) violate(host, s, "mu: marking not maximal");
  int k = pc.component_of(s);
  if (k < 0) violate(host, s, "mu: marking does not select a composition component");
  const Component& comp = pc.comp[static_cast<std::size_t>(k)];
  IndexSets is = index_sets(pc, host, s, k);

  Marking out = s;
  if (!std::includes(is.in.begin(), is.in.end(), is.out.begin(), is.out.end()))
    violate(host, s, "mu: index set 'out' not contained in 'in'");

  if (is.out != is.in) {
    // Flip: toggle the h mark at the smallest uncovered index between l and r.
    std::vector<int> diff;
    std::set_difference(is.in.begin(), is.in.end(), is.out.begin(), is.out.end(),
                        std::back_inserter(diff));
    int i = diff.front();
    int h = comp.h[static_cast<std::size_t>(i - 1)];
    int cur = out.at(h);
    if (cur != kSlotLeft && cur != kSlotRight)
      violate(host, s, "mu: flip index marked with center slot");
    out[h] = cur == kSlotLeft ? kSlotRight : kSlotLeft;
  } else if (comp.family == Component::Family::TwoLayer && (k == 0 || k == 1)) {
    // Swap across the DF/FD pair: transport both copies through the
    // correspondence (outer copy of one is the inner copy of the other).
    int t = k ^ 1;
    const Component& target = pc.comp[static_cast<std::size_t>(t)];
    const Circuit& osrc = outer_source(pc, k);
    const Circuit& isrc = inner_source(pc, k);
    erase_component_marks(out, comp);
    out[pc.c1] = t % 2;
    for (std::size_t i = 0; i < osrc.gates.size(); ++i) {
      if (osrc.gates[i].kind != GateKind::Sum) continue;
      if (auto m = mark_of(s, comp.outer_map[i])) out[target.inner_map[i]] = *m;
    }
    for (std::size_t i = 0; i < isrc.gates.size(); ++i) {
      if (isrc.gates[i].kind != GateKind::Sum) continue;
      if (auto m = mark_of(s, comp.inner_map[i])) out[target.outer_map[i]] = *m;
    }
    for (std::size_t j = 0; j < comp.outer_out.size(); ++j) {
      if (mark_of(s, comp.outer_out[j])) out[target.inner_out[j]] = 0;
      if (mark_of(s, comp.inner_out[j])) out[target.outer_out[j]] = 0;
    }
    for (int i = 1; i <= pc.n; ++i)
      out[target.h[static_cast<std::size_t>(i - 1)]] =
          is.middle.count(i) ? kSlotCenter : kSlotLeft;
  } else if (comp.family == Component::Family::TwoLayer &&
             !copies_agree(s, comp, outer_source(pc, k))) {
    // Swap in place (DD or FF): exchange the markings of the two copies.
    const Circuit& src = outer_source(pc, k);
    Marking old = s;
    for (std::size_t i = 0; i < src.gates.size(); ++i) {
      if (src.gates[i].kind != GateKind::Sum) continue;
      auto mo = mark_of(old, comp.outer_map[i]);
      auto mi = mark_of(old, comp.inner_map[i]);
      out.erase(comp.outer_map[i]);
      out.erase(comp.inner_map[i]);
      if (mo) out[comp.inner_map[i]] = *mo;
      if (mi) out[comp.outer_map[i]] = *mi;
    }
    for (std::size_t j = 0; j < comp.outer_out.size(); ++j) {
      auto mo = mark_of(old, comp.outer_out[j]);
      auto mi = mark_of(old, comp.inner_out[j]);
      out.erase(comp.outer_out[j]);
      out.erase(comp.inner_out[j]);
      if (mo) out[comp.inner_out[j]] = 0;
      if (mi) out[comp.outer_out[j]] = 0;
    }
    for (int i = 1; i <= pc.n; ++i)
      out[comp.h[static_cast<std::size_t>(i - 1)]] =
          is.middle.count(i) ? kSlotCenter : kSlotLeft;
  } else if (comp.family == Component::Family::TwoLayer) {
    // Mirror into the one-layer partner (identical copies collapse to one).
    int t = k + 1;
    const Component& target = pc.comp[static_cast<std::size_t>(t)];
    const Circuit& src = outer_source(pc, k);
    erase_component_marks(out, comp);
    out[k == 2 ? pc.c2 : pc.c3] = 1;
    for (std::size_t i = 0; i < src.gates.size(); ++i) {
      if (src.gates[i].kind != GateKind::Sum) continue;
      if (auto m = mark_of(s, comp.outer_map[i])) out[target.outer_map[i]] = *m;
    }
    for (std::size_t j = 0; j < comp.outer_out.size(); ++j)
      if (mark_of(s, comp.outer_out[j])) out[target.outer_out[j]] = 0;
    for (int i = 0; i < pc.n; ++i)
      out[target.h[static_cast<std::size_t>(i)]] = s.at(comp.h[static_cast<std::size_t>(i)]);
  } else {
    // Mirror a one-layer component back into both copies of its partner.
    int t = k - 1;
    const Component& target = pc.comp[static_cast<std::size_t>(t)];
    const Circuit& src = outer_source(pc, k);
    erase_component_marks(out, comp);
    out[k == 3 ? pc.c2 : pc.c3] = 0;
    for (std::size_t i = 0; i < src.gates.size(); ++i) {
      if (src.gates[i].kind != GateKind::Sum) continue;
      if (auto m = mark_of(s, comp.outer_map[i])) {
        out[target.outer_map[i]] = *m;
        out[target.inner_map[i]] = *m;
      }
    }
    for (std::size_t j = 0; j < comp.outer_out.size(); ++j)
      if (mark_of(s, comp.outer_out[j])) {
        out[target.outer_out[j]] = 0;
        out[target.inner_out[j]] = 0;
      }
    for (int i = 0; i < pc.n; ++i)
      out[target.h[static_cast<std::size_t>(i)]] = s.at(comp.h[static_cast<std::size_t>(i)]);
  }

  ClosureReport cr2 = check_closed(host, out, host.out());
  if (!cr2.closed) violate(host, out, "mu: image not closed: " + cr2.describe(host));
  if (!is_maximal(host, out, host.out())) violate(host, out, "mu: image not maximal");
  if (out == s) violate(host, s, "mu: image equals argument");
  return out;
}

MatchingReport verify_matching(const PpaComposition& pc, const Circuit& host,
                               std::uint64_t cap) {
  MatchingReport rep;
  std::vector<Marking> maximal = enumerate_maximal(host, cap);
  rep.maximal_count = maximal.size();
  auto note = [&](const std::string& v) {
    rep.ok = false;
    if (rep.violations.size() < 32) rep.violations.push_back(v);
  };
  for (const Marking& s : maximal) {
    try {
      Marking image = mu(pc, host, s);
      Marking back = mu(pc, host, image);
      if (back != s)
        note("not involutive at " + marking_to_string(host, s) + " -> " +
             marking_to_string(host, image) + " -> " + marking_to_string(host, back));
    } catch (const ContractViolation& e) {
      note(e.what());
    }
  }
  if (rep.maximal_count % 2 != 0)
    note("odd number of maximal parse subcircuits: " +
         std::to_string(rep.maximal_count));
  return rep;
}

MatchingReport verify_matching(const PpaCircuit& pc, std::uint64_t cap) {
  return verify_matching(pc.comp, pc.flattened, cap);
}

}  // namespace ppac
