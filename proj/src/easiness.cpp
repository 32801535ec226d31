#include "ppac/easiness.hpp"

#include <algorithm>
#include <sstream>

namespace ppac {

namespace {

// Smallest accessible unmarked sum under the partial marking m, or -1 when m
// is closed over the subcircuit rooted at `root`.
int next_unmarked_sum(const Circuit& c, const Marking& m, int root) {
  AccessGraph g = accessibility_graph(c, m, root);
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i)
    if (g.has(i) && c.is_sum(i) && !m.count(i)) return i;
  return -1;
}

// Slots of gate g whose children are valued 1 at the evaluated point.
std::vector<int> one_slots(const Circuit& c, const std::vector<Bit>& val, int g) {
  std::vector<int> out;
  const auto& ch = c.gates[static_cast<std::size_t>(g)].children;
  for (int j = 0; j < static_cast<int>(ch.size()); ++j)
    if (val[static_cast<std::size_t>(ch[j])]) out.push_back(j);
  return out;
}

// Builds an all-ones witness from a fixed decision prefix (gate, slot), then
// greedy completion: at every further sum take the first 1-valued slot.
Marking complete_witness(const Circuit& c, const std::vector<Bit>& val, int root,
                         const std::vector<std::pair<int, int>>& prefix) {
  if (!val[static_cast<std::size_t>(root)])
    throw ValidationError("all-ones witness requested below a 0-valued gate");
  Marking m;
  std::size_t at = 0;
  for (;;) {
    int g = next_unmarked_sum(c, m, root);
    if (g < 0) break;
    std::vector<int> ones = one_slots(c, val, g);
    if (ones.empty())
      throw ContractViolation("1-valued sum gate without a 1-valued child");
    int slot;
    if (at < prefix.size()) {
      if (prefix[at].first != g)
        throw ContractViolation("witness decision prefix diverged");
      slot = prefix[at].second;
      ++at;
      if (std::find(ones.begin(), ones.end(), slot) == ones.end())
        throw ContractViolation("witness decision picks a 0-valued child");
    } else {
      slot = ones.front();
    }
    m[g] = slot;
  }
  if (at != prefix.size())
    throw ContractViolation("witness decision prefix not exhausted");
  return m;
}

// Parity of the number of closed markings extending the partial marking m
// whose monomial survives at `a` (support inside the ones of `a`). Extensions
// split slot by slot over any unmarked sum, so this count satisfies the same
// recursion as the value of the circuit with every marked sum short-circuited
// to its chosen child, evaluated at `a` — which is what we compute.
Bit completion_parity(const Circuit& c, const Assignment& a, const Marking& m) {
  std::vector<Bit> v(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Var:
        v[i] = a[static_cast<std::size_t>(g.var - 1)];
        break;
      case GateKind::One:
        v[i] = 1;
        break;
      case GateKind::Sum: {
        auto it = m.find(static_cast<int>(i));
        if (it != m.end()) {
          v[i] = v[static_cast<std::size_t>(
              g.children[static_cast<std::size_t>(it->second)])];
        } else {
          Bit b = 0;
          for (int ch : g.children) b ^= v[static_cast<std::size_t>(ch)];
          v[i] = b;
        }
        break;
      }
      case GateKind::Prod: {
        Bit b = 1;
        for (int ch : g.children) b &= v[static_cast<std::size_t>(ch)];
        v[i] = b;
        break;
      }
    }
  }
  return v[static_cast<std::size_t>(c.out())];
}

// Canonical completion of a partial marking with odd completion parity: at
// every further sum take the first slot that keeps the parity odd. The result
// is the distinguished leaf of an odd decision subtree.
Marking odd_completion(const Circuit& c, const Assignment& a, Marking m,
                       int root) {
  if (!completion_parity(c, a, m))
    throw ContractViolation("odd completion requested in an even subtree");
  for (;;) {
    int g = next_unmarked_sum(c, m, root);
    if (g < 0) return m;
    int arity = static_cast<int>(c.gates[static_cast<std::size_t>(g)].children.size());
    int pick = -1;
    for (int j = 0; j < arity; ++j) {
      m[g] = j;
      if (completion_parity(c, a, m)) {
        pick = j;
        break;
      }
    }
    if (pick < 0) throw ContractViolation("odd subtree without an odd slot");
  }
}

Assignment all_ones(int n) { return Assignment(static_cast<std::size_t>(n), 1); }

bool composition_rooted(const EasinessInstance& inst, const Marking& s) {
  // The host root selects the composition side, and (when C' carries a tail)
  // so does the sum joining the composition with the tail.
  auto rt = s.find(inst.host.out());
  if (rt == s.end() || rt->second != 0) return false;
  if (inst.cprime.tail) {
    auto jt = s.find(inst.cprime.flattened.out());
    if (jt == s.end() || jt->second != 0) return false;
  }
  return true;
}

}  // namespace

std::string EasinessInstance::vertex_to_string(const GnVertex& v) const {
  if (v.is_assignment) return assignment_to_string(v.a);
  return marking_to_string(host, v.s);
}

EasinessInstance make_easiness_instance(const PpaCircuit& cprime,
                                        const Assignment& a) {
  if (static_cast<int>(a.size()) != cprime.flattened.n)
    throw ValidationError("easiness instance: point arity mismatch");
  EasinessInstance inst;
  inst.cprime = cprime;
  inst.point = a;
  inst.n = cprime.flattened.n;
  inst.host = extend_with_disjoint_sum(cprime.flattened, lagrange_circuit(a), "la_");
  inst.la_root = inst.host.gates[static_cast<std::size_t>(inst.host.out())]
                     .children.at(1);
  // T: right slot at the host root, then the variable pick at each Lagrange
  // factor x_i + 1 — the unique maximal parse subcircuit of the L_a side.
  inst.standard[inst.host.out()] = 1;
  AccessGraph g = accessibility_graph(inst.host, Marking{}, inst.la_root);
  // Every sum on the L_a side is a top-level factor, hence always accessible.
  for (int i = 0; i < static_cast<int>(inst.host.gates.size()); ++i) {
    if (!g.has(i) || !inst.host.is_sum(i)) continue;
    const Gate& gate = inst.host.gates[static_cast<std::size_t>(i)];
    int pick = -1;
    for (int j = 0; j < static_cast<int>(gate.children.size()); ++j)
      if (inst.host.gates[static_cast<std::size_t>(gate.children[j])].kind ==
          GateKind::Var)
        pick = j;
    if (pick < 0)
      throw ContractViolation("Lagrange factor without a variable child");
    inst.standard[i] = pick;
  }
  if (!is_closed(inst.host, inst.standard) ||
      !is_maximal(inst.host, inst.standard))
    throw ContractViolation("standard leaf T is not closed and maximal");
  return inst;
}

EasinessInstance make_easiness_instance(const CnssInstance& in) {
  return make_easiness_instance(in.circuit, in.point);
}

bool edge_recognize(const EasinessInstance& inst, const GnVertex& v,
                    const GnVertex& w) {
  if (v.is_assignment && w.is_assignment) return false;
  if (v.is_assignment != w.is_assignment) {
    const Assignment& a = v.is_assignment ? v.a : w.a;
    const Marking& s = v.is_assignment ? w.s : v.s;
    if (static_cast<int>(a.size()) != inst.n) return false;
    if (!is_closed(inst.host, s)) return false;
    return monomial_of(inst.host, s).evaluates_to_one(a);
  }
  if (!is_closed(inst.host, v.s) || !is_closed(inst.host, w.s)) return false;
  if (!is_maximal(inst.host, v.s) || !is_maximal(inst.host, w.s)) return false;
  if (!composition_rooted(inst, v.s) || !composition_rooted(inst, w.s))
    return false;
  if (v.s == w.s) return false;
  return mu(inst.cprime.comp, inst.host, v.s) == w.s;
}

Marking allones_witness(const Circuit& c, int root, const Assignment& a) {
  return complete_witness(c, evaluate_gates(c, a), root, {});
}

Marking unique_allones_witness(const Circuit& c, const Assignment& a) {
  if (evaluate(c, a).at(0) != 1)
    throw ValidationError("unique_allones_witness: circuit is 0 at the point");
  return allones_witness(c, c.out(), a);
}

std::optional<int> first_zero_gate(const Circuit& c, const Marking& s,
                                   const Assignment& a) {
  std::vector<Bit> val = evaluate_gates(c, a);
  for (const auto& [g, slot] : s) {
    (void)slot;
    if (c.is_sum(g) && !val[static_cast<std::size_t>(g)]) return g;
  }
  return std::nullopt;
}

GnVertex phi(const EasinessInstance& inst, const GnVertex& v, const GnVertex& w) {
  if (!edge_recognize(inst, v, w))
    throw ContractViolation("phi: {" + inst.vertex_to_string(v) + ", " +
                            inst.vertex_to_string(w) + "} is not an edge");
  const Circuit& c = inst.host;
  if (!v.is_assignment) {
    const Marking& s = v.s;
    if (!is_maximal(c, s)) {
      // Flip the smallest variable outside the monomial's support.
      std::set<int> supp = monomial_of(c, s).support();
      int i = 1;
      while (supp.count(i)) ++i;
      if (i > inst.n)
        throw ContractViolation("non-maximal subcircuit with full support");
      Assignment b = w.a;
      b[static_cast<std::size_t>(i - 1)] ^= 1;
      return GnVertex::of(std::move(b));
    }
    if (s == inst.standard) return w;  // T self-pairs its only neighbor 1^n
    // Other maximal subcircuits have exactly two neighbors: 1^n and the
    // matching partner; pair them with each other.
    if (w.is_assignment) return GnVertex::of(mu(inst.cprime.comp, c, s));
    return GnVertex::of(all_ones(inst.n));
  }

  // v is an assignment, w a subcircuit. The neighbors of `a` are exactly the
  // leaves of a decision tree: repeatedly mark the smallest accessible
  // unmarked sum, with completion_parity giving the leaf-count parity of
  // every subtree. That pairs the leaves canonically: at each node the
  // odd-parity slots pair up with each other, carrying the distinguished odd
  // completion across; every other leaf pairs deeper inside its own slot.
  // When the root parity is odd, the distinguished completion of the whole
  // tree is the one leftover and self-pairs.
  const Assignment& a = v.a;
  const Marking& s = w.s;
  const int root = c.out();
  Marking m;  // decision prefix shared by s and its partner
  // When set, the distinguished odd completion of m is spoken for (it pairs
  // at a shallower node, or is the global leftover), so the current subtree
  // pairs its remaining, evenly many, leaves.
  bool excluded = completion_parity(c, a, m) != 0;
  for (;;) {
    int g = next_unmarked_sum(c, m, root);
    if (g < 0) {
      if (excluded) return w;  // s is the distinguished leaf: self-pair
      throw ContractViolation("phi: even subtree collapsed to a single leaf");
    }
    auto it = s.find(g);
    if (it == s.end())
      throw ContractViolation("phi: neighbor marking is not closed at '" +
                              c.gates[static_cast<std::size_t>(g)].id + "'");
    int slot = it->second;
    int arity = static_cast<int>(c.gates[static_cast<std::size_t>(g)].children.size());
    std::vector<int> odd;  // odd-parity slots of g, in slot order
    for (int j = 0; j < arity; ++j) {
      m[g] = j;
      if (completion_parity(c, a, m)) odd.push_back(j);
    }
    m[g] = slot;
    std::size_t q = static_cast<std::size_t>(
        std::find(odd.begin(), odd.end(), slot) - odd.begin());
    if (q == odd.size()) {  // even-parity slot: pair inside it
      excluded = false;
      continue;
    }
    if (excluded && q == 0) continue;  // the distinguished branch: descend
    // Odd slots pair (1st,2nd), (3rd,4th), ... — skipping the distinguished
    // first one when it is excluded.
    std::size_t base = excluded ? 1 : 0;
    std::size_t partner = base + ((q - base) ^ 1);
    if (partner >= odd.size())
      throw ContractViolation("phi: unpaired odd-parity slot");
    if (odd_completion(c, a, m, root) == s) {
      m[g] = odd[partner];
      return GnVertex::of(odd_completion(c, a, std::move(m), root));
    }
    excluded = true;  // s pairs inside its slot, distinguished leaf excluded
  }
}

PairingReport verify_pairing_contract(const EasinessInstance& inst,
                                      const GnVertex& v, std::uint64_t budget) {
  PairingReport rep;
  std::vector<GnVertex> nbhd;
  if (v.is_assignment) {
    try {
      ParseEnumerator en(inst.host, inst.host.out(), budget);
      while (auto m = en.next())
        if (monomial_of(inst.host, *m).evaluates_to_one(v.a))
          nbhd.push_back(GnVertex::of(std::move(*m)));
    } catch (const CapExceeded&) {
      rep.ok = false;
      rep.violations.push_back("budget exceeded while enumerating neighbors");
      return rep;
    }
  } else {
    Monomial m = monomial_of(inst.host, v.s);
    std::size_t size = std::size_t{1} << inst.n;
    for (std::size_t u = 0; u < size; ++u) {
      Assignment a = assignment_from_index(u, inst.n);
      if (m.evaluates_to_one(a)) nbhd.push_back(GnVertex::of(std::move(a)));
    }
    if (is_maximal(inst.host, v.s) && composition_rooted(inst, v.s))
      nbhd.push_back(GnVertex::of(mu(inst.cprime.comp, inst.host, v.s)));
  }
  rep.degree = nbhd.size();
  auto find = [&](const GnVertex& x) {
    return std::find(nbhd.begin(), nbhd.end(), x) != nbhd.end();
  };
  for (const GnVertex& w : nbhd) {
    try {
      GnVertex p = phi(inst, v, w);
      if (p == w) {
        ++rep.self_pairs;
        continue;
      }
      if (!find(p)) {
        rep.ok = false;
        rep.violations.push_back("phi image outside the neighborhood: " +
                                 inst.vertex_to_string(p));
      } else if (phi(inst, v, p) != w) {
        rep.ok = false;
        rep.violations.push_back("phi not involutive at " +
                                 inst.vertex_to_string(w));
      }
    } catch (const Error& e) {
      rep.ok = false;
      rep.violations.push_back(std::string("phi failed at ") +
                               inst.vertex_to_string(w) + ": " + e.what());
    }
  }
  if (rep.self_pairs != rep.degree % 2) {
    rep.ok = false;
    std::ostringstream os;
    os << "degree " << rep.degree << " but " << rep.self_pairs << " self-pairs";
    rep.violations.push_back(os.str());
  }
  return rep;
}

std::optional<HEdge> h_next(const EasinessInstance& inst, const HEdge& e) {
  GnVertex next = phi(inst, e.pivot, e.other);
  if (next == e.other) return std::nullopt;
  return HEdge{std::move(next), e.pivot};
}

Assignment solve_cnss_via_leaf(const EasinessInstance& inst,
                               std::uint64_t step_cap,
                               const std::function<void(const HEdge&)>& on_step) {
  HEdge e{GnVertex::of(all_ones(inst.n)), GnVertex::of(inst.standard)};
  for (std::uint64_t step = 0; step <= step_cap; ++step) {
    if (on_step) on_step(e);
    std::optional<HEdge> next = h_next(inst, e);
    if (!next) {
      // e.pivot has odd degree; other than T this must be an assignment.
      if (!e.pivot.is_assignment)
        throw ContractViolation("walk terminated at a subcircuit");
      if (evaluate(inst.host, e.pivot.a).at(0) != 1)
        throw ContractViolation("walk terminal does not satisfy the circuit");
      return e.pivot.a;
    }
    // New H-vertex {old pivot, next}; pivot on its fresh endpoint.
    e = std::move(*next);
  }
  throw CapExceeded("solve_cnss_via_leaf: step cap exceeded");
}

}  // namespace ppac
