#pragma once

#include "ppac/ppa.hpp"
#include "ppac/reductions.hpp"

namespace ppac {

// Vertex of the graph G_N: either an assignment or a parse subcircuit of the
// host circuit, given by its (closed) marking.
struct GnVertex {
  bool is_assignment = true;
  Assignment a;  // valid when is_assignment
  Marking s;     // valid otherwise

  static GnVertex of(Assignment x) {
    GnVertex v;
    v.a = std::move(x);
    return v;
  }
  static GnVertex of(Marking m) {
    GnVertex v;
    v.is_assignment = false;
    v.s = std::move(m);
    return v;
  }
  bool operator==(const GnVertex& o) const {
    return is_assignment == o.is_assignment && a == o.a && s == o.s;
  }
  bool operator!=(const GnVertex& o) const { return !(*this == o); }
};

// The CNSS-to-Leaf reduction state: host = C' + L_a (the composition keeps its
// gate indices as a prefix, L_a sits on the right slot of the new root), and
// the standard leaf T = the unique maximal parse subcircuit of the L_a side.
struct EasinessInstance {
  PpaCircuit cprime;
  Assignment point;
  Circuit host;
  int la_root = -1;  // output gate of the L_a copy inside host
  Marking standard;  // T
  int n = 0;

  std::string vertex_to_string(const GnVertex& v) const;
};

EasinessInstance make_easiness_instance(const PpaCircuit& cprime,
                                        const Assignment& a);
EasinessInstance make_easiness_instance(const CnssInstance& in);

// Edges of G_N: {a, S} iff m_S(a) = 1; {S, S'} iff both are maximal, both
// select the composition side of the host root, and mu matches them.
bool edge_recognize(const EasinessInstance& inst, const GnVertex& v,
                    const GnVertex& w);

// Canonical all-ones witness of the subcircuit rooted at `root`: every gate it
// makes accessible is valued 1 at a. Built greedily — at each 1-valued sum the
// first 1-valued slot is chosen; for binary gates this is the unique choice
// (exactly one child of a 1-valued binary sum is valued 1 over F_2), for wider
// sums the number of 1-valued children is odd and the greedy pick is the
// canonical representative.
Marking allones_witness(const Circuit& c, int root, const Assignment& a);
Marking unique_allones_witness(const Circuit& c, const Assignment& a);

// Smallest (declaration order) sum gate in Dom(S) valued 0 at a.
std::optional<int> first_zero_gate(const Circuit& c, const Marking& s,
                                   const Assignment& a);

// The pairing function: for every vertex v, phi(v, .) is an involution on the
// neighbors of v with exactly deg(v) mod 2 fixed points.
GnVertex phi(const EasinessInstance& inst, const GnVertex& v, const GnVertex& w);

struct PairingReport {
  bool ok = true;
  std::uint64_t degree = 0;
  std::uint64_t self_pairs = 0;
  std::vector<std::string> violations;
};

// Enumerates the whole neighborhood of v (subcircuit enumeration capped by
// `budget`) and checks involution, range and fixed-point count.
PairingReport verify_pairing_contract(const EasinessInstance& inst,
                                      const GnVertex& v, std::uint64_t budget);

// One H-vertex of the walk: the G_N edge {pivot, other}, oriented so that the
// next step pairs `other` against pivot's pairing.
struct HEdge {
  GnVertex pivot, other;
};

// The H-neighbor of {pivot, other} across pivot: {pivot, phi(pivot, other)},
// or nothing when phi self-pairs (the edge is an H-leaf at pivot).
std::optional<HEdge> h_next(const EasinessInstance& inst, const HEdge& e);

// Walks H from the standard-leaf edge {1^n, T} and returns the terminal
// assignment b with (C' + L_a)(b) = 1, verified by evaluation. on_step (when
// set) observes every traversed edge.
Assignment solve_cnss_via_leaf(
    const EasinessInstance& inst, std::uint64_t step_cap,
    const std::function<void(const HEdge&)>& on_step = {});

}  // namespace ppac
