#pragma once

#include "ppac/parse.hpp"

namespace ppac {

// One of the six summands I(x, g(x)) of the composition, where g is one of
// D∘F, F∘D, D∘D, D, F∘F, F. Two-layer components hold an inner and an outer
// copy of the source circuits; one-layer components hold a single copy.
// Every copy's outputs are wrapped in unary sum gates ("output buffers") so
// that paths entering or leaving a copy always cross a gate owned by it.
struct Component {
  enum class Family { TwoLayer, OneLayer };
  Family family = Family::TwoLayer;
  std::string label;            // DF, FD, DD, D, FF, F
  int root = -1;                // the component's product gate
  std::vector<int> h;           // ternary sums x_i + y_i + 1
  std::vector<int> outer_map;   // source gate index -> flattened index
  std::vector<int> inner_map;   // empty for OneLayer
  std::vector<int> outer_out;   // output buffer gates of the outer copy
  std::vector<int> inner_out;
  std::vector<char> outer_set;  // membership bitmaps over flattened gates
  std::vector<char> inner_set;
};

// C_{D,F}(x) = I(x,D(F(x))) + I(x,F(D(x))) + I(x,D(D(x))) + I(x,D(x))
//            + I(x,F(F(x))) + I(x,F(x))
// flattened as root = (DF + FD) + (DD + D) + (FF + F): a ternary sum over
// three binary sums, pairing each two-layer component with its partner.
struct PpaComposition {
  Circuit d, f;       // copies of the sources
  Circuit flattened;  // single-output circuit over n variables
  int n = 0;
  int root = -1;      // ternary sum
  int c1 = -1, c2 = -1, c3 = -1;  // binary sums (DF+FD, DD+D, FF+F)
  Component comp[6];  // order: DF, FD, DD, D, FF, F

  int component_of(const Marking& s) const;  // index into comp, -1 if unknown
  // Root-path marks selecting component k: ternary root + binary pair sum.
  Marking root_path(int k) const;
};

PpaComposition ppa_composition(const Circuit& d, const Circuit& f);

// PPA-circuit: C_{D,F} plus an optional tail of syntactic degree < n, joined
// by a binary sum root. Without a tail the flattened circuit is the bare
// composition. Gate indices of the composition are preserved as a prefix.
struct PpaCircuit {
  PpaComposition comp;
  std::optional<Circuit> tail;
  Circuit flattened;
};

PpaCircuit make_ppa_circuit(const Circuit& d, const Circuit& f,
                            const std::optional<Circuit>& tail);

// Appends `extra` (single-output, same inputs) to `base` sharing variable and
// One gates, with a new binary sum root; base's gate indices are preserved.
Circuit extend_with_disjoint_sum(const Circuit& base, const Circuit& extra,
                                 const std::string& prefix);

struct IndexSets {
  std::set<int> out;     // i with S(h_i) = center
  std::set<int> middle;  // i whose inner output buffer feeds an accessible
                         // outer-copy gate (= in for one-layer components)
  std::set<int> in;      // i whose variable gate feeds an accessible
                         // inner-copy gate (outer copy for one-layer)
};

IndexSets index_sets(const PpaComposition& pc, const Circuit& host,
                     const Marking& s, int k);

enum class MuCase { Flip, Swap, Mirror };
const char* mu_case_name(MuCase c);

// Case analysis for a maximal parse subcircuit lying in component k:
//  Flip   - out is a proper subset of in (either family);
//  Swap   - out == in, and either the component is part of the DF/FD pair, or
//           it is two-layer with differently marked copies;
//  Mirror - out == in and the two copies carry identical markings (two-layer),
//           or the component is one-layer (transport into the paired
//           two-layer component).
MuCase classify_mu_case(const PpaComposition& pc, const Circuit& host,
                        const Marking& s, int k);

// The matching: a fixed-point-free involution on the maximal parse
// subcircuits of the composition part of `host` (host may extend the
// flattened composition with tails; composition gate indices must be a
// prefix, as produced by make_ppa_circuit / easiness instances).
// Validates closure and maximality of both argument and image.
Marking mu(const PpaComposition& pc, const Circuit& host, const Marking& s);

struct MatchingReport {
  bool ok = true;
  std::uint64_t maximal_count = 0;
  std::vector<std::string> violations;  // verbatim counterexamples
};

// Enumerates all maximal parse subcircuits of the host and checks that mu is
// total, fixed-point-free, involutive and maximality-preserving.
MatchingReport verify_matching(const PpaComposition& pc, const Circuit& host,
                               std::uint64_t cap);
MatchingReport verify_matching(const PpaCircuit& pc, std::uint64_t cap);

}  // namespace ppac
