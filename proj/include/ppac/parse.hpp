#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "ppac/circuit.hpp"

namespace ppac {

// Partial marking of sum gates: gate index -> chosen child slot (0-based).
using Marking = std::map<int, int>;

// Accessibility graph G_S: which gates are reachable from the root when an
// accessible product gate exposes all of its children and an accessible sum
// gate exposes only its marked child (nothing if unmarked). Edges point from
// child to parent and are deduplicated.
struct AccessGraph {
  int root = -1;
  std::vector<char> vertex;               // one flag per gate
  std::set<std::pair<int, int>> edges;    // (child, parent)
  bool has(int g) const { return vertex[static_cast<std::size_t>(g)]; }
};

AccessGraph accessibility_graph(const Circuit& c, const Marking& s, int root);
AccessGraph accessibility_graph(const Circuit& c, const Marking& s);  // at out()

struct ClosureReport {
  bool closed = true;
  int unmarked_accessible = -1;  // accessible sum gate without a mark
  int marked_inaccessible = -1;  // marked gate outside the accessible set
  std::string describe(const Circuit& c) const;
};

ClosureReport check_closed(const Circuit& c, const Marking& s, int root);
bool is_closed(const Circuit& c, const Marking& s, int root);
bool is_closed(const Circuit& c, const Marking& s);

// Monomial with arbitrary-precision exponents: x_i -> e_i (absent = 0).
struct Monomial {
  std::map<int, BigInt> exps;
  std::set<int> support() const;
  bool full_support(int n) const;
  BigInt degree() const;
  // 1 at a iff every variable in the support is set in a.
  bool evaluates_to_one(const Assignment& a) const;
  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator<(const Monomial& o) const;
  std::string to_string() const;  // e.g. "x1*x3^2", "1" for the empty monomial
};

// Monomial computed by a closed marking: the exponent of x_i is the number of
// paths from its gate to the root in the accessibility graph (path counts over
// parallel slot edges are per slot for sums and per occurrence for products).
Monomial monomial_of(const Circuit& c, const Marking& s, int root);
Monomial monomial_of(const Circuit& c, const Marking& s);

bool is_maximal(const Circuit& c, const Marking& s, int root);
bool is_maximal(const Circuit& c, const Marking& s);

// Depth-first enumeration of all closed markings of the subcircuit rooted at
// `root`: branch on the smallest accessible unmarked sum gate in declaration
// order, slots in ascending order. Resumable; throws CapExceeded when more
// than `cap` markings would be emitted.
class ParseEnumerator {
 public:
  ParseEnumerator(const Circuit& c, int root, std::uint64_t cap);
  std::optional<Marking> next();
  std::uint64_t emitted() const { return emitted_; }

  // Optional pruning hook: called with a partial marking and its accessibility
  // graph; return false to discard the whole branch.
  std::function<bool(const Marking&, const AccessGraph&)> prune;

 private:
  const Circuit& c_;
  int root_;
  std::uint64_t cap_;
  std::uint64_t emitted_ = 0;
  struct Frame {
    Marking partial;
  };
  std::vector<Frame> stack_;
};

std::vector<Marking> enumerate_parse_subcircuits(const Circuit& c, std::uint64_t cap);
std::vector<Marking> enumerate_maximal(const Circuit& c, std::uint64_t cap);

// Restriction of s to the subcircuit C_g (every gate with a path to g).
Marking restrict_to(const Circuit& c, const Marking& s, int g);

// Replace the restriction of s to C_g by z_new. Does not re-validate closure;
// callers decide how to handle the result (see check_closed).
Marking splice(const Circuit& c, const Marking& s, int g, const Marking& z_new);

// Two partial markings agree on every commonly marked gate.
bool consistent(const Marking& a, const Marking& b);

// Gate set of the subcircuit C_g as a bitmap (gates with a path to g).
std::vector<char> cone_of(const Circuit& c, int g);

// Text form "s2=l,s4=r": entries sorted by gate id, slots l/c/r for arity <= 3
// and 1-based integers otherwise. The empty marking prints as "-".
std::string marking_to_string(const Circuit& c, const Marking& s);
Marking marking_from_string(const Circuit& c, const std::string& text);

}  // namespace ppac
