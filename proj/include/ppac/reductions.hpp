#pragma once

#include "ppac/leaf.hpp"
#include "ppac/ppa.hpp"

namespace ppac {

// "Find b with (C' + L_a)(b) = 1", where C' is a PPA-circuit: its maximal
// parse subcircuits carry an explicit matching, so mdeg(C') < n and adding
// the Lagrange term forces a full-degree monomial to exist.
struct CnssInstance {
  PpaCircuit circuit;
  Assignment point;
};

// "Given a PPA-circuit C with C(a) = 0, find another zero."
struct ChevalleyInstance {
  PpaCircuit circuit;
  Assignment zero;
};

// D and F from a neighbor oracle, following the fixed conventions:
//   M(u) \ {u} empty          -> D(u) = F(u) = u
//   M(u) \ {u} = {v}          -> D(u) = v, F(u) = u
//   M(u) \ {u} = {v,w}, v<w   -> D(u) = v, F(u) = w   (lexicographic tie-break)
// Table-backed instances are synthesized from tables; circuit-backed
// instances pass their circuits through unchanged.
std::pair<Circuit, Circuit> neighbor_circuits(const LeafInstance& li);

// deg_{G_z}(u) is odd iff C_{D,F}(u) = 1: omega becomes a certified zero of
// C_{D,F} + 1 and every other zero is another leaf.
ChevalleyInstance leaf_to_chevalley(const LeafInstance& li);

// Which of the six components I(x, .) are satisfied at u, predicted purely
// from the oracle case analysis, versus evaluated from the circuits.
struct DegreeParityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// For every vertex u: the six-case classifier's predicted satisfied-component
// pattern matches evaluation, and parity(#satisfied) == parity(deg(u)).
DegreeParityReport verify_degree_parity(const LeafInstance& li);

// Per-vertex detail used by the CLI and the tests.
struct HardnessCase {
  int case_id = 0;  // 1, 2 (one neighbor listed), 3 (two listed)
  std::string detail;                // e.g. "2a", "3b"
  std::vector<std::string> satisfied;  // component labels, evaluated
  bool parity_ok = false;
  bool pattern_ok = false;
};
HardnessCase classify_vertex(const LeafInstance& li, const PpaComposition& pc,
                             std::size_t u);

// CNF with at most 3 literals per clause; literals are +-(1-based var).
struct Cnf {
  int vars = 0;
  std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs(std::istream& in);
Cnf parse_dimacs_text(const std::string& text);

// Depth-3 circuit over m = #clauses variables whose maximal parse subcircuits
// are in bijection with the satisfying assignments of f (odd count iff the
// parity-SAT instance has an odd number of solutions).
Circuit threesat_to_circuit(const Cnf& f);

// The bijection: assignment x -> marking (alpha_i picks the positive side
// when x_i = 1), and back. The inverse throws on non-maximal markings.
Marking assignment_to_parse(const Cnf& f, const Circuit& img, const Assignment& x);
Assignment parse_to_assignment(const Cnf& f, const Circuit& img, const Marking& s);

// (C', a) -> Chevalley on C' + 1 when C'(a) = 1; if C'(a) = 0 then a itself
// already satisfies C' + L_a and the reduction short-circuits.
struct CnssToChevalley {
  bool solved = false;   // short-circuit: answer is the point itself
  Assignment answer;     // valid when solved
  std::optional<ChevalleyInstance> instance;
};
CnssToChevalley cnss_to_chevalley(const CnssInstance& in);
// Maps a Chevalley answer back to a CNSS answer.
Assignment cnss_back_map(const CnssInstance& in, const Assignment& chevalley_answer);

// (C, a) -> CNSS on C + 1 at point a; any answer b satisfies C(b) = 0, b != a.
CnssInstance chevalley_to_cnss(const ChevalleyInstance& in);
Assignment chevalley_back_map(const ChevalleyInstance& in, const Assignment& cnss_answer);

// The full circuit C' + L_a of a CNSS instance, and brute-force solvers used
// as referees in tests.
Circuit cnss_full_circuit(const CnssInstance& in);
std::optional<Assignment> brute_solve_cnss(const CnssInstance& in);
std::optional<Assignment> brute_solve_chevalley(const ChevalleyInstance& in);

}  // namespace ppac
