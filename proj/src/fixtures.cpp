#include "ppac/fixtures.hpp"

namespace ppac {

Circuit two_clause_product() {
  return parse_circuit_text(
      "circuit two_clause\n"
      "inputs 4\n"
      "  x1 = var 1\n"
      "  x2 = var 2\n"
      "  x3 = var 3\n"
      "  x4 = var 4\n"
      "  s4 = sum x2 x3\n"
      "  s2 = sum x1 s4\n"
      "  s3 = sum s4 x4\n"
      "  root = prod s2 s3\n"
      "outputs root\n"
      "end\n");
}

Circuit lagrange100() {
  Assignment a = assignment_from_string("100");
  return lagrange_circuit(a, "L100");
}

LeafInstance path_leaf() {
  LeafInstance li;
  li.name = "path";
  li.n = 2;
  li.omega = assignment_from_string("00");
  // 00 - 01 - 10, 11 isolated (indices: x1 is the low bit).
  std::size_t v00 = 0, v01 = assignment_index(assignment_from_string("01"));
  std::size_t v10 = assignment_index(assignment_from_string("10"));
  li.table[v00] = {v01};
  li.table[v01] = {v00, v10};
  li.table[v10] = {v01};
  return li;
}

LeafInstance matched_pairs_leaf() {
  LeafInstance li;
  li.name = "matched_pairs";
  li.n = 2;
  li.omega = assignment_from_string("00");
  std::size_t v00 = assignment_index(assignment_from_string("00"));
  std::size_t v01 = assignment_index(assignment_from_string("01"));
  std::size_t v10 = assignment_index(assignment_from_string("10"));
  std::size_t v11 = assignment_index(assignment_from_string("11"));
  li.table[v00] = {v01};
  li.table[v01] = {v00};
  li.table[v10] = {v11};
  li.table[v11] = {v10};
  return li;
}

LeafInstance bitflip_leaf(int n) {
  if (n < 1) throw ValidationError("bitflip_leaf: n must be positive");
  LeafInstance li;
  li.name = "bitflip" + std::to_string(n);
  li.n = n;
  li.omega = Assignment(static_cast<std::size_t>(n), 0);
  // D(u) = u + e1 via a single sum gate; F = identity.
  Circuit d = circuit_with_inputs(n, "D_bitflip");
  Gate one;
  one.id = "one";
  one.kind = GateKind::One;
  int one_at = static_cast<int>(d.gates.size());
  d.gates.push_back(std::move(one));
  Gate flip;
  flip.id = "flip";
  flip.kind = GateKind::Sum;
  flip.children = {0, one_at};
  d.outputs = {static_cast<int>(d.gates.size())};
  d.gates.push_back(std::move(flip));
  for (int i = 2; i <= n; ++i) d.outputs.push_back(i - 1);
  Circuit f = circuit_with_inputs(n, "F_identity");
  for (int i = 1; i <= n; ++i) f.outputs.push_back(i - 1);
  d.validate();
  f.validate();
  li.d = std::move(d);
  li.f = std::move(f);
  return li;
}

Cnf sample_cnf() {
  return parse_dimacs_text(
      "p cnf 3 3\n"
      "1 2 -3 0\n"
      "-2 3 0\n"
      "3 -1 0\n");
}

}  // namespace ppac
