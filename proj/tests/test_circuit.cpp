#include <doctest.h>

#include "ppac/fixtures.hpp"

using namespace ppac;

TEST_CASE("two_clause_product parses to 8 gates and round-trips") {
  Circuit c = two_clause_product();
  CHECK(c.n == 4);
  CHECK(c.gates.size() == 8);
  Circuit again = parse_circuit_text(print_circuit(c));
  CHECK(print_circuit(again) == print_circuit(c));
  CHECK(circuit_degree(c).at(0) == 2);
}

TEST_CASE("parser rejects forward references and duplicate ids") {
  CHECK_THROWS_AS(parse_circuit_text("circuit bad\n"
                                     "inputs 1\n"
                                     "x1 = var 1\n"
                                     "a = sum x1 b\n"
                                     "b = sum x1 x1\n"
                                     "outputs a\nend\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_circuit_text("circuit bad\n"
                                     "inputs 1\n"
                                     "x1 = var 1\n"
                                     "a = sum x1 x1\n"
                                     "a = sum x1 x1\n"
                                     "outputs a\nend\n"),
                  ParseError);
}

TEST_CASE("evaluation matches (x1 + x2 + x3)(x2 + x3 + x4)") {
  Circuit c = two_clause_product();
  CHECK(evaluate(c, assignment_from_string("1100")).at(0) == 0);
  int ones = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    Assignment a = assignment_from_index(i, 4);
    Bit left = a[0] ^ a[1] ^ a[2];
    Bit right = a[1] ^ a[2] ^ a[3];
    Bit want = left & right;
    CHECK(evaluate(c, a).at(0) == want);
    ones += want;
  }
  CHECK(ones == 4);
}

TEST_CASE("assignment indexing uses x1 as the least significant bit") {
  Assignment a = assignment_from_string("100");
  CHECK(a == Assignment{1, 0, 0});
  CHECK(assignment_index(a) == 1);
  CHECK(assignment_from_index(1, 3) == a);
  CHECK(assignment_to_string(a) == "100");
}

TEST_CASE("x1 + x1 is the zero polynomial but not the zero monomial set") {
  Circuit c = parse_circuit_text(
      "circuit z\ninputs 2\nx1 = var 1\nx2 = var 2\n"
      "s = sum x1 x1\nr = prod s x2\noutputs r\nend\n");
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(evaluate(c, assignment_from_index(i, 2)).at(0) == 0);
  CHECK(circuit_degree(c).at(0) == 2);
}

TEST_CASE("syntactic degree: Sum is max, Prod is sum of children") {
  CHECK(circuit_degree(lagrange100()).at(0) == 3);
  CHECK(circuit_degree(identity_check_circuit(3)).at(0) == 3);
  CHECK(circuit_degree(lagrange_circuit(Assignment(5, 0))).at(0) == 5);
}

TEST_CASE("compose substitutes the inner outputs for the outer variables") {
  // Identity on 3 wires composed with L_100: same function as L_100.
  Circuit id3 = parse_circuit_text(
      "circuit id3\ninputs 3\nx1 = var 1\nx2 = var 2\nx3 = var 3\n"
      "o1 = sum x1\no2 = sum x2\no3 = sum x3\noutputs o1 o2 o3\nend\n");
  Circuit inner = lagrange100();
  // compose expects outer.n == inner.outputs.size(); wrap L_100 in a
  // triple-output circuit via D/F style tables instead: just check compose on
  // the path-leaf pair.
  LeafInstance li = path_leaf();
  auto [d, f] = neighbor_circuits(li);
  Circuit df = compose(d, f);  // D(F(u))
  // F(10)=10, D(10)=01: DF(10) = 01.
  std::vector<Bit> out = evaluate(df, assignment_from_string("10"));
  CHECK(assignment_to_string(out) == "01");
  (void)id3;
  (void)inner;
}

TEST_CASE("disjoint_sum shares inputs and adds pointwise") {
  Circuit a = lagrange100();
  Circuit b = lagrange_circuit(assignment_from_string("010"));
  Circuit s = disjoint_sum(a, b);
  CHECK(s.n == 3);
  for (std::size_t i = 0; i < 8; ++i) {
    Assignment x = assignment_from_index(i, 3);
    CHECK(evaluate(s, x).at(0) == (evaluate(a, x).at(0) ^ evaluate(b, x).at(0)));
  }
}

TEST_CASE("lagrange_circuit is the indicator of its point") {
  for (int n = 1; n <= 4; ++n)
    for (std::size_t p = 0; p < (std::size_t{1} << n); ++p) {
      Circuit l = lagrange_circuit(assignment_from_index(p, n));
      for (std::size_t i = 0; i < (std::size_t{1} << n); ++i)
        CHECK(evaluate(l, assignment_from_index(i, n)).at(0) == (i == p ? 1 : 0));
    }
}

TEST_CASE("identity_check_circuit recognizes equal halves") {
  Circuit I = identity_check_circuit(3);
  CHECK(I.n == 6);
  CHECK(circuit_degree(I).at(0) == 3);
  CHECK(evaluate(I, assignment_from_string("101101")).at(0) == 1);
  CHECK(evaluate(I, assignment_from_string("101100")).at(0) == 0);
  int ones = 0;
  for (std::size_t i = 0; i < 64; ++i)
    ones += evaluate(I, assignment_from_index(i, 6)).at(0);
  CHECK(ones == 8);
}

TEST_CASE("compile_boolean arithmetizes NOT/OR/AND/XOR correctly") {
  // f(a, b) = (!a | b) ^ (a & b)
  BooleanCircuit b;
  b.n = 2;
  b.nodes.resize(6);
  b.nodes[0] = {BoolNode::Kind::Input, 1, {}};
  b.nodes[1] = {BoolNode::Kind::Input, 2, {}};
  b.nodes[2] = {BoolNode::Kind::Not, 0, {0}};
  b.nodes[3] = {BoolNode::Kind::Or, 0, {2, 1}};
  b.nodes[4] = {BoolNode::Kind::And, 0, {0, 1}};
  b.nodes[5] = {BoolNode::Kind::Xor, 0, {3, 4}};
  b.outputs = {5};
  Circuit c = compile_boolean(b);
  for (std::size_t i = 0; i < 4; ++i) {
    Assignment x = assignment_from_index(i, 2);
    Bit want = static_cast<Bit>(((!x[0]) | x[1]) ^ (x[0] & x[1]));
    CHECK(evaluate(c, x).at(0) == want);
  }
}

TEST_CASE("synthesize_from_table reproduces the path-leaf D table") {
  LeafInstance li = path_leaf();
  auto [d, f] = neighbor_circuits(li);
  // D: 00->01, 10->01, 01->00, 11->11.
  auto at = [&](const Circuit& c, const char* u) {
    return assignment_to_string(evaluate(c, assignment_from_string(u)));
  };
  CHECK(at(d, "00") == "01");
  CHECK(at(d, "10") == "01");
  CHECK(at(d, "01") == "00");
  CHECK(at(d, "11") == "11");
  CHECK(at(f, "00") == "00");
  CHECK(at(f, "10") == "10");
  CHECK(at(f, "01") == "10");
  CHECK(at(f, "11") == "11");
}

TEST_CASE("validate rejects a second One gate and non-topological order") {
  Circuit c = two_clause_product();
  Gate one;
  one.id = "k1";
  one.kind = GateKind::One;
  c.gates.push_back(one);
  Gate one2 = one;
  one2.id = "k2";
  c.gates.push_back(one2);
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
