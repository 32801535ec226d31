#include <doctest.h>

#include <algorithm>

#include "ppac/fixtures.hpp"
#include "ppac/oracle.hpp"

using namespace ppac;

namespace {
std::vector<std::string> marking_strings(const Circuit& c,
                                         const std::vector<Marking>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(marking_to_string(c, m));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("marking text round-trips") {
  Circuit c = two_clause_product();
  Marking s = marking_from_string(c, "s2=l,s3=r");
  CHECK(marking_to_string(c, s) == "s2=l,s3=r");
  CHECK(marking_to_string(c, Marking{}) == "-");
  CHECK(marking_from_string(c, "-").empty());
}

TEST_CASE("accessibility: a sum exposes its marked slot, a product all slots") {
  Circuit c = two_clause_product();
  Marking s = marking_from_string(c, "s2=l,s3=r");
  AccessGraph g = accessibility_graph(c, s);
  CHECK(g.has(c.find("x1")));
  CHECK(g.has(c.find("x4")));
  CHECK(!g.has(c.find("x2")));
  CHECK(!g.has(c.find("s4")));
  CHECK(is_closed(c, s));
  CHECK(monomial_of(c, s).to_string() == "x1*x4");
}

TEST_CASE("shared sums count per access path: squared monomials appear") {
  Circuit c = two_clause_product();
  Marking s = marking_from_string(c, "s2=r,s3=l,s4=r");
  CHECK(is_closed(c, s));
  CHECK(monomial_of(c, s).to_string() == "x3^2");
  CHECK(marking_to_string(c, restrict_to(c, s, c.find("s4"))) == "s4=r");
}

TEST_CASE("closure is checked in both directions") {
  Circuit c = two_clause_product();
  // s4 accessible through s2 but unmarked.
  Marking open = marking_from_string(c, "s2=r,s3=r");
  ClosureReport r = check_closed(c, open, c.out());
  CHECK(!r.closed);
  CHECK(r.unmarked_accessible == c.find("s4"));
  // s4 marked but inaccessible.
  Marking extra = marking_from_string(c, "s2=l,s3=r,s4=l");
  CHECK(!is_closed(c, extra));
}

TEST_CASE("two_clause_product has exactly these 7 parse subcircuits") {
  Circuit c = two_clause_product();
  std::vector<Marking> all = enumerate_parse_subcircuits(c, 1000);
  CHECK(marking_strings(c, all) ==
        std::vector<std::string>{"s2=l,s3=l,s4=l", "s2=l,s3=l,s4=r",
                                 "s2=l,s3=r", "s2=r,s3=l,s4=l",
                                 "s2=r,s3=l,s4=r", "s2=r,s3=r,s4=l",
                                 "s2=r,s3=r,s4=r"});
  std::multiset<std::string> monos;
  for (const auto& m : all) monos.insert(monomial_of(c, m).to_string());
  CHECK(monos == std::multiset<std::string>{"x1*x2", "x1*x3", "x1*x4", "x2^2",
                                            "x2*x4", "x3^2", "x3*x4"});
  CHECK(enumerate_maximal(c, 1000).empty());  // none reaches all four vars
}

TEST_CASE("lagrange100 has 4 parse subcircuits, one maximal") {
  Circuit l = lagrange100();
  CHECK(enumerate_parse_subcircuits(l, 100).size() == 4);
  std::vector<Marking> mx = enumerate_maximal(l, 100);
  REQUIRE(mx.size() == 1);
  CHECK(marking_to_string(l, mx[0]) == "nx2=l,nx3=l");
  CHECK(monomial_of(l, mx[0]).to_string() == "x1*x2*x3");
  CHECK(monomial_of(l, mx[0]).full_support(3));
}

TEST_CASE("a circuit without sum gates has the empty marking as its only parse") {
  Circuit c = parse_circuit_text(
      "circuit p\ninputs 2\nx1 = var 1\nx2 = var 2\n"
      "r = prod x1 x2\noutputs r\nend\n");
  std::vector<Marking> all = enumerate_parse_subcircuits(c, 10);
  REQUIRE(all.size() == 1);
  CHECK(all[0].empty());
  CHECK(monomial_of(c, all[0]).to_string() == "x1*x2");
}

TEST_CASE("enumeration respects its cap") {
  Circuit c = two_clause_product();
  CHECK_THROWS_AS(enumerate_parse_subcircuits(c, 3), CapExceeded);
}

TEST_CASE("splice swaps the restriction below a gate") {
  Circuit c = two_clause_product();
  int s4 = c.find("s4");
  Marking s = marking_from_string(c, "s2=r,s3=l,s4=r");
  Marking z = marking_from_string(c, "s4=l");
  Marking swapped = splice(c, s, s4, z);
  CHECK(marking_to_string(c, swapped) == "s2=r,s3=l,s4=l");
  CHECK(is_closed(c, swapped));
  // Splicing the original restriction back is a no-op.
  Marking back = splice(c, swapped, s4, marking_from_string(c, "s4=r"));
  CHECK(back == s);
}

TEST_CASE("consistent means agreement on commonly marked gates") {
  Circuit c = two_clause_product();
  CHECK(consistent(marking_from_string(c, "s2=l"),
                   marking_from_string(c, "s2=l,s3=r")));
  CHECK(!consistent(marking_from_string(c, "s2=l,s4=l"),
                    marking_from_string(c, "s4=r")));
}

TEST_CASE("a monomial survives at a point iff its support is inside the ones") {
  Circuit c = two_clause_product();
  for (const auto& s : enumerate_parse_subcircuits(c, 1000)) {
    Monomial m = monomial_of(c, s);
    for (std::size_t i = 0; i < 16; ++i) {
      Assignment a = assignment_from_index(i, 4);
      bool inside = true;
      for (int v : m.support())
        if (!a[static_cast<std::size_t>(v - 1)]) inside = false;
      CHECK(m.evaluates_to_one(a) == inside);
    }
  }
}

TEST_CASE("characteristic-2 decomposition: subcircuit monomials sum to C") {
  for (const Circuit& c : {two_clause_product(), lagrange100(),
                           identity_check_circuit(2)}) {
    Prop1Report r = check_prop1(c, 100000);
    CHECK(r.ok);
  }
}

TEST_CASE("full multilinear degree iff oddly many maximal subcircuits") {
  for (std::size_t p = 0; p < 16; ++p) {
    Circuit l = lagrange_circuit(assignment_from_index(p, 4));
    bool odd = enumerate_maximal(l, 10000).size() % 2 == 1;
    CHECK(odd == (mdeg(l) == 4));
    CHECK(odd);  // a Lagrange circuit always has full degree
  }
}
