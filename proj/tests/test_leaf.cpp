#include <doctest.h>

#include <algorithm>

#include "ppac/fixtures.hpp"

using namespace ppac;

TEST_CASE("leaf text round-trips through print and parse") {
  LeafInstance li = path_leaf();
  LeafInstance again = parse_leaf_text(print_leaf(li));
  CHECK(again.n == li.n);
  CHECK(again.omega == li.omega);
  CHECK(again.table == li.table);
}

TEST_CASE("vertices absent from the table are self-matched isolates") {
  LeafInstance li = path_leaf();
  CHECK(li.oracle(3) == std::vector<std::size_t>{3});  // 11 not listed
  CHECK(graph_neighbors(li, 3).empty());
}

TEST_CASE("edges require mutual listing") {
  // 00 lists 01 but 01 does not list 00 back: no edge.
  LeafInstance li = parse_leaf_text(
      "leaf oneway\nbits 2\nomega 10\ntable\n"
      "00: 01\n01: 10\n10: 01\nend\n");
  CHECK(graph_neighbors(li, 0).empty());
  CHECK(graph_neighbors(li, 1) == std::vector<std::size_t>{2});
  CHECK(graph_neighbors(li, 2) == std::vector<std::size_t>{1});
}

TEST_CASE("path fixture: leaves are the two path ends") {
  LeafInstance li = path_leaf();
  validate_leaf(li);
  CHECK(assignment_index(li.omega) == 0);
  CHECK(brute_force_leaves(li) == std::vector<std::size_t>{0, 1});
  CHECK(follow_path(li, 0, 100) == 1);  // 00 - 01 - 10
  CHECK(follow_path(li, 1, 100) == 0);
}

TEST_CASE("follow_path throws when the step cap is hit") {
  LeafInstance li = path_leaf();
  CHECK_THROWS_AS(follow_path(li, 0, 1), CapExceeded);
}

TEST_CASE("instances whose omega has degree 0 or 2 are rejected") {
  CHECK_THROWS_AS(parse_leaf_text("leaf bad\nbits 2\nomega 11\ntable\n"
                                  "00: 01\n01: 00\nend\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_leaf_text("leaf bad\nbits 2\nomega 01\ntable\n"
                                  "00: 01\n01: 00 10\n10: 01\nend\n"),
                  ValidationError);
}

TEST_CASE("a table row may list at most two neighbors") {
  CHECK_THROWS_AS(parse_leaf_text("leaf bad\nbits 2\nomega 00\ntable\n"
                                  "00: 01 10 11\nend\n"),
                  ParseError);
}

TEST_CASE("circuit-backed oracle: bit-flip matching") {
  LeafInstance li = bitflip_leaf(3);
  REQUIRE(li.circuit_backed());
  validate_leaf(li);
  for (std::size_t u = 0; u < 8; ++u) {
    // M(u) = {D(u), F(u)} = {u with the first bit flipped, u}.
    std::vector<std::size_t> want{u ^ 1, u};
    std::sort(want.begin(), want.end());
    CHECK(li.oracle(u) == want);
    CHECK(graph_neighbors(li, u) == std::vector<std::size_t>{u ^ 1});
  }
  std::vector<std::size_t> leaves = brute_force_leaves(li);
  CHECK(leaves.size() == 8);  // every vertex is a leaf
  CHECK(follow_path(li, 0, 10) == 1);
}

TEST_CASE("matched pairs fixture: every vertex is a leaf") {
  LeafInstance li = matched_pairs_leaf();
  validate_leaf(li);
  CHECK(brute_force_leaves(li) == std::vector<std::size_t>{0, 1, 2, 3});
}
