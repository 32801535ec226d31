#pragma once

#include "ppac/circuit.hpp"

namespace ppac {

// Undirected degree-<=2 graph on {0,1}^n given by a neighbor oracle M:
// {u,v} is an edge iff u != v, v in M(u) and u in M(v). A vertex absent from
// an explicit table has M(v) = {v}. The distinguished vertex omega must have
// degree exactly 1; the task is to find another vertex of degree 1.
struct LeafInstance {
  std::string name;
  int n = 0;
  Assignment omega;
  // Oracle, exactly one of the two forms:
  std::map<std::size_t, std::vector<std::size_t>> table;  // index -> M(index)
  std::optional<Circuit> d, f;  // circuit-backed: M(u) = {D(u), F(u)}

  bool circuit_backed() const { return d.has_value(); }
  std::vector<std::size_t> oracle(std::size_t u) const;  // M(u), deduplicated
};

LeafInstance parse_leaf(std::istream& in, const std::string& dir = "");
LeafInstance parse_leaf_text(const std::string& text);
LeafInstance load_leaf(const std::string& path);
std::string print_leaf(const LeafInstance& li);  // table form only

// Validates degree bounds and omega's degree.
void validate_leaf(const LeafInstance& li);

// Mutual-listing neighbors of u in the graph G_z.
std::vector<std::size_t> graph_neighbors(const LeafInstance& li, std::size_t u);

// All degree-1 vertices, by scanning the whole vertex set.
std::vector<std::size_t> brute_force_leaves(const LeafInstance& li);

// Walks the path starting at `start` (must have degree 1) until the other end;
// throws CapExceeded after `steps` steps.
std::size_t follow_path(const LeafInstance& li, std::size_t start, std::uint64_t steps);

}  // namespace ppac
