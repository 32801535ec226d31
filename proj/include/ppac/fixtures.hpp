#pragma once

#include "ppac/leaf.hpp"
#include "ppac/reductions.hpp"

namespace ppac {

// (x1 + (x2 + x3)) * ((x2 + x3) + x4) with the inner sum shared: 8 gates,
// 7 parse subcircuits, monomials {x1x2, x1x3, x1x4, x2x4, x3x4, x2^2, x3^2}.
Circuit two_clause_product();

// The Lagrange circuit of the point 100: x1 * (x2 + 1) * (x3 + 1).
Circuit lagrange100();

// Path 00 - 01 - 10 with 11 isolated; omega = 00, leaves {00, 10}.
LeafInstance path_leaf();

// Two disjoint edges 00 - 01 and 10 - 11: every vertex is a leaf; omega = 00.
LeafInstance matched_pairs_leaf();

// Circuit-backed instance on n bits: u is matched with u + e1 (D flips the
// first bit, F is the identity), so every vertex is a leaf; omega = 0^n.
LeafInstance bitflip_leaf(int n);

// (x1 | x2 | !x3) & (!x2 | x3) & (x3 | !x1): four satisfying assignments.
Cnf sample_cnf();

}  // namespace ppac
