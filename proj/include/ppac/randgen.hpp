#pragma once

#include <random>

#include "ppac/reductions.hpp"

namespace ppac {

// Random single-output circuit with up to `max_gates` computational gates
// (sums and products of arity 2..3 over previously declared gates).
Circuit random_circuit(std::mt19937_64& rng, int n, int max_gates);

// Random n-input, n-output pair (D, F) of shallow circuits: each output is a
// variable, a negated variable, a binary sum or a binary product. Small by
// construction so that the composition's maximal parse subcircuits stay
// enumerable.
std::pair<Circuit, Circuit> random_thin_pair(std::mt19937_64& rng, int n);

// Random CNF with clauses of 1..3 distinct variables.
Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses);

}  // namespace ppac
