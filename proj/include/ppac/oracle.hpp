#pragma once

#include "ppac/parse.hpp"

namespace ppac {

// Truth table of a single-output circuit, indexed with x_1 as bit 0.
struct TruthTable {
  int n = 0;
  std::vector<Bit> bits;  // size 2^n
  std::string to_hex() const;  // little-endian packed, two hex digits per byte
};

inline constexpr int kTruthTableMaxVars = 24;

TruthTable truth_table(const Circuit& c);

// Coefficients of the unique multilinear polynomial over F2, indexed by
// variable subset (same indexing as TruthTable). Obtained from the truth
// table by the subset zeta transform mod 2, which is an involution.
struct MultilinearPoly {
  int n = 0;
  std::vector<Bit> coeffs;
  std::string to_hex() const;
};

MultilinearPoly multilinear_coeffs(const Circuit& c);
MultilinearPoly multilinear_from_table(const TruthTable& t);
TruthTable table_from_multilinear(const MultilinearPoly& p);

// Degree of the multilinear polynomial; nullopt for the zero polynomial.
std::optional<int> mdeg(const Circuit& c);
std::optional<int> mdeg(const MultilinearPoly& p);

// Formal polynomial: set of monomials surviving cancellation mod 2.
struct FormalPoly {
  std::set<Monomial> monomials;
  std::string to_string() const;
};

// Gate-by-gate expansion; throws CapExceeded if any intermediate set grows
// beyond term_cap.
FormalPoly formal_polynomial(const Circuit& c, std::uint64_t term_cap);

struct Prop1Report {
  bool ok = true;          // the two sides agree as formal polynomials
  bool pointwise_ok = true;  // ... and as functions on F2^n (always expected)
  std::uint64_t subcircuit_count = 0;
  FormalPoly from_subcircuits;
  FormalPoly from_expansion;
  std::string mismatch;  // first differing monomial, if any
};

// Checks that the formal sum of parse-subcircuit monomials equals the formal
// expansion of the circuit (the characteristic-2 decomposition identity).
// The formal identity can fail on circuits where a sum gate reaches the
// output through product paths of unequal multiplicity; the functional
// (pointwise) identity holds for every circuit and is reported separately.
Prop1Report check_prop1(const Circuit& c, std::uint64_t cap);

struct MatchingCheck {
  bool matched = true;              // even count, pairable
  std::uint64_t maximal_count = 0;
  std::string leftover;             // serialized unpaired marking if odd
};

// Brute-force referee: enumerates maximal parse subcircuits and pairs them in
// sorted order; an odd count certifies mdeg = n (and vice versa).
MatchingCheck exhaustive_perfect_matching(const Circuit& c, std::uint64_t cap);

}  // namespace ppac
