#include "ppac/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace ppac {

namespace {

std::string pack_hex(const std::vector<Bit>& bits) {
  std::ostringstream os;
  static const char* digits = "0123456789abcdef";
  for (std::size_t byte = 0; byte * 8 < bits.size(); ++byte) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 8 && byte * 8 + b < bits.size(); ++b)
      if (bits[byte * 8 + b]) v |= 1u << b;
    os << digits[v & 0xf] << digits[v >> 4];
  }
  return os.str();
}

}  // namespace

std::string TruthTable::to_hex() const { return pack_hex(bits); }
std::string MultilinearPoly::to_hex() const { return pack_hex(coeffs); }

TruthTable truth_table(const Circuit& c) {
  if (c.n > kTruthTableMaxVars)
    throw CapExceeded("truth_table: circuit has more than " +
                      std::to_string(kTruthTableMaxVars) + " variables");
  TruthTable t;
  t.n = c.n;
  std::size_t size = std::size_t{1} << c.n;
  t.bits.resize(size);
  for (std::size_t u = 0; u < size; ++u)
    t.bits[u] = evaluate(c, assignment_from_index(u, c.n)).at(0);
  return t;
}

MultilinearPoly multilinear_from_table(const TruthTable& t) {
  MultilinearPoly p;
  p.n = t.n;
  p.coeffs = t.bits;
  // Subset zeta transform mod 2: c_T = XOR of values on subsets of T.
  for (int i = 0; i < t.n; ++i) {
    std::size_t bit = std::size_t{1} << i;
    for (std::size_t u = 0; u < p.coeffs.size(); ++u)
      if (u & bit) p.coeffs[u] ^= p.coeffs[u ^ bit];
  }
  return p;
}

TruthTable table_from_multilinear(const MultilinearPoly& p) {
  // The transform is its own inverse mod 2.
  TruthTable asTable{p.n, p.coeffs};
  MultilinearPoly back = multilinear_from_table(asTable);
  return TruthTable{p.n, back.coeffs};
}

MultilinearPoly multilinear_coeffs(const Circuit& c) {
  return multilinear_from_table(truth_table(c));
}

std::optional<int> mdeg(const MultilinearPoly& p) {
  int best = -1;
  for (std::size_t u = 0; u < p.coeffs.size(); ++u)
    if (p.coeffs[u]) best = std::max(best, static_cast<int>(__builtin_popcountll(u)));
  if (best < 0) return std::nullopt;
  return best;
}

std::optional<int> mdeg(const Circuit& c) { return mdeg(multilinear_coeffs(c)); }

std::string FormalPoly::to_string() const {
  if (monomials.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Monomial& m : monomials) {
    if (!first) os << " + ";
    os << m.to_string();
    first = false;
  }
  return os.str();
}

namespace {

void toggle(std::set<Monomial>& s, const Monomial& m) {
  auto [it, inserted] = s.insert(m);
  if (!inserted) s.erase(it);
}

}  // namespace

FormalPoly formal_polynomial(const Circuit& c, std::uint64_t term_cap) {
  std::vector<std::set<Monomial>> polys(c.gates.size());
  auto guard = [&](const std::set<Monomial>& p) {
    if (p.size() > term_cap)
      throw CapExceeded("formal_polynomial: intermediate term count exceeded " +
                        std::to_string(term_cap));
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Var: {
        Monomial m;
        m.exps[g.var] = 1;
        polys[i].insert(std::move(m));
        break;
      }
      case GateKind::One:
        polys[i].insert(Monomial{});
        break;
      case GateKind::Sum: {
        std::set<Monomial> acc;
        for (int ch : g.children)
          for (const Monomial& m : polys[static_cast<std::size_t>(ch)]) toggle(acc, m);
        guard(acc);
        polys[i] = std::move(acc);
        break;
      }
      case GateKind::Prod: {
        std::set<Monomial> acc{Monomial{}};
        for (int ch : g.children) {
          std::set<Monomial> next;
          for (const Monomial& a : acc)
            for (const Monomial& b : polys[static_cast<std::size_t>(ch)]) {
              Monomial prod = a;
              for (const auto& [v, e] : b.exps) prod.exps[v] += e;
              toggle(next, prod);
              if (next.size() > term_cap)
                throw CapExceeded("formal_polynomial: intermediate term count exceeded " +
                                  std::to_string(term_cap));
            }
          acc = std::move(next);
        }
        polys[i] = std::move(acc);
        break;
      }
    }
  }
  FormalPoly out;
  out.monomials = polys[static_cast<std::size_t>(c.out())];
  return out;
}

Prop1Report check_prop1(const Circuit& c, std::uint64_t cap) {
  Prop1Report r;
  ParseEnumerator en(c, c.out(), cap);
  std::set<Monomial> acc;
  while (auto m = en.next()) {
    toggle(acc, monomial_of(c, *m, c.out()));
    ++r.subcircuit_count;
  }
  r.from_subcircuits.monomials = std::move(acc);
  r.from_expansion = formal_polynomial(c, cap);
  if (r.from_subcircuits.monomials != r.from_expansion.monomials) {
    r.ok = false;
    std::vector<Monomial> diff;
    std::set_symmetric_difference(
        r.from_subcircuits.monomials.begin(), r.from_subcircuits.monomials.end(),
        r.from_expansion.monomials.begin(), r.from_expansion.monomials.end(),
        std::back_inserter(diff));
    if (!diff.empty()) r.mismatch = diff.front().to_string();
  }
  // The two sides can differ as formal polynomials when a sum gate reaches a
  // product through paths of unequal multiplicity (smallest case: g = x1+x2
  // feeding g*g*g gives x1^3 + x2^3 from subcircuits but (x1+x2)^3 from
  // expansion), yet they always agree as functions on F2^n: the number of
  // subcircuit monomials that survive at a point a has the parity of C(a).
  r.pointwise_ok = true;
  if (c.n <= kTruthTableMaxVars) {
    TruthTable t = truth_table(c);
    for (std::size_t a = 0; a < t.bits.size(); ++a) {
      Assignment asg = assignment_from_index(a, c.n);
      Bit lhs = 0;
      for (const Monomial& m : r.from_subcircuits.monomials)
        lhs = Bit(lhs ^ (m.evaluates_to_one(asg) ? 1 : 0));
      // Monomials with even exponents still evaluate by their support, so the
      // surviving set determines the function.
      if (lhs != t.bits[a]) {
        r.pointwise_ok = false;
        break;
      }
    }
  }
  return r;
}

MatchingCheck exhaustive_perfect_matching(const Circuit& c, std::uint64_t cap) {
  MatchingCheck mc;
  std::vector<Marking> maximal = enumerate_maximal(c, cap);
  mc.maximal_count = maximal.size();
  if (maximal.size() % 2 != 0) {
    mc.matched = false;
    std::vector<std::string> keys;
    keys.reserve(maximal.size());
    for (const Marking& m : maximal) keys.push_back(marking_to_string(c, m));
    std::sort(keys.begin(), keys.end());
    mc.leftover = keys.back();
  }
  return mc;
}

}  // namespace ppac
