// Acceptance harness: one pass/fail line per criterion, exit code = failures.
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "ppac/easiness.hpp"
#include "ppac/fixtures.hpp"
#include "ppac/oracle.hpp"
#include "ppac/randgen.hpp"

using namespace ppac;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, double secs,
            const std::string& detail) {
  std::printf("%s [%d] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", idx, name,
              secs, detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

template <typename F>
void criterion(int idx, const char* name, double budget_secs, F body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  if (ok && secs > budget_secs) {
    ok = false;
    detail += " (over time budget)";
  }
  report(idx, name, ok, secs, detail);
}

std::vector<LeafInstance> leaf_fixtures() {
  return {path_leaf(), matched_pairs_leaf(), bitflip_leaf(3), bitflip_leaf(4)};
}

// All clauses with 1..3 distinct variables out of `vars`, both polarities.
std::vector<std::vector<int>> clause_universe(int vars) {
  std::vector<std::vector<int>> out;
  std::vector<int> lits;
  for (int v = 1; v <= vars; ++v) {
    lits.push_back(v);
    lits.push_back(-v);
  }
  int m = static_cast<int>(lits.size());
  for (int i = 0; i < m; ++i) {
    out.push_back({lits[i]});
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(lits[i]) == std::abs(lits[j])) continue;
      out.push_back({lits[i], lits[j]});
      for (int k = j + 1; k < m; ++k) {
        if (std::abs(lits[k]) == std::abs(lits[i]) ||
            std::abs(lits[k]) == std::abs(lits[j]))
          continue;
        out.push_back({lits[i], lits[j], lits[k]});
      }
    }
  }
  return out;
}

bool mdeg_parity_holds(const Circuit& c, std::string& detail) {
  bool full = mdeg(c) == c.n;
  bool odd = enumerate_maximal(c, 2'000'000).size() % 2 == 1;
  if (full != odd) {
    detail = "counterexample: " + print_circuit(c);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  // 1. Characteristic-2 decomposition: parse-subcircuit monomials XOR to the
  // formal polynomial. The 8-gate shared-sum fixture has 7 parse subcircuits
  // and 7 surviving monomials (x1x2, x1x3, x1x4, x2x4, x3x4, x2^2, x3^2).
  criterion(1, "char-2 decomposition identity", 10.0, [](std::string& detail) {
    Prop1Report fig = check_prop1(two_clause_product(), 1'000'000);
    if (!fig.ok || fig.subcircuit_count != 7 ||
        fig.from_subcircuits.monomials.size() != 7) {
      detail = "fixture: " + std::to_string(fig.subcircuit_count) +
               " subcircuits, " +
               std::to_string(fig.from_subcircuits.monomials.size()) +
               " monomials";
      return false;
    }
    std::mt19937_64 rng(1);
    int checked = 0, skipped = 0;
    while (checked < 200) {
      int n = 1 + static_cast<int>(rng() % 5);
      Circuit c = random_circuit(rng, n, 14);
      try {
        Prop1Report r = check_prop1(c, 4'000'000);
        if (!r.ok) {
          // The formal identity breaks when a sum gate reaches the output
          // through product paths of unequal multiplicity (e.g. g = x1+x2
          // feeding g*g*g: subcircuits give x1^3+x2^3, expansion gives
          // (x1+x2)^3). The functional identity still holds and is reported.
          detail = "formal mismatch " + r.mismatch +
                   (r.pointwise_ok ? " (sides agree pointwise)"
                                   : " (sides differ pointwise!)") +
                   " in " + print_circuit(c);
          return false;
        }
        if (!r.pointwise_ok) {
          detail = "pointwise mismatch in " + print_circuit(c);
          return false;
        }
        ++checked;
      } catch (const CapExceeded&) {
        ++skipped;  // oversized enumeration; replaced by a fresh circuit
        if (skipped > 100) {
          detail = "too many cap-exceeded circuits";
          return false;
        }
      }
    }
    detail = "fixture + " + std::to_string(checked) + " random circuits";
    return true;
  });

  // 2. mdeg(C) = n iff the number of maximal parse subcircuits is odd.
  criterion(2, "full-degree parity criterion", 30.0, [](std::string& detail) {
    std::mt19937_64 rng(2);
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
      int n = 1 + static_cast<int>(rng() % 5);
      Circuit c = random_circuit(rng, n, 14);
      try {
        if (!mdeg_parity_holds(c, detail)) return false;
        ++checked;
      } catch (const CapExceeded&) {
      }
    }
    for (int n = 1; n <= 4; ++n)
      for (std::size_t p = 0; p < (std::size_t{1} << n); ++p) {
        Circuit l = lagrange_circuit(assignment_from_index(p, n));
        if (!mdeg_parity_holds(l, detail)) return false;
        ++checked;
      }
    // Parity-3SAT images over <= 4 vars: every 1- and 2-clause formula, and a
    // deterministic sample of larger ones up to 5 clauses (the full <= 5
    // clause space is ~64^5 formulas; exhausting it is not desk scale).
    std::vector<std::vector<int>> cls = clause_universe(4);
    Cnf f;
    f.vars = 4;
    for (const auto& a : cls) {
      f.clauses = {a};
      if (!mdeg_parity_holds(threesat_to_circuit(f), detail)) return false;
      ++checked;
    }
    for (std::size_t i = 0; i < cls.size(); i += 7)
      for (std::size_t j = i; j < cls.size(); j += 5) {
        f.clauses = {cls[i], cls[j]};
        if (!mdeg_parity_holds(threesat_to_circuit(f), detail)) return false;
        ++checked;
      }
    std::mt19937_64 rng2(22);
    for (int it = 0; it < 400; ++it) {
      Cnf g = random_cnf(rng2, 4, 3 + static_cast<int>(rng2() % 3));
      if (!mdeg_parity_holds(threesat_to_circuit(g), detail)) return false;
      ++checked;
    }
    detail = std::to_string(checked) + " circuits";
    return true;
  });

  // 3. The matching: mu is a total fixed-point-free involution on the maximal
  // parse subcircuits of every composition, whose mdeg stays below n.
  criterion(3, "composition matching lemma", 60.0, [](std::string& detail) {
    std::uint64_t total = 0;
    for (const LeafInstance& li : leaf_fixtures()) {
      auto [d, f] = neighbor_circuits(li);
      PpaComposition pc = ppa_composition(d, f);
      std::optional<int> md = mdeg(pc.flattened);
      if (md && *md >= pc.n) {
        detail = li.name + ": mdeg not below n";
        return false;
      }
      MatchingReport r = verify_matching(pc, pc.flattened, 4'000'000);
      if (!r.ok) {
        detail = li.name + ": " + r.violations.front();
        return false;
      }
      total += r.maximal_count;
    }
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
      int n = 2 + static_cast<int>(rng() % 2);
      auto [d, f] = random_thin_pair(rng, n);
      PpaComposition pc = ppa_composition(d, f);
      std::optional<int> md = mdeg(pc.flattened);
      if (md && *md >= pc.n) {
        detail = "random pair: mdeg not below n";
        return false;
      }
      MatchingReport r = verify_matching(pc, pc.flattened, 4'000'000);
      if (!r.ok) {
        detail = "random pair: " + r.violations.front();
        return false;
      }
      total += r.maximal_count;
    }
    detail = std::to_string(total) + " maximal subcircuits matched";
    return true;
  });

  // 4. The pairing: degree parity, the phi contract at every vertex of G_N,
  // and the walk from the standard leaf.
  criterion(4, "pairing and walk", 60.0, [](std::string& detail) {
    std::uint64_t vertices = 0;
    for (const LeafInstance& li : {path_leaf(), matched_pairs_leaf(),
                                   bitflip_leaf(3)}) {
      EasinessInstance inst =
          make_easiness_instance(chevalley_to_cnss(leaf_to_chevalley(li)));
      for (std::size_t i = 0; i < (std::size_t{1} << inst.n); ++i) {
        GnVertex v = GnVertex::of(assignment_from_index(i, inst.n));
        PairingReport r = verify_pairing_contract(inst, v, 4'000'000);
        Bit val = evaluate(inst.host, v.a).at(0);
        if (!r.ok || r.degree % 2 != val || r.self_pairs != val) {
          detail = li.name + "@" + assignment_to_string(v.a) + ": " +
                   (r.violations.empty() ? "degree/self-pair parity"
                                         : r.violations.front());
          return false;
        }
        ++vertices;
      }
      ParseEnumerator en(inst.host, inst.host.out(), 4'000'000);
      while (auto s = en.next()) {
        PairingReport r = verify_pairing_contract(inst, GnVertex::of(*s), 4'000'000);
        if (!r.ok || r.self_pairs != (*s == inst.standard ? 1u : 0u)) {
          detail = li.name + "@" + marking_to_string(inst.host, *s) + ": " +
                   (r.violations.empty() ? "self-pair count"
                                         : r.violations.front());
          return false;
        }
        ++vertices;
      }
      Assignment b = solve_cnss_via_leaf(inst, 1u << 22);
      if (evaluate(inst.host, b).at(0) != 1) {
        detail = li.name + ": walk terminal not verified";
        return false;
      }
    }
    detail = std::to_string(vertices) + " vertices checked";
    return true;
  });

  // 5. Hardness: six-case analysis and the odd-degree set, plus the
  // end-to-end Leaf -> Chevalley reduction.
  criterion(5, "degree-parity hardness analysis", 30.0, [](std::string& detail) {
    for (const LeafInstance& li : leaf_fixtures()) {
      DegreeParityReport r = verify_degree_parity(li);
      if (!r.ok) {
        detail = li.name + ": " + r.violations.front();
        return false;
      }
      auto [d, f] = neighbor_circuits(li);
      PpaComposition pc = ppa_composition(d, f);
      for (std::size_t u = 0; u < (std::size_t{1} << li.n); ++u) {
        HardnessCase hc = classify_vertex(li, pc, u);
        bool leaf = graph_neighbors(li, u).size() == 1;
        bool sat = evaluate(pc.flattened, assignment_from_index(u, li.n)).at(0);
        if (!hc.pattern_ok || !hc.parity_ok || leaf != sat) {
          detail = li.name + " at vertex " + std::to_string(u);
          return false;
        }
      }
      ChevalleyInstance chev = leaf_to_chevalley(li);
      std::optional<Assignment> other = brute_solve_chevalley(chev);
      if (!other || *other == li.omega ||
          graph_neighbors(li, assignment_index(*other)).size() != 1) {
        detail = li.name + ": Chevalley answer is not another leaf";
        return false;
      }
    }
    return true;
  });

  // 6. Interreductions round-trip through verified answers.
  criterion(6, "CNSS/Chevalley round trips", 10.0, [](std::string& detail) {
    std::mt19937_64 rng(6);
    int trips = 0;
    while (trips < 100) {
      auto [d, f] = random_thin_pair(rng, 3);
      PpaCircuit pc = make_ppa_circuit(d, f, std::nullopt);
      for (std::size_t z = 0; z < 8 && trips < 100; ++z) {
        Assignment za = assignment_from_index(z, 3);
        if (evaluate(pc.flattened, za).at(0) != 0) continue;
        ChevalleyInstance chev{pc, za};
        CnssInstance cnss = chevalley_to_cnss(chev);
        std::optional<Assignment> b = brute_solve_cnss(cnss);
        if (!b) {
          detail = "CNSS instance without a solution";
          return false;
        }
        Assignment back = chevalley_back_map(chev, *b);
        if (back == za || evaluate(pc.flattened, back).at(0) != 0) {
          detail = "bad Chevalley back-map";
          return false;
        }
        // And the other direction on the derived CNSS instance.
        CnssToChevalley fwd = cnss_to_chevalley(cnss);
        Assignment ans;
        if (fwd.solved) {
          ans = fwd.answer;
        } else {
          std::optional<Assignment> cz = brute_solve_chevalley(*fwd.instance);
          if (!cz) {
            detail = "Chevalley instance without a second zero";
            return false;
          }
          ans = cnss_back_map(cnss, *cz);
        }
        if (evaluate(cnss_full_circuit(cnss), ans).at(0) != 1) {
          detail = "bad CNSS back-map";
          return false;
        }
        ++trips;
      }
    }
    detail = "100 round trips";
    return true;
  });

  // 7. Parity-3SAT image: frozen wiring and the satisfying-assignment
  // bijection.
  criterion(7, "parity-3SAT image", 5.0, [](std::string& detail) {
    Cnf f = sample_cnf();
    Circuit img = threesat_to_circuit(f);
    if (img.gates.size() != 13 || img.n != 3) {
      detail = "unexpected image shape";
      return false;
    }
    std::vector<Marking> mx = enumerate_maximal(img, 10'000);
    if (mx.size() != 4) {
      detail = "expected 4 maximal subcircuits, got " +
               std::to_string(mx.size());
      return false;
    }
    for (std::size_t i = 0; i < 8; ++i) {
      Assignment x = assignment_from_index(i, 3);
      bool sat = true;
      for (const auto& cl : f.clauses) {
        bool cs = false;
        for (int lit : cl) {
          Bit b = x[static_cast<std::size_t>(std::abs(lit) - 1)];
          if ((lit > 0 && b) || (lit < 0 && !b)) cs = true;
        }
        sat = sat && cs;
      }
      Marking s = assignment_to_parse(f, img, x);
      if (is_maximal(img, s) != sat) {
        detail = "bijection fails at " + assignment_to_string(x);
        return false;
      }
      if (sat && parse_to_assignment(f, img, s) != x) {
        detail = "inverse fails at " + assignment_to_string(x);
        return false;
      }
    }
    return true;
  });

  return g_failures;
}
