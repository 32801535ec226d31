#include "ppac/reductions.hpp"

#include <algorithm>
#include <sstream>

namespace ppac {

namespace {

Circuit constant_one(int n) {
  Circuit c = circuit_with_inputs(n, "const1");
  Gate o;
  o.id = "one";
  o.kind = GateKind::One;
  c.outputs = {static_cast<int>(c.gates.size())};
  c.gates.push_back(std::move(o));
  return c;
}

// tail + 1, staying below syntactic degree n.
std::optional<Circuit> tail_plus_one(const PpaCircuit& p) {
  if (!p.tail) return constant_one(p.comp.n);
  return disjoint_sum(*p.tail, constant_one(p.comp.n), p.tail->name + "_plus1");
}

}  // namespace

std::pair<Circuit, Circuit> neighbor_circuits(const LeafInstance& li) {
  if (li.circuit_backed()) {
    // Validate the conventions the degree-parity argument relies on.
    std::size_t size = std::size_t{1} << li.n;
    for (std::size_t u = 0; u < size; ++u) {
      Assignment a = assignment_from_index(u, li.n);
      std::size_t v = assignment_index(evaluate(*li.d, a));
      std::size_t w = assignment_index(evaluate(*li.f, a));
      if (v == u && w != u)
        throw ValidationError("neighbor circuits: D(u) = u requires F(u) = u");
      if (v != u && w != u && v == w)
        throw ValidationError(
            "neighbor circuits: a single neighbor must be carried by D only");
    }
    return {*li.d, *li.f};
  }
  FunctionTable dt, ft;
  dt.n_in = ft.n_in = li.n;
  dt.n_out = ft.n_out = li.n;
  std::size_t size = std::size_t{1} << li.n;
  for (std::size_t u = 0; u < size; ++u) {
    std::vector<std::size_t> m = li.oracle(u);
    m.erase(std::remove(m.begin(), m.end(), u), m.end());
    std::size_t dv = u, fv = u;
    if (m.size() == 1) {
      dv = m[0];
    } else if (m.size() == 2) {
      dv = std::min(m[0], m[1]);  // D gets the lexicographically smaller one
      fv = std::max(m[0], m[1]);
    }
    dt.rows.push_back(assignment_from_index(dv, li.n));
    ft.rows.push_back(assignment_from_index(fv, li.n));
  }
  return {synthesize_from_table(dt, "D_" + li.name),
          synthesize_from_table(ft, "F_" + li.name)};
}

ChevalleyInstance leaf_to_chevalley(const LeafInstance& li) {
  validate_leaf(li);
  auto [d, f] = neighbor_circuits(li);
  ChevalleyInstance out;
  out.circuit = make_ppa_circuit(d, f, constant_one(li.n));
  out.zero = li.omega;
  if (evaluate(out.circuit.flattened, out.zero).at(0) != 0)
    throw ContractViolation(
        "leaf_to_chevalley: omega is not a zero of the composed circuit");
  return out;
}

HardnessCase classify_vertex(const LeafInstance& li, const PpaComposition& pc,
                             std::size_t u) {
  static const char* kLabels[6] = {"DF", "FD", "DD", "D", "FF", "F"};
  HardnessCase hc;
  Assignment a = assignment_from_index(u, li.n);
  std::vector<Bit> vals = evaluate_gates(pc.flattened, a);
  bool sat[6];
  for (int k = 0; k < 6; ++k) {
    sat[k] = vals[static_cast<std::size_t>(pc.comp[k].root)] != 0;
    if (sat[k]) hc.satisfied.push_back(kLabels[k]);
  }
  auto mutual = [&](std::size_t v) {
    std::vector<std::size_t> back = li.oracle(v);
    return std::find(back.begin(), back.end(), u) != back.end();
  };
  std::vector<std::size_t> m = li.oracle(u);
  m.erase(std::remove(m.begin(), m.end(), u), m.end());
  std::size_t dv = assignment_index(evaluate(pc.d, a));
  std::size_t fv = assignment_index(evaluate(pc.f, a));

  // Predicted pattern: fixed[k] in {0,1} or -1 when covered by a group that
  // must contain exactly one satisfied component.
  int fixed[6] = {0, 0, 0, 0, 0, 0};
  std::vector<std::vector<int>> one_of;
  if (m.empty()) {
    hc.case_id = 1;
    hc.detail = "1";
    for (int k = 0; k < 6; ++k) fixed[k] = 1;
  } else if (m.size() == 1) {
    hc.case_id = 2;
    fixed[4] = fixed[5] = 1;  // FF, F
    if (mutual(m[0])) {
      hc.detail = "2a";
      fixed[1] = fixed[2] = -1;
      one_of.push_back({1, 2});  // exactly one of FD, DD
    } else {
      hc.detail = "2b";
    }
  } else {
    hc.case_id = 3;
    bool md = mutual(dv), mf = mutual(fv);
    if (md && mf) {
      hc.detail = "3a";
      fixed[1] = fixed[2] = fixed[0] = fixed[4] = -1;
      one_of.push_back({1, 2});  // FD / DD, from the D-side neighbor
      one_of.push_back({0, 4});  // DF / FF, from the F-side neighbor
    } else if (md) {
      hc.detail = "3b";
      fixed[1] = fixed[2] = -1;
      one_of.push_back({1, 2});
    } else if (mf) {
      hc.detail = "3b";
      fixed[0] = fixed[4] = -1;
      one_of.push_back({0, 4});
    } else {
      hc.detail = "3c";
    }
  }
  hc.pattern_ok = true;
  for (int k = 0; k < 6; ++k)
    if (fixed[k] >= 0 && sat[k] != (fixed[k] == 1)) hc.pattern_ok = false;
  for (const auto& group : one_of) {
    int count = 0;
    for (int k : group) count += sat[k] ? 1 : 0;
    if (count != 1) hc.pattern_ok = false;
  }
  std::size_t deg = graph_neighbors(li, u).size();
  hc.parity_ok = (hc.satisfied.size() % 2) == (deg % 2);
  return hc;
}

DegreeParityReport verify_degree_parity(const LeafInstance& li) {
  DegreeParityReport rep;
  auto [d, f] = neighbor_circuits(li);
  PpaComposition pc = ppa_composition(d, f);
  std::size_t size = std::size_t{1} << li.n;
  for (std::size_t u = 0; u < size; ++u) {
    HardnessCase hc = classify_vertex(li, pc, u);
    Assignment a = assignment_from_index(u, li.n);
    Bit cval = evaluate(pc.flattened, a).at(0);
    std::size_t deg = graph_neighbors(li, u).size();
    bool circuit_parity = (cval == 1) == (deg % 2 == 1);
    if (hc.pattern_ok && hc.parity_ok && circuit_parity) continue;
    rep.ok = false;
    std::ostringstream os;
    os << "u=" << assignment_to_string(a) << " case " << hc.detail << " satisfied={";
    for (std::size_t i = 0; i < hc.satisfied.size(); ++i)
      os << (i ? "," : "") << hc.satisfied[i];
    os << "} deg=" << deg << " C(u)=" << int(cval);
    if (!hc.pattern_ok) os << " [pattern mismatch]";
    if (!hc.parity_ok) os << " [parity mismatch]";
    if (!circuit_parity) os << " [circuit/graph parity mismatch]";
    if (rep.violations.size() < 32) rep.violations.push_back(os.str());
  }
  return rep;
}

Cnf parse_dimacs(std::istream& in) {
  Cnf f;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  std::size_t expected = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(line);
    std::string tok;
    if (!(is >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      int vars = 0, clauses = 0;
      if (!(is >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 1 || clauses < 1)
        throw ParseError("line " + std::to_string(lineno) + ": bad 'p cnf' header");
      f.vars = vars;
      expected = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError("line " + std::to_string(lineno) + ": clause before header");
    is.clear();
    is.str(line);
    int lit;
    while (is >> lit) {
      if (lit == 0) {
        if (current.empty())
          throw ParseError("line " + std::to_string(lineno) + ": empty clause");
        if (current.size() > 3)
          throw ParseError("line " + std::to_string(lineno) +
                           ": clauses are limited to 3 literals");
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > f.vars)
          throw ParseError("line " + std::to_string(lineno) + ": literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw ParseError("unterminated clause");
  if (f.clauses.size() != expected)
    throw ParseError("clause count does not match header");
  return f;
}

Cnf parse_dimacs_text(const std::string& text) {
  std::istringstream is(text);
  return parse_dimacs(is);
}

Circuit threesat_to_circuit(const Cnf& f) {
  if (f.vars < 1 || f.clauses.empty())
    throw ValidationError("threesat_to_circuit: formula must have vars and clauses");
  int m = static_cast<int>(f.clauses.size());
  // One circuit variable per clause; the formula's variables become the sums
  // alpha_i = (product of clauses with literal i) + (product of clauses with
  // literal -i), and the root multiplies all alphas.
  Circuit c = circuit_with_inputs(m, "xor3sat");
  int one = -1;
  auto literal_side = [&](int i, int sign, const char* tag) {
    std::vector<int> members;
    for (int j = 0; j < m; ++j)
      for (int lit : f.clauses[static_cast<std::size_t>(j)])
        if (lit == sign * i) {
          members.push_back(j);
          break;
        }
    if (members.empty()) {
      if (one < 0) {
        Gate o;
        o.id = "one";
        o.kind = GateKind::One;
        one = static_cast<int>(c.gates.size());
        c.gates.push_back(std::move(o));
      }
      return one;  // empty product is the constant 1
    }
    Gate p;
    p.id = std::string(tag) + std::to_string(i);
    p.kind = GateKind::Prod;
    p.children = members;
    int idx = static_cast<int>(c.gates.size());
    c.gates.push_back(std::move(p));
    return idx;
  };
  std::vector<int> alphas;
  for (int i = 1; i <= f.vars; ++i) {
    int pos = literal_side(i, +1, "pos");
    int neg = literal_side(i, -1, "neg");
    Gate a;
    a.id = "alpha" + std::to_string(i);
    a.kind = GateKind::Sum;
    a.children = {pos, neg};  // slot l = positive literal side
    alphas.push_back(static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(a));
  }
  Gate root;
  root.id = "root";
  root.kind = GateKind::Prod;
  root.children = alphas;
  c.outputs = {static_cast<int>(c.gates.size())};
  c.gates.push_back(std::move(root));
  c.validate();
  return c;
}

Marking assignment_to_parse(const Cnf& f, const Circuit& img, const Assignment& x) {
  if (static_cast<int>(x.size()) != f.vars)
    throw ValidationError("assignment_to_parse: wrong assignment width");
  Marking s;
  for (int i = 1; i <= f.vars; ++i) {
    int g = img.find("alpha" + std::to_string(i));
    if (g < 0) throw ValidationError("assignment_to_parse: not a 3SAT image circuit");
    s[g] = x[static_cast<std::size_t>(i - 1)] ? 0 : 1;
  }
  return s;
}

Assignment parse_to_assignment(const Cnf& f, const Circuit& img, const Marking& s) {
  if (!is_maximal(img, s, img.out()))
    throw ContractViolation("parse_to_assignment: marking is not maximal");
  Assignment x(static_cast<std::size_t>(f.vars), 0);
  for (int i = 1; i <= f.vars; ++i) {
    int g = img.find("alpha" + std::to_string(i));
    if (g < 0) throw ValidationError("parse_to_assignment: not a 3SAT image circuit");
    auto it = s.find(g);
    if (it == s.end())
      throw ContractViolation("parse_to_assignment: alpha gate unmarked");
    x[static_cast<std::size_t>(i - 1)] = it->second == 0;
  }
  return x;
}

Circuit cnss_full_circuit(const CnssInstance& in) {
  return extend_with_disjoint_sum(in.circuit.flattened,
                                  lagrange_circuit(in.point), "la_");
}

CnssToChevalley cnss_to_chevalley(const CnssInstance& in) {
  CnssToChevalley out;
  if (evaluate(in.circuit.flattened, in.point).at(0) == 0) {
    // (C' + L_a)(a) = 0 + 1: the point itself is already an answer.
    out.solved = true;
    out.answer = in.point;
    return out;
  }
  ChevalleyInstance ch;
  ch.circuit = make_ppa_circuit(in.circuit.comp.d, in.circuit.comp.f,
                                tail_plus_one(in.circuit));
  ch.zero = in.point;
  if (evaluate(ch.circuit.flattened, ch.zero).at(0) != 0)
    throw ContractViolation("cnss_to_chevalley: point is not a zero of C' + 1");
  out.instance = std::move(ch);
  return out;
}

Assignment cnss_back_map(const CnssInstance& in, const Assignment& chevalley_answer) {
  if (chevalley_answer == in.point)
    throw ContractViolation("cnss_back_map: answer coincides with the point");
  Circuit full = cnss_full_circuit(in);
  if (evaluate(full, chevalley_answer).at(0) != 1)
    throw ContractViolation("cnss_back_map: mapped answer does not satisfy C' + L_a");
  return chevalley_answer;
}

CnssInstance chevalley_to_cnss(const ChevalleyInstance& in) {
  if (evaluate(in.circuit.flattened, in.zero).at(0) != 0)
    throw ValidationError("chevalley_to_cnss: given point is not a zero");
  CnssInstance out;
  out.circuit = make_ppa_circuit(in.circuit.comp.d, in.circuit.comp.f,
                                 tail_plus_one(in.circuit));
  out.point = in.zero;
  return out;
}

Assignment chevalley_back_map(const ChevalleyInstance& in, const Assignment& cnss_answer) {
  if (cnss_answer == in.zero)
    throw ContractViolation("chevalley_back_map: answer coincides with the zero");
  if (evaluate(in.circuit.flattened, cnss_answer).at(0) != 0)
    throw ContractViolation("chevalley_back_map: mapped answer is not a zero");
  return cnss_answer;
}

std::optional<Assignment> brute_solve_cnss(const CnssInstance& in) {
  Circuit full = cnss_full_circuit(in);
  std::size_t size = std::size_t{1} << full.n;
  for (std::size_t u = 0; u < size; ++u) {
    Assignment a = assignment_from_index(u, full.n);
    if (evaluate(full, a).at(0) == 1) return a;
  }
  return std::nullopt;
}

std::optional<Assignment> brute_solve_chevalley(const ChevalleyInstance& in) {
  std::size_t size = std::size_t{1} << in.circuit.flattened.n;
  for (std::size_t u = 0; u < size; ++u) {
    Assignment a = assignment_from_index(u, in.circuit.flattened.n);
    if (a == in.zero) continue;
    if (evaluate(in.circuit.flattened, a).at(0) == 0) return a;
  }
  return std::nullopt;
}

}  // namespace ppac
