#include "ppac/randgen.hpp"

#include <algorithm>

namespace ppac {

Circuit random_circuit(std::mt19937_64& rng, int n, int max_gates) {
  if (n < 1 || max_gates < 1)
    throw ValidationError("random_circuit: need n >= 1 and at least one gate");
  Circuit c = circuit_with_inputs(n, "random");
  std::uniform_int_distribution<int> kind6(0, 5);
  int one = -1;
  std::uniform_int_distribution<int> count(1, max_gates);
  int extra = count(rng);
  for (int k = 0; k < extra; ++k) {
    int pick = kind6(rng);
    if (pick == 0 && one < 0) {
      Gate o;
      o.id = "one";
      o.kind = GateKind::One;
      one = static_cast<int>(c.gates.size());
      c.gates.push_back(std::move(o));
      continue;
    }
    Gate g;
    g.id = "g" + std::to_string(k);
    g.kind = pick % 2 ? GateKind::Sum : GateKind::Prod;
    std::uniform_int_distribution<int> arity(2, 3);
    std::uniform_int_distribution<int> child(0, static_cast<int>(c.gates.size()) - 1);
    int a = arity(rng);
    for (int j = 0; j < a; ++j) g.children.push_back(child(rng));
    c.gates.push_back(std::move(g));
  }
  c.outputs = {static_cast<int>(c.gates.size()) - 1};
  c.validate();
  return c;
}

namespace {

Circuit random_thin(std::mt19937_64& rng, int n, const std::string& name) {
  Circuit c = circuit_with_inputs(n, name);
  std::uniform_int_distribution<int> shape(0, 3);
  std::uniform_int_distribution<int> var(0, n - 1);
  int one = -1;
  for (int i = 0; i < n; ++i) {
    switch (shape(rng)) {
      case 0:
        c.outputs.push_back(var(rng));
        break;
      case 1: {  // x_j + 1
        if (one < 0) {
          Gate o;
          o.id = "one";
          o.kind = GateKind::One;
          one = static_cast<int>(c.gates.size());
          c.gates.push_back(std::move(o));
        }
        Gate g;
        g.id = "n" + std::to_string(i);
        g.kind = GateKind::Sum;
        g.children = {var(rng), one};
        c.outputs.push_back(static_cast<int>(c.gates.size()));
        c.gates.push_back(std::move(g));
        break;
      }
      default: {  // x_j + x_k or x_j * x_k
        Gate g;
        g.id = "b" + std::to_string(i);
        g.kind = shape(rng) % 2 ? GateKind::Sum : GateKind::Prod;
        g.children = {var(rng), var(rng)};
        c.outputs.push_back(static_cast<int>(c.gates.size()));
        c.gates.push_back(std::move(g));
        break;
      }
    }
  }
  c.validate();
  return c;
}

}  // namespace

std::pair<Circuit, Circuit> random_thin_pair(std::mt19937_64& rng, int n) {
  return {random_thin(rng, n, "Drand"), random_thin(rng, n, "Frand")};
}

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses) {
  if (vars < 1 || clauses < 1)
    throw ValidationError("random_cnf: need variables and clauses");
  Cnf f;
  f.vars = vars;
  std::uniform_int_distribution<int> width(1, std::min(3, vars));
  std::uniform_int_distribution<int> var(1, vars);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int j = 0; j < clauses; ++j) {
    int w = width(rng);
    std::vector<int> vs;
    while (static_cast<int>(vs.size()) < w) {
      int v = var(rng);
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    std::vector<int> clause;
    for (int v : vs) clause.push_back(sign(rng) ? v : -v);
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace ppac
