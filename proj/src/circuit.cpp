#include "ppac/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace ppac {

int Circuit::find(std::string_view id) const {
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].id == id) return static_cast<int>(i);
  return -1;
}

int Circuit::one_gate() const {
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].kind == GateKind::One) return static_cast<int>(i);
  return -1;
}

int Circuit::var_gate(int var) const {
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].kind == GateKind::Var && gates[i].var == var)
      return static_cast<int>(i);
  return -1;
}

int Circuit::out() const {
  if (outputs.size() != 1)
    throw ValidationError("circuit '" + name + "' is not single-output");
  return outputs[0];
}

void Circuit::validate() const {
  if (n < 1) throw ValidationError("circuit '" + name + "': inputs must be >= 1");
  if (gates.empty()) throw ValidationError("circuit '" + name + "': no gates");
  if (outputs.empty()) throw ValidationError("circuit '" + name + "': no outputs");
  int ones = 0;
  std::unordered_map<std::string_view, int> seen;
  std::vector<char> var_seen(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.id.empty()) throw ValidationError("gate with empty id");
    if (!seen.emplace(g.id, static_cast<int>(i)).second)
      throw ValidationError("duplicate gate id '" + g.id + "'");
    switch (g.kind) {
      case GateKind::Var:
        if (g.var < 1 || g.var > n)
          throw ValidationError("gate '" + g.id + "': variable index out of range");
        if (var_seen[static_cast<std::size_t>(g.var)])
          throw ValidationError("duplicate var gate for x" + std::to_string(g.var));
        var_seen[static_cast<std::size_t>(g.var)] = 1;
        break;
      case GateKind::One:
        if (++ones > 1) throw ValidationError("more than one 'one' gate");
        break;
      case GateKind::Sum:
      case GateKind::Prod:
        if (g.children.empty())
          throw ValidationError("gate '" + g.id + "': arity must be >= 1");
        for (int c : g.children)
          if (c < 0 || c >= static_cast<int>(i))
            throw ValidationError("gate '" + g.id +
                                  "': children must be previously declared");
        break;
    }
  }
  for (int o : outputs)
    if (o < 0 || o >= static_cast<int>(gates.size()))
      throw ValidationError("output gate index out of range");
}

namespace {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  Circuit c;
  std::unordered_map<std::string, int> index;
  std::string line;
  int lineno = 0;
  enum { Head, Inputs, Body, Done } state = Head;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    if (state == Done) fail(lineno, "content after 'end'");
    if (state == Head) {
      if (toks.size() != 2 || toks[0] != "circuit")
        fail(lineno, "expected 'circuit <name>'");
      if (!valid_id(toks[1])) fail(lineno, "bad circuit name '" + toks[1] + "'");
      c.name = toks[1];
      state = Inputs;
      continue;
    }
    if (state == Inputs) {
      if (toks.size() != 2 || toks[0] != "inputs")
        fail(lineno, "expected 'inputs <n>'");
      try {
        c.n = std::stoi(toks[1]);
      } catch (...) {
        fail(lineno, "bad input count '" + toks[1] + "'");
      }
      if (c.n < 1) fail(lineno, "inputs must be >= 1");
      state = Body;
      continue;
    }
    if (toks[0] == "end") {
      if (toks.size() != 1) fail(lineno, "unexpected tokens after 'end'");
      if (c.outputs.empty()) fail(lineno, "'end' before 'outputs'");
      state = Done;
      continue;
    }
    if (toks[0] == "outputs") {
      if (!c.outputs.empty()) fail(lineno, "duplicate 'outputs' line");
      if (toks.size() < 2) fail(lineno, "outputs line needs at least one gate");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto it = index.find(toks[i]);
        if (it == index.end()) fail(lineno, "unknown output gate '" + toks[i] + "'");
        c.outputs.push_back(it->second);
      }
      continue;
    }
    // gate declaration: <id> = var <i> | one | sum <id>+ | prod <id>+
    if (toks.size() < 3 || toks[1] != "=") fail(lineno, "expected '<id> = ...'");
    if (!c.outputs.empty()) fail(lineno, "gate declared after 'outputs'");
    Gate g;
    g.id = toks[0];
    if (!valid_id(g.id)) fail(lineno, "bad gate id '" + g.id + "'");
    if (index.count(g.id)) fail(lineno, "duplicate gate id '" + g.id + "'");
    const std::string& kind = toks[2];
    if (kind == "var") {
      if (toks.size() != 4) fail(lineno, "expected 'var <i>'");
      g.kind = GateKind::Var;
      try {
        g.var = std::stoi(toks[3]);
      } catch (...) {
        fail(lineno, "bad variable index '" + toks[3] + "'");
      }
    } else if (kind == "one") {
      if (toks.size() != 3) fail(lineno, "unexpected tokens after 'one'");
      g.kind = GateKind::One;
    } else if (kind == "sum" || kind == "prod") {
      g.kind = kind == "sum" ? GateKind::Sum : GateKind::Prod;
      if (toks.size() < 4) fail(lineno, "'" + kind + "' needs at least one child");
      for (std::size_t i = 3; i < toks.size(); ++i) {
        auto it = index.find(toks[i]);
        if (it == index.end())
          fail(lineno, "child '" + toks[i] + "' not declared before use");
        g.children.push_back(it->second);
      }
    } else {
      fail(lineno, "unknown gate kind '" + kind + "'");
    }
    index.emplace(g.id, static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(g));
  }
  if (state != Done) throw ParseError("missing 'end'");
  c.validate();
  return c;
}

Circuit parse_circuit_text(const std::string& text) {
  std::istringstream is(text);
  return parse_circuit(is);
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_circuit(in);
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.name << "\n";
  os << "inputs " << c.n << "\n";
  for (const Gate& g : c.gates) {
    os << g.id << " =";
    switch (g.kind) {
      case GateKind::Var: os << " var " << g.var; break;
      case GateKind::One: os << " one"; break;
      case GateKind::Sum:
      case GateKind::Prod:
        os << (g.kind == GateKind::Sum ? " sum" : " prod");
        for (int ch : g.children) os << " " << c.gates[ch].id;
        break;
    }
    os << "\n";
  }
  os << "outputs";
  for (int o : c.outputs) os << " " << c.gates[o].id;
  os << "\nend\n";
  return os.str();
}

std::vector<Bit> evaluate_gates(const Circuit& c, const Assignment& a) {
  if (static_cast<int>(a.size()) != c.n)
    throw ValidationError("assignment size does not match inputs");
  std::vector<Bit> v(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Var: v[i] = a[static_cast<std::size_t>(g.var - 1)]; break;
      case GateKind::One: v[i] = 1; break;
      case GateKind::Sum: {
        Bit s = 0;
        for (int ch : g.children) s ^= v[static_cast<std::size_t>(ch)];
        v[i] = s;
        break;
      }
      case GateKind::Prod: {
        Bit p = 1;
        for (int ch : g.children) p = static_cast<Bit>(p & v[static_cast<std::size_t>(ch)]);
        v[i] = p;
        break;
      }
    }
  }
  return v;
}

std::vector<Bit> evaluate(const Circuit& c, const Assignment& a) {
  std::vector<Bit> v = evaluate_gates(c, a);
  std::vector<Bit> out;
  out.reserve(c.outputs.size());
  for (int o : c.outputs) out.push_back(v[static_cast<std::size_t>(o)]);
  return out;
}

std::vector<BigInt> gate_degrees(const Circuit& c) {
  std::vector<BigInt> d(c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Var: d[i] = 1; break;
      case GateKind::One: d[i] = 0; break;
      case GateKind::Sum: {
        BigInt m = 0;
        for (int ch : g.children) m = std::max(m, d[static_cast<std::size_t>(ch)]);
        d[i] = m;
        break;
      }
      case GateKind::Prod: {
        BigInt s = 0;
        for (int ch : g.children) s += d[static_cast<std::size_t>(ch)];
        d[i] = s;
        break;
      }
    }
  }
  return d;
}

std::vector<BigInt> circuit_degree(const Circuit& c) {
  std::vector<BigInt> d = gate_degrees(c);
  std::vector<BigInt> out;
  out.reserve(c.outputs.size());
  for (int o : c.outputs) out.push_back(d[static_cast<std::size_t>(o)]);
  return out;
}

std::vector<int> append_circuit_copy(Circuit& dst, const Circuit& src,
                                     const std::vector<int>& var_map,
                                     const std::string& prefix,
                                     std::vector<int>* gate_map_out) {
  std::vector<int> map(src.gates.size(), -1);
  for (std::size_t i = 0; i < src.gates.size(); ++i) {
    const Gate& g = src.gates[i];
    if (g.kind == GateKind::Var) {
      map[i] = var_map[static_cast<std::size_t>(g.var - 1)];
      continue;
    }
    if (g.kind == GateKind::One) {
      int one = dst.one_gate();
      if (one < 0) {
        Gate o;
        o.id = prefix + "one";
        o.kind = GateKind::One;
        one = static_cast<int>(dst.gates.size());
        dst.gates.push_back(std::move(o));
      }
      map[i] = one;
      continue;
    }
    Gate copy;
    copy.id = prefix + g.id;
    copy.kind = g.kind;
    for (int ch : g.children) copy.children.push_back(map[static_cast<std::size_t>(ch)]);
    map[i] = static_cast<int>(dst.gates.size());
    dst.gates.push_back(std::move(copy));
  }
  std::vector<int> outs;
  outs.reserve(src.outputs.size());
  for (int o : src.outputs) outs.push_back(map[static_cast<std::size_t>(o)]);
  if (gate_map_out) *gate_map_out = std::move(map);
  return outs;
}

Circuit circuit_with_inputs(int n, std::string name) {
  Circuit c;
  c.name = std::move(name);
  c.n = n;
  for (int i = 1; i <= n; ++i) {
    Gate g;
    g.id = "x" + std::to_string(i);
    g.kind = GateKind::Var;
    g.var = i;
    c.gates.push_back(std::move(g));
  }
  return c;
}

namespace {

std::vector<int> identity_var_map(const Circuit& c) {
  std::vector<int> m(static_cast<std::size_t>(c.n));
  for (int i = 0; i < c.n; ++i) m[static_cast<std::size_t>(i)] = i;
  return m;
}

}  // namespace

Circuit compose(const Circuit& outer, const Circuit& inner) {
  if (outer.n != static_cast<int>(inner.outputs.size()))
    throw ValidationError("compose: outer has " + std::to_string(outer.n) +
                          " inputs but inner has " +
                          std::to_string(inner.outputs.size()) + " outputs");
  Circuit c = circuit_with_inputs(inner.n, outer.name + "_of_" + inner.name);
  std::vector<int> inner_outs = append_circuit_copy(c, inner, identity_var_map(c), "i_");
  c.outputs = append_circuit_copy(c, outer, inner_outs, "o_");
  c.validate();
  return c;
}

Circuit disjoint_sum(const Circuit& a, const Circuit& b, std::string name) {
  if (a.n != b.n) throw ValidationError("disjoint_sum: input arity mismatch");
  if (name.empty()) name = a.name + "_plus_" + b.name;
  Circuit c = circuit_with_inputs(a.n, std::move(name));
  std::vector<int> vm = identity_var_map(c);
  int ao = append_circuit_copy(c, a, vm, "a_").at(0);
  int bo = append_circuit_copy(c, b, vm, "b_").at(0);
  Gate root;
  root.id = "root";
  root.kind = GateKind::Sum;
  root.children = {ao, bo};
  c.outputs = {static_cast<int>(c.gates.size())};
  c.gates.push_back(std::move(root));
  c.validate();
  return c;
}

Circuit lagrange_circuit(const Assignment& a, std::string name) {
  int n = static_cast<int>(a.size());
  if (n < 1) throw ValidationError("lagrange_circuit: empty point");
  if (name.empty()) name = "L" + assignment_to_string(a);
  Circuit c = circuit_with_inputs(n, std::move(name));
  std::vector<int> factors;
  int one = -1;
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<std::size_t>(i)]) {
      factors.push_back(i);
      continue;
    }
    if (one < 0) {
      Gate o;
      o.id = "one";
      o.kind = GateKind::One;
      one = static_cast<int>(c.gates.size());
      c.gates.push_back(std::move(o));
    }
    Gate s;
    s.id = "nx" + std::to_string(i + 1);
    s.kind = GateKind::Sum;
    s.children = {i, one};
    factors.push_back(static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(s));
  }
  Gate root;
  root.id = "root";
  root.kind = GateKind::Prod;
  root.children = factors;
  c.outputs = {static_cast<int>(c.gates.size())};
  c.gates.push_back(std::move(root));
  c.validate();
  return c;
}

Circuit identity_check_circuit(int n) {
  if (n < 1) throw ValidationError("identity_check_circuit: n must be >= 1");
  Circuit c = circuit_with_inputs(2 * n, "I" + std::to_string(n));
  Gate o;
  o.id = "one";
  o.kind = GateKind::One;
  int one = static_cast<int>(c.gates.size());
  c.gates.push_back(std::move(o));
  std::vector<int> hs;
  for (int i = 1; i <= n; ++i) {
    Gate h;
    h.id = "h" + std::to_string(i);
    h.kind = GateKind::Sum;
    h.children = {i - 1, n + i - 1, one};
    hs.push_back(static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(h));
  }
  Gate root;
  root.id = "root";
  root.kind = GateKind::Prod;
  root.children = hs;
  c.outputs = {static_cast<int>(c.gates.size())};
  c.gates.push_back(std::move(root));
  c.validate();
  return c;
}

Circuit compile_boolean(const BooleanCircuit& b, std::string name) {
  if (b.n < 1) throw ValidationError("compile_boolean: inputs must be >= 1");
  Circuit c = circuit_with_inputs(b.n, name.empty() ? "bool" : std::move(name));
  int one = -1;
  auto need_one = [&]() {
    if (one < 0) {
      Gate o;
      o.id = "one";
      o.kind = GateKind::One;
      one = static_cast<int>(c.gates.size());
      c.gates.push_back(std::move(o));
    }
    return one;
  };
  std::vector<int> map(b.nodes.size(), -1);
  int k = 0;
  auto fresh = [&](GateKind kind, std::vector<int> children) {
    Gate g;
    g.id = "g" + std::to_string(++k);
    g.kind = kind;
    g.children = std::move(children);
    int idx = static_cast<int>(c.gates.size());
    c.gates.push_back(std::move(g));
    return idx;
  };
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    const BoolNode& nd = b.nodes[i];
    std::vector<int> ch;
    for (int j : nd.children) {
      if (j < 0 || j >= static_cast<int>(i))
        throw ValidationError("compile_boolean: nodes must be topological");
      ch.push_back(map[static_cast<std::size_t>(j)]);
    }
    switch (nd.kind) {
      case BoolNode::Kind::Input:
        if (nd.var < 1 || nd.var > b.n)
          throw ValidationError("compile_boolean: input index out of range");
        map[i] = nd.var - 1;
        break;
      case BoolNode::Kind::Not:
        if (ch.size() != 1) throw ValidationError("compile_boolean: NOT is unary");
        map[i] = fresh(GateKind::Sum, {ch[0], need_one()});
        break;
      case BoolNode::Kind::And:
        if (ch.empty()) throw ValidationError("compile_boolean: AND needs children");
        map[i] = fresh(GateKind::Prod, ch);
        break;
      case BoolNode::Kind::Xor:
        if (ch.empty()) throw ValidationError("compile_boolean: XOR needs children");
        map[i] = fresh(GateKind::Sum, ch);
        break;
      case BoolNode::Kind::Or: {
        if (ch.size() != 2) throw ValidationError("compile_boolean: OR is binary");
        int p = fresh(GateKind::Prod, ch);
        map[i] = fresh(GateKind::Sum, {ch[0], ch[1], p});
        break;
      }
    }
  }
  for (int o : b.outputs) {
    if (o < 0 || o >= static_cast<int>(b.nodes.size()))
      throw ValidationError("compile_boolean: output out of range");
    c.outputs.push_back(map[static_cast<std::size_t>(o)]);
  }
  c.validate();
  return c;
}

Circuit synthesize_from_table(const FunctionTable& t, std::string name) {
  if (t.n_in < 1 || t.n_out < 1)
    throw ValidationError("synthesize_from_table: bad arity");
  std::size_t rows = std::size_t{1} << t.n_in;
  if (t.rows.size() != rows)
    throw ValidationError("synthesize_from_table: table must be total");
  Circuit c = circuit_with_inputs(t.n_in, name.empty() ? "table" : std::move(name));
  int one = -1;
  std::vector<int> neg(static_cast<std::size_t>(t.n_in), -1);  // x_i + 1, lazily
  auto factor = [&](int i, Bit bit) {
    if (bit) return i;
    if (neg[static_cast<std::size_t>(i)] < 0) {
      if (one < 0) {
        Gate o;
        o.id = "one";
        o.kind = GateKind::One;
        one = static_cast<int>(c.gates.size());
        c.gates.push_back(std::move(o));
      }
      Gate s;
      s.id = "nx" + std::to_string(i + 1);
      s.kind = GateKind::Sum;
      s.children = {i, one};
      neg[static_cast<std::size_t>(i)] = static_cast<int>(c.gates.size());
      c.gates.push_back(std::move(s));
    }
    return neg[static_cast<std::size_t>(i)];
  };
  std::vector<int> point(rows, -1);  // Lagrange product per table row, lazily
  auto lagrange_at = [&](std::size_t u) {
    if (point[u] >= 0) return point[u];
    Assignment a = assignment_from_index(u, t.n_in);
    Gate p;
    p.id = "p" + assignment_to_string(a);
    p.kind = GateKind::Prod;
    for (int i = 0; i < t.n_in; ++i)
      p.children.push_back(factor(i, a[static_cast<std::size_t>(i)]));
    point[u] = static_cast<int>(c.gates.size());
    c.gates.push_back(std::move(p));
    return point[u];
  };
  for (int j = 0; j < t.n_out; ++j) {
    Gate s;
    s.id = "out" + std::to_string(j + 1);
    s.kind = GateKind::Sum;
    for (std::size_t u = 0; u < rows; ++u) {
      if (static_cast<int>(t.rows[u].size()) != t.n_out)
        throw ValidationError("synthesize_from_table: ragged row");
      if (t.rows[u][static_cast<std::size_t>(j)]) s.children.push_back(lagrange_at(u));
    }
    if (s.children.empty()) s.children = {0, 0};  // x_1 + x_1 == 0
    c.outputs.push_back(static_cast<int>(c.gates.size()));
    c.gates.push_back(std::move(s));
  }
  c.validate();
  return c;
}

std::size_t assignment_index(const Assignment& a) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) idx |= std::size_t{1} << i;
  return idx;
}

Assignment assignment_from_index(std::size_t idx, int n) {
  Assignment a(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    a[static_cast<std::size_t>(i)] = static_cast<Bit>((idx >> i) & 1);
  return a;
}

std::string assignment_to_string(const Assignment& a) {
  std::string s;
  s.reserve(a.size());
  for (Bit b : a) s.push_back(b ? '1' : '0');
  return s;
}

Assignment assignment_from_string(const std::string& s) {
  Assignment a;
  a.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw ParseError("bad assignment string '" + s + "'");
    a.push_back(ch == '1');
  }
  if (a.empty()) throw ParseError("empty assignment string");
  return a;
}

}  // namespace ppac
