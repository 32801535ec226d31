#include "ppac/parse.hpp"

#include <algorithm>
#include <sstream>

namespace ppac {

AccessGraph accessibility_graph(const Circuit& c, const Marking& s, int root) {
  if (root < 0 || root >= static_cast<int>(c.gates.size()))
    throw ValidationError("accessibility_graph: root out of range");
  AccessGraph g;
  g.root = root;
  g.vertex.assign(c.gates.size(), 0);
  // Declaration order is topological, so a single descending sweep reaches the
  // fixed point: parents are settled before any of their children.
  g.vertex[static_cast<std::size_t>(root)] = 1;
  for (int i = root; i >= 0; --i) {
    if (!g.vertex[static_cast<std::size_t>(i)]) continue;
    const Gate& gate = c.gates[static_cast<std::size_t>(i)];
    if (gate.kind == GateKind::Prod) {
      for (int ch : gate.children) {
        g.vertex[static_cast<std::size_t>(ch)] = 1;
        g.edges.emplace(ch, i);
      }
    } else if (gate.kind == GateKind::Sum) {
      auto it = s.find(i);
      if (it == s.end()) continue;
      if (it->second < 0 || it->second >= static_cast<int>(gate.children.size()))
        throw ValidationError("marking slot out of range at gate '" + gate.id + "'");
      int ch = gate.children[static_cast<std::size_t>(it->second)];
      g.vertex[static_cast<std::size_t>(ch)] = 1;
      g.edges.emplace(ch, i);
    }
  }
  return g;
}

AccessGraph accessibility_graph(const Circuit& c, const Marking& s) {
  return accessibility_graph(c, s, c.out());
}

std::string ClosureReport::describe(const Circuit& c) const {
  if (closed) return "closed";
  std::ostringstream os;
  if (unmarked_accessible >= 0)
    os << "accessible sum gate '"
       << c.gates[static_cast<std::size_t>(unmarked_accessible)].id << "' is unmarked";
  if (marked_inaccessible >= 0) {
    if (unmarked_accessible >= 0) os << "; ";
    os << "marked gate '" << c.gates[static_cast<std::size_t>(marked_inaccessible)].id
       << "' is not accessible";
  }
  return os.str();
}

ClosureReport check_closed(const Circuit& c, const Marking& s, int root) {
  AccessGraph g = accessibility_graph(c, s, root);
  ClosureReport r;
  for (const auto& [gate, slot] : s) {
    (void)slot;
    if (!g.has(gate)) {
      r.closed = false;
      r.marked_inaccessible = gate;
      break;
    }
  }
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (g.vertex[i] && c.gates[i].kind == GateKind::Sum && !s.count(static_cast<int>(i))) {
      r.closed = false;
      r.unmarked_accessible = static_cast<int>(i);
      break;
    }
  }
  return r;
}

bool is_closed(const Circuit& c, const Marking& s, int root) {
  return check_closed(c, s, root).closed;
}

bool is_closed(const Circuit& c, const Marking& s) { return is_closed(c, s, c.out()); }

std::set<int> Monomial::support() const {
  std::set<int> out;
  for (const auto& [v, e] : exps)
    if (e != 0) out.insert(v);
  return out;
}

bool Monomial::full_support(int n) const {
  return static_cast<int>(support().size()) == n;
}

BigInt Monomial::degree() const {
  BigInt d = 0;
  for (const auto& [v, e] : exps) {
    (void)v;
    d += e;
  }
  return d;
}

bool Monomial::evaluates_to_one(const Assignment& a) const {
  for (const auto& [v, e] : exps)
    if (e != 0 && !a[static_cast<std::size_t>(v - 1)]) return false;
  return true;
}

bool Monomial::operator<(const Monomial& o) const {
  return std::lexicographical_compare(
      exps.begin(), exps.end(), o.exps.begin(), o.exps.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : exps) {
    if (e == 0) continue;
    if (!first) os << "*";
    os << "x" << v;
    if (e != 1) os << "^" << e;
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

Monomial monomial_of(const Circuit& c, const Marking& s, int root) {
  AccessGraph g = accessibility_graph(c, s, root);
  // Path counts to the root, walked parents-first. Product gates contribute
  // once per child occurrence, sum gates once through the marked slot.
  std::vector<BigInt> paths(c.gates.size(), 0);
  paths[static_cast<std::size_t>(root)] = 1;
  for (int i = root; i >= 0; --i) {
    if (!g.has(i) || paths[static_cast<std::size_t>(i)] == 0) continue;
    const Gate& gate = c.gates[static_cast<std::size_t>(i)];
    if (gate.kind == GateKind::Prod) {
      for (int ch : gate.children)
        paths[static_cast<std::size_t>(ch)] += paths[static_cast<std::size_t>(i)];
    } else if (gate.kind == GateKind::Sum) {
      int ch = gate.children[static_cast<std::size_t>(s.at(i))];
      paths[static_cast<std::size_t>(ch)] += paths[static_cast<std::size_t>(i)];
    }
  }
  Monomial m;
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    if (c.gates[i].kind == GateKind::Var && g.vertex[i] && paths[i] != 0)
      m.exps[c.gates[i].var] = paths[i];
  return m;
}

Monomial monomial_of(const Circuit& c, const Marking& s) {
  return monomial_of(c, s, c.out());
}

bool is_maximal(const Circuit& c, const Marking& s, int root) {
  return monomial_of(c, s, root).full_support(c.n);
}

bool is_maximal(const Circuit& c, const Marking& s) {
  return is_maximal(c, s, c.out());
}

ParseEnumerator::ParseEnumerator(const Circuit& c, int root, std::uint64_t cap)
    : c_(c), root_(root), cap_(cap) {
  stack_.push_back(Frame{Marking{}});
}

std::optional<Marking> ParseEnumerator::next() {
  while (!stack_.empty()) {
    Frame fr = std::move(stack_.back());
    stack_.pop_back();
    AccessGraph g = accessibility_graph(c_, fr.partial, root_);
    if (prune && !prune(fr.partial, g)) continue;
    int gate = -1;
    for (std::size_t i = 0; i < c_.gates.size(); ++i) {
      if (g.vertex[i] && c_.gates[i].kind == GateKind::Sum &&
          !fr.partial.count(static_cast<int>(i))) {
        gate = static_cast<int>(i);
        break;
      }
    }
    if (gate < 0) {
      if (++emitted_ > cap_)
        throw CapExceeded("parse subcircuit enumeration exceeded cap of " +
                          std::to_string(cap_));
      return fr.partial;
    }
    const Gate& gd = c_.gates[static_cast<std::size_t>(gate)];
    // Push slots in reverse so that ascending slot order pops first.
    for (int slot = static_cast<int>(gd.children.size()) - 1; slot >= 0; --slot) {
      Frame child;
      child.partial = fr.partial;
      child.partial[gate] = slot;
      stack_.push_back(std::move(child));
    }
  }
  return std::nullopt;
}

std::vector<Marking> enumerate_parse_subcircuits(const Circuit& c, std::uint64_t cap) {
  ParseEnumerator en(c, c.out(), cap);
  std::vector<Marking> out;
  while (auto m = en.next()) out.push_back(std::move(*m));
  return out;
}

std::vector<Marking> enumerate_maximal(const Circuit& c, std::uint64_t cap) {
  int root = c.out();
  ParseEnumerator en(c, root, cap);
  // Prune branches that can no longer reach every variable: take the
  // optimistic closure where unmarked sums expose all children.
  en.prune = [&c, root](const Marking& partial, const AccessGraph&) {
    std::vector<char> reach(c.gates.size(), 0);
    reach[static_cast<std::size_t>(root)] = 1;
    for (int i = root; i >= 0; --i) {
      if (!reach[static_cast<std::size_t>(i)]) continue;
      const Gate& gate = c.gates[static_cast<std::size_t>(i)];
      if (gate.kind == GateKind::Prod) {
        for (int ch : gate.children) reach[static_cast<std::size_t>(ch)] = 1;
      } else if (gate.kind == GateKind::Sum) {
        auto it = partial.find(i);
        if (it != partial.end()) {
          reach[static_cast<std::size_t>(gate.children[static_cast<std::size_t>(it->second)])] = 1;
        } else {
          for (int ch : gate.children) reach[static_cast<std::size_t>(ch)] = 1;
        }
      }
    }
    int seen = 0;
    for (std::size_t i = 0; i < c.gates.size(); ++i)
      if (c.gates[i].kind == GateKind::Var && reach[i]) ++seen;
    return seen == c.n;
  };
  std::vector<Marking> out;
  while (auto m = en.next())
    if (is_maximal(c, *m, root)) out.push_back(std::move(*m));
  return out;
}

std::vector<char> cone_of(const Circuit& c, int g) {
  // Gates with a (directed) path to g, i.e. everything below g.
  std::vector<char> in(c.gates.size(), 0);
  in[static_cast<std::size_t>(g)] = 1;
  for (int i = g; i >= 0; --i) {
    if (!in[static_cast<std::size_t>(i)]) continue;
    for (int ch : c.gates[static_cast<std::size_t>(i)].children)
      in[static_cast<std::size_t>(ch)] = 1;
  }
  return in;
}

Marking restrict_to(const Circuit& c, const Marking& s, int g) {
  std::vector<char> cone = cone_of(c, g);
  Marking out;
  for (const auto& [gate, slot] : s)
    if (cone[static_cast<std::size_t>(gate)]) out.emplace(gate, slot);
  return out;
}

Marking splice(const Circuit& c, const Marking& s, int g, const Marking& z_new) {
  std::vector<char> cone = cone_of(c, g);
  Marking out;
  for (const auto& [gate, slot] : s)
    if (!cone[static_cast<std::size_t>(gate)]) out.emplace(gate, slot);
  for (const auto& [gate, slot] : z_new) {
    if (!cone[static_cast<std::size_t>(gate)])
      throw ValidationError("splice: replacement marks a gate outside the cone");
    out[gate] = slot;
  }
  return out;
}

bool consistent(const Marking& a, const Marking& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      if (ia->second != ib->second) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

namespace {

std::string slot_name(const Circuit& c, int gate, int slot) {
  int arity = static_cast<int>(c.gates[static_cast<std::size_t>(gate)].children.size());
  if (arity <= 3) {
    static const char* names[] = {"l", "c", "r"};
    if (arity == 2 && slot == 1) return "r";  // binary gates use l/r
    return names[slot];
  }
  return std::to_string(slot + 1);
}

int slot_from_name(const Circuit& c, int gate, const std::string& s) {
  int arity = static_cast<int>(c.gates[static_cast<std::size_t>(gate)].children.size());
  if (arity <= 3) {
    if (s == "l") return 0;
    if (s == "c" && arity == 3) return 1;
    if (s == "r") return arity - 1;
  }
  try {
    int v = std::stoi(s);
    if (v >= 1 && v <= arity && arity > 3) return v - 1;
  } catch (...) {
  }
  throw ParseError("bad slot '" + s + "' for gate '" +
                   c.gates[static_cast<std::size_t>(gate)].id + "'");
}

}  // namespace

std::string marking_to_string(const Circuit& c, const Marking& s) {
  if (s.empty()) return "-";
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& [gate, slot] : s)
    items.emplace_back(c.gates[static_cast<std::size_t>(gate)].id,
                       slot_name(c, gate, slot));
  std::sort(items.begin(), items.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ",";
    os << items[i].first << "=" << items[i].second;
  }
  return os.str();
}

Marking marking_from_string(const Circuit& c, const std::string& text) {
  Marking s;
  if (text == "-" || text.empty()) return s;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("bad marking item '" + item + "'");
    std::string id = item.substr(0, eq);
    std::string slot = item.substr(eq + 1);
    int gate = c.find(id);
    if (gate < 0) throw ParseError("unknown gate '" + id + "' in marking");
    if (c.gates[static_cast<std::size_t>(gate)].kind != GateKind::Sum)
      throw ParseError("gate '" + id + "' is not a sum gate");
    s[gate] = slot_from_name(c, gate, slot);
  }
  return s;
}

}  // namespace ppac
