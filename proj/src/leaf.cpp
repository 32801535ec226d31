#include "ppac/leaf.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ppac {

std::vector<std::size_t> LeafInstance::oracle(std::size_t u) const {
  std::vector<std::size_t> m;
  if (circuit_backed()) {
    Assignment a = assignment_from_index(u, n);
    m.push_back(assignment_index(evaluate(*d, a)));
    m.push_back(assignment_index(evaluate(*f, a)));
  } else {
    auto it = table.find(u);
    if (it == table.end()) {
      m.push_back(u);
    } else {
      m = it->second;
    }
  }
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

namespace {

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || file.empty() || file.front() == '/') return file;
  return dir + "/" + file;
}

}  // namespace

LeafInstance parse_leaf(std::istream& in, const std::string& dir) {
  LeafInstance li;
  std::string line;
  int lineno = 0;
  bool in_table = false, have_omega = false, done = false;
  std::string d_file, f_file;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (done) fail(lineno, "content after 'end'");
    if (li.name.empty()) {
      if (toks.size() != 2 || toks[0] != "leaf") fail(lineno, "expected 'leaf <name>'");
      li.name = toks[1];
      continue;
    }
    if (li.n == 0) {
      if (toks.size() != 2 || toks[0] != "bits") fail(lineno, "expected 'bits <n>'");
      li.n = std::stoi(toks[1]);
      if (li.n < 1 || li.n > 20) fail(lineno, "bits out of range");
      continue;
    }
    if (!have_omega) {
      if (toks.size() != 2 || toks[0] != "omega") fail(lineno, "expected 'omega <bits>'");
      li.omega = assignment_from_string(toks[1]);
      if (static_cast<int>(li.omega.size()) != li.n) fail(lineno, "omega has wrong width");
      have_omega = true;
      continue;
    }
    if (toks[0] == "end") {
      done = true;
      continue;
    }
    if (toks[0] == "table") {
      in_table = true;
      continue;
    }
    if (toks[0] == "neighbors") {
      if (toks.size() != 5 || toks[1] != "d" || toks[3] != "f")
        fail(lineno, "expected 'neighbors d <file> f <file>'");
      d_file = toks[2];
      f_file = toks[4];
      continue;
    }
    if (in_table) {
      // "<v>: <u1>? <u2>?"
      std::string v = toks[0];
      if (v.empty() || v.back() != ':') fail(lineno, "expected '<vertex>:'");
      v.pop_back();
      Assignment av = assignment_from_string(v);
      if (static_cast<int>(av.size()) != li.n) fail(lineno, "vertex has wrong width");
      if (toks.size() > 3) fail(lineno, "a vertex may list at most two neighbors");
      std::vector<std::size_t> nbrs;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        Assignment au = assignment_from_string(toks[i]);
        if (static_cast<int>(au.size()) != li.n) fail(lineno, "neighbor has wrong width");
        nbrs.push_back(assignment_index(au));
      }
      if (!li.table.emplace(assignment_index(av), std::move(nbrs)).second)
        fail(lineno, "duplicate table row for " + v);
      continue;
    }
    fail(lineno, "unexpected line");
  }
  if (!done) throw ParseError("missing 'end'");
  if (!d_file.empty()) {
    if (in_table) throw ParseError("both 'table' and 'neighbors' given");
    li.d = load_circuit(join_path(dir, d_file));
    li.f = load_circuit(join_path(dir, f_file));
  }
  validate_leaf(li);
  return li;
}

LeafInstance parse_leaf_text(const std::string& text) {
  std::istringstream is(text);
  return parse_leaf(is);
}

LeafInstance load_leaf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string dir;
  if (auto pos = path.rfind('/'); pos != std::string::npos) dir = path.substr(0, pos);
  return parse_leaf(in, dir);
}

std::string print_leaf(const LeafInstance& li) {
  std::ostringstream os;
  os << "leaf " << li.name << "\n";
  os << "bits " << li.n << "\n";
  os << "omega " << assignment_to_string(li.omega) << "\n";
  os << "table\n";
  std::size_t size = std::size_t{1} << li.n;
  for (std::size_t u = 0; u < size; ++u) {
    std::vector<std::size_t> m = li.oracle(u);
    if (m.size() == 1 && m[0] == u) continue;  // default row
    os << assignment_to_string(assignment_from_index(u, li.n)) << ":";
    for (std::size_t v : m)
      os << " " << assignment_to_string(assignment_from_index(v, li.n));
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

void validate_leaf(const LeafInstance& li) {
  if (li.n < 1) throw ValidationError("leaf: bits must be >= 1");
  if (static_cast<int>(li.omega.size()) != li.n)
    throw ValidationError("leaf: omega width mismatch");
  std::size_t size = std::size_t{1} << li.n;
  if (li.circuit_backed()) {
    const Circuit& d = *li.d;
    const Circuit& f = *li.f;
    if (d.n != li.n || f.n != li.n ||
        static_cast<int>(d.outputs.size()) != li.n ||
        static_cast<int>(f.outputs.size()) != li.n)
      throw ValidationError("leaf: neighbor circuits must map n bits to n bits");
  } else {
    for (const auto& [u, m] : li.table) {
      if (u >= size) throw ValidationError("leaf: table vertex out of range");
      if (m.size() > 2)
        throw ValidationError("leaf: a vertex may have at most two neighbors");
      for (std::size_t v : m)
        if (v >= size) throw ValidationError("leaf: neighbor out of range");
    }
  }
  std::size_t omega = assignment_index(li.omega);
  if (graph_neighbors(li, omega).size() != 1)
    throw ValidationError("leaf: omega must have degree exactly 1");
}

std::vector<std::size_t> graph_neighbors(const LeafInstance& li, std::size_t u) {
  std::vector<std::size_t> out;
  for (std::size_t v : li.oracle(u)) {
    if (v == u) continue;
    std::vector<std::size_t> back = li.oracle(v);
    if (std::find(back.begin(), back.end(), u) != back.end()) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> brute_force_leaves(const LeafInstance& li) {
  std::vector<std::size_t> leaves;
  std::size_t size = std::size_t{1} << li.n;
  for (std::size_t u = 0; u < size; ++u)
    if (graph_neighbors(li, u).size() == 1) leaves.push_back(u);
  return leaves;
}

std::size_t follow_path(const LeafInstance& li, std::size_t start, std::uint64_t steps) {
  std::vector<std::size_t> nbrs = graph_neighbors(li, start);
  if (nbrs.size() != 1)
    throw ValidationError("follow_path: start vertex does not have degree 1");
  std::size_t prev = start, cur = nbrs[0];
  for (std::uint64_t i = 0; i < steps; ++i) {
    std::vector<std::size_t> next = graph_neighbors(li, cur);
    next.erase(std::remove(next.begin(), next.end(), prev), next.end());
    if (next.empty()) return cur;
    prev = std::exchange(cur, next[0]);
  }
  throw CapExceeded("follow_path: step cap exceeded");
}

}  // namespace ppac
