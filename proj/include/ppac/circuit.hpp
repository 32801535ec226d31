#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ppac {

using Bit = std::uint8_t;
using Assignment = std::vector<Bit>;
using BigInt = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// malformed input text / ill-formed circuit
struct ParseError : Error {
  using Error::Error;
};
// structural invariant broken (caller bug or bad data)
struct ValidationError : Error {
  using Error::Error;
};
// an explicit work cap was hit; never silently truncate
struct CapExceeded : Error {
  using Error::Error;
};
// a checked mathematical contract failed; message carries the counterexample
struct ContractViolation : Error {
  using Error::Error;
};

enum class GateKind { Var, One, Sum, Prod };

struct Gate {
  std::string id;
  GateKind kind = GateKind::One;
  int var = 0;                // 1-based variable index (Var only)
  std::vector<int> children;  // gate indices, ordered slots (Sum/Prod only)
};

// Arithmetic circuit over F2. Gates are stored in declaration order, which is
// required to be topological (children precede parents). Sum/Prod gates may
// have any arity >= 1; a unary gate passes its child through. At most one One
// gate is allowed.
struct Circuit {
  std::string name;
  int n = 0;  // number of input variables x_1..x_n
  std::vector<Gate> gates;
  std::vector<int> outputs;

  int find(std::string_view id) const;  // -1 if absent
  int one_gate() const;                 // -1 if absent
  int var_gate(int var) const;          // -1 if absent, var is 1-based
  bool is_sum(int g) const { return gates[g].kind == GateKind::Sum; }
  bool is_prod(int g) const { return gates[g].kind == GateKind::Prod; }
  int out() const;  // the single output; throws if multi-output

  void validate() const;  // throws ValidationError on broken invariants
};

Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_text(const std::string& text);
Circuit load_circuit(const std::string& path);
std::string print_circuit(const Circuit& c);

// Values of the output gates (resp. every gate) at point a.
std::vector<Bit> evaluate(const Circuit& c, const Assignment& a);
std::vector<Bit> evaluate_gates(const Circuit& c, const Assignment& a);

// Syntactic degree per output: Var -> 1, One -> 0, Sum -> max, Prod -> sum.
std::vector<BigInt> circuit_degree(const Circuit& c);
std::vector<BigInt> gate_degrees(const Circuit& c);

// outer(inner(x)): outer's variable gates are replaced by inner's outputs.
// Requires outer.n == inner.outputs.size(). Result has inner.n variables.
Circuit compose(const Circuit& outer, const Circuit& inner);

// Pointwise sum a(x) + b(x) over shared inputs; single binary sum root.
// Input gates and the One gate are shared, computational gates are copied.
Circuit disjoint_sum(const Circuit& a, const Circuit& b, std::string name = "");

// Lagrange circuit L_a: product of x_i (a_i = 1) and x_i + 1 (a_i = 0).
// L_a(b) = 1 iff b == a.
Circuit lagrange_circuit(const Assignment& a, std::string name = "");

// I(x, y) on 2n variables (y_i = x_{n+i}): product of the ternary sums
// x_i + y_i + 1. Evaluates to 1 iff x == y.
Circuit identity_check_circuit(int n);

// Boolean circuits, for neighbor oracles given as logic rather than tables.
struct BoolNode {
  enum class Kind { Input, Not, And, Or, Xor };
  Kind kind = Kind::Input;
  int var = 0;                // 1-based (Input only)
  std::vector<int> children;  // node indices; Not unary, Or binary
};
struct BooleanCircuit {
  int n = 0;
  std::vector<BoolNode> nodes;  // topological order
  std::vector<int> outputs;
};

// Arithmetization over F2: NOT a -> a + 1, a OR b -> a + b + ab,
// AND -> product, XOR -> sum.
Circuit compile_boolean(const BooleanCircuit& b, std::string name = "");

// Total function {0,1}^n_in -> {0,1}^n_out given by rows indexed with
// x_1 as the least significant bit.
struct FunctionTable {
  int n_in = 0;
  int n_out = 0;
  std::vector<std::vector<Bit>> rows;  // size 2^n_in, each of size n_out
};

// Sum of Lagrange circuits per output bit. Factor and point-product gates are
// shared across outputs. An empty sum is expressed as the zero gate x_1 + x_1.
Circuit synthesize_from_table(const FunctionTable& t, std::string name = "");

// Fresh circuit with variable gates x1..xn at indices 0..n-1.
Circuit circuit_with_inputs(int n, std::string name);

// Appends a copy of src's computational gates to dst, mapping src's variable
// gates through var_map (dst indices) and sharing dst's One gate (created on
// demand). Copied ids get `prefix` prepended. Returns the dst indices of
// src's outputs; gate_map (if given) receives the full per-gate mapping.
std::vector<int> append_circuit_copy(Circuit& dst, const Circuit& src,
                                     const std::vector<int>& var_map,
                                     const std::string& prefix,
                                     std::vector<int>* gate_map = nullptr);

// Little-endian index of an assignment (x_1 is bit 0) and back.
std::size_t assignment_index(const Assignment& a);
Assignment assignment_from_index(std::size_t idx, int n);
std::string assignment_to_string(const Assignment& a);
Assignment assignment_from_string(const std::string& s);

}  // namespace ppac
