#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "minc/formula.hpp"
#include "minc/kripke.hpp"
#include "minc/per.hpp"

namespace minc {

enum class GateKind { input, not_gate, and_gate, or_gate };

struct Gate {
  GateKind kind = GateKind::input;
  std::size_t a = 0; // 0-based operands
  std::size_t b = 0;
};

/// Gates in topological order; the first 3l are the inputs, the last one is
/// the output. Operands refer to earlier gates.
struct Circuit {
  std::size_t l = 1;
  std::vector<Gate> gates;

  std::size_t inputs() const noexcept { return 3 * l; }
  std::size_t size() const noexcept { return gates.size(); }
};

/// Throws PreconditionError on malformed circuits.
void validate(const Circuit& c);

/// One gate per line: `g<i> = IN | NOT g<j> | AND g<j> g<k> | OR g<j> g<k>`,
/// 1-based; blank lines and `#` comments are ignored.
Circuit parse_circuit(std::string_view text);
std::string print_circuit(const Circuit& c);

/// Value of every gate; `bits` has length 3l.
std::vector<bool> circuit_values(const Circuit& c, const std::vector<bool>& bits);
bool circuit_eval(const Circuit& c, const std::vector<bool>& bits);

/// 1 plus the number written by `bits` (first bit most significant), so
/// sharp(0..0) = 1 and sharp(1..1) = 2^l.
std::uint32_t sharp(const std::vector<bool>& bits);
std::vector<bool> unsharp(std::uint32_t i, std::size_t l);

/// The explicit instance with A = {1..2^l}.
PerInstance expand_succinct(const Circuit& c);

/// Propositions p1..pm, one per gate.
std::string gate_prop(std::size_t i);
FormulaPtr build_phi_C(const Circuit& c);

/// R empty; one world per accepting input whose three blocks lie in P,
/// valued by the gate values; the team is the whole domain. Throws
/// PreconditionError unless P is persistent and contains 2^l.
TeamWitness build_phi_C_witness(const Circuit& c, const std::set<std::uint32_t>& p);

} // namespace minc
