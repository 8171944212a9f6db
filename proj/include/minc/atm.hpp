#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "minc/circuit.hpp"

namespace minc {

enum class StateType { forall, exists, accept, reject };
enum class Move { left, right, stay };

struct Transition {
  std::size_t state = 0;
  bool read = false;
  bool write = false;
  std::size_t next = 0;
  Move move = Move::stay;
};

/// Alternating machine over {0,1}. States are listed in a fixed order;
/// the space bound is a table from input length to tape cells.
struct Atm {
  std::vector<std::string> states;
  std::vector<StateType> types;
  std::size_t initial = 0;
  std::vector<Transition> transitions;
  std::map<std::size_t, std::size_t> space;

  std::size_t space_for(std::size_t n) const;
  std::vector<const Transition*> delta(bool read, std::size_t state) const;
};

/// Two transitions per (symbol, state) for universal and existential
/// states, none for halting states. Throws SchemaError otherwise.
void validate(const Atm& m);

/// ```
/// {"states": ["s0", "acc"], "types": {"s0": "exists", "acc": "acc"},
///  "initial": "s0",
///  "transitions": [{"state": "s0", "read": 0, "write": 1, "next": "acc",
///                   "move": "right"}, ...],
///  "space": {"2": 2}}
/// ```
/// Types are forall, exists, acc, rej; moves are left, right, stay.
Atm load_atm(std::string_view json_text);
std::string save_atm(const Atm& m, int indent = -1);

struct Configuration {
  std::vector<bool> tape;
  std::size_t head = 0; // 0-based cell
  std::size_t state = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const Atm& m, const std::vector<bool>& w);
/// Successors in transition order. Throws PreconditionError if a move
/// leaves the tape.
std::vector<Configuration> successors(const Atm& m, const Configuration& c);

/// Tape bits, one-hot head, one-hot state: l = 2m + k bits.
std::vector<bool> encode_configuration(const Atm& m, const Configuration& c);

/// Membership of the initial configuration in the accepting set. Throws
/// PreconditionError on a cycle, on leaving the tape, or if w is longer
/// than the space bound.
bool atm_accepts(const Atm& m, const std::vector<bool>& w);

/// Circuit with 3l inputs accepting exactly the tuples that pair an
/// accepting configuration with itself, a universal configuration with its
/// two distinct successors, an existential configuration with a successor
/// (twice), and 1..1 with the initial configuration (twice).
Circuit build_circuit_from_atm(const Atm& m, const std::vector<bool>& w);

/// "0110" -> bits.
std::vector<bool> parse_word(std::string_view w);

} // namespace minc
