#include "minc/atm.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <tuple>

#include "minc/error.hpp"

namespace minc {

std::size_t Atm::space_for(std::size_t n) const {
  auto it = space.find(n);
  if (it == space.end()) {
    throw PreconditionError("no space bound for inputs of length " + std::to_string(n));
  }
  return it->second;
}

std::vector<const Transition*> Atm::delta(bool read, std::size_t state) const {
  std::vector<const Transition*> out;
  for (const auto& t : transitions) {
    if (t.state == state && t.read == read) {
      out.push_back(&t);
    }
  }
  return out;
}

void validate(const Atm& m) {
  if (m.states.empty() || m.types.size() != m.states.size()) {
    throw SchemaError("states", "expected one type per state");
  }
  if (m.initial >= m.states.size()) {
    throw SchemaError("initial", "unknown state");
  }
  for (std::size_t t = 0; t < m.transitions.size(); ++t) {
    const auto& tr = m.transitions[t];
    if (tr.state >= m.states.size() || tr.next >= m.states.size()) {
      throw SchemaError("transitions[" + std::to_string(t) + "]", "unknown state");
    }
  }
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    const bool halting = m.types[s] == StateType::accept || m.types[s] == StateType::reject;
    for (bool a : {false, true}) {
      const std::size_t count = m.delta(a, s).size();
      if (halting ? count != 0 : count != 2) {
        throw SchemaError("transitions", "state " + m.states[s] + " reading " +
                                             (a ? "1" : "0") + " has " + std::to_string(count) +
                                             (halting ? " transitions, expected none"
                                                      : " transitions, expected 2"));
      }
    }
  }
}

namespace {

using nlohmann::json;

const char* type_name(StateType t) {
  switch (t) {
  case StateType::forall:
    return "forall";
  case StateType::exists:
    return "exists";
  case StateType::accept:
    return "acc";
  case StateType::reject:
    return "rej";
  }
  return "?";
}

const char* move_name(Move m) {
  switch (m) {
  case Move::left:
    return "left";
  case Move::right:
    return "right";
  case Move::stay:
    return "stay";
  }
  return "?";
}

bool read_bit(const json& v, const std::string& path) {
  if (v.is_boolean()) {
    return v.get<bool>();
  }
  if (v.is_number_unsigned() && v.get<unsigned>() <= 1) {
    return v.get<unsigned>() == 1;
  }
  throw SchemaError(path, "expected 0 or 1");
}

} // namespace

Atm load_atm(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object()) {
    throw SchemaError("$", "expected an object");
  }
  Atm m;
  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty()) {
    throw SchemaError("states", "expected a nonempty array of names");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < doc["states"].size(); ++i) {
    const auto& s = doc["states"][i];
    if (!s.is_string() || !index.emplace(s.get<std::string>(), i).second) {
      throw SchemaError("states[" + std::to_string(i) + "]", "expected a fresh name");
    }
    m.states.push_back(s.get<std::string>());
  }
  auto state_ref = [&](const json& v, const std::string& path) {
    if (!v.is_string() || !index.count(v.get<std::string>())) {
      throw SchemaError(path, "unknown state");
    }
    return index.at(v.get<std::string>());
  };
  if (!doc.contains("types") || !doc["types"].is_object()) {
    throw SchemaError("types", "expected an object");
  }
  m.types.resize(m.states.size());
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    const std::string path = "types." + m.states[i];
    if (!doc["types"].contains(m.states[i])) {
      throw SchemaError(path, "missing");
    }
    const auto& v = doc["types"][m.states[i]];
    const std::string t = v.is_string() ? v.get<std::string>() : "";
    if (t == "forall") {
      m.types[i] = StateType::forall;
    } else if (t == "exists") {
      m.types[i] = StateType::exists;
    } else if (t == "acc") {
      m.types[i] = StateType::accept;
    } else if (t == "rej") {
      m.types[i] = StateType::reject;
    } else {
      throw SchemaError(path, "expected forall, exists, acc or rej");
    }
  }
  if (doc["types"].size() != m.states.size()) {
    throw SchemaError("types", "types for undeclared states");
  }
  if (!doc.contains("initial")) {
    throw SchemaError("initial", "missing");
  }
  m.initial = state_ref(doc["initial"], "initial");
  if (doc.contains("transitions")) {
    const auto& ts = doc["transitions"];
    if (!ts.is_array()) {
      throw SchemaError("transitions", "expected an array");
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string path = "transitions[" + std::to_string(i) + "]";
      const auto& t = ts[i];
      if (!t.is_object()) {
        throw SchemaError(path, "expected an object");
      }
      for (const char* key : {"state", "read", "write", "next", "move"}) {
        if (!t.contains(key)) {
          throw SchemaError(path + "." + key, "missing");
        }
      }
      Transition tr;
      tr.state = state_ref(t["state"], path + ".state");
      tr.read = read_bit(t["read"], path + ".read");
      tr.write = read_bit(t["write"], path + ".write");
      tr.next = state_ref(t["next"], path + ".next");
      const std::string mv = t["move"].is_string() ? t["move"].get<std::string>() : "";
      if (mv == "left") {
        tr.move = Move::left;
      } else if (mv == "right") {
        tr.move = Move::right;
      } else if (mv == "stay") {
        tr.move = Move::stay;
      } else {
        throw SchemaError(path + ".move", "expected left, right or stay");
      }
      m.transitions.push_back(tr);
    }
  }
  if (!doc.contains("space") || !doc["space"].is_object()) {
    throw SchemaError("space", "expected an object mapping input length to cells");
  }
  for (auto it = doc["space"].begin(); it != doc["space"].end(); ++it) {
    const std::string path = "space." + it.key();
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(it.key(), &used);
      if (used != it.key().size()) {
        throw std::invalid_argument("trailing");
      }
    } catch (const std::exception&) {
      throw SchemaError(path, "expected an input length");
    }
    if (!it.value().is_number_unsigned() || it.value().get<std::size_t>() == 0) {
      throw SchemaError(path, "expected a positive cell count");
    }
    m.space[n] = it.value().get<std::size_t>();
  }
  validate(m);
  return m;
}

std::string save_atm(const Atm& m, int indent) {
  json doc;
  doc["states"] = m.states;
  doc["types"] = json::object();
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    doc["types"][m.states[i]] = type_name(m.types[i]);
  }
  doc["initial"] = m.states.at(m.initial);
  doc["transitions"] = json::array();
  for (const auto& t : m.transitions) {
    doc["transitions"].push_back({{"state", m.states[t.state]},
                                  {"read", t.read ? 1 : 0},
                                  {"write", t.write ? 1 : 0},
                                  {"next", m.states[t.next]},
                                  {"move", move_name(t.move)}});
  }
  doc["space"] = json::object();
  for (const auto& [n, cells] : m.space) {
    doc["space"][std::to_string(n)] = cells;
  }
  return doc.dump(indent);
}

Configuration initial_configuration(const Atm& m, const std::vector<bool>& w) {
  const std::size_t cells = m.space_for(w.size());
  if (w.size() > cells) {
    throw PreconditionError("input longer than the space bound");
  }
  Configuration c;
  c.tape.assign(cells, false);
  std::copy(w.begin(), w.end(), c.tape.begin());
  c.state = m.initial;
  return c;
}

std::vector<Configuration> successors(const Atm& m, const Configuration& c) {
  std::vector<Configuration> out;
  for (const Transition* t : m.delta(c.tape.at(c.head), c.state)) {
    Configuration d = c;
    d.tape[c.head] = t->write;
    d.state = t->next;
    if (t->move == Move::left) {
      if (c.head == 0) {
        throw PreconditionError("machine moves left of cell 1");
      }
      --d.head;
    } else if (t->move == Move::right) {
      if (c.head + 1 == c.tape.size()) {
        throw PreconditionError("machine exceeds its space bound");
      }
      ++d.head;
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<bool> encode_configuration(const Atm& m, const Configuration& c) {
  std::vector<bool> bits = c.tape;
  for (std::size_t i = 0; i < c.tape.size(); ++i) {
    bits.push_back(i == c.head);
  }
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    bits.push_back(s == c.state);
  }
  return bits;
}

bool atm_accepts(const Atm& m, const std::vector<bool>& w) {
  validate(m);
  enum Mark { on_stack, accepted, rejected };
  std::map<Configuration, Mark> memo;
  std::function<bool(const Configuration&)> visit = [&](const Configuration& c) {
    if (auto it = memo.find(c); it != memo.end()) {
      if (it->second == on_stack) {
        throw PreconditionError("configuration graph has a cycle");
      }
      return it->second == accepted;
    }
    memo[c] = on_stack;
    bool result = false;
    switch (m.types[c.state]) {
    case StateType::accept:
      result = true;
      break;
    case StateType::reject:
      result = false;
      break;
    case StateType::forall:
    case StateType::exists: {
      // No short cut, so that every reachable cycle is reported.
      const bool universal = m.types[c.state] == StateType::forall;
      result = universal;
      for (const auto& d : successors(m, c)) {
        const bool r = visit(d);
        result = universal ? result && r : result || r;
      }
      break;
    }
    }
    memo[c] = result ? accepted : rejected;
    return result;
  };
  return visit(initial_configuration(m, w));
}

namespace {

/// Hash-consed gate list over a fixed number of inputs.
class Builder {
public:
  explicit Builder(std::size_t inputs) : gates_(inputs) {}

  std::size_t not_of(std::size_t a) { return make(GateKind::not_gate, a, 0); }
  std::size_t and_of(std::size_t a, std::size_t b) {
    return a == b ? a : make(GateKind::and_gate, std::min(a, b), std::max(a, b));
  }
  std::size_t or_of(std::size_t a, std::size_t b) {
    return a == b ? a : make(GateKind::or_gate, std::min(a, b), std::max(a, b));
  }
  std::size_t truth() { return or_of(0, not_of(0)); }
  std::size_t falsity() { return and_of(0, not_of(0)); }
  std::size_t all(const std::vector<std::size_t>& xs) { return fold(xs, true); }
  std::size_t any(const std::vector<std::size_t>& xs) { return fold(xs, false); }
  std::size_t eq(std::size_t a, std::size_t b) {
    return or_of(and_of(a, b), and_of(not_of(a), not_of(b)));
  }
  std::size_t literal(std::size_t a, bool value) { return value ? a : not_of(a); }
  std::size_t exactly_one(const std::vector<std::size_t>& xs) {
    std::vector<std::size_t> parts{any(xs)};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        parts.push_back(not_of(and_of(xs[i], xs[j])));
      }
    }
    return all(parts);
  }

  Circuit finish(std::size_t l, std::size_t out) {
    if (out + 1 != gates_.size() || out < 3 * l) {
      // The output has to be the last gate.
      gates_.push_back({GateKind::and_gate, out, out});
    }
    return Circuit{l, std::move(gates_)};
  }

private:
  std::size_t make(GateKind k, std::size_t a, std::size_t b) {
    auto [it, fresh] = cache_.try_emplace(std::make_tuple(k, a, b), gates_.size());
    if (fresh) {
      gates_.push_back({k, a, b});
    }
    return it->second;
  }
  std::size_t fold(const std::vector<std::size_t>& xs, bool conj) {
    if (xs.empty()) {
      return conj ? truth() : falsity();
    }
    std::size_t acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
      acc = conj ? and_of(acc, xs[i]) : or_of(acc, xs[i]);
    }
    return acc;
  }

  std::vector<Gate> gates_;
  std::map<std::tuple<GateKind, std::size_t, std::size_t>, std::size_t> cache_;
};

} // namespace

Circuit build_circuit_from_atm(const Atm& m, const std::vector<bool>& w) {
  validate(m);
  const Configuration init = initial_configuration(m, w);
  const std::size_t cells = init.tape.size();
  const std::size_t k = m.states.size();
  const std::size_t l = 2 * cells + k;
  Builder b(3 * l);

  auto tape = [&](std::size_t blk, std::size_t i) { return blk * l + i; };
  auto head = [&](std::size_t blk, std::size_t i) { return blk * l + cells + i; };
  auto state = [&](std::size_t blk, std::size_t s) { return blk * l + 2 * cells + s; };

  auto valid = [&](std::size_t blk) {
    std::vector<std::size_t> hs, ss;
    for (std::size_t i = 0; i < cells; ++i) {
      hs.push_back(head(blk, i));
    }
    for (std::size_t s = 0; s < k; ++s) {
      ss.push_back(state(blk, s));
    }
    return b.and_of(b.exactly_one(hs), b.exactly_one(ss));
  };
  auto same = [&](std::size_t x, std::size_t y) {
    std::vector<std::size_t> parts;
    for (std::size_t i = 0; i < l; ++i) {
      parts.push_back(b.eq(x * l + i, y * l + i));
    }
    return b.all(parts);
  };
  auto of_type = [&](std::size_t blk, StateType t) {
    std::vector<std::size_t> parts;
    for (std::size_t s = 0; s < k; ++s) {
      if (m.types[s] == t) {
        parts.push_back(state(blk, s));
      }
    }
    return b.any(parts);
  };
  // x and y encode configurations with x |-> y.
  auto step = [&](std::size_t x, std::size_t y) {
    std::vector<std::size_t> options;
    for (std::size_t h = 0; h < cells; ++h) {
      for (const auto& t : m.transitions) {
        std::size_t h2 = h;
        if (t.move == Move::left) {
          if (h == 0) {
            continue;
          }
          --h2;
        } else if (t.move == Move::right) {
          if (h + 1 == cells) {
            continue;
          }
          ++h2;
        }
        std::vector<std::size_t> parts{head(x, h),
                                       state(x, t.state),
                                       b.literal(tape(x, h), t.read),
                                       b.literal(tape(y, h), t.write),
                                       head(y, h2),
                                       state(y, t.next)};
        for (std::size_t c = 0; c < cells; ++c) {
          if (c != h) {
            parts.push_back(b.eq(tape(x, c), tape(y, c)));
          }
        }
        options.push_back(b.all(parts));
      }
    }
    return b.all({valid(x), valid(y), b.any(options)});
  };

  const std::size_t cond2 =
      b.all({valid(0), of_type(0, StateType::accept), same(0, 1), same(0, 2)});
  const std::size_t cond3 = b.all(
      {of_type(0, StateType::forall), step(0, 1), step(0, 2), b.not_of(same(1, 2))});
  const std::size_t cond4 = b.all({of_type(0, StateType::exists), step(0, 1), same(1, 2)});
  std::vector<std::size_t> c5;
  const std::vector<bool> init_bits = encode_configuration(m, init);
  for (std::size_t i = 0; i < l; ++i) {
    c5.push_back(i);
    c5.push_back(b.literal(l + i, init_bits[i]));
  }
  c5.push_back(same(1, 2));
  const std::size_t cond5 = b.all(c5);
  return b.finish(l, b.any({cond2, cond3, cond4, cond5}));
}

std::vector<bool> parse_word(std::string_view w) {
  std::vector<bool> bits;
  for (char ch : w) {
    if (ch != '0' && ch != '1') {
      throw ParseError("input words are strings over 0 and 1", bits.size());
    }
    bits.push_back(ch == '1');
  }
  return bits;
}

} // namespace minc
