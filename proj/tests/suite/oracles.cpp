#include "oracles.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace minc::oracle {

bool kripke_truth(const KripkeModel& m, std::size_t w, const Formula& f) {
  switch (f.kind()) {
  case NodeKind::prop:
    return m.has_proposition(f.name()) && m.valuation(f.name()).contains(w);
  case NodeKind::neg_prop:
    return !(m.has_proposition(f.name()) && m.valuation(f.name()).contains(w));
  case NodeKind::conj:
    return kripke_truth(m, w, *f.left()) && kripke_truth(m, w, *f.right());
  case NodeKind::disj:
    return kripke_truth(m, w, *f.left()) || kripke_truth(m, w, *f.right());
  case NodeKind::box:
  case NodeKind::diamond: {
    const bool is_box = f.kind() == NodeKind::box;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m.has_edge(kAccessibility, w, v) && kripke_truth(m, v, *f.left()) != is_box) {
        return !is_box;
      }
    }
    return is_box;
  }
  default:
    throw std::logic_error("kripke_truth: not an inclusion-free modal formula");
  }
}

bool propositional_truth(const Formula& f, const std::map<std::string, bool>& a) {
  switch (f.kind()) {
  case NodeKind::prop:
    return a.at(f.name());
  case NodeKind::neg_prop:
    return !a.at(f.name());
  case NodeKind::conj:
    return propositional_truth(*f.left(), a) && propositional_truth(*f.right(), a);
  case NodeKind::disj:
    return propositional_truth(*f.left(), a) || propositional_truth(*f.right(), a);
  default:
    throw std::logic_error("propositional_truth: not a propositional formula");
  }
}

std::set<std::uint32_t> persistent_union(const PerInstance& inst) {
  if (inst.n > 20) {
    throw std::logic_error("persistent_union: n too large");
  }
  std::uint64_t all = 0;
  for (std::uint64_t p = 1; p < (std::uint64_t{1} << inst.n); ++p) {
    auto in = [&](std::uint32_t i) { return (p >> (i - 1)) & 1; };
    bool ok = true;
    for (std::uint32_t i = 1; i <= inst.n && ok; ++i) {
      if (!in(i)) {
        continue;
      }
      ok = std::any_of(inst.triples.begin(), inst.triples.end(), [&](const Triple& t) {
        return t[0] == i && in(t[1]) && in(t[2]);
      });
    }
    if (ok) {
      all |= p;
    }
  }
  std::set<std::uint32_t> out;
  for (std::uint32_t i = 1; i <= inst.n; ++i) {
    if ((all >> (i - 1)) & 1) {
      out.insert(i);
    }
  }
  return out;
}

namespace {

struct Config {
  std::vector<bool> tape;
  std::size_t head;
  std::size_t state;
  bool operator==(const Config&) const = default;
};

std::optional<Config> decode(const std::vector<bool>& bits, std::size_t cells, std::size_t k) {
  Config c{{bits.begin(), bits.begin() + static_cast<long>(cells)}, 0, 0};
  std::size_t heads = 0, states = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    if (bits[cells + i]) {
      ++heads;
      c.head = i;
    }
  }
  for (std::size_t s = 0; s < k; ++s) {
    if (bits[2 * cells + s]) {
      ++states;
      c.state = s;
    }
  }
  if (heads != 1 || states != 1) {
    return std::nullopt;
  }
  return c;
}

std::vector<Config> next_configs(const Atm& m, const Config& c) {
  std::vector<Config> out;
  for (const auto& t : m.transitions) {
    if (t.state != c.state || t.read != c.tape[c.head]) {
      continue;
    }
    long h = static_cast<long>(c.head) +
             (t.move == Move::left ? -1 : t.move == Move::right ? 1 : 0);
    if (h < 0 || h >= static_cast<long>(c.tape.size())) {
      continue;
    }
    Config d = c;
    d.tape[c.head] = t.write;
    d.head = static_cast<std::size_t>(h);
    d.state = t.next;
    out.push_back(d);
  }
  return out;
}

bool contains(const std::vector<Config>& cs, const Config& c) {
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

} // namespace

bool conditions_accept(const Atm& m, const std::vector<bool>& w, std::uint64_t x) {
  const std::size_t cells = m.space.at(w.size());
  const std::size_t k = m.states.size();
  const std::size_t l = 2 * cells + k;
  std::vector<std::vector<bool>> blk(3, std::vector<bool>(l));
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < l; ++i) {
      blk[b][i] = (x >> (3 * l - 1 - (b * l + i))) & 1;
    }
  }
  const auto a = decode(blk[0], cells, k);
  const auto b = decode(blk[1], cells, k);
  const auto c = decode(blk[2], cells, k);

  if (a && m.types[a->state] == StateType::accept && blk[0] == blk[1] && blk[0] == blk[2]) {
    return true;
  }
  if (a && b && c && m.types[a->state] == StateType::forall && !(*b == *c)) {
    const auto succ = next_configs(m, *a);
    if (contains(succ, *b) && contains(succ, *c)) {
      return true;
    }
  }
  if (a && b && m.types[a->state] == StateType::exists && blk[1] == blk[2] &&
      contains(next_configs(m, *a), *b)) {
    return true;
  }
  if (std::all_of(blk[0].begin(), blk[0].end(), [](bool v) { return v; }) &&
      blk[1] == blk[2]) {
    std::vector<bool> init(l, false);
    std::copy(w.begin(), w.end(), init.begin());
    init[cells] = true;
    init[2 * cells + m.initial] = true;
    if (blk[1] == init) {
      return true;
    }
  }
  return false;
}

bool skolem_truth(const DqbfInstance& d) {
  struct Ex {
    std::size_t pos;
    std::vector<std::string> args;
    std::size_t offset;
  };
  std::vector<std::string> universals;
  std::vector<Ex> exs;
  std::size_t bits = 0;
  for (std::size_t i = 0; i < d.prefix.size(); ++i) {
    const auto& q = d.prefix[i];
    if (q.universal) {
      universals.push_back(q.var);
      continue;
    }
    auto it = d.deps.find(q.var);
    Ex e{i, it != d.deps.end() ? it->second : universals, bits};
    bits += std::size_t{1} << e.args.size();
    exs.push_back(e);
  }
  if (bits > 24 || universals.size() > 12) {
    throw std::logic_error("skolem_truth: instance too large");
  }
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    bool all = true;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << universals.size()) && all; ++u) {
      std::map<std::string, bool> a;
      std::size_t ui = 0, ei = 0;
      for (const auto& q : d.prefix) {
        if (q.universal) {
          a[q.var] = (u >> ui++) & 1;
        } else {
          const Ex& e = exs[ei++];
          std::size_t row = 0;
          for (const auto& p : e.args) {
            row = 2 * row + (a.at(p) ? 1 : 0);
          }
          a[q.var] = (code >> (e.offset + row)) & 1;
        }
      }
      all = propositional_truth(*d.matrix, a);
    }
    if (all) {
      return true;
    }
  }
  return false;
}

} // namespace minc::oracle
