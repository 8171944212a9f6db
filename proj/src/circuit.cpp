#include "minc/circuit.hpp"

#include <charconv>
#include <sstream>

#include "minc/error.hpp"

namespace minc {

void validate(const Circuit& c) {
  if (c.l == 0) {
    throw PreconditionError("circuit needs l >= 1");
  }
  if (c.gates.size() < c.inputs()) {
    throw PreconditionError("circuit has fewer than 3l gates");
  }
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const bool is_input = i < c.inputs();
    if (is_input != (g.kind == GateKind::input)) {
      throw PreconditionError("gate g" + std::to_string(i + 1) +
                              (is_input ? " must be an input" : " must not be an input"));
    }
    if (!is_input && (g.a >= i || (g.kind != GateKind::not_gate && g.b >= i))) {
      throw PreconditionError("gate g" + std::to_string(i + 1) + " uses a later gate");
    }
  }
}

namespace {

std::size_t gate_ref(const std::string& tok, std::size_t line_no, std::size_t offset) {
  std::size_t v = 0;
  if (tok.size() < 2 || tok[0] != 'g' ||
      std::from_chars(tok.data() + 1, tok.data() + tok.size(), v).ptr != tok.data() + tok.size() ||
      v == 0) {
    throw ParseError("line " + std::to_string(line_no) + ": expected a gate name, found '" +
                         tok + "'",
                     offset);
  }
  return v;
}

} // namespace

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0, offset = 0, inputs = 0;
  std::vector<Gate> gates;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t here = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) {
      toks.push_back(t);
    }
    if (toks.empty()) {
      continue;
    }
    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(line_no) + ": " + msg, here);
    };
    if (toks.size() < 3 || toks[1] != "=") {
      fail("expected 'g<i> = ...'");
    }
    if (gate_ref(toks[0], line_no, here) != gates.size() + 1) {
      fail("gates must be numbered consecutively from g1");
    }
    Gate g;
    const std::string& op = toks[2];
    if (op == "IN" && toks.size() == 3) {
      if (inputs != gates.size()) {
        fail("input gates must come first");
      }
      ++inputs;
    } else if (op == "NOT" && toks.size() == 4) {
      g.kind = GateKind::not_gate;
      g.a = gate_ref(toks[3], line_no, here) - 1;
    } else if ((op == "AND" || op == "OR") && toks.size() == 5) {
      g.kind = op == "AND" ? GateKind::and_gate : GateKind::or_gate;
      g.a = gate_ref(toks[3], line_no, here) - 1;
      g.b = gate_ref(toks[4], line_no, here) - 1;
    } else {
      fail("unknown gate definition");
    }
    if (g.kind != GateKind::input && (g.a >= gates.size() || g.b >= gates.size())) {
      fail("operands must be earlier gates");
    }
    gates.push_back(g);
  }
  if (inputs == 0 || inputs % 3 != 0) {
    throw ParseError("the number of input gates must be a positive multiple of 3", 0);
  }
  Circuit c{inputs / 3, std::move(gates)};
  validate(c);
  return c;
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    out << 'g' << i + 1 << " = ";
    switch (g.kind) {
    case GateKind::input:
      out << "IN";
      break;
    case GateKind::not_gate:
      out << "NOT g" << g.a + 1;
      break;
    case GateKind::and_gate:
      out << "AND g" << g.a + 1 << " g" << g.b + 1;
      break;
    case GateKind::or_gate:
      out << "OR g" << g.a + 1 << " g" << g.b + 1;
      break;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<bool> circuit_values(const Circuit& c, const std::vector<bool>& bits) {
  if (bits.size() != c.inputs()) {
    throw PreconditionError("expected " + std::to_string(c.inputs()) + " input bits, got " +
                            std::to_string(bits.size()));
  }
  std::vector<bool> v(c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
    case GateKind::input:
      v[i] = bits[i];
      break;
    case GateKind::not_gate:
      v[i] = !v[g.a];
      break;
    case GateKind::and_gate:
      v[i] = v[g.a] && v[g.b];
      break;
    case GateKind::or_gate:
      v[i] = v[g.a] || v[g.b];
      break;
    }
  }
  return v;
}

bool circuit_eval(const Circuit& c, const std::vector<bool>& bits) {
  return circuit_values(c, bits).back();
}

std::uint32_t sharp(const std::vector<bool>& bits) {
  std::uint32_t v = 0;
  for (bool b : bits) {
    v = (v << 1) | (b ? 1u : 0u);
  }
  return v + 1;
}

std::vector<bool> unsharp(std::uint32_t i, std::size_t l) {
  std::vector<bool> bits(l);
  const std::uint32_t v = i - 1;
  for (std::size_t t = 0; t < l; ++t) {
    bits[t] = (v >> (l - 1 - t)) & 1;
  }
  return bits;
}

PerInstance expand_succinct(const Circuit& c) {
  validate(c);
  const std::size_t width = c.inputs();
  if (width > 30) {
    throw PreconditionError("circuit too wide to expand");
  }
  const std::uint64_t total = std::uint64_t{1} << width;
  const std::uint64_t block_mask = (std::uint64_t{1} << c.l) - 1;
  PerInstance inst;
  inst.n = static_cast<std::uint32_t>(std::uint64_t{1} << c.l);
  std::vector<std::uint64_t> v(c.gates.size());
  // 64 input tuples per pass, lane e holding tuple base + e.
  for (std::uint64_t base = 0; base < total; base += 64) {
    const std::uint64_t lanes = std::min<std::uint64_t>(64, total - base);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      const Gate& g = c.gates[i];
      switch (g.kind) {
      case GateKind::input: {
        const std::size_t bit = width - 1 - i;
        std::uint64_t w = 0;
        for (std::uint64_t e = 0; e < lanes; ++e) {
          w |= (((base + e) >> bit) & 1) << e;
        }
        v[i] = w;
        break;
      }
      case GateKind::not_gate:
        v[i] = ~v[g.a];
        break;
      case GateKind::and_gate:
        v[i] = v[g.a] & v[g.b];
        break;
      case GateKind::or_gate:
        v[i] = v[g.a] | v[g.b];
        break;
      }
    }
    std::uint64_t acc = v.back();
    if (lanes < 64) {
      acc &= (std::uint64_t{1} << lanes) - 1;
    }
    for (; acc; acc &= acc - 1) {
      const std::uint64_t x = base + static_cast<std::uint64_t>(__builtin_ctzll(acc));
      inst.add(static_cast<std::uint32_t>((x >> (2 * c.l)) + 1),
               static_cast<std::uint32_t>(((x >> c.l) & block_mask) + 1),
               static_cast<std::uint32_t>((x & block_mask) + 1));
    }
  }
  inst.normalize();
  return inst;
}

std::string gate_prop(std::size_t i) { return "p" + std::to_string(i); }

FormulaPtr build_phi_C(const Circuit& c) {
  validate(c);
  const std::size_t m = c.gates.size();
  std::vector<FormulaPtr> parts;
  for (std::size_t i = c.inputs(); i < m; ++i) {
    const Gate& g = c.gates[i];
    const auto pj = prop(gate_prop(g.a + 1));
    FormulaPtr rhs;
    switch (g.kind) {
    case GateKind::not_gate:
      rhs = neg(gate_prop(g.a + 1));
      break;
    case GateKind::and_gate:
      rhs = conj(pj, prop(gate_prop(g.b + 1)));
      break;
    case GateKind::or_gate:
      rhs = disj(pj, prop(gate_prop(g.b + 1)));
      break;
    case GateKind::input:
      break;
    }
    parts.push_back(iff(prop(gate_prop(i + 1)), rhs));
  }
  parts.push_back(prop(gate_prop(m)));
  const FormulaPtr psi = conj_all(parts);

  std::vector<std::string> ps, qs, rs, out;
  for (std::size_t t = 1; t <= c.l; ++t) {
    ps.push_back(gate_prop(t));
    qs.push_back(gate_prop(c.l + t));
    rs.push_back(gate_prop(2 * c.l + t));
    out.push_back(gate_prop(m));
  }
  return conj(conj(conj(psi, inclusion(qs, ps)), inclusion(rs, ps)), inclusion(out, ps));
}

TeamWitness build_phi_C_witness(const Circuit& c, const std::set<std::uint32_t>& p) {
  validate(c);
  const PerInstance inst = expand_succinct(c);
  if (!is_persistent(inst, p)) {
    throw PreconditionError("the given set is not persistent for the circuit");
  }
  if (!p.count(inst.n)) {
    throw PreconditionError("the given set does not contain 2^l");
  }
  std::vector<std::vector<bool>> rows;
  std::vector<std::string> names;
  for (const auto& t : inst.triples) {
    if (!p.count(t[0]) || !p.count(t[1]) || !p.count(t[2])) {
      continue;
    }
    std::vector<bool> bits;
    std::string name = "w";
    for (std::size_t b = 0; b < 3; ++b) {
      for (bool x : unsharp(t[b], c.l)) {
        bits.push_back(x);
        name += x ? '1' : '0';
      }
    }
    rows.push_back(circuit_values(c, bits));
    names.push_back(name);
  }
  KripkeModel m(names);
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    Team t(rows.size());
    for (std::size_t w = 0; w < rows.size(); ++w) {
      if (rows[w][g]) {
        t.insert(w);
      }
    }
    m.set_valuation(gate_prop(g + 1), t);
  }
  Team full = m.full_team();
  return {std::move(m), std::move(full)};
}

} // namespace minc
