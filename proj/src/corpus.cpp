#include "minc/corpus.hpp"

#include <set>

#include "minc/error.hpp"

namespace minc {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

FormulaPtr gen(std::mt19937_64& rng, const FormulaGenOptions& o, std::size_t depth,
               std::size_t& inclusions_left) {
  const auto& ps = o.props;
  const bool leaf = depth == 0 || pick(rng, 3) == 0;
  if (leaf) {
    if (inclusions_left > 0 && pick(rng, 3) == 0) {
      --inclusions_left;
      const std::size_t k = 1 + pick(rng, o.max_arity);
      std::vector<std::string> lhs, rhs;
      for (std::size_t i = 0; i < k; ++i) {
        lhs.push_back(ps[pick(rng, ps.size())]);
        rhs.push_back(ps[pick(rng, ps.size())]);
      }
      return inclusion(std::move(lhs), std::move(rhs));
    }
    const std::string& p = ps[pick(rng, ps.size())];
    return pick(rng, 2) ? prop(p) : neg(p);
  }
  const std::size_t kinds = o.modalities ? 4 : 2;
  switch (pick(rng, kinds)) {
  case 0: {
    auto l = gen(rng, o, depth - 1, inclusions_left);
    return conj(l, gen(rng, o, depth - 1, inclusions_left));
  }
  case 1: {
    auto l = gen(rng, o, depth - 1, inclusions_left);
    return disj(l, gen(rng, o, depth - 1, inclusions_left));
  }
  case 2:
    return box(gen(rng, o, depth - 1, inclusions_left));
  default:
    return diamond(gen(rng, o, depth - 1, inclusions_left));
  }
}

} // namespace

FormulaPtr random_formula(std::mt19937_64& rng, const FormulaGenOptions& opts) {
  if (opts.props.empty()) {
    throw PreconditionError("formula generator needs at least one proposition");
  }
  std::size_t left = opts.max_inclusions;
  return gen(rng, opts, opts.max_depth, left);
}

std::vector<FormulaPtr> formula_corpus(const FormulaGenOptions& opts, std::size_t count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::string> seen;
  std::vector<FormulaPtr> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count + 10000) {
      throw PreconditionError("formula space too small for the requested corpus");
    }
    FormulaGenOptions o = opts;
    o.max_depth = std::min(opts.max_depth, attempts % (opts.max_depth + 1));
    auto f = random_formula(rng, o);
    if (seen.insert(print_minc(f)).second) {
      out.push_back(std::move(f));
    }
  }
  return out;
}

KripkeModel random_model(std::mt19937_64& rng, std::size_t n,
                         const std::vector<std::string>& props, double edge_p) {
  KripkeModel m(n);
  std::bernoulli_distribution edge(edge_p);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (edge(rng)) {
        m.add_edge(kAccessibility, i, j);
      }
    }
  }
  for (const auto& p : props) {
    Team t(n);
    for (std::size_t w = 0; w < n; ++w) {
      if (coin(rng)) {
        t.insert(w);
      }
    }
    m.set_valuation(p, t);
  }
  return m;
}

} // namespace minc

namespace minc {

PerInstance random_per(std::mt19937_64& rng, std::uint32_t n, double triple_p) {
  std::bernoulli_distribution keep(triple_p);
  PerInstance inst;
  inst.n = n;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = 1; j <= n; ++j) {
      for (std::uint32_t k = 1; k <= n; ++k) {
        if (keep(rng)) {
          inst.add(i, j, k);
        }
      }
    }
  }
  inst.normalize();
  return inst;
}

std::vector<Circuit> circuit_corpus_l1(std::size_t max_internal) {
  std::vector<Circuit> out;
  Circuit base{1, std::vector<Gate>(3)};
  std::vector<Circuit> layer{base};
  out.push_back(base);
  for (std::size_t depth = 0; depth < max_internal; ++depth) {
    std::vector<Circuit> next;
    for (const auto& c : layer) {
      const std::size_t i = c.gates.size();
      auto extend = [&](Gate g) {
        Circuit d = c;
        d.gates.push_back(g);
        next.push_back(d);
      };
      for (std::size_t j = 0; j < i; ++j) {
        extend({GateKind::not_gate, j, 0});
      }
      for (GateKind k : {GateKind::and_gate, GateKind::or_gate}) {
        for (std::size_t j = 0; j < i; ++j) {
          for (std::size_t h = j + 1; h < i; ++h) {
            extend({k, j, h});
          }
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

FormulaPtr lit(const std::string& p, bool positive) { return positive ? prop(p) : neg(p); }

FormulaPtr join(bool conjunction, FormulaPtr a, FormulaPtr b) {
  return conjunction ? conj(std::move(a), std::move(b)) : disj(std::move(a), std::move(b));
}

} // namespace

std::vector<DqbfInstance> dqbf_corpus() {
  std::vector<DqbfInstance> out;
  const std::vector<Quantifier> one{{true, "p1"}, {false, "q1"}};
  for (unsigned signs = 0; signs < 16; ++signs) {
    for (unsigned ops = 0; ops < 8; ++ops) {
      auto s = [&](unsigned b) { return ((signs >> b) & 1) == 0; };
      auto o = [&](unsigned b) { return ((ops >> b) & 1) == 0; };
      FormulaPtr left = join(o(0), lit("q1", s(0)), lit("p1", s(1)));
      FormulaPtr right = join(o(2), lit("q1", s(2)), lit("p1", s(3)));
      FormulaPtr matrix = join(o(1), left, right);
      for (bool dep1 : {false, true}) {
        DqbfInstance d{one, {}, matrix};
        d.deps["q1"] = dep1 ? std::vector<std::string>{"p1"} : std::vector<std::string>{};
        out.push_back(d);
      }
    }
  }
  const std::vector<Quantifier> two{{true, "p1"}, {false, "q1"}, {true, "p2"}, {false, "q2"}};
  const std::vector<std::vector<std::string>> p2_sets{{}, {"p1"}, {"p2"}, {"p1", "p2"}};
  for (unsigned signs = 0; signs < 16; ++signs) {
    auto s = [&](unsigned b) { return ((signs >> b) & 1) == 0; };
    for (const char* a : {"p1", "p2"}) {
      for (const char* b : {"p1", "p2"}) {
        FormulaPtr matrix = conj(disj(lit("q1", s(0)), lit(a, s(1))),
                                 disj(lit("q2", s(2)), lit(b, s(3))));
        for (bool dep1 : {false, true}) {
          for (const auto& p2 : p2_sets) {
            DqbfInstance d{two, {}, matrix};
            d.deps["q1"] = dep1 ? std::vector<std::string>{"p1"} : std::vector<std::string>{};
            d.deps["q2"] = p2;
            out.push_back(d);
          }
        }
      }
    }
  }
  return out;
}

} // namespace minc
