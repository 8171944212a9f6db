#include "minc/qbf.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "minc/error.hpp"
#include "minc/eval.hpp"

namespace minc {

namespace {

FormulaPtr wrap(const std::vector<Quantifier>& prefix, FormulaPtr body) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    body = it->universal ? forall_prop(it->var, body) : exists_prop(it->var, body);
  }
  return body;
}

bool has_quantifier(const Formula& f) {
  if (f.kind() == NodeKind::forall || f.kind() == NodeKind::exists) {
    return true;
  }
  return (f.left() && has_quantifier(*f.left())) || (f.right() && has_quantifier(*f.right()));
}

/// A disjunction with a non-flat operand: its truth can change when worlds
/// are duplicated.
bool split_sensitive(const Formula& f) {
  if (f.kind() == NodeKind::disj) {
    for (const auto& g : {f.left(), f.right()}) {
      if (g->has_inclusion() || g->has_quantified_layer()) {
        return true;
      }
    }
  }
  return (f.left() && split_sensitive(*f.left())) || (f.right() && split_sensitive(*f.right()));
}

void flatten_conj(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind() == NodeKind::conj) {
    flatten_conj(f->left(), out);
    flatten_conj(f->right(), out);
  } else {
    out.push_back(f);
  }
}

std::vector<Quantifier> peel(FormulaPtr& f) {
  std::vector<Quantifier> prefix;
  while (f->kind() == NodeKind::forall || f->kind() == NodeKind::exists) {
    prefix.push_back({f->kind() == NodeKind::forall, f->name()});
    f = f->left();
  }
  return prefix;
}

std::string fresh(const std::string& base, std::set<std::string>& used) {
  std::string name = base;
  for (std::size_t i = 1; used.count(name); ++i) {
    name = base + std::to_string(i);
  }
  used.insert(name);
  return name;
}

} // namespace

FormulaPtr to_formula(const DqbfInstance& d) {
  std::vector<FormulaPtr> parts;
  for (const auto& q : d.prefix) {
    if (auto it = d.deps.find(q.var); !q.universal && it != d.deps.end()) {
      parts.push_back(dep(it->second, q.var));
    }
  }
  parts.push_back(d.matrix);
  return wrap(d.prefix, conj_all(parts));
}

FormulaPtr to_formula(const IqbfInstance& i) { return wrap(i.prefix, i.matrix); }

void validate(const DqbfInstance& d) {
  if (!d.matrix) {
    throw PreconditionError("DQBF instance without a matrix");
  }
  if (d.matrix->has_quantified_layer() || d.matrix->has_inclusion() ||
      d.matrix->has_modality()) {
    throw PreconditionError("DQBF matrices are propositional");
  }
  std::set<std::string> seen;
  for (const auto& q : d.prefix) {
    if (!q.universal) {
      if (auto it = d.deps.find(q.var); it != d.deps.end()) {
        for (const auto& c : it->second) {
          if (!seen.count(c)) {
            throw PreconditionError("dep(...; " + q.var + ") mentions " + c +
                                    ", which is not quantified before " + q.var);
          }
        }
      }
    }
    if (!seen.insert(q.var).second) {
      throw PreconditionError(q.var + " is quantified twice");
    }
  }
  for (const auto& [target, ctrl] : d.deps) {
    auto it = std::find_if(d.prefix.begin(), d.prefix.end(),
                           [&](const Quantifier& q) { return q.var == target; });
    if (it == d.prefix.end() || it->universal) {
      throw PreconditionError("dep target " + target + " is not an existential");
    }
  }
  for (const auto& p : propositions(*d.matrix)) {
    if (!seen.count(p)) {
      throw PreconditionError("proposition " + p + " is not quantified");
    }
  }
}

DqbfInstance parse_dqbf(std::string_view text) {
  FormulaPtr f = parse_minc(text);
  DqbfInstance d;
  d.prefix = peel(f);
  std::vector<FormulaPtr> parts, rest;
  flatten_conj(f, parts);
  for (const auto& g : parts) {
    if (g->kind() != NodeKind::dep) {
      rest.push_back(g);
    } else if (!d.deps.emplace(g->name(), g->lhs()).second) {
      throw ParseError("more than one dep atom for " + g->name());
    }
  }
  if (rest.empty()) {
    throw ParseError("DQBF instance without a matrix");
  }
  d.matrix = conj_all(rest);
  validate(d);
  return d;
}

IqbfInstance parse_iqbf(std::string_view text) {
  FormulaPtr f = parse_minc(text);
  IqbfInstance i;
  i.prefix = peel(f);
  i.matrix = f;
  return i;
}

// ---------------------------------------------------------------------------
// Team-quantifier semantics

namespace {

class QbfEvaluator {
public:
  explicit QbfEvaluator(const Formula& f) {
    for (const auto& p : propositions(f)) {
      if (index_.size() == 64) {
        throw PreconditionError("more than 64 propositions");
      }
      index_.emplace(p, index_.size());
    }
    check(f, {});
  }

  bool eval(const Formula& f, const std::vector<std::uint64_t>& team) {
    if (!f.has_inclusion() && !f.has_quantified_layer()) {
      return std::all_of(team.begin(), team.end(),
                         [&](std::uint64_t a) { return point(f, a); });
    }
    switch (f.kind()) {
    case NodeKind::conj:
      return eval(*f.left(), team) && eval(*f.right(), team);
    case NodeKind::disj: {
      guard(team);
      const std::uint64_t n = team.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::uint64_t> a, b;
        for (std::uint64_t w = 0; w < n; ++w) {
          ((mask >> w) & 1 ? a : b).push_back(team[w]);
        }
        if (eval(*f.left(), a) && eval(*f.right(), b)) {
          return true;
        }
      }
      return false;
    }
    case NodeKind::inclusion: {
      std::set<std::uint64_t> have;
      for (auto a : team) {
        have.insert(project(f.rhs(), a));
      }
      return std::all_of(team.begin(), team.end(),
                         [&](std::uint64_t a) { return have.count(project(f.lhs(), a)); });
    }
    case NodeKind::dep: {
      std::map<std::uint64_t, bool> fn;
      const std::size_t target = index_.at(f.name());
      for (auto a : team) {
        const bool v = (a >> target) & 1;
        auto [it, fresh] = fn.emplace(project(f.lhs(), a), v);
        if (!fresh && it->second != v) {
          return false;
        }
      }
      return true;
    }
    case NodeKind::forall: {
      const std::uint64_t bit = std::uint64_t{1} << index_.at(f.name());
      std::vector<std::uint64_t> next;
      for (auto a : team) {
        next.push_back(a & ~bit);
        next.push_back(a | bit);
      }
      return eval(*f.left(), next);
    }
    case NodeKind::exists: {
      guard(team);
      const std::uint64_t bit = std::uint64_t{1} << index_.at(f.name());
      const std::uint64_t n = team.size();
      std::vector<std::uint64_t> next(team.size());
      for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << n); ++choice) {
        for (std::uint64_t w = 0; w < n; ++w) {
          next[w] = (choice >> w) & 1 ? team[w] | bit : team[w] & ~bit;
        }
        if (eval(*f.left(), next)) {
          return true;
        }
      }
      return false;
    }
    default:
      throw PreconditionError("unexpected node in quantified formula");
    }
  }

private:
  void check(const Formula& f, std::set<std::string> bound) {
    auto need = [&](const std::string& p) {
      if (!bound.count(p)) {
        throw PreconditionError("proposition " + p + " is not bound by a quantifier");
      }
    };
    switch (f.kind()) {
    case NodeKind::prop:
    case NodeKind::neg_prop:
      need(f.name());
      return;
    case NodeKind::inclusion:
    case NodeKind::dep:
      for (const auto& p : f.lhs()) {
        need(p);
      }
      for (const auto& p : f.rhs()) {
        need(p);
      }
      if (f.kind() == NodeKind::dep) {
        need(f.name());
      }
      return;
    case NodeKind::box:
    case NodeKind::diamond:
      throw PreconditionError("modalities do not occur in quantified Boolean formulas");
    case NodeKind::forall:
    case NodeKind::exists:
      bound.insert(f.name());
      check(*f.left(), bound);
      return;
    case NodeKind::conj:
    case NodeKind::disj:
      check(*f.left(), bound);
      check(*f.right(), std::move(bound));
      return;
    }
  }

  bool point(const Formula& f, std::uint64_t a) const {
    switch (f.kind()) {
    case NodeKind::prop:
      return (a >> index_.at(f.name())) & 1;
    case NodeKind::neg_prop:
      return !((a >> index_.at(f.name())) & 1);
    case NodeKind::conj:
      return point(*f.left(), a) && point(*f.right(), a);
    case NodeKind::disj:
      return point(*f.left(), a) || point(*f.right(), a);
    default:
      throw PreconditionError("unexpected node in flat formula");
    }
  }

  std::uint64_t project(const std::vector<std::string>& ps, std::uint64_t a) const {
    std::uint64_t key = 0;
    for (const auto& p : ps) {
      key = (key << 1) | ((a >> index_.at(p)) & 1);
    }
    return key;
  }

  static void guard(const std::vector<std::uint64_t>& team) {
    if (team.size() > 24) {
      throw PreconditionError("team of " + std::to_string(team.size()) +
                              " assignments is too large to enumerate");
    }
  }

  std::map<std::string, std::size_t> index_;
};

} // namespace

bool eval_qbf(const FormulaPtr& f) {
  QbfEvaluator ev(*f);
  return ev.eval(*f, {0});
}

bool eval_dqbf(const DqbfInstance& d) {
  validate(d);
  return eval_qbf(to_formula(d));
}

bool eval_iqbf(const IqbfInstance& i) { return eval_qbf(to_formula(i)); }

// ---------------------------------------------------------------------------
// Reductions

const char* dep_encoding_name(DepEncoding e) {
  return e == DepEncoding::per_missing_universal ? "per-missing-universal"
                                                 : "outermost-universal";
}

IqbfInstance dqbf_to_iqbf(const DqbfInstance& d, DepEncoding enc) {
  validate(d);
  std::set<std::string> used = propositions(*to_formula(d));
  std::vector<FormulaPtr> parts;
  std::vector<std::string> universals;
  for (const auto& q : d.prefix) {
    if (q.universal) {
      universals.push_back(q.var);
      continue;
    }
    auto it = d.deps.find(q.var);
    if (it == d.deps.end()) {
      continue;
    }
    const std::vector<std::string>& ctrl = it->second;
    std::vector<std::string> z;
    if (enc == DepEncoding::per_missing_universal) {
      for (const auto& u : universals) {
        if (std::find(ctrl.begin(), ctrl.end(), u) == ctrl.end()) {
          z.push_back(u);
        }
      }
    } else if (auto u = std::find_if(d.prefix.begin(), d.prefix.end(),
                                     [](const Quantifier& x) { return x.universal; });
               u != d.prefix.end()) {
      z.push_back(u->var);
    }
    if (z.empty()) {
      continue;
    }
    std::vector<Quantifier> fresh_vars;
    std::vector<std::string> lhs, rhs = z;
    for (std::size_t t = 0; t < z.size(); ++t) {
      fresh_vars.push_back({true, fresh("s", used)});
      lhs.push_back(fresh_vars.back().var);
    }
    for (const auto& c : ctrl) {
      lhs.push_back(c);
      rhs.push_back(c);
    }
    lhs.push_back(q.var);
    rhs.push_back(q.var);
    parts.push_back(wrap(fresh_vars, inclusion(lhs, rhs)));
  }
  parts.push_back(d.matrix);
  return {d.prefix, conj_all(parts)};
}

IqbfInstance hoist_quantifiers(const IqbfInstance& i) {
  struct Hoisted {
    std::vector<Quantifier> q;
    FormulaPtr body;
  };
  std::function<Hoisted(const FormulaPtr&)> go = [&](const FormulaPtr& f) -> Hoisted {
    switch (f->kind()) {
    case NodeKind::forall:
    case NodeKind::exists: {
      Hoisted h = go(f->left());
      h.q.insert(h.q.begin(), {f->kind() == NodeKind::forall, f->name()});
      return h;
    }
    case NodeKind::conj: {
      Hoisted a = go(f->left()), b = go(f->right());
      auto crosses = [](const Hoisted& moved, const FormulaPtr& other) {
        if (moved.q.empty()) {
          return;
        }
        const auto ps = propositions(*other);
        for (const auto& q : moved.q) {
          if (ps.count(q.var)) {
            throw PreconditionError("cannot hoist " + q.var +
                                    ": it also occurs in the other conjunct");
          }
        }
        if (split_sensitive(*other)) {
          throw PreconditionError("cannot hoist quantifiers over a disjunction of non-flat "
                                  "formulas");
        }
      };
      crosses(a, f->right());
      crosses(b, f->left());
      a.q.insert(a.q.end(), b.q.begin(), b.q.end());
      return {std::move(a.q), conj(a.body, b.body)};
    }
    default:
      if (has_quantifier(*f)) {
        throw PreconditionError("quantifiers under a disjunction cannot be hoisted");
      }
      return {{}, f};
    }
  };
  Hoisted h = go(i.matrix);
  IqbfInstance out{i.prefix, h.body};
  out.prefix.insert(out.prefix.end(), h.q.begin(), h.q.end());
  std::set<std::string> seen;
  for (const auto& q : out.prefix) {
    if (!seen.insert(q.var).second) {
      throw PreconditionError(q.var + " is quantified twice");
    }
  }
  for (const auto& p : propositions(*out.matrix)) {
    if (!seen.count(p)) {
      throw PreconditionError("proposition " + p + " is not quantified");
    }
  }
  return out;
}

FormulaPtr ladner_structure(const std::vector<std::string>& vars,
                            const std::vector<std::string>& levels) {
  const std::size_t n = vars.size();
  if (levels.size() != n + 1) {
    throw PreconditionError("need one level marker per tree level");
  }
  std::vector<FormulaPtr> parts{prop(levels[0])};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d1 = levels[i + 1];
    const auto& r = vars[i];
    std::vector<FormulaPtr> here{diamond(conj(prop(d1), prop(r))),
                                 diamond(conj(prop(d1), neg(r))), box(prop(d1))};
    for (std::size_t j = 0; j < i; ++j) {
      here.push_back(conj(disj(neg(vars[j]), box(prop(vars[j]))),
                          disj(prop(vars[j]), box(neg(vars[j])))));
    }
    FormulaPtr clause = disj(neg(levels[i]), conj_all(here));
    for (std::size_t k = 0; k < i; ++k) {
      clause = box(clause);
    }
    parts.push_back(clause);
  }
  return conj_all(parts);
}

LadnerReduction iqbf_to_minc(const IqbfInstance& i) {
  const IqbfInstance h = hoist_quantifiers(i);
  if (h.matrix->has_quantified_layer()) {
    throw PreconditionError("the matrix may not contain dep atoms");
  }
  if (h.matrix->has_modality()) {
    throw PreconditionError("the matrix may not contain modalities");
  }
  LadnerReduction out;
  for (const auto& q : h.prefix) {
    out.vars.push_back(q.var);
  }
  const std::set<std::string> used = propositions(*to_formula(h));
  std::string base = "d";
  auto clashes = [&] {
    for (std::size_t t = 0; t <= out.vars.size(); ++t) {
      if (used.count(base + std::to_string(t))) {
        return true;
      }
    }
    return false;
  };
  while (clashes()) {
    base += "d";
  }
  for (std::size_t t = 0; t <= out.vars.size(); ++t) {
    out.levels.push_back(base + std::to_string(t));
  }
  FormulaPtr body = h.matrix;
  for (auto it = h.prefix.rbegin(); it != h.prefix.rend(); ++it) {
    body = it->universal ? box(body) : diamond(body);
  }
  out.formula = conj(ladner_structure(out.vars, out.levels), body);
  return out;
}

KripkeModel canonical_tree_model(const std::vector<std::string>& vars,
                                 const std::vector<std::string>& levels) {
  const std::size_t n = vars.size();
  if (levels.size() != n + 1) {
    throw PreconditionError("need one level marker per tree level");
  }
  if (n > 16) {
    throw PreconditionError("tree too deep");
  }
  // World of the node at depth i with path bits j (first step most
  // significant): (2^i - 1) + j.
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < (std::size_t{1} << i); ++j) {
      std::string name = "t";
      for (std::size_t b = 0; b < i; ++b) {
        name += (j >> (i - 1 - b)) & 1 ? '1' : '0';
      }
      names.push_back(name);
    }
  }
  KripkeModel m(names);
  m.declare_relation(kAccessibility);
  std::vector<Team> val(n, m.empty_team());
  std::vector<Team> lvl(n + 1, m.empty_team());
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t first = (std::size_t{1} << i) - 1;
    for (std::size_t j = 0; j < (std::size_t{1} << i); ++j) {
      const std::size_t w = first + j;
      lvl[i].insert(w);
      for (std::size_t t = 0; t < i; ++t) {
        if ((j >> (i - 1 - t)) & 1) {
          val[t].insert(w);
        }
      }
      if (i < n) {
        const std::size_t child = (std::size_t{1} << (i + 1)) - 1 + 2 * j;
        m.add_edge(kAccessibility, w, child);
        m.add_edge(kAccessibility, w, child + 1);
      }
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    m.set_valuation(vars[t], val[t]);
  }
  for (std::size_t i = 0; i <= n; ++i) {
    m.set_valuation(levels[i], lvl[i]);
  }
  return m;
}

bool ladner_check(const IqbfInstance& i) {
  const LadnerReduction red = iqbf_to_minc(i);
  const KripkeModel tree = canonical_tree_model(red.vars, red.levels);
  return eval_strict(tree, Team::singleton(tree.size(), 0), red.formula);
}

} // namespace minc
