#include "minc/translate.hpp"

#include "minc/error.hpp"

namespace minc {

std::string occurrence_relation(const SubformulaTable& table, std::size_t id) {
  return "R_" + table.fresh_name(id);
}

namespace {

LPtr literal_of(const Formula& f) {
  return f.kind() == NodeKind::prop ? lprop(f.name()) : lnot(lprop(f.name()));
}

std::vector<LPtr> inclusion_chi(const std::string& pa, const std::string& rel,
                                const Formula& atom) {
  const auto& ps = atom.lhs();
  const auto& qs = atom.rhs();
  std::vector<LPtr> plus, minus, third;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    plus.push_back(lglobal_box(limplies(land(lprop(pa), lprop(ps[i])),
                                        ldiamond(rel, land(lprop(pa), lprop(qs[i]))))));
    minus.push_back(lglobal_box(limplies(land(lprop(pa), lnot(lprop(ps[i]))),
                                         ldiamond(rel, land(lprop(pa), lnot(lprop(qs[i])))))));
    third.push_back(
        lglobal_box(limplies(ldiamond(rel, lprop(qs[i])), lbox(rel, lprop(qs[i])))));
  }
  return {land_all(plus), land_all(minus), land_all(third)};
}

LPtr chi_for(const SubformulaTable& table, std::size_t id, const std::string& inc_rel) {
  const auto& e = table[id];
  const Formula& f = *e.node;
  const LPtr me = lprop(e.fresh_name);
  auto child = [&](std::size_t i) { return lprop(table.fresh_name(e.children.at(i))); };
  switch (f.kind()) {
  case NodeKind::prop:
  case NodeKind::neg_prop:
    return lglobal_box(limplies(me, literal_of(f)));
  case NodeKind::conj:
    return lglobal_box(land(liff(me, child(0)), liff(me, child(1))));
  case NodeKind::disj:
    return lglobal_box(liff(me, lor(child(0), child(1))));
  case NodeKind::box:
    return lglobal_box(land(limplies(me, lbox(kAccessibility, child(0))),
                            limplies(child(0), lconverse(kAccessibility, me))));
  case NodeKind::diamond:
    return lglobal_box(land(limplies(me, ldiamond(kAccessibility, child(0))),
                            limplies(child(0), lconverse(kAccessibility, me))));
  case NodeKind::inclusion: {
    auto parts = inclusion_chi(e.fresh_name, inc_rel, f);
    return land(land(parts[0], parts[1]), parts[2]);
  }
  default:
    throw PreconditionError("translations do not cover dep atoms or quantifiers");
  }
}

std::set<std::string> propositions_of(const FormulaPtr& theta) { return propositions(*theta); }

} // namespace

LaxTranslation translate_lax_full(const FormulaPtr& theta) {
  LaxTranslation out;
  out.table = subformulas(theta);
  out.conjuncts.push_back(lprop(out.table.fresh_name(0)));
  for (const auto& e : out.table) {
    std::string rel;
    if (e.node->kind() == NodeKind::inclusion) {
      rel = occurrence_relation(out.table, e.id);
      out.inclusion_relations.emplace(e.id, rel);
    }
    out.conjuncts.push_back(chi_for(out.table, e.id, rel));
  }
  out.formula = land_all(out.conjuncts);
  return out;
}

// ---------------------------------------------------------------------------
// Standard translation

FoPtr standard_translation(const LPtr& f, FoVar v) {
  const FoVar u = other(v);
  const LFormula& g = *f;
  switch (g.kind()) {
  case LKind::prop:
    return fo_unary(g.name(), v);
  case LKind::conj:
    return fo_and(standard_translation(g.left(), v), standard_translation(g.right(), v));
  case LKind::diamond:
    return fo_exists(u, fo_and(fo_binary(g.name(), v, u), standard_translation(g.left(), u)));
  case LKind::converse:
    return fo_exists(u, fo_and(fo_binary(g.name(), u, v), standard_translation(g.left(), u)));
  case LKind::global:
    return fo_exists(v, standard_translation(g.left(), v));
  case LKind::negation:
    break;
  }
  const LFormula& h = *g.left();
  const bool neg_body = h.left() && h.left()->kind() == LKind::negation;
  if (h.kind() == LKind::global && neg_body) {
    return fo_forall(v, standard_translation(h.left()->left(), v));
  }
  if (h.kind() == LKind::diamond && neg_body) {
    return fo_forall(u, fo_implies(fo_binary(h.name(), v, u),
                                   standard_translation(h.left()->left(), u)));
  }
  if (h.kind() == LKind::converse && neg_body) {
    return fo_forall(u, fo_implies(fo_binary(h.name(), u, v),
                                   standard_translation(h.left()->left(), u)));
  }
  if (h.kind() == LKind::conj && h.right()->kind() == LKind::negation) {
    if (h.left()->kind() == LKind::negation) {
      return fo_or(standard_translation(h.left()->left(), v),
                   standard_translation(h.right()->left(), v));
    }
    return fo_implies(standard_translation(h.left(), v),
                      standard_translation(h.right()->left(), v));
  }
  return fo_not(standard_translation(g.left(), v));
}

StrictTranslation translate_strict_full(const FormulaPtr& theta) {
  const LaxTranslation lax = translate_lax_full(theta);
  StrictTranslation out;
  out.table = lax.table;
  out.inclusion_relations = lax.inclusion_relations;
  const FoVar x = FoVar::x, y = FoVar::y;
  out.conjuncts.push_back(fo_exists(x, fo_unary(out.table.fresh_name(0), x)));
  for (const auto& e : out.table) {
    const FoPtr base = standard_translation(lax.conjuncts[e.id + 1], x);
    if (e.node->kind() == NodeKind::disj) {
      const std::string a = out.table.fresh_name(e.children[0]);
      const std::string b = out.table.fresh_name(e.children[1]);
      out.conjuncts.push_back(
          fo_and(base, fo_not(fo_exists(x, fo_and(fo_unary(a, x), fo_unary(b, x))))));
    } else if (e.node->kind() == NodeKind::diamond) {
      const std::string rel = occurrence_relation(out.table, e.id);
      out.diamond_relations.emplace(e.id, rel);
      const std::string pd = e.fresh_name;
      const std::string pf = out.table.fresh_name(e.children[0]);
      const FoPtr beta = fo_and(
          fo_and(fo_forall(x, fo_implies(fo_unary(pd, x),
                                         fo_exists_one(y, fo_and(fo_binary(rel, x, y),
                                                                 fo_unary(pf, y))))),
                 fo_forall(x, fo_forall(y, fo_implies(fo_binary(rel, x, y),
                                                      fo_and(fo_unary(pd, x),
                                                             fo_unary(pf, y)))))),
          fo_forall(y, fo_implies(fo_unary(pf, y),
                                  fo_exists(x, fo_and(fo_unary(pd, x), fo_binary(rel, x, y))))));
      const FoPtr beta_prime = fo_forall(
          x, fo_forall(y, fo_implies(fo_binary(rel, x, y), fo_binary(kAccessibility, x, y))));
      out.conjuncts.push_back(fo_and(beta, beta_prime));
    } else {
      out.conjuncts.push_back(base);
    }
  }
  out.formula = fo_and_all(out.conjuncts);
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

std::string describe_conjunct(const SubformulaTable& table, std::size_t index) {
  if (index == 0) {
    return "the root proposition " + table.fresh_name(0);
  }
  const auto& e = table[index - 1];
  return "the constraint of occurrence " + std::to_string(e.id) + " (" + print_minc(e.node) +
         ")";
}

void require_team(const KripkeModel& m, const Team& x) {
  if (x.universe() != m.size()) {
    throw PreconditionError("team is over a different world set");
  }
  if (x.empty()) {
    throw PreconditionError("the team must be nonempty");
  }
}

// U(p_phi) per occurrence, root to leaves, following the proof's choices.
std::vector<Team> assign_teams(TeamEvaluator& ev, const SubformulaTable& table, const Team& x,
                               std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>*
                                   selectors) {
  const KripkeModel& m = ev.model();
  std::vector<Team> u(table.size(), Team(m.size()));
  u[0] = x;
  for (const auto& e : table) {
    const Team& here = u[e.id];
    switch (e.node->kind()) {
    case NodeKind::conj:
      u[e.children[0]] = here;
      u[e.children[1]] = here;
      break;
    case NodeKind::disj: {
      auto split = ev.find_split(e.id, here);
      if (!split) {
        throw Error("internal: no split for a satisfied disjunction");
      }
      u[e.children[0]] = split->first;
      u[e.children[1]] = split->second;
      break;
    }
    case NodeKind::box:
      u[e.children[0]] = successors(m, kAccessibility, here);
      break;
    case NodeKind::diamond:
      if (selectors) {
        auto sel = ev.find_selector(e.id, here);
        if (!sel) {
          throw Error("internal: no selector for a satisfied diamond");
        }
        Team image(m.size());
        for (auto [from, to] : *sel) {
          image.insert(to);
        }
        u[e.children[0]] = image;
        selectors->emplace(e.id, std::move(*sel));
      } else {
        auto next = ev.find_successor(e.id, here);
        if (!next) {
          throw Error("internal: no successor team for a satisfied diamond");
        }
        u[e.children[0]] = *next;
      }
      break;
    default:
      break;
    }
  }
  return u;
}

KripkeModel base_extension(const KripkeModel& m, const SubformulaTable& table,
                           const std::vector<Team>& u, const FormulaPtr& theta) {
  KripkeModel n = restrict_signature(m, {kAccessibility}, propositions_of(theta));
  for (const auto& e : table) {
    n.set_valuation(e.fresh_name, u[e.id]);
    if (e.node->kind() == NodeKind::inclusion) {
      const std::string rel = occurrence_relation(table, e.id);
      n.declare_relation(rel);
      const auto members = u[e.id].members();
      const auto& lhs = e.node->lhs();
      const auto& rhs = e.node->rhs();
      for (std::size_t a : members) {
        for (std::size_t b : members) {
          bool match = true;
          for (std::size_t i = 0; i < lhs.size() && match; ++i) {
            match = m.holds(lhs[i], a) == m.holds(rhs[i], b);
          }
          if (match) {
            n.add_edge(rel, a, b);
            break;
          }
        }
      }
    }
  }
  return n;
}

} // namespace

TeamWitness extract_lax_witness(const KripkeModel& n, std::size_t w, const FormulaPtr& theta) {
  const LaxTranslation tr = translate_lax_full(theta);
  if (w >= n.size()) {
    throw PreconditionError("world index out of range");
  }
  for (std::size_t i = 0; i < tr.conjuncts.size(); ++i) {
    bool ok = false;
    try {
      ok = eval_L(n, w, tr.conjuncts[i]);
    } catch (const UnknownRelation& e) {
      throw PreconditionError("model lacks a relation needed by " +
                              describe_conjunct(tr.table, i) + ": " + e.what());
    }
    if (!ok) {
      throw PreconditionError("the pointed model violates " + describe_conjunct(tr.table, i));
    }
  }
  KripkeModel m = restrict_signature(n, {kAccessibility}, propositions_of(theta));
  return {std::move(m), n.valuation(tr.table.fresh_name(0))};
}

std::pair<KripkeModel, std::size_t> embed_lax_witness(const KripkeModel& m, const Team& x,
                                                      const FormulaPtr& theta) {
  require_team(m, x);
  const SubformulaTable table = subformulas(theta);
  TeamEvaluator ev(m, theta, Semantics::lax);
  if (!ev.eval(x)) {
    throw PreconditionError("the team does not satisfy the formula under lax semantics");
  }
  const auto u = assign_teams(ev, table, x, nullptr);
  return {base_extension(m, table, u, theta), x.first()};
}

TeamWitness extract_strict_witness(const FoStructure& a, const FormulaPtr& theta) {
  const StrictTranslation tr = translate_strict_full(theta);
  for (std::size_t i = 0; i < tr.conjuncts.size(); ++i) {
    if (!eval_fo2c(a, tr.conjuncts[i])) {
      throw PreconditionError("the structure violates " + describe_conjunct(tr.table, i));
    }
  }
  KripkeModel n = to_kripke(a);
  KripkeModel m = restrict_signature(n, {kAccessibility}, propositions_of(theta));
  return {std::move(m), a.unary(tr.table.fresh_name(0))};
}

FoStructure embed_strict_witness(const KripkeModel& m, const Team& x, const FormulaPtr& theta) {
  require_team(m, x);
  const SubformulaTable table = subformulas(theta);
  TeamEvaluator ev(m, theta, Semantics::strict);
  if (!ev.eval(x)) {
    throw PreconditionError("the team does not satisfy the formula under strict semantics");
  }
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> selectors;
  const auto u = assign_teams(ev, table, x, &selectors);
  KripkeModel n = base_extension(m, table, u, theta);
  for (const auto& e : table) {
    if (e.node->kind() == NodeKind::diamond) {
      const std::string rel = occurrence_relation(table, e.id);
      n.declare_relation(rel);
      for (auto [from, to] : selectors[e.id]) {
        n.add_edge(rel, from, to);
      }
    }
  }
  return to_fo_structure(n);
}

} // namespace minc
