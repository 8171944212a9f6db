#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minc/eval.hpp"
#include "minc/fo.hpp"
#include "minc/formula.hpp"
#include "minc/kripke.hpp"
#include "minc/lformula.hpp"

namespace minc {

/// The translation of a modal inclusion formula theta into L, kept in
/// pieces so that witnesses can be checked conjunct by conjunct.
struct LaxTranslation {
  SubformulaTable table;
  /// conjuncts[0] is p_theta; conjuncts[i + 1] is chi for occurrence i.
  std::vector<LPtr> conjuncts;
  /// Fresh relation R_alpha per inclusion-atom occurrence.
  std::map<std::size_t, std::string> inclusion_relations;
  /// Left-nested conjunction of all conjuncts.
  LPtr formula;
};

struct StrictTranslation {
  SubformulaTable table;
  /// conjuncts[0] is `exists x. p_theta(x)`; conjuncts[i + 1] translates
  /// chi for occurrence i (with the disjunction and diamond replacements).
  std::vector<FoPtr> conjuncts;
  std::map<std::size_t, std::string> inclusion_relations;
  /// Fresh functional relation R_<>phi per diamond occurrence.
  std::map<std::size_t, std::string> diamond_relations;
  FoPtr formula;
};

/// Name of the fresh relation for occurrence `id` ("R_" + its fresh name).
std::string occurrence_relation(const SubformulaTable& table, std::size_t id);

LaxTranslation translate_lax_full(const FormulaPtr& theta);
inline LPtr translate_lax(const FormulaPtr& theta) { return translate_lax_full(theta).formula; }

StrictTranslation translate_strict_full(const FormulaPtr& theta);
inline FoPtr translate_strict(const FormulaPtr& theta) {
  return translate_strict_full(theta).formula;
}

/// Standard translation of an L-formula with the current point in `v`,
/// using only the variables x and y.
FoPtr standard_translation(const LPtr& f, FoVar v);

/// From a pointed model of translate_lax(theta): the restriction of `n` to
/// R and theta's propositions, with the team V(p_theta). Throws
/// PreconditionError naming the failing conjunct if eval_L(n, w, .) fails.
TeamWitness extract_lax_witness(const KripkeModel& n, std::size_t w, const FormulaPtr& theta);

/// From a nonempty team satisfying theta laxly: the model M (restricted to
/// R and theta's propositions) extended with the sets U(p_phi) and the
/// relations R_alpha, together with a world of the team.
std::pair<KripkeModel, std::size_t> embed_lax_witness(const KripkeModel& m, const Team& x,
                                                      const FormulaPtr& theta);

/// From a model of translate_strict(theta): restricted model and team
/// V(p_theta), satisfying theta under strict semantics.
TeamWitness extract_strict_witness(const FoStructure& a, const FormulaPtr& theta);

/// From a nonempty team satisfying theta strictly: a structure satisfying
/// translate_strict(theta), with R_<>phi the graph of a witnessing selector.
FoStructure embed_strict_witness(const KripkeModel& m, const Team& x, const FormulaPtr& theta);

} // namespace minc
