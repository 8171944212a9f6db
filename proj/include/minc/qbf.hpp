#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "minc/formula.hpp"
#include "minc/kripke.hpp"

namespace minc {

struct Quantifier {
  bool universal = true;
  std::string var;
};

/// Quantifier prefix over a propositional matrix; an existential with an
/// entry in `deps` may depend only on those propositions (no entry means
/// no restriction).
struct DqbfInstance {
  std::vector<Quantifier> prefix;
  std::map<std::string, std::vector<std::string>> deps;
  FormulaPtr matrix;
};

/// The matrix may contain inclusion atoms and embedded quantifiers.
struct IqbfInstance {
  std::vector<Quantifier> prefix;
  FormulaPtr matrix;
};

/// Q1 v1 ... Qn vn (dep atoms in prefix order & matrix).
FormulaPtr to_formula(const DqbfInstance& d);
FormulaPtr to_formula(const IqbfInstance& i);

/// Leading quantifiers form the prefix. For DQBF the top-level dep atoms
/// of the body become dependency sets; each must target an existential
/// that it follows in the prefix, with controllers quantified before it.
DqbfInstance parse_dqbf(std::string_view text);
IqbfInstance parse_iqbf(std::string_view text);
/// Throws PreconditionError when the instance breaks the invariants above.
void validate(const DqbfInstance& d);

/// Team-quantifier semantics from a single all-false world: forall p
/// doubles every world, exists p picks a value per world, dep/inclusion and
/// the connectives are read over the resulting multiset of assignments with
/// strict (disjoint) splits. Throws PreconditionError for propositions that
/// are not bound by a quantifier and for modalities.
bool eval_qbf(const FormulaPtr& f);
bool eval_dqbf(const DqbfInstance& d);
bool eval_iqbf(const IqbfInstance& i);

enum class DepEncoding {
  /// dep(P; q): forall s1..sr (s1..sr P q <= z1..zr P q) where z1..zr are
  /// the universals before q that are not in P. Nothing when r = 0.
  per_missing_universal,
  /// forall s (s P q <= u P q) with u the outermost universal.
  outermost_universal,
};

const char* dep_encoding_name(DepEncoding e);

/// Replaces every dependency set by an inclusion atom under fresh
/// universals; the matrix becomes (chi_1 & ... & chi_j & matrix).
IqbfInstance dqbf_to_iqbf(const DqbfInstance& d,
                          DepEncoding enc = DepEncoding::per_missing_universal);

/// Moves quantifiers out of conjunctions to the end of the prefix. Throws
/// PreconditionError for quantifiers under disjunctions, for variables
/// quantified twice and for variables shared with the other conjunct.
IqbfInstance hoist_quantifiers(const IqbfInstance& i);

struct LadnerReduction {
  FormulaPtr formula;
  /// Variables of the hoisted prefix, level by level.
  std::vector<std::string> vars;
  /// Level markers d_0..d_n.
  std::vector<std::string> levels;
};

/// phi_struc & D1 ... Dn matrix, with D = box for forall and dia for
/// exists, after hoisting. phi_struc makes d_0 true at the root and at
/// every d_i world forces two d_{i+1} successors disagreeing on r_{i+1},
/// no other successors, and persistence of r_1..r_i.
LadnerReduction iqbf_to_minc(const IqbfInstance& i);
FormulaPtr ladner_structure(const std::vector<std::string>& vars,
                            const std::vector<std::string>& levels);

/// Full binary tree of depth n; the children of a level-i world disagree
/// on vars[i] and inherit vars[0..i). World 0 is the root.
KripkeModel canonical_tree_model(const std::vector<std::string>& vars,
                                 const std::vector<std::string>& levels);

/// Strict evaluation of the reduction on its canonical tree at {root}.
bool ladner_check(const IqbfInstance& i);

} // namespace minc
