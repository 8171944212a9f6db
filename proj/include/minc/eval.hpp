#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minc/fo.hpp"
#include "minc/formula.hpp"
#include "minc/kripke.hpp"
#include "minc/lformula.hpp"
#include "minc/team.hpp"

namespace minc {

enum class Semantics { lax, strict };

const char* semantics_name(Semantics s);

struct EvalOptions {
  /// Decide inclusion-free subformulas pointwise (flatness) instead of
  /// unfolding the team clauses. Turn off to exercise the clauses themselves.
  bool flatness_shortcut = true;
};

/// Pointwise Kripke truth of an inclusion-free formula at world `w`.
/// Throws PreconditionError on inclusion atoms, dep atoms and quantifiers.
bool eval_kripke(const KripkeModel& m, std::size_t w, const FormulaPtr& f);
/// All worlds at which the inclusion-free formula `f` holds.
Team kripke_extension(const KripkeModel& m, const FormulaPtr& f);

/// Team semantics for modal inclusion logic. Results are memoised per
/// (occurrence, team) for the lifetime of the evaluator, so one evaluator
/// can answer many team queries over the same model and formula.
/// Occurrence ids coincide with those of `subformulas(f)`.
class TeamEvaluator {
public:
  TeamEvaluator(const KripkeModel& m, FormulaPtr f, Semantics s, EvalOptions opts = {});
  ~TeamEvaluator();
  TeamEvaluator(const TeamEvaluator&) = delete;
  TeamEvaluator& operator=(const TeamEvaluator&) = delete;

  const KripkeModel& model() const noexcept { return model_; }
  Semantics semantics() const noexcept { return semantics_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const FormulaPtr& node(std::size_t id) const { return nodes_.at(id).f; }
  const std::vector<std::size_t>& children(std::size_t id) const { return nodes_.at(id).kids; }

  bool eval(const Team& t) { return eval_node(0, t); }
  bool eval_node(std::size_t id, const Team& t);

  /// For a disjunction occurrence satisfied by `t`: the first witnessing
  /// split (S, S') in enumeration order (S ascending; for lax, then S'
  /// ascending among the covers of T \ S).
  std::optional<std::pair<Team, Team>> find_split(std::size_t id, const Team& t);
  /// For a diamond occurrence: the first successor team satisfying the
  /// body (legal successor teams for lax, selector images for strict).
  std::optional<Team> find_successor(std::size_t id, const Team& t);
  /// Strict diamonds: the first witnessing selector, as (world, image) pairs
  /// for the members of `t`.
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> find_selector(std::size_t id,
                                                                               const Team& t);

  /// Number of clause evaluations performed (memo misses).
  std::size_t work() const noexcept { return work_; }

private:
  struct Node {
    FormulaPtr f;
    std::vector<std::size_t> kids;
    bool flat = false;
    std::optional<Team> extension;
    std::vector<std::uint64_t> lhs_keys;
    std::vector<std::uint64_t> rhs_keys;
  };
  struct Memo;

  std::size_t compile(const FormulaPtr& f);
  bool compute(std::size_t id, const Team& t);
  bool inclusion_holds(std::size_t id, const Team& t) const;
  const Team& extension(std::size_t id);
  template <class Visit>
  bool for_each_selector(const Team& t, Visit&& visit);

  const KripkeModel& model_;
  FormulaPtr root_;
  Semantics semantics_;
  EvalOptions opts_;
  std::vector<Node> nodes_;
  std::unique_ptr<Memo> memo_;
  std::size_t work_ = 0;
};

bool eval_team(const KripkeModel& m, const Team& t, const FormulaPtr& f, Semantics s,
               EvalOptions opts = {});
inline bool eval_lax(const KripkeModel& m, const Team& t, const FormulaPtr& f,
                     EvalOptions opts = {}) {
  return eval_team(m, t, f, Semantics::lax, opts);
}
inline bool eval_strict(const KripkeModel& m, const Team& t, const FormulaPtr& f,
                        EvalOptions opts = {}) {
  return eval_team(m, t, f, Semantics::strict, opts);
}

/// Classical semantics of the multimodal language L.
bool eval_L(const KripkeModel& n, std::size_t w, const LPtr& f);
Team l_extension(const KripkeModel& n, const LPtr& f);

/// Truth of a closed two-variable sentence. Throws PreconditionError if
/// `f` has free variables.
bool eval_fo2c(const FoStructure& a, const FoPtr& f);
/// Truth under an explicit assignment (unassigned variables must not occur
/// free).
bool eval_fo(const FoStructure& a, const FoFormula& f, std::optional<std::size_t> x,
             std::optional<std::size_t> y);

} // namespace minc
