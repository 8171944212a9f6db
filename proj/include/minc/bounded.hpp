#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minc/eval.hpp"
#include "minc/fo.hpp"
#include "minc/formula.hpp"
#include "minc/kripke.hpp"
#include "minc/lformula.hpp"

namespace minc {

enum class SearchStatus { found, not_found, budget_exceeded };

const char* status_name(SearchStatus s);

struct SearchOptions {
  std::size_t max_size = 3;
  /// 0 means unlimited. Minc searches count one step per candidate model;
  /// the SAT-backed L and FO searches count solver calls plus conflicts.
  std::uint64_t budget = 0;
  /// Worker threads for the Minc enumeration; the reported witness is
  /// always the one with the smallest canonical index.
  unsigned jobs = 1;
  /// Skip models that are not the smallest index in their isomorphism class.
  bool symmetry_breaking = false;
  /// Only models with R empty.
  bool empty_relation = false;
  /// Only models whose worlds carry pairwise distinct valuations.
  bool distinct_valuations = false;
};

// ---------------------------------------------------------------------------
// Canonical enumeration of Minc models

/// Propositions (sorted) and whether the relation R is enumerated. R is
/// enumerated only for formulas with modalities and without empty_relation.
struct MincSignature {
  std::vector<std::string> props;
  bool with_relation = false;
};

MincSignature minc_signature(const FormulaPtr& f, const SearchOptions& opts = {});

/// Bits of a model with n worlds: the n*n relation bits (row-major) if
/// enumerated, then n bits per proposition in sorted order. The first bit
/// is the most significant bit of the model index.
std::size_t minc_index_bits(const MincSignature& sig, std::size_t n);
KripkeModel minc_model_at(const MincSignature& sig, std::size_t n, std::uint64_t index);
/// Inverse of minc_model_at for models over the signature.
std::uint64_t minc_model_index(const MincSignature& sig, const KripkeModel& m);

/// All-teams evaluator for models with at most 6 worlds: bit t of the
/// result is set iff the team with bitset value t satisfies the formula.
/// Independent of TeamEvaluator, which serves as its cross-check.
std::uint64_t satisfying_teams(const KripkeModel& m, const FormulaPtr& f, Semantics s);

struct MincSearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<KripkeModel> model;
  std::optional<Team> team;
  std::uint64_t steps = 0;
  /// Canonical index of the witness within its world count.
  std::uint64_t index = 0;
};

/// First (model, nonempty team) in canonical order: world count ascending,
/// then model index ascending, then team bitset ascending.
///
/// With both empty_relation and distinct_valuations on a modality-free
/// formula, the search instead ranges over sets of distinct valuation
/// vectors (by size, then lexicographically) that satisfy the flat
/// top-level conjuncts pointwise, with the team equal to the domain; any
/// restricted witness restricts to such a model.
MincSearchResult bounded_sat_minc(const FormulaPtr& f, Semantics s, const SearchOptions& opts);

// ---------------------------------------------------------------------------
// L and FO^2 with counting

struct LSearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<KripkeModel> model;
  std::optional<std::size_t> world;
  std::uint64_t steps = 0;
};

struct FoSearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<FoStructure> structure;
  std::uint64_t steps = 0;
};

/// Canonical order for L: relations of f sorted, n*n bits each, then
/// propositions sorted, n bits each; the pointed world is the least one.
/// Solved by grounding to SAT and fixing bits greedily from the most
/// significant one, which yields the least satisfying index.
LSearchResult bounded_sat_L(const LPtr& f, const SearchOptions& opts);
/// Plain enumeration in the same order; for cross-checks on tiny inputs.
LSearchResult bounded_sat_L_exhaustive(const LPtr& f, const SearchOptions& opts);

/// Same scheme with binary then unary predicates. A miss within the bound
/// says nothing about larger structures.
FoSearchResult bounded_sat_fo2c(const FoPtr& f, const SearchOptions& opts);
FoSearchResult bounded_sat_fo2c_exhaustive(const FoPtr& f, const SearchOptions& opts);

// ---------------------------------------------------------------------------
// Strict versus lax

struct DifferentialReport {
  SearchStatus status = SearchStatus::not_found;
  bool lax_sat = false;
  bool strict_sat = false;
  std::optional<KripkeModel> lax_model;
  std::optional<Team> lax_team;
  std::optional<KripkeModel> strict_model;
  std::optional<Team> strict_team;
  /// First model/team (canonical order) on which the semantics disagree.
  std::optional<KripkeModel> divergence_model;
  std::optional<Team> divergence_team;
  bool divergence_lax = false;
  std::uint64_t steps = 0;
};

DifferentialReport differential_check(const FormulaPtr& f, const SearchOptions& opts);

} // namespace minc
