#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace minc {

/// Node kinds of modal inclusion logic formulas (negation normal form).
/// `dep`, `forall` and `exists` belong to the quantified propositional
/// layer used by the DQBF/IQBF machinery only.
enum class NodeKind {
  prop,
  neg_prop,
  conj,
  disj,
  inclusion,
  box,
  diamond,
  dep,
  forall,
  exists,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Build formulas with the free functions below
/// (`prop`, `conj`, `inclusion`, ...); they enforce the grammar invariants.
class Formula {
  struct Key {};

public:
  Formula(Key, NodeKind kind, std::string name, std::vector<std::string> lhs,
          std::vector<std::string> rhs, FormulaPtr left, FormulaPtr right);

  NodeKind kind() const noexcept { return kind_; }

  /// Proposition of a literal, bound variable of a quantifier, target of dep.
  const std::string& name() const noexcept { return name_; }
  /// Left side of an inclusion atom, controllers of a dep atom.
  const std::vector<std::string>& lhs() const noexcept { return lhs_; }
  /// Right side of an inclusion atom.
  const std::vector<std::string>& rhs() const noexcept { return rhs_; }
  /// First operand of a binary connective; body of a modality or quantifier.
  const FormulaPtr& left() const noexcept { return left_; }
  const FormulaPtr& right() const noexcept { return right_; }

  /// Number of AST nodes (each inclusion or dep atom counts once).
  std::size_t size() const noexcept { return size_; }
  /// Height of the AST; atoms have depth 0.
  std::size_t depth() const noexcept { return depth_; }

  bool has_inclusion() const noexcept { return has_inclusion_; }
  bool has_modality() const noexcept { return has_modality_; }
  /// True if a dep atom or a propositional quantifier occurs.
  bool has_quantified_layer() const noexcept { return has_quantified_layer_; }

  bool is_literal() const noexcept { return kind_ == NodeKind::prop || kind_ == NodeKind::neg_prop; }
  bool is_atom() const noexcept {
    return is_literal() || kind_ == NodeKind::inclusion || kind_ == NodeKind::dep;
  }

  friend FormulaPtr prop(std::string name);
  friend FormulaPtr neg(std::string name);
  friend FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  friend FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  friend FormulaPtr inclusion(std::vector<std::string> lhs, std::vector<std::string> rhs);
  friend FormulaPtr box(FormulaPtr f);
  friend FormulaPtr diamond(FormulaPtr f);
  friend FormulaPtr dep(std::vector<std::string> controllers, std::string target);
  friend FormulaPtr forall_prop(std::string p, FormulaPtr f);
  friend FormulaPtr exists_prop(std::string p, FormulaPtr f);

private:
  NodeKind kind_;
  std::string name_;
  std::vector<std::string> lhs_;
  std::vector<std::string> rhs_;
  FormulaPtr left_;
  FormulaPtr right_;
  std::size_t size_ = 1;
  std::size_t depth_ = 0;
  bool has_inclusion_ = false;
  bool has_modality_ = false;
  bool has_quantified_layer_ = false;
};

FormulaPtr prop(std::string name);
FormulaPtr neg(std::string name);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
/// Throws ArityError unless both sides have the same positive length.
FormulaPtr inclusion(std::vector<std::string> lhs, std::vector<std::string> rhs);
/// Throws PreconditionError if `f` contains dep atoms or quantifiers.
FormulaPtr box(FormulaPtr f);
FormulaPtr diamond(FormulaPtr f);
FormulaPtr dep(std::vector<std::string> controllers, std::string target);
FormulaPtr forall_prop(std::string p, FormulaPtr f);
FormulaPtr exists_prop(std::string p, FormulaPtr f);

/// Left-nested conjunction ((f0 & f1) & f2) ...; `fs` must be nonempty.
FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);
FormulaPtr disj_all(const std::vector<FormulaPtr>& fs);

/// Dual of an inclusion-free, quantifier-free formula, pushed to the
/// literals (classical negation in negation normal form).
FormulaPtr negate_nnf(const FormulaPtr& f);
/// (!a | b) & (a | !b), with the negations pushed inward.
FormulaPtr iff(const FormulaPtr& a, const FormulaPtr& b);

/// Deep structural equality.
bool operator==(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Every proposition symbol mentioned anywhere in `f` (literals, atoms,
/// quantified variables).
std::set<std::string> propositions(const Formula& f);

/// True for formulas of modal inclusion logic proper (no dep atoms, no
/// propositional quantifiers).
inline bool is_minc(const Formula& f) { return !f.has_quantified_layer(); }

FormulaPtr parse_minc(std::string_view text);
std::string print_minc(const Formula& f);
inline std::string print_minc(const FormulaPtr& f) { return print_minc(*f); }

/// One entry per syntactic occurrence, in pre-order.
struct SubformulaEntry {
  std::size_t id = 0;
  FormulaPtr node;
  /// Fresh proposition p_phi naming this occurrence.
  std::string fresh_name;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
};

class SubformulaTable {
public:
  SubformulaTable() = default;
  explicit SubformulaTable(std::vector<SubformulaEntry> entries)
      : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const SubformulaEntry& operator[](std::size_t id) const { return entries_.at(id); }
  const std::vector<SubformulaEntry>& entries() const noexcept { return entries_; }
  const FormulaPtr& root() const { return entries_.at(0).node; }
  const std::string& fresh_name(std::size_t id) const { return entries_.at(id).fresh_name; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

private:
  std::vector<SubformulaEntry> entries_;
};

/// Occurrence-distinguishing subformula table; fresh names are "sub<id>"
/// (prefixed with underscores if that would clash with a proposition of f).
/// Throws PreconditionError on dep atoms and quantifiers.
SubformulaTable subformulas(const FormulaPtr& f);

} // namespace minc
