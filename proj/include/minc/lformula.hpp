#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace minc {

/// Multimodal language with converse and global modalities:
///   phi ::= p | !phi | (phi & phi) | <R>phi | <R^-1>phi | <E>phi
/// Box, disjunction, implication and [E] are abbreviations built from
/// these six constructors.
enum class LKind { prop, negation, conj, diamond, converse, global };

class LFormula;
using LPtr = std::shared_ptr<const LFormula>;

class LFormula {
  struct Key {};

public:
  LFormula(Key, LKind kind, std::string name, LPtr left, LPtr right);

  LKind kind() const noexcept { return kind_; }
  /// Proposition name, or relation name of <R> / <R^-1>.
  const std::string& name() const noexcept { return name_; }
  const LPtr& left() const noexcept { return left_; }
  const LPtr& right() const noexcept { return right_; }
  std::size_t size() const noexcept { return size_; }

  friend LPtr lprop(std::string name);
  friend LPtr lnot(LPtr f);
  friend LPtr land(LPtr a, LPtr b);
  friend LPtr ldiamond(std::string rel, LPtr f);
  friend LPtr lconverse(std::string rel, LPtr f);
  friend LPtr lglobal(LPtr f);

private:
  LKind kind_;
  std::string name_;
  LPtr left_;
  LPtr right_;
  std::size_t size_ = 1;
};

LPtr lprop(std::string name);
LPtr lnot(LPtr f);
LPtr land(LPtr a, LPtr b);
/// <R> f
LPtr ldiamond(std::string rel, LPtr f);
/// <R^-1> f
LPtr lconverse(std::string rel, LPtr f);
/// <E> f
LPtr lglobal(LPtr f);

LPtr lor(LPtr a, LPtr b);
LPtr limplies(LPtr a, LPtr b);
LPtr liff(LPtr a, LPtr b);
/// [R] f = !<R>!f
LPtr lbox(std::string rel, LPtr f);
/// [E] f = !<E>!f
LPtr lglobal_box(LPtr f);
/// Left-nested conjunction of a nonempty list.
LPtr land_all(const std::vector<LPtr>& fs);

bool operator==(const LFormula& a, const LFormula& b);
bool equal(const LPtr& a, const LPtr& b);

std::set<std::string> relation_names(const LFormula& f);
std::set<std::string> proposition_names(const LFormula& f);

/// Concrete syntax: `p`, `!f`, `(f & g)`, `(f | g)`, `(f -> g)`, `<R> f`,
/// `<R^-1> f`, `<E> f`, `[R] f`, `[E] f`. The printer recognises the
/// abbreviations, so print/parse round-trips on the core AST.
std::string print_l(const LFormula& f);
inline std::string print_l(const LPtr& f) { return print_l(*f); }
LPtr parse_l(std::string_view text);

} // namespace minc
