#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace minc {

/// The two variables of the two-variable counting fragment.
enum class FoVar { x, y };

inline FoVar other(FoVar v) { return v == FoVar::x ? FoVar::y : FoVar::x; }
inline const char* var_name(FoVar v) { return v == FoVar::x ? "x" : "y"; }

enum class FoKind {
  unary,     // P(v)
  binary,    // R(v, w)
  negation,
  conj,
  disj,
  implies,
  exists,
  forall,
  exists_one, // there is exactly one v with ...
};

class FoFormula;
using FoPtr = std::shared_ptr<const FoFormula>;

class FoFormula {
  struct Key {};

public:
  FoFormula(Key, FoKind kind, std::string pred, FoVar v1, FoVar v2, FoPtr left, FoPtr right);

  FoKind kind() const noexcept { return kind_; }
  const std::string& predicate() const noexcept { return pred_; }
  /// Argument of a unary atom, first argument of a binary atom, or the
  /// bound variable of a quantifier.
  FoVar var() const noexcept { return v1_; }
  FoVar second_var() const noexcept { return v2_; }
  const FoPtr& left() const noexcept { return left_; }
  const FoPtr& right() const noexcept { return right_; }
  std::size_t size() const noexcept { return size_; }

  friend FoPtr fo_unary(std::string pred, FoVar v);
  friend FoPtr fo_binary(std::string pred, FoVar a, FoVar b);
  friend FoPtr fo_not(FoPtr f);
  friend FoPtr fo_and(FoPtr a, FoPtr b);
  friend FoPtr fo_or(FoPtr a, FoPtr b);
  friend FoPtr fo_implies(FoPtr a, FoPtr b);
  friend FoPtr fo_exists(FoVar v, FoPtr f);
  friend FoPtr fo_forall(FoVar v, FoPtr f);
  friend FoPtr fo_exists_one(FoVar v, FoPtr f);

private:
  static FoPtr make(FoKind kind, std::string pred, FoVar a, FoVar b, FoPtr l, FoPtr r);

  FoKind kind_;
  std::string pred_;
  FoVar v1_;
  FoVar v2_;
  FoPtr left_;
  FoPtr right_;
  std::size_t size_ = 1;
};

FoPtr fo_unary(std::string pred, FoVar v);
FoPtr fo_binary(std::string pred, FoVar a, FoVar b);
FoPtr fo_not(FoPtr f);
FoPtr fo_and(FoPtr a, FoPtr b);
FoPtr fo_or(FoPtr a, FoPtr b);
FoPtr fo_implies(FoPtr a, FoPtr b);
FoPtr fo_iff(FoPtr a, FoPtr b);
FoPtr fo_exists(FoVar v, FoPtr f);
FoPtr fo_forall(FoVar v, FoPtr f);
FoPtr fo_exists_one(FoVar v, FoPtr f);
FoPtr fo_and_all(const std::vector<FoPtr>& fs);

bool operator==(const FoFormula& a, const FoFormula& b);
bool equal(const FoPtr& a, const FoPtr& b);

/// Variables occurring anywhere (bound or free).
std::set<FoVar> variables(const FoFormula& f);
std::set<FoVar> free_variables(const FoFormula& f);
std::set<std::string> unary_predicates(const FoFormula& f);
std::set<std::string> binary_predicates(const FoFormula& f);

/// Concrete syntax: `P(x)`, `R(x,y)`, `!f`, `(f & g)`, `(f | g)`,
/// `(f -> g)`, `exists x. f`, `forall y. f`, `exists1 y. f`.
std::string print_fo(const FoFormula& f);
inline std::string print_fo(const FoPtr& f) { return print_fo(*f); }
FoPtr parse_fo(std::string_view text);

} // namespace minc
