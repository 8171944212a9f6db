#include "minc/fo.hpp"

#include <cctype>

#include "minc/error.hpp"

namespace minc {

FoFormula::FoFormula(Key, FoKind kind, std::string pred, FoVar v1, FoVar v2, FoPtr left,
                     FoPtr right)
    : kind_(kind), pred_(std::move(pred)), v1_(v1), v2_(v2), left_(std::move(left)),
      right_(std::move(right)) {
  if (left_) {
    size_ += left_->size_;
  }
  if (right_) {
    size_ += right_->size_;
  }
}

FoPtr FoFormula::make(FoKind kind, std::string pred, FoVar a, FoVar b, FoPtr l, FoPtr r) {
  return std::make_shared<const FoFormula>(Key{}, kind, std::move(pred), a, b, std::move(l),
                                           std::move(r));
}

namespace {

void require(const FoPtr& f) {
  if (!f) {
    throw PreconditionError("null first-order operand");
  }
}

} // namespace

FoPtr fo_unary(std::string pred, FoVar v) {
  if (pred.empty()) {
    throw PreconditionError("predicate names must be nonempty");
  }
  return FoFormula::make(FoKind::unary, std::move(pred), v, v, nullptr, nullptr);
}

FoPtr fo_binary(std::string pred, FoVar a, FoVar b) {
  if (pred.empty()) {
    throw PreconditionError("predicate names must be nonempty");
  }
  return FoFormula::make(FoKind::binary, std::move(pred), a, b, nullptr, nullptr);
}

FoPtr fo_not(FoPtr f) {
  require(f);
  return FoFormula::make(FoKind::negation, {}, FoVar::x, FoVar::x, std::move(f), nullptr);
}

FoPtr fo_and(FoPtr a, FoPtr b) {
  require(a);
  require(b);
  return FoFormula::make(FoKind::conj, {}, FoVar::x, FoVar::x, std::move(a), std::move(b));
}

FoPtr fo_or(FoPtr a, FoPtr b) {
  require(a);
  require(b);
  return FoFormula::make(FoKind::disj, {}, FoVar::x, FoVar::x, std::move(a), std::move(b));
}

FoPtr fo_implies(FoPtr a, FoPtr b) {
  require(a);
  require(b);
  return FoFormula::make(FoKind::implies, {}, FoVar::x, FoVar::x, std::move(a), std::move(b));
}

FoPtr fo_iff(FoPtr a, FoPtr b) { return fo_and(fo_implies(a, b), fo_implies(b, a)); }

FoPtr fo_exists(FoVar v, FoPtr f) {
  require(f);
  return FoFormula::make(FoKind::exists, {}, v, v, std::move(f), nullptr);
}

FoPtr fo_forall(FoVar v, FoPtr f) {
  require(f);
  return FoFormula::make(FoKind::forall, {}, v, v, std::move(f), nullptr);
}

FoPtr fo_exists_one(FoVar v, FoPtr f) {
  require(f);
  return FoFormula::make(FoKind::exists_one, {}, v, v, std::move(f), nullptr);
}

FoPtr fo_and_all(const std::vector<FoPtr>& fs) {
  if (fs.empty()) {
    throw PreconditionError("fo_and_all of an empty list");
  }
  FoPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    out = fo_and(out, fs[i]);
  }
  return out;
}

bool operator==(const FoFormula& a, const FoFormula& b) {
  if (&a == &b) {
    return true;
  }
  return a.kind() == b.kind() && a.predicate() == b.predicate() && a.var() == b.var() &&
         a.second_var() == b.second_var() && a.size() == b.size() && equal(a.left(), b.left()) &&
         equal(a.right(), b.right());
}

bool equal(const FoPtr& a, const FoPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  return *a == *b;
}

namespace {

bool is_quantifier(FoKind k) {
  return k == FoKind::exists || k == FoKind::forall || k == FoKind::exists_one;
}

void collect_vars(const FoFormula& f, std::set<FoVar>& out) {
  switch (f.kind()) {
  case FoKind::unary:
    out.insert(f.var());
    return;
  case FoKind::binary:
    out.insert(f.var());
    out.insert(f.second_var());
    return;
  default:
    break;
  }
  if (is_quantifier(f.kind())) {
    out.insert(f.var());
  }
  if (f.left()) {
    collect_vars(*f.left(), out);
  }
  if (f.right()) {
    collect_vars(*f.right(), out);
  }
}

void collect_free(const FoFormula& f, std::set<FoVar> bound, std::set<FoVar>& out) {
  switch (f.kind()) {
  case FoKind::unary:
    if (!bound.count(f.var())) {
      out.insert(f.var());
    }
    return;
  case FoKind::binary:
    for (FoVar v : {f.var(), f.second_var()}) {
      if (!bound.count(v)) {
        out.insert(v);
      }
    }
    return;
  default:
    break;
  }
  if (is_quantifier(f.kind())) {
    bound.insert(f.var());
  }
  if (f.left()) {
    collect_free(*f.left(), bound, out);
  }
  if (f.right()) {
    collect_free(*f.right(), bound, out);
  }
}

void collect_preds(const FoFormula& f, FoKind kind, std::set<std::string>& out) {
  if (f.kind() == kind) {
    out.insert(f.predicate());
  }
  if (f.left()) {
    collect_preds(*f.left(), kind, out);
  }
  if (f.right()) {
    collect_preds(*f.right(), kind, out);
  }
}

} // namespace

std::set<FoVar> variables(const FoFormula& f) {
  std::set<FoVar> out;
  collect_vars(f, out);
  return out;
}

std::set<FoVar> free_variables(const FoFormula& f) {
  std::set<FoVar> out;
  collect_free(f, {}, out);
  return out;
}

std::set<std::string> unary_predicates(const FoFormula& f) {
  std::set<std::string> out;
  collect_preds(f, FoKind::unary, out);
  return out;
}

std::set<std::string> binary_predicates(const FoFormula& f) {
  std::set<std::string> out;
  collect_preds(f, FoKind::binary, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_into(std::string& out, const FoFormula& f) {
  switch (f.kind()) {
  case FoKind::unary:
    out += f.predicate() + '(' + var_name(f.var()) + ')';
    return;
  case FoKind::binary:
    out += f.predicate() + '(' + var_name(f.var()) + ',' + var_name(f.second_var()) + ')';
    return;
  case FoKind::negation:
    out += '!';
    print_into(out, *f.left());
    return;
  case FoKind::conj:
  case FoKind::disj:
  case FoKind::implies:
    out += '(';
    print_into(out, *f.left());
    out += f.kind() == FoKind::conj ? " & " : f.kind() == FoKind::disj ? " | " : " -> ";
    print_into(out, *f.right());
    out += ')';
    return;
  case FoKind::exists:
  case FoKind::forall:
  case FoKind::exists_one:
    out += f.kind() == FoKind::exists ? "exists " : f.kind() == FoKind::forall ? "forall "
                                                                               : "exists1 ";
    out += var_name(f.var());
    out += ". ";
    print_into(out, *f.left());
    return;
  }
}

} // namespace

std::string print_fo(const FoFormula& f) {
  std::string out;
  print_into(out, f);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FoParser {
public:
  explicit FoParser(std::string_view text) : text_(text) {}

  FoPtr parse_all() {
    FoPtr f = parse_form();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return f;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) {
      throw ParseError("expected '" + std::string(tok) + "'", pos_);
    }
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) {
      throw ParseError("expected a name", start);
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  FoVar variable() {
    std::size_t start = pos_;
    std::string v = ident();
    if (v == "x") {
      return FoVar::x;
    }
    if (v == "y") {
      return FoVar::y;
    }
    throw ParseError("only the variables x and y are available", start);
  }

  FoPtr parse_form() {
    if (accept("!")) {
      return fo_not(parse_form());
    }
    if (accept("(")) {
      FoPtr a = parse_form();
      if (accept(")")) {
        return a;
      }
      if (accept("&")) {
        FoPtr b = parse_form();
        expect(")");
        return fo_and(std::move(a), std::move(b));
      }
      if (accept("|")) {
        FoPtr b = parse_form();
        expect(")");
        return fo_or(std::move(a), std::move(b));
      }
      if (accept("->")) {
        FoPtr b = parse_form();
        expect(")");
        return fo_implies(std::move(a), std::move(b));
      }
      throw ParseError("expected '&', '|', '->' or ')'", pos_);
    }
    skip_ws();
    std::size_t start = pos_;
    std::string name = ident();
    if (name == "exists" || name == "forall" || name == "exists1") {
      FoVar v = variable();
      expect(".");
      FoPtr body = parse_form();
      if (name == "exists") {
        return fo_exists(v, std::move(body));
      }
      if (name == "forall") {
        return fo_forall(v, std::move(body));
      }
      return fo_exists_one(v, std::move(body));
    }
    if (!accept("(")) {
      throw ParseError("expected '(' after predicate '" + name + "'", start);
    }
    FoVar a = variable();
    if (accept(",")) {
      FoVar b = variable();
      expect(")");
      return fo_binary(std::move(name), a, b);
    }
    expect(")");
    return fo_unary(std::move(name), a);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

FoPtr parse_fo(std::string_view text) { return FoParser(text).parse_all(); }

} // namespace minc
