#include "minc/lformula.hpp"

#include <cctype>
#include <functional>

#include "minc/error.hpp"

namespace minc {

LFormula::LFormula(Key, LKind kind, std::string name, LPtr left, LPtr right)
    : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {
  if (left_) {
    size_ += left_->size_;
  }
  if (right_) {
    size_ += right_->size_;
  }
}

namespace {

void require(const LPtr& f) {
  if (!f) {
    throw PreconditionError("null L-formula operand");
  }
}

} // namespace

LPtr lprop(std::string name) {
  if (name.empty()) {
    throw PreconditionError("proposition names must be nonempty");
  }
  return std::make_shared<const LFormula>(LFormula::Key{}, LKind::prop, std::move(name), nullptr,
                                          nullptr);
}

LPtr lnot(LPtr f) {
  require(f);
  return std::make_shared<const LFormula>(LFormula::Key{}, LKind::negation, std::string{},
                                          std::move(f), nullptr);
}

LPtr land(LPtr a, LPtr b) {
  require(a);
  require(b);
  return std::make_shared<const LFormula>(LFormula::Key{}, LKind::conj, std::string{},
                                          std::move(a), std::move(b));
}

LPtr ldiamond(std::string rel, LPtr f) {
  require(f);
  if (rel.empty() || rel == "E") {
    throw PreconditionError("invalid relation name '" + rel + "'");
  }
  return std::make_shared<const LFormula>(LFormula::Key{}, LKind::diamond, std::move(rel),
                                          std::move(f), nullptr);
}

LPtr lconverse(std::string rel, LPtr f) {
  require(f);
  if (rel.empty() || rel == "E") {
    throw PreconditionError("invalid relation name '" + rel + "'");
  }
  return std::make_shared<const LFormula>(LFormula::Key{}, LKind::converse, std::move(rel),
                                          std::move(f), nullptr);
}

LPtr lglobal(LPtr f) {
  require(f);
  return std::make_shared<const LFormula>(LFormula::Key{}, LKind::global, std::string{},
                                          std::move(f), nullptr);
}

LPtr lor(LPtr a, LPtr b) { return lnot(land(lnot(std::move(a)), lnot(std::move(b)))); }
LPtr limplies(LPtr a, LPtr b) { return lnot(land(std::move(a), lnot(std::move(b)))); }
LPtr liff(LPtr a, LPtr b) { return land(limplies(a, b), limplies(b, a)); }
LPtr lbox(std::string rel, LPtr f) { return lnot(ldiamond(std::move(rel), lnot(std::move(f)))); }
LPtr lglobal_box(LPtr f) { return lnot(lglobal(lnot(std::move(f)))); }

LPtr land_all(const std::vector<LPtr>& fs) {
  if (fs.empty()) {
    throw PreconditionError("land_all of an empty list");
  }
  LPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    out = land(out, fs[i]);
  }
  return out;
}

bool operator==(const LFormula& a, const LFormula& b) {
  if (&a == &b) {
    return true;
  }
  return a.kind() == b.kind() && a.name() == b.name() && a.size() == b.size() &&
         equal(a.left(), b.left()) && equal(a.right(), b.right());
}

bool equal(const LPtr& a, const LPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  return *a == *b;
}

namespace {

void collect(const LFormula& f, std::set<std::string>& rels, std::set<std::string>& props) {
  switch (f.kind()) {
  case LKind::prop:
    props.insert(f.name());
    break;
  case LKind::diamond:
  case LKind::converse:
    rels.insert(f.name());
    break;
  default:
    break;
  }
  if (f.left()) {
    collect(*f.left(), rels, props);
  }
  if (f.right()) {
    collect(*f.right(), rels, props);
  }
}

} // namespace

std::set<std::string> relation_names(const LFormula& f) {
  std::set<std::string> rels, props;
  collect(f, rels, props);
  return rels;
}

std::set<std::string> proposition_names(const LFormula& f) {
  std::set<std::string> rels, props;
  collect(f, rels, props);
  return props;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_into(std::string& out, const LFormula& f) {
  switch (f.kind()) {
  case LKind::prop:
    out += f.name();
    return;
  case LKind::conj:
    out += '(';
    print_into(out, *f.left());
    out += " & ";
    print_into(out, *f.right());
    out += ')';
    return;
  case LKind::diamond:
    out += '<' + f.name() + "> ";
    print_into(out, *f.left());
    return;
  case LKind::converse:
    out += '<' + f.name() + "^-1> ";
    print_into(out, *f.left());
    return;
  case LKind::global:
    out += "<E> ";
    print_into(out, *f.left());
    return;
  case LKind::negation:
    break;
  }
  const LFormula& g = *f.left();
  if (g.kind() == LKind::global && g.left()->kind() == LKind::negation) {
    out += "[E] ";
    print_into(out, *g.left()->left());
    return;
  }
  if (g.kind() == LKind::diamond && g.left()->kind() == LKind::negation) {
    out += '[' + g.name() + "] ";
    print_into(out, *g.left()->left());
    return;
  }
  if (g.kind() == LKind::conj && g.right()->kind() == LKind::negation) {
    const bool is_or = g.left()->kind() == LKind::negation;
    out += '(';
    print_into(out, is_or ? *g.left()->left() : *g.left());
    out += is_or ? " | " : " -> ";
    print_into(out, *g.right()->left());
    out += ')';
    return;
  }
  out += '!';
  print_into(out, g);
}

} // namespace

std::string print_l(const LFormula& f) {
  std::string out;
  print_into(out, f);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class LParser {
public:
  explicit LParser(std::string_view text) : text_(text) {}

  LPtr parse_all() {
    LPtr f = parse_form();
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

  LPtr parse_form() {
    skip_ws();
    std::size_t start = pos_;
    if (accept("!")) {
      return lnot(parse_form());
    }
    if (accept("<")) {
      std::string rel = ident();
      if (rel == "E") {
        expect(">");
        return lglobal(parse_form());
      }
      if (accept("^-1")) {
        expect(">");
        return lconverse(std::move(rel), parse_form());
      }
      expect(">");
      return ldiamond(std::move(rel), parse_form());
    }
    if (accept("[")) {
      std::string rel = ident();
      expect("]");
      if (rel == "E") {
        return lglobal_box(parse_form());
      }
      return lbox(std::move(rel), parse_form());
    }
    if (accept("(")) {
      LPtr a = parse_form();
      if (accept(")")) {
        return a;
      }
      if (accept("&")) {
        LPtr b = parse_form();
        expect(")");
        return land(std::move(a), std::move(b));
      }
      if (accept("|")) {
        LPtr b = parse_form();
        expect(")");
        return lor(std::move(a), std::move(b));
      }
      if (accept("->")) {
        LPtr b = parse_form();
        expect(")");
        return limplies(std::move(a), std::move(b));
      }
      throw ParseError("expected '&', '|', '->' or ')'", pos_);
    }
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", start);
    }
    return lprop(ident());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

LPtr parse_l(std::string_view text) { return LParser(text).parse_all(); }

} // namespace minc
