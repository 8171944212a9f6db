#include "minc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

#include "minc/error.hpp"

namespace minc {

Formula::Formula(Key, NodeKind kind, std::string name, std::vector<std::string> lhs,
                 std::vector<std::string> rhs, FormulaPtr left, FormulaPtr right)
    : kind_(kind), name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)),
      left_(std::move(left)), right_(std::move(right)) {
  for (const auto* child : {left_.get(), right_.get()}) {
    if (child == nullptr) {
      continue;
    }
    size_ += child->size_;
    depth_ = std::max(depth_, child->depth_ + 1);
    has_inclusion_ = has_inclusion_ || child->has_inclusion_;
    has_modality_ = has_modality_ || child->has_modality_;
    has_quantified_layer_ = has_quantified_layer_ || child->has_quantified_layer_;
  }
  switch (kind_) {
  case NodeKind::inclusion:
    has_inclusion_ = true;
    break;
  case NodeKind::box:
  case NodeKind::diamond:
    has_modality_ = true;
    break;
  case NodeKind::dep:
  case NodeKind::forall:
  case NodeKind::exists:
    has_quantified_layer_ = true;
    break;
  default:
    break;
  }
}

namespace {

void require_name(const std::string& name) {
  if (name.empty()) {
    throw PreconditionError("proposition names must be nonempty");
  }
}

void require_operand(const FormulaPtr& f) {
  if (!f) {
    throw PreconditionError("null formula operand");
  }
}

} // namespace

FormulaPtr prop(std::string name) {
  require_name(name);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::prop, std::move(name),
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         nullptr, nullptr);
}

FormulaPtr neg(std::string name) {
  require_name(name);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::neg_prop, std::move(name),
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         nullptr, nullptr);
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  require_operand(a);
  require_operand(b);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::conj, std::string{},
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         std::move(a), std::move(b));
}

FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  require_operand(a);
  require_operand(b);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::disj, std::string{},
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         std::move(a), std::move(b));
}

FormulaPtr inclusion(std::vector<std::string> lhs, std::vector<std::string> rhs) {
  if (lhs.empty() || rhs.empty()) {
    throw ArityError("inclusion atom needs at least one proposition on each side");
  }
  if (lhs.size() != rhs.size()) {
    throw ArityError("arity mismatch in inclusion atom: " + std::to_string(lhs.size()) +
                     " vs " + std::to_string(rhs.size()));
  }
  for (const auto& p : lhs) {
    require_name(p);
  }
  for (const auto& p : rhs) {
    require_name(p);
  }
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::inclusion, std::string{},
                                         std::move(lhs), std::move(rhs), nullptr, nullptr);
}

FormulaPtr box(FormulaPtr f) {
  require_operand(f);
  if (f->has_quantified_layer()) {
    throw PreconditionError("dep atoms and quantifiers may not occur under box");
  }
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::box, std::string{},
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         std::move(f), nullptr);
}

FormulaPtr diamond(FormulaPtr f) {
  require_operand(f);
  if (f->has_quantified_layer()) {
    throw PreconditionError("dep atoms and quantifiers may not occur under dia");
  }
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::diamond, std::string{},
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         std::move(f), nullptr);
}

FormulaPtr dep(std::vector<std::string> controllers, std::string target) {
  for (const auto& p : controllers) {
    require_name(p);
  }
  require_name(target);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::dep, std::move(target),
                                         std::move(controllers), std::vector<std::string>{},
                                         nullptr, nullptr);
}

FormulaPtr forall_prop(std::string p, FormulaPtr f) {
  require_name(p);
  require_operand(f);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::forall, std::move(p),
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         std::move(f), nullptr);
}

FormulaPtr exists_prop(std::string p, FormulaPtr f) {
  require_name(p);
  require_operand(f);
  return std::make_shared<const Formula>(Formula::Key{}, NodeKind::exists, std::move(p),
                                         std::vector<std::string>{}, std::vector<std::string>{},
                                         std::move(f), nullptr);
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) {
    throw PreconditionError("conj_all of an empty list");
  }
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    out = conj(out, fs[i]);
  }
  return out;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) {
    throw PreconditionError("disj_all of an empty list");
  }
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    out = disj(out, fs[i]);
  }
  return out;
}

FormulaPtr negate_nnf(const FormulaPtr& f) {
  switch (f->kind()) {
  case NodeKind::prop:
    return neg(f->name());
  case NodeKind::neg_prop:
    return prop(f->name());
  case NodeKind::conj:
    return disj(negate_nnf(f->left()), negate_nnf(f->right()));
  case NodeKind::disj:
    return conj(negate_nnf(f->left()), negate_nnf(f->right()));
  case NodeKind::box:
    return diamond(negate_nnf(f->left()));
  case NodeKind::diamond:
    return box(negate_nnf(f->left()));
  default:
    throw PreconditionError("only inclusion-free modal formulas have a classical dual");
  }
}

FormulaPtr iff(const FormulaPtr& a, const FormulaPtr& b) {
  return conj(disj(negate_nnf(a), b), disj(a, negate_nnf(b)));
}

bool operator==(const Formula& a, const Formula& b) {
  if (&a == &b) {
    return true;
  }
  if (a.kind() != b.kind() || a.name() != b.name() || a.lhs() != b.lhs() || a.rhs() != b.rhs() ||
      a.size() != b.size()) {
    return false;
  }
  return equal(a.left(), b.left()) && equal(a.right(), b.right());
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  return *a == *b;
}

std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!g.name().empty()) {
      out.insert(g.name());
    }
    out.insert(g.lhs().begin(), g.lhs().end());
    out.insert(g.rhs().begin(), g.rhs().end());
    if (g.left()) {
      walk(*g.left());
    }
    if (g.right()) {
      walk(*g.right());
    }
  };
  walk(f);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void join(std::string& out, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += names[i];
  }
}

void print_into(std::string& out, const Formula& f);

// Operand of a prefix operator; inclusion atoms get parentheses so that
// "dia (q <= p)" reads the way it parses.
void print_operand(std::string& out, const Formula& f) {
  if (f.kind() == NodeKind::inclusion) {
    out += '(';
    print_into(out, f);
    out += ')';
  } else {
    print_into(out, f);
  }
}

void print_into(std::string& out, const Formula& f) {
  switch (f.kind()) {
  case NodeKind::prop:
    out += f.name();
    break;
  case NodeKind::neg_prop:
    out += '!';
    out += f.name();
    break;
  case NodeKind::conj:
  case NodeKind::disj:
    out += '(';
    print_into(out, *f.left());
    out += f.kind() == NodeKind::conj ? " & " : " | ";
    print_into(out, *f.right());
    out += ')';
    break;
  case NodeKind::inclusion:
    join(out, f.lhs());
    out += " <= ";
    join(out, f.rhs());
    break;
  case NodeKind::box:
    out += "box ";
    print_operand(out, *f.left());
    break;
  case NodeKind::diamond:
    out += "dia ";
    print_operand(out, *f.left());
    break;
  case NodeKind::dep:
    out += "dep(";
    join(out, f.lhs());
    out += "; ";
    out += f.name();
    out += ')';
    break;
  case NodeKind::forall:
  case NodeKind::exists:
    out += f.kind() == NodeKind::forall ? "forall " : "exists ";
    out += f.name();
    out += ' ';
    print_operand(out, *f.left());
    break;
  }
}

} // namespace

std::string print_minc(const Formula& f) {
  std::string out;
  print_into(out, f);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { ident, lparen, rparen, amp, bar, bang, subset, semi, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
    case '(':
      out.push_back({Tok::lparen, "(", start});
      ++i;
      continue;
    case ')':
      out.push_back({Tok::rparen, ")", start});
      ++i;
      continue;
    case '&':
      out.push_back({Tok::amp, "&", start});
      ++i;
      continue;
    case '|':
      out.push_back({Tok::bar, "|", start});
      ++i;
      continue;
    case '!':
      out.push_back({Tok::bang, "!", start});
      ++i;
      continue;
    case ';':
      out.push_back({Tok::semi, ";", start});
      ++i;
      continue;
    case '<':
      if (i + 1 < text.size() && text[i + 1] == '=') {
        out.push_back({Tok::subset, "<=", start});
        i += 2;
        continue;
      }
      throw ParseError("expected '<=' after '<'", start);
    default:
      break;
    }
    if (!is_ident_start(c)) {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    while (i < text.size() && is_ident_char(text[i])) {
      ++i;
    }
    out.push_back({Tok::ident, std::string(text.substr(start, i - start)), start});
  }
  out.push_back({Tok::end, "", text.size()});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "box" || s == "dia" || s == "forall" || s == "exists" || s == "dep";
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  FormulaPtr parse_all() {
    // The outermost parentheses may be dropped: "p & !p".
    FormulaPtr f = parse_chain(parse_form());
    if (peek().kind != Tok::end) {
      throw ParseError("unexpected '" + peek().text + "' after formula", peek().pos);
    }
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
    return take();
  }

  std::string expect_name() {
    const Token& t = peek();
    if (t.kind != Tok::ident || is_keyword(t.text)) {
      throw ParseError("expected a proposition name", t.pos);
    }
    return take().text;
  }

  FormulaPtr parse_form() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::bang: {
      take();
      return neg(expect_name());
    }
    case Tok::lparen:
      return parse_parenthesized();
    case Tok::ident:
      break;
    default:
      throw ParseError("expected a formula", t.pos);
    }
    if (t.text == "box") {
      take();
      return box_at(t.pos, parse_form());
    }
    if (t.text == "dia") {
      take();
      return dia_at(t.pos, parse_form());
    }
    if (t.text == "forall" || t.text == "exists") {
      bool universal = take().text == "forall";
      std::string var = expect_name();
      FormulaPtr body = parse_form();
      return universal ? forall_prop(std::move(var), std::move(body))
                       : exists_prop(std::move(var), std::move(body));
    }
    if (t.text == "dep") {
      take();
      expect(Tok::lparen, "'(' after dep");
      std::vector<std::string> controllers;
      while (peek().kind == Tok::ident) {
        controllers.push_back(expect_name());
      }
      expect(Tok::semi, "';' in dep atom");
      std::string target = expect_name();
      expect(Tok::rparen, "')' closing dep atom");
      return dep(std::move(controllers), std::move(target));
    }
    return parse_atom();
  }

  FormulaPtr box_at(std::size_t pos, FormulaPtr f) {
    try {
      return box(std::move(f));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  FormulaPtr dia_at(std::size_t pos, FormulaPtr f) {
    try {
      return diamond(std::move(f));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  FormulaPtr parse_atom() {
    std::size_t start = peek().pos;
    std::vector<std::string> lhs;
    while (peek().kind == Tok::ident && !is_keyword(peek().text)) {
      lhs.push_back(take().text);
    }
    if (peek().kind != Tok::subset) {
      if (lhs.size() == 1) {
        return prop(std::move(lhs.front()));
      }
      throw ParseError("expected '<=' in inclusion atom", peek().pos);
    }
    take();
    std::vector<std::string> rhs;
    while (peek().kind == Tok::ident && !is_keyword(peek().text)) {
      rhs.push_back(take().text);
    }
    if (rhs.empty()) {
      throw ParseError("expected propositions after '<='", peek().pos);
    }
    if (lhs.size() != rhs.size()) {
      throw ArityError("arity mismatch in inclusion atom: " + std::to_string(lhs.size()) +
                           " vs " + std::to_string(rhs.size()),
                       start);
    }
    return inclusion(std::move(lhs), std::move(rhs));
  }

  FormulaPtr parse_parenthesized() {
    expect(Tok::lparen, "'('");
    FormulaPtr f = parse_form();
    if (peek().kind == Tok::rparen) {
      take();
      return f;
    }
    if (peek().kind != Tok::amp && peek().kind != Tok::bar) {
      throw ParseError("expected '&', '|' or ')'", peek().pos);
    }
    f = parse_chain(std::move(f));
    expect(Tok::rparen, "')'");
    return f;
  }

  FormulaPtr parse_chain(FormulaPtr f) {
    const Tok op = peek().kind;
    if (op != Tok::amp && op != Tok::bar) {
      return f;
    }
    while (peek().kind == op) {
      take();
      FormulaPtr g = parse_form();
      f = op == Tok::amp ? conj(std::move(f), std::move(g)) : disj(std::move(f), std::move(g));
    }
    if (peek().kind == Tok::amp || peek().kind == Tok::bar) {
      throw ParseError("mixing '&' and '|' needs parentheses", peek().pos);
    }
    return f;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace

FormulaPtr parse_minc(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Subformula table

SubformulaTable subformulas(const FormulaPtr& f) {
  if (!f) {
    throw PreconditionError("null formula");
  }
  if (f->has_quantified_layer()) {
    throw PreconditionError("subformula tables are defined for modal inclusion logic only");
  }
  const auto props = propositions(*f);
  std::string prefix = "sub";
  auto clashes = [&](const std::string& pre) {
    for (const auto& p : props) {
      if (p.size() > pre.size() && p.compare(0, pre.size(), pre) == 0 &&
          std::all_of(p.begin() + static_cast<std::ptrdiff_t>(pre.size()), p.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return true;
      }
    }
    return false;
  };
  while (clashes(prefix)) {
    prefix.insert(prefix.begin(), '_');
  }

  std::vector<SubformulaEntry> entries;
  entries.reserve(f->size());
  std::function<std::size_t(const FormulaPtr&, std::optional<std::size_t>)> visit =
      [&](const FormulaPtr& node, std::optional<std::size_t> parent) {
        std::size_t id = entries.size();
        entries.push_back({id, node, prefix + std::to_string(id), parent, {}});
        for (const auto* child : {&node->left(), &node->right()}) {
          if (*child) {
            std::size_t cid = visit(*child, id);
            entries[id].children.push_back(cid);
          }
        }
        return id;
      };
  visit(f, std::nullopt);
  return SubformulaTable(std::move(entries));
}

} // namespace minc
