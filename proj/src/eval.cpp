#include "minc/eval.hpp"

#include <algorithm>

#include "minc/error.hpp"

namespace minc {

const char* semantics_name(Semantics s) { return s == Semantics::lax ? "lax" : "strict"; }

// ---------------------------------------------------------------------------
// Pointwise Kripke semantics

namespace {

void require_kripke_formula(const Formula& f) {
  if (f.has_inclusion() || f.has_quantified_layer()) {
    throw PreconditionError("pointwise evaluation needs an inclusion-free modal formula, got " +
                            print_minc(f));
  }
}

Team extension_of(const KripkeModel& m, const Formula& f) {
  switch (f.kind()) {
  case NodeKind::prop:
    return m.valuation(f.name());
  case NodeKind::neg_prop:
    return m.valuation(f.name()).complement();
  case NodeKind::conj:
    return extension_of(m, *f.left()) & extension_of(m, *f.right());
  case NodeKind::disj:
    return extension_of(m, *f.left()) | extension_of(m, *f.right());
  case NodeKind::box: {
    const Team body = extension_of(m, *f.left());
    Team out(m.size());
    for (std::size_t w = 0; w < m.size(); ++w) {
      if (m.successors(kAccessibility, w).subset_of(body)) {
        out.insert(w);
      }
    }
    return out;
  }
  case NodeKind::diamond: {
    const Team body = extension_of(m, *f.left());
    Team out(m.size());
    for (std::size_t w = 0; w < m.size(); ++w) {
      if (m.successors(kAccessibility, w).intersects(body)) {
        out.insert(w);
      }
    }
    return out;
  }
  default:
    throw PreconditionError("pointwise evaluation needs an inclusion-free modal formula");
  }
}

bool holds_at(const KripkeModel& m, std::size_t w, const Formula& f) {
  switch (f.kind()) {
  case NodeKind::prop:
    return m.holds(f.name(), w);
  case NodeKind::neg_prop:
    return !m.holds(f.name(), w);
  case NodeKind::conj:
    return holds_at(m, w, *f.left()) && holds_at(m, w, *f.right());
  case NodeKind::disj:
    return holds_at(m, w, *f.left()) || holds_at(m, w, *f.right());
  case NodeKind::box:
    for (std::size_t v : m.successors(kAccessibility, w).members()) {
      if (!holds_at(m, v, *f.left())) {
        return false;
      }
    }
    return true;
  case NodeKind::diamond:
    for (std::size_t v : m.successors(kAccessibility, w).members()) {
      if (holds_at(m, v, *f.left())) {
        return true;
      }
    }
    return false;
  default:
    throw PreconditionError("pointwise evaluation needs an inclusion-free modal formula");
  }
}

} // namespace

bool eval_kripke(const KripkeModel& m, std::size_t w, const FormulaPtr& f) {
  require_kripke_formula(*f);
  if (w >= m.size()) {
    throw PreconditionError("world index out of range");
  }
  return holds_at(m, w, *f);
}

Team kripke_extension(const KripkeModel& m, const FormulaPtr& f) {
  require_kripke_formula(*f);
  return extension_of(m, *f);
}

// ---------------------------------------------------------------------------
// Team semantics

namespace {
constexpr std::size_t kDenseLimit = 12;
}

struct TeamEvaluator::Memo {
  bool dense = false;
  // Dense tables: 0 unknown, 1 false, 2 true.
  std::vector<std::vector<std::uint8_t>> table;
  std::vector<std::unordered_map<Team, bool, TeamHash>> maps;
};

TeamEvaluator::TeamEvaluator(const KripkeModel& m, FormulaPtr f, Semantics s, EvalOptions opts)
    : model_(m), root_(std::move(f)), semantics_(s), opts_(opts), memo_(std::make_unique<Memo>()) {
  if (!root_) {
    throw PreconditionError("null formula");
  }
  if (root_->has_quantified_layer()) {
    throw PreconditionError("team evaluation of modal inclusion logic does not cover dep atoms "
                            "or propositional quantifiers");
  }
  if (root_->has_modality() && !m.has_relation(kAccessibility)) {
    throw UnknownRelation(kAccessibility);
  }
  compile(root_);
  memo_->dense = m.size() <= kDenseLimit;
  if (memo_->dense) {
    memo_->table.assign(nodes_.size(), {});
  } else {
    memo_->maps.resize(nodes_.size());
  }
}

TeamEvaluator::~TeamEvaluator() = default;

std::size_t TeamEvaluator::compile(const FormulaPtr& f) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{f, {}, !f->has_inclusion(), std::nullopt, {}, {}});
  if (f->kind() == NodeKind::inclusion) {
    if (f->lhs().size() > 64) {
      throw PreconditionError("inclusion atoms wider than 64 are not supported");
    }
    auto keys = [&](const std::vector<std::string>& props) {
      std::vector<std::uint64_t> out(model_.size(), 0);
      for (std::size_t i = 0; i < props.size(); ++i) {
        for (std::size_t w : model_.valuation(props[i]).members()) {
          out[w] |= std::uint64_t{1} << i;
        }
      }
      return out;
    };
    auto lhs = keys(f->lhs());
    auto rhs = keys(f->rhs());
    nodes_[id].lhs_keys = std::move(lhs);
    nodes_[id].rhs_keys = std::move(rhs);
  }
  std::vector<std::size_t> kids;
  if (f->left()) {
    kids.push_back(compile(f->left()));
  }
  if (f->right()) {
    kids.push_back(compile(f->right()));
  }
  nodes_[id].kids = std::move(kids);
  return id;
}

const Team& TeamEvaluator::extension(std::size_t id) {
  Node& n = nodes_[id];
  if (!n.extension) {
    n.extension = extension_of(model_, *n.f);
  }
  return *n.extension;
}

bool TeamEvaluator::eval_node(std::size_t id, const Team& t) {
  if (id >= nodes_.size()) {
    throw PreconditionError("occurrence id out of range");
  }
  if (t.universe() != model_.size()) {
    throw PreconditionError("team is over a different world set");
  }
  if (opts_.flatness_shortcut && nodes_[id].flat) {
    return t.subset_of(extension(id));
  }
  if (memo_->dense) {
    auto& row = memo_->table[id];
    if (row.empty()) {
      row.assign(std::size_t{1} << model_.size(), 0);
    }
    auto& slot = row[t.to_mask()];
    if (slot == 0) {
      const bool r = compute(id, t);
      memo_->table[id][t.to_mask()] = r ? 2 : 1;
      return r;
    }
    return slot == 2;
  }
  auto& map = memo_->maps[id];
  if (auto it = map.find(t); it != map.end()) {
    return it->second;
  }
  const bool r = compute(id, t);
  memo_->maps[id].emplace(t, r);
  return r;
}

bool TeamEvaluator::inclusion_holds(std::size_t id, const Team& t) const {
  const Node& n = nodes_[id];
  const auto members = t.members();
  std::vector<std::uint64_t> have;
  have.reserve(members.size());
  for (std::size_t w : members) {
    have.push_back(n.rhs_keys[w]);
  }
  std::sort(have.begin(), have.end());
  for (std::size_t w : members) {
    if (!std::binary_search(have.begin(), have.end(), n.lhs_keys[w])) {
      return false;
    }
  }
  return true;
}

template <class Visit>
bool TeamEvaluator::for_each_selector(const Team& t, Visit&& visit) {
  const auto members = t.members();
  std::vector<std::vector<std::size_t>> options;
  options.reserve(members.size());
  for (std::size_t w : members) {
    options.push_back(model_.successors(kAccessibility, w).members());
    if (options.back().empty()) {
      return false;
    }
  }
  std::vector<std::size_t> choice(members.size(), 0);
  while (true) {
    Team image(model_.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      image.insert(options[i][choice[i]]);
    }
    if (visit(members, options, choice, image)) {
      return true;
    }
    // Odometer with the last member varying fastest.
    std::size_t i = members.size();
    while (i > 0) {
      --i;
      if (++choice[i] < options[i].size()) {
        break;
      }
      choice[i] = 0;
      if (i == 0) {
        return false;
      }
    }
    if (members.empty()) {
      return false;
    }
  }
}

bool TeamEvaluator::compute(std::size_t id, const Team& t) {
  ++work_;
  const Node& n = nodes_[id];
  const Formula& f = *n.f;
  switch (f.kind()) {
  case NodeKind::prop:
    return t.subset_of(model_.valuation(f.name()));
  case NodeKind::neg_prop:
    return !t.intersects(model_.valuation(f.name()));
  case NodeKind::conj:
    return eval_node(n.kids[0], t) && eval_node(n.kids[1], t);
  case NodeKind::disj:
    return find_split(id, t).has_value();
  case NodeKind::inclusion:
    return inclusion_holds(id, t);
  case NodeKind::box:
    return eval_node(n.kids[0], successors(model_, kAccessibility, t));
  case NodeKind::diamond:
    return find_successor(id, t).has_value();
  default:
    throw PreconditionError("unsupported node in team evaluation");
  }
}

std::optional<std::pair<Team, Team>> TeamEvaluator::find_split(std::size_t id, const Team& t) {
  if (nodes_.at(id).f->kind() != NodeKind::disj) {
    throw PreconditionError("find_split needs a disjunction occurrence");
  }
  const std::size_t l = nodes_[id].kids[0];
  const std::size_t r = nodes_[id].kids[1];
  std::optional<std::pair<Team, Team>> found;
  for_each_subset(t, [&](const Team& s) {
    if (!eval_node(l, s)) {
      return false;
    }
    const Team rest = t - s;
    if (semantics_ == Semantics::strict) {
      if (eval_node(r, rest)) {
        found.emplace(s, rest);
        return true;
      }
      return false;
    }
    return for_each_subset(s, [&](const Team& extra) {
      Team other = rest | extra;
      if (eval_node(r, other)) {
        found.emplace(s, std::move(other));
        return true;
      }
      return false;
    });
  });
  return found;
}

std::optional<Team> TeamEvaluator::find_successor(std::size_t id, const Team& t) {
  if (nodes_.at(id).f->kind() != NodeKind::diamond) {
    throw PreconditionError("find_successor needs a diamond occurrence");
  }
  const std::size_t body = nodes_[id].kids[0];
  std::optional<Team> found;
  if (semantics_ == Semantics::lax) {
    for_each_legal_successor_team(model_, kAccessibility, t, [&](const Team& next) {
      if (eval_node(body, next)) {
        found = next;
        return true;
      }
      return false;
    });
    return found;
  }
  if (t.empty()) {
    if (eval_node(body, t)) {
      found = t;
    }
    return found;
  }
  for_each_selector(t, [&](const auto&, const auto&, const auto&, const Team& image) {
    if (eval_node(body, image)) {
      found = image;
      return true;
    }
    return false;
  });
  return found;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>>
TeamEvaluator::find_selector(std::size_t id, const Team& t) {
  if (semantics_ != Semantics::strict || nodes_.at(id).f->kind() != NodeKind::diamond) {
    throw PreconditionError("find_selector needs a diamond occurrence under strict semantics");
  }
  const std::size_t body = nodes_[id].kids[0];
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> found;
  if (t.empty()) {
    if (eval_node(body, t)) {
      found.emplace();
    }
    return found;
  }
  for_each_selector(t, [&](const std::vector<std::size_t>& members,
                           const std::vector<std::vector<std::size_t>>& options,
                           const std::vector<std::size_t>& choice, const Team& image) {
    if (!eval_node(body, image)) {
      return false;
    }
    std::vector<std::pair<std::size_t, std::size_t>> sel;
    for (std::size_t i = 0; i < members.size(); ++i) {
      sel.emplace_back(members[i], options[i][choice[i]]);
    }
    found = std::move(sel);
    return true;
  });
  return found;
}

bool eval_team(const KripkeModel& m, const Team& t, const FormulaPtr& f, Semantics s,
               EvalOptions opts) {
  TeamEvaluator ev(m, f, s, opts);
  return ev.eval(t);
}

// ---------------------------------------------------------------------------
// The multimodal language L

Team l_extension(const KripkeModel& n, const LPtr& f) {
  const LFormula& g = *f;
  switch (g.kind()) {
  case LKind::prop:
    return n.valuation(g.name());
  case LKind::negation:
    return l_extension(n, g.left()).complement();
  case LKind::conj:
    return l_extension(n, g.left()) & l_extension(n, g.right());
  case LKind::diamond: {
    if (!n.has_relation(g.name())) {
      throw UnknownRelation(g.name());
    }
    const Team body = l_extension(n, g.left());
    Team out(n.size());
    for (std::size_t v : body.members()) {
      out |= n.predecessors(g.name(), v);
    }
    return out;
  }
  case LKind::converse:
    if (!n.has_relation(g.name())) {
      throw UnknownRelation(g.name());
    }
    return successors(n, g.name(), l_extension(n, g.left()));
  case LKind::global:
    return l_extension(n, g.left()).empty() ? n.empty_team() : n.full_team();
  }
  throw Error("unreachable");
}

bool eval_L(const KripkeModel& n, std::size_t w, const LPtr& f) {
  if (w >= n.size()) {
    throw PreconditionError("world index out of range");
  }
  return l_extension(n, f).contains(w);
}

// ---------------------------------------------------------------------------
// Two-variable logic with counting

bool eval_fo(const FoStructure& a, const FoFormula& f, std::optional<std::size_t> x,
             std::optional<std::size_t> y) {
  auto value = [&](FoVar v) {
    const auto& slot = v == FoVar::x ? x : y;
    if (!slot) {
      throw PreconditionError(std::string("free variable ") + var_name(v));
    }
    return *slot;
  };
  auto with = [&](FoVar v, std::size_t e) {
    return v == FoVar::x ? std::pair{std::optional<std::size_t>(e), y}
                         : std::pair{x, std::optional<std::size_t>(e)};
  };
  switch (f.kind()) {
  case FoKind::unary:
    return a.unary(f.predicate()).contains(value(f.var()));
  case FoKind::binary:
    return a.holds(f.predicate(), value(f.var()), value(f.second_var()));
  case FoKind::negation:
    return !eval_fo(a, *f.left(), x, y);
  case FoKind::conj:
    return eval_fo(a, *f.left(), x, y) && eval_fo(a, *f.right(), x, y);
  case FoKind::disj:
    return eval_fo(a, *f.left(), x, y) || eval_fo(a, *f.right(), x, y);
  case FoKind::implies:
    return !eval_fo(a, *f.left(), x, y) || eval_fo(a, *f.right(), x, y);
  case FoKind::exists:
  case FoKind::forall:
  case FoKind::exists_one: {
    std::size_t hits = 0;
    for (std::size_t e = 0; e < a.size(); ++e) {
      auto [nx, ny] = with(f.var(), e);
      const bool r = eval_fo(a, *f.left(), nx, ny);
      if (f.kind() == FoKind::exists && r) {
        return true;
      }
      if (f.kind() == FoKind::forall && !r) {
        return false;
      }
      if (f.kind() == FoKind::exists_one && r && ++hits > 1) {
        return false;
      }
    }
    if (f.kind() == FoKind::exists) {
      return false;
    }
    if (f.kind() == FoKind::forall) {
      return true;
    }
    return hits == 1;
  }
  }
  throw Error("unreachable");
}

bool eval_fo2c(const FoStructure& a, const FoPtr& f) {
  const auto free = free_variables(*f);
  if (!free.empty()) {
    throw PreconditionError(std::string("sentence has a free variable ") +
                            var_name(*free.begin()));
  }
  return eval_fo(a, *f, std::nullopt, std::nullopt);
}

} // namespace minc
