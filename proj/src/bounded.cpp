#include "minc/bounded.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "minc/error.hpp"
#include "minc/sat_solver.hpp"

namespace minc {

const char* status_name(SearchStatus s) {
  switch (s) {
  case SearchStatus::found:
    return "found";
  case SearchStatus::not_found:
    return "not_found";
  case SearchStatus::budget_exceeded:
    return "budget_exceeded";
  }
  return "?";
}

namespace {

constexpr std::size_t kSmall = 6;

// Models with at most six worlds as plain masks.
struct SmallModel {
  std::size_t n = 0;
  std::uint64_t succ[kSmall] = {};
  std::uint64_t pred[kSmall] = {};
  std::vector<std::uint64_t> val; // per signature proposition
};

struct SetNode {
  NodeKind kind;
  std::size_t a = 0, b = 0; // children
  std::size_t prop = 0;
  std::vector<std::size_t> lhs, rhs;
};

// Formula compiled against a proposition list; children precede parents.
class TeamSets {
public:
  TeamSets(const FormulaPtr& f, const std::vector<std::string>& props) {
    for (std::size_t i = 0; i < props.size(); ++i) {
      index_[props[i]] = i;
    }
    compile(*f);
  }

  std::uint64_t eval(const SmallModel& m, Semantics s) {
    const std::size_t n = m.n;
    const std::uint64_t teams = std::uint64_t{1} << n;
    image_.assign(teams, 0);
    preimage_.assign(teams, 0);
    for (std::uint64_t t = 1; t < teams; ++t) {
      const int low = std::countr_zero(t);
      image_[t] = image_[t & (t - 1)] | m.succ[low];
      preimage_[t] = preimage_[t & (t - 1)] | m.pred[low];
    }
    sets_.assign(nodes_.size(), 0);
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      sets_[id] = eval_node(nodes_[id], m, s, teams);
    }
    return sets_.back();
  }

private:
  std::size_t compile(const Formula& f) {
    SetNode node;
    node.kind = f.kind();
    switch (f.kind()) {
    case NodeKind::prop:
    case NodeKind::neg_prop:
      node.prop = index_.at(f.name());
      break;
    case NodeKind::conj:
    case NodeKind::disj:
      node.a = compile(*f.left());
      node.b = compile(*f.right());
      break;
    case NodeKind::box:
    case NodeKind::diamond:
      node.a = compile(*f.left());
      break;
    case NodeKind::inclusion:
      for (const auto& p : f.lhs()) {
        node.lhs.push_back(index_.at(p));
      }
      for (const auto& p : f.rhs()) {
        node.rhs.push_back(index_.at(p));
      }
      break;
    default:
      throw PreconditionError("bounded search expects a modal inclusion formula");
    }
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  static bool selector_image(const SmallModel& m, std::uint64_t t, std::uint64_t img) {
    // Some map from t onto img along R: every member of img needs a
    // distinct preimage in t (Hall), the rest of t maps anywhere into img.
    int match[kSmall];
    std::fill(std::begin(match), std::end(match), -1);
    for (std::uint64_t rest = img; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      std::uint64_t visited = 0;
      if (!augment(m, t, v, visited, match)) {
        return false;
      }
    }
    return true;
  }

  static bool augment(const SmallModel& m, std::uint64_t t, int v, std::uint64_t& visited,
                      int* match) {
    for (std::uint64_t cand = m.pred[v] & t & ~visited; cand; cand &= cand - 1) {
      const int w = std::countr_zero(cand);
      visited |= std::uint64_t{1} << w;
      if (match[w] < 0 || augment(m, t, match[w], visited, match)) {
        match[w] = v;
        return true;
      }
    }
    return false;
  }

  std::uint64_t eval_node(const SetNode& nd, const SmallModel& m, Semantics s,
                          std::uint64_t teams) const {
    std::uint64_t out = 0;
    switch (nd.kind) {
    case NodeKind::prop:
    case NodeKind::neg_prop: {
      const std::uint64_t full = teams - 1;
      const std::uint64_t allowed = nd.kind == NodeKind::prop ? m.val[nd.prop] : full & ~m.val[nd.prop];
      for (std::uint64_t t = 0; t < teams; ++t) {
        if ((t & ~allowed) == 0) {
          out |= std::uint64_t{1} << t;
        }
      }
      return out;
    }
    case NodeKind::conj:
      return sets_[nd.a] & sets_[nd.b];
    case NodeKind::disj: {
      const std::uint64_t a = sets_[nd.a], b = sets_[nd.b];
      if (s == Semantics::lax) {
        for (std::uint64_t x = a; x; x &= x - 1) {
          const std::uint64_t sa = std::countr_zero(x);
          for (std::uint64_t y = b; y; y &= y - 1) {
            out |= std::uint64_t{1} << (sa | std::countr_zero(y));
          }
        }
        return out;
      }
      for (std::uint64_t t = 0; t < teams; ++t) {
        std::uint64_t sub = t;
        while (true) {
          if (((a >> sub) & 1) && ((b >> (t & ~sub)) & 1)) {
            out |= std::uint64_t{1} << t;
            break;
          }
          if (sub == 0) {
            break;
          }
          sub = (sub - 1) & t;
        }
      }
      return out;
    }
    case NodeKind::box:
      for (std::uint64_t t = 0; t < teams; ++t) {
        if ((sets_[nd.a] >> image_[t]) & 1) {
          out |= std::uint64_t{1} << t;
        }
      }
      return out;
    case NodeKind::diamond: {
      const std::uint64_t body = sets_[nd.a];
      for (std::uint64_t t = 0; t < teams; ++t) {
        for (std::uint64_t x = body; x; x &= x - 1) {
          const std::uint64_t img = std::countr_zero(x);
          if ((img & ~image_[t]) != 0 || (t & ~preimage_[img]) != 0) {
            continue;
          }
          if (s == Semantics::lax || selector_image(m, t, img)) {
            out |= std::uint64_t{1} << t;
            break;
          }
        }
      }
      return out;
    }
    case NodeKind::inclusion: {
      auto key = [&](const std::vector<std::size_t>& side, std::size_t w) {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < side.size(); ++i) {
          k |= ((m.val[side[i]] >> w) & 1) << i;
        }
        return k;
      };
      std::uint64_t lk[kSmall], rk[kSmall];
      for (std::size_t w = 0; w < m.n; ++w) {
        lk[w] = key(nd.lhs, w);
        rk[w] = key(nd.rhs, w);
      }
      for (std::uint64_t t = 0; t < teams; ++t) {
        bool ok = true;
        for (std::uint64_t x = t; x && ok; x &= x - 1) {
          const int w = std::countr_zero(x);
          bool hit = false;
          for (std::uint64_t y = t; y; y &= y - 1) {
            if (rk[std::countr_zero(y)] == lk[w]) {
              hit = true;
              break;
            }
          }
          ok = hit;
        }
        if (ok) {
          out |= std::uint64_t{1} << t;
        }
      }
      return out;
    }
    default:
      return 0;
    }
  }

  std::map<std::string, std::size_t> index_;
  std::vector<SetNode> nodes_;
  std::vector<std::uint64_t> sets_;
  std::vector<std::uint64_t> image_, preimage_;
};

std::size_t relation_bits(const MincSignature& sig, std::size_t n) {
  return sig.with_relation ? n * n : 0;
}

bool index_bit(std::uint64_t index, std::size_t total, std::size_t k) {
  return (index >> (total - 1 - k)) & 1;
}

SmallModel small_at(const MincSignature& sig, std::size_t n, std::uint64_t index) {
  SmallModel m;
  m.n = n;
  const std::size_t total = minc_index_bits(sig, n);
  const std::size_t rb = relation_bits(sig, n);
  for (std::size_t i = 0; i < n && rb; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (index_bit(index, total, i * n + j)) {
        m.succ[i] |= std::uint64_t{1} << j;
        m.pred[j] |= std::uint64_t{1} << i;
      }
    }
  }
  m.val.assign(sig.props.size(), 0);
  for (std::size_t p = 0; p < sig.props.size(); ++p) {
    for (std::size_t w = 0; w < n; ++w) {
      if (index_bit(index, total, rb + p * n + w)) {
        m.val[p] |= std::uint64_t{1} << w;
      }
    }
  }
  return m;
}

SmallModel small_from(const KripkeModel& km, const std::vector<std::string>& props) {
  if (km.size() > kSmall) {
    throw PreconditionError("all-teams evaluation is limited to 6 worlds");
  }
  SmallModel m;
  m.n = km.size();
  if (km.has_relation(kAccessibility)) {
    for (std::size_t w = 0; w < m.n; ++w) {
      m.succ[w] = km.successors(kAccessibility, w).to_mask();
      m.pred[w] = km.predecessors(kAccessibility, w).to_mask();
    }
  }
  for (const auto& p : props) {
    m.val.push_back(km.valuation(p).to_mask());
  }
  return m;
}

// Index of the model with worlds renamed by perm.
std::uint64_t permuted_index(const MincSignature& sig, std::size_t n, std::uint64_t index,
                             const std::vector<std::size_t>& perm) {
  const std::size_t total = minc_index_bits(sig, n);
  const std::size_t rb = relation_bits(sig, n);
  std::uint64_t out = 0;
  auto set = [&](std::size_t k) { out |= std::uint64_t{1} << (total - 1 - k); };
  for (std::size_t i = 0; i < n && rb; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (index_bit(index, total, i * n + j)) {
        set(perm[i] * n + perm[j]);
      }
    }
  }
  for (std::size_t p = 0; p < sig.props.size(); ++p) {
    for (std::size_t w = 0; w < n; ++w) {
      if (index_bit(index, total, rb + p * n + w)) {
        set(rb + p * n + perm[w]);
      }
    }
  }
  return out;
}

bool is_canonical(const MincSignature& sig, std::size_t n, std::uint64_t index) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (permuted_index(sig, n, index, perm) < index) {
      return false;
    }
  }
  return true;
}

bool distinct_rows(const SmallModel& m) {
  for (std::size_t a = 0; a < m.n; ++a) {
    for (std::size_t b = a + 1; b < m.n; ++b) {
      bool same = true;
      for (auto v : m.val) {
        if (((v >> a) & 1) != ((v >> b) & 1)) {
          same = false;
          break;
        }
      }
      if (same) {
        return false;
      }
    }
  }
  return true;
}

bool distinct_rows(const KripkeModel& m, const std::vector<std::string>& props) {
  std::set<std::vector<bool>> rows;
  for (std::size_t w = 0; w < m.size(); ++w) {
    std::vector<bool> row;
    for (const auto& p : props) {
      row.push_back(m.holds(p, w));
    }
    if (!rows.insert(row).second) {
      return false;
    }
  }
  return true;
}

// Lowest nonempty satisfying team of a model with more than six worlds.
std::optional<Team> first_team_large(const KripkeModel& m, const FormulaPtr& f, Semantics s) {
  TeamEvaluator ev(m, f, s);
  std::optional<Team> found;
  for_each_subset(m.full_team(), [&](const Team& t) {
    if (!t.empty() && ev.eval(t)) {
      found = t;
      return true;
    }
    return false;
  });
  return found;
}

void check_minc(const FormulaPtr& f) {
  if (!is_minc(*f)) {
    throw PreconditionError("bounded search expects a modal inclusion formula");
  }
}

// Pointwise truth of an inclusion-free, modality-free formula under a
// valuation vector (bit of props[i] is i).
bool flat_holds(const Formula& f, const std::map<std::string, std::size_t>& index,
                std::uint64_t row) {
  switch (f.kind()) {
  case NodeKind::prop:
    return (row >> index.at(f.name())) & 1;
  case NodeKind::neg_prop:
    return !((row >> index.at(f.name())) & 1);
  case NodeKind::conj:
    return flat_holds(*f.left(), index, row) && flat_holds(*f.right(), index, row);
  case NodeKind::disj:
    return flat_holds(*f.left(), index, row) || flat_holds(*f.right(), index, row);
  default:
    return true;
  }
}

void top_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind() == NodeKind::conj) {
    top_conjuncts(f->left(), out);
    top_conjuncts(f->right(), out);
  } else {
    out.push_back(f);
  }
}

MincSearchResult restricted_search(const FormulaPtr& f, Semantics s, const SearchOptions& opts) {
  const MincSignature sig = minc_signature(f, opts);
  const std::size_t np = sig.props.size();
  if (np > 20) {
    throw PreconditionError("restricted search supports at most 20 propositions");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < np; ++i) {
    index[sig.props[i]] = i;
  }
  std::vector<FormulaPtr> parts, flat;
  top_conjuncts(f, parts);
  for (const auto& c : parts) {
    if (!c->has_inclusion()) {
      flat.push_back(c);
    }
  }
  // Candidate rows in lexicographic order, first proposition most significant.
  std::vector<std::uint64_t> cands;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << np); ++code) {
    std::uint64_t row = 0;
    for (std::size_t i = 0; i < np; ++i) {
      if ((code >> (np - 1 - i)) & 1) {
        row |= std::uint64_t{1} << i;
      }
    }
    bool ok = true;
    for (const auto& c : flat) {
      if (!flat_holds(*c, index, row)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      cands.push_back(row);
    }
  }

  MincSearchResult res;
  const std::size_t kmax = std::min(opts.max_size, cands.size());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    std::uint64_t rank = 0;
    while (true) {
      ++res.steps;
      if (opts.budget && res.steps > opts.budget) {
        res.steps = opts.budget;
        res.status = SearchStatus::budget_exceeded;
        return res;
      }
      KripkeModel m(k);
      for (std::size_t i = 0; i < np; ++i) {
        Team t(k);
        for (std::size_t w = 0; w < k; ++w) {
          if ((cands[pick[w]] >> i) & 1) {
            t.insert(w);
          }
        }
        m.set_valuation(sig.props[i], t);
      }
      const Team full = m.full_team();
      const bool sat = k <= kSmall ? ((satisfying_teams(m, f, s) >> full.to_mask()) & 1)
                                   : eval_team(m, full, f, s);
      if (sat) {
        if (!eval_team(m, full, f, s)) {
          throw Error("internal: evaluators disagree on a restricted witness");
        }
        res.status = SearchStatus::found;
        res.model = std::move(m);
        res.team = full;
        res.index = rank;
        return res;
      }
      ++rank;
      // Next combination.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == cands.size() - k + (i - 1)) {
        --i;
      }
      if (i == 0) {
        break;
      }
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) {
        pick[j] = pick[j - 1] + 1;
      }
    }
  }
  return res;
}

} // namespace

// ---------------------------------------------------------------------------

MincSignature minc_signature(const FormulaPtr& f, const SearchOptions& opts) {
  MincSignature sig;
  const auto props = propositions(*f);
  sig.props.assign(props.begin(), props.end());
  sig.with_relation = f->has_modality() && !opts.empty_relation;
  return sig;
}

std::size_t minc_index_bits(const MincSignature& sig, std::size_t n) {
  return relation_bits(sig, n) + sig.props.size() * n;
}

KripkeModel minc_model_at(const MincSignature& sig, std::size_t n, std::uint64_t index) {
  const std::size_t total = minc_index_bits(sig, n);
  if (total > 63) {
    throw PreconditionError("model index does not fit in 63 bits");
  }
  const std::size_t rb = relation_bits(sig, n);
  KripkeModel m(n);
  for (std::size_t i = 0; i < n && rb; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (index_bit(index, total, i * n + j)) {
        m.add_edge(kAccessibility, i, j);
      }
    }
  }
  for (std::size_t p = 0; p < sig.props.size(); ++p) {
    Team t(n);
    for (std::size_t w = 0; w < n; ++w) {
      if (index_bit(index, total, rb + p * n + w)) {
        t.insert(w);
      }
    }
    m.set_valuation(sig.props[p], t);
  }
  return m;
}

std::uint64_t minc_model_index(const MincSignature& sig, const KripkeModel& m) {
  const std::size_t n = m.size();
  const std::size_t total = minc_index_bits(sig, n);
  if (total > 63) {
    throw PreconditionError("model index does not fit in 63 bits");
  }
  const std::size_t rb = relation_bits(sig, n);
  std::uint64_t out = 0;
  auto set = [&](std::size_t k) { out |= std::uint64_t{1} << (total - 1 - k); };
  for (std::size_t i = 0; i < n && rb; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.has_edge(kAccessibility, i, j)) {
        set(i * n + j);
      }
    }
  }
  for (std::size_t p = 0; p < sig.props.size(); ++p) {
    for (std::size_t w = 0; w < n; ++w) {
      if (m.holds(sig.props[p], w)) {
        set(rb + p * n + w);
      }
    }
  }
  return out;
}

std::uint64_t satisfying_teams(const KripkeModel& m, const FormulaPtr& f, Semantics s) {
  check_minc(f);
  const auto props = propositions(*f);
  std::vector<std::string> pv(props.begin(), props.end());
  TeamSets sets(f, pv);
  return sets.eval(small_from(m, pv), s);
}

MincSearchResult bounded_sat_minc(const FormulaPtr& f, Semantics s, const SearchOptions& opts) {
  check_minc(f);
  if (opts.empty_relation && opts.distinct_valuations && !f->has_modality()) {
    return restricted_search(f, s, opts);
  }
  const MincSignature sig = minc_signature(f, opts);
  TeamSets compiled(f, sig.props);
  const unsigned jobs = std::max(1u, opts.jobs);
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();

  MincSearchResult res;
  std::uint64_t base = 0;
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    const std::size_t bits = minc_index_bits(sig, n);
    if (bits > 63) {
      throw PreconditionError("search space too large for the model index");
    }
    const std::uint64_t count = std::uint64_t{1} << bits;
    std::uint64_t limit = count;
    bool clipped = false;
    if (opts.budget) {
      const std::uint64_t left = opts.budget > base ? opts.budget - base : 0;
      if (left < count) {
        limit = left;
        clipped = true;
      }
    }
    std::atomic<std::uint64_t> best{none};
    std::vector<std::optional<Team>> teams(jobs);
    std::vector<std::uint64_t> team_owner(jobs, none);

    auto worker = [&](unsigned k) {
      std::optional<TeamSets> local;
      if (n <= kSmall) {
        local.emplace(f, sig.props);
      }
      for (std::uint64_t idx = k; idx < limit; idx += jobs) {
        if (idx >= best.load(std::memory_order_relaxed)) {
          break;
        }
        if (opts.symmetry_breaking && !is_canonical(sig, n, idx)) {
          continue;
        }
        std::optional<Team> hit;
        if (n <= kSmall) {
          const SmallModel sm = small_at(sig, n, idx);
          if (opts.distinct_valuations && !distinct_rows(sm)) {
            continue;
          }
          const std::uint64_t sat = local->eval(sm, s) & ~std::uint64_t{1};
          if (sat) {
            hit = Team::from_mask(n, static_cast<std::uint64_t>(std::countr_zero(sat)));
          }
        } else {
          const KripkeModel m = minc_model_at(sig, n, idx);
          if (opts.distinct_valuations && !distinct_rows(m, sig.props)) {
            continue;
          }
          hit = first_team_large(m, f, s);
        }
        if (hit) {
          std::uint64_t cur = best.load();
          while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
          }
          teams[k] = hit;
          team_owner[k] = idx;
          break;
        }
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < jobs; ++k) {
        pool.emplace_back(worker, k);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    const std::uint64_t win = best.load();
    if (win != none) {
      for (unsigned k = 0; k < jobs; ++k) {
        if (team_owner[k] == win) {
          res.team = teams[k];
        }
      }
      KripkeModel m = minc_model_at(sig, n, win);
      if (!eval_team(m, *res.team, f, s)) {
        throw Error("internal: evaluators disagree on a search witness");
      }
      res.status = SearchStatus::found;
      res.model = std::move(m);
      res.index = win;
      res.steps = base + win + 1;
      return res;
    }
    if (clipped) {
      res.status = SearchStatus::budget_exceeded;
      res.steps = opts.budget;
      return res;
    }
    base += count;
  }
  res.steps = base;
  return res;
}

// ---------------------------------------------------------------------------
// SAT grounding for L and FO^2 with counting

namespace {

class Gates {
public:
  explicit Gates(sat::Solver& s) : s_(s) {}

  int and_of(const std::vector<int>& xs) {
    const int v = s_.new_var();
    std::vector<int> back{v};
    for (int x : xs) {
      s_.add_clause({-v, x});
      back.push_back(-x);
    }
    s_.add_clause(back);
    return v;
  }

  int or_of(const std::vector<int>& xs) {
    const int v = s_.new_var();
    std::vector<int> fwd{-v};
    for (int x : xs) {
      s_.add_clause({v, -x});
      fwd.push_back(x);
    }
    s_.add_clause(fwd);
    return v;
  }

  sat::Solver& solver() { return s_; }

private:
  sat::Solver& s_;
};

struct Budget {
  std::uint64_t limit = 0;
  std::uint64_t steps = 0;
  bool exceeded() const { return limit && steps > limit; }
};

sat::Result counted_solve(sat::Solver& s, const std::vector<int>& assume, Budget& b) {
  ++b.steps;
  if (b.exceeded()) {
    return sat::Result::unknown;
  }
  const std::int64_t cap = b.limit ? static_cast<std::int64_t>(b.limit - b.steps) : -1;
  const std::uint64_t before = s.conflicts();
  const sat::Result r = s.solve(assume, cap);
  b.steps += s.conflicts() - before;
  if (r == sat::Result::unknown || b.exceeded()) {
    return sat::Result::unknown;
  }
  return r;
}

// Least assignment of `bits` (first bit most significant) among models.
SearchStatus lex_min(sat::Solver& s, const std::vector<int>& bits, Budget& b,
                     std::vector<bool>& out) {
  sat::Result r = counted_solve(s, {}, b);
  if (r == sat::Result::unknown) {
    return SearchStatus::budget_exceeded;
  }
  if (r == sat::Result::unsat) {
    return SearchStatus::not_found;
  }
  std::vector<bool> cur;
  for (int v : bits) {
    cur.push_back(s.model_value(v));
  }
  std::vector<int> fixed;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!cur[i]) {
      fixed.push_back(-bits[i]);
      continue;
    }
    fixed.push_back(-bits[i]);
    r = counted_solve(s, fixed, b);
    if (r == sat::Result::unknown) {
      return SearchStatus::budget_exceeded;
    }
    if (r == sat::Result::sat) {
      for (std::size_t j = 0; j < bits.size(); ++j) {
        cur[j] = s.model_value(bits[j]);
      }
    } else {
      fixed.back() = bits[i];
    }
  }
  out = std::move(cur);
  return SearchStatus::found;
}

class LGround {
public:
  LGround(sat::Solver& s, std::size_t n, const std::vector<std::string>& rels,
          const std::vector<std::string>& props)
      : g_(s), n_(n) {
    for (const auto& r : rels) {
      auto& vs = rel_[r];
      for (std::size_t k = 0; k < n * n; ++k) {
        vs.push_back(s.new_var());
        bits_.push_back(vs.back());
      }
    }
    for (const auto& p : props) {
      auto& vs = prop_[p];
      for (std::size_t k = 0; k < n; ++k) {
        vs.push_back(s.new_var());
        bits_.push_back(vs.back());
      }
    }
  }

  const std::vector<int>& bits() const { return bits_; }

  int lit(const LFormula& f, std::size_t w) {
    const std::size_t key_w = f.kind() == LKind::global ? n_ : w;
    const auto key = std::make_pair(&f, key_w);
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    int out = 0;
    switch (f.kind()) {
    case LKind::prop:
      out = prop_.at(f.name())[w];
      break;
    case LKind::negation:
      out = -lit(*f.left(), w);
      break;
    case LKind::conj:
      out = g_.and_of({lit(*f.left(), w), lit(*f.right(), w)});
      break;
    case LKind::diamond:
    case LKind::converse: {
      const auto& r = rel_.at(f.name());
      std::vector<int> alts;
      for (std::size_t u = 0; u < n_; ++u) {
        const int edge = f.kind() == LKind::diamond ? r[w * n_ + u] : r[u * n_ + w];
        alts.push_back(g_.and_of({edge, lit(*f.left(), u)}));
      }
      out = g_.or_of(alts);
      break;
    }
    case LKind::global: {
      std::vector<int> alts;
      for (std::size_t u = 0; u < n_; ++u) {
        alts.push_back(lit(*f.left(), u));
      }
      out = g_.or_of(alts);
      break;
    }
    }
    memo_[key] = out;
    return out;
  }

private:
  Gates g_;
  std::size_t n_;
  std::map<std::string, std::vector<int>> rel_;
  std::map<std::string, std::vector<int>> prop_;
  std::vector<int> bits_;
  std::map<std::pair<const LFormula*, std::size_t>, int> memo_;
};

KripkeModel l_model_from_bits(std::size_t n, const std::vector<std::string>& rels,
                              const std::vector<std::string>& props,
                              const std::vector<bool>& bits) {
  KripkeModel m(n);
  std::size_t k = 0;
  for (const auto& r : rels) {
    m.declare_relation(r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bits[k++]) {
          m.add_edge(r, i, j);
        }
      }
    }
  }
  for (const auto& p : props) {
    Team t(n);
    for (std::size_t w = 0; w < n; ++w) {
      if (bits[k++]) {
        t.insert(w);
      }
    }
    m.set_valuation(p, t);
  }
  return m;
}

FoStructure fo_from_bits(std::size_t n, const std::vector<std::string>& bins,
                         const std::vector<std::string>& unaries, const std::vector<bool>& bits) {
  FoStructure a(n);
  std::size_t k = 0;
  for (const auto& r : bins) {
    a.declare_binary(r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bits[k++]) {
          a.add_pair(r, i, j);
        }
      }
    }
  }
  for (const auto& p : unaries) {
    Team t(n);
    for (std::size_t w = 0; w < n; ++w) {
      if (bits[k++]) {
        t.insert(w);
      }
    }
    a.set_unary(p, t);
  }
  return a;
}

class FoGround {
public:
  FoGround(sat::Solver& s, std::size_t n, const std::vector<std::string>& bins,
           const std::vector<std::string>& unaries)
      : g_(s), n_(n) {
    for (const auto& r : bins) {
      auto& vs = bin_[r];
      for (std::size_t k = 0; k < n * n; ++k) {
        vs.push_back(s.new_var());
        bits_.push_back(vs.back());
      }
    }
    for (const auto& p : unaries) {
      auto& vs = un_[p];
      for (std::size_t k = 0; k < n; ++k) {
        vs.push_back(s.new_var());
        bits_.push_back(vs.back());
      }
    }
  }

  const std::vector<int>& bits() const { return bits_; }

  // Values of x and y; n means unassigned.
  int lit(const FoFormula& f, std::size_t vx, std::size_t vy) {
    const unsigned fv = free_mask(f);
    if (!(fv & 1u)) {
      vx = n_;
    }
    if (!(fv & 2u)) {
      vy = n_;
    }
    const auto key = std::make_tuple(&f, vx, vy);
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    auto val = [&](FoVar v) { return v == FoVar::x ? vx : vy; };
    auto with = [&](FoVar v, std::size_t e) {
      return v == FoVar::x ? std::make_pair(e, vy) : std::make_pair(vx, e);
    };
    int out = 0;
    switch (f.kind()) {
    case FoKind::unary:
      out = un_.at(f.predicate())[val(f.var())];
      break;
    case FoKind::binary:
      out = bin_.at(f.predicate())[val(f.var()) * n_ + val(f.second_var())];
      break;
    case FoKind::negation:
      out = -lit(*f.left(), vx, vy);
      break;
    case FoKind::conj:
      out = g_.and_of({lit(*f.left(), vx, vy), lit(*f.right(), vx, vy)});
      break;
    case FoKind::disj:
      out = g_.or_of({lit(*f.left(), vx, vy), lit(*f.right(), vx, vy)});
      break;
    case FoKind::implies:
      out = g_.or_of({-lit(*f.left(), vx, vy), lit(*f.right(), vx, vy)});
      break;
    case FoKind::exists:
    case FoKind::forall: {
      std::vector<int> xs;
      for (std::size_t e = 0; e < n_; ++e) {
        const auto [a, b] = with(f.var(), e);
        xs.push_back(lit(*f.left(), a, b));
      }
      out = f.kind() == FoKind::exists ? g_.or_of(xs) : g_.and_of(xs);
      break;
    }
    case FoKind::exists_one: {
      std::vector<int> xs;
      for (std::size_t e = 0; e < n_; ++e) {
        const auto [a, b] = with(f.var(), e);
        xs.push_back(lit(*f.left(), a, b));
      }
      std::vector<int> alts;
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<int> only{xs[i]};
        for (std::size_t j = 0; j < n_; ++j) {
          if (j != i) {
            only.push_back(-xs[j]);
          }
        }
        alts.push_back(g_.and_of(only));
      }
      out = g_.or_of(alts);
      break;
    }
    }
    memo_[key] = out;
    return out;
  }

private:
  unsigned free_mask(const FoFormula& f) {
    if (auto it = free_.find(&f); it != free_.end()) {
      return it->second;
    }
    unsigned mask = 0;
    for (FoVar v : free_variables(f)) {
      mask |= v == FoVar::x ? 1u : 2u;
    }
    free_[&f] = mask;
    return mask;
  }

  Gates g_;
  std::size_t n_;
  std::map<std::string, std::vector<int>> bin_;
  std::map<std::string, std::vector<int>> un_;
  std::vector<int> bits_;
  std::map<std::tuple<const FoFormula*, std::size_t, std::size_t>, int> memo_;
  std::map<const FoFormula*, unsigned> free_;
};

template <class T>
std::vector<std::string> sorted(const std::set<T>& s) {
  return std::vector<std::string>(s.begin(), s.end());
}

} // namespace

LSearchResult bounded_sat_L(const LPtr& f, const SearchOptions& opts) {
  const auto rels = sorted(relation_names(*f));
  const auto props = sorted(proposition_names(*f));
  LSearchResult res;
  Budget budget{opts.budget, 0};
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    sat::Solver s;
    LGround g(s, n, rels, props);
    std::vector<int> roots;
    for (std::size_t w = 0; w < n; ++w) {
      roots.push_back(g.lit(*f, w));
    }
    s.add_clause(roots);
    std::vector<bool> bits;
    const SearchStatus st = lex_min(s, g.bits(), budget, bits);
    if (st == SearchStatus::budget_exceeded) {
      res.status = st;
      res.steps = opts.budget;
      return res;
    }
    if (st == SearchStatus::found) {
      KripkeModel m = l_model_from_bits(n, rels, props, bits);
      for (std::size_t w = 0; w < n; ++w) {
        if (eval_L(m, w, f)) {
          res.world = w;
          break;
        }
      }
      if (!res.world) {
        throw Error("internal: grounded model does not satisfy the formula");
      }
      res.status = SearchStatus::found;
      res.model = std::move(m);
      res.steps = budget.steps;
      return res;
    }
  }
  res.steps = budget.steps;
  return res;
}

LSearchResult bounded_sat_L_exhaustive(const LPtr& f, const SearchOptions& opts) {
  const auto rels = sorted(relation_names(*f));
  const auto props = sorted(proposition_names(*f));
  LSearchResult res;
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    const std::size_t total = rels.size() * n * n + props.size() * n;
    if (total > 40) {
      throw PreconditionError("exhaustive search space too large");
    }
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << total); ++idx) {
      if (opts.budget && res.steps >= opts.budget) {
        res.status = SearchStatus::budget_exceeded;
        return res;
      }
      ++res.steps;
      std::vector<bool> bits(total);
      for (std::size_t k = 0; k < total; ++k) {
        bits[k] = index_bit(idx, total, k);
      }
      KripkeModel m = l_model_from_bits(n, rels, props, bits);
      for (std::size_t w = 0; w < n; ++w) {
        if (eval_L(m, w, f)) {
          res.status = SearchStatus::found;
          res.model = std::move(m);
          res.world = w;
          return res;
        }
      }
    }
  }
  return res;
}

FoSearchResult bounded_sat_fo2c(const FoPtr& f, const SearchOptions& opts) {
  if (!free_variables(*f).empty()) {
    throw PreconditionError("sentence expected, found free variables");
  }
  const auto bins = sorted(binary_predicates(*f));
  const auto unaries = sorted(unary_predicates(*f));
  FoSearchResult res;
  Budget budget{opts.budget, 0};
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    sat::Solver s;
    FoGround g(s, n, bins, unaries);
    s.add_clause({g.lit(*f, n, n)});
    std::vector<bool> bits;
    const SearchStatus st = lex_min(s, g.bits(), budget, bits);
    if (st == SearchStatus::budget_exceeded) {
      res.status = st;
      res.steps = opts.budget;
      return res;
    }
    if (st == SearchStatus::found) {
      FoStructure a = fo_from_bits(n, bins, unaries, bits);
      if (!eval_fo2c(a, f)) {
        throw Error("internal: grounded structure does not satisfy the sentence");
      }
      res.status = SearchStatus::found;
      res.structure = std::move(a);
      res.steps = budget.steps;
      return res;
    }
  }
  res.steps = budget.steps;
  return res;
}

FoSearchResult bounded_sat_fo2c_exhaustive(const FoPtr& f, const SearchOptions& opts) {
  const auto bins = sorted(binary_predicates(*f));
  const auto unaries = sorted(unary_predicates(*f));
  FoSearchResult res;
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    const std::size_t total = bins.size() * n * n + unaries.size() * n;
    if (total > 40) {
      throw PreconditionError("exhaustive search space too large");
    }
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << total); ++idx) {
      if (opts.budget && res.steps >= opts.budget) {
        res.status = SearchStatus::budget_exceeded;
        return res;
      }
      ++res.steps;
      std::vector<bool> bits(total);
      for (std::size_t k = 0; k < total; ++k) {
        bits[k] = index_bit(idx, total, k);
      }
      FoStructure a = fo_from_bits(n, bins, unaries, bits);
      if (eval_fo2c(a, f)) {
        res.status = SearchStatus::found;
        res.structure = std::move(a);
        return res;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

DifferentialReport differential_check(const FormulaPtr& f, const SearchOptions& opts) {
  check_minc(f);
  if (opts.max_size > kSmall) {
    throw PreconditionError("differential check is limited to 6 worlds");
  }
  const MincSignature sig = minc_signature(f, opts);
  TeamSets sets(f, sig.props);
  DifferentialReport rep;
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    const std::size_t bits = minc_index_bits(sig, n);
    if (bits > 63) {
      throw PreconditionError("search space too large for the model index");
    }
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << bits); ++idx) {
      if (rep.lax_sat && rep.strict_sat && rep.divergence_model) {
        rep.status = SearchStatus::found;
        return rep;
      }
      if (opts.budget && rep.steps >= opts.budget) {
        rep.status = SearchStatus::budget_exceeded;
        return rep;
      }
      ++rep.steps;
      if (opts.symmetry_breaking && !is_canonical(sig, n, idx)) {
        continue;
      }
      const SmallModel sm = small_at(sig, n, idx);
      if (opts.distinct_valuations && !distinct_rows(sm)) {
        continue;
      }
      const std::uint64_t lax = sets.eval(sm, Semantics::lax) & ~std::uint64_t{1};
      const std::uint64_t strict = sets.eval(sm, Semantics::strict) & ~std::uint64_t{1};
      auto team_of = [&](std::uint64_t mask) {
        return Team::from_mask(n, static_cast<std::uint64_t>(std::countr_zero(mask)));
      };
      if (lax && !rep.lax_sat) {
        rep.lax_sat = true;
        rep.lax_model = minc_model_at(sig, n, idx);
        rep.lax_team = team_of(lax);
      }
      if (strict && !rep.strict_sat) {
        rep.strict_sat = true;
        rep.strict_model = minc_model_at(sig, n, idx);
        rep.strict_team = team_of(strict);
      }
      if ((lax ^ strict) && !rep.divergence_model) {
        rep.divergence_model = minc_model_at(sig, n, idx);
        rep.divergence_team = team_of(lax ^ strict);
        rep.divergence_lax = (lax >> rep.divergence_team->to_mask()) & 1;
      }
    }
  }
  rep.status = rep.divergence_model ? SearchStatus::found : SearchStatus::not_found;
  return rep;
}

} // namespace minc
