#include "minc/sat_solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace minc::sat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) {
    r *= y;
  }
  return r;
}

} // namespace

Solver::Solver() = default;

int Solver::new_var() {
  const int v = num_vars();
  assigns_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(1); // prefer false
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

bool Solver::add_clause(std::vector<int> dimacs) {
  if (!ok_) {
    return false;
  }
  if (decision_level() != 0) {
    backtrack(0);
  }
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int l : dimacs) {
    if (l == 0 || std::abs(l) > num_vars()) {
      throw std::invalid_argument("literal refers to an undeclared variable");
    }
    lits.push_back(from_dimacs(l));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i > 0 && lits[i] == lits[i - 1]) {
      continue;
    }
    if (i > 0 && lits[i] == negate(lits[i - 1])) {
      return true; // tautology
    }
    const int v = value(lits[i]);
    if (v == 1) {
      return true;
    }
    if (v == 0) {
      continue;
    }
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) {
      ok_ = false;
    }
    return ok_;
  }
  add_internal(std::move(kept), false);
  return true;
}

int Solver::add_internal(std::vector<Lit> lits, bool learnt) {
  const int idx = static_cast<int>(clauses_.size());
  watches_[lits[0]].push_back(idx);
  watches_[lits[1]].push_back(idx);
  clauses_.push_back(Clause{std::move(lits), learnt});
  return idx;
}

void Solver::enqueue(Lit l, int reason) {
  const int v = var_of(l);
  assigns_[v] = (l & 1) ? 0 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

// Watches are kept on the literals themselves: watches_[l] lists clauses
// having l among their first two literals, visited when l becomes false.
int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = negate(p);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& c = clauses_[ci].lits;
      if (c[0] == false_lit) {
        std::swap(c[0], c[1]);
      }
      if (value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) {
        continue;
      }
      ws[j++] = ci;
      if (value(c[0]) == 0) {
        while (i < ws.size()) {
          ws[j++] = ws[i++];
        }
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) {
      a *= 1e-100;
    }
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) {
    heap_up(heap_pos_[v]);
  }
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& back_level) {
  learnt.clear();
  learnt.push_back(-1);
  int path = 0;
  Lit p = -1;
  std::size_t index = trail_.size();
  std::vector<int> touched;
  do {
    const auto& c = clauses_[confl].lits;
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      const Lit q = c[k];
      const int v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        touched.push_back(v);
        bump(v);
        if (level_[v] >= decision_level()) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
    // Reason clauses keep their implied literal first.
    if (path > 0 && confl >= 0 && clauses_[confl].lits[0] != p) {
      auto& rc = clauses_[confl].lits;
      auto it = std::find(rc.begin(), rc.end(), p);
      std::swap(*it, rc[0]);
    }
  } while (path > 0);
  learnt[0] = negate(p);
  for (int v : touched) {
    seen_[v] = 0;
  }
  back_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) {
        max_i = k;
      }
    }
    std::swap(learnt[1], learnt[max_i]);
    back_level = level_[var_of(learnt[1])];
  }
}

void Solver::backtrack(int level) {
  if (decision_level() <= level) {
    return;
  }
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    const int v = var_of(trail_[i]);
    phase_[v] = static_cast<char>(trail_[i] & 1);
    assigns_[v] = -1;
    reason_[v] = -1;
    if (!heap_contains(v)) {
      heap_insert(v);
    }
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

Solver::Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[v] < 0) {
      return 2 * v + phase_[v];
    }
  }
  return -1;
}

Result Solver::solve(const std::vector<int>& assumptions, std::int64_t conflict_limit) {
  model_.clear();
  if (!ok_) {
    return Result::unsat;
  }
  backtrack(0);
  if (propagate() >= 0) {
    ok_ = false;
    return Result::unsat;
  }
  std::vector<Lit> assume;
  for (int l : assumptions) {
    if (l == 0 || std::abs(l) > num_vars()) {
      throw std::invalid_argument("assumption refers to an undeclared variable");
    }
    assume.push_back(from_dimacs(l));
  }
  std::int64_t conflicts_here = 0;
  int restart_round = 0;
  std::int64_t restart_budget = static_cast<std::int64_t>(100 * luby(2, restart_round));
  std::int64_t since_restart = 0;
  std::vector<Lit> learnt;
  while (true) {
    const int confl = propagate();
    if (confl >= 0) {
      ++total_conflicts_;
      ++conflicts_here;
      ++since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::unsat;
      }
      int back_level = 0;
      analyze(confl, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        const int ci = add_internal(learnt, true);
        enqueue(learnt[0], ci);
      }
      decay();
      if (conflict_limit >= 0 && conflicts_here >= conflict_limit) {
        backtrack(0);
        return Result::unknown;
      }
      continue;
    }
    if (since_restart >= restart_budget) {
      since_restart = 0;
      ++restart_round;
      restart_budget = static_cast<std::int64_t>(100 * luby(2, restart_round));
      backtrack(0);
      continue;
    }
    Lit next = -1;
    while (decision_level() < static_cast<int>(assume.size())) {
      const Lit a = assume[decision_level()];
      const int v = value(a);
      if (v == 1) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (v == 0) {
        backtrack(0);
        return Result::unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next < 0) {
      next = pick_branch();
      if (next < 0) {
        model_.assign(assigns_.begin(), assigns_.end());
        backtrack(0);
        return Result::sat;
      }
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

// ---------------------------------------------------------------------------
// Activity heap

void Solver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

void Solver::heap_up(int i) {
  const int v = heap_[i];
  while (i > 0) {
    const int parent = (i - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) {
      break;
    }
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_down(int i) {
  const int v = heap_[i];
  const int n = static_cast<int>(heap_.size());
  while (true) {
    int child = 2 * i + 1;
    if (child >= n) {
      break;
    }
    if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) {
      ++child;
    }
    if (activity_[heap_[child]] <= activity_[v]) {
      break;
    }
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

int Solver::heap_pop() {
  const int top = heap_[0];
  heap_pos_[top] = -1;
  const int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

} // namespace minc::sat
