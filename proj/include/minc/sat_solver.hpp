#pragma once

#include <cstdint>
#include <vector>

namespace minc::sat {

/// Literals use the DIMACS convention: variable v >= 1 is the literal v,
/// its negation is -v.
enum class Result { sat, unsat, unknown };

/// Small CDCL solver: two watched literals, first-UIP learning, VSIDS
/// branching with phase saving, Luby restarts, incremental solving under
/// assumptions. No clause deletion; meant for the modest ground instances
/// of the bounded model finder.
class Solver {
public:
  Solver();

  int new_var();
  int num_vars() const noexcept { return static_cast<int>(assigns_.size()); }

  /// Adds a clause at decision level 0. Returns false once the clause set
  /// is known to be unsatisfiable.
  bool add_clause(std::vector<int> lits);

  /// `conflict_limit` < 0 means unlimited; otherwise returns unknown after
  /// that many conflicts in this call.
  Result solve(const std::vector<int>& assumptions = {}, std::int64_t conflict_limit = -1);

  /// Value of `var` in the last satisfying assignment.
  bool model_value(int var) const { return model_.at(var - 1) != 0; }
  std::uint64_t conflicts() const noexcept { return total_conflicts_; }

private:
  using Lit = int; // 2 * var + (negated ? 1 : 0), var 0-based

  static Lit from_dimacs(int l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
  static int var_of(Lit l) { return l >> 1; }
  static Lit negate(Lit l) { return l ^ 1; }

  // 1 true, 0 false, -1 unassigned
  int value(Lit l) const {
    const int a = assigns_[var_of(l)];
    return a < 0 ? -1 : (a ^ (l & 1));
  }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int confl, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  Lit pick_branch();
  void bump(int var);
  void decay() { var_inc_ /= 0.95; }
  int add_internal(std::vector<Lit> lits, bool learnt);

  // Heap of variables ordered by activity.
  void heap_insert(int v);
  void heap_up(int i);
  void heap_down(int i);
  int heap_pop();
  bool heap_contains(int v) const { return v < static_cast<int>(heap_pos_.size()) && heap_pos_[v] >= 0; }

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
  };

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> phase_;
  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<char> seen_;
  std::vector<char> model_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool ok_ = true;
  std::uint64_t total_conflicts_ = 0;
};

} // namespace minc::sat
