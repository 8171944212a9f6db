#include <gtest/gtest.h>

#include <random>

#include "minc/sat_solver.hpp"

using minc::sat::Result;
using minc::sat::Solver;

namespace {

using Cnf = std::vector<std::vector<int>>;

bool brute_force(int vars, const Cnf& cnf, const std::vector<int>& assume) {
  for (std::uint32_t a = 0; a < (1u << vars); ++a) {
    auto val = [&](int l) { return (((a >> (std::abs(l) - 1)) & 1) != 0) == (l > 0); };
    bool ok = true;
    for (int l : assume) {
      ok = ok && val(l);
    }
    for (const auto& c : cnf) {
      bool sat = false;
      for (int l : c) {
        sat = sat || val(l);
      }
      ok = ok && sat;
    }
    if (ok) {
      return true;
    }
  }
  return false;
}

} // namespace

TEST(SatSolver, TrivialCases) {
  Solver s;
  const int a = s.new_var();
  EXPECT_EQ(s.solve(), Result::sat);
  s.add_clause({a});
  EXPECT_EQ(s.solve({-a}), Result::unsat);
  EXPECT_EQ(s.solve(), Result::sat);
  EXPECT_TRUE(s.model_value(a));
  EXPECT_FALSE(s.add_clause({-a}));
  EXPECT_EQ(s.solve(), Result::unsat);
}

TEST(SatSolver, Pigeonhole) {
  // 5 pigeons, 4 holes.
  Solver s;
  int v[5][4];
  for (auto& row : v) {
    for (int& x : row) {
      x = s.new_var();
    }
  }
  for (auto& row : v) {
    s.add_clause({row[0], row[1], row[2], row[3]});
  }
  for (int h = 0; h < 4; ++h) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        s.add_clause({-v[i][h], -v[j][h]});
      }
    }
  }
  EXPECT_EQ(s.solve(), Result::unsat);
}

TEST(SatSolver, ConflictLimit) {
  Solver s;
  int v[8][7];
  for (auto& row : v) {
    for (int& x : row) {
      x = s.new_var();
    }
  }
  for (auto& row : v) {
    s.add_clause(std::vector<int>(std::begin(row), std::end(row)));
  }
  for (int h = 0; h < 7; ++h) {
    for (int i = 0; i < 8; ++i) {
      for (int j = i + 1; j < 8; ++j) {
        s.add_clause({-v[i][h], -v[j][h]});
      }
    }
  }
  EXPECT_EQ(s.solve({}, 5), Result::unknown);
  EXPECT_GE(s.conflicts(), 5u);
}

TEST(SatSolver, RandomThreeSatMatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 400; ++round) {
    const int vars = 3 + round % 10;
    const int clauses = static_cast<int>(vars * (3.0 + (round % 5) * 0.4));
    Cnf cnf;
    std::uniform_int_distribution<int> var(1, vars);
    for (int c = 0; c < clauses; ++c) {
      std::vector<int> cl;
      for (int k = 0; k < 3; ++k) {
        cl.push_back(rng() & 1 ? var(rng) : -var(rng));
      }
      cnf.push_back(cl);
    }
    Solver s;
    for (int i = 0; i < vars; ++i) {
      s.new_var();
    }
    for (const auto& c : cnf) {
      s.add_clause(c);
    }
    for (int q = 0; q < 3; ++q) {
      std::vector<int> assume;
      for (int k = 0; k < q; ++k) {
        assume.push_back(rng() & 1 ? var(rng) : -var(rng));
      }
      const Result r = s.solve(assume);
      ASSERT_EQ(r == Result::sat, brute_force(vars, cnf, assume)) << round;
      if (r == Result::sat) {
        for (const auto& c : cnf) {
          bool sat = false;
          for (int l : c) {
            sat = sat || s.model_value(std::abs(l)) == (l > 0);
          }
          ASSERT_TRUE(sat);
        }
        for (int l : assume) {
          ASSERT_EQ(s.model_value(std::abs(l)), l > 0);
        }
      }
    }
  }
}
