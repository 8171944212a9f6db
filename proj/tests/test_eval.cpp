#include <gtest/gtest.h>

#include <functional>

#include "minc/bounded.hpp"
#include "minc/corpus.hpp"
#include "minc/error.hpp"
#include "minc/eval.hpp"

using namespace minc;

namespace {

KripkeModel fork_model() {
  KripkeModel m({"w", "u", "v"});
  m.add_edge("R", 0, 1);
  m.add_edge("R", 0, 2);
  m.set_valuation("p", team_from_names(m, {"u"}));
  m.set_valuation("q", team_from_names(m, {"v"}));
  return m;
}

// Clause-by-clause reference semantics over explicit world masks.
bool naive(const KripkeModel& m, std::uint64_t t, const Formula& f, Semantics s) {
  const std::size_t n = m.size();
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  auto members = [&](std::uint64_t x) {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < n; ++w) {
      if ((x >> w) & 1) {
        out.push_back(w);
      }
    }
    return out;
  };
  switch (f.kind()) {
  case NodeKind::prop:
    return (t & ~m.valuation(f.name()).to_mask()) == 0;
  case NodeKind::neg_prop:
    return (t & m.valuation(f.name()).to_mask()) == 0;
  case NodeKind::conj:
    return naive(m, t, *f.left(), s) && naive(m, t, *f.right(), s);
  case NodeKind::disj:
    for (std::uint64_t a = 0; a <= all; ++a) {
      for (std::uint64_t b = 0; b <= all; ++b) {
        if ((a | b) != t || (s == Semantics::strict && (a & b))) {
          continue;
        }
        if (naive(m, a, *f.left(), s) && naive(m, b, *f.right(), s)) {
          return true;
        }
      }
    }
    return false;
  case NodeKind::box: {
    std::uint64_t img = 0;
    for (auto w : members(t)) {
      img |= m.successors("R", w).to_mask();
    }
    return naive(m, img, *f.left(), s);
  }
  case NodeKind::diamond: {
    const auto ws = members(t);
    if (s == Semantics::lax) {
      for (std::uint64_t img = 0; img <= all; ++img) {
        bool ok = true;
        for (auto w : ws) {
          ok = ok && (m.successors("R", w).to_mask() & img);
        }
        for (auto v : members(img)) {
          ok = ok && (m.predecessors("R", v).to_mask() & t);
        }
        if (ok && naive(m, img, *f.left(), s)) {
          return true;
        }
      }
      return false;
    }
    std::function<bool(std::size_t, std::uint64_t)> go = [&](std::size_t i, std::uint64_t img) {
      if (i == ws.size()) {
        return naive(m, img, *f.left(), s);
      }
      for (auto v : m.successors("R", ws[i]).members()) {
        if (go(i + 1, img | (std::uint64_t{1} << v))) {
          return true;
        }
      }
      return false;
    };
    return go(0, 0);
  }
  case NodeKind::inclusion:
    for (auto w : members(t)) {
      bool hit = false;
      for (auto v : members(t)) {
        bool same = true;
        for (std::size_t i = 0; i < f.lhs().size(); ++i) {
          same = same && m.holds(f.lhs()[i], w) == m.holds(f.rhs()[i], v);
        }
        hit = hit || same;
      }
      if (!hit) {
        return false;
      }
    }
    return true;
  default:
    throw Error("naive: unsupported node");
  }
}

} // namespace

TEST(EvalKripke, Examples) {
  KripkeModel m({"w", "u"});
  m.add_edge("R", 0, 1);
  m.set_valuation("p", team_from_names(m, {"u"}));
  EXPECT_TRUE(eval_kripke(m, 1, prop("p")));
  EXPECT_TRUE(eval_kripke(m, 0, parse_minc("dia p")));
  EXPECT_TRUE(eval_kripke(m, 1, parse_minc("box p")));
  EXPECT_TRUE(eval_kripke(m, 1, parse_minc("box !p")));
  EXPECT_THROW(eval_kripke(m, 0, parse_minc("p <= p")), PreconditionError);
}

TEST(EvalL, Examples) {
  KripkeModel m({"v", "u"});
  m.add_edge("R", 0, 1);
  m.set_valuation("p", team_from_names(m, {"v"}));
  EXPECT_TRUE(eval_L(m, 1, parse_l("<E>p")));
  EXPECT_TRUE(eval_L(m, 1, parse_l("<R^-1>p")));
  EXPECT_FALSE(eval_L(m, 0, parse_l("<R^-1>p")));
  EXPECT_FALSE(eval_L(m, 0, parse_l("[E]p")));
  m.set_valuation("p", m.full_team());
  EXPECT_TRUE(eval_L(m, 0, parse_l("[E]p")));
  m.set_valuation("p", m.empty_team());
  EXPECT_FALSE(eval_L(m, 0, parse_l("<E>p")));
  EXPECT_THROW(eval_L(m, 0, parse_l("<S>p")), UnknownRelation);
}

TEST(EvalTeam, Divergence) {
  auto m = fork_model();
  const auto f = parse_minc("dia (q <= p)");
  const Team t = team_from_names(m, {"w"});
  EXPECT_TRUE(eval_lax(m, t, f));
  EXPECT_FALSE(eval_strict(m, t, f));
  TeamEvaluator ev(m, f, Semantics::lax);
  ASSERT_TRUE(ev.eval(t));
  EXPECT_EQ(team_names(m, *ev.find_successor(0, t)), (std::vector<std::string>{"u", "v"}));
}

TEST(EvalTeam, InclusionFailure) {
  KripkeModel m({"u", "v"});
  m.set_valuation("p", team_from_names(m, {"u"}));
  m.set_valuation("q", team_from_names(m, {"u", "v"}));
  EXPECT_FALSE(eval_lax(m, m.full_team(), parse_minc("p <= q")));
  EXPECT_TRUE(eval_lax(m, m.full_team(), parse_minc("q <= q")));
}

TEST(EvalTeam, StrictSelectorWitness) {
  auto m = fork_model();
  const auto f = parse_minc("dia q");
  TeamEvaluator ev(m, f, Semantics::strict);
  const Team t = team_from_names(m, {"w"});
  ASSERT_TRUE(ev.eval(t));
  auto sel = ev.find_selector(0, t);
  ASSERT_TRUE(sel);
  ASSERT_EQ(sel->size(), 1u);
  EXPECT_EQ((*sel)[0], std::make_pair(std::size_t{0}, std::size_t{2}));
}

TEST(EvalTeam, MatchesNaiveSemantics) {
  FormulaGenOptions o;
  o.max_depth = 3;
  o.max_inclusions = 2;
  const auto corpus = formula_corpus(o, 150, 21);
  std::mt19937_64 rng(99);
  for (const auto& f : corpus) {
    for (int k = 0; k < 4; ++k) {
      const auto m = random_model(rng, 1 + k % 3, o.props);
      for (auto s : {Semantics::lax, Semantics::strict}) {
        TeamEvaluator fast(m, f, s);
        TeamEvaluator slow(m, f, s, EvalOptions{false});
        const std::uint64_t sets = satisfying_teams(m, f, s);
        for (std::uint64_t tm = 0; tm < (std::uint64_t{1} << m.size()); ++tm) {
          const Team t = Team::from_mask(m.size(), tm);
          const bool want = naive(m, tm, *f, s);
          ASSERT_EQ(fast.eval(t), want) << print_minc(f) << " " << semantics_name(s);
          ASSERT_EQ(slow.eval(t), want) << print_minc(f);
          ASSERT_EQ(((sets >> tm) & 1) != 0, want) << print_minc(f);
        }
      }
    }
  }
}

TEST(EvalTeam, EmptyTeamAlwaysTrue) {
  FormulaGenOptions o;
  o.max_depth = 3;
  o.max_inclusions = 2;
  std::mt19937_64 rng(1);
  for (const auto& f : formula_corpus(o, 300, 4)) {
    const auto m = random_model(rng, 3, o.props);
    EXPECT_TRUE(eval_lax(m, m.empty_team(), f));
    EXPECT_TRUE(eval_strict(m, m.empty_team(), f));
  }
}

TEST(EvalTeam, LargeFlatTeamsUseExtension) {
  // 70 worlds in a chain; flat formula decided without enumerating splits.
  KripkeModel m(70);
  for (std::size_t i = 0; i + 1 < 70; ++i) {
    m.add_edge("R", i, i + 1);
  }
  Team odd(70);
  for (std::size_t i = 1; i < 70; i += 2) {
    odd.insert(i);
  }
  m.set_valuation("p", odd);
  const auto f = parse_minc("(!p | dia !p)");
  EXPECT_TRUE(eval_strict(m, Team::full(70) - Team::singleton(70, 69), f));
  EXPECT_FALSE(eval_strict(m, Team::full(70), f));
}

TEST(EvalFo, CountingQuantifier) {
  FoStructure a(2);
  a.set_unary("p", Team::from_mask(2, 1));
  EXPECT_TRUE(eval_fo2c(a, parse_fo("exists1 x. p(x)")));
  a.set_unary("p", Team::from_mask(2, 3));
  EXPECT_FALSE(eval_fo2c(a, parse_fo("exists1 x. p(x)")));
  EXPECT_THROW(eval_fo2c(a, parse_fo("p(x)")), PreconditionError);
}

TEST(EvalFo, SurjectiveFunctionShape) {
  // R_d maps the interpretation of a onto that of b, inside R.
  FoStructure s(2);
  s.set_unary("a", Team::from_mask(2, 1));
  s.set_unary("b", Team::from_mask(2, 2));
  s.declare_binary("R");
  s.declare_binary("R_d");
  s.add_pair("R", 0, 1);
  s.add_pair("R_d", 0, 1);
  const auto beta = parse_fo(
      "((forall x. (a(x) -> exists1 y. (R_d(x,y) & b(y))) & forall y. (b(y) -> exists x. "
      "(R_d(x,y) & a(x)))) & forall x. forall y. (R_d(x,y) -> R(x,y)))");
  EXPECT_TRUE(eval_fo2c(s, beta));
  s.add_pair("R_d", 0, 0);
  s.set_unary("b", Team::from_mask(2, 3));
  EXPECT_FALSE(eval_fo2c(s, beta));
}
