#include <gtest/gtest.h>

#include <random>

#include "minc/atm.hpp"
#include "minc/bounded.hpp"
#include "minc/circuit.hpp"
#include "minc/corpus.hpp"
#include "minc/error.hpp"
#include "minc/eval.hpp"
#include "minc/per.hpp"
#include "minc/qbf.hpp"
#include "suite/oracles.hpp"

using namespace minc;

namespace {

PerInstance per(std::uint32_t n, std::vector<Triple> ts) {
  PerInstance inst;
  inst.n = n;
  for (auto t : ts) {
    inst.add(t[0], t[1], t[2]);
  }
  inst.normalize();
  return inst;
}

Circuit constant_circuit(bool value) {
  // l = 1: g4 = NOT g1, g5 = g1 | g4 (true) or g1 & g4 (false).
  return parse_circuit(std::string("g1 = IN\ng2 = IN\ng3 = IN\ng4 = NOT g1\ng5 = ") +
                       (value ? "OR" : "AND") + " g1 g4\n");
}

std::size_t count_kind(const Formula& f, NodeKind k) {
  std::size_t n = f.kind() == k ? 1 : 0;
  if (f.left()) {
    n += count_kind(*f.left(), k);
  }
  if (f.right()) {
    n += count_kind(*f.right(), k);
  }
  return n;
}

const char* kToyExists = R"({
  "states": ["s0", "acc", "rej"],
  "types": {"s0": "exists", "acc": "acc", "rej": "rej"},
  "initial": "s0",
  "transitions": [
    {"state": "s0", "read": 0, "write": 0, "next": "acc", "move": "right"},
    {"state": "s0", "read": 0, "write": 0, "next": "rej", "move": "stay"},
    {"state": "s0", "read": 1, "write": 1, "next": "acc", "move": "right"},
    {"state": "s0", "read": 1, "write": 1, "next": "rej", "move": "stay"}],
  "space": {"0": 2, "1": 2}})";

} // namespace

TEST(Per, Examples) {
  EXPECT_EQ(persistent_gfp(per(2, {{1, 1, 1}, {2, 1, 1}})), (std::set<std::uint32_t>{1, 2}));
  EXPECT_TRUE(persistent_gfp(per(3, {})).empty());
  EXPECT_TRUE(per_check(per(2, {{1, 1, 1}, {2, 1, 1}})));
  EXPECT_TRUE(per_check(per(1, {{1, 1, 1}})));
  EXPECT_FALSE(per_check(per(2, {{1, 1, 1}})));
}

TEST(Per, GfpMatchesSubsetEnumeration) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<std::uint32_t>(1 + round % 10);
    const auto inst = random_per(rng, n, 0.5 / n);
    const auto gfp = persistent_gfp(inst);
    EXPECT_TRUE(is_persistent(inst, gfp));
    EXPECT_EQ(gfp, oracle::persistent_union(inst)) << save_per(inst);
  }
}

TEST(Per, JsonRoundTripAndErrors) {
  const auto inst = per(3, {{3, 1, 2}, {1, 1, 1}});
  EXPECT_EQ(load_per(save_per(inst)).triples, inst.triples);
  EXPECT_THROW(load_per(R"({"n": 2, "triples": [[1, 3, 1]]})"), SchemaError);
  EXPECT_THROW(load_per(R"({"n": 2, "extra": 1})"), SchemaError);
  EXPECT_THROW(load_per("{"), ParseError);
}

TEST(Circuit, ParsePrintRoundTrip) {
  const auto c = constant_circuit(true);
  EXPECT_EQ(c.l, 1u);
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(print_circuit(parse_circuit(print_circuit(c))), print_circuit(c));
  EXPECT_THROW(parse_circuit("g1 = IN\ng2 = IN\n"), ParseError);
  EXPECT_THROW(parse_circuit("g1 = IN\ng2 = IN\ng3 = IN\ng4 = AND g4 g1\n"), ParseError);
  EXPECT_THROW(parse_circuit("g1 = IN\ng3 = IN\n"), ParseError);
  EXPECT_THROW(parse_circuit("g1 = IN\ng2 = IN\ng3 = NOT g1\ng4 = IN\n"), ParseError);
}

TEST(Circuit, Sharp) {
  EXPECT_EQ(sharp({false, false, false}), 1u);
  EXPECT_EQ(sharp({true, true, true}), 8u);
  EXPECT_EQ(sharp({false, true, true}), 4u);
  for (std::uint32_t i = 1; i <= 16; ++i) {
    EXPECT_EQ(sharp(unsharp(i, 4)), i);
  }
}

TEST(Circuit, ConstantCircuits) {
  const auto all = expand_succinct(constant_circuit(true));
  EXPECT_EQ(all.n, 2u);
  EXPECT_EQ(all.triples.size(), 8u);
  const auto none = expand_succinct(constant_circuit(false));
  EXPECT_TRUE(none.triples.empty());
  EXPECT_FALSE(per_check(none));
  EXPECT_THROW(circuit_eval(constant_circuit(true), {true}), PreconditionError);
}

TEST(Circuit, ExpandMatchesGateByGate) {
  const auto corpus = circuit_corpus_l1(2);
  ASSERT_EQ(corpus.size(), 1u + 9u + 9u * 16u);
  for (const auto& c : corpus) {
    const auto inst = expand_succinct(c);
    std::set<Triple> want;
    for (std::uint32_t x = 0; x < 8; ++x) {
      std::vector<bool> bits{bool(x & 4), bool(x & 2), bool(x & 1)};
      if (circuit_eval(c, bits)) {
        want.insert({sharp({bits[0]}), sharp({bits[1]}), sharp({bits[2]})});
      }
    }
    EXPECT_EQ(std::set<Triple>(inst.triples.begin(), inst.triples.end()), want);
  }
  // Wider circuit: g7 = (g1 & g4) | g6, l = 2.
  const auto c = parse_circuit(
      "g1 = IN\ng2 = IN\ng3 = IN\ng4 = IN\ng5 = IN\ng6 = IN\ng7 = AND g1 g4\ng8 = OR g7 g6\n");
  const auto inst = expand_succinct(c);
  std::size_t accepted = 0;
  for (std::uint32_t x = 0; x < 64; ++x) {
    std::vector<bool> bits;
    for (int b = 5; b >= 0; --b) {
      bits.push_back((x >> b) & 1);
    }
    accepted += circuit_eval(c, bits);
  }
  EXPECT_EQ(inst.triples.size(), accepted);
  EXPECT_EQ(inst.n, 4u);
}

TEST(PhiC, NotGateClause) {
  const auto c = parse_circuit("g1 = IN\ng2 = IN\ng3 = IN\ng4 = NOT g1\n");
  const auto f = build_phi_C(c);
  const auto theta = iff(prop("p4"), neg("p1"));
  const auto psi = conj(theta, prop("p4"));
  const auto want =
      conj(conj(conj(psi, inclusion({"p2"}, {"p1"})), inclusion({"p3"}, {"p1"})),
           inclusion({"p4"}, {"p1"}));
  EXPECT_TRUE(equal(f, want)) << print_minc(f);
}

TEST(PhiC, ShapeAndSize) {
  for (const auto& c : circuit_corpus_l1(3)) {
    const auto f = build_phi_C(c);
    EXPECT_FALSE(f->has_modality());
    EXPECT_EQ(count_kind(*f, NodeKind::inclusion), 3u);
    // At most 9 nodes per gate clause plus a constant overhead.
    EXPECT_LE(f->size(), 9 * c.size() + 8);
  }
  const auto wide = parse_circuit(
      "g1 = IN\ng2 = IN\ng3 = IN\ng4 = IN\ng5 = IN\ng6 = IN\ng7 = AND g1 g4\n");
  const auto f = build_phi_C(wide);
  EXPECT_NE(print_minc(f).find("p7 p7 <= p1 p2"), std::string::npos) << print_minc(f);
}

TEST(PhiC, Witness) {
  const auto c = constant_circuit(true);
  const auto w = build_phi_C_witness(c, {1, 2});
  EXPECT_EQ(w.model.size(), 8u);
  EXPECT_TRUE(eval_lax(w.model, w.team, build_phi_C(c)));
  EXPECT_THROW(build_phi_C_witness(constant_circuit(false), {1, 2}), PreconditionError);
  EXPECT_THROW(build_phi_C_witness(c, {1}), PreconditionError);
}

TEST(Atm, LoadValidateSave) {
  const auto m = load_atm(kToyExists);
  EXPECT_EQ(m.states.size(), 3u);
  EXPECT_EQ(load_atm(save_atm(m)).transitions.size(), 4u);
  std::string bad = kToyExists;
  bad.replace(bad.find("\"move\": \"stay\"}"), 15, "\"move\": \"up\"}");
  EXPECT_THROW(load_atm(bad), SchemaError);
  // A halting state with a transition.
  EXPECT_THROW(load_atm(R"({"states": ["a"], "types": {"a": "acc"}, "initial": "a",
    "transitions": [{"state": "a", "read": 0, "write": 0, "next": "a", "move": "stay"}],
    "space": {"1": 1}})"),
               SchemaError);
}

TEST(Atm, Acceptance) {
  const auto acc = load_atm(
      R"({"states": ["s0"], "types": {"s0": "acc"}, "initial": "s0", "space": {"2": 2}})");
  EXPECT_TRUE(atm_accepts(acc, parse_word("01")));
  EXPECT_TRUE(atm_accepts(load_atm(kToyExists), parse_word("1")));
  std::string forall = kToyExists;
  forall.replace(forall.find("\"exists\""), 8, "\"forall\"");
  EXPECT_FALSE(atm_accepts(load_atm(forall), parse_word("1")));
  EXPECT_THROW(atm_accepts(acc, parse_word("0")), PreconditionError); // no space entry
}

TEST(Atm, CycleAndOverflow) {
  const auto loop = load_atm(R"({"states": ["s", "acc"], "types": {"s": "exists", "acc": "acc"},
    "initial": "s", "transitions": [
      {"state": "s", "read": 0, "write": 0, "next": "s", "move": "stay"},
      {"state": "s", "read": 0, "write": 0, "next": "acc", "move": "stay"},
      {"state": "s", "read": 1, "write": 1, "next": "acc", "move": "right"},
      {"state": "s", "read": 1, "write": 1, "next": "acc", "move": "stay"}],
    "space": {"1": 1}})");
  EXPECT_THROW(atm_accepts(loop, parse_word("0")), PreconditionError);
  EXPECT_THROW(atm_accepts(loop, parse_word("1")), PreconditionError);
}

TEST(Atm, CircuitConditionSpotChecks) {
  const auto m = load_atm(kToyExists);
  const auto w = parse_word("1");
  const auto c = build_circuit_from_atm(m, w);
  ASSERT_EQ(c.l, 7u);
  auto input = [](std::vector<bool> a, const std::vector<bool>& b, const std::vector<bool>& d) {
    a.insert(a.end(), b.begin(), b.end());
    a.insert(a.end(), d.begin(), d.end());
    return a;
  };
  // Accepting configuration repeated three times.
  Configuration acc{{true, false}, 1, 1};
  const auto a = encode_configuration(m, acc);
  EXPECT_TRUE(circuit_eval(c, input(a, a, a)));
  // All ones, then the initial configuration twice.
  const auto init = encode_configuration(m, initial_configuration(m, w));
  EXPECT_TRUE(circuit_eval(c, input(std::vector<bool>(7, true), init, init)));
  // Existential step.
  const auto next = encode_configuration(m, successors(m, initial_configuration(m, w))[0]);
  EXPECT_TRUE(circuit_eval(c, input(init, next, next)));
  EXPECT_FALSE(circuit_eval(c, input(init, next, init)));
  EXPECT_FALSE(circuit_eval(c, input(init, init, init)));
}

TEST(Atm, CircuitMatchesConditionsOracle) {
  const auto m = load_atm(kToyExists);
  for (const char* word : {"0", "1"}) {
    const auto w = parse_word(word);
    const auto c = build_circuit_from_atm(m, w);
    const auto inst = expand_succinct(c);
    std::set<std::uint64_t> got;
    for (const auto& t : inst.triples) {
      got.insert((std::uint64_t{t[0] - 1} << 14) | (std::uint64_t{t[1] - 1} << 7) | (t[2] - 1));
    }
    std::size_t mismatches = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << 21); ++x) {
      mismatches += oracle::conditions_accept(m, w, x) != (got.count(x) != 0);
    }
    EXPECT_EQ(mismatches, 0u) << word;
    EXPECT_EQ(per_check(inst), atm_accepts(m, w));
  }
}

TEST(Qbf, Examples) {
  EXPECT_TRUE(eval_dqbf(parse_dqbf("forall p1 exists q1 (dep(p1; q1) & ((!q1 | p1) & (q1 | !p1)))")));
  EXPECT_FALSE(eval_dqbf(parse_dqbf("forall p1 exists q1 (dep(; q1) & ((!q1 | p1) & (q1 | !p1)))")));
  EXPECT_FALSE(eval_qbf(parse_minc("exists p (p & !p)")));
  EXPECT_THROW(eval_qbf(parse_minc("(p & !p)")), PreconditionError);
  EXPECT_THROW(eval_qbf(parse_minc("forall p dia p")), PreconditionError);
}

TEST(Qbf, TeamSemanticsDetails) {
  // exists picks a value per world: q can copy p.
  EXPECT_TRUE(eval_qbf(parse_minc("forall p exists q ((p & q) | (!p & !q))")));
  EXPECT_TRUE(eval_qbf(parse_minc("forall p exists q ((q <= p) & dep(; q))")));
  EXPECT_FALSE(eval_qbf(parse_minc("forall p exists q ((p <= q) & dep(; q))")));
  // Strict splits are disjoint: the p-world cannot serve both halves.
  EXPECT_FALSE(eval_qbf(parse_minc("forall p forall q ((p & (q <= p)) | (p & (p <= q)))")));
  EXPECT_TRUE(eval_qbf(parse_minc("forall p forall q (dep(p q; q))")));
  EXPECT_FALSE(eval_qbf(parse_minc("forall p forall q (dep(p; q))")));
}

TEST(Qbf, ParseDqbf) {
  const auto d = parse_dqbf("forall p1 exists q1 forall p2 exists q2 "
                            "((dep(p1; q1) & dep(; q2)) & (q1 | q2))");
  ASSERT_EQ(d.prefix.size(), 4u);
  EXPECT_EQ(d.deps.at("q1"), std::vector<std::string>{"p1"});
  EXPECT_TRUE(d.deps.at("q2").empty());
  EXPECT_EQ(print_minc(d.matrix), "(q1 | q2)");
  EXPECT_THROW(parse_dqbf("forall p1 exists q1 (dep(p2; q1) & q1)"), PreconditionError);
  EXPECT_THROW(parse_dqbf("forall p1 exists q1 dep(p1; q1)"), ParseError);
  EXPECT_THROW(parse_dqbf("forall p1 exists q1 (q1 & r)"), PreconditionError);
}

TEST(Qbf, DepEncodingOfTheKnownInstance) {
  DqbfInstance d;
  d.prefix = {{true, "p"}, {true, "q"}, {false, "r"}};
  d.deps["r"] = {"q"};
  d.matrix = parse_minc("(r | !r)");
  const auto i = dqbf_to_iqbf(d);
  EXPECT_EQ(print_minc(to_formula(i)),
            "forall p forall q exists r (forall s (s q r <= p q r) & (r | !r))");
  EXPECT_TRUE(equal(to_formula(dqbf_to_iqbf(d, DepEncoding::outermost_universal)),
                    to_formula(i)));
}

TEST(Qbf, DepFreeIsIdentityOnTheMatrix) {
  DqbfInstance d;
  d.prefix = {{true, "p"}, {false, "q"}};
  d.matrix = parse_minc("(p | q)");
  const auto i = dqbf_to_iqbf(d);
  EXPECT_TRUE(equal(to_formula(i), to_formula(d)));
}

TEST(Qbf, FreshUniversalsAvoidClashes) {
  const auto d = parse_dqbf("forall s exists q forall s1 exists r (dep(; r) & (q | r))");
  const auto i = dqbf_to_iqbf(d);
  const auto h = hoist_quantifiers(i);
  ASSERT_EQ(h.prefix.size(), 6u);
  EXPECT_EQ(h.prefix[4].var, "s2");
  EXPECT_EQ(h.prefix[5].var, "s3");
}

TEST(Qbf, SkolemOracleAgreement) {
  for (const auto& d : dqbf_corpus()) {
    const bool want = oracle::skolem_truth(d);
    EXPECT_EQ(eval_dqbf(d), want) << print_minc(to_formula(d));
    EXPECT_EQ(eval_iqbf(dqbf_to_iqbf(d)), want) << print_minc(to_formula(d));
  }
}

TEST(Ladner, SingleExistential) {
  IqbfInstance i{{{false, "r1"}}, prop("r1")};
  const auto red = iqbf_to_minc(i);
  EXPECT_TRUE(equal(red.formula, conj(ladner_structure({"r1"}, {"d0", "d1"}), diamond(prop("r1")))));
  EXPECT_TRUE(ladner_check(i));
  EXPECT_FALSE(ladner_check({{{true, "r1"}}, prop("r1")}));
}

TEST(Ladner, ModalityStringFollowsPrefix) {
  IqbfInstance i{{{true, "a"}, {false, "b"}, {true, "c"}}, parse_minc("(a | (b | c))")};
  const auto red = iqbf_to_minc(i);
  FormulaPtr body = red.formula->right();
  std::string ops;
  while (body->kind() == NodeKind::box || body->kind() == NodeKind::diamond) {
    ops += body->kind() == NodeKind::box ? 'B' : 'D';
    body = body->left();
  }
  EXPECT_EQ(ops, "BDB");
  EXPECT_EQ(red.levels.size(), 4u);
}

TEST(Ladner, TreeShape) {
  const auto t = canonical_tree_model({"x", "y"}, {"d0", "d1", "d2"});
  EXPECT_EQ(t.size(), 7u);
  EXPECT_EQ(t.successors("R", 0).count(), 2u);
  EXPECT_EQ(t.valuation("x").count(), 3u); // t1, t10, t11
  EXPECT_TRUE(eval_kripke(t, 0, ladner_structure({"x", "y"}, {"d0", "d1", "d2"})));
}

TEST(Ladner, HoistingRules) {
  EXPECT_THROW(hoist_quantifiers({{{true, "p"}}, parse_minc("(p | forall s s <= p)")}),
               PreconditionError);
  EXPECT_THROW(hoist_quantifiers({{{true, "p"}}, parse_minc("(forall p p & p)")}),
               PreconditionError);
  const auto h = hoist_quantifiers({{{true, "p"}}, parse_minc("(forall s s <= p & p)")});
  EXPECT_EQ(h.prefix.size(), 2u);
}
