#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

#include "cli.hpp"
#include "minc/bounded.hpp"
#include "minc/circuit.hpp"
#include "minc/eval.hpp"
#include "minc/per.hpp"

using namespace minc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = minc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MINC_TEST_DATA) + "/" + name; }

} // namespace

TEST(Cli, EvalExitCodes) {
  const auto lax = invoke({"eval", "--semantics", "lax", data("divergence.json"), "w", "dia (q <= p)"});
  EXPECT_EQ(lax.code, 0) << lax.err;
  EXPECT_EQ(lax.out, "true\n");
  const auto strict =
      invoke({"eval", "--semantics", "strict", data("divergence.json"), "w", "dia (q <= p)"});
  EXPECT_EQ(strict.code, 1);
  EXPECT_EQ(invoke({"eval", "--semantics", "kripke", data("divergence.json"), "u,v", "p | q"}).code,
            0);
  EXPECT_EQ(invoke({"eval", "--semantics", "kripke", data("divergence.json"), "w,u", "p"}).code, 1);
  EXPECT_EQ(invoke({"eval", "--semantics", "lax", data("divergence.json"), "[]", "p & !p"}).code, 0);
}

TEST(Cli, SatExitCodes) {
  EXPECT_EQ(invoke({"sat", "--logic", "minc-lax", "--max-size", "1", "p & !p"}).code, 1);
  EXPECT_EQ(invoke({"sat", "--logic", "minc-strict", "--max-size", "1", "p"}).code, 0);
  EXPECT_EQ(invoke({"sat", "--logic", "L", "--max-size", "2", "(<E> p & [E] !p)"}).code, 1);
  EXPECT_EQ(invoke({"sat", "--logic", "fo2c", "--max-size", "1", "exists x. p(x)"}).code, 0);
  EXPECT_EQ(invoke({"sat", "--logic", "minc-lax", "--max-size", "3", "--budget", "3",
                 "dia (q <= p) & box (p | q) & box (!p | !q) & dia p & dia q"})
                .code,
            3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"sat", "--logic", "nope", "p"}).code, 2);
  const auto bad = invoke({"parse", "(p &"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("offset"), std::string::npos);
  EXPECT_EQ(invoke({"eval", data("missing.json"), "w", "p"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, JsonWitnessMatchesLibrary) {
  const auto r = invoke({"--json", "--witness", "sat", "--logic", "minc-lax", "--max-size", "3",
                      "dia (q <= p)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  SearchOptions o;
  o.max_size = 3;
  const auto lib = bounded_sat_minc(parse_minc("dia (q <= p)"), Semantics::lax, o);
  const KripkeModel m = load_model(doc["model"].dump());
  EXPECT_EQ(m, *lib.model);
  EXPECT_EQ(load_team(m, doc["team"].dump()), *lib.team);
  EXPECT_EQ(doc["index"].get<std::uint64_t>(), lib.index);
  EXPECT_TRUE(eval_lax(m, load_team(m, doc["team"].dump()), parse_minc("dia (q <= p)")));
}

TEST(Cli, Diff) {
  const auto r = invoke({"--json", "diff", "--max-size", "3", "dia (q <= p)"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["divergence"]["lax"].get<bool>());
  EXPECT_EQ(invoke({"diff", "--max-size", "2", "(p | box q)"}).code, 1);
}

TEST(Cli, Translate) {
  EXPECT_EQ(invoke({"translate", "lax", "p"}).out, "(sub0 & [E] (sub0 -> p))\n");
  EXPECT_EQ(invoke({"translate", "sideways", "p"}).code, 2);
}

TEST(Cli, Reductions) {
  const auto ex = invoke({"--json", "reduce", "expand", data("copy_bit.circuit"), "--check"});
  ASSERT_EQ(ex.code, 0) << ex.err;
  const auto doc = nlohmann::json::parse(ex.out);
  const auto inst = load_per(doc["instance"].dump());
  EXPECT_EQ(inst.triples, expand_succinct(parse_circuit(R"(g1 = IN
g2 = IN
g3 = IN
g4 = AND g1 g2
g5 = NOT g1
g6 = NOT g2
g7 = AND g5 g6
g8 = OR g4 g7
)")).triples);
  const auto phi = invoke({"--json", "--witness", "reduce", "phi-c", data("copy_bit.circuit")});
  const auto pd = nlohmann::json::parse(phi.out);
  const KripkeModel m = load_model(pd["model"].dump());
  EXPECT_TRUE(eval_lax(m, load_team(m, pd["team"].dump()),
                       parse_minc(pd["formula"].get<std::string>())));

  const auto atm = invoke({"reduce", "atm-circuit", data("exists_branch.atm.json"), "0", "--check"});
  EXPECT_EQ(atm.code, 0) << atm.err;
  EXPECT_NE(atm.out.find("# accepts 1, per 1"), std::string::npos);

  EXPECT_EQ(invoke({"reduce", "dqbf-iqbf", "forall p exists q (dep(; q) & ((!q | p) & (q | !p)))",
                 "--check"})
                .code,
            1);
  const auto outer = invoke({"reduce", "dqbf-iqbf", "--encoding", "outermost-universal",
                         "forall p exists q (dep(p; q) & (q | !q))"});
  EXPECT_NE(outer.out.find("(s p q <= p p q)"), std::string::npos) << outer.out;
  EXPECT_EQ(invoke({"reduce", "ladner", "forall r1 r1", "--check"}).code, 1);
  EXPECT_EQ(invoke({"reduce", "expand"}).code, 2);
}

TEST(Cli, Suite) {
  const auto r = invoke({"suite", "divergence"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[PASS] 8 divergence"), std::string::npos);
  EXPECT_EQ(invoke({"suite", "gfp", "--scale", "0.05"}).code, 0);
  EXPECT_EQ(invoke({"suite", "nope"}).code, 2);
}
