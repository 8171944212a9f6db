#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "minc/atm.hpp"
#include "minc/bounded.hpp"
#include "minc/circuit.hpp"
#include "minc/corpus.hpp"
#include "minc/eval.hpp"
#include "minc/per.hpp"
#include "minc/qbf.hpp"
#include "minc/translate.hpp"
#include "oracles.hpp"

namespace minc::suite {

namespace {

class Tally {
public:
  void check(bool ok, const std::string& what = {}) {
    ++report_.checks;
    if (!ok) {
      ++report_.failures;
      if (report_.examples.size() < 5 && !what.empty()) {
        report_.examples.push_back(what);
      }
    }
  }
  void fail(const std::string& what) { check(false, what); }

  Report done(std::string detail) {
    report_.passed = report_.failures == 0 && report_.checks > 0;
    report_.detail = std::move(detail);
    return std::move(report_);
  }
  Report& report() { return report_; }

private:
  Report report_;
};

std::size_t scaled(std::size_t n, const Options& o) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * o.scale)));
}

std::string show(const KripkeModel& m) { return save_model(m, -1); }

// 1 ------------------------------------------------------------------------

Report flatness(const Options& o) {
  Tally t;
  FormulaGenOptions g;
  g.max_depth = 3;
  g.max_inclusions = 0;
  const auto formulas = formula_corpus(g, scaled(500, o), o.seed);
  const std::size_t models = scaled(200, o);
  std::mt19937_64 rng(o.seed + 1);
  for (const auto& f : formulas) {
    if (f->has_inclusion() || f->depth() > 3) {
      t.fail("corpus formula out of range: " + print_minc(f));
      continue;
    }
    for (std::size_t s = 0; s < models; ++s) {
      const KripkeModel m = random_model(rng, 1 + s % 3, g.props, 0.5);
      TeamEvaluator lax(m, f, Semantics::lax, EvalOptions{false});
      TeamEvaluator strict(m, f, Semantics::strict, EvalOptions{false});
      std::vector<bool> point(m.size());
      for (std::size_t w = 0; w < m.size(); ++w) {
        point[w] = oracle::kripke_truth(m, w, *f);
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.size()); ++mask) {
        const Team team = Team::from_mask(m.size(), mask);
        bool want = true;
        for (std::size_t w = 0; w < m.size(); ++w) {
          if (team.contains(w)) {
            want = want && point[w];
          }
        }
        const bool l = lax.eval(team), st = strict.eval(team);
        t.check(l == want && st == want, print_minc(f) + " team " + std::to_string(mask) +
                                             " on " + show(m));
      }
    }
  }
  std::ostringstream d;
  d << formulas.size() << " formulas x " << models << " models, " << t.report().checks
    << " (model, team) cases";
  return t.done(d.str());
}

// 2 ------------------------------------------------------------------------

Report empty_team(const Options& o) {
  Tally t;
  FormulaGenOptions g;
  g.max_depth = 3;
  g.max_inclusions = 2;
  const auto formulas = formula_corpus(g, scaled(500, o), o.seed + 2);
  const std::size_t models = scaled(200, o);
  std::mt19937_64 rng(o.seed + 3);
  std::size_t with_inclusion = 0, strict_true = 0, lax_only = 0;
  for (const auto& f : formulas) {
    with_inclusion += f->has_inclusion();
    for (std::size_t s = 0; s < models; ++s) {
      const KripkeModel m = random_model(rng, 1 + s % 3, g.props, 0.5);
      TeamEvaluator lax(m, f, Semantics::lax);
      TeamEvaluator strict(m, f, Semantics::strict);
      const Team none = m.empty_team();
      t.check(lax.eval(none) && strict.eval(none), "empty team fails " + print_minc(f));
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m.size()); ++mask) {
        const Team team = Team::from_mask(m.size(), mask);
        const bool st = strict.eval(team), l = lax.eval(team);
        strict_true += st;
        lax_only += l && !st;
        t.check(!st || l, "strict but not lax: " + print_minc(f) + " team " +
                              std::to_string(mask) + " on " + show(m));
      }
    }
  }
  std::ostringstream d;
  d << formulas.size() << " formulas (" << with_inclusion << " with inclusion atoms), "
    << t.report().checks << " checks, " << strict_true << " strict-true teams, " << lax_only
    << " lax-only teams";
  return t.done(d.str());
}

// 3 ------------------------------------------------------------------------

FormulaGenOptions roundtrip_corpus_options() {
  FormulaGenOptions g;
  g.props = {"p", "q", "r"};
  g.max_depth = 2;
  g.max_inclusions = 2;
  return g;
}

Report lax_roundtrip(const Options& o) {
  Tally t;
  const auto formulas = formula_corpus(roundtrip_corpus_options(), scaled(200, o), o.seed + 4);
  std::size_t minc_found = 0, l_found = 0;
  for (const auto& f : formulas) {
    const std::string name = print_minc(f);
    SearchOptions so;
    so.max_size = 3;
    const auto tr = translate_lax(f);
    const auto r = bounded_sat_minc(f, Semantics::lax, so);
    if (r.status == SearchStatus::found) {
      ++minc_found;
      const auto [n, w] = embed_lax_witness(*r.model, *r.team, f);
      t.check(eval_L(n, w, tr) && n.size() == r.model->size(), "embedding fails for " + name);
    }
    SearchOptions lo;
    lo.max_size = 4;
    const auto l = bounded_sat_L(tr, lo);
    if (l.status == SearchStatus::found) {
      ++l_found;
      const auto wit = extract_lax_witness(*l.model, *l.world, f);
      t.check(!wit.team.empty() && eval_lax(wit.model, wit.team, f),
              "extraction fails for " + name);
    }
    t.check(r.status != SearchStatus::found || l.status == SearchStatus::found,
            "Minc model within 3 worlds but no L model within 4 for " + name);
  }
  std::ostringstream d;
  d << formulas.size() << " formulas, " << minc_found << " lax models (n<=3), " << l_found
    << " L models (n<=4)";
  return t.done(d.str());
}

// 4 ------------------------------------------------------------------------

Report strict_roundtrip(const Options& o) {
  Tally t;
  const auto formulas = formula_corpus(roundtrip_corpus_options(), scaled(200, o), o.seed + 4);
  std::size_t minc_found = 0, fo_found = 0;
  for (const auto& f : formulas) {
    const std::string name = print_minc(f);
    const auto tr = translate_strict(f);
    SearchOptions so;
    so.max_size = 3;
    const auto r = bounded_sat_fo2c(tr, so);
    if (r.status == SearchStatus::found) {
      ++fo_found;
      const auto wit = extract_strict_witness(*r.structure, f);
      t.check(!wit.team.empty() && eval_strict(wit.model, wit.team, f),
              "extraction fails for " + name);
    }
    const auto m = bounded_sat_minc(f, Semantics::strict, so);
    if (m.status == SearchStatus::found) {
      ++minc_found;
      const auto a = embed_strict_witness(*m.model, *m.team, f);
      t.check(eval_fo2c(a, tr), "embedding fails for " + name);
      t.check(r.status == SearchStatus::found,
              "strict model within 3 worlds but no FO model within 3 for " + name);
    }
  }
  std::ostringstream d;
  d << formulas.size() << " formulas, " << fo_found << " FO models (n<=3), " << minc_found
    << " strict models (n<=3)";
  return t.done(d.str());
}

// 5 ------------------------------------------------------------------------

Report phi_c(const Options&) {
  Tally t;
  const auto circuits = circuit_corpus_l1(3);
  std::size_t positive = 0;
  for (const auto& c : circuits) {
    const std::string name = print_circuit(c);
    const PerInstance inst = expand_succinct(c);
    const bool yes = per_check(inst);
    t.check(yes == (oracle::persistent_union(inst).count(inst.n) != 0),
            "per_check disagrees with subset enumeration:\n" + name);
    const FormulaPtr f = build_phi_C(c);
    if (yes) {
      ++positive;
      const auto wit = build_phi_C_witness(c, persistent_gfp(inst));
      t.check(!wit.team.empty() && eval_lax(wit.model, wit.team, f),
              "witness fails phi_C:\n" + name);
    }
    SearchOptions so;
    so.empty_relation = true;
    so.distinct_valuations = true;
    so.max_size = std::size_t{1} << c.inputs();
    const auto r = bounded_sat_minc(f, Semantics::lax, so);
    t.check((r.status == SearchStatus::found) == yes,
            std::string(yes ? "no restricted model for a positive" : "restricted model for a negative") +
                " circuit:\n" + name);
  }
  std::ostringstream d;
  d << circuits.size() << " circuits (l=1, <=3 internal gates), " << positive << " positive";
  return t.done(d.str());
}

// 6 ------------------------------------------------------------------------

struct ToyRun {
  const char* name;
  const char* json;
  const char* word;
  bool accepts; // by hand
};

const std::vector<ToyRun>& toy_runs() {
  static const std::vector<ToyRun> runs = {
      {"pure-acc", R"({"states": ["s0"], "types": {"s0": "acc"}, "initial": "s0",
        "space": {"1": 2}})",
       "1", true},
      {"exists-branch", R"({"states": ["s0", "acc", "rej"],
        "types": {"s0": "exists", "acc": "acc", "rej": "rej"}, "initial": "s0",
        "transitions": [
          {"state": "s0", "read": 0, "write": 0, "next": "acc", "move": "right"},
          {"state": "s0", "read": 0, "write": 0, "next": "rej", "move": "stay"},
          {"state": "s0", "read": 1, "write": 1, "next": "acc", "move": "right"},
          {"state": "s0", "read": 1, "write": 1, "next": "rej", "move": "stay"}],
        "space": {"1": 2}})",
       "0", true},
      {"forall-branch", R"({"states": ["s0", "acc", "rej"],
        "types": {"s0": "forall", "acc": "acc", "rej": "rej"}, "initial": "s0",
        "transitions": [
          {"state": "s0", "read": 0, "write": 1, "next": "acc", "move": "stay"},
          {"state": "s0", "read": 0, "write": 0, "next": "rej", "move": "right"},
          {"state": "s0", "read": 1, "write": 0, "next": "acc", "move": "stay"},
          {"state": "s0", "read": 1, "write": 1, "next": "rej", "move": "right"}],
        "space": {"1": 2}})",
       "1", false},
      {"forall-both-accept", R"({"states": ["s0", "acc", "rej"],
        "types": {"s0": "forall", "acc": "acc", "rej": "rej"}, "initial": "s0",
        "transitions": [
          {"state": "s0", "read": 0, "write": 0, "next": "acc", "move": "stay"},
          {"state": "s0", "read": 0, "write": 1, "next": "acc", "move": "right"},
          {"state": "s0", "read": 1, "write": 1, "next": "acc", "move": "stay"},
          {"state": "s0", "read": 1, "write": 0, "next": "acc", "move": "right"}],
        "space": {"1": 2}})",
       "0", true},
      {"first-bit (w=1)", R"({"states": ["s0", "acc", "rej"],
        "types": {"s0": "exists", "acc": "acc", "rej": "rej"}, "initial": "s0",
        "transitions": [
          {"state": "s0", "read": 0, "write": 0, "next": "rej", "move": "stay"},
          {"state": "s0", "read": 0, "write": 1, "next": "rej", "move": "right"},
          {"state": "s0", "read": 1, "write": 1, "next": "acc", "move": "stay"},
          {"state": "s0", "read": 1, "write": 0, "next": "acc", "move": "right"}],
        "space": {"1": 2}})",
       "1", true},
      {"first-bit (w=0)", nullptr, "0", false},
  };
  return runs;
}

Report atm_chain(const Options&) {
  Tally t;
  const char* last_json = nullptr;
  std::size_t inputs = 0;
  for (const auto& run : toy_runs()) {
    const char* json = run.json ? run.json : last_json;
    last_json = json;
    const Atm m = load_atm(json);
    const auto w = parse_word(run.word);
    const bool accepts = atm_accepts(m, w);
    t.check(accepts == run.accepts, std::string(run.name) + ": atm_accepts off the hand value");
    const Circuit c = build_circuit_from_atm(m, w);
    t.check(c.l <= 7, std::string(run.name) + ": l above 7");
    const PerInstance inst = expand_succinct(c);
    t.check(per_check(inst) == accepts, std::string(run.name) + ": per_check differs");
    std::vector<bool> got(std::size_t{1} << c.inputs(), false);
    for (const auto& tr : inst.triples) {
      got[(std::uint64_t{tr[0] - 1} << (2 * c.l)) | (std::uint64_t{tr[1] - 1} << c.l) |
          (tr[2] - 1)] = true;
    }
    std::size_t mismatches = 0;
    for (std::uint64_t x = 0; x < got.size(); ++x) {
      mismatches += oracle::conditions_accept(m, w, x) != got[x];
    }
    inputs += got.size();
    t.check(mismatches == 0,
            std::string(run.name) + ": " + std::to_string(mismatches) + " inputs differ");
  }
  std::ostringstream d;
  d << toy_runs().size() << " machine runs, " << inputs << " circuit inputs audited";
  return t.done(d.str());
}

// 7 ------------------------------------------------------------------------

Report dqbf_chain(const Options&) {
  Tally t;
  const auto corpus = dqbf_corpus();
  std::size_t truths = 0, spec_pattern_failures = 0;
  std::string first_failure;
  for (const auto& d : corpus) {
    const std::string name = print_minc(to_formula(d));
    const bool team = eval_dqbf(d);
    const bool skolem = oracle::skolem_truth(d);
    const IqbfInstance i = dqbf_to_iqbf(d);
    const bool iq = eval_iqbf(i);
    const bool tree = ladner_check(i);
    truths += skolem;
    t.check(team == skolem && iq == skolem && tree == skolem,
            name + ": team " + std::to_string(team) + ", skolem " + std::to_string(skolem) +
                ", iqbf " + std::to_string(iq) + ", tree " + std::to_string(tree));
    if (eval_iqbf(dqbf_to_iqbf(d, DepEncoding::outermost_universal)) != skolem) {
      if (spec_pattern_failures++ == 0) {
        first_failure = name;
      }
    }
  }
  if (spec_pattern_failures) {
    t.report().findings.push_back(
        "outermost-universal dep encoding (s P q <= u P q) disagrees with the Skolem oracle on " +
        std::to_string(spec_pattern_failures) + " of " + std::to_string(corpus.size()) +
        " instances, e.g. " + first_failure);
  }
  std::ostringstream d;
  d << corpus.size() << " instances (" << truths << " true), per-missing-universal encoding";
  return t.done(d.str());
}

// 8 ------------------------------------------------------------------------

Report divergence(const Options&) {
  Tally t;
  KripkeModel m({"w", "u", "v"});
  m.add_edge(kAccessibility, 0, 1);
  m.add_edge(kAccessibility, 0, 2);
  m.set_valuation("p", Team::singleton(3, 1));
  m.set_valuation("q", Team::singleton(3, 2));
  const Team team = Team::singleton(3, 0);
  const auto f = parse_minc("dia (q <= p)");
  for (bool shortcut : {true, false}) {
    t.check(eval_lax(m, team, f, EvalOptions{shortcut}), "lax is false");
    t.check(!eval_strict(m, team, f, EvalOptions{shortcut}), "strict is true");
  }
  SearchOptions o;
  o.max_size = 3;
  const auto rep = differential_check(f, o);
  t.check(rep.divergence_model.has_value(), "search found no divergence within 3 worlds");
  std::string found = "none";
  if (rep.divergence_model) {
    const auto& d = *rep.divergence_model;
    found = std::to_string(d.size()) + " worlds, team " + save_team(d, *rep.divergence_team);
    // golden: w1 -> w0, w1 -> w1, p = {w1}, q = {w0}, team {w1}
    t.check(d.size() == 2 && d.edge_count(kAccessibility) == 2 &&
                d.has_edge(kAccessibility, 1, 0) && d.has_edge(kAccessibility, 1, 1) &&
                d.holds("p", 1) && !d.holds("p", 0) && d.holds("q", 0) && !d.holds("q", 1) &&
                save_team(d, *rep.divergence_team) == R"(["w1"])",
            "divergence differs from the pinned golden: " + found);
    t.check(rep.divergence_lax && eval_lax(d, *rep.divergence_team, f) &&
                !eval_strict(d, *rep.divergence_team, f),
            "reported divergence does not reevaluate");
  }
  return t.done("w->u, w->v, V(p)={u}, V(q)={v}, T={w}: lax true, strict false; search: " + found);
}

// 9 ------------------------------------------------------------------------

Report gfp(const Options& o) {
  Tally t;
  std::mt19937_64 rng(o.seed + 9);
  const std::vector<double> densities{0.005, 0.02, 0.05, 0.12};
  const std::size_t rounds = scaled(600, o);
  std::size_t positive = 0;
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto n = static_cast<std::uint32_t>(1 + r % 8);
    const PerInstance inst = random_per(rng, n, densities[(r / 8) % densities.size()] * 8.0 / n);
    const auto g = persistent_gfp(inst);
    const auto u = oracle::persistent_union(inst);
    positive += per_check(inst);
    t.check(g == u && is_persistent(inst, g) && per_check(inst) == (u.count(n) != 0),
            save_per(inst));
  }
  std::ostringstream d;
  d << rounds << " random instances (n<=8), " << positive << " positive";
  return t.done(d.str());
}

} // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = {
      {1, "flatness", "inclusion-free formulas: lax = strict = pointwise", flatness},
      {2, "empty-team", "empty team satisfies everything; strict implies lax", empty_team},
      {3, "lax-roundtrip", "Minc lax <-> L witnesses", lax_roundtrip},
      {4, "strict-roundtrip", "Minc strict <-> FO2 counting witnesses", strict_roundtrip},
      {5, "phi-c", "succinct PER circuits <-> phi_C", phi_c},
      {6, "atm-chain", "toy ATMs -> circuit -> PER", atm_chain},
      {7, "dqbf-chain", "DQBF = Skolem = IQBF = Ladner tree", dqbf_chain},
      {8, "divergence", "pinned lax/strict divergence", divergence},
      {9, "gfp", "greatest persistent set is maximal", gfp},
  };
  return suites;
}

const Suite* find_suite(const std::string& name) {
  for (const auto& s : all_suites()) {
    if (s.name == name || std::to_string(s.number) == name) {
      return &s;
    }
  }
  return nullptr;
}

} // namespace minc::suite
