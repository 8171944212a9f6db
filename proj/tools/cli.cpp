#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "minc/atm.hpp"
#include "minc/bounded.hpp"
#include "minc/circuit.hpp"
#include "minc/error.hpp"
#include "minc/eval.hpp"
#include "minc/per.hpp"
#include "minc/qbf.hpp"
#include "minc/translate.hpp"
#include "suite/suites.hpp"

namespace minc::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PreconditionError("cannot read " + path);
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Formulas are given inline or as @file.
std::string text_arg(const std::string& a) {
  return !a.empty() && a[0] == '@' ? read_file(a.substr(1)) : a;
}

Team team_arg(const KripkeModel& m, const std::string& a) {
  if (std::filesystem::is_regular_file(a)) {
    return load_team(m, read_file(a));
  }
  if (!a.empty() && a[0] == '[') {
    return load_team(m, a);
  }
  std::vector<std::string> names;
  std::stringstream s(a);
  for (std::string item; std::getline(s, item, ',');) {
    if (!item.empty()) {
      names.push_back(item);
    }
  }
  return team_from_names(m, names);
}

json model_json(const KripkeModel& m) { return json::parse(save_model(m, -1)); }
json team_json(const KripkeModel& m, const Team& t) { return team_names(m, t); }

int status_exit(SearchStatus s) {
  switch (s) {
  case SearchStatus::found:
    return ok;
  case SearchStatus::not_found:
    return negative;
  case SearchStatus::budget_exceeded:
    return budget;
  }
  return usage;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
  bool witness = false;
};

void emit(Context& c, const json& doc, const std::string& text) {
  if (c.as_json) {
    c.out << doc.dump(2) << '\n';
  } else {
    c.out << text;
  }
}

// ---------------------------------------------------------------------------

struct ParseArgs {
  std::string logic = "minc";
  std::string formula;
};

int cmd_parse(Context& c, const ParseArgs& a) {
  const std::string src = text_arg(a.formula);
  json doc;
  std::string text;
  if (a.logic == "minc") {
    const auto f = parse_minc(src);
    const auto ps = propositions(*f);
    doc = {{"formula", print_minc(f)},
           {"size", f->size()},
           {"depth", f->depth()},
           {"propositions", ps},
           {"inclusion_free", !f->has_inclusion()},
           {"modal_inclusion_logic", is_minc(*f)}};
    text = print_minc(f) + "\n";
  } else if (a.logic == "L") {
    const auto f = parse_l(src);
    doc = {{"formula", print_l(f)}, {"relations", relation_names(*f)}};
    text = print_l(f) + "\n";
  } else {
    const auto f = parse_fo(src);
    doc = {{"formula", print_fo(f)}, {"free_variables", free_variables(*f).size()}};
    text = print_fo(f) + "\n";
  }
  emit(c, doc, text);
  return ok;
}

struct EvalArgs {
  std::string semantics = "lax";
  std::string model, team, formula;
  bool no_flatness = false;
};

int cmd_eval(Context& c, const EvalArgs& a) {
  const KripkeModel m = load_model(read_file(a.model));
  const Team t = team_arg(m, a.team);
  const FormulaPtr f = parse_minc(text_arg(a.formula));
  bool value;
  if (a.semantics == "kripke") {
    const Team ext = kripke_extension(m, f);
    value = t.subset_of(ext);
  } else {
    value = eval_team(m, t, f, a.semantics == "lax" ? Semantics::lax : Semantics::strict,
                      EvalOptions{!a.no_flatness});
  }
  emit(c, {{"semantics", a.semantics}, {"value", value}}, value ? "true\n" : "false\n");
  return value ? ok : negative;
}

struct SatArgs {
  std::string logic = "minc-lax";
  std::string formula;
  SearchOptions opts;
};

int cmd_sat(Context& c, const SatArgs& a) {
  const std::string src = text_arg(a.formula);
  json doc{{"logic", a.logic}, {"max_size", a.opts.max_size}};
  std::ostringstream text;
  SearchStatus status;
  if (a.logic == "minc-lax" || a.logic == "minc-strict") {
    const auto r = bounded_sat_minc(
        parse_minc(src), a.logic == "minc-lax" ? Semantics::lax : Semantics::strict, a.opts);
    status = r.status;
    doc["steps"] = r.steps;
    if (r.model) {
      doc["size"] = r.model->size();
      doc["index"] = r.index;
      if (c.witness) {
        doc["model"] = model_json(*r.model);
        doc["team"] = team_json(*r.model, *r.team);
      }
      text << "sat: " << r.model->size() << " worlds, team " << save_team(*r.model, *r.team)
           << '\n';
      if (c.witness) {
        text << save_model(*r.model) << '\n';
      }
    }
  } else if (a.logic == "L") {
    const auto r = bounded_sat_L(parse_l(src), a.opts);
    status = r.status;
    doc["steps"] = r.steps;
    if (r.model) {
      doc["size"] = r.model->size();
      doc["world"] = r.model->world_name(*r.world);
      if (c.witness) {
        doc["model"] = model_json(*r.model);
      }
      text << "sat: " << r.model->size() << " worlds, at " << r.model->world_name(*r.world)
           << '\n';
      if (c.witness) {
        text << save_model(*r.model) << '\n';
      }
    }
  } else {
    const auto r = bounded_sat_fo2c(parse_fo(src), a.opts);
    status = r.status;
    doc["steps"] = r.steps;
    if (r.structure) {
      doc["size"] = r.structure->size();
      if (c.witness) {
        doc["structure"] = json::parse(save_structure(*r.structure, -1));
      }
      text << "sat: " << r.structure->size() << " elements\n";
      if (c.witness) {
        text << save_structure(*r.structure) << '\n';
      }
    }
  }
  doc["status"] = status_name(status);
  if (status == SearchStatus::not_found) {
    text << "no model with at most " << a.opts.max_size << " worlds\n";
  } else if (status == SearchStatus::budget_exceeded) {
    text << "budget exceeded\n";
  }
  emit(c, doc, text.str());
  return status_exit(status);
}

struct TranslateArgs {
  std::string direction = "lax";
  std::string formula;
};

int cmd_translate(Context& c, const TranslateArgs& a) {
  const FormulaPtr f = parse_minc(text_arg(a.formula));
  const std::string s =
      a.direction == "lax" ? print_l(translate_lax(f)) : print_fo(translate_strict(f));
  emit(c, {{"direction", a.direction}, {"source", print_minc(f)}, {"translation", s}}, s + "\n");
  return ok;
}

struct ReduceArgs {
  std::string kind;
  std::vector<std::string> inputs;
  bool check = false;
  std::string encoding = "per-missing-universal";
};

std::string format_set(const std::set<std::uint32_t>& s) {
  std::string out = "{";
  for (auto i : s) {
    out += (out.size() > 1 ? ", " : "") + std::to_string(i);
  }
  return out + "}";
}

int cmd_reduce(Context& c, const ReduceArgs& a) {
  auto need = [&](std::size_t n) {
    if (a.inputs.size() != n) {
      throw CLI::ValidationError("reduce " + a.kind + " takes " + std::to_string(n) +
                                 " input(s)");
    }
  };
  int code = ok;
  json doc{{"reduction", a.kind}};
  std::ostringstream text;
  if (a.kind == "expand" || a.kind == "phi-c") {
    need(1);
    const Circuit circ = parse_circuit(read_file(a.inputs[0]));
    const PerInstance inst = expand_succinct(circ);
    const auto gfp = persistent_gfp(inst);
    const bool positive = gfp.count(inst.n) != 0;
    if (a.kind == "expand") {
      doc["instance"] = json::parse(save_per(inst));
      text << save_per(inst, 2) << '\n';
    } else {
      const FormulaPtr f = build_phi_C(circ);
      doc["formula"] = print_minc(f);
      text << print_minc(f) << '\n';
      if (c.witness && positive) {
        const auto w = build_phi_C_witness(circ, gfp);
        doc["model"] = model_json(w.model);
        doc["team"] = team_json(w.model, w.team);
        text << save_model(w.model) << '\n' << save_team(w.model, w.team) << '\n';
      }
    }
    if (a.check) {
      doc["gfp"] = gfp;
      doc["positive"] = positive;
      text << "gfp " << format_set(gfp) << (positive ? ": positive\n" : ": negative\n");
      code = positive ? ok : negative;
    }
  } else if (a.kind == "atm-circuit") {
    need(2);
    const Atm m = load_atm(read_file(a.inputs[0]));
    const auto w = parse_word(a.inputs[1]);
    const Circuit circ = build_circuit_from_atm(m, w);
    doc["l"] = circ.l;
    doc["circuit"] = print_circuit(circ);
    text << print_circuit(circ);
    if (a.check) {
      const bool acc = atm_accepts(m, w);
      const bool per = per_check(expand_succinct(circ));
      doc["accepts"] = acc;
      doc["per"] = per;
      text << "# accepts " << acc << ", per " << per << '\n';
      code = acc == per ? (acc ? ok : negative) : usage;
    }
  } else if (a.kind == "dqbf-iqbf") {
    need(1);
    const DqbfInstance d = parse_dqbf(text_arg(a.inputs[0]));
    const auto enc = a.encoding == "outermost-universal" ? DepEncoding::outermost_universal
                                                         : DepEncoding::per_missing_universal;
    const IqbfInstance i = dqbf_to_iqbf(d, enc);
    doc["iqbf"] = print_minc(to_formula(i));
    text << print_minc(to_formula(i)) << '\n';
    if (a.check) {
      const bool dv = eval_dqbf(d), iv = eval_iqbf(i);
      doc["dqbf_value"] = dv;
      doc["iqbf_value"] = iv;
      text << "# dqbf " << dv << ", iqbf " << iv << '\n';
      code = dv ? ok : negative;
    }
  } else if (a.kind == "ladner") {
    need(1);
    const IqbfInstance i = parse_iqbf(text_arg(a.inputs[0]));
    const LadnerReduction red = iqbf_to_minc(i);
    doc["formula"] = print_minc(red.formula);
    text << print_minc(red.formula) << '\n';
    if (c.witness) {
      const KripkeModel tree = canonical_tree_model(red.vars, red.levels);
      doc["model"] = model_json(tree);
      doc["team"] = json::array({tree.world_name(0)});
      text << save_model(tree) << '\n';
    }
    if (a.check) {
      const bool iv = eval_iqbf(i), tv = ladner_check(i);
      doc["iqbf_value"] = iv;
      doc["tree_value"] = tv;
      text << "# iqbf " << iv << ", tree " << tv << '\n';
      code = iv ? ok : negative;
    }
  }
  emit(c, doc, text.str());
  return code;
}

struct DiffArgs {
  std::string formula;
  SearchOptions opts;
};

int cmd_diff(Context& c, const DiffArgs& a) {
  const auto r = differential_check(parse_minc(text_arg(a.formula)), a.opts);
  json doc{{"status", status_name(r.status)},
           {"lax_sat", r.lax_sat},
           {"strict_sat", r.strict_sat},
           {"steps", r.steps}};
  std::ostringstream text;
  text << "lax " << (r.lax_sat ? "sat" : "unsat") << ", strict "
       << (r.strict_sat ? "sat" : "unsat") << " within " << a.opts.max_size << " worlds\n";
  if (r.divergence_model) {
    const auto& m = *r.divergence_model;
    doc["divergence"] = {{"lax", r.divergence_lax},
                         {"model", model_json(m)},
                         {"team", team_json(m, *r.divergence_team)}};
    text << "divergence on team " << save_team(m, *r.divergence_team) << " (lax "
         << r.divergence_lax << ", strict " << !r.divergence_lax << ")\n";
    if (c.witness) {
      text << save_model(m) << '\n';
    }
  } else {
    text << "no divergence\n";
  }
  emit(c, doc, text.str());
  return r.status == SearchStatus::budget_exceeded ? budget
         : r.divergence_model                     ? ok
                                                  : negative;
}

struct SuiteArgs {
  std::string name = "all";
  double scale = 1.0;
};

int cmd_suite(Context& c, const SuiteArgs& a) {
  suite::Options opts;
  opts.scale = a.scale;
  std::vector<const suite::Suite*> chosen;
  if (a.name == "all") {
    for (const auto& s : suite::all_suites()) {
      chosen.push_back(&s);
    }
  } else if (const auto* s = suite::find_suite(a.name)) {
    chosen.push_back(s);
  } else {
    throw CLI::ValidationError("unknown suite " + a.name);
  }
  json doc = json::array();
  bool green = true;
  for (const auto* s : chosen) {
    const auto r = s->run(opts);
    green = green && r.passed;
    doc.push_back({{"suite", s->name},
                   {"passed", r.passed},
                   {"checks", r.checks},
                   {"failures", r.failures},
                   {"detail", r.detail},
                   {"examples", r.examples},
                   {"findings", r.findings}});
    if (!c.as_json) {
      c.out << (r.passed ? "[PASS] " : "[FAIL] ") << s->number << ' ' << s->name << ": "
            << r.detail << '\n';
      for (const auto& e : r.examples) {
        c.out << "    counterexample: " << e << '\n';
      }
      for (const auto& f : r.findings) {
        c.out << "    finding: " << f << '\n';
      }
    }
  }
  if (c.as_json) {
    c.out << doc.dump(2) << '\n';
  }
  return green ? ok : negative;
}

void add_search_options(CLI::App* sub, SearchOptions& o) {
  sub->add_option("--max-size", o.max_size, "largest model size")->capture_default_str();
  sub->add_option("--budget", o.budget, "step budget, 0 for none")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_flag("--symmetry", o.symmetry_breaking, "skip isomorphic valuations");
  sub->add_flag("--empty-relation", o.empty_relation, "only models with R empty");
  sub->add_flag("--distinct-valuations", o.distinct_valuations,
                "only models whose worlds differ in valuation");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modal inclusion logic workbench"};
  app.name("minc");
  app.require_subcommand(1);
  Context ctx{out, err};
  app.add_flag("--json", ctx.as_json, "machine-readable output");
  app.add_flag("--witness", ctx.witness, "print witnesses");

  ParseArgs pa;
  auto* parse = app.add_subcommand("parse", "parse and print a formula");
  parse->add_option("--logic", pa.logic)->check(CLI::IsMember({"minc", "L", "fo"}));
  parse->add_option("formula", pa.formula, "formula or @file")->required();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate a formula on a team");
  eval->add_option("--semantics", ea.semantics)
      ->check(CLI::IsMember({"lax", "strict", "kripke"}));
  eval->add_flag("--no-flatness", ea.no_flatness, "unfold team clauses on flat formulas");
  eval->add_option("model", ea.model, "model JSON file")->required();
  eval->add_option("team", ea.team, "team file, JSON array or comma-separated worlds")
      ->required();
  eval->add_option("formula", ea.formula, "formula or @file")->required();

  SatArgs sa;
  auto* sat = app.add_subcommand("sat", "bounded satisfiability");
  sat->add_option("--logic", sa.logic)
      ->check(CLI::IsMember({"minc-lax", "minc-strict", "L", "fo2c"}));
  add_search_options(sat, sa.opts);
  sat->add_option("formula", sa.formula, "formula or @file")->required();

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "translate to L (lax) or FO2 (strict)");
  translate->add_option("direction", ta.direction)
      ->required()
      ->check(CLI::IsMember({"lax", "strict"}));
  translate->add_option("formula", ta.formula, "formula or @file")->required();

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "run a reduction");
  reduce->add_option("kind", ra.kind)
      ->required()
      ->check(CLI::IsMember({"expand", "phi-c", "atm-circuit", "dqbf-iqbf", "ladner"}));
  reduce->add_option("inputs", ra.inputs, "circuit file | ATM file and word | formula")
      ->required();
  reduce->add_flag("--check", ra.check, "also decide the instance on both sides");
  reduce->add_option("--encoding", ra.encoding, "dep encoding for dqbf-iqbf")
      ->check(CLI::IsMember({"per-missing-universal", "outermost-universal"}));

  DiffArgs da;
  auto* diff = app.add_subcommand("diff", "look for a lax/strict divergence");
  add_search_options(diff, da.opts);
  diff->add_option("formula", da.formula, "formula or @file")->required();

  SuiteArgs ua;
  auto* suite_cmd = app.add_subcommand("suite", "run an acceptance suite (or all)");
  suite_cmd->add_option("name", ua.name)->capture_default_str();
  suite_cmd->add_option("--scale", ua.scale, "corpus size factor")->capture_default_str();

  std::vector<const char*> argv{"minc"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }
  try {
    if (*parse) {
      return cmd_parse(ctx, pa);
    }
    if (*eval) {
      return cmd_eval(ctx, ea);
    }
    if (*sat) {
      return cmd_sat(ctx, sa);
    }
    if (*translate) {
      return cmd_translate(ctx, ta);
    }
    if (*reduce) {
      return cmd_reduce(ctx, ra);
    }
    if (*diff) {
      return cmd_diff(ctx, da);
    }
    return cmd_suite(ctx, ua);
  } catch (const BudgetExceeded& e) {
    err << "minc: " << e.what() << '\n';
    return budget;
  } catch (const CLI::ValidationError& e) {
    err << "minc: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "minc: " << e.what() << '\n';
    return usage;
  } catch (const nlohmann::json::exception& e) {
    err << "minc: " << e.what() << '\n';
    return usage;
  }
}

} // namespace minc::cli
