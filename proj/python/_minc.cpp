#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minc/atm.hpp"
#include "minc/bounded.hpp"
#include "minc/circuit.hpp"
#include "minc/error.hpp"
#include "minc/eval.hpp"
#include "minc/fo.hpp"
#include "minc/kripke.hpp"
#include "minc/lformula.hpp"
#include "minc/per.hpp"
#include "minc/qbf.hpp"
#include "minc/translate.hpp"

namespace py = pybind11;
using namespace minc;

namespace {

Semantics semantics_from(const std::string& s) {
  if (s == "lax") {
    return Semantics::lax;
  }
  if (s == "strict") {
    return Semantics::strict;
  }
  throw std::invalid_argument("semantics must be 'lax' or 'strict'");
}

DepEncoding encoding_from(const std::string& s) {
  if (s == dep_encoding_name(DepEncoding::per_missing_universal)) {
    return DepEncoding::per_missing_universal;
  }
  if (s == dep_encoding_name(DepEncoding::outermost_universal)) {
    return DepEncoding::outermost_universal;
  }
  throw std::invalid_argument("unknown encoding: " + s);
}

std::string parse(const std::string& text, const std::string& logic) {
  if (logic == "minc") {
    return print_minc(parse_minc(text));
  }
  if (logic == "L") {
    return print_l(parse_l(text));
  }
  if (logic == "fo") {
    return print_fo(parse_fo(text));
  }
  throw std::invalid_argument("logic must be 'minc', 'L' or 'fo'");
}

bool evaluate(const std::string& model, const std::vector<std::string>& team,
              const std::string& formula, const std::string& semantics, bool flatness) {
  const KripkeModel m = load_model(model);
  const Team t = team_from_names(m, team);
  const FormulaPtr f = parse_minc(formula);
  if (semantics == "kripke") {
    return t.subset_of(kripke_extension(m, f));
  }
  return eval_team(m, t, f, semantics_from(semantics), EvalOptions{flatness});
}

py::dict sat(const std::string& formula, const std::string& logic, std::size_t max_size,
             std::uint64_t budget, unsigned jobs, bool symmetry_breaking, bool empty_relation,
             bool distinct_valuations) {
  SearchOptions o;
  o.max_size = max_size;
  o.budget = budget;
  o.jobs = jobs;
  o.symmetry_breaking = symmetry_breaking;
  o.empty_relation = empty_relation;
  o.distinct_valuations = distinct_valuations;
  py::dict out;
  py::gil_scoped_release release_guard;
  if (logic == "minc-lax" || logic == "minc-strict") {
    const auto r = bounded_sat_minc(parse_minc(formula),
                                    logic == "minc-lax" ? Semantics::lax : Semantics::strict, o);
    py::gil_scoped_acquire gil;
    out["status"] = status_name(r.status);
    out["steps"] = r.steps;
    if (r.model) {
      out["model"] = save_model(*r.model, -1);
      out["team"] = team_names(*r.model, *r.team);
    }
    return out;
  }
  if (logic == "L") {
    const auto r = bounded_sat_L(parse_l(formula), o);
    py::gil_scoped_acquire gil;
    out["status"] = status_name(r.status);
    out["steps"] = r.steps;
    if (r.model) {
      out["model"] = save_model(*r.model, -1);
      out["world"] = r.model->world_name(*r.world);
    }
    return out;
  }
  if (logic == "fo2c") {
    const auto r = bounded_sat_fo2c(parse_fo(formula), o);
    py::gil_scoped_acquire gil;
    out["status"] = status_name(r.status);
    out["steps"] = r.steps;
    if (r.structure) {
      out["structure"] = save_structure(*r.structure, -1);
    }
    return out;
  }
  throw std::invalid_argument("logic must be minc-lax, minc-strict, L or fo2c");
}

std::string translate(const std::string& formula, const std::string& direction) {
  const FormulaPtr f = parse_minc(formula);
  if (direction == "lax") {
    return print_l(translate_lax(f));
  }
  if (direction == "strict") {
    return print_fo(translate_strict(f));
  }
  throw std::invalid_argument("direction must be 'lax' or 'strict'");
}

std::vector<std::uint32_t> gfp(const std::string& instance) {
  const auto p = persistent_gfp(load_per(instance));
  return {p.begin(), p.end()};
}

py::dict phi_c(const std::string& circuit) {
  const Circuit c = parse_circuit(circuit);
  const auto inst = expand_succinct(c);
  const auto p = persistent_gfp(inst);
  py::dict out;
  out["formula"] = print_minc(build_phi_C(c));
  out["positive"] = p.count(1) > 0;
  if (p.count(1)) {
    const auto w = build_phi_C_witness(c, p);
    out["model"] = save_model(w.model, -1);
    out["team"] = team_names(w.model, w.team);
  }
  return out;
}

py::dict ladner(const std::string& iqbf) {
  const auto red = iqbf_to_minc(parse_iqbf(iqbf));
  py::dict out;
  out["formula"] = print_minc(red.formula);
  out["vars"] = red.vars;
  out["levels"] = red.levels;
  return out;
}

} // namespace

PYBIND11_MODULE(_minc, m) {
  m.doc() = "Modal inclusion logic workbench";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<SchemaError>(m, "SchemaError", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<UnknownRelation>(m, "UnknownRelation", base);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);

  m.def("parse", &parse, py::arg("text"), py::arg("logic") = "minc",
        "Parse a formula and return its canonical printing.");
  m.def("evaluate", &evaluate, py::arg("model"), py::arg("team"), py::arg("formula"),
        py::arg("semantics") = "lax", py::arg("flatness") = true);
  m.def("sat", &sat, py::arg("formula"), py::arg("logic") = "minc-lax", py::arg("max_size") = 3,
        py::arg("budget") = 0, py::arg("jobs") = 1, py::arg("symmetry_breaking") = false,
        py::arg("empty_relation") = false, py::arg("distinct_valuations") = false);
  m.def("translate", &translate, py::arg("formula"), py::arg("direction"));

  m.def("expand_succinct",
        [](const std::string& circuit) { return save_per(expand_succinct(parse_circuit(circuit))); },
        py::arg("circuit"));
  m.def("persistent_gfp", &gfp, py::arg("instance"));
  m.def("per_check", [](const std::string& inst) { return per_check(load_per(inst)); },
        py::arg("instance"));
  m.def("phi_c", &phi_c, py::arg("circuit"));

  m.def("atm_accepts",
        [](const std::string& atm, const std::string& w) {
          return atm_accepts(load_atm(atm), parse_word(w));
        },
        py::arg("atm"), py::arg("word"));
  m.def("atm_circuit",
        [](const std::string& atm, const std::string& w) {
          return print_circuit(build_circuit_from_atm(load_atm(atm), parse_word(w)));
        },
        py::arg("atm"), py::arg("word"));

  m.def("eval_dqbf", [](const std::string& d) { return eval_dqbf(parse_dqbf(d)); },
        py::arg("dqbf"));
  m.def("eval_iqbf", [](const std::string& i) { return eval_iqbf(parse_iqbf(i)); },
        py::arg("iqbf"));
  m.def("dqbf_to_iqbf",
        [](const std::string& d, const std::string& enc) {
          return print_minc(to_formula(dqbf_to_iqbf(parse_dqbf(d), encoding_from(enc))));
        },
        py::arg("dqbf"), py::arg("encoding") = "per-missing-universal");
  m.def("iqbf_to_minc", &ladner, py::arg("iqbf"));
  m.def("ladner_check", [](const std::string& i) { return ladner_check(parse_iqbf(i)); },
        py::arg("iqbf"));
}
