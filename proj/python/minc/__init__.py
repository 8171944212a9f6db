"""Python bindings for the minc workbench.

Models, structures and PER instances travel as JSON. The wrappers here accept
either JSON text or already-decoded Python objects and decode results back.
"""

import json

from . import _minc
from ._minc import (
    BudgetExceeded,
    Error,
    ParseError,
    PreconditionError,
    SchemaError,
    UnknownRelation,
    atm_accepts,
    atm_circuit,
    dqbf_to_iqbf,
    eval_dqbf,
    eval_iqbf,
    iqbf_to_minc,
    ladner_check,
    parse,
    translate,
)

__all__ = [
    "BudgetExceeded", "Error", "ParseError", "PreconditionError", "SchemaError",
    "UnknownRelation", "atm_accepts", "atm_circuit", "dqbf_to_iqbf", "eval_dqbf",
    "eval_iqbf", "evaluate", "expand_succinct", "iqbf_to_minc", "ladner_check", "parse",
    "per_check", "persistent_gfp", "phi_c", "sat", "translate",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _decode(result, *keys):
    for k in keys:
        if k in result:
            result[k] = json.loads(result[k])
    return result


def evaluate(model, team, formula, semantics="lax", flatness=True):
    """Truth of `formula` on `team` (a list of world names)."""
    return _minc.evaluate(_text(model), list(team), formula, semantics, flatness)


def sat(formula, logic="minc-lax", max_size=3, budget=0, jobs=1, symmetry_breaking=False,
        empty_relation=False, distinct_valuations=False):
    r = _minc.sat(formula, logic, max_size, budget, jobs, symmetry_breaking, empty_relation,
                  distinct_valuations)
    return _decode(r, "model", "structure")


def expand_succinct(circuit):
    return json.loads(_minc.expand_succinct(circuit))


def persistent_gfp(instance):
    return set(_minc.persistent_gfp(_text(instance)))


def per_check(instance):
    return _minc.per_check(_text(instance))


def phi_c(circuit):
    return _decode(_minc.phi_c(circuit), "model")
