"""JSON encodings of polynomials, ABPs, decompositions, chains and subspaces.

Scalars are strings: rationals as "num/den" (den omitted when 1) and prime
field elements as "v mod p".  Every ``*_from_json`` raises ``FormatError``
naming the offending location.
"""

from __future__ import annotations

import json
from importlib.resources import files

from .abp import Abp, Edge
from .algebra import QQ, field_from_tag
from .chain import IdealChain
from .decomp import StrengthDecomposition
from .poly import LinearForm, Polynomial
from .subspace import LinearSubspace


class FormatError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _get(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise FormatError(where, "expected an object")
    if key not in obj:
        raise FormatError(where, f"missing key {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"{where}.{key}", f"expected {kind.__name__}")
    return v


def _field(obj, where, default=QQ):
    tag = obj.get("field") if isinstance(obj, dict) else None
    if tag is None:
        return default
    try:
        return field_from_tag(tag)
    except ValueError as exc:
        raise FormatError(f"{where}.field", str(exc)) from None


def _scalar(f, s, where):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(where, "scalars must be strings or integers")
    try:
        return f(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(where, f"bad scalar {s!r}: {exc}") from None


# -- polynomials ----------------------------------------------------------


def poly_to_json(F: Polynomial) -> dict:
    return {
        "vars": F.num_vars,
        "field": F.field.tag,
        "terms": [{"coeff": F.field.format(c), "exps": list(e)} for e, c in F.terms],
    }


def poly_from_json(obj, where="poly", field=None) -> Polynomial:
    n = _get(obj, "vars", where, int)
    f = _field(obj, where, field or QQ)
    if field is not None and f != field:
        raise FormatError(f"{where}.field", f"expected {field.tag}, got {f.tag}")
    terms = {}
    for i, t in enumerate(_get(obj, "terms", where, list)):
        w = f"{where}.terms[{i}]"
        exps = _get(t, "exps", w, list)
        if len(exps) != n or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in exps):
            raise FormatError(f"{w}.exps", f"need {n} non-negative integers")
        e = tuple(exps)
        if e in terms:
            raise FormatError(w, "repeated monomial")
        terms[e] = _scalar(f, _get(t, "coeff", w), f"{w}.coeff")
    return Polynomial(n, terms, f)


# -- linear forms and subspaces -------------------------------------------


def form_to_json(L: LinearForm) -> list:
    return [L.field.format(c) for c in L.coeffs]


def form_from_json(arr, n, f, where) -> LinearForm:
    if not isinstance(arr, list) or len(arr) != n:
        raise FormatError(where, f"expected a list of {n} scalars")
    return LinearForm(tuple(_scalar(f, c, f"{where}[{i}]") for i, c in enumerate(arr)), f)


def forms_to_json(Q: LinearSubspace) -> dict:
    return {"vars": Q.num_vars, "field": Q.field.tag, "forms": [form_to_json(L) for L in Q.forms]}


def forms_from_json(obj, where="forms", field=None) -> LinearSubspace:
    n = _get(obj, "vars", where, int)
    f = _field(obj, where, field or QQ)
    forms = [form_from_json(a, n, f, f"{where}.forms[{i}]")
             for i, a in enumerate(_get(obj, "forms", where, list))]
    return LinearSubspace(forms, n, f)


# -- ABPs -----------------------------------------------------------------


def abp_to_json(a: Abp) -> dict:
    edges = []
    for e in a.edges:
        item = {"layer": e.layer, "from": e.src, "to": e.dst, "label": form_to_json(e.label)}
        if e.to_layer is not None:
            item["to_layer"] = e.to_layer
        edges.append(item)
    return {"vars": a.num_vars, "field": a.field.tag, "widths": list(a.widths), "edges": edges}


def abp_from_json(obj, where="abp") -> Abp:
    n = _get(obj, "vars", where, int)
    f = _field(obj, where)
    widths = _get(obj, "widths", where, list)
    if not all(isinstance(w, int) and not isinstance(w, bool) for w in widths):
        raise FormatError(f"{where}.widths", "expected integers")
    edges = []
    for i, e in enumerate(_get(obj, "edges", where, list)):
        w = f"{where}.edges[{i}]"
        layer = _get(e, "layer", w, int)
        src = _get(e, "from", w, int)
        dst = _get(e, "to", w, int)
        to_layer = e.get("to_layer")
        if to_layer is not None and not isinstance(to_layer, int):
            raise FormatError(f"{w}.to_layer", "expected an integer")
        # a wrong label length is left for validate() to report
        raw = _get(e, "label", w, list)
        label = LinearForm(tuple(_scalar(f, c, f"{w}.label[{k}]") for k, c in enumerate(raw)), f)
        edges.append(Edge(layer, src, dst, label, to_layer))
    return Abp(n, widths, edges, f)


# -- decompositions and chains --------------------------------------------


def decomp_to_json(dec: StrengthDecomposition) -> dict:
    return {
        "degree": dec.degree,
        "restriction": dec.restriction,
        "pairs": [{"g": poly_to_json(g), "h": poly_to_json(h)} for g, h in dec.pairs],
    }


def decomp_from_json(obj, where="decomp") -> StrengthDecomposition:
    d = _get(obj, "degree", where, int)
    j = obj.get("restriction")
    if j is not None and (not isinstance(j, int) or isinstance(j, bool)):
        raise FormatError(f"{where}.restriction", "expected an integer or null")
    pairs = []
    for i, p in enumerate(_get(obj, "pairs", where, list)):
        w = f"{where}.pairs[{i}]"
        pairs.append((poly_from_json(_get(p, "g", w), f"{w}.g"), poly_from_json(_get(p, "h", w), f"{w}.h")))
    return StrengthDecomposition(tuple(pairs), d, j)


def chain_to_json(c: IdealChain) -> dict:
    return {"levels": [[poly_to_json(g) for g in level] for level in c.levels]}


def chain_from_json(obj, where="chain") -> IdealChain:
    levels = []
    for k, level in enumerate(_get(obj, "levels", where, list)):
        if not isinstance(level, list):
            raise FormatError(f"{where}.levels[{k}]", "expected a list")
        levels.append([poly_from_json(g, f"{where}.levels[{k}][{i}]") for i, g in enumerate(level)])
    return IdealChain(levels)


# -- files ----------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def fixture_path(name: str):
    """Path of a bundled fixture file, e.g. ``fixture_path("figure1_abp.json")``."""
    return files("abpkit") / "data" / name
