"""Registry of named surfaces and classes, expression evaluation, reports.

Positivity properties that are proved geometrically (effectivity, bigness,
extremality, Lagrangian) cannot be computed here; they are stored as data,
each with a provenance string and the genericity assumption it holds under.
Everything numerical in a report is recomputed by the other modules.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product

from . import __version__, fano
from .cones import Pairing2, gap_report
from .fano import C, G2, FanoClass2, pair_fano
from .qq import ParseError, qq, to_json

FLAG_NAMES = {"effective", "nef", "big", "extremal", "lagrangian", "no-effective-multiple"}


@dataclass(frozen=True)
class Flag:
    flag: str
    value: bool
    genericity: str
    provenance: str


@dataclass(frozen=True)
class CatalogEntry:
    variety: str
    object: str
    class_expr: FanoClass2 | None
    tag: str | None
    flags: tuple[Flag, ...]
    data: dict = field(default_factory=dict, hash=False, compare=False)

    def to_json(self) -> dict:
        out = {"variety": self.variety, "object": self.object}
        if self.class_expr is not None:
            out["class"] = [self.class_expr.a, self.class_expr.b]
            out["class_str"] = str(self.class_expr)
        if self.tag:
            out["tag"] = self.tag
        if self.data:
            out["data"] = dict(self.data)
        out["flags"] = [vars(f) for f in self.flags]
        return to_json(out)


def _torsion_points() -> list[tuple[int, ...]]:
    return list(product(range(3), repeat=4))


@lru_cache(maxsize=None)
def _load() -> dict[str, tuple[CatalogEntry, ...]]:
    raw = json.loads(resources.files("hkcycles").joinpath("data/catalog.json").read_text("utf-8"))
    out = {}
    for variety, block in raw.items():
        entries = []
        templates = block.get("per_torsion_point", [])
        for tmpl in templates:
            for tau in _torsion_points():
                label = "".join(map(str, tau))
                entries.append(_entry(variety, {**tmpl, "object": f"{tmpl['object']}[{label}]", "data": {"tau": list(tau)}}))
        entries.extend(_entry(variety, e) for e in block["entries"])
        out[variety] = tuple(entries)
    return out


def _entry(variety: str, e: dict) -> CatalogEntry:
    flags = tuple(Flag(**f) for f in e.get("flags", ()))
    for f in flags:
        if f.flag not in FLAG_NAMES:
            raise ValueError(f"unknown flag {f.flag!r} on {e['object']}")
    cls = e.get("class")
    class_expr = None
    if cls is not None:
        value = evaluate(cls, variety)
        if not isinstance(value, FanoClass2):
            raise ValueError(f"class of {e['object']} is not a codimension-2 class")
        class_expr = value
    return CatalogEntry(variety, e["object"], class_expr, e.get("tag"), flags, dict(e.get("data", {})))


def varieties() -> list[str]:
    return sorted(_load())


def list_entries(variety: str) -> list[CatalogEntry]:
    catalog = _load()
    if variety not in catalog:
        raise KeyError(f"unknown variety {variety!r}; known: {', '.join(sorted(catalog))}")
    return list(catalog[variety])


def show(variety: str, name: str) -> CatalogEntry:
    for e in list_entries(variety):
        if e.object == name:
            return e
    raise KeyError(f"no entry {name!r} for {variety}")


# ---------------------------------------------------------------------------
# Expression evaluation on F(Y)
#
# Values carry a codimension: 0 numbers, 1 multiples of g, 2 classes a*g2+b*c,
# 3 curve classes, 4 intersection numbers. N^1 is spanned by g, so a curve
# class is stored as its degree against g. Codimension > 4 is an error.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class _Val:
    codim: int
    value: object  # FanoClass2 in codimension 2, else a Fraction


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            if sym not in "+-*/^(),":
                raise ParseError(f"unexpected character {sym!r}", start)
            tokens.append(("op", sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want!r}, got {got}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> _Val:
        v = self.expr()
        self.take("end")
        return v

    def expr(self) -> _Val:
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op, pos = self.take()[1], self.peek()[2]
            rhs = self.term()
            v = _add(v, rhs if op == "+" else _scale(rhs, Fraction(-1)), pos)
        return v

    def term(self) -> _Val:
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op, pos = self.take()[1], self.peek()[2]
            rhs = self.unary()
            if op == "*":
                v = _mul(v, rhs, pos)
            else:
                if rhs.codim != 0:
                    raise ParseError("can only divide by numbers", pos)
                if rhs.value == 0:
                    raise ParseError("division by zero", pos)
                v = _scale(v, 1 / rhs.value)
        return v

    def unary(self) -> _Val:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return _scale(self.unary(), Fraction(-1))
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> _Val:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take("num")
            out = _Val(0, Fraction(1))
            for _ in range(tok[1]):
                out = _mul(out, base, tok[2])
            return out
        return base

    def atom(self) -> _Val:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return _Val(0, Fraction(value))
        if kind == "op" and value == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind == "name":
            self.take()
            if value == "pair":
                self.take("op", "(")
                x = self.expr()
                self.take("op", ",")
                y = self.expr()
                self.take("op", ")")
                if x.codim != 2 or y.codim != 2:
                    raise ParseError("pair() takes two codimension-2 classes", pos)
                return _Val(4, pair_fano(x.value, y.value))
            if value in _SYMBOLS:
                return _SYMBOLS[value]()
            raise ParseError(f"unknown symbol {value!r}; known: {', '.join(sorted(_SYMBOLS))}, pair", pos)
        got = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {got}", pos)


_SYMBOLS = {
    "g": lambda: _Val(1, Fraction(1)),
    "g2": lambda: _Val(2, G2),
    "c": lambda: _Val(2, C),
    "c2": lambda: _Val(2, fano.c2()),
}


def _scale(v: _Val, s: Fraction) -> _Val:
    return _Val(v.codim, v.value * s)


def _add(a: _Val, b: _Val, pos: int) -> _Val:
    if a.codim != b.codim:
        raise ParseError(f"cannot add classes of codimension {a.codim} and {b.codim}", pos)
    return _Val(a.codim, a.value + b.value)


def _mul(a: _Val, b: _Val, pos: int) -> _Val:
    if a.codim == 0:
        return _scale(b, a.value)
    if b.codim == 0:
        return _scale(a, b.value)
    codim = a.codim + b.codim
    if codim > 4:
        raise ParseError(f"degree overflow: codimension {codim} exceeds dim X = 4", pos)
    if a.codim > b.codim:
        a, b = b, a
    if (a.codim, b.codim) == (1, 1):
        return _Val(2, G2 * (a.value * b.value))
    if (a.codim, b.codim) == (1, 2):
        return _Val(3, a.value * pair_fano(b.value, G2))
    if (a.codim, b.codim) == (1, 3):
        return _Val(4, a.value * b.value)
    return _Val(4, pair_fano(a.value, b.value))


def evaluate(expr: str, context: str = "fano-lines"):
    """Evaluate an expression on F(Y); returns a Fraction or a FanoClass2.

    >>> evaluate("pair(3*g2 - 5*c, c)")
    Fraction(0, 1)
    """
    if context != "fano-lines":
        raise ValueError(f"no expression context for {context!r}; only 'fano-lines' has a class basis")
    v = _Parser(expr).parse()
    if v.codim in (1, 3):
        raise ParseError(f"codimension-{v.codim} results are not supported; pair down to a number", 0)
    return v.value


# ---------------------------------------------------------------------------
# Report


def report_fano_lines(endpoints=(1, Fraction(8, 5))) -> dict:
    inv = fano.invariants()
    c2x = fano.c2()
    pairing = Pairing2(fano.pairing_matrix())
    gap = gap_report(pairing, endpoints, c2x.vector())
    table = []
    for lam in (qq(e) for e in endpoints):
        c2_c = pair_fano(c2x, C)
        c2_g = pair_fano(c2x, G2 - C * lam)
        table.append({"lambda": lam, "c2.c": c2_c, "c2.(g2-lambda*c)": c2_g, "positive": c2_c > 0 and c2_g > 0})
    report = {
        "variety": "fano-lines",
        "versions": {"hkcycles": __version__},
        "inputs": {"basis": ["g2", "c"], "lambda_endpoints": list(endpoints)},
        "fundamental_class": inv["fundamental_class"],
        "intersection_numbers": {"g^4": inv["g4"], "g^2.c": inv["g2c"], "c^2": inv["c2"]},
        "pairing_matrix": inv["pairing_matrix"],
        "c1": inv["c1_X"],
        "c2": inv["c2_X"],
        "c2_pairings": {"g2": inv["c2_X.g2"], "c": inv["c2_X.c"], "c2": inv["c2_X.c2_X"]},
        "nef_endpoint_table": table,
        "gap_report": gap,
        "nef_strictly_exceeds_eff": gap["nef_strictly_exceeds_eff"],
        "catalog": [e.to_json() for e in list_entries("fano-lines")],
    }
    return to_json(report)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
