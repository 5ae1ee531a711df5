"""JSON algebra documents.

Format::

    {"name": str, "dim": int,
     "brackets": [{"i": int, "j": int, "k": int, "c": "p/q"}, ...],
     "weight_system": {"rank": int, "weights": [[int, ...], ...]}}   # optional

Indices are 1-based with ``i < j``. Leaving out ``brackets`` entirely gives a
graph-only document: only the weight system is available.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DuplicateBracket, ParseError
from .lie import LieAlgebra, validate
from .torus import WeightSystem, weight_system

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text, where: str = "c") -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: expected a rational string, got {text!r}")
    s = str(text).strip()
    if not _RATIONAL.match(s):
        raise ParseError(f"{where}: malformed rational {s!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"{where}: zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class AlgebraDocument:
    name: str
    dim: int
    brackets: tuple[tuple[int, int, int, Fraction], ...] | None
    weights: tuple[tuple[int, ...], ...] | None = None
    rank: int | None = None

    @property
    def graph_only(self) -> bool:
        return self.brackets is None

    def algebra(self) -> LieAlgebra:
        if self.brackets is None:
            raise ParseError(f"{self.name}: graph-only document has no brackets")
        table = {}
        for i, j, k, c in self.brackets:
            table[(i - 1, j - 1, k - 1)] = c
        return validate(table, self.dim)

    def weight_system(self, L: LieAlgebra | None = None) -> WeightSystem:
        if self.weights is not None:
            return WeightSystem.from_vectors(self.weights, self.rank)
        return weight_system(L if L is not None else self.algebra())


def _int_field(obj, key, where):
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}.{key}: expected an integer")
    return v


def from_dict(data) -> AlgebraDocument:
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("name: expected a nonempty string")
    dim = _int_field(data, "dim", "document")
    if dim < 1:
        raise ParseError("dim: must be positive")
    brackets = None
    if "brackets" in data:
        if not isinstance(data["brackets"], list):
            raise ParseError("brackets: expected a list")
        seen = set()
        out = []
        for n, b in enumerate(data["brackets"]):
            where = f"brackets[{n}]"
            if not isinstance(b, dict):
                raise ParseError(f"{where}: expected an object")
            i, j, k = (_int_field(b, key, where) for key in "ijk")
            for key, v in zip("ijk", (i, j, k)):
                if not 1 <= v <= dim:
                    raise ParseError(f"{where}.{key}: index {v} outside 1..{dim}")
            if i >= j:
                raise ParseError(f"{where}: need i < j, got i={i}, j={j}")
            if (i, j, k) in seen:
                raise DuplicateBracket(f"{where}: duplicate bracket ({i},{j},{k})")
            seen.add((i, j, k))
            out.append((i, j, k, parse_rational(b.get("c"), f"{where}.c")))
        brackets = tuple(out)
    weights = rank = None
    if "weight_system" in data:
        w = data["weight_system"]
        if not isinstance(w, dict):
            raise ParseError("weight_system: expected an object")
        rank = _int_field(w, "rank", "weight_system")
        vecs = w.get("weights")
        if not isinstance(vecs, list) or not all(
            isinstance(v, list) and len(v) == rank and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
            for v in vecs
        ):
            raise ParseError(f"weight_system.weights: expected lists of {rank} integers")
        if len(vecs) != dim:
            raise ParseError(f"weight_system.weights: expected {dim} weights")
        weights = tuple(tuple(v) for v in vecs)
    if brackets is None and weights is None:
        raise ParseError("document needs brackets or a weight_system")
    return AlgebraDocument(name, dim, brackets, weights, rank)


def parse(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from None
    return from_dict(data)


def serialize(doc: AlgebraDocument) -> str:
    """Canonical text: fixed key order, one bracket per line, trailing newline."""
    lines = ["{", f'  "name": {json.dumps(doc.name)},', f'  "dim": {doc.dim}']
    if doc.brackets is not None:
        lines[-1] += ","
        if doc.brackets:
            lines.append('  "brackets": [')
            items = [
                f'    {{"i": {i}, "j": {j}, "k": {k}, "c": "{format_rational(c)}"}}'
                for i, j, k, c in doc.brackets
            ]
            lines.append(",\n".join(items))
            lines.append("  ]")
        else:
            lines.append('  "brackets": []')
    if doc.weights is not None:
        lines[-1] += ","
        lines.append(f'  "weight_system": {{"rank": {doc.rank}, "weights": [')
        lines.append(",\n".join("    " + json.dumps(list(w)) for w in doc.weights))
        lines.append("  ]}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_algebra(name: str, L: LieAlgebra) -> AlgebraDocument:
    br = tuple(
        (i + 1, j + 1, k + 1, c) for (i, j), d in sorted(L.structure.items()) for k, c in sorted(d.items())
    )
    return AlgebraDocument(name, L.dim, br)


def load(path) -> AlgebraDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
