"""Closed-form equivariant Poincare series, loaded from a text table.

Each table line is ``group | role | selector | numerator | denominator | status``.
The numerator is an arithmetic expression in ``t`` and the double-cover genus
``g`` (``^`` or ``**`` for powers); the denominator is a comma separated list
of factors ``1-t^k`` / ``1+t^k``, each optionally raised to a power, e.g.
``(1-t^2)^2``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import UnsupportedGroup, UnsupportedStratum
from .series import ONE_MINUS, ONE_PLUS, RationalFunction, poly_add, poly_monomial, poly_mul, poly_neg, poly_pow

ROLES = ("bg", "stratum", "flat")
STATUSES = ("published", "derived", "external")

_FACTOR = re.compile(r"^\(?\s*1\s*([+-])\s*t\s*(?:\^\s*(\d+))?\s*\)?\s*(?:\^\s*(\d+))?$")


def _eval_int(node, g: int) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name) and node.id == "g":
        return g
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval_int(node.operand, g)
    if isinstance(node, ast.BinOp):
        a, b = _eval_int(node.left, g), _eval_int(node.right, g)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
    raise ValueError(f"unsupported exponent expression: {ast.unparse(node)}")


def _eval_poly(node, g: int) -> tuple:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return poly_monomial(0, node.value)
    if isinstance(node, ast.Name):
        if node.id == "t":
            return (0, 1)
        if node.id == "g":
            return poly_monomial(0, g)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return poly_neg(_eval_poly(node.operand, g))
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _eval_int(node.right, g)
            if e < 0:
                raise ValueError(f"negative exponent {e} in {ast.unparse(node)}")
            return poly_pow(_eval_poly(node.left, g), e)
        a, b = _eval_poly(node.left, g), _eval_poly(node.right, g)
        if isinstance(node.op, ast.Add):
            return poly_add(a, b)
        if isinstance(node.op, ast.Sub):
            return poly_add(a, poly_neg(b))
        if isinstance(node.op, ast.Mult):
            return poly_mul(a, b)
    raise ValueError(f"unsupported numerator expression: {ast.unparse(node)}")


def parse_numerator(text: str) -> ast.Expression:
    return ast.parse(text.replace("^", "**"), mode="eval")


def parse_denominator(text: str) -> tuple:
    factors = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = _FACTOR.match(part)
        if not m:
            raise ValueError(f"bad denominator factor {part!r}")
        sign, k, power = m.groups()
        factors.append((ONE_MINUS if sign == "-" else ONE_PLUS, int(k or 1), int(power or 1)))
    return tuple(factors)


@dataclass(frozen=True)
class TableEntry:
    group: str
    role: str
    selector: str
    numerator_text: str
    denominator_text: str
    status: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        parse_numerator(self.numerator_text)
        parse_denominator(self.denominator_text)

    def evaluate(self, g: int) -> RationalFunction:
        num = _eval_poly(parse_numerator(self.numerator_text).body, g)
        return RationalFunction(num, parse_denominator(self.denominator_text))

    def formula(self, g: int | None = None) -> str:
        num = self.numerator_text
        if g is not None:
            num = re.sub(r"\bg\b", str(g), num)
        den = "".join(
            f"({p})" if not p.startswith("(") else p
            for p in (s.strip() for s in self.denominator_text.split(",")) if p
        )
        return f"({num})/({den})" if den else num

    def matches(self, g: int, parity: int | None) -> bool:
        sel = self.selector
        if sel == "any":
            return True
        if sel == "g even":
            return g % 2 == 0
        if sel == "g odd":
            return g % 2 == 1
        if sel.startswith("parity"):
            if parity is None:
                raise ValueError("this group needs a bundle parity (+1 or -1)")
            target = (-1) ** g if sel == "parity (-1)^g" else (-1) ** (g + 1)
            return parity == target
        raise ValueError(f"unknown selector {sel!r}")


class PoincareTable:
    """Read-only lookup of closed forms keyed by group, role and selector."""

    def __init__(self, entries, version: str | None = None, source: str | None = None):
        self.entries = tuple(entries)
        self.version = version
        self.source = source

    @classmethod
    def from_text(cls, text: str, source: str | None = None) -> "PoincareTable":
        entries, version = [], None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if line.startswith("#"):
                m = re.match(r"#\s*version:\s*(\S+)", line)
                if m:
                    version = m.group(1)
                continue
            if not line:
                continue
            cells = [c.strip() for c in line.split("|")]
            if len(cells) != 6:
                raise ValueError(f"{source or 'table'}:{lineno}: expected 6 cells, got {len(cells)}")
            try:
                entries.append(TableEntry(*cells))
            except (ValueError, SyntaxError) as exc:
                raise ValueError(f"{source or 'table'}:{lineno}: {exc}") from None
        return cls(entries, version, source)

    @classmethod
    def from_path(cls, path) -> "PoincareTable":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), str(path))

    @classmethod
    def default(cls) -> "PoincareTable":
        text = resources.files("ymstrata").joinpath("data/tables.txt").read_text(encoding="utf-8")
        return cls.from_text(text, "tables.txt")

    def groups(self) -> list:
        return sorted({e.group for e in self.entries})

    def find(self, group: str, role: str, g: int, parity: int | None = None,
             selector: str | None = None, allow_external: bool = False) -> TableEntry:
        hits = [e for e in self.entries if e.group == group and e.role == role]
        if not hits:
            raise UnsupportedGroup(f"no {role} series for {group} in the table")
        if selector is not None:
            hits = [e for e in hits if e.selector == selector]
            if not hits:
                raise UnsupportedStratum(f"no stratum family {selector} for {group}")
        else:
            hits = [e for e in hits if e.matches(g, parity)]
        if not hits:
            raise UnsupportedGroup(f"no {role} entry of {group} applies to g={g}, parity={parity}")
        if len(hits) > 1:
            raise ValueError(f"ambiguous table: {len(hits)} {role} entries for {group}")
        entry = hits[0]
        if entry.status == "external" and not allow_external:
            raise UnsupportedGroup(f"{group} {role} entry is external; pass allow_external=True")
        return entry


_DEFAULT: PoincareTable | None = None


def default_table() -> PoincareTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = PoincareTable.default()
    return _DEFAULT


def _check_genus(g: int):
    if g < 0:
        raise ValueError("double-cover genus must be >= 0")


def bg_series(group: str, g: int, table: PoincareTable | None = None,
              allow_external: bool = False) -> RationalFunction:
    """P_t(BG) for the gauge group of a ``group`` bundle, e.g. group="U2"."""
    _check_genus(g)
    table = table or default_table()
    return table.find(group, "bg", g, allow_external=allow_external).evaluate(g)


def stratum_series(group: str, family: str, g: int,
                   table: PoincareTable | None = None) -> RationalFunction:
    """P_t^G(A_mu) for mu in ``family`` ("(r,-r)" or "(r,0,-r)"); independent of r."""
    _check_genus(g)
    table = table or default_table()
    return table.find(group, "stratum", g, selector=family).evaluate(g)


def flat_closed_form(group: str, g: int, parity: int | None = None,
                     table: PoincareTable | None = None) -> RationalFunction:
    """Closed form for the open stratum of a ``group`` bundle.

    For U(2) the component is picked by ``parity``; for SU(2) by the parity of
    g; U(3) uses one formula for both components.
    """
    _check_genus(g)
    table = table or default_table()
    return table.find(group, "flat", g, parity).evaluate(g)
