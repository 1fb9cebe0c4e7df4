r"""
Truncated power series in t over the rationals, and rational functions whose
denominators stay factored as products of (1 - t^k) and (1 + t^k).

Every :class:`PowerSeries` carries its truncation order N explicitly; binary
operations on series of different order truncate to the smaller one.
A :class:`RationalFunction` keeps its denominator as a multiset of cyclotomic
style factors so closed forms print the way they are usually written::

    >>> f = RationalFunction([1, 1], [("one_minus", 2), ("one_minus", 4)])
    >>> str(f)
    '(1 + t)/((1-t^2)(1-t^4))'
    >>> f.expand(4).coeffs
    (Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(2, 1))
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivisionInexact, InvalidProgression

ONE_MINUS = "one_minus"
ONE_PLUS = "one_plus"
_FORMS = (ONE_MINUS, ONE_PLUS)

Scalar = Union[int, Fraction]


# -- integer polynomials as tuples of coefficients, lowest degree first --

def poly_trim(p: Iterable[int]) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(a, b) -> tuple:
    n = max(len(a), len(b))
    return poly_trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                     for i in range(n))


def poly_neg(a) -> tuple:
    return tuple(-c for c in a)


def poly_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_pow(a, e: int) -> tuple:
    if e < 0:
        raise ValueError("negative polynomial power")
    result, base = (1,), tuple(a)
    while e:
        if e & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        e >>= 1
    return result


def poly_monomial(k: int, c: int = 1) -> tuple:
    return poly_trim([0] * k + [c])


def poly_str(p: Sequence[int]) -> str:
    terms = []
    for deg, c in enumerate(p):
        if c == 0:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            mono = "t" if deg == 1 else f"t^{deg}"
            coef = f"({mag})" if isinstance(mag, Fraction) and mag.denominator != 1 else str(mag)
            body = mono if mag == 1 else f"{coef}{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient required, got {type(x).__name__}")


@dataclass(frozen=True)
class PowerSeries:
    """Power series sum c_i t^i known exactly for 0 <= i <= truncation."""

    coeffs: tuple
    truncation: int

    def __init__(self, coeffs: Iterable = (), truncation: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if truncation is None:
            truncation = max(len(cs) - 1, 0)
        if truncation < 0:
            raise ValueError("truncation order must be non-negative")
        cs = cs[: truncation + 1]
        cs += [Fraction(0)] * (truncation + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "truncation", truncation)

    @classmethod
    def zero(cls, N: int) -> "PowerSeries":
        return cls((), N)

    @classmethod
    def one(cls, N: int) -> "PowerSeries":
        return cls((1,), N)

    @classmethod
    def monomial(cls, k: int, N: int, c: Scalar = 1) -> "PowerSeries":
        return cls([0] * k + [c], N)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, M: int) -> "PowerSeries":
        if M > self.truncation:
            raise ValueError(f"cannot extend a series known to order {self.truncation} to {M}")
        return PowerSeries(self.coeffs, M)

    def _align(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries((_frac(other),), self.truncation)
        N = min(self.truncation, other.truncation)
        return self.coeffs[: N + 1], other.coeffs[: N + 1], N

    def __add__(self, other) -> "PowerSeries":
        a, b, N = self._align(other)
        return PowerSeries((x + y for x, y in zip(a, b)), N)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries((-c for c in self.coeffs), self.truncation)

    def __sub__(self, other) -> "PowerSeries":
        a, b, N = self._align(other)
        return PowerSeries((x - y for x, y in zip(a, b)), N)

    def __rsub__(self, other) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            c = _frac(other)
            return PowerSeries((c * x for x in self.coeffs), self.truncation)
        a, b, N = self._align(other)
        out = [Fraction(0)] * (N + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(N + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return PowerSeries(out, N)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PowerSeries":
        result = PowerSeries.one(self.truncation)
        for _ in range(e):
            result = result * self
        return result

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by t^k (k >= 0), keeping the truncation order."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        return PowerSeries([0] * k + list(self.coeffs), self.truncation)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def first_difference(self, other: "PowerSeries") -> int | None:
        """Lowest degree (up to the shared order) where two series differ."""
        a, b, _ = self._align(other)
        for i, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return i
        return None

    def agrees_with(self, other: "PowerSeries") -> bool:
        return self.first_difference(other) is None

    def __str__(self) -> str:
        return f"{poly_str(self.coeffs)} + O(t^{self.truncation + 1})"

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "PowerSeries":
        return cls([Fraction(c) for c in data["coeffs"]], int(data["truncation"]))


def _factor_poly(form: str, k: int) -> tuple:
    return poly_add((1,), poly_monomial(k, -1 if form == ONE_MINUS else 1))


def _normalize_factors(factors) -> tuple:
    counts: Counter = Counter()
    for item in factors:
        if len(item) == 2:
            form, k = item
            power = 1
        else:
            form, k, power = item
        if form not in _FORMS:
            raise ValueError(f"unknown denominator form {form!r}")
        if k < 1 or power < 0:
            raise ValueError("denominator factors need k >= 1 and power >= 0")
        counts[(form, int(k))] += int(power)
    return tuple(sorted((f, k, p) for (f, k), p in counts.items() if p))


class RationalFunction:
    """sign * numerator / prod (1 -/+ t^k)^power, numerator in Z[t].

    Equality is an exact polynomial identity after cross-multiplying the
    denominators, so two closed forms written over different factorizations
    of the same denominator compare equal.
    """

    __slots__ = ("numerator", "denominator", "sign")

    def __init__(self, numerator: Iterable[int] = (), denominator=(), sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        num = list(numerator)
        if any(isinstance(c, float) or c != int(c) for c in num):
            raise ValueError("numerator coefficients must be integers")
        object.__setattr__(self, "numerator", poly_trim(int(c) for c in num))
        object.__setattr__(self, "denominator", _normalize_factors(denominator))
        object.__setattr__(self, "sign", sign)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def polynomial(cls, coeffs: Iterable[int]) -> "RationalFunction":
        return cls(coeffs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "RationalFunction":
        return cls(poly_monomial(k, c))

    def signed_numerator(self) -> tuple:
        return self.numerator if self.sign == 1 else poly_neg(self.numerator)

    def denominator_poly(self) -> tuple:
        out = (1,)
        for form, k, power in self.denominator:
            out = poly_mul(out, poly_pow(_factor_poly(form, k), power))
        return out

    def is_polynomial(self) -> bool:
        return not self.denominator

    def _over(self, common) -> tuple:
        """Signed numerator rewritten over the (larger) factor multiset ``common``."""
        mine = {(f, k): p for f, k, p in self.denominator}
        num = self.signed_numerator()
        for form, k, power in common:
            extra = power - mine.get((form, k), 0)
            if extra < 0:
                raise ValueError("target denominator does not contain this one")
            if extra:
                num = poly_mul(num, poly_pow(_factor_poly(form, k), extra))
        return num

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        merged: dict = {}
        for f, k, p in self.denominator + other.denominator:
            merged[(f, k)] = max(merged.get((f, k), 0), p)
        common = _normalize_factors((f, k, p) for (f, k), p in merged.items())
        return RationalFunction(poly_add(self._over(common), other._over(common)), common)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(self.numerator, self.denominator, -self.sign)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(
            poly_mul(self.numerator, other.numerator),
            self.denominator + other.denominator,
            self.sign * other.sign,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            raise ValueError("negative powers are not representable")
        return RationalFunction(
            poly_pow(self.numerator, e),
            [(f, k, p * e) for f, k, p in self.denominator],
            self.sign ** e,
        )

    def shift(self, k: int) -> "RationalFunction":
        return self * RationalFunction.monomial(k)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RationalFunction.polynomial([other])
        if not isinstance(other, RationalFunction):
            return NotImplemented
        left = poly_mul(self.signed_numerator(), other.denominator_poly())
        right = poly_mul(other.signed_numerator(), self.denominator_poly())
        return left == right

    __hash__ = None

    def same_form(self, other: "RationalFunction") -> bool:
        """Structural equality: identical numerator, factor multiset and sign."""
        return (self.numerator, self.denominator, self.sign) == (
            other.numerator, other.denominator, other.sign)

    def expand(self, N: int) -> PowerSeries:
        """Power series expansion at t = 0 through degree N."""
        if N < 0:
            raise ValueError("N must be non-negative")
        coeffs = [0] * (N + 1)
        for i, c in enumerate(self.signed_numerator()[: N + 1]):
            coeffs[i] = c
        for form, k, power in self.denominator:
            step = -1 if form == ONE_PLUS else 1
            for _ in range(power):
                # in-place multiply by 1/(1 - step*t^k): c_i += step*c_{i-k}
                for i in range(k, N + 1):
                    coeffs[i] += step * coeffs[i - k]
        return PowerSeries(coeffs, N)

    def __str__(self) -> str:
        num = poly_str(self.numerator)
        if self.sign == -1:
            num = f"-({num})" if len([c for c in self.numerator if c]) > 1 else f"-{num}"
        if not self.denominator:
            return num
        if len([c for c in self.numerator if c]) > 1 and self.sign == 1:
            num = f"({num})"
        den = ""
        for form, k, power in self.denominator:
            op = "-" if form == ONE_MINUS else "+"
            mono = "t" if k == 1 else f"t^{k}"
            den += f"(1{op}{mono})" + (f"^{power}" if power > 1 else "")
        if len(self.denominator) > 1 or self.denominator[0][2] > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "numerator": list(self.numerator),
            "denominator": [{"form": f, "k": k, "power": p} for f, k, p in self.denominator],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(
            data["numerator"],
            [(d["form"], d["k"], d.get("power", 1)) for d in data["denominator"]],
            data.get("sign", 1),
        )


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, int):
        return RationalFunction.polynomial([x])
    raise TypeError(f"cannot combine RationalFunction with {type(x).__name__}")


def as_series(x, N: int) -> PowerSeries:
    """Expand a rational function, or re-truncate a series, to order N."""
    if isinstance(x, RationalFunction):
        return x.expand(N)
    if isinstance(x, PowerSeries):
        return x.truncate(N)
    raise TypeError(f"expected a series or rational function, got {type(x).__name__}")


# -- the operation surface --

def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def rf_expand(f: RationalFunction, N: int) -> PowerSeries:
    return f.expand(N)


def is_nonneg(s: PowerSeries) -> bool:
    return s.is_nonneg()


def exact_div_one_plus_t(s: PowerSeries, polynomial: bool = False) -> PowerSeries:
    """Divide s by (1 + t) by synthetic division.

    As power series (the default) the quotient always exists and is returned
    to the same order.  With ``polynomial=True`` s is read as a polynomial of
    degree <= N, and DivisionInexact is raised unless s(-1) = 0; the error
    carries the remainder.
    """
    N = s.truncation
    q = []
    prev = Fraction(0)
    for i in range(N + 1):
        prev = s[i] - prev
        q.append(prev)
    if not polynomial:
        return PowerSeries(q, N)
    # q[N] is exactly the remainder of polynomial division
    remainder = q[N]
    if remainder != 0:
        raise DivisionInexact(remainder)
    return PowerSeries(q[:N] + [0], N)


def sum_progression(c: int, b: int, residue=None, N: int = 40):
    """Sum of t^(c*r + b) over r >= 1 with r = a (mod m).

    ``residue`` is ``(a, m)`` or ``None`` for every r >= 1.  Returns the
    truncated series (summed term by term) and the closed form
    t^(c*r0 + b) / (1 - t^(c*m)) where r0 is the least admissible r.
    """
    if c < 1:
        raise InvalidProgression("step c must be >= 1")
    a, m = (0, 1) if residue is None else residue
    if m < 1:
        raise InvalidProgression("modulus must be >= 1")
    r0 = (a - 1) % m + 1
    first = c * r0 + b
    if first < 0:
        raise InvalidProgression(f"negative exponent {first} at r = {r0}")
    coeffs = [0] * (N + 1)
    r = r0
    while c * r + b <= N:
        coeffs[c * r + b] += 1
        r += m
    closed = RationalFunction(poly_monomial(first), [(ONE_MINUS, c * m)])
    return PowerSeries(coeffs, N), closed
