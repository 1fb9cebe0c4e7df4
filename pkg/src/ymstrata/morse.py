"""Equivariant Morse series bookkeeping for Yang-Mills stratifications.

Given P(A), the strata of codimension lambda_mu with series P_mu and
(optionally) the open stratum, the ledger forms

    M~ = sum t^(lambda_mu - 1) P_mu,   M = P_ss + t M~,   R = (M - P) / (1 + t)

and reads off the verdicts.  Series-level verdicts only ever hold "through N".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abtypes import (ABType, Bundle, Surface, enumerate_types, symmetric_family,
                      symmetric_strata)
from .errors import (DivisionInexact, InsufficientBound, LedgerInconsistent,
                     MissingTotalSeries, UnsupportedStratum)
from .index import codim_nonorientable, complex_codim_orientable
from .series import PowerSeries, RationalFunction, as_series, exact_div_one_plus_t, sum_progression
from .tables import PoincareTable, bg_series, flat_closed_form, stratum_series

HOLDS, FAILS = "holds", "fails"
YES, NO, UNDETERMINED = "yes", "no", "undetermined"


@dataclass(frozen=True)
class StratumRecord:
    mu: ABType
    lam: int
    series: object  # PowerSeries or RationalFunction
    z_series: PowerSeries | None = None

    def __post_init__(self):
        if self.lam < 1:
            raise ValueError(f"stratum {self.mu} has codimension {self.lam} < 1")


@dataclass(frozen=True)
class MorseLedger:
    N: int
    total: PowerSeries
    open_stratum: PowerSeries | None
    strata: tuple
    m_tilde: PowerSeries
    m: PowerSeries | None
    r: PowerSeries | None
    morse_inequality: str
    perfect: str
    antiperfect: str
    polynomial: bool = False
    notes: tuple = field(default=())

    @property
    def a5_holds(self) -> bool | None:
        """open stratum == total + M~ through N (None if the open stratum is unknown)."""
        if self.open_stratum is None:
            return None
        return self.open_stratum.agrees_with(self.total + self.m_tilde)

    def summary(self) -> dict:
        return {
            "N": self.N,
            "morse_inequality": self.morse_inequality,
            "perfect_through_N": self.perfect == YES,
            "antiperfect_through_N": self.antiperfect == YES,
            "R_coeffs": None if self.r is None else [str(c) for c in self.r.coeffs],
        }


def _is_poly(x) -> bool:
    return isinstance(x, RationalFunction) and x.is_polynomial()


def assemble(total, open_stratum, strata, N: int, polynomial: bool | None = None) -> MorseLedger:
    """Build the Morse ledger through degree N.

    In power-series mode 1 + t is a unit, so R always exists; the verdicts
    then carry all the information.  Polynomial mode (chosen automatically
    when every input is a polynomial, as for a Morse function on a finite
    dimensional manifold) insists on exact division and raises
    LedgerInconsistent otherwise.
    """
    if N < 0:
        raise ValueError("truncation N must be >= 0")
    strata = tuple(strata)
    for rec in strata:
        if not isinstance(rec, StratumRecord):
            raise TypeError("strata must be StratumRecord instances")
    inputs = [total] + ([] if open_stratum is None else [open_stratum]) + [s.series for s in strata]
    if polynomial is None:
        polynomial = open_stratum is not None and all(_is_poly(x) for x in inputs)

    tot = as_series(total, N)
    m_tilde = PowerSeries.zero(N)
    for rec in strata:
        if rec.lam - 1 <= N:
            m_tilde = m_tilde + as_series(rec.series, N).shift(rec.lam - 1)

    if open_stratum is None:
        return MorseLedger(N, tot, None, strata, m_tilde, None, None,
                           UNDETERMINED, UNDETERMINED, UNDETERMINED, polynomial)

    ss = as_series(open_stratum, N)
    m = ss + m_tilde.shift(1)
    if polynomial:
        if all(_is_poly(x) for x in inputs):
            exact = open_stratum - total
            for rec in strata:
                exact = exact + rec.series.shift(rec.lam)
            diff = exact.signed_numerator()
            diff_series = PowerSeries(diff, max(len(diff) - 1, N))
        else:
            diff_series = m - tot
        try:
            r = exact_div_one_plus_t(diff_series, polynomial=True).truncate(N)
        except DivisionInexact as exc:
            raise LedgerInconsistent(
                f"M - P is not divisible by 1 + t (remainder {exc.remainder})") from None
    else:
        r = exact_div_one_plus_t(m - tot)

    ok = r.is_nonneg() and (m_tilde - r).is_nonneg()
    perfect = YES if r.is_zero() else NO
    antiperfect = YES if r.agrees_with(m_tilde) else NO
    return MorseLedger(N, tot, ss, strata, m_tilde, m, r,
                       HOLDS if ok else FAILS, perfect, antiperfect, polynomial)


def z_bounds_check(record: StratumRecord, hypothesis: str | None = None) -> bool:
    """0 <= Z <= P_mu coefficientwise, plus Z = P_mu under antiperfection and
    Z = 0 under perfection."""
    if record.z_series is None:
        raise ValueError("record carries no z_series")
    if hypothesis not in (None, "perfect", "antiperfect"):
        raise ValueError(f"unknown hypothesis {hypothesis!r}")
    z = record.z_series
    p = as_series(record.series, z.truncation)
    z = z.truncate(p.truncation)
    if not (z.is_nonneg() and (p - z).is_nonneg()):
        return False
    if hypothesis == "perfect":
        return z.is_zero()
    if hypothesis == "antiperfect":
        return z.agrees_with(p)
    return True


# -- nonorientable scenarios ------------------------------------------------

def _require_nonorientable(surface: Surface):
    if surface.orientable:
        raise ValueError("flat-connection identities are stated for nonorientable surfaces")


def _family_series(bundle: Bundle, surface: Surface, table):
    family = symmetric_family(bundle, surface)
    if family is None:
        return None, None
    return family, stratum_series(bundle.key, family.name, surface.cover_genus, table)


def stratum_records(bundle: Bundle, surface: Surface, codim_bound: int,
                    table: PoincareTable | None = None, ordering: str = "codim") -> list:
    """StratumRecords for Lambda' (every non-open stratum up to ``codim_bound``)."""
    _require_nonorientable(surface)
    g = surface.cover_genus
    family, series = _family_series(bundle, surface, table)
    out = []
    for mu in symmetric_strata(bundle, surface, codim_bound, ordering=ordering):
        if mu.is_semistable:
            continue
        if family is None or mu not in family.members(max(k for _, k in mu.positive_blocks)):
            raise UnsupportedStratum(f"no series for stratum {mu}")
        out.append(StratumRecord(mu, codim_nonorientable(mu, g).lam, series))
    return out


def a5_flat_series(bundle: Bundle, surface: Surface, N: int,
                   table: PoincareTable | None = None, codim_bound: int | None = None):
    """P(BG) + sum over Lambda' of t^(lambda - 1) P_mu, as (series, closed form).

    The series is summed stratum by stratum from the enumeration; the closed
    form comes from the r-independence of P_mu, which turns the sum into a
    geometric progression in r.
    """
    _require_nonorientable(surface)
    g = surface.cover_genus
    bg = bg_series(bundle.key, g, table)
    family, strat = _family_series(bundle, surface, table)
    if family is None:
        return as_series(bg, N), bg

    a, mod = family.residue
    r0 = (a - 1) % mod + 1
    lam0 = codim_nonorientable(family.member(r0), g).lam
    lam1 = codim_nonorientable(family.member(r0 + mod), g).lam
    step, rem = divmod(lam1 - lam0, mod)
    if rem or lam0 - step * r0 != codim_nonorientable(family.member(r0 + 2 * mod), g).lam - step * (r0 + 2 * mod):
        raise ValueError(f"codimension of {family.name} is not affine in r")
    _, progression = sum_progression(step, lam0 - step * r0 - 1, family.residue, N)
    closed = bg + progression * strat

    bound = N + 1 if codim_bound is None else codim_bound
    series = as_series(bg, N)
    for rec in stratum_records(bundle, surface, bound, table):
        if rec.lam - 1 <= N:
            series = series + as_series(rec.series, N).shift(rec.lam - 1)
    return series, closed


def scenario_name(bundle: Bundle, surface: Surface) -> str:
    return f"{bundle} over {surface} (g~={surface.cover_genus})"


def scenario_ledger(bundle: Bundle, surface: Surface, N: int,
                    table: PoincareTable | None = None, codim_bound: int | None = None,
                    ordering: str = "codim", open_stratum=None, strata=None) -> MorseLedger:
    """Ledger with P = P(BG), the tabulated flat series as open stratum and
    Lambda' enumerated up to ``codim_bound`` (default N + 2)."""
    _require_nonorientable(surface)
    g = surface.cover_genus
    bound = N + 2 if codim_bound is None else codim_bound
    if strata is None:
        strata = stratum_records(bundle, surface, bound, table, ordering)
    if open_stratum is None:
        open_stratum = flat_closed_form(bundle.key, g, bundle.parity, table)
    return assemble(bg_series(bundle.key, g, table), open_stratum, strata, N)


def verify_closed_forms(bundle: Bundle, surface: Surface, N: int,
                        table: PoincareTable | None = None) -> dict:
    """Compare the assembled A5 closed form with the tabulated flat series,
    exactly and coefficientwise through N."""
    g = surface.cover_genus
    series, closed = a5_flat_series(bundle, surface, N, table)
    target = flat_closed_form(bundle.key, g, bundle.parity, table)
    target_series = as_series(target, N)
    first = series.first_difference(target_series)
    closed_first = as_series(closed, N).first_difference(target_series)
    if first is None:
        first = closed_first
    diffs = []
    for d in range(N + 1):
        if series[d] != target_series[d]:
            diffs.append({"degree": d, "assembled": str(series[d]), "table": str(target_series[d])})
    return {
        "scenario": scenario_name(bundle, surface),
        "N": N,
        "assembled": str(closed),
        "table": str(target),
        "rf_equal": closed == target,
        "series_equal": first is None,
        "first_discrepancy": first,
        "diff": diffs,
    }


# -- orientable recursion ---------------------------------------------------

def orientable_strata(n: int, k: int, g: int, N: int) -> list:
    """Non-semistable types of rank n, degree k with 2 d_mu <= N on a genus g surface."""
    surface = Surface.of_genus(g)
    return [mu for mu in enumerate_types(n, k, N, surface) if not mu.is_semistable]


def _lookup_total(totals, n: int, k: int):
    for key in ((n, k), (n, k % n), n):
        if key in totals:
            return totals[key]
    raise MissingTotalSeries((n, k))


def p5_recursion(n: int, k: int, g: int, totals, codim_bound: int, N: int) -> PowerSeries:
    """Semistable series on a closed orientable surface of genus g >= 1:

        P_ss(n, k) = P(n, k) - sum over unstable mu of t^(2 d_mu) prod_j P_ss(n_j, k_j)

    ``totals`` maps (n', k'), (n', k' mod n') or just the rank n' to the
    ambient series P_t^G(A) of every rank that occurs.  ``codim_bound`` bounds the complex
    codimension d_mu and has to reach N / 2.
    """
    if g < 1:
        raise ValueError("the recursion needs genus >= 1")
    if n < 1:
        raise ValueError("rank must be >= 1")
    if 2 * codim_bound < N:
        raise InsufficientBound(f"2 * codim_bound = {2 * codim_bound} < N = {N}")
    memo: dict = {}

    def ss(m: int, d: int) -> PowerSeries:
        key = (m, d % m)
        if key not in memo:
            val = as_series(_lookup_total(totals, m, d), N)
            for mu in orientable_strata(m, d % m, g, min(N, 2 * codim_bound)):
                term = PowerSeries.one(N)
                for nj, kj in mu.blocks:
                    term = term * ss(nj, kj)
                val = val - term.shift(2 * complex_codim_orientable(mu, g))
            memo[key] = val
        return memo[key]

    return ss(n, k)


__all__ = [
    "StratumRecord", "MorseLedger", "assemble", "z_bounds_check", "stratum_records",
    "a5_flat_series", "scenario_ledger", "verify_closed_forms", "orientable_strata",
    "p5_recursion", "HOLDS", "FAILS", "YES", "NO", "UNDETERMINED",
]
