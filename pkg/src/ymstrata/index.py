"""Real and complex codimensions (Morse indices) of Yang-Mills strata.

Every summand is a Riemann-Roch count dim H^1 = -deg + rank*(genus - 1) of a
Hom bundle between semistable pieces of strictly decreasing slope, where
H^0 vanishes.  On a nonorientable surface the count happens on the
orientable double cover and the normal bundle splits into a complex part and
a real part (the tau-fixed piece of each Hom(D_j, tau_C(D_j))).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import NegativeDimension

if TYPE_CHECKING:
    from .abtypes import ABType, Surface


@dataclass(frozen=True)
class CodimBreakdown:
    lambda_c: int
    lambda_r: int

    @property
    def lam(self) -> int:
        return 2 * self.lambda_c + self.lambda_r

    def to_json(self) -> dict:
        return {"lambda": self.lam, "lambda_C": self.lambda_c, "lambda_R": self.lambda_r}


def nonorientable_summands(positive_blocks, n0: int, g: int):
    """Unchecked Riemann-Roch summands as two lists (complex, real).

    ``positive_blocks`` are the (n_j, k_j) with positive, strictly decreasing
    slopes; ``g`` is the genus of the orientable double cover.
    """
    blocks = list(positive_blocks)
    complex_terms = []
    for i, (ni, ki) in enumerate(blocks):
        for nj, kj in blocks[i + 1:]:
            complex_terms.append(("Hom(D_i,D_j)", nj * ki - ni * kj + ni * nj * (g - 1)))
            complex_terms.append(("Hom(D_i,tau D_j)", nj * ki + ni * kj + ni * nj * (g - 1)))
    for nj, kj in blocks:
        complex_terms.append(("Hom(D_j,D_0)", n0 * kj + n0 * nj * (g - 1)))
    real_terms = [("V_{n_j,k_j}", 2 * nj * kj + nj * nj * (g - 1)) for nj, kj in blocks]
    return complex_terms, real_terms


def _checked(terms, mu) -> int:
    total = 0
    for name, value in terms:
        if value < 0:
            raise NegativeDimension(f"{name} has negative dimension {value} for type {mu}")
        total += value
    return total


def codim_nonorientable(mu: "ABType", g: int) -> CodimBreakdown:
    """Codimension of the stratum of a tau_0-symmetric type over a surface
    whose double cover has genus ``g``."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    if not mu.is_symmetric:
        raise ValueError(f"type {mu} is not tau_0-symmetric")
    if mu.is_semistable:
        return CodimBreakdown(0, 0)
    complex_terms, real_terms = nonorientable_summands(mu.positive_blocks, mu.n0, g)
    out = CodimBreakdown(_checked(complex_terms, mu), _checked(real_terms, mu))
    if out.lam < 1:
        # only empty strata (no semistable pieces of that rank/degree) get here
        raise NegativeDimension(f"type {mu} has non-positive codimension {out.lam}")
    return out


def complex_codim_orientable(mu: "ABType", g: int) -> int:
    """d_mu = sum over block pairs i < j of n_j k_i - n_i k_j + n_i n_j (g - 1)."""
    terms = []
    blocks = mu.blocks
    for i, (ni, ki) in enumerate(blocks):
        for nj, kj in blocks[i + 1:]:
            terms.append(("Hom(D_i,D_j)", nj * ki - ni * kj + ni * nj * (g - 1)))
    return _checked(terms, mu)


def codim_orientable(mu: "ABType", g: int) -> int:
    """Real codimension 2*d_mu on a closed orientable surface of genus g."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    return 2 * complex_codim_orientable(mu, g)


def codimension(mu: "ABType", surface: "Surface") -> int:
    """Real codimension of the stratum of ``mu`` on ``surface``."""
    if surface.orientable:
        return codim_orientable(mu, surface.cover_genus)
    return codim_nonorientable(mu, surface.cover_genus).lam
