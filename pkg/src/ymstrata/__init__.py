"""Exact Morse-theoretic bookkeeping for Yang-Mills strata over closed surfaces."""

from .abtypes import (ABType, Bundle, StratumFamily, Surface, dominates, enumerate_types,
                      po_leq, refine_total_order, symmetric_family, symmetric_strata, tau0)
from .errors import (DivisionInexact, IncomparableInput, InsufficientBound, InvalidProgression,
                     LedgerInconsistent, MissingTotalSeries, NegativeDimension, UnsupportedGroup,
                     UnsupportedRank, UnsupportedStratum, YMStrataError)
from .index import CodimBreakdown, codim_nonorientable, codim_orientable, codimension
from .morse import (MorseLedger, StratumRecord, a5_flat_series, assemble, p5_recursion,
                    scenario_ledger, verify_closed_forms, z_bounds_check)
from .series import (PowerSeries, RationalFunction, as_series, exact_div_one_plus_t, is_nonneg,
                     ps_add, ps_mul, rf_expand, sum_progression)
from .tables import PoincareTable, bg_series, flat_closed_form, stratum_series

__version__ = "0.1.0"
