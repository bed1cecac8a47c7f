"""Closed-form identities for convolution sums of generalized Fibonacci numbers.

s_d(n; p, q; k) sums prod_i U_{k j_i}(p, q) over compositions j_1 + ... + j_d = n.
This package derives exact closed forms for it, checks them against brute
force, and renders them as text, LaTeX or JSON.
"""

from .engine import (
    TheoremRelation,
    VerificationReport,
    build_relation,
    derive_closed_form,
    evaluate_closed_form,
    reduce_to_fibonacci_basis,
    verify_closed_form,
)
from .emit import emit, emit_basis, parse_json
from .errors import BudgetExceeded, DegenerateParams, SeriesOrderError, ZeroQ, ZeroUk
from .oracle import ConvSum, s_enum, s_series
from .sequences import FIBONACCI, LucasParams, lucas_u, lucas_v, strided_u
from .series import TruncatedSeries, check_eq9, check_proposition, fk_series
from .symbolic import ClosedForm, MultiPoly, PolyInN, RationalFn
from .triangles import a_closed, a_rec, b_closed, b_rec, triangle_table

__version__ = "0.1.0"
