"""Exact computations in the Riordan group over the rationals.

Modules: :mod:`~riordan.fps` (truncated power series), :mod:`~riordan.group`
(pairs, products, matrices), :mod:`~riordan.involutions`,
:mod:`~riordan.subgroups`, :mod:`~riordan.reversibility`,
:mod:`~riordan.exprparse` and the :mod:`~riordan.cli`.
"""

from .exprparse import ExprError, parse_series
from .fps import DEFAULT_ORDER, Fps, FpsError, compose, derivative, power, recip, revert
from .group import (
    DiagonalPattern,
    PairError,
    RiordanMatrix,
    RiordanPair,
    commutator,
    conjugate,
    diagonal_pattern,
    identity,
    in_commutator_subgroup,
    inverse,
    involution_m,
    make_pair,
    multiply,
    to_matrix,
)
from .involutions import (
    ConjugacyWitness,
    InvolutionClass,
    NotAnInvolution,
    classify_involution,
    is_involution,
    is_pseudo_involution,
    is_series_involution,
    riordan_involution_conjugator,
    series_involution_conjugator,
    two_involution_product_witness,
)
from .reversibility import (
    NormalFormDescriptor,
    conjugate_to_normal_form,
    is_series_reversible,
    normal_form_series,
    riordan_reversibility_screen,
    strong_decompose,
    strong_reversibility_from_involution_pair,
    two_reversible_classification,
)
from .subgroups import (
    Appell,
    Bcn,
    Bell,
    Derivative,
    HittingTime,
    Lagrange,
    Reciprocal,
    Stabilizer,
    is_subgroup_involution,
    parse_tag,
    subgroup_conjugator,
)

__all__ = [name for name in dir() if not name.startswith("_")]
