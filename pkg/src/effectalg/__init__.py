"""Verification toolkit for effect algebras and sequential effect algebras,
built around the countable algebra E0 that is sequential but not sharply
dominating."""

from .instances import (
    BooleanInstance,
    E0Instance,
    IntervalInstance,
    apply_mutation,
    boolean_instance,
    e0_instance,
    interval_instance,
)
from .kernel import AlgebraInstance, Violation, VerificationReport, replay, verify, verify_ea, verify_sea
from .model import ONE, ZERO, Element, Fragment, IndexSet, circ, commutes, leq, oplus, orthogonal, orthosupplement, witness
from .mutations import FIXTURES, MutationSpec
from .notation import ParseError, parse_element, render
from .order import (
    chain_meet_analysis,
    check_sharp_closure,
    is_sharp_mult,
    is_sharp_order,
    join_in_fragment,
    least_sharp_dominator,
    lower_bounds,
    meet_in_fragment,
    refute_least_sharp_dominator,
    sharp_elements,
    upper_bounds,
)

__version__ = "0.1.0"
