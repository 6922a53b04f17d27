"""Concrete algebra instances: E0 fragments and two reference algebras."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from . import model
from .kernel import AlgebraInstance
from .model import Element, Fragment
from .mutations import MutationSpec, apply_override

__all__ = [
    "E0Instance",
    "BooleanInstance",
    "IntervalInstance",
    "e0_instance",
    "apply_mutation",
    "boolean_instance",
    "interval_instance",
    "as_instance",
]


class E0Instance(AlgebraInstance):
    """A fragment of E0, optionally with one table rule overridden.

    Results are memoized per instance; the cache never crosses instances, so
    a mutated table cannot leak into the pristine one.
    """

    def __init__(self, fragment: Fragment, mutation: Optional[MutationSpec] = None):
        self.fragment = fragment
        self.mutation = mutation if mutation is not None and not mutation.is_identity else None
        self.zero = model.ZERO
        self.one = model.ONE
        self.carrier = tuple(fragment.carrier())
        self.mode = "exhaustive"
        label = f"e0(n_max={fragment.n_max},k_max={fragment.k_max})"
        if self.mutation is not None:
            label += f" mutated[{self.mutation.render()}]"
        self.label = label
        self._oplus: dict = {}
        self._circ: dict = {}

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_oplus"], state["_circ"] = {}, {}
        state.pop("_render_index", None)
        return state

    def oplus(self, x: Element, y: Element) -> Optional[Element]:
        key = (x, y)
        try:
            return self._oplus[key]
        except KeyError:
            pass
        rule_id, result = model.oplus_rule(x, y)
        if self.mutation is not None and rule_id == self.mutation.rule_id:
            result = apply_override(self.mutation, x, y, result)
        self._oplus[key] = result
        return result

    def circ(self, x: Element, y: Element) -> Element:
        key = (x, y)
        try:
            return self._circ[key]
        except KeyError:
            pass
        rule_id, result = model.circ_rule(x, y)
        if self.mutation is not None and rule_id == self.mutation.rule_id:
            result = apply_override(self.mutation, x, y, result)
        self._circ[key] = result
        return result

    def render(self, x: Element) -> str:
        return x.render()

    def orthosupplement(self, x: Element) -> Element:
        if self.mutation is None:
            return model.orthosupplement(x)
        return super().orthosupplement(x)

    def witness(self, x: Element, y: Element) -> Optional[Element]:
        if self.mutation is None:
            return model.witness(x, y)
        return super().witness(x, y)


def e0_instance(n_max: int = 4, k_max: int = 3) -> E0Instance:
    return E0Instance(Fragment(n_max, k_max))


def apply_mutation(spec: MutationSpec, fragment: Fragment = Fragment(3, 2)) -> E0Instance:
    """E0 fragment whose tables differ from the pristine ones in ``spec.rule_id`` only."""
    return E0Instance(fragment, spec)


def _render_set(s: frozenset) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


class BooleanInstance(AlgebraInstance):
    """Subsets of ``{1..k}``: disjoint union and intersection."""

    def __init__(self, k: int):
        if not 1 <= k <= 5:
            raise ValueError(f"boolean instance needs 1 <= k <= 5, got {k}")
        self.k = k
        ground = range(1, k + 1)
        self.carrier = tuple(
            frozenset(s) for size in range(k + 1) for s in combinations(ground, size)
        )
        self.zero = frozenset()
        self.one = frozenset(ground)
        self.label = f"boolean(k={k})"
        self.mode = "exhaustive"

    def oplus(self, x, y):
        return x | y if x.isdisjoint(y) else None

    def circ(self, x, y):
        return x & y

    def render(self, x) -> str:
        return _render_set(x)

    def orthosupplement(self, x):
        return self.one - x


class IntervalInstance(AlgebraInstance):
    """Rationals ``k/D`` in [0, 1] with truncated addition and multiplication.

    ``circ`` leaves the grid, so checks over this carrier are sampled.
    """

    def __init__(self, denominator: int):
        if not 2 <= denominator <= 24:
            raise ValueError(f"interval instance needs 2 <= denominator <= 24, got {denominator}")
        self.denominator = denominator
        self.carrier = tuple(Fraction(k, denominator) for k in range(denominator + 1))
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.label = f"interval(denominator={denominator})"
        self.mode = "sampled"

    def oplus(self, x, y):
        s = x + y
        return s if s <= 1 else None

    def circ(self, x, y):
        return x * y

    def render(self, x) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def orthosupplement(self, x):
        return 1 - x

    def witness(self, x, y):
        return y - x if x <= y else None


def boolean_instance(k: int) -> BooleanInstance:
    return BooleanInstance(k)


def interval_instance(denominator: int) -> IntervalInstance:
    return IntervalInstance(denominator)


def as_instance(obj: Union[Fragment, AlgebraInstance]) -> AlgebraInstance:
    if isinstance(obj, Fragment):
        return E0Instance(obj)
    return obj
