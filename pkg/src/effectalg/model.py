"""Symbolic model of the counterexample algebra E0.

Elements are ``0``, ``1``, ``a_n``, ``b_n``, ``c_{L,n}`` and ``d_{L,n}`` where
``n`` is a positive integer and ``L`` a finite nonempty set of positive
integers.  The partial sum ``oplus`` and the sequential product ``circ`` are
given case by case; every case carries a rule id so that a single case can be
overridden when building negative-control instances (see ``mutations``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional

__all__ = [
    "IndexSet",
    "Element",
    "ZERO",
    "ONE",
    "a",
    "b",
    "c",
    "d",
    "Fragment",
    "oplus",
    "circ",
    "oplus_rule",
    "circ_rule",
    "OPLUS_RULES",
    "CIRC_RULES",
    "orthosupplement",
    "witness",
    "leq",
    "orthogonal",
    "commutes",
    "sort_key",
]

_KIND_RANK = {"0": 0, "1": 1, "a": 2, "b": 3, "c": 4, "d": 5}


class IndexSet(frozenset):
    """Finite nonempty set of positive integers."""

    def __new__(cls, members: Iterable[int] = ()) -> "IndexSet":
        self = super().__new__(cls, members)
        if not self:
            raise ValueError("index set must be nonempty")
        for m in self:
            if type(m) is not int or m < 1:
                raise ValueError(f"index set members must be positive integers, got {m!r}")
        return self

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    def render(self) -> str:
        return "{" + ",".join(map(str, self.sorted())) + "}"

    def __repr__(self) -> str:
        return f"IndexSet({self.render()})"


@dataclass(frozen=True, slots=True)
class Element:
    kind: str
    index: int = 0
    ground: Optional[IndexSet] = None

    def __post_init__(self) -> None:
        if self.kind in ("0", "1"):
            if self.index != 0 or self.ground is not None:
                raise ValueError(f"{self.kind} carries no index")
            return
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if type(self.index) is not int or self.index < 1:
            raise ValueError(f"index must be a positive integer, got {self.index!r}")
        if self.kind in ("c", "d"):
            if not isinstance(self.ground, IndexSet):
                raise ValueError(f"{self.kind}-element needs an IndexSet")
        elif self.ground is not None:
            raise ValueError(f"{self.kind}-element carries no index set")

    def render(self) -> str:
        if self.kind in ("0", "1"):
            return self.kind
        if self.ground is None:
            return f"{self.kind}{self.index}"
        return f"{self.kind}{self.ground.render()}:{self.index}"

    __str__ = render

    def __repr__(self) -> str:
        return f"<{self.render()}>"


ZERO = Element("0")
ONE = Element("1")


def a(n: int) -> Element:
    return Element("a", n)


def b(n: int) -> Element:
    return Element("b", n)


def c(ground: Iterable[int], n: int) -> Element:
    return Element("c", n, IndexSet(ground))


def d(ground: Iterable[int], n: int) -> Element:
    return Element("d", n, IndexSet(ground))


def sort_key(x: Element) -> tuple:
    ground = x.ground.sorted() if x.ground is not None else ()
    return (_KIND_RANK[x.kind], len(ground), ground, x.index)


def _ground_sets(k_max: int) -> list[IndexSet]:
    out = []
    for size in range(1, k_max + 1):
        for combo in combinations(range(1, k_max + 1), size):
            out.append(IndexSet(combo))
    return out


@dataclass(frozen=True)
class Fragment:
    """Finite sub-universe: indices ``1..n_max``, ground sets inside ``{1..k_max}``."""

    n_max: int
    k_max: int

    def __post_init__(self) -> None:
        if self.n_max < 1 or self.k_max < 1:
            raise ValueError("fragment bounds must be positive")

    def ground_sets(self) -> list[IndexSet]:
        return _ground_sets(self.k_max)

    def carrier(self) -> list[Element]:
        ns = range(1, self.n_max + 1)
        out = [ZERO, ONE]
        out += [a(n) for n in ns]
        out += [b(n) for n in ns]
        grounds = self.ground_sets()
        out += [Element("c", n, g) for g in grounds for n in ns]
        out += [Element("d", n, g) for g in grounds for n in ns]
        return out

    def size(self) -> int:
        return 2 + 2 * self.n_max + 2 * self.n_max * (2**self.k_max - 1)

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, Element):
            return False
        if x.kind in ("0", "1"):
            return True
        if x.index > self.n_max:
            return False
        return x.ground is None or max(x.ground) <= self.k_max

    def __iter__(self) -> Iterator[Element]:
        return iter(self.carrier())


# --- the oplus table -------------------------------------------------------
#
# Each rule takes the operands oriented so that the first has the lower kind
# rank and returns the result, or None when the guard fails.  Guards are
# evaluated before any index arithmetic.

def _p_zero(x, y):
    return y


def _p_a_a(x, y):
    return a(x.index + y.index)


def _p_a_b_lt(x, y):
    if x.index < y.index:
        return b(y.index - x.index)
    return None


def _p_a_b_eq(x, y):
    return ONE if x.index == y.index else None


def _p_a_c(x, y):
    return Element("c", x.index + y.index, y.ground)


def _p_a_d(x, y):
    if x.index < y.index:
        return Element("d", y.index - x.index, y.ground)
    return None


def _p_c_c(x, y):
    if x.ground.isdisjoint(y.ground):
        return Element("c", x.index + y.index - 1, IndexSet(x.ground | y.ground))
    return None


def _c_d_guard(x, y):
    return x.ground <= y.ground and x.index <= y.index


def _p_c_d_proper(x, y):
    if _c_d_guard(x, y) and x.ground != y.ground:
        return Element("d", y.index - x.index + 1, IndexSet(y.ground - x.ground))
    return None


def _p_c_d_b(x, y):
    if _c_d_guard(x, y) and x.ground == y.ground and x.index < y.index:
        return b(y.index - x.index)
    return None


def _p_c_d_one(x, y):
    if x.ground == y.ground and x.index == y.index:
        return ONE
    return None


OPLUS_RULES: dict[str, Callable] = {
    "oplus.zero": _p_zero,
    "oplus.a_a": _p_a_a,
    "oplus.a_b_lt": _p_a_b_lt,
    "oplus.a_b_eq": _p_a_b_eq,
    "oplus.a_c": _p_a_c,
    "oplus.a_d": _p_a_d,
    "oplus.c_c": _p_c_c,
    "oplus.c_d_proper": _p_c_d_proper,
    "oplus.c_d_b": _p_c_d_b,
    "oplus.c_d_one": _p_c_d_one,
}

_OPLUS_BY_KINDS: dict[tuple[str, str], tuple[str, ...]] = {
    ("a", "a"): ("oplus.a_a",),
    ("a", "b"): ("oplus.a_b_lt", "oplus.a_b_eq"),
    ("a", "c"): ("oplus.a_c",),
    ("a", "d"): ("oplus.a_d",),
    ("c", "c"): ("oplus.c_c",),
    ("c", "d"): ("oplus.c_d_proper", "oplus.c_d_b", "oplus.c_d_one"),
}


def _orient(x: Element, y: Element) -> tuple[Element, Element]:
    if _KIND_RANK[x.kind] > _KIND_RANK[y.kind]:
        return y, x
    return x, y


def oplus_rule(x: Element, y: Element) -> tuple[Optional[str], Optional[Element]]:
    """Return ``(rule_id, result)``; ``(None, None)`` when ``x ⊕ y`` is undefined."""
    if x.kind == "0":
        return "oplus.zero", y
    if y.kind == "0":
        return "oplus.zero", x
    p, q = _orient(x, y)
    for rule_id in _OPLUS_BY_KINDS.get((p.kind, q.kind), ()):
        result = OPLUS_RULES[rule_id](p, q)
        if result is not None:
            return rule_id, result
    return None, None


def oplus(x: Element, y: Element) -> Optional[Element]:
    """Partial sum; ``None`` means undefined."""
    return oplus_rule(x, y)[1]


# --- the circ table --------------------------------------------------------

def _s_zero(x, y):
    return ZERO


def _s_one(x, y):
    return y


def _s_a_a(x, y):
    return ZERO


def _s_a_b(x, y):
    return x


def _s_b_b(x, y):
    return b(x.index + y.index)


def _s_a_c(x, y):
    return ZERO


def _s_b_c(x, y):
    # c_{L,n} ∘ b_m = c_{L,n}
    return y


def _s_a_d(x, y):
    return x


def _s_b_d(x, y):
    return Element("d", y.index + x.index, y.ground)


def _s_d_d(x, y):
    return Element("d", x.index + y.index - 1, IndexSet(x.ground | y.ground))


def _s_c_c_meet(x, y):
    common = x.ground & y.ground
    return Element("c", 1, IndexSet(common)) if common else None


def _s_c_c_zero(x, y):
    return ZERO if x.ground.isdisjoint(y.ground) else None


def _s_c_d_c(x, y):
    rest = x.ground - y.ground
    return Element("c", x.index, IndexSet(rest)) if rest else None


def _s_c_d_a(x, y):
    if x.ground <= y.ground and x.index > 1:
        return a(x.index - 1)
    return None


def _s_c_d_zero(x, y):
    if x.ground <= y.ground and x.index == 1:
        return ZERO
    return None


CIRC_RULES: dict[str, Callable] = {
    "circ.zero": _s_zero,
    "circ.one": _s_one,
    "circ.a_a": _s_a_a,
    "circ.a_b": _s_a_b,
    "circ.b_b": _s_b_b,
    "circ.a_c": _s_a_c,
    "circ.b_c": _s_b_c,
    "circ.a_d": _s_a_d,
    "circ.b_d": _s_b_d,
    "circ.d_d": _s_d_d,
    "circ.c_c_meet": _s_c_c_meet,
    "circ.c_c_zero": _s_c_c_zero,
    "circ.c_d_c": _s_c_d_c,
    "circ.c_d_a": _s_c_d_a,
    "circ.c_d_zero": _s_c_d_zero,
}

_CIRC_BY_KINDS: dict[tuple[str, str], tuple[str, ...]] = {
    ("a", "a"): ("circ.a_a",),
    ("a", "b"): ("circ.a_b",),
    ("b", "b"): ("circ.b_b",),
    ("a", "c"): ("circ.a_c",),
    ("b", "c"): ("circ.b_c",),
    ("a", "d"): ("circ.a_d",),
    ("b", "d"): ("circ.b_d",),
    ("d", "d"): ("circ.d_d",),
    ("c", "c"): ("circ.c_c_meet", "circ.c_c_zero"),
    ("c", "d"): ("circ.c_d_c", "circ.c_d_a", "circ.c_d_zero"),
}


def circ_rule(x: Element, y: Element) -> tuple[str, Element]:
    """Return ``(rule_id, x ∘ y)``."""
    if x.kind == "0" or y.kind == "0":
        return "circ.zero", ZERO
    if x.kind == "1":
        return "circ.one", y
    if y.kind == "1":
        return "circ.one", x
    p, q = _orient(x, y)
    for rule_id in _CIRC_BY_KINDS[(p.kind, q.kind)]:
        result = CIRC_RULES[rule_id](p, q)
        if result is not None:
            return rule_id, result
    raise AssertionError(f"no circ rule matched {x} and {y}")


def circ(x: Element, y: Element) -> Element:
    """Sequential product (total)."""
    return circ_rule(x, y)[1]


# --- derived structure -----------------------------------------------------

def orthosupplement(x: Element) -> Element:
    kind = x.kind
    if kind == "0":
        return ONE
    if kind == "1":
        return ZERO
    flipped = {"a": "b", "b": "a", "c": "d", "d": "c"}[kind]
    return Element(flipped, x.index, x.ground)


def witness(x: Element, y: Element) -> Optional[Element]:
    """Closed-form solution of ``x ⊕ w = y``; ``None`` when ``x ≰ y``.

    Every oplus case is invertible in its parameters, so the solver walks the
    kinds ``w`` could have given the kind of ``x``.
    """
    if x == y:
        return ZERO
    kx, ky = x.kind, y.kind
    if kx == "0":
        return y
    if kx == "1" or ky == "0":
        return None
    n = x.index
    if ky == "1":
        # x ⊕ x' = 1 and the complement is unique
        return orthosupplement(x)
    k = y.index
    if kx == "a":
        if ky == "a":
            return a(k - n) if k > n else None
        if ky == "b":
            return b(k + n)
        if ky == "c":
            return Element("c", k - n, y.ground) if k > n else None
        return Element("d", k + n, y.ground)
    if kx == "b":
        if ky == "b" and k < n:
            return a(n - k)
        return None
    if kx == "c":
        if ky == "c":
            if y.ground == x.ground:
                return a(k - n) if k > n else None
            if x.ground < y.ground and k >= n:
                return Element("c", k - n + 1, IndexSet(y.ground - x.ground))
            return None
        if ky == "d":
            if x.ground.isdisjoint(y.ground):
                return Element("d", k + n - 1, IndexSet(x.ground | y.ground))
            return None
        if ky == "b":
            return Element("d", k + n, x.ground)
        return None
    # kx == "d"
    if ky == "d":
        if y.ground == x.ground:
            return a(n - k) if k < n else None
        if y.ground < x.ground and k <= n:
            return Element("c", n - k + 1, IndexSet(x.ground - y.ground))
        return None
    if ky == "b" and k < n:
        return Element("c", n - k, x.ground)
    return None


def leq(x: Element, y: Element) -> bool:
    return witness(x, y) is not None


def orthogonal(x: Element, y: Element) -> bool:
    return oplus(x, y) is not None


def commutes(x: Element, y: Element) -> bool:
    return circ(x, y) == circ(y, x)
