"""Order-theoretic analysis over finite carriers.

Every bound, meet and join here is computed *inside* the carrier it is given.
For a fragment of E0 that is evidence about the global order only; reports
are labelled ``in-fragment`` accordingly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Optional, Sequence, Union

from . import model
from .instances import E0Instance, as_instance
from .kernel import AlgebraInstance
from .model import Element, Fragment, IndexSet

__all__ = [
    "MeetReport",
    "DominatorCertificate",
    "ChainReport",
    "SharpClosureReport",
    "ModelError",
    "is_sharp_mult",
    "is_sharp_order",
    "sharp_elements",
    "upper_bounds",
    "lower_bounds",
    "meet_in_fragment",
    "join_in_fragment",
    "least_sharp_dominator",
    "refute_least_sharp_dominator",
    "chain_meet_analysis",
    "check_sharp_closure",
]

Algebra = Union[Fragment, AlgebraInstance]


class ModelError(AssertionError):
    """A certificate claim failed to re-verify; indicates a bug in the model."""


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


@dataclass
class MeetReport:
    """Greatest lower bound (``direction="meet"``) or least upper bound (``"join"``)."""

    subject: list
    bounds: list
    extremal: list
    kind: str  # "meet" | "no_greatest" | "empty"  (joins: "join" | "no_least" | "empty")
    value: Any = None
    direction: str = "meet"
    render: Any = field(default=str, repr=False, compare=False)

    @property
    def exists(self) -> bool:
        return self.kind == self.direction

    def to_json(self) -> dict[str, Any]:
        r = self.render
        outcome: dict[str, Any] = {"kind": self.kind}
        if self.exists:
            outcome["value"] = r(self.value)
        key = "maximal_lower_bounds" if self.direction == "meet" else "minimal_upper_bounds"
        return {
            "subject": [r(x) for x in self.subject],
            "outcome": outcome,
            key: [r(x) for x in self.extremal],
            "scope": "in-fragment",
        }

    def dumps(self) -> str:
        return _dump(self.to_json())

    def to_text(self) -> str:
        r = self.render
        op = " ∧ " if self.direction == "meet" else " ∨ "
        head = op.join(r(x) for x in self.subject)
        if self.exists:
            result = r(self.value)
        elif self.kind == "empty":
            result = "no common bound"
        else:
            result = "no " + ("greatest lower" if self.direction == "meet" else "least upper") + " bound"
        label = "maximal lower bounds" if self.direction == "meet" else "minimal upper bounds"
        return (
            f"{head} = {result} (in-fragment)\n"
            f"{label}: {', '.join(r(x) for x in self.extremal) or '-'}\n"
        )


def _inst(algebra: Algebra) -> AlgebraInstance:
    return as_instance(algebra)


def is_sharp_mult(x, algebra: Algebra) -> bool:
    """``x ∘ x = x``."""
    inst = _inst(algebra)
    return inst.circ(x, x) == x


def sharp_elements(algebra: Algebra) -> list:
    inst = _inst(algebra)
    return [x for x in inst.carrier if inst.circ(x, x) == x]


def upper_bounds(x, algebra: Algebra, sharp_only: bool = False) -> list:
    inst = _inst(algebra)
    out = [y for y in inst.carrier if inst.leq(x, y)]
    if sharp_only:
        out = [y for y in out if inst.circ(y, y) == y]
    return out


def lower_bounds(x, algebra: Algebra, sharp_only: bool = False) -> list:
    inst = _inst(algebra)
    out = [y for y in inst.carrier if inst.leq(y, x)]
    if sharp_only:
        out = [y for y in out if inst.circ(y, y) == y]
    return out


def _bound(xs: Iterable, inst: AlgebraInstance, direction: str) -> MeetReport:
    subject = list(dict.fromkeys(xs))
    if not subject:
        raise ValueError("need at least one element")
    members = set(inst.carrier)
    for x in subject:
        if x not in members:
            raise ValueError(f"{inst.render(x)} is not in the carrier")
    if direction == "meet":
        below = lambda u, v: inst.leq(u, v)  # noqa: E731
        cands = [y for y in inst.carrier if all(inst.leq(y, x) for x in subject)]
    else:
        below = lambda u, v: inst.leq(v, u)  # noqa: E731
        cands = [y for y in inst.carrier if all(inst.leq(x, y) for x in subject)]
    # extremal = not strictly below another candidate
    extremal = [y for y in cands if not any(z != y and below(y, z) for z in cands)]
    if not cands:
        kind, value = "empty", None
    elif len(extremal) == 1 and all(below(y, extremal[0]) for y in cands):
        kind, value = direction, extremal[0]
    else:
        kind, value = ("no_greatest" if direction == "meet" else "no_least"), None
    return MeetReport(subject, cands, extremal, kind, value, direction, inst.render)


def meet_in_fragment(xs: Iterable, algebra: Algebra) -> MeetReport:
    return _bound(xs, _inst(algebra), "meet")


def join_in_fragment(xs: Iterable, algebra: Algebra) -> MeetReport:
    return _bound(xs, _inst(algebra), "join")


def is_sharp_order(x, algebra: Algebra) -> bool:
    """``x ∧ x' = 0`` computed inside the carrier."""
    inst = _inst(algebra)
    report = meet_in_fragment([x, inst.orthosupplement(x)], inst)
    return report.exists and report.value == inst.zero


def least_sharp_dominator(x, algebra: Algebra):
    """Least sharp upper bound of ``x`` in the carrier, or ``None`` if there is none."""
    inst = _inst(algebra)
    ups = upper_bounds(x, inst, sharp_only=True)
    for s in ups:
        if all(inst.leq(s, t) for t in ups):
            return s
    return None


# --- sharp-dominance refutation in E0 ---------------------------------------

@dataclass
class DominatorCertificate:
    target: Element
    sharp_upper_bounds_in_fragment: list[Element]
    refutation_pairs: list[tuple[Element, Element]]
    dominated_by: Optional[Element] = None

    @property
    def refuted(self) -> bool:
        return self.dominated_by is None

    def to_json(self) -> dict[str, Any]:
        return {
            "target": self.target.render(),
            "sharp_upper_bounds_in_fragment": [s.render() for s in self.sharp_upper_bounds_in_fragment],
            "refutation_pairs": [
                {"upper_bound": s.render(), "smaller_sharp_upper_bound": t.render(),
                 "witness_target": model.witness(self.target, t).render(),
                 "witness_order": model.witness(t, s).render()}
                for s, t in self.refutation_pairs
            ],
            "outcome": "refuted" if self.refuted else "dominated",
            "least_sharp_dominator": None if self.dominated_by is None else self.dominated_by.render(),
            "scope": "in-fragment",
        }

    def dumps(self) -> str:
        return _dump(self.to_json())

    def to_text(self) -> str:
        t = self.target.render()
        lines = [f"target: {t}",
                 "sharp upper bounds (in-fragment): "
                 + ", ".join(s.render() for s in self.sharp_upper_bounds_in_fragment)]
        for s, u in self.refutation_pairs:
            lines.append(
                f"  {t} <= {u.render()} < {s.render()}"
                f"  [{t} ⊕ {model.witness(self.target, u).render()} = {u.render()},"
                f" {u.render()} ⊕ {model.witness(u, s).render()} = {s.render()}]"
            )
        if self.refuted:
            lines.append("outcome: refuted (no sharp upper bound is least)")
        else:
            lines.append(f"outcome: dominated by {self.dominated_by.render()}")
        return "\n".join(lines) + "\n"


def _fresh(taken: Iterable[int]) -> int:
    used = set(taken)
    f = 1
    while f in used:
        f += 1
    return f


def _support(x: Element) -> set[int]:
    return set(x.ground) if x.ground is not None else set()


def _check_pair(target: Element, s: Element, t: Element) -> None:
    ok = (
        model.circ(t, t) == t
        and model.witness(target, t) is not None
        and model.witness(t, s) is not None
        and t != s
    )
    if ok:
        # replay the oplus witnesses themselves
        ok = (model.oplus(target, model.witness(target, t)) == t
              and model.oplus(t, model.witness(t, s)) == s)
    if not ok:
        raise ModelError(f"refutation pair ({s}, {t}) for target {target} does not verify")


def _smaller_sharp(target: Element, s: Element, fragment: Fragment) -> Optional[Element]:
    if s.kind == "d":
        # enlarging the ground set shrinks d
        t = Element("d", 1, IndexSet(s.ground | {_fresh(s.ground | _support(target))}))
        if model.witness(target, t) is not None:
            return t
    if s.kind == "1":
        t = Element("d", 1, IndexSet({_fresh(_support(target))}))
        if model.witness(target, t) is not None:
            return t
    # fall back to the fragment itself
    for t in fragment.carrier():
        if (t != s and model.circ(t, t) == t and model.witness(t, s) is not None
                and model.witness(target, t) is not None):
            return t
    return None


def refute_least_sharp_dominator(target: Element, fragment: Fragment) -> DominatorCertificate:
    """Show that no sharp upper bound of ``target`` is least in E0.

    For each sharp upper bound ``s`` in the fragment a strictly smaller sharp
    upper bound is produced; ``d_{L,1}`` is shrunk to ``d_{L+{f},1}`` with
    ``f`` the smallest index not already used, which may lie outside the
    fragment (the fragment bounds what is listed, not what is constructed).
    A sharp target is its own least dominator; an upper bound with no smaller
    one is reported as the dominator when it sits below all the others.
    """
    inst = E0Instance(fragment)
    ups = upper_bounds(target, inst, sharp_only=True)
    if model.circ(target, target) == target:
        return DominatorCertificate(target, ups, [], target)
    pairs, stuck = [], []
    for s in ups:
        t = _smaller_sharp(target, s, fragment)
        if t is None:
            stuck.append(s)
            continue
        _check_pair(target, s, t)
        pairs.append((s, t))
    if not stuck:
        return DominatorCertificate(target, ups, pairs)
    for s in stuck:
        if all(model.witness(s, u) is not None for u in ups):
            return DominatorCertificate(target, ups, pairs, s)
    raise ModelError(f"{target}: minimal sharp upper bounds {', '.join(map(str, stuck))} are neither least nor refuted")


# --- chains of d_{L,1} ---------------------------------------------------------

@dataclass
class ChainReport:
    ground_sets: list[IndexSet]
    prefix_meets: list[MeetReport]
    continuity_checked: int = 0
    continuity_failures: list[tuple[str, str, str]] = field(default_factory=list)

    def meet_ground_sizes(self) -> list[Optional[int]]:
        out = []
        for rep in self.prefix_meets:
            v = rep.value
            out.append(len(v.ground) if rep.exists and v.ground is not None else None)
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "chain": [g.render() for g in self.ground_sets],
            "prefixes": [
                dict(rep.to_json(), ground_size=size)
                for rep, size in zip(self.prefix_meets, self.meet_ground_sizes())
            ],
            "continuity": {
                "checked": self.continuity_checked,
                "failures": [{"b": b_, "lhs": l, "rhs": r} for b_, l, r in self.continuity_failures],
            },
            "scope": "in-fragment",
        }

    def dumps(self) -> str:
        return _dump(self.to_json())

    def to_text(self) -> str:
        lines = ["chain: " + " ⊂ ".join(g.render() for g in self.ground_sets)]
        for i, (rep, size) in enumerate(zip(self.prefix_meets, self.meet_ground_sizes()), 1):
            value = rep.value.render() if rep.exists else rep.kind
            lines.append(f"prefix {i}: meet = {value}, ground size = {size}")
        lines.append(f"continuity: {self.continuity_checked} checked, "
                     f"{len(self.continuity_failures)} failures")
        for b_, l, r in self.continuity_failures:
            lines.append(f"  b={b_}: {l} != {r}")
        return "\n".join(lines) + "\n"


def chain_meet_analysis(ground_sets: Sequence[Iterable[int]], fragment: Fragment) -> ChainReport:
    """Prefix meets of the descending chain ``d_{L1,1} > d_{L2,1} > ...``.

    Also records finite-prefix evidence for meet continuity of ``b ∘ -``:
    for every carrier ``b`` whose products with the prefix stay in the
    fragment, ``b ∘ (meet)`` is compared with the meet of the products.
    """
    sets = [IndexSet(g) for g in ground_sets]
    if not sets:
        raise ValueError("empty chain")
    for lo, hi in zip(sets, sets[1:]):
        if not lo < hi:
            raise ValueError(f"chain must be strictly increasing: {lo.render()} then {hi.render()}")
    for g in sets:
        if max(g) > fragment.k_max:
            raise ValueError(f"{g.render()} is outside the fragment ground {{1..{fragment.k_max}}}")
    inst = E0Instance(fragment)
    chain = [Element("d", 1, g) for g in sets]
    reports, checked, failures = [], 0, []
    for i in range(1, len(chain) + 1):
        prefix = chain[:i]
        rep = meet_in_fragment(prefix, inst)
        reports.append(rep)
        if not rep.exists:
            continue
        for bb in inst.carrier:
            prods = [inst.circ(bb, x) for x in prefix]
            target = inst.circ(bb, rep.value)
            if target not in fragment or not all(p in fragment for p in prods):
                continue
            checked += 1
            inner = meet_in_fragment(prods, inst)
            if not inner.exists or inner.value != target:
                lhs = target.render()
                rhs = inner.value.render() if inner.exists else inner.kind
                failures.append((bb.render(), lhs, rhs))
    return ChainReport(sets, reports, checked, failures)


# --- closure of sharp elements under meets and joins --------------------------

@dataclass
class SharpClosureReport:
    instance: str
    max_subset_size: int
    subsets_checked: int
    meets_found: int
    joins_found: int
    counterexamples: list[tuple[str, list[str], str]]

    def to_json(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "max_subset_size": self.max_subset_size,
            "subsets_checked": self.subsets_checked,
            "meets_found": self.meets_found,
            "joins_found": self.joins_found,
            "counterexamples": [
                {"kind": k, "subset": s, "value": v} for k, s, v in self.counterexamples
            ],
            "scope": "in-fragment",
        }

    def dumps(self) -> str:
        return _dump(self.to_json())

    def to_text(self) -> str:
        lines = [
            f"instance: {self.instance}",
            f"note: meets and joins are computed in-fragment",
            f"subsets of size 2..{self.max_subset_size}: {self.subsets_checked}",
            f"meets found: {self.meets_found}, joins found: {self.joins_found}",
        ]
        for k, s, v in self.counterexamples:
            lines.append(f"  {k} of {{{', '.join(s)}}} = {v} is not sharp")
        lines.append(f"{len(self.counterexamples)} counterexamples")
        return "\n".join(lines) + "\n"


def check_sharp_closure(algebra: Algebra, max_subset_size: int = 3) -> SharpClosureReport:
    """Whenever a family of sharp elements has a meet (join), it is sharp."""
    inst = _inst(algebra)
    if max_subset_size < 2:
        raise ValueError("max_subset_size must be at least 2")
    sharp = sharp_elements(inst)
    down = {x: frozenset(lower_bounds(x, inst)) for x in sharp}
    up = {x: frozenset(upper_bounds(x, inst)) for x in sharp}
    checked = meets = joins = 0
    bad = []
    for size in range(2, max_subset_size + 1):
        for subset in combinations(sharp, size):
            checked += 1
            for direction, table in (("meet", down), ("join", up)):
                common = frozenset.intersection(*(table[x] for x in subset))
                rep = _extremum(common, inst, direction)
                if rep is None:
                    continue
                if direction == "meet":
                    meets += 1
                else:
                    joins += 1
                if inst.circ(rep, rep) != rep:
                    bad.append((direction, [inst.render(x) for x in subset], inst.render(rep)))
    return SharpClosureReport(inst.label, max_subset_size, checked, meets, joins, bad)


def _extremum(cands: frozenset, inst: AlgebraInstance, direction: str):
    for y in cands:
        if direction == "meet" and all(inst.leq(z, y) for z in cands):
            return y
        if direction == "join" and all(inst.leq(y, z) for z in cands):
            return y
    return None
