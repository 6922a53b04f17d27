"""Generic effect-algebra / sequential-effect-algebra interface and axiom checkers.

The checkers only talk to an :class:`AlgebraInstance`; they know nothing about
the concrete algebra behind it.  All quantifiers range over the instance's
carrier, which for fragments of an infinite algebra is an approximation:
a clean report certifies the axioms for every tuple drawn from the carrier,
nothing more.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Hashable, Iterator, Optional, Sequence

__all__ = [
    "AlgebraInstance",
    "ConfigurationError",
    "NotAnEffectAlgebra",
    "Violation",
    "VerificationReport",
    "EA_AXIOMS",
    "SEA_AXIOMS",
    "verify_ea",
    "verify_sea",
    "verify",
    "replay",
]

EA_AXIOMS = ("EA1", "EA2", "EA3", "EA4")
SEA_AXIOMS = ("SEA1", "SEA2", "SEA3", "SEA4", "SEA5")
UNDEFINED = "undefined"

SEA4_NOTE = "SEA4 quantifies 'for each c' over the carrier only"


class ConfigurationError(ValueError):
    pass


class NotAnEffectAlgebra(ValueError):
    """Raised by :func:`verify_sea` when the effect-algebra axioms already fail."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__(f"instance violates the effect-algebra axioms ({len(violations)} violations)")


class AlgebraInstance:
    """A checkable algebra: carrier, partial ``oplus``, total ``circ``, ``zero``, ``one``.

    Subclasses set ``label``, ``zero``, ``one``, ``carrier`` and ``mode`` and
    implement :meth:`oplus`, :meth:`circ` and :meth:`render`.  Element handles
    must be hashable.  ``oplus``/``circ`` must accept any handle the instance
    ever produced, not only carrier members.
    """

    label: str = "instance"
    mode: str = "exhaustive"
    zero: Hashable
    one: Hashable
    carrier: tuple

    def oplus(self, x, y):
        """Return ``x ⊕ y`` or ``None`` when undefined."""
        raise NotImplementedError

    def circ(self, x, y):
        raise NotImplementedError

    def render(self, x) -> str:
        return str(x)

    def render_opt(self, x) -> str:
        return UNDEFINED if x is None else self.render(x)

    def orthosupplement(self, x):
        """First carrier element ``y`` with ``x ⊕ y = 1``."""
        for y in self.carrier:
            if self.oplus(x, y) == self.one:
                return y
        raise ValueError(f"{self.render(x)} has no orthosupplement in the carrier")

    def witness(self, x, y):
        """Some carrier ``w`` with ``x ⊕ w = y``, or ``None``."""
        for w in self.carrier:
            if self.oplus(x, w) == y:
                return w
        return None

    def leq(self, x, y) -> bool:
        return self.witness(x, y) is not None

    def lookup(self, text: str):
        try:
            index = self._render_index
        except AttributeError:
            index = self._render_index = {self.render(x): x for x in self.carrier}
        return index[text]

    def check_configuration(self) -> None:
        if not self.carrier:
            raise ConfigurationError(f"{self.label}: empty carrier")
        if self.zero == self.one:
            raise ConfigurationError(f"{self.label}: zero and one coincide")
        members = set(self.carrier)
        if self.zero not in members or self.one not in members:
            raise ConfigurationError(f"{self.label}: zero/one missing from carrier")


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    witnesses: tuple[str, ...]
    lhs: str
    rhs: str

    def to_json(self) -> dict[str, Any]:
        return {"axiom": self.axiom, "witnesses": list(self.witnesses), "lhs": self.lhs, "rhs": self.rhs}

    def __str__(self) -> str:
        return f"{self.axiom} at ({', '.join(self.witnesses)}): {self.lhs} != {self.rhs}"


@dataclass
class VerificationReport:
    instance: str
    mode: str
    carrier_size: int
    axiom_families_checked: list[str]
    violations: list[Violation]

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "mode": self.mode,
            "carrier_size": self.carrier_size,
            "axiom_families_checked": list(self.axiom_families_checked),
            "violations": [v.to_json() for v in self.violations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [
            f"instance: {self.instance}",
            f"mode: {self.mode} ({self.carrier_size} carrier elements)",
            f"axioms: {', '.join(self.axiom_families_checked)}",
        ]
        if any(ax.startswith("SEA") for ax in self.axiom_families_checked):
            lines.append(f"note: {SEA4_NOTE}")
        lines += [f"  {v}" for v in self.violations]
        lines.append(f"{len(self.violations)} violations")
        return "\n".join(lines) + "\n"


# --- per-axiom scans ---------------------------------------------------------
#
# Each scan is a generator over violations with the first quantified variable
# restricted to ``firsts`` (a slice of the carrier); the full check is the
# union over a partition of the carrier, which is what the parallel runner
# exploits.

def _ea1(inst, firsts):
    r, rr = inst.render, inst.render_opt
    for x in firsts:
        for y in inst.carrier:
            xy, yx = inst.oplus(x, y), inst.oplus(y, x)
            if xy != yx:
                yield Violation("EA1", (r(x), r(y)), rr(xy), rr(yx))


def _ea2(inst, firsts):
    r, rr = inst.render, inst.render_opt
    op = inst.oplus
    carrier = inst.carrier
    for x in firsts:
        for y in carrier:
            xy = op(x, y)
            for z in carrier:
                yz = op(y, z)
                right = None if yz is None else op(x, yz)
                left = None if xy is None else op(xy, z)
                # both directions: a⊕(b⊕c) defined => (a⊕b)⊕c defined and equal, and mirrored
                if right != left:
                    yield Violation("EA2", (r(x), r(y), r(z)), rr(right), rr(left))


def _ea3(inst, firsts):
    r = inst.render
    for x in firsts:
        complements = [y for y in inst.carrier if inst.oplus(x, y) == inst.one]
        if len(complements) != 1:
            found = ",".join(r(y) for y in complements) or "none"
            yield Violation("EA3", (r(x),), f"complements[{found}]", "exactly one")


def _ea4(inst, firsts):
    r, rr = inst.render, inst.render_opt
    for x in firsts:
        s = inst.oplus(x, inst.one)
        if s is not None and x != inst.zero:
            yield Violation("EA4", (r(x),), rr(s), UNDEFINED)


def _sea1(inst, firsts):
    r, rr = inst.render, inst.render_opt
    op, sp = inst.oplus, inst.circ
    carrier = inst.carrier
    pairs = [(y, z, op(y, z)) for y in carrier for z in carrier]
    pairs = [p for p in pairs if p[2] is not None]
    for x in firsts:
        for y, z, yz in pairs:
            lhs = sp(x, yz)
            rhs = op(sp(x, y), sp(x, z))
            if lhs != rhs:
                yield Violation("SEA1", (r(x), r(y), r(z)), rr(lhs), rr(rhs))


def _sea2(inst, firsts):
    r = inst.render
    for x in firsts:
        v = inst.circ(inst.one, x)
        if v != x:
            yield Violation("SEA2", (r(x),), r(v), r(x))


def _sea3(inst, firsts):
    r = inst.render
    for x in firsts:
        for y in inst.carrier:
            xy = inst.circ(x, y)
            if xy == inst.zero:
                yx = inst.circ(y, x)
                if yx != xy:
                    yield Violation("SEA3", (r(x), r(y)), r(xy), r(yx))


def _sea4(inst, firsts):
    r = inst.render
    sp = inst.circ
    carrier = inst.carrier
    comp = {y: inst.orthosupplement(y) for y in carrier}
    for x in firsts:
        for y in carrier:
            xy = sp(x, y)
            if xy != sp(y, x):
                continue
            yc = comp[y]
            u, v = sp(x, yc), sp(yc, x)
            if u != v:
                yield Violation("SEA4", (r(x), r(y)), r(u), r(v))
            for z in carrier:
                lhs = sp(x, sp(y, z))
                rhs = sp(xy, z)
                if lhs != rhs:
                    yield Violation("SEA4", (r(x), r(y), r(z)), r(lhs), r(rhs))


def _sea5(inst, firsts):
    # statement: c|a and c|b  =>  c|(a∘b), and c|(a⊕b) when a⊥b; witnesses listed as (c, a, b)
    r = inst.render
    op, sp = inst.oplus, inst.circ
    carrier = inst.carrier
    for w in firsts:
        commuting = [x for x in carrier if sp(w, x) == sp(x, w)]
        for x in commuting:
            for y in commuting:
                xy = sp(x, y)
                u, v = sp(w, xy), sp(xy, w)
                if u != v:
                    yield Violation("SEA5", (r(w), r(x), r(y)), r(u), r(v))
                s = op(x, y)
                if s is not None:
                    u, v = sp(w, s), sp(s, w)
                    if u != v:
                        yield Violation("SEA5", (r(w), r(x), r(y)), r(u), r(v))


_SCANS = {
    "EA1": _ea1,
    "EA2": _ea2,
    "EA3": _ea3,
    "EA4": _ea4,
    "SEA1": _sea1,
    "SEA2": _sea2,
    "SEA3": _sea3,
    "SEA4": _sea4,
    "SEA5": _sea5,
}


def _scan(inst: AlgebraInstance, axioms: Sequence[str], firsts: Sequence, limit: Optional[int]) -> list[Violation]:
    out: list[Violation] = []
    for axiom in axioms:
        for v in _SCANS[axiom](inst, firsts):
            out.append(v)
            if limit is not None and len(out) >= limit:
                return out
    return out


def _scan_chunk(args) -> list[Violation]:
    inst, axioms, lo, hi, limit = args
    return _scan(inst, axioms, inst.carrier[lo:hi], limit)


def _chunks(n: int, parts: int) -> Iterator[tuple[int, int]]:
    step = -(-n // parts)
    for lo in range(0, n, step):
        yield lo, min(n, lo + step)


def _run(inst: AlgebraInstance, axioms: Sequence[str], workers: int, stop_after: Optional[int]) -> list[Violation]:
    inst.check_configuration()
    if workers <= 1:
        found = _scan(inst, axioms, inst.carrier, stop_after)
    else:
        jobs = [(inst, axioms, lo, hi, stop_after) for lo, hi in _chunks(len(inst.carrier), workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [v for part in pool.map(_scan_chunk, jobs) for v in part]
    found = sorted(set(found))
    if stop_after is not None:
        found = found[:stop_after]
    return found


def verify_ea(inst: AlgebraInstance, *, workers: int = 1, stop_after: Optional[int] = None) -> list[Violation]:
    """Check EA1-EA4 over the carrier; returns violations sorted by axiom then witnesses."""
    return _run(inst, EA_AXIOMS, workers, stop_after)


def verify_sea(inst: AlgebraInstance, *, workers: int = 1, stop_after: Optional[int] = None) -> list[Violation]:
    """Check SEA1-SEA5; raises :class:`NotAnEffectAlgebra` when EA1-EA4 fail first."""
    ea = verify_ea(inst, workers=workers, stop_after=stop_after)
    if ea:
        raise NotAnEffectAlgebra(ea)
    return _run(inst, SEA_AXIOMS, workers, stop_after)


def verify(inst: AlgebraInstance, families: str = "all", *, workers: int = 1,
           stop_after: Optional[int] = None) -> VerificationReport:
    """Run ``"ea"``, ``"sea"`` or ``"all"`` and package the result.

    For ``"sea"``/``"all"`` on an instance that is not an effect algebra the
    report carries the EA violations and lists only the EA families as checked.
    """
    if families not in ("ea", "sea", "all"):
        raise ValueError(f"unknown axiom family {families!r}")
    checked = list(EA_AXIOMS)
    violations = verify_ea(inst, workers=workers, stop_after=stop_after)
    if families != "ea" and not violations:
        violations = _run(inst, SEA_AXIOMS, workers, stop_after)
        checked += SEA_AXIOMS
    return VerificationReport(inst.label, inst.mode, len(inst.carrier), checked, violations)


def _recompute(inst: AlgebraInstance, axiom: str, xs: list) -> list[tuple[str, str]]:
    """Mismatches ``(lhs, rhs)`` that the witnesses ``xs`` exhibit for ``axiom``."""
    r, rr = inst.render, inst.render_opt
    op, sp = inst.oplus, inst.circ
    out = []
    if axiom == "EA1":
        x, y = xs
        out.append((rr(op(x, y)), rr(op(y, x))))
    elif axiom == "EA2":
        x, y, z = xs
        yz, xy = op(y, z), op(x, y)
        out.append((rr(None if yz is None else op(x, yz)), rr(None if xy is None else op(xy, z))))
    elif axiom == "EA3":
        (x,) = xs
        complements = [y for y in inst.carrier if op(x, y) == inst.one]
        if len(complements) != 1:
            found = ",".join(r(y) for y in complements) or "none"
            out.append((f"complements[{found}]", "exactly one"))
    elif axiom == "EA4":
        (x,) = xs
        s = op(x, inst.one)
        if s is not None and x != inst.zero:
            out.append((r(s), UNDEFINED))
    elif axiom == "SEA1":
        x, y, z = xs
        yz = op(y, z)
        if yz is not None:
            out.append((rr(sp(x, yz)), rr(op(sp(x, y), sp(x, z)))))
    elif axiom == "SEA2":
        (x,) = xs
        out.append((r(sp(inst.one, x)), r(x)))
    elif axiom == "SEA3":
        x, y = xs
        if sp(x, y) == inst.zero:
            out.append((r(sp(x, y)), r(sp(y, x))))
    elif axiom == "SEA4":
        x, y, *rest = xs
        if sp(x, y) == sp(y, x):
            if rest:
                (z,) = rest
                out.append((r(sp(x, sp(y, z))), r(sp(sp(x, y), z))))
            else:
                yc = inst.orthosupplement(y)
                out.append((r(sp(x, yc)), r(sp(yc, x))))
    elif axiom == "SEA5":
        w, x, y = xs
        if sp(w, x) == sp(x, w) and sp(w, y) == sp(y, w):
            xy = sp(x, y)
            out.append((r(sp(w, xy)), r(sp(xy, w))))
            s = op(x, y)
            if s is not None:
                out.append((r(sp(w, s)), r(sp(s, w))))
    else:
        raise ValueError(f"unknown axiom {axiom!r}")
    return [(lhs, rhs) for lhs, rhs in out if lhs != rhs]


def replay(inst: AlgebraInstance, v: Violation) -> bool:
    """Re-evaluate a violation from its witnesses alone; True iff the mismatch reproduces."""
    xs = [inst.lookup(w) for w in v.witnesses]
    return (v.lhs, v.rhs) in _recompute(inst, v.axiom, xs)
