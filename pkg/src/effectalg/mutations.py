"""Single-rule perturbations of the E0 tables, used as negative controls.

Override grammar::

    identity          leave the rule alone
    index+1           add one to the result's index (no-op on 0 and 1)
    undefined         make the oplus rule undefined (oplus rules only)
    left              return the first operand in call order
    const:<element>   return a fixed element, e.g. ``const:b1``
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import CIRC_RULES, OPLUS_RULES, Element
from .notation import parse_element

__all__ = ["MutationSpec", "FIXTURES", "RULE_IDS", "parse_mutation", "apply_override"]

RULE_IDS = tuple(OPLUS_RULES) + tuple(CIRC_RULES)
_OVERRIDES = ("identity", "index+1", "undefined", "left")


@dataclass(frozen=True)
class MutationSpec:
    rule_id: str
    override: str = "identity"

    def __post_init__(self) -> None:
        if self.rule_id not in RULE_IDS:
            raise ValueError(f"unknown rule id {self.rule_id!r}; known: {', '.join(RULE_IDS)}")
        if self.override.startswith("const:"):
            parse_element(self.override[len("const:"):])
        elif self.override not in _OVERRIDES:
            raise ValueError(f"unknown override {self.override!r}")
        if self.override == "undefined" and not self.rule_id.startswith("oplus."):
            raise ValueError("circ is total; 'undefined' only applies to oplus rules")

    @property
    def is_identity(self) -> bool:
        return self.override == "identity"

    def render(self) -> str:
        return f"{self.rule_id}:{self.override}"


def parse_mutation(text: str) -> MutationSpec:
    """Fixture name, or ``<rule-id>:<override>`` (``<rule-id>`` alone means identity)."""
    if text in FIXTURES:
        return FIXTURES[text]
    rule_id, _, override = text.partition(":")
    return MutationSpec(rule_id, override or "identity")


def apply_override(spec: MutationSpec, x: Element, y: Element, result):
    o = spec.override
    if o == "identity":
        return result
    if o == "undefined":
        return None
    if o == "left":
        return x
    if o == "index+1":
        if result is None or result.kind in ("0", "1"):
            return result
        return Element(result.kind, result.index + 1, result.ground)
    return parse_element(o[len("const:"):])


# Negative-control fixtures: each must make the fragment(3,2) checkers report.
FIXTURES: dict[str, MutationSpec] = {
    "a-plus-a-shift": MutationSpec("oplus.a_a", "index+1"),
    "a-plus-b-eq-b1": MutationSpec("oplus.a_b_eq", "const:b1"),
    "c-plus-d-shift": MutationSpec("oplus.c_d_proper", "index+1"),
    "c-plus-c-undefined": MutationSpec("oplus.c_c", "undefined"),
    "b-circ-b-left": MutationSpec("circ.b_b", "left"),
    "c-circ-c-shift": MutationSpec("circ.c_c_meet", "index+1"),
    "c-circ-d-shift": MutationSpec("circ.c_d_c", "index+1"),
    "a-circ-d-shift": MutationSpec("circ.a_d", "index+1"),
    "b-circ-d-shift": MutationSpec("circ.b_d", "index+1"),
}
