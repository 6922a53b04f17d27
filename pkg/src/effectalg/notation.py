"""Text notation for elements: ``0``, ``1``, ``a3``, ``b12``, ``c{1,2}:4``, ``d{7}:1``."""

from __future__ import annotations

import re

from .model import ONE, ZERO, Element, IndexSet

__all__ = ["ParseError", "parse_element", "parse_index_set", "parse_chain", "render"]


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


_NAT = re.compile(r"[0-9]+")


def _nat(text: str, pos: int) -> tuple[int, int]:
    m = _NAT.match(text, pos)
    if m is None:
        raise ParseError(text, pos, "expected a positive integer")
    if m.group().startswith("0"):
        raise ParseError(text, pos, "indices are positive integers without leading zeros")
    return int(m.group()), m.end()


def _set(text: str, pos: int) -> tuple[IndexSet, int]:
    if pos >= len(text) or text[pos] != "{":
        raise ParseError(text, pos, "expected '{'")
    pos += 1
    if pos < len(text) and text[pos] == "}":
        raise ParseError(text, pos, "index sets must be nonempty")
    members = []
    while True:
        n, pos = _nat(text, pos)
        members.append(n)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        if pos < len(text) and text[pos] == "}":
            return IndexSet(members), pos + 1
        raise ParseError(text, pos, "expected ',' or '}'")


def parse_index_set(text: str) -> IndexSet:
    text = text.strip()
    result, pos = _set(text, 0)
    if pos != len(text):
        raise ParseError(text, pos, "trailing input")
    return result


def parse_element(text: str) -> Element:
    """Parse one element; set members may be unordered and are normalized."""
    if text == "0":
        return ZERO
    if text == "1":
        return ONE
    if not text:
        raise ParseError(text, 0, "empty input")
    kind = text[0]
    if kind in "ab":
        n, pos = _nat(text, 1)
        result = Element(kind, n)
    elif kind in "cd":
        ground, pos = _set(text, 1)
        if pos >= len(text) or text[pos] != ":":
            raise ParseError(text, pos, "expected ':'")
        n, pos = _nat(text, pos + 1)
        result = Element(kind, n, ground)
    else:
        raise ParseError(text, 0, "expected one of 0, 1, a, b, c, d")
    if pos != len(text):
        raise ParseError(text, pos, "trailing input")
    return result


def parse_chain(text: str) -> list[IndexSet]:
    """``"{1};{1,2};{1,2,3}"`` -> list of index sets."""
    parts = [p for p in text.split(";")]
    if not any(p.strip() for p in parts):
        raise ParseError(text, 0, "empty chain")
    return [parse_index_set(p) for p in parts]


def render(x: Element) -> str:
    return x.render()
