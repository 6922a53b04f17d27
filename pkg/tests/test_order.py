import itertools

import jsonschema
import pytest

from effectalg import model
from effectalg.instances import E0Instance, boolean_instance
from effectalg.model import ONE, ZERO, Fragment, IndexSet, a, b, c, d
from effectalg.order import (
    ModelError,
    chain_meet_analysis,
    check_sharp_closure,
    is_sharp_mult,
    is_sharp_order,
    join_in_fragment,
    lower_bounds,
    meet_in_fragment,
    refute_least_sharp_dominator,
    sharp_elements,
    upper_bounds,
)

from conftest import enlarged, oracle_leq

MEET_SCHEMA = {
    "type": "object",
    "required": ["subject", "outcome", "maximal_lower_bounds"],
    "properties": {
        "subject": {"type": "array", "items": {"type": "string"}},
        "outcome": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["meet", "no_greatest", "empty"]}, "value": {"type": "string"}},
        },
        "maximal_lower_bounds": {"type": "array", "items": {"type": "string"}},
    },
}


def names(xs):
    return [x.render() for x in xs]


def oracle_bounds(x, frag, up):
    pool = enlarged(frag)
    if up:
        return [y for y in frag.carrier() if oracle_leq(x, y, pool)]
    return [y for y in frag.carrier() if oracle_leq(y, x, pool)]


@pytest.mark.parametrize("x,expected", [
    (c([7], 1), True), (b(2), False), (ZERO, True), (ONE, True), (d([1], 2), False),
])
def test_is_sharp_mult(x, expected):
    assert is_sharp_mult(x, Fragment(1, 1)) is expected


def test_is_sharp_order_examples():
    assert is_sharp_order(c([1], 1), Fragment(3, 2))
    assert not is_sharp_order(a(3), Fragment(4, 2))
    assert is_sharp_order(ONE, Fragment(2, 1))
    # a3 <= b3 through a3 ⊕ b6 = b3
    assert model.oplus(a(3), b(6)) == b(3)


def test_sharp_set_shape():
    for n, k in itertools.product(range(1, 5), range(1, 4)):
        frag = Fragment(n, k)
        expected = [ZERO, ONE] + [c(g, 1) for g in frag.ground_sets()] + [d(g, 1) for g in frag.ground_sets()]
        assert sharp_elements(frag) == expected


def test_sharp_set_small():
    assert names(sharp_elements(Fragment(1, 1))) == ["0", "1", "c{1}:1", "d{1}:1"]


def test_sharp_set_boolean():
    inst = boolean_instance(3)
    assert sharp_elements(inst) == list(inst.carrier)


def test_upper_bounds_sharp_a1():
    got = upper_bounds(a(1), Fragment(2, 2), sharp_only=True)
    assert set(got) == {ONE, d([1], 1), d([2], 1), d([1, 2], 1)}


def test_upper_bounds_of_top():
    assert upper_bounds(ONE, Fragment(3, 2)) == [ONE]


def test_upper_bounds_a1_bruteforce():
    frag = Fragment(2, 1)
    got = upper_bounds(a(1), frag)
    assert got == oracle_bounds(a(1), frag, up=True)
    # frozen from the oracle above
    assert names(got) == ["1", "a1", "a2", "b1", "b2", "c{1}:2", "d{1}:1", "d{1}:2"]


def test_lower_bounds_examples():
    frag = Fragment(2, 2)
    assert lower_bounds(ZERO, frag) == [ZERO]
    got = lower_bounds(d([1], 1), frag)
    assert got == oracle_bounds(d([1], 1), frag, up=False)
    assert names(got) == ["0", "a1", "a2", "c{2}:1", "c{2}:2", "d{1}:1", "d{1}:2", "d{1,2}:1", "d{1,2}:2"]
    got = lower_bounds(c([1, 2], 1), frag)
    assert got == oracle_bounds(c([1, 2], 1), frag, up=False)
    assert set(got) == {ZERO, c([1], 1), c([2], 1), c([1, 2], 1)}


def test_meet_examples():
    frag = Fragment(3, 3)
    assert meet_in_fragment([a(2)], frag).value == a(2)
    rep = meet_in_fragment([d([1], 1), d([2], 1)], frag)
    assert rep.kind == "meet" and rep.value == d([1, 2], 1)
    # oracle: d{1,2}:1 dominates every common lower bound
    common = [y for y in frag.carrier() if model.leq(y, d([1], 1)) and model.leq(y, d([2], 1))]
    assert all(model.leq(y, d([1, 2], 1)) for y in common)
    rep = meet_in_fragment([c([1], 1), d([1], 1)], Fragment(3, 2))
    assert rep.value == ZERO
    jsonschema.validate(rep.to_json(), MEET_SCHEMA)


def test_meet_no_greatest_and_empty():
    from effectalg.kernel import AlgebraInstance

    class Diamond(AlgebraInstance):
        # p, q incomparable with two incomparable upper bounds r, s below 1
        carrier = ("0", "p", "q", "r", "s", "1")
        zero, one = "0", "1"
        _up = {"0": set("0pqrs1"), "p": set("prs1"), "q": set("qrs1"), "r": set("r1"), "s": set("s1"), "1": {"1"}}

        def leq(self, x, y):
            return y in self._up[x]

    rep = join_in_fragment(["p", "q"], Diamond())
    assert rep.kind == "no_least" and set(rep.extremal) == {"r", "s"}
    rep = meet_in_fragment(["r", "s"], Diamond())
    assert rep.kind == "no_greatest" and set(rep.extremal) == {"p", "q"}
    # without the bottom, p and q share no lower bound at all
    Diamond.carrier = ("p", "q", "r", "s", "1")
    assert meet_in_fragment(["p", "q"], Diamond()).kind == "empty"


def test_meet_rejects_foreign_element():
    with pytest.raises(ValueError):
        meet_in_fragment([a(9)], Fragment(2, 2))


def test_monotone_embedding_and_incomparability():
    frag = Fragment(2, 3)
    for g1, g2 in itertools.product(frag.ground_sets(), repeat=2):
        if g1 < g2:
            assert model.oplus(c(g1, 1), c(g2 - g1, 1)) == c(g2, 1)
            assert model.oplus(d(g2, 1), c(g2 - g1, 1)) == d(g1, 1)
            assert model.leq(c(g1, 1), c(g2, 1)) and not model.leq(c(g2, 1), c(g1, 1))
            assert model.leq(d(g2, 1), d(g1, 1)) and not model.leq(d(g1, 1), d(g2, 1))
    for g in frag.ground_sets():
        assert not model.leq(a(1), c(g, 1)) and not model.leq(c(g, 1), a(1))


def test_leq_partial_order(frag32):
    carrier = frag32.carrier()
    leq = {(x, y): model.leq(x, y) for x in carrier for y in carrier}
    for x in carrier:
        assert leq[x, x] and leq[ZERO, x] and leq[x, ONE]
    for x, y in itertools.product(carrier, repeat=2):
        if x != y:
            assert not (leq[x, y] and leq[y, x])
    for x, y, z in itertools.product(carrier, repeat=3):
        if leq[x, y] and leq[y, z]:
            assert leq[x, z]


def test_refutation_k1():
    cert = refute_least_sharp_dominator(a(1), Fragment(2, 1))
    assert cert.refuted
    assert (d([1], 1), d([1, 2], 1)) in cert.refutation_pairs


def test_refutation_k3_fresh_index():
    cert = refute_least_sharp_dominator(a(1), Fragment(2, 3))
    pairs = dict(cert.refutation_pairs)
    for g in Fragment(2, 3).ground_sets():
        fresh = min(set(range(1, 6)) - set(g))
        assert pairs[d(g, 1)] == d(set(g) | {fresh}, 1)
    for s, t in cert.refutation_pairs:
        assert model.oplus(a(1), model.witness(a(1), t)) == t
        assert model.oplus(t, model.witness(t, s)) == s
        assert t != s and is_sharp_mult(t, Fragment(1, 1))


def test_refutation_degenerate_zero():
    cert = refute_least_sharp_dominator(ZERO, Fragment(2, 2))
    assert not cert.refuted and cert.dominated_by == ZERO
    assert cert.to_json()["outcome"] == "dominated"


def test_refutation_dominated_targets():
    assert refute_least_sharp_dominator(b(2), Fragment(3, 2)).dominated_by == ONE
    assert refute_least_sharp_dominator(d([1], 3), Fragment(3, 2)).dominated_by == d([1], 1)
    assert refute_least_sharp_dominator(c([1], 2), Fragment(3, 2)).refuted


def test_certificate_verification_guard(monkeypatch):
    import effectalg.order as order

    monkeypatch.setattr(order, "_smaller_sharp", lambda target, s, frag: s)
    with pytest.raises(ModelError):
        refute_least_sharp_dominator(a(1), Fragment(2, 1))


def test_chain_examples():
    rep = chain_meet_analysis([{1}, {1, 2}, {1, 2, 3}], Fragment(2, 3))
    assert [r.value for r in rep.prefix_meets] == [d([1], 1), d([1, 2], 1), d([1, 2, 3], 1)]
    assert rep.meet_ground_sizes() == [1, 2, 3]
    assert chain_meet_analysis([{1}], Fragment(2, 3)).prefix_meets[0].value == d([1], 1)


def test_chain_growth_k4():
    rep = chain_meet_analysis([range(1, i + 1) for i in range(1, 5)], Fragment(2, 4))
    assert rep.meet_ground_sizes() == [1, 2, 3, 4]
    assert rep.continuity_checked > 0 and rep.continuity_failures == []


@pytest.mark.parametrize("chain", [[{1, 2}, {1}], [{1}, {1}], [{1}, {2}], [{1}, {1, 9}], []])
def test_chain_rejects(chain):
    with pytest.raises(ValueError):
        chain_meet_analysis(chain, Fragment(2, 3))


def test_sharp_closure_pairs_and_triples():
    rep = check_sharp_closure(Fragment(3, 2))
    assert rep.counterexamples == []
    assert rep.meets_found > 0 and rep.joins_found > 0
    rep = check_sharp_closure(Fragment(3, 2), max_subset_size=2)
    assert rep.subsets_checked == 28


def test_sharp_closure_specific_pairs():
    frag = Fragment(3, 2)
    m = meet_in_fragment([c([1], 1), d([1], 1)], frag).value
    assert m == ZERO and is_sharp_mult(m, frag)
    m = meet_in_fragment([d([1], 1), d([2], 1)], frag).value
    assert m == d([1, 2], 1) and is_sharp_mult(m, frag)


def test_sharpness_agreement_small(frag32):
    for x in frag32.carrier():
        assert is_sharp_mult(x, frag32) == is_sharp_order(x, frag32)
