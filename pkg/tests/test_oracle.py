from __future__ import annotations

import json

import pytest

from gowers_lab import oracle as O
from gowers_lab.blocks import SetBlockSeq
from gowers_lab.core import FiniteFunction, sphere_size


def test_domain_elements_and_membership():
    for kind, k in ((O.X, 2), (O.X_PM, 1)):
        dom = O.Domain(kind, 3, k)
        elems = list(dom.elements())
        assert len(elems) == sphere_size(3, k, dom.signed)
        assert all(dom.contains(x) for x in elems)
    dom = O.Domain(O.SETS, 4, 1, 2)
    assert all(dom.contains(x) for x in dom.elements())
    dom = O.Domain(O.BLOCK, 4, 1, 2)
    seqs = list(dom.elements())
    assert all(dom.contains(x) for x in seqs)
    assert not dom.contains((seqs[0][0],))


def test_encode_decode_round_trip():
    for dom in (O.Domain(O.X_PM, 3, 2), O.Domain(O.SETS, 4, 1, 2), O.Domain(O.BLOCK_PM, 3, 1, 2)):
        for x in dom.elements():
            assert O.decode(dom, O.encode(x)) == x


def test_oracle_purity_and_range():
    dom = O.Domain(O.X, 3, 1)
    c = O.random_table(dom, 3, seed=5)
    vals = [c(x) for x in dom.elements()]
    c2 = O.random_table(dom, 3, seed=5)
    assert vals == [c2(x) for x in dom.elements()]
    assert set(vals) <= {1, 2, 3}
    bad = O.ColoringOracle(dom, 2, lambda x: 3)
    with pytest.raises(ValueError):
        bad(next(dom.elements()))


def test_checked_oracle_rejects_foreign_points():
    dom = O.Domain(O.X, 2, 1)
    c = O.ColoringOracle(dom, 1, lambda x: 1, check=True)
    with pytest.raises(O.DomainMismatch):
        c(FiniteFunction((2, 0), 2))


def test_table_round_trip(tmp_path):
    dom = O.Domain(O.X_PM, 2, 1)
    c = O.by_min_supp_sign(dom)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_json()))
    c2 = O.load(path)
    assert all(c(x) == c2(x) for x in dom.elements())


def test_malformed_oracle_files():
    with pytest.raises(ValueError):
        O.load({"domain": {"kind": "X", "n": 2}})
    with pytest.raises(ValueError):
        O.load({"domain": {"kind": "X", "n": 2}, "r": 1, "table": {"1,0": 2}})
    c = O.load({"domain": {"kind": "X", "n": 2}, "r": 1, "table": {"1,0": 1}})
    with pytest.raises(O.DomainMismatch):
        c(FiniteFunction((0, 1), 1))


def test_builtins():
    dom = O.Domain(O.X_PM, 3, 1)
    for name in O.BUILTINS:
        c = O.builtin(name, dom, 3)
        assert all(1 <= c(x) <= 3 for x in dom.elements())
    with pytest.raises(ValueError):
        O.builtin("nope", dom, 2)
    c = O.degree(dom, 3)
    assert c(FiniteFunction((1, -1, 1), 1, True)) == 1
    assert c(FiniteFunction((1, 0, 1), 1, True)) == 2
    p = O.parity_of_sum(O.Domain(O.SETS, 3, 1, 1), 2)
    assert p(SetBlockSeq(((0, 1),), 3)) == 1


def test_random_type_table_is_type_determined():
    from gowers_lab.gtypes import tp
    dom = O.Domain(O.X_PM, 4, 2)
    c = O.random_type_table(dom, 3, 7)
    seen = {}
    for f in dom.elements():
        assert seen.setdefault(tp(f), c(f)) == c(f)
