from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from gowers_lab.blocks import (FuncBlockSeq, NotRepresentable, SetBlockSeq, SpanMode, block_subseqs,
                               decompose, displacement_at_most_one, enumerate_block_subseqs,
                               enumerate_set_block_seqs, in_span, is_block, is_s_skipped,
                               nonempty_unions, s_coords, s_support, span)
from gowers_lab.core import FiniteFunction, all_functions, char_fn, tetris_pow
from gowers_lab.extractor import q_delta
from gowers_lab.gtypes import enumerate_types, map_onto


def F(vals, k, signed=False):
    return FiniteFunction(tuple(vals), k, signed)


def S(*sets, ambient=None):
    sets = tuple(tuple(s) for s in sets)
    return SetBlockSeq(sets, ambient if ambient is not None else sets[-1][-1] + 1)


# brute-force references -------------------------------------------------------

def brute_span(funcs, k, strict, signed):
    """Sum over every subset, exponent tuple and sign tuple; no shared code."""
    n = funcs[0].n
    out = set()
    m = len(funcs)
    for size in range(1, m + 1):
        for idx in itertools.combinations(range(m), size):
            for eps in itertools.product(range(k), repeat=size):
                if strict and min(eps) != 0:
                    continue
                for signs in itertools.product(*[(1, -1) if signed else (1,)] * size):
                    vals = [0] * n
                    for j, e, a in zip(idx, eps, signs):
                        for x, v in enumerate(funcs[j].values):
                            vals[x] += a * max(0, v - e)
                    if any(vals):
                        out.add(tuple(vals))
    return out


# SetBlockSeq / NU / Block^d ---------------------------------------------------

def test_set_block_seq_validation():
    with pytest.raises(ValueError):
        SetBlockSeq(((0, 2), (1,)), 3)
    with pytest.raises(ValueError):
        SetBlockSeq(((),), 3)
    with pytest.raises(ValueError):
        SetBlockSeq(((0,), (5,)), 3)


def test_nonempty_unions_examples():
    assert nonempty_unions(S([0], [2])) == [(0,), (2,), (0, 2)]
    assert nonempty_unions(S([1, 3])) == [(1, 3)]
    assert len(nonempty_unions(S([0], [1], [2]))) == 7


def test_nonempty_unions_count():
    for m in range(1, 7):
        s = SetBlockSeq.singletons(m)
        assert len(set(nonempty_unions(s))) == 2**m - 1


def test_enumerate_block_subseqs_examples():
    s = S([0], [1])
    assert [t.sets for t in enumerate_block_subseqs(s, 1)] == [((0,),), ((1,),), ((0, 1),)]
    assert [t.sets for t in enumerate_block_subseqs(s, 2)] == [((0,), (1,))]
    s3 = S([0], [2, 3], [5])
    assert s3 in enumerate_block_subseqs(s3, 3)
    with pytest.raises(ValueError):
        enumerate_block_subseqs(s, 3)


def test_block_subseqs_match_brute_force():
    # pairs/triples of NU elements satisfying the block condition
    for m in range(1, 6):
        s = SetBlockSeq.singletons(m)
        nu = nonempty_unions(s)
        for d in range(1, m + 1):
            brute = {c for c in itertools.product(nu, repeat=d)
                     if all(max(c[i]) < min(c[i + 1]) for i in range(d - 1))}
            got = [t.sets for t in enumerate_block_subseqs(s, d)]
            assert len(got) == len(set(got)) == len(brute)
            assert set(got) == brute
            assert got == sorted(got, key=lambda t: [sum(1 << x for x in b) for b in t])


def test_set_block_seq_json():
    s = S([0, 1], [3])
    assert s.to_json() == [[0, 1], [3]]
    assert SetBlockSeq.from_json(s.to_json(), 4) == SetBlockSeq(s.sets, 4)


# blocks of functions ---------------------------------------------------------

def test_is_block_examples():
    assert is_block([F([2, 0, 0], 2), F([0, 0, 2], 2)])
    assert not is_block([F([2, 0, 1], 2), F([0, 2, 0], 2)])
    assert is_block([F([0, 1], 1)])
    assert not is_block([F([0, 0], 1)])


def test_func_block_seq_validation():
    with pytest.raises(ValueError):
        FuncBlockSeq((F([1, 1], 1), F([0, 1], 1)))
    FuncBlockSeq((F([1, 0], 1), F([0, 1], 1)))


# spans ----------------------------------------------------------------------

def test_span_examples():
    G = (char_fn([0], 2, 2), char_fn([1], 2, 2))
    strict = span(G, SpanMode.POS_STRICT)
    assert {f.values for f in strict} == {(2, 0), (0, 2), (2, 2), (2, 1), (1, 2)}
    assert len(strict) == 5
    assert len(span(G, SpanMode.POS_ALL)) == 8
    assert {(1, 0), (0, 1), (1, 1)} <= {f.values for f in span(G, SpanMode.POS_ALL)}
    assert len(span(G, SpanMode.SIGNED_STRICT)) == 16


def test_span_examples_match_brute_force():
    G = (char_fn([0], 2, 2), char_fn([1], 2, 2))
    assert len(brute_span(G, 2, True, False)) == 5
    assert len(brute_span(G, 2, False, False)) == 8
    assert len(brute_span(G, 2, True, True)) == 16


def test_span_strict_needs_magnitude():
    with pytest.raises(ValueError):
        span((F([1, 0], 2),), SpanMode.POS_STRICT)
    with pytest.raises(ValueError):
        span((), SpanMode.POS_ALL)


def _small_block_seqs(n, k, m):
    from gowers_lab.oracle import block_func_seqs
    return list(block_func_seqs(n, k, m))


@pytest.mark.parametrize("n,k,m", [(3, 1, 2), (4, 2, 2), (4, 1, 3), (5, 2, 2), (4, 3, 1)])
def test_span_against_brute_force(n, k, m):
    for Fs in _small_block_seqs(n, k, m)[::3]:
        for mode in SpanMode:
            got = span(Fs, mode, k)
            assert len(got) == len({f.values for f in got})
            assert {f.values for f in got} == brute_span(Fs, k, mode.strict, mode.signed)
            for f in got:
                assert in_span(f, Fs, mode, k)


@pytest.mark.parametrize("n,k,m", [(4, 2, 2), (5, 2, 2), (4, 1, 2)])
def test_span_inclusions_and_sphere(n, k, m):
    for Fs in _small_block_seqs(n, k, m):
        strict = {f.values for f in span(Fs, SpanMode.POS_STRICT, k)}
        assert strict <= {f.values for f in span(Fs, SpanMode.POS_ALL, k)}
        assert strict <= {f.values for f in span(Fs, SpanMode.SIGNED_STRICT, k)}
        assert all(max(v) == k for v in strict)


def test_in_span_rejects_outsiders():
    G = (char_fn([0], 3, 2), char_fn([2], 3, 2))
    assert not in_span(F([1, 0, 1], 2), G, SpanMode.POS_STRICT)
    assert in_span(F([1, 0, 1], 2), G, SpanMode.POS_ALL)
    assert not in_span(F([2, 1, 0], 2), G, SpanMode.POS_ALL)
    assert in_span(F([-2, 0, 1], 2, True), G, SpanMode.SIGNED_STRICT)
    assert not in_span(F([-2, 0, 1], 2, True), G, SpanMode.POS_STRICT)


def test_decompose_unique_terms():
    G = (char_fn([0, 1], 4, 2), char_fn([3], 4, 2))
    f = F([-1, -1, 0, 2], 2, True)
    assert decompose(f, G, signed=True) == [(0, -1, 1), (1, 1, 0)]
    assert decompose(F([1, 2, 0, 0], 2), G) is None


def test_x_k_s_equals_maps_of_types():
    # X_k(s) as a strict span equals {map(phi, t)}
    for m in range(1, 5):
        for k in (1, 2):
            s = SetBlockSeq(tuple((2 * i, 2 * i + 1) for i in range(m)), 2 * m)
            base = [char_fn(b, s.ambient, k) for b in s.sets]
            spanned = {f.values for f in span(base, SpanMode.POS_STRICT, k)}
            mapped = set()
            for d in range(1, m + 1):
                for t in enumerate_block_subseqs(s, d):
                    for phi in enumerate_types(k, d):
                        mapped.add(map_onto(phi, t).values)
            assert spanned == mapped


# s-relative notions ---------------------------------------------------------

def test_s_support_examples():
    s = S([0], [1], [2])
    assert s_support(char_fn([1], 3, 2), s) == {1}
    f = F([1, 0, -1], 1, True)
    assert s_support(f, s) == {0, 2}
    with pytest.raises(NotRepresentable):
        s_support(F([2, 0], 2), S([0, 1]))
    with pytest.raises(NotRepresentable):
        s_coords(F([1, 1, 0], 1), S([0], [2]))


def test_displacement_examples():
    s = SetBlockSeq.singletons(5)
    f = F([0, 1, 0, 0, 0], 1)
    assert displacement_at_most_one(f, f, s)
    a = q_delta(1, 1, s, 1).negate()
    b = q_delta(1, 2, s, 1)
    assert displacement_at_most_one(a, b, s)
    assert not displacement_at_most_one(char_fn([0], 5, 1), char_fn([2], 5, 1), s)
    # sequences are compared pairwise
    assert displacement_at_most_one((a, char_fn([4], 5, 1)), (b, char_fn([4], 5, 1)), s)


def test_is_s_skipped_examples():
    s = SetBlockSeq.singletons(3)
    assert is_s_skipped((char_fn([0], 3, 1), char_fn([2], 3, 1)), s)
    assert not is_s_skipped((char_fn([0], 3, 1), char_fn([1], 3, 1)), s)
    assert is_s_skipped((char_fn([1], 3, 1),), s)


@given(st.integers(1, 3), st.integers(2, 10), st.data())
def test_block_subseqs_of_functions_are_block(k, n, data):
    m = data.draw(st.integers(1, min(3, n)))
    base = tuple(char_fn([i], n, k) for i in range(n))[:m]
    for d in range(1, m + 1):
        for H in block_subseqs(base, d, SpanMode.POS_STRICT, k):
            assert is_block(H) and len(H) == d
