from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gowers_lab import oracle as O
from gowers_lab import recheck
from gowers_lab.blocks import FuncBlockSeq, SetBlockSeq, SpanMode, displacement_at_most_one, is_s_skipped, span
from gowers_lab.core import FiniteFunction, all_functions, char_fn, sup_metric, tetris
from gowers_lab.extractor import (Budget, Status, approximate_witness, canonize_signed, canonize_types,
                                  direct_search_positive, extract_multidim_positive, extract_multidim_signed,
                                  extract_positive, extract_signed, is_insensitive, is_type_canonical,
                                  make_insensitive, mt_search, pyramid_sequence, q_delta, q_map,
                                  signed_carrier)
from gowers_lab.gtypes import tp
from gowers_lab.oracle import Domain


def F(vals, k, signed=False):
    return FiniteFunction(tuple(vals), k, signed)


def singletons(n):
    return SetBlockSeq.singletons(n)


# independent brute-force references ------------------------------------------

def brute_block_seqs_of_sets(s: SetBlockSeq, m: int):
    """Length-m block subsequences of s, by direct subset enumeration, in mask order."""
    L = len(s)
    unions = []
    for mask in range(1, 1 << L):
        idx = [i for i in range(L) if mask >> i & 1]
        unions.append((mask, idx))
    out = []
    for combo in itertools.product(unions, repeat=m):
        if all(max(a[1]) < min(b[1]) for a, b in zip(combo, combo[1:])):
            out.append(tuple(mask for mask, _ in combo))
    out.sort()
    return [SetBlockSeq(tuple(tuple(sorted(x for i in idx for x in s.sets[i])) for _, idx in
                              [(mk, [i for i in range(L) if mk >> i & 1]) for mk in masks]), s.ambient)
            for masks in out]


def brute_mt(s, d, m, c):
    for t in brute_block_seqs_of_sets(s, m):
        cols = {c(u) for u in brute_block_seqs_of_sets(t, d)}
        if len(cols) == 1:
            return t, cols.pop()
    return None


def brute_positive_exists(n, k, m, c):
    for Fs in O.block_func_seqs(n, k, m):
        if len({c(f) for f in span(Fs, SpanMode.POS_STRICT, k)}) == 1:
            return True
    return False


# mt_search -------------------------------------------------------------------

def test_mt_constant():
    s = singletons(4)
    c = O.constant(Domain(O.SETS, 4, 1, 1), 1)
    rep = mt_search(s, 1, 2, c)
    assert rep.found and rep.witness.sets == ((0,), (1,))
    rep = mt_search(s, 2, 3, O.constant(Domain(O.SETS, 4, 1, 2), 1))
    assert rep.found and rep.witness.sets == ((0,), (1,), (2,))


def test_mt_single_set_witness():
    s = singletons(3)
    c = O.random_table(Domain(O.SETS, 3, 1, 1), 4, 1)
    rep = mt_search(s, 1, 1, c)
    assert rep.found and rep.witness.sets == ((0,),)


def test_mt_parity_example_matches_brute_force():
    s = singletons(3)
    c = O.parity_of_sum(Domain(O.SETS, 3, 1, 1), 2)
    rep = mt_search(s, 1, 2, c)
    ref = brute_mt(s, 1, 2, c)
    # frozen from the brute force: a monochromatic pair needs two even-size blocks
    assert ref is None
    assert rep.status is Status.ABSENT


def test_mt_agrees_with_brute_force_on_random_colorings():
    for seed in range(30):
        n = 3 + seed % 2
        for d, m in ((1, 2), (2, 2), (1, 3)):
            if m > n:
                continue
            c = O.random_table(Domain(O.SETS, n, 1, d), 2, seed)
            rep = mt_search(singletons(n), d, m, c)
            ref = brute_mt(singletons(n), d, m, c)
            assert rep.found == (ref is not None)
            if ref is not None:
                assert rep.witness == ref[0] and rep.color == ref[1]
                assert recheck.check_mt(rep.witness, singletons(n), d, m, c)


def test_mt_absence_is_monotone_in_length():
    for seed in range(25):
        c = O.random_table(Domain(O.SETS, 5, 1, 1), 2, seed)
        found = [mt_search(SetBlockSeq(singletons(5).sets[:L], 5), 1, 2, c).found for L in range(2, 6)]
        # once found at some length, found at every longer length
        assert found == sorted(found)


def test_mt_domain_mismatch_and_budget():
    with pytest.raises(O.DomainMismatch):
        mt_search(singletons(3), 1, 2, O.constant(Domain(O.SETS, 4, 1, 1), 1))
    with pytest.raises(ValueError):
        mt_search(singletons(3), 3, 2, O.constant(None, 1))
    c = O.random_table(Domain(O.SETS, 6, 1, 1), 3, 0)
    assert mt_search(singletons(6), 1, 3, c, budget=2).status is Status.BUDGET


# canonize_types ----------------------------------------------------------------

def test_canonize_constant():
    rep = canonize_types(3, 1, 2, O.constant(Domain(O.X, 3, 1), 1))
    assert rep.found and rep.witness.sets == ((0,), (1,))


def test_canonize_type_determined():
    c = O.by_type(Domain(O.X, 5, 2), 3)
    rep = canonize_types(5, 2, 2, c)
    assert rep.found and is_type_canonical(rep.witness, c, 2)


def test_canonize_parity_of_min_support():
    c = O.ColoringOracle(Domain(O.X, 4, 1), 2, lambda f: 1 + min(i for i, v in enumerate(f.values) if v) % 2)
    rep = canonize_types(4, 1, 2, c)
    candidates = [t for t in brute_block_seqs_of_sets(singletons(4), 2) if recheck.check_canonical(t, c, 1)]
    # frozen from the brute force: a canonical s exists
    assert bool(candidates) == rep.found
    assert rep.found
    assert recheck.check_canonical(rep.witness, c, 1)


@pytest.mark.parametrize("seed", range(10))
def test_canonize_random_witnesses_recheck(seed):
    for signed in (False, True):
        kind = O.X_PM if signed else O.X
        c = O.random_table(Domain(kind, 5, 1), 2, seed)
        rep = canonize_types(5, 1, 2, c, signed=signed) if not signed else canonize_signed(5, 1, 2, c)
        if rep.found:
            assert recheck.check_canonical(rep.witness, c, 1, signed)


# pyramids, insensitivity, Q ----------------------------------------------------

def test_pyramid_examples():
    assert [f.values for f in pyramid_sequence(singletons(3), 2, 1)] == [(1, 2, 1)]
    s = SetBlockSeq(((0,), (2,), (3, 4)), 5)
    assert pyramid_sequence(s, 1, 3).funcs == tuple(char_fn(b, 5, 1) for b in s.sets)
    P = pyramid_sequence(singletons(6), 2, 2)
    assert [f.values for f in P] == [(1, 2, 1, 0, 0, 0), (0, 0, 0, 1, 2, 1)]
    with pytest.raises(ValueError):
        pyramid_sequence(singletons(5), 2, 2)


def test_pyramid_endpoints_exhaustive():
    for k in (1, 2, 3):
        for m in (1, 2):
            L = m * (2 * k - 1)
            P = pyramid_sequence(singletons(L), k, m)
            for f in P:
                assert max(f.values) == k
                g = f
                while not g.is_zero():
                    supp = [i for i, v in enumerate(g.values) if v]
                    assert g.values[supp[0]] == g.values[supp[-1]] == 1
                    g = tetris(g)


def test_is_insensitive_examples():
    Fs = (char_fn([0], 2, 2), char_fn([1], 2, 2))
    assert is_insensitive(O.constant(None, 1), Fs)
    c = O.ColoringOracle(Domain(O.X, 2, 2), 2, lambda g: 1 if g.values[1] == 0 else 2)
    assert not is_insensitive(c, Fs)
    assert c(F([2, 0], 2)) == 1 and c(F([2, 1], 2)) == 2
    assert is_insensitive(O.random_table(Domain(O.X, 2, 2), 3, 0), (char_fn([0], 2, 2),))


def test_make_insensitive_constant_minimal_n():
    for k, m in ((2, 1), (2, 2), (3, 1)):
        n = m * (2 * k - 1)
        rep = make_insensitive(n, k, m, O.constant(Domain(O.X, n, k), 1))
        assert rep.found and len(rep.witness) == m
        assert make_insensitive(n - 1, k, m, O.constant(Domain(O.X, n - 1, k), 1)).status is Status.ABSENT


def test_make_insensitive_type_determined():
    c = O.by_type(Domain(O.X, 6, 2), 3)
    rep = make_insensitive(6, 2, 2, c)
    assert rep.found and recheck.check_insensitive(rep.witness, c, 2, 2)


def test_make_insensitive_absence_cross_checked():
    # at n = 3, k = 2, m = 1 the only candidate s is the three singletons
    for seed in range(20):
        c = O.random_table(Domain(O.X, 3, 2), 2, seed)
        rep = make_insensitive(3, 2, 1, c)
        exists = recheck.check_canonical(singletons(3), c, 2)
        if rep.found:
            assert recheck.check_insensitive(rep.witness, c, 2, 1)
        else:
            assert not exists


def test_q_map_examples():
    Fp = (char_fn([0], 2, 2), char_fn([1], 2, 2))
    assert q_map(Fp, (1, 0)).values == (2, 0)
    assert q_map(Fp, (1, 1)).values == (2, 2)
    assert tetris(q_map(Fp, (1, 0))).values == (1, 0)
    with pytest.raises(ValueError):
        q_map(Fp, (2, 0))
    with pytest.raises(ValueError):
        q_map((char_fn([0], 2, 1),), (1,))


def test_q_map_properties_exhaustive():
    for k in (2, 3):
        for M in (1, 2, 3):
            Fp = pyramid_sequence(singletons(M * (2 * k - 1)), k, M).funcs
            sp = {f.values for f in span(Fp, SpanMode.POS_STRICT, k)}
            for g in all_functions(M, k - 1, sphere=False):
                if g.is_zero():
                    continue
                Q = q_map(Fp, g)
                if max(g.values) == k - 1:
                    assert Q.values in sp
                # (c): T(Q(g)) = Q(T g) + sum over supp(g) \ supp(T g) of T^{k-1}(f'_i)
                Tg = tetris(g)
                lhs = tetris(Q).values
                rhs = [0] * Q.n
                if not Tg.is_zero():
                    rhs = list(q_map(Fp, Tg).values)
                for i, (a, b) in enumerate(zip(g.values, Tg.values)):
                    if a and not b:
                        for x, v in enumerate(Fp[i].values):
                            rhs[x] += max(0, v - (k - 1))
                assert lhs == tuple(rhs)


# positive extraction -------------------------------------------------------------

def test_extract_positive_constant():
    for k, m, n in ((1, 2, 2), (2, 1, 3), (2, 2, 6)):
        rep = extract_positive(n, k, m, O.constant(Domain(O.X, n, k), 1))
        assert rep.found and recheck.check_positive(rep.witness, O.constant(None, 1), k, m)


def test_extract_positive_k1_matches_mt():
    for seed in range(15):
        c = O.random_table(Domain(O.X, 4, 1), 2, seed)
        cs = O.ColoringOracle(Domain(O.SETS, 4, 1, 1), 2, lambda t: c(char_fn(t.sets[0], 4, 1)))
        a = extract_positive(4, 1, 2, c)
        b = mt_search(singletons(4), 1, 2, cs)
        assert a.found == b.found
        if a.found:
            assert a.witness.funcs == tuple(char_fn(u, 4, 1) for u in b.witness.sets)


def test_extract_positive_k2_against_direct_search():
    for n in (3, 4, 5):
        for seed in range(12):
            c = O.random_table(Domain(O.X, n, 2), 2, seed)
            rep = extract_positive(n, 2, 1, c)
            direct = direct_search_positive(n, 2, 1, c)
            assert direct.found == brute_positive_exists(n, 2, 1, c)
            if rep.found:
                assert recheck.check_positive(rep.witness, c, 2, 1)
                assert direct.found


def test_direct_search_examples():
    c = O.constant(Domain(O.X, 3, 2), 1)
    rep = direct_search_positive(3, 2, 1, c)
    assert rep.found and rep.witness.funcs == (next(iter(O.block_func_seqs(3, 2, 1)))[0],)
    elems = list(all_functions(3, 1))
    distinct = O.ColoringOracle(Domain(O.X, 3, 1), len(elems), lambda f: elems.index(f) + 1)
    assert direct_search_positive(3, 1, 2, distinct).status is Status.ABSENT


def test_budget_reported_distinctly():
    c = O.random_table(Domain(O.X, 7, 2), 2, 1)
    rep = extract_positive(7, 2, 2, c, budget=Budget(5))
    assert rep.status is Status.BUDGET and not rep.found


# signed --------------------------------------------------------------------------

def test_q_delta_examples():
    s = singletons(3)
    assert q_delta(2, 1, s).values == (-1, 2, -1)
    assert q_delta(0, 1, s).is_zero() and q_delta(-3, 1, s).is_zero()
    assert tetris(q_delta(2, 1, s, 2)) == q_delta(1, 1, s, 2)
    assert q_delta(1, 1, s, 2).values == (0, 1, 0)
    with pytest.raises(IndexError):
        q_delta(2, 0, s)


def test_signed_carrier_examples():
    s = singletons(4)
    assert [f.values for f in signed_carrier(s, 1, 2)] == [(1, 0, 0, 0), (0, 0, 1, 0)]
    assert [f.values for f in signed_carrier(s, 2, 1)] == [(-1, 2, -1, 0)]
    with pytest.raises(ValueError):
        signed_carrier(s, 2, 2)
    for k in (1, 2):
        for M in (1, 2, 3):
            t = singletons(2 * k * M)
            assert is_s_skipped(signed_carrier(t, k, M), t)


def test_approximate_witness_examples():
    s = singletons(4)
    G = signed_carrier(s, 1, 2)
    fp, fpp = approximate_witness(F([-1, 0, 0, 0], 1, True), G, G, s, 1)
    assert fp.values == (0, 1, 0, 0) and fpp.values == (1, 0, 0, 0)
    f = F([1, 0, 1, 0], 1, True)
    assert approximate_witness(f, G, G, s, 1) == (f, f)


def test_extract_signed_constant():
    c = O.constant(Domain(O.X_PM, 4, 1), 1)
    rep = extract_signed(4, 1, 2, c)
    assert rep.found and recheck.check_signed(rep.witness, rep.carrier, c, 1, 2, rep.color)


def test_extract_signed_type_determined():
    for n, m in ((2, 1), (4, 2), (5, 2)):
        c = O.by_type(Domain(O.X_PM, n, 1), 2)
        rep = extract_signed(n, 1, m, c)
        assert rep.found
        assert recheck.check_signed(rep.witness, rep.carrier, c, 1, m, rep.color)


def test_extract_signed_min_support_sign():
    c = O.by_min_supp_sign(Domain(O.X_PM, 8, 1))
    rep = extract_signed(8, 1, 2, c)
    assert rep.found
    assert recheck.check_signed(rep.witness, rep.carrier, c, 1, 2, rep.color)
    # exact monochromaticity fails on the signed span
    assert len({c(f) for f in span(rep.witness, SpanMode.SIGNED_STRICT, 1)}) == 2


# multidimensional -----------------------------------------------------------------

def test_multidim_d1_delegates():
    c = O.random_table(Domain(O.X, 4, 1), 2, 3)
    cb = O.ColoringOracle(Domain(O.BLOCK, 4, 1, 1), 2, lambda H: c(H[0]))
    a = extract_positive(4, 1, 2, c)
    b = extract_multidim_positive(4, 1, 1, 2, cb)
    assert a.found == b.found and (not a.found or a.witness == b.witness)


def test_multidim_constant():
    c = O.constant(Domain(O.BLOCK, 3, 1, 2), 1)
    rep = extract_multidim_positive(3, 1, 2, 2, c)
    assert rep.found and recheck.check_multidim_positive(rep.witness, c, 1, 2, 2)


def test_multidim_random_against_brute_force():
    from gowers_lab.blocks import block_subseqs
    for seed in range(12):
        n = 3 + seed % 2
        c = O.random_table(Domain(O.BLOCK, n, 1, 2), 2, seed)
        rep = extract_multidim_positive(n, 1, 2, 2, c)
        exists = any(len({c(H) for H in block_subseqs(Fs, 2, SpanMode.POS_STRICT, 1)}) == 1
                     for Fs in O.block_func_seqs(n, 1, 2))
        if rep.found:
            assert recheck.check_multidim_positive(rep.witness, c, 1, 2, 2)
            assert exists


def test_multidim_signed_constant_and_type_determined():
    c = O.constant(Domain(O.BLOCK_PM, 4, 1, 2), 1)
    rep = extract_multidim_signed(4, 1, 2, 2, c)
    assert rep.found and recheck.check_multidim_signed(rep.witness, rep.carrier, c, 1, 2, 2, rep.color)
    c = O.by_type(Domain(O.BLOCK_PM, 5, 1, 2), 2)
    rep = extract_multidim_signed(5, 1, 2, 2, c)
    assert rep.found and recheck.check_multidim_signed(rep.witness, rep.carrier, c, 1, 2, 2, rep.color)


def test_multidim_signed_d1_agrees():
    c = O.by_type(Domain(O.X_PM, 4, 1), 2)
    cb = O.ColoringOracle(Domain(O.BLOCK_PM, 4, 1, 1), 2, lambda H: c(H[0]))
    a = extract_signed(4, 1, 2, c)
    b = extract_multidim_signed(4, 1, 1, 2, cb)
    assert a.found == b.found


def test_report_json():
    rep = extract_signed(4, 1, 1, O.constant(Domain(O.X_PM, 4, 1), 1))
    doc = rep.to_json()
    assert doc["status"] == "found" and doc["carrier"]["ambient"] == 4
    assert doc["witness"][0]["values"]


# properties ----------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_every_positive_witness_rechecks(seed, n):
    c = O.random_table(Domain(O.X, n, 1), 2, seed)
    rep = extract_positive(n, 1, 2, c)
    if rep.found:
        assert recheck.check_positive(rep.witness, c, 1, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_heredity_on_random_colorings(seed):
    from gowers_lab.blocks import block_subseqs
    c = O.random_type_table(Domain(O.X, 6, 2), 2, seed)
    rep = make_insensitive(6, 2, 2, c)
    if rep.found:
        for sub in itertools.chain.from_iterable(itertools.combinations(rep.witness.funcs, r) for r in (1, 2)):
            assert is_insensitive(c, sub, 2)
