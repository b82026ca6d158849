"""Sketch map: prime search, parameter derivation, encode/decode laws."""

import itertools
import random
import threading

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bclique.errors import (
    CapExceeded,
    DimensionMismatch,
    IndexOutOfRange,
    NotDecodable,
    WeightMismatch,
)
from bclique.intmath import ceil_log2, is_prime
from bclique.sketch import (
    build_params,
    cached_params,
    decode,
    encode,
    encode_basis,
    smallest_prime_above,
)


# --- independent oracles -----------------------------------------------------

def next_prime_trial_division(m: int) -> int:
    """Trial division over 2..floor(sqrt(k)), the brute-force reference."""
    k = m + 1
    while True:
        if k >= 2 and all(k % q for q in range(2, int(k**0.5) + 1)):
            return k
        k += 1


def naive_sparse_vectors(n: int, d: int):
    for w in range(d + 1):
        for support in itertools.combinations(range(n), w):
            yield tuple(1 if i in support else 0 for i in range(n))


def naive_xbar(n: int, d: int, p: int) -> int:
    """Smallest x whose evaluation map separates the sparse Boolean family,
    found by direct pairwise comparison."""
    vectors = list(naive_sparse_vectors(n, d))
    for x in range(p):
        values = [sum(b[i] * x**i for i in range(n)) % p for b in vectors]
        if len(set(values)) == len(values):
            return x
    raise AssertionError("no separating point found")


# --- smallest_prime_above ----------------------------------------------------

@pytest.mark.parametrize("m, expected", [(1, 2), (18, 19), (100, 101), (2, 3), (2500, 2503)])
def test_smallest_prime_above_examples(m, expected):
    assert smallest_prime_above(m) == expected
    assert next_prime_trial_division(m) == expected


@given(st.integers(min_value=1, max_value=50_000))
@settings(max_examples=200)
def test_smallest_prime_above_matches_trial_division(m):
    assert smallest_prime_above(m) == next_prime_trial_division(m)


def test_smallest_prime_above_rejects_zero():
    with pytest.raises(ValueError):
        smallest_prime_above(0)


def test_is_prime_matches_sympy_at_scale():
    rng = random.Random(20240811)
    for _ in range(120):
        k = rng.randrange(2, 10**6)
        assert is_prime(k) == sympy.isprime(k), k
    # beyond the proven Miller-Rabin bound the extended base set must agree too
    for _ in range(25):
        k = rng.randrange(10**25, 10**26)
        assert is_prime(k) == sympy.isprime(k), k


# --- build_params ------------------------------------------------------------

@pytest.mark.parametrize("n, d, p, xbar", [(2, 1, 19, 2), (4, 1, 101, 2), (4, 2, 2503, 2)])
def test_build_params_examples(n, d, p, xbar):
    params = build_params(n, d)
    assert (params.p, params.xbar) == (p, xbar)
    assert params.powers == tuple(pow(xbar, i, p) for i in range(n))


def test_build_params_matches_naive_oracle():
    for n in range(1, 7):
        for d in range(0, min(n, 2) + 1):
            params = build_params(n, d)
            assert params.p == next_prime_trial_division((1 + n) ** (2 * d) * n)
            assert params.xbar == naive_xbar(n, d, params.p)


def test_build_params_encode_value_sets():
    params = build_params(2, 1)
    values = {encode(params, b) for b in naive_sparse_vectors(2, 1)}
    assert values == {0, 1, 2}
    params = build_params(4, 1)
    values = {encode(params, b) for b in naive_sparse_vectors(4, 1)}
    assert values == {0, 1, 2, 4, 8}


def test_build_params_is_deterministic():
    a = build_params(9, 2)
    b = build_params(9, 2)
    assert (a.p, a.xbar, a.powers) == (b.p, b.xbar, b.powers)
    assert cached_params(9, 2) is cached_params(9, 2)


def test_build_params_cap_exceeded():
    with pytest.raises(CapExceeded):
        build_params(64, 8)
    with pytest.raises(CapExceeded):
        build_params(10, 2, table_cap=10)


def test_build_params_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_params(0, 0)
    with pytest.raises(ValueError):
        build_params(4, 5)
    with pytest.raises(ValueError):
        build_params(4, -1)


def test_degenerate_parameters():
    # d = 0: only the zero vector is decodable
    params = build_params(5, 0)
    assert params.xbar == 0
    assert decode(params, 0) == (0, 0, 0, 0, 0)
    assert decode(params, 0, expected_weight=0) == (0, 0, 0, 0, 0)
    # n = 1 admits x = 0 because the constant term already separates
    params = build_params(1, 1)
    assert params.xbar == 0
    assert decode(params, encode(params, (1,))) == (1,)


# --- encode ------------------------------------------------------------------

def test_encode_examples():
    params = cached_params(4, 1)
    assert encode(params, (0, 0, 0, 0)) == 0
    assert encode(params, (0, 0, 1, 0)) == 4
    assert encode(params, (1, 0, 1, 0)) == 5


def test_encode_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        encode(cached_params(4, 1), (1, 0, 0))


def test_encode_accepts_negative_entries():
    params = cached_params(4, 1)
    assert encode(params, (-1, 0, 0, 0)) == (params.p - 1)


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_encode_linearity(data):
    n = data.draw(st.integers(min_value=1, max_value=10), label="n")
    d = data.draw(st.integers(min_value=0, max_value=min(n, 2)), label="d")
    params = cached_params(n, d)
    entries = st.integers(min_value=-n, max_value=n)
    u = data.draw(st.lists(entries, min_size=n, max_size=n), label="u")
    v = data.draw(st.lists(entries, min_size=n, max_size=n), label="v")
    total = [a + b for a, b in zip(u, v)]
    diff = [a - b for a, b in zip(u, v)]
    assert encode(params, total) == (encode(params, u) + encode(params, v)) % params.p
    assert encode(params, diff) == (encode(params, u) - encode(params, v)) % params.p


# --- encode_basis ------------------------------------------------------------

def test_encode_basis_examples():
    assert encode_basis(cached_params(4, 1), 0) == 1
    assert encode_basis(cached_params(4, 1), 3) == 8
    assert encode_basis(cached_params(2, 1), 1) == 2


def test_encode_basis_out_of_range():
    with pytest.raises(IndexOutOfRange):
        encode_basis(cached_params(4, 1), 4)
    with pytest.raises(IndexOutOfRange):
        encode_basis(cached_params(4, 1), -1)


def test_encode_basis_matches_encode():
    params = cached_params(6, 2)
    for k in range(6):
        e_k = tuple(1 if i == k else 0 for i in range(6))
        assert encode_basis(params, k) == encode(params, e_k)


# --- decode ------------------------------------------------------------------

def test_decode_examples():
    params = cached_params(4, 2)
    assert decode(params, 0) == (0, 0, 0, 0)
    assert decode(params, 5) == (1, 0, 1, 0)
    with pytest.raises(NotDecodable):
        decode(params, 7)  # encodes a weight-3 vector, outside the domain


def test_decode_weight_mismatch():
    params = cached_params(4, 2)
    with pytest.raises(WeightMismatch):
        decode(params, 5, expected_weight=1)


def test_decode_rejects_out_of_field_values():
    params = cached_params(4, 1)
    with pytest.raises(ValueError):
        decode(params, params.p)
    with pytest.raises(ValueError):
        decode(params, -1)


def test_decode_not_decodable_on_table_path():
    # (16, 1) has p = 4637 < 2**16, so decoding goes through the lookup table
    params = cached_params(16, 1)
    assert not params._binary
    with pytest.raises(NotDecodable):
        decode(params, 3)  # 1 + 2 is a weight-2 encoding, outside d = 1


def test_both_decode_paths_round_trip():
    table_path = cached_params(16, 1)
    binary_path = cached_params(16, 3)
    assert not table_path._binary and binary_path._binary
    for params in (table_path, binary_path):
        for k in range(16):
            e_k = tuple(1 if i == k else 0 for i in range(16))
            assert decode(params, encode(params, e_k), expected_weight=1) == e_k


def test_round_trip_and_injectivity_small_grid():
    for n in range(1, 11):
        for d in range(0, min(n, 2) + 1):
            params = cached_params(n, d)
            seen = set()
            for b in naive_sparse_vectors(n, d):
                y = encode(params, b)
                assert y not in seen, (n, d, b)
                seen.add(y)
                assert decode(params, y, expected_weight=sum(b)) == b


def test_xbar_is_minimal():
    # full acceptance grid: every point below xbar must collide somewhere
    for n in range(1, 17):
        for d in range(0, min(n, 3) + 1):
            params = cached_params(n, d)
            for x in range(params.xbar):
                values = [sum(b[i] * x**i for i in range(n)) % params.p
                          for b in naive_sparse_vectors(n, d)]
                assert len(set(values)) < len(values), (n, d, x)


def test_size_bound_small_grid():
    for n in range(1, 13):
        for d in range(0, min(n, 3) + 1):
            params = cached_params(n, d)
            assert params.p_bits <= 2 * d * ceil_log2(n + 1) + ceil_log2(n) + 2


def test_decode_table_is_thread_safe():
    from bclique.sketch import SketchParams

    # rebuild (12, 1) without its table so the lazy lock-guarded path runs
    built = build_params(12, 1)
    params = SketchParams(built.n, built.d, built.p, built.xbar, built.powers,
                          built.table_cap, built.domain_size, table=None)
    assert not params._binary and params._table is None
    vectors = list(naive_sparse_vectors(12, 1))
    results = []

    def worker():
        results.append([decode(params, encode(params, b)) for b in vectors])

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == vectors for r in results)
