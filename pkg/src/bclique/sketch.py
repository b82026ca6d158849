"""Deterministic sparse linear sketches over a prime field.

The compression map sends an integer vector v of dimension n to
``sum_i v[i] * xbar**i  mod p``.  With p the smallest prime above
``(1+n)**(2d) * n`` and xbar the smallest evaluation point that separates
all Boolean vectors with at most d ones, the map is linear and invertible
on that domain: a single field element can carry a sparse neighborhood
exactly, and neighborhoods can be edited in compressed form by adding or
subtracting basis encodings.
"""

from __future__ import annotations

import itertools
import math
import threading
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DimensionMismatch,
    IndexOutOfRange,
    NotDecodable,
    WeightMismatch,
)
from .intmath import ceil_log2, is_prime

# Field elements are plain unbounded ints, always reduced modulo the owning
# params' p.
FieldElement = int

DEFAULT_TABLE_CAP = 5_000_000


def smallest_prime_above(m: int) -> int:
    """Least prime strictly greater than m, for m >= 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m < 2:
        return 2
    c = m + 1
    if c % 2 == 0:
        if c == 2:
            return 2
        c += 1
    while not is_prime(c):
        c += 2
    return c


def _supports(n: int, d: int) -> Iterable[tuple[int, ...]]:
    """All supports of Boolean n-vectors with weight at most d."""
    for w in range(d + 1):
        yield from itertools.combinations(range(n), w)


class SketchParams:
    """Frozen parameters of one sketch: dimension n, sparsity bound d,
    modulus p, evaluation point xbar, and the power table xbar**i mod p.

    Construct through :func:`build_params`.  Instances are immutable and
    safe to share across threads; the decode lookup table is built lazily
    under a lock the first time a table-based decode is needed.
    """

    __slots__ = ("n", "d", "p", "xbar", "powers", "table_cap", "domain_size",
                 "_binary", "_table", "_lock")

    def __init__(self, n, d, p, xbar, powers, table_cap, domain_size, table=None):
        self.n = n
        self.d = d
        self.p = p
        self.xbar = xbar
        self.powers = powers
        self.table_cap = table_cap
        self.domain_size = domain_size
        # xbar == 2 with 2**n <= p means encodings are plain binary values,
        # so decoding is bit extraction and no table is ever materialized.
        self._binary = xbar == 2 and (1 << n) <= p
        self._table = table
        self._lock = threading.Lock()

    @property
    def p_bits(self) -> int:
        """Bits needed to transmit one field element."""
        return ceil_log2(self.p)

    def __repr__(self):
        return f"SketchParams(n={self.n}, d={self.d}, p={self.p}, xbar={self.xbar})"

    def _decode_table(self) -> dict[int, int]:
        table = self._table
        if table is None:
            with self._lock:
                if self._table is None:
                    tbl = {}
                    for support in _supports(self.n, self.d):
                        value = sum(self.powers[i] for i in support) % self.p
                        tbl[value] = _mask(support)
                    self._table = tbl
                table = self._table
        return table


def _mask(support: tuple[int, ...]) -> int:
    m = 0
    for i in support:
        m |= 1 << i
    return m


def _injective_at(n: int, d: int, x: int, p: int):
    """Return the value->support-mask table if x separates the whole sparse
    Boolean family, or None on the first collision."""
    table: dict[int, int] = {}
    powers = [pow(x, i, p) for i in range(n)]
    for support in _supports(n, d):
        value = sum(powers[i] for i in support) % p
        if value in table:
            return None
        table[value] = _mask(support)
    return table


def build_params(n: int, d: int, table_cap: int = DEFAULT_TABLE_CAP) -> SketchParams:
    """Derive (p, xbar, powers) for dimension n and sparsity bound d.

    p is the smallest prime above (1+n)**(2d) * n and xbar the smallest
    evaluation point under which all Boolean vectors of weight <= d map to
    distinct field elements.  The search always terminates: the number of
    pairwise difference polynomials times their degree stays below p.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= d <= n:
        raise ValueError("d must satisfy 0 <= d <= n")
    domain_size = sum(math.comb(n, w) for w in range(d + 1))
    if domain_size > table_cap:
        raise CapExceeded(
            f"{domain_size} sparse vectors exceed the table cap {table_cap} "
            f"for n={n}, d={d}"
        )
    p = smallest_prime_above((1 + n) ** (2 * d) * n)
    xbar = None
    table = None
    for x in range(p):
        if d == 0:
            # single-vector domain: any point separates it
            xbar, table = x, {0: 0}
            break
        if x == 2 and (1 << n) <= p:
            # encodings are distinct binary numbers below p: injective,
            # and decoding never needs a table
            xbar = x
            break
        table = _injective_at(n, d, x, p)
        if table is not None:
            xbar = x
            break
    if xbar is None:  # impossible by the counting argument above
        raise RuntimeError(f"no separating point below p for n={n}, d={d}")
    powers = tuple(pow(xbar, i, p) for i in range(n))
    return SketchParams(n, d, p, xbar, powers, table_cap, domain_size, table)


# Protocols share parameter sets per (n, d); building them is deterministic,
# so caching is observationally pure.
cached_params = lru_cache(maxsize=None)(build_params)


def encode(params: SketchParams, v: Sequence[int]) -> FieldElement:
    """Compress an integer n-vector to one field element.

    Linear: encode(u + v) == (encode(u) + encode(v)) mod p, exactly.
    """
    if len(v) != params.n:
        raise DimensionMismatch(f"expected dimension {params.n}, got {len(v)}")
    return sum(c * w for c, w in zip(v, params.powers) if c) % params.p


def encode_basis(params: SketchParams, k: int) -> FieldElement:
    """Encoding of the k-th standard basis vector (just powers[k])."""
    if not 0 <= k < params.n:
        raise IndexOutOfRange(f"basis index {k} outside 0..{params.n - 1}")
    return params.powers[k]


def decode(params: SketchParams, y: FieldElement,
           expected_weight: int | None = None) -> tuple[int, ...]:
    """Recover the unique Boolean vector of weight <= d encoding to y.

    Raises NotDecodable when no such vector exists and WeightMismatch when
    one exists but its weight differs from expected_weight.
    """
    if not 0 <= y < params.p:
        raise ValueError(f"field element {y} outside 0..p-1")
    if params._binary:
        if y >= (1 << params.n):
            raise NotDecodable(f"{y} is not a sparse Boolean encoding")
        mask = y
    else:
        mask = params._decode_table().get(y)
        if mask is None:
            raise NotDecodable(f"{y} is not a sparse Boolean encoding")
    bits = tuple((mask >> i) & 1 for i in range(params.n))
    weight = sum(bits)
    if weight > params.d:
        raise NotDecodable(f"{y} encodes a vector of weight {weight} > d={params.d}")
    if expected_weight is not None and weight != expected_weight:
        raise WeightMismatch(
            f"decoded weight {weight} but {expected_weight} was announced"
        )
    return bits
