"""Compute Conway polynomials from their recursive definition.

C(p, k) is the minimal monic primitive polynomial of degree k over GF(p),
under the standard word ordering, that is norm-compatible with C(p, k/l)
for every prime l | k: writing f(x) = sum_i (-1)^(k-i) c_i x^i with c_k = 1,
polynomials are compared by the tuple (c_(k-1), ..., c_0) lexicographically,
digits taken in {0, ..., p-1}.  Compatibility with the maximal proper
subfields implies compatibility with all subfields (norms compose).

This module exists to generate and to cross-check the shipped data file;
runtime code loads the file and only re-verifies irreducibility and
primitivity, which is cheap.
"""

from __future__ import annotations

from .errors import ConsistencyError
from .ff import (factorize, is_irreducible, poly_is_primitive, poly_mulmod,
                 poly_powmod, smallest_primitive_root)


def _word_to_coeffs(word: tuple[int, ...], k: int, p: int) -> list[int]:
    """(c_(k-1), ..., c_0) -> little-endian coefficients of f, monic degree k."""
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    for pos, c in enumerate(word):
        i = k - 1 - pos
        coeffs[i] = (c if (k - i) % 2 == 0 else -c) % p
    return coeffs


def _is_compatible(f: list[int], p: int, k: int,
                   subpolys: dict[int, list[int]]) -> bool:
    """Check C(p, d)(x^((p^k-1)/(p^d-1))) = 0 mod f for each maximal d | k."""
    n = p ** k - 1
    for d, g in subpolys.items():
        t = poly_powmod([0, 1], n // (p ** d - 1), f, p)
        acc: list[int] = []
        for c in reversed(g):
            acc = poly_mulmod(acc, t, f, p)
            if c:
                acc = acc + [0] * (len(f) - 1 - len(acc))
                acc[0] = (acc[0] + c) % p
                while acc and acc[-1] == 0:
                    acc.pop()
        if acc:
            return False
    return True


def conway_polynomial(p: int, k: int,
                      cache: dict[tuple[int, int], tuple[int, ...]] | None = None
                      ) -> tuple[int, ...]:
    """C(p, k) as a constant-first coefficient tuple of length k+1."""
    if cache is None:
        cache = {}
    if (p, k) in cache:
        return cache[(p, k)]
    r = smallest_primitive_root(p)
    if k == 1:
        result = ((-r) % p, 1)
        cache[(p, k)] = result
        return result
    subpolys = {}
    for ell in factorize(k):
        d = k // ell
        subpolys[d] = list(conway_polynomial(p, d, cache))
    order_factors = factorize(p ** k - 1)
    # c_0 is pinned: the norm of x must be the root r of C(p, 1)
    total = p ** (k - 1)
    for idx in range(total):
        word = []
        t = idx
        for _ in range(k - 1):
            word.append(t % p)
            t //= p
        word.reverse()
        f = _word_to_coeffs(tuple(word) + (r,), k, p)
        if not is_irreducible(f, p):
            continue
        if not poly_is_primitive(f, p, order_factors):
            continue
        if not _is_compatible(f, p, k, subpolys):
            continue
        result = tuple(f)
        cache[(p, k)] = result
        return result
    raise ConsistencyError(f"no Conway polynomial found for ({p}, {k})")
