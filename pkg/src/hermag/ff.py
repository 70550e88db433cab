"""Exact arithmetic in the field tower GF(p) < GF(q^2) < GF(q^6), q = p^e.

Elements of GF(p^k) are coefficient tuples (c0, ..., c_{k-1}) over GF(p),
little-endian with respect to a fixed monic irreducible modulus.  The
representation is a plain polynomial basis (no discrete-log tables), so
fields like GF(2^12) stay exact and memory-light.  Small fields (order
<= 1024) lazily build lookup tables which the linear-algebra layer uses
for vectorised row reduction; the tables are an accelerator, not the
representation.

Conway polynomials ship as a data file and are re-verified on load
(monic, correct degree, irreducible, primitive).  They fix a canonical
primitive generator per field -- the residue class of X -- so that
generator-power constants are portable between systems using the same
convention, and make the subfield embeddings of the tower norm-compatible:
the generator of GF(p^m) maps to g^((p^k-1)/(p^m-1)) for m | k.
"""

from __future__ import annotations

import os
from importlib import resources
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ConsistencyError, ConwayTableError, PreconditionError

#: fields of order <= this get full add/mul lookup tables
TABLE_LIMIT = 1024

#: environment variable overriding the packaged Conway table
CONWAY_ENV_VAR = "HERMAG_CONWAY_TABLE"


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Factor n >= 1 by trial division (field orders here stay < 2**25)."""
    if n < 1:
        raise PreconditionError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def smallest_primitive_root(p: int) -> int:
    """Smallest primitive root mod p (p prime).  For p=2 this is 1."""
    if p == 2:
        return 1
    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in fac):
            return g
    raise ConsistencyError(f"no primitive root mod {p}")  # unreachable for prime p


def split_prime_power(q: int) -> tuple[int, int]:
    """Write q = p**e with p prime, or raise."""
    fac = factorize(q)
    if len(fac) != 1:
        raise PreconditionError(f"{q} is not a prime power")
    (p, e), = fac.items()
    return p, e


# ---------------------------------------------------------------------------
# polynomials over GF(p): little-endian int lists, trimmed
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """a mod f with f monic."""
    a = [x % p for x in a]
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df])


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_mulmod(a, b, f, p) -> list[int]:
    return poly_mod(poly_mul(a, b, p), f, p)


def poly_powmod(a, e: int, f, p) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd(a, b, p) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        inv = pow(b[-1], p - 2, p) if p > 2 else 1
        bm = [x * inv % p for x in b]  # monic divisor
        # a mod bm
        a = a[:]
        db = len(bm) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * bm[j]) % p
        a = _trim(a[:db])
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p) if p > 2 else 1
        a = [x * inv % p for x in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin test: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1."""
    f = _trim([c % p for c in f])
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xq = poly_powmod(x, p ** k, f, p)
    if poly_sub(xq, x, p):
        return False
    for ell in factorize(k):
        d = k // ell
        xd = poly_powmod(x, p ** d, f, p)
        g = poly_gcd(poly_sub(xd, x, p), f, p)
        if len(g) - 1 != 0:
            return False
    return True


def poly_is_primitive(f: Sequence[int], p: int,
                      order_factors: dict[int, int] | None = None) -> bool:
    """True when the residue class of X generates GF(p^k)* for f irreducible."""
    k = len(f) - 1
    n = p ** k - 1
    if n == 1:
        return True
    if order_factors is None:
        order_factors = factorize(n)
    x = [0, 1]
    if poly_powmod(x, n, f, p) != [1]:
        return False
    for ell in order_factors:
        if poly_powmod(x, n // ell, f, p) == [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# field contexts
# ---------------------------------------------------------------------------

class SmallTables:
    """Dense lookup tables for a field of order <= TABLE_LIMIT."""

    def __init__(self, ctx: "FieldCtx"):
        n = ctx.order
        p, k = ctx.p, ctx.k
        digits = np.zeros((n, k), dtype=np.int64)
        for code in range(n):
            c = code
            for i in range(k):
                digits[code, i] = c % p
                c //= p
        self.digits = digits
        # add/neg via digit planes
        planes = (digits[:, None, :] + digits[None, :, :]) % p
        weights = np.array([p ** i for i in range(k)], dtype=np.int64)
        self.add = (planes * weights).sum(axis=2).astype(np.int32)
        self.neg = (((-digits) % p) * weights).sum(axis=1).astype(np.int32)
        # mul/inv via discrete logs of the (primitive) generator
        g = ctx.enc(ctx.generator)
        exp = np.zeros(n - 1, dtype=np.int64)
        logt = np.full(n, -1, dtype=np.int64)
        acc = ctx.one
        for i in range(n - 1):
            code = ctx.enc(acc)
            exp[i] = code
            logt[code] = i
            acc = ctx.mul_t(acc, ctx.generator)
        if ctx.enc(acc) != 1:
            raise ConsistencyError("generator does not have full order")
        mul = np.zeros((n, n), dtype=np.int32)
        idx = (logt[1:, None] + logt[None, 1:]) % (n - 1)
        mul[1:, 1:] = exp[idx]
        self.mul = mul
        inv = np.zeros(n, dtype=np.int32)
        inv[1:] = exp[(-logt[1:]) % (n - 1)]
        self.inv = inv
        self.log = logt  # -1 for zero
        self.exp = exp
        # python-list mirrors: faster scalar access than numpy indexing
        self.mul_l = [list(map(int, row)) for row in mul]
        self.add_l = [list(map(int, row)) for row in self.add]
        self.neg_l = list(map(int, self.neg))
        self.inv_l = list(map(int, inv))


class FieldCtx:
    """Immutable context for GF(p^k) in polynomial-basis representation.

    The modulus is monic irreducible of degree k over GF(p), coefficients
    little-endian.  ``generator`` is a fixed primitive element; for Conway
    moduli it is the residue class of X.  Contexts are hashable on
    (p, k, modulus) and never mutated after construction, so they are safe
    to share across threads.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int],
                 generator: Sequence[int] | None = None, verify: bool = True):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if p > 2 ** 16:
            raise PreconditionError(f"characteristic {p} exceeds 2^16")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise PreconditionError("modulus must be monic of degree k")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = modulus
        self.key = (p, k, modulus)
        if verify and not is_irreducible(list(modulus), p):
            raise PreconditionError(f"modulus {modulus} is reducible over GF({p})")
        # X^d mod modulus for d = k .. 2k-2, used by mul_t reduction
        red = []
        cur = [0] * k + [1]
        for _ in range(k, 2 * k - 1):
            cur = poly_mod(cur, list(modulus), p)
            row = tuple(cur[i] if i < len(cur) else 0 for i in range(k))
            red.append(row)
            cur = [0] + list(row)
        self._reduction = red
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1)) if k >= 1 else ()
        if generator is None:
            if k == 1:
                generator = (smallest_primitive_root(p) % p,)
            else:
                generator = tuple([0, 1] + [0] * (k - 2))
        self.generator = tuple(int(c) % p for c in generator)
        self._order_factors = factorize(self.order - 1) if self.order > 2 else {}
        if verify:
            self._check_generator()
        self._frob_mats: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._tables: SmallTables | None = None
        self._dlog: dict[int, int] | None = None

    # -- construction-time checks ------------------------------------------

    def _check_generator(self) -> None:
        n = self.order - 1
        g = self.generator
        if g == self.zero:
            raise PreconditionError("generator must be nonzero")
        if self.pow_t(g, n) != self.one:
            raise ConsistencyError("generator^(order-1) != 1")
        for ell in self._order_factors:
            if self.pow_t(g, n // ell) == self.one:
                raise ConsistencyError(
                    f"generator has order dividing (order-1)/{ell}; not primitive")

    # -- tuple-level arithmetic --------------------------------------------

    def add_t(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub_t(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg_t(self, a: tuple) -> tuple:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul_t(self, a: tuple, b: tuple) -> tuple:
        p, k = self.p, self.k
        if k == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        red = self._reduction
        for d in range(k, 2 * k - 1):
            c = prod[d] % p
            if c:
                row = red[d - k]
                for t in range(k):
                    out[t] = (out[t] + c * row[t]) % p
        return tuple(out)

    def scalar_mul_t(self, s: int, a: tuple) -> tuple:
        p = self.p
        s %= p
        return tuple(s * x % p for x in a)

    def pow_t(self, a: tuple, e: int) -> tuple:
        if e < 0:
            return self.pow_t(self.inv_t(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul_t(result, base)
            base = self.mul_t(base, base)
            e >>= 1
        return result

    def inv_t(self, a: tuple) -> tuple:
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero field element")
        return self.pow_t(a, self.order - 2)

    def frob_t(self, a: tuple, i: int = 1) -> tuple:
        """a^(p^i) via a cached GF(p)-linear map."""
        i %= self.k
        if i == 0:
            return a
        mat = self._frob_mats.get(i)
        if mat is None:
            cols = []
            for j in range(self.k):
                xj = tuple(1 if t == j else 0 for t in range(self.k))
                cols.append(self.pow_t(xj, self.p ** i))
            mat = tuple(cols)
            self._frob_mats[i] = mat
        p = self.p
        out = [0] * self.k
        for j, aj in enumerate(a):
            if aj:
                col = mat[j]
                for t in range(self.k):
                    out[t] = (out[t] + aj * col[t]) % p
        return tuple(out)

    # -- encodings -----------------------------------------------------------

    def enc(self, a: tuple) -> int:
        code = 0
        for c in reversed(a):
            code = code * self.p + c
        return code

    def dec(self, code: int) -> tuple:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(code % p)
            code //= p
        return tuple(out)

    def elements(self) -> Iterator[tuple]:
        """All elements in enc order (deterministic)."""
        for code in range(self.order):
            yield self.dec(code)

    # -- code-level arithmetic (table-backed when available) -----------------

    @property
    def tables(self) -> SmallTables | None:
        if self._tables is None and self.order <= TABLE_LIMIT:
            self._tables = SmallTables(self)
        return self._tables

    def add_c(self, a: int, b: int) -> int:
        t = self.tables
        if t is not None:
            return t.add_l[a][b]
        return self.enc(self.add_t(self.dec(a), self.dec(b)))

    def sub_c(self, a: int, b: int) -> int:
        t = self.tables
        if t is not None:
            return t.add_l[a][t.neg_l[b]]
        return self.enc(self.sub_t(self.dec(a), self.dec(b)))

    def neg_c(self, a: int) -> int:
        t = self.tables
        if t is not None:
            return t.neg_l[a]
        return self.enc(self.neg_t(self.dec(a)))

    def mul_c(self, a: int, b: int) -> int:
        t = self.tables
        if t is not None:
            return t.mul_l[a][b]
        return self.enc(self.mul_t(self.dec(a), self.dec(b)))

    def inv_c(self, a: int) -> int:
        t = self.tables
        if t is not None:
            if a == 0:
                raise ZeroDivisionError("inversion of zero field element")
            return t.inv_l[a]
        return self.enc(self.inv_t(self.dec(a)))

    def pow_c(self, a: int, e: int) -> int:
        return self.enc(self.pow_t(self.dec(a), e))

    # -- element factory ------------------------------------------------------

    def element(self, value) -> "FieldElem":
        """Coerce an int code, GF(p) scalar tuple, or coefficient tuple."""
        if isinstance(value, FieldElem):
            if value.ctx.key != self.key:
                raise PreconditionError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if 0 <= value < self.order:
                return FieldElem(self, self.dec(value))
            raise PreconditionError(f"code {value} out of range for order {self.order}")
        return FieldElem(self, tuple(int(c) % self.p for c in value))

    def gen(self) -> "FieldElem":
        return FieldElem(self, self.generator)

    def zero_elem(self) -> "FieldElem":
        return FieldElem(self, self.zero)

    def one_elem(self) -> "FieldElem":
        return FieldElem(self, self.one)

    def gen_power(self, i: int) -> "FieldElem":
        return FieldElem(self, self.pow_t(self.generator, i % (self.order - 1)))

    def dlog(self, code: int) -> int:
        """Discrete log base the generator; -1 for zero.  Table built lazily."""
        if self._dlog is None:
            if self.order > 2 ** 21:
                raise PreconditionError(
                    f"dlog table for order {self.order} exceeds the size guard")
            table = {0: -1}
            acc = self.one
            for i in range(self.order - 1):
                table.setdefault(self.enc(acc), i)
                acc = self.mul_t(acc, self.generator)
            self._dlog = table
        return self._dlog[code]

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.k}))" if self.k > 1 else f"FieldCtx(GF({self.p}))"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


class FieldElem:
    """A field element: a coefficient tuple bound to its FieldCtx.

    Binary operations fail fast on mixed-field operands.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _same(self, other: "FieldElem") -> None:
        if self.ctx is not other.ctx and self.ctx.key != other.ctx.key:
            raise PreconditionError(
                f"mixed-field arithmetic: {self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other):
        self._same(other)
        return FieldElem(self.ctx, self.ctx.add_t(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return FieldElem(self.ctx, self.ctx.sub_t(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg_t(self.coeffs))

    def __mul__(self, other):
        self._same(other)
        return FieldElem(self.ctx, self.ctx.mul_t(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        self._same(other)
        return FieldElem(self.ctx, self.ctx.mul_t(self.coeffs, self.ctx.inv_t(other.coeffs)))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow_t(self.coeffs, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv_t(self.coeffs))

    def frobenius(self, i: int = 1) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.frob_t(self.coeffs, i))

    @property
    def code(self) -> int:
        return self.ctx.enc(self.coeffs)

    def is_zero(self) -> bool:
        return self.coeffs == self.ctx.zero

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElem) and self.ctx.key == other.ctx.key
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self) -> str:
        return f"FieldElem({self.coeffs} in GF({self.ctx.p}^{self.ctx.k}))"


def frobenius(e: FieldElem, exponent: int) -> FieldElem:
    """e^(p^exponent).  The place-defining map on GF(q^6) is exponent = 2e."""
    if exponent < 0:
        raise PreconditionError("Frobenius exponent must be >= 0")
    return e.frobenius(exponent)


# ---------------------------------------------------------------------------
# Conway tables
# ---------------------------------------------------------------------------

class ConwayTable:
    """Verified (p, k) -> modulus coefficient tuples, constant-first."""

    def __init__(self, entries: dict[tuple[int, int], tuple[int, ...]]):
        self.entries = entries

    def __contains__(self, pk) -> bool:
        return pk in self.entries

    def get(self, p: int, k: int) -> tuple[int, ...]:
        try:
            return self.entries[(p, k)]
        except KeyError:
            raise ConwayTableError(
                f"no Conway polynomial for (p, k) = ({p}, {k}) in the loaded table"
            ) from None

    def __len__(self) -> int:
        return len(self.entries)


def _verify_conway_entry(p: int, k: int, coeffs: tuple[int, ...], where: str) -> None:
    if len(coeffs) != k + 1:
        raise ConwayTableError(f"{where}: expected degree {k}, got {len(coeffs) - 1}")
    if coeffs[-1] != 1:
        raise ConwayTableError(f"{where}: polynomial is not monic")
    f = list(coeffs)
    if not is_irreducible(f, p):
        raise ConwayTableError(f"{where}: polynomial is reducible over GF({p})")
    if not poly_is_primitive(f, p):
        raise ConwayTableError(f"{where}: polynomial is not primitive")


def parse_conway_table(text: str, source: str = "<string>") -> ConwayTable:
    """Parse and verify a table.  Lines: ``p k c0 c1 ... ck``; '#' comments."""
    entries: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        parts = line.split()
        try:
            nums = [int(t) for t in parts]
        except ValueError:
            raise ConwayTableError(f"{where}: non-integer token") from None
        if len(nums) < 3:
            raise ConwayTableError(f"{where}: expected 'p k c0 ... ck'")
        p, k, coeffs = nums[0], nums[1], tuple(c % nums[0] for c in nums[2:])
        if not is_prime(p) or k < 1:
            raise ConwayTableError(f"{where}: bad (p, k) = ({p}, {k})")
        if len(coeffs) != k + 1:
            raise ConwayTableError(
                f"{where}: expected {k + 1} coefficients, got {len(coeffs)}")
        _verify_conway_entry(p, k, coeffs, where)
        entries[(p, k)] = coeffs
    return ConwayTable(entries)


def load_conway_table(path: str) -> ConwayTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_conway_table(fh.read(), source=path)


_default_table: ConwayTable | None = None


def default_conway_table() -> ConwayTable:
    """Packaged table, overridable via the HERMAG_CONWAY_TABLE env var."""
    global _default_table
    if _default_table is None:
        override = os.environ.get(CONWAY_ENV_VAR)
        if override:
            _default_table = load_conway_table(override)
        else:
            text = resources.files("hermag").joinpath(
                "data/conway_polynomials.txt").read_text(encoding="utf-8")
            _default_table = parse_conway_table(text, source="hermag/data")
    return _default_table


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------

def build_prime_field(p: int) -> FieldCtx:
    """GF(p) with the smallest primitive root as generator."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p > 2 ** 16:
        raise PreconditionError(f"prime {p} exceeds 2^16")
    r = smallest_primitive_root(p)
    return FieldCtx(p, 1, ((-r) % p, 1), generator=(r,))


def build_ext_field(p: int, k: int, modulus="conway",
                    table: ConwayTable | None = None) -> FieldCtx:
    """GF(p^k).  With modulus='conway' the canonical generator is X."""
    if k < 1:
        raise PreconditionError("extension degree must be >= 1")
    if isinstance(modulus, str) and modulus == "conway":
        tab = table if table is not None else default_conway_table()
        coeffs = tab.get(p, k)
        return FieldCtx(p, k, coeffs)
    ctx = FieldCtx(p, k, tuple(modulus), generator=None, verify=False)
    if not is_irreducible(list(ctx.modulus), p):
        raise PreconditionError(f"user modulus {tuple(modulus)} is reducible")
    # residue of X may not be primitive for a user modulus; scan for a generator
    gen = None
    n = ctx.order - 1
    fac = factorize(n) if n > 1 else {}
    for code in range(1, ctx.order):
        cand = ctx.dec(code)
        if ctx.pow_t(cand, n) != ctx.one:
            continue
        if all(ctx.pow_t(cand, n // ell) != ctx.one for ell in fac):
            gen = cand
            break
    if gen is None:
        raise ConsistencyError("no primitive element found")  # unreachable
    return FieldCtx(p, k, ctx.modulus, generator=gen)


class PrimeLinearSolver:
    """Solve M v = w over GF(p), M given by columns, via one precomputed RREF.

    Used for subfield coordinates and for Artin-Schreier fibres; the per-call
    cost is one matrix-vector product with the stored transform.
    """

    def __init__(self, p: int, columns: list[list[int]]):
        self.p = p
        self.nrows = len(columns[0]) if columns else 0
        self.ncols = len(columns)
        K = self.nrows
        aug = [[columns[j][i] % p for j in range(self.ncols)]
               + [1 if t == i else 0 for t in range(K)] for i in range(K)]
        piv: list[int] = []
        r = 0
        for c in range(self.ncols):
            sel = None
            for rr in range(r, K):
                if aug[rr][c] % p:
                    sel = rr
                    break
            if sel is None:
                continue
            aug[r], aug[sel] = aug[sel], aug[r]
            inv = pow(aug[r][c], p - 2, p) if p > 2 else 1
            aug[r] = [v * inv % p for v in aug[r]]
            for rr in range(K):
                if rr != r and aug[rr][c] % p:
                    f = aug[rr][c]
                    aug[rr] = [(a - f * b) % p for a, b in zip(aug[rr], aug[r])]
            piv.append(c)
            r += 1
        self._aug = aug
        self.pivots = piv
        self.rank = len(piv)
        # transform rows: rhs_reduced[i] = sum_t T[i][t] * w[t]
        self._T = [row[self.ncols:] for row in aug]
        self._R = [row[:self.ncols] for row in aug]

    def solve(self, w: Sequence[int]) -> list[int] | None:
        """Particular solution with free variables zero, or None."""
        p = self.p
        rhs = [sum(Ti[t] * w[t] for t in range(self.nrows) if w[t]) % p
               for Ti in self._T]
        for i in range(self.rank, self.nrows):
            if rhs[i]:
                return None
        sol = [0] * self.ncols
        for i, c in enumerate(self.pivots):
            sol[c] = rhs[i]
        return sol

    def kernel(self) -> list[list[int]]:
        p = self.p
        pivset = set(self.pivots)
        basis = []
        for fc in range(self.ncols):
            if fc in pivset:
                continue
            v = [0] * self.ncols
            v[fc] = 1
            for i, c in enumerate(self.pivots):
                v[c] = (-self._R[i][fc]) % p
            basis.append(v)
        return basis


class TowerEmbedding:
    """The canonical embedding GF(p^m) -> GF(p^K) for m | K.

    Sends the small generator g to G^((p^K-1)/(p^m-1)) where G is the big
    generator.  With Conway-compatible moduli this image is a root of the
    small modulus, which is verified here; the map is then the GF(p)-linear
    extension and is a field homomorphism.
    """

    def __init__(self, small: FieldCtx, big: FieldCtx):
        if small.p != big.p:
            raise PreconditionError("embedding requires equal characteristic")
        if big.k % small.k != 0:
            raise PreconditionError(
                f"GF({small.p}^{small.k}) does not embed in GF({big.p}^{big.k})")
        self.small = small
        self.big = big
        self.ratio = big.k // small.k
        n = (big.order - 1) // (small.order - 1)
        gamma = big.pow_t(big.generator, n)
        self.image_of_generator = gamma
        # gamma must be a root of the small modulus (Conway compatibility)
        acc = big.zero
        for c in reversed(small.modulus):
            acc = big.mul_t(acc, gamma)
            if c:
                acc = big.add_t(acc, big.scalar_mul_t(c, big.one))
        if acc != big.zero:
            raise ConsistencyError(
                "big-field generator is not norm-compatible with the small modulus; "
                "use Conway moduli for tower embeddings")
        # embedding matrix: images of the small power basis 1, x, ..., x^(m-1)
        cols = []
        img = big.one
        for _ in range(small.k):
            cols.append(img)
            img = big.mul_t(img, gamma)
        self._basis_images = cols
        # solver for the down map (and subfield membership)
        self._down = PrimeLinearSolver(big.p, [list(col) for col in cols])
        # coordinate solver for GF(p^K) as a module over the subfield with
        # basis 1, G, ..., G^(ratio-1)
        coord_cols = []
        for j in range(self.ratio):
            gj = big.pow_t(big.generator, j)
            for i in range(small.k):
                e_i = tuple(1 if t == i else 0 for t in range(small.k))
                coord_cols.append(list(big.mul_t(self.embed_t(e_i), gj)))
        self._coord = PrimeLinearSolver(big.p, coord_cols)

    # tuple-level
    def embed_t(self, a: tuple) -> tuple:
        p = self.big.p
        out = [0] * self.big.k
        for j, aj in enumerate(a):
            if aj:
                col = self._basis_images[j]
                for t in range(self.big.k):
                    out[t] = (out[t] + aj * col[t]) % p
        return tuple(out)

    def project_t(self, w: tuple) -> tuple:
        sol = self._down.solve(w)
        if sol is None:
            raise PreconditionError("element is not in the embedded subfield")
        return tuple(sol)

    def contains_t(self, w: tuple) -> bool:
        return self._down.solve(w) is not None

    def coordinates_t(self, w: tuple) -> tuple[tuple, ...]:
        """w = sum_j embed(w_j) * G^j; returns (w_0, ..., w_(ratio-1))."""
        sol = self._coord.solve(w)
        if sol is None:
            raise ConsistencyError("coordinate basis does not span the big field")
        m = self.small.k
        return tuple(tuple(sol[j * m:(j + 1) * m]) for j in range(self.ratio))

    # element-level
    def embed(self, e: FieldElem) -> FieldElem:
        if e.ctx.key != self.small.key:
            raise PreconditionError("embed: element not in the small field")
        return FieldElem(self.big, self.embed_t(e.coeffs))

    def project(self, e: FieldElem) -> FieldElem:
        if e.ctx.key != self.big.key:
            raise PreconditionError("project: element not in the big field")
        return FieldElem(self.small, self.project_t(e.coeffs))


def embed(e: FieldElem, emb: TowerEmbedding) -> FieldElem:
    return emb.embed(e)
