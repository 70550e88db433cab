"""Sparse bivariate polynomials and truncated power series over a FieldCtx."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import PreconditionError
from .ff import FieldCtx, TowerEmbedding


class BivarPoly:
    """Polynomial in x, y with integer-coded coefficients: {(i, j): code}."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: Mapping | Iterable = ()):
        self.ctx = ctx
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        self.terms = {k: v for k, v in items if v}

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "BivarPoly":
        return cls(ctx)

    @classmethod
    def constant(cls, ctx: FieldCtx, code: int) -> "BivarPoly":
        return cls(ctx, {(0, 0): code})

    @classmethod
    def monomial(cls, ctx: FieldCtx, i: int, j: int, code: int | None = None) -> "BivarPoly":
        return cls(ctx, {(i, j): ctx.enc(ctx.one) if code is None else code})

    @classmethod
    def x(cls, ctx: FieldCtx) -> "BivarPoly":
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def y(cls, ctx: FieldCtx) -> "BivarPoly":
        return cls.monomial(ctx, 0, 1)

    # -- ring ops -----------------------------------------------------------

    def _same(self, other: "BivarPoly") -> None:
        if self.ctx.key != other.ctx.key:
            raise PreconditionError("mixed-field polynomial arithmetic")

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        self._same(other)
        ctx = self.ctx
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = ctx.add_c(out.get(k, 0), v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BivarPoly(ctx, out)

    def __neg__(self) -> "BivarPoly":
        ctx = self.ctx
        return BivarPoly(ctx, {k: ctx.neg_c(v) for k, v in self.terms.items()})

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        self._same(other)
        ctx = self.ctx
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = ctx.add_c(out.get(key, 0), ctx.mul_c(c1, c2))
        return BivarPoly(ctx, out)

    def scale(self, code: int) -> "BivarPoly":
        ctx = self.ctx
        if code == 0:
            return BivarPoly(ctx)
        return BivarPoly(ctx, {k: ctx.mul_c(code, v) for k, v in self.terms.items()})

    def shift(self, di: int, dj: int) -> "BivarPoly":
        return BivarPoly(self.ctx, {(i + di, j + dj): v
                                    for (i, j), v in self.terms.items()})

    def __pow__(self, e: int) -> "BivarPoly":
        if e < 0:
            raise PreconditionError("negative polynomial power")
        result = BivarPoly.constant(self.ctx, self.ctx.enc(self.ctx.one))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    def eval_c(self, xc: int, yc: int) -> int:
        """Evaluate at integer-coded field values."""
        ctx = self.ctx
        xe = {0: ctx.enc(ctx.one)}
        ye = {0: ctx.enc(ctx.one)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = ctx.mul_c(power(cache, base, n - 1), base)
            return cache[n]

        acc = 0
        for (i, j), c in sorted(self.terms.items()):
            t = c
            if i:
                t = ctx.mul_c(t, power(xe, xc, i))
            if j:
                t = ctx.mul_c(t, power(ye, yc, j))
            acc = ctx.add_c(acc, t)
        return acc

    def map_to(self, emb: TowerEmbedding) -> "BivarPoly":
        """Coefficient-wise embedding into the big field of ``emb``."""
        if self.ctx.key != emb.small.key:
            raise PreconditionError("map_to: polynomial not over the small field")
        big = emb.big
        return BivarPoly(big, {k: big.enc(emb.embed_t(self.ctx.dec(v)))
                               for k, v in self.terms.items()})

    def project_to(self, emb: TowerEmbedding) -> "BivarPoly":
        """Coefficient-wise projection onto the small field (must be rational)."""
        if self.ctx.key != emb.big.key:
            raise PreconditionError("project_to: polynomial not over the big field")
        small = emb.small
        return BivarPoly(small, {k: small.enc(emb.project_t(self.ctx.dec(v)))
                                 for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, BivarPoly) and self.ctx.key == other.ctx.key
                and self.terms == other.terms)

    def __repr__(self) -> str:
        items = ", ".join(f"x^{i} y^{j}: {c}" for (i, j), c in sorted(self.terms.items()))
        return f"BivarPoly({items or '0'})"


def monomials_total_degree(d: int) -> list[tuple[int, int]]:
    """All (i, j) with i + j <= d, ordered by (total degree, j)."""
    return [(t - j, j) for t in range(d + 1) for j in range(t + 1)]


def poly_from_coeffs(ctx: FieldCtx, monomials: list[tuple[int, int]],
                     coeffs: Iterable[int]) -> BivarPoly:
    return BivarPoly(ctx, {m: c for m, c in zip(monomials, coeffs) if c})


class PowerSeries:
    """Truncated series sum c_i t^i for i < prec, integer-coded coefficients."""

    __slots__ = ("ctx", "coeffs", "prec")

    def __init__(self, ctx: FieldCtx, coeffs: list[int], prec: int):
        if len(coeffs) < prec:
            coeffs = coeffs + [0] * (prec - len(coeffs))
        self.ctx = ctx
        self.coeffs = coeffs[:prec]
        self.prec = prec

    @classmethod
    def constant(cls, ctx: FieldCtx, code: int, prec: int) -> "PowerSeries":
        return cls(ctx, [code], prec)

    @classmethod
    def t(cls, ctx: FieldCtx, prec: int) -> "PowerSeries":
        return cls(ctx, [0, ctx.enc(ctx.one)], prec)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        ctx = self.ctx
        n = min(self.prec, other.prec)
        return PowerSeries(ctx, [ctx.add_c(a, b) for a, b in
                                 zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        ctx = self.ctx
        n = min(self.prec, other.prec)
        return PowerSeries(ctx, [ctx.sub_c(a, b) for a, b in
                                 zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        ctx = self.ctx
        n = min(self.prec, other.prec)
        out = [0] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j, b in enumerate(other.coeffs[:n - i]):
                    if b:
                        out[i + j] = ctx.add_c(out[i + j], ctx.mul_c(a, b))
        return PowerSeries(ctx, out, n)

    def scale(self, code: int) -> "PowerSeries":
        ctx = self.ctx
        return PowerSeries(ctx, [ctx.mul_c(code, c) if c else 0
                                 for c in self.coeffs], self.prec)

    def shift(self, n: int) -> "PowerSeries":
        return PowerSeries(self.ctx, [0] * n + self.coeffs, self.prec)

    def truncate(self, n: int) -> "PowerSeries":
        return PowerSeries(self.ctx, self.coeffs[:n], min(n, self.prec))

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; requires a unit constant term."""
        ctx = self.ctx
        if not self.coeffs or self.coeffs[0] == 0:
            raise PreconditionError("series inverse needs a unit constant term")
        n = self.prec
        inv0 = ctx.inv_c(self.coeffs[0])
        out = [inv0] + [0] * (n - 1)
        for m in range(1, n):
            acc = 0
            for i in range(1, m + 1):
                if i < len(self.coeffs) and self.coeffs[i] and out[m - i]:
                    acc = ctx.add_c(acc, ctx.mul_c(self.coeffs[i], out[m - i]))
            out[m] = ctx.neg_c(ctx.mul_c(inv0, acc))
        return PowerSeries(ctx, out, n)

    def pow_frobenius(self, qexp: int) -> "PowerSeries":
        """Raise to the q-th power, q = p^qexp: coefficients^q, indices * q."""
        ctx = self.ctx
        q = ctx.p ** qexp
        out = [0] * self.prec
        for i, c in enumerate(self.coeffs):
            if c and i * q < self.prec:
                out[i * q] = ctx.enc(ctx.frob_t(ctx.dec(c), qexp))
        return PowerSeries(ctx, out, self.prec)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __eq__(self, other) -> bool:
        return (isinstance(other, PowerSeries) and self.ctx.key == other.ctx.key
                and self.prec == other.prec and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        return f"PowerSeries({self.coeffs[:8]}..., prec={self.prec})"
