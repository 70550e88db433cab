"""The Hermitian curve X^(q+1) - Y^q Z - Y Z^q = 0 over GF(q^2).

All geometry runs in the original coordinate frame.  Affine points are
(x : y : 1) with x^(q+1) = y^q + y; the unique point on Z = 0 is
P_inf = (0 : 1 : 0).  A degree-3 place of the GF(q^2) function field is a
q^2-Frobenius orbit {P1, P2, P3} of points rational over GF(q^6) but not
over GF(q^2); such orbits are never collinear, because every GF(q^2)-line
meets the curve in GF(q^2)-points only.

Local analysis uses the branch parameter t = x - a, which works at every
affine point: dH/dy = -(q y^(q-1) + 1) = -1 in characteristic p, so the
tangent is never vertical and Newton iteration for y(t) never stalls.
At P_inf the chart (u, w) = (X/Y, Z/Y) turns the curve into
u^(q+1) = w + w^q with P_inf at the origin, and valuations there are
computed from the w(u) branch.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ConsistencyError, GuardError, PreconditionError
from .ff import (FieldCtx, PrimeLinearSolver, TowerEmbedding, build_ext_field,
                 split_prime_power)
from .linalg import FieldMatrix
from .poly import BivarPoly, PowerSeries, monomials_total_degree

#: default cap on field size for full point enumeration
ENUMERATION_LIMIT = 2 ** 20


class CurvePoint:
    """A projective point: affine (x : y : 1) or the distinguished (0 : 1 : 0).

    Coordinates are integer codes in ``ctx``; the normalisation is implied
    by the representation, so equal points compare equal.
    """

    __slots__ = ("ctx", "x", "y")

    def __init__(self, ctx: FieldCtx, x: int | None, y: int | None):
        self.ctx = ctx
        self.x = x
        self.y = y

    @classmethod
    def infinity(cls, ctx: FieldCtx) -> "CurvePoint":
        return cls(ctx, None, None)

    @property
    def at_infinity(self) -> bool:
        return self.x is None

    def coords_t(self) -> tuple[tuple, tuple]:
        if self.at_infinity:
            raise PreconditionError("infinite point has no affine coordinates")
        return self.ctx.dec(self.x), self.ctx.dec(self.y)

    def key(self) -> tuple:
        return ("inf",) if self.at_infinity else ("pt", self.x, self.y)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CurvePoint) and self.ctx.key == other.ctx.key
                and self.x == other.x and self.y == other.y)

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.x, self.y))

    def __repr__(self) -> str:
        if self.at_infinity:
            return "CurvePoint(P_inf)"
        return f"CurvePoint(x={self.x}, y={self.y})"


class Place3:
    """A degree-3 place: an ordered q^2-Frobenius orbit (P1, P2, P3).

    ``orientation[i]`` is the index j such that the tangent at P_i meets the
    curve again exactly at P_j (intersection divisor q*P_i + P_j); it is
    computed from scratch rather than assumed.
    """

    __slots__ = ("pts", "orientation")

    def __init__(self, pts: tuple[CurvePoint, CurvePoint, CurvePoint],
                 orientation: tuple[int, int, int]):
        self.pts = pts
        self.orientation = orientation

    def key(self) -> tuple:
        rep = min((p.x, p.y) for p in self.pts)
        return ("pl3", rep[0], rep[1])

    def __repr__(self) -> str:
        return f"Place3({[(p.x, p.y) for p in self.pts]})"


class Divisor:
    """A finite formal sum of places: P_inf, degree-1 points over GF(q^6),
    and degree-3 places stored atomically."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict | None = None):
        # key -> [multiplicity, place degree]
        self.entries = {k: list(v) for k, v in (entries or {}).items() if v[0]}

    @classmethod
    def of_infinity(cls, mult: int = 1) -> "Divisor":
        return cls({("inf",): (mult, 1)})

    @classmethod
    def of_point(cls, pt: CurvePoint, mult: int = 1) -> "Divisor":
        return cls({pt.key(): (mult, 1)})

    @classmethod
    def of_place3(cls, place: Place3, mult: int = 1) -> "Divisor":
        return cls({place.key(): (mult, 3)})

    def __add__(self, other: "Divisor") -> "Divisor":
        out = {k: v[:] for k, v in self.entries.items()}
        for k, (m, d) in other.entries.items():
            if k in out:
                out[k][0] += m
            else:
                out[k] = [m, d]
        return Divisor({k: v for k, v in out.items()})

    def __neg__(self) -> "Divisor":
        return Divisor({k: (-m, d) for k, (m, d) in self.entries.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def scale(self, c: int) -> "Divisor":
        return Divisor({k: (c * m, d) for k, (m, d) in self.entries.items()})

    def degree(self) -> int:
        return sum(m * d for m, d in self.entries.values())

    def multiplicity(self, key: tuple) -> int:
        return self.entries.get(key, [0, 0])[0]

    def is_effective(self) -> bool:
        return all(m >= 0 for m, _ in self.entries.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and {
            k: tuple(v) for k, v in self.entries.items()} == {
            k: tuple(v) for k, v in other.entries.items()}

    def to_jsonable(self) -> list:
        return [{"place": list(k), "mult": m, "deg": d}
                for k, (m, d) in sorted(self.entries.items())]

    def __repr__(self) -> str:
        return f"Divisor({self.entries})"


class BranchExpansion:
    """y(t) at an affine centre with local parameter t = x - a.

    Substituting into the affine curve equation gives 0 through the stated
    precision (verified at construction).
    """

    __slots__ = ("center", "series", "precision", "parameter")

    def __init__(self, center: CurvePoint, series: PowerSeries, precision: int):
        self.center = center
        self.series = series
        self.precision = precision
        self.parameter = "x - a"


class Hermitian:
    """Geometry context for one prime power q."""

    def __init__(self, q: int, table=None, enumeration_limit: int = ENUMERATION_LIMIT):
        if q < 2:
            raise PreconditionError("q must be a prime power >= 2")
        p, e = split_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        self.genus = q * (q - 1) // 2
        self.enumeration_limit = enumeration_limit
        self._table = table
        self.F2 = build_ext_field(p, 2 * e, "conway", table)
        self.F6 = build_ext_field(p, 6 * e, "conway", table)
        self.emb = TowerEmbedding(self.F2, self.F6)
        self._F4: FieldCtx | None = None
        self._solvers: dict[int, tuple] = {}
        self._R: BivarPoly | None = None

    # -- fields -------------------------------------------------------------

    def field(self, power: int) -> FieldCtx:
        if power == 2:
            return self.F2
        if power == 6:
            return self.F6
        if power == 4:
            if self._F4 is None:
                self._F4 = build_ext_field(self.p, 4 * self.e, "conway", self._table)
            return self._F4
        raise PreconditionError("field power must be 2, 4 or 6")

    # -- basic curve algebra --------------------------------------------------

    def curve_value_t(self, ctx: FieldCtx, x: tuple, y: tuple) -> tuple:
        """x^(q+1) - y^q - y as a coefficient tuple in ctx."""
        e = self.e
        xq1 = ctx.mul_t(ctx.frob_t(x, e), x)
        return ctx.sub_t(ctx.sub_t(xq1, ctx.frob_t(y, e)), y)

    def on_curve(self, pt: CurvePoint) -> bool:
        if pt.at_infinity:
            return True
        x, y = pt.coords_t()
        return self.curve_value_t(pt.ctx, x, y) == pt.ctx.zero

    def curve_poly(self, ctx: FieldCtx) -> BivarPoly:
        one = ctx.enc(ctx.one)
        neg = ctx.enc(ctx.neg_t(ctx.one))
        return BivarPoly(ctx, {(self.q + 1, 0): one, (0, self.q): neg, (0, 1): neg})

    def reduce_mod_curve(self, C: BivarPoly) -> BivarPoly:
        """Canonical representative with deg_y < q (y^q -> x^(q+1) - y)."""
        q = self.q
        ctx = C.ctx
        out: dict[tuple[int, int], int] = {}
        cur = dict(C.terms)
        while cur:
            nxt: dict[tuple[int, int], int] = {}

            def bump(d, k, v):
                s = ctx.add_c(d.get(k, 0), v)
                if s:
                    d[k] = s
                else:
                    d.pop(k, None)

            for (i, j), c in cur.items():
                if j < q:
                    bump(out, (i, j), c)
                else:
                    bump(nxt, (i + q + 1, j - q), c)
                    bump(nxt, (i, j - q + 1), ctx.neg_c(c))
            cur = nxt
        return BivarPoly(ctx, out)

    # -- enumeration ----------------------------------------------------------

    def point_count_formula(self, power: int) -> int:
        q = self.q
        if power in (2, 4):
            return q ** 3 + 1
        if power == 6:
            return q ** 6 + 1 + q ** 4 * (q - 1)
        raise PreconditionError("field power must be 2, 4 or 6")

    def _artin_schreier(self, power: int):
        """Solver data for y^q + y = rhs over the chosen field."""
        if power not in self._solvers:
            ctx = self.field(power)
            k, e = ctx.k, self.e
            cols = []
            for i in range(k):
                b = tuple(1 if t == i else 0 for t in range(k))
                cols.append(list(ctx.add_t(ctx.frob_t(b, e), b)))
            solver = PrimeLinearSolver(ctx.p, cols)
            kern = [tuple(v) for v in solver.kernel()]
            if len(kern) != e:
                raise ConsistencyError("Artin-Schreier kernel has wrong dimension")
            # enumerate the kernel (q elements) once
            span = [ctx.zero]
            for basis_vec in kern:
                scaled = []
                acc = ctx.zero
                for _ in range(ctx.p - 1):
                    acc = ctx.add_t(acc, basis_vec)
                    scaled.append(acc)
                span = [ctx.add_t(s, m) for s in span
                        for m in [ctx.zero] + scaled]
            if len(set(span)) != self.q:
                raise ConsistencyError("Artin-Schreier kernel span has wrong size")
            self._solvers[power] = (ctx, solver, span)
        return self._solvers[power]

    def solutions_y(self, power: int, x_t: tuple) -> list[tuple]:
        """All y with y^q + y = x^(q+1), sorted by enc; empty if none."""
        ctx, solver, span = self._artin_schreier(power)
        rhs = ctx.mul_t(ctx.frob_t(x_t, self.e), x_t)
        part = solver.solve(list(rhs))
        if part is None:
            return []
        base = tuple(part)
        sols = sorted(ctx.add_t(base, kv) for kv in span)
        return sols

    def enumerate_points(self, power: int = 2) -> list[CurvePoint]:
        """All points of H over GF(q^power), P_inf first then (enc x, enc y)."""
        ctx = self.field(power)
        if ctx.order > self.enumeration_limit:
            raise GuardError(
                f"enumeration over a field of order {ctx.order} exceeds the "
                f"guard ({self.enumeration_limit}); raise enumeration_limit to force")
        pts = [CurvePoint.infinity(ctx)]
        for a_code in range(ctx.order):
            a = ctx.dec(a_code)
            for y in self.solutions_y(power, a):
                pts.append(CurvePoint(ctx, a_code, ctx.enc(y)))
        return pts

    def rational_points(self) -> list[CurvePoint]:
        return self.enumerate_points(2)

    # -- degree-3 places ---------------------------------------------------------

    def frob_point(self, pt: CurvePoint) -> CurvePoint:
        """The q^2-power Frobenius image (the place-defining map)."""
        ctx = pt.ctx
        if pt.at_infinity:
            return pt
        x, y = pt.coords_t()
        return CurvePoint(ctx, ctx.enc(ctx.frob_t(x, 2 * self.e)),
                          ctx.enc(ctx.frob_t(y, 2 * self.e)))

    def is_rational_over_q2(self, pt: CurvePoint) -> bool:
        if pt.at_infinity:
            return True
        ctx = pt.ctx
        x, y = pt.coords_t()
        return (ctx.frob_t(x, 2 * self.e) == x and ctx.frob_t(y, 2 * self.e) == y)

    def _collinear(self, pts: Sequence[CurvePoint]) -> bool:
        ctx = pts[0].ctx
        (x1, y1), (x2, y2), (x3, y3) = (p.coords_t() for p in pts)
        # det [[x1 y1 1], [x2 y2 1], [x3 y3 1]]
        det = ctx.mul_t(x1, ctx.sub_t(y2, y3))
        det = ctx.sub_t(det, ctx.mul_t(y1, ctx.sub_t(x2, x3)))
        det = ctx.add_t(det, ctx.sub_t(ctx.mul_t(x2, y3), ctx.mul_t(x3, y2)))
        return det == ctx.zero

    def find_degree3_place(self, seed: CurvePoint | None = None,
                           start: int = 0) -> Place3:
        """A degree-3 place; deterministic scan order unless a seed is given."""
        ctx = self.F6
        if seed is not None:
            if seed.ctx.key != ctx.key:
                raise PreconditionError("seed must live over GF(q^6)")
            if not self.on_curve(seed):
                raise PreconditionError("seed is not on the curve")
            if self.is_rational_over_q2(seed):
                raise PreconditionError("seed is GF(q^2)-rational")
            p1 = seed
        else:
            p1 = None
            for off in range(ctx.order):
                a_code = (start + off) % ctx.order
                a = ctx.dec(a_code)
                if ctx.frob_t(a, 2 * self.e) == a:
                    continue  # all its points would need a rational x
                ys = self.solutions_y(6, a)
                if ys:
                    p1 = CurvePoint(ctx, a_code, ctx.enc(ys[0]))
                    break
            if p1 is None:
                raise ConsistencyError("no degree-3 place found")  # unreachable, q >= 2
        p2 = self.frob_point(p1)
        p3 = self.frob_point(p2)
        if self.frob_point(p3) != p1 or len({p1.key(), p2.key(), p3.key()}) != 3:
            raise ConsistencyError("Frobenius orbit is not of size 3")
        pts = (p1, p2, p3)
        for pt in pts:
            if not self.on_curve(pt) or self.is_rational_over_q2(pt):
                raise ConsistencyError("orbit point invalid")
        if self._collinear(pts):
            raise ConsistencyError("degree-3 place points are collinear")
        orientation = []
        for i, pt in enumerate(pts):
            mult, other = self.tangent_intersection(pt)
            if mult != self.q:
                raise ConsistencyError("tangent multiplicity at orbit point != q")
            js = [j for j, cand in enumerate(pts) if cand == other]
            if len(js) != 1:
                raise ConsistencyError("tangent's second point is not in the orbit")
            orientation.append(js[0])
        return Place3(pts, tuple(orientation))

    # -- tangents ------------------------------------------------------------

    def tangent_line(self, pt: CurvePoint) -> tuple[int, int, int]:
        """Projective coefficients (A, B, C) of the tangent: Ax + By + Cz = 0."""
        ctx = pt.ctx
        if pt.at_infinity:
            return (0, 0, ctx.enc(ctx.one))  # the line Z = 0
        x, y = pt.coords_t()
        lam = ctx.frob_t(x, self.e)          # a^q
        mu = ctx.neg_t(ctx.frob_t(y, self.e))  # -b^q;  tangent: y = a^q x - b^q
        return (ctx.enc(lam), ctx.enc(ctx.neg_t(ctx.one)), ctx.enc(mu))

    def tangent_poly(self, pt: CurvePoint) -> BivarPoly:
        """The affine tangent as y - a^q x + b^q (up to sign conventions)."""
        ctx = pt.ctx
        if pt.at_infinity:
            raise PreconditionError("tangent at P_inf is the line at infinity")
        x, y = pt.coords_t()
        lam = ctx.frob_t(x, self.e)
        return BivarPoly(ctx, {(0, 1): ctx.enc(ctx.one),
                               (1, 0): ctx.enc(ctx.neg_t(lam)),
                               (0, 0): ctx.enc(ctx.frob_t(y, self.e))})

    def tangent_intersection(self, pt: CurvePoint) -> tuple[int, CurvePoint]:
        """(multiplicity at pt, second intersection point) for the tangent.

        For orbit points the divisor is q*pt + other; at GF(q^2)-rational
        points other == pt and the multiplicity is q+1.
        """
        ctx = pt.ctx
        q = self.q
        if pt.at_infinity:
            return (q + 1, pt)
        a, b = pt.coords_t()
        lam = ctx.frob_t(a, self.e)
        mu = ctx.neg_t(ctx.frob_t(b, self.e))
        # H(x, lam*x + mu) = x^(q+1) - lam^q x^q - lam x - (mu^q + mu)
        coeffs = {0: ctx.neg_t(ctx.add_t(ctx.frob_t(mu, self.e), mu)),
                  1: ctx.neg_t(lam),
                  q: ctx.neg_t(ctx.frob_t(lam, self.e)),
                  q + 1: ctx.one}
        poly = [coeffs.get(i, ctx.zero) for i in range(q + 2)]
        # deflate by (x - a) q times; each division must be exact
        for _ in range(q):
            out = [ctx.zero] * (len(poly) - 1)
            carry = ctx.zero
            for i in range(len(poly) - 1, 0, -1):
                carry = ctx.add_t(poly[i], ctx.mul_t(a, carry))
                out[i - 1] = carry
            rem = ctx.add_t(poly[0], ctx.mul_t(a, carry))
            if rem != ctx.zero:
                raise ConsistencyError("tangent deflation not exact")
            poly = out
        # poly is linear: x - c (monic); c = -poly[0]
        if len(poly) != 2 or poly[1] != ctx.one:
            raise ConsistencyError("tangent residual is not linear monic")
        c = ctx.neg_t(poly[0])
        if c == a:
            return (q + 1, pt)
        y_other = ctx.add_t(ctx.mul_t(lam, c), mu)
        other = CurvePoint(ctx, ctx.enc(c), ctx.enc(y_other))
        if not self.on_curve(other):
            raise ConsistencyError("second tangent point not on curve")
        return (q, other)

    # -- branch expansions -----------------------------------------------------

    def branch_expansion(self, pt: CurvePoint, precision: int,
                         curve: BivarPoly | None = None) -> BranchExpansion:
        """y as a series in t = x - a, to the requested precision."""
        if precision < 1:
            raise PreconditionError("precision must be >= 1")
        if precision > 4 * self.q ** 2:
            raise GuardError(f"branch precision {precision} exceeds 4q^2")
        if pt.at_infinity:
            raise PreconditionError("branch_expansion needs an affine centre")
        ctx = pt.ctx
        a, b = pt.coords_t()
        if curve is None:
            series = self._y_series_default(ctx, a, b, precision)
        else:
            series = self._y_series_newton(ctx, curve, a, b, precision)
        return BranchExpansion(pt, series, precision)

    def _x_series(self, ctx: FieldCtx, a: tuple, prec: int) -> PowerSeries:
        return PowerSeries(ctx, [ctx.enc(a), ctx.enc(ctx.one)], prec)

    def _y_series_default(self, ctx: FieldCtx, a: tuple, b: tuple,
                          prec: int) -> PowerSeries:
        """Fixed point of y = (a+t)^(q+1) - y^q (Hensel; dH/dy = -1)."""
        e, q = self.e, self.q
        s = [0] * prec
        aq = ctx.frob_t(a, e)
        for idx, val in ((0, ctx.mul_t(aq, a)), (1, aq), (q, a), (q + 1, ctx.one)):
            if idx < prec:
                s[idx] = ctx.add_c(s[idx], ctx.enc(val))
        S = PowerSeries(ctx, s, prec)
        y = PowerSeries.constant(ctx, ctx.enc(b), prec)
        for _ in range(prec + 2):
            y_next = S - y.pow_frobenius(e)
            if y_next == y:
                break
            y = y_next
        else:
            raise ConsistencyError("branch iteration did not stabilise")
        resid = S - y.pow_frobenius(e) - y
        if not resid.is_zero():
            raise ConsistencyError("branch series residual nonzero")
        return y

    def _y_series_newton(self, ctx: FieldCtx, curve: BivarPoly, a: tuple,
                         b: tuple, prec: int) -> PowerSeries:
        """Generic smooth-branch Newton iteration for a user curve."""
        if curve.ctx.key != ctx.key:
            raise PreconditionError("curve polynomial over the wrong field")
        dFdy = BivarPoly(ctx, {(i, j - 1): ctx.mul_c(c, ctx.enc(
            ctx.scalar_mul_t(j, ctx.one)))
            for (i, j), c in curve.terms.items() if j >= 1})
        xs = self._x_series(ctx, a, prec)
        y = PowerSeries.constant(ctx, ctx.enc(b), prec)
        fy0 = dFdy.eval_c(ctx.enc(a), ctx.enc(b))
        if fy0 == 0:
            raise PreconditionError("dF/dy vanishes at the centre; branch not smooth in y")
        for _ in range(prec + 2):
            f_val = eval_series(curve, xs, y)
            if f_val.is_zero():
                break
            fy_val = eval_series(dFdy, xs, y)
            y = y - f_val * fy_val.inverse()
        else:
            raise ConsistencyError("Newton iteration stalled")
        if not eval_series(curve, xs, y).is_zero():
            raise ConsistencyError("branch series residual nonzero")
        return y

    # -- valuations ------------------------------------------------------------

    def intersection_multiplicity(self, pt: CurvePoint, C: BivarPoly) -> int:
        """I(pt, H ∩ C) for an affine pt, or the P_inf chart valuation."""
        if pt.at_infinity:
            return self.valuation_at_infinity(C)
        if C.ctx.key != pt.ctx.key:
            C = self._coerce_poly(C, pt.ctx)
        if self.reduce_mod_curve(C).is_zero():
            raise PreconditionError("polynomial vanishes identically on the curve")
        ctx = pt.ctx
        a, b = pt.coords_t()
        cap = max(1, C.degree()) * (self.q + 1) + 1
        prec = 8
        while True:
            prec = min(prec, cap)
            y = self._y_series_default(ctx, a, b, prec)
            xs = self._x_series(ctx, a, prec)
            v = eval_series(C, xs, y).valuation()
            if v is not None:
                return v
            if prec >= cap:
                raise ConsistencyError(
                    "valuation exceeded the Bezout cap; polynomial likely "
                    "vanishes on the curve")
            prec *= 2

    def _infinity_w_series(self, ctx: FieldCtx, prec: int) -> PowerSeries:
        """w(u) at P_inf on u^(q+1) = w + w^q, with w(0) = 0."""
        e, q = self.e, self.q
        s = [0] * prec
        if q + 1 < prec:
            s[q + 1] = ctx.enc(ctx.one)
        S = PowerSeries(ctx, s, prec)
        w = PowerSeries(ctx, [0], prec)
        for _ in range(prec + 2):
            w_next = S - w.pow_frobenius(e)
            if w_next == w:
                break
            w = w_next
        else:
            raise ConsistencyError("infinity branch did not stabilise")
        return w

    def valuation_at_infinity(self, C: BivarPoly) -> int:
        """I(P_inf, H ∩ C): the u-valuation of Z^deg(C) C(X/Z, Y/Z) at (u, 1, w)."""
        if self.reduce_mod_curve(C).is_zero():
            raise PreconditionError("polynomial vanishes identically on the curve")
        ctx = C.ctx
        d = C.degree()
        cap = max(1, d) * (self.q + 1) + 1
        prec = 2 * (self.q + 1)
        while True:
            prec = min(prec, cap)
            w = self._infinity_w_series(ctx, prec)
            u = PowerSeries.t(ctx, prec)
            upow = _powers(u, d)
            wpow = _powers(w, d)
            acc = PowerSeries(ctx, [0], prec)
            for (i, j), c in C.terms.items():
                acc = acc + (upow[i] * wpow[d - i - j]).scale(c)
            v = acc.valuation()
            if v is not None:
                return v
            if prec >= cap:
                raise ConsistencyError("infinity valuation exceeded the Bezout cap")
            prec *= 2

    def function_valuation_at_infinity(self, C: BivarPoly) -> int:
        """v_{P_inf} of C(x, y) as a function: I(P_inf, C ∩ H) - deg(C) (q+1)."""
        return self.valuation_at_infinity(C) - C.degree() * (self.q + 1)

    # -- vanishing conditions ------------------------------------------------

    def vanishing_matrix(self, pt: CurvePoint, monomials: Sequence[tuple[int, int]],
                         order: int) -> FieldMatrix:
        """Rows r < order: coefficient of t^r in m(x(t), y(t)) per monomial."""
        ctx = pt.ctx
        if order == 0:
            return FieldMatrix(ctx, 0, len(monomials))
        if order == 1:
            row = [BivarPoly(ctx, {m: ctx.enc(ctx.one)}).eval_c(pt.x, pt.y)
                   for m in monomials]
            return FieldMatrix(ctx, 1, len(monomials), [row])
        a, b = pt.coords_t()
        y = self._y_series_default(ctx, a, b, order)
        xs = self._x_series(ctx, a, order)
        max_i = max((i for i, _ in monomials), default=0)
        max_j = max((j for _, j in monomials), default=0)
        xp = _powers(xs, max_i)
        yp = _powers(y, max_j)
        cols = [(xp[i] * yp[j]).coeffs for (i, j) in monomials]
        rows = [[col[r] for col in cols] for r in range(order)]
        return FieldMatrix(ctx, order, len(monomials), rows)

    def vanishing_conditions(self, pt: CurvePoint, degree_bound: int,
                             order: int) -> FieldMatrix:
        """Conditions on total-degree <= d coefficient vectors; see spec of
        vanishing_matrix for the row semantics."""
        cap = max(1, degree_bound) * (self.q + 1) + 1
        if order > cap:
            raise PreconditionError(f"order {order} exceeds the Bezout cap {cap}")
        return self.vanishing_matrix(pt, monomials_total_degree(degree_bound), order)

    # -- distinguished polynomials ----------------------------------------------

    def R_polynomial(self) -> BivarPoly:
        """R = x * prod_{c^q + c != 0} (y - c) over GF(q^2), degree q^2-q+1."""
        if self._R is None:
            ctx = self.F2
            one = ctx.enc(ctx.one)
            prod = BivarPoly.constant(ctx, one)
            for code in range(ctx.order):
                c = ctx.dec(code)
                if ctx.add_t(ctx.frob_t(c, self.e), c) != ctx.zero:
                    prod = prod * BivarPoly(ctx, {(0, 1): one,
                                                  (0, 0): ctx.enc(ctx.neg_t(c))})
            self._R = prod.shift(1, 0)
        return self._R

    def lines_product(self, place: Place3) -> BivarPoly:
        """l1 l2 l3 (product of the tangents at the orbit), over GF(q^2)."""
        prod = BivarPoly.constant(self.F6, self.F6.enc(self.F6.one))
        for pt in place.pts:
            prod = prod * self.tangent_poly(pt)
        return prod.project_to(self.emb)

    # -- misc -----------------------------------------------------------------

    def _coerce_poly(self, C: BivarPoly, ctx: FieldCtx) -> BivarPoly:
        if C.ctx.key == ctx.key:
            return C
        if C.ctx.key == self.F2.key and ctx.key == self.F6.key:
            return C.map_to(self.emb)
        raise PreconditionError("polynomial is over an incompatible field")

    def degree3_place_count(self) -> int:
        return (self.point_count_formula(6) - self.point_count_formula(2)) // 3


def _powers(s: PowerSeries, n: int) -> list[PowerSeries]:
    out = [PowerSeries.constant(s.ctx, s.ctx.enc(s.ctx.one), s.prec)]
    for _ in range(n):
        out.append(out[-1] * s)
    return out


def eval_series(C: BivarPoly, xs: PowerSeries, ys: PowerSeries) -> PowerSeries:
    """C(x(t), y(t)) as a truncated series."""
    ctx = xs.ctx
    if C.ctx.key != ctx.key:
        raise PreconditionError("eval_series over mixed fields")
    xp = _powers(xs, C.deg_x() if C.terms else 0)
    yp = _powers(ys, C.deg_y() if C.terms else 0)
    acc = PowerSeries(ctx, [0], xs.prec)
    for (i, j), c in C.terms.items():
        acc = acc + (xp[i] * yp[j]).scale(c)
    return acc
