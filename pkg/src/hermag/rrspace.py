"""Riemann-Roch spaces as nullspaces of vanishing-condition systems.

Three spaces matter here, all on the Hermitian curve with P a degree-3
place and P_inf the distinguished rational point:

* L(N P_inf): spanned by the monomials x^i y^j with j <= q-1 and
  q i + (q+1) j <= N (x has pole order q at P_inf, y has q+1).
* L(m P): adjoint representation {f / (l1 l2 l3)^u : deg f <= 3u,
  ord_{P_i}(f) >= v} with m = u(q+1) - v, 0 <= v <= q, modulo multiples
  of the curve equation.
* L(A1) with A1 = (q^3+q^2-q-2) P_inf - m P: the code space; conditions
  are imposed at P1 only and solved over GF(q^2), which forces the
  conjugate conditions at P2, P3 by Galois invariance.

GF(q^6)-linear conditions are rewritten as triples of GF(q^2)-conditions
through the basis 1, g, g^2 of GF(q^6) over the embedded GF(q^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import Divisor, Hermitian, Place3
from .errors import ConsistencyError, GuardError, PreconditionError
from .ff import FieldCtx
from .linalg import FieldMatrix, nullspace, rank, rref
from .poly import BivarPoly, monomials_total_degree, poly_from_coeffs


def triangle_count(d: int) -> int:
    """Monomials of total degree <= d (0 for negative d)."""
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def weierstrass_monomials(q: int, N: int) -> list[tuple[int, int]]:
    """Exponent pairs of the pole-order basis of L(N P_inf), sorted by pole order."""
    mons = []
    for j in range(min(q - 1, N // (q + 1)) + 1):
        rest = N - j * (q + 1)
        for i in range(rest // q + 1):
            mons.append((i, j))
    mons.sort(key=lambda m: (q * m[0] + (q + 1) * m[1], m[1]))
    return mons


def mP_decompose(q: int, m: int) -> tuple[int, int]:
    """m = u(q+1) - v with 0 <= v <= q (u = ceil(m / (q+1)))."""
    if m < 0:
        raise PreconditionError("m must be >= 0")
    u = -(-m // (q + 1))
    v = u * (q + 1) - m
    if not 0 <= v <= q:
        raise ConsistencyError("decomposition out of range")  # pragma: no cover
    return u, v


@dataclass
class RRBasis:
    """A basis of a Riemann-Roch space: numerators over a fixed field and a
    shared denominator (l1 l2 l3)^u (u = 0 for polynomial spaces)."""

    label: str
    u: int
    numerators: list[BivarPoly]
    ctx: FieldCtx
    divisor: Divisor | None = None

    @property
    def dimension(self) -> int:
        return len(self.numerators)


def restrict_scalars(M: FieldMatrix, curve: Hermitian) -> FieldMatrix:
    """Rewrite a GF(q^6) condition matrix as 3x as many GF(q^2) conditions."""
    emb = curve.emb
    big, small = curve.F6, curve.F2
    if M.ctx.key != big.key:
        raise PreconditionError("restrict_scalars expects a GF(q^6) matrix")
    out_rows: list[list[int]] = []
    for row in M.rows:
        coords = [emb.coordinates_t(big.dec(w)) for w in row]
        for part in range(emb.ratio):
            out_rows.append([small.enc(c[part]) for c in coords])
    return FieldMatrix(small, 3 * M.nrows, M.ncols, out_rows)


def basis_L_at_infinity(curve: Hermitian, N: int) -> RRBasis:
    """Monomial basis of L(N P_inf) over GF(q^2)."""
    if N < 0:
        raise PreconditionError("pole-order cap must be >= 0")
    q = curve.q
    mons = weierstrass_monomials(q, N)
    if N > 2 * curve.genus - 2 and len(mons) != N + 1 - curve.genus:
        raise ConsistencyError(
            f"L({N} P_inf) monomial count {len(mons)} != {N + 1 - curve.genus}")
    ctx = curve.F2
    one = ctx.enc(ctx.one)
    polys = [BivarPoly(ctx, {m: one}) for m in mons]
    return RRBasis(f"L({N}*Pinf)", 0, polys, ctx,
                   divisor=Divisor.of_infinity(N))


def dim_L_mP(curve: Hermitian, place: Place3, m: int) -> int:
    """dim L(m P) through the adjoint system at all three orbit points.

    This is the oracle side: it never consults the closed-form gap set.
    """
    if m < 0:
        raise PreconditionError("m must be >= 0")
    if m == 0:
        return 1
    q = curve.q
    u, v = mP_decompose(q, m)
    mons = monomials_total_degree(3 * u)
    if v == 0:
        nullity = len(mons)
    else:
        rows: list[list[int]] = []
        for pt in place.pts:
            rows.extend(curve.vanishing_matrix(pt, mons, v).rows)
        M = FieldMatrix(curve.F6, len(rows), len(mons), rows)
        nullity = len(mons) - rank(M)
    dim = nullity - triangle_count(3 * u - (q + 1))
    if dim < 1:
        raise ConsistencyError(f"dim L({m}P) computed as {dim}")
    return dim


def basis_L_mP(curve: Hermitian, place: Place3, m: int) -> RRBasis:
    """GF(q^2)-rational basis of L(m P), numerators modulo the curve equation."""
    q = curve.q
    ctx = curve.F2
    if m < 0:
        raise PreconditionError("m must be >= 0")
    if m == 0:
        return RRBasis("L(0)", 0, [BivarPoly.constant(ctx, ctx.enc(ctx.one))], ctx)
    u, v = mP_decompose(q, m)
    mons = monomials_total_degree(3 * u)
    if v == 0:
        V_rows = FieldMatrix.identity(ctx, len(mons)).rows
    else:
        M6 = curve.vanishing_matrix(place.pts[0], mons, v)
        M2 = restrict_scalars(M6, curve)
        V_rows = nullspace(M2).rows
    # quotient by multiples of the curve polynomial inside the degree cap
    H = curve.curve_poly(ctx)
    mon_index = {mo: t for t, mo in enumerate(mons)}
    W_rows = []
    gdeg = 3 * u - (q + 1)
    for gm in monomials_total_degree(gdeg) if gdeg >= 0 else []:
        gh = H.shift(gm[0], gm[1])
        vec = [0] * len(mons)
        for key, c in gh.terms.items():
            vec[mon_index[key]] = c
        W_rows.append(vec)
    chosen = _complement_basis(ctx, W_rows, V_rows)
    dim_oracle = dim_L_mP(curve, place, m)
    if len(chosen) != dim_oracle:
        raise ConsistencyError(
            f"L({m}P) rational basis has dim {len(chosen)}, oracle {dim_oracle}")
    polys = [poly_from_coeffs(ctx, mons, row) for row in chosen]
    return RRBasis(f"L({m}P)", u, polys, ctx)


def basis_L_A1(curve: Hermitian, place: Place3, m: int) -> RRBasis:
    """GF(q^2)-basis of L((q^3+q^2-q-2) P_inf - m P)."""
    q = curve.q
    if not q * q - q - 2 <= 3 * m <= 2 * q * q - q - 2:
        raise PreconditionError(
            f"3m = {3 * m} outside [q^2-q-2, 2q^2-q-2] = "
            f"[{q * q - q - 2}, {2 * q * q - q - 2}]")
    N = q ** 3 + q * q - q - 2
    mons = weierstrass_monomials(q, N)
    g = curve.genus
    if len(mons) != N + 1 - g:
        raise ConsistencyError("Weierstrass basis count mismatch")
    M6 = curve.vanishing_matrix(place.pts[0], mons, m)
    M2 = restrict_scalars(M6, curve)
    ns = nullspace(M2)
    expected = q ** 3 + (q * q - q - 2) // 2 - 3 * m
    if ns.nrows != expected:
        raise ConsistencyError(
            f"dim L(A1) = {ns.nrows}, Riemann-Roch expects {expected}")
    ctx = curve.F2
    polys = [poly_from_coeffs(ctx, mons, row) for row in ns.rows]
    div = Divisor.of_infinity(N) - Divisor.of_place3(place, m)
    return RRBasis(f"L(A1;m={m})", 0, polys, ctx, divisor=div)


def _complement_basis(ctx: FieldCtx, W_rows: list[list[int]],
                      V_rows: list[list[int]]) -> list[list[int]]:
    """Rows of V whose classes modulo span(W) are independent, greedily."""
    reduced: list[tuple[int, list[int]]] = []  # (pivot col, normalised row)

    def insert(vec: list[int]) -> bool:
        vec = vec[:]
        for pc, rv in reduced:
            f = vec[pc]
            if f:
                vec = [ctx.sub_c(a, ctx.mul_c(f, b)) for a, b in zip(vec, rv)]
        pc = next((i for i, val in enumerate(vec) if val), None)
        if pc is None:
            return False
        inv = ctx.inv_c(vec[pc])
        vec = [ctx.mul_c(inv, val) if val else 0 for val in vec]
        reduced.append((pc, vec))
        reduced.sort(key=lambda item: item[0])
        return True

    for w in W_rows:
        insert(w)
    chosen = []
    for v in V_rows:
        if insert(v):
            chosen.append(v)
    return chosen
