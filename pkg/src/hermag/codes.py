"""Concrete code matrices on the Hermitian curve.

The evaluation divisor is D = sum of all GF(q^2)-rational affine points
(q^3 of them).  Column order is fixed once and for all: lexicographic on
(a, b) in generator-power encoding with 0 encoded as -1, so matrices are
byte-reproducible across runs.

C_Omega(D, mP) is realised through the functional code C_L(D, A1) with
A1 = (q^3+q^2-q-2) P_inf - m P and the per-coordinate scaling u_S coming
from the first-order coefficient of R along the branch at S:
R(a+t, y(t)) = u_S t + O(t^2).  duality_check certifies the monomial
sequivalence by exact orthogonality: sum_S u_S^{-1} f(S) h(S) = 0 for f in
L(A1), h in L(mP), plus the dimension count that makes it the full dual.

Exact minimum distances are computed only behind size guards, either by
enumerating the code or by enumerating the dual and applying the
MacWilliams transform in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import comb

import numpy as np

from .bounds import decompose, designed, dstar, in_designed_range
from .curve import CurvePoint, Divisor, Hermitian, Place3
from .errors import ConsistencyError, GuardError, PreconditionError
from .linalg import FieldMatrix, matmul, nullspace, rank, rref
from .poly import BivarPoly
from .rrspace import RRBasis, basis_L_A1, basis_L_mP, weierstrass_monomials


@dataclass
class CodeMatrix:
    q: int
    divisor_tag: str
    generator: FieldMatrix
    columns: list[CurvePoint]

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    def to_power_grid(self) -> list[list[int]]:
        """Generator entries as generator-power integers, -1 for zero."""
        ctx = self.generator.ctx
        return [[ctx.dlog(v) for v in row] for row in self.generator.rows]


@dataclass
class ScalingVector:
    """Entries u_S, aligned with the canonical column order of D."""

    q: int
    entries: list[int]  # codes over GF(q^2), all nonzero
    columns: list[CurvePoint]


def canonical_D(curve: Hermitian) -> list[CurvePoint]:
    """All rational affine points, ordered by generator-power (a, b) pairs."""
    pts = [p for p in curve.rational_points() if not p.at_infinity]
    ctx = curve.F2
    pts.sort(key=lambda pt: (ctx.dlog(pt.x), ctx.dlog(pt.y)))
    if len(pts) != curve.q ** 3:
        raise ConsistencyError("D does not have q^3 points")
    return pts


def evaluation_matrix(curve: Hermitian, polys: list[BivarPoly],
                      D: list[CurvePoint]) -> FieldMatrix:
    """Rows are evaluations of the given GF(q^2)-polynomials at D."""
    ctx = curve.F2
    mons = sorted({mo for poly in polys for mo in poly.terms})
    mon_index = {mo: t for t, mo in enumerate(mons)}
    coeff = FieldMatrix(ctx, len(polys), len(mons))
    for r, poly in enumerate(polys):
        row = coeff.rows[r]
        for mo, c in poly.terms.items():
            row[mon_index[mo]] = c
    max_i = max((i for i, _ in mons), default=0)
    max_j = max((j for _, j in mons), default=0)
    vals = FieldMatrix(ctx, len(mons), len(D))
    for s, pt in enumerate(D):
        xp = [ctx.enc(ctx.one)]
        for _ in range(max_i):
            xp.append(ctx.mul_c(xp[-1], pt.x))
        yp = [ctx.enc(ctx.one)]
        for _ in range(max_j):
            yp.append(ctx.mul_c(yp[-1], pt.y))
        for t, (i, j) in enumerate(mons):
            vals.rows[t][s] = ctx.mul_c(xp[i], yp[j])
    return matmul(coeff, vals)


def build_CL_A1(curve: Hermitian, place: Place3, m: int) -> CodeMatrix:
    """Generator matrix of C_L(D, A1); full rank k = q^3+(q^2-q-2)/2-3m."""
    q = curve.q
    _, m0 = decompose(q, m)
    if m0 == 0:
        raise PreconditionError("m0 = 0 is routed to the one-point machinery")
    basis = basis_L_A1(curve, place, m)
    D = canonical_D(curve)
    gen = evaluation_matrix(curve, basis.numerators, D)
    k_expected = designed(q, m)[1]
    if rank(gen) != k_expected:
        raise ConsistencyError(
            f"C_L(D, A1) generator rank != {k_expected}")
    return CodeMatrix(q, f"A1;m={m}", gen, D)


def scaling_vector(curve: Hermitian) -> ScalingVector:
    """u_S per column: the two-case product formula, verified nonzero.

    For S = (a, b): u = prod_{c^q+c != 0} (b - c) when a = 0, and
    u = a^(q+1) prod_{c^q+c != 0, c != b} (b - c) otherwise.
    """
    ctx = curve.F2
    e, q = curve.e, curve.q
    D = canonical_D(curve)
    nontangent = [ctx.dec(code) for code in range(ctx.order)
                  if ctx.add_t(ctx.frob_t(ctx.dec(code), e), ctx.dec(code)) != ctx.zero]
    entries = []
    for pt in D:
        a, b = pt.coords_t()
        acc = ctx.one
        if a == ctx.zero:
            for c in nontangent:
                acc = ctx.mul_t(acc, ctx.sub_t(b, c))
        else:
            for c in nontangent:
                if c != b:
                    acc = ctx.mul_t(acc, ctx.sub_t(b, c))
            acc = ctx.mul_t(acc, ctx.mul_t(ctx.frob_t(a, e), a))
        if acc == ctx.zero:
            raise ConsistencyError("scaling entry vanished")
        entries.append(ctx.enc(acc))
    return ScalingVector(curve.q, entries, D)


def mP_evaluation_matrix(curve: Hermitian, place: Place3, m: int) -> FieldMatrix:
    """Evaluations at D of a GF(q^2)-basis of L(mP) (denominator included)."""
    ctx = curve.F2
    basis = basis_L_mP(curve, place, m)
    D = canonical_D(curve)
    num = evaluation_matrix(curve, basis.numerators, D)
    if basis.u:
        lll = curve.lines_product(place)
        for s, pt in enumerate(D):
            denom = ctx.pow_c(lll.eval_c(pt.x, pt.y), basis.u)
            if denom == 0:
                raise ConsistencyError("l1 l2 l3 vanished on D")
            inv = ctx.inv_c(denom)
            for r in range(num.nrows):
                num.rows[r][s] = ctx.mul_c(num.rows[r][s], inv)
    if rank(num) != basis.dimension:
        raise ConsistencyError("L(mP) evaluation matrix lost rank")
    return num


def duality_check(curve: Hermitian, place: Place3, m: int) -> bool:
    """Exact orthogonality of diag(u^-1) C_L(D, A1) against C_L(D, mP)."""
    q = curve.q
    if q > 3:
        raise GuardError("duality_check is guarded to q <= 3")
    if not in_designed_range(q, m):
        raise PreconditionError("m outside the designed range")
    code = build_CL_A1(curve, place, m)
    ctx = curve.F2
    sv = scaling_vector(curve)
    scaled = code.generator.copy()
    for s, u in enumerate(sv.entries):
        inv = ctx.inv_c(u)
        for r in range(scaled.nrows):
            scaled.rows[r][s] = ctx.mul_c(scaled.rows[r][s], inv)
    other = mP_evaluation_matrix(curve, place, m)
    # dimension count making the orthogonal complement exact
    if code.k + other.nrows != code.n:
        return False
    prod = matmul(scaled, FieldMatrix(ctx, other.ncols, other.nrows,
                                      [list(col) for col in zip(*other.rows)]))
    return prod.is_zero()


def reduce_A1_to_A2(curve: Hermitian, place: Place3, m: int
                    ) -> tuple[Divisor, Divisor, bool]:
    """The divisor pair (A1, A2) and whether m0 = 0 routes to one-point."""
    q = curve.q
    m1, m0 = decompose(q, m)
    N = q ** 3 + q * q - q - 2
    A1 = Divisor.of_infinity(N) - Divisor.of_place3(place, m)
    A2 = (Divisor.of_infinity((q * q - 3 * m1 - 1) * (q + 1) - 1)
          - Divisor.of_place3(place, m0))
    if A1.degree() != A2.degree():
        raise ConsistencyError("deg A1 != deg A2")
    return A1, A2, m0 == 0


def basis_L_A2(curve: Hermitian, place: Place3, m: int) -> RRBasis:
    """GF(q^2)-basis of L(A2), A2 = (q^2-3m1-1)(q+1) P_inf - (P_inf + m0 P)."""
    from .linalg import nullspace as _nullspace
    from .rrspace import restrict_scalars
    from .poly import poly_from_coeffs
    q = curve.q
    m1, m0 = decompose(q, m)
    cap = (q * q - 3 * m1 - 1) * (q + 1) - 1  # pole cap after the -P_inf term
    mons = weierstrass_monomials(q, cap)
    if m0 == 0:
        polys = [BivarPoly(curve.F2, {mo: curve.F2.enc(curve.F2.one)}) for mo in mons]
        return RRBasis(f"L(A2;m={m})", 0, polys, curve.F2)
    M6 = curve.vanishing_matrix(place.pts[0], mons, m0)
    M2 = restrict_scalars(M6, curve)
    ns = _nullspace(M2)
    expected = cap + 1 - curve.genus - 3 * m0
    if ns.nrows != expected:
        raise ConsistencyError(
            f"dim L(A2) = {ns.nrows}, Riemann-Roch expects {expected}")
    polys = [poly_from_coeffs(curve.F2, mons, row) for row in ns.rows]
    return RRBasis(f"L(A2;m={m})", 0, polys, curve.F2)


def verify_A2_equivalence(curve: Hermitian, place: Place3, m: int) -> bool:
    """diag((l1 l2 l3)^m1 on D) C_L(D, A1) equals C_L(D, A2) as row spaces."""
    if curve.q > 3:
        raise GuardError("A2 equivalence verification is guarded to q <= 3")
    ctx = curve.F2
    m1, _ = decompose(curve.q, m)
    code1 = build_CL_A1(curve, place, m)
    lll = curve.lines_product(place)
    scaled = code1.generator.copy()
    for s, pt in enumerate(code1.columns):
        f = ctx.pow_c(lll.eval_c(pt.x, pt.y), m1)
        for r in range(scaled.nrows):
            scaled.rows[r][s] = ctx.mul_c(scaled.rows[r][s], f)
    basis2 = basis_L_A2(curve, place, m)
    gen2 = evaluation_matrix(curve, basis2.numerators, code1.columns)
    R1, p1 = rref(scaled)
    R2, p2 = rref(gen2)
    return p1 == p2 and R1.rows[:len(p1)] == R2.rows[:len(p2)]


def generic_witness(curve: Hermitian, place: Place3, m: int) -> tuple[list[int], int]:
    """Evaluation vector and weight of l1 l2 l3 * x * prod (y - c_i) on D.

    The c_i are the first q^2-3m1-5 non-tangent values in enc order; the
    weight must equal d*(q, m) exactly.
    """
    ctx = curve.F2
    q, e = curve.q, curve.e
    m1, m0 = decompose(q, m)
    if m0 == 0:
        raise PreconditionError("m0 = 0 is routed to the one-point machinery")
    if not in_designed_range(q, m):
        raise PreconditionError("m outside the designed range")
    kk = q * q - 3 * m1 - 5
    if not 0 <= kk <= q * q - q:
        raise PreconditionError("no admissible set of c values")
    cs = []
    for code in range(ctx.order):
        c = ctx.dec(code)
        if ctx.add_t(ctx.frob_t(c, e), c) != ctx.zero:
            cs.append(c)
            if len(cs) == kk:
                break
    if len(cs) != kk:
        raise ConsistencyError("not enough non-tangent c values")
    poly = curve.lines_product(place).shift(1, 0)  # times x
    one = ctx.enc(ctx.one)
    for c in cs:
        poly = poly * BivarPoly(ctx, {(0, 1): one, (0, 0): ctx.enc(ctx.neg_t(c))})
    if poly.degree() != q * q - 3 * m1 - 1:
        raise ConsistencyError("witness polynomial has the wrong degree")
    D = canonical_D(curve)
    vec = [poly.eval_c(pt.x, pt.y) for pt in D]
    weight = sum(1 for v in vec if v)
    if weight != dstar(q, m):
        raise ConsistencyError(
            f"witness weight {weight} != d* = {dstar(q, m)}")
    return vec, weight


# ---------------------------------------------------------------------------
# exact minimum distance
# ---------------------------------------------------------------------------

_FULL_GUARD = 2 ** 26
_CHUNK = 2 ** 18


def weight_distribution(gen: FieldMatrix) -> list[int]:
    """Weight distribution of the code spanned by gen (all |F|^k words)."""
    ctx = gen.ctx
    k, n = gen.nrows, gen.ncols
    Q = ctx.order
    if Q ** k > _FULL_GUARD:
        raise GuardError(f"enumeration of {Q}^{k} codewords exceeds the guard")
    if ctx.tables is None:
        raise GuardError("weight enumeration needs a table-backed field")
    if k == 0:
        out = [0] * (n + 1)
        out[0] = 1
        return out
    ADD, MUL = ctx.tables.add, ctx.tables.mul
    rows = gen.to_np()
    s = 0
    while s < k and Q ** (s + 1) <= _CHUNK:
        s += 1
    prefix = np.zeros((1, n), dtype=np.int32)
    for r in range(s):
        scaled = MUL[np.arange(Q)[:, None], rows[r][None, :]]
        prefix = ADD[prefix[:, None, :], scaled[None, :, :]].reshape(-1, n)
    dist = np.zeros(n + 1, dtype=np.int64)
    tail = rows[s:]
    for combo in iproduct(range(Q), repeat=k - s):
        if any(combo):
            off = np.zeros(n, dtype=np.int32)
            for c, row in zip(combo, tail):
                if c:
                    off = ADD[off, MUL[c, row]]
            words = ADD[prefix, off[None, :]]
        else:
            words = prefix
        w = (words != 0).sum(axis=1)
        dist += np.bincount(w, minlength=n + 1)
    return [int(x) for x in dist]


def _krawtchouk(j: int, i: int, n: int, Q: int) -> int:
    total = 0
    for t in range(0, min(i, j) + 1):
        if j - t <= n - i:
            total += (-1) ** t * (Q - 1) ** (j - t) * comb(i, t) * comb(n - i, j - t)
    return total


def macwilliams_transform(B: list[int], n: int, Q: int, dual_size: int) -> list[int]:
    """Weight distribution of C from that of its dual, exactly."""
    A = []
    for j in range(n + 1):
        s = sum(Bi * _krawtchouk(j, i, n, Q) for i, Bi in enumerate(B) if Bi)
        quot, rem = divmod(s, dual_size)
        if rem:
            raise ConsistencyError("MacWilliams transform not integral")
        if quot < 0:
            raise ConsistencyError("negative weight count")
        A.append(quot)
    return A


def min_distance_exact(code: CodeMatrix, method: str = "auto") -> int:
    """Exact minimum weight, by direct or dual-side enumeration."""
    ctx = code.generator.ctx
    Q = ctx.order
    n, k = code.n, code.k
    if method == "auto":
        method = "full" if Q ** k <= Q ** (n - k) else "dual"
    if method == "full":
        if Q ** k > _FULL_GUARD:
            raise GuardError("full enumeration guard exceeded")
        dist = weight_distribution(code.generator)
    elif method == "dual":
        if Q ** (n - k) > _FULL_GUARD:
            raise GuardError("dual enumeration guard exceeded")
        dual_gen = nullspace(code.generator)
        if dual_gen.nrows != n - k:
            raise ConsistencyError("dual dimension mismatch")
        B = weight_distribution(dual_gen)
        dist = macwilliams_transform(B, n, Q, Q ** (n - k))
        if dist[0] != 1 or sum(dist) != Q ** k:
            raise ConsistencyError("transformed distribution inconsistent")
    else:
        raise PreconditionError(f"unknown method {method!r}")
    for w in range(1, n + 1):
        if dist[w]:
            return w
    raise ConsistencyError("code has no nonzero codeword")
