"""Exact curvature operators for the model fibres and their identity suites.

Conventions, fixed once:

* R(X,Y,Z,W) = g(R_{X,Y} Z, W), arranged so that the unit sphere satisfies
  R_{V,X} Y = g(X,Y) V - g(V,Y) X.
* 2-forms and skew endomorphisms are identified by alpha(X,Y) = g(AX, Y);
  the basis 2-form X_a ^ X_b acts as Z -> g(X_a,Z) X_b - g(X_b,Z) X_a.
* The curvature endomorphism on 2-forms is
  (R^(A))(X,Y) = (1/2) sum_a R(A X_a, X_a, X, Y), whose matrix in the pair
  basis is minus the matrix of the (4,0) tensor.  With this normalisation
  trace(R^) = scal / 2 identically, and the curvature action on a parallel
  family satisfies R^(J_ik) = (n kappa / 4) J_ik.
* Ric(X,Y) = sum_a g(R_{X, X_a} X_a, Y).

Tensors are stored as integer numerator arrays over a single positive
denominator; every check is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .reps import build_even_rep, j_family, quaternion_units
from .structure import (
    EvenCliffordStructure,
    Failure,
    VerificationReport,
    volume_endomorphism,
)


class CurvatureError(ValueError):
    pass


class CalibrationError(ValueError):
    """Scales that do not produce an algebraic curvature tensor."""


def _normalize(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den < 0:
        num, den = -num, -den
    g = int(np.gcd.reduce(np.abs(num).reshape(-1), initial=den))
    if g > 1:
        num = num // g
        den //= g
    return num, den


class CurvatureOperator:
    """The (4,0) tensor of an algebraic curvature operator on R^n.

    Stored as an integer tensor R4[a,b,c,d] over a common denominator, with
    R4 exact equal to den * R(X_a, X_b, X_c, X_d).
    """

    def __init__(self, n: int, num: np.ndarray, den: int = 1, check: bool = True):
        if num.shape != (n, n, n, n):
            raise CurvatureError(f"tensor shape {num.shape} does not match n={n}")
        self.n = n
        self.num, self.den = _normalize(num.astype(np.int64), den)
        self._pairs = linalg.pair_basis(n)
        if check:
            problems = self.symmetry_violations()
            if problems:
                raise CurvatureError("; ".join(problems))

    # -- structure -------------------------------------------------------------

    def symmetry_violations(self) -> list[str]:
        r = self.num
        out = []
        if (r + r.transpose(1, 0, 2, 3)).any():
            out.append("not antisymmetric in the first two slots")
        if (r + r.transpose(0, 1, 3, 2)).any():
            out.append("not antisymmetric in the last two slots")
        if (r - r.transpose(2, 3, 0, 1)).any():
            out.append("pair symmetry fails")
        bianchi = r + r.transpose(1, 2, 0, 3) + r.transpose(2, 0, 1, 3)
        if bianchi.any():
            out.append(
                "first Bianchi identity fails, max residual "
                f"{Fraction(int(np.abs(bianchi).max()), self.den)}"
            )
        return out

    def entry(self, a: int, b: int, c: int, d: int) -> Fraction:
        return Fraction(int(self.num[a, b, c, d]), self.den)

    def curvature_matrix(self, a: int, b: int) -> np.ndarray:
        """Numerator of the skew matrix R_{X_a, X_b}; divide by den."""
        return self.num[a, b].T.copy()

    def rhat_matrix(self) -> tuple[np.ndarray, int]:
        """Numerator and denominator of the pair-basis matrix of R^."""
        idx = self._pairs
        m = len(idx)
        out = np.empty((m, m), dtype=np.int64)
        for p, (a, b) in enumerate(idx):
            for q, (c, d) in enumerate(idx):
                out[p, q] = -self.num[a, b, c, d]
        return out, self.den

    def rhat_apply(self, skew: np.ndarray) -> tuple[np.ndarray, int]:
        """R^ applied to a skew integer matrix; returns (numerator, den)."""
        coords = linalg.skew_to_coords(skew)
        rhat, den = self.rhat_matrix()
        return linalg.coords_to_skew(linalg.imatmul(rhat, coords[:, None])[:, 0], self.n), den

    def ricci_num(self) -> np.ndarray:
        return np.einsum("xaay->xy", self.num)

    def ricci(self) -> np.ndarray:
        """Ricci tensor as a Fraction-valued symmetric matrix."""
        num = self.ricci_num()
        return np.array(
            [[Fraction(int(x), self.den) for x in row] for row in num], dtype=object
        )

    def scalar(self) -> Fraction:
        return Fraction(int(np.trace(self.ricci_num())), self.den)

    def rhat_trace(self) -> Fraction:
        rhat, den = self.rhat_matrix()
        return Fraction(int(np.trace(rhat)), den)


def ricci(op: CurvatureOperator) -> np.ndarray:
    return op.ricci()


def scalar(op: CurvatureOperator) -> Fraction:
    return op.scalar()


# -- model constructors --------------------------------------------------------


def constant_curvature_op(n: int, c: Fraction | int) -> CurvatureOperator:
    """R(X,Y,Z,W) = c [g(X,W) g(Y,Z) - g(X,Z) g(Y,W)]; R^ = c id."""
    if n < 2:
        raise CurvatureError("need n >= 2")
    c = Fraction(c)
    ident = linalg.eye(n)
    t = np.einsum("ad,bc->abcd", ident, ident) - np.einsum("ac,bd->abcd", ident, ident)
    return CurvatureOperator(n, c.numerator * t, c.denominator)


def _kahler_type_tensor(structures: Sequence[np.ndarray], n: int) -> np.ndarray:
    ident = linalg.eye(n)
    t = np.einsum("bc,ad->abcd", ident, ident) - np.einsum("ac,bd->abcd", ident, ident)
    for j in structures:
        t = t + (
            np.einsum("cb,da->abcd", j, j)
            - np.einsum("ca,db->abcd", j, j)
            - 2 * np.einsum("ba,dc->abcd", j, j)
        )
    return t


def fubini_study_op(
    m: int, c: Fraction | int, kahler: np.ndarray | None = None
) -> tuple[CurvatureOperator, np.ndarray]:
    """Complex projective space with holomorphic sectional curvature c.

    R_{X,Y} Z = (c/4) [ g(Y,Z) X - g(X,Z) Y + g(JY,Z) JX - g(JX,Z) JY
                        - 2 g(JX,Y) JZ ].
    Returns the operator together with the complex structure used.
    """
    if m < 1:
        raise CurvatureError("need complex dimension m >= 1")
    n = 2 * m
    j = kahler if kahler is not None else np.kron(linalg.eye(m), linalg.intmat([[0, -1], [1, 0]]))
    if not (np.array_equal(j @ j, -linalg.eye(n)) and linalg.is_skew(j)):
        raise CurvatureError("kahler argument must be a skew complex structure")
    c4 = Fraction(c) / 4
    t = _kahler_type_tensor([j], n)
    return CurvatureOperator(n, c4.numerator * t, c4.denominator), j


def quaternionic_op(
    q: int, c: Fraction | int, triple: Sequence[np.ndarray] | None = None
) -> tuple[CurvatureOperator, tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Quaternionic projective space with maximal sectional curvature c.

    Same shape as the complex model, summed over a compatible quaternion
    triple I, J, K (default: right multiplications on H^q).
    """
    if q < 1:
        raise CurvatureError("need quaternionic dimension q >= 1")
    n = 4 * q
    trip = tuple(triple) if triple is not None else quaternion_units(q)
    if len(trip) != 3:
        raise CurvatureError("need a triple I, J, K")
    if not np.array_equal(linalg.mm(trip[0], trip[1]), trip[2]):
        raise CurvatureError("triple must satisfy I J = K")
    c4 = Fraction(c) / 4
    t = _kahler_type_tensor(trip, n)
    return CurvatureOperator(n, c4.numerator * t, c4.denominator), trip


def _projection_matrix(basis: Sequence[np.ndarray], n: int) -> linalg.FracMatrix:
    """Orthogonal projection of the pair-coordinate space onto a span."""
    cols = [linalg.skew_to_coords(b) for b in basis]
    m = len(linalg.pair_basis(n))
    b = [[Fraction(int(cols[c][rww])) for c in range(len(cols))] for rww in range(m)]
    gram = linalg.frac_matmul([[b[rww][c] for rww in range(m)] for c in range(len(cols))], b)
    inv = linalg.inverse(gram)
    bt = [[b[rww][c] for rww in range(m)] for c in range(len(cols))]
    return linalg.frac_matmul(linalg.frac_matmul(b, inv), bt)


def isotropy_projection_op(
    ideals: Sequence[Sequence[np.ndarray]], scales: Sequence[Fraction | int]
) -> CurvatureOperator:
    """Curvature operator c_1 P_1 + c_2 P_2 + ... for ideals of a subalgebra.

    Each ideal is given by a spanning list of skew matrices; P projects the
    space of 2-forms orthogonally (trace pairing) onto its span.  Bracket
    closure of each ideal and vanishing of cross brackets are checked, then
    the induced (4,0) tensor is built and the first Bianchi identity is
    checked rather than assumed: scales violating it raise CalibrationError.
    """
    if len(ideals) != len(scales):
        raise CurvatureError("one scale per ideal")
    if not ideals or not ideals[0]:
        raise CurvatureError("need at least one nonempty ideal")
    n = np.asarray(ideals[0][0]).shape[0]
    for ideal in ideals:
        for g in ideal:
            if not linalg.is_skew(np.asarray(g)):
                raise CurvatureError("ideal generators must be skew")
    # bracket closure per ideal, cross brackets vanish
    for a_i, ideal_a in enumerate(ideals):
        span_rows = linalg.to_fractions([linalg.skew_to_coords(g).tolist() for g in ideal_a])
        reduced, pivots = linalg.rref(span_rows)
        reduced = reduced[: len(pivots)]
        for b_i, ideal_b in enumerate(ideals):
            for x in ideal_a:
                for y in ideal_b:
                    br = linalg.commutator(np.asarray(x), np.asarray(y))
                    if a_i == b_i:
                        coords = [Fraction(int(t)) for t in linalg.skew_to_coords(br)]
                        if not linalg.in_row_span(reduced, pivots, coords):
                            raise CurvatureError("generators are not closed under brackets")
                    elif br.any():
                        raise CurvatureError("ideals do not commute; not a direct sum")

    m = len(linalg.pair_basis(n))
    rhat = [[Fraction(0)] * m for _ in range(m)]
    for ideal, scale in zip(ideals, scales):
        p = _projection_matrix(ideal, n)
        s = Fraction(scale)
        for i in range(m):
            for j in range(m):
                rhat[i][j] += s * p[i][j]
    den = 1
    for row in rhat:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    rhat_num = np.array([[int(x * den) for x in row] for row in rhat], dtype=np.int64)

    num = np.zeros((n, n, n, n), dtype=np.int64)
    pairs = linalg.pair_basis(n)
    for p, (a, b) in enumerate(pairs):
        for q_i, (c, d) in enumerate(pairs):
            v = -rhat_num[p, q_i]
            num[a, b, c, d] = v
            num[b, a, c, d] = -v
            num[a, b, d, c] = -v
            num[b, a, d, c] = v
    try:
        return CurvatureOperator(n, num, den)
    except CurvatureError as err:
        raise CalibrationError(
            f"the given scales do not define a curvature tensor: {err}"
        ) from err


# -- spectra ---------------------------------------------------------------------


def lambda2_spectrum(
    op: CurvatureOperator, candidates: Sequence[Fraction | int]
) -> list[tuple[Fraction, int]]:
    """Verified eigenvalue/multiplicity list of R^ on 2-forms.

    Exact: each multiplicity is a kernel dimension, the multiplicities must
    exhaust the space, and the product of (R^ - lambda) over the candidates
    must annihilate it, which proves no eigenvalue was missed.
    """
    rhat_num, den = op.rhat_matrix()
    m = rhat_num.shape[0]
    out = []
    total = 0
    for lam in sorted({Fraction(c) for c in candidates}):
        shifted = [
            [Fraction(int(rhat_num[i][j]), den) - (lam if i == j else 0) for j in range(m)]
            for i in range(m)
        ]
        mult = m - linalg.rank(shifted)
        if mult:
            out.append((lam, mult))
            total += mult
    if total != m:
        raise CurvatureError(
            f"candidate eigenvalues cover {total} of {m} dimensions; spectrum incomplete"
        )
    prod = linalg.eye(m).astype(object)
    for lam, _ in out:
        shifted = rhat_num.astype(object) * Fraction(1, den) - lam * linalg.eye(m).astype(object)
        prod = prod @ shifted
    if any(Fraction(x) != 0 for x in prod.reshape(-1)):
        raise CurvatureError("annihilating polynomial check failed; spectrum incomplete")
    return out


# -- identity suites -------------------------------------------------------------


def _family_stacks(s: EvenCliffordStructure):
    mats = {}
    for i in range(1, s.r + 1):
        for j in range(1, s.r + 1):
            if i != j:
                mats[(i, j)] = s.j(i, j)
    return mats


def verify_parallel_identities(
    op: CurvatureOperator, s: EvenCliffordStructure, kappa: Fraction | int
) -> VerificationReport:
    """The curvature identities of a parallel structure with forms kappa J.

    Checks, exactly: the eigenvalue identity R^(J_ik) = (n kappa / 4) J_ik;
    the full curvature action identity

        [R_{X_a, X_b}, J_ij] = kappa sum_s [ g(J_si X_a, X_b) J_sj
                                           + g(J_sj X_a, X_b) J_is ]

    on every frame pair, where the s = i term of the first sum and the
    s = j term of the second are dropped (curvature forms of a metric
    connection have zero diagonal); and the Einstein identity
    Ric = kappa (n/4 + 2r - 4) g.
    """
    if op.n != s.n:
        raise CurvatureError("operator and structure dimensions differ")
    kappa = Fraction(kappa)
    n, r = s.n, s.r
    failures: list[Failure] = []

    rhat_num, den = op.rhat_matrix()
    for (i, k) in s.pairs():
        jmat = s.j(i, k)
        applied = linalg.imatmul(rhat_num, linalg.skew_to_coords(jmat)[:, None])[:, 0]
        lhs = 4 * kappa.denominator * applied
        rhs = n * kappa.numerator * den * linalg.skew_to_coords(jmat)
        if (lhs - rhs).any():
            failures.append(
                Failure(
                    "two_form_eigenvalue",
                    (i, k),
                    str(Fraction(int(np.abs(lhs - rhs).max()), 4 * kappa.denominator * den)),
                )
            )

    mats = _family_stacks(s)
    pairs0 = linalg.pair_basis(n)
    curv = np.stack([op.curvature_matrix(a, b) for (a, b) in pairs0])
    for (i, j) in s.pairs():
        jmat = mats[(i, j)]
        lhs = linalg.imatmul(curv, jmat) - linalg.imatmul(jmat[None, :, :], curv)
        rhs = np.zeros_like(lhs)
        for sdx in range(1, r + 1):
            if sdx != i:
                coeff = linalg.skew_to_coords(mats[(sdx, i)])
                target = mats[(sdx, j)] if sdx != j else -linalg.eye(n)
                rhs += np.einsum("p,ab->pab", coeff, target)
            if sdx != j:
                coeff = linalg.skew_to_coords(mats[(sdx, j)])
                target = mats[(i, sdx)] if sdx != i else -linalg.eye(n)
                rhs += np.einsum("p,ab->pab", coeff, target)
        residual = kappa.denominator * lhs - kappa.numerator * den * rhs
        if residual.any():
            worst = Fraction(int(np.abs(residual).max()), kappa.denominator * den)
            bad = int(np.abs(residual.reshape(len(pairs0), -1)).max(axis=1).argmax())
            failures.append(
                Failure("curvature_action", (i, j) + pairs0[bad], str(worst))
            )

    ric = op.ricci_num()
    einstein = 4 * kappa.denominator * ric - kappa.numerator * (n + 8 * r - 16) * den * linalg.eye(n)
    if einstein.any():
        failures.append(
            Failure(
                "einstein",
                (),
                str(Fraction(int(np.abs(einstein).max()), 4 * kappa.denominator * den)),
            )
        )

    # Ricci system: 0 = Ric + (n/4 - 2) J_ij w_ij + sum_s [J_si w_si + J_sj w_sj]
    for (i, j) in s.pairs():
        acc = 4 * kappa.denominator * ric.astype(np.int64)
        acc = acc + (n - 8) * kappa.numerator * den * linalg.imatmul(mats[(i, j)], mats[(i, j)])
        for sdx in range(1, r + 1):
            if sdx != i:
                acc = acc + 4 * kappa.numerator * den * linalg.imatmul(mats[(sdx, i)], mats[(sdx, i)])
            if sdx != j:
                acc = acc + 4 * kappa.numerator * den * linalg.imatmul(mats[(sdx, j)], mats[(sdx, j)])
        if acc.any():
            failures.append(
                Failure(
                    "ricci_system",
                    (i, j),
                    str(Fraction(int(np.abs(acc).max()), 4 * kappa.denominator * den)),
                )
            )

    return VerificationReport("parallel_identities", not failures, failures)


def verify_cc_normalization(op: CurvatureOperator, s: EvenCliffordStructure) -> VerificationReport:
    """Curvature constancy normalisation: forms equal twice the family.

    Runs the parallel identity suite at kappa = 2, the scalar curvature
    value scal = 2n(n/4 + 2r - 4), and the trace orthogonality of the
    curvature forms against the family.
    """
    base = verify_parallel_identities(op, s, 2)
    failures = list(base.failures)
    n, r = s.n, s.r
    data = {}
    expected = 2 * n * (Fraction(n, 4) + 2 * r - 4)
    got = op.scalar()
    if got != expected:
        failures.append(Failure("scalar_curvature", (), str(got - expected)))
    data["scal"] = str(got)
    if n == 4:
        data["note"] = "n = 4: scalar normalisation outside its stated domain; value reported"
    if r != 4:
        for (i, j) in s.pairs():
            for (k, l) in s.pairs():
                if (i, j) < (k, l) and {i, j} != {k, l}:
                    t = 2 * linalg.trace_product(s.j(i, j), s.j(k, l))
                    if t != 0:
                        failures.append(Failure("form_orthogonality", (i, j, k, l), str(t)))
    return VerificationReport("cc_normalization", not failures, failures, data)


# -- centralizers -----------------------------------------------------------------


def centralizer_dim(gens: Sequence[np.ndarray]) -> tuple[int, list[np.ndarray]]:
    """Dimension and basis of the centralizer of a set of matrices in so(n).

    Solved as the exact kernel of the stacked commutator system over the
    pair-coordinate space of skew matrices.
    """
    gens = [np.asarray(g) for g in gens]
    n = gens[0].shape[0]
    pairs = linalg.pair_basis(n)
    m = len(pairs)
    basis_elems = [linalg.coords_to_skew(e, n) for e in np.eye(m, dtype=np.int64)]
    stacked = []
    for g in gens:
        # columns: basis coefficient x_p; rows: coordinate slots of [E_p, G]
        block = np.stack(
            [linalg.skew_to_coords(linalg.commutator(e, g)) for e in basis_elems]
        ).T
        stacked.extend([Fraction(int(x)) for x in row] for row in block)
    kernel = linalg.nullspace(stacked)
    basis = []
    for v in kernel:
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = np.array([int(x * den) for x in v], dtype=np.int64)
        g = int(np.gcd.reduce(np.abs(ints), initial=0))
        if g > 1:
            ints //= g
        basis.append(linalg.coords_to_skew(ints, n))
    return len(kernel), basis


# -- model spaces -----------------------------------------------------------------


@dataclass
class ModelSpace:
    """A model fibre: an aligned structure plus its calibrated operator."""

    name: str
    n: int
    r: int
    structure: EvenCliffordStructure
    operator: CurvatureOperator
    scale: Fraction
    expected_ricci: Fraction
    expected_scal: Fraction
    spectrum_candidates: list[Fraction]
    extras: dict = field(default_factory=dict)


def _calibrate(build: Callable[[Fraction], CurvatureOperator], target_scal: Fraction) -> tuple[CurvatureOperator, Fraction]:
    probe = build(Fraction(1))
    base = probe.scalar()
    if base == 0:
        raise CalibrationError("model has identically zero scalar curvature")
    c = Fraction(target_scal) / base
    return build(c), c


def cc_scal(n: int, r: int) -> Fraction:
    """Scalar curvature forced by the curvature constancy normalisation."""
    return 2 * n * (Fraction(n, 4) + 2 * r - 4)


def cc_ricci(n: int, r: int) -> Fraction:
    return 2 * (Fraction(n, 4) + 2 * r - 4)


def build_model(name: str) -> ModelSpace:
    """The four n <= 16 model fibres: s8, cp4, hp2, op2."""
    if name == "s8":
        rep = build_even_rep(8, 1, 1)
        fam = j_family(rep)
        block = {p: m[:8, :8] for p, m in fam.mats.items()}
        s = EvenCliffordStructure.from_matrices(8, 8, block)
        op, c = _calibrate(lambda cc: constant_curvature_op(8, cc), cc_scal(8, 8))
        return ModelSpace(
            "s8", 8, 8, s, op, c, cc_ricci(8, 8), cc_scal(8, 8), [c]
        )
    if name == "cp4":
        s = EvenCliffordStructure.from_rep(build_even_rep(6))
        kahler, _ = volume_endomorphism(s)
        op, c = _calibrate(
            lambda cc: fubini_study_op(4, cc, kahler)[0], cc_scal(8, 6)
        )
        return ModelSpace(
            "cp4",
            8,
            6,
            s,
            op,
            c,
            cc_ricci(8, 6),
            cc_scal(8, 6),
            [Fraction(0), c / 2, 5 * c / 2],
            {"kahler": kahler},
        )
    if name == "hp2":
        s = EvenCliffordStructure.from_rep(build_even_rep(5))
        triple = quaternion_units(2)
        op, c = _calibrate(
            lambda cc: quaternionic_op(2, cc, triple)[0], cc_scal(8, 5)
        )
        return ModelSpace(
            "hp2",
            8,
            5,
            s,
            op,
            c,
            cc_ricci(8, 5),
            cc_scal(8, 5),
            [Fraction(0), c, 2 * c],
            {"triple": triple},
        )
    if name == "op2":
        s = EvenCliffordStructure.from_rep(build_even_rep(9))
        scale = Fraction(s.n, 2)
        ideal = [s.family.mats[p] for p in s.pairs()]
        op = isotropy_projection_op([ideal], [scale])
        return ModelSpace(
            "op2",
            16,
            9,
            s,
            op,
            scale,
            cc_ricci(16, 9),
            cc_scal(16, 9),
            [Fraction(0), scale],
        )
    raise CurvatureError(f"unknown model {name!r}; available: s8, cp4, hp2, op2")


MODEL_NAMES = ("s8", "cp4", "hp2", "op2")
