"""Verification of even Clifford structures on a fixed fibre.

An even Clifford structure of rank r on R^n is held as the family of skew
endomorphisms J_ij = phi(e_i . e_j).  This module checks the defining
relations and trace orthogonality, forms the volume endomorphism, performs
the rank-4 splitting into two quaternionic blocks, extends rank 3 mod 4
structures to full Clifford families via the Hodge dual, and implements the
universality criterion deciding when a linear map on 2-forms extends to a
morphism of the whole even algebra.

Everything is exact; a residual is reported as the largest absolute entry of
the violated identity.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .blades import AlgebraSignature, CliffordElement, hodge_dual_element, volume_element, volume_square_sign
from .reps import JFamily, MatrixRep, UnsupportedRankError, evaluate, j_family


class StructureError(ValueError):
    pass


class VolumeError(ValueError):
    """The volume endomorphism is not computable from the given data."""


class ExtensionRejected(ValueError):
    """A 2-form map failed the extension criterion; carries a witness triple."""

    def __init__(self, witness: tuple[int, int, int], message: str):
        super().__init__(message)
        self.witness = witness


def _max_abs(m: np.ndarray) -> str:
    if m.dtype == np.int64:
        return str(int(np.abs(m).max(initial=0)))
    worst = max((abs(Fraction(x)) for x in m.reshape(-1)), default=Fraction(0))
    return str(worst)


def _is_zero(m: np.ndarray) -> bool:
    if m.dtype == np.int64:
        return not m.any()
    return all(Fraction(x) == 0 for x in m.reshape(-1))


@dataclass
class Failure:
    identity: str
    indices: tuple
    residual: str

    def to_dict(self) -> dict:
        return {"identity": self.identity, "indices": list(self.indices), "residual": self.residual}


@dataclass
class VerificationReport:
    suite: str
    passed: bool
    failures: list[Failure] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class EvenCliffordStructure:
    """A J-family on R^n, optionally backed by the representation built it.

    The container stores J_ij for i < j only; J_ji = -J_ij and J_ii = -id
    hold by construction, so the verification suites check the remaining
    content: skewness, unit squares, shared-index composition, disjoint
    commutation, and trace orthogonality.  Each J_ij with unit square has
    trace pairing <J_ij, J_ij> = -n automatically.
    """

    def __init__(self, n: int, r: int, family: JFamily, rep: MatrixRep | None = None):
        if family.n != n or family.r != r:
            raise StructureError("family shape disagrees with declared (n, r)")
        self.n = n
        self.r = r
        self.family = family
        self.rep = rep

    @classmethod
    def from_rep(cls, rep: MatrixRep) -> "EvenCliffordStructure":
        fam = j_family(rep)
        return cls(rep.dim, rep.rank, fam, rep)

    @classmethod
    def from_matrices(cls, n: int, r: int, mats: Mapping[tuple[int, int], np.ndarray]) -> "EvenCliffordStructure":
        clean = {}
        for (i, j), m in mats.items():
            if not 1 <= i < j <= r:
                raise StructureError(f"family keys must satisfy 1 <= i < j <= r, got {(i, j)}")
            arr = np.asarray(m)
            if arr.shape != (n, n):
                raise StructureError(f"J_{i}{j} has shape {arr.shape}, expected {(n, n)}")
            clean[(i, j)] = arr
        expected = {(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)}
        if set(clean) != expected:
            raise StructureError("family must contain exactly the pairs i < j")
        return cls(n, r, JFamily(n, r, clean))

    def j(self, i: int, j: int) -> np.ndarray:
        return self.family.j(i, j)

    def pairs(self) -> list[tuple[int, int]]:
        return self.family.pairs()

    # -- serialization --------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": 1,
                "n": self.n,
                "r": self.r,
                "J": [
                    {"i": i, "j": j, "matrix": self.family.mats[(i, j)].reshape(-1).tolist()}
                    for (i, j) in self.pairs()
                ],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "EvenCliffordStructure":
        data = json.loads(text)
        if "generators" in data:
            return cls.from_rep(MatrixRep.from_json(text))
        n = data["n"]
        mats = {
            (t["i"], t["j"]): np.array(t["matrix"], dtype=np.int64).reshape(n, n)
            for t in data["J"]
        }
        return cls.from_matrices(n, data["r"], mats)


def verify_relations(s: EvenCliffordStructure) -> VerificationReport:
    """Exact check of the Clifford relations of the family.

    Integer families run through batched float64 products; every value in
    sight is an integer far below 2^53, where float64 arithmetic is exact.
    """
    failures = _verify_relations_signed_perm(s)
    if failures is None:
        if s.j(1, 2).dtype == np.int64 and int(np.abs(s.j(1, 2)).max(initial=0)) < 2**20:
            failures = _verify_relations_int(s)
        else:
            failures = _verify_relations_generic(s)
    return VerificationReport("relations", not failures, failures)


def _signed_perm_parts(m: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Column form of a signed permutation: m e_j = s[j] e_{p[j]}."""
    if m.dtype != np.int64 or not linalg.is_signed_permutation(m):
        return None
    p = np.abs(m).argmax(axis=0)
    s = m[p, np.arange(m.shape[0])]
    return p, s


def _verify_relations_signed_perm(s: EvenCliffordStructure) -> list[Failure] | None:
    """O(n) per check when every family matrix is a signed permutation.

    Returns None when the fast representation does not apply; composition of
    column forms is exact integer arithmetic throughout.
    """
    n, r = s.n, s.r
    parts = {}
    for (i, j) in s.pairs():
        sp = _signed_perm_parts(s.family.mats[(i, j)])
        if sp is None:
            return None
        parts[(i, j)] = sp
    for (i, j) in list(parts):
        p, sg = parts[(i, j)]
        parts[(j, i)] = (p, -sg)

    def compose(a, b):
        pa, sa = a
        pb, sb = b
        return pa[pb], sb * sa[pb]

    def equal(a, b):
        return np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    failures = []
    idx = np.arange(n)

    def dense(a):
        out = np.zeros((n, n), dtype=np.int64)
        out[a[0], idx] = a[1]
        return out

    def residual(a, b) -> str:
        return str(int(np.abs(dense(a) - dense(b)).max()))

    for (i, j) in s.pairs():
        m = s.family.mats[(i, j)]
        res = m + m.T
        if res.any():
            failures.append(Failure("skew_symmetry", (i, j), str(int(np.abs(res).max()))))
        sq = compose(parts[(i, j)], parts[(i, j)])
        if not (np.array_equal(sq[0], idx) and (sq[1] == -1).all()):
            failures.append(Failure("unit_square", (i, j), residual(sq, (idx, -np.ones(n, dtype=np.int64)))))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            for k in range(1, r + 1):
                if len({i, j, k}) < 3:
                    continue
                got = compose(parts[(i, j)], parts[(i, k)])
                if not equal(got, parts[(j, k)]):
                    failures.append(
                        Failure("shared_index_composition", (i, j, k), residual(got, parts[(j, k)]))
                    )
    for (i, j) in s.pairs():
        for (k, l) in s.pairs():
            if (i, j) < (k, l) and len({i, j, k, l}) == 4:
                ab = compose(parts[(i, j)], parts[(k, l)])
                ba = compose(parts[(k, l)], parts[(i, j)])
                if not equal(ab, ba):
                    failures.append(Failure("disjoint_commutation", (i, j, k, l), residual(ab, ba)))
    return failures


def _verify_relations_int(s: EvenCliffordStructure) -> list[Failure]:
    n, r = s.n, s.r
    pairs = s.pairs()
    order = [(i, j) for i in range(1, r + 1) for j in range(1, r + 1) if i != j]
    pos = {p: t for t, p in enumerate(order)}
    stack_int = np.stack([s.j(i, j) for (i, j) in order])
    stack = stack_int.astype(np.float64)
    ident = np.eye(n)
    failures = []

    for (i, j) in pairs:
        m = stack_int[pos[(i, j)]]
        res = m + m.T
        if res.any():
            failures.append(Failure("skew_symmetry", (i, j), str(int(np.abs(res).max()))))
    sub = stack[[pos[p] for p in pairs]]
    squares = np.matmul(sub, sub) + ident
    for t, (i, j) in enumerate(pairs):
        if squares[t].any():
            failures.append(Failure("unit_square", (i, j), str(int(np.abs(squares[t]).max()))))

    for i in range(1, r + 1):
        js = [j for j in range(1, r + 1) if j != i]
        f = stack[[pos[(i, j)] for j in js]]
        prod = np.matmul(f[:, None], f[None, :])
        for a, j in enumerate(js):
            for b, k in enumerate(js):
                if j == k:
                    continue
                res = prod[a, b] - stack[pos[(j, k)]]
                if res.any():
                    failures.append(
                        Failure("shared_index_composition", (i, j, k), str(int(np.abs(res).max())))
                    )

    for t, (i, j) in enumerate(pairs):
        others = [u for u, (k, l) in enumerate(pairs) if u > t and len({i, j, k, l}) == 4]
        if not others:
            continue
        rest = sub[others]
        diff = np.matmul(sub[t], rest) - np.matmul(rest, sub[t])
        for slot, u in enumerate(others):
            if diff[slot].any():
                failures.append(
                    Failure(
                        "disjoint_commutation",
                        (i, j) + pairs[u],
                        str(int(np.abs(diff[slot]).max())),
                    )
                )
    return failures


def _verify_relations_generic(s: EvenCliffordStructure) -> list[Failure]:
    n = s.n
    ident = np.array(
        [[Fraction(int(x)) for x in row] for row in linalg.eye(n)], dtype=object
    )
    failures = []
    ext = {}
    for i in range(1, s.r + 1):
        for j in range(1, s.r + 1):
            if i != j:
                ext[(i, j)] = s.j(i, j)
    for (i, j) in s.pairs():
        m = ext[(i, j)]
        if not _is_zero(m + m.T):
            failures.append(Failure("skew_symmetry", (i, j), _max_abs(m + m.T)))
        res = linalg.mm(m, m) + ident
        if not _is_zero(res):
            failures.append(Failure("unit_square", (i, j), _max_abs(res)))
    for i in range(1, s.r + 1):
        for j in range(1, s.r + 1):
            for k in range(1, s.r + 1):
                if len({i, j, k}) < 3:
                    continue
                res = linalg.mm(ext[(i, j)], ext[(i, k)]) - ext[(j, k)]
                if not _is_zero(res):
                    failures.append(Failure("shared_index_composition", (i, j, k), _max_abs(res)))
    for (i, j) in s.pairs():
        for (k, l) in s.pairs():
            if (i, j) < (k, l) and len({i, j, k, l}) == 4:
                res = linalg.commutator(ext[(i, j)], ext[(k, l)])
                if not _is_zero(res):
                    failures.append(Failure("disjoint_commutation", (i, j, k, l), _max_abs(res)))
    return failures


def verify_orthogonality(s: EvenCliffordStructure) -> VerificationReport:
    """Trace pairings <J_ij, J_kl> that the structure forces to vanish.

    Pairs sharing exactly one index anticommute, so their pairing vanishes
    for every rank.  Pairings of disjoint index pairs vanish for r != 4; for
    r = 4 they are reported as data without being asserted.
    """
    failures = []
    pairings = {}
    for (i, j) in s.pairs():
        for (k, l) in s.pairs():
            if (i, j) >= (k, l):
                continue
            shared = len({i, j} & {k, l})
            if shared == 1:
                t = _trace_pairing(s.j(i, j), s.j(k, l))
                if t != 0:
                    failures.append(Failure("shared_index_orthogonality", (i, j, k, l), str(t)))
            elif shared == 0:
                t = _trace_pairing(s.j(i, j), s.j(k, l))
                if s.r == 4:
                    pairings[f"({i},{j}),({k},{l})"] = str(t)
                elif t != 0:
                    failures.append(Failure("disjoint_orthogonality", (i, j, k, l), str(t)))
    data = {"pairings": pairings} if s.r == 4 else {}
    return VerificationReport("orthogonality", not failures, failures, data)


def _trace_pairing(a: np.ndarray, b: np.ndarray):
    if a.dtype == np.int64 and b.dtype == np.int64:
        return linalg.trace_product(a, b)
    return sum(Fraction(x) for x in (a * b.T).reshape(-1))


def volume_endomorphism(s: EvenCliffordStructure) -> tuple[np.ndarray, dict]:
    """Image of the volume element, with its square sign and commutation data.

    For even rank the volume is the product of the disjoint J_12 J_34 ...;
    for odd rank it is odd, so a backing representation of the full algebra
    is required.
    """
    if s.r % 2 == 0:
        v = s.j(1, 2)
        for i in range(3, s.r, 2):
            v = linalg.mm(v, s.j(i, i + 1))
    else:
        if s.rep is None or s.rep.kind != "full":
            raise VolumeError(
                "odd-rank volume is an odd element; it needs a backing"
                " representation of the full Clifford algebra"
            )
        v = evaluate(s.rep, volume_element(AlgebraSignature(s.r)))
    sq = linalg.mm(v, v)
    expected_sign = volume_square_sign(s.r)
    n = s.n
    ident = linalg.eye(n)
    report = {
        "square_sign": expected_sign,
        "square_matches": _is_zero(sq - expected_sign * ident),
        "commutes_with_family": all(
            _is_zero(linalg.commutator(v, s.j(i, j))) for (i, j) in s.pairs()
        ),
    }
    if s.rep is not None and s.rep.kind == "full":
        sign = -1 if s.r % 2 == 0 else 1
        report["generator_commutation_sign"] = sign
        report["generator_commutation_matches"] = all(
            np.array_equal(linalg.mm(v, g), sign * linalg.mm(g, v)) for g in s.rep.generators
        )
    return v, report


# -- rank 4 splitting ---------------------------------------------------------


@dataclass
class SplitResult:
    p_plus: np.ndarray
    p_minus: np.ndarray
    frames_plus: tuple[np.ndarray, np.ndarray, np.ndarray]
    frames_minus: tuple[np.ndarray, np.ndarray, np.ndarray]
    j_plus: dict
    j_minus: dict
    report: VerificationReport


def _to_object(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return m
    return np.array([[Fraction(int(x)) for x in row] for row in m], dtype=object)


def split_rank4(s: EvenCliffordStructure) -> SplitResult:
    """Split a rank-4 structure along the volume involution.

    Builds the projectors on the +-1 eigenspaces of v = J_12 J_34, the two
    derived frames

        f+-_1 = (J_12 +- J_34)/2,  f+-_2 = (J_13 -+ J_24)/2,  f+-_3 = (J_14 +- J_23)/2,

    and the rank-3 families J+-_ab = f+-_a f+-_b.  Checks, exactly: the
    closed forms J+-_12 = +-(J_14 +- J_23)/2, J+-_31 = +-(J_13 -+ J_24)/2,
    J+-_23 = +-(J_12 +- J_34)/2; that each family annihilates its own
    eigenspace; the quaternion relations on the opposite eigenspace; and the
    commutation of the plus family with the minus family.
    """
    if s.r != 4:
        raise StructureError("splitting is defined for rank 4 only")
    v, vol_report = volume_endomorphism(s)
    n = s.n
    if not _is_zero(linalg.mm(v, v) - linalg.eye(n)):
        raise StructureError("volume endomorphism is not an involution")

    vq = _to_object(v)
    iq = _to_object(linalg.eye(n))
    p_plus = (iq + vq) * Fraction(1, 2)
    p_minus = (iq - vq) * Fraction(1, 2)

    j12, j13, j14 = _to_object(s.j(1, 2)), _to_object(s.j(1, 3)), _to_object(s.j(1, 4))
    j23, j24, j34 = _to_object(s.j(2, 3)), _to_object(s.j(2, 4)), _to_object(s.j(3, 4))

    frames = {}
    for sign in (1, -1):
        frames[sign] = (
            (j12 + sign * j34) * Fraction(1, 2),
            (j13 - sign * j24) * Fraction(1, 2),
            (j14 + sign * j23) * Fraction(1, 2),
        )

    failures = []

    def check(name, indices, residual_matrix):
        if not _is_zero(residual_matrix):
            failures.append(Failure(name, indices, _max_abs(residual_matrix)))

    fams = {}
    for sign, tag in ((1, "+"), (-1, "-")):
        f1, f2, f3 = frames[sign]
        fam = {
            (1, 2): f1 @ f2,
            (2, 3): f2 @ f3,
            (3, 1): f3 @ f1,
            (1, 3): -(f3 @ f1),
            (2, 1): -(f1 @ f2),
            (3, 2): -(f2 @ f3),
        }
        fams[sign] = fam
        half = Fraction(sign, 2)
        closed = {
            (1, 2): (j14 + sign * j23) * half,
            (3, 1): (j13 - sign * j24) * half,
            (2, 3): (j12 + sign * j34) * half,
        }
        for key, want in closed.items():
            check(f"closed_form_{tag}", key, fam[key] - want)
        own = p_plus if sign == 1 else p_minus
        opposite = p_minus if sign == 1 else p_plus
        for key in ((1, 2), (2, 3), (3, 1)):
            check(f"annihilates_own_block_{tag}", key, fam[key] @ own)
        # quaternion relations restricted to the opposite eigenspace
        i_m, j_m, k_m = fam[(1, 2)], fam[(2, 3)], fam[(3, 1)]
        check(f"square_{tag}", (1, 2), (i_m @ i_m + iq) @ opposite)
        check(f"square_{tag}", (2, 3), (j_m @ j_m + iq) @ opposite)
        check(f"square_{tag}", (3, 1), (k_m @ k_m + iq) @ opposite)
        check(f"product_{tag}", (1, 2, 2, 3), (i_m @ j_m - k_m) @ opposite)
        check(f"product_{tag}", (2, 3, 3, 1), (j_m @ k_m - i_m) @ opposite)
        check(f"product_{tag}", (3, 1, 1, 2), (k_m @ i_m - j_m) @ opposite)

    for a in ((1, 2), (2, 3), (3, 1)):
        for b in ((1, 2), (2, 3), (3, 1)):
            check("cross_family_commutation", a + b, linalg.commutator(fams[1][a], fams[-1][b]))

    report = VerificationReport(
        "rank4_split", not failures, failures, {"volume": vol_report}
    )
    return SplitResult(
        p_plus,
        p_minus,
        frames[1],
        frames[-1],
        {k: v_ for k, v_ in fams[1].items() if k in ((1, 2), (2, 3), (3, 1))},
        {k: v_ for k, v_ in fams[-1].items() if k in ((1, 2), (2, 3), (3, 1))},
        report,
    )


# -- Hodge extension ----------------------------------------------------------


def extend_hodge(s: EvenCliffordStructure) -> list[np.ndarray]:
    """Extend a rank 3 mod 4 even structure to a full Clifford family.

    K_i is the image of the Hodge dual of e_i, a product of (r-1)/2 mutually
    commuting skew endomorphisms, hence skew.  For other ranks the duals
    square to +1 instead of -1 and no extension of this kind exists, so the
    request is refused.
    """
    if s.r % 4 != 3:
        raise UnsupportedRankError(
            f"rank {s.r}: the grade r-1 duals square to +1 unless r = 3 mod 4;"
            " no Hodge extension exists"
        )
    if s.rep is None:
        raise StructureError("Hodge extension needs a backing representation")
    sig = AlgebraSignature(s.r)
    ks = [evaluate(s.rep, hodge_dual_element(i, sig)) for i in range(1, s.r + 1)]
    n = s.n
    ident = linalg.eye(n)
    for a, ka in enumerate(ks):
        if not _is_zero(ka + ka.T):
            raise StructureError(f"Hodge dual image {a + 1} is not skew")
        for b, kb in enumerate(ks):
            want = -2 * ident if a == b else linalg.zeros(n)
            if not _is_zero(linalg.mm(ka, kb) + linalg.mm(kb, ka) - want):
                raise StructureError(f"extension fails anticommutation at ({a + 1}, {b + 1})")
    return ks


# -- universality -------------------------------------------------------------


class EvenAlgebraMorphism:
    """Algebra morphism Cl0_k -> matrices, built from images of 2-forms.

    Blades map to products of sigma matrices, where sigma_ij is the image of
    the Clifford product e_i . e_j (so sigma_ii = -identity).
    """

    def __init__(self, k: int, n: int, sigma: dict):
        self.k = k
        self.n = n
        self._sigma = sigma

    def on_blade(self, indices: Sequence[int]) -> np.ndarray:
        if len(indices) % 2:
            raise StructureError("morphism of the even algebra: blades must be even")
        out = linalg.eye(self.n)
        for t in range(0, len(indices), 2):
            out = linalg.mm(out, self._sigma[(indices[t], indices[t + 1])])
        return out

    def __call__(self, x: CliffordElement) -> np.ndarray:
        if x.signature.rank != self.k:
            raise StructureError("element rank disagrees with morphism domain")
        if not x.is_even():
            raise StructureError("morphism is defined on the even algebra only")
        n = self.n
        acc = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
        for indices, coeff in x.items():
            acc = acc + coeff * _to_object(self.on_blade(indices))
        if all(Fraction(v).denominator == 1 for v in acc.reshape(-1)):
            return np.array([[int(v) for v in row] for row in acc], dtype=np.int64)
        return acc


def universal_extension(
    phi: Mapping[tuple[int, int], np.ndarray],
    k: int,
    n: int | None = None,
    random_checks: int = 256,
    seed: int = 0,
) -> EvenAlgebraMorphism:
    """Extend a linear map on 2-forms to the even Clifford algebra, or reject.

    The criterion is checked on every frame triple (u = e_i; v = e_j, w = e_l
    with j, l distinct from i):

        phi(e_i ^ e_j) phi(e_i ^ e_l) = phi(e_j ^ e_l) - <e_j, e_l> id.

    Degree counting makes the frame cases decisive; a seeded batch of random
    rational triples is checked as well, through the polarized two-sided
    forms valid for arbitrary vectors.  Rejection carries the first
    witnessing triple.  After acceptance the morphism is returned; once the
    criterion holds, multiplicativity is forced, and tests exercise it on
    random pairs separately.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k < 2:
        if n is None:
            raise ValueError("for k < 2 the target dimension n is required")
        return EvenAlgebraMorphism(k, n, {})

    mats = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if (i, j) not in phi:
                raise StructureError(f"phi must provide every pair i < j; missing {(i, j)}")
            mats[(i, j)] = np.asarray(phi[(i, j)])
    if n is None:
        n = mats[(1, 2)].shape[0]
    ident = linalg.eye(n)

    def phi_of(i: int, j: int) -> np.ndarray:
        if i == j:
            return linalg.zeros(n)
        return mats[(i, j)] if i < j else -mats[(j, i)]

    def sigma_of(i: int, j: int) -> np.ndarray:
        return phi_of(i, j) - (ident if i == j else 0)

    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if j == i:
                continue
            for l in range(1, k + 1):
                if l == i:
                    continue
                want = phi_of(j, l) - (ident if j == l else 0)
                if not _is_zero(linalg.mm(phi_of(i, j), phi_of(i, l)) - want):
                    raise ExtensionRejected(
                        (i, j, l),
                        f"extension criterion fails at u=e_{i}, v=e_{j}, w=e_{l}",
                    )

    # Belt and braces: polarized identities on random rational triples.  Both
    # identities are homogeneous in u, v, w separately, so denominators can
    # be cleared and the sweep run over integer vectors exactly.
    rng = random.Random(seed)
    sigma = {(i, j): sigma_of(i, j) for i in range(1, k + 1) for j in range(1, k + 1)}
    if all(sigma[key].dtype == np.int64 for key in sigma):
        tensor = np.array(
            [[sigma[(i + 1, j + 1)] for j in range(k)] for i in range(k)], dtype=np.int64
        )

        def sigma_vec(u, v):
            return np.einsum("i,j,ijab->ab", u, v, tensor)

        def rand_vec():
            return np.array([rng.randint(-6, 6) for _ in range(k)], dtype=np.int64)

        for _ in range(random_checks):
            u, v, w = rand_vec(), rand_vec(), rand_vec()
            h_uv = int(u @ v)
            h_uu = int(u @ u)
            if (sigma_vec(u, v) + sigma_vec(v, u) + 2 * h_uv * ident).any():
                raise ExtensionRejected((0, 0, 0), "polarized symmetry identity fails")
            lhs = linalg.imatmul(sigma_vec(v, u), sigma_vec(u, w)) + h_uu * sigma_vec(v, w)
            if lhs.any():
                raise ExtensionRejected((0, 0, 0), "polarized composition identity fails")

    return EvenAlgebraMorphism(k, n, sigma)


def lambda2_restriction(rep: MatrixRep) -> dict:
    """The images of the basis 2-forms under a representation."""
    fam = j_family(rep)
    return {p: fam.mats[p] for p in fam.pairs()}
