"""Integer matrix representations of Cl_r and of its even subalgebra.

Generators are built from a fixed Kronecker-product scheme over 2x2 signed
permutation matrices, with a period-8 doubling step.  Every generator is a
skew-symmetric signed permutation matrix and the anticommutation relations
hold exactly over the integers.  The scheme itself is not part of the
contract; the invariants checked by ``MatrixRep.validate`` are.

The even algebra is handled through the isomorphism Cl0_r ~ Cl_{r-1} sending
e_1 . e_{i+1} to the i-th generator of Cl_{r-1}.  For r divisible by 4 the
represented volume e_1...e_r is arranged to be exactly diag(+I, -I) with
block multiplicities (m_plus, m_minus).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from . import linalg
from .blades import AlgebraSignature, CliffordElement, volume_element

DEFAULT_MAX_RANK = 16
HARD_MAX_RANK = 24

_BASE_DIMS = (2, 4, 4, 8, 8, 8, 8, 16)


class UnsupportedRankError(ValueError):
    """Requested rank outside the configured construction cap."""


class ParityError(ValueError):
    """Odd element fed to a representation of the even algebra."""


class RepresentationError(ValueError):
    """Inconsistent representation data."""


def max_rank() -> int:
    cap = int(os.environ.get("CLIFFLAB_MAX_RANK", DEFAULT_MAX_RANK))
    return min(cap, HARD_MAX_RANK)


def n_irr(r: int) -> int:
    """Dimension of an irreducible real representation of Cl_r."""
    if r < 1:
        raise ValueError(f"n_irr needs r >= 1, got {r}")
    if r <= 8:
        return _BASE_DIMS[r - 1]
    return 16 * n_irr(r - 8)


def n0(r: int) -> int:
    """Dimension of an irreducible real representation of Cl0_r."""
    if r < 2:
        raise ValueError(f"n0 needs r >= 2, got {r}")
    return n_irr(r - 1)


# -- generator construction --------------------------------------------------

_EPS = linalg.intmat([[0, -1], [1, 0]])
_TAU = linalg.intmat([[1, 0], [0, -1]])
_SIG = linalg.intmat([[0, 1], [1, 0]])
_I2 = linalg.eye(2)


def _kron(*ms: np.ndarray) -> np.ndarray:
    return reduce(np.kron, ms)


# Quaternion units acting on R^4 from the right; they commute with the
# rank-3 family below and obey B C = D.
_QUAT_B = _kron(_EPS, _I2)
_QUAT_C = _kron(_TAU, _EPS)
_QUAT_D = _kron(_SIG, _EPS)


def quaternion_units(q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right quaternion multiplications I, J, K on R^(4q) = H^q."""
    if q < 1:
        raise ValueError("q must be positive")
    iq = linalg.eye(q)
    return _kron(_QUAT_B, iq), _kron(_QUAT_C, iq), _kron(_QUAT_D, iq)


def _base_generators(r: int) -> list[np.ndarray]:
    if r <= 3:
        gens = [_kron(_EPS, _TAU), _kron(_EPS, _SIG), _kron(_I2, _EPS)]
        if r == 1:
            return [_EPS]
        return gens[:r]
    if r <= 7:
        a1, a2, a3 = _base_generators(3)
        gens = [
            _kron(a1, _TAU),
            _kron(a2, _TAU),
            _kron(a3, _TAU),
            _kron(linalg.eye(4), _EPS),
            _kron(_QUAT_B, _SIG),
            _kron(_QUAT_C, _SIG),
            _kron(_QUAT_D, _SIG),
        ]
        return gens[:r]
    if r == 8:
        prev = _base_generators(7)
        return [_kron(g, _TAU) for g in prev] + [_kron(linalg.eye(8), _EPS)]
    # Period-8 step: tensor the lower family with the Cl_8 volume and append
    # a fresh Cl_8 block.
    gamma = _base_generators(8)
    omega = reduce(np.matmul, gamma)
    prev = _base_generators(r - 8)
    n_prev = prev[0].shape[0]
    return [_kron(g, omega) for g in prev] + [_kron(linalg.eye(n_prev), g) for g in gamma]


def _generators_with_volume_sign(r: int, sign: int) -> list[np.ndarray]:
    """Irreducible Cl_r family whose central volume acts as sign * identity.

    Only meaningful for r = 3 mod 4, where the volume is a central involution.
    """
    assert r % 4 == 3
    gens = _base_generators(r)
    vol = reduce(np.matmul, gens)
    n = gens[0].shape[0]
    if np.array_equal(vol, sign * linalg.eye(n)):
        return gens
    assert np.array_equal(vol, -sign * linalg.eye(n))
    return gens[:-1] + [-gens[-1]]


def _block_diag(mats: list[np.ndarray]) -> np.ndarray:
    n = sum(m.shape[0] for m in mats)
    out = linalg.zeros(n)
    at = 0
    for m in mats:
        k = m.shape[0]
        out[at : at + k, at : at + k] = m
        at += k
    return out


@dataclass(frozen=True)
class MatrixRep:
    """A family of exact integer generator matrices.

    kind 'full': generators[i] represents e_{i+1} of Cl_rank.
    kind 'even': generators[i] represents e_1 . e_{i+2} inside Cl0_rank.
    """

    rank: int
    dim: int
    kind: str
    generators: tuple[np.ndarray, ...]
    volume_split: tuple[int, int] | None = None

    def validate(self) -> list[str]:
        """Check the structural invariants; returns a list of violations."""
        problems = []
        n = self.dim
        ident = linalg.eye(n)
        for idx, g in enumerate(self.generators):
            if g.shape != (n, n):
                problems.append(f"generator {idx} has shape {g.shape}")
                continue
            if not linalg.is_signed_permutation(g):
                problems.append(f"generator {idx} is not a signed permutation")
            if not linalg.is_skew(g):
                problems.append(f"generator {idx} is not skew-symmetric")
            if not linalg.is_orthogonal(g):
                problems.append(f"generator {idx} is not orthogonal")
        for i, gi in enumerate(self.generators):
            for j, gj in enumerate(self.generators):
                want = -2 * ident if i == j else linalg.zeros(n)
                if not np.array_equal(linalg.anticommutator(gi, gj), want):
                    problems.append(f"anticommutation fails at ({i}, {j})")
        return problems

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": 1,
                "rank": self.rank,
                "dim": self.dim,
                "kind": self.kind,
                "volume_split": list(self.volume_split) if self.volume_split else None,
                "generators": [g.reshape(-1).tolist() for g in self.generators],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "MatrixRep":
        data = json.loads(text)
        n = data["dim"]
        gens = tuple(
            linalg.intmat(np.array(flat, dtype=np.int64).reshape(n, n))
            for flat in data["generators"]
        )
        split = tuple(data["volume_split"]) if data.get("volume_split") else None
        return cls(data["rank"], n, data["kind"], gens, split)


def _check_rank_cap(r: int) -> None:
    cap = max_rank()
    if r > cap:
        raise UnsupportedRankError(
            f"rank {r} exceeds the configured cap {cap}"
            " (set CLIFFLAB_MAX_RANK to raise it, hard ceiling"
            f" {HARD_MAX_RANK})"
        )


def build_clifford_rep(r: int, copies: int = 1) -> MatrixRep:
    """Generators of Cl_r on R^(N(r) * copies), deterministic."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    if copies < 1:
        raise ValueError("copies must be at least 1")
    _check_rank_cap(r)
    base = _base_generators(r)
    assert base[0].shape[0] == n_irr(r)
    gens = tuple(_block_diag([g] * copies) for g in base)
    return MatrixRep(r, n_irr(r) * copies, "full", gens)


def _even_volume_factor_sign(r: int) -> int:
    """Sign s with f_1 f_2 ... f_{r-1} = s * e_1 ... e_r, f_i = e_1 e_{i+1}."""
    sig = AlgebraSignature(r)
    word = CliffordElement.scalar(sig, 1)
    for i in range(2, r + 1):
        word = word * CliffordElement.blade(sig, (1, i))
    vol = volume_element(sig)
    for sign in (1, -1):
        if word == vol.scale(sign):
            return sign
    raise AssertionError("even volume word is not proportional to the volume blade")


def build_even_rep(r: int, m_plus: int = 1, m_minus: int | None = None) -> MatrixRep:
    """Representation of Cl0_r via Cl_{r-1}; see module docstring.

    For r = 0 mod 4 the two multiplicities count the +1 and -1 eigenblocks of
    the represented volume.  Otherwise there is a single irreducible class
    and the multiplicities, if both given, must agree and mean plain copies.
    """
    if r < 2:
        raise ValueError("even representations need rank at least 2")
    _check_rank_cap(r)
    q = r - 1
    if r % 4 == 0:
        if m_minus is None:
            m_minus = m_plus
        if m_plus < 0 or m_minus < 0 or m_plus + m_minus < 1:
            raise RepresentationError("need m_plus + m_minus >= 1")
        s = _even_volume_factor_sign(r)
        plus_family = _generators_with_volume_sign(q, s)
        minus_family = _generators_with_volume_sign(q, -s)
        gens = tuple(
            _block_diag([plus_family[i]] * m_plus + [minus_family[i]] * m_minus)
            for i in range(q)
        )
        return MatrixRep(r, n0(r) * (m_plus + m_minus), "even", gens, (m_plus, m_minus))
    if m_minus is not None and m_minus != m_plus:
        raise RepresentationError(
            "for rank not divisible by 4 there is a single irreducible class;"
            " the two multiplicities must be equal"
        )
    copies = m_plus
    if copies < 1:
        raise RepresentationError("need at least one copy")
    base = _base_generators(q)
    gens = tuple(_block_diag([g] * copies) for g in base)
    return MatrixRep(r, n0(r) * copies, "even", gens)


# -- evaluation --------------------------------------------------------------


def _even_to_generator_word(x: CliffordElement) -> CliffordElement:
    """Rewrite an even element of Cl_r in the generators f_i = e_1 e_{i+1}.

    Returns the corresponding element of Cl_{r-1} (f_i maps to its i-th
    generator): e_1 e_j -> f_{j-1} and e_i e_j -> f_{i-1} f_{j-1} for i > 1.
    """
    r = x.signature.rank
    low = AlgebraSignature(r - 1)
    out = CliffordElement.zero(low)
    for indices, coeff in x.items():
        term = CliffordElement.scalar(low, coeff)
        for k in range(0, len(indices), 2):
            a, b = indices[k], indices[k + 1]
            if a == 1:
                pair = CliffordElement.blade(low, (b - 1,))
            else:
                pair = CliffordElement.blade(low, (a - 1, b - 1))
            term = term * pair
        out = out + term
    return out


def _evaluate_word(generators, x: CliffordElement) -> np.ndarray:
    n = generators[0].shape[0]
    acc_int = linalg.zeros(n)
    acc_frac: dict[tuple[int, int], Fraction] = {}
    exact = True
    for indices, coeff in x.items():
        mat = linalg.eye(n)
        for i in indices:
            mat = linalg.imatmul(mat, generators[i - 1])
        if coeff.denominator == 1:
            acc_int += int(coeff) * mat
        else:
            exact = False
            for (a, b) in zip(*np.nonzero(mat)):
                key = (int(a), int(b))
                acc_frac[key] = acc_frac.get(key, Fraction(0)) + coeff * int(mat[a, b])
    if exact:
        return acc_int
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            out[a, b] = Fraction(int(acc_int[a, b])) + acc_frac.get((a, b), Fraction(0))
    return out


def evaluate(rep: MatrixRep, x: CliffordElement) -> np.ndarray:
    """Algebra morphism: blades map to products of generator matrices."""
    if x.signature.rank != rep.rank:
        raise RepresentationError(
            f"element has rank {x.signature.rank}, representation has {rep.rank}"
        )
    if rep.kind == "full":
        return _evaluate_word(rep.generators, x)
    if not x.is_even():
        raise ParityError("representation of the even algebra cannot act on odd elements")
    word = _even_to_generator_word(x)
    return _evaluate_word(rep.generators, word)


@dataclass(frozen=True)
class JFamily:
    """The skew endomorphisms J_ij = phi(e_i . e_j), 1 <= i < j <= r.

    Extended by J_ji = -J_ij and J_ii = -identity.
    """

    n: int
    r: int
    mats: dict = field(repr=False)

    def j(self, i: int, j: int) -> np.ndarray:
        if i == j:
            return -linalg.eye(self.n)
        if i < j:
            return self.mats[(i, j)]
        return -self.mats[(j, i)]

    def pairs(self):
        return sorted(self.mats)

    def span_dimension(self) -> int:
        rows = [linalg.skew_to_coords(self.mats[p]).tolist() for p in self.pairs()]
        return linalg.rank(linalg.to_fractions(rows))


def j_family(rep: MatrixRep) -> JFamily:
    r = rep.rank
    mats = {}
    if rep.kind == "full":
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                mats[(i, j)] = linalg.imatmul(rep.generators[i - 1], rep.generators[j - 1])
    else:
        for j in range(2, r + 1):
            mats[(1, j)] = rep.generators[j - 2]
        for i in range(2, r + 1):
            for j in range(i + 1, r + 1):
                mats[(i, j)] = linalg.imatmul(rep.generators[i - 2], rep.generators[j - 2])
    return JFamily(rep.dim, r, mats)


# -- triality ----------------------------------------------------------------


@dataclass(frozen=True)
class TrialityCertificate:
    """The so(8) automorphism carrying half-spin data to vector data.

    map_matrix acts on coordinates of skew 8x8 matrices (see linalg) and is
    defined by sending half of each plus-block J_ij to the elementary
    rotation with the same labels.  The certificate records that the
    defining system was invertible and that all basis brackets are
    preserved, and it carries the pulled-back family: the images of the
    doubled elementary rotations, i.e. of the generators e_a . e_b of the
    even algebra over the half-spin bundle.  That family is again a Clifford
    family, now acting on the vector representation; this is the content of
    triality and is not true for a generic linear map.
    """

    map_matrix: list
    bijective: bool
    brackets_checked: int
    brackets_exact: bool
    spin_family: JFamily
    pulled_back: JFamily

    def apply(self, skew: np.ndarray) -> np.ndarray:
        v = [Fraction(int(x)) if not isinstance(x, Fraction) else x
             for x in linalg.skew_to_coords(skew)]
        w = [sum(row[k] * v[k] for k in range(len(v))) for row in self.map_matrix]
        return linalg.coords_to_skew(np.array(w, dtype=object), 8)


def triality_map() -> TrialityCertificate:
    rep = build_even_rep(8, 1, 1)
    fam = j_family(rep)
    vol = evaluate(rep, volume_element(AlgebraSignature(8)))
    assert np.array_equal(vol, _block_diag([linalg.eye(8), -linalg.eye(8)]))

    plus = {(i, j): m[:8, :8] for (i, j), m in fam.mats.items()}

    pairs = sorted(plus)
    # Columns: coordinates of (1/2) J+_ij; target: elementary rotations.
    cols = [linalg.skew_to_coords(plus[p]) for p in pairs]
    b = [[Fraction(int(cols[c][rw]), 2) for c in range(28)] for rw in range(28)]
    try:
        m_phi = linalg.inverse(b)
        bijective = True
    except ValueError:
        raise RepresentationError("triality system is singular; construction broken")

    def apply_int(mat: np.ndarray) -> list[Fraction]:
        v = linalg.skew_to_coords(mat)
        return [sum(row[k] * int(v[k]) for k in range(28)) for row in m_phi]

    # Bracket preservation on all basis pairs.
    checked = 0
    exact = True
    rotations = {
        (i, j): linalg.elementary_rotation(i - 1, j - 1, 8) for (i, j) in pairs
    }
    for x in range(len(pairs)):
        for y in range(x + 1, len(pairs)):
            pi, pj = pairs[x], pairs[y]
            lhs_coords = apply_int(linalg.commutator(plus[pi], plus[pj]))
            # [J/2, J'/2] = [J, J']/4.
            lhs_coords = [c / 4 for c in lhs_coords]
            rhs = linalg.commutator(rotations[pi], rotations[pj])
            rhs_coords = [Fraction(int(t)) for t in linalg.skew_to_coords(rhs)]
            checked += 1
            if lhs_coords != rhs_coords:
                exact = False

    pulled = {}
    for (i, j) in pairs:
        w = [2 * c for c in apply_int(linalg.elementary_rotation(i - 1, j - 1, 8))]
        if all(x.denominator == 1 for x in w):
            arr = linalg.coords_to_skew(np.array([int(x) for x in w], dtype=np.int64), 8)
        else:
            arr = linalg.coords_to_skew(np.array(w, dtype=object), 8)
        pulled[(i, j)] = arr

    return TrialityCertificate(
        map_matrix=m_phi,
        bijective=bijective,
        brackets_checked=checked,
        brackets_exact=exact,
        spin_family=JFamily(8, 8, plus),
        pulled_back=JFamily(8, 8, pulled),
    )
