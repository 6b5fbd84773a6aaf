"""Matrix-class descriptors: membership tests, samplers, enumerators,
and group-structure probes.

A class descriptor is an immutable value carrying the structural
parameters (partition, permutation, sign pattern, bounds, rank, ...).
Membership is a structural predicate with tolerance; samplers draw
members from an explicit generator stream, so parallel callers split
streams deterministically; the two genuinely finite kinds (vertex
diagonals and explicit lists) can be enumerated exactly.

Sampler distributions: diagonal magnitudes are log-uniform on
[1e-3, 1e3] to stress scale separation; dense symmetric positive
definite draws use ``B^T B + 1e-8 I`` with Gaussian ``B``; positive
low-rank draws sum rank-one outer products of entrywise-positive
vectors with entries uniform on (0.1, 10).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import BinaryOp
from .errors import (
    DimensionMismatchError,
    InfiniteClassError,
    NotThetaOrderedError,
)
from .linalg import as_square_matrix, is_positive_definite

__all__ = [
    "ClassKind",
    "Partition",
    "MatrixClass",
    "symmetric",
    "spd",
    "alpha_block_spd",
    "diag",
    "pos_diag",
    "sign_diag",
    "alpha_scalar",
    "pos_alpha_scalar",
    "theta_ordered",
    "box_diag",
    "vertex_diag",
    "rank_k_positive",
    "sum_rank_one_positive",
    "parametric_rank_one",
    "explicit_list",
    "contains",
    "sample",
    "sample_batch",
    "enumerate_members",
    "identity_element",
    "ClosureReport",
    "closure_probe",
    "chain_memberships",
    "theta_ratios",
]

#: Singular values below this fraction of the largest count as zero in
#: rank decisions.
RANK_TOL = 1e-9

_LOG_RANGE = (-3.0, 3.0)


class ClassKind(enum.Enum):
    SYMMETRIC = "symmetric"
    SPD = "spd"
    ALPHA_BLOCK_SPD = "alpha_block_spd"
    DIAG = "diag"
    POS_DIAG = "pos_diag"
    SIGN_DIAG = "sign_diag"
    ALPHA_SCALAR = "alpha_scalar"
    POS_ALPHA_SCALAR = "pos_alpha_scalar"
    THETA_ORDERED = "theta_ordered"
    BOX_DIAG = "box_diag"
    VERTEX_DIAG = "vertex_diag"
    RANK_K_POSITIVE = "rank_k_positive"
    SUM_RANK_ONE_POSITIVE = "sum_rank_one_positive"
    PARAMETRIC_RANK_ONE = "parametric_rank_one"
    EXPLICIT_LIST = "explicit_list"


_DIAGONAL_KINDS = frozenset(
    {
        ClassKind.DIAG,
        ClassKind.POS_DIAG,
        ClassKind.SIGN_DIAG,
        ClassKind.ALPHA_SCALAR,
        ClassKind.POS_ALPHA_SCALAR,
        ClassKind.THETA_ORDERED,
        ClassKind.BOX_DIAG,
        ClassKind.VERTEX_DIAG,
    }
)


@dataclass(frozen=True)
class Partition:
    """Ordered list of disjoint contiguous index blocks covering 0..n-1."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [i for block in self.blocks for i in block]
        if not flat:
            raise ValueError("partition must be nonempty")
        if flat != list(range(len(flat))):
            raise ValueError(
                "blocks must be contiguous, disjoint, and cover 0..n-1 in order"
            )

    @classmethod
    def from_sizes(cls, sizes) -> "Partition":
        blocks = []
        start = 0
        for s in sizes:
            blocks.append(tuple(range(start, start + s)))
            start += s
        return cls(tuple(blocks))

    @property
    def order(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self, i: int) -> int:
        for k, block in enumerate(self.blocks):
            if i in block:
                return k
        raise IndexError(i)


@dataclass(frozen=True)
class MatrixClass:
    kind: ClassKind
    order: int
    partition: Partition | None = None
    theta: tuple[int, ...] | None = None
    signs: tuple[int, ...] | None = None
    lo: tuple[float, ...] | None = None
    hi: tuple[float, ...] | None = None
    rank: int | None = None
    x: tuple[float, ...] | None = None
    y: tuple[float, ...] | None = None
    tau: tuple[float, float] | None = None
    members: tuple | None = None

    @property
    def is_finite(self) -> bool:
        """Finite in the enumeration sense used by the decision engine.

        Sign-pattern classes are excluded: although they enumerate to a
        single representative, their membership predicate covers a
        continuum, so exhaustion over them would be unsound.
        """
        return self.kind in (ClassKind.VERTEX_DIAG, ClassKind.EXPLICIT_LIST)

    @property
    def finite_size(self) -> int:
        if self.kind is ClassKind.VERTEX_DIAG:
            return 2 ** self.order
        if self.kind is ClassKind.EXPLICIT_LIST:
            return len(self.members)
        if self.kind is ClassKind.SIGN_DIAG:
            return 1
        raise InfiniteClassError(f"{self.kind.value} has infinitely many members")

    @property
    def is_unbounded(self) -> bool:
        k = self.kind
        if k in (ClassKind.VERTEX_DIAG, ClassKind.BOX_DIAG, ClassKind.EXPLICIT_LIST):
            return False
        if k is ClassKind.SIGN_DIAG:
            return any(s != 0 for s in self.signs)
        if k is ClassKind.PARAMETRIC_RANK_ONE:
            return False  # tau ranges are finite intervals
        return True

    @property
    def closed_under_positive_scaling(self) -> bool:
        return self.kind not in (
            ClassKind.VERTEX_DIAG,
            ClassKind.BOX_DIAG,
            ClassKind.PARAMETRIC_RANK_ONE,
            ClassKind.EXPLICIT_LIST,
        )


def _check_perm(theta, n: int) -> tuple[int, ...]:
    t = tuple(int(i) for i in theta)
    if sorted(t) != list(range(n)):
        raise ValueError(f"{theta} is not a permutation of 0..{n - 1}")
    return t


def symmetric(n: int) -> MatrixClass:
    return MatrixClass(ClassKind.SYMMETRIC, n)


def spd(n: int) -> MatrixClass:
    return MatrixClass(ClassKind.SPD, n)


def alpha_block_spd(partition: Partition) -> MatrixClass:
    """Symmetric positive definite matrices supported on the diagonal
    blocks of the partition."""
    return MatrixClass(ClassKind.ALPHA_BLOCK_SPD, partition.order, partition=partition)


def diag(n: int) -> MatrixClass:
    return MatrixClass(ClassKind.DIAG, n)


def pos_diag(n: int) -> MatrixClass:
    return MatrixClass(ClassKind.POS_DIAG, n)


def sign_diag(signs) -> MatrixClass:
    s = tuple(int(np.sign(v)) for v in signs)
    return MatrixClass(ClassKind.SIGN_DIAG, len(s), signs=s)


def alpha_scalar(partition: Partition) -> MatrixClass:
    """Diagonal matrices constant on each partition block."""
    return MatrixClass(ClassKind.ALPHA_SCALAR, partition.order, partition=partition)


def pos_alpha_scalar(partition: Partition) -> MatrixClass:
    return MatrixClass(
        ClassKind.POS_ALPHA_SCALAR, partition.order, partition=partition
    )


def theta_ordered(theta) -> MatrixClass:
    """Positive diagonals non-increasing along the permutation theta
    (0-based)."""
    t = _check_perm(theta, len(tuple(theta)))
    return MatrixClass(ClassKind.THETA_ORDERED, len(t), theta=t)


def box_diag(lo, hi) -> MatrixClass:
    lo = tuple(float(v) for v in lo)
    hi = tuple(float(v) for v in hi)
    if len(lo) != len(hi):
        raise ValueError("lo and hi must have equal lengths")
    if any(l >= h for l, h in zip(lo, hi)):
        raise ValueError("need lo[i] < hi[i] for every coordinate")
    return MatrixClass(ClassKind.BOX_DIAG, len(lo), lo=lo, hi=hi)


def vertex_diag(n: int) -> MatrixClass:
    return MatrixClass(ClassKind.VERTEX_DIAG, n)


def rank_k_positive(n: int, k: int) -> MatrixClass:
    if not 1 <= k <= n:
        raise ValueError("rank bound must satisfy 1 <= k <= n")
    return MatrixClass(ClassKind.RANK_K_POSITIVE, n, rank=k)


def sum_rank_one_positive(n: int, k: int) -> MatrixClass:
    if not 1 <= k <= n:
        raise ValueError("rank bound must satisfy 1 <= k <= n")
    return MatrixClass(ClassKind.SUM_RANK_ONE_POSITIVE, n, rank=k)


def parametric_rank_one(x, y, tau: tuple[float, float]) -> MatrixClass:
    x = tuple(float(v) for v in x)
    y = tuple(float(v) for v in y)
    if len(x) != len(y):
        raise ValueError("x and y must have equal lengths")
    lo, hi = float(tau[0]), float(tau[1])
    if not lo <= hi:
        raise ValueError("tau range must satisfy lo <= hi")
    return MatrixClass(ClassKind.PARAMETRIC_RANK_ONE, len(x), x=x, y=y, tau=(lo, hi))


def explicit_list(members) -> MatrixClass:
    mats = [as_square_matrix(m, "member") for m in members]
    if not mats:
        raise ValueError("explicit list must be nonempty")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ValueError("all members must have equal order")
    frozen = tuple(tuple(tuple(row) for row in m) for m in mats)
    return MatrixClass(ClassKind.EXPLICIT_LIST, n, members=frozen)


def _member_arrays(c: MatrixClass) -> list[np.ndarray]:
    return [np.array(m, dtype=float) for m in c.members]


def _offdiag_small(m: np.ndarray, thr: float) -> bool:
    off = m - np.diag(np.diag(m))
    return float(np.max(np.abs(off), initial=0.0)) <= thr


def _rank_at_most(m: np.ndarray, k: int) -> bool:
    sv = np.linalg.svd(m, compute_uv=False)
    return bool(np.all(sv[k:] <= RANK_TOL * sv[0])) if sv[0] > 0 else True


def contains(c: MatrixClass, m, tol: float = 1e-9) -> bool:
    """Structural membership with tolerance ``tol``.

    Zero patterns, symmetry, sign constraints and ordering are tested
    against ``tol * max(1, max|entry|)``; rank against singular values
    below ``RANK_TOL`` times the largest.
    """
    m = as_square_matrix(m, "m")
    if m.shape[0] != c.order:
        raise DimensionMismatchError(
            f"matrix order {m.shape[0]} does not match class order {c.order}"
        )
    scale = max(1.0, float(np.max(np.abs(m))))
    thr = tol * scale
    d = np.diag(m)
    k = c.kind

    if k is ClassKind.SYMMETRIC:
        return float(np.max(np.abs(m - m.T))) <= thr
    if k is ClassKind.SPD:
        if float(np.max(np.abs(m - m.T))) > thr:
            return False
        return is_positive_definite(0.5 * (m + m.T), tol)
    if k is ClassKind.ALPHA_BLOCK_SPD:
        mask = np.zeros_like(m, dtype=bool)
        for block in c.partition.blocks:
            sel = np.asarray(block)
            mask[np.ix_(sel, sel)] = True
        if float(np.max(np.abs(m[~mask]), initial=0.0)) > thr:
            return False
        if float(np.max(np.abs(m - m.T))) > thr:
            return False
        return is_positive_definite(0.5 * (m + m.T), tol)
    if k is ClassKind.DIAG:
        return _offdiag_small(m, thr)
    if k is ClassKind.POS_DIAG:
        # sign constraints are strict; scaled tolerances would reject
        # legitimately small entries of wide-range products
        return _offdiag_small(m, thr) and bool(np.all(d > 0.0))
    if k is ClassKind.SIGN_DIAG:
        if not _offdiag_small(m, thr):
            return False
        for di, si in zip(d, c.signs):
            if si > 0 and not di > 0.0:
                return False
            if si < 0 and not di < 0.0:
                return False
            if si == 0 and not abs(di) <= thr:
                return False
        return True
    if k in (ClassKind.ALPHA_SCALAR, ClassKind.POS_ALPHA_SCALAR):
        if not _offdiag_small(m, thr):
            return False
        for block in c.partition.blocks:
            vals = d[np.asarray(block)]
            spread = float(np.max(vals) - np.min(vals))
            if spread > tol * max(1.0, float(np.max(np.abs(vals)))):
                return False
        if k is ClassKind.POS_ALPHA_SCALAR and not np.all(d > 0.0):
            return False
        return True
    if k is ClassKind.THETA_ORDERED:
        if not (_offdiag_small(m, thr) and np.all(d > 0.0)):
            return False
        ordered = d[np.asarray(c.theta)]
        slack = tol * np.maximum(1.0, np.abs(ordered[:-1]))
        return bool(np.all(ordered[:-1] >= ordered[1:] - slack))
    if k is ClassKind.BOX_DIAG:
        if not _offdiag_small(m, thr):
            return False
        return bool(np.all(d > np.asarray(c.lo)) and np.all(d < np.asarray(c.hi)))
    if k is ClassKind.VERTEX_DIAG:
        return _offdiag_small(m, thr) and bool(np.all(np.abs(np.abs(d) - 1.0) <= thr))
    if k in (ClassKind.RANK_K_POSITIVE, ClassKind.SUM_RANK_ONE_POSITIVE):
        # Entrywise positive with rank at most k.  For sums of positive
        # rank-one terms this over-approximates the class; exact
        # membership is not decidable structurally.
        return bool(np.all(m > 0.0)) and _rank_at_most(m, c.rank)
    if k is ClassKind.PARAMETRIC_RANK_ONE:
        outer = np.outer(c.x, c.y)
        denom = float(np.sum(outer * outer))
        if denom == 0.0:
            return float(np.max(np.abs(m))) <= thr
        t_hat = float(np.sum(m * outer)) / denom
        if float(np.max(np.abs(m - t_hat * outer))) > thr:
            return False
        return c.tau[0] - tol <= t_hat <= c.tau[1] + tol
    if k is ClassKind.EXPLICIT_LIST:
        return any(
            float(np.max(np.abs(m - ref))) <= thr for ref in _member_arrays(c)
        )
    raise AssertionError(k)


def _log_uniform(rng: np.random.Generator, shape) -> np.ndarray:
    return 10.0 ** rng.uniform(*_LOG_RANGE, size=shape)


def sample_batch(c: MatrixClass, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` members as a (count, n, n) stack.

    Deterministic given the generator state; every draw satisfies
    ``contains``.
    """
    n = c.order
    k = c.kind
    out = np.zeros((count, n, n))

    if k is ClassKind.SYMMETRIC:
        g = rng.standard_normal((count, n, n))
        return g + np.swapaxes(g, 1, 2)
    if k is ClassKind.SPD:
        b = rng.standard_normal((count, n, n))
        return np.swapaxes(b, 1, 2) @ b + 1e-8 * np.eye(n)
    if k is ClassKind.ALPHA_BLOCK_SPD:
        for block in c.partition.blocks:
            sel = np.asarray(block)
            nb = len(block)
            b = rng.standard_normal((count, nb, nb))
            out[np.ix_(range(count), sel, sel)] = (
                np.swapaxes(b, 1, 2) @ b + 1e-8 * np.eye(nb)
            )
        return out
    if k is ClassKind.DIAG:
        vals = rng.choice([-1.0, 1.0], size=(count, n)) * _log_uniform(rng, (count, n))
    elif k is ClassKind.POS_DIAG:
        vals = _log_uniform(rng, (count, n))
    elif k is ClassKind.SIGN_DIAG:
        vals = np.asarray(c.signs, dtype=float) * _log_uniform(rng, (count, n))
    elif k in (ClassKind.ALPHA_SCALAR, ClassKind.POS_ALPHA_SCALAR):
        p = len(c.partition.blocks)
        bvals = _log_uniform(rng, (count, p))
        if k is ClassKind.ALPHA_SCALAR:
            bvals = bvals * rng.choice([-1.0, 1.0], size=(count, p))
        vals = np.zeros((count, n))
        for j, block in enumerate(c.partition.blocks):
            vals[:, np.asarray(block)] = bvals[:, j : j + 1]
    elif k is ClassKind.THETA_ORDERED:
        raw = np.sort(_log_uniform(rng, (count, n)), axis=1)[:, ::-1]
        vals = np.zeros((count, n))
        vals[:, np.asarray(c.theta)] = raw
    elif k is ClassKind.BOX_DIAG:
        vals = rng.uniform(np.asarray(c.lo), np.asarray(c.hi), size=(count, n))
    elif k is ClassKind.VERTEX_DIAG:
        vals = rng.choice([-1.0, 1.0], size=(count, n))
    elif k in (ClassKind.RANK_K_POSITIVE, ClassKind.SUM_RANK_ONE_POSITIVE):
        u = rng.uniform(0.1, 10.0, size=(count, c.rank, n))
        v = rng.uniform(0.1, 10.0, size=(count, c.rank, n))
        return np.einsum("cki,ckj->cij", u, v)
    elif k is ClassKind.PARAMETRIC_RANK_ONE:
        taus = rng.uniform(c.tau[0], c.tau[1], size=count)
        return taus[:, None, None] * np.outer(c.x, c.y)[None, :, :]
    elif k is ClassKind.EXPLICIT_LIST:
        refs = np.stack(_member_arrays(c))
        return refs[rng.integers(0, len(refs), size=count)]
    else:
        raise AssertionError(k)

    idx = np.arange(n)
    out[:, idx, idx] = vals
    return out


def sample(c: MatrixClass, rng: np.random.Generator) -> np.ndarray:
    """Draw one member of the class."""
    return sample_batch(c, rng, 1)[0]


def enumerate_members(c: MatrixClass):
    """Yield every member of a finite class exactly once.

    Vertex diagonals enumerate all ``2^n`` sign assignments in
    lexicographic order (+1 before -1, first index most significant);
    sign-pattern classes yield their single +-1/0 representative;
    explicit lists yield their members in order.  Any other kind raises
    ``InfiniteClassError``.
    """
    if c.kind is ClassKind.VERTEX_DIAG:
        if c.order > 20:
            raise ValueError("vertex enumeration supported for order <= 20")
        for signs in itertools.product((1.0, -1.0), repeat=c.order):
            yield np.diag(np.asarray(signs))
        return
    if c.kind is ClassKind.SIGN_DIAG:
        yield np.diag(np.asarray(c.signs, dtype=float))
        return
    if c.kind is ClassKind.EXPLICIT_LIST:
        yield from _member_arrays(c)
        return
    raise InfiniteClassError(
        f"{c.kind.value} has infinitely many members; cannot enumerate"
    )


def identity_element(c: MatrixClass, op: BinaryOp) -> np.ndarray | None:
    """The operation's identity element if the class contains it, else
    None."""
    elem = algebra.identity_matrix_for(op, c.order)
    try:
        ok = contains(c, elem)
    except DimensionMismatchError:
        return None
    return elem if ok else None


@dataclass
class ClosureReport:
    closed: bool
    closure_counterexample: tuple[np.ndarray, np.ndarray] | None
    has_inverses: bool
    inverse_counterexample: np.ndarray | None


def closure_probe(c: MatrixClass, op: BinaryOp, trials: int,
                  rng: np.random.Generator) -> ClosureReport:
    """Randomized probe of closure and inverse-membership under the
    operation.

    Samples pairs and tests whether their composition stays in the
    class; samples members and tests whether their op-inverse (when
    computable) stays in the class.  Any violation is returned as a
    witness.  A clean report is evidence, not proof.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    closed = True
    closure_ce = None
    has_inv = True
    inv_ce = None
    for _ in range(trials):
        g1 = sample(c, rng)
        g2 = sample(c, rng)
        if closed and not contains(c, algebra.apply(op, g1, g2), 1e-7):
            closed = False
            closure_ce = (g1, g2)
        if has_inv:
            inv = algebra.op_inverse(op, g1)
            if inv is not None and not contains(c, inv, 1e-7):
                has_inv = False
                inv_ce = g1
        if not closed and not has_inv:
            break
    return ClosureReport(closed, closure_ce, has_inv, inv_ce)


def chain_memberships(d, partition: Partition, tol: float = 1e-9
                      ) -> tuple[bool, bool, bool, bool]:
    """Membership of ``d`` along the nested chain: positive block-scalar
    diagonals, positive diagonals, block-supported SPD, SPD.

    The chain is monotone: each membership implies the next.
    """
    d = as_square_matrix(d, "d")
    return (
        contains(pos_alpha_scalar(partition), d, tol),
        contains(pos_diag(d.shape[0]), d, tol),
        contains(alpha_block_spd(partition), d, tol),
        contains(spd(d.shape[0]), d, tol),
    )


def theta_ratios(d, theta) -> tuple[float, float]:
    """Smallest and largest consecutive diagonal ratio along the
    permutation.  Requires a positive diagonal ordered along theta;
    both ratios are >= 1 (up to tolerance).  Diagnostic only."""
    d = as_square_matrix(d, "d")
    n = d.shape[0]
    t = _check_perm(theta, n)
    cls = theta_ordered(t)
    if not contains(cls, d, 1e-9):
        raise NotThetaOrderedError(
            "matrix is not a positive diagonal ordered along the permutation"
        )
    vals = np.diag(d)[np.asarray(t)]
    if n == 1:
        return (1.0, 1.0)
    ratios = vals[:-1] / vals[1:]
    return (float(np.min(ratios)), float(np.max(ratios)))
