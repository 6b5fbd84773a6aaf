"""Sufficiency certificates for region/class/operation stability.

A certificate is a structured positive definite matrix ``P`` making a
quadratic form built from the target matrix positive definite:

* diagonal / block-scalar / block / identity witnesses for the
  continuous form ``P A + A^T P`` (right-half-plane region), and
* positive diagonal witnesses for the discrete form ``D - A^T D A``
  (unit-disk region).

A found certificate proves stability for every class member of the
associated triples (see ``implied_stabilities``); a failed search
proves nothing.  The searches maximize the smallest eigenvalue of the
form by projected subgradient ascent over the witness parametrization
with trace normalization and multi-starts.  This is a self-contained
heuristic, deliberately chosen over an external semidefinite solver:
``NotFound`` is always inconclusive.

Searches are sequential per call; run several concurrently by passing
split generator streams.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import algebra, classes, regions
from .algebra import ADD, MUL
from .classes import ClassKind, MatrixClass, Partition
from .errors import UnsupportedClassError
from .linalg import as_square_matrix, hill_form, is_positive_definite

__all__ = [
    "CertKind",
    "Certificate",
    "CertReport",
    "find_diagonal_lyapunov",
    "find_stein_diagonal",
    "find_structured_lyapunov",
    "verify_certificate",
    "implied_stabilities",
    "certified_form",
]

#: A witness counts as found when the normalized form's smallest
#: eigenvalue clears this threshold (guards boundary false positives).
FOUND_TOL = 1e-8

#: Search stops early after this many iterations without improvement.
STALL_LIMIT = 800

_MULTI_STARTS = 8


class CertKind(enum.Enum):
    DIAGONAL_LYAPUNOV = "diagonal_lyapunov"
    ALPHA_SCALAR_LYAPUNOV = "alpha_scalar_lyapunov"
    BLOCK_LYAPUNOV = "block_lyapunov"
    IDENTITY_LYAPUNOV = "identity_lyapunov"
    STEIN_DIAGONAL = "stein_diagonal"
    #: symmetric witness of arbitrary inertia; a positive definite form
    #: proves the spectrum avoids the imaginary axis and that the
    #: witness and target share their half-plane eigenvalue counts.
    #: Verified when supplied, never searched for (the witness set has
    #: no convex parametrization).
    SYMMETRIC_INDEFINITE = "symmetric_indefinite"
    HILL = "hill"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True, eq=False)
class Certificate:
    """A checkable stability witness.

    ``witness`` is the structured matrix ``P``; ``min_eig`` the smallest
    eigenvalue of the certified form evaluated at the target matrix.
    Exhaustive certificates instead record the finite triple that was
    checked member by member.
    """

    kind: CertKind
    witness: np.ndarray | None
    min_eig: float
    partition: Partition | None = None
    coeffs: tuple[tuple[float, ...], ...] | None = None
    triple: tuple | None = None
    members_checked: int | None = None


@dataclass(frozen=True, eq=False)
class CertReport:
    found: bool
    certificate: Certificate | None
    best_min_eig: float
    iterations: int


def _min_eig_vec(s: np.ndarray, rng: np.random.Generator):
    """Smallest eigenvalue of symmetric ``s`` and a unit vector in its
    eigenspace; degenerate eigenspaces get a random direction."""
    vals, vecs = np.linalg.eigh(s)
    lam = vals[0]
    span = max(vals[-1] - vals[0], 1.0)
    degenerate = np.flatnonzero(vals <= lam + 1e-10 * span)
    if degenerate.size > 1:
        w = rng.standard_normal(degenerate.size)
        v = vecs[:, degenerate] @ w
        v /= np.linalg.norm(v)
    else:
        v = vecs[:, 0]
    return float(lam), v


def _ascend(init_params, decode, grad, project, budget: int,
            rng: np.random.Generator):
    """Shared projected subgradient ascent over witness parameters.

    ``decode`` maps parameters to the witness matrix, ``grad`` gives the
    subgradient of the form's smallest eigenvalue at (params, v),
    ``project`` re-normalizes parameters.  Returns the best
    (params, min_eig, iterations used).
    """
    best_p = None
    best_val = -np.inf
    used = 0
    per_start = max(budget // _MULTI_STARTS, 1)
    for start in range(_MULTI_STARTS):
        if used >= budget:
            break
        p = project(init_params(start))
        stall = 0
        t = 0
        while used < budget and t < per_start:
            t += 1
            used += 1
            s = decode(p)
            lam, v = _min_eig_vec(s, rng)
            if lam > best_val:
                best_val = lam
                best_p = p.copy()
                stall = 0
            else:
                stall += 1
            if best_val > FOUND_TOL or stall > STALL_LIMIT:
                break
            g = grad(p, v)
            norm = np.linalg.norm(g)
            if norm < 1e-15:
                break
            p = project(p + (0.5 / np.sqrt(t)) * g / norm)
        if best_val > FOUND_TOL:
            break
    return best_p, best_val, used


def _diag_search(a: np.ndarray, form: str, budget: int, rng: np.random.Generator):
    """Search positive diagonal D with trace n maximizing the smallest
    eigenvalue of the continuous ('lyap') or discrete ('stein') form."""
    n = a.shape[0]

    def init_params(start: int) -> np.ndarray:
        if start == 0:
            return np.ones(n)
        return 10.0 ** rng.uniform(-1.5, 1.5, n)

    def project(d: np.ndarray) -> np.ndarray:
        d = np.maximum(d, 1e-10)
        return d * (n / np.sum(d))

    if form == "lyap":
        def decode(d):
            da = d[:, None] * a
            return da + da.T

        def grad(d, v):
            return 2.0 * v * (a @ v)
    else:
        def decode(d):
            return np.diag(d) - a.T @ (d[:, None] * a)

        def grad(d, v):
            av = a @ v
            return v * v - av * av

    return _ascend(init_params, decode, grad, project, budget, rng), project


def find_diagonal_lyapunov(a, budget: int = 5000,
                           rng: np.random.Generator | None = None) -> CertReport:
    """Search for a positive diagonal ``D`` making ``D A + A^T D``
    positive definite.

    The search runs on ``A`` scaled to unit Frobenius norm so that the
    found/not-found outcome is exactly invariant under positive scaling
    of ``A``; the reported ``min_eig`` refers to the original matrix.
    """
    a = as_square_matrix(a)
    rng = np.random.default_rng(0) if rng is None else rng
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return CertReport(False, None, 0.0, 0)
    an = a / norm
    (d, val, used), project = _diag_search(an, "lyap", budget, rng)
    if d is None or val <= FOUND_TOL:
        return CertReport(False, None, val * norm if d is not None else -np.inf, used)
    witness = np.diag(project(d))
    form = witness @ a + a.T @ witness
    cert = Certificate(
        CertKind.DIAGONAL_LYAPUNOV, witness, float(np.linalg.eigvalsh(form)[0])
    )
    return CertReport(True, cert, cert.min_eig, used)


def find_stein_diagonal(a, budget: int = 5000,
                        rng: np.random.Generator | None = None) -> CertReport:
    """Search for a positive diagonal ``D`` making ``D - A^T D A``
    positive definite."""
    a = as_square_matrix(a)
    rng = np.random.default_rng(0) if rng is None else rng
    (d, val, used), project = _diag_search(a, "stein", budget, rng)
    if d is None or val <= FOUND_TOL:
        return CertReport(False, None, val if d is not None else -np.inf, used)
    witness = np.diag(project(d))
    form = witness - a.T @ witness @ a
    cert = Certificate(
        CertKind.STEIN_DIAGONAL, witness, float(np.linalg.eigvalsh(form)[0])
    )
    return CertReport(True, cert, cert.min_eig, used)


def _alpha_scalar_search(a: np.ndarray, part: Partition, budget: int,
                         rng: np.random.Generator):
    n = a.shape[0]
    sizes = np.array([len(b) for b in part.blocks], dtype=float)
    p_dim = len(part.blocks)
    block_of = np.empty(n, dtype=int)
    for j, block in enumerate(part.blocks):
        block_of[np.asarray(block)] = j

    def expand(c):
        return c[block_of]

    def init_params(start: int) -> np.ndarray:
        if start == 0:
            return np.ones(p_dim)
        return 10.0 ** rng.uniform(-1.5, 1.5, p_dim)

    def project(cvals: np.ndarray) -> np.ndarray:
        cvals = np.maximum(cvals, 1e-10)
        return cvals * (n / np.sum(cvals * sizes))

    def decode(cvals):
        da = expand(cvals)[:, None] * a
        return da + da.T

    def grad(cvals, v):
        per_coord = 2.0 * v * (a @ v)
        return np.array([np.sum(per_coord[np.asarray(b)]) for b in part.blocks])

    return _ascend(init_params, decode, grad, project, budget, rng), project, expand


def _block_spd_search(a: np.ndarray, part: Partition, budget: int,
                      rng: np.random.Generator):
    """Search over per-block Cholesky factors of a block-diagonal SPD
    witness."""
    n = a.shape[0]
    slots = []  # (block index array, local lower-triangular indices)
    offsets = [0]
    for block in part.blocks:
        nb = len(block)
        tril = np.tril_indices(nb)
        slots.append((np.asarray(block), tril))
        offsets.append(offsets[-1] + tril[0].size)
    p_dim = offsets[-1]

    def decode_h(p: np.ndarray) -> np.ndarray:
        h = np.zeros((n, n))
        for (sel, tril), lo, hi in zip(slots, offsets, offsets[1:]):
            nb = sel.size
            ell = np.zeros((nb, nb))
            ell[tril] = p[lo:hi]
            h[np.ix_(sel, sel)] = ell @ ell.T + 1e-12 * np.eye(nb)
        return h

    def init_params(start: int) -> np.ndarray:
        p = np.zeros(p_dim)
        for (sel, tril), lo, hi in zip(slots, offsets, offsets[1:]):
            nb = sel.size
            ell = np.eye(nb) if start == 0 else np.tril(
                rng.standard_normal((nb, nb))
            ) + nb * np.eye(nb)
            p[lo:hi] = ell[tril]
        return p

    def project(p: np.ndarray) -> np.ndarray:
        h = decode_h(p)
        tr = np.trace(h)
        if tr <= 0:
            return init_params(1)
        return p * np.sqrt(n / tr)

    def decode(p):
        h = decode_h(p)
        ha = h @ a
        return ha + ha.T

    def grad(p, v):
        # dlambda/dH = v (A v)^T + (A v) v^T; chain through H = L L^T.
        av = a @ v
        gh = np.outer(v, av) + np.outer(av, v)
        g = np.zeros(p_dim)
        for (sel, tril), lo, hi in zip(slots, offsets, offsets[1:]):
            nb = sel.size
            ell = np.zeros((nb, nb))
            ell[tril] = p[lo:hi]
            gl = 2.0 * gh[np.ix_(sel, sel)] @ ell
            g[lo:hi] = gl[tril]
        return g

    return _ascend(init_params, decode, grad, project, budget, rng), decode_h


def _is_identity_singleton(p_class: MatrixClass) -> bool:
    if p_class.kind is not ClassKind.EXPLICIT_LIST:
        return False
    eye = np.eye(p_class.order)
    return all(
        np.array_equal(np.array(m, dtype=float), eye) for m in p_class.members
    )


def identity_witness_class(n: int) -> MatrixClass:
    """The singleton witness class containing only the identity."""
    return classes.explicit_list([np.eye(n)])


def find_structured_lyapunov(a, p_class: MatrixClass, budget: int = 5000,
                             rng: np.random.Generator | None = None) -> CertReport:
    """Search the continuous form over a structured witness class.

    Supported parametrizations: positive block-scalar diagonals,
    block-diagonal SPD matrices, and the identity singleton (a single
    definiteness test of ``A + A^T``).  Anything else raises
    ``UnsupportedClassError``.
    """
    a = as_square_matrix(a)
    rng = np.random.default_rng(0) if rng is None else rng
    if a.shape[0] != p_class.order:
        raise UnsupportedClassError("witness class order does not match matrix")

    if _is_identity_singleton(p_class):
        s = a + a.T
        lam = float(np.linalg.eigvalsh(s)[0])
        if is_positive_definite(s):
            cert = Certificate(CertKind.IDENTITY_LYAPUNOV, np.eye(a.shape[0]), lam)
            return CertReport(True, cert, lam, 1)
        return CertReport(False, None, lam, 1)

    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return CertReport(False, None, 0.0, 0)
    an = a / norm

    if p_class.kind is ClassKind.POS_ALPHA_SCALAR:
        (c, val, used), project, expand = _alpha_scalar_search(
            an, p_class.partition, budget, rng
        )
        if c is None or val <= FOUND_TOL:
            return CertReport(False, None, val * norm if c is not None else -np.inf, used)
        witness = np.diag(expand(project(c)))
        form = witness @ a + a.T @ witness
        cert = Certificate(
            CertKind.ALPHA_SCALAR_LYAPUNOV,
            witness,
            float(np.linalg.eigvalsh(form)[0]),
            partition=p_class.partition,
        )
        return CertReport(True, cert, cert.min_eig, used)

    if p_class.kind is ClassKind.ALPHA_BLOCK_SPD:
        (p, val, used), decode_h = _block_spd_search(
            an, p_class.partition, budget, rng
        )
        if p is None or val <= FOUND_TOL:
            return CertReport(False, None, val * norm if p is not None else -np.inf, used)
        witness = decode_h(p)
        tr = np.trace(witness)
        witness = witness * (a.shape[0] / tr)
        form = witness @ a + a.T @ witness
        cert = Certificate(
            CertKind.BLOCK_LYAPUNOV,
            witness,
            float(np.linalg.eigvalsh(form)[0]),
            partition=p_class.partition,
        )
        return CertReport(True, cert, cert.min_eig, used)

    raise UnsupportedClassError(
        f"no search parametrization for witness class {p_class.kind.value}"
    )


def certified_form(cert: Certificate, a) -> np.ndarray:
    """Recompute the quadratic form the certificate claims to be
    positive definite."""
    a = as_square_matrix(a)
    p = cert.witness
    if cert.kind in (
        CertKind.DIAGONAL_LYAPUNOV,
        CertKind.ALPHA_SCALAR_LYAPUNOV,
        CertKind.BLOCK_LYAPUNOV,
        CertKind.IDENTITY_LYAPUNOV,
        CertKind.SYMMETRIC_INDEFINITE,
    ):
        return p @ a + a.T @ p
    if cert.kind is CertKind.STEIN_DIAGONAL:
        return p - a.T @ p @ a
    if cert.kind is CertKind.HILL:
        return hill_form(np.array(cert.coeffs, dtype=float), p, a)
    raise ValueError(f"no closed form for certificate kind {cert.kind.value}")


def _witness_ok(cert: Certificate) -> bool:
    w = cert.witness
    n = w.shape[0]
    if cert.kind in (CertKind.DIAGONAL_LYAPUNOV, CertKind.STEIN_DIAGONAL):
        return classes.contains(classes.pos_diag(n), w)
    if cert.kind is CertKind.ALPHA_SCALAR_LYAPUNOV:
        return classes.contains(classes.pos_alpha_scalar(cert.partition), w)
    if cert.kind is CertKind.BLOCK_LYAPUNOV:
        return classes.contains(classes.alpha_block_spd(cert.partition), w)
    if cert.kind is CertKind.IDENTITY_LYAPUNOV:
        return bool(np.allclose(w, np.eye(n), atol=1e-12))
    if cert.kind is CertKind.SYMMETRIC_INDEFINITE:
        return classes.contains(classes.symmetric(n), w)
    if cert.kind is CertKind.HILL:
        return classes.contains(classes.spd(n), w)
    raise AssertionError(cert.kind)


def verify_certificate(cert: Certificate, a) -> bool:
    """Recompute the certified form and check it independently of the
    search path: witness class membership plus positive definiteness.
    Exhaustive certificates re-run the member-by-member check."""
    a = as_square_matrix(a)
    if cert.kind is CertKind.EXHAUSTIVE:
        if cert.triple is None:
            return False
        region, cls, op = cert.triple
        count = 0
        for g in classes.enumerate_members(cls):
            w = np.linalg.eigvals(algebra.apply(op, g, a))
            if not regions.spectrum_in_region(region, w):
                return False
            count += 1
        return cert.members_checked is None or count == cert.members_checked
    if cert.witness is None or cert.witness.shape != a.shape:
        return False
    if not _witness_ok(cert):
        return False
    form = certified_form(cert, a)
    try:
        return is_positive_definite(form)
    except Exception:
        return False


def implied_stabilities(cert: Certificate) -> list[tuple]:
    """The (region, class, operation) triples the certificate proves.

    Diagonal witnesses prove stability against positive diagonals under
    both multiplication and addition; block-scalar witnesses against
    block-supported SPD classes and vice versa; the identity witness
    against the full SPD class (multiplication and addition); discrete
    diagonal witnesses prove unit-disk stability against vertex
    diagonals and the box of diagonals with entries in (-1, 1).
    Polynomial-form certificates for general regions imply no triple.
    """
    rhp = regions.right_half_plane()
    if cert.kind is CertKind.EXHAUSTIVE:
        return [cert.triple] if cert.triple is not None else []
    if cert.kind in (CertKind.HILL, CertKind.SYMMETRIC_INDEFINITE):
        # no class-quantified consequence: the polynomial-form witness
        # pairs with no known class beyond the half-plane cases, and
        # the indefinite witness only certifies the target matrix's own
        # spectrum (plus the eigenvalue-count match of the two).
        return []
    n = cert.witness.shape[0]
    if cert.kind is CertKind.DIAGONAL_LYAPUNOV:
        cls = classes.pos_diag(n)
        return [(rhp, cls, MUL), (rhp, cls, ADD)]
    if cert.kind is CertKind.ALPHA_SCALAR_LYAPUNOV:
        cls = classes.alpha_block_spd(cert.partition)
        return [(rhp, cls, MUL), (rhp, cls, ADD)]
    if cert.kind is CertKind.BLOCK_LYAPUNOV:
        cls = classes.pos_alpha_scalar(cert.partition)
        return [(rhp, cls, MUL), (rhp, cls, ADD)]
    if cert.kind is CertKind.IDENTITY_LYAPUNOV:
        cls = classes.spd(n)
        return [(rhp, cls, MUL), (rhp, cls, ADD)]
    if cert.kind is CertKind.STEIN_DIAGONAL:
        disk = regions.unit_disk()
        return [
            (disk, classes.vertex_diag(n), MUL),
            (disk, classes.box_diag([-1.0] * n, [1.0] * n), MUL),
        ]
    raise AssertionError(cert.kind)
