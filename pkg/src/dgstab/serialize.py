"""JSON codecs for the external interfaces.

Matrices travel as ``{"n": int, "data": [[row-major reals]]}`` (plain
CSV, one row per line, is also accepted on input).  Partitions and
permutations use 1-based indices on the wire; everything is 0-based
inside the library.  Serialization is deterministic: fixed key order,
no timestamps.
"""

from __future__ import annotations

import json

import numpy as np

from . import algebra, certify, classes, engine, regions
from .classes import ClassKind, MatrixClass, Partition
from .regions import Region, RegionKind

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "load_matrix_text",
    "region_to_json",
    "region_from_json",
    "class_to_json",
    "class_from_json",
    "op_to_json",
    "op_from_json",
    "certificate_to_json",
    "verdict_to_json",
    "dumps",
]

_REGION_ALIASES = {
    "rhp": "right_half_plane",
    "lhp": "left_half_plane",
    "disk": "unit_disk",
    "ray": "positive_ray",
}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _listify(m: np.ndarray):
    return [[float(v) for v in row] for row in np.asarray(m, dtype=float)]


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=float)
    return {"n": int(m.shape[0]), "data": _listify(m)}


def matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, list):
        return np.asarray(obj, dtype=float)
    data = np.asarray(obj["data"], dtype=float)
    if "n" in obj and data.shape != (obj["n"], obj["n"]):
        raise ValueError("matrix data does not match declared order")
    return data


def load_matrix_text(text: str) -> np.ndarray:
    """Parse a matrix from JSON or CSV text."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return matrix_from_json(json.loads(stripped))
    rows = [
        [float(v) for v in line.replace(",", " ").split()]
        for line in stripped.splitlines()
        if line.strip()
    ]
    return np.asarray(rows, dtype=float)


def region_to_json(region: Region) -> dict:
    kind = region.kind
    if kind is RegionKind.SECTOR:
        spec: object = {"sector": region.half_angle}
    elif kind is RegionKind.HILL:
        spec = {
            "hill": {
                "c": [list(row) for row in region.coeffs],
                "sense": region.sense,
            }
        }
    else:
        spec = kind.value
    return {"kind": spec, "boundary_tol": region.boundary_tol}


def region_from_json(obj) -> Region:
    if isinstance(obj, str):
        obj = {"kind": obj}
    tol = float(obj.get("boundary_tol", regions.DEFAULT_BOUNDARY_TOL))
    spec = obj["kind"]
    if isinstance(spec, str):
        name = _REGION_ALIASES.get(spec, spec)
        return Region(RegionKind(name), tol)
    if "sector" in spec:
        return regions.sector(float(spec["sector"]), tol)
    if "hill" in spec:
        payload = spec["hill"]
        return regions.hill_region(
            payload["c"], payload.get("sense", "positive"), tol
        )
    raise ValueError(f"unrecognized region spec {obj!r}")


def _partition_to_wire(p: Partition):
    return [[i + 1 for i in block] for block in p.blocks]


def _partition_from_wire(blocks) -> Partition:
    return Partition(tuple(tuple(i - 1 for i in block) for block in blocks))


def class_to_json(cls: MatrixClass):
    k = cls.kind
    if k in (ClassKind.SYMMETRIC, ClassKind.SPD, ClassKind.DIAG,
             ClassKind.POS_DIAG, ClassKind.VERTEX_DIAG):
        return {"kind": k.value, "n": cls.order}
    if k is ClassKind.SIGN_DIAG:
        return {"kind": {"sign_diag": list(cls.signs)}}
    if k is ClassKind.ALPHA_SCALAR:
        return {"kind": {"alpha_scalar": _partition_to_wire(cls.partition)}}
    if k is ClassKind.POS_ALPHA_SCALAR:
        return {"kind": {"pos_alpha_scalar": _partition_to_wire(cls.partition)}}
    if k is ClassKind.ALPHA_BLOCK_SPD:
        return {"kind": {"alpha_block_spd": _partition_to_wire(cls.partition)}}
    if k is ClassKind.THETA_ORDERED:
        return {"kind": {"theta_ordered": [t + 1 for t in cls.theta]}}
    if k is ClassKind.BOX_DIAG:
        return {"kind": {"box_diag": {"lo": list(cls.lo), "hi": list(cls.hi)}}}
    if k is ClassKind.RANK_K_POSITIVE:
        return {"kind": {"rank_k_positive": cls.rank}, "n": cls.order}
    if k is ClassKind.SUM_RANK_ONE_POSITIVE:
        return {"kind": {"sum_rank_one_positive": cls.rank}, "n": cls.order}
    if k is ClassKind.PARAMETRIC_RANK_ONE:
        return {
            "kind": {
                "parametric_rank_one": {
                    "x": list(cls.x),
                    "y": list(cls.y),
                    "tau": [cls.tau[0], cls.tau[1]],
                }
            }
        }
    if k is ClassKind.EXPLICIT_LIST:
        return {
            "kind": {
                "explicit_list": [
                    _listify(np.array(m, dtype=float)) for m in cls.members
                ]
            }
        }
    raise AssertionError(k)


def class_from_json(obj, n: int | None = None) -> MatrixClass:
    """Parse a class spec.  Bare-name kinds need the order ``n`` (taken
    from the query matrix)."""
    if isinstance(obj, str):
        obj = {"kind": obj}
    spec = obj["kind"]
    n = obj.get("n", n)
    if isinstance(spec, str):
        if n is None:
            raise ValueError("class spec needs a matrix order")
        simple = {
            "symmetric": classes.symmetric,
            "spd": classes.spd,
            "diag": classes.diag,
            "pos_diag": classes.pos_diag,
            "vertex_diag": classes.vertex_diag,
        }
        if spec not in simple:
            raise ValueError(f"unrecognized class name {spec!r}")
        return simple[spec](int(n))
    if "sign_diag" in spec:
        return classes.sign_diag(spec["sign_diag"])
    if "alpha_scalar" in spec:
        return classes.alpha_scalar(_partition_from_wire(spec["alpha_scalar"]))
    if "pos_alpha_scalar" in spec:
        return classes.pos_alpha_scalar(
            _partition_from_wire(spec["pos_alpha_scalar"])
        )
    if "alpha_block_spd" in spec:
        return classes.alpha_block_spd(
            _partition_from_wire(spec["alpha_block_spd"])
        )
    if "theta_ordered" in spec:
        return classes.theta_ordered([t - 1 for t in spec["theta_ordered"]])
    if "box_diag" in spec:
        return classes.box_diag(spec["box_diag"]["lo"], spec["box_diag"]["hi"])
    if "rank_k_positive" in spec:
        if n is None:
            raise ValueError("rank_k_positive needs a matrix order")
        return classes.rank_k_positive(int(n), int(spec["rank_k_positive"]))
    if "sum_rank_one_positive" in spec:
        if n is None:
            raise ValueError("sum_rank_one_positive needs a matrix order")
        return classes.sum_rank_one_positive(
            int(n), int(spec["sum_rank_one_positive"])
        )
    if "parametric_rank_one" in spec:
        p = spec["parametric_rank_one"]
        return classes.parametric_rank_one(p["x"], p["y"], tuple(p["tau"]))
    if "explicit_list" in spec:
        return classes.explicit_list(spec["explicit_list"])
    raise ValueError(f"unrecognized class spec {obj!r}")


def op_to_json(op: algebra.BinaryOp) -> dict:
    return {"op": op.kind.value, "side": op.side.value}


def op_from_json(obj) -> algebra.BinaryOp:
    if isinstance(obj, str):
        obj = {"op": obj}
    return algebra.BinaryOp(
        algebra.OpKind(obj["op"]), algebra.Side(obj.get("side", "left"))
    )


def certificate_to_json(cert: certify.Certificate) -> dict:
    out: dict = {"kind": cert.kind.value, "min_eig": float(cert.min_eig)}
    if cert.witness is not None:
        out["witness"] = matrix_to_json(cert.witness)
    if cert.partition is not None:
        out["partition"] = _partition_to_wire(cert.partition)
    if cert.coeffs is not None:
        out["coefficients"] = [list(row) for row in cert.coeffs]
    if cert.members_checked is not None:
        out["members_checked"] = cert.members_checked
    if cert.triple is not None:
        region, cls, op = cert.triple
        out["triple"] = {
            "region": region_to_json(region),
            "class": class_to_json(cls),
            "op": op_to_json(op),
        }
    return out


def verdict_to_json(v: engine.Verdict) -> dict:
    out: dict = {
        "status": v.status.value,
        "trials_used": int(v.trials_used),
        "provenance": list(v.provenance),
    }
    if v.certificate is not None:
        out["certificate"] = certificate_to_json(v.certificate)
    if v.witness is not None:
        out["witness"] = matrix_to_json(v.witness)
    if v.offending_eigenvalue is not None:
        lam = complex(v.offending_eigenvalue)
        out["offending_eigenvalue"] = [lam.real, lam.imag]
    if v.margin is not None:
        out["margin"] = float(v.margin)
    return out
