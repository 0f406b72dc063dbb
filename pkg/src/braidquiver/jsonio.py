"""JSON interchange formats. Rationals are strings "p/q" (or "p")."""

from __future__ import annotations

import json
from pathlib import Path

from braidquiver.arrangement import (
    Arrangement,
    Face,
    FacePoset,
    Hyperplane,
    braid_poset,
    check_sign,
    enumerate_faces,
    sign_vector,
)
from braidquiver.embedfunctor import EmbeddingMap, iota_braid
from braidquiver.errors import MalformedInputError
from braidquiver.exactgeom import format_rational, to_vector
from braidquiver.matrix import matrix_from_json
from braidquiver.quiverrep import DoubleRep


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc


def write_json(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _vec(v) -> list:
    return [format_rational(x) for x in v]


def _require(data, key, kind):
    if not isinstance(data, dict) or key not in data:
        raise MalformedInputError(f"missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise MalformedInputError(f"key {key!r} has the wrong type")
    return value


# arrangements and posets


def arrangement_to_json(arr: Arrangement) -> dict:
    out = {
        "ambient_dim": arr.ambient_dim,
        "subspace": [_vec(r) for r in arr.subspace],
        "hyperplanes": [{"label": h.label, "normal": _vec(h.normal)} for h in arr.hyperplanes],
    }
    if arr.braid_n is not None:
        out["braid_n"] = arr.braid_n
    return out


def arrangement_from_json(data) -> Arrangement:
    ambient = _require(data, "ambient_dim", int)
    subspace = data.get("subspace", [])
    hyps = _require(data, "hyperplanes", list)
    if not isinstance(subspace, list):
        raise MalformedInputError("subspace must be a list of rows")
    try:
        hyperplanes = tuple(Hyperplane(str(_require(h, "label", str)), to_vector(_require(h, "normal", list))) for h in hyps)
        arr = Arrangement(ambient, tuple(to_vector(r) for r in subspace), hyperplanes, data.get("braid_n"))
    except TypeError as exc:
        raise MalformedInputError(str(exc)) from exc
    return arr


def poset_to_json(poset: FacePoset) -> dict:
    return {
        "arrangement": arrangement_to_json(poset.arrangement),
        "counts": {str(d): c for d, c in poset.dims_by_dimension().items()},
        "faces": [{"sign": f.sign, "dim": f.dim, "witness": _vec(f.witness)} for f in poset],
        "hasse": [[lo, up] for lo, up in poset.hasse],
    }


def poset_from_json(data) -> FacePoset:
    arr = arrangement_from_json(_require(data, "arrangement", dict))
    faces = []
    for entry in _require(data, "faces", list):
        sign = check_sign(arr, _require(entry, "sign", str))
        witness = to_vector(_require(entry, "witness", list))
        if sign_vector(arr, witness) != sign:
            raise MalformedInputError(f"witness of {sign} does not realize it")
        faces.append(Face(sign, _require(entry, "dim", int), witness))
    return FacePoset(arr, faces)


# representations


def poset_ref_to_json(poset: FacePoset) -> dict:
    n = poset.arrangement.braid_n
    if n is not None:
        return {"type": "braid", "n": n}
    return {"type": "arrangement", "arrangement": arrangement_to_json(poset.arrangement)}


def poset_from_ref(data) -> FacePoset:
    kind = _require(data, "type", str)
    if kind == "braid":
        n = _require(data, "n", int)
        if n < 1:
            raise MalformedInputError(f"braid poset needs n >= 1, got {n}")
        return braid_poset(n)
    if kind == "arrangement":
        return enumerate_faces(arrangement_from_json(_require(data, "arrangement", dict)))
    raise MalformedInputError(f"unknown poset type {kind!r}")


def rep_to_json(rep: DoubleRep) -> dict:
    poset = rep.poset
    dims = rep.dims
    gamma, delta = {}, {}
    for lo, up in poset.hasse:
        if dims[lo] and dims[up]:
            gamma[f"{lo}/{up}"] = rep.gamma_edges[(lo, up)].to_json()
    for lo, up in poset.hasse:
        if dims[lo] and dims[up]:
            delta[f"{up}/{lo}"] = rep.delta_edges[(up, lo)].to_json()
    return {
        "poset": poset_ref_to_json(poset),
        "dims": {s: dims[s] for s in poset.signs},
        "gamma": gamma,
        "delta": delta,
    }


def _split_key(key: str):
    parts = key.split("/")
    if len(parts) != 2:
        raise MalformedInputError(f"map key {key!r} must look like '<sign>/<sign>'")
    return parts[0], parts[1]


def _matrix(where: str, data, nrows: int, ncols: int):
    try:
        return matrix_from_json(data, nrows, ncols)
    except MalformedInputError as exc:
        raise type(exc)(f"{where}: {exc}") from exc


def rep_from_json(data, poset: FacePoset = None) -> DoubleRep:
    """Load a rep; maps are keyed source/target of the map ("lower/upper" for gamma)."""
    if poset is None:
        poset = poset_from_ref(_require(data, "poset", dict))
    dims = _require(data, "dims", dict)
    for s, d in dims.items():
        if s not in poset.index:
            raise MalformedInputError(f"unknown face {s!r} in dims")
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise MalformedInputError(f"bad dimension {d!r} at {s}")
    full = {s: dims.get(s, 0) for s in poset.signs}
    gamma, delta = {}, {}
    for key, mat in data.get("gamma", {}).items():
        lo, up = _split_key(key)
        if lo not in poset.index or up not in poset.index:
            raise MalformedInputError(f"unknown face in gamma key {key!r}")
        gamma[(lo, up)] = _matrix(f"gamma {key}", mat, full[up], full[lo])
    for key, mat in data.get("delta", {}).items():
        up, lo = _split_key(key)
        if lo not in poset.index or up not in poset.index:
            raise MalformedInputError(f"unknown face in delta key {key!r}")
        delta[(up, lo)] = _matrix(f"delta {key}", mat, full[lo], full[up])
    return DoubleRep(poset, full, gamma, delta)


def load_rep(path) -> DoubleRep:
    return rep_from_json(read_json(path))


# embeddings


def embedding_to_json(emb: EmbeddingMap) -> dict:
    return {"n": emb.n, "i": emb.i, "j": emb.j, "table": dict(emb.table)}


def embedding_from_json(data) -> EmbeddingMap:
    n, i, j = _require(data, "n", int), _require(data, "i", int), _require(data, "j", int)
    table = _require(data, "table", dict)
    emb = iota_braid(n, i, j)
    if table != emb.table:
        raise MalformedInputError("embedding table does not match the braid embedding")
    return emb
