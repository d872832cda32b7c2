"""JSON encodings and atomic file output.

All documents carry explicit field names and 0-based indices; canonical
matrices are lists of row lists.  Writers are deterministic (sorted
keys, fixed separators, trailing newline) so identical runs produce byte
identical files.  Writes go through a temporary file and a rename.
"""

from __future__ import annotations

import json
import os
import tempfile

from sympol.errors import SchemaError
from sympol.linalg import Subspace
from sympol.space import SymplecticSpace


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def atomic_write_text(path, text):
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_json(path, obj):
    atomic_write_text(path, dumps(obj))


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc


def _need(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{where}: field {key!r} has wrong type")
    return val


def space_header(space: SymplecticSpace):
    return space.header()


def parse_space(obj, where="space") -> SymplecticSpace:
    n = _need(obj, "n", int, where)
    p = _need(obj, "p", int, where)
    form = _need(obj, "form", str, where)
    if form != "standard":
        raise SchemaError(f"{where}: unknown form {form!r}")
    return SymplecticSpace.standard(n, p)


def encode_subspace(s: Subspace):
    return {"p": s.p, "ambient": s.ambient, "rows": [list(r) for r in s.rows]}


def decode_subspace(obj, where="subspace") -> Subspace:
    p = _need(obj, "p", int, where)
    ambient = _need(obj, "ambient", int, where)
    rows = _need(obj, "rows", list, where)
    try:
        vecs = [tuple(int(x) for x in r) for r in rows]
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: rows must be integer lists") from exc
    s = Subspace.span(p, ambient, vecs)
    if s.rows != tuple(tuple(r) for r in vecs):
        raise SchemaError(f"{where}: rows are not in canonical form")
    return s


def encode_base(base):
    return {
        "space": base.space.header(),
        "points": [list(x) for x in base.points],
        "sigma": list(base.sigma),
    }


def decode_base(obj, where="base"):
    from sympol.bases import SymplecticBase, recognize

    space = parse_space(_need(obj, "space", dict, where), where + ".space")
    points = [tuple(int(x) for x in v) for v in _need(obj, "points", list, where)]
    sigma = tuple(_need(obj, "sigma", list, where))
    found = recognize(space, points)
    if found != sigma:
        raise SchemaError(f"{where}: sigma does not match the points")
    return SymplecticBase(space, points, sigma)


def encode_point_map(h):
    pairs = sorted((list(x), list(y)) for x, y in h.table.items())
    return {
        "space": h.source.header(),
        "target_space": h.target.header(),
        "pairs": [[list(a), list(b)] for (a, b) in pairs],
    }


def decode_point_map(obj, where="point map"):
    from sympol.bases import PointMap

    source = parse_space(_need(obj, "space", dict, where), where + ".space")
    target = parse_space(_need(obj, "target_space", dict, where), where + ".target_space")
    table = {}
    for entry in _need(obj, "pairs", list, where):
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError(f"{where}: pairs must be [source, target] lists")
        a, b = entry
        table[tuple(int(x) for x in a)] = tuple(int(x) for x in b)
    return PointMap(source, target, table)


def encode_grassmannian_map(f):
    src = f.source.space.header() | {"k": f.source.k}
    tgt = f.target.space.header() | {"k": f.target.k}
    return {
        "source": src,
        "target": tgt,
        "table": [[i, j] for i, j in enumerate(f.table)],
    }


def decode_grassmannian_map(obj, where="map", cache_dir=None):
    from sympol.grassmann import grassmannian
    from sympol.recon import GrassmannianMap

    src_obj = _need(obj, "source", dict, where)
    tgt_obj = _need(obj, "target", dict, where)
    source = grassmannian(parse_space(src_obj, where + ".source"), _need(src_obj, "k", int, where), cache_dir=cache_dir)
    target = grassmannian(parse_space(tgt_obj, where + ".target"), _need(tgt_obj, "k", int, where), cache_dir=cache_dir)
    entries = _need(obj, "table", list, where)
    table = [None] * len(source)
    seen = 0
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError(f"{where}: table entries must be [i, j] pairs")
        i, j = entry
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < len(source) and 0 <= j < len(target)):
            raise SchemaError(f"{where}: table index out of range")
        if table[i] is not None:
            raise SchemaError(f"{where}: duplicate table entry for {i}")
        table[i] = j
        seen += 1
    if seen != len(source):
        raise SchemaError(f"{where}: table must cover all {len(source)} source elements")
    return GrassmannianMap(source, target, tuple(table))


def write_report_csv(path, entries):
    """Flat CSV summary of verification report entries."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "check", "n", "p", "k", "expected", "actual", "pass"])
    for e in entries:
        params = e.get("params", {})
        writer.writerow(
            [
                e.get("suite", ""),
                e.get("check", ""),
                params.get("n", ""),
                params.get("p", ""),
                params.get("k", ""),
                e.get("expected", ""),
                e.get("actual", ""),
                "skip" if e.get("skipped") else e.get("pass"),
            ]
        )
    atomic_write_text(path, buf.getvalue())
