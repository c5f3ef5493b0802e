"""
Plain-text artifact formats with content-hash chaining: curve/config
key-value files, factor-base files, relation files, matrix files, and
a_p caches.  Later stages pin the hash of the factor base they were
built from, so mixing mismatched artifacts is rejected.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .cubic import BinaryCubicForm, CubicField, FactorBase, FactorBasePrime
from .elliptic import EllipticCurve
from .gf2 import SparseBitMatrix
from .sieve import Relation, RelationSet


class HashMismatchError(ValueError):
    pass


def content_hash(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def read_keyvalue(path) -> dict:
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad key-value line: {line!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def write_keyvalue(path, mapping):
    lines = [f"{k} = {v}" for k, v in mapping.items()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_curve_file(path):
    """Curve key-value file: a1, a2, a3, a4, a6 plus optional bad_primes,
    root_number, conductor, known_rank."""
    kv = read_keyvalue(path)
    try:
        curve = EllipticCurve(*(int(kv[k]) for k in ("a1", "a2", "a3", "a4", "a6")))
    except KeyError as e:
        raise ValueError(f"curve file missing key {e}") from e
    extra = {}
    if "bad_primes" in kv:
        extra["bad_primes"] = tuple(int(p) for p in kv["bad_primes"].split(","))
    for k in ("root_number", "conductor", "known_rank"):
        if k in kv:
            extra[k] = int(kv[k])
    return curve, extra


def _fb_payload(base: FactorBase) -> str:
    lines = [
        "form = " + " ".join(str(c) for c in base.field.form.coeffs),
        f"disc = {base.field.disc}",
        f"bound = {base.bound}",
        f"rational_primes_scanned = {base.rational_prime_count}",
        f"count = {len(base)}",
        "begin primes",
    ]
    for fp in base.primes:
        lines.append(
            f"{fp.p} {fp.root[0]} {fp.root[1]} {int(fp.ramified)} {fp.alpha_valuation}"
        )
    lines.append("end primes")
    return "\n".join(lines) + "\n"


def write_factor_base(path, base: FactorBase) -> str:
    payload = _fb_payload(base)
    h = content_hash(payload)
    Path(path).write_text(f"# factor base {h}\n" + payload)
    return h


def read_factor_base(path):
    """(FactorBase, hash); verifies the stored content hash."""
    text = Path(path).read_text()
    head, _, payload = text.partition("\n")
    stored = head.split()[-1]
    if content_hash(payload) != stored:
        raise HashMismatchError(f"factor base file {path} fails its hash check")
    lines = payload.splitlines()
    kv = dict(line.split(" = ", 1) for line in lines[:5])
    form = BinaryCubicForm(*(int(c) for c in kv["form"].split()))
    field = CubicField.from_maximal_form(form)
    if field.disc != int(kv["disc"]):
        raise HashMismatchError("stored discriminant disagrees with the form")
    primes = []
    for line in lines[6:]:
        if line == "end primes":
            break
        p, r, s, ram, aval = line.split()
        primes.append(FactorBasePrime(int(p), (int(r), int(s)), bool(int(ram)), int(aval)))
    base = FactorBase(field, int(kv["bound"]), primes, int(kv["rational_primes_scanned"]))
    if len(base) != int(kv["count"]):
        raise HashMismatchError("factor base count mismatch")
    return base, stored


def _relation_line(rel: Relation) -> str:
    exps = ",".join(f"{c}^{e}" for c, e in rel.exponents)
    return f"{rel.a} {rel.b} : {exps} : {rel.provenance}"


def write_relations(path, rels: RelationSet, fb_hash: str):
    lines = [f"fb_hash = {fb_hash}", f"count = {len(rels)}", "begin relations"]
    for rel in rels.relations:
        lines.append(_relation_line(rel))
    lines.append("end relations")
    Path(path).write_text("\n".join(lines) + "\n")


def append_relations(path, new_relations, fb_hash: str):
    """Rewrite the relation file with the new relations appended."""
    existing, stored = read_relation_lines(path)
    if stored != fb_hash:
        raise HashMismatchError("relation file pins a different factor base")
    text = Path(path).read_text().splitlines()
    out = text[:-1]  # drop "end relations"
    for rel in new_relations:
        out.append(_relation_line(rel))
    out.append("end relations")
    n = len(existing) + len(new_relations)
    out[1] = f"count = {n}"
    Path(path).write_text("\n".join(out) + "\n")


def read_relation_lines(path):
    lines = Path(path).read_text().splitlines()
    kv = dict(line.split(" = ", 1) for line in lines[:2])
    rels = []
    for line in lines[3:]:
        if line == "end relations":
            break
        head, _, tail = line.partition(" : ")
        a, b = (int(x) for x in head.split())
        exps_part, _, prov = tail.partition(" : ")
        exps = []
        if exps_part:
            for tok in exps_part.split(","):
                c, e = tok.split("^")
                exps.append((int(c), int(e)))
        rels.append(Relation(a, b, tuple(exps), prov or "sieved"))
    if len(rels) != int(kv["count"]):
        raise HashMismatchError("relation count mismatch")
    return rels, kv["fb_hash"]


def read_relations(path, base: FactorBase, fb_hash: str) -> RelationSet:
    rels, stored = read_relation_lines(path)
    if stored != fb_hash:
        raise HashMismatchError(
            f"relation file pins factor base {stored}, expected {fb_hash}"
        )
    out = RelationSet(base)
    out.extend(rels)
    return out


def write_matrix(path, m: SparseBitMatrix, fb_hash: str):
    lines = [f"fb_hash = {fb_hash}", f"rows = {m.nrows}", f"cols = {m.ncols}",
             "begin rows"]
    for i in range(m.nrows):
        idxs = m.row_indices(i)
        lines.append(" ".join(str(c) for c in idxs) if idxs else "-")
    lines.append("end rows")
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path, fb_hash: str | None = None):
    lines = Path(path).read_text().splitlines()
    kv = dict(line.split(" = ", 1) for line in lines[:3])
    if fb_hash is not None and kv["fb_hash"] != fb_hash:
        raise HashMismatchError("matrix file pins a different factor base")
    rows = []
    for line in lines[4:]:
        if line == "end rows":
            break
        rows.append([] if line == "-" else [int(c) for c in line.split()])
    m = SparseBitMatrix.from_rows_of_indices(rows, int(kv["cols"]))
    if m.nrows != int(kv["rows"]):
        raise HashMismatchError("matrix row count mismatch")
    return m, kv["fb_hash"]


def read_ap_cache(path) -> dict:
    """One 'p a_p' pair per line, sorted by p."""
    cache = {}
    last = 0
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p, ap = line.split()
        p = int(p)
        if p <= last:
            raise ValueError("a_p cache must be sorted by p without repeats")
        last = p
        cache[p] = int(ap)
    return cache


def write_ap_cache(path, cache: dict):
    lines = [f"{p} {cache[p]}" for p in sorted(cache)]
    Path(path).write_text("\n".join(lines) + "\n")
