"""JSON documents and the ``cubchain`` command line.

Exit codes: 0 when every check passes, 1 when a validated computation finds
a violation, 2 for unreadable or ill-formed input.  Every run prints one
JSON report to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any

from .chain import ChainComplex, homology, validate_chain
from .crossed import CrossedLevel, InternalCrossedComplex, alpha, beta, validate_crossed
from .cubical import CubicalBundle, check_laws, key_from_str, key_to_str, op_degrees, validate_identities
from .intlin import FGAbGroup, FGAbHom, IntMatrix, snf
from .nerve import MAX_NERVE, nerve, normalize, roundtrip_nerve
from .report import Report, ValidationError

KINDS = ("group", "hom", "chain", "crossed", "bundle")


class DocumentError(ValueError):
    """Input that cannot be read as a document; always exit code 2."""


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any


# -- parsing ---------------------------------------------------------------------------


def _fail(path: str, msg: str):
    raise DocumentError(f"{path}: {msg}")


def _obj(value, path, required, optional=()):
    if not isinstance(value, dict):
        _fail(path, "expected an object")
    unknown = sorted(set(value) - set(required) - set(optional))
    if unknown:
        _fail(f"{path}.{unknown[0]}", "unknown field")
    for k in required:
        if k not in value:
            _fail(f"{path}.{k}", "missing field")
    return value


def _int(value, path) -> int:
    if isinstance(value, bool):
        _fail(path, "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        s = value.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit() and body.isascii():
            return int(s)
    _fail(path, "expected an integer or a decimal integer string")


def _count(value, path) -> int:
    n = _int(value, path)
    if n < 0:
        _fail(path, "expected a nonnegative count")
    return n


def _matrix(value, path, rows: int, cols: int | None) -> IntMatrix:
    if not isinstance(value, list):
        _fail(path, "expected an array of rows")
    if len(value) != rows:
        _fail(path, f"expected {rows} rows, got {len(value)}")
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            _fail(f"{path}[{i}]", "expected an array")
        if cols is None:
            cols = len(row)
        if len(row) != cols:
            _fail(f"{path}[{i}]", f"expected {cols} entries, got {len(row)}")
        out.append([_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return IntMatrix(out, rows, cols if cols is not None else 0)


def _group(value, path, top_level=False) -> FGAbGroup:
    v = _obj(value, path, ("generators", "relations"), ("kind",))
    if "kind" in v and v["kind"] != "group":
        _fail(f"{path}.kind", "expected 'group'")
    g = _count(v["generators"], f"{path}.generators")
    rel = _matrix(v["relations"], f"{path}.relations", g, None if g else 0)
    return FGAbGroup(g, rel)


def _hom(value, path, source: FGAbGroup, target: FGAbGroup) -> FGAbHom:
    return FGAbHom(source, target, _matrix(value, path, target.generators, source.generators))


def _groups(value, path) -> list[FGAbGroup]:
    if not isinstance(value, list) or not value:
        _fail(path, "expected a nonempty array of groups")
    return [_group(g, f"{path}[{k}]") for k, g in enumerate(value)]


def _parse_payload(kind: str, v: dict, path: str = "$"):
    if kind == "group":
        return _group(v, path)
    if kind == "hom":
        _obj(v, path, ("kind", "source", "target", "matrix"))
        S, T = _group(v["source"], f"{path}.source"), _group(v["target"], f"{path}.target")
        return _hom(v["matrix"], f"{path}.matrix", S, T)
    if kind == "chain":
        _obj(v, path, ("kind", "groups", "boundaries"))
        groups = _groups(v["groups"], f"{path}.groups")
        bd = v["boundaries"]
        if not isinstance(bd, dict):
            _fail(f"{path}.boundaries", "expected an object")
        want = {str(n) for n in range(1, len(groups))}
        extra = sorted(set(bd) - want)
        if extra:
            _fail(f"{path}.boundaries.{extra[0]}", "unknown degree")
        homs = []
        for n in range(1, len(groups)):
            p = f"{path}.boundaries.{n}"
            if str(n) not in bd:
                _fail(p, "missing boundary")
            homs.append(_hom(bd[str(n)], p, groups[n], groups[n - 1]))
        return ChainComplex(tuple(groups), tuple(homs))
    if kind == "crossed":
        _obj(v, path, ("kind", "C0", "levels"))
        C0 = _group(v["C0"], f"{path}.C0")
        if not isinstance(v["levels"], list):
            _fail(f"{path}.levels", "expected an array")
        levels, prev = [], C0
        for k, lv in enumerate(v["levels"]):
            n, p = k + 1, f"{path}.levels[{k}]"
            need = ("group", "eps", "d0", "d1") if n == 1 else ("group", "eps", "p", "delta")
            _obj(lv, p, need)
            G = _group(lv["group"], f"{p}.group")
            parts = {"eps": _hom(lv["eps"], f"{p}.eps", C0, G)}
            if n == 1:
                parts["d0"] = _hom(lv["d0"], f"{p}.d0", G, C0)
                parts["d1"] = _hom(lv["d1"], f"{p}.d1", G, C0)
            else:
                parts["p"] = _hom(lv["p"], f"{p}.p", G, C0)
                parts["delta"] = _hom(lv["delta"], f"{p}.delta", G, prev)
            levels.append(CrossedLevel(G, **parts))
            prev = G
        return InternalCrossedComplex(C0, tuple(levels))
    if kind == "bundle":
        _obj(v, path, ("kind", "N", "groups", "ops"))
        N = _count(v["N"], f"{path}.N")
        groups = _groups(v["groups"], f"{path}.groups")
        if len(groups) != N + 1:
            _fail(f"{path}.groups", f"expected {N + 1} groups for N={N}")
        if not isinstance(v["ops"], dict):
            _fail(f"{path}.ops", "expected an object")
        ops = {}
        for name in sorted(v["ops"]):
            p = f"{path}.ops.{name}"
            try:
                key = key_from_str(name)
                s, t = op_degrees(key)
            except ValueError:
                _fail(p, "unknown operator key")
            if not (0 <= s <= N and 0 <= t <= N):
                _fail(p, "operator degree out of range")
            ops[key] = _hom(v["ops"][name], p, groups[s], groups[t])
        try:
            return CubicalBundle(N, tuple(groups), ops)
        except ValueError as exc:
            _fail(f"{path}.ops", str(exc))
    _fail(f"{path}.kind", f"unknown kind {kind!r}")


def parse_document(text: str | bytes) -> Document:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"syntax error: not UTF-8 at byte {exc.start}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except RecursionError:
        raise DocumentError("syntax error: nesting too deep") from None
    if not isinstance(data, dict):
        _fail("$", "expected an object")
    kind = data.get("kind")
    if kind not in KINDS:
        _fail("$.kind", f"expected one of {', '.join(KINDS)}")
    try:
        payload = _parse_payload(kind, data)
    except (ValueError, RecursionError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"$: {exc}") from None
    return Document(kind, payload)


# -- serialization ---------------------------------------------------------------------


def _mat_json(m: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def _group_json(G: FGAbGroup) -> dict:
    return {"generators": G.generators, "relations": _mat_json(G.relations)}


def document_to_json(doc: Document) -> dict:
    p = doc.payload
    if doc.kind == "group":
        return {"kind": "group", **_group_json(p)}
    if doc.kind == "hom":
        return {"kind": "hom", "source": _group_json(p.source), "target": _group_json(p.target),
                "matrix": _mat_json(p.matrix)}
    if doc.kind == "chain":
        return {"kind": "chain", "groups": [_group_json(g) for g in p.groups],
                "boundaries": {str(n): _mat_json(d.matrix)
                               for n, d in enumerate(p.boundaries, start=1)}}
    if doc.kind == "crossed":
        levels = []
        for lv in p.levels:
            entry = {"group": _group_json(lv.group), "eps": _mat_json(lv.eps.matrix)}
            for name in ("d0", "d1", "p", "delta"):
                h = getattr(lv, name)
                if h is not None:
                    entry[name] = _mat_json(h.matrix)
            levels.append(entry)
        return {"kind": "crossed", "C0": _group_json(p.C0), "levels": levels}
    if doc.kind == "bundle":
        return {"kind": "bundle", "N": p.N, "groups": [_group_json(g) for g in p.groups],
                "ops": {key_to_str(k): _mat_json(h.matrix) for k, h in p.ops.items()}}
    raise ValueError(f"unknown kind {doc.kind!r}")


def serialize_document(doc: Document) -> str:
    return json.dumps(document_to_json(doc), sort_keys=True, separators=(",", ":")) + "\n"


# -- commands --------------------------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubchain", description="Chain complexes, crossed complexes and "
                "cubical abelian groups with connections.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("homology", help="homology of a chain complex in one degree")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)

    s = sub.add_parser("laws", help="check identities, groupoid, interchange and transport laws")
    s.add_argument("file")

    s = sub.add_parser("nerve", help="cubical nerve of a chain complex")
    s.add_argument("file")
    s.add_argument("--max-dim", type=int, required=True)
    s.add_argument("-o", "--output")

    s = sub.add_parser("normalize", help="normalized chain complex of a bundle")
    s.add_argument("file")
    s.add_argument("-o", "--output")

    s = sub.add_parser("roundtrip", help="verify chain complex -> nerve -> normalize")
    s.add_argument("file")
    s.add_argument("--max-dim", type=int, required=True)

    s = sub.add_parser("crossed", help="the functors between chain and crossed complexes")
    s.add_argument("direction", choices=("alpha", "beta"))
    s.add_argument("file")
    s.add_argument("-o", "--output")

    s = sub.add_parser("snf", help="Smith normal form of a matrix (JSON array of rows)")
    s.add_argument("file")

    s = sub.add_parser("validate", help="validate any document")
    s.add_argument("file")
    return p


def _load(path: str, *kinds: str) -> Document:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    doc = parse_document(raw)
    if kinds and doc.kind not in kinds:
        raise DocumentError(f"$.kind: expected {' or '.join(kinds)}, got {doc.kind}")
    return doc


def _validate(doc: Document) -> Report:
    p = doc.payload
    if doc.kind == "chain":
        return validate_chain(p)
    if doc.kind == "crossed":
        return validate_crossed(p)
    if doc.kind == "bundle":
        return validate_identities(p)
    r = Report()
    if doc.kind == "hom":
        bad = p.relation_violations()
        if bad:
            r.add("well-defined", (), {"relation": bad[0]})
    return r


def _emit(doc: Document, output: str | None, result: dict):
    if output:
        try:
            with open(output, "w") as fh:
                fh.write(serialize_document(doc))
        except OSError as exc:
            raise DocumentError(f"cannot write {output}: {exc.strerror}") from None
        result["output"] = output
    else:
        result["document"] = document_to_json(doc)


def _group_summary(G: FGAbGroup) -> dict:
    tors, free = G.invariants()
    return {"invariant_factors": list(tors), "free_rank": free}


def _run(args) -> tuple[Report, dict]:
    cmd = args.command
    result: dict = {}
    if cmd == "snf":
        try:
            with open(args.file, "rb") as fh:
                data = json.loads(fh.read().decode("utf-8"))
        except OSError as exc:
            raise DocumentError(f"cannot read {args.file}: {exc.strerror}") from None
        except (UnicodeDecodeError, json.JSONDecodeError, RecursionError) as exc:
            raise DocumentError(f"syntax error: {exc}") from None
        if not isinstance(data, list):
            _fail("$", "expected an array of rows")
        M = _matrix(data, "$", len(data), None)
        s = snf(M)
        result.update(invariant_factors=list(s.invariant_factors), D=_mat_json(s.D),
                      U=_mat_json(s.U), V=_mat_json(s.V))
        return Report(), result

    kinds = {"homology": ("chain",), "laws": ("bundle",), "nerve": ("chain",),
             "normalize": ("bundle",), "roundtrip": ("chain",), "validate": ()}
    if cmd == "crossed":
        doc = _load(args.file, "crossed" if args.direction == "alpha" else "chain")
    else:
        doc = _load(args.file, *kinds[cmd])
    if cmd == "laws":
        return check_laws(doc.payload), result
    report = _validate(doc)
    if cmd == "validate":
        result["kind"] = doc.kind
    if not report.ok or cmd == "validate":
        return report, result

    if cmd == "homology":
        A = doc.payload
        if not 0 <= args.degree <= A.top_degree:
            raise DocumentError(f"--degree {args.degree} outside 0..{A.top_degree}")
        result["degree"] = args.degree
        result.update(_group_summary(homology(A, args.degree)))
    elif cmd in ("nerve", "roundtrip"):
        A = doc.payload
        if not A.top_degree <= args.max_dim <= MAX_NERVE:
            raise DocumentError(
                f"--max-dim must lie in {A.top_degree}..{MAX_NERVE} for this complex")
        result["max_dim"] = args.max_dim
        if cmd == "nerve":
            K = nerve(A, args.max_dim)
            out = CubicalBundle(K.N, K.groups, K.ops)
            _emit(Document("bundle", out), args.output, result)
        else:
            rt = roundtrip_nerve(A, args.max_dim)
            result["degrees"] = [_group_summary(g) for g in rt.forward.target.groups]
            report = rt.report
    elif cmd == "normalize":
        _emit(Document("chain", normalize(doc.payload, validate=False)), args.output, result)
    elif cmd == "crossed":
        if args.direction == "alpha":
            _emit(Document("chain", alpha(doc.payload)), args.output, result)
        else:
            _emit(Document("crossed", beta(doc.payload)), args.output, result)
    return report, result


def dispatch(argv: list[str]) -> tuple[int, dict | None]:
    """Run one command; returns the exit code and the JSON report.

    The report is ``None`` only when ``--help`` printed usage text instead.
    """
    command = argv[0] if argv else None
    try:
        try:
            args = _build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0), None
        command = args.command
        if command == "crossed":
            command = f"crossed {args.direction}"
        report, result = _run(args)
    except (_UsageError, DocumentError) as exc:
        return 2, {"command": command, "status": "error", "error": str(exc), "violations": []}
    except ValidationError as exc:
        return 1, {"command": command, "status": "violation", "error": str(exc),
                   "violations": exc.report.to_json()}
    code = 0 if report.ok else 1
    out = {"command": command, "status": "ok" if code == 0 else "violation"}
    out.update(result)
    out["violations"] = report.to_json()
    return code, out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = dispatch(argv)
    if report is not None:
        json.dump(report, sys.stdout)
        sys.stdout.write("\n")
    return code
