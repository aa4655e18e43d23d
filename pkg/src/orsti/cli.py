"""Command-line front end.

    orsti build --kind KIND --input PATH [PATH ...] --out ARCHIVE
    orsti query QUERY --index ARCHIVE [--pattern P | --pattern-hex H] [options]

Exit codes: 0 success, 2 input error, 3 usage error or archive kind mismatch.
"""

import argparse
import json
import sys

import numpy as np

from . import archive
from .approx import GapIndex, OneErrorIndex
from .docs import RelevanceMeasure, TopKIndex, list_documents
from .geo import GeoTextIndex
from .lz import Lz77Index, ScqIndex, serialize_parse
from .restricted import RestrictedIndex
from .text import DocumentIndex, SuffixIndex, check_text, suffix_array
from .wanc import LocusIndex, WeightedTree, parse_tree_lines


class InputError(Exception):
    pass


class UsageError(Exception):
    pass


# -- building ------------------------------------------------------------------

def _codes(text):
    return np.frombuffer(text, dtype=np.uint8).astype(np.int64)


def build_fields(kind, inputs, measure="tf", docrank=None):
    """Archive fields for ``kind`` from raw input byte strings."""
    if kind == "docs" or kind == "topk":
        docs = [check_text(d, "document") for d in inputs]
        if not docs:
            raise ValueError("empty document collection")
        fields = {"docs": docs, "sa": DocumentIndex(docs).gsa.full_sa}
        if kind == "topk":
            fields["measure"] = measure
            if measure == "docrank":
                if docrank is None or len(docrank) != len(docs):
                    raise ValueError("docrank needs one rank per document")
                fields["docrank"] = np.asarray(docrank, dtype=np.int64)
        return fields
    if len(inputs) != 1:
        raise ValueError(f"kind {kind!r} takes exactly one input")
    data = inputs[0]
    if kind == "wanc":
        parent, weight = parse_tree_lines(data.decode().splitlines())
        WeightedTree(parent, weight)
        return {"parent": np.asarray(parent, dtype=np.int64), "weight": np.asarray(weight, dtype=np.int64)}
    if kind == "geo":
        pts = []
        for no, line in enumerate(data.decode().splitlines(), 1):
            if line.strip():
                parts = line.split()
                if len(parts) != 2:
                    raise ValueError(f"line {no}: expected 'x y'")
                pts.append((int(parts[0]), int(parts[1])))
        if not pts:
            raise ValueError("empty point set")
        n = max(len(pts), max(max(p) for p in pts))
        return {"x": np.asarray([p[0] for p in pts]), "y": np.asarray([p[1] for p in pts]),
                "n": np.asarray([n])}
    text = check_text(data)
    fields = {"text": text, "sa": suffix_array(_codes(text))}
    if kind == "one-error":
        fields["rsa"] = suffix_array(_codes(text[::-1]))
    elif kind == "lz":
        fields["parse"] = serialize_parse(Lz77Index(text, sa=fields["sa"]).parse)
    elif kind not in ("sa", "lz", "scq", "restricted"):
        raise ValueError(f"unknown index kind {kind!r}")
    return fields


def _check_perm(sa, n):
    if len(sa) != n or (n and (sa.min() < 0 or sa.max() >= n or len(np.unique(sa)) != n)):
        raise archive.ArchiveError("stored suffix array is not a permutation")
    return sa


def open_index(kind, f):
    """Query object for an archive's ``(kind, fields)``."""
    try:
        if kind in ("docs", "topk"):
            docs = f["docs"]
            total = sum(len(d) + 1 for d in docs)
            di = DocumentIndex(docs, sa=_check_perm(f["sa"], total))
            if kind == "docs":
                return di
            m = f["measure"]
            table = tuple(int(v) for v in f["docrank"]) if m == "docrank" else None
            return TopKIndex(docs, RelevanceMeasure(m, table), docidx=di)
        if kind == "wanc":
            return WeightedTree(f["parent"].tolist(), f["weight"].tolist())
        if kind == "geo":
            return GeoTextIndex(zip(f["x"].tolist(), f["y"].tolist()), int(f["n"][0]))
        text = f["text"]
        sa = _check_perm(f["sa"], len(text))
        if kind == "sa":
            return SuffixIndex(_codes(check_text(text)), sa=sa)
        if kind == "one-error":
            return OneErrorIndex(text, sa=sa, rsa=_check_perm(f["rsa"], len(text)))
        if kind == "lz":
            return Lz77Index(text, sa=sa)
        if kind == "scq":
            return ScqIndex(text, sa=sa)
        if kind == "restricted":
            return RestrictedIndex(text, sa=sa)
    except KeyError as exc:
        raise archive.ArchiveError(f"archive is missing field {exc}") from None
    raise archive.ArchiveError(f"unknown index kind {kind!r}")


# -- queries -------------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for this query")


def _q_sa_range(idx, a):
    rng = idx.sa_range(a.pattern)
    return ("lo", "hi"), ([] if rng.empty else [(rng.lo, rng.hi)])


def _q_occ(idx, a):
    return ("pos",), [(p,) for p in idx.pattern_occurrences(a.pattern)]


def _q_locus(idx, a):
    _need(a, "i", "j")
    rng = LocusIndex(idx).st_locus(a.i, a.j)
    return ("lo", "hi"), [(rng.lo, rng.hi)]


def _q_docs(idx, a):
    di = idx.docidx if isinstance(idx, TopKIndex) else idx
    return ("doc",), [(d,) for d in list_documents(di, a.pattern)]


def _q_topk(idx, a):
    _need(a, "k")
    return ("doc", "weight"), idx.topk(a.pattern, a.k)


def _q_one_error(idx, a):
    return ("pos",), [(p,) for p in idx.query_one_mismatch(a.pattern)]


def _q_at_most_one(idx, a):
    return ("pos",), [(p,) for p in idx.query_at_most_one(a.pattern)]


def _q_gap(idx, a):
    _need(a, "d", "pattern2")
    gidx = GapIndex(idx.text, a.d, sa=idx.fwd.full_sa, rsa=idx.rev.full_sa)
    return ("pos",), [(p,) for p in gidx.query(a.pattern, a.pattern2)]


def _q_scq(idx, a):
    _need(a, "i", "j")
    rows = [(f, length, "-" if c is None else c) for f, length, c in idx.scq(a.i, a.j)]
    return ("F", "L", "C"), rows


def _q_ilcp(idx, a):
    _need(a, "k", "l", "r")
    return ("t", "len"), [idx.ilcp(a.k, a.l, a.r)]


def _q_pri_report(idx, a):
    _need(a, "i", "j")
    return ("pos",), [(p,) for p in idx.pri_report(a.pattern, a.i, a.j)]


def _q_pri_count(idx, a):
    _need(a, "i", "j")
    return ("count",), [(idx.pri_count(a.pattern, a.i, a.j),)]


def _q_rank(idx, a):
    _need(a, "k")
    return ("count",), [(idx.substring_rank(a.pattern, a.k),)]


def _optional(name, value):
    return (name,), ([] if value is None else [(value,)])


def _q_select(idx, a):
    _need(a, "k")
    return _optional("pos", idx.substring_select(a.pattern, a.k))


def _q_successive(idx, a):
    _need(a, "i")
    return _optional("pos", idx.successive(a.pattern, a.i))


def _q_nonoverlap(idx, a):
    return ("pos",), [(p,) for p in idx.non_overlapping(a.pattern)]


def _q_wanc(idx, a):
    _need(a, "leaf", "t")
    return ("node",), [(idx.weighted_ancestor(a.leaf, a.t),)]


def _q_primary(idx, a):
    occ = idx.all_occurrences(a.pattern) if a.all else idx.primary_occurrences(a.pattern)
    return ("pos",), [(p,) for p in occ]


def _q_lz_parse(idx, a):
    rows = [(f, length, "-" if c is None else c) for f, length, c in idx.parse]
    return ("F", "L", "C"), rows


def _q_geo(idx, a):
    _need(a, "rect")
    try:
        x1, x2, y1, y2 = (int(v) for v in a.rect.split(","))
    except ValueError:
        raise InputError("--rect expects X1,X2,Y1,Y2") from None
    return ("x", "y"), idx.geo_range_report(x1, x2, y1, y2)


# query name -> (accepted archive kinds, needs a pattern, handler)
QUERIES = {
    "sa-range": (("sa",), True, _q_sa_range),
    "occ": (("sa",), True, _q_occ),
    "locus": (("sa",), False, _q_locus),
    "docs": (("docs", "topk"), True, _q_docs),
    "topk": (("topk",), True, _q_topk),
    "one-error": (("one-error",), True, _q_one_error),
    "at-most-one": (("one-error",), True, _q_at_most_one),
    "gap": (("one-error",), True, _q_gap),
    "scq": (("scq",), False, _q_scq),
    "ilcp": (("scq",), False, _q_ilcp),
    "pri-report": (("restricted",), True, _q_pri_report),
    "pri-count": (("restricted",), True, _q_pri_count),
    "rank": (("restricted",), True, _q_rank),
    "select": (("restricted",), True, _q_select),
    "successive": (("restricted",), True, _q_successive),
    "nonoverlap": (("restricted",), True, _q_nonoverlap),
    "wanc": (("wanc",), False, _q_wanc),
    "primary-occ": (("lz",), True, _q_primary),
    "lz-parse": (("lz",), False, _q_lz_parse),
    "geo-report": (("geo",), False, _q_geo),
}


def run_query(name, kind, idx, args):
    """``(field names, rows)`` for one query against an opened index."""
    kinds, needs_pattern, handler = QUERIES[name]
    if kind not in kinds:
        raise UsageError(f"query {name!r} needs an archive of kind {'/'.join(kinds)}, got {kind!r}")
    if needs_pattern and args.pattern is None:
        raise UsageError("--pattern or --pattern-hex is required for this query")
    return handler(idx, args)


def format_rows(names, rows, as_json):
    lines = []
    for row in rows:
        if as_json:
            rec = {n: (None if v == "-" else v) for n, v in zip(names, row)}
            lines.append(json.dumps(rec, separators=(",", ":")))
        else:
            lines.append(" ".join(str(v) for v in row))
    return "".join(line + "\n" for line in lines)


# -- argument handling -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _decode_pattern(text, hexed):
    if hexed is not None:
        try:
            return bytes.fromhex(hexed)
        except ValueError:
            raise InputError(f"malformed hex pattern {hexed!r}") from None
    if text is None:
        return None
    try:
        return text.encode("utf-8", "strict")
    except UnicodeEncodeError:
        raise InputError("pattern is not valid UTF-8") from None


def make_parser():
    p = _Parser(prog="orsti", description="Text indexes over orthogonal range searching.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build an index archive")
    b.add_argument("--kind", required=True, choices=archive.KINDS)
    b.add_argument("--input", required=True, nargs="+", help="input file(s); '-' reads stdin")
    b.add_argument("--out", required=True)
    b.add_argument("--measure", choices=("tf", "docrank"), default="tf")
    b.add_argument("--docrank", help="comma-separated static rank per document")

    q = sub.add_parser("query", help="query an index archive")
    q.add_argument("query", choices=sorted(QUERIES))
    q.add_argument("--index", required=True)
    q.add_argument("--pattern")
    q.add_argument("--pattern-hex")
    q.add_argument("--pattern2", help="second pattern part (gap queries)")
    q.add_argument("--pattern2-hex")
    q.add_argument("--json", action="store_true")
    q.add_argument("--all", action="store_true", help="primary-occ: also list secondary occurrences")
    for name in ("k", "d", "i", "j", "l", "r", "t", "leaf"):
        q.add_argument(f"--{name}", type=int)
    q.add_argument("--rect")
    return p


def _read_input(path):
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _build(args):
    inputs = [_read_input(p) for p in args.input]
    docrank = None
    if args.docrank:
        try:
            docrank = [int(v) for v in args.docrank.split(",")]
        except ValueError:
            raise InputError("--docrank expects comma-separated integers") from None
    try:
        fields = build_fields(args.kind, inputs, args.measure, docrank)
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(str(exc)) from None
    try:
        archive.save(args.out, args.kind, fields)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
    return ""


def _query(args):
    args.pattern = _decode_pattern(args.pattern, args.pattern_hex)
    args.pattern2 = _decode_pattern(args.pattern2, args.pattern2_hex)
    try:
        kind, fields = archive.load(args.index)
    except OSError as exc:
        raise InputError(f"cannot read {args.index}: {exc.strerror}") from None
    kinds = QUERIES[args.query][0]
    if kind not in kinds:
        raise UsageError(f"query {args.query!r} needs an archive of kind {'/'.join(kinds)}, got {kind!r}")
    idx = open_index(kind, fields)
    names, rows = run_query(args.query, kind, idx, args)
    return format_rows(names, rows, args.json)


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        out = _build(args) if args.command == "build" else _query(args)
    except UsageError as exc:
        print(f"orsti: {exc}", file=sys.stderr)
        return 3
    except (InputError, ValueError) as exc:
        print(f"orsti: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
