"""``aont`` command line.

Output is JSON unless ``--pretty`` is given. Exit codes: 0 ok, 1 usage,
2 bad input data, 3 a check that ran and failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bundle
from .bounds import bound
from .constructions import (
    cauchy_matrix,
    cyclotomic_matrix,
    cyclotomy_context,
    doubled_matrix,
    hadamard_design,
    is_linear_t_aont,
    jsi_matrix,
    lehmer_design,
    meq_matrix,
    pg3_design,
    predicted_metrics,
)
from .density import density
from .designs import (
    Design,
    complement_design,
    develop_difference_set,
    incidence_matrix,
    sbibd_invertible_parity,
    verify_bibd,
)
from .errors import AontError
from .field import FiniteField
from .gf2 import BinaryMatrix, is_invertible
from .search import SearchConfig, run_search
from .transform import AontArray, AontCodec, check_orthogonal_array, verify_t_aont_array

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CHECK = 0, 1, 2, 3

log = logging.getLogger("aont")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, pretty_lines: list[str] | None = None) -> None:
    if args.pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    else:
        print(json.dumps(payload, indent=2 if args.pretty else None))


def _read_matrix(path: str) -> BinaryMatrix:
    if path.startswith("bundle:"):
        return bundle.load_matrix(path[len("bundle:"):])
    return BinaryMatrix.from_bmat(Path(path).read_text())


def _read_design(path: str) -> Design:
    if path.startswith("bundle:"):
        return bundle.load_design(path[len("bundle:"):])
    return Design.from_text(Path(path).read_text())


# analyze

def cmd_analyze(args) -> int:
    m = _read_matrix(args.matrix)
    rep = density(m, args.t)
    inv = is_invertible(m)
    payload = {**rep.to_json(), "invertible": inv}
    if args.figure:
        from .plotting import plot_pair_heatmap

        payload["figure"] = str(plot_pair_heatmap(m, args.figure, Path(args.matrix).name))
    _emit(args, payload, [
        f"s          {rep.s}",
        f"t          {rep.t}",
        f"N_t        {rep.n_t}",
        f"R_t        {rep.r_t} ~ {rep.r_t_float:.5f}",
        f"invertible {'yes' if inv else 'no'}",
    ])
    return EXIT_OK


# construct

def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--family {args.family} needs --{name}")
    return val


def cmd_construct(args) -> int:
    fam = args.family
    out = Path(args.out)
    if fam == "cauchy":
        field = FiniteField.from_spec(args.field) if args.field else FiniteField(_need(args, "q"))
        c = cauchy_matrix(field, s=_need(args, "s"))
        meta = {"family": fam, "field": repr(field), "s": c.s,
                "t_aont": {str(t): is_linear_t_aont(c, t) for t in range(1, c.s + 1)}}
        out.write_text(json.dumps({"field": repr(field), "entries": [list(r) for r in c.entries]}) + "\n")
    else:
        kw = {}
        if fam == "jsi":
            kw["s"] = _need(args, "s")
            m = jsi_matrix(kw["s"])
        elif fam == "meq":
            kw["s"] = _need(args, "s")
            m = meq_matrix(kw["s"])
        elif fam == "doubled":
            m = doubled_matrix()
        elif fam == "hadamard":
            kw["design"] = hadamard_design(_need(args, "p"))
            m = incidence_matrix(kw["design"])
        elif fam == "pg3":
            kw["design"] = pg3_design(_need(args, "m"))
            m = incidence_matrix(kw["design"])
        elif fam == "lehmer":
            kw["design"] = lehmer_design(_need(args, "q"))
            m = incidence_matrix(kw["design"])
        else:
            kw["ctx"] = cyclotomy_context(_need(args, "p"))
            m = cyclotomic_matrix(kw["ctx"])
        meta = predicted_metrics(fam, **kw)
        meta["s"] = m.s
        meta["invertible"] = is_invertible(m)
        out.write_text(m.to_bmat([f"family: {fam}"]))
    sidecar = out.with_name(out.name + ".json")
    sidecar.write_text(json.dumps(meta, indent=2) + "\n")
    meta["out"] = str(out)
    meta["sidecar"] = str(sidecar)
    _emit(args, meta, [f"{k:22} {v}" for k, v in meta.items()])
    return EXIT_OK


# search

def cmd_search(args) -> int:
    mode = {"hill": "hill_climb"}.get(args.mode, args.mode)
    start = _read_matrix(args.start) if args.start else None
    extra = {} if args.epsilon is None else {"epsilon": args.epsilon}
    cfg = SearchConfig(args.s, mode, trials=args.trials, time_budget=args.budget, seed=args.seed,
                       workers=args.workers, checkpoint=args.checkpoint, resume=args.resume,
                       start=start, **extra)
    res = run_search(cfg)
    payload = res.to_json()
    if args.out:
        Path(args.out).write_text(res.best_matrix.to_bmat([f"N_2 = {res.best_n2}", f"mode: {mode}"]))
        payload["out"] = args.out
    lines = [f"best N_2  {res.best_n2}", f"exhausted {res.exhausted}", f"nodes     {res.nodes_visited}"]
    lines += ["  " + r for r in payload["matrix"]]
    _emit(args, payload, lines)
    return EXIT_OK


# bound

def cmd_bound(args) -> int:
    rep = bound(args.s, args.method, args.rho)
    payload = rep.to_json()
    _emit(args, payload, [f"{k:8} {v}" for k, v in payload.items()])
    return EXIT_OK


# design

def cmd_design(args) -> int:
    if args.design_cmd == "verify":
        d = _read_design(args.file)
        p = verify_bibd(d, args.lam)
        payload = {"v": p.v, "b": p.b, "r": p.r, "k": p.k, "lambda": p.lam, "symmetric": p.symmetric}
        if p.symmetric:
            payload["invertible_parity"] = sbibd_invertible_parity(p)
        _emit(args, payload, [f"{k:18} {v}" for k, v in payload.items()])
        return EXIT_OK
    if args.design_cmd == "complement":
        d = complement_design(_read_design(args.file))
    else:
        try:
            base = [int(x) for x in args.set.replace(",", " ").split()]
        except ValueError:
            raise UsageError(f"--set must list integers, got {args.set!r}") from None
        d = develop_difference_set(base, args.mod)
    text = d.to_text()
    if args.out:
        Path(args.out).write_text(text)
        _emit(args, {"v": d.v, "b": d.b, "k": d.k, "out": args.out}, [f"wrote {args.out}"])
    else:
        sys.stdout.write(text)
    return EXIT_OK


# encode / decode

def _codec_io(args, encode: bool) -> int:
    m = _read_matrix(args.matrix)
    if args.word_bits % 8:
        raise UsageError("file streams need --word-bits to be a multiple of 8")
    codec = AontCodec(m, args.word_bits)
    data = Path(args.inp).read_bytes()
    out = codec.encode_bytes(data) if encode else codec.decode_bytes(data)
    Path(args.out).write_bytes(out)
    payload = {"s": m.s, "word_bits": args.word_bits, "bytes_in": len(data), "bytes_out": len(out),
               "out": args.out}
    _emit(args, payload, [f"{k:10} {v}" for k, v in payload.items()])
    return EXIT_OK


def cmd_encode(args) -> int:
    return _codec_io(args, True)


def cmd_decode(args) -> int:
    return _codec_io(args, False)


# array

def cmd_array(args) -> int:
    a = AontArray.from_tsv(Path(args.file).read_text())
    payload = {"N": a.n_rows, "k": a.width, "v": a.v}
    ok = True
    if args.t is not None:
        payload["t_aont"] = verify_t_aont_array(a, args.t)
        ok &= payload["t_aont"]
    if args.strength is not None:
        payload["orthogonal_array"] = check_orthogonal_array(a, args.strength)
        ok &= payload["orthogonal_array"]
    if args.t is None and args.strength is None:
        raise UsageError("array verify needs --t and/or --strength")
    _emit(args, payload, [f"{k:16} {v}" for k, v in payload.items()])
    return EXIT_OK if ok else EXIT_CHECK


# verify-paper

def cmd_verify_paper(args) -> int:
    from .reproduce import verify_paper

    report = verify_paper(args.scope, long=args.long, workers=args.workers)
    payload = report.to_json()
    if args.figures:
        from .plotting import render_report

        payload["figures"] = [str(p) for p in render_report(args.figures)]
    lines = [f"{'check':28} {'status':8} {'ms':>9}  location"]
    for c in report.checks:
        lines.append(f"{c.check_id:28} {c.status:8} {c.runtime_ms:9.1f}  {c.paper_location}")
        if c.status == "fail":
            lines.append(f"    expected {c.expected!r}\n    computed {c.computed!r} {c.note}")
    counts = report.counts()
    lines.append(" ".join(f"{k}={v}" for k, v in counts.items()))
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_CHECK


# bundle

def cmd_bundle(args) -> int:
    if args.bundle_cmd == "show":
        sys.stdout.write(bundle.read_text(args.id))
        return EXIT_OK
    entries = bundle.catalog()
    _emit(args, {"items": [e.to_json() for e in entries]},
          [f"{e.summary():34} [{e.citation}]" for e in entries])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = _Parser(prog="aont", description="Tools for binary all-or-nothing transforms.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="count invertible t x t submatrices")
    a.add_argument("matrix", help="bmat/1 file, or bundle:<id>")
    a.add_argument("--t", type=int, default=2)
    a.add_argument("--figure", help="write a row-pair heatmap to this image file")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", parents=[common], help="build a matrix from one of the families")
    c.add_argument("--family", required=True,
                   choices=["cauchy", "jsi", "meq", "doubled", "hadamard", "pg3", "lehmer", "cyclotomy"])
    c.add_argument("--s", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--field", help='field spec for cauchy, e.g. "p:11" or "2^8"')
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", parents=[common], help="look for dense invertible matrices")
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--mode", choices=["exhaustive", "random", "hill"], default="exhaustive")
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--budget", type=float, help="time budget in seconds")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=float, help="probability of a 1 for random starts")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--checkpoint")
    s.add_argument("--resume")
    s.add_argument("--start", help="initial matrix for hill climbing")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("bound", parents=[common], help="upper bounds on R_1 and R_2")
    b.add_argument("--s", type=int, required=True)
    b.add_argument("--method", choices=["r1", "r2-basic", "r2-qp"], required=True)
    b.add_argument("--rho", type=int, default=4)
    b.set_defaults(func=cmd_bound)

    d = sub.add_parser("design", help="block designs")
    dsub = d.add_subparsers(dest="design_cmd", required=True, parser_class=_Parser)
    dv = dsub.add_parser("verify", parents=[common])
    dv.add_argument("file", help="bibd/1 file, or bundle:<id>")
    dv.add_argument("--lam", type=int)
    dc = dsub.add_parser("complement", parents=[common])
    dc.add_argument("file")
    dc.add_argument("--out")
    dd = dsub.add_parser("develop", parents=[common])
    dd.add_argument("--set", required=True, help="base residues, e.g. 0,1,3,9")
    dd.add_argument("--mod", type=int, required=True)
    dd.add_argument("--out")
    d.set_defaults(func=cmd_design)

    for name, fn in (("encode", cmd_encode), ("decode", cmd_decode)):
        e = sub.add_parser(name, parents=[common], help=f"{name} a file with a binary AONT")
        e.add_argument("--matrix", required=True)
        e.add_argument("--word-bits", type=int, default=8)
        e.add_argument("--in", dest="inp", required=True)
        e.add_argument("--out", required=True)
        e.set_defaults(func=fn)

    ar = sub.add_parser("array", help="unbiased arrays")
    asub = ar.add_subparsers(dest="array_cmd", required=True, parser_class=_Parser)
    av = asub.add_parser("verify", parents=[common])
    av.add_argument("--file", required=True)
    av.add_argument("--t", type=int)
    av.add_argument("--strength", type=int)
    ar.set_defaults(func=cmd_array)

    v = sub.add_parser("verify-paper", parents=[common], help="recompute the published values")
    v.add_argument("--scope", default="all")
    v.add_argument("--long", action="store_true", help="include the s = 7, 8 exhaustive searches")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--figures", help="directory for report figures")
    v.set_defaults(func=cmd_verify_paper)

    bu = sub.add_parser("bundle", help="matrices and designs shipped with the package")
    bsub = bu.add_subparsers(dest="bundle_cmd", required=True, parser_class=_Parser)
    bsub.add_parser("list", parents=[common])
    bshow = bsub.add_parser("show", parents=[common])
    bshow.add_argument("id")
    bu.set_defaults(func=cmd_bundle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"aont: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AontError, ValueError, OSError) as exc:
        print(f"aont: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
