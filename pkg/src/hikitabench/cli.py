"""Command-line front end.

    hikitabench dual --type B --partition 3,3,1
    hikitabench flatness --levi 'C3:gl2|sp1' --special-dim 13 --json
    hikitabench hikita-verify --ambient A4 --m gl1,gl3 --l torus
    hikitabench batch instances.txt --jobs 4

Mathematical negatives (not-flat, mismatches) exit 0; usage errors exit 2;
internal failures exit 1.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from .hikita import (BElement, HikitaInstance, cartan_generators, diagram_check, fixed_point_census)
from .orbitcartan import build_orbit_scheme, flatness_check, hikita_failure_certificate
from .partitions import (OrbitLabel, Partition, a_group_trivial, bvls_dual, collapse, is_orbit_partition,
                         kim_betti, normal_orbit_image, orbit_partitions, surjectivity_necessary,
                         type_for_size)
from .polyring import MultiPoly, ring
from .rootdata import LeviSpec, LieType, coset_reps, free_double_cosets

SCHEMA = "hikitabench.report/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- parsing helpers


def _partition(args) -> tuple:
    if args.partition is None:
        raise UsageError("--partition is required")
    try:
        p = Partition.parse(args.partition)
    except ValueError as exc:
        raise UsageError(f"--partition: {exc}") from None
    fam = (args.type or "").upper()
    if fam not in ("A", "B", "C", "D"):
        raise UsageError(f"--type: expected one of A, B, C, D, got {args.type!r}")
    return p, fam


def _levi(text: str | None, flag: str, ambient: LieType | None = None) -> LeviSpec:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return LeviSpec.parse(text, ambient)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _ambient(text: str | None) -> LieType:
    if text is None:
        raise UsageError("--ambient is required")
    try:
        return LieType.parse(text)
    except ValueError as exc:
        raise UsageError(f"--ambient: {exc}") from None


def _instance(args) -> HikitaInstance:
    amb = _ambient(args.ambient)
    return HikitaInstance(amb, _levi(args.m, "--m", amb), _levi(args.l, "--l", amb))


# ---------------------------------------------------------------- verbs


def cmd_dual(args):
    p, fam = _partition(args)
    try:
        t = type_for_size(fam, p.size)
        o = OrbitLabel(p, t)
    except ValueError as exc:
        raise UsageError(f"--partition: {exc}") from None
    d = bvls_dual(o)
    res = {"type": fam, "partition": list(p.parts),
           "dual_type": d.ambient.family, "dual_partition": list(d.partition.parts)}
    return res, {"dual_partition": list(d.partition.parts)}


def cmd_collapse(args):
    p, fam = _partition(args)
    try:
        c = collapse(p, fam)
    except ValueError as exc:
        raise UsageError(f"--partition: {exc}") from None
    return ({"type": fam, "partition": list(p.parts), "collapse": list(c.parts)},
            {"collapse": list(c.parts)})


def cmd_cosets(args):
    if args.levi is not None:
        m = _levi(args.levi, "--levi")
        amb = m.ambient
    else:
        amb = _ambient(args.ambient)
        m = _levi(args.m, "--m", amb)
    if args.l is None:
        reps = coset_reps(m, "right")
        res = {"levi": str(m), "kind": "right", "count": len(reps), "reps": [str(w) for w in reps]}
    else:
        l = _levi(args.l, "--l", amb)
        labs = free_double_cosets(m, l)
        res = {"m": str(m), "l": str(l), "kind": "double-free", "count": len(labs),
               "reps": [str(x.rep) for x in labs]}
    return res, {"count": res["count"]}


def cmd_orbit_cartan(args):
    l = _levi(args.levi, "--levi")
    scheme = build_orbit_scheme(l, seed=args.seed)
    rep = flatness_check(l, args.special_dim, scheme)
    res = rep.to_json()
    res["points"] = len(scheme.points)
    res["base_point"] = [str(c) for c in scheme.base_point]
    res["gr_generators"] = [str(g) for g in scheme.gr_iprime.gb]
    res["quotient"] = scheme.quotient.to_json()
    return res, {"verdict": rep.verdict}


def cmd_flatness(args):
    l = _levi(args.levi, "--levi")
    rep = flatness_check(l, args.special_dim, build_orbit_scheme(l, seed=args.seed))
    return rep.to_json(), {"verdict": rep.verdict}


def _generators(args, inst: HikitaInstance):
    choice = args.generators or "default"
    if choice == "default":
        return None
    if choice == "cartan":
        return cartan_generators(inst.n)
    names = ring(inst.n)
    out = []
    try:
        with open(choice) as fh:
            for k, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                s_txt, _, g_txt = line.partition("|")
                s = MultiPoly.parse(s_txt or "1", names)
                g = MultiPoly.parse(g_txt or "1", names)
                out.append(BElement(s, g, f"line{k}"))
    except OSError as exc:
        raise UsageError(f"--generators: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"--generators: {exc}") from None
    return out


def cmd_hikita_verify(args):
    inst = _instance(args)
    result = diagram_check(inst, _generators(args, inst))
    census = fixed_point_census(inst)
    verdict = "equal" if result.equal else "mismatch"
    res = {"instance": inst.describe(), "fixed_points": census["count"],
           "per_generator": result.per_generator, "verdict": verdict}
    if result.mismatches:
        res["mismatches"] = result.mismatches
    return res, {"verdict": verdict, "fixed_points": census["count"]}


def cmd_census(args):
    inst = _instance(args)
    c = fixed_point_census(inst)
    res = {"instance": inst.describe(), "count": c["count"], "dual_count": c["dual_count"],
           "labels": [str(x.rep) for x in c["labels"]]}
    return res, {"count": c["count"]}


def _classify(p: Partition, fam: str) -> dict:
    noi = normal_orbit_image(p, fam) if fam != "A" else None
    return {"partition": list(p.parts), "type": fam,
            "verdicts": {"surjectivity_necessary": surjectivity_necessary(p, fam),
                         "a_group_trivial": a_group_trivial(p, fam),
                         "normal_orbit_image": noi if isinstance(noi, bool) else str(noi)}}


def cmd_surjectivity(args):
    fam = (args.type or "").upper()
    if fam not in ("A", "B", "C", "D"):
        raise UsageError(f"--type: expected one of A, B, C, D, got {args.type!r}")
    if args.partition is not None:
        p, _ = _partition(args)
        try:
            t = type_for_size(fam, p.size)
        except ValueError as exc:
            raise UsageError(f"--partition: {exc}") from None
        if not is_orbit_partition(p, t):
            raise UsageError(f"--partition: {p} is not a type {fam} orbit partition")
        row = _classify(p, fam)
        return row, row["verdicts"]
    if args.size is None:
        raise UsageError("give --partition or --size")
    try:
        t = type_for_size(fam, args.size)
    except ValueError as exc:
        raise UsageError(f"--size: {exc}") from None
    rows = [_classify(p, fam) for p in orbit_partitions(t)]
    n_surj = sum(r["verdicts"]["surjectivity_necessary"] for r in rows)
    return ({"type": fam, "size": args.size, "rows": rows},
            {"partitions": len(rows), "surjectivity_necessary": n_surj})


def cmd_betti(args):
    if args.k is None or args.k < 0:
        raise UsageError("--k must be a nonnegative integer")
    b = kim_betti(args.k)
    res = {"k": args.k, "partition": [2 * args.k + 1, 2 * args.k + 1, 1], "betti": b, "total": sum(b)}
    if args.levi is not None:
        l = _levi(args.levi, "--levi")
        cert = hikita_failure_certificate(l, b)
        res["certificate"] = cert.to_json()
    return res, {"betti": b}


VERBS = {
    "dual": cmd_dual,
    "collapse": cmd_collapse,
    "cosets": cmd_cosets,
    "orbit-cartan": cmd_orbit_cartan,
    "flatness": cmd_flatness,
    "hikita-verify": cmd_hikita_verify,
    "surjectivity": cmd_surjectivity,
    "betti": cmd_betti,
    "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized fallbacks")
    parser = _Parser(prog="hikitabench", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in VERBS:
        aliases = ["orbitcartan"] if verb == "orbit-cartan" else []
        sp = sub.add_parser(verb, parents=[common], aliases=aliases)
        if verb in ("dual", "collapse", "surjectivity"):
            sp.add_argument("--type")
            sp.add_argument("--partition")
        if verb == "surjectivity":
            sp.add_argument("--size", type=int)
        if verb in ("cosets", "orbit-cartan", "flatness", "betti"):
            sp.add_argument("--levi")
        if verb in ("orbit-cartan", "flatness"):
            sp.add_argument("--special-dim", type=int)
        if verb in ("cosets", "hikita-verify", "census"):
            sp.add_argument("--ambient")
            sp.add_argument("--m")
            sp.add_argument("--l")
        if verb == "hikita-verify":
            sp.add_argument("--generators", help="default, cartan, or a file of 's | g' lines")
        if verb == "betti":
            sp.add_argument("--k", type=int)
    bp = sub.add_parser("batch", parents=[common])
    bp.add_argument("file")
    bp.add_argument("--jobs", type=int, default=1)
    return parser


# ---------------------------------------------------------------- running


def run(argv: Sequence[str]) -> tuple:
    """Parse and run one non-batch command; returns (exit_code, report)."""
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(list(argv))
        verb = "orbit-cartan" if args.verb == "orbitcartan" else args.verb
        if verb == "batch":
            raise UsageError("batch files cannot nest batch commands")
        result, verdicts = VERBS[verb](args)
        code = 0
    except UsageError as exc:
        return 2, {"schema": SCHEMA, "error": {"kind": "usage", "message": str(exc)},
                   "manifest": _manifest(argv, t0, 0, {})}
    except Exception as exc:  # internal failure
        return 1, {"schema": SCHEMA, "error": {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"},
                   "manifest": _manifest(argv, t0, 0, {})}
    return code, {"schema": SCHEMA, "manifest": _manifest(argv, t0, args.seed, verdicts),
                  "verb": verb, "result": result}


def _manifest(argv, t0, seed, verdicts) -> dict:
    return {"tool": "hikitabench", "version": __version__, "input": list(argv), "seed": seed,
            "wall_time_s": round(time.perf_counter() - t0, 6), "verdicts": verdicts}


def _run_line(line: str) -> tuple:
    try:
        argv = shlex.split(line)
    except ValueError as exc:
        return 2, {"schema": SCHEMA, "error": {"kind": "usage", "message": str(exc)}}
    return run(argv)


def run_batch(path: str, jobs: int = 1, seed: int = 0) -> tuple:
    t0 = time.perf_counter()
    try:
        with open(path) as fh:
            lines = [(k, ln.strip()) for k, ln in enumerate(fh, start=1)]
    except OSError as exc:
        raise UsageError(f"batch file: {exc}") from None
    lines = [(k, ln) for k, ln in lines if ln and not ln.startswith("#")]
    texts = [ln for _, ln in lines]
    if jobs > 1 and len(texts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            outcomes = list(ex.map(_run_line, texts))
    else:
        outcomes = [_run_line(t) for t in texts]
    reports, failures = [], []
    for (k, text), (code, rep) in zip(lines, outcomes):
        reports.append({"line": k, "command": text, "exit_code": code, **rep})
        if code != 0:
            failures.append({"line": k, "exit_code": code, "message": rep.get("error", {}).get("message", "")})
    summary = {"total": len(reports), "ok": len(reports) - len(failures), "failed": len(failures),
               "failures": failures}
    return 0, {"schema": SCHEMA, "manifest": _manifest(["batch", path], t0, seed, {"ok": summary["ok"],
                                                                                    "failed": summary["failed"]}),
               "reports": reports, "summary": summary}


def _table(obj, indent: int = 0) -> list:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str, float, bool)) for x in
                                                             (v if isinstance(v, list) else [])):
                out.append(f"{pad}{k}:")
                out.extend(_table(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                out.append(f"{pad}-")
                out.extend(_table(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(f"{pad}{_scalar(obj)}")
    return out


def _scalar(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(map(str, v)) + ")"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    return str(v)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    if argv and argv[0] == "batch":
        try:
            args = build_parser().parse_args(argv)
            code, report = run_batch(args.file, args.jobs, args.seed)
        except UsageError as exc:
            print(f"hikitabench: error: {exc}", file=sys.stderr)
            return 2
        # batch output is always JSON: it is meant for pipelines
        print(json.dumps(report, indent=2))
        return code
    code, report = run(argv)
    if code != 0:
        print(f"hikitabench: error: {report['error']['message']}", file=sys.stderr)
        if as_json:
            print(json.dumps(report, indent=2))
        return code
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_table(report["result"])))
        m = report["manifest"]
        print(f"# {m['tool']} {m['version']}  wall {m['wall_time_s']}s  seed {m['seed']}")
    return code


if __name__ == "__main__":
    sys.exit(main())
