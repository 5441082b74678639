"""Command-line interface.

Exit codes: 0 success, 1 computation inconsistency, 2 input error.
Machine output is one line of JSON with sorted keys; ``--format table``
prints aligned ``key  value`` rows instead.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from . import __version__
from .ehrhart import (HVector, counts_from_hstar, ehrhart_profile, idp_check,
                      reciprocity_check)
from .errors import AghkitError, ConsistencyError, InvalidInputError, ParseError
from .gorenstein import RingProfile, classify
from .hibi import minimal_generators
from .polytope import format_polytope, make_cross_plus, order_polytope, parse_polytope
from .poset import (format_poset, h_vector_from_descents, make_Pm, make_Qm,
                    parse_poset, socle_degree)
from .xi import build_context, verify_bijection

FAMILY_NOTES = {
    "pm": "poset P_m: chains x1<x3<...<x(2m-1), x2<x4<...<x(2m), plus x1<x(2m)",
    "qm": "poset Q_m: P_m plus x2<x(2m-1)",
    "cross": "polytope P_e = conv(+-e_1..+-e_d, e_1+...+e_(d-1)+2e_d), d = 2e+1",
}


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    family: Optional[str] = None
    verify: bool = False
    n_max: Optional[int] = None
    degree_cap: Optional[int] = None
    fmt: str = "json"
    threads: int = 1

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        return cls(
            command=ns.command,
            inputs=[x for x in [getattr(ns, "file", None)] if x],
            family=getattr(ns, "family", None),
            verify=getattr(ns, "verify", False) or getattr(ns, "cross_check", False),
            n_max=getattr(ns, "idp", None),
            degree_cap=getattr(ns, "degree_cap", None),
            fmt=ns.format,
            threads=ns.threads,
        )


def _family(spec: str, kinds):
    try:
        name, param = spec.split(":")
        param = int(param)
    except ValueError:
        raise InvalidInputError(f"family must look like NAME:INT, got {spec!r}") from None
    if name not in kinds:
        raise InvalidInputError(f"unknown family {name!r}; choose from {', '.join(kinds)}")
    return name, param


def _load_poset(cfg: RunConfig):
    if cfg.family:
        name, m = _family(cfg.family, ("pm", "qm"))
        return (make_Pm if name == "pm" else make_Qm)(m), (name, m)
    if not cfg.inputs:
        raise InvalidInputError("give a poset file or --family")
    return parse_poset(_read(cfg.inputs[0])), None


def _load_polytope(cfg: RunConfig):
    if cfg.family:
        _, e = _family(cfg.family, ("cross",))
        return make_cross_plus(e)
    if not cfg.inputs:
        raise InvalidInputError("give a polytope file or --family")
    return parse_polytope(_read(cfg.inputs[0]))


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_hstar(cfg: RunConfig) -> dict:
    poly = _load_polytope(cfg)
    prof = ehrhart_profile(poly, verify=cfg.verify, threads=cfg.threads)
    d = poly.dimension
    if prof.geometric_socle != prof.hstar.socle_degree:
        raise ConsistencyError(
            f"socle degree {prof.geometric_socle} from interior points, "
            f"{prof.hstar.socle_degree} from h*")
    out = {
        "dim": d,
        "counts": list(prof.counts[:d + 1]),
        "h_star": list(prof.hstar),
        "socle_degree": prof.geometric_socle,
        "reciprocity_ok": None,
        "idp": {},
    }
    if cfg.verify:
        extra = prof.counts[d + 1]
        if counts_from_hstar(prof.hstar, d, d + 1) != extra:
            raise ConsistencyError(f"L({d + 1}) = {extra} disagrees with the h* extrapolation")
        out["reciprocity_ok"] = reciprocity_check(prof)
        if not out["reciprocity_ok"]:
            raise ConsistencyError("Ehrhart reciprocity fails")
    if cfg.n_max:
        out["idp"] = {str(k): v for k, v in idp_check(poly, cfg.n_max).items()}
    return out


def cmd_poset_hstar(cfg: RunConfig) -> dict:
    poset, _ = _load_poset(cfg)
    relabeling = None
    if not poset.is_natural():
        poset, relabeling = poset.natural_relabeling()
    h = h_vector_from_descents(poset)
    out = {
        "h": list(h),
        "linear_extensions": sum(h),
        "socle_degree": socle_degree(poset),
        "relabeling": list(relabeling) if relabeling else None,
        "cross_check": None,
    }
    if cfg.verify:
        from .ehrhart import h_star
        geo = h_star(order_polytope(poset), threads=cfg.threads)
        if geo != h:
            raise ConsistencyError(f"descent h-vector {h} != order polytope h* {geo}")
        out["cross_check"] = True
    return out


def cmd_classify(ns) -> dict:
    h = HVector.parse(ns.h)
    degrees = None
    if ns.degrees:
        try:
            degrees = tuple(int(x) for x in ns.degrees.split(","))
        except ValueError:
            raise InvalidInputError(f"bad degree histogram {ns.degrees!r}") from None
    prof = RingProfile(h, cm_type=ns.type, is_domain=ns.domain,
                       generator_degrees=degrees)
    return classify(prof).to_json()


def cmd_hibi_type(cfg: RunConfig, allow_large: bool) -> dict:
    poset, fam = _load_poset(cfg)
    if not poset.is_natural():
        poset, _ = poset.natural_relabeling()
    gens = minimal_generators(poset, cfg.degree_cap, allow_large=allow_large)
    out = gens.to_json()
    h = h_vector_from_descents(poset)
    report = classify(RingProfile(h, cm_type=gens.cm_type, is_domain=True,
                                  generator_degrees=gens.degree_histogram[:h.socle_degree]))
    out["h"] = list(h)
    out["classification"] = report.to_json()
    if fam:
        name, m = fam
        expected = m - 1 if name == "pm" else 2 * m - 3
        out["family_check"] = {"expected_type": expected,
                               "matches": gens.cm_type == expected}
    return out


def cmd_xi_verify(ns) -> dict:
    ctx = build_context(ns.m)
    if ns.m <= 4:
        trace = [pi for i in range(ns.m + 1) for pi in ctx.strata[i]]
    else:
        trace = [ctx.strata[i][0] for i in range(ns.m + 1) if ctx.strata[i]]
    rep = verify_bijection(ctx, trace)
    out = rep.to_json()
    if not rep.passed:
        print(json.dumps(out, sort_keys=True))
        raise ConsistencyError("bijection check failed")
    return out


def cmd_family(ns) -> str:
    name, param = ns.name, ns.param
    note = FAMILY_NOTES[name]
    if name == "cross":
        text = format_polytope(make_cross_plus(param), f"{note}\ne = {param}")
    else:
        poset = (make_Pm if name == "pm" else make_Qm)(param)
        text = format_poset(poset, f"{note}\nm = {param}")
    if ns.output:
        Path(ns.output).write_text(text)
        return ""
    return text


def default_corpus() -> str:
    return resources.files("aghkit").joinpath("data/corpus.json").read_text()


def _resolve(arg: str) -> str:
    # "@data/x.txt" names a file shipped with the package
    if arg.startswith("@"):
        return str(resources.files("aghkit").joinpath(arg[1:]))
    return arg


def cmd_corpus_run(ns) -> int:
    text = _read(ns.corpus) if ns.corpus else default_corpus()
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"corpus is not valid JSON: {exc.msg}", exc.lineno) from None
    failures = 0
    for entry in entries:
        if ns.skip_slow and entry.get("slow"):
            print(f"SKIP {entry['name']} (slow)")
            continue
        expected = entry["expected"]
        want = "" if expected is None else json.dumps(expected, sort_keys=True) + "\n"
        buf = io.StringIO()
        t0 = time.perf_counter()
        with contextlib.redirect_stdout(buf):
            code = main([_resolve(a) for a in entry["args"]])
        got = buf.getvalue()
        ok = code == entry.get("exit_code", 0) and got == want
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {entry['name']} "
              f"[{entry['provenance']}] {time.perf_counter() - t0:.2f}s")
        if not ok:
            print(f"  expected: {want.strip()}\n  got:      {got.strip()} (exit {code})")
    print(f"{len(entries) - failures}/{len(entries)} corpus entries match")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# plumbing


def _emit(obj, fmt):
    if isinstance(obj, str):
        sys.stdout.write(obj)
        return
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
        return
    width = max((len(k) for k in obj), default=0)
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, (list, dict)) and not isinstance(v, str):
            v = json.dumps(v, sort_keys=True)
        print(f"{k.ljust(width)}  {v}")


def _threads_default() -> int:
    raw = os.environ.get("AGHKIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--threads", type=int, default=_threads_default(),
                        help="worker processes for enumeration (default $AGHKIT_THREADS or 1)")

    parser = argparse.ArgumentParser(
        prog="aghkit",
        description="h*-vectors and almost Gorenstein criteria for Ehrhart and Hibi rings")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hstar", parents=[common], help="h*-vector of a lattice polytope")
    p.add_argument("file", nargs="?")
    p.add_argument("--family", help="cross:E")
    p.add_argument("--verify", action="store_true",
                   help="also check L(d+1) and Ehrhart reciprocity")
    p.add_argument("--idp", type=int, metavar="N_MAX",
                   help="probe the integer decomposition property up to N_MAX")

    p = sub.add_parser("poset-hstar", parents=[common], help="descent h-vector of a poset")
    p.add_argument("file", nargs="?")
    p.add_argument("--family", help="pm:M or qm:M")
    p.add_argument("--cross-check", action="store_true",
                   help="also compute h* of the order polytope and compare")

    p = sub.add_parser("classify", parents=[common], help="classify an h-vector")
    p.add_argument("h", help="comma-separated h-vector, e.g. 1,4,7,1")
    p.add_argument("--type", type=int, help="Cohen-Macaulay type r(R)")
    p.add_argument("--domain", action="store_true", help="R is a domain")
    p.add_argument("--degrees", help="canonical module generator counts by degree, from -a")

    p = sub.add_parser("hibi-type", parents=[common],
                       help="minimal generators of the canonical ideal of a Hibi ring")
    p.add_argument("file", nargs="?")
    p.add_argument("--family", help="pm:M or qm:M")
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--allow-large", action="store_true",
                   help="lift the 12-element size cap")

    p = sub.add_parser("xi-verify", parents=[common], help="verify the xi bijection on P_m")
    p.add_argument("m", type=int)

    p = sub.add_parser("family", parents=[common], help="write a family member to a file")
    p.add_argument("name", choices=sorted(FAMILY_NOTES))
    p.add_argument("param", type=int)
    p.add_argument("-o", "--output")

    p = sub.add_parser("corpus-run", parents=[common], help="run the golden corpus")
    p.add_argument("corpus", nargs="?")
    p.add_argument("--skip-slow", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    cfg = RunConfig.from_args(ns)
    try:
        if ns.command == "hstar":
            out = cmd_hstar(cfg)
        elif ns.command == "poset-hstar":
            out = cmd_poset_hstar(cfg)
        elif ns.command == "classify":
            out = cmd_classify(ns)
        elif ns.command == "hibi-type":
            out = cmd_hibi_type(cfg, ns.allow_large)
        elif ns.command == "xi-verify":
            out = cmd_xi_verify(ns)
        elif ns.command == "family":
            out = cmd_family(ns)
        else:
            return cmd_corpus_run(ns)
    except AghkitError as exc:
        print(f"aghkit: error: {exc}", file=sys.stderr)
        return exc.exit_code
    _emit(out, cfg.fmt)
    return 0


if __name__ == "__main__":
    sys.exit(main())
