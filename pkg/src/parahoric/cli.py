"""Command-line front end and JSON job runner.

Every command builds a job record, validates it against the shipped schema
and dispatches it; the reply is a JSON envelope.  Exit codes: 0 for success
or Stable, 3 StrictlySemistable, 4 Unstable, 2 for any error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

import jsonschema

from . import __version__
from . import rational as Q
from .parabolic import extend_weights, on_far_wall
from .polytope import (
    Status,
    ThetaTuple,
    check_semistable,
    check_stable_strict,
    enumerate_walls,
    equality_walls,
    minus_one_scan,
)
from .root_system import (
    AlcovePoint,
    DomainError,
    RepWeights,
    check_in_alcove,
    classify_facet,
    facet_toward,
    far_wall,
    in_open_alcove,
    parse_group,
    rho_facet_classify,
)
from .schubert import GrassmannianShape, GWQuery, gw_number

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_SEMISTABLE = 3
EXIT_UNSTABLE = 4
_STATUS_EXIT = {Status.STABLE: EXIT_OK, Status.STRICTLY_SEMISTABLE: EXIT_SEMISTABLE, Status.UNSTABLE: EXIT_UNSTABLE}
# errors outrank every verdict when a batch is summarized
_SEVERITY = {EXIT_OK: 0, EXIT_SEMISTABLE: 1, EXIT_UNSTABLE: 2, EXIT_ERROR: 3}

COMMANDS = ("classify", "extend", "gw", "walls", "check", "witness")


def load_schema() -> dict:
    with resources.files("parahoric").joinpath("schema/job.schema.json").open() as fh:
        return json.load(fh)


_validator = None


def validator() -> jsonschema.Draft202012Validator:
    global _validator
    if _validator is None:
        _validator = jsonschema.Draft202012Validator(load_schema())
    return _validator


class JobError(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    group: str
    payload: dict = field(default_factory=dict)
    output_path: str | None = None

    def to_json(self) -> dict:
        out = {"command": self.command, "group": self.group, "payload": self.payload}
        if self.output_path is not None:
            out["output_path"] = self.output_path
        return out

    @classmethod
    def from_json(cls, rec) -> "JobSpec":
        errors = sorted(validator().iter_errors(rec), key=lambda e: list(e.absolute_path))
        if errors:
            e = errors[0]
            path = "/".join(str(p) for p in e.absolute_path) or "<root>"
            raise JobError(f"schema violation at {path}: {e.message}")
        return cls(rec["command"], rec["group"].strip(), dict(rec["payload"]), rec.get("output_path"))

    def input_hash(self) -> str:
        # output_path does not change the result
        canon = json.dumps({"command": self.command, "group": self.group, "payload": self.payload}, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


@dataclass
class ResultEnvelope:
    job: dict
    input_hash: str
    result: dict | None
    exit_code: int
    timing_s: float
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "command": self.job.get("command") if isinstance(self.job, dict) else None,
            "input": self.job,
            "input_hash": self.input_hash,
            "result": self.result,
            "exit_code": self.exit_code,
            "timing_s": round(self.timing_s, 6),
            "version": __version__,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


# ---------------------------------------------------------------------------
# handlers


def _strs(xs) -> list[str]:
    return [Q.to_str(x) for x in xs]


def _classify(datum, p: dict):
    x = check_in_alcove(datum, AlcovePoint.parse(p["point"]))
    f = classify_facet(datum, x)
    out = {
        "vanishing": sorted(f.vanishing),
        "vertex_labels": list(f.vertex_labels),
        "dim": f.dim,
        "open_alcove": in_open_alcove(datum, x),
    }
    out["far_wall"] = list(far_wall(f).vertex_labels) if len(f.vertex_labels) > 1 else None
    if "rho" in p:
        rho = RepWeights.from_label(p["rho"], datum)
        g = rho_facet_classify(datum, x, rho)
        out["rho_facet"] = {
            "dim": g.dim,
            "vanishing": sorted([_strs(lin), Q.to_str(lvl)] for lin, lvl in g.vanishing_generalized),
        }
    return out, EXIT_OK


def _extend(datum, p: dict):
    rho = RepWeights.from_label(p["rho"], datum)
    theta = check_in_alcove(datum, AlcovePoint.parse(p["theta"]))
    if "facet_point" in p:
        facet = rho_facet_classify(datum, AlcovePoint.parse(p["facet_point"]), rho)
    elif "direction" in p:
        facet = facet_toward(datum, theta, p["direction"], rho)
    elif in_open_alcove(datum, theta):
        facet = rho_facet_classify(datum, theta, rho)
    else:
        facet = facet_toward(datum, theta, (1,) * datum.rank, rho)
    if facet.dim != datum.rank:
        facet = facet_toward(datum, theta, (1,) * datum.rank, rho)
    sch = extend_weights(datum, theta, facet, rho)
    return {
        "rho": rho.label,
        "facet_point": _strs(facet.point),
        "levels": list(sch.levels),
        "limits": _strs(sch.limits),
        "degree": sch.degree,
        "quasi_parabolic_type": list(sch.quasi_parabolic_type),
        "weights": [[Q.to_str(w), m] for w, m in sch.pieces],
        "weight_one": sch.has_weight_one,
        "far_wall": on_far_wall(sch),
    }, EXIT_OK


def _gw(datum, p: dict):
    if datum.series != "A":
        raise DomainError(f"unsupported: exact Gromov-Witten numbers need type A, got {datum.name}")
    shape = GrassmannianShape(p["k"], datum.rank + 1)
    q = GWQuery(shape, p["degree"], tuple(tuple(c) for c in p["classes"]))
    return {"k": shape.k, "n": shape.n, "degree": q.degree, "classes": [list(c) for c in q.classes], "value": gw_number(q)}, EXIT_OK


def _walls(datum, p: dict):
    kw = {}
    if "budget" in p:
        kw["budget"] = p["budget"]
    walls = enumerate_walls(datum, p["s"], p.get("parabolics"), **kw)
    return {"s": p["s"], "wall_count": len(walls), "walls": [w.to_json() for w in walls]}, EXIT_OK


def _check(datum, p: dict):
    theta = ThetaTuple(datum, tuple(AlcovePoint.parse(x) for x in p["theta"]))
    checks = p.get("checks", ["strict"])
    walls = enumerate_walls(datum, theta.s)
    out: dict = {"s": theta.s, "wall_count": len(walls)}
    code = EXIT_OK
    if "semistable" in checks:
        frag = check_semistable(theta, walls)
        out["semistable"] = frag.semistable
        if frag.certificate is not None:
            out["semistable_certificate"] = frag.certificate.to_json()
        if not frag.semistable:
            code = EXIT_UNSTABLE
    if "strict" in checks:
        v = check_stable_strict(theta, walls)
        out["verdict"] = v.to_json()
        out["status"] = v.status.value
        code = _STATUS_EXIT[v.status]
    if "minus_one" in checks:
        out["minus_one"] = minus_one_scan(theta, equality_walls(theta, walls)).to_json()
    return out, code


def _witness(datum, p: dict, seed: int):
    from .witness import ClassSpec, search

    theta = ThetaTuple(datum, tuple(AlcovePoint.parse(x) for x in p["theta"]))
    specs = [ClassSpec.from_alcove(datum, x) for x in theta.points]
    kw = {"tol": p["tol"]} if "tol" in p else {}
    res = search(specs, p.get("budget", 10_000), seed=p.get("seed", seed), **kw)
    return res.to_json(), EXIT_OK


def run(job: "JobSpec | dict", seed: int = 0) -> ResultEnvelope:
    """Validate and execute one job; never raises for bad input."""
    t0 = time.perf_counter()
    raw = job.to_json() if isinstance(job, JobSpec) else job
    try:
        spec = job if isinstance(job, JobSpec) else JobSpec.from_json(job)
        if isinstance(job, JobSpec):
            JobSpec.from_json(raw)
        datum = parse_group(spec.group)
        p = spec.payload
        if spec.command == "classify":
            result, code = _classify(datum, p)
        elif spec.command == "extend":
            result, code = _extend(datum, p)
        elif spec.command == "gw":
            result, code = _gw(datum, p)
        elif spec.command == "walls":
            result, code = _walls(datum, p)
        elif spec.command == "check":
            result, code = _check(datum, p)
        else:
            result, code = _witness(datum, p, seed)
    except (JobError, DomainError, ValueError, TypeError, KeyError, RuntimeError, ZeroDivisionError) as exc:
        h = hashlib.sha256(json.dumps(raw, sort_keys=True, default=str).encode()).hexdigest()
        return ResultEnvelope(raw, h, None, EXIT_ERROR, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    env = ResultEnvelope(spec.to_json(), spec.input_hash(), result, code, time.perf_counter() - t0)
    if spec.output_path:
        with open(spec.output_path, "w") as fh:
            json.dump(env.to_json(), fh, indent=2)
    return env


def batch(lines: Sequence[str], workers: int = 1, seed: int = 0) -> list[ResultEnvelope]:
    """Run newline-delimited jobs; envelopes come back in input order."""

    def one(line: str) -> ResultEnvelope:
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            return ResultEnvelope({"raw": line}, hashlib.sha256(line.encode()).hexdigest(), None, EXIT_ERROR, 0.0, f"JSONDecodeError: {exc}")
        return run(rec, seed)

    jobs = [ln for ln in lines if ln.strip()]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, jobs))
    return [one(ln) for ln in jobs]


def summary_exit(envelopes: Sequence[ResultEnvelope]) -> int:
    if not envelopes:
        return EXIT_OK
    return max((e.exit_code for e in envelopes), key=_SEVERITY.__getitem__)


# ---------------------------------------------------------------------------
# argument parsing


def _chunk_theta(values: Sequence[str], rank: int) -> list[list[str]]:
    if len(values) % rank:
        raise JobError(f"{len(values)} theta values do not split into points of {rank} coordinates")
    return [list(values[i:i + rank]) for i in range(0, len(values), rank)]


def _parse_class(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "0", "-", "()"):
        return []
    return [int(v) for v in text.split(",") if int(v) > 0]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="A1", help="root system, e.g. A1, A2, B3")
    common.add_argument("--output", help="write the envelope(s) here instead of stdout")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="parahoric", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="facet of a point of the alcove")
    p.add_argument("--point", nargs="+", required=True)
    p.add_argument("--rho", choices=["Id", "Ad", "Sym2"])

    p = sub.add_parser("extend", parents=[common], help="extended weights of a representation")
    p.add_argument("--rho", choices=["Id", "Ad", "Sym2"], default="Ad")
    p.add_argument("--theta", nargs="+", required=True)
    p.add_argument("--direction", nargs="+", type=int)
    p.add_argument("--facet-point", nargs="+")

    p = sub.add_parser("gw", parents=[common], help="Gromov-Witten number of a Grassmannian")
    p.add_argument("--shape", help="k,n; overrides --group with A_{n-1}")
    p.add_argument("--k", type=int)
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--classes", nargs="+", required=True, help="partitions separated by ';' or spaces, parts by ',', 0 for empty")

    p = sub.add_parser("walls", parents=[common], help="enumerate the walls")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--parabolics", nargs="+", type=int)
    p.add_argument("--budget", type=int)

    p = sub.add_parser("check", parents=[common], help="stability verdict of a weight tuple")
    p.add_argument("--theta", nargs="+", required=True, help="rank coordinates per marked point, flattened")
    p.add_argument("--checks", nargs="+", choices=["strict", "semistable", "minus_one"], default=["strict"])

    p = sub.add_parser("witness", parents=[common], help="numeric unitary witness search")
    p.add_argument("--theta", nargs="+", required=True)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("batch", parents=[common], help="run newline-delimited JSON jobs")
    p.add_argument("path")
    return ap


def job_from_args(args: argparse.Namespace) -> JobSpec:
    group = args.group
    if getattr(args, "shape", None):
        k, n = (int(v) for v in args.shape.split(","))
        group, args.k = f"A{n - 1}", k
    rank = parse_group(group).rank
    c = args.command
    if c == "classify":
        payload = {"point": args.point}
        if args.rho:
            payload["rho"] = args.rho
    elif c == "extend":
        payload = {"rho": args.rho, "theta": args.theta}
        if args.direction:
            payload["direction"] = args.direction
        if args.facet_point:
            payload["facet_point"] = args.facet_point
    elif c == "gw":
        if args.k is None:
            raise JobError("gw needs --shape k,n or --k")
        texts = [t for chunk in args.classes for t in chunk.split(";")]
        payload = {"k": args.k, "degree": args.degree, "classes": [_parse_class(t) for t in texts]}
    elif c == "walls":
        payload = {"s": args.s}
        if args.parabolics:
            payload["parabolics"] = args.parabolics
        if args.budget:
            payload["budget"] = args.budget
    elif c == "check":
        payload = {"theta": _chunk_theta(args.theta, rank), "checks": args.checks}
    else:
        payload = {"theta": _chunk_theta(args.theta, rank), "budget": args.budget, "seed": args.seed}
        if args.tol is not None:
            payload["tol"] = args.tol
    return JobSpec(c, group, payload)


def _emit(docs, path: str | None, many: bool) -> None:
    if many:
        text = "".join(json.dumps(d, sort_keys=True) + "\n" for d in docs)
    else:
        text = json.dumps(docs[0], indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "batch":
        try:
            with open(args.path) as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        envs = batch(lines, args.workers, args.seed)
        _emit([e.to_json() for e in envs], args.output, many=True)
        return summary_exit(envs)
    try:
        job = job_from_args(args)
    except (JobError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    env = run(job, args.seed)
    _emit([env.to_json()], args.output, many=False)
    if env.error:
        print(f"error: {env.error}", file=sys.stderr)
    return env.exit_code

