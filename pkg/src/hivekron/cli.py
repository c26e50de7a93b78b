"""Command-line surface: coefficients, oracle, builds, cones, validation.

All integers in emitted JSON are decimal strings.  The cone cache lives
under $HIVEKRON_CACHE_DIR (or --cache-dir); files are content-hashed and
rewritten atomically, so a corrupt cache entry triggers a rebuild rather
than a wrong answer.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from . import __version__
from .diamonds import build_bar, build_tilde
from .errors import (HivekronError, SizeTooLargeForOracle,
                     UnboundedFibre)
from .kron import kronecker, kronecker_oracle, partition
from .polyhedra import (Cone, FibreQuery, build_cone, cone_from_json,
                        cone_to_json, count_lattice_points)

EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_UNBOUNDED = 3

CACHE_ENV = "HIVEKRON_CACHE_DIR"
CACHE_VERSION = "1"


@dataclass(frozen=True)
class RunConfig:
    cache_dir: str = None
    workers: int = 1
    oracle_bound: int = 12
    level: str = "quick"

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(cache_dir=getattr(args, "cache_dir", None)
                   or os.environ.get(CACHE_ENV),
                   workers=getattr(args, "workers", 1),
                   oracle_bound=getattr(args, "oracle_bound", 12),
                   level=getattr(args, "level", "quick"))


def _parse_partition(text: str):
    try:
        return partition(int(x) for x in text.split(",") if x.strip() != "")
    except (ValueError, HivekronError) as exc:
        raise SystemExit(f"bad partition {text!r}: {exc}")


def _vertex_key(v):
    if v.kind == "det":
        return ["det", str(v.n)]
    return ["hive", str(v.n), str(v.i), str(v.j), "1" if v.dual else "0"]


def quiver_to_json(Q, sigma) -> str:
    doc = {
        "vertices": [_vertex_key(v) for v in Q.vertices],
        "frozen": [_vertex_key(v) for v in sorted(Q.frozen, key=lambda v: v.sort_key())],
        "arrows": sorted(
            [_vertex_key(s), _vertex_key(t), str(mult)]
            for (s, t), mult in Q.arrows.items()),
        "weights": {json.dumps(_vertex_key(v)): [str(x) for x in sigma[v]]
                    for v in Q.vertices},
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def _vertex_read(item):
    from .quiver import det_vertex, hive_vertex
    if item[0] == "det":
        return det_vertex(int(item[1]))
    return hive_vertex(int(item[1]), int(item[2]), int(item[3]), item[4] == "1")


def quiver_from_json(text: str):
    from .quiver import make_quiver
    doc = json.loads(text)
    verts = [_vertex_read(v) for v in doc["vertices"]]
    frozen = {_vertex_read(v) for v in doc["frozen"]}
    arrows = {}
    for s, t, mult in doc["arrows"]:
        arrows[(_vertex_read(s), _vertex_read(t))] = int(mult)
    Q = make_quiver(verts, frozen, arrows)
    sigma = {_vertex_read(json.loads(k)): tuple(int(x) for x in w)
             for k, w in doc["weights"].items()}
    return Q, sigma


# ---------------------------------------------------------------------------
# cone cache


def _cache_path(cdir, l, m):
    return os.path.join(cdir, f"cone-v{CACHE_VERSION}-l{l}-m{m}.json")


def _atomic_write(path: str, text: str):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _wrap_hash(payload: str) -> str:
    digest = hashlib.sha256(payload.encode()).hexdigest()
    return json.dumps({"sha256": digest, "payload": payload})


def _unwrap_hash(text: str):
    doc = json.loads(text)
    payload = doc["payload"]
    if hashlib.sha256(payload.encode()).hexdigest() != doc["sha256"]:
        raise ValueError("cache content hash mismatch")
    return payload


def cached_cone(l: int, m: int, cdir=None) -> Cone:
    if not cdir:
        return build_cone(l, m)
    path = _cache_path(cdir, l, m)
    if os.path.exists(path):
        try:
            with open(path) as fh:
                return cone_from_json(_unwrap_hash(fh.read()))
        except (ValueError, KeyError, json.JSONDecodeError):
            pass  # fall through to rebuild
    cone = build_cone(l, m)
    _atomic_write(path, _wrap_hash(cone_to_json(cone)))
    return cone


# ---------------------------------------------------------------------------
# commands


def cmd_coeff(args) -> int:
    cfg = RunConfig.from_args(args)
    mu = _parse_partition(args.mu)
    nu = _parse_partition(args.nu)
    lam = _parse_partition(args.lam)
    try:
        res = kronecker(mu, nu, lam, l=args.l, m=args.m, workers=cfg.workers)
    except UnboundedFibre as exc:
        print(f"unbounded fibre: {exc}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except HivekronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        doc = {
            "value": str(res.value),
            "l": str(res.l),
            "m": str(res.m),
            "terms": [{"omega": [str(x) for x in om],
                       "lambda_shift": [str(x) for x in sh],
                       "sign": str(sg), "count": str(ct)}
                      for om, sh, sg, ct in res.breakdown],
        }
        print(json.dumps(doc, indent=1))
    else:
        print(res.value)
    if args.verify:
        try:
            expected = kronecker_oracle(mu, nu, lam, bound=cfg.oracle_bound)
        except SizeTooLargeForOracle:
            print(f"warning: |mu| exceeds the oracle bound "
                  f"{cfg.oracle_bound}; result is unverified",
                  file=sys.stderr)
            return 0
        if expected != res.value:
            print(f"VERIFICATION FAILED: pipeline {res.value}, "
                  f"oracle {expected}", file=sys.stderr)
            return EXIT_VERIFY
    return 0


def cmd_oracle(args) -> int:
    mu = _parse_partition(args.mu)
    nu = _parse_partition(args.nu)
    lam = _parse_partition(args.lam)
    try:
        print(kronecker_oracle(mu, nu, lam, bound=RunConfig.from_args(args).oracle_bound))
    except HivekronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def cmd_build_quiver(args) -> int:
    try:
        if args.stage == "tilde":
            Q, sigma = build_tilde(args.l, args.m)
        else:
            Q, sigma = build_bar(args.l, args.m)
    except HivekronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = quiver_to_json(Q, sigma)
    if args.out:
        _atomic_write(args.out, text)
    else:
        print(text)
    return 0


def cmd_cone(args) -> int:
    try:
        cone = cached_cone(args.l, args.m, RunConfig.from_args(args).cache_dir)
    except HivekronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = cone_to_json(cone)
    if args.out:
        _atomic_write(args.out, text)
    else:
        print(text)
    return 0


def cmd_count(args) -> int:
    cfg = RunConfig.from_args(args)
    theta = tuple(int(x) for x in args.theta.split(","))
    try:
        cone = cached_cone(args.l, args.m, cfg.cache_dir)
        n = count_lattice_points(cone, FibreQuery(theta), workers=cfg.workers)
    except UnboundedFibre as exc:
        print(f"unbounded fibre: {exc}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except (HivekronError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(n)
    return 0


def cmd_validate(args) -> int:
    from .validate import run_validation
    cfg = RunConfig.from_args(args)
    try:
        report = run_validation(args.l, args.m, level=cfg.level,
                                seed=args.seed)
    except HivekronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(report.as_json(), indent=1))
    return 0 if report.ok else EXIT_VERIFY


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hivekron",
        description="Kronecker coefficients via lattice points in the "
                    "g-vector cone of a twisted glued hive quiver.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_cache(q):
        q.add_argument("--cache-dir", default=None,
                       help=f"cone cache directory (default ${CACHE_ENV})")

    q = sub.add_parser("coeff", help="compute a Kronecker coefficient")
    q.add_argument("--mu", required=True)
    q.add_argument("--nu", required=True)
    q.add_argument("--lam", required=True)
    q.add_argument("--l", type=int, default=None)
    q.add_argument("--m", type=int, default=None)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--oracle-bound", type=int, default=12)
    q.add_argument("--verify", action="store_true",
                   help="cross-check against the character oracle")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_coeff)

    q = sub.add_parser("oracle", help="character-theoretic oracle value")
    q.add_argument("--mu", required=True)
    q.add_argument("--nu", required=True)
    q.add_argument("--lam", required=True)
    q.add_argument("--oracle-bound", type=int, default=12)
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("build-quiver", help="emit a quiver + weights as JSON")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--stage", choices=("tilde", "bar"), default="bar")
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_build_quiver)

    q = sub.add_parser("cone", help="emit (and cache) the g-vector cone")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--out", default=None)
    add_cache(q)
    q.set_defaults(func=cmd_cone)

    q = sub.add_parser("count", help="count lattice points of one fibre")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--theta", required=True,
                   help="comma-separated target weight of length 2l+m")
    q.add_argument("--workers", type=int, default=1)
    add_cache(q)
    q.set_defaults(func=cmd_count)

    q = sub.add_parser("validate", help="run the structural invariant suite")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--level", choices=("quick", "full"), default="quick")
    q.add_argument("--seed", type=int, default=20240501)
    q.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except HivekronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
