"""Command-line front end: ``ffcn <subcommand> ...``.

Exit codes: 0 on success, 1 when a verification fails, 2 for invalid
configuration or arguments outside an operation's domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from typing import Any

from . import kernels
from .eichler_local import (
    Algebra,
    LocalOrderSpec,
    LocalQuadKind,
    LocalQuatKind,
    OrderType,
    QuadKind,
    archimedean_combination,
    embed_count,
)
from .errors import ConfigurationError, DomainError, FFCNError
from .ff_core import DEFAULT_SEED, FieldCtx, Poly, infinity_type, squarefree_decompose
from .hurwitz import LevelPair, Strategy, hurwitz_H, hurwitz_H_zero, tamagawa_unit_volume
from .quad_class import class_data
from .serialize import dumps, levels_params, record_csv, split_params, table_csv, table_json, to_jsonable
from .theta import MAX_DEG_CEILING, ThetaOParams, split_level, theta_table
from .verify import SUITES, run_suite


@dataclass
class JobConfig:
    q: int | None
    output: str
    seed: int
    threads: int
    ceiling: int
    out: str | None

    @property
    def ctx(self) -> FieldCtx:
        if self.q is None:
            raise ConfigurationError("--q is required for this command")
        return FieldCtx(self.q)

    def poly(self, text: str) -> Poly:
        return self.ctx.parse(text)


def _header(cfg: JobConfig, command: str) -> dict[str, Any]:
    return {"command": command, "q": cfg.q, "seed": cfg.seed}


def _emit_record(cfg: JobConfig, command: str, record: dict[str, Any]) -> str:
    if cfg.output == "csv":
        return record_csv({**record, "command": command, "q": cfg.q}, cfg.seed)
    return dumps({"header": _header(cfg, command), **record})


# -- subcommands -----------------------------------------------------------


def cmd_class_number(cfg: JobConfig, args) -> tuple[str, int]:
    d = cfg.poly(args.d)
    cd = class_data(d)
    d0, f = squarefree_decompose(d)
    record = {
        "d": d,
        "d0": d0,
        "conductor": f,
        "infinity_type": infinity_type(d),
        "h": cd.h,
        "w": cd.w,
        "h_over_w": cd.h_over_w,
    }
    return _emit_record(cfg, "class-number", record), 0


def _levels(cfg: JobConfig, args) -> LevelPair:
    return LevelPair(cfg.poly(args.nplus), cfg.poly(args.nminus))


def cmd_hurwitz(cfg: JobConfig, args) -> tuple[str, int]:
    levels = _levels(cfg, args)
    d = cfg.poly(args.d)
    chosen = {
        "both": [Strategy.DEFINITION_SUM, Strategy.LOCAL_PRODUCT],
        "definition": [Strategy.DEFINITION_SUM],
        "product": [Strategy.LOCAL_PRODUCT],
    }[args.strategy]
    values = {s.value: hurwitz_H(levels, d, s) for s in chosen}
    agree = len(set(values.values())) == 1
    record = {**levels_params(levels), "d": d, "values": values, "agree": agree}
    return _emit_record(cfg, "hurwitz", record), 0 if agree else 1


def cmd_h_zero(cfg: JobConfig, args) -> tuple[str, int]:
    levels = _levels(cfg, args)
    h0 = hurwitz_H_zero(levels)
    vol = tamagawa_unit_volume(levels)
    expected = -(cfg.q - 1)
    holds = vol * h0 == expected
    record = {
        **levels_params(levels),
        "H0": h0,
        "volume": vol,
        "volume_times_H0": vol * h0,
        "expected": expected,
        "identity_holds": holds,
    }
    return _emit_record(cfg, "h-zero", record), 0 if holds else 1


def cmd_split_level(cfg: JobConfig, args) -> tuple[str, int]:
    params = split_level(cfg.poly(args.frakd), cfg.poly(args.frakn))
    verdicts = {
        "squarefree": True,
        "coprime": True,
        "even_degree_frak_d": True,
        "deg_d_minus_n_minus_positive": True,
        "ramified_prime_count_even": len(params.ramified_primes) % 2 == 0,
    }
    record = {**split_params(params), "verdicts": verdicts}
    return _emit_record(cfg, "split-level", record), 0


def _threads(cfg: JobConfig) -> int:
    return max(1, cfg.threads)


def cmd_theta_o(cfg: JobConfig, args) -> tuple[str, int]:
    params = ThetaOParams(_levels(cfg, args))
    table = theta_table(params, args.max_deg, ceiling=cfg.ceiling, threads=_threads(cfg))
    meta = levels_params(params.levels)
    text = table_csv(table, cfg.seed, meta) if cfg.output == "csv" else table_json(table, cfg.seed, meta)
    return text, 0


def cmd_theta_lambda(cfg: JobConfig, args) -> tuple[str, int]:
    params = split_level(cfg.poly(args.frakd), cfg.poly(args.frakn))
    table = theta_table(params, args.max_deg, ceiling=cfg.ceiling, threads=_threads(cfg))
    meta = split_params(params)
    text = table_csv(table, cfg.seed, meta) if cfg.output == "csv" else table_json(table, cfg.seed, meta)
    return text, 0


_QUAT = {
    "division-maximal": (Algebra.DIVISION, OrderType.MAXIMAL),
    "matrix-maximal": (Algebra.MATRIX, OrderType.MAXIMAL),
    "matrix-hereditary": (Algebra.MATRIX, OrderType.HEREDITARY),
    "division-hereditary": (Algebra.DIVISION, OrderType.HEREDITARY),
}


def cmd_embed_local(cfg: JobConfig, args) -> tuple[str, int]:
    e_kind = LocalQuadKind(QuadKind(args.kind), args.norm)
    d_kind = LocalQuatKind(*_QUAT[args.quat])
    record = {
        "kind": e_kind.kind,
        "residue_norm": e_kind.residue_norm,
        "level": args.level,
        "quat": args.quat,
        "embed_count": embed_count(e_kind, LocalOrderSpec(args.level), d_kind),
        "archimedean_weight": archimedean_combination(e_kind),
    }
    return _emit_record(cfg, "embed-local", record), 0


def cmd_verify(cfg: JobConfig, args) -> tuple[str, int]:
    results = run_suite(args.suite, cfg.seed)
    for r in results:
        print(r.summary(), file=sys.stderr)
    ok = all(r.passed for r in results)
    if cfg.output == "csv":
        buf = io.StringIO()
        buf.write(f"# verify suite={args.suite} seed={cfg.seed}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["criterion", "label", "expected", "actual", "ok"])
        for r in results:
            if r.error:
                w.writerow([r.name, "error", "", r.error, False])
            for c in r.comparisons:
                w.writerow([r.name, c.label, dumps(c.expected).strip(), dumps(c.actual).strip(), c.ok])
        text = buf.getvalue()
    else:
        report = {
            "header": {"command": "verify", "suite": args.suite, "seed": cfg.seed, "backend": kernels.BACKEND},
            "passed": ok,
            "criteria": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "error": r.error,
                    "comparisons": [
                        {"label": c.label, "expected": c.expected, "actual": c.actual, "ok": c.ok}
                        for c in r.comparisons
                    ],
                }
                for r in results
            ],
        }
        text = dumps(to_jsonable(report))
    return text, 0 if ok else 1


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="odd prime field size")
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="overridden by $FFCN_SEED")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--max-deg-ceiling", type=int, default=MAX_DEG_CEILING, dest="ceiling")
    common.add_argument("--out", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="ffcn", description="Class numbers and theta tables over F_q[t].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("class-number", parents=[common], help="h(d), w(d) of A[sqrt d]")
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_class_number)

    def level_args(p):
        p.add_argument("--nplus", default="1")
        p.add_argument("--nminus", default="1")

    p = sub.add_parser("hurwitz", parents=[common], help="modified Hurwitz class number")
    level_args(p)
    p.add_argument("--d", required=True)
    p.add_argument("--strategy", choices=("both", "definition", "product"), default="both")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("h-zero", parents=[common], help="H(0) and the volume identity")
    level_args(p)
    p.set_defaults(func=cmd_h_zero)

    p = sub.add_parser("split-level", parents=[common], help="split frak_d and frak_n by Legendre symbols")
    p.add_argument("--frakd", required=True)
    p.add_argument("--frakn", required=True)
    p.set_defaults(func=cmd_split_level)

    p = sub.add_parser("theta-o", parents=[common], help="CM-point mass table")
    level_args(p)
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=cmd_theta_o)

    p = sub.add_parser("theta-lambda", parents=[common], help="intersection-number table")
    p.add_argument("--frakd", required=True)
    p.add_argument("--frakn", required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=cmd_theta_lambda)

    p = sub.add_parser("embed-local", parents=[common], help="local optimal embedding number")
    p.add_argument("--kind", choices=[k.value for k in QuadKind], required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--quat", choices=sorted(_QUAT), required=True)
    p.add_argument("--norm", type=int, default=3, help="residue field size ||p||")
    p.set_defaults(func=cmd_embed_local)

    p = sub.add_parser("verify", parents=[common], help="run oracle-backed acceptance suites")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    env_seed = os.environ.get("FFCN_SEED")
    try:
        if env_seed is not None:
            try:
                seed = int(env_seed)
            except ValueError:
                raise ConfigurationError(f"FFCN_SEED must be an integer, got {env_seed!r}") from None
        cfg = JobConfig(args.q, args.output, seed, args.threads, args.ceiling, args.out)
        text, code = args.func(cfg, args)
    except (ConfigurationError, DomainError) as exc:
        print(f"ffcn: error: {exc}", file=sys.stderr)
        return 2
    except FFCNError as exc:
        print(f"ffcn: error: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
