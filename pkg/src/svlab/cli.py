"""Command-line entry point: ``svlab <command> --config <path> --out <dir>``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import report
from .config import ConfigError, RunConfig, load_config, validate_text
from .errors import (
    ConsistencyDefect,
    LemmaViolation,
    ParseError,
    PreconditionError,
    QuadratureError,
    RetryCapExceeded,
    RootFindingError,
)
from .nevan import jensen_residual
from .nochka import generalized_weights
from .variety import check_subgeneral, hilbert_function
from .verify import (
    check_report,
    growth_ratio,
    shared_zero_check,
    smt_verify,
    uniqueness_check,
)

COMMANDS = ("hilbert", "position", "weights", "smt", "unique", "jensen", "validate")

EXIT_OK = 0
EXIT_IO = 1
EXIT_PRECONDITION = 2
EXIT_DEFECT = 3


def _envelope(cmd: str, cfg: RunConfig, result) -> dict:
    return {"command": cmd, "config": cfg.name, "seed": cfg.seed, "result": result}


def cmd_hilbert(cfg: RunConfig, out: Path, args) -> int:
    V = cfg.variety()
    rows = [(d, hilbert_function(V, d)) for d in range(cfg.d_max + 1)]
    report.write_csv(out / "hilbert.csv", ["d", "H_V(d)"], rows)
    report.write_json(out / "report.json", _envelope("hilbert", cfg, {"hilbert": [list(r) for r in rows]}))
    return EXIT_OK


def cmd_position(cfg: RunConfig, out: Path, args) -> int:
    rep = check_subgeneral(cfg.variety(), cfg.family(), cfg.d_cap)
    report.write_csv(
        out / "position.csv",
        ["subset", "verdict", "witness_degree", "reason"],
        [(" ".join(map(str, r.subset)), r.verdict.value, "" if r.witness_degree is None else r.witness_degree, r.reason)
         for r in rep.rows],
    )
    report.write_json(out / "report.json", _envelope("position", cfg, rep.as_dict()))
    return EXIT_OK


def cmd_weights(cfg: RunConfig, out: Path, args) -> int:
    V, fam = cfg.variety(), cfg.family()
    pos = check_subgeneral(V, fam, cfg.d_cap)
    gw = generalized_weights(V, fam, cfg.seed, cfg.retry_cap, pos)
    cert = gw.certificate
    report.write_csv(out / "weights.csv", ["i", "omega"], [(i, report.rat(w)) for i, w in enumerate(cert.omega)])
    result = {"certificate": cert.as_dict(), "subspace": gw.witness.as_dict(), "d": gw.d, "H_V(d)": gw.M}
    report.write_json(out / "report.json", _envelope("weights", cfg, result))
    return EXIT_OK if cert.ok else EXIT_DEFECT


def cmd_smt(cfg: RunConfig, out: Path, args) -> int:
    V, fam, f = cfg.variety(), cfg.family(), cfg.curve("f")
    pos = check_subgeneral(V, fam, cfg.d_cap)
    rep = smt_verify(V, fam, f, cfg.r_grid(), deep=args.deep, tol=cfg.quad_tol,
                     seed=cfg.seed, retry_cap=cfg.retry_cap, position=pos)
    d = rep.as_dict()
    report.write_csv(out / "slope.csv", ["lhs", "rhs", "margin"],
                     [(d["slope_ledger"]["lhs"], d["slope_ledger"]["rhs"], d["slope_ledger"]["margin"])])
    report.write_csv(out / "numeric.csv", d["numeric_ledger"]["columns"], d["numeric_ledger"]["rows"])
    if rep.deep is not None:
        report.write_csv(
            out / "claim.csv",
            ["re", "im", "nu", "nu_W", "required", "vanishing", "status"],
            [(r.location.real, r.location.imag, " ".join(map(str, r.nu)), r.nu_W, report.rat(r.required),
              r.vanishing, r.status) for r in rep.deep.claim.rows],
        )
    report.write_json(out / "report.json", _envelope("smt", cfg, d))
    check_report(rep)
    return EXIT_OK


def cmd_unique(cfg: RunConfig, out: Path, args) -> int:
    V, fam = cfg.variety(), cfg.family()
    f, g = cfg.curve("f"), cfg.curve("g")
    pos = check_subgeneral(V, fam, cfg.d_cap)
    rep = uniqueness_check(V, fam, f, g, position=pos)
    gr = growth_ratio(f, g)
    result = rep.as_dict()
    result["growth"] = {"slope_f": gr.slope_f, "slope_g": gr.slope_g, "ratio": report.rat(gr.ratio)}
    if not rep.equal and rep.hypothesis_i and rep.hypothesis_ii:
        ledger = shared_zero_check(f, g, fam, cfg.r_grid(), cfg.quad_tol)
        result["shared_zeros"] = ledger.as_dict()
        report.write_csv(out / "shared_zeros.csv",
                         ["r", "N_H", "sum_N1", "T_f+T_g", "margin_lower", "margin_upper"],
                         ledger.as_dict()["rows"])
    report.write_csv(
        out / "hypotheses.csv",
        ["hypothesis", "index", "side", "ok", "detail"],
        [("i", f"{p.i} {p.j}", p.side, p.ok, f"gcd degree {p.gcd_degree}") for p in rep.pairs]
        + [("ii", a.i, a.side, a.ok, "" if a.ok else str(a.obstruction)) for a in rep.agreement],
    )
    report.write_json(out / "report.json", _envelope("unique", cfg, result))
    if not rep.consistent:
        raise ConsistencyDefect("all uniqueness hypotheses hold above the threshold but f and g differ")
    return EXIT_OK


def cmd_jensen(cfg: RunConfig, out: Path, args) -> int:
    if cfg.jensen is None:
        raise PreconditionError("config has no jensen block")
    grid = cfg.r_grid()
    res = jensen_residual(cfg.jensen["num"], cfg.jensen["den"], grid, cfg.quad_tol)
    rows = list(zip(grid, res))
    report.write_csv(out / "jensen.csv", ["r", "residual"], rows)
    result = {"rows": [list(r) for r in rows], "spread": max(res) - min(res)}
    report.write_json(out / "report.json", _envelope("jensen", cfg, result))
    return EXIT_OK


HANDLERS = {
    "hilbert": cmd_hilbert,
    "position": cmd_position,
    "weights": cmd_weights,
    "smt": cmd_smt,
    "unique": cmd_unique,
    "jensen": cmd_jensen,
}


def _fail(code: int, kind: str, reason: str) -> int:
    print(json.dumps({"exit": code, "kind": kind, "reason": reason}, sort_keys=True), file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="svlab", description="Second main theorem verification toolkit.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, type=Path)
    ap.add_argument("--out", type=Path, default=None, help="output directory (required except for validate)")
    ap.add_argument("--deep", action="store_true", help="smt: add the weighted inequality and per-zero ledger")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    return ap


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as e:
        return _fail(EXIT_IO, "io", f"cannot read {args.config}: {e.strerror}")

    if args.command == "validate":
        diags = validate_text(text)
        for line in diags:
            print(line)
        if args.out is not None:
            report.write_json(args.out / "report.json", {"command": "validate", "diagnostics": diags})
        return EXIT_OK if not diags else EXIT_IO

    if args.out is None:
        return _fail(EXIT_IO, "usage", "--out is required")
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.tol is not None:
            if args.tol <= 0:
                raise PreconditionError("--tol must be positive")
            cfg.quad_tol = args.tol
        return HANDLERS[args.command](cfg, args.out, args)
    except ConfigError as e:
        return _fail(EXIT_IO, "config", "; ".join(e.diagnostics))
    except ParseError as e:
        return _fail(EXIT_IO, "parse", str(e))
    except OSError as e:
        return _fail(EXIT_IO, "io", str(e))
    except (PreconditionError, RootFindingError, QuadratureError, RetryCapExceeded) as e:
        return _fail(EXIT_PRECONDITION, type(e).__name__, str(e))
    except (LemmaViolation, ConsistencyDefect) as e:
        return _fail(EXIT_DEFECT, type(e).__name__, str(e))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
