"""Run configuration: a single JSON document per experiment."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .errors import ParseError, PreconditionError
from .nevan import DEFAULT_QUAD_TOL, RationalCurve, reduce_representation
from .nochka import DEFAULT_RETRY_CAP, DEFAULT_SEED
from .polyalg import DEFAULT_ROOT_TOL, MultiPoly, UniPoly, parse_poly, parse_unipoly
from .variety import HypersurfaceFamily, VarietyModel
from .verify import geometric_grid


@dataclass
class RunConfig:
    name: str
    n: int
    generators: List[MultiPoly]
    k: int
    hypersurfaces: List[MultiPoly]
    degrees: List[int]
    N: Optional[int]
    curves: Dict[str, List[UniPoly]]
    r_min: float = 2.0
    r_max: float = 1000.0
    points: int = 8
    quad_tol: float = DEFAULT_QUAD_TOL
    root_tol: float = DEFAULT_ROOT_TOL
    seed: int = DEFAULT_SEED
    d_cap: Optional[int] = None
    retry_cap: int = DEFAULT_RETRY_CAP
    d_max: int = 5
    jensen: Optional[Dict[str, UniPoly]] = None
    raw: Dict[str, Any] = field(default_factory=dict, repr=False)

    def variety(self) -> VarietyModel:
        return VarietyModel(self.n, self.k, self.generators)

    def family(self) -> HypersurfaceFamily:
        if not self.hypersurfaces:
            raise PreconditionError("config has no hypersurfaces")
        if self.N is None:
            raise PreconditionError("config has no N")
        return HypersurfaceFamily(list(self.hypersurfaces), self.N, list(self.degrees))

    def curve(self, key: str = "f") -> RationalCurve:
        if key not in self.curves:
            raise PreconditionError(f"config has no curve {key!r}")
        return reduce_representation(self.curves[key])

    def r_grid(self) -> List[float]:
        return geometric_grid(self.r_min, self.r_max, self.points)


class ConfigError(Exception):
    def __init__(self, diagnostics: List[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _parse(raw: Dict[str, Any], diags: List[str]) -> Optional[RunConfig]:
    def poly(path, text, n_vars):
        if not isinstance(text, str):
            diags.append(f"{path}: expected a polynomial string")
            return None
        try:
            return parse_poly(text, n_vars)
        except ParseError as e:
            diags.append(f"{path}: {e.reason} at byte {e.offset}")
            return None

    def unipoly(path, text):
        if not isinstance(text, str):
            diags.append(f"{path}: expected a polynomial string")
            return None
        try:
            return parse_unipoly(text)
        except ParseError as e:
            diags.append(f"{path}: {e.reason} at byte {e.offset}")
            return None

    n = raw.get("n")
    if not _is_int(n) or n < 1:
        diags.append("n: must be an integer >= 1")
        n = None
    nv = (n + 1) if n else None

    var = raw.get("variety", {})
    if not isinstance(var, dict):
        diags.append("variety: expected an object")
        var = {}
    gens = []
    for j, text in enumerate(var.get("generators", [])):
        p = poly(f"variety.generators[{j}]", text, nv or 1) if nv else None
        if p is not None:
            if p.degree is None or p.degree < 1:
                diags.append(f"variety.generators[{j}]: must be homogeneous of positive degree")
            gens.append(p)
    k = var.get("k", n)
    if not _is_int(k) or k < 0 or (n and k > n):
        diags.append("variety.k: must be an integer with 0 <= k <= n")

    hyps, degs = [], []
    hs = raw.get("hypersurfaces", [])
    if not isinstance(hs, list):
        diags.append("hypersurfaces: expected a list")
        hs = []
    for j, h in enumerate(hs):
        if not isinstance(h, dict):
            diags.append(f"hypersurfaces[{j}]: expected an object with poly and degree")
            continue
        p = poly(f"hypersurfaces[{j}].poly", h.get("poly"), nv or 1) if nv else None
        deg = h.get("degree")
        if p is not None:
            if deg is None:
                deg = p.total_degree()
            if not _is_int(deg) or deg < 1:
                diags.append(f"hypersurfaces[{j}].degree: must be a positive integer")
            elif p.degree != deg:
                diags.append(f"hypersurfaces[{j}]: not homogeneous of degree {deg}")
            hyps.append(p)
            degs.append(deg)

    N = raw.get("N")
    if N is not None and (not _is_int(N) or N < 1):
        diags.append("N: must be a positive integer")
    if _is_int(N) and _is_int(k) and hs and N < k:
        diags.append("N: must be at least k")

    curves = {}
    for key, comps in (raw.get("curves") or {}).items():
        if not isinstance(comps, list) or not comps:
            diags.append(f"curves.{key}: expected a list of component strings")
            continue
        if nv and len(comps) != nv:
            diags.append(f"curves.{key}: expected {nv} components, got {len(comps)}")
        ps = [unipoly(f"curves.{key}[{j}]", c) for j, c in enumerate(comps)]
        if all(p is not None for p in ps):
            if all(p.is_zero() for p in ps):
                diags.append(f"curves.{key}: all components are zero")
            curves[key] = ps

    grid = raw.get("r_grid", {})
    r_min, r_max, points = grid.get("r_min", 2.0), grid.get("r_max", 1000.0), grid.get("points", 8)
    if not _is_num(r_min) or r_min <= 1:
        diags.append("r_min must exceed 1")
    if not _is_num(r_max) or (_is_num(r_min) and r_max <= r_min):
        diags.append("r_max must exceed r_min")
    if not _is_int(points) or points < 2:
        diags.append("r_grid.points must be an integer >= 2")

    tols = raw.get("tolerances", {})
    quad = tols.get("quad", DEFAULT_QUAD_TOL)
    root = tols.get("root", DEFAULT_ROOT_TOL)
    for label, v in (("tolerances.quad", quad), ("tolerances.root", root)):
        if not _is_num(v) or v <= 0:
            diags.append(f"{label}: must be a positive number")

    seed = raw.get("seed", DEFAULT_SEED)
    if not _is_int(seed) or seed < 0:
        diags.append("seed: must be a nonnegative integer")
    caps = raw.get("caps", {})
    d_cap = caps.get("d_cap")
    if d_cap is not None and (not _is_int(d_cap) or d_cap < 1):
        diags.append("caps.d_cap: must be a positive integer")
    retry = caps.get("retry", DEFAULT_RETRY_CAP)
    if not _is_int(retry) or retry < 1:
        diags.append("caps.retry: must be a positive integer")
    d_max = (raw.get("hilbert") or {}).get("d_max", 5)
    if not _is_int(d_max) or d_max < 0:
        diags.append("hilbert.d_max: must be a nonnegative integer")

    jensen = None
    if raw.get("jensen") is not None:
        j = raw["jensen"]
        num = unipoly("jensen.num", j.get("num", "1"))
        den = unipoly("jensen.den", j.get("den", "1"))
        if den is not None and den.is_zero():
            diags.append("jensen.den: must be nonzero")
        jensen = {"num": num, "den": den}

    if diags:
        return None
    return RunConfig(
        name=str(raw.get("name", "")),
        n=n, generators=gens, k=k, hypersurfaces=hyps, degrees=degs, N=N, curves=curves,
        r_min=float(r_min), r_max=float(r_max), points=points,
        quad_tol=float(quad), root_tol=float(root), seed=seed,
        d_cap=d_cap, retry_cap=retry, d_max=d_max, jensen=jensen, raw=raw,
    )


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def validate_text(text: str) -> List[str]:
    """Every problem in the document, without running any computation."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        return [f"invalid JSON: {e.msg} at byte {_byte_offset(text, e.pos)}"]
    if not isinstance(raw, dict):
        return ["top level must be a JSON object"]
    diags: List[str] = []
    _parse(raw, diags)
    return diags


def load_config_text(text: str) -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"invalid JSON: {e.msg} at byte {_byte_offset(text, e.pos)}"]) from None
    if not isinstance(raw, dict):
        raise ConfigError(["top level must be a JSON object"])
    diags: List[str] = []
    cfg = _parse(raw, diags)
    if cfg is None:
        raise ConfigError(diags)
    return cfg


def load_config(path) -> RunConfig:
    return load_config_text(Path(path).read_text(encoding="utf-8"))
