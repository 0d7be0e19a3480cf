"""Shipped example configurations and randomized valid configurations."""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from math import lcm
from importlib import resources
from typing import Callable, Iterator, List, Optional, Tuple

from .config import RunConfig, load_config_text
from .errors import PreconditionError
from .nevan import nondegenerate_over_Id, reduce_representation
from .polyalg import UniPoly, compose, mono_basis, parse_unipoly, poly_gcd, squarefree_part
from .variety import Position, check_subgeneral, class_coords, hilbert_function

CONIC = ["x0*x2 - x1^2"]
TWISTED = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]


def corpus_names() -> List[str]:
    root = resources.files("svlab") / "data" / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_text(name: str) -> str:
    return (resources.files("svlab") / "data" / "corpus" / f"{name}.json").read_text(encoding="utf-8")


def load_corpus(name: str) -> RunConfig:
    return load_config_text(corpus_text(name))


def corpus_configs() -> Iterator[RunConfig]:
    for name in corpus_names():
        yield load_corpus(name)


# -- random configurations ---------------------------------------------------------


def _poly_text(p: UniPoly) -> str:
    return str(p)


def _form_text(rng: random.Random, n_vars: int, degree: int, lo: int = -5, hi: int = 5) -> str:
    while True:
        terms = []
        for mono in mono_basis(n_vars, degree):
            c = rng.randint(lo, hi)
            if c:
                m = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(mono) if e)
                terms.append(f"{c}*{m}")
        if terms:
            return " + ".join(terms).replace("+ -", "- ")


def _rand_uni(rng: random.Random, deg: int, lo: int = -3, hi: int = 3) -> UniPoly:
    return UniPoly([rng.randint(lo, hi) for _ in range(deg + 1)])


def _param_curve(rng, power: int, max_deg: int) -> List[str]:
    """(a^p, a^(p-1) b, ..., b^p) for random coprime a, b: lands on the rational normal curve."""
    while True:
        a = _rand_uni(rng, rng.randint(0, max_deg))
        b = _rand_uni(rng, rng.randint(0, max_deg))
        if a.is_zero() or b.is_zero() or max(a.degree, b.degree) < 1:
            continue
        if poly_gcd(a, b).degree > 0:
            continue
        if (a * UniPoly([b.lead()]) - b * UniPoly([a.lead()])).is_zero():
            continue
        return [_poly_text(a ** (power - j) * b ** j) for j in range(power + 1)]


def _free_curve(rng, n_vars: int, max_deg: int, zero_tail: int = 0) -> List[str]:
    comps = [_poly_text(_rand_uni(rng, rng.randint(0, max_deg))) for _ in range(n_vars - zero_tail)]
    return comps + ["0"] * zero_tail


TEMPLATES = ("plane_lines", "conic_lines", "twisted_planes", "p3_planes", "plane_conics", "hyperplane_in_p3")
PAIR_TEMPLATES = ("plane_lines", "conic_lines", "twisted_planes", "p3_planes", "hyperplane_in_p3")
FREE_TEMPLATES = ("plane_lines", "p3_planes")


def _template(rng: random.Random, name: str) -> Tuple[dict, int, List[int], Callable[[], List[str]]]:
    """Base document, number of variables, member degrees, curve sampler."""
    if name == "plane_lines":
        N = rng.choice([2, 3, 4])
        q = 2 * N - 1 + rng.randint(1, 2)
        doc = {"n": 2, "variety": {"generators": [], "k": 2}, "N": N}
        return doc, 3, [1] * q, lambda: _free_curve(rng, 3, 3)
    if name == "conic_lines":
        N = rng.choice([1, 2, 3])
        q = 3 * N + rng.randint(1, 2)
        doc = {"n": 2, "variety": {"generators": CONIC, "k": 1}, "N": N}
        return doc, 3, [1] * q, lambda: _param_curve(rng, 2, 2)
    if name == "twisted_planes":
        N = rng.choice([1, 2])
        q = 4 * N + 1
        doc = {"n": 3, "variety": {"generators": TWISTED, "k": 1}, "N": N}
        return doc, 4, [1] * q, lambda: _param_curve(rng, 3, 1)
    if name == "p3_planes":
        N = rng.choice([3, 4])
        q = 2 * N - 2 + rng.randint(1, 2)
        doc = {"n": 3, "variety": {"generators": [], "k": 3}, "N": N}
        return doc, 4, [1] * q, lambda: _free_curve(rng, 4, 4)
    if name == "plane_conics":
        doc = {"n": 2, "variety": {"generators": [], "k": 2}, "N": 2}
        degs = [2] * rng.randint(0, 3)
        degs = degs + [1] * (7 - len(degs))
        return doc, 3, degs, lambda: _free_curve(rng, 3, 3)
    if name == "hyperplane_in_p3":
        N = rng.choice([2, 3])
        q = 2 * N - 1 + rng.randint(1, 2)
        doc = {"n": 3, "variety": {"generators": ["x3"], "k": 2}, "N": N}
        return doc, 4, [1] * q, lambda: _free_curve(rng, 4, 3, zero_tail=1)
    raise ValueError(f"unknown template {name!r}")


def _valid(cfg: RunConfig, curves=("f",)) -> bool:
    V, fam = cfg.variety(), cfg.family()
    for Q in fam.normalized():
        if class_coords(Q, V).is_zero():
            return False
    for key in curves:
        f = cfg.curve(key)
        if f.degree < 1 or not nondegenerate_over_Id(f, V, fam.d).nondegenerate:
            return False
        if any(compose(Q, f.components).is_zero() for Q in fam.members):
            return False
    return check_subgeneral(V, fam, cfg.d_cap).verdict is Position.IN_POSITION


def _uniqueness_count(doc: dict, degs: List[int]) -> int:
    """Smallest q above the uniqueness threshold for this variety and degree pattern."""
    cfg = load_config_text(json.dumps({k: v for k, v in doc.items() if k != "N"}))
    d = lcm(*degs)
    H = hilbert_function(cfg.variety(), d)
    k, N = cfg.k, doc["N"]
    bound = Fraction(2 * (H - 1), d) + Fraction((2 * N - k + 1) * H, k + 1)
    return math.floor(bound) + 1


def random_config(
    seed: int, template: Optional[str] = None, pair: str = "", above_threshold: bool = False
) -> RunConfig:
    """A valid configuration drawn deterministically from ``seed``.

    ``pair`` adds a second curve g: "scaled" (g = c f), "random", or
    "agree" (g = f + h * zero locus of Q_0(f), so the two maps agree there).
    ``above_threshold`` adds members until q exceeds the uniqueness threshold.
    """
    rng = random.Random(seed)
    if pair == "agree":
        choices = FREE_TEMPLATES
    elif pair:
        choices = PAIR_TEMPLATES
    else:
        choices = TEMPLATES
    name = template or rng.choice(choices)
    for _ in range(500):
        doc, n_vars, degs, sample = _template(rng, name)
        if above_threshold:
            degs = degs + [1] * max(0, _uniqueness_count(doc, degs) - len(degs))
        doc.update({
            "name": f"random_{name}_{seed}",
            "hypersurfaces": [{"poly": _form_text(rng, n_vars, d), "degree": d} for d in degs],
            "r_grid": {"r_min": 2.0, "r_max": 1000.0, "points": 4},
            "seed": seed,
        })
        f = sample()
        # reduce here so that g is built from the reduced f
        try:
            fr = reduce_representation([parse_unipoly(c) for c in f])
        except PreconditionError:
            continue
        f = [_poly_text(c) for c in fr.components]
        doc["curves"] = {"f": f}
        curves = ("f",)
        if pair:
            g = _pair_curve(rng, pair, fr, doc, n_vars, sample)
            if g is None:
                continue
            doc["curves"]["g"] = g
            curves = ("f", "g")
        cfg = load_config_text(json.dumps(doc))
        if _valid(cfg, curves):
            return cfg
    raise RuntimeError(f"no valid random configuration for seed {seed}")


def _pair_curve(rng, kind, fr, doc, n_vars, sample) -> Optional[List[str]]:
    if kind == "scaled":
        c = rng.choice([-3, -2, 2, 3, 5])
        return [_poly_text(p * UniPoly([c])) for p in fr.components]
    if kind == "random":
        return sample()
    if kind == "agree":
        if doc["variety"]["generators"]:
            return None
        cfg = load_config_text(json.dumps({**doc, "curves": {}}))
        P = compose(cfg.hypersurfaces[0], fr.components)
        if P.degree < 1:
            return None
        locus = squarefree_part(P)
        comps = [p + locus * UniPoly([rng.randint(-2, 2)]) for p in fr.components]
        if all(c.is_zero() for c in comps):
            return None
        g = reduce_representation(comps)
        return [_poly_text(c) for c in g.components]
    raise ValueError(f"unknown pair kind {kind!r}")
