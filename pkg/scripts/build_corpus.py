"""Regenerate the shipped example corpus.

Coefficients are drawn from a seeded RNG; a draw is kept when it passes
the validity checks (subgeneral position, nondegeneracy, simple zeros
where the config asks for generic members). Run from the repository root.
"""

import argparse
import itertools
import json
import random
from pathlib import Path

from svlab.config import load_config_text
from svlab.nevan import nondegenerate_over_Id
from svlab.polyalg import compose, mono_basis, poly_gcd, squarefree_part
from svlab.variety import Position, check_subgeneral, class_coords

OUT = Path("src/svlab/data/corpus")
CONIC = ["x0*x2 - x1^2"]
TWISTED = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]
GRID = {"r_min": 2.0, "r_max": 1000.0, "points": 8}


def random_form(rng, n_vars, degree, lo=-5, hi=5):
    terms = []
    for mono in mono_basis(n_vars, degree):
        c = rng.randint(lo, hi)
        if c == 0:
            continue
        m = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(mono) if e)
        terms.append(f"{c}*{m}")
    return " + ".join(terms).replace("+ -", "- ") or None


def base(name, n, gens, k, N, f, g=None, **extra):
    doc = {
        "name": name,
        "n": n,
        "variety": {"generators": gens, "k": k},
        "hypersurfaces": [],
        "N": N,
        "curves": {"f": f} if g is None else {"f": f, "g": g},
        "r_grid": dict(GRID),
        "tolerances": {"quad": 1e-8, "root": 1e-12},
        "seed": 0xC0FFEE,
        "caps": {"retry": 16},
        "hilbert": {"d_max": 5},
    }
    doc.update(extra)
    return doc


def valid(doc, simple=False, curves=("f",)):
    cfg = load_config_text(json.dumps(doc))
    V, fam = cfg.variety(), cfg.family()
    for Q in fam.normalized():
        if class_coords(Q, V).is_zero():
            return False
    for key in curves:
        f = cfg.curve(key)
        if not nondegenerate_over_Id(f, V, fam.d).nondegenerate:
            return False
        for Q in fam.members:
            P = compose(Q, f.components)
            if P.is_zero():
                return False
            if simple and (P.degree != Q.degree * f.degree or squarefree_part(P).degree != P.degree):
                return False
    if simple:
        Ps = [compose(Q, cfg.curve("f").components) for Q in fam.members]
        if any(poly_gcd(a, b).degree > 0 for a, b in itertools.combinations(Ps, 2)):
            return False
    return check_subgeneral(V, fam, cfg.d_cap).verdict is Position.IN_POSITION


def draw(doc, rng, n_vars, degrees, fixed=(), simple=False, curves=("f",), tries=200):
    for _ in range(tries):
        hs = [{"poly": p, "degree": d} for p, d in fixed]
        for d in degrees:
            p = None
            while p is None:
                p = random_form(rng, n_vars, d)
            hs.append({"poly": p, "degree": d})
        doc["hypersurfaces"] = hs
        if valid(doc, simple, curves):
            return doc
    raise RuntimeError(f"no valid draw for {doc['name']}")


def build(seed):
    rng = random.Random(seed)
    f2 = ["1", "z", "z^2"]
    f3 = ["1", "z", "z^3"]
    docs = [
        draw(base("conic_4_lines", 2, CONIC, 1, 1, f2, jensen={"num": "z^2 - 1", "den": "z"}), rng, 3, [1] * 4, simple=True),
        draw(base("conic_7_lines", 2, CONIC, 1, 2, f2), rng, 3, [1] * 7),
        draw(base("conic_10_lines", 2, CONIC, 1, 3, f2), rng, 3, [1] * 10),
        draw(base("plane_4_lines_contact", 2, [], 2, 2, f3), rng, 3, [1] * 3, fixed=[("x2", 1)]),
        draw(base("plane_lines_and_conics", 2, [], 2, 2, f3), rng, 3, [1] * 4 + [2] * 3),
        draw(base("plane_7_conics", 2, [], 2, 2, f3), rng, 3, [2] * 7),
        draw(base("twisted_cubic_5_planes", 3, TWISTED, 1, 1, ["1", "z", "z^2", "z^3"]), rng, 4, [1] * 5),
        draw(base("twisted_cubic_8_quadrics", 3, TWISTED, 1, 1, ["1", "z", "z^2", "z^3"]), rng, 4, [2] * 8),
        draw(base("plane_in_p3_6_planes", 3, ["x3"], 2, 3, ["1", "z", "z^2", "0"]), rng, 4, [1] * 6),
        draw(base("unique_scaled_pair", 2, CONIC, 1, 1, f2, g=["2", "2*z", "2*z^2"]), rng, 3, [1] * 8, curves=("f", "g")),
        draw(base("unique_distinct_pair", 2, [], 2, 2, f2, g=["1", "z", "z^3"]), rng, 3, [1] * 8, simple=True, curves=("f", "g")),
    ]
    shared = base("line_shared_zeros", 1, [], 1, 1, ["1", "z"], g=["1", "z^2"])
    shared["hypersurfaces"] = [{"poly": "x0", "degree": 1}, {"poly": "x1", "degree": 1}]
    docs.append(shared)
    return docs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for doc in build(args.seed):
        path = args.out / f"{doc['name']}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()
