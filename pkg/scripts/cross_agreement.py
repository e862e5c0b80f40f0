"""Compare the strict-inequality and minus-1 stability criteria on grids and samples.

Writes every disagreement as JSON and prints a per-family summary.

    python scripts/cross_agreement.py --max-den 8 --a2-samples 200 --out findings.json
"""

from __future__ import annotations

import argparse
import collections
import itertools
import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from parahoric.polytope import ThetaTuple, cross_check, enumerate_walls


@dataclass
class Config:
    max_den: int = 8
    a1_points: tuple = (3, 4)
    a2_samples: int = 200
    seed: int = 7
    out: str = "findings.json"


def farey(q: int) -> list[Fraction]:
    return sorted({Fraction(p, d) for d in range(1, q + 1) for p in range(d + 1)})


def a2_sample(rng: random.Random, q_max: int) -> tuple:
    q = rng.randint(1, q_max)
    a = rng.randint(0, q)
    return (Fraction(a, q), Fraction(rng.randint(0, q - a), q))


def run(cfg: Config) -> dict:
    families = {}
    for s in cfg.a1_points:
        walls = enumerate_walls("A1", s)
        grid = (ThetaTuple.parse("A1", [[t] for t in ts]) for ts in itertools.product(farey(cfg.max_den), repeat=s))
        families[f"A1 s={s}"] = [f for f in (cross_check(t, walls) for t in grid) if f]
    rng = random.Random(cfg.seed)
    walls = enumerate_walls("A2", 3)
    samples = [ThetaTuple.parse("A2", [a2_sample(rng, cfg.max_den) for _ in range(3)]) for _ in range(cfg.a2_samples)]
    families["A2 s=3"] = [f for f in (cross_check(t, walls) for t in samples) if f]
    return families


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(Config()).items():
        kind = int if isinstance(default, int) else str
        if isinstance(default, tuple):
            ap.add_argument(f"--{name.replace('_', '-')}", type=int, nargs="+", default=list(default))
        else:
            ap.add_argument(f"--{name.replace('_', '-')}", type=kind, default=default)
    cfg = Config(**vars(ap.parse_args()))
    families = run(cfg)
    with open(cfg.out, "w") as fh:
        json.dump({"config": asdict(cfg), "findings": {k: [f.to_json() for f in v] for k, v in families.items()}}, fh, indent=1)
    for name, found in families.items():
        pattern = collections.Counter(
            (f.strict.value, f.deformation.value, tuple(sorted({e.underlying_degree for e in f.equality_walls})))
            for f in found
        )
        print(f"{name}: {len(found)} disagreements")
        for (strict, other, degs), c in sorted(pattern.items()):
            print(f"  {c} x strict={strict} minus-1={other} quotient degrees {list(degs)}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
