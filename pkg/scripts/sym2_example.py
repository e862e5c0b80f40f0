"""Extended adjoint weights for SU(2) across the alcove, and the Hecke comparison at t = 1.

    python scripts/sym2_example.py --den 10
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from parahoric.parabolic import MarkedPointData, ParabolicBundle, associated_bundle, extend_weights, hecke_comparable
from parahoric.rational import to_str
from parahoric.root_system import RepWeights, facet_toward, parse_group, rho_facet_classify


@dataclass
class Config:
    den: int = 10


def row(datum, rho, t: Fraction) -> str:
    # rho-facet walls (t = 0, 1/2) are approached from above
    fac = facet_toward(datum, (t,), (1,), rho) if t in (0, Fraction(1, 2)) else rho_facet_classify(datum, (t,), rho)
    s = extend_weights(datum, (t,), fac, rho)
    limits = ", ".join(to_str(x) for x in sorted(set(s.limits)))
    return f"t={to_str(t):>5}  degree={s.degree:>2}  type={s.quasi_parabolic_type}  weights={{{limits}}}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--den", type=int, default=Config.den)
    cfg = Config(**vars(ap.parse_args()))
    a1 = parse_group("A1")
    ad = RepWeights.adjoint(a1)
    for p in range(cfg.den):
        print(row(a1, ad, Fraction(p, cfg.den)))

    s2 = RepWeights.sym2(a1)
    limit = associated_bundle(a1, [(1,)], s2, [rho_facet_classify(a1, (Fraction(3, 4),), s2)])
    print("limit at t=1:", limit.to_json())
    w = ParabolicBundle(3, 3, {"0": MarkedPointData((3,), (0,))})
    ok, cert = hecke_comparable(limit, w)
    print("Hecke comparable with O + O(x) + O(2x):", ok, dict(cert.shifts) if cert else None)


if __name__ == "__main__":
    main()
