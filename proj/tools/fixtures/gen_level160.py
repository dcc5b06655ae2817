#!/usr/bin/env python3
"""Regenerate data/level160_raw.json with PARI/GP (via cypari2).

Computes the weight-3 newforms of level 160 with nebentypus (-20/.), takes the
first eigenform of the two-form twist pair, rewrites its coefficient field on a
reduced defining polynomial and dumps a_1..a_B as power-basis coordinates.

The raw file is canonicalised with `galimage ingest --file ... --out ...`.
"""
import argparse
import json

import cypari2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=2000)
    ap.add_argument("--out", default="level160_raw.json")
    args = ap.parse_args()

    pari = cypari2.Pari()
    pari.allocatemem(2 * 10**9)
    pari("mf=mfinit([160,3,-20],0); L=mfeigenbasis(mf); P=mffields(mf)[1]")
    pari("R=polredabs(P,1); Q=R[1]; phi=lift(R[2])")
    pari(f"CF=mfcoefs(L[1],{args.bound})")
    deg = int(pari("poldegree(Q)"))
    field_poly = [str(pari(f"polcoef(Q,{j})")) for j in range(deg + 1)]
    coeffs = []
    for n in range(1, args.bound + 1):
        a = pari(f"lift(Mod(subst(lift(CF[{n + 1}]),y,phi),Q))")
        coeffs.append([str(pari(f"polcoef({a},{j},y)")) for j in range(deg)])
    doc = {
        "schema": "CoefficientFileV1",
        "level": 160,
        "weight": 3,
        "nebentypus_discriminant": -20,
        "field_poly": field_poly,
        "basis": "power",
        "coefficients": coeffs,
        "source": "PARI/GP %s mfeigenbasis(mfinit([160,3,-20],0))[1], field polredabs"
        % ".".join(str(v) for v in pari.version()[:3]),
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh)


if __name__ == "__main__":
    main()
