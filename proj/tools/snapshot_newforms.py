#!/usr/bin/env python3
"""Regenerate the bundled newform coefficient snapshot in data/.

Uses PARI/GP's modular forms package (through cypari2) to compute Hecke
eigenforms and writes one JSON file per label in the hgff newform schema.
Newforms inside a space are ordered the way LMFDB orders them: by absolute
dimension, then lexicographically by the trace form (tr a(1), tr a(2), ...).

    pip install cypari2
    python3 tools/snapshot_newforms.py --out data --nmax 1000
"""
import argparse
import json
import pathlib
import string
from fractions import Fraction

try:
    import cypari2
except ImportError:  # only needed for regeneration
    cypari2 = None

# label -> (level, weight, PARI character spec, human readable character)
LABELS = {
    # Table of Rodriguez Villegas relations
    "16.3.c.a": (16, 3, "-4", "(-4/.)"),
    "12.3.c.a": (12, 3, "-3", "(-3/.)"),
    "8.3.d.a": (8, 3, "-8", "(-8/.)"),
    "144.3.g.a": (144, 3, "-4", "(-4/.)"),
    "8.4.a.a": (8, 4, "1", "trivial"),
    "36.4.a.a": (36, 4, "1", "trivial"),
    "16.4.a.a": (16, 4, "1", "trivial"),
    "72.4.a.b": (72, 4, "1", "trivial"),
    "27.4.a.a": (27, 4, "1", "trivial"),
    "9.4.a.a": (9, 4, "1", "trivial"),
    "108.4.a.a": (108, 4, "1", "trivial"),
    "32.4.a.a": (32, 4, "1", "trivial"),
    "144.4.a.f": (144, 4, "1", "trivial"),
    "216.4.a.c": (216, 4, "1", "trivial"),
    "25.4.a.b": (25, 4, "1", "trivial"),
    "128.4.a.b": (128, 4, "1", "trivial"),
    "200.4.a.f": (200, 4, "1", "trivial"),
    "864.4.a.a": (864, 4, "1", "trivial"),
    # new conjectural weight three relations
    "48.3.g.a": (48, 3, "-4", "(-4/.)"),
    "12.3.d.a": (12, 3, "-4", "(-4/.)"),
    "64.3.d.a": (64, 3, "-8", "(-8/.)"),
    "27.3.b.b": (27, 3, "-3", "(-3/.)"),
    "36.3.d.a": (36, 3, "-4", "(-4/.)"),
    "108.3.c.b": (108, 3, "-3", "(-3/.)"),
    "576.3.h.b": (576, 3, "-24", "(-24/.)"),
    "128.3.d.c": (128, 3, "-8", "(-8/.)"),
    "576.3.h.a": (576, 3, "-24", "(-24/.)"),
    "432.3.g.a": (432, 3, "-4", "(-4/.)"),
    "288.3.g.a": (288, 3, "-4", "(-4/.)"),
    "108.3.d.a": (108, 3, "-4", "(-4/.)"),
    "25.3.c.a": (25, 3, "Mod(7,25)", "conductor 5, 2 -> i"),
    "20.3.d.a": (20, 3, "-20", "(-20/.)"),
    "24.3.h.a": (24, 3, "-24", "(-24/.)"),
    # weight two and miscellaneous
    "32.2.a.a": (32, 2, "1", "trivial"),
    "540.2.a.a": (540, 2, "1", "trivial"),
    "972.2.a.e": (972, 2, "1", "trivial"),
    "768.2.a.j": (768, 2, "1", "trivial"),
    "32.3.c.a": (32, 3, "-4", "(-4/.)"),
    "7.3.b.a": (7, 3, "-7", "(-7/.)"),
    "8.6.a.a": (8, 6, "1", "trivial"),
    "2.8.a.a": (2, 8, "1", "trivial"),
    "2.10.a.a": (2, 10, "1", "trivial"),
}


def frac(x):
    x = pari(x)
    return f"{x.numerator()}/{x.denominator()}"


def absolute_forms(level, weight, char, nmax):
    """Return [(dim, traces, field_poly, an)] per Hecke orbit, sorted LMFDB-style."""
    pari(f"mf = mfinit([{level},{weight},{char}], 0); L = mfeigenbasis(mf); cyc = mfparams(mf)[5];")
    count = int(pari("#L"))
    out = []
    for i in range(1, count + 1):
        pari(f"rel = liftall(mffields(mf)[{i}]); co = mfcoefs(L[{i}], {nmax});")
        if int(pari("poldegree(cyc)")) > 1:
            # absolute field of the relative extension over Q(chi)
            pari("eq = rnfequation(nfinit(cyc), rel, 1); P = eq[1]; A = lift(eq[2]); k = eq[3];")
            pari("conv(c) = my(v = subst(liftall(c), 'y, 'Y)); v = subst(v, 't, A);"
                 " v = subst(v, 'Y, 'y - k*A); lift(Mod(v, P));")
        else:
            pari("P = if(poldegree(rel) > 0, rel, 'y);")
            pari("conv(c) = lift(Mod(liftall(c), P));")
        if int(pari("poldegree(P)")) > 1:
            pari("R = polredabs(P, 1); Q = R[1]; M = lift(R[2]);")
            pari("aconv(c) = lift(Mod(subst(conv(c), 'y, M), Q));")
        else:
            pari("Q = 'y; aconv(c) = liftall(c);")
        deg = max(1, int(pari("poldegree(Q)")))
        an = []
        traces = []
        for n in range(1, nmax + 1):
            pari(f"v = aconv(co[{n + 1}]);")
            if deg == 1:
                an.append([frac(pari("v"))])
                traces.append(int(pari("v")))
            else:
                an.append([frac(pari(f"polcoef(v, {j}, 'y)")) for j in range(deg)])
                traces.append(int(pari("trace(Mod(v, Q))")))
        fp = [int(pari(f"polcoef(Q, {j}, 'y)")) for j in range(deg + 1)] if deg > 1 else [0, 1]
        out.append((deg, traces, fp, an))
    out.sort(key=lambda f: (f[0], f[1]))
    return out


def normalize_imaginary_quadratic(fp, an):
    """Pick the generator of an imaginary quadratic coefficient field so that
    the first embedding (roots sorted by real, then imaginary part) sends the
    first irrational coefficient into the upper half plane."""
    if len(fp) != 3:
        return an
    c0, c1 = fp[0], fp[1]
    if c1 * c1 - 4 * c0 >= 0:
        return an
    for a, b in (map(Fraction, v) for v in an):
        if b == 0:
            continue
        if b < 0:
            return an
        # y -> -c1 - y
        return [[frac_str(Fraction(v[0]) - Fraction(v[1]) * c1), frac_str(-Fraction(v[1]))] for v in an]
    return an


def frac_str(f):
    return f"{f.numerator}/{f.denominator}"


def sum_coords(coords):
    return "+".join(f"({c})*'y^{j}" for j, c in enumerate(coords))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    ap.add_argument("--nmax", type=int, default=1000)
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    spaces = {}
    for label, (level, weight, char, desc) in LABELS.items():
        if args.only and label not in args.only:
            continue
        key = (level, weight, char)
        if key not in spaces:
            spaces[key] = absolute_forms(level, weight, char, args.nmax)
        forms = spaces[key]
        idx = string.ascii_lowercase.index(label.split(".")[3])
        deg, trace, fp, an = forms[idx]
        an = normalize_imaginary_quadratic(fp, an)
        doc = {
            "label": label,
            "weight": weight,
            "level": level,
            "char": desc,
            "field_poly": fp,
            "an": an,
            "embedding_precision_bits": 256,
        }
        (outdir / f"{label}.json").write_text(json.dumps(doc, separators=(",", ":")) + "\n")
        print(label, "dim", deg, "poly", fp, "traces a(2..7)", trace[1:7], "of", len(forms))


if __name__ == "__main__":
    pari = cypari2.Pari()
    pari.allocatemem(4 * 10**9)
    main()
