"""
Regenerate the committed golden bank files in ``src/framelets/data``.

Closed-form filters (square roots, rationals) are expanded in 50-digit
arithmetic with mpmath and rounded once to the nearest double, so the files
do not inherit double-precision round-off from the expansion.  Published
decimal listings are copied as printed.

Run from the repository root::

    python3 scripts/make_golden.py
"""
from __future__ import annotations

from pathlib import Path

import mpmath as mp

from framelets.bankfile import BankFile, serialize_bank
from framelets.catalog import _PUBLISHED, lowpass
from framelets.laurent import LaurentPoly

mp.mp.dps = 50
OUT = Path(__file__).resolve().parents[1] / "src" / "framelets" / "data"


def mul(p, q):
    out = [mp.mpc(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def scale(p, c):
    return [x * c for x in p]


def poly(coeffs, lo):
    return LaurentPoly([complex(x) for x in coeffs], lo)


def rat(s):
    n, _, d = s.partition("/")
    return mp.mpf(n) / mp.mpf(d or 1)


def exact_banks():
    sqrt = mp.sqrt
    banks = {}

    one_minus = [mp.mpf(-1), mp.mpf(1)]                         # 1 - z^-1 on [-1, 0]
    b1 = scale(one_minus, sqrt(6) / 6)
    b2 = scale(mul(one_minus, [1, 3]), sqrt(3) / 12)            # (1 - z^-1)(1 + 3z) on [-1, 1]
    banks["bspline2"] = ((b1, -1), (b2, -1))

    r14 = sqrt(14)
    s = sqrt(34 + 8 * r14)
    b1 = scale(mul([1, -1], [8 * r14 + 31, 40 * r14 + 155, 64 * r14 + 261, 65]), s * (r14 - 4) / 2080)
    b2 = scale(mul([1, -1], [-r14 - 3, -(5 * r14 + 15), 10]), s * (4 * r14 - 17) / 1300)
    banks["bspline4"] = ((b1, 0), (b2, 0))

    r3 = sqrt(3)
    s = sqrt(298527 - 142344 * r3)
    common = mul(mul([1, -1], [1, -1]), [2 - r3, 1])
    b1 = scale(mul(common, [-86 - 7 * r3, 21 + 86 * r3, 512 + 57 * r3, 1977]),
               s * (72 * r3 + 151) / 458600736)
    b2 = scale(mul(common, [2 * r3 - 1, r3 - 6, -44]), s * (2 * sqrt(2) + sqrt(6)) / 173976)
    banks["interp6"] = ((b1, -3), (b2, -3))

    common = mul([1, -1], [1, -1])
    b1 = scale(mul(common, [-93, -31, 1921, 3203]), sqrt(297879) / 6354752)
    b2 = scale(mul(common, [3, 1, 248]), -sqrt(496465) / 794344)
    banks["lowpass6"] = ((b1, -2), (b2, -2))
    return banks


def published_bspline2_n0():
    r2 = mp.sqrt(2)
    alpha, beta = mp.mpc(-3 * r2, 6), mp.mpc(3 * r2, 6)
    bp = [x / 24 for x in (-beta, beta - alpha, alpha)]         # on [-1, 1]
    return poly(bp, -1)


def write(name, bf):
    (OUT / f"{name}.bank").write_text(serialize_bank(bf), encoding="utf-8")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    a_exact = {
        "haar": (["1/2", "1/2"], 0),
        "bspline2": (["1/4", "1/2", "1/4"], -1),
        "bspline4": (["1/16", "1/4", "3/8", "1/4", "1/16"], -2),
        "interp6": (["-1/32", "0", "9/32", "1/2", "9/32", "0", "-1/32"], -3),
        "lowpass6": (["-3/64", "5/64", "15/32", "15/32", "5/64", "-3/64"], -2),
    }
    lows = {k: poly([rat(v) for v in vals], lo) for k, (vals, lo) in a_exact.items()}
    for k, a in lows.items():
        assert a == lowpass(k)
        write(f"{k}_a", BankFile.lowpass_only(a))
    write("haar", BankFile("real", (("a", lows["haar"]), ("b1", poly([mp.mpf(1) / 2, -mp.mpf(1) / 2], 0)))))
    for k, ((b1, lo1), (b2, lo2)) in exact_banks().items():
        write(k, BankFile("real", (("a", lows[k]), ("b1", poly(b1, lo1)), ("b2", poly(b2, lo2)))))
    bp = published_bspline2_n0()
    write("bspline2_N0", BankFile("complex", (("a", lows["bspline2"]), ("bp", bp), ("bn", bp.conj()))))
    for (k, order), (lo, vals) in sorted(_PUBLISHED.items()):
        bp = LaurentPoly([complex(v) for v in vals], lo)
        write(f"{k}_N{order}", BankFile("complex", (("a", lows[k]), ("bp", bp), ("bn", bp.conj()))))


if __name__ == "__main__":
    main()
