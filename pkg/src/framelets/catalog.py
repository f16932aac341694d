"""
Reference filters: four low-pass filters, their real shortest-support
completions (closed forms), and the published complex optimized high-pass
filters (decimal listings, with the negative-frequency filter taken as the
coefficient conjugate).
"""
from __future__ import annotations

from fractions import Fraction
from math import sqrt

from .analysis import FilterBank
from .laurent import LaurentPoly

EXAMPLES = ("bspline2", "bspline4", "interp6", "lowpass6")


def _frac(values, lo):
    return LaurentPoly([float(Fraction(v)) for v in values], lo)


def lowpass(name: str) -> LaurentPoly:
    if name == "haar":
        return LaurentPoly([0.5, 0.5], 0)
    if name == "bspline2":
        return _frac(["1/4", "1/2", "1/4"], -1)
    if name == "bspline4":
        return _frac(["1/16", "1/4", "3/8", "1/4", "1/16"], -2)
    if name == "interp6":
        return _frac(["-1/32", "0", "9/32", "1/2", "9/32", "0", "-1/32"], -3)
    if name == "lowpass6":
        return _frac(["-3/64", "5/64", "15/32", "15/32", "5/64", "-3/64"], -2)
    raise KeyError(name)


def _P(*coeffs_low_to_high, lo=0):
    return LaurentPoly(coeffs_low_to_high, lo)


def initial_bank(name: str) -> FilterBank:
    """The real tight bank ``{a; b1, b2}`` listed for each example filter."""
    a = lowpass(name)
    if name == "haar":
        return FilterBank(a, (LaurentPoly([0.5, -0.5], 0), LaurentPoly()), "real")
    if name == "bspline2":
        one_minus = _P(-1.0, 1.0, lo=-1)                      # 1 - z^-1
        b1 = one_minus * (sqrt(6) / 6)
        b2 = one_minus * _P(1.0, 3.0) * (sqrt(3) / 12)
    elif name == "bspline4":
        r14 = sqrt(14)
        s = sqrt(34 + 8 * r14)
        one_minus = _P(1.0, -1.0)                             # 1 - z
        b1 = one_minus * _P(8 * r14 + 31, 40 * r14 + 155, 64 * r14 + 261, 65.0)
        b1 = b1 * (s * (r14 - 4) / 2080)
        b2 = one_minus * _P(-r14 - 3, -(5 * r14 + 15), 10.0)
        b2 = b2 * (s * (4 * r14 - 17) / 1300)
    elif name == "interp6":
        r3 = sqrt(3)
        s = sqrt(298527 - 142344 * r3)
        common = _P(1.0, -1.0) ** 2 * _P(2 - r3, 1.0)         # (z-1)^2 (z+2-sqrt3)
        common = common.shift(-3)
        b1 = common * _P(-86 - 7 * r3, 21 + 86 * r3, 512 + 57 * r3, 1977.0)
        b1 = b1 * (s * (72 * r3 + 151) / 458600736)
        b2 = common * _P(2 * r3 - 1, r3 - 6, -44.0)
        b2 = b2 * (s * (2 * sqrt(2) + sqrt(6)) / 173976)
    elif name == "lowpass6":
        common = (_P(1.0, -1.0) ** 2).shift(-2)               # z^-2 (z-1)^2
        b1 = common * _P(-93.0, -31.0, 1921.0, 3203.0) * (sqrt(297879) / 6354752)
        b2 = common * _P(3.0, 1.0, 248.0) * (-sqrt(496465) / 794344)
    else:
        raise KeyError(name)
    return FilterBank(a, (b1, b2), "real")


# Published positive-frequency filters, coefficients from the lowest exponent up.
_PUBLISHED = {
    ("bspline4", 0): (-2, [
        "-0.00557113140380+0.0731731460340j",
        "-0.0222840645179+0.292693813728j",
        "-0.318362332504-0.258768579113j",
        "0.307215151326-0.0833740786820j",
        "0.0389934625526-0.0237234566220j",
    ]),
    ("bspline2", 2): (-3, [
        "-0.0296422357615+0.0245498453274j",
        "0.0659915437767-0.0546545208555j",
        # printed as -(0.134097034665+0.310569363502i); only this sign makes the bank tight
        "-0.134097034665+0.310569363502j",
        "-0.199259492568-0.279133899130j",
        "0.256396707846-0.0503651650867j",
        "0.00392785810334+0.00474261627250j",
        "0.0366826532674+0.0442917599692j",
    ]),
    ("bspline4", 2): (-4, [
        "0.0136421172460-0.00936826775525j",
        "0.0545694833985-0.0374729096370j",
        "-0.117756260732+0.0384187816047j",
        "0.176658675556-0.291095343052j",
        "0.215356267335+0.333766056656j",
        "-0.226650692255+0.0670707536790j",
        "-0.0454230034494+0.00120115849369j",
        "-0.0601885689225-0.0876476822545j",
        "-0.0102063889665-0.0148634718020j",
    ]),
    ("interp6", 0): (-3, [
        "0.000765760176753+0.00404161855341j",
        "0",
        "-0.0403653729400-0.0880450827053j",
        "-0.0122521628281-0.0646658968547j",
        "0.267462323473+0.228631206605j",
        "-0.341301227764+0.0646658968553j",
        "0.125690679881-0.144627742454j",
    ]),
    ("lowpass6", 0): (-2, [
        "-0.00427685553137+0.00414104756179j",
        "0.00712809255229-0.00690174593633j",
        "-0.0855371106277-0.173923997595j",
        "0.256611331884+0.179445394344j",
        "-0.263739424437+0.169782950034j",
        "0.0898139661592-0.172543648408j",
    ]),
    ("lowpass6", 2): (-4, [
        "0.000174962462944+0.000667428960698j",
        "-0.000291604104907-0.00111238160116j",
        "0.00604271655936+0.00470763073225j",
        "-0.0147368599441-0.0256441568388j",
        "0.119900001837+0.197463905830j",
        "-0.282016222613-0.153449185519j",
        "0.207557346012-0.197627972773j",
        "-0.0335526030324+0.174187921034j",
        "0.0198783637212-0.00521099275091j",
        "-0.0229561008971+0.00601780292596j",
    ]),
}

# Separation values reported alongside each example.
REPORTED = {
    "bspline2": {"d_R_frac": (5, 8), "d_A": 0.05339, "d_B": {0: 0.549282, 2: 0.329559}},
    "bspline4": {"d_R_frac": (93, 128), "d_A": 0.00187, "d_B": {0: 0.762678, 2: 0.283860}},
    "interp6": {"d_R_frac": (151, 256), "d_A": 0.03719, "d_B": {0: 0.690756, 2: 0.307271}},
    "lowpass6": {"d_R_frac": (557, 1024), "d_A": 0.12595, "d_B": {0: 0.444929, 2: 0.387149}},
}


def published_bp(name: str, order: int) -> LaurentPoly:
    if name == "bspline2" and order == 0:
        r2 = sqrt(2)
        # (1/24)(1 - z^-1)[(-3 sqrt2 + 6i) z + (3 sqrt2 + 6i)]
        alpha, beta = complex(-3 * r2, 6), complex(3 * r2, 6)
        return LaurentPoly([-beta, beta - alpha, alpha], -1) / 24
    lo, vals = _PUBLISHED[(name, order)]
    return LaurentPoly([complex(v) for v in vals], lo)


def published_bank(name: str, order: int) -> FilterBank:
    bp = published_bp(name, order)
    return FilterBank(lowpass(name), (bp, bp.conj()), "complex")


def published_keys():
    return [("bspline2", 0), *sorted(_PUBLISHED)]
