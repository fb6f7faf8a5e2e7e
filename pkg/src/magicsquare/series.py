"""Closed-form dimension series over exact rationals.

The central object is a series descriptor: a table of root classes, each
carrying the pairing of the distinguished marker weights with that class,
and the values u, v such that the half-sum of positive roots pairs as
u + a*v on the class.  A uniform product over the descriptor implements
the Weyl dimension formula for any member of the series at once:

  * a "unit" row contributes (x + u + a v) / (u + a v), x the marker pairing
    times the chosen exponents;
  * an "afold" row (one per weight class of the varying-algebra slots, a
    positive roots each) additionally contributes the interval ratio
    C(u+av+x+a/2-1, x) / C(u+av+x-a/2, x) of generalized binomials.

Interval descriptors (n(t), m(t) endpoint pairs) implement the same recipe
for families parametrized by other letters, e.g. the orthogonal family.
All closed forms are also provided verbatim as printed (suffix _printed
where they differ from the validated variants); the crosscheck harness
compares each against the Weyl oracle and records the outcome.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import (
    LinearFactorProduct,
    LinearForm,
    QPoly,
    RatLike,
    factorial_ratio,
    gauss_binomial,
    gen_binomial,
    rat,
    rat_str,
)

F0 = Fraction(0)
F1 = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DescriptorRow:
    pairings: Tuple[int, ...]
    u: Fraction
    v: Fraction
    cls: str  # "unit" or "afold"


@dataclass(frozen=True)
class IntervalRow:
    pairing: int
    n: Tuple[Fraction, Fraction]  # n0 + n1 * t
    m: Tuple[Fraction, Fraction]


@dataclass
class SeriesDescriptor:
    name: str
    symbols: Tuple[str, ...]
    rows: List[DescriptorRow] = field(default_factory=list)
    intervals: List[IntervalRow] = field(default_factory=list)
    param: str = "a"

    def to_json(self) -> dict:
        data = {
            "name": self.name,
            "symbols": list(self.symbols),
            "param": self.param,
            "rows": [
                {"pairings": list(r.pairings), "u": rat_str(r.u),
                 "v": rat_str(r.v), "class": r.cls}
                for r in self.rows
            ],
        }
        if self.intervals:
            data["intervals"] = [
                {"pairing": r.pairing,
                 "n": [rat_str(r.n[0]), rat_str(r.n[1])],
                 "m": [rat_str(r.m[0]), rat_str(r.m[1])]}
                for r in self.intervals
            ]
        return data

    @staticmethod
    def from_json(data: dict) -> "SeriesDescriptor":
        rows = [
            DescriptorRow(tuple(r["pairings"]), Fraction(r["u"]), Fraction(r["v"]),
                          r["class"])
            for r in data.get("rows", [])
        ]
        intervals = [
            IntervalRow(r["pairing"],
                        (Fraction(r["n"][0]), Fraction(r["n"][1])),
                        (Fraction(r["m"][0]), Fraction(r["m"][1])))
            for r in data.get("intervals", [])
        ]
        return SeriesDescriptor(data["name"], tuple(data["symbols"]), rows,
                                intervals, data.get("param", "a"))


@dataclass
class SeriesResult:
    value: Optional[Fraction]
    factored: LinearFactorProduct
    pole: bool = False

    @property
    def integrality(self) -> bool:
        return (not self.pole and self.value is not None
                and self.value.denominator == 1 and self.value > 0)


# -- descriptor data ------------------------------------------------------------
# Marker order: exceptional (g, X2, X3, Y2star), subexceptional (g, V, V2),
# Severi (W, Wstar).  u is the fixed-side half-sum pairing, v the gamma pairing.

_EXC_UNIT = [
    ("0122", 1, "2"), ("1000", 1, "0"), ("0100", 1, "0"), ("0120", 1, "1"),
    ("1122", 2, "2"), ("1100", 2, "0"), ("1120", 2, "1"), ("1220", 3, "1"),
    ("1242", 3, "3"), ("1222", 3, "2"), ("1342", 4, "3"), ("2342", 5, "3"),
]
_EXC_AFOLD = [
    ("1232", 3, "5/2"), ("1110", 2, "1/2"), ("0110", 1, "1/2"), ("0010", 0, "1/2"),
    ("1221", 3, "3/2"), ("1121", 2, "3/2"), ("0121", 1, "3/2"), ("0001", 0, "1/2"),
    ("1231", 3, "2"), ("1111", 2, "1"), ("0111", 1, "1"), ("0011", 0, "1"),
]
_SUB_UNIT = [("212", 1, "2"), ("012", 1, "1"), ("010", 1, "0")]
_SUB_AFOLD = [
    ("112", 1, "3/2"), ("100", 0, "1/2"), ("111", 1, "1"),
    ("101", 0, "1"), ("011", 1, "1/2"), ("001", 0, "1/2"),
]
_SEV_AFOLD = [((1, 0), 0, "1/2"), ((1, 1), 0, "1"), ((0, 1), 0, "1/2")]


def _mkrows(unit, afold) -> List[DescriptorRow]:
    rows = []
    for digits, u, v in unit:
        pair = tuple(int(c) for c in digits) if isinstance(digits, str) else tuple(digits)
        rows.append(DescriptorRow(pair, Fraction(u), Fraction(v), "unit"))
    for digits, u, v in afold:
        pair = tuple(int(c) for c in digits) if isinstance(digits, str) else tuple(digits)
        rows.append(DescriptorRow(pair, Fraction(u), Fraction(v), "afold"))
    return rows


EXCEPTIONAL = SeriesDescriptor("exceptional", ("p", "q", "r", "s"),
                               _mkrows(_EXC_UNIT, _EXC_AFOLD))
SUBEXCEPTIONAL = SeriesDescriptor("subexceptional", ("p", "q", "r"),
                                  _mkrows(_SUB_UNIT, _SUB_AFOLD))
SEVERI = SeriesDescriptor("severi", ("p", "pstar"), _mkrows([], _SEV_AFOLD))

# Orthogonal family so(2t+4): one sl2 root plus two intervals and two isolated
# values [1, 2t-1], [2, 2t], {t}, {t+1}.
SO_FAMILY = SeriesDescriptor(
    "so-family", ("k",),
    rows=[DescriptorRow((2,), F1, Fraction(2), "unit")],
    intervals=[
        IntervalRow(1, (F0, F0), (Fraction(-1), Fraction(2))),
        IntervalRow(1, (F1, F0), (F0, Fraction(2))),
        IntervalRow(1, (Fraction(-1), F1), (F0, F1)),
        IntervalRow(1, (F0, F1), (F1, F1)),
    ],
    param="t",
)

DESCRIPTORS = {d.name: d for d in (EXCEPTIONAL, SUBEXCEPTIONAL, SEVERI, SO_FAMILY)}


def load_descriptor(name: str) -> SeriesDescriptor:
    """Load a descriptor from the packaged JSON data (cross-checked in tests)."""
    path = resources.files("magicsquare.data").joinpath(f"{name}.json")
    return SeriesDescriptor.from_json(json.loads(path.read_text()))


# -- the generic evaluator ---------------------------------------------------------


def evaluate_series(d: SeriesDescriptor, exponents: Mapping[str, int],
                    a: RatLike) -> SeriesResult:
    """Weyl-product evaluation of the series at given exponents and parameter."""
    a = rat(a)
    exps = [int(exponents.get(s, 0)) for s in d.symbols]
    if any(e < 0 for e in exps):
        raise ValueError("exponents must be nonnegative integers")
    p = d.param
    lfp = LinearFactorProduct()
    num_terms: List[Fraction] = []
    den_terms: List[Fraction] = []
    for row in d.rows:
        x = sum(t * e for t, e in zip(row.pairings, exps))
        c = row.u + a * row.v
        lfp.mul_factor(LinearForm.make(row.u + x, **{p: row.v}), 1)
        lfp.mul_factor(LinearForm.make(row.u, **{p: row.v}), -1)
        num_terms.append(x + c)
        den_terms.append(c)
        if row.cls == "afold":
            # interval ratio C(c+x+a/2-1, x) / C(c+x-a/2, x), written out as the
            # term lists {c+a/2, ..., c+a/2+x-1} / {c+1-a/2, ..., c+x-a/2} so
            # that degenerate parameters (a = 0 collapses every row to 1)
            # cancel exactly instead of producing spurious 0/0.
            for t in range(x):
                num_terms.append(c + a / 2 + t)
                den_terms.append(c - a / 2 + 1 + t)
                lfp.mul_factor(LinearForm.make(row.u + t, **{p: row.v + HALF}), 1)
                lfp.mul_factor(LinearForm.make(row.u + 1 + t, **{p: row.v - HALF}), -1)
    for row in d.intervals:
        x = row.pairing * (exps[0] if exps else 0)
        for t in range(x):
            num_terms.append(row.m[0] + a * row.m[1] + 1 + t)
            den_terms.append(row.n[0] + a * row.n[1] + 1 + t)
            lfp.mul_factor(LinearForm.make(row.m[0] + 1 + t, **{p: row.m[1]}), 1)
            lfp.mul_factor(LinearForm.make(row.n[0] + 1 + t, **{p: row.n[1]}), -1)
    # Multiset cancellation before dividing.
    counts: Dict[Fraction, int] = {}
    for t in num_terms:
        counts[t] = counts.get(t, 0) + 1
    for t in den_terms:
        counts[t] = counts.get(t, 0) - 1
    num = F1
    den = F1
    for t, e in counts.items():
        if e > 0:
            num *= t ** e
        elif e < 0:
            den *= t ** (-e)
    if den == 0:
        return SeriesResult(None, lfp, pole=True)
    return SeriesResult(num / den, lfp)


# -- closed forms: exceptional series ------------------------------------------------


def lambda_of_a(a: RatLike) -> Fraction:
    a = rat(a)
    if a == -2:
        raise ZeroDivisionError("lambda undefined at a = -2")
    return Fraction(-2) / (a + 2)


def adjoint_cartan_power(k: int, a: RatLike) -> Fraction:
    """dim g^(k) along the exceptional series, exact in the parameter a."""
    a = rat(a)
    if 3 * a + 5 == 0:
        raise ZeroDivisionError("pole at 3a+5 = 0")
    b = gen_binomial
    num = b(k + 2 * a + 3, k) * b(k + Fraction(5, 2) * a + 3, k) * b(k + 3 * a + 4, k)
    den = b(k + a / 2 + 1, k) * b(k + a + 1, k)
    if den == 0:
        raise ZeroDivisionError("pole in the binomial denominator")
    return (3 * a + 2 * k + 5) / (3 * a + 5) * num / den


def deligne_Yk_printed(k: int, lam: RatLike) -> Fraction:
    """The lambda-parametrized product exactly as printed (overall sign slip)."""
    lam = rat(lam)
    if lam == 0 or lam == -6:
        raise ZeroDivisionError("pole at lambda in {0, -6}")
    pref = ((2 * k - 1) * lam - 6)
    denom = lam ** k * (lam + 6)
    for j in range(1, k + 1):
        denom *= j
    out = pref / denom
    for j in range(1, k + 1):
        out *= ((j - 1) * lam - 4) * ((j - 2) * lam - 5) * ((j - 2) * lam - 6)
        out /= (j * lam - 1) * ((j - 1) * lam - 2)
    return out


def deligne_Yk(k: int, lam: RatLike) -> Fraction:
    """dim Y_k as a function of the inverse Coxeter parameter.

    The substitution 3a+5 = -(lambda+6)/lambda into the a-form shows the
    printed lambda-product carries a global factor -1; this returns the
    sign-corrected value, which matches adjoint_cartan_power(k, a) under
    lambda = -2/(a+2).
    """
    return -deligne_Yk_printed(k, lam)


def qdim_adjoint_cartan_power(k: int, a: int) -> QPoly:
    """q-analog of dim g^(k); requires integral exponents (a even, >= 0)."""
    if not isinstance(a, int) or a < 0 or a % 2 != 0:
        raise ValueError("q-analog needs a an even nonnegative integer")
    num_exps = [3 * a + 2 * k + 5]
    den_exps = [3 * a + 5]
    num = QPoly.one()
    den = QPoly.one()
    for e in num_exps:
        num = num * QPoly.one_minus_q_pow(e)
    for e in den_exps:
        den = den * QPoly.one_minus_q_pow(e)
    for l in (2 * a + 3, 5 * a // 2 + 3, 3 * a + 4):
        num = num * gauss_binomial(l, k)
    for l in (a // 2 + 1, a + 1):
        den = den * gauss_binomial(l, k)
    return num.divexact(den)


# -- printed Hilbert functions of the exceptional orbit varieties ---------------------


def _bprod(k: int, a: Fraction, tops: Sequence[Fraction], bots: Sequence[Fraction],
           tops2k: Sequence[Fraction] = (), bots2k: Sequence[Fraction] = (),
           tops3k: Sequence[Fraction] = (), bots3k: Sequence[Fraction] = ()) -> Fraction:
    """Product of C(mk+c, mk) ratios, evaluated with multiset cancellation.

    Expanding every binomial into its factor list and cancelling equal terms
    first gives the standard limit reading at degenerate parameters, where
    verbatim evaluation would hit removable 0/0 pairs.
    """
    counts: Dict[Fraction, int] = {}

    def add(c: Fraction, mult: int, sign: int) -> None:
        # C(mk + c, mk) = prod_{i=1..mk} (c + i) / i
        for i in range(1, mult * k + 1):
            t = c + i
            counts[t] = counts.get(t, 0) + sign
            ti = Fraction(i)
            counts[ti] = counts.get(ti, 0) - sign

    for c in tops:
        add(c, 1, +1)
    for c in tops2k:
        add(c, 2, +1)
    for c in tops3k:
        add(c, 3, +1)
    for c in bots:
        add(c, 1, -1)
    for c in bots2k:
        add(c, 2, -1)
    for c in bots3k:
        add(c, 3, -1)
    num = F1
    den = F1
    for t, e in counts.items():
        if e > 0:
            num *= t ** e
        elif e < 0:
            den *= t ** (-e)
    if den == 0:
        raise ZeroDivisionError("pole in binomial denominator")
    return num / den


def hilbert_X2_printed(k: int, a: RatLike) -> Fraction:
    a = rat(a)
    pref = ((k + a + 1) / (a + 1) * (k + a + 2) / (a + 2)
            * (2 * k + 2 * a + 3) / (2 * a + 3) * (3 * k + 3 * a + 4) / (3 * a + 4)
            * (3 * k + 3 * a + 5) / (3 * a + 5))
    h = a / 2
    return pref * _bprod(
        k, a,
        tops=[3 * h + 1, 3 * h + 2, 2 * a + 1, 2 * a + 2],
        bots=[F1, h, h + 1],
        tops2k=[5 * h + 3, 3 * a + 3],
        bots2k=[a + 2, 3 * h + 2],
    )


def hilbert_X3_printed(k: int, a: RatLike) -> Fraction:
    a = rat(a)
    h = a / 2
    pref = ((2 * k + 3 * h + 1) / (3 * h + 1) * (2 * k + 3 * h + 2) / (3 * h + 2)
            * (2 * k + 3 * h + 3) / (3 * h + 3)
            * (4 * k + 3 * a + 3) / (3 * a + 3) * (4 * k + 3 * a + 4) / (3 * a + 4)
            * (4 * k + 3 * a + 5) / (3 * a + 5))
    return pref * _bprod(
        k, a,
        tops=[a, a + 1, a + 2, 3 * h - 1, 3 * h, 3 * h + 1],
        bots=[F1, Fraction(2), h - 1, h, h + 1],
        tops2k=[2 * a + 1, 2 * a + 2, 2 * a + 3],
        bots2k=[a, a + 1, a + 2],
        tops3k=[5 * h + 3, 3 * a + 2],
        bots3k=[3 * h + 3, 2 * a + 2],
    )


def hilbert_Y2star_printed(k: int, a: RatLike) -> Fraction:
    a = rat(a)
    h = a / 2
    pref = (2 * k + 5 * h + 3) / (5 * h + 3)
    return pref * _bprod(
        k, a,
        tops=[2 * a, 2 * a + 1, 2 * a + 3, 5 * h + 2],
        bots=[h - 1, h + 1, h + 2, a + 1, a + 3],
        tops2k=[3 * a + 5],
        bots2k=[2 * a],
    )


def hilbert_functions(which: str, k: int, a: RatLike) -> SeriesResult:
    """Printed Hilbert function of X2 / X3 / Y2star as a SeriesResult."""
    fn = {"X2": hilbert_X2_printed, "X3": hilbert_X3_printed,
          "Y2star": hilbert_Y2star_printed}[which]
    try:
        val = fn(k, a)
    except ZeroDivisionError:
        return SeriesResult(None, LinearFactorProduct(), pole=True)
    return SeriesResult(val, LinearFactorProduct())


def hilbert_series(which: str, k: int, a: RatLike) -> SeriesResult:
    """Descriptor-derived (validated) Hilbert function of the same varieties."""
    sym = {"g": "p", "X2": "q", "X3": "r", "Y2star": "s"}[which]
    return evaluate_series(EXCEPTIONAL, {sym: k}, a)


# -- subexceptional series --------------------------------------------------------


def subexc_g_printed(k: int, a: RatLike) -> Fraction:
    a = rat(a)
    h = a / 2
    pref = (2 * k + 2 * a + 1) / (2 * a + 1)
    return pref * _bprod(k, a, tops=[3 * h - 1, 3 * h + 1, 2 * a],
                         bots=[h - 1, h + 1])


def subexc_V_printed(k: int, a: RatLike) -> Fraction:
    a = rat(a)
    h = a / 2
    pref = (2 * a + 2 * k + 2) / (a + 1)
    return pref * _bprod(k, a, tops=[2 * a + 1, 3 * h + 1], bots=[h + 1])


def subexc_V_corrected(k: int, a: RatLike) -> Fraction:
    """dim V^(k) with the prefactor fixed against the Weyl oracle.

    The shipped tables's (2a+2k+2)/(a+1) prefactor contradicts dim V = 6a+8
    already at k=1; (k+a+1)(a+2k+2)/((a+1)(a+2)) restores the series.
    """
    a = rat(a)
    h = a / 2
    pref = (k + a + 1) * (a + 2 * k + 2) / ((a + 1) * (a + 2))
    return pref * _bprod(k, a, tops=[2 * a + 1, 3 * h + 1], bots=[h + 1])


def subexc_V2_printed(k: int, a: RatLike) -> Fraction:
    a = rat(a)
    h = a / 2
    pref = (4 * k + 3 * a + 2) / ((k + 1) * (3 * a + 2))
    return pref * _bprod(k, a,
                         tops=[a + 1, 3 * h, 3 * h - 1, a],
                         bots=[h, h - 1],
                         tops2k=[2 * a + 1],
                         bots2k=[a])


def subexceptional_cartan_powers(which: str, k: int, a: RatLike) -> SeriesResult:
    fn = {"g": subexc_g_printed, "V": subexc_V_printed, "V2": subexc_V2_printed}[which]
    try:
        val = fn(k, a)
    except ZeroDivisionError:
        return SeriesResult(None, LinearFactorProduct(), pole=True)
    return SeriesResult(val, LinearFactorProduct())


def subexc_series(which: str, k: int, a: RatLike) -> SeriesResult:
    sym = {"g": "p", "V": "q", "V2": "r"}[which]
    return evaluate_series(SUBEXCEPTIONAL, {sym: k}, a)


# -- Severi series ------------------------------------------------------------------


def severi_dim(p: int, pstar: int, a: RatLike) -> SeriesResult:
    a = rat(a)
    if a == 0:
        return SeriesResult(None, LinearFactorProduct(), pole=True)
    h = a / 2
    b = gen_binomial
    pref = (2 * p + a) * (p + pstar + a) * (2 * pstar + a) / a ** 3
    num = b(p + a - 1, p) * b(p + pstar + 3 * h - 1, p + pstar) * b(pstar + a - 1, pstar)
    den = b(p + pstar + h, p + pstar)
    res = evaluate_series(SEVERI, {"p": p, "pstar": pstar}, a)
    if den == 0:
        return SeriesResult(None, res.factored, pole=True)
    value = pref * num / den
    # The printed product and the descriptor product are the same formula;
    # assert they agree whenever both are finite.
    if res.value is not None and res.value != value:
        raise AssertionError("severi closed form disagrees with its descriptor")
    return SeriesResult(value, res.factored)


# -- orthogonal family and the generalized third row ----------------------------------


def so_family_dim(k: int, t: int) -> SeriesResult:
    """dim so(2t+4)^(k), closed form as printed."""
    if t < 1:
        raise ValueError("t must be >= 1")
    den = (2 * t + 1) * t * (t + 1) * (k + 1)
    value = (Fraction((2 * k + 2 * t + 1) * (k + t) * (k + t + 1), den)
             * gen_binomial(k + 2 * t - 1, k) * gen_binomial(k + 2 * t, k))
    return SeriesResult(value, LinearFactorProduct())


def so_family_interval(k: int, t: int) -> SeriesResult:
    """The same dimension from the interval descriptor (independent route)."""
    return evaluate_series(SO_FAMILY, {"k": k}, t)


def thirdrow_dim(k: int, r: int, a: RatLike) -> SeriesResult:
    """dim of the k-th adjoint Cartan power in the generalized third row."""
    if r < 2:
        raise ValueError("r must be >= 2")
    a = rat(a)
    b = gen_binomial
    pref_den = a * (r - 1) + 1
    if pref_den == 0:
        return SeriesResult(None, LinearFactorProduct(), pole=True)
    num = (b(k + a * r / 2 - 1, k) * b(k + a * r - a, k)
           * b(k + (a * r - a) / 2, k) * b(k + a * r + 1 - 3 * a / 2, k))
    den = (b(k + a / 2 - 1, k) * b(k + a * r / 2 + 1 - a, k)
           * b(k + (a * r - a) / 2, k))
    if den == 0:
        return SeriesResult(None, LinearFactorProduct(), pole=True)
    return SeriesResult((2 * k + a * (r - 1) + 1) / pref_den * num / den,
                        LinearFactorProduct())


# -- degrees of the closed orbits ------------------------------------------------------


def _fr(x: RatLike, y: RatLike) -> Fraction:
    return factorial_ratio(x, y)


def degree_formulas(variety: str, a: RatLike) -> Fraction:
    """Exact degree of the named closed orbit, via paired factorial ratios."""
    a = rat(a)
    h = a / 2
    if variety == "ad":
        return (Fraction(2) * _fr(6 * a + 9, 3 * a + 5)
                / _fr(Fraction(5, 2) * a + 3, h + 1) / _fr(2 * a + 3, a + 1))
    if variety == "fplanes":
        return (Fraction(2) ** (3 * a + 3) * 9 * _fr(9 * a + 11, 3 * a + 5)
                / _fr(2 * a + 1, a) / _fr(3 * h + 1, h)
                / _fr(Fraction(5, 2) * a + 3, h + 1) / _fr(2 * a + 3, 0))
    if variety == "flines":
        return (Fraction(2) ** (3 * a + 6) * Fraction(3) ** (2 * a)
                * _fr(11 * a + 9, 2 * a + 3)
                / _fr(3 * h - 1, h - 1) / _fr(3 * h + 1, h)
                / _fr(Fraction(5, 2) * a + 3, h + 1))
    if variety == "fpoints":
        return (Fraction(2) ** (a + 6) * _fr(6 * a + 9, 3 * a + 5)
                * _fr(h + 1, 0)
                / _fr(2 * a + 3, a + 1) / _fr(2 * a + 1, a + 3)
                / _fr(Fraction(5, 2) * a + 2, h + 2))
    if variety == "subexc_ad":
        return (Fraction(2) / (2 * a + 1) * _fr(4 * a + 1, 2 * a)
                / _fr(3 * h - 1, h - 1) / _fr(3 * h + 1, h + 1))
    if variety == "subexc_X_printed":
        return Fraction(2) * _fr(3 * a + 3, 2 * a + 1) / _fr(3 * h + 1, h + 1)
    if variety == "subexc_X":
        # Printed form inherits the V^(k) prefactor slip; /(a+1)(a+2) fixes it.
        return degree_formulas("subexc_X_printed", a) / ((a + 1) * (a + 2))
    if variety == "subexc_flines_printed":
        return (Fraction(2) ** (a + 3) * _fr(5 * a + 2, 3 * a + 2)
                / _fr(3 * h, h) / _fr(3 * h - 1, h - 1)
                / _fr(a + 1, 0) / _fr(2 * a + 1, 0))
    if variety == "subexc_flines":
        # As printed the denominator carries (3a+2)!; the leading-coefficient
        # oracle shows it must be the bare linear factor (3a+2), matching the
        # style of the neighbouring adjoint-degree formula.
        return (Fraction(2) ** (a + 3) * _fr(5 * a + 2, 0) / (3 * a + 2)
                / _fr(3 * h, h) / _fr(3 * h - 1, h - 1)
                / _fr(a + 1, 0) / _fr(2 * a + 1, 0))
    raise ValueError(f"unknown variety {variety!r}")


VARIETY_DIMENSIONS = {
    "ad": lambda a: 6 * a + 9,
    "fplanes": lambda a: 9 * a + 11,
    "flines": lambda a: 11 * a + 9,
    "fpoints": lambda a: 9 * a + 6,
    "subexc_ad": lambda a: 4 * a + 1,
    "subexc_X": lambda a: 3 * a + 3,
    "subexc_X_printed": lambda a: 3 * a + 3,
    "subexc_flines": lambda a: 5 * a + 2,
    "subexc_flines_printed": lambda a: 5 * a + 2,
}

# Hilbert function of each orbit variety, as a function of k, via the validated
# descriptor route (marker exponent noted per variety).
VARIETY_HILBERT = {
    "ad": lambda k, a: adjoint_cartan_power(k, a),
    "fplanes": lambda k, a: evaluate_series(EXCEPTIONAL, {"q": k}, a).value,
    "flines": lambda k, a: evaluate_series(EXCEPTIONAL, {"r": k}, a).value,
    "fpoints": lambda k, a: evaluate_series(EXCEPTIONAL, {"s": k}, a).value,
    "subexc_ad": lambda k, a: evaluate_series(SUBEXCEPTIONAL, {"p": k}, a).value,
    "subexc_X": lambda k, a: evaluate_series(SUBEXCEPTIONAL, {"q": k}, a).value,
    "subexc_X_printed": lambda k, a: evaluate_series(SUBEXCEPTIONAL, {"q": k}, a).value,
    "subexc_flines": lambda k, a: evaluate_series(SUBEXCEPTIONAL, {"r": k}, a).value,
    "subexc_flines_printed": lambda k, a: evaluate_series(SUBEXCEPTIONAL, {"r": k}, a).value,
}


def degree_from_hilbert(variety: str, a: RatLike) -> Fraction:
    """(dim X)! times the leading k-coefficient of the Hilbert function.

    The leading coefficient is extracted by exact finite differences, an
    independent route from the factorial-ratio degree formulas.
    """
    a = rat(a)
    d = VARIETY_DIMENSIONS[variety](a)
    if d.denominator != 1 if isinstance(d, Fraction) else False:
        raise ValueError("variety dimension not integral here")
    d = int(d)
    fn = VARIETY_HILBERT[variety]
    values = [fn(k, a) for k in range(d + 1)]
    acc = F0
    sign = 1 if d % 2 == 0 else -1
    binom = F1
    for i in range(d + 1):
        # (-1)^(d-i) C(d,i) f(i)
        acc += sign * binom * values[i]
        sign = -sign
        binom = binom * (d - i) / (i + 1)
    return acc


# -- lattice predicate ------------------------------------------------------------------


def admissible_weight(o: Sequence[int]) -> bool:
    """True iff o1 w1 + o2 w2 + o3 w3 + o4 w4 lies in the index-four sublattice."""
    o1, _, o3, o4 = (int(c) for c in o)
    return (o1 + o3) % 2 == 0 and (o1 + o4) % 2 == 0 and (o3 + o4) % 2 == 0


# -- descriptor recomputation (the independent second source) -----------------------------


def recompute_exceptional_rows() -> List[DescriptorRow]:
    """Regenerate the 24 exceptional rows from hand-rolled so8 data."""
    eps = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]

    def dot(x, y):
        return sum(Fraction(a) * Fraction(b) for a, b in zip(x, y))

    pos_roots = []
    for i in range(4):
        for j in range(i + 1, 4):
            for s in (1, -1):
                pos_roots.append(tuple(Fraction(eps[i][t] + s * eps[j][t])
                                       for t in range(4)))
    spinor = []
    for s2 in (1, -1):
        for s3 in (1, -1):
            for s4 in (1, -1):
                spinor.append((HALF, s2 * HALF, s3 * HALF, s4 * HALF))
    sigma = [tuple(map(Fraction, e)) for e in eps] + spinor
    rho = (Fraction(3), Fraction(2), Fraction(1), Fraction(0))
    gamma = (Fraction(5, 2), HALF, HALF, HALF)
    markers = [(1, 1, 0, 0), (2, 1, 1, 0), (3, 1, 1, 1), (2, 0, 0, 0)]
    rows = []
    for alpha in pos_roots:
        pair = tuple(int(dot(m, alpha)) for m in markers)
        rows.append(DescriptorRow(pair, dot(rho, alpha), dot(gamma, alpha), "unit"))
    for beta in sigma:
        pair = tuple(int(dot(m, beta)) for m in markers)
        rows.append(DescriptorRow(pair, dot(rho, beta), dot(gamma, beta), "afold"))
    return rows


def recompute_subexceptional_rows() -> List[DescriptorRow]:
    """Regenerate the 9 subexceptional rows from sl2 x sl2 x sl2 data."""
    def dot(x, y):
        return sum(Fraction(a) * Fraction(b) for a, b in zip(x, y)) * HALF

    alphas = [(2, 0, 0), (0, 2, 0), (0, 0, 2)]
    gammas = []
    for i in range(3):
        for j in range(i + 1, 3):
            for s in (1, -1):
                w = [0, 0, 0]
                w[i] = 1
                w[j] = s
                gammas.append(tuple(w))
    rho = (1, 1, 1)
    gamma = (2, 1, 0)
    markers = [(2, 0, 0), (1, 1, 1), (2, 2, 0)]
    rows = []
    for alpha in alphas:
        pair = tuple(int(dot(m, alpha)) for m in markers)
        rows.append(DescriptorRow(pair, dot(rho, alpha), dot(gamma, alpha), "unit"))
    for beta in gammas:
        pair = tuple(int(dot(m, beta)) for m in markers)
        rows.append(DescriptorRow(pair, dot(rho, beta), dot(gamma, beta), "afold"))
    return rows


def recompute_severi_rows() -> List[DescriptorRow]:
    """Regenerate the 3 Severi rows from the plane z1+z2+z3 = 0 metric."""
    third = Fraction(1, 3)
    sixth = Fraction(1, 6)
    gram = [[third if i == j else -sixth for j in range(3)] for i in range(3)]

    def dot(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(3) for j in range(3))

    omegas = [(F1, F0, F0), (F0, F1, F0), (F0, F0, F1)]

    def diff(i, j):
        return tuple(omegas[i][t] - omegas[j][t] for t in range(3))

    w = tuple(2 * c for c in omegas[0])
    wstar = tuple(-2 * c for c in omegas[2])
    gamma = diff(0, 2)
    rows = []
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        beta = diff(i, j)
        pair = (int(dot(w, beta)), int(dot(wstar, beta)))
        rows.append(DescriptorRow(pair, F0, dot(gamma, beta), "afold"))
    return rows


def rows_match(a: Sequence[DescriptorRow], b: Sequence[DescriptorRow]) -> bool:
    """Multiset equality of descriptor rows."""
    key = lambda r: (r.cls, r.pairings, r.u, r.v)
    return sorted(map(key, a)) == sorted(map(key, b))
