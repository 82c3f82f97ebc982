"""Standard-form curves, monomial orders, normal forms, and semigroup data.

A curve is presented as a residue class ring F_q[X_1..X_t]/I where the
generator x_i has pole order ``weights[i]`` at the distinguished place and
``gb`` is the reduced Groebner basis of I under the weighted
reverse-lexicographic order.  Everything downstream (the monomial basis of
the coordinate ring, the Weierstrass semigroup, the Apery set, normal-form
reduction) is derived from that presentation.

Ring elements in normal form are supported on the footprint monomials
``x_1^m y_j``; since distinct footprint monomials have distinct pole
orders, an element is stored as a map from pole order to nonzero
coefficient (:class:`RingElem`).  The class index of a pole order s is
simply ``s mod a_1``.
"""

from __future__ import annotations

import math
import os

from .errors import (
    CurveFormatError,
    GenusMismatch,
    NotANongap,
)
from .gf import Field

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# monomial order on exponent tuples
# ---------------------------------------------------------------------------

def wdeg(weights: tuple[int, ...], exps: tuple[int, ...]) -> int:
    return sum(w * e for w, e in zip(weights, exps))


def order_key(weights: tuple[int, ...], exps: tuple[int, ...]):
    """Sort key realizing the weighted reverse-lex order.

    At equal weight the monomial whose first differing exponent is
    *smaller* is the larger one, so negating the exponent tuple turns the
    comparison into an ordinary lexicographic one.
    """
    return (wdeg(weights, exps), tuple(-e for e in exps))


def cmp_weighted_revlex(weights, u, v) -> int:
    """-1, 0 or 1 as u is below, equal to, or above v."""
    ku, kv = order_key(weights, u), order_key(weights, v)
    if ku < kv:
        return -1
    if ku > kv:
        return 1
    return 0


# ---------------------------------------------------------------------------
# polynomials in X_1..X_t as {exponent tuple: nonzero coeff}
# ---------------------------------------------------------------------------

def poly_leading_monomial(weights, poly: dict) -> tuple[int, ...]:
    return max(poly, key=lambda e: order_key(weights, e))


def poly_mul(field: Field, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = field.add(out.get(e, 0), field.mul(ca, cb))
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def _divides(d: tuple[int, ...], e: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(d, e))


def poly_eval(field: Field, poly: dict, point: tuple[int, ...]) -> int:
    acc = 0
    for exps, c in poly.items():
        v = c
        for x, e in zip(point, exps):
            if e:
                v = field.mul(v, field.pow(x, e))
        acc = field.add(acc, v)
    return acc


# ---------------------------------------------------------------------------
# ring elements in normal form
# ---------------------------------------------------------------------------

class RingElem:
    """Coordinate-ring element in normal form: {pole order: nonzero coeff}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}

    def pole_order(self):
        """Largest pole order in the support, or -inf for the zero element."""
        return max(self.terms) if self.terms else NEG_INF

    def is_zero(self) -> bool:
        return not self.terms

    def leading_coeff(self) -> int:
        return self.terms[max(self.terms)]

    def copy(self) -> "RingElem":
        return RingElem(dict(self.terms))

    def gamma(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "RingElem(0)"
        parts = [f"{c}*phi_{s}" for s, c in sorted(self.terms.items(), reverse=True)]
        return "RingElem(" + " + ".join(parts) + ")"


def elem_add(field: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for s, c in b.items():
        v = field.add(out.get(s, 0), c)
        if v:
            out[s] = v
        else:
            out.pop(s, None)
    return out


def elem_sub(field: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for s, c in b.items():
        v = field.sub(out.get(s, 0), c)
        if v:
            out[s] = v
        else:
            out.pop(s, None)
    return out


def elem_scale(field: Field, c: int, a: dict) -> dict:
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    return {s: field.mul(c, v) for s, v in a.items()}


def elem_shift(a: dict, steps: int, a1: int) -> dict:
    """Multiply by x_1^steps: pole orders shift by steps*a1."""
    if steps == 0:
        return dict(a)
    d = steps * a1
    return {s + d: v for s, v in a.items()}


# ---------------------------------------------------------------------------
# Weierstrass semigroup and Apery data
# ---------------------------------------------------------------------------

class Semigroup:
    """Apery set, gaps, and pole-order bookkeeping for a loaded curve.

    ``hhat`` (the pole orders that enlarge the evaluation code) and
    ``eta_degs`` (pole orders of the point-annihilating basis) start empty
    and are filled once the evaluation system has been built.
    """

    def __init__(self, weights, apery, apery_monomials, genus):
        self.weights = weights
        self.a1 = weights[0]
        self.apery = list(apery)  # b_i, indexed by residue class
        self.apery_monomials = [tuple(L) for L in apery_monomials]  # full t-tuples
        self.genus = genus
        gaps = []
        for i, b in enumerate(self.apery):
            x = i
            while x < b:
                gaps.append(x)
                x += self.a1
        self.gaps = sorted(gaps)
        self.hhat: list[int] = []
        self.eta_degs: list[int] = []
        self._hhat_set: set[int] = set()

    def set_hhat(self, hhat: list[int]) -> None:
        self.hhat = list(hhat)
        self._hhat_set = set(hhat)

    # -- membership and navigation ------------------------------------

    def is_nongap(self, s: int) -> bool:
        return s >= 0 and s >= self.apery[s % self.a1]

    def prec(self, s: int) -> int:
        """Next smaller nongap; prec(0) = -1."""
        if s <= 0:
            return -1
        t = s - 1
        while t > 0 and not self.is_nongap(t):
            t -= 1
        return t

    def nongaps_below(self, bound: int):
        """All nongaps s with 0 <= s < bound, ascending."""
        return [s for s in range(max(bound, 0)) if self.is_nongap(s)]

    def phi_index(self, s: int) -> tuple[int, int]:
        """Decompose a nongap as x_1^m y_j; returns (m, j)."""
        j = s % self.a1
        m, r = divmod(s - self.apery[j], self.a1)
        if s < 0 or r or m < 0:
            raise NotANongap(f"{s} is not in the semigroup")
        return m, j

    def phi(self, s: int) -> RingElem:
        """The unique normal-form monomial of pole order s."""
        self.phi_index(s)
        return RingElem({s: 1})

    def monomial_exponents(self, s: int) -> tuple[int, ...]:
        """Full exponent tuple of the normal-form monomial of pole order s."""
        m, j = self.phi_index(s)
        tail = self.apery_monomials[j]
        return (m + tail[0],) + tail[1:]

    def generators(self) -> list[int]:
        """Minimal generating set of the semigroup."""
        limit = max(self.apery) + self.a1
        nongaps = [s for s in range(1, limit + 1) if self.is_nongap(s)]
        sums = set()
        for i, a in enumerate(nongaps):
            for b in nongaps[i:]:
                if a + b <= limit:
                    sums.add(a + b)
        return [s for s in nongaps if s not in sums]

    # -- vote-capacity combinatorics -----------------------------------

    def nu(self, s: int) -> int:
        """Vote capacity at pole order s, from the eta degrees."""
        if not self.eta_degs:
            raise ValueError("eta degrees not computed yet")
        a1 = self.a1
        total = 0
        for i in range(a1):
            term = self.eta_degs[(i + s) % a1] - self.apery[i] - s
            if term > 0:
                total += term
        assert total % a1 == 0
        return total // a1

    def lam(self, s: int) -> int:
        """Counting form of the vote capacity: nongaps j with j+s kept."""
        if not self.hhat:
            raise ValueError("hhat not computed yet")
        top = max(self.hhat)
        return sum(
            1 for j in range(0, top - s + 1) if self.is_nongap(j) and (j + s) in self._hhat_set
        )


def _footprint_tails(weights, lead_monomials, bound: int) -> list[tuple[int, ...]]:
    """Exponent tuples (0, l2..lt) of weight <= bound outside the leading ideal."""
    t = len(weights)
    tails = []

    def rec(idx, exps, weight):
        if idx == t:
            e = tuple(exps)
            if not any(_divides(lm, e) for lm in lead_monomials):
                tails.append(e)
            return
        cap = (bound - weight) // weights[idx]
        for v in range(cap + 1):
            exps.append(v)
            rec(idx + 1, exps, weight + v * weights[idx])
            exps.pop()

    rec(1, [0], 0)
    return tails


def compute_semigroup(weights, gb_leads, genus) -> Semigroup:
    """Derive the Apery set from the footprint of the leading ideal."""
    a1 = weights[0]
    bound = 2 * genus + 2 * a1
    tails = _footprint_tails(weights, gb_leads, bound)
    by_class: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    for e in tails:
        w = wdeg(weights, e)
        by_class.setdefault(w % a1, []).append((w, e))
    if sorted(by_class) != list(range(a1)):
        raise CurveFormatError("footprint does not cover every residue class")
    apery, monomials = [], []
    for i in range(a1):
        entries = by_class[i]
        if len(entries) != 1:
            raise CurveFormatError(
                "footprint is not free over x_1: multiple x_1-independent "
                f"monomials in residue class {i}"
            )
        w, e = entries[0]
        apery.append(w)
        monomials.append(e)
    sg = Semigroup(weights, apery, monomials, genus)
    if len(sg.gaps) != genus:
        raise GenusMismatch(
            f"declared genus {genus} but footprint yields {len(sg.gaps)} gaps"
        )
    return sg


# ---------------------------------------------------------------------------
# the curve itself
# ---------------------------------------------------------------------------

class CurveData:
    def __init__(self, name, field, weights, gb, points, genus):
        self.name = name
        self.field = field
        self.weights = tuple(weights)
        self.t = len(self.weights)
        self.gb = gb
        self.points = points
        self.n = len(points)
        self.genus = genus
        self._verify_structure()
        leads = [poly_leading_monomial(self.weights, p) for p in self.gb]
        self.gb_leads = leads
        self.sg = compute_semigroup(self.weights, leads, genus)
        self._verify_points()
        # class index of each footprint tail, for normal-form bucketing
        self._class_by_tail = {
            tuple(L[1:]): j for j, L in enumerate(self.sg.apery_monomials)
        }

    # -- checks --------------------------------------------------------

    def _verify_structure(self) -> None:
        if self.t < 1 or any(w <= 0 for w in self.weights):
            raise CurveFormatError("weights must be positive")
        if math.gcd(*self.weights) != 1:
            raise CurveFormatError("weights must be coprime")
        if self.genus < 0:
            raise CurveFormatError("genus must be nonnegative")
        leads = []
        for poly in self.gb:
            if not poly:
                raise CurveFormatError("zero polynomial in basis")
            lm = poly_leading_monomial(self.weights, poly)
            if poly[lm] != 1:
                raise CurveFormatError("basis polynomials must be monic")
            leads.append(lm)
        for i, lm in enumerate(leads):
            for j, other in enumerate(self.gb):
                if i == j:
                    continue
                if any(_divides(lm, e) for e in other):
                    raise CurveFormatError(
                        "basis is not reduced: a leading monomial divides "
                        "a monomial of another element"
                    )

    def _verify_points(self) -> None:
        if len(set(self.points)) != self.n:
            raise CurveFormatError("points are not pairwise distinct")
        for pt in self.points:
            if len(pt) != self.t:
                raise CurveFormatError("point arity does not match generator count")
            for x in pt:
                self.field.check(x)
            for poly in self.gb:
                if poly_eval(self.field, poly, pt) != 0:
                    raise CurveFormatError(
                        f"point {pt} does not satisfy the curve relations"
                    )

    # -- normal form ----------------------------------------------------

    def normal_form(self, poly: dict) -> RingElem:
        """Reduce a polynomial in X_1..X_t to its footprint support."""
        field, weights = self.field, self.weights
        work = {e: c for e, c in poly.items() if c}
        out: dict = {}
        while work:
            lm = poly_leading_monomial(weights, work)
            c = work.pop(lm)
            for g, glm in zip(self.gb, self.gb_leads):
                if _divides(glm, lm):
                    shift = tuple(a - b for a, b in zip(lm, glm))
                    # work -= c * X^shift * g (g is monic; lm term cancels)
                    for e, gc in g.items():
                        if e == glm:
                            continue
                        te = tuple(a + b for a, b in zip(e, shift))
                        v = field.sub(work.get(te, 0), field.mul(c, gc))
                        if v:
                            work[te] = v
                        else:
                            work.pop(te, None)
                    break
            else:
                out[lm] = c
        terms: dict = {}
        for e, c in out.items():
            j = self._class_by_tail.get(e[1:])
            if j is None:
                raise CurveFormatError("reduction left a monomial outside the footprint")
            terms[wdeg(weights, e)] = c
        return RingElem(terms)

    def elem_to_poly(self, elem: RingElem) -> dict:
        """Inverse of normal_form on supported elements."""
        out = {}
        for s, c in elem.terms.items():
            out[self.sg.monomial_exponents(s)] = c
        return out

    def __repr__(self) -> str:
        return (
            f"CurveData({self.name!r}, q={self.field.q}, weights={self.weights}, "
            f"genus={self.genus}, n={self.n})"
        )


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def _parse_term(tok: str, t: int, field: Field) -> tuple[tuple[int, ...], int]:
    try:
        coeff_s, exps_s = tok.split(":")
        coeff = int(coeff_s)
        exps = tuple(int(x) for x in exps_s.split(","))
    except ValueError as exc:
        raise CurveFormatError(f"bad polynomial term {tok!r}") from exc
    if len(exps) != t or any(e < 0 for e in exps):
        raise CurveFormatError(f"bad exponents in term {tok!r}")
    field.check(coeff)
    return exps, coeff


def load_curve(path: str) -> CurveData:
    """Parse and fully verify a curve file."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln and not ln.startswith("#")]
    field = None
    weights: tuple[int, ...] | None = None
    genus = None
    gb: list[dict] = []
    points: list[tuple[int, ...]] = []
    i = 0
    while i < len(lines):
        parts = lines[i].split()
        key = parts[0]
        if key == "field":
            if len(parts) < 4:
                raise CurveFormatError("field line needs p, m and coefficients")
            p, m = int(parts[1]), int(parts[2])
            coeffs = tuple(int(x) for x in parts[3:])
            field = Field(p, m, coeffs)
            i += 1
        elif key == "weights":
            weights = tuple(int(x) for x in parts[1:])
            i += 1
        elif key == "genus":
            genus = int(parts[1])
            i += 1
        elif key == "gb":
            if field is None or weights is None:
                raise CurveFormatError("gb section must follow field and weights")
            i += 1
            while i < len(lines) and lines[i] != "end":
                poly = {}
                for tok in lines[i].split("+"):
                    exps, coeff = _parse_term(tok.strip(), len(weights), field)
                    if exps in poly:
                        raise CurveFormatError("duplicate monomial in basis polynomial")
                    if coeff:
                        poly[exps] = coeff
                gb.append(poly)
                i += 1
            if i == len(lines):
                raise CurveFormatError("gb section not terminated by 'end'")
            i += 1
        elif key == "points":
            if field is None or weights is None:
                raise CurveFormatError("points section must follow field and weights")
            i += 1
            while i < len(lines) and lines[i] != "end":
                vals = tuple(int(x) for x in lines[i].split())
                points.append(vals)
                i += 1
            if i == len(lines):
                raise CurveFormatError("points section not terminated by 'end'")
            i += 1
        else:
            raise CurveFormatError(f"unknown directive {key!r}")
    if field is None or weights is None or genus is None or not gb or not points:
        raise CurveFormatError("curve file is missing a required section")
    name = os.path.splitext(os.path.basename(path))[0]
    return CurveData(name, field, weights, gb, points, genus)
