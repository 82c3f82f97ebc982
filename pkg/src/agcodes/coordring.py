"""Products and quotients in the coordinate ring, with operation counting.

Multiplication of normal-form elements runs in two phases: a symbolic
product treating x_1 and the module basis y_1..y_{a1-1} as independent
variables, then substitution of the precomputed expansions of y_i*y_j.
The quotient is the straightforward generalization of univariate long
division: peel off one leading term per round, using the precomputed
leading coefficients of y_i*y_j.

Counters record the field multiplications and divisions actually
executed; products where either factor is the constant 1 are skipped and
not counted.  The closed-form bounds (``multi``/``quot``) are exposed so
tests can assert the actual counts never exceed them.
"""

from __future__ import annotations

from .curve import CurveData, RingElem, poly_mul
from .errors import NotDivisible


class CostCounter:
    """Monotone counters of field multiplications and divisions."""

    __slots__ = ("muls", "divs")

    def __init__(self):
        self.muls = 0
        self.divs = 0

    def total(self) -> int:
        return self.muls + self.divs

    def merge(self, other: "CostCounter") -> None:
        self.muls += other.muls
        self.divs += other.divs

    def snapshot(self) -> tuple[int, int]:
        return (self.muls, self.divs)

    def __repr__(self) -> str:
        return f"CostCounter(muls={self.muls}, divs={self.divs})"


def gamma(f: RingElem | dict) -> int:
    """Number of nonzero terms."""
    return len(f.terms if isinstance(f, RingElem) else f)


def gamma_ne1(f: RingElem | dict) -> int:
    """Number of nonzero terms whose coefficient is not 1."""
    terms = f.terms if isinstance(f, RingElem) else f
    return sum(1 for c in terms.values() if c != 1)


class MultTable:
    """Normal forms and leading coefficients of the products y_i*y_j."""

    def __init__(self, curve: CurveData):
        self.curve = curve
        self.field = curve.field
        self.a1 = curve.sg.a1
        apery = curve.sg.apery
        a1 = self.a1
        self.entries: list[list[dict]] = [[{} for _ in range(a1)] for _ in range(a1)]
        self.lc: list[list[int]] = [[0] * a1 for _ in range(a1)]
        self.ne1: list[list[int]] = [[0] * a1 for _ in range(a1)]
        for i in range(a1):
            yi = {curve.sg.monomial_exponents(apery[i]): 1}
            for j in range(i, a1):
                yj = {curve.sg.monomial_exponents(apery[j]): 1}
                prod = curve.normal_form(poly_mul(self.field, yi, yj))
                self.entries[i][j] = self.entries[j][i] = prod.terms
                self.lc[i][j] = self.lc[j][i] = prod.leading_coeff()
                self.ne1[i][j] = self.ne1[j][i] = gamma_ne1(prod)

    def expansion(self, i: int, j: int) -> dict:
        return self.entries[i][j]


def build_mult_table(curve: CurveData) -> MultTable:
    return MultTable(curve)


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------

def _symbolic_product(table: MultTable, g: dict, h: dict, ctr: CostCounter | None):
    """Phase one: multiply treating x_1, y_1.. as free variables.

    Returns {(i, j): {x1-degree: coeff}} with i <= j, classes of the two
    y factors.  Counts one multiplication per term pair unless a factor
    coefficient is 1.
    """
    field = table.field
    a1 = table.a1
    apery = table.curve.sg.apery
    fmul = field.mul
    fadd = field.add
    out: dict[tuple[int, int], dict[int, int]] = {}
    muls = 0
    for sg_, cg in g.items():
        i = sg_ % a1
        dg = (sg_ - apery[i]) // a1
        for sh, ch in h.items():
            j = sh % a1
            d = dg + (sh - apery[j]) // a1
            if cg == 1:
                c = ch
            elif ch == 1:
                c = cg
            else:
                c = fmul(cg, ch)
                muls += 1
            key = (i, j) if i <= j else (j, i)
            bucket = out.setdefault(key, {})
            v = fadd(bucket.get(d, 0), c)
            if v:
                bucket[d] = v
            else:
                bucket.pop(d, None)
    if ctr is not None:
        ctr.muls += muls
    return out


def _mul_terms(table: MultTable, g: dict, h: dict, ctr: CostCounter | None) -> dict:
    """Normal form of g*h as a pole-order dict."""
    if not g or not h:
        return {}
    field = table.field
    a1 = table.a1
    fmul = field.mul
    fadd = field.add
    buckets = _symbolic_product(table, g, h, ctr)
    out: dict[int, int] = {}
    muls = 0
    for (i, j), fij in buckets.items():
        expansion = table.entries[i][j]
        for d, c in fij.items():
            shift = d * a1
            if c == 1:
                for s, e in expansion.items():
                    key = s + shift
                    v = fadd(out.get(key, 0), e)
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
            else:
                for s, e in expansion.items():
                    key = s + shift
                    if e == 1:
                        ce = c
                    else:
                        ce = fmul(c, e)
                        muls += 1
                    v = fadd(out.get(key, 0), ce)
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    if ctr is not None:
        ctr.muls += muls
    return out


def ring_mul(table: MultTable, g: RingElem, h: RingElem, ctr: CostCounter | None = None) -> RingElem:
    """Normal form of the product, counting actual field multiplications."""
    return RingElem(_mul_terms(table, g.terms, h.terms, ctr))


def multi(table: MultTable, g: dict | RingElem, h: dict | RingElem) -> int:
    """Closed-form upper bound on the multiplications in ``ring_mul``."""
    gt = g.terms if isinstance(g, RingElem) else g
    ht = h.terms if isinstance(h, RingElem) else h
    if not gt or not ht:
        return 0
    buckets = _symbolic_product(table, gt, ht, None)
    bound = len(gt) * len(ht)
    for (i, j), fij in buckets.items():
        bound += len(fij) * table.ne1[i][j]
    return bound


# ---------------------------------------------------------------------------
# quotient
# ---------------------------------------------------------------------------

def _quot_terms(table: MultTable, g: dict, h: dict, ctr: CostCounter | None) -> dict:
    field = table.field
    sg = table.curve.sg
    a1 = table.a1
    if not h:
        raise ZeroDivisionError("quotient by the zero ring element")
    g = dict(g)
    vh = max(h)
    lch = h[vh]
    quotient: dict[int, int] = {}
    while g:
        vg = max(g)
        s = vg - vh
        if s < 0 or not sg.is_nongap(s):
            raise NotDivisible(
                f"pole order {vg} not reachable from {vh}: remainder is nonzero"
            )
        # leading coefficient of phi_s * h comes from the precomputed table
        lc_pair = table.lc[s % a1][vh % a1]
        denom = field.mul(lch, lc_pair)
        t = field.div(g[vg], denom)
        if ctr is not None:
            ctr.muls += 1
            ctr.divs += 1
        term = {s: t}
        prod = _mul_terms(table, term, h, ctr)
        quotient[s] = t
        fsub = field.sub
        for k, v in prod.items():
            nv = fsub(g.get(k, 0), v)
            if nv:
                g[k] = nv
            else:
                g.pop(k, None)
    return quotient


def ring_quot(table: MultTable, g: RingElem, h: RingElem, ctr: CostCounter | None = None) -> RingElem:
    """Exact quotient g/h in the coordinate ring.

    Raises :class:`NotDivisible` when g is not a multiple of h.  Each
    round costs one multiplication and one division for the leading term
    plus the cost of one monomial-by-element product.
    """
    return RingElem(_quot_terms(table, g.terms, h.terms, ctr))
