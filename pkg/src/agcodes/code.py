"""Code construction, evaluation system, and interpolation.

``CurveSystem`` bundles everything computed once per curve before any
word is received: the semigroup, the y_i*y_j product table, the kept
pole orders with their evaluation rows, the inverse evaluation matrix
used for interpolation, and the basis of functions vanishing at all
evaluation points.

A single incremental Gaussian elimination over the scan of increasing
pole orders produces both the kept set (rows that enlarge the span) and,
at the first dependent pole order of each residue class, the vanishing
element for that class.
"""

from __future__ import annotations

import os

from .coordring import CostCounter, MultTable, build_mult_table
from .curve import CurveData, RingElem, load_curve
from .errors import (
    EmptyGamma,
    InvalidGamma,
    RankDeficient,
    SearchBoundExceeded,
)

_CURVE_DIR = os.path.join(os.path.dirname(__file__), "curves")
_SYSTEM_CACHE: dict[str, "CurveSystem"] = {}


def bundled_curve_path(name: str) -> str:
    """Path of a curve file shipped with the package."""
    return os.path.join(_CURVE_DIR, name + ".curve")


def resolve_curve_path(spec: str) -> str:
    """Accept either a filesystem path or the name of a bundled curve."""
    if os.path.exists(spec):
        return spec
    candidate = bundled_curve_path(spec)
    if os.path.exists(candidate):
        return candidate
    raise FileNotFoundError(f"no curve file at {spec!r} and no bundled curve of that name")


class CurveSystem:
    """All precomputed data for one curve."""

    def __init__(self, curve: CurveData):
        self.curve = curve
        self.field = curve.field
        self.sg = curve.sg
        self.n = curve.n
        self.table: MultTable = build_mult_table(curve)
        # per-point values of x_1 and of each module basis element y_j
        apery = self.sg.apery
        self._x1 = [pt[0] for pt in curve.points]
        self._yvals = []
        for j in range(self.sg.a1):
            exps = self.sg.apery_monomials[j]
            vals = []
            for pt in curve.points:
                v = 1
                for x, e in zip(pt, exps):
                    if e:
                        v = self.field.mul(v, self.field.pow(x, e))
                vals.append(v)
            self._yvals.append(vals)
        self._build_eval_system()
        self.sg.set_hhat(self.hhat)
        self.sg.eta_degs = [e.pole_order() for e in self.etas]
        self._check_vote_capacity()

    # -- direct evaluation ----------------------------------------------

    def monomial_row(self, s: int) -> tuple[int, ...]:
        """Evaluation of the normal-form monomial of pole order s at all points."""
        m, j = self.sg.phi_index(s)
        field = self.field
        yv = self._yvals[j]
        if m == 0:
            return tuple(yv)
        return tuple(
            field.mul(field.pow(x, m), y) for x, y in zip(self._x1, yv)
        )

    def evaluate(self, elem: RingElem | dict) -> tuple[int, ...]:
        """Evaluation of a normal-form element at all points (uncounted)."""
        terms = elem.terms if isinstance(elem, RingElem) else elem
        field = self.field
        acc = [0] * self.n
        for s, c in terms.items():
            row = self.rows.get(s) or self.monomial_row(s)
            for k in range(self.n):
                acc[k] = field.add(acc[k], field.mul(c, row[k]))
        return tuple(acc)

    # -- the scan ---------------------------------------------------------

    def _build_eval_system(self) -> None:
        field = self.field
        sg = self.sg
        n = self.n
        a1 = sg.a1
        hhat: list[int] = []
        rows: dict[int, tuple[int, ...]] = {}
        etas: list[RingElem | None] = [None] * a1
        # reduced basis rows: list of (pivot column, normalized row,
        # combination {kept pole order: coeff} expressing the row in the
        # original evaluation rows)
        reduced: list[tuple[int, list[int], dict[int, int]]] = []
        bound = n + 2 * sg.genus + max(sg.apery) + a1
        s = 0
        while (len(hhat) < n or any(e is None for e in etas)) and s <= bound:
            if not sg.is_nongap(s):
                s += 1
                continue
            vec = list(self.monomial_row(s))
            # invariant: vec == sum over combo of the original kept rows
            combo: dict[int, int] = {s: 1}
            for pivot, row, rcombo in reduced:
                factor = vec[pivot]
                if factor == 0:
                    continue
                for k in range(n):
                    if row[k]:
                        vec[k] = field.sub(vec[k], field.mul(factor, row[k]))
                for key, c in rcombo.items():
                    v = field.sub(combo.get(key, 0), field.mul(factor, c))
                    if v:
                        combo[key] = v
                    else:
                        combo.pop(key, None)
            pivot = next((k for k in range(n) if vec[k]), None)
            if pivot is not None:
                if len(hhat) >= n:
                    raise RankDeficient(
                        "independent row found beyond point count; bad point data"
                    )
                hhat.append(s)
                rows[s] = self.monomial_row(s)
                inv = field.inv(vec[pivot])
                norm = [field.mul(inv, v) for v in vec]
                ncombo = {k: field.mul(inv, c) for k, c in combo.items()}
                reduced.append((pivot, norm, ncombo))
            else:
                cls = s % a1
                if etas[cls] is None:
                    # vec vanished, so the combo itself evaluates to zero
                    etas[cls] = RingElem({k: v for k, v in combo.items() if v})
            s += 1
        if len(hhat) < n:
            raise RankDeficient(
                f"only {len(hhat)} independent evaluation rows below the scan bound"
            )
        if any(e is None for e in etas):
            raise SearchBoundExceeded(
                "no vanishing element found for some residue class below the bound"
            )
        self.hhat = hhat
        self.rows = rows
        self.etas: list[RingElem] = etas  # type: ignore[assignment]
        self.max_hhat = hhat[-1]
        self._hhat_index = {s: k for k, s in enumerate(hhat)}
        self.minv = self._invert_transposed()

    def _invert_transposed(self) -> list[list[int]]:
        """Inverse of the point-by-basis evaluation matrix.

        Row k of the matrix being inverted is the evaluation of every
        kept basis element at point k, so applying the inverse to a word
        recovers basis coefficients.
        """
        field = self.field
        n = self.n
        aug = []
        for k in range(n):
            row = [self.rows[s][k] for s in self.hhat]
            row.extend(1 if j == k else 0 for j in range(n))
            aug.append(row)
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise RankDeficient("evaluation matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = field.inv(aug[col][col])
            if inv != 1:
                aug[col] = [field.mul(inv, v) for v in aug[col]]
            for r in range(n):
                if r == col:
                    continue
                f = aug[r][col]
                if f:
                    rowc = aug[col]
                    rowr = aug[r]
                    for k in range(2 * n):
                        if rowc[k]:
                            rowr[k] = field.sub(rowr[k], field.mul(f, rowc[k]))
        return [row[n:] for row in aug]

    def _check_vote_capacity(self) -> None:
        # the two formulas for the vote capacity must agree everywhere
        for s in self.hhat:
            if self.sg.nu(s) != self.sg.lam(s):
                raise AssertionError(
                    f"vote capacity mismatch at pole order {s}: "
                    f"nu={self.sg.nu(s)} lam={self.sg.lam(s)}"
                )


def load_system(spec: str) -> CurveSystem:
    """Load a curve (bundled name or path) and precompute its tables, cached."""
    path = os.path.abspath(resolve_curve_path(spec))
    sys_ = _SYSTEM_CACHE.get(path)
    if sys_ is None:
        sys_ = CurveSystem(load_curve(path))
        _SYSTEM_CACHE[path] = sys_
    return sys_


# ---------------------------------------------------------------------------
# codes
# ---------------------------------------------------------------------------

class CodeSpec:
    """An evaluation code given by its support of pole orders."""

    def __init__(self, system: CurveSystem, gamma: list[int]):
        sg = system.sg
        bad = [s for s in gamma if s not in system._hhat_index]
        if bad:
            raise InvalidGamma(f"pole orders {bad} are not in the kept set")
        if not gamma:
            raise EmptyGamma("empty code support")
        if len(set(gamma)) != len(gamma):
            raise InvalidGamma("duplicate pole orders in code support")
        self.system = system
        self.gamma = tuple(sorted(gamma))
        self.gamma_set = frozenset(gamma)
        self.dim = len(self.gamma)
        self.nu_values = {s: sg.nu(s) for s in self.gamma}
        self.dag = min(self.nu_values.values())
        # min vote capacity over the support restricted to orders <= s
        self.prefix_dag: dict[int, int] = {}
        running = None
        for s in self.gamma:
            running = self.nu_values[s] if running is None else min(running, self.nu_values[s])
            self.prefix_dag[s] = running

    def generator_rows(self) -> list[tuple[int, ...]]:
        return [self.system.rows[s] for s in self.gamma]

    def __repr__(self) -> str:
        return (
            f"CodeSpec(curve={self.system.curve.name!r}, dim={self.dim}, "
            f"dag={self.dag}, n={self.system.n})"
        )


def build_code(system: CurveSystem, delta: int | None = None, gamma=None) -> CodeSpec:
    """Construct a code from a designed distance or an explicit support."""
    if (delta is None) == (gamma is None):
        raise ValueError("exactly one of delta and gamma must be given")
    if gamma is not None:
        return CodeSpec(system, list(gamma))
    chosen = [s for s in system.hhat if system.sg.nu(s) >= delta]
    if not chosen:
        raise EmptyGamma(f"no kept pole order has vote capacity >= {delta}")
    return CodeSpec(system, chosen)


def encode(code: CodeSpec, message: dict[int, int]) -> tuple[int, ...]:
    """Evaluate the function with the given support coefficients."""
    system = code.system
    field = system.field
    for s in message:
        if s not in code.gamma_set:
            raise InvalidGamma(f"message coefficient at {s} outside the code support")
    acc = [0] * system.n
    for s, c in message.items():
        if c == 0:
            continue
        row = system.rows[s]
        for k in range(system.n):
            acc[k] = field.add(acc[k], field.mul(c, row[k]))
    return tuple(acc)


def interpolate(system: CurveSystem, word, ctr: CostCounter | None = None) -> RingElem:
    """The unique kept-basis combination evaluating to the given word.

    Costs at most n^2 multiplications (products with a 0 or 1 operand are
    skipped and not counted).
    """
    field = system.field
    n = system.n
    if len(word) != n:
        raise ValueError(f"word length {len(word)} != {n}")
    terms: dict[int, int] = {}
    muls = 0
    for i, s in enumerate(system.hhat):
        acc = 0
        row = system.minv[i]
        for k in range(n):
            m, r = row[k], word[k]
            if m == 0 or r == 0:
                continue
            if m == 1:
                acc = field.add(acc, r)
            elif r == 1:
                acc = field.add(acc, m)
            else:
                acc = field.add(acc, field.mul(m, r))
                muls += 1
        if acc:
            terms[s] = acc
    if ctr is not None:
        ctr.muls += muls
    return RingElem(terms)
