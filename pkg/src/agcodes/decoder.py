"""List decoding by majority voting inside a module Groebner basis.

The decoder walks the nongaps downward from the pole order of the
interpolated received word.  At each step it keeps a Groebner basis
(under an order parametrized by the current pole order s) of the module
of pairs vanishing against the shifted received word: a_1 elements with
leading term on the z side (``f``) and a_1 with leading term on the
function side (``g``).  Votes extracted from the basis propose the
message coefficient at s; every accepted candidate spawns a branch, and
each branch rebases the basis and descends.  Three interchangeable
termination criteria close branches early (1), at a fixed floor (2), or
at the very bottom (3).
"""

from __future__ import annotations

from .code import CodeSpec, CurveSystem, interpolate
from .coordring import CostCounter, _mul_terms, _quot_terms
from .curve import NEG_INF
from .errors import BudgetExceeded, NotDivisible


# ---------------------------------------------------------------------------
# monomial order on pairs
# ---------------------------------------------------------------------------

def order_s_key(system: CurveSystem, mono: tuple[int, int, int], s: int):
    """Sort key for the order parametrized by s on monomials x_1^m y_j z^k.

    Larger key = larger monomial.  Ties in the weighted value are broken
    reverse-lexicographically on the full exponent vector (z last): the
    first differing exponent being larger makes the monomial smaller.
    """
    m, j, k = mono
    sg = system.sg
    pole = sg.apery[j] + m * sg.a1
    tail = sg.apery_monomials[j]
    exps = (m + tail[0],) + tail[1:] + (k,)
    return (k * s + pole, tuple(-e for e in exps))


def cmp_order_s(system: CurveSystem, u: tuple[int, int, int], v: tuple[int, int, int], s: int) -> int:
    """-1, 0, 1 as u is below, equal to, or above v under the s-order."""
    ku, kv = order_s_key(system, u, s), order_s_key(system, v, s)
    return -1 if ku < kv else (1 if ku > kv else 0)


def pair_leading_term(system: CurveSystem, az: dict, b: dict, s: int):
    """Leading term of az*z + b under the s-order: ((m, j, k), coeff)."""
    sg = system.sg
    a1 = sg.a1
    best_key = None
    best = None
    for pole, c in az.items():
        j = pole % a1
        mono = ((pole - sg.apery[j]) // a1, j, 1)
        key = order_s_key(system, mono, s)
        if best_key is None or key > best_key:
            best_key, best = key, (mono, c)
    for pole, c in b.items():
        j = pole % a1
        mono = ((pole - sg.apery[j]) // a1, j, 0)
        key = order_s_key(system, mono, s)
        if best_key is None or key > best_key:
            best_key, best = key, (mono, c)
    return best


# ---------------------------------------------------------------------------
# state
# ---------------------------------------------------------------------------

class DecoderState:
    """One branch of the decoder: basis pairs, diagonal coefficients, choices."""

    __slots__ = ("s", "fA", "fB", "gA", "gB", "nu", "w_chosen", "r_shift")

    def __init__(self, s, fA, fB, gA, gB, nu, w_chosen, r_shift):
        self.s = s
        self.fA = fA
        self.fB = fB
        self.gA = gA
        self.gB = gB
        self.nu = nu
        self.w_chosen = w_chosen
        self.r_shift = r_shift

    def copy(self) -> "DecoderState":
        return DecoderState(
            self.s,
            [dict(d) for d in self.fA],
            [dict(d) for d in self.fB],
            [dict(d) for d in self.gA],
            [dict(d) for d in self.gB],
            list(self.nu),
            dict(self.w_chosen),
            list(self.r_shift),
        )


def init_state(system: CurveSystem, r, ctr: CostCounter) -> DecoderState:
    """Interpolate the received word and set up the starting basis."""
    field = system.field
    sg = system.sg
    a1 = sg.a1
    h = interpolate(system, r, ctr)
    n_start = system.max_hhat if h.is_zero() else h.pole_order()
    fA, fB = [], []
    for i in range(a1):
        yi = {sg.apery[i]: 1}
        prod = _mul_terms(system.table, yi, h.terms, ctr)
        fA.append(yi)
        fB.append({k: field.neg(v) for k, v in prod.items()})
    gA = [{} for _ in range(a1)]
    gB = [dict(system.etas[i].terms) for i in range(a1)]
    nu = [system.etas[i].leading_coeff() for i in range(a1)]
    return DecoderState(n_start, fA, fB, gA, gB, nu, {}, list(r))


# ---------------------------------------------------------------------------
# pairing and voting
# ---------------------------------------------------------------------------

def pair_and_vote(system: CurveSystem, state: DecoderState, ctr: CostCounter):
    """Per-class vote records (i2, k, c, cbar, mu, w_si) at the current s."""
    field = system.field
    sg = system.sg
    a1 = sg.a1
    apery = sg.apery
    s = state.s
    cls_s = s % a1
    lc_row = system.table.lc
    votes = []
    for i in range(a1):
        i2 = (i + s) % a1
        az = state.fA[i]
        pa = max(p for p in az if p % a1 == i)
        deg_a = (pa - apery[i]) // a1
        k_i = deg_a + (apery[i] + s - apery[i2]) // a1
        gb = state.gB[i2]
        pd = max(p for p in gb if p % a1 == i2)
        deg_d = (pd - apery[i2]) // a1
        c_i = deg_d - k_i
        mu = field.mul(az[pa], lc_row[i][cls_s])
        bcoeff = state.fB[i].get(k_i * a1 + apery[i2], 0)
        w_si = field.div(field.neg(bcoeff), mu)
        votes.append((i2, k_i, c_i, c_i if c_i > 0 else 0, mu, w_si))
    ctr.muls += a1
    ctr.divs += a1
    return votes


def accepted_candidates(system: CurveSystem, code: CodeSpec, s: int, votes, tau: int):
    """Candidate coefficients at s: forced 0 off the support, votes on it."""
    if s not in code.gamma_set:
        return (0,)
    threshold = sum(v[3] for v in votes) - 2 * tau + system.sg.nu(s)
    scores: dict[int, int] = {}
    for _, _, _, cbar, _, w_si in votes:
        if cbar:
            scores[w_si] = scores.get(w_si, 0) + cbar
    return tuple(w for w in range(system.field.q) if 2 * scores.get(w, 0) >= threshold)


# ---------------------------------------------------------------------------
# rebasing
# ---------------------------------------------------------------------------

def rebase(system: CurveSystem, state: DecoderState, votes, w: int, ctr: CostCounter) -> None:
    """Substitute z <- z + w*phi_s, update the basis, and step s down."""
    field = system.field
    table = system.table
    sg = system.sg
    a1 = sg.a1
    s = state.s
    fmul = field.mul
    fsub = field.sub
    fdiv = field.div

    def add_into(base: dict, extra: dict) -> dict:
        if not extra:
            return base
        out = dict(base)
        fadd = field.add
        for k, v in extra.items():
            nv = fadd(out.get(k, 0), v)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    phi_w = {s: w}
    if w:
        f_subB = [add_into(state.fB[i], _mul_terms(table, phi_w, state.fA[i], ctr)) for i in range(a1)]
        g_subB = [add_into(state.gB[i], _mul_terms(table, phi_w, state.gA[i], ctr)) for i in range(a1)]
    else:
        f_subB = list(state.fB)
        g_subB = list(state.gB)

    new_fA: list = [None] * a1
    new_fB: list = [None] * a1
    new_gA: list = [None] * a1
    new_gB: list = [None] * a1
    new_nu: list = [0] * a1
    d = sg.a1

    def scaled(c: int, terms: dict) -> dict:
        if c == 1:
            return dict(terms)
        out = {}
        for k, v in terms.items():
            out[k] = fmul(c, v)
        ctr.muls += len(terms)
        return out

    def subtract(a: dict, b: dict) -> dict:
        out = dict(a)
        for k, v in b.items():
            nv = fsub(out.get(k, 0), v)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    def shifted(terms: dict, steps: int) -> dict:
        if steps == 0:
            return dict(terms)
        off = steps * d
        return {k + off: v for k, v in terms.items()}

    for i in range(a1):
        i2, _k, c_i, _cbar, mu, w_si = votes[i]
        if w == w_si:
            new_gA[i2] = dict(state.gA[i2])
            new_gB[i2] = g_subB[i2]
            new_fA[i] = dict(state.fA[i])
            new_fB[i] = f_subB[i]
            new_nu[i2] = state.nu[i2]
        else:
            diff = fmul(mu, fsub(w, w_si))
            factor = fdiv(diff, state.nu[i2])
            ctr.muls += 1
            ctr.divs += 1
            if c_i > 0:
                new_gA[i2] = dict(state.fA[i])
                new_gB[i2] = f_subB[i]
                new_fA[i] = subtract(shifted(state.fA[i], c_i), scaled(factor, state.gA[i2]))
                new_fB[i] = subtract(shifted(f_subB[i], c_i), scaled(factor, g_subB[i2]))
                new_nu[i2] = diff
            else:
                new_gA[i2] = dict(state.gA[i2])
                new_gB[i2] = g_subB[i2]
                new_fA[i] = subtract(state.fA[i], shifted(scaled(factor, state.gA[i2]), -c_i))
                new_fB[i] = subtract(f_subB[i], shifted(scaled(factor, g_subB[i2]), -c_i))
                new_nu[i2] = state.nu[i2]

    state.fA, state.fB = new_fA, new_fB
    state.gA, state.gB = new_gA, new_gB
    state.nu = new_nu
    if w:
        row = system.rows[s]
        state.r_shift = [field.sub(rv, fmul(w, pv)) for rv, pv in zip(state.r_shift, row)]
    nxt = sg.prec(s)
    for s_gap in range(s - 1, nxt, -1):
        _eliminate_at_gap(system, state, s_gap, ctr)
    state.s = nxt


def _eliminate_at_gap(system: CurveSystem, state: DecoderState, s_gap: int, ctr: CostCounter) -> None:
    """Clear basis coefficients sitting at a gap offset.

    No basis monomial exists at a gap, so no coefficient can be voted on
    there; but mismatch eliminations (with the candidate fixed at 0) are
    still needed so the leading-term shape survives the jump to the next
    smaller nongap.  The substitution part is vacuous.
    """
    field = system.field
    sg = system.sg
    a1 = sg.a1
    apery = sg.apery
    fmul = field.mul
    fsub = field.sub
    new_gA: list = [None] * a1
    new_gB: list = [None] * a1
    new_fA: list = [None] * a1
    new_fB: list = [None] * a1
    new_nu: list = [0] * a1

    def subtract(a: dict, b: dict, c: int) -> dict:
        out = dict(a)
        if c != 1:
            ctr.muls += len(b)
        for k, v in b.items():
            nv = fsub(out.get(k, 0), v if c == 1 else fmul(c, v))
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    for i in range(a1):
        i2 = (i + s_gap) % a1
        az = state.fA[i]
        pa = max(p for p in az if p % a1 == i)
        k_i = (pa - apery[i]) // a1 + (apery[i] + s_gap - apery[i2]) // a1
        critical = k_i * a1 + apery[i2]
        bcoeff = state.fB[i].get(critical, 0)
        if bcoeff == 0:
            new_fA[i] = state.fA[i]
            new_fB[i] = state.fB[i]
            new_gA[i2] = state.gA[i2]
            new_gB[i2] = state.gB[i2]
            new_nu[i2] = state.nu[i2]
            continue
        gb = state.gB[i2]
        pd = max(p for p in gb if p % a1 == i2)
        c_i = (pd - apery[i2]) // a1 - k_i
        factor = field.div(bcoeff, state.nu[i2])
        ctr.divs += 1
        off = c_i * a1
        if c_i > 0:
            new_gA[i2] = state.fA[i]
            new_gB[i2] = state.fB[i]
            new_fA[i] = subtract({k + off: v for k, v in state.fA[i].items()},
                                 state.gA[i2], factor)
            new_fB[i] = subtract({k + off: v for k, v in state.fB[i].items()},
                                 state.gB[i2], factor)
            new_nu[i2] = bcoeff
        else:
            new_gA[i2] = state.gA[i2]
            new_gB[i2] = state.gB[i2]
            new_fA[i] = subtract(state.fA[i],
                                 {k - off: v for k, v in state.gA[i2].items()}, factor)
            new_fB[i] = subtract(state.fB[i],
                                 {k - off: v for k, v in state.gB[i2].items()}, factor)
            new_nu[i2] = state.nu[i2]
    state.fA, state.fB = new_fA, new_fB
    state.gA, state.gB = new_gA, new_gB
    state.nu = new_nu


# ---------------------------------------------------------------------------
# termination criteria
# ---------------------------------------------------------------------------

def _f_min(state: DecoderState):
    best_i = None
    best_pole = None
    for i, az in enumerate(state.fA):
        pole = max(az) if az else NEG_INF
        if best_pole is None or pole < best_pole:
            best_pole, best_i = pole, i
    return state.fA[best_i], state.fB[best_i], best_pole


def _eval_counted(system: CurveSystem, terms: dict, ctr: CostCounter) -> list[int]:
    field = system.field
    acc = [0] * system.n
    muls = 0
    fadd = field.add
    fmul = field.mul
    for s, c in terms.items():
        if c == 0:
            continue
        row = system.rows[s]
        if c == 1:
            for k in range(system.n):
                if row[k]:
                    acc[k] = fadd(acc[k], row[k])
        else:
            for k in range(system.n):
                if row[k] == 0:
                    continue
                if row[k] == 1:
                    acc[k] = fadd(acc[k], c)
                else:
                    acc[k] = fadd(acc[k], fmul(c, row[k]))
                    muls += 1
    ctr.muls += muls
    return acc


def _weight_against(word: list[int], r) -> int:
    return sum(1 for a, b in zip(word, r) if a != b)


def _try_quotient(system: CurveSystem, code: CodeSpec, state: DecoderState, alpha0, alpha1, ctr):
    """-alpha0/alpha1 as message coefficients, or None if outside the code."""
    try:
        quo = _quot_terms(system.table, alpha0, alpha1, ctr)
    except NotDivisible:
        return None
    s = state.s
    field = system.field
    msg: dict[int, int] = {}
    for pole, c in quo.items():
        if pole > s or pole not in code.gamma_set:
            return None
        msg[pole] = field.neg(c)
    for s2, w in state.w_chosen.items():
        if s2 > s and w:
            msg[s2] = w
    return msg


def check_termination(system, code, state, tau, criterion, r, s_floor, ctr):
    """Evaluate the chosen stopping rule at the current s.

    Returns ("continue", None), ("found", message), or ("dead", None).
    """
    sg = system.sg
    genus = sg.genus
    if criterion == 3:
        if state.s != -1:
            return ("continue", None)
        alpha1, alpha0, pole1 = _f_min(state)
        message = {s2: w for s2, w in state.w_chosen.items() if w}
        if 2 * tau < code.dag:
            return ("found", message)
        if not alpha0 and pole1 <= tau:
            return ("found", message)
        if pole1 > tau + genus:
            return ("dead", None)
        word = _eval_counted(system, message, ctr)
        if _weight_against(word, r) <= tau:
            return ("found", message)
        return ("dead", None)

    if criterion == 2:
        if state.s > s_floor:
            return ("continue", None)
        alpha1, alpha0, pole1 = _f_min(state)
        if pole1 > tau + genus:
            return ("dead", None)
        msg = _try_quotient(system, code, state, alpha0, alpha1, ctr)
        if 2 * tau < code.dag:
            return ("found", msg) if msg is not None else ("dead", None)
        if msg is None:
            return ("dead", None)
        if pole1 <= tau:
            return ("found", msg)
        word = _eval_counted(system, msg, ctr)
        if _weight_against(word, r) <= tau:
            return ("found", msg)
        return ("dead", None)

    # criterion 1
    s = state.s
    if s not in code.gamma_set or code.prefix_dag[s] <= 2 * tau:
        return ("continue", None)
    alpha1, alpha0, pole1 = _f_min(state)
    if pole1 > tau + genus:
        return ("continue", None)
    msg = _try_quotient(system, code, state, alpha0, alpha1, ctr)
    if msg is None:
        return ("continue", None)
    if code.dag > 2 * tau or pole1 <= tau:
        return ("found", msg)
    word = _eval_counted(system, msg, ctr)
    if _weight_against(word, r) <= tau:
        return ("found", msg)
    return ("continue", None)


# ---------------------------------------------------------------------------
# the full decoder
# ---------------------------------------------------------------------------

class DecodeResult:
    """Outcome of one list-decoding call."""

    def __init__(self, entries, iterations, counter):
        self.entries = entries  # list of (message dict over the support, codeword, distance)
        self.iterations = iterations
        self.counter = counter

    def codewords(self):
        return [cw for _, cw, _ in self.entries]

    def messages(self):
        return [msg for msg, _, _ in self.entries]

    def __repr__(self) -> str:
        return (
            f"DecodeResult(found={len(self.entries)}, iterations={self.iterations}, "
            f"ops={self.counter.total()})"
        )


def compute_s_floor(code: CodeSpec, tau: int) -> int:
    """Largest support order strictly below n - 2*tau - genus."""
    n = code.system.n
    genus = code.system.sg.genus
    limit = n - 2 * tau - genus
    eligible = [s for s in code.gamma if s < limit]
    if not eligible:
        raise ValueError(
            f"tau={tau} leaves no support order below {limit}; "
            "criteria 1 and 2 need a quotient floor"
        )
    return eligible[-1]


def list_decode(
    system: CurveSystem,
    code: CodeSpec,
    r,
    tau: int,
    criterion: int = 2,
    max_iterations: int | None = None,
) -> DecodeResult:
    """All codewords within Hamming distance tau of r, by branch exploration."""
    if criterion not in (1, 2, 3):
        raise ValueError(f"criterion must be 1, 2 or 3, not {criterion}")
    if tau < 0 or tau > system.n:
        raise ValueError(f"tau={tau} out of range [0, {system.n}]")
    field = system.field
    ctr = CostCounter()
    s_floor = compute_s_floor(code, tau) if criterion != 3 else -2
    if max_iterations is None:
        from .harness import iteration_bound

        max_iterations = iteration_bound(code, tau, criterion)
    found: dict[tuple, tuple] = {}
    iterations = 0
    stack = [init_state(system, r, ctr)]
    while stack:
        state = stack.pop()
        while True:
            kind, msg = check_termination(system, code, state, tau, criterion, r, s_floor, ctr)
            if kind == "found":
                full = {s2: msg.get(s2, 0) for s2 in code.gamma}
                cw = _codeword_of(system, code, full)
                dist = _weight_against(cw, r)
                if dist <= tau:
                    found.setdefault(cw, (full, cw, dist))
                break
            if kind == "dead":
                break
            if state.s == -1 or (criterion != 3 and state.s <= s_floor):
                break
            votes = pair_and_vote(system, state, ctr)
            cands = accepted_candidates(system, code, state.s, votes, tau)
            if not cands:
                break
            s_here = state.s
            on_support = s_here in code.gamma_set
            if len(cands) > 1:
                for w in cands[:0:-1]:
                    branch = state.copy()
                    if on_support:
                        branch.w_chosen[s_here] = w
                    rebase(system, branch, votes, w, ctr)
                    iterations += 1
                    if iterations > max_iterations:
                        raise BudgetExceeded(
                            f"iteration cap {max_iterations} exceeded"
                        )
                    stack.append(branch)
            if on_support:
                state.w_chosen[s_here] = cands[0]
            rebase(system, state, votes, cands[0], ctr)
            iterations += 1
            if iterations > max_iterations:
                raise BudgetExceeded(f"iteration cap {max_iterations} exceeded")
    entries = sorted(found.values(), key=lambda e: (e[2], e[1]))
    return DecodeResult(entries, iterations, ctr)


def _codeword_of(system: CurveSystem, code: CodeSpec, message: dict[int, int]):
    field = system.field
    acc = [0] * system.n
    for s, c in message.items():
        if not c:
            continue
        row = system.rows[s]
        for k in range(system.n):
            acc[k] = field.add(acc[k], field.mul(c, row[k]))
    return tuple(acc)


# ---------------------------------------------------------------------------
# runtime invariants (used by tests and demos, not by the hot path)
# ---------------------------------------------------------------------------

def membership_ok(system: CurveSystem, state: DecoderState) -> bool:
    """Every basis pair vanishes against the shifted word at every point."""
    field = system.field
    for i in range(system.sg.a1):
        evA_f = system.evaluate(state.fA[i])
        evB_f = system.evaluate(state.fB[i])
        evA_g = system.evaluate(state.gA[i])
        evB_g = system.evaluate(state.gB[i])
        for k in range(system.n):
            rk = state.r_shift[k]
            if field.add(evB_f[k], field.mul(rk, evA_f[k])) != 0:
                return False
            if field.add(evB_g[k], field.mul(rk, evA_g[k])) != 0:
                return False
    return True


def leading_terms_ok(system: CurveSystem, state: DecoderState) -> bool:
    """Diagonal dominance of the basis at the current s.

    f_i must lead on its y_i z component and g_i on its y_i component.
    A same-valued term on the other side is allowed (it is exactly what
    the next vote reads), so the check compares order values, not full
    leading terms.
    """
    a1 = system.sg.a1
    s = max(state.s, 0)
    for i in range(a1):
        az, b = state.fA[i], state.fB[i]
        if not az:
            return False
        pa = max(az)
        if pa % a1 != i:
            return False
        if b and max(b) > pa + s:
            return False
        ga, gb = state.gA[i], state.gB[i]
        if not gb:
            return False
        pd = max(gb)
        if pd % a1 != i:
            return False
        if ga and max(ga) + s > pd:
            return False
        if gb[pd] != state.nu[i]:
            return False
    return True
