"""Monte-Carlo decoding trials: random codewords, weight-tau errors, stats.

Each trial draws a uniform message, encodes it, injects an error of exact
weight tau (uniformly random, or directed toward a nearby codeword),
list-decodes, and records iterations, field operations, and list size.
Trials are deterministic given the configuration seed: trial i uses its
own generator seeded from (seed, i), so results do not depend on
execution order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .code import CodeSpec, build_code, load_system
from .decoder import list_decode
from .errors import NearestUnavailable


# ---------------------------------------------------------------------------
# iteration bounds
# ---------------------------------------------------------------------------

def iteration_bound(code: CodeSpec, tau: int, criterion: int) -> int:
    """Worst-case rebasing count for one decode, with N taken as max kept order."""
    system = code.system
    sg = system.sg
    q = system.field.q
    n_top = system.max_hhat
    max_gamma = code.gamma[-1]
    head = sum(1 for s in range(max_gamma, n_top) if sg.is_nongap(s))
    branchy = sum(1 for s in code.gamma if sg.nu(s) <= 2 * tau)
    factor = q**branchy
    if criterion == 3:
        tail = sum(1 for s in range(0, max_gamma) if sg.is_nongap(s)) + 1
    else:
        from .decoder import compute_s_floor

        floor = compute_s_floor(code, tau)
        tail = sum(1 for s in range(floor, max_gamma) if sg.is_nongap(s))
    return head + factor * tail


# ---------------------------------------------------------------------------
# error generation
# ---------------------------------------------------------------------------

def gen_error(code: CodeSpec, mode: str, tau: int, transmitted, rng: random.Random,
              nearby: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """An error vector of exact weight tau.

    Mode "R": uniform support, uniform nonzero values.  Mode "N": move
    toward a nearby codeword by copying tau positions of a low-weight
    codeword found beforehand (pass it as ``nearby``).
    """
    system = code.system
    n = system.n
    q = system.field.q
    if tau > n:
        raise ValueError("tau exceeds the code length")
    err = [0] * n
    if mode == "R":
        for k in rng.sample(range(n), tau):
            err[k] = rng.randrange(1, q)
        return tuple(err)
    if mode != "N":
        raise ValueError(f"unknown error mode {mode!r}")
    if nearby is None:
        nearby = find_low_weight_codeword(code, rng)
    support = [k for k, v in enumerate(nearby) if v]
    weight = len(support)
    if weight > 2 * tau:
        raise NearestUnavailable(
            f"closest codeword found has weight {weight} > 2*tau = {2 * tau}"
        )
    if weight < tau:
        raise NearestUnavailable(
            f"closest codeword found has weight {weight} < tau = {tau}"
        )
    for k in rng.sample(support, tau):
        err[k] = nearby[k]
    return tuple(err)


def _np_tables(field):
    mul = np.array(field._mul, dtype=np.int16)
    add = np.array(field._add, dtype=np.int16)
    return mul, add


def find_low_weight_codeword(code: CodeSpec, rng: random.Random, samples: int = 10_000):
    """Low-weight nonzero codeword via randomized systematic-form sampling.

    Each sample is one row of the generator matrix re-echelonized on a
    random information set; sampling stops early if the weight matches
    the designed distance, which no nonzero codeword can beat.
    """
    system = code.system
    field = system.field
    n, k = system.n, code.dim
    mul_t, add_t = _np_tables(field)
    gen = np.array(code.generator_rows(), dtype=np.int16)
    best = None
    best_weight = n + 1
    seen = 0
    while seen < samples:
        perm = np.array(rng.sample(range(n), n), dtype=np.int64)
        mat = gen[:, perm]
        # echelonize on the leading columns of the permuted matrix
        rank_rows = 0
        for col in range(n):
            if rank_rows == k:
                break
            piv = None
            for row in range(rank_rows, k):
                if mat[row, col]:
                    piv = row
                    break
            if piv is None:
                continue
            if piv != rank_rows:
                mat[[rank_rows, piv]] = mat[[piv, rank_rows]]
            inv = field.inv(int(mat[rank_rows, col]))
            if inv != 1:
                mat[rank_rows] = mul_t[mat[rank_rows], inv]
            for row in range(k):
                if row != rank_rows and mat[row, col]:
                    f = int(mat[row, col])
                    neg_row = mul_t[mat[rank_rows], field.neg(1)] if field.p != 2 else mat[rank_rows]
                    scaled = mul_t[neg_row, f]
                    mat[row] = add_t[mat[row], scaled]
            rank_rows += 1
        for row in range(rank_rows):
            seen += 1
            weight = int(np.count_nonzero(mat[row]))
            if 0 < weight < best_weight:
                best_weight = weight
                out = np.zeros(n, dtype=np.int16)
                out[perm] = mat[row]
                best = tuple(int(v) for v in out)
                if best_weight <= code.dag:
                    return best
            if seen >= samples:
                break
    if best is None:
        raise NearestUnavailable("no nonzero codeword sampled")
    return best


# ---------------------------------------------------------------------------
# trials
# ---------------------------------------------------------------------------

@dataclass
class TrialConfig:
    curve: str
    tau: int
    criterion: int
    delta: int | None = None
    gamma: tuple[int, ...] | None = None
    trials: int = 50
    error_mode: str = "R"
    rng_seed: int = 0


@dataclass
class TrialStats:
    config: TrialConfig
    gamma_size: int
    dag: int
    bound: int
    trials: int
    avg_iterations: float
    max_iterations: int
    avg_ops: float
    max_ops: int
    avg_found: float
    max_found: int
    success_rate: float
    per_trial: list = dc_field(default_factory=list, repr=False)

    def line(self) -> str:
        c = self.config
        return (
            f"{c.curve} {self.gamma_size} {self.dag} {c.tau} {c.error_mode} "
            f"{c.criterion} {self.bound} {self.avg_iterations:.2f} {self.max_iterations} "
            f"{self.avg_ops:.2f} {self.max_ops} {self.avg_found:.2f} {self.max_found} "
            f"{self.success_rate:.2f}"
        )


LINE_HEADER = (
    "curve gammasize dag tau mode criterion bound avg_iter max_iter "
    "avg_ops max_ops avg_found max_found success_rate"
)


def _trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def run_trials(cfg: TrialConfig) -> TrialStats:
    """Simulate transmissions and aggregate decoder statistics."""
    system = load_system(cfg.curve)
    code = build_code(system, delta=cfg.delta, gamma=cfg.gamma)
    bound = iteration_bound(code, cfg.tau, cfg.criterion)
    q = system.field.q
    nearby = None
    if cfg.error_mode == "N":
        nearby = find_low_weight_codeword(code, random.Random(f"{cfg.rng_seed}:nearby"))
    per_trial = []
    successes = 0
    from .code import encode

    for idx in range(cfg.trials):
        rng = _trial_rng(cfg.rng_seed, idx)
        message = {s: rng.randrange(q) for s in code.gamma}
        cw = encode(code, message)
        err = gen_error(code, cfg.error_mode, cfg.tau, cw, rng, nearby=nearby)
        received = tuple(system.field.add(a, b) for a, b in zip(cw, err))
        result = list_decode(system, code, received, cfg.tau, cfg.criterion)
        norm = {s: message.get(s, 0) for s in code.gamma}
        ok = any(msg == norm for msg in result.messages())
        if result.iterations > bound:
            raise AssertionError(
                f"observed {result.iterations} iterations above the bound {bound}"
            )
        successes += ok
        per_trial.append(
            (result.iterations, result.counter.total(), len(result.entries), ok)
        )
    iters = [p[0] for p in per_trial]
    ops = [p[1] for p in per_trial]
    founds = [p[2] for p in per_trial]
    return TrialStats(
        config=cfg,
        gamma_size=code.dim,
        dag=code.dag,
        bound=bound,
        trials=cfg.trials,
        avg_iterations=sum(iters) / len(iters),
        max_iterations=max(iters),
        avg_ops=sum(ops) / len(ops),
        max_ops=max(ops),
        avg_found=sum(founds) / len(founds),
        max_found=max(founds),
        success_rate=successes / cfg.trials,
        per_trial=per_trial,
    )


def format_table(stats_list: list[TrialStats]) -> str:
    """Aligned text block, one row per configuration."""
    headers = [
        "curve", "#G", "dag", "tau", "mode", "crit", "bound",
        "avg_it", "max_it", "avg_ops", "max_ops", "avg_cw", "max_cw", "ok",
    ]
    rows = []
    for st in stats_list:
        c = st.config
        rows.append([
            c.curve, str(st.gamma_size), str(st.dag), str(c.tau), c.error_mode,
            str(c.criterion), f"{st.bound:,}",
            f"{st.avg_iterations:.2f}", str(st.max_iterations),
            f"{st.avg_ops:.2f}", f"{st.max_ops:,}",
            f"{st.avg_found:.2f}", str(st.max_found),
            f"{st.success_rate:.0%}",
        ])
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    out = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for r in rows:
        out.append("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    return "\n".join(out)
