"""Monte Carlo estimation of loop-weighted walk observables.

Floats live only here; everything upstream is exact. Randomness comes from
the Philox counter-based generator with one disjoint counter block per
sample, so results are reproducible and independent of how samples are
partitioned across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import GraphCtx, LoopActivity, PreconditionError, loop_count
from .enumeration import LEState, ResourceError, node_budget

RAWS_PER_SAMPLE = 64  # counter block per sample; n <= 64 steps per walk


@dataclass(frozen=True)
class SamplerConfig:
    d: int
    n: int
    lam: Fraction
    num_samples: int
    seed: int
    method: str = "ImportanceSRW"


class UnsupportedMethod(ValueError):
    pass


def msd_exact(n: int, d: int, act: LoopActivity) -> Fraction:
    """<|w_n|^2> under the n-step loop-weighted measure, by enumeration.

    lambda = 1 uses the endpoint-count convolution (loop weights are all 1).
    """
    if act.is_constant and act.value == 1:
        counts = _srw_counts(d, n)
        num = sum(c * sum(x * x for x in pt) for pt, c in counts.items())
        den = sum(counts.values())
        return Fraction(num, den)
    ctx = GraphCtx.lattice(d)
    if (2 * d) ** n > node_budget():
        raise ResourceError("enumeration budget exceeded")
    origin = ctx.origin()
    state = LEState(origin, ctx, act.is_constant)
    num = [Fraction(0)]
    den = [Fraction(0)]

    def weight():
        if act.is_constant:
            return act.value**state.count
        return act.weight_of_keys(state.keys)

    def dfs(v, length):
        if length == n:
            w = weight()
            den[0] += w
            num[0] += w * sum(x * x for x in v)
            return
        for w in ctx.neighbors(v):
            state.push(w)
            dfs(w, length + 1)
            state.pop()

    dfs(origin, 0)
    return num[0] / den[0]


@lru_cache(maxsize=None)
def _srw_counts(d: int, n: int) -> dict:
    cur = {(0,) * d: 1}
    for _ in range(n):
        nxt: dict = {}
        for x, c in cur.items():
            for i in range(d):
                for s in (-1, 1):
                    y = list(x)
                    y[i] += s
                    y = tuple(y)
                    nxt[y] = nxt.get(y, 0) + c
        cur = nxt
    return cur


def _sample_steps(seed: int, start_index: int, count: int, n: int, two_d: int) -> np.ndarray:
    """Steps for samples [start_index, start_index+count): (count, n) ints in
    [0, 2d).

    Sample i always consumes raw words [i*B, (i+1)*B) of the Philox stream,
    so the result is independent of batching and worker partitioning. The
    modulo bias is ~ 2d / 2^64, far below statistical resolution.
    """
    if n > RAWS_PER_SAMPLE:
        raise PreconditionError("n exceeds the per-sample block")
    out = np.empty((count, n), dtype=np.int64)
    for i in range(count):
        bitgen = np.random.Philox(key=[seed, start_index + i])
        out[i] = bitgen.random_raw(n).astype(np.int64) % two_d
    return out


def _walk_from_steps(steps, d: int):
    """Vertex tuple of the walk with the given step codes."""
    pos = [0] * d
    out = [tuple(pos)]
    for s in steps:
        axis, sgn = divmod(int(s), 2)
        pos[axis] += 1 if sgn else -1
        out.append(tuple(pos))
    return tuple(out)


def msd_importance(cfg: SamplerConfig):
    """Self-normalized importance sampling from SRW with weight lambda^{n_L}.

    Returns (estimate, stderr); stderr by the delta method for a ratio.
    """
    if cfg.lam <= 0:
        raise UnsupportedMethod("importance sampling needs lambda > 0")
    lam = float(cfg.lam)
    d, n = cfg.d, cfg.n
    two_d = 2 * d
    rows_w = np.empty(cfg.num_samples)
    rows_y = np.empty(cfg.num_samples)
    batch = 65536
    idx = 0
    for start in range(0, cfg.num_samples, batch):
        count = min(batch, cfg.num_samples - start)
        steps = _sample_steps(cfg.seed, start, count, n, two_d)
        for r in range(count):
            w = _walk_from_steps(steps[r], d)
            k = loop_count(w)
            rows_w[idx] = lam**k
            rows_y[idx] = float(sum(x * x for x in w[-1]))
            idx += 1
    sw = float(rows_w.sum())
    swy = float((rows_w * rows_y).sum())
    est = swy / sw
    resid = rows_w * (rows_y - est)
    var = float((resid**2).sum()) / (sw * sw)
    return est, math.sqrt(var)


@lru_cache(maxsize=None)
def _completion_sums(d: int, n: int, lam_key) -> dict:
    """V(saw-state, m): lambda-weighted sum over m-step continuations.

    The loop-erasure state of a prefix is its partial SAW; stepping onto the
    SAW truncates it and pays one factor of lambda.
    """
    lam = Fraction(lam_key)
    ctx = GraphCtx.lattice(d)
    memo: dict = {}

    def V(state: tuple, m: int) -> Fraction:
        if m == 0:
            return Fraction(1)
        key = (state, m)
        got = memo.get(key)
        if got is not None:
            return got
        pos = {v: i for i, v in enumerate(state)}
        acc = Fraction(0)
        for w in ctx.neighbors(state[-1]):
            j = pos.get(w)
            if j is None:
                acc += V(state + (w,), m - 1)
            else:
                acc += lam * V(state[: j + 1], m - 1)
        memo[key] = acc
        return acc

    return {"V": V}


def sample_exact(n: int, d: int, act: LoopActivity, seed: int, count: int):
    """i.i.d. exact draws from the n-step loop-weighted walk distribution.

    Sequential sampling: next-step probabilities proportional to the
    lambda-weighted completion sums of the loop-erasure state.
    """
    lam = act.constant_value()
    if lam == 0:
        # 0-LWW: uniform over SAWs; completion sums with lam=0 still work
        pass
    ctx = GraphCtx.lattice(d)
    V = _completion_sums(d, n, str(lam))["V"]
    walks = []
    for i in range(count):
        gen = np.random.Generator(np.random.Philox(key=[seed, i]))
        us = gen.random(n)
        state = (ctx.origin(),)
        walk = [ctx.origin()]
        for step in range(n):
            m = n - step - 1
            opts = []
            total = Fraction(0)
            pos = {v: k for k, v in enumerate(state)}
            for w in ctx.neighbors(state[-1]):
                j = pos.get(w)
                if j is None:
                    wt = V(state + (w,), m)
                    nxt = state + (w,)
                else:
                    wt = lam * V(state[: j + 1], m)
                    nxt = state[: j + 1]
                if wt > 0:
                    opts.append((w, nxt, wt))
                    total += wt
            u = Fraction(float(us[step])) * total
            acc = Fraction(0)
            chosen = None
            for w, nxt, wt in opts:
                acc += wt
                if u < acc:
                    chosen = (w, nxt)
                    break
            if chosen is None:
                chosen = (opts[-1][0], opts[-1][1])
            walk.append(chosen[0])
            state = chosen[1]
        walks.append(tuple(walk))
    return walks


def msd_importance_csv_rows(cfg: SamplerConfig):
    """Per-sample rows (sample_index, loop_count, end coords..., |end|^2)."""
    lam = float(cfg.lam)
    rows = []
    steps = _sample_steps(cfg.seed, 0, cfg.num_samples, cfg.n, 2 * cfg.d)
    for i in range(cfg.num_samples):
        w = _walk_from_steps(steps[i], cfg.d)
        k = loop_count(w)
        end = w[-1]
        rows.append((i, k) + end + (sum(x * x for x in end),))
    return rows
