"""Exhaustive walk-sum engine.

Everything here reduces to depth-first enumeration of walks with the
loop-erasure state carried along, so activity weights never require
re-scanning the walk. Lattice loop measures use a catalog of closed-walk
shapes rooted at the origin; "sum over closed walks hitting A avoiding B"
becomes a translation count per shape.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .core import (
    GraphCtx,
    LoopActivity,
    PreconditionError,
    l1,
    sap_key,
)
from .series import ZSeries, SpatialSeries, exp_series, reciprocal, spatial_convolve

DEFAULT_BUDGET = 10**9


class ResourceError(RuntimeError):
    pass


def node_budget() -> int:
    env = os.environ.get("LWW_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _guard(ctx: GraphCtx, max_len: int):
    if max_len > 0 and ctx.max_degree() ** max_len > node_budget():
        raise ResourceError(
            f"naive walk count {ctx.max_degree()}^{max_len} exceeds budget "
            f"{node_budget()} (override with LWW_BUDGET)"
        )


@dataclass(frozen=True)
class WalkConstraint:
    """Conjunctive constraints for walk sums.

    must_hit is satisfied when the walk range intersects it (any element);
    must_avoid excludes every listed vertex from the whole walk;
    no_return_to_start forbids the start vertex in w[1:]; end=None means any
    endpoint.
    """

    start: tuple
    end: Optional[object] = None
    must_hit: frozenset = frozenset()
    must_avoid: frozenset = frozenset()
    no_return_to_start: bool = False
    saw_only: bool = False
    sap_only: bool = False
    min_len: int = 0
    max_len: int = 0


class LEState:
    """Incremental loop-erasure state for DFS enumeration with undo."""

    __slots__ = ("ctx", "constant", "stack", "pos", "count", "keys", "undo")

    def __init__(self, start, ctx, constant: bool):
        self.ctx = ctx
        self.constant = constant
        self.stack = [start]
        self.pos = {start: 0}
        self.count = 0
        self.keys = []
        self.undo = []

    def push(self, v):
        j = self.pos.get(v)
        if j is None:
            self.pos[v] = len(self.stack)
            self.stack.append(v)
            self.undo.append((False, None))
        else:
            removed = self.stack[j + 1 :]
            for u in removed:
                del self.pos[u]
            del self.stack[j + 1 :]
            self.count += 1
            if not self.constant:
                loop = (self.stack[j],) + tuple(removed) + (v,)
                self.keys.append(sap_key(loop, self.ctx))
            self.undo.append((True, removed))

    def pop(self):
        erased, removed = self.undo.pop()
        if erased:
            self.count -= 1
            if not self.constant:
                self.keys.pop()
            base = len(self.stack)
            for i, u in enumerate(removed):
                self.pos[u] = base + i
            self.stack.extend(removed)
        else:
            v = self.stack.pop()
            del self.pos[v]


def walk_sum(c: WalkConstraint, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """Sum of z^{|w|} * activity factor over walks satisfying the constraint."""
    return _walk_sum_impl(c, act, nmax, ctx, by_endpoint=False)


def walk_sum_by_endpoint(
    c: WalkConstraint, act: LoopActivity, nmax: int, ctx: GraphCtx
) -> SpatialSeries:
    """Like walk_sum with end=None, but resolved by endpoint."""
    return _walk_sum_impl(c, act, nmax, ctx, by_endpoint=True)


def _walk_sum_impl(c, act, nmax, ctx, by_endpoint):
    max_len = min(c.max_len, nmax)
    if max_len < 0 or c.start in c.must_avoid:
        return (
            SpatialSeries.build({}, nmax) if by_endpoint else ZSeries.zero(nmax)
        )
    _guard(ctx, max_len)
    constant = act.is_constant
    lam_pows = None
    if constant:
        lam_pows = [Fraction(1)]
        for _ in range(max_len // 2 + 1):
            lam_pows.append(lam_pows[-1] * act.value)

    coeffs = [Fraction(0)] * (nmax + 1)
    table: dict = {}
    state = LEState(c.start, ctx, constant)
    avoid = c.must_avoid
    hit = c.must_hit
    end = c.end
    start = c.start
    no_ret = c.no_return_to_start
    saw_only, sap_only = c.saw_only, c.sap_only
    # activity 0 kills every branch that has closed a loop (unless the walk
    # must close exactly one, as SAPs do)
    zero_act = constant and act.value == 0 and not sap_only
    min_len = c.min_len
    budget = [node_budget()]

    def weight() -> Fraction:
        if constant:
            return lam_pows[state.count]
        return act.weight_of_keys(state.keys)

    def feasible(v, length, hit_done) -> bool:
        rem = max_len - length
        if rem < 0:
            return False
        if end is not None:
            if hit_done:
                need = ctx.distance(v, end)
            else:
                need = min(ctx.distance(v, a) + ctx.distance(a, end) for a in hit)
            if need > rem:
                return False
        elif not hit_done:
            if min(ctx.distance(v, a) for a in hit) > rem:
                return False
        return True

    def record(v, length, hit_done):
        if length < min_len or not hit_done:
            return
        if end is not None and v != end:
            return
        if saw_only and state.count:
            return
        if sap_only and (length < 2 or state.count != 1 or len(state.stack) != 1):
            return
        if by_endpoint:
            row = table.get(v)
            if row is None:
                row = [Fraction(0)] * (nmax + 1)
                table[v] = row
            row[length] += weight()
        else:
            coeffs[length] += weight()

    def dfs(v, length, hit_done):
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceError("enumeration node budget exceeded")
        record(v, length, hit_done)
        if length == max_len:
            return
        if (saw_only or sap_only or zero_act) and state.count:
            return
        for w in ctx.neighbors(v):
            if w in avoid or (no_ret and w == start):
                continue
            hd = hit_done or (w in hit)
            if not feasible(w, length + 1, hd):
                continue
            state.push(w)
            dfs(w, length + 1, hd)
            state.pop()

    hit_done = (not hit) or (start in hit)
    if feasible(start, 0, hit_done):
        dfs(start, 0, hit_done)
    if by_endpoint:
        return SpatialSeries.build(
            {x: ZSeries(tuple(row)) for x, row in table.items()}, nmax
        )
    return ZSeries(tuple(coeffs))


# ---------------------------------------------------------------------------
# closed-walk catalogs and loop measures


@lru_cache(maxsize=None)
def closed_walk_catalog(d: int, max_len: int):
    """Closed walks rooted at the origin of Z^d with 2 <= length <= max_len.

    Aggregated by (relative range, steps, erased-loop key multiset); each
    entry is (range frozenset, n, keys tuple, count).
    """
    ctx = GraphCtx.lattice(d)
    _guard(ctx, max_len)
    origin = ctx.origin()
    agg: dict = {}
    state = LEState(origin, ctx, False)
    path = [origin]

    def dfs(v, length):
        if v == origin and length >= 2:
            key = (frozenset(path), length, tuple(sorted(state.keys)))
            agg[key] = agg.get(key, 0) + 1
        if length == max_len:
            return
        rem = max_len - length - 1
        for w in ctx.neighbors(v):
            if l1(w, origin) > rem:
                continue
            state.push(w)
            path.append(w)
            dfs(w, length + 1)
            path.pop()
            state.pop()

    if max_len >= 2:
        dfs(origin, 0)
    return tuple((rng, n, keys, cnt) for (rng, n, keys), cnt in sorted(agg.items()))


def _mu_lattice(A, B_hit, C_avoid, act, nmax, d) -> ZSeries:
    """Loop measure on Z^d: hit A (and B_hit if given), avoid C_avoid."""
    A = frozenset(A)
    C = frozenset(C_avoid)
    B = frozenset(B_hit) if B_hit is not None else None
    A = A - C
    if B is not None:
        B = B - C
        if not B:
            return ZSeries.zero(nmax)
    if not A:
        return ZSeries.zero(nmax)
    coeffs = [Fraction(0)] * (nmax + 1)
    for rng, n, keys, cnt in closed_walk_catalog(d, nmax - nmax % 2):
        if n > nmax:
            continue
        w = act.weight_of_keys(keys) * Fraction(cnt, n)
        if w == 0:
            continue
        cands = set()
        for a in A:
            for r in rng:
                cands.add(tuple(p - q for p, q in zip(a, r)))
        total = 0
        for v in cands:
            shifted = [tuple(p + q for p, q in zip(r, v)) for r in rng]
            if C and any(s in C for s in shifted):
                continue
            if B is not None and not any(s in B for s in shifted):
                continue
            total += 1
        if total:
            coeffs[n] += w * total
    return ZSeries(tuple(coeffs))


def _per_length_division(raw: ZSeries) -> ZSeries:
    return ZSeries(
        tuple(c / n if n else Fraction(0) for n, c in enumerate(raw.coeffs))
    )


def _mu_finite(A, B_hit, C_avoid, act, nmax, ctx) -> ZSeries:
    """Loop measure on a finite graph via inclusion-exclusion on the misses."""
    A = frozenset(A) - frozenset(C_avoid)
    C = frozenset(C_avoid)
    if not A:
        return ZSeries.zero(nmax)

    def closed_sum(avoid: frozenset) -> ZSeries:
        acc = ZSeries.zero(nmax)
        for x in ctx.vertices():
            if x in avoid:
                continue
            acc = acc + walk_sum(
                WalkConstraint(start=x, end=x, must_avoid=avoid, min_len=1, max_len=nmax),
                act,
                nmax,
                ctx,
            )
        return acc

    if B_hit is None:
        # hit A = all - miss A
        raw = closed_sum(C) - closed_sum(C | A)
        return _per_length_division(raw)
    B = frozenset(B_hit) - C
    if not B:
        return ZSeries.zero(nmax)
    raw = (
        closed_sum(C)
        - closed_sum(C | A)
        - closed_sum(C | B)
        + closed_sum(C | A | B)
    )
    return _per_length_division(raw)


def loop_measure(A, B, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """mu(A;B): closed walks (any root) hitting A, avoiding B, weight w/|w|."""
    if ctx.is_lattice:
        return _mu_lattice(A, None, B, act, nmax, ctx.d)
    return _mu_finite(A, None, B, act, nmax, ctx)


def generalized_loop_measure(
    A, B, C, act: LoopActivity, nmax: int, ctx: GraphCtx
) -> ZSeries:
    """mu(A,B;C): closed walks hitting both A and B, avoiding C."""
    if ctx.is_lattice:
        return _mu_lattice(A, B, C, act, nmax, ctx.d)
    return _mu_finite(A, B, C, act, nmax, ctx)


@lru_cache(maxsize=None)
def _mu_range_cached(range_fs: frozenset, act: LoopActivity, budget: int, ctx: GraphCtx, nmax: int) -> ZSeries:
    """exp-ready mu(range; empty) truncated at `budget`, padded to nmax."""
    if budget < 2:
        return ZSeries.zero(nmax)
    mu = loop_measure(range_fs, frozenset(), act, budget, ctx)
    return ZSeries.of(mu.coeffs, nmax)


def alpha0(act: LoopActivity, nmax: int, ctx: GraphCtx, point=None) -> ZSeries:
    """alpha_0 = exp(mu({0})): renormalization by loops through a point."""
    p = ctx.origin() if point is None else point
    return exp_series(loop_measure(frozenset([p]), frozenset(), act, nmax, ctx))


def alpha_renorm(act: LoopActivity, nmax: int, ctx: GraphCtx, point=None) -> ZSeries:
    """alpha = exp(mu({0}; {y})) with y the first lexicographic neighbor."""
    p = ctx.origin() if point is None else point
    y = ctx.neighbors(p)[0]
    return exp_series(loop_measure(frozenset([p]), frozenset([y]), act, nmax, ctx))


# ---------------------------------------------------------------------------
# two-point functions


def _default_origin(ctx: GraphCtx):
    return ctx.origin() if ctx.is_lattice else ctx.vertices()[0]


@lru_cache(maxsize=None)
def two_point_table(act: LoopActivity, nmax: int, ctx: GraphCtx, origin=None) -> SpatialSeries:
    """G(x) for all endpoints at once: direct weighted enumeration from 0."""
    start = _default_origin(ctx) if origin is None else origin
    return walk_sum_by_endpoint(
        WalkConstraint(start=start, end=None, max_len=nmax), act, nmax, ctx
    )


def two_point(x, act: LoopActivity, nmax: int, ctx: GraphCtx, reduced: bool = False, origin=None) -> ZSeries:
    """G(0,x), or the reduced H(0,x) = (1 - delta) G(0,x)."""
    start = _default_origin(ctx) if origin is None else origin
    g = two_point_table(act, nmax, ctx, origin).at(x)
    if reduced and x == start:
        return ZSeries.zero(nmax)
    return g


def reduced_table(act: LoopActivity, nmax: int, ctx: GraphCtx) -> SpatialSeries:
    """H(x) = (1 - delta_{0,x}) G(x)."""
    g = two_point_table(act, nmax, ctx)
    origin = ctx.origin()
    return SpatialSeries.build(
        {x: s for x, s in g.data if x != origin}, nmax
    )


@lru_cache(maxsize=None)
def loop_erased_two_point_table(act: LoopActivity, nmax: int, ctx: GraphCtx) -> SpatialSeries:
    """sum over SAWs eta: 0 -> x of z^{|eta|} exp(mu(range eta)).

    Theorem "LM-Rep" route to the two-point function; must agree with
    two_point_table coefficientwise.
    """
    origin = ctx.origin()
    table: dict = {}
    path = [origin]
    in_path = {origin}

    def add(v, length):
        budget = nmax - length
        mu = _mu_range_cached(frozenset(in_path), act, budget, ctx, nmax)
        contrib = exp_series(mu).shift(length)
        prev = table.get(v)
        table[v] = contrib if prev is None else prev + contrib

    def dfs(v, length):
        add(v, length)
        if length == nmax:
            return
        for w in ctx.neighbors(v):
            if w in in_path:
                continue
            path.append(w)
            in_path.add(w)
            dfs(w, length + 1)
            in_path.remove(w)
            path.pop()

    dfs(origin, 0)
    return SpatialSeries.build(table, nmax)


def loop_erased_two_point(x, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    return loop_erased_two_point_table(act, nmax, ctx).at(x)


def interaction_two_point(x, y, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """I(x,y) = 1 if x=y else 1 - exp(-mu(x,y))."""
    if x == y:
        return ZSeries.one(nmax)
    mu = generalized_loop_measure(
        frozenset([x]), frozenset([y]), frozenset(), act, nmax, ctx
    )
    return ZSeries.one(nmax) - exp_series(-mu)


def i_omega(w, a: int, b: int, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """I^w(a,b): walk-dependent interaction along w between times a < b."""
    if not (0 <= a < b <= len(w) - 1):
        raise PreconditionError("need 0 <= a < b <= |w|")
    if w[a] == w[b]:
        return ZSeries.one(nmax)
    interior = frozenset(w[a + 1 : b])
    mu = generalized_loop_measure(
        frozenset([w[a]]), frozenset([w[b]]), interior, act, nmax, ctx
    )
    return ZSeries.one(nmax) - exp_series(-mu)


# ---------------------------------------------------------------------------
# loop-count tables and the lambda=1 fast path


@dataclass(frozen=True)
class LoopCountTable:
    d: int
    n_max: int
    entries: tuple  # ((n, k) -> count) or ((n, k, x) -> count) as sorted items
    endpoint_resolved: bool

    def count(self, n: int, k: int, x=None):
        key = (n, k) if not self.endpoint_resolved else (n, k, x)
        return dict(self.entries).get(key, 0)

    def c_n(self, n: int, lam) -> Fraction:
        lam = Fraction(lam)
        acc = Fraction(0)
        for key, cnt in self.entries:
            if key[0] == n:
                acc += cnt * lam ** key[1]
        return acc

    def rows(self):
        return dict(self.entries)


def loop_count_table(n_max: int, d: int, endpoint_resolved: bool = False) -> LoopCountTable:
    """Exact counts N(n, k) of n-step walks with k erased loops."""
    ctx = GraphCtx.lattice(d)
    _guard(ctx, n_max)
    origin = ctx.origin()
    entries: dict = {}
    state = LEState(origin, ctx, True)

    def bump(v, length):
        key = (length, state.count, v) if endpoint_resolved else (length, state.count)
        entries[key] = entries.get(key, 0) + 1

    def dfs(v, length):
        bump(v, length)
        if length == n_max:
            return
        for w in ctx.neighbors(v):
            state.push(w)
            dfs(w, length + 1)
            state.pop()

    dfs(origin, 0)
    return LoopCountTable(
        d=d,
        n_max=n_max,
        entries=tuple(sorted(entries.items())),
        endpoint_resolved=endpoint_resolved,
    )


def srw_endpoint_counts(d: int, n: int) -> dict:
    """Exact endpoint counts of n-step simple random walks on Z^d (integer DP)."""
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


def chi_series(act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """Susceptibility: endpoint-summed walk weights.

    lambda = 1 uses the integer convolution fast path (loop weights are
    identically 1 there); everything else enumerates.
    """
    if ctx.is_lattice and act.is_constant and act.value == 1:
        coeffs = []
        cur = {(0,) * ctx.d: 1}
        for n in range(nmax + 1):
            coeffs.append(Fraction(sum(cur.values())))
            if n < nmax:
                nxt: dict = {}
                for xx, c in cur.items():
                    for i in range(ctx.d):
                        for s in (-1, 1):
                            yy = list(xx)
                            yy[i] += s
                            yy = tuple(yy)
                            nxt[yy] = nxt.get(yy, 0) + c
                cur = nxt
        return ZSeries(tuple(coeffs))
    return two_point_table(act, nmax, ctx).sum_over_x()


# ---------------------------------------------------------------------------
# visit identities and bubble chains


def visit_weighted_closed_sum(x, y, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """sum over closed walks at x of |{j>=1: w_j = y}| * weight."""
    _guard(ctx, nmax)
    coeffs = [Fraction(0)] * (nmax + 1)
    constant = act.is_constant
    state = LEState(x, ctx, constant)
    visits = [0]

    def weight():
        if constant:
            return act.value**state.count
        return act.weight_of_keys(state.keys)

    def dfs(v, length):
        if v == x and length >= 1 and visits[0]:
            coeffs[length] += weight() * visits[0]
        if length == nmax:
            return
        rem = nmax - length - 1
        for w in ctx.neighbors(v):
            if ctx.distance(w, x) > rem:
                continue
            state.push(w)
            if w == y:
                visits[0] += 1
            dfs(w, length + 1)
            if w == y:
                visits[0] -= 1
            state.pop()

    dfs(x, 0)
    return ZSeries(tuple(coeffs))


def restricted_alpha0(x, forbidden: frozenset, act, nmax, ctx) -> ZSeries:
    """1 + sum over closed walks at x avoiding `forbidden`."""
    closed = walk_sum(
        WalkConstraint(start=x, end=x, must_avoid=forbidden, min_len=1, max_len=nmax),
        act,
        nmax,
        ctx,
    )
    return ZSeries.one(nmax) + closed


def true_bubble_chain(
    x, y, act: LoopActivity, nmax: int, ctx: GraphCtx, forbidden: frozenset = frozenset()
) -> ZSeries:
    """The bubble chain B(x,y): the pinch-point decomposition of visit sums.

    x = y: alpha0_r (alpha0_r - 1) with alpha0_r restricted to avoid
    `forbidden`. x != y: alpha0_r * (pinch-chain part): sum over k >= 1,
    pinch points x = x_0, .., x_k = y, lambda^k, and constrained
    forward/return pieces. Constant activities only (the pinch factor is a
    bare lambda per pinch).
    """
    a0r = restricted_alpha0(x, forbidden, act, nmax, ctx)
    if x == y:
        return a0r * (a0r - ZSeries.one(nmax))
    return a0r * bubble_chain_pinch_part(x, y, act, nmax, ctx, forbidden)


@lru_cache(maxsize=None)
def bubble_chain_pinch_part(
    x, y, act: LoopActivity, nmax: int, ctx: GraphCtx, forbidden: frozenset = frozenset()
) -> ZSeries:
    """Pile-free part of the bubble chain from x to y != x.

    The chain departs x immediately (no initial closed walks at x) but keeps
    the free closed tail at x after the last return; the full bubble chain of
    the closed-walk visit identity is alpha0_restricted times this.
    """
    if x == y:
        raise PreconditionError("pinch part needs x != y")
    lam = act.constant_value()
    coeffs = [Fraction(0)] * (nmax + 1)
    state = LEState(x, ctx, True)

    # forward phase: pieces i = 1.. from pinch to pinch; P-ranges of the
    # piece loop erasures accumulate avoidance sets.
    pinches = [x]
    P_ranges: list = []  # range(LE(piece)) per forward piece, in order

    def run_return_phase(k, used, fwd_factor):
        # Return pieces i = 1..k: from pinches[k-i+1] to pinches[k-i]. A piece
        # ends at its FIRST arrival at the target (the next shrink boundary);
        # before that it avoids the not-yet-erased part of the loop erasure
        # (earlier pieces' LE ranges minus its own start) but may revisit its
        # start. The last piece additionally carries a free closed tail at x.
        def rt_piece(i, used2, factor2):
            if i > k:
                coeffs[used2] += factor2 * lam**k
                return
            start_v = pinches[k - i + 1]
            target = pinches[k - i]
            block = set(forbidden)
            for m in range(0, k - i + 1):
                block |= P_ranges[m]
            block.discard(start_v)
            block.discard(target)
            later = 0
            for m in range(k - i, 0, -1):
                later += ctx.distance(pinches[m], pinches[m - 1])
            st = LEState(start_v, ctx, True)
            last = i == k

            def tail(v, ln):
                # free closed tail at x after the final shrink
                if v == x:
                    rt_piece(k + 1, used2 + ln, factor2 * lam**st.count)
                for w in ctx.neighbors(v):
                    if w in forbidden:
                        continue
                    if used2 + ln + 1 + ctx.distance(w, x) > nmax:
                        continue
                    st.push(w)
                    tail(w, ln + 1)
                    st.pop()

            def dfs(v, ln):
                for w in ctx.neighbors(v):
                    if w == target:
                        if used2 + ln + 1 + later > nmax:
                            continue
                        st.push(w)
                        if last:
                            tail(w, ln + 1)
                        else:
                            rt_piece(i + 1, used2 + ln + 1, factor2 * lam**st.count)
                        st.pop()
                        continue
                    if w in block:
                        continue
                    if used2 + ln + 1 + ctx.distance(w, target) + later > nmax:
                        continue
                    st.push(w)
                    dfs(w, ln + 1)
                    st.pop()

            dfs(start_v, 0)

        rt_piece(1, used, fwd_factor)

    def fw_piece(i, used, factor):
        start_v = pinches[-1]
        avoid = set(forbidden)
        avoid.add(x)
        for P in P_ranges:
            avoid |= P
        st = LEState(start_v, ctx, True)
        need_back = ctx.distance(y, x)

        def dfs(v, ln):
            if ln >= 1:
                pinches.append(v)
                P_ranges.append(frozenset(st.stack))
                f2 = factor * lam**st.count
                if v == y:
                    run_return_phase(i, used + ln, f2)
                else:
                    fw_piece(i + 1, used + ln, f2)
                P_ranges.pop()
                pinches.pop()
            for w in ctx.neighbors(v):
                if w in avoid:
                    continue
                if used + ln + 1 + ctx.distance(w, y) + need_back > nmax:
                    continue
                st.push(w)
                dfs(w, ln + 1)
                st.pop()

        dfs(start_v, 0)

    fw_piece(1, 0, Fraction(1))
    return ZSeries(tuple(coeffs))


def upper_bubble_chain(x, y, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """BC upper bound: alpha0 sum_k lambda^k (Hbar^2)^{*k}(y-x); x=y gives
    alpha0(alpha0-1)."""
    lam = act.constant_value()
    a0 = alpha0(act, nmax, ctx)
    if x == y:
        return a0 * (a0 - ZSeries.one(nmax))
    if not ctx.is_lattice:
        raise PreconditionError("upper bubble chain is lattice-only")
    a0_inv = reciprocal(a0)
    h = reduced_table(act, nmax, ctx)
    hbar = h.scale(a0_inv)
    bbar = SpatialSeries.build({p: s * s for p, s in hbar.data}, nmax)
    target = tuple(b - a for a, b in zip(x, y))
    acc = ZSeries.zero(nmax)
    power = None
    lam_k = Fraction(1)
    for _ in range(1, nmax // 2 + 1):
        power = bbar if power is None else spatial_convolve(power, bbar)
        if not power.data:
            break
        lam_k *= lam
        acc = acc + power.at(target) * lam_k
    return a0 * acc


def split_visit_sum(x, y, b, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """LHS of the splitting identity: walks x->y never returning to x,
    weighted by the number of visits to b (j >= 1)."""
    if x == y or b == x:
        raise PreconditionError("need x != y and b != x")
    _guard(ctx, nmax)
    coeffs = [Fraction(0)] * (nmax + 1)
    constant = act.is_constant
    state = LEState(x, ctx, constant)
    visits = [0]

    def weight():
        if constant:
            return act.value**state.count
        return act.weight_of_keys(state.keys)

    def dfs(v, length):
        if v == y and visits[0]:
            coeffs[length] += weight() * visits[0]
        if length == nmax:
            return
        rem = nmax - length - 1
        for w in ctx.neighbors(v):
            if w == x:
                continue
            if ctx.distance(w, y) > rem + 1:
                continue
            state.push(w)
            if w == b:
                visits[0] += 1
            dfs(w, length + 1)
            if w == b:
                visits[0] -= 1
            state.pop()

    dfs(x, 0)
    return ZSeries(tuple(coeffs))


def split_visit_sum_rhs(x, y, b, act: LoopActivity, nmax: int, ctx: GraphCtx) -> ZSeries:
    """RHS of the splitting identity: split at the last loop-erasure point a,
    with a restricted bubble chain from a to b."""
    if x == y or b == x:
        raise PreconditionError("need x != y and b != x")
    _guard(ctx, nmax)
    acc = [Fraction(0)] * (nmax + 1)
    constant = act.is_constant
    state = LEState(x, ctx, constant)

    def weight():
        if constant:
            return act.value**state.count
        return act.weight_of_keys(state.keys)

    def handle_omega1(a, length):
        le_range = frozenset(state.stack)
        w1 = weight()
        rem = nmax - length
        inner = walk_sum(
            WalkConstraint(
                start=a,
                end=y,
                must_avoid=le_range - {a},
                no_return_to_start=True,
                max_len=rem,
            ),
            act,
            rem,
            ctx,
        )
        if inner.is_zero():
            return
        # Visits at the split point come with a free pile of closed walks at
        # a (the part of the walk between the mark and the last return to a);
        # genuine chains to b != a depart a at once and may not exist for
        # a = x (they would revisit x).
        if a == b:
            factor = restricted_alpha0(a, le_range - {a}, act, rem, ctx)
        else:
            factor = ZSeries.zero(rem)
        if a != x and a != b:
            factor = factor + bubble_chain_pinch_part(
                a, b, act, rem, ctx, forbidden=le_range - {a}
            )
        term = factor * inner
        for n, c in enumerate(term.coeffs):
            if c and length + n <= nmax:
                acc[length + n] += w1 * c

    def dfs(v, length):
        handle_omega1(v, length)
        if length == nmax:
            return
        for w in ctx.neighbors(v):
            if w == x:
                continue
            state.push(w)
            dfs(w, length + 1)
            state.pop()

    dfs(x, 0)
    return ZSeries(tuple(acc))


def diagrams(act: LoopActivity, nmax: int, ctx: GraphCtx) -> dict:
    """Triangle and square diagrams in x-space: (H*H*H)(0) and (H*H*H*H)(0)."""
    h = reduced_table(act, nmax, ctx)
    h2 = spatial_convolve(h, h)
    h3 = spatial_convolve(h2, h)
    h4 = spatial_convolve(h3, h)
    origin = ctx.origin()
    return {"triangle": h3.at(origin), "square": h4.at(origin)}
