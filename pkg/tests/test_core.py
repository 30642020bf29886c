from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lww.core import (
    GraphCtx,
    LoopActivity,
    PreconditionError,
    classify,
    concat,
    diamond_concat,
    loop_erase,
    loop_erase_last_exit,
    neighbors,
    preimage_segments,
    sap_key,
    shrinking_times,
    single_loop_erase,
    walk_weight,
)

CTX1 = GraphCtx.lattice(1)
CTX2 = GraphCtx.lattice(2)


def w1(*xs):
    return tuple((x,) for x in xs)


@st.composite
def lattice_walks(draw, d=2, max_steps=10):
    n = draw(st.integers(min_value=0, max_value=max_steps))
    pos = (0,) * d
    out = [pos]
    for _ in range(n):
        axis = draw(st.integers(min_value=0, max_value=d - 1))
        sgn = draw(st.sampled_from((-1, 1)))
        q = list(pos)
        q[axis] += sgn
        pos = tuple(q)
        out.append(pos)
    return tuple(out)


def test_neighbors_orders():
    assert neighbors((0,), CTX1) == [(-1,), (1,)]
    assert neighbors((0, 0), CTX2) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    tri = GraphCtx.finite([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    assert neighbors(0, tri) == [1, 2]


def test_concat():
    assert concat(w1(0, 1), w1(1, 2)) == w1(0, 1, 2)
    walk = w1(0, 1)
    assert concat(walk, (walk[-1],)) == walk
    assert concat(((0, 0), (1, 0), (0, 0)), ((0, 0), (0, 1))) == (
        (0, 0),
        (1, 0),
        (0, 0),
        (0, 1),
    )
    with pytest.raises(PreconditionError):
        concat(w1(0, 1), w1(2, 3))


def test_diamond_concat():
    assert diamond_concat(w1(0), w1(1), CTX1) == w1(0, 1)
    assert diamond_concat(w1(0, 1), w1(2, 3), CTX1) == w1(0, 1, 2, 3)
    with pytest.raises(PreconditionError):
        diamond_concat(w1(0), w1(2), CTX1)


def test_classify():
    assert classify(w1(0, 1, 0)) == "SAP"
    assert classify(w1(0, 1, 2)) == "SAW"
    assert classify(w1(0, 1, 0, 1, 0)) == "Loop"
    assert classify(w1(0, 1, 2, 1)) == "General"
    assert classify(w1(0)) == "SAW"


def test_single_loop_erase():
    assert single_loop_erase(w1(0, 1, 0, -1)) == (w1(0, -1), w1(0, 1, 0))
    assert single_loop_erase(w1(0, 1, 2, 1)) == (w1(0, 1), w1(1, 2, 1))
    assert single_loop_erase(w1(0, 1, 2)) == (w1(0, 1, 2), None)


def test_loop_erase_examples():
    saw, rec, erased = loop_erase(w1(0, 1, 0, 1, 0))
    assert saw == w1(0) and rec.count == 2
    saw, rec, _ = loop_erase(w1(0, 1, 0, -1))
    assert saw == w1(0, -1) and rec.count == 1


@settings(max_examples=200, deadline=None)
@given(lattice_walks())
def test_loop_erase_properties(w):
    saw, rec, erased = loop_erase(w)
    assert len(set(saw)) == len(saw)
    assert saw[0] == w[0] and saw[-1] == w[-1]
    assert loop_erase(saw)[0] == saw
    assert loop_erase_last_exit(w) == saw
    assert rec.count == len(erased)
    for loop in erased:
        assert classify(loop) == "SAP"


def test_le_equals_last_exit_exhaustive_d2():
    # all walks of length <= 6, d=2
    stack = [((0, 0),)]
    while stack:
        w = stack.pop()
        assert loop_erase_last_exit(w) == loop_erase(w)[0]
        if len(w) - 1 < 6:
            for nb in CTX2.neighbors(w[-1]):
                stack.append(w + (nb,))


def test_preimage_segments_trivial():
    w = w1(0, 1, 2)
    assert preimage_segments(w, (0, 2)) == [w]
    looped = w1(0, 1, 0, -1)
    assert preimage_segments(looped, (0, 1)) == [looped]


@settings(max_examples=150, deadline=None)
@given(lattice_walks(max_steps=12), st.randoms())
def test_preimage_segments_reassembly(w, rnd):
    saw, _, _ = loop_erase(w)
    k = len(saw) - 1
    if k == 0:
        assert preimage_segments(w, (0,)) == [w]
        return
    interior = sorted(rnd.sample(range(1, k), rnd.randint(0, k - 1))) if k > 1 else []
    cuts = [0] + interior + [k]
    segs = preimage_segments(w, cuts)
    # diamond reassembly
    rebuilt = segs[0]
    for s in segs[1:]:
        rebuilt = diamond_concat(rebuilt, s, CTX2)
    assert rebuilt == w
    # per-segment loop erasure tiles LE(w)
    for i, s in enumerate(segs):
        le = loop_erase(s)[0]
        if i < len(segs) - 1:
            assert le == saw[cuts[i] : cuts[i + 1]]
        else:
            assert le == saw[cuts[i] :]
    # segments sit after the last exits: segment i never revisits the strictly
    # earlier part of the loop erasure
    for i, s in enumerate(segs):
        assert not (set(s) & set(saw[: cuts[i]]))


def test_segment_start_revisit_counterexample():
    # A tempting invariant ("segments after the first never revisit their
    # start") is false for the diamond decomposition: the second segment
    # here revisits its start vertex. Frozen counterexample.
    w = w1(0, 1, 2, 1, 2, 3)
    segs = preimage_segments(w, (0, 1, 3))
    assert segs[1][0] in segs[1][1:]


def test_shrinking_times():
    eta = w1(0, 1, 2)
    # never hits the proper prefix of eta
    omega = w1(2, 3, 4)
    assert shrinking_times(eta, omega) == []
    # a hit on the erased portion is not a shrinking time (Fig. 5 pattern):
    # omega first hits eta at 1, erasing (1, 2); its later visit to 2 is not
    # a shrinking time, while the visit to 0 is.
    eta2 = ((0, 0), (1, 0), (2, 0))
    omega2 = ((2, 0), (2, 1), (1, 1), (1, 0), (2, 0), (1, 0), (1, 1), (0, 1), (0, 0))
    st_times = shrinking_times(eta2, omega2)
    assert st_times == [(3, 1), (8, 0)]
    ts = [t for _, t in st_times]
    assert ts == sorted(ts, reverse=True)
    with pytest.raises(PreconditionError):
        shrinking_times(eta, w1(5, 6))


@settings(max_examples=100, deadline=None)
@given(lattice_walks(max_steps=10))
def test_shrinking_times_decreasing(w):
    saw, _, _ = loop_erase(w)
    out = shrinking_times(saw, tuple(reversed(w)))
    ts = [t for _, t in out]
    assert ts == sorted(ts, reverse=True)
    ss = [s for s, _ in out]
    assert ss == sorted(ss)


def test_sap_key_quotient():
    base = ((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))
    key = sap_key(base)
    # rotation of starting vertex
    assert sap_key(((1, 0), (1, 1), (0, 1), (0, 0), (1, 0))) == key
    # orientation reversal
    assert sap_key(tuple(reversed(base))) == key
    # translation + 90 degree rotation
    rot = tuple((-y + 2, x - 1) for x, y in base)
    assert sap_key(rot) == key
    # finite-graph mode: only rotation/reversal
    tri = GraphCtx.finite([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    assert sap_key((0, 1, 2, 0), tri) == sap_key((1, 2, 0, 1), tri) == sap_key((0, 2, 1, 0), tri)


def test_walk_weight():
    act = LoopActivity.constant(Fraction(1, 2))
    assert walk_weight(w1(0, 1, 2), act) == (2, Fraction(1))
    assert walk_weight(w1(0, 1, 0, -1), act) == (3, Fraction(1, 2))
    one = LoopActivity.constant(1)
    assert walk_weight(w1(0, 1, 0, 1, 0), one) == (4, Fraction(1))


def test_walk_weight_table_mode():
    trivial = sap_key(w1(0, 1, 0))
    act = LoopActivity.of_table({trivial: Fraction(3)}, default=Fraction(5))
    # two trivial loops -> 3 * 3
    assert walk_weight(w1(0, 1, 0, 1, 0), act)[1] == Fraction(9)
    # a square loop in d=2 falls back to the default
    sq = ((0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (0, -1))
    assert walk_weight(sq, act)[1] == Fraction(5)


def test_activities_nonnegative():
    with pytest.raises(PreconditionError):
        LoopActivity.constant(Fraction(-1))
    with pytest.raises(PreconditionError):
        LoopActivity.of_table({}, default=Fraction(-1, 2))


def test_zero_step_walk_is_valid():
    act = LoopActivity.constant(Fraction(7))
    assert walk_weight(((0, 0),), act) == (0, Fraction(1))
    assert classify(((0, 0),)) == "SAW"


def test_invalid_cut_times():
    w = w1(0, 1, 2)
    for cuts in ((1, 2), (0,), (0, 1, 1, 2), (0, 3)):
        with pytest.raises(PreconditionError):
            preimage_segments(w, cuts)


def test_walk_json_round_trip():
    from lww.core import walk_from_json, walk_to_json

    w = ((0, 0), (1, 0), (0, 0))
    assert walk_to_json(w) == [[0, 0], [1, 0], [0, 0]]
    assert walk_from_json(walk_to_json(w)) == w
