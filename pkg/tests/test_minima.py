import random
from fractions import Fraction

import pytest

from surfhom.catalog import candidate_pool, load_example
from surfhom.homology import class_vector, homology
from surfhom.minima import (
    MinimaTrace,
    WeightedGraph,
    compare_bases,
    enumerate_cycles,
    is_globally_minimal,
    is_straight_cycle,
    make_cycle,
    successive_minima_I,
    successive_minima_II,
    verify_lemma_procI_minimal,
)
from surfhom.ribbon import RibbonGraph, ValidationError, schema_to_ribbon, surface_invariants
from surfhom.zlattice import as_int_matrix, det_int, subgroup_index

from .util import random_ribbon_graph


def unit_weights(R):
    return WeightedGraph(R, (Fraction(1),) * R.n_edges)


def torus_graph():
    return unit_weights(schema_to_ribbon("a b a' b'"))


def attach_all(G, cycles):
    H = homology(G.ribbon)
    return [c.with_class(H.class_of_walk(c.darts)) for c in cycles]


# ---------------------------------------------------------------------------
# enumeration

def test_enumerate_soul_curves_only():
    b = load_example("example2G")
    cycles = enumerate_cycles(b.weights, Fraction(2))
    assert len(cycles) == 4
    assert all(c.length == 2 for c in cycles)
    # nothing else below length 4 on this graph
    assert len(enumerate_cycles(b.weights, Fraction(7, 2))) == 4


def test_enumerate_genus4_spectrum():
    b = load_example("example4")
    pool = candidate_pool(b, Fraction(13, 12))
    assert tuple(c.name for c in pool) == tuple(f"u{k:02d}" for k in range(1, 11))
    assert [c.length for c in pool] == sorted(
        Fraction(200 + k, 200) for k in range(1, 11)
    )
    # the two three-edge loops exceed 13/12 but not 1.13
    wider = candidate_pool(b, Fraction(113, 100))
    extras = [c for c in wider if c.name is None]
    assert len(extras) == 2
    assert all(c.length == Fraction(2693, 2400) for c in extras)
    assert all(c.length > Fraction(13, 12) for c in extras)


def test_enumerate_single_loop_below_bound():
    R = RibbonGraph(((0, 1),), (1, 0))
    G = unit_weights(R)
    assert enumerate_cycles(G, Fraction(1, 2)) == ()
    assert len(enumerate_cycles(G, Fraction(1))) == 1


def test_enumerate_dedupes_rotations_and_reflections():
    G = torus_graph()
    cycles = enumerate_cycles(G, Fraction(2))
    keys = [c.key for c in cycles]
    assert len(keys) == len(set(keys))
    # a, b, and the two two-edge composites a*b and a*b^-1
    assert [c.length for c in cycles] == [1, 1, 2, 2]


# ---------------------------------------------------------------------------
# procedures

def test_procedure_I_on_soulG():
    b = load_example("example2G")
    pool = candidate_pool(b, Fraction(4))
    tr = successive_minima_I(pool, 0, 4)
    assert sorted(c.name for c in tr.selected) == ["alpha", "beta", "delta", "gamma"]
    assert subgroup_index([c.cls for c in tr.selected]) == 2
    # over the two-element field one systole is rejected as dependent
    # and a four-cycle completes the basis
    tr2 = successive_minima_I(pool, 2, 4)
    assert len(tr2.selected) == 4
    assert [c.length for c in tr2.selected] == [2, 2, 2, 4]
    rejected = [e.cycle.name for e in tr2.events if e.decision == "rejected"]
    assert set(rejected[:1]) < {"alpha", "beta", "gamma", "delta"}
    from surfhom.zlattice import _rank_mod_p

    assert _rank_mod_p([c.cls for c in tr2.selected], 2) == 4


def test_procedure_I_empty():
    tr = successive_minima_I((), 0, 4)
    assert tr.selected == () and tr.events == ()


def test_procedure_II_example4():
    b = load_example("example4")
    pool = candidate_pool(b, Fraction(13, 12))
    tr = successive_minima_II(pool)
    assert tuple(c.name for c in tr.selected) == (
        "u01", "u02", "u03", "u04", "u05", "u06", "u07", "u10"
    )
    assert tuple(e.cycle.name for e in tr.events if e.decision == "rejected") == (
        "u08", "u09"
    )
    assert tr.halting == "complete"
    assert abs(det_int([c.cls for c in tr.selected])) == 1


def test_procedure_II_on_known_basis():
    G = torus_graph()
    cycles = attach_all(G, enumerate_cycles(G, Fraction(1)))
    tr = successive_minima_II(cycles)
    assert len(tr.selected) == 2
    assert [c.length for c in tr.selected] == [1, 1]


def test_procedures_coincide_over_fields():
    b = load_example("example4")
    pool = candidate_pool(b, Fraction(13, 12))
    for p in (2, 3):
        t1 = successive_minima_I(pool, p, 8)
        t2 = successive_minima_II(pool, p)
        assert [c.length for c in t1.selected] == [c.length for c in t2.selected]


def test_procedure_reruns_identical():
    b = load_example("example2G")
    pool = candidate_pool(b, Fraction(4))
    assert successive_minima_I(pool, 0, 4) == successive_minima_I(pool, 0, 4)


def test_unsorted_candidates_rejected():
    G = torus_graph()
    cycles = attach_all(G, enumerate_cycles(G, Fraction(2)))
    with pytest.raises(ValidationError):
        successive_minima_I(list(reversed(cycles)), 0, 2)


# ---------------------------------------------------------------------------
# the partial order

def test_compare_bases():
    b = load_example("example4")
    pool = candidate_pool(b, Fraction(13, 12))
    by = {c.name: c for c in pool}
    A = [by[f"u{k:02d}"] for k in (2, 3, 4, 5, 6, 7, 8, 9)]
    B = [by[f"u{k:02d}"] for k in (1, 2, 3, 4, 5, 6, 7, 10)]
    assert compare_bases(A, B) == "incomparable"
    assert compare_bases(A, A) == "equal"
    halved = [
        type(c)(c.darts, c.length / 2, c.key, c.cls, c.name) for c in A
    ]
    assert compare_bases(halved, A) == "A<B"
    with pytest.raises(ValidationError):
        compare_bases(A, B[:4])


def test_globally_minimal_torus():
    G = torus_graph()
    cycles = attach_all(G, enumerate_cycles(G, Fraction(2)))
    tr = successive_minima_I(cycles, 0, 2)
    ok, witness = is_globally_minimal(tr.selected, cycles)
    assert ok and witness is None


def test_globally_minimal_example4_witness():
    b = load_example("example4")
    pool = candidate_pool(b, Fraction(13, 12))
    tr = successive_minima_II(pool)
    ok, witness = is_globally_minimal(tr.selected, pool)
    assert not ok
    assert tuple(sorted(c.name for c in witness)) == tuple(
        f"u{k:02d}" for k in range(2, 10)
    )


def test_globally_minimal_remark45G():
    b = load_example("remark45G")
    pool = candidate_pool(b, Fraction(4))
    basis = [b.cycle(n) for n in ("alpha", "beta", "gamma", "eta")]
    ok, _ = is_globally_minimal(basis, pool)
    assert ok


def test_verify_lemma_on_torus_and_soulG_mod2():
    G = torus_graph()
    cycles = attach_all(G, enumerate_cycles(G, Fraction(2)))
    tr = successive_minima_I(cycles, 0, 2)
    assert verify_lemma_procI_minimal(tr, cycles)
    b = load_example("example2G")
    pool = candidate_pool(b, Fraction(4))
    tr2 = successive_minima_I(pool, 2, 4)
    assert verify_lemma_procI_minimal(tr2, pool, 2)
    ok, _ = is_globally_minimal(tr2.selected, pool, 2)
    assert ok


def test_verify_lemma_randomized():
    rng = random.Random(99)
    done = 0
    while done < 12:
        R = random_ribbon_graph(rng, max_edges=5)
        inv = surface_invariants(R)
        if inv.genus == 0:
            continue
        weights = tuple(Fraction(rng.randrange(1, 12), 4) for _ in range(R.n_edges))
        G = WeightedGraph(R, weights)
        total = sum(weights, Fraction(0)) * 2
        cycles = attach_all(G, enumerate_cycles(G, total))
        if len(cycles) > 12:
            continue
        tr = successive_minima_I(cycles, 0, 2 * inv.genus)
        M = [c.cls for c in tr.selected]
        if len(M) < 2 * inv.genus or abs(det_int(as_int_matrix(M))) != 1:
            continue
        assert verify_lemma_procI_minimal(tr, cycles)
        ok, _ = is_globally_minimal(tr.selected, cycles)
        assert ok
        done += 1


# ---------------------------------------------------------------------------
# straightness

def test_straight_soul_curves():
    b = load_example("example2G")
    for n in ("alpha", "beta", "gamma", "delta"):
        assert is_straight_cycle(b.weights, b.cycle(n))


def test_straight_detects_heavy_edge():
    # triangle u-v-w with a heavy side u-w, bypassed by a light chord
    R = RibbonGraph(((0, 4, 6), (1, 2), (3, 5, 7)), (1, 0, 3, 2, 5, 4, 7, 6))
    G = WeightedGraph(R, (Fraction(1), Fraction(1), Fraction(5), Fraction(1)))
    heavy_triangle = (0, 2, 5)
    assert not is_straight_cycle(G, heavy_triangle)
    light_triangle = (0, 2, 7)
    assert is_straight_cycle(G, light_triangle)


def test_straight_single_loop():
    R = RibbonGraph(((0, 1),), (1, 0))
    G = unit_weights(R)
    assert is_straight_cycle(G, (0,))


def test_procedure_II_is_locally_minimal():
    # no single swap from the pool produces a strictly smaller basis
    b = load_example("example4")
    pool = candidate_pool(b, Fraction(13, 12))
    tr = successive_minima_II(pool)
    selected = list(tr.selected)
    unused = [c for c in pool if c.key not in {s.key for s in selected}]
    for i in range(len(selected)):
        for cand in unused:
            swapped = selected[:i] + [cand] + selected[i + 1:]
            M = as_int_matrix([c.cls for c in swapped])
            if abs(det_int(M)) != 1:
                continue
            assert compare_bases(swapped, selected) != "A<B"
