"""Acceptance suite: one test per exit criterion, each printing a pass line.

Criteria 7-9 share a corpus (named fixtures, the exhaustive class of small
systems up to isomorphism, and 1000 seeded random systems) built once per
module.  Run with ``pytest tests/test_acceptance.py -v -s`` to see the
per-criterion lines and timings.
"""

import itertools
import math
import time

import pytest

from linsys import (
    canonical_form,
    c34_explicit,
    c34_from_pi3,
    c_explicit,
    chromatic_number_3h,
    clique_number_3h,
    brute_force_transversal,
    brute_force_two_packing,
    embeds_as_subsystem,
    enumerate_c44,
    enumerate_c44_exhaustive,
    find_triangles,
    incidence_graph,
    is_transversal,
    is_two_packing,
    max_degree,
    projective_plane,
    three_hypergraph,
    transversal_number,
    triangle_delete,
    two_packing_number,
    validate_verdict,
    zykov_planar,
)
from linsys.core import _canonical_key
from linsys.verify import Instance, exhaustive_small, fixture_instances, random_instances

from test_constructions import _c_remark_bullets


def _ok(criterion, detail):
    print(f"PASS criterion {criterion}: {detail}", flush=True)


@pytest.fixture(scope="module")
def corpus():
    """fixtures + exhaustive class (<= 9 points, <= 7 lines) + 1000 randoms."""
    t0 = time.perf_counter()
    instances = list(fixture_instances())
    sweep = [
        Instance(f"exhaustive-{i}", s)
        for i, s in enumerate(exhaustive_small(9, 7, (2, 4)))
    ]
    randoms = random_instances(seed=2026, count=1000)
    build = time.perf_counter() - t0
    return instances, sweep + randoms, build


def test_criterion_1_projective_plane_numbers():
    for q, expected in ((3, 4), (5, 6)):
        s = projective_plane(q).system
        t0 = time.perf_counter()
        tau = transversal_number(s)
        nu2 = two_packing_number(s)
        elapsed = time.perf_counter() - t0
        assert tau.value == expected and nu2.value == expected
        assert is_transversal(s, tau.members)
        assert is_two_packing(s, nu2.members)
        assert elapsed < 10.0
    _ok(1, "tau = nu2 = q+1 for the planes of order 3 and 5")


def test_criterion_2_numbers_witnesses_and_no_three_point_transversal():
    s = c34_explicit().system
    tau = transversal_number(s)
    nu2 = two_packing_number(s)
    assert tau.value == 4 and nu2.value == 4
    assert is_transversal(s, tau.members)
    assert is_two_packing(s, nu2.members)
    # the documented 4-line packing {p,x2,y4},{q,x3,y3},{x1,x3,y4},{x1,x2,y3}
    assert is_two_packing(s, {7, 6, 3, 5})
    t0 = time.perf_counter()
    assert not any(
        is_transversal(s, triple) for triple in itertools.combinations(range(8), 3)
    )
    assert time.perf_counter() - t0 < 1.0
    _ok(2, "tau = nu2 = 4 with valid witnesses and no 3-point transversal")


def test_criterion_2_documented_transversal_witness():
    # The witness {x1,x2,y1,y4} documented next to the 8-line table does NOT
    # hit the line {q,x3,y3}: the table admits 30 transversals of size 4 and
    # the nearest is {x1,x2,y1,y3}.  Kept as stated to record the defect; see
    # the decisions notes.  This check is expected to fail.
    s = c34_explicit().system
    witness = {2, 3, 5, 7}  # p=0 q=1 x1=2 x2=3 x3=4 y1=5 y3=6 y4=7
    assert is_transversal(s, witness), (
        "documented witness {x1,x2,y1,y4} misses line {q,x3,y3}; "
        "{x1,x2,y1,y3} is a valid transversal"
    )
    _ok("2b", "documented transversal witness validates")


def test_criterion_3_derivation_is_well_defined():
    t0 = time.perf_counter()
    pi3 = projective_plane(3).system
    target = canonical_form(c34_explicit().system)
    pairs = [
        (k, l)
        for k in range(13)
        for l in range(13)
        if k not in pi3.lines[l]
    ]
    assert len(pairs) == 117
    for k, l in pairs:
        derived = c34_from_pi3(k, l).system
        assert canonical_form(derived) == target, (k, l)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _ok(3, f"all 117 point/line deletions give one class ({elapsed:.1f}s)")


def test_criterion_4_triangle_deletions_single_class():
    t0 = time.perf_counter()
    plane = projective_plane(3)
    tris = find_triangles(plane.system)
    assert len(tris) == 234
    target = canonical_form(c_explicit().system)
    labels = set()
    for tri in tris:
        result = triangle_delete(plane, tri).system
        labels.add(canonical_form(result).label)
        _c_remark_bullets(result)
    assert labels == {target.label}
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _ok(4, f"all 234 triangle deletions give the one class with its properties ({elapsed:.1f}s)")


def test_criterion_5_family_enumeration_validates():
    t0 = time.perf_counter()
    pi3 = projective_plane(3).system
    c_sys = c_explicit().system
    members = enumerate_c44()
    assert members
    for ns in members:
        s = ns.system
        assert transversal_number(s).value == 4
        assert two_packing_number(s).value == 4
        assert embeds_as_subsystem(c_sys, s) is not None
        assert embeds_as_subsystem(s, pi3) is not None
    fast_keys = sorted(_canonical_key(ns.system) for ns in members)
    slow_keys = sorted(_canonical_key(s) for s in enumerate_c44_exhaustive())
    assert fast_keys == slow_keys
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    _ok(5, f"{len(members)} members validated; fast and oracle enumerations agree ({elapsed:.1f}s)")


def test_criterion_6_equality_family_not_planar():
    systems = [("c34", c34_explicit().system)]
    systems += [(ns.name, ns.system) for ns in enumerate_c44()]
    for name, s in systems:
        t0 = time.perf_counter()
        verdict = zykov_planar(s)
        assert not verdict.planar, name
        assert validate_verdict(incidence_graph(s), verdict), name
        assert time.perf_counter() - t0 < 10.0
    _ok(6, f"{len(systems)} extremal systems have validated non-planarity witnesses")


def test_criterion_7_property_suite(corpus):
    _, sweep, build = corpus
    t0 = time.perf_counter()
    n_exhaustive = sum(1 for inst in sweep if inst.name.startswith("exhaustive"))
    n_random = len(sweep) - n_exhaustive
    assert n_random >= 1000
    for inst in sweep:
        s = inst.system
        tau = transversal_number(s)
        nu2 = two_packing_number(s)
        assert tau == brute_force_transversal(s)
        assert nu2 == brute_force_two_packing(s)
        inst.__dict__["tau"] = tau.value  # reuse in criteria 8 and 9
        inst.__dict__["nu2"] = nu2.value
        if nu2.value >= 2 and s.n_lines > nu2.value:
            assert math.ceil(nu2.value / 2) <= tau.value
            assert tau.value <= nu2.value * (nu2.value - 1) // 2
        if 3 <= s.n_lines <= 13:
            h = three_hypergraph(s)
            assert clique_number_3h(h) == nu2.value
            assert chromatic_number_3h(h) == tau.value
        delta = max_degree(s)
        assert (delta <= 2) == (nu2.value == s.n_lines)
        if s.n_lines > 2:
            assert (nu2.value == 2) == (tau.value == 1)
        if nu2.value == 3 and s.n_lines > 3:
            assert tau.value == 2
        if nu2.value == 4 and delta >= 5:
            assert tau.value <= 3
    elapsed = build + (time.perf_counter() - t0)
    assert elapsed < 600.0
    _ok(7, f"{n_exhaustive} exhaustive + {n_random} random instances, all properties hold ({elapsed:.0f}s)")


def test_criterion_8_packing_four_classification(corpus):
    fixtures, sweep, _ = corpus
    family_keys = {_canonical_key(ns.system) for ns in enumerate_c44()}
    family_keys.add(_canonical_key(c34_explicit().system))
    checked = equality_cases = 0
    for inst in fixtures + sweep:
        if inst.nu2 != 4 or inst.n_lines <= 4:
            continue
        checked += 1
        assert inst.tau <= 4, inst.name
        if inst.tau == 4:
            equality_cases += 1
            assert _canonical_key(inst.system) in family_keys, inst.name
    assert checked > 0 and equality_cases > 0
    _ok(8, f"{checked} instances with nu2=4: tau <= 4, {equality_cases} equality cases all known")


def test_criterion_9_planar_proxy_sweep(corpus):
    fixtures, sweep, _ = corpus
    checked = 0
    for inst in fixtures + sweep:
        if inst.nu2 not in (2, 3, 4) or inst.n_lines <= inst.nu2:
            continue
        if not inst.planar:
            continue
        checked += 1
        assert inst.tau <= inst.nu2 - 1, inst.name
    assert checked > 0
    _ok(9, f"{checked} planar instances all satisfy tau <= nu2 - 1")
