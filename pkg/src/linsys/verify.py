"""Executable claim harness.

Every structural claim the toolkit is built around is encoded as a check
over a corpus of instances (named fixtures, an exhaustive class of small
systems up to isomorphism, and seeded random systems) and produces a
:class:`ClaimReport`.  A report passes only when at least one instance was
actually checked and no counterexample survived revalidation.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from functools import cached_property

from .core import (
    LinearSystem,
    TooLarge,
    _canonical_key,
    canonical_relabel,
    embeds_as_subsystem,
    max_degree,
    new_linear_system,
    three_hypergraph,
)
from .constructions import (
    GenerationExhausted,
    c34_explicit,
    c_explicit,
    enumerate_c44,
    projective_plane,
    random_linear_system,
)
from .files import from_instance_dict, to_instance_dict
from .planarity import zykov_planar
from .solvers import (
    brute_force_transversal,
    brute_force_two_packing,
    chromatic_number_3h,
    clique_number_3h,
    transversal_number,
    two_packing_number,
)

_ORACLE_OK = (20, 20)           # revalidation guard (points, lines)
_HYPERGRAPH_GUARD = 13          # chromatic cross-check vertex bound


class HarnessError(Exception):
    """Internal inconsistency: the solver and the brute-force oracle disagree
    on a reported counterexample, so the counterexample cannot be trusted."""


@dataclass
class ClaimReport:
    claim_id: str
    statement: str
    instances_checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.instances_checked > 0 and not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "instances_checked": self.instances_checked,
            "counterexamples": self.counterexamples,
            "wall_time": round(self.wall_time, 4),
            "passed": self.passed,
        }


class Instance:
    """A named system plus cached derived data shared across checks."""

    def __init__(self, name: str, system: LinearSystem):
        self.name = name
        self.system = system

    @cached_property
    def tau(self) -> int:
        return transversal_number(self.system).value

    @cached_property
    def nu2(self) -> int:
        return two_packing_number(self.system).value

    @cached_property
    def delta(self) -> int:
        return max_degree(self.system)

    @property
    def n_lines(self) -> int:
        return self.system.n_lines

    @cached_property
    def planar(self) -> bool:
        return zykov_planar(self.system).planar

    def to_dict(self) -> dict:
        return to_instance_dict(self.system, name=self.name)


def _revalidated_counterexample(inst: Instance, description: str) -> dict:
    """Serialize a violating instance, reload it and recompute both numbers
    through the solver and, within guards, the brute-force oracle.  Disagreeing
    routes indicate a solver bug and abort the run instead of reporting."""
    doc = inst.to_dict()
    reloaded = from_instance_dict(doc)
    tau = transversal_number(reloaded).value
    nu2 = two_packing_number(reloaded).value
    if reloaded.n_points <= _ORACLE_OK[0] and reloaded.n_lines <= _ORACLE_OK[1]:
        if brute_force_transversal(reloaded).value != tau:
            raise HarnessError(f"transversal solver/oracle mismatch on {inst.name}")
        if brute_force_two_packing(reloaded).value != nu2:
            raise HarnessError(f"2-packing solver/oracle mismatch on {inst.name}")
    return {
        "instance": doc,
        "tau": tau,
        "nu2": nu2,
        "max_degree": max_degree(reloaded),
        "violation": description,
    }


def _report(claim_id: str, statement: str) -> ClaimReport:
    return ClaimReport(claim_id=claim_id, statement=statement)


def check_full_packing_iff_low_degree(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "full-packing-iff-max-degree-2",
        "The maximum point degree is at most 2 exactly when the whole line "
        "family is a 2-packing (nu2 equals the number of lines).",
    )
    t0 = time.perf_counter()
    for inst in instances:
        rep.instances_checked += 1
        lhs = inst.delta <= 2
        rhs = inst.nu2 == inst.n_lines
        if lhs != rhs:
            rep.counterexamples.append(
                _revalidated_counterexample(
                    inst, f"max degree {inst.delta} but nu2={inst.nu2} of {inst.n_lines} lines"
                )
            )
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_packing_two_forces_common_point(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "nu2-2-iff-tau-1",
        "With more than two lines: nu2 = 2 forces a single point meeting every "
        "line (tau = 1), and conversely tau = 1 forces nu2 = 2.",
    )
    t0 = time.perf_counter()
    for inst in instances:
        if inst.n_lines <= 2:
            continue
        hit = False
        if inst.nu2 == 2:
            hit = True
            if inst.tau != 1:
                rep.counterexamples.append(
                    _revalidated_counterexample(inst, f"nu2=2 but tau={inst.tau}")
                )
        if inst.tau == 1:
            hit = True
            if inst.nu2 != 2:
                rep.counterexamples.append(
                    _revalidated_counterexample(inst, f"tau=1 but nu2={inst.nu2}")
                )
        if hit:
            rep.instances_checked += 1
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_packing_three_forces_tau_two(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "nu2-3-forces-tau-2",
        "With more than three lines, nu2 = 3 forces tau = 2.",
    )
    t0 = time.perf_counter()
    for inst in instances:
        if inst.nu2 != 3 or inst.n_lines <= 3:
            continue
        rep.instances_checked += 1
        if inst.tau != 2:
            rep.counterexamples.append(
                _revalidated_counterexample(inst, f"nu2=3, {inst.n_lines} lines, tau={inst.tau}")
            )
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_high_degree_packing_four(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "nu2-4-delta-ge-5-tau-le-3",
        "nu2 = 4 together with a point of degree at least 5 forces tau <= 3.",
    )
    t0 = time.perf_counter()
    for inst in instances:
        if inst.nu2 != 4 or inst.delta < 5:
            continue
        rep.instances_checked += 1
        if inst.tau > 3:
            rep.counterexamples.append(
                _revalidated_counterexample(inst, f"nu2=4, delta={inst.delta}, tau={inst.tau}")
            )
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_packing_four_classification(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "nu2-4-tau-le-4-extremal-classification",
        "With more than four lines, nu2 = 4 forces tau <= 4; every system "
        "attaining tau = 4 embeds in the order-3 projective plane and is "
        "isomorphic to the 8/8 extremal system or to a member of the "
        "enumerated c44 family.",
    )
    t0 = time.perf_counter()
    pi3 = projective_plane(3).system
    family_keys = {_canonical_key(ns.system) for ns in enumerate_c44()}
    family_keys.add(_canonical_key(c34_explicit().system))
    for inst in instances:
        if inst.nu2 != 4 or inst.n_lines <= 4:
            continue
        rep.instances_checked += 1
        if inst.tau > 4:
            rep.counterexamples.append(
                _revalidated_counterexample(inst, f"nu2=4 but tau={inst.tau}")
            )
            continue
        if inst.tau == 4:
            if embeds_as_subsystem(inst.system, pi3) is None:
                rep.counterexamples.append(
                    _revalidated_counterexample(
                        inst, "tau=nu2=4 but no embedding into the order-3 plane"
                    )
                )
            elif _canonical_key(inst.system) not in family_keys:
                rep.counterexamples.append(
                    _revalidated_counterexample(
                        inst, "tau=nu2=4 but not isomorphic to a known extremal system"
                    )
                )
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_planar_systems_strict_bound(instances: list[Instance]) -> ClaimReport:
    """Planarity of the incidence graph is necessary for a straight-line
    representation, so the strict bound is checked on the planar class; the
    enumerated equality family must itself be non-planar."""
    rep = _report(
        "planar-nu2-234-tau-strictly-below",
        "Every system whose incidence graph is planar, with nu2 in {2,3,4} and "
        "more lines than nu2, satisfies tau <= nu2 - 1; the systems attaining "
        "tau = nu2 = 4 all have non-planar incidence graphs.",
    )
    t0 = time.perf_counter()
    extremals = [Instance("c34", c34_explicit().system)]
    extremals += [Instance(ns.name, ns.system) for ns in enumerate_c44()]
    for inst in extremals:
        rep.instances_checked += 1
        if inst.planar:
            rep.counterexamples.append(
                _revalidated_counterexample(inst, "extremal system has planar incidence graph")
            )
    for inst in instances:
        if inst.nu2 not in (2, 3, 4) or inst.n_lines <= inst.nu2:
            continue
        if not inst.planar:
            continue
        rep.instances_checked += 1
        if inst.tau > inst.nu2 - 1:
            rep.counterexamples.append(
                _revalidated_counterexample(
                    inst, f"planar incidence graph, nu2={inst.nu2}, tau={inst.tau}"
                )
            )
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_hypergraph_correspondence(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "three-hypergraph-correspondence",
        "On the 3-hypergraph whose vertices are the lines and whose edges are "
        "the triples with empty intersection: the clique number equals nu2 and "
        "the chromatic number equals tau (checked within the small-instance "
        "guard).",
    )
    t0 = time.perf_counter()
    for inst in instances:
        if inst.n_lines < 3 or inst.n_lines > _HYPERGRAPH_GUARD:
            continue
        rep.instances_checked += 1
        h = three_hypergraph(inst.system)
        omega = clique_number_3h(h)
        chi = chromatic_number_3h(h)
        if omega != inst.nu2 or chi != inst.tau:
            rep.counterexamples.append(
                _revalidated_counterexample(
                    inst,
                    f"clique={omega} vs nu2={inst.nu2}, chromatic={chi} vs tau={inst.tau}",
                )
            )
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_sandwich_inequality(instances: list[Instance]) -> ClaimReport:
    rep = _report(
        "tau-nu2-sandwich",
        "For nu2 >= 2 and more lines than nu2: ceil(nu2 / 2) <= tau <= "
        "nu2 * (nu2 - 1) / 2.",
    )
    t0 = time.perf_counter()
    for inst in instances:
        if inst.nu2 < 2 or inst.n_lines <= inst.nu2:
            continue
        rep.instances_checked += 1
        lo = math.ceil(inst.nu2 / 2)
        hi = inst.nu2 * (inst.nu2 - 1) // 2
        if not (lo <= inst.tau <= hi):
            rep.counterexamples.append(
                _revalidated_counterexample(
                    inst, f"tau={inst.tau} outside [{lo}, {hi}] for nu2={inst.nu2}"
                )
            )
    rep.wall_time = time.perf_counter() - t0
    return rep


ALL_CHECKS = (
    check_full_packing_iff_low_degree,
    check_packing_two_forces_common_point,
    check_packing_three_forces_tau_two,
    check_high_degree_packing_four,
    check_packing_four_classification,
    check_planar_systems_strict_bound,
    check_hypergraph_correspondence,
    check_sandwich_inequality,
)


# ---------------------------------------------------------------------------
# instance corpus
# ---------------------------------------------------------------------------

def _star(n_rays: int, ray_size: int = 2) -> LinearSystem:
    """n_rays lines through one common point, pairwise disjoint elsewhere."""
    lines = []
    nxt = 1
    for _ in range(n_rays):
        line = [0] + list(range(nxt, nxt + ray_size - 1))
        nxt += ray_size - 1
        lines.append(line)
    return new_linear_system(nxt, lines)


def _star_plus_two(disjoint: bool) -> LinearSystem:
    """Five concurrent lines plus two extra lines off the center; the extras
    either meet each other or not."""
    star_lines = [[0, i] for i in range(1, 6)]
    if disjoint:
        extra = [[1, 2, 6], [3, 4, 7]]
        n = 8
    else:
        extra = [[1, 2, 6], [3, 4, 6]]
        n = 7
    return new_linear_system(n, star_lines + extra)


def fixture_instances(include_large: bool = True) -> list[Instance]:
    """The named systems plus small handcrafted shapes exercising each claim."""
    out = [
        Instance("pi:2", projective_plane(2).system),
        Instance("pi:3", projective_plane(3).system),
        Instance("c34", c34_explicit().system),
        Instance("c", c_explicit().system),
    ]
    if include_large:
        out.append(Instance("pi:5", projective_plane(5).system))
    out += [Instance(ns.name, ns.system) for ns in enumerate_c44()]
    out += [
        Instance("star-4", _star(4)),
        Instance("star-5", _star(5, ray_size=3)),
        Instance("star5-plus-disjoint-pair", _star_plus_two(disjoint=True)),
        Instance("star5-plus-meeting-pair", _star_plus_two(disjoint=False)),
        Instance("two-disjoint-lines", new_linear_system(6, [[0, 1, 2], [3, 4, 5]])),
        Instance("triangle", new_linear_system(3, [[0, 1], [0, 2], [1, 2]])),
        # nu2 = 3 with four lines: a triangle plus one tail through a vertex
        Instance("triangle-with-tail", new_linear_system(4, [[0, 1], [0, 2], [1, 2], [0, 3]])),
        # 2-regular, so the whole line set is a 2-packing
        Instance("hexagon-cycle", new_linear_system(6, [[i, (i + 1) % 6] for i in range(6)])),
    ]
    return out


# profile choice matters: (9, 7, (3, 4)) yields nu2 = 4 on roughly a quarter
# of the seeds, which keeps the packing-4 claims exercised by random data
_RANDOM_PROFILES = (
    (6, 4, (2, 3)),
    (7, 5, (2, 3)),
    (8, 6, (2, 4)),
    (9, 6, (3, 4)),
    (10, 7, (2, 4)),
    (9, 7, (3, 4)),
    (9, 8, (3, 4)),
    (12, 9, (2, 3)),
)


def random_instances(seed: int, count: int) -> list[Instance]:
    """Deterministic sweep instances cycling through size profiles; draws that
    exhaust the rejection budget are skipped."""
    out = []
    i = 0
    attempt = 0
    while len(out) < count:
        n_points, n_lines, sizes = _RANDOM_PROFILES[i % len(_RANDOM_PROFILES)]
        sub_seed = seed * 1_000_003 + attempt
        attempt += 1
        i += 1
        try:
            sys = random_linear_system(n_points, n_lines, sizes, sub_seed)
        except GenerationExhausted:
            continue
        out.append(Instance(f"random-{sub_seed}", sys))
    return out


def exhaustive_small(
    max_points: int, max_lines: int, size_range: tuple[int, int] = (2, 4)
) -> list[LinearSystem]:
    """All linear systems within the bounds, one per isomorphism class.

    Orderly line-by-line extension: lines are added in non-increasing size
    order (every system can be built that way), new points take the next free
    ids, and each level is deduplicated by canonical relabeling.  Ground sets
    carry no isolated points.
    """
    if max_points > 9 or max_lines > 7:
        raise TooLarge(
            f"exhaustive generation limited to 9 points / 7 lines, got "
            f"{max_points}/{max_lines}"
        )
    lo, hi = size_range
    if lo < 1 or hi < lo:
        raise ValueError(f"bad size range {size_range}")
    hi = min(hi, max_points)
    empty = new_linear_system(0, [])
    out = [empty]
    frontier = [empty]
    for _ in range(max_lines):
        level: dict[tuple, LinearSystem] = {}
        for sys in frontier:
            cap = len(sys.lines[0]) if sys.lines else hi
            for size in range(lo, min(cap, hi) + 1):
                for reuse in range(0, size + 1):
                    fresh = size - reuse
                    if sys.n_points + fresh > max_points or reuse > sys.n_points:
                        continue
                    for base in itertools.combinations(range(sys.n_points), reuse):
                        bmask = 0
                        for p in base:
                            bmask |= 1 << p
                        if any((bmask & m).bit_count() > 1 for m in sys.masks):
                            continue
                        newline = base + tuple(
                            range(sys.n_points, sys.n_points + fresh)
                        )
                        if fresh == 0 and newline in sys.lines:
                            continue
                        cand = new_linear_system(
                            sys.n_points + fresh, sys.lines + (newline,)
                        )
                        crel = canonical_relabel(cand)
                        key = (crel.n_points, crel.lines)
                        if key not in level:
                            level[key] = crel
        frontier = [level[k] for k in sorted(level)]
        out.extend(frontier)
    return out


# ---------------------------------------------------------------------------
# top-level run
# ---------------------------------------------------------------------------

@dataclass
class VerifyConfig:
    seed: int = 7
    n_random: int = 200
    exhaustive_bounds: tuple[int, int] | None = (8, 5)
    exhaustive_sizes: tuple[int, int] = (2, 4)
    include_fixtures: bool = True


def run_all(config: VerifyConfig | None = None) -> list[ClaimReport]:
    """Execute every claim check over the configured corpus; deterministic
    for a fixed configuration."""
    config = config or VerifyConfig()
    instances: list[Instance] = []
    if config.include_fixtures:
        instances.extend(fixture_instances())
    if config.exhaustive_bounds is not None:
        mp, ml = config.exhaustive_bounds
        for i, sys in enumerate(exhaustive_small(mp, ml, config.exhaustive_sizes)):
            instances.append(Instance(f"exhaustive-{i}", sys))
    if config.n_random > 0:
        instances.extend(random_instances(config.seed, config.n_random))
    return [check(instances) for check in ALL_CHECKS]


_REPORT_PREFACE = (
    "Straight-line representability cannot be decided directly at this "
    "scale; the harness instead checks the strict bound on every instance "
    "whose incidence graph is planar, a necessary condition that covers a "
    "strictly larger class, and separately certifies that the equality "
    "family fails that condition."
)


def reports_to_json(reports: list[ClaimReport]) -> str:
    doc = {
        "preface": _REPORT_PREFACE,
        "claims": [r.to_dict() for r in reports],
        "all_passed": all(r.passed for r in reports),
    }
    return json.dumps(doc, indent=2)


def reports_to_markdown(reports: list[ClaimReport]) -> str:
    lines = [
        "# Claim verification report",
        "",
        _REPORT_PREFACE,
        "",
        "| claim | instances | counterexamples | time (s) | result |",
        "|---|---|---|---|---|",
    ]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        lines.append(
            f"| {r.claim_id} | {r.instances_checked} | "
            f"{len(r.counterexamples)} | {r.wall_time:.2f} | {status} |"
        )
    lines.append("")
    for r in reports:
        lines.append(f"## {r.claim_id}")
        lines.append("")
        lines.append(r.statement)
        lines.append("")
        if not r.passed:
            if r.instances_checked == 0:
                lines.append("No instance matched the claim filter: harness failure.")
            for ce in r.counterexamples:
                lines.append(f"- counterexample: `{json.dumps(ce)}`")
            lines.append("")
    return "\n".join(lines)
