import random
from fractions import Fraction

import pytest

from conftest import coords_from
from godeaux_lines.fields import QQ
from godeaux_lines.geometry import LineA, ORDER, PointA, line_through
from godeaux_lines.sampling import sample_line, tangent_cone_partner, _Budget
from godeaux_lines.strata import (
    IDENTITY_SYMMETRY,
    StrataError,
    TORSION_SPACES,
    classify_line,
    hyperelliptic_points,
    quadric_symmetries,
    rank_a,
    row_vanishing_points,
    symmetry_fixes_quadrics,
    torsion_containments,
    torsion_intersections,
    torsion_space,
    verify_symmetries,
    verify_torsion_spaces,
)

#: the worked image point of the hyperelliptic parametrization
HYP_WORKED_POINT = (2, 2, -24, -1, -2, 36, -1, 2, -72, -2, 6, -12)


# ----------------------------------------------------------------------
# torsion spaces


def test_t0123_killed_set():
    killed = sorted(ORDER[i] for i in torsion_space("T01|23").killed)
    assert killed == sorted(["a31", "a30", "a21", "a20", "a13", "a12", "a03", "a02"])


def test_three_spaces_partition_coordinates():
    seen = set()
    for sp in TORSION_SPACES:
        assert len(sp.survivors) == 4 and len(sp.killed) == 8
        seen.update(sp.survivors)
    assert seen == set(range(12))


def test_verify_torsion_spaces_certificate():
    cert = verify_torsion_spaces()
    assert cert.passed


# ----------------------------------------------------------------------
# rank stratification


def test_rank_generic_point_is_4(generic_line):
    assert rank_a(generic_line.point_at(1, 0)) == 4
    assert rank_a(generic_line.point_at(3, 7)) == 4


def test_rank_torsion_point_is_2(f31):
    rng = random.Random(1)
    for sp in TORSION_SPACES:
        assert rank_a(sp.random_point(f31, rng)) == 2


def test_rank_hyp_worked_point_is_3():
    p = PointA(QQ, [Fraction(c) for c in HYP_WORKED_POINT])
    assert p.on_quadric_intersection()
    assert rank_a(p) == 3


def test_rank_invariant_under_rescaling(f31):
    rng = random.Random(2)
    coords = coords_from(f31, a23=1, a10=4, a32=9, a01=12)
    p = PointA(f31, coords)
    scaled = PointA(f31, [f31.mul(7, c) for c in coords])
    assert rank_a(p) == rank_a(scaled)


# ----------------------------------------------------------------------
# torsion intersections


def test_z5_example_torsion_intersections(z5_example):
    points = torsion_intersections(z5_example)
    assert len(points) == 2
    spaces = {sp.name for _, sp in points}
    assert spaces == {"T01|23", "T02|13"}
    by_space = {sp.name: st for st, sp in points}
    assert by_space["T01|23"] == (1, 0)
    assert by_space["T02|13"] == (0, 1)


def test_z3_numeric_instance_single_torsion_point(f31):
    from godeaux_lines.families import z3_line

    line = z3_line(f31, (1, 1, 1, 1), (1, 2), (1, 1))
    points = torsion_intersections(line)
    assert len(points) == 1
    assert points[0][1].name == "T01|23"
    assert points[0][0] == (1, 0)


def test_generic_line_no_torsion(generic_line):
    assert torsion_intersections(generic_line) == []
    assert torsion_containments(generic_line) == []


def test_line_inside_torsion_space_reported_as_containment(f31):
    line = LineA(f31, coords_from(f31, a32=1, a01=1), coords_from(f31, a23=1, a10=1))
    assert torsion_containments(line) == [torsion_space("T01|23")]
    assert torsion_intersections(line) == []


def test_detectors_reject_lines_outside_q(f31):
    rng = random.Random(0)
    line = LineA(
        f31,
        [f31.random(rng) for _ in range(12)],
        [f31.random(rng) for _ in range(12)],
    )
    with pytest.raises(StrataError):
        torsion_intersections(line)
    with pytest.raises(StrataError):
        classify_line(line)


# ----------------------------------------------------------------------
# hyperelliptic points and the minor GCD


def test_generic_line_trivial_gcd(generic_line):
    result = hyperelliptic_points(generic_line)
    assert result.gcd.degree == 0 and not result.gcd.is_zero()
    assert result.roots == ()


def test_hyp_line_one_rank3_root(hyp_line):
    result = hyperelliptic_points(hyp_line)
    rank3 = [r for r in result.roots if r.rank == 3]
    assert len(rank3) == 1


def test_two_hyp_line_two_rank3_roots(two_hyp_line):
    result = hyperelliptic_points(two_hyp_line)
    rank3 = [r for r in result.roots if r.rank == 3]
    assert len(rank3) == 2
    assert len({r.point for r in rank3}) == 2


def test_gcd_roots_match_exhaustive_scan(hyp_line, two_hyp_line, generic_line, f31):
    # oracle: scan all of P^1(F_31) for points where the a-matrix drops rank
    for line in (generic_line, hyp_line, two_hyp_line):
        result = hyperelliptic_points(line)
        reported = {r.point for r in result.roots}
        scanned = set()
        for x in range(31):
            if rank_a(line.point_at(x, 1)) <= 3:
                scanned.add((x, 1))
        if rank_a(line.point_at(1, 0)) <= 3:
            scanned.add((1, 0))
        assert reported == scanned


def test_z5_example_gcd_and_low_rank_roots(z5_example):
    result = hyperelliptic_points(z5_example)
    # restricted a-matrix has a single nonzero 4x4 minor ~ s^2 t^2
    assert str(result.gcd) == "s^2*t^2"
    assert all(r.rank == 2 for r in result.roots)
    assert {r.point for r in result.roots} == {(1, 0), (0, 1)}
    assert all(r.multiplicity == 2 for r in result.roots)


# ----------------------------------------------------------------------
# row vanishing


def test_generic_line_no_row_vanishing(generic_line):
    points, contained = row_vanishing_points(generic_line)
    assert points == [] and contained == []


def test_row_zero_construction(f31):
    # a line through a point with a01 = a02 = a03 = 0 sees row 0 vanish there
    rng = random.Random(33)
    p = PointA(f31, coords_from(f31, a32=3, a23=5, a10=2))
    budget = _Budget("test", 10_000_000)
    w = tangent_cone_partner(f31, p, rng, budget)
    line = line_through(p, w)
    points, _ = row_vanishing_points(line)
    assert ((1, 0), 0) in points


def test_z5_example_row_vanishing_recomputed(z5_example):
    # exact recomputation: restricted rows are (0,t,0), (s,0,0), (0,0,s),
    # (0,t,0)-patterned, so each row vanishes at one of the two torsion points
    points, contained = row_vanishing_points(z5_example)
    assert contained == []
    assert sorted(points) == sorted(
        [((1, 0), 0), ((0, 1), 1), ((0, 1), 2), ((1, 0), 3)]
    )


# ----------------------------------------------------------------------
# classification


def test_classify_z5_example(z5_example):
    report = classify_line(z5_example)
    assert len(report.torsion_points) == 2
    assert {sp.name for _, sp in report.torsion_points} == {"T01|23", "T02|13"}
    assert report.hyperelliptic_roots == ()
    assert not report.excluded_flag
    assert report.kernel_degrees == (0, 0, 0, 0)
    assert not report.is_generic


def test_classify_generic(generic_line):
    report = classify_line(generic_line)
    assert report.is_generic
    assert report.kernel_degrees == (1, 1, 1, 1)
    assert report.minor_gcd.degree == 0
    assert report.row_vanishing == ()


def test_classify_torsion_strategy_line(f31):
    line = sample_line("torsion", f31, seed=7)
    report = classify_line(line)
    assert len(report.torsion_points) == 1
    assert report.torsion_points[0][1].name == "T01|23"
    assert report.hyperelliptic_roots == ()


def test_classify_invariant_under_gl2(z5_example, hyp_line, f31):
    for line in (z5_example, hyp_line):
        report = classify_line(line)
        moved = line.transformed(((3, 1), (5, 2)))
        report2 = classify_line(moved)
        as_points = lambda rep, line_: {
            (line_.point_at(*st), sp.name) for st, sp in rep.torsion_points
        }
        assert as_points(report, line) == as_points(report2, moved)
        hyp1 = {line.point_at(*r.point) for r in report.hyperelliptic_roots}
        hyp2 = {moved.point_at(*r.point) for r in report2.hyperelliptic_roots}
        assert hyp1 == hyp2
        assert report.kernel_degrees == report2.kernel_degrees
        assert report.minor_gcd.degree == report2.minor_gcd.degree


def test_classify_over_rationals():
    # the whole pipeline, including rational root finding, over Q
    from godeaux_lines.families import z3_line, z5_line

    line = z5_line(QQ, 1, 1, 1, 1)
    report = classify_line(line)
    assert {sp.name for _, sp in report.torsion_points} == {"T01|23", "T02|13"}
    assert str(report.minor_gcd) == "s^2*t^2"
    assert report.kernel_degrees == (0, 0, 0, 0)

    line3 = z3_line(QQ, (1, 1, 1, 1), (1, 2), (1, 1))
    report3 = classify_line(line3)
    assert len(report3.torsion_points) == 1
    assert report3.kernel_degrees == (1, 1, 1, 1)


def test_report_json_shape(z5_example):
    payload = classify_line(z5_example).to_json()
    assert payload["torsion_points"] == [
        {"point": "(1:0)", "space": "T01|23"},
        {"point": "(0:1)", "space": "T02|13"},
    ]
    assert payload["minor_gcd"] == "s^2*t^2"
    assert payload["excluded"] is False
    assert payload["kernel_degrees"] == [0, 0, 0, 0]


# ----------------------------------------------------------------------
# quadric symmetries


@pytest.fixture(scope="module")
def symmetry_group():
    return quadric_symmetries()


def test_identity_in_group(symmetry_group):
    assert any(
        e.perm == IDENTITY_SYMMETRY.perm and e.signs == IDENTITY_SYMMETRY.signs
        for e in symmetry_group.elements
    )


def test_group_order(symmetry_group):
    # 16 sign vectors per coordinate permutation: 8 independent GF(2)
    # constraints on 12 sign unknowns, realized for all 24 permutations
    assert symmetry_group.order == 384
    perms = {e.perm for e in symmetry_group.elements}
    assert len(perms) == 24


def test_torsion_action_transitive(symmetry_group):
    assert symmetry_group.torsion_transitive
    images = {e.torsion_permutation() for e in symmetry_group.elements}
    assert len(images) == 6  # the full permutation action on three spaces


def test_transposition_01_realized(symmetry_group):
    assert any(e.perm == (1, 0, 2, 3) for e in symmetry_group.elements)


def test_elements_fix_quadric_set_exactly(symmetry_group):
    for e in symmetry_group.generators:
        assert symmetry_fixes_quadrics(e)


def test_generators_generate(symmetry_group):
    from godeaux_lines.strata import _closure

    assert len(_closure(symmetry_group.generators)) == symmetry_group.order


def test_symmetry_certificate():
    cert = verify_symmetries()
    assert cert.passed
    assert cert.data["order"] == 384


def test_sign_solver_complete_against_brute_force():
    # for two permutations, enumerate all 2^12 sign vectors directly and
    # compare with the GF(2) solver's solution set
    from itertools import product

    from godeaux_lines.strata import SignedPermutation, _symmetries_for_perm

    for perm in ((0, 1, 2, 3), (1, 0, 2, 3)):
        solved = {e.signs for e in _symmetries_for_perm(perm)}
        brute = set()
        for bits in product((1, -1), repeat=12):
            if symmetry_fixes_quadrics(SignedPermutation(perm, bits)):
                brute.add(bits)
        assert solved == brute
        assert len(brute) == 16
