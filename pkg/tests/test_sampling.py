import pytest

from godeaux_lines.fields import QQ
from godeaux_lines.geometry import line_in_q
from godeaux_lines.sampling import (
    BudgetExhausted,
    SamplingError,
    sample_line,
    random_q_point,
    _Budget,
)
from godeaux_lines.strata import TORSION_SPACES, classify_line, torsion_space


def test_generic_strategy(f31):
    line = sample_line("generic", f31, seed=42)
    assert line_in_q(line)
    report = classify_line(line)
    assert report.is_generic
    assert line.provenance["strategy"] == "generic"
    assert line.provenance["seed"] == 42
    assert line.provenance["trials"] > 0


def test_generic_deterministic(f31):
    a = sample_line("generic", f31, seed=123)
    b = sample_line("generic", f31, seed=123)
    assert a.rows == b.rows
    assert a.provenance == b.provenance
    c = sample_line("generic", f31, seed=124)
    assert c.rows != a.rows


def test_q_point_sampler(f31):
    import random

    rng = random.Random(0)
    budget = _Budget("test", 1_000_000)
    for _ in range(5):
        p = random_q_point(f31, rng, budget)
        assert p.on_quadric_intersection()


def test_torsion_strategy(f31):
    space = torsion_space("T03|12")
    line = sample_line("torsion", f31, seed=3, space=space)
    report = classify_line(line)
    assert len(report.torsion_points) == 1
    assert report.torsion_points[0][1] == space
    assert line.provenance["space"] == "T03|12"
    assert line.provenance["certificate"]["torsion_points"][0]["space"] == "T03|12"


def test_two_torsion_strategy(f31):
    line = sample_line(
        "two-torsion",
        f31,
        seed=9,
        spaces=(torsion_space("T01|23"), torsion_space("T02|13")),
    )
    report = classify_line(line)
    assert {sp.name for _, sp in report.torsion_points} == {"T01|23", "T02|13"}
    assert len(report.torsion_points) == 2


def test_hyp_strategy(f31):
    line = sample_line("hyp", f31, seed=2)
    report = classify_line(line)
    assert len(report.hyperelliptic_roots) == 1
    assert report.hyperelliptic_roots[0].rank == 3
    assert report.torsion_points == ()


def test_two_hyp_strategy(f31):
    line = sample_line("two-hyp", f31, seed=2)
    report = classify_line(line)
    assert len(report.hyperelliptic_roots) == 2
    points = {r.point for r in report.hyperelliptic_roots}
    assert len(points) == 2
    assert len(line.provenance["certificate"]["rank3_roots"]) == 2


def test_two_hyp_general_position(f31):
    # rejection strongly prefers partners where an a-row vanishes (the
    # parametrized locus satisfies a32*a03*a20 + a23*a30*a02 = 0, which
    # hands every point a degenerate partner); general_position skips them
    line = sample_line("two-hyp", f31, seed=0, general_position=True)
    report = classify_line(line)
    assert len(report.hyperelliptic_roots) == 2
    assert report.row_vanishing == ()
    assert report.kernel_degrees == (1, 1, 1, 1)


def test_budget_exhaustion(f31):
    with pytest.raises(BudgetExhausted) as err:
        sample_line("two-hyp", f31, seed=0, budget=40)
    assert err.value.trials > 40 - 10


def test_search_needs_prime_field():
    with pytest.raises(SamplingError):
        sample_line("generic", QQ, seed=0)


def test_unknown_strategy(f31):
    with pytest.raises(SamplingError):
        sample_line("everything", f31, seed=0)


def test_two_torsion_needs_distinct_spaces(f31):
    with pytest.raises(SamplingError):
        sample_line(
            "two-torsion",
            f31,
            seed=0,
            spaces=(TORSION_SPACES[0], TORSION_SPACES[0]),
        )
