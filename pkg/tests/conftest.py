import pytest

from godeaux_lines.fields import PrimeField, QQ
from godeaux_lines.families import z5_line
from godeaux_lines.geometry import AIDX


@pytest.fixture(scope="session")
def f31():
    return PrimeField(31)


@pytest.fixture(scope="session")
def f101():
    return PrimeField(101)


@pytest.fixture(scope="session")
def f10007():
    return PrimeField(10007)


@pytest.fixture(scope="session")
def qq():
    return QQ


@pytest.fixture(scope="session")
def z5_example(f31):
    """The example two-torsion line with all four parameters 1."""
    return z5_line(f31, 1, 1, 1, 1)


@pytest.fixture(scope="session")
def generic_line(f31):
    from godeaux_lines.sampling import sample_line

    return sample_line("generic", f31, seed=42)


@pytest.fixture(scope="session")
def hyp_line(f31):
    from godeaux_lines.sampling import sample_line

    return sample_line("hyp", f31, seed=11)


@pytest.fixture(scope="session")
def two_hyp_line(f31):
    from godeaux_lines.sampling import sample_line

    return sample_line("two-hyp", f31, seed=11)


def coords_from(field, **named):
    """A 12-vector with the named a-coordinates set, the rest zero."""
    out = [field.zero()] * 12
    for name, value in named.items():
        out[AIDX[name]] = field.canonical(value)
    return out
