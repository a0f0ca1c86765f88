"""Chain configurations, their verification report, and lens space data."""

from fractions import Fraction

import pytest

from rbdcalc.chains import (
    ChainViolation,
    CpConfiguration,
    _trusted_configuration,
    evaluate_neg_cf,
    expected_square,
    intersection_matrix,
    lens_space_cf,
    standard_configuration,
    verify_cp_configuration,
)
from rbdcalc.errors import (
    ArityError,
    DomainError,
    InvalidConfigurationError,
    LatticeMismatchError,
)
from rbdcalc.families import family_classes
from rbdcalc.lattice import AmbientLattice
from rbdcalc.snf import det as int_det
from rbdcalc.snf import smith_normal_form


def test_expected_squares():
    assert [expected_square(i, 5) for i in range(1, 5)] == [-2, -2, -2, -7]
    assert expected_square(1, 2) == -4


def test_minimal_chain_verifies():
    lat = AmbientLattice(1)
    report = verify_cp_configuration([lat.vector([0, 2])], 2)
    assert report.ok
    assert report.violation is None
    assert report.squares == (-4,)


def test_family_shape_verifies():
    lat = AmbientLattice(11)
    classes = [lat.e(10) - lat.e(11), lat.vector([6] + [-2] * 10 + [-1])]
    report = verify_cp_configuration(classes, 3)
    assert report.ok
    assert report.squares == (-2, -5)


def test_wrong_square_reported_first():
    lat = AmbientLattice(2)
    report = verify_cp_configuration([lat.e(1), lat.vector([0, 1, 2])], 3)
    assert not report.ok
    assert report.violation == ChainViolation("square", (1,), -2, -1)


def test_wrong_consecutive_pairing_reported():
    lat = AmbientLattice(3)
    classes = [lat.e(1) - lat.e(2), lat.vector([0, 2, 1, 0])]
    report = verify_cp_configuration(classes, 3)
    assert not report.ok
    assert report.violation == ChainViolation("consecutive_pairing", (1, 2), 1, -1)


def test_distant_pairing_reported_lexicographically():
    lat = AmbientLattice(5)
    classes = [
        lat.e(1) - lat.e(2),
        lat.e(2) - lat.e(3),
        lat.vector([0, 1, 0, 1, 2, 0]),
    ]
    report = verify_cp_configuration(classes, 4)
    assert not report.ok
    assert report.violation == ChainViolation("distant_pairing", (1, 3), 0, -1)


@pytest.mark.parametrize("p", range(3, 10))
def test_reversed_chain_never_verifies(p):
    """The long class must come last, so the reversal always fails."""
    classes = list(standard_configuration(p).classes)
    assert not verify_cp_configuration(classes[::-1], p).ok


def test_wrong_length_rejected():
    lat = AmbientLattice(1)
    with pytest.raises(ArityError):
        verify_cp_configuration([lat.vector([0, 2])], 3)


def test_small_p_rejected():
    lat = AmbientLattice(1)
    with pytest.raises(DomainError):
        verify_cp_configuration([lat.vector([0, 2])], 1)


def test_mixed_lattices_rejected():
    a = AmbientLattice(2)
    b = AmbientLattice(3)
    with pytest.raises(LatticeMismatchError):
        verify_cp_configuration([a.e(1) - a.e(2), b.vector([0, 1, 1, 2])], 3)


def test_constructor_rejects_bad_configuration():
    lat = AmbientLattice(1)
    with pytest.raises(InvalidConfigurationError) as exc:
        CpConfiguration(p=2, classes=(lat.vector([0, 1]),))
    assert exc.value.report.violation == ChainViolation("square", (1,), -4, -1)


def test_constructor_accepts_good_configuration():
    cfg = CpConfiguration(p=3, classes=tuple(family_classes(3, 1)))
    assert cfg.rank == 2
    assert cfg.lattice == AmbientLattice(11)


def test_trusted_constructor_matches_checked_one():
    classes = tuple(family_classes(3, 1))
    assert _trusted_configuration(3, classes) == CpConfiguration(3, classes)


def test_json_round_trip(tmp_path):
    cfg = standard_configuration(5)
    payload = cfg.to_json()
    assert payload["p"] == 5
    assert payload["n"] == 4
    assert CpConfiguration.from_json(payload) == cfg
    path = tmp_path / "cfg.json"
    path.write_text(__import__("json").dumps(payload))
    assert CpConfiguration.load(path) == cfg


def test_intersection_matrices():
    lat = AmbientLattice(11)
    classes = [lat.e(10) - lat.e(11), lat.vector([6] + [-2] * 10 + [-1])]
    assert intersection_matrix(classes) == [[-2, 1], [1, -5]]
    assert intersection_matrix(standard_configuration(2).classes) == [[-4]]
    gram = intersection_matrix(family_classes(4, 1))
    assert len(gram) == 6
    for i in range(6):
        for j in range(6):
            if i == j:
                assert gram[i][j] == (-9 if i == 5 else -2)
            else:
                assert gram[i][j] == (1 if abs(i - j) == 1 else 0)
    assert abs(int_det(gram)) == 49


def test_lens_space_weights():
    assert lens_space_cf(2) == [4]
    assert lens_space_cf(3) == [5, 2]
    assert lens_space_cf(7) == [9, 2, 2, 2, 2, 2]
    with pytest.raises(DomainError):
        lens_space_cf(1)


@pytest.mark.parametrize("p", range(2, 13))
def test_lens_space_weights_evaluate_exactly(p):
    weights = lens_space_cf(p)
    assert weights == [p + 2] + [2] * (p - 2)
    assert evaluate_neg_cf(weights) == Fraction(p * p, p - 1)


def test_continued_fraction_evaluator_errors():
    with pytest.raises(DomainError):
        evaluate_neg_cf([])
    with pytest.raises(DomainError):
        evaluate_neg_cf([2, 1, 1])


@pytest.mark.parametrize("p", range(2, 13))
def test_standard_configuration_presents_cyclic_group(p):
    cfg = standard_configuration(p)
    diag = smith_normal_form(intersection_matrix(cfg.classes)).diagonal
    assert diag == (1,) * (p - 2) + (p * p,)


def test_standard_configuration_in_larger_lattice():
    cfg = standard_configuration(3, n=6)
    assert cfg.lattice == AmbientLattice(6)
    assert verify_cp_configuration(list(cfg.classes), 3).ok


def test_standard_configuration_needs_room():
    with pytest.raises(DomainError):
        standard_configuration(5, n=3)
