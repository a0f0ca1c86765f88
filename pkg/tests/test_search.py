"""Bounded configuration search and the open-range question probes."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbdcalc.chains import verify_cp_configuration
from rbdcalc.errors import DomainError, SearchCapExceeded, TemplateError
from rbdcalc.families import family_configuration
from rbdcalc.search import (
    DEFAULT_CAP,
    SearchTemplate,
    _raw_gram_ok,
    estimate_search_space,
    family_question_dimensions,
    family_question_template,
    search,
    search_family_questions,
)


def brute_force_single_class(n, bound):
    """Every coefficient vector in the box whose square is -4."""
    hits = set()
    for coeffs in product(range(-bound, bound + 1), repeat=n + 1):
        if coeffs[0] ** 2 - sum(c * c for c in coeffs[1:]) == -4:
            hits.add(coeffs)
    return hits


def test_template_validation():
    with pytest.raises(DomainError):
        SearchTemplate(n=5, p=1, tail_bounds=(2,) * 6)
    with pytest.raises(DomainError):
        SearchTemplate(n=0, p=2, tail_bounds=(2,))
    with pytest.raises(DomainError):
        SearchTemplate(n=5, p=2, tail_bounds=(2,) * 5)
    with pytest.raises(DomainError):
        SearchTemplate(n=5, p=2, tail_bounds=(2,) * 5 + (-1,))
    with pytest.raises(DomainError):
        SearchTemplate(n=5, p=2, tail_bounds=(2,) * 6, body_shape="spiral")
    with pytest.raises(TemplateError):
        SearchTemplate(n=3, p=5, tail_bounds=(2,) * 4)


def test_uniform_builder_and_json_round_trip():
    template = SearchTemplate.uniform(5, 2, 2)
    assert template.tail_bounds == (2,) * 6
    assert SearchTemplate.from_json(template.to_json()) == template


def test_from_json_broadcasts_integer_bounds():
    template = SearchTemplate.from_json({"n": 5, "p": 2, "tail_bounds": 2})
    assert template == SearchTemplate.uniform(5, 2, 2)


def test_estimate_for_uniform_box():
    assert estimate_search_space(SearchTemplate.uniform(5, 2, 2)) == 3125


def test_cap_refused_before_enumeration():
    template = SearchTemplate.uniform(5, 2, 2)
    with pytest.raises(SearchCapExceeded) as exc:
        search(template, cap=10)
    assert exc.value.estimate == 3125
    assert exc.value.cap == 10
    with pytest.raises(DomainError):
        search(template, cap=0)
    with pytest.raises(DomainError):
        search(template, jobs=0)
    assert DEFAULT_CAP >= 3125


def test_search_matches_brute_force():
    hits = search(SearchTemplate.uniform(5, 2, 2))
    assert len(hits) == 714
    assert {cfg.classes[0].coeffs for cfg in hits} == brute_force_single_class(5, 2)
    for cfg in hits[:20]:
        assert verify_cp_configuration(cfg.classes, 2).ok


@settings(max_examples=20)
@given(st.integers(1, 4), st.integers(0, 2))
def test_search_matches_brute_force_on_small_boxes(n, bound):
    hits = search(SearchTemplate.uniform(n, 2, bound))
    assert {cfg.classes[0].coeffs for cfg in hits} == brute_force_single_class(n, bound)


def test_search_is_deterministic_and_parallel_safe():
    template = SearchTemplate.uniform(5, 2, 2)
    single = search(template)
    assert search(template) == single
    assert search(template, jobs=2) == single


def test_raw_gram_recheck():
    placement = (10, 11)
    tail = (6,) + (-2,) * 10 + (-1,)
    assert _raw_gram_ok(3, placement, tail)
    assert not _raw_gram_ok(3, placement, (6, -3) + (-2,) * 9 + (-1,))
    assert not _raw_gram_ok(3, (10, 10), tail)
    assert not _raw_gram_ok(3, (9, 10), tail)


def test_question_dimensions():
    assert family_question_dimensions(3, "3-chain") == (11, 3)
    assert family_question_dimensions(8, "3-chain") == (26, 23)
    assert family_question_dimensions(6, "4-chain") == (26, 25)
    with pytest.raises(DomainError):
        family_question_dimensions(3, "5-chain")


def test_question_template_shape():
    template = family_question_template(8, "3-chain")
    assert template.n == 26
    assert template.p == 23
    assert template.tail_bounds == (11, 7) + (2,) * 24 + (1,)
    with pytest.raises(TemplateError):
        family_question_template(13, "3-chain")


def test_question_probe_rediscovers_the_family():
    report = search_family_questions(11, "3-chain")
    assert report.count == 20
    assert "homological only" in report.label
    model = family_configuration(11, 1)
    assert model in report.configurations
    for cfg in report.configurations:
        assert verify_cp_configuration(cfg.classes, cfg.p).ok


def test_question_probe_empty_past_the_family():
    template = family_question_template(12, "3-chain")
    assert estimate_search_space(template) == 3
    assert search(template) == []


def test_four_chain_probe():
    report = search_family_questions(6, "4-chain")
    assert report.count == 56
    assert report.template.p == 25


def test_question_probe_validation():
    with pytest.raises(DomainError):
        search_family_questions(3, "5-chain")
    with pytest.raises(DomainError):
        search_family_questions(12, "3-chain")
    with pytest.raises(DomainError):
        search_family_questions(7, "4-chain")
