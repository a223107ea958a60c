import pytest
from hypothesis import given

from citepr import CitationDistribution, PublicationRecord, build_distribution, mean_ranks, unique_value_ranks
from citepr.errors import EmptyDistribution, UnknownCitationCount

from helpers import distributions


def test_counts_and_cumulative(fixture_dist):
    assert fixture_dist.n == 21
    assert fixture_dist.ccs == (0, 1, 2, 3, 7, 8, 9, 10, 13, 20)
    assert fixture_dist.counts == (4, 3, 1, 1, 4, 2, 1, 1, 2, 2)
    assert fixture_dist.cumulative[-1] == 21
    assert fixture_dist.below(7) == 9
    assert fixture_dist.at_or_below(7) == 13
    assert fixture_dist.at_or_above(7) == 12


def test_mean_ranks_match_sorted_positions(fixture_dist):
    ranks = mean_ranks(fixture_dist)
    assert ranks[0] == 2.5
    assert ranks[7] == 11.5
    assert ranks[20] == 20.5


def test_unique_value_ranks(fixture_dist):
    ranks = unique_value_ranks(fixture_dist)
    assert ranks[0] == (0, 0)
    assert ranks[1] == (1, 4)
    assert ranks[20] == (9, 19)


def test_single_paper():
    d = CitationDistribution.from_citations([5])
    assert d.n == 1
    assert mean_ranks(d) == {5: 1.0}


def test_empty_raises():
    with pytest.raises(EmptyDistribution):
        CitationDistribution.from_citations([])


def test_unknown_cc_raises(fixture_dist):
    with pytest.raises(UnknownCitationCount):
        fixture_dist.count(4)


@pytest.mark.parametrize("bad", [-1, 1.5, True, "3"])
def test_invalid_citation_values(bad):
    with pytest.raises(ValueError):
        CitationDistribution.from_citations([0, bad])


def test_entries_must_increase():
    with pytest.raises(ValueError):
        CitationDistribution(((3, 1), (2, 1)))


def test_build_distribution_checks_cell():
    recs = [
        PublicationRecord("a", 2001, 4, ("X", "Y")),
        PublicationRecord("b", 2001, 4, ("X",)),
    ]
    d = build_distribution(recs, (2001, "X"))
    assert d.entries == ((4, 2),)
    with pytest.raises(ValueError):
        build_distribution(recs, (2001, "Y"))


def test_record_validation():
    with pytest.raises(ValueError):
        PublicationRecord("a", 2001, 1, ())
    with pytest.raises(ValueError):
        PublicationRecord("a", 2001, 1, ("X", "X"))
    with pytest.raises(ValueError):
        PublicationRecord("a", 2001, 1, ("X",), (("U", 1.5),))


@given(distributions())
def test_mean_ranks_sum_to_triangular_number(dist):
    ranks = mean_ranks(dist)
    total = sum(ranks[cc] * k for cc, k in dist.entries)
    assert total == pytest.approx(dist.n * (dist.n + 1) / 2)


@given(distributions())
def test_expand_roundtrip(dist):
    assert CitationDistribution.from_citations(dist.expand()) == dist
