"""Bundled SRG family data: availability, certification, exact class counts."""

import pytest

from walkfp.datasets import list_families, load_family, petersen
from walkfp.graphs import detect_srg, verify_srg_identity

EXPECTED_COUNTS = {
    (5, 2, 0, 1): 1,
    (9, 4, 1, 2): 1,
    (10, 3, 0, 1): 1,
    (13, 6, 2, 3): 1,
    (15, 6, 1, 3): 1,
    (16, 6, 2, 2): 2,
    (16, 9, 4, 6): 2,
    (25, 12, 5, 6): 15,
    (26, 10, 3, 4): 10,
    (28, 12, 6, 4): 4,
    (29, 14, 6, 7): 1,
}


def test_family_listing():
    assert {f.as_tuple() for f in list_families()} == set(EXPECTED_COUNTS)


@pytest.mark.parametrize("params", sorted(EXPECTED_COUNTS))
def test_family_contents_certified(params):
    graphs = load_family(params)
    assert len(graphs) == EXPECTED_COUNTS[params]
    for g in graphs:
        detected = detect_srg(g)
        assert detected is not None and detected.as_tuple() == params
        assert verify_srg_identity(g, detected)
    # all members pairwise distinct as labeled graphs
    assert len({g.content_hash() for g in graphs}) == len(graphs)


def test_petersen_shortcut():
    g = petersen()
    assert detect_srg(g).as_tuple() == (10, 3, 0, 1)


def test_missing_family():
    with pytest.raises(FileNotFoundError):
        load_family((99, 0, 0, 0))
