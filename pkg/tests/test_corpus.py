import pytest

from nashfan.corpus import make_corpus
from nashfan.semigroup import is_regular_cone


def test_corpus_is_deterministic():
    assert make_corpus(seed=7, singular=4, regular=2) == make_corpus(seed=7, singular=4, regular=2)


def test_corpus_sizes_and_regularity():
    singular, regular = make_corpus(seed=11, singular=5, regular=3, max_entry=5)
    assert len(singular) == 5 and len(regular) == 3
    assert not any(is_regular_cone(cone) for cone in singular)
    assert all(is_regular_cone(cone) for cone in regular)
    assert len(set(singular + regular)) == 8


def test_corpus_defaults_from_config():
    singular, regular = make_corpus()
    assert (len(singular), len(regular)) == (20, 5)


def test_corpus_needs_room_for_singular_cones():
    with pytest.raises(ValueError):
        make_corpus(max_entry=1)
