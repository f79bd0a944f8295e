"""Fixed-seed corpus of two dimensional cones for the higher Nobile sweep."""
import logging
from math import gcd
from typing import List, Optional, Tuple

import numpy as np

from .config import get_config
from .semigroup import Cone, is_regular_cone

logger = logging.getLogger(__name__)


def _random_unimodular(rng: np.random.Generator, steps: int = 2) -> np.ndarray:
    matrix = np.eye(2, dtype=np.int64)
    for _ in range(steps):
        shear = np.eye(2, dtype=np.int64)
        i = int(rng.integers(2))
        shear[i, 1 - i] = int(rng.integers(-1, 2))
        matrix = shear @ matrix
    if rng.integers(2):
        matrix = matrix[::-1]
    return matrix


def _cone(rng: np.random.Generator, m: int, q: int) -> Cone:
    """An image of ``cone((0, 1), (m, -q))`` under a random unimodular map."""
    transform = _random_unimodular(rng)
    rays = [transform @ np.array(ray, dtype=np.int64) for ray in ((0, 1), (m, -q))]
    return Cone.from_rays(tuple(int(a) for a in ray) for ray in rays)


def make_corpus(
    seed: Optional[int] = None,
    singular: Optional[int] = None,
    regular: Optional[int] = None,
    max_entry: Optional[int] = None,
) -> Tuple[List[Cone], List[Cone]]:
    """
    :return: ``singular`` distinct singular cones (``m >= 2``) and ``regular`` distinct regular cones,
        drawn deterministically from ``seed``; unset arguments come from the configuration
    """
    defaults = get_config().corpus
    seed = defaults["seed"] if seed is None else seed
    singular = defaults["singular"] if singular is None else singular
    regular = defaults["regular"] if regular is None else regular
    max_entry = defaults["max_entry"] if max_entry is None else max_entry
    if max_entry < 2:
        raise ValueError(f"max_entry must be at least 2 to produce singular cones, got {max_entry}")
    rng = np.random.default_rng(seed)

    def draw(count: int, want_regular: bool) -> List[Cone]:
        cones: List[Cone] = []
        while len(cones) < count:
            m = 1 if want_regular else int(rng.integers(2, max_entry + 1))
            q = int(rng.integers(0, max_entry + 1)) if want_regular else int(rng.integers(1, m))
            if gcd(m, q) != 1:
                continue
            cone = _cone(rng, m, q)
            if cone not in cones and is_regular_cone(cone) == want_regular:
                cones.append(cone)
        return cones

    singular_cones, regular_cones = draw(singular, False), draw(regular, True)
    logger.info("corpus of %d singular and %d regular cones from seed %d", singular, regular, seed)
    return singular_cones, regular_cones
