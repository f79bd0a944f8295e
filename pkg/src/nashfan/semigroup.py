"""
Rational polyhedral cones and the affine semigroups ``S = dual(sigma) ∩ Z^d`` of normal toric varieties.

Exponents are plain integer tuples. Since ``S`` is saturated, membership is decided by the facet
normals of the dual cone (the rays of ``sigma``) and ``u`` divides ``v`` in ``S`` iff ``v - u`` is a
member. In dimension two this turns every divisibility question into a componentwise comparison of the
"facet coordinates" ``(n_1·x, n_2·x)``, which is what all exact enumerations below are built on.
"""
import functools
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from sympy import Matrix
from sympy.core.numbers import igcdex

from .errors import DimensionUnsupported, InvalidSemigroup, NotInSemigroup, NotStrictlyConvex

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def dot(w: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(w, v))


def add(u: Exponent, v: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Exponent, v: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(u, v))


def scale(k: int, u: Exponent) -> Exponent:
    return tuple(k * a for a in u)


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def primitive(v: Sequence[int]) -> Exponent:
    """Divide an integer vector by the gcd of its entries."""
    g = functools.reduce(gcd, v, 0)
    if g == 0:
        raise ValueError("The zero vector has no primitive representative")
    return tuple(a // g for a in v)


def is_primitive(v: Sequence[int]) -> bool:
    return functools.reduce(gcd, v, 0) == 1


def _identity(d: int) -> Tuple[Exponent, ...]:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def _by_angle(vectors: Iterable[Exponent]) -> List[Exponent]:
    # all vectors lie in a strictly convex 2D cone, so the sign of det2 is a total angular order
    return sorted(vectors, key=functools.cmp_to_key(lambda a, b: -det2(a, b)))


@dataclass(frozen=True)
class Cone:
    """
    A strictly convex rational polyhedral cone given by primitive integer rays.

    In dimension two the rays are stored positively oriented (``det2(rays[0], rays[1]) > 0``);
    use :meth:`from_rays` to orient and primitivize arbitrary input.
    """

    rays: Tuple[Exponent, ...]

    def __post_init__(self):
        if not self.rays:
            raise NotStrictlyConvex("A cone needs at least one ray")
        d = len(self.rays[0])
        for ray in self.rays:
            if len(ray) != d:
                raise ValueError(f"Ray {ray} does not have dimension {d}")
            if not any(ray):
                raise NotStrictlyConvex("Rays must be nonzero")
            if not is_primitive(ray):
                raise ValueError(f"Ray {ray} is not primitive")
        if d == 2:
            if len(self.rays) != 2 or det2(*self.rays) <= 0:
                raise NotStrictlyConvex(
                    f"A full-dimensional 2D cone needs two independent, positively oriented rays, got {self.rays}"
                )
        else:
            _check_strictly_convex(self.rays)

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[int]]) -> "Cone":
        rays = [primitive(tuple(int(a) for a in ray)) for ray in rays]
        if len(rays) == 2 and len(rays[0]) == 2:
            if det2(rays[0], rays[1]) == 0:
                raise NotStrictlyConvex(f"Rays {rays} are linearly dependent")
            if det2(rays[0], rays[1]) < 0:
                rays = [rays[1], rays[0]]
        return cls(tuple(rays))

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def contains(self, w: Sequence) -> bool:
        """Membership of a (rational) vector; dimension two only."""
        self._require_2d()
        first, second = self.rays
        return det2(first, w) >= 0 and det2(w, second) >= 0

    def in_interior(self, w: Sequence) -> bool:
        self._require_2d()
        first, second = self.rays
        return det2(first, w) > 0 and det2(w, second) > 0

    def interior_point(self) -> Exponent:
        return tuple(sum(coords) for coords in zip(*self.rays))

    def _require_2d(self):
        if self.dim != 2:
            raise DimensionUnsupported(f"Only implemented for d = 2, got d = {self.dim}")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "rays": [list(ray) for ray in self.rays]}

    @classmethod
    def from_dict(cls, data: dict) -> "Cone":
        cone = cls.from_rays(data["rays"])
        if cone.dim != data.get("dim", cone.dim):
            raise ValueError(f"Declared dimension {data['dim']} does not match the rays")
        return cone


def _check_strictly_convex(rays: Sequence[Exponent]):
    """A cone is pointed iff some w has w·ray >= 1 for every ray; decided by a feasibility LP."""
    d = len(rays[0])
    if Matrix(rays).rank() < d:
        raise NotStrictlyConvex(f"Rays {rays} do not span a {d}-dimensional cone")
    result = linprog(
        c=np.zeros(d),
        A_ub=-np.array(rays, dtype=float),
        b_ub=-np.ones(len(rays)),
        bounds=[(None, None)] * d,
        method="highs",
    )
    if result.status != 0:
        raise NotStrictlyConvex(f"The cone spanned by {rays} contains a line")


def is_regular_cone(cone: Cone) -> bool:
    """True iff the primitive ray generators form part of a lattice basis (|det| = 1 for simplicial cones)."""
    if len(cone.rays) != cone.dim:
        return False
    return abs(int(Matrix(cone.rays).det())) == 1


@dataclass(frozen=True)
class AffineSemigroup:
    """
    The monoid of lattice points of a dual cone, with its minimal generators.

    ``generators`` lists the ``edge_count`` ray generators of the dual cone first. ``facet_normals``
    are the rays of ``sigma``. ``transform`` is the unimodular matrix that was applied to the exponents
    to bring the generators into the nonnegative orthant (identity when nothing was changed); weights
    transform contragrediently so that pairings ``w·u`` are preserved.
    """

    generators: Tuple[Exponent, ...]
    facet_normals: Tuple[Exponent, ...]
    edge_count: int
    transform: Tuple[Exponent, ...] = field(default=None)

    def __post_init__(self):
        d = len(self.facet_normals[0])
        if self.transform is None:
            object.__setattr__(self, "transform", _identity(d))
        for g in self.generators:
            if len(g) != d:
                raise InvalidSemigroup(f"Generator {g} does not have dimension {d}")
            if not any(g):
                raise InvalidSemigroup("Generators must be nonzero")
            if not self.contains(g):
                raise InvalidSemigroup(f"Generator {g} violates a facet inequality")
        if not d <= self.edge_count <= len(self.generators):
            raise InvalidSemigroup(f"Edge count {self.edge_count} out of range for d = {d}")
        for g in self.generators[: self.edge_count]:
            on_facets = sum(1 for normal in self.facet_normals if dot(normal, g) == 0)
            if on_facets < d - 1 or not is_primitive(g):
                raise InvalidSemigroup(f"{g} is not a primitive ray generator of the dual cone")
        for g in self.generators:
            for h in self.generators:
                if h != g and self.contains(sub(g, h)):
                    raise InvalidSemigroup(f"Generator {g} is not minimal: {h} divides it")

    @property
    def dim(self) -> int:
        return len(self.facet_normals[0])

    @property
    def sigma(self) -> Cone:
        return Cone.from_rays(self.facet_normals)

    @property
    def edge_generators(self) -> Tuple[Exponent, ...]:
        return self.generators[: self.edge_count]

    @property
    def is_regular(self) -> bool:
        return len(self.generators) == self.dim

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], facet_normals: Iterable[Sequence[int]]):
        """
        Build a semigroup from minimal generators in any order; the ray generators of the dual cone are
        detected as the generators whose vanishing facets span a hyperplane, and moved to the front.
        """
        generators = [tuple(int(a) for a in g) for g in generators]
        normals = tuple(tuple(int(a) for a in n) for n in facet_normals)
        d = len(normals[0])

        def is_edge(g):
            vanishing = [n for n in normals if dot(n, g) == 0]
            return bool(vanishing) and Matrix(vanishing).rank() == d - 1

        edges = [g for g in generators if is_edge(g)]
        rest = [g for g in generators if not is_edge(g)]
        if d == 2:
            edges, rest = _by_angle(edges), _by_angle(rest)
            normals = Cone.from_rays(normals).rays
        return cls(generators=tuple(edges + rest), facet_normals=normals, edge_count=len(edges))

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(normal, v) >= 0 for normal in self.facet_normals)

    def in_sigma_interior(self, w: Sequence) -> bool:
        """``w`` is in the interior of sigma iff it is positive on every ray generator of the dual cone."""
        return all(dot(w, e) > 0 for e in self.edge_generators)

    def check(self, v: Sequence[int]) -> Exponent:
        v = tuple(int(a) for a in v)
        if len(v) != self.dim or not self.contains(v):
            raise NotInSemigroup(f"{v} is not in the semigroup")
        return v

    def divide(self, u: Exponent, v: Exponent) -> Optional[Exponent]:
        """``v - u`` if ``u`` divides ``v`` in the semigroup, otherwise None."""
        w = sub(v, u)
        return w if self.contains(w) else None

    def divides(self, u: Exponent, v: Exponent) -> bool:
        return all(dot(normal, v) >= dot(normal, u) for normal in self.facet_normals)

    def facet_coordinates(self, v: Sequence[int]) -> Tuple[int, ...]:
        return tuple(dot(normal, v) for normal in self.facet_normals)

    def _require_2d(self):
        if self.dim != 2:
            raise DimensionUnsupported(f"Only implemented for d = 2, got d = {self.dim}")

    def edge_steps(self) -> Tuple[int, int]:
        """
        ``(c_1, c_2)`` where ``c_k = n_k·e_k`` and ``e_k`` is the edge generator on the facet of the
        other normal; subtracting ``e_k`` lowers the k-th facet coordinate by ``c_k`` and keeps the other.
        """
        self._require_2d()
        steps = []
        for k in range(2):
            other = self.facet_normals[1 - k]
            edge = next(e for e in self.edge_generators if dot(other, e) == 0)
            steps.append(dot(self.facet_normals[k], edge))
        return steps[0], steps[1]

    def lattice_points(self, lower: Sequence[int], upper: Sequence[int]) -> List[Exponent]:
        """
        All ``x`` in Z^2 with ``lower[k] <= n_k·x < upper[k]``, sorted.

        Solves ``N x = y`` over the integer box of facet coordinates ``y``; ``x`` is integral iff
        ``adj(N) y`` is divisible by ``det N``.
        """
        self._require_2d()
        (a, b), (c, e) = self.facet_normals
        det = a * e - b * c
        y1, y2 = np.meshgrid(
            np.arange(lower[0], upper[0], dtype=np.int64),
            np.arange(lower[1], upper[1], dtype=np.int64),
            indexing="ij",
        )
        x1 = e * y1 - b * y2
        x2 = -c * y1 + a * y2
        integral = (x1 % det == 0) & (x2 % det == 0)
        points = zip((x1[integral] // det).tolist(), (x2[integral] // det).tolist())
        return sorted(tuple(int(v) for v in p) for p in points)

    def min_common_multiples(self, u: Exponent, v: Exponent) -> List[Exponent]:
        """
        The divisibility-minimal elements of ``(u + S) ∩ (v + S)``.

        The region is ``{x : n_k·x >= b_k}`` with ``b_k = max(n_k·u, n_k·v)``. A minimal ``x`` cannot
        shed an edge generator, so ``b_k <= n_k·x < b_k + c_k``; within that parallelogram ``x`` is
        minimal iff no generator can be subtracted without leaving the region.
        """
        self._require_2d()
        if u == v:
            return [u]
        bounds = [max(dot(normal, u), dot(normal, v)) for normal in self.facet_normals]
        steps = self.edge_steps()
        candidates = self.lattice_points(bounds, [b + c for b, c in zip(bounds, steps)])

        def in_region(x):
            return all(dot(normal, x) >= b for normal, b in zip(self.facet_normals, bounds))

        minimal = [x for x in candidates if not any(in_region(sub(x, g)) for g in self.generators)]
        logger.debug("min common multiples of %s and %s: %s", u, v, minimal)
        return minimal

    def to_dict(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "facet_normals": [list(n) for n in self.facet_normals],
            "edge_count": self.edge_count,
            "transform": [list(row) for row in self.transform],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AffineSemigroup":
        transform = data.get("transform")
        return cls(
            generators=tuple(tuple(g) for g in data["generators"]),
            facet_normals=tuple(tuple(n) for n in data["facet_normals"]),
            edge_count=int(data["edge_count"]),
            transform=tuple(tuple(row) for row in transform) if transform else None,
        )


def _inverse_unimodular(matrix: Sequence[Sequence[int]]) -> Tuple[Exponent, ...]:
    inverse = Matrix(matrix).inv()
    return tuple(tuple(int(a) for a in inverse.row(i)) for i in range(inverse.rows))


def _apply(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> Exponent:
    return tuple(dot(row, v) for row in matrix)


def normalize_coordinates(semigroup: AffineSemigroup) -> Tuple[AffineSemigroup, Tuple[Exponent, ...]]:
    """
    Apply a unimodular change of coordinates moving the dual cone into the nonnegative quadrant.

    The first edge generator is completed to a lattice basis with the extended Euclidean algorithm
    (the 2D Hermite reduction), the second basis vector is flipped into the upper half plane and a
    shear moves the second edge into the first quadrant. Returns the transformed semigroup and the
    matrix ``U`` acting on exponents; facet normals are mapped by ``U^{-T}``.
    """
    if all(a >= 0 for g in semigroup.generators for a in g):
        return semigroup, semigroup.transform
    semigroup._require_2d()
    first, second = _by_angle(semigroup.edge_generators)
    x, y, _ = igcdex(first[0], first[1])
    transform = [[int(x), int(y)], [-first[1], first[0]]]
    s, t = _apply(transform, second)
    if t < 0:
        transform[1] = [-a for a in transform[1]]
        s, t = _apply(transform, second)
    if s < 0:
        shear = -(s // t)
        transform[0] = [a + shear * b for a, b in zip(transform[0], transform[1])]
    transform = tuple(tuple(row) for row in transform)
    dual = tuple(zip(*_inverse_unimodular(transform)))
    generators = [_apply(transform, g) for g in semigroup.generators]
    composed = (Matrix(transform) * Matrix(semigroup.transform)).tolist()
    edge_count = semigroup.edge_count
    normalized = AffineSemigroup(
        generators=tuple(_by_angle(generators[:edge_count]) + _by_angle(generators[edge_count:])),
        facet_normals=Cone.from_rays(_apply(dual, n) for n in semigroup.facet_normals).rays,
        edge_count=edge_count,
        transform=tuple(tuple(int(a) for a in row) for row in composed),
    )
    logger.info("applied unimodular transform %s to reach the nonnegative quadrant", transform)
    return normalized, transform


def dual_generators(cone: Cone) -> AffineSemigroup:
    """
    Minimal generators of ``dual(cone) ∩ Z^2``: the two edge generators first, then the generators
    inside the fundamental parallelogram of the edges, each group sorted by angle.
    """
    cone._require_2d()
    normals = cone.rays
    edges = []
    for k in range(2):
        other = normals[1 - k]
        edge = primitive((-other[1], other[0]))
        if dot(normals[k], edge) < 0:
            edge = scale(-1, edge)
        edges.append(edge)
    draft = AffineSemigroup(generators=tuple(edges), facet_normals=normals, edge_count=2)
    steps = draft.edge_steps()
    box = [p for p in draft.lattice_points((0, 0), (steps[0] + 1, steps[1] + 1)) if any(p)]
    coordinates = {p: draft.facet_coordinates(p) for p in box}

    def reducible(g):
        y = coordinates[g]
        return any(h != g and all(a <= b for a, b in zip(coordinates[h], y)) for h in box)

    irreducible = [g for g in box if not reducible(g)]
    interior = [g for g in irreducible if g not in edges]
    semigroup = AffineSemigroup(
        generators=tuple(_by_angle(edges) + _by_angle(interior)),
        facet_normals=normals,
        edge_count=2,
    )
    semigroup, _ = normalize_coordinates(semigroup)
    logger.info("dual generators of %s: %s", cone.rays, semigroup.generators)
    return semigroup
