"""Cumulative momentum diagrams and the cluster prediction read off them.

The diagram of a system is the polyline through
``P_k = (m_1 + ... + m_k, m_1 v_1 + ... + m_k v_k)``.  Its lower convex
envelope touches the polyline at a set of *contact* points; each pair of
consecutive contacts bounds one polygon, and each polygon is one final
cluster whose velocity is the slope of its envelope edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _svg
from .numerics import RationalLike, as_rational, cross, slope


class ValidationError(ValueError):
    """A particle system violates its invariants.

    ``index`` is the zero-based particle that triggered the failure, when known.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class Particle:
    mass: Fraction
    position: Fraction
    velocity: Fraction

    def __post_init__(self):
        for name in ("mass", "position", "velocity"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.mass <= 0:
            raise ValidationError(f"mass must be positive, got {self.mass}")


@dataclass(frozen=True)
class ParticleSystem:
    particles: tuple[Particle, ...]

    def __post_init__(self):
        parts = tuple(self.particles)
        object.__setattr__(self, "particles", parts)
        if not parts:
            raise ValidationError("a system needs at least one particle")
        for i in range(1, len(parts)):
            if parts[i].position <= parts[i - 1].position:
                kind = "duplicate" if parts[i].position == parts[i - 1].position else "decreasing"
                raise ValidationError(
                    f"{kind} position {parts[i].position} for particle {i + 1}", index=i
                )

    @classmethod
    def from_values(
        cls,
        masses: Iterable[RationalLike],
        velocities: Iterable[RationalLike],
        positions: Iterable[RationalLike] | None = None,
    ) -> "ParticleSystem":
        masses = list(masses)
        velocities = list(velocities)
        if len(masses) != len(velocities):
            raise ValidationError("masses and velocities differ in length")
        if positions is None:
            positions = range(1, len(masses) + 1)
        positions = list(positions)
        if len(positions) != len(masses):
            raise ValidationError("positions and masses differ in length")
        try:
            parts = [Particle(m, x, v) for m, x, v in zip(masses, positions, velocities)]
        except ValidationError as exc:
            raise ValidationError(str(exc)) from None
        return cls(tuple(parts))

    @classmethod
    def unit(cls, velocities: Iterable[RationalLike], positions=None) -> "ParticleSystem":
        velocities = list(velocities)
        return cls.from_values([1] * len(velocities), velocities, positions)

    def __len__(self) -> int:
        return len(self.particles)

    @property
    def masses(self) -> list[Fraction]:
        return [p.mass for p in self.particles]

    @property
    def positions(self) -> list[Fraction]:
        return [p.position for p in self.particles]

    @property
    def velocities(self) -> list[Fraction]:
        return [p.velocity for p in self.particles]

    def with_positions(self, positions: Iterable[RationalLike]) -> "ParticleSystem":
        return ParticleSystem.from_values(self.masses, self.velocities, positions)


@dataclass(frozen=True)
class MomentumDiagram:
    points: tuple[tuple[Fraction, Fraction], ...]

    @property
    def n(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class Envelope:
    """Lower convex envelope of a diagram.

    ``contact_indices`` lists every ``k`` with ``P_k`` on the envelope,
    including points lying inside a straight edge.  ``vertex_indices`` is
    the subset where the envelope actually bends (plus both ends), and
    ``edge_slopes[i]`` is the slope between vertices ``i`` and ``i + 1``.
    """

    contact_indices: tuple[int, ...]
    vertex_indices: tuple[int, ...]
    edge_slopes: tuple[Fraction, ...]


@dataclass(frozen=True)
class Polygon:
    first: int  # 1-based member indices, inclusive
    last: int
    slope: Fraction
    degenerate: bool

    @property
    def members(self) -> tuple[int, int]:
        return (self.first, self.last)


@dataclass(frozen=True)
class PolygonDecomposition:
    polygons: tuple[Polygon, ...]


@dataclass(frozen=True)
class Cluster:
    members: tuple[int, int]  # 1-based, inclusive
    mass: Fraction
    velocity: Fraction

    @property
    def size(self) -> int:
        return self.members[1] - self.members[0] + 1


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple[Cluster, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def ranges(self) -> list[tuple[int, int]]:
        return [c.members for c in self.clusters]


def build_momentum_diagram(system: ParticleSystem) -> MomentumDiagram:
    x = Fraction(0)
    y = Fraction(0)
    points = [(x, y)]
    for p in system.particles:
        x += p.mass
        y += p.mass * p.velocity
        points.append((x, y))
    return MomentumDiagram(tuple(points))


def lower_contacts(points: Sequence[Sequence]) -> tuple[list[int], list[int]]:
    """Return ``(contacts, vertices)`` of the lower hull of x-sorted points.

    Works for any exact number type (``int`` or ``Fraction``).  The monotone
    chain keeps only strict turns; a second pass admits points lying exactly
    on a hull edge.
    """
    hull: list[int] = []
    for k, (px, py) in enumerate(points):
        while len(hull) >= 2:
            ox, oy = points[hull[-2]]
            ax, ay = points[hull[-1]]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) > 0:
                break
            hull.pop()
        hull.append(k)
    contacts = [hull[0]]
    for a, b in zip(hull, hull[1:]):
        pa, pb = points[a], points[b]
        for k in range(a + 1, b):
            if cross(pa, pb, points[k]) == 0:
                contacts.append(k)
        contacts.append(b)
    return contacts, hull


def lower_convex_envelope(diagram: MomentumDiagram) -> Envelope:
    pts = diagram.points
    contacts, vertices = lower_contacts(pts)
    slopes = tuple(slope(pts[a], pts[b]) for a, b in zip(vertices, vertices[1:]))
    return Envelope(tuple(contacts), tuple(vertices), slopes)


def decompose_polygons(diagram: MomentumDiagram, envelope: Envelope) -> PolygonDecomposition:
    pts = diagram.points
    c = envelope.contact_indices
    polys = tuple(
        Polygon(a + 1, b, slope(pts[a], pts[b]), b == a + 1) for a, b in zip(c, c[1:])
    )
    return PolygonDecomposition(polys)


def predict_clusters(system: ParticleSystem) -> ClusterSet:
    """Final clusters of ``system``, read off its momentum diagram.

    Positions are never consulted.
    """
    diagram = build_momentum_diagram(system)
    decomposition = decompose_polygons(diagram, lower_convex_envelope(diagram))
    pts = diagram.points
    return ClusterSet(
        tuple(
            Cluster(t.members, pts[t.last][0] - pts[t.first - 1][0], t.slope)
            for t in decomposition.polygons
        )
    )


def unit_cluster_count(velocities: Sequence[int]) -> int:
    """Number of final clusters for unit masses with integer velocities.

    Integer-only fast path used by the enumerators and the Monte Carlo
    sampler; equal to ``len(predict_clusters(ParticleSystem.unit(velocities)))``.
    """
    points = [(0, 0)]
    y = 0
    for k, v in enumerate(velocities, 1):
        y += v
        points.append((k, y))
    contacts, _ = lower_contacts(points)
    return len(contacts) - 1


def recursive_envelope(points: Sequence[Sequence]) -> list[tuple]:
    """Repeatedly drop interior points that are not local slope minima.

    A point survives a pass when the slope into it is at most the slope out
    of it.  Passes repeat until nothing changes.  Collinear points are kept.
    """
    seq = [tuple(p) for p in points]
    if not seq:
        raise ValueError("recursive_envelope needs at least one point")
    for a, b in zip(seq, seq[1:]):
        if b[0] <= a[0]:
            raise ValueError("points must have strictly increasing x")
    while len(seq) > 2:
        kept = [seq[0]]
        for i in range(1, len(seq) - 1):
            if slope(seq[i - 1], seq[i]) <= slope(seq[i], seq[i + 1]):
                kept.append(seq[i])
        kept.append(seq[-1])
        if len(kept) == len(seq):
            break
        seq = kept
    return seq


def diagram_svg(system: ParticleSystem, width: int = 480, height: int = 360, title: str | None = None) -> str:
    """Plot of the diagram polyline (black) over its envelope (red, dashed)."""
    diagram = build_momentum_diagram(system)
    envelope = lower_convex_envelope(diagram)
    pts = diagram.points
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    canvas = _svg.Canvas((min(xs), max(xs)), (min(ys), max(ys)), width, height)
    canvas.axes("cumulative mass", "cumulative momentum")
    canvas.polyline(pts, "#000000", cls="diagram")
    canvas.polyline([pts[k] for k in envelope.vertex_indices], "#d62728", width=2, dash="6,3", cls="envelope")
    contacts = set(envelope.contact_indices)
    for k, (x, y) in enumerate(pts):
        canvas.marker(x, y, "#d62728" if k in contacts else "#1f77b4", cls="point")
    return canvas.render(title or f"cumulative momentum diagram, n={len(system)}")
