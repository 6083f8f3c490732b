"""Event-driven exact simulation of sticky particles on a line.

Clusters move freely until two neighbours meet; every group of clusters that
reaches the same point at the same instant fuses into one cluster carrying
the mass-weighted mean velocity of its members.  All times and positions are
exact rationals, so simultaneous multi-way collisions are detected exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _svg
from .diagram import Cluster, ClusterSet, ParticleSystem
from .numerics import as_rational


@dataclass(frozen=True)
class SimClusterState:
    members: tuple[int, int]
    mass: Fraction
    position: Fraction  # at time ``since``
    velocity: Fraction
    since: Fraction


@dataclass(frozen=True)
class CollisionEvent:
    time: Fraction
    position: Fraction
    merged: tuple[tuple[int, int], ...]

    @property
    def members(self) -> tuple[int, int]:
        return (self.merged[0][0], self.merged[-1][1])


@dataclass(frozen=True)
class SimulationResult:
    events: tuple[CollisionEvent, ...]
    final: ClusterSet
    states: tuple[SimClusterState, ...]


class _Moving:
    # position at time t is offset + velocity * t
    __slots__ = ("first", "last", "mass", "momentum", "velocity", "offset", "since", "anchor")

    def __init__(self, first, last, mass, momentum, offset, since, anchor):
        self.first = first
        self.last = last
        self.mass = mass
        self.momentum = momentum
        self.velocity = momentum / mass
        self.offset = offset
        self.since = since
        self.anchor = anchor


def simulate(system: ParticleSystem) -> SimulationResult:
    zero = Fraction(0)
    live = [
        _Moving(i, i, p.mass, p.mass * p.velocity, p.position, zero, p.position)
        for i, p in enumerate(system.particles, 1)
    ]
    events: list[CollisionEvent] = []

    while True:
        best = None
        meets = []
        for left, right in zip(live, live[1:]):
            if left.velocity > right.velocity:
                t = (right.offset - left.offset) / (left.velocity - right.velocity)
                meets.append(t)
                if best is None or t < best:
                    best = t
            else:
                meets.append(None)
        if best is None:
            break

        merged: list[_Moving] = []
        i = 0
        while i < len(live):
            j = i
            while j < len(meets) and meets[j] == best:
                j += 1
            if j == i:
                merged.append(live[i])
                i += 1
                continue
            group = live[i : j + 1]
            where = group[0].offset + group[0].velocity * best
            mass = sum((c.mass for c in group), zero)
            momentum = sum((c.momentum for c in group), zero)
            fused = _Moving(group[0].first, group[-1].last, mass, momentum, zero, best, where)
            fused.offset = where - fused.velocity * best
            merged.append(fused)
            events.append(CollisionEvent(best, where, tuple((c.first, c.last) for c in group)))
            i = j + 1
        live = merged

    final = ClusterSet(tuple(Cluster((c.first, c.last), c.mass, c.velocity) for c in live))
    states = tuple(
        SimClusterState((c.first, c.last), c.mass, c.anchor, c.velocity, c.since) for c in live
    )
    return SimulationResult(tuple(events), final, states)


def _group_velocity(system: ParticleSystem, first: int, last: int) -> Fraction:
    parts = system.particles[first - 1 : last]
    mass = sum(p.mass for p in parts)
    return sum(p.mass * p.velocity for p in parts) / mass


def _breakpoints(result: SimulationResult, system: ParticleSystem, i: int):
    """Yield ``(time, position, velocity)`` at t=0 and every event involving ``i``."""
    p = system.particles[i - 1]
    yield Fraction(0), p.position, p.velocity
    for ev in result.events:
        lo, hi = ev.members
        if lo <= i <= hi:
            yield ev.time, ev.position, _group_velocity(system, lo, hi)


def position_at(result: SimulationResult, system: ParticleSystem, i: int, t) -> Fraction:
    if not 1 <= i <= len(system):
        raise IndexError(f"particle index {i} outside 1..{len(system)}")
    t = as_rational(t)
    if t < 0:
        raise ValueError("time must be non-negative")
    t0, x0, v0 = Fraction(0), system.particles[i - 1].position, system.particles[i - 1].velocity
    for bt, bx, bv in _breakpoints(result, system, i):
        if bt > t:
            break
        t0, x0, v0 = bt, bx, bv
    return x0 + v0 * (t - t0)


def trajectories_svg(result: SimulationResult, system: ParticleSystem, t_max, width: int = 480, height: int = 360) -> str:
    """Space-time plot: one polyline per particle, a dot per collision."""
    t_max = as_rational(t_max)
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    paths = []
    for i in range(1, len(system) + 1):
        pts = [(x, t) for t, x, _ in _breakpoints(result, system, i) if t <= t_max]
        pts.append((position_at(result, system, i, t_max), t_max))
        paths.append(pts)
    xs = [x for path in paths for x, _ in path]
    canvas = _svg.Canvas((min(xs), max(xs)), (0, t_max), width, height)
    canvas.axes("x", "t")
    for path in paths:
        canvas.polyline(path, "#000000", cls="trajectory")
    for ev in result.events:
        if ev.time <= t_max:
            canvas.marker(ev.position, ev.time, "#d62728", cls="collision")
    return canvas.render(f"sticky particle trajectories, n={len(system)}")
