"""Final cluster structure of one-dimensional sticky particle systems.

The clusters are read off the lower convex envelope of the cumulative
momentum diagram and can be checked against an exact event-driven
simulation.  The unit-mass, +-1 velocity case is solved exactly by lattice
path counting.
"""

from .diagram import (
    Cluster,
    ClusterSet,
    Envelope,
    MomentumDiagram,
    Particle,
    ParticleSystem,
    Polygon,
    PolygonDecomposition,
    ValidationError,
    build_momentum_diagram,
    decompose_polygons,
    diagram_svg,
    lower_convex_envelope,
    predict_clusters,
    recursive_envelope,
)
from .numerics import Rational, binom_plus, rational_parse, slope
from .simulator import CollisionEvent, SimulationResult, position_at, simulate, trajectories_svg

__version__ = "0.1.0"
