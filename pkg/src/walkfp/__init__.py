"""Multi-particle continuous-time quantum walk fingerprints for graph comparison."""

from .graphs import (
    Graph,
    Graph6Error,
    SrgParams,
    VertexPermutation,
    apply_permutation,
    common_neighbors,
    decode_graph6,
    detect_srg,
    encode_graph6,
)
from .srg import (
    PowerCoefficients,
    PropagatorCoefficients,
    SrgSpectrum,
    power_coefficients,
    propagator_coefficients,
    srg_spectrum,
)
from .walk import (
    ManyBodyOperator,
    Propagator1P,
    WalkSpec,
    direct_evolution_operator,
    enumerate_basis,
    greens_function,
    single_particle_propagator,
    stream_green_magnitudes,
)
from .fingerprint import (
    ComparisonReport,
    Fingerprint,
    FingerprintCache,
    bin_sweep,
    build_fingerprint,
    compare,
    delta,
)
from .widgets import (
    Widget,
    WidgetCount,
    count_widget,
    triple_neighbor_census,
    two_particle_empty_count,
    widget_census,
    widget_value,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
