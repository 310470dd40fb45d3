"""Entangled spin pairs under geometric phases.

Simulates a singlet pair whose arms pick up Aharonov-Bohm, Aharonov-Casher,
He-McKellar-Wilkens, Berry or dual Aharonov-Bohm phases, and evaluates CHSH
correlations, concurrence, entanglement of formation, fidelity and Bures
distance of the outgoing state.
"""

from geophase.chsh import (
    ChshAngles,
    ChshResult,
    Classification,
    Mode,
    OptimizerConfig,
    canonical_s,
    correlation_matrix,
    maximize_s,
    s_value,
)
from geophase.measurement import MeasurementDirection, closed_form_e, joint_expectation, projector
from geophase.measures import (
    MeasureReport,
    binary_entropy,
    bures_distance,
    concurrence_mixed,
    concurrence_pure,
    eof_from_concurrence,
    fidelity_mixed,
    fidelity_pure,
    measure_report,
    spin_flip,
)
from geophase.phases import (
    ABSetup,
    ACSetup,
    BerrySetup,
    DABSetup,
    HMWSetup,
    PhaseDecomposition,
    apply_phase,
    decompose,
    phase_equivalent,
    setup_from_dict,
)
from geophase.qstate import DensityMatrix4, PureState2Q, density_from_pure, schmidt_coefficients, singlet

__version__ = "0.1.0"
