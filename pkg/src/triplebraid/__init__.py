"""Braiding of dressed states in a three-fold degenerate four-level system."""

from .analysis import (
    BraidWord,
    KValue,
    ScanCurve,
    SchedulePolicy,
    breaking_probe,
    coherence_scan,
    k_continuous,
    k_discrete,
    k_scan,
    phase_scan,
    rank_relabel,
    writhe,
)
from .braiding import (
    BraidLetter,
    PulseEvent,
    Schedule,
    assemble_generator,
    dressed_populations,
    ideal_pi,
    letter,
    mixed_input,
    propagate,
    propagate_density,
    pulse_hamiltonian,
)
from .model import (
    ControlParams,
    DressedFrame,
    FivePodSpec,
    RabiSet,
    build_five_pod,
    build_h4,
    dressed_frame,
    gauge_connection,
    gauge_field,
    rabi_from_controls,
    reduce_five_pod,
)
from .numerics import expm_ih, frobenius_distance, hermitian_eig

__version__ = "0.1.0"
