"""Temperature estimation with two coupled charge qubits, locally and via teleportation.

Matrices are NumPy complex arrays in the basis |00>, |10>, |01>, |11>.
"""

from ._thermoprobe import (
    CLASSICAL_FIDELITY_THRESHOLD,
    CSV_HEADER,
    Error,
    InputState,
    NumericalError,
    SensorParams,
    ValidationError,
    __version__,
    channel_probabilities,
    fidelity,
    figure,
    gibbs_state,
    hamiltonian,
    hss,
    input_state,
    preset_names,
    preset_spec,
    qfi,
    selftest,
    sld,
    spectrum,
    sweep,
    teleport,
    teleport_closed_form,
    teleported_qfi,
    thermal_qfi,
    thermal_state,
    thermal_state_derivative,
)

__all__ = [
    "CLASSICAL_FIDELITY_THRESHOLD",
    "CSV_HEADER",
    "Error",
    "InputState",
    "NumericalError",
    "SensorParams",
    "ValidationError",
    "__version__",
    "channel_probabilities",
    "fidelity",
    "figure",
    "gibbs_state",
    "hamiltonian",
    "hss",
    "input_state",
    "preset_names",
    "preset_spec",
    "qfi",
    "selftest",
    "sld",
    "spectrum",
    "sweep",
    "teleport",
    "teleport_closed_form",
    "teleported_qfi",
    "thermal_qfi",
    "thermal_state",
    "thermal_state_derivative",
]
