"""Outcome-deterministic, contextual simulation of n-qubit stabilizer quantum mechanics."""

from .circuit import Circuit, Instruction, MeasurementRecord, execute, parse_circuit
from .coins import CoinSource, PinnedCoins
from .context import (
    OnticState,
    apply_cnot,
    apply_cz,
    apply_h,
    apply_s,
    apply_x,
    apply_y,
    apply_z,
    check_symplectic,
    expand,
    measure,
    measure_lanes,
    prepare_by_measurement,
    prepare_canonical,
    stats,
)
from .pauli import PauliOperator, compose, format_pauli, parse_pauli, symplectic_product

__version__ = "0.1.0"
