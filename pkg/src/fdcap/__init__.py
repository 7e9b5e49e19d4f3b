"""Capacity models for single-cell full-duplex Wi-Fi.

Shannon limits below the MAC (half duplex, 1:1 FD, 1:N narrow-channel FD),
a Bianchi-style saturation throughput model for FD CSMA/CA under the ideal
FD condition, and a slotted simulator used to cross-check it.
"""

from fdcap.errors import DomainError, NumericError, SimulationError

__version__ = "0.1.0"

__all__ = ["DomainError", "NumericError", "SimulationError", "__version__"]
