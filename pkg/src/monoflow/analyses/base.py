from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..framework import Transfer
from ..lattice import LatticeDescriptor


@dataclass(frozen=True)
class Setup:
    """Lattice, initial value and transfer of one analysis on one program."""

    lattice: LatticeDescriptor
    initial: Any
    transfer: Transfer
    direction: str
