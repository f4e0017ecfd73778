"""Finite quantum-logic structures: orthomodular lattices, Boolean blocks,
section algebras and matrix projections."""

from ._qlogic import (
    Lattice,
    QlogicError,
    bruns_lakser,
    four_block_section_count,
    proj_join,
    proj_meet,
    run_cli,
)

__all__ = [
    "Lattice",
    "QlogicError",
    "bruns_lakser",
    "four_block_section_count",
    "proj_join",
    "proj_meet",
    "run_cli",
]
