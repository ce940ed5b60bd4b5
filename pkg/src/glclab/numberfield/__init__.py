from .construct import (
    FLCertificate,
    FixedGrid,
    build_lattice,
    fixed_grid_solve,
    rational_grid_fl_certificate,
    require_totally_real,
    unit_stabilizer,
    unit_to_diag,
)
from .klattice import KLattice, OrderData, order_of
from .units import IDReport, UnitRecord, UnitSearch, find_units, id_conditions_check, log_vector, verify_unit

__all__ = [
    "FLCertificate",
    "FixedGrid",
    "IDReport",
    "KLattice",
    "OrderData",
    "UnitRecord",
    "UnitSearch",
    "build_lattice",
    "find_units",
    "fixed_grid_solve",
    "id_conditions_check",
    "log_vector",
    "order_of",
    "rational_grid_fl_certificate",
    "require_totally_real",
    "unit_stabilizer",
    "unit_to_diag",
    "verify_unit",
]
