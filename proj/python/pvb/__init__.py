"""Phase-space (von Neumann lattice) contracted DVR eigensolvers."""

from ._pvb import (
    ConfigError,
    EmptyMask,
    Error,
    NumericalError,
    __version__,
    build_frame_matrix,
    build_hamiltonian,
    build_lattice,
    build_mask,
    cmd_basis_dump,
    cmd_converge,
    cmd_prune_scan,
    cmd_solve,
    compare_spectra,
    Harmonic,
    KeepAll,
    EnergyShell,
    TopK,
    legendre_dvr,
    load_config,
    Morse,
    parse_config,
    QuarticDoubleWell,
    serialize_config,
    sinc_dvr,
    solve_direct,
    solve_pvb,
)
