"""Cavity QED simulator: N two-level atoms coupled to a truncated field mode
with Kerr nonlinearity, parametric amplification and intrinsic decoherence,
plus global-quantum-discord and quantum-Fisher-information observables."""

__version__ = "0.1.0"

from .linalg import HilbertLayout, Spectrum, eig_hermitian, kron, partial_trace, trace_out_field
from .model import (InitialStateParams, SystemParams, annihilation_op, atom_op,
                    build_hamiltonian, build_initial_state,
                    initial_state_theta_derivative)
from .dynamics import Propagator, evolve, evolve_series_oracle, make_propagator
from .discord import GqdOptions, GqdResult, gqd, gqd_objective, rotation_operator, von_neumann_entropy
from .metrology import aqfi_timeseries, cfi_diagonal, qfi
from .runner import (ConfigError, RunError, ScenarioConfig, TimeSeriesRecord,
                     preset, preset_variants, run_scenario, write_csv)
