"""Klein-Gordon and Schrödinger scattering for Varshni, Hellmann and Varshni-Shukla potentials."""

__version__ = "0.1.0"

from .errors import KGScatterError
from .model import Kinematics, Mode, PotentialKind, PotentialSpec, channel_params
from .scattering import (
    envelope_amplitude,
    normalization_constant,
    phase_shift,
    radial_wavefunction,
)
from .specfun import ArgConvention, arg_gamma, gauss_2f1, log_gamma
from .spectra import nr_levels, solve_rel_levels

__all__ = [
    "__version__",
    "ArgConvention",
    "KGScatterError",
    "Kinematics",
    "Mode",
    "PotentialKind",
    "PotentialSpec",
    "arg_gamma",
    "channel_params",
    "envelope_amplitude",
    "gauss_2f1",
    "log_gamma",
    "normalization_constant",
    "nr_levels",
    "phase_shift",
    "radial_wavefunction",
    "solve_rel_levels",
]
