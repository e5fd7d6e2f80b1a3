"""Time-frequency analysis of detector correlations on relativistic
worldlines: regularized vacuum Wigner and Page distributions, excess Wigner
functions of excited field states, adiabatic expansions, Bessel closed
forms, approximation schemes, and grid post-processing."""

from .core import (AccelerationProfile, ConstantProfile, SinusoidalProfile,
                   PiecewiseConstantProfile, SampledProfile, twin_profile,
                   WavepacketSpec, FieldState, Vacuum, GaussianCoherent,
                   GaussianFock, Superposition, MonochromaticCoherent,
                   MonochromaticFock, TimeFrequencyGrid, GridMeta,
                   ComplexKernelSlice, marginal_spectral_density,
                   integrate_power, average_energy, write_grid_csv,
                   read_grid_csv, COMPONENT_VACUUM_EXCESS,
                   COMPONENT_EXCITATION_EXCESS, COMPONENT_TOTAL,
                   COMPONENT_PAGE)
from .trajectory import Trajectory
from .vacuum import (VacuumJob, inertial_vacuum_wigner, thermal_wigner,
                     thermal_excess_wigner, vacuum_excess_wigner,
                     page_distribution, discontinuity_asymptote)
from .adiabatic import (adiabatic_W0, correction_W12, correction_W22,
                        first_order_sinusoidal, stationary_timescale,
                        classify_regime)
from .excitation import (packet_value, PacketValue, plane_wave_value,
                         excess_correlation, excess_wigner,
                         monochromatic_accel_wigner, twin_delay)
from .approx import (StationaryPointSet, stationary_points,
                     gaussian_approx_wigner, stationary_phase_wigner,
                     stationary_phase_deviations, airy_curvature)
from .analysis import (RidgeCurve, extract_ridge, recover_acceleration,
                       stationary_smooth)
from . import specfun, quadrature, errors

__version__ = "0.1.0"
