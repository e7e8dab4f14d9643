"""Two-layer power-law analysis of turbulent boundary-layer mean-velocity profiles."""
from chevron.fitting import BreakConfig, ChevronFit, SegmentFit, break_eta, fit_chevron, fit_power_law
from chevron.kernels import BACKEND
from chevron.profiles import (DimensionlessProfile, ProfileFormat, RawProfile, StationMeta,
                              WindowConfig, fit_window, nondimensionalize, parse_profile)
from chevron.relations import StationRecord, cross_section, fit_b_vs_inv_beta, select_constant_re_band
from chevron.similarity import (invert_wall_law, pressure_gradient, similarity_parameter,
                                wall_law_from_re)

__version__ = "0.1.0"
