"""Joint-spectral-amplitude modelling of group-velocity-matched parametric
downconversion: dispersion and phasematching for uniaxial crystals, the
angle-integrated two-photon joint spectrum under pump focusing and spatial
chirp, SVD-based Schmidt analysis, joint temporal structure, and two-source
Hong-Ou-Mandel predictions."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
