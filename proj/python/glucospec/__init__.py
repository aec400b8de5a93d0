"""Blood glucose estimation from MIR transmittance spectra.

Thin python surface over the C++ core: synthetic dataset generation, the
preprocessing chain, TBD/ADPD feature transforms, PCA-driven Ridge/SVR under
leave-one-out cross-validation, and Clarke/Parkes error-grid evaluation.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
