"""Quantum limits on storing and sending information in bounded systems.

The subpackages are usable on their own:

``numerics``
    Spherical Bessel zeros, the Bose integral and a bracketing root finder.
``spectra``
    Mode spectra for cavities, chains and hadronic matter, and their file format.
``capacity``
    Steady-state channel capacities and their classical and quantum limits.
``burst``
    Capacity of finite-duration signals and linear information-energy bounds.
``counting``
    Exact state counting and specific-entropy maxima of confined fields.
"""

from . import burst, capacity, counting, numerics, spectra

__all__ = ["burst", "capacity", "counting", "numerics", "spectra"]
__version__ = "0.1.0"
