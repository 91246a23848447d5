"""Coherent configurations, their realizations of matrix multiplication, and
the exponent arithmetic built on them."""

from ._ccmm import *  # noqa: F401,F403
from ._ccmm import CapExceeded, Error, Rejection  # noqa: F401
