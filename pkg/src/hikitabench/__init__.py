"""Exact combinatorics and polynomial identities around nilpotent orbits,
parabolic Slodowy varieties and the Hikita-Nakajima comparison."""

__version__ = "0.1.0"
