"""
Plane-Separation Geometry Solver

Recursive plane separation for Point-On-3-Lines and its 3Sum-hard
relatives, with quantum search emulated under an explicit cost ledger.
"""

__version__ = "1.0.0"
