"""Adjoint orbits of maximal unipotent subgroups of Chevalley groups.

Root data and integral structure constants, a backtracking parametrization of
the orbits of U on its Lie algebra by cells, point counts of the cells over
finite fields, and a brute-force orbit oracle.
"""

__version__ = "0.1.0"
