"""Explicit centrally symmetric neighborly polytopes and strictly antipodal sets.

Constructions live in :mod:`~csneighborly.seeds` and
:mod:`~csneighborly.curves`; :mod:`~csneighborly.verify` certifies faces
and slabs with linear programs.
"""

__version__ = "0.1.0"
