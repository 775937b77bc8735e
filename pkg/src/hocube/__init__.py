"""Computational finite cubical homotopy theory.

Core layers:

* :mod:`hocube.cubical` -- normalized finite cubical sets and quotients;
* :mod:`hocube.monoidal` -- tensor, levelwise product, and the comparison map;
* :mod:`hocube.simplicial` -- simplicial sets, triangulation, cubical
  singular functor, adjunction checks;
* :mod:`hocube.homology` / :mod:`hocube.intmat` -- integral homology via
  Smith normal form (compiled kernel with pure fallback);
* :mod:`hocube.lattice` -- finite composition-table categories;
* :mod:`hocube.wcon` -- the cubical W-construction and obstruction complexes;
* :mod:`hocube.toda` -- chain-level Toda bracket evaluation;
* :mod:`hocube.cli` -- the ``hocube`` command line tool.
"""

__version__ = "0.1.0"
