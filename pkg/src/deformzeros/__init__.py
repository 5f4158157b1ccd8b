"""Toolkit for stress-testing families of Dirichlet-type series that share a
single Riemann-type functional equation: character catalogs, analytic
continuation, functional-equation residuals, critical-line zero counts, and
homotopy tracking of zeros under deformation between family members."""

__version__ = "0.1.0"
