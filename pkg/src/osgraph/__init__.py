"""Quotient-norm graph parameters (theta, d_inf, sigma, gamma) with an embedded dense SDP solver."""

from .errors import (DegenerateQuotient, IndexOutOfRange, Infeasible, LoopEdge, MaxIterations,
                     NotInducedBipartite, NotSquare, NotSymmetric, OsGraphError, ParseError,
                     ShapeMismatch, SizeCapExceeded, SolverError, Unbounded)
from .graph import Graph, from_edge_list, read_graph
from .parameters import (d_inf, d_inf_dual, gamma, product_check, sandwich_report, sigma,
                         sigma_dual, theta, theta_bar, theta_dual, theta_diag_kernel,
                         theta_stability_check)
from .sdp import SolverSettings, solve

__version__ = "0.1.0"
