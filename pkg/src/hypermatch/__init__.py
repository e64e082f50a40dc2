"""Exact matching polynomials of k-uniform hypergraphs.

Modules: ``hypergraph`` (representation, HGR I/O, generators), ``poly``
(sparse integer polynomials), ``matchpoly`` (matching counts and
polynomials), ``pathtree`` (path trees and their identities), ``zeros``
(exact largest-zero enclosures, bounds, root extraction), ``tensor``
(adjacency tensors, power iteration, alpha-normal certificates) and
``cli``.
"""
from .errors import (
    BadArity,
    BadCertificate,
    BadPath,
    DuplicateEdge,
    HypermatchError,
    IdOutOfRange,
    Inconclusive,
    InputError,
    LimitExceeded,
    NoSpectrum,
    NotARoot,
    NotDivisible,
)
from .hypergraph import Hypergraph, parse, read_hgr, serialize
from .matchpoly import match_counts, matching_polynomial
from .poly import SparsePoly

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "SparsePoly",
    "parse",
    "read_hgr",
    "serialize",
    "match_counts",
    "matching_polynomial",
    "HypermatchError",
    "InputError",
    "DuplicateEdge",
    "BadArity",
    "IdOutOfRange",
    "BadPath",
    "NoSpectrum",
    "BadCertificate",
    "NotDivisible",
    "LimitExceeded",
    "Inconclusive",
    "NotARoot",
]
