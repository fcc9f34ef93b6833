"""Symbolic engine for an ontic toy theory of two-level systems.

Single systems live in domains of disjoint states joined by superposition
maps of kinds 1, 2 and 3; pairs of systems add correlated states.  The
package canonicalizes expressions, simulates tests and local
transformations, runs dense coding and teleportation, and checks the rule
set for order independence.
"""
from .errors import (BadSharedState, DepthTooLarge, IllFormed, InconsistentTable, MixedParity,
                     NoRepresentation, ParseError, ScopeMismatch, ToyModelError, UndefinedForVariant,
                     UnknownDomain, UnknownEdge)
from .joint import canonicalize_joint, enumerate_correlated_domains, rebase_correlated
from .measurement import MeasurementRecord, MeasurementSpec, measure, measure_local_on_joint
from .model import MapEdge, ModelConfig, Variant, config_for, frustrated_three_domain, standard_four_domain, standard_two_domain
from .oracle import ConsistencyReport, confluence_check, vector_check
from .parser import parse, render
from .protocols import ProtocolTranscript, dense_coding, emit_outcome_table, teleport
from .states import canonicalize
from .transform import apply, compose, named
from .values import NULL, Correlated, Ket, Pair, Signed

__version__ = "0.1.0"
