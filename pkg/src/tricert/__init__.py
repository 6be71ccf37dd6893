"""Certifying 3-vertex- and 3-edge-connectivity via construction sequences."""
from .certificate import BgPath, ConstructionCertificate, format_certificate, parse_certificate
from .construction import certify
from .graph_core import Graph, GraphFormatError, InternalCheckError, NegativeWitness, parse_graph, verify_witness
from .verifier import Verdict, verify_certificate

__all__ = [
    "BgPath",
    "ConstructionCertificate",
    "Graph",
    "GraphFormatError",
    "InternalCheckError",
    "NegativeWitness",
    "Verdict",
    "certify",
    "format_certificate",
    "parse_certificate",
    "parse_graph",
    "verify_certificate",
    "verify_witness",
]
