"""Detection and optimality for nested proper cones.

Two backends share one oracle interface: exact rational polyhedral cones
(:mod:`conedetect.exact`, :class:`ExactPair`) and numerical bipartite
entanglement witnesses (:mod:`conedetect.quantum`, :class:`QuantumPair`).
"""

from conedetect.detection import (
    ConePairOracle,
    DetectionVerdict,
    DomainError,
    EmptyDetectionSample,
    FinerVerdict,
    Improvement,
    OptimalityVerdict,
    detection_superset_check,
    detects,
    improve,
    is_finer,
    is_optimal,
    lambda_star,
    verify_finer,
    verify_optimality,
    zero_set,
)
from conedetect.exact import ConeError, ConeH, ConeV, Face
from conedetect.exact_pair import ExactPair
from conedetect.quantum import QuantumPair

__version__ = "0.1.0"

__all__ = [
    "ConeError",
    "ConeH",
    "ConePairOracle",
    "ConeV",
    "DetectionVerdict",
    "DomainError",
    "EmptyDetectionSample",
    "ExactPair",
    "Face",
    "FinerVerdict",
    "Improvement",
    "OptimalityVerdict",
    "QuantumPair",
    "detection_superset_check",
    "detects",
    "improve",
    "is_finer",
    "is_optimal",
    "lambda_star",
    "verify_finer",
    "verify_optimality",
    "zero_set",
]
