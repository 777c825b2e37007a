"""Normality of maximal torus orbit closures in simple B/C/D modules.

Weight sets, saturation and hereditary normality of integer vector sets,
checkable certificates, and the classification of simple modules whose
torus orbit closures are all normal.
"""

from .certify import HnCertificate, NssCertificate, verify, verify_hn_certificate, verify_nss_certificate
from .classify import ClassificationReport, classify, theorem1_scan, theorem1_table
from .rootsystem import RootSystem, Weight, WeightSet, dual_weight, in_weight_set, weight_set
from .saturation import EnssWitness, HnVerdict, VectorSet, is_hereditarily_normal, is_saturated, minimal_nss

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport", "EnssWitness", "HnCertificate", "HnVerdict", "NssCertificate", "RootSystem",
    "VectorSet", "Weight", "WeightSet", "classify", "dual_weight", "in_weight_set", "is_hereditarily_normal",
    "is_saturated", "minimal_nss", "theorem1_scan", "theorem1_table", "verify", "verify_hn_certificate",
    "verify_nss_certificate", "weight_set",
]
