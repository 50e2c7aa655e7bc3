"""Synthetic benchmark for drift confined to a subgroup of an Agrawal stream."""
from .detectors import DDM, EDDM, FHDDM, HDDM, DetectorStatus, make_detector
from .drift import DriftSchedule, label_with_drift, make_stream, mix_probability
from .exceptions import CalibrationError, ConfigurationError, InvalidSliceError
from .stream import Record, classify, classify_records, perturb, perturb_records, sample_record, sample_records
from .subgroup import Slice, Subgroup, contains, generate_subgroup, slice_probability, subgroup_probability
from .tree import DecisionTreeClassifier

__version__ = "0.1.0"

__all__ = [
    "DDM", "EDDM", "FHDDM", "HDDM", "DetectorStatus", "make_detector",
    "DriftSchedule", "label_with_drift", "make_stream", "mix_probability",
    "CalibrationError", "ConfigurationError", "InvalidSliceError",
    "Record", "classify", "classify_records", "perturb", "perturb_records",
    "sample_record", "sample_records",
    "Slice", "Subgroup", "contains", "generate_subgroup", "slice_probability",
    "subgroup_probability", "DecisionTreeClassifier",
]
