# src/domain/__init__.py
"""Domain Models - Entidades do sistema"""

from .table import AttributeRole, AttributeSchema, Table, drop_identifiers
from .hierarchy import (
    GeneralizationHierarchy,
    IntervalBin,
    IntervalHierarchy,
    CategoryHierarchy,
    MaskHierarchy,
    GeneralizationVector,
    ValidationReport,
    validate_hierarchy,
    successors,
)
from .anonymization import (
    AnonymizationState,
    AnonymizationResult,
    Candidate,
    EquivalenceClass,
    IterationRecord,
    ResidualPolicy,
    SearchOptions,
)

__all__ = [
    'AttributeRole',
    'AttributeSchema',
    'Table',
    'drop_identifiers',
    'GeneralizationHierarchy',
    'IntervalBin',
    'IntervalHierarchy',
    'CategoryHierarchy',
    'MaskHierarchy',
    'GeneralizationVector',
    'ValidationReport',
    'validate_hierarchy',
    'successors',
    'AnonymizationState',
    'AnonymizationResult',
    'Candidate',
    'EquivalenceClass',
    'IterationRecord',
    'ResidualPolicy',
    'SearchOptions',
]
