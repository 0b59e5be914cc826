# src/services/__init__.py
"""Services - Lógica de negócio"""

from .anonymizer_service import (
    anonymize,
    assemble_output,
    equivalence_classes,
    prgain,
    score_candidates,
    split_k_anonymous,
    verify_k_anonymity,
)
from .metrics_service import discernibility, precision_loss, privacy_achieved, summarize
from .classifier_service import NaiveBayesModel, classify, evaluate, train, utility_report
from .experiment_service import ExperimentService

__all__ = [
    'anonymize',
    'assemble_output',
    'equivalence_classes',
    'prgain',
    'score_candidates',
    'split_k_anonymous',
    'verify_k_anonymity',
    'discernibility',
    'precision_loss',
    'privacy_achieved',
    'summarize',
    'NaiveBayesModel',
    'classify',
    'evaluate',
    'train',
    'utility_report',
    'ExperimentService',
]
