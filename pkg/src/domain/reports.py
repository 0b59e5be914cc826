"""
Schemas Pydantic dos relatórios (serialização JSON)
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class MetricsReport(BaseModel):
    """Eixos de avaliação: privacidade, perda de informação e tempo"""

    privacy_achieved: float = Field(ge=0.0, le=1.0)
    precision_loss: float = Field(ge=0.0, le=1.0)
    discernibility: int = Field(ge=0)
    residual_count: int = Field(ge=0)
    wall_time_ms: float = Field(ge=0.0)
    iterations: int = Field(ge=0)
    branch_count_peak: int = Field(ge=0)


class TraceEntry(BaseModel):
    """Forma de máquina de uma legenda de iteração"""

    vector: List[int]
    vector_label: str
    prgain: float
    nil: bool
    newly_anonymized: List[int]
    emitted_class_sizes: List[int]


class ExploredEntry(BaseModel):
    history: List[List[int]]
    outcome: str
    anonymized_count: int
    trace: List[TraceEntry]


class AnonymizationReport(MetricsReport):
    """Relatório do comando anonymize"""

    k: int
    q: int
    quasi_identifiers: List[str]
    residual_policy: str
    final_vector: List[int]
    trace: List[TraceEntry]
    explored: Optional[List[ExploredEntry]] = None


class KAnonymityReport(BaseModel):
    """Resultado de verify_k_anonymity"""

    k: int
    passed: bool
    class_count: int
    offending: List[Tuple[Tuple[str, ...], int]] = Field(default_factory=list)


class ComparisonRecord(BaseModel):
    """Acurácia Naïve Bayes: dados originais vs. anonimizados"""

    class_attr: str
    seed: int
    split: float
    original_accuracy: float
    anonymized_accuracy: float
    delta: float
    original_train_ms: float
    anonymized_train_ms: float
    original_rows: int
    anonymized_rows: int


class ExperimentRow(BaseModel):
    """Uma célula da grade k x q do comando experiment"""

    config: str
    k: int
    q: int
    privacy_achieved: float
    precision_loss: float
    residual_count: int
    wall_time_ms: float
    original_accuracy: float
    anonymized_accuracy: float
    original_train_ms: float
    anonymized_train_ms: float
