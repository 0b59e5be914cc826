"""
Modelo de Domínio: Estado e resultado da anonimização por PrGain
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional, Tuple

from src.domain.hierarchy import GeneralizationVector


class ResidualPolicy(str, Enum):
    """Destino das tuplas que nunca atingiram uma classe de tamanho >= k"""

    DROP = "drop"          # ausentes de D'
    KEEP = "keep"          # emitidas na generalização final do ramo
    SUPPRESS = "suppress"  # todo quasi-identificador mascarado


@dataclass(frozen=True)
class SearchOptions:
    """Parâmetros da busca em ramos (max_branches=None: sem limite)"""

    max_branches: Optional[int] = 64
    residual_policy: ResidualPolicy = ResidualPolicy.DROP
    record_explored: bool = False


@dataclass(frozen=True)
class AnonymizationState:
    """
    Contadores T, T^u e T^a com os conjuntos de ids.
    unanonymized_ids e anonymized_ids são disjuntos e cobrem todos os ids.
    """

    total: int
    unanonymized_ids: FrozenSet[int]
    anonymized_ids: FrozenSet[int]
    current_vector: GeneralizationVector

    @classmethod
    def initial(cls, total: int, qi_count: int) -> "AnonymizationState":
        return cls(
            total=total,
            unanonymized_ids=frozenset(range(total)),
            anonymized_ids=frozenset(),
            current_vector=GeneralizationVector.zero(qi_count),
        )

    def __post_init__(self):
        if self.unanonymized_ids & self.anonymized_ids:
            raise ValueError("Conjuntos de ids sobrepostos")
        if len(self.unanonymized_ids) + len(self.anonymized_ids) != self.total:
            raise ValueError("T != T^u + T^a")

    def advance(self, vector: GeneralizationVector, newly: FrozenSet[int]) -> "AnonymizationState":
        return AnonymizationState(
            total=self.total,
            unanonymized_ids=self.unanonymized_ids - newly,
            anonymized_ids=self.anonymized_ids | newly,
            current_vector=vector,
        )


@dataclass(frozen=True)
class EquivalenceClass:
    """Tuplas com os mesmos valores generalizados de quasi-identificador"""

    key: Tuple[str, ...]
    member_ids: Tuple[int, ...]
    vector: Optional[GeneralizationVector] = None

    @property
    def size(self) -> int:
        return len(self.member_ids)


@dataclass(frozen=True)
class Candidate:
    """Um sucessor pontuado; sem novas tuplas anonimizadas = NIL"""

    vector: GeneralizationVector
    prgain: float
    newly_anonymized: FrozenSet[int]
    classes: Tuple[EquivalenceClass, ...] = ()

    @property
    def is_nil(self) -> bool:
        return not self.newly_anonymized


@dataclass(frozen=True)
class IterationRecord:
    """Uma iteração do ramo: vetor escolhido, PrGain e classes emitidas"""

    chosen_vector: GeneralizationVector
    prgain: float
    newly_anonymized: FrozenSet[int]
    emitted_classes: Tuple[EquivalenceClass, ...]

    @property
    def is_nil(self) -> bool:
        return not self.newly_anonymized


@dataclass(frozen=True)
class ExploredBranch:
    """Ramo visitado pela busca (para --trace=all)"""

    history: Tuple[GeneralizationVector, ...]
    trace: Tuple[IterationRecord, ...]
    outcome: str  # terminal | merged | pruned
    anonymized_count: int


@dataclass(frozen=True)
class AnonymizationResult:
    """
    D' e a trilha do ramo vencedor.
    groups ∪ residual_ids particionam todos os ids; todo grupo tem >= k membros.
    """

    groups: Tuple[EquivalenceClass, ...]
    residual_ids: FrozenSet[int]
    trace: Tuple[IterationRecord, ...]
    k: int
    final_prgain: float
    total: int
    quasi_identifiers: Tuple[str, ...]
    final_vector: GeneralizationVector
    residual_policy: ResidualPolicy = ResidualPolicy.DROP
    branch_count_peak: int = 1
    pruned_count: int = 0
    explored: Tuple[ExploredBranch, ...] = field(default=(), compare=False)

    @property
    def grouped_ids(self) -> FrozenSet[int]:
        return frozenset(i for g in self.groups for i in g.member_ids)

    @property
    def residual_count(self) -> int:
        return len(self.residual_ids)
