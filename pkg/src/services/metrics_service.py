"""
Service: Métricas de avaliação (privacidade, perda de informação, tempo)
"""

from fractions import Fraction
from typing import Mapping

from src.domain.anonymization import AnonymizationResult, ResidualPolicy
from src.domain.hierarchy import GeneralizationHierarchy
from src.domain.reports import MetricsReport
from src.infrastructure.logger import get_logger

logger = get_logger(__name__)


def privacy_achieved(result: AnonymizationResult) -> float:
    """Fração das tuplas que terminaram em algum grupo k-anônimo"""
    if result.total == 0:
        return 0.0
    return len(result.grouped_ids) / result.total


def precision_loss(
    result: AnonymizationResult,
    hierarchies: Mapping[str, GeneralizationHierarchy],
) -> float:
    """
    Média, sobre todas as células de QI, de nível usado / nível máximo.
    Resíduo conta como nível máximo (drop, suppress) ou no nível impresso (keep).
    """
    max_levels = [hierarchies[name].max_level for name in result.quasi_identifiers]
    q = len(max_levels)
    if result.total == 0 or q == 0:
        return 0.0

    def height(levels) -> Fraction:
        return sum((Fraction(lv, top) for lv, top in zip(levels, max_levels)), Fraction(0))

    loss = Fraction(0)
    for group in result.groups:
        loss += height(group.vector.levels) * group.size

    if result.residual_policy == ResidualPolicy.KEEP:
        loss += height(result.final_vector.levels) * result.residual_count
    else:
        loss += q * result.residual_count

    return float(loss / (result.total * q))


def discernibility(result: AnonymizationResult) -> int:
    """Σ |grupo|² + resíduo × T"""
    return sum(g.size ** 2 for g in result.groups) + result.residual_count * result.total


def summarize(
    result: AnonymizationResult,
    hierarchies: Mapping[str, GeneralizationHierarchy],
    wall_time_ms: float = 0.0,
) -> MetricsReport:
    """
    Consolida todas as métricas de um resultado.

    Args:
        result: Resultado da anonimização
        hierarchies: Hierarquias usadas
        wall_time_ms: Duração da chamada anonymize (sem I/O)
    """
    report = MetricsReport(
        privacy_achieved=privacy_achieved(result),
        precision_loss=precision_loss(result, hierarchies),
        discernibility=discernibility(result),
        residual_count=result.residual_count,
        wall_time_ms=wall_time_ms,
        iterations=len(result.trace),
        branch_count_peak=result.branch_count_peak,
    )
    logger.debug(f"Métricas: {report.model_dump()}")
    return report
