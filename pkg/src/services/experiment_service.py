"""
Service: ExperimentService
Grade k x q: anonimiza cada configuração para cada k (política drop)
e compara a acurácia Naïve Bayes do original com a do anonimizado
"""

import time
from pathlib import Path
from typing import List, Optional, Sequence

from src.domain.anonymization import ResidualPolicy, SearchOptions
from src.domain.errors import InvalidArgumentError
from src.domain.reports import ExperimentRow
from src.domain.table import Table, drop_identifiers
from src.infrastructure.config_loader import RunConfig, parse_config
from src.infrastructure.csv_io import load_table, read_header
from src.infrastructure.logger import get_logger
from src.services.anonymizer_service import anonymize, assemble_output
from src.services.classifier_service import utility_report
from src.services.metrics_service import summarize

logger = get_logger(__name__)


class ExperimentService:
    """
    Executa a grade de experimentos sobre um mesmo CSV.
    Semente e divisão são as mesmas para todas as células da grade.
    """

    def __init__(self, seed: int = 42, split: float = 0.7, omit_timing: bool = False):
        self.seed = seed
        self.split = split
        self.omit_timing = omit_timing

    def run(
        self,
        csv_path: str,
        config_paths: Sequence[str],
        k_values: Sequence[int],
        class_attr: Optional[str] = None,
    ) -> List[ExperimentRow]:
        """
        Uma linha por (config, k), na ordem recebida.

        Args:
            csv_path: CSV de entrada
            config_paths: Configurações (uma por conjunto de QIs)
            k_values: Valores de k
            class_attr: Atributo de classe; se None, usa o class_attr de cada config

        Raises:
            InvalidArgumentError: sem atributo de classe
            AnonymizationError: entrada, configuração ou anonimização inválida
        """
        rows: List[ExperimentRow] = []
        for config_path in config_paths:
            config = parse_config(config_path)
            target = class_attr or config.class_attr
            if not target:
                raise InvalidArgumentError(f"Sem atributo de classe para {config_path}")

            table = drop_identifiers(
                load_table(csv_path, config.attribute_schema(read_header(csv_path)))
            )
            rows.extend(self.run_config(table, config, Path(config_path).name, k_values, target))
        return rows

    def run_config(
        self,
        table: Table,
        config: RunConfig,
        config_name: str,
        k_values: Sequence[int],
        class_attr: str,
    ) -> List[ExperimentRow]:
        """Linhas da grade para uma configuração já carregada"""
        hierarchies = config.hierarchies()
        options = SearchOptions(max_branches=config.max_branches, residual_policy=ResidualPolicy.DROP)

        rows = []
        for k in k_values:
            started = time.perf_counter()
            result = anonymize(table, hierarchies, k, options)
            wall_time_ms = 0.0 if self.omit_timing else (time.perf_counter() - started) * 1000.0

            metrics = summarize(result, hierarchies, wall_time_ms)
            output = assemble_output(table, result, hierarchies)
            record = utility_report(
                table, output, class_attr,
                seed=self.seed, split=self.split,
                hierarchies=hierarchies, omit_timing=self.omit_timing,
            )
            rows.append(ExperimentRow(
                config=config_name,
                k=k,
                q=config.q,
                privacy_achieved=metrics.privacy_achieved,
                precision_loss=metrics.precision_loss,
                residual_count=metrics.residual_count,
                wall_time_ms=metrics.wall_time_ms,
                original_accuracy=record.original_accuracy,
                anonymized_accuracy=record.anonymized_accuracy,
                original_train_ms=record.original_train_ms,
                anonymized_train_ms=record.anonymized_train_ms,
            ))
            logger.info(
                f"✓ {config_name} k={k}: PrGain {metrics.privacy_achieved:.2%}, "
                f"acurácia {record.anonymized_accuracy:.2f}% (original {record.original_accuracy:.2f}%)"
            )
        return rows
