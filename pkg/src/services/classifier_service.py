"""
Service: Naïve Bayes categórico com suavização de Laplace

Compara a utilidade de classificação da tabela original com a da tabela
anonimizada, sob o mesmo protocolo (mesma semente, mesma divisão).
"""

import math
import time
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.domain.errors import InvalidArgumentError
from src.domain.hierarchy import GeneralizationHierarchy, IntervalHierarchy
from src.domain.reports import ComparisonRecord
from src.domain.table import Table
from src.infrastructure.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class NaiveBayesModel:
    """
    Modelo treinado (imutável).
    Prioris somam 1; para cada (atributo, rótulo) as condicionais sobre o
    vocabulário do atributo somam 1.
    """

    class_attr: str
    class_priors: Dict[str, float]
    conditionals: Dict[Tuple[str, str, str], float]
    smoothing_alpha: float
    vocabulary: Dict[str, int]
    label_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(sorted(self.class_priors))

    @property
    def features(self) -> Tuple[str, ...]:
        return tuple(self.vocabulary)

    def unseen_probability(self, attr: str, label: str) -> float:
        """Piso suavizado para valores nunca vistos no treino"""
        alpha = self.smoothing_alpha
        return alpha / (self.label_counts[label] + alpha * (self.vocabulary[attr] + 1))


def train(table: Table, class_attr: str, alpha: float = 1.0) -> NaiveBayesModel:
    """
    Treina o modelo; todos os atributos são tratados como strings categóricas.

    Raises:
        InvalidArgumentError: tabela vazia, atributo de classe ausente ou alpha <= 0
    """
    if alpha <= 0:
        raise InvalidArgumentError(f"alpha deve ser > 0 (recebido {alpha})")
    if class_attr not in table.names:
        raise InvalidArgumentError(f"Atributo de classe ausente: '{class_attr}'")
    if len(table) == 0:
        raise InvalidArgumentError("Tabela vazia: impossível treinar")

    frame = table.to_frame()
    n = len(frame)
    label_counts = frame[class_attr].value_counts(sort=False)
    labels = sorted(label_counts.index)
    n_labels = len(labels)

    priors = {
        label: (int(label_counts[label]) + alpha) / (n + alpha * n_labels)
        for label in labels
    }

    features = [name for name in table.names if name != class_attr]
    vocabulary: Dict[str, int] = {}
    conditionals: Dict[Tuple[str, str, str], float] = {}

    for attr in features:
        values = sorted(frame[attr].unique())
        vocabulary[attr] = len(values)
        joint = frame.groupby([attr, class_attr], sort=False).size()
        for label in labels:
            denominator = int(label_counts[label]) + alpha * len(values)
            for value in values:
                count = int(joint.get((value, label), 0))
                conditionals[(attr, value, label)] = (count + alpha) / denominator

    return NaiveBayesModel(
        class_attr=class_attr,
        class_priors=priors,
        conditionals=conditionals,
        smoothing_alpha=alpha,
        vocabulary=vocabulary,
        label_counts={label: int(label_counts[label]) for label in labels},
    )


def classify(model: NaiveBayesModel, row: Mapping[str, str]) -> Tuple[str, Dict[str, float]]:
    """
    Rótulo de maior log-posterior (empate: menor rótulo lexicográfico).

    Args:
        model: Modelo treinado
        row: Valores dos atributos não-classe, por nome

    Returns:
        (rótulo, log-posterior por rótulo)
    """
    posteriors: Dict[str, float] = {}
    for label in model.labels:
        score = math.log(model.class_priors[label])
        for attr in model.features:
            prob = model.conditionals.get((attr, row[attr], label))
            if prob is None:
                prob = model.unseen_probability(attr, label)
            score += math.log(prob)
        posteriors[label] = score

    best = None
    for label in model.labels:
        if best is None or posteriors[label] > posteriors[best]:
            best = label
    return best, posteriors


def _split(table: Table, split_fraction: float, seed: int) -> Tuple[Table, Table]:
    if not 0 < split_fraction <= 1:
        raise InvalidArgumentError(f"split deve estar em (0, 1] (recebido {split_fraction})")

    if split_fraction == 1:
        return table, table  # ressubstituição

    order = np.random.default_rng(seed).permutation(len(table))
    cut = int(len(table) * split_fraction)
    train_rows = [table.rows[i] for i in order[:cut]]
    test_rows = [table.rows[i] for i in order[cut:]]
    if not test_rows:
        raise InvalidArgumentError("Partição de teste vazia")
    if not train_rows:
        raise InvalidArgumentError("Partição de treino vazia")
    return table.with_rows(train_rows), table.with_rows(test_rows)


def evaluate_timed(
    table: Table,
    class_attr: str,
    split_fraction: float = 0.7,
    seed: int = 42,
    alpha: float = 1.0,
) -> Tuple[float, float]:
    """
    Treina e testa.

    Returns:
        (acurácia em %, tempo de treino em ms)
    """
    train_part, test_part = _split(table, split_fraction, seed)

    started = time.perf_counter()
    model = train(train_part, class_attr, alpha)
    train_ms = (time.perf_counter() - started) * 1000.0

    class_index = table.column_index(class_attr)
    names = table.names
    correct = 0
    for row in test_part.rows:
        predicted, _ = classify(model, dict(zip(names, row)))
        correct += predicted == row[class_index]

    accuracy = 100.0 * correct / len(test_part)
    logger.info(
        f"✓ Avaliação NB: {accuracy:.2f}% ({correct}/{len(test_part)}), treino {train_ms:.1f} ms"
    )
    return accuracy, train_ms


def evaluate(
    table: Table,
    class_attr: str,
    split_fraction: float = 0.7,
    seed: int = 42,
    alpha: float = 1.0,
) -> float:
    """
    Acurácia (%) com embaralhamento determinístico pela semente.
    split_fraction = 1 treina e testa na tabela inteira (ressubstituição).
    """
    accuracy, _ = evaluate_timed(table, class_attr, split_fraction, seed, alpha)
    return accuracy


def discretize(table: Table, hierarchies: Mapping[str, GeneralizationHierarchy]) -> Table:
    """
    Troca células numéricas de QIs intervalares pelo rótulo do intervalo de
    nível 1. Células já generalizadas ficam como estão.
    """
    interval = {
        table.column_index(name): h
        for name, h in hierarchies.items()
        if isinstance(h, IntervalHierarchy) and name in table.names
    }
    if not interval:
        return table

    rows = []
    for row in table.rows:
        cells = list(row)
        for index, h in interval.items():
            label = h.level1_label(cells[index])
            if label is not None:
                cells[index] = label
        rows.append(tuple(cells))
    return table.with_rows(rows)


def utility_report(
    original: Table,
    anonymized: Table,
    class_attr: str,
    seed: int = 42,
    split: float = 0.7,
    alpha: float = 1.0,
    hierarchies: Optional[Mapping[str, GeneralizationHierarchy]] = None,
    omit_timing: bool = False,
) -> ComparisonRecord:
    """
    Compara a acurácia NB das duas tabelas sob o mesmo protocolo.
    anonymized não deve conter linhas residuais.
    """
    for label, table in (("original", original), ("anonimizada", anonymized)):
        if class_attr not in table.names:
            raise InvalidArgumentError(f"Atributo de classe '{class_attr}' ausente da tabela {label}")

    if hierarchies:
        original = discretize(original, hierarchies)
        anonymized = discretize(anonymized, hierarchies)

    original_acc, original_ms = evaluate_timed(original, class_attr, split, seed, alpha)
    anonymized_acc, anonymized_ms = evaluate_timed(anonymized, class_attr, split, seed, alpha)

    return ComparisonRecord(
        class_attr=class_attr,
        seed=seed,
        split=split,
        original_accuracy=original_acc,
        anonymized_accuracy=anonymized_acc,
        delta=original_acc - anonymized_acc,
        original_train_ms=0.0 if omit_timing else original_ms,
        anonymized_train_ms=0.0 if omit_timing else anonymized_ms,
        original_rows=len(original),
        anonymized_rows=len(anonymized),
    )
