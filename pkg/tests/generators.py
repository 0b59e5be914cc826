# tests/generators.py
"""
Geradores de tabelas/hierarquias aleatórias e oráculo exaustivo para os
testes de propriedade. Usa random.Random com semente fixa.
"""

import random
from typing import Dict, FrozenSet, List, Sequence, Tuple

from src.domain.hierarchy import (
    CategoryHierarchy,
    GeneralizationHierarchy,
    IntervalBin,
    IntervalHierarchy,
    MaskHierarchy,
)
from src.domain.table import AttributeRole, AttributeSchema, Table


# ════════════════════════════════════════════════════════════════
# HIERARQUIAS ALEATÓRIAS (com o domínio de valores brutos)
# ════════════════════════════════════════════════════════════════

def random_interval(rng: random.Random) -> Tuple[GeneralizationHierarchy, List[str]]:
    width = rng.randint(2, 5)
    count = rng.randint(2, 4)
    level1 = [
        IntervalBin(i * width, (i + 1) * width - 1, f"{i * width}-{(i + 1) * width - 1}")
        for i in range(count)
    ]
    levels = [level1]
    if rng.random() < 0.5:
        levels.append([IntervalBin(0, count * width - 1, "*")])
    domain = [str(v) for v in range(count * width)]
    return IntervalHierarchy(levels), domain


def random_category(rng: random.Random) -> Tuple[GeneralizationHierarchy, List[str]]:
    size = rng.randint(2, 6)
    groups = rng.randint(1, size)
    domain = [f"v{i}" for i in range(size)]
    level1 = {value: f"g{i % groups}" for i, value in enumerate(domain)}
    levels = [level1]
    if rng.random() < 0.5:
        levels.append({label: "*" for label in set(level1.values())})
    return CategoryHierarchy(levels), domain


def random_mask(rng: random.Random) -> Tuple[GeneralizationHierarchy, List[str]]:
    length = rng.randint(3, 4)
    pool = rng.randint(2, 6)
    prefix = "1" * (length - 2)
    domain = sorted({prefix + f"{rng.randint(0, 99):02d}" for _ in range(pool)})
    return MaskHierarchy(rng.randint(1, length)), domain


GENERATORS = (random_interval, random_category, random_mask)


def random_case(
    rng: random.Random,
    min_rows: int = 5,
    max_rows: int = 40,
    qi_counts: Sequence[int] = (2, 3),
) -> Tuple[Table, Dict[str, GeneralizationHierarchy], int]:
    """
    Tabela aleatória com 2-3 QIs, uma coluna sensível 'S' e uma
    insensitive 'N'.

    Returns:
        (tabela, hierarquias na ordem dos QIs, k)
    """
    q = rng.choice(list(qi_counts))
    hierarchies: Dict[str, GeneralizationHierarchy] = {}
    domains: List[List[str]] = []
    for index in range(q):
        h, domain = rng.choice(GENERATORS)(rng)
        hierarchies[f"Q{index}"] = h
        domains.append(domain)

    n_rows = rng.randint(min_rows, max_rows)
    rows = []
    for row_id in range(n_rows):
        qi_values = [rng.choice(domain) for domain in domains]
        rows.append(tuple(qi_values) + (rng.choice(["s1", "s2", "s3"]), f"n{row_id}"))

    schema = tuple(
        AttributeSchema(name, AttributeRole.QUASI_IDENTIFIER, h) for name, h in hierarchies.items()
    ) + (
        AttributeSchema("S", AttributeRole.SENSITIVE),
        AttributeSchema("N", AttributeRole.INSENSITIVE),
    )
    k = rng.choice([2, 3, 4])
    return Table(schema=schema, rows=tuple(rows)), hierarchies, k


# ════════════════════════════════════════════════════════════════
# ORÁCULOS (independentes do motor)
# ════════════════════════════════════════════════════════════════

def brute_force_classes(
    table: Table,
    hierarchies: Dict[str, GeneralizationHierarchy],
    levels: Sequence[int],
    ids: Sequence[int],
) -> Dict[Tuple[str, ...], List[int]]:
    """Agrupamento direto por chave generalizada"""
    indexes = [table.column_index(name) for name in hierarchies]
    classes: Dict[Tuple[str, ...], List[int]] = {}
    for row_id in sorted(ids):
        row = table.rows[row_id]
        key = tuple(
            h.generalize(row[index], level)
            for h, index, level in zip(hierarchies.values(), indexes, levels)
        )
        classes.setdefault(key, []).append(row_id)
    return classes


def exhaustive_best(
    table: Table,
    hierarchies: Dict[str, GeneralizationHierarchy],
    k: int,
) -> int:
    """
    Máximo de tuplas anonimizadas sobre todos os caminhos da política
    (empates de PrGain ramificam; todos NIL = todos seguem), sem limite de ramos.
    """
    tops = [h.max_level for h in hierarchies.values()]
    memo: Dict[Tuple[Tuple[int, ...], FrozenSet[int]], int] = {}

    def best(levels: Tuple[int, ...], pending: FrozenSet[int]) -> int:
        if not pending:
            return 0
        state = (levels, pending)
        if state in memo:
            return memo[state]

        options = []
        for index, top in enumerate(tops):
            if levels[index] == top:
                continue
            nxt = levels[:index] + (levels[index] + 1,) + levels[index + 1:]
            classes = brute_force_classes(table, hierarchies, nxt, list(pending))
            newly = frozenset(i for members in classes.values() if len(members) >= k for i in members)
            options.append((nxt, newly))

        if not options:
            memo[state] = 0
            return 0

        top_gain = max(len(newly) for _, newly in options)
        chosen = [(nxt, newly) for nxt, newly in options if len(newly) == top_gain]
        value = max(len(newly) + best(nxt, pending - newly) for nxt, newly in chosen)
        memo[state] = value
        return value

    return best(tuple([0] * len(tops)), frozenset(range(len(table))))
