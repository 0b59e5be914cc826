"""
Service: Anonimização multi-iterativa guiada por PrGain

Cada iteração generaliza um quasi-identificador em um nível sobre as tuplas
ainda não anonimizadas, escolhe o candidato de maior PrGain, emite as classes
que atingiram k e repete sobre o restante. Empates abrem ramos; a decisão
final só acontece quando todos os ramos terminam.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.domain.anonymization import (
    AnonymizationResult,
    AnonymizationState,
    Candidate,
    EquivalenceClass,
    ExploredBranch,
    IterationRecord,
    ResidualPolicy,
    SearchOptions,
)
from src.domain.errors import (
    AnonymizationImpossibleError,
    HierarchyError,
    InvalidArgumentError,
)
from src.domain.hierarchy import (
    GeneralizationHierarchy,
    GeneralizationVector,
    MaskHierarchy,
    successors,
    validate_hierarchy,
)
from src.domain.reports import KAnonymityReport
from src.domain.table import Table
from src.infrastructure.logger import get_logger
from src.services.metrics_service import precision_loss

logger = get_logger(__name__)

Hierarchies = Mapping[str, GeneralizationHierarchy]


# ════════════════════════════════════════════════════════════════
# COLUNAS GENERALIZADAS (cache por QI e nível)
# ════════════════════════════════════════════════════════════════

class Generalizer:
    """
    Materializa, sob demanda, a coluna de cada quasi-identificador em cada
    nível. Cada valor distinto é generalizado uma única vez.
    """

    def __init__(self, table: Table, hierarchies: Hierarchies):
        self.table = table
        self.names: Tuple[str, ...] = tuple(hierarchies)
        self.hierarchies: Tuple[GeneralizationHierarchy, ...] = tuple(hierarchies.values())
        self._raw = [table.column(name) for name in self.names]
        self._columns: Dict[Tuple[int, int], List[str]] = {}

    def column(self, qi_index: int, level: int) -> List[str]:
        cached = self._columns.get((qi_index, level))
        if cached is not None:
            return cached

        raw = self._raw[qi_index]
        if level == 0:
            column = raw
        else:
            h = self.hierarchies[qi_index]
            images = {value: h.generalize(value, level) for value in set(raw)}
            column = [images[value] for value in raw]

        self._columns[(qi_index, level)] = column
        return column

    def key(self, row_id: int, vector: GeneralizationVector) -> Tuple[str, ...]:
        return tuple(
            self.column(i, level)[row_id] for i, level in enumerate(vector.levels)
        )


# ════════════════════════════════════════════════════════════════
# OPERAÇÕES BÁSICAS
# ════════════════════════════════════════════════════════════════

def equivalence_classes(
    table: Table,
    ids: Iterable[int],
    v: GeneralizationVector,
    hierarchies: Hierarchies,
    generalizer: Optional[Generalizer] = None,
) -> List[EquivalenceClass]:
    """
    Particiona ids pelos valores generalizados dos QIs no vetor v.
    As classes saem ordenadas pelo menor id membro.
    """
    gen = generalizer or Generalizer(table, hierarchies)
    columns = [gen.column(i, level) for i, level in enumerate(v.levels)]

    buckets: Dict[Tuple[str, ...], List[int]] = {}
    for row_id in sorted(ids):
        key = tuple(col[row_id] for col in columns)
        buckets.setdefault(key, []).append(row_id)

    return [
        EquivalenceClass(key=key, member_ids=tuple(members), vector=v)
        for key, members in buckets.items()
    ]


def split_k_anonymous(
    classes: Sequence[EquivalenceClass],
    k: int,
) -> Tuple[List[EquivalenceClass], FrozenSet[int]]:
    """
    Separa as classes com >= k membros das demais.

    Returns:
        (classes qualificadas, ids das classes menores)
    """
    if k < 2:
        raise InvalidArgumentError(f"k deve ser >= 2 (recebido {k})")

    qualifying = [c for c in classes if c.size >= k]
    rest = frozenset(i for c in classes if c.size < k for i in c.member_ids)
    return qualifying, rest


def prgain(total: int, unanonymized_before: int, newly_anonymized: int) -> float:
    """
    PrGain = (T - (T^u - T^a_q)) / T: fração acumulada anonimizada caso o
    candidato seja aplicado.
    """
    if total < 1:
        raise InvalidArgumentError(f"total deve ser >= 1 (recebido {total})")
    if not 0 <= newly_anonymized <= unanonymized_before <= total:
        raise InvalidArgumentError(
            f"esperado 0 <= {newly_anonymized} <= {unanonymized_before} <= {total}"
        )
    return (total - (unanonymized_before - newly_anonymized)) / total


def score_candidates(
    table: Table,
    state: AnonymizationState,
    hierarchies: Hierarchies,
    k: int,
    generalizer: Optional[Generalizer] = None,
) -> List[Candidate]:
    """
    Pontua cada sucessor do vetor atual sobre as tuplas não anonimizadas.
    Candidatos sem novas tuplas anonimizadas ficam marcados como NIL.
    """
    gen = generalizer or Generalizer(table, hierarchies)
    unanonymized = len(state.unanonymized_ids)

    candidates = []
    for vector in successors(state.current_vector, gen.hierarchies):
        classes = equivalence_classes(table, state.unanonymized_ids, vector, hierarchies, gen)
        qualifying, _ = split_k_anonymous(classes, k)
        newly = frozenset(i for c in qualifying for i in c.member_ids)
        score = prgain(state.total, unanonymized, len(newly))
        candidates.append(Candidate(vector, score, newly, tuple(qualifying)))
        logger.debug(
            f"Candidato {vector.describe(gen.names)}: "
            + ("PrGain = NIL" if not newly else f"PrGain = {score:.2%} (+{len(newly)})")
        )
    return candidates


def select_candidates(candidates: Sequence[Candidate]) -> List[Candidate]:
    """
    Mantém todos os candidatos não-NIL de PrGain máximo (empate abre ramos).
    Se todos forem NIL, todos seguem (travessia de platô).
    """
    productive = [c for c in candidates if not c.is_nil]
    if not productive:
        return list(candidates)
    best = max(len(c.newly_anonymized) for c in productive)
    return [c for c in productive if len(c.newly_anonymized) == best]


# ════════════════════════════════════════════════════════════════
# RAMOS
# ════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class _Branch:
    state: AnonymizationState
    groups: Tuple[EquivalenceClass, ...] = ()
    trace: Tuple[IterationRecord, ...] = ()
    history: Tuple[GeneralizationVector, ...] = ()
    loss: Fraction = field(default=Fraction(0))

    @property
    def anonymized_count(self) -> int:
        return len(self.state.anonymized_ids)

    def merge_key(self):
        return (self.state.current_vector, self.state.unanonymized_ids)

    def order_key(self):
        """Menor perda, depois trilha mais curta, depois histórico lexicográfico"""
        return (self.loss, len(self.trace), tuple(v.levels for v in self.history))

    def prune_key(self):
        return (-self.anonymized_count,) + self.order_key()

    def advance(self, candidate: Candidate, max_levels: Sequence[int]) -> "_Branch":
        emitted = candidate.classes
        per_tuple = sum(
            (Fraction(level, top) for level, top in zip(candidate.vector.levels, max_levels)),
            Fraction(0),
        )
        record = IterationRecord(
            chosen_vector=candidate.vector,
            prgain=candidate.prgain,
            newly_anonymized=candidate.newly_anonymized,
            emitted_classes=emitted,
        )
        return _Branch(
            state=self.state.advance(candidate.vector, candidate.newly_anonymized),
            groups=self.groups + emitted,
            trace=self.trace + (record,),
            history=self.history + (candidate.vector,),
            loss=self.loss + per_tuple * len(candidate.newly_anonymized),
        )

    def explored(self, outcome: str) -> ExploredBranch:
        return ExploredBranch(self.history, self.trace, outcome, self.anonymized_count)


def _merge_and_prune(
    branches: Sequence[_Branch],
    max_branches: Optional[int],
    explored: Optional[List[ExploredBranch]],
) -> Tuple[List[_Branch], int]:
    """
    Funde ramos com mesmo (vetor, T^u) mantendo o de menor perda e aplica o
    limite de ramos vivos. Retorna (ramos, quantidade podada).
    """
    merged: Dict[tuple, _Branch] = {}
    for branch in branches:
        key = branch.merge_key()
        current = merged.get(key)
        if current is None:
            merged[key] = branch
            continue
        keep, drop = (branch, current) if branch.order_key() < current.order_key() else (current, branch)
        merged[key] = keep
        if explored is not None:
            explored.append(drop.explored("merged"))

    alive = sorted(merged.values(), key=_Branch.prune_key)
    pruned = 0
    if max_branches is not None and len(alive) > max_branches:
        pruned = len(alive) - max_branches
        if explored is not None:
            explored.extend(b.explored("pruned") for b in alive[max_branches:])
        alive = alive[:max_branches]
        logger.warning(f"⚠ Limite de ramos atingido: {pruned} ramo(s) podado(s)")
    return alive, pruned


# ════════════════════════════════════════════════════════════════
# ANONIMIZAÇÃO
# ════════════════════════════════════════════════════════════════

def validate_against_data(table: Table, hierarchies: Hierarchies) -> None:
    """
    Valida cada hierarquia contra os valores da coluna correspondente.

    Raises:
        HierarchyError: coluna ausente ou hierarquia com violações
    """
    for name, h in hierarchies.items():
        try:
            values = set(table.column(name))
        except KeyError:
            raise HierarchyError(f"Quasi-identificador '{name}' ausente da tabela") from None
        report = validate_hierarchy(h, values)
        if not report.ok:
            raise HierarchyError(f"Hierarquia de '{name}' inválida para os dados: {report}")


def anonymize(
    table: Table,
    hierarchies: Optional[Hierarchies] = None,
    k: int = 2,
    options: Optional[SearchOptions] = None,
) -> AnonymizationResult:
    """
    Busca em ramos guiada por PrGain.

    Args:
        table: Tabela de entrada D
        hierarchies: Hierarquias por QI, na ordem de declaração
            (None = as do schema da tabela)
        k: Parâmetro de anonimato (>= 2)
        options: Limite de ramos, política de resíduo, registro de ramos

    Returns:
        AnonymizationResult do melhor ramo terminal

    Raises:
        InvalidArgumentError: k < 2 ou nenhum quasi-identificador
        AnonymizationImpossibleError: T < k
        HierarchyError: hierarquia inválida para os dados
    """
    options = options or SearchOptions()
    hierarchies = dict(hierarchies if hierarchies is not None else table.hierarchies())

    if k < 2:
        raise InvalidArgumentError(f"k deve ser >= 2 (recebido {k})")
    if not hierarchies:
        raise InvalidArgumentError("Nenhum quasi-identificador com hierarquia")
    if options.max_branches is not None and options.max_branches < 1:
        raise InvalidArgumentError("max_branches deve ser >= 1")

    total = len(table)
    if total < k:
        raise AnonymizationImpossibleError(
            f"Anonimização não é possível: T={total} < k={k}"
        )

    validate_against_data(table, hierarchies)

    gen = Generalizer(table, hierarchies)
    names = gen.names
    max_levels = [h.max_level for h in gen.hierarchies]
    explored: Optional[List[ExploredBranch]] = [] if options.record_explored else None

    logger.info(f"Iniciando anonimização: T={total}, k={k}, QIs={list(names)}")

    frontier = [_Branch(state=AnonymizationState.initial(total, len(names)))]
    terminals: List[_Branch] = []
    peak, pruned_total, depth = 1, 0, 0

    while frontier:
        expanded: List[_Branch] = []
        for branch in frontier:
            if not branch.state.unanonymized_ids:
                terminals.append(branch)
                continue
            candidates = score_candidates(table, branch.state, hierarchies, k, gen)
            if not candidates:
                terminals.append(branch)
                continue
            expanded.extend(branch.advance(c, max_levels) for c in select_candidates(candidates))

        frontier, pruned = _merge_and_prune(expanded, options.max_branches, explored)
        pruned_total += pruned
        peak = max(peak, len(frontier))
        depth += 1
        if frontier:
            best = max(b.anonymized_count for b in frontier)
            logger.info(f"Profundidade {depth}: {len(frontier)} ramo(s), PrGain máx = {best / total:.2%}")

    results = [
        _to_result(b, k, total, names, options.residual_policy, peak, pruned_total)
        for b in terminals
    ]
    ranked = sorted(
        zip(results, terminals),
        key=lambda pair: (
            -len(pair[0].grouped_ids),
            precision_loss(pair[0], hierarchies),
            pair[0].final_vector.levels,
            tuple(v.levels for v in pair[1].history),
        ),
    )
    winner, winner_branch = ranked[0]

    if explored is not None:
        explored.extend(b.explored("terminal") for b in terminals)
        explored.sort(key=lambda e: (tuple(v.levels for v in e.history), e.outcome))
        winner = _with_explored(winner, tuple(explored))

    logger.info(
        f"✓ Anonimização concluída: PrGain = {winner.final_prgain:.2%}, "
        f"vetor final {winner.final_vector.describe(names)}, "
        f"resíduo = {winner.residual_count}"
    )
    return winner


def _to_result(
    branch: _Branch,
    k: int,
    total: int,
    names: Tuple[str, ...],
    policy: ResidualPolicy,
    peak: int,
    pruned: int,
) -> AnonymizationResult:
    groups = tuple(sorted(branch.groups, key=lambda g: g.member_ids[0]))
    return AnonymizationResult(
        groups=groups,
        residual_ids=branch.state.unanonymized_ids,
        trace=branch.trace,
        k=k,
        final_prgain=branch.anonymized_count / total,
        total=total,
        quasi_identifiers=names,
        final_vector=branch.state.current_vector,
        residual_policy=policy,
        branch_count_peak=peak,
        pruned_count=pruned,
    )


def _with_explored(result: AnonymizationResult, explored: Tuple[ExploredBranch, ...]) -> AnonymizationResult:
    return replace(result, explored=explored)


# ════════════════════════════════════════════════════════════════
# D' E VERIFICAÇÃO
# ════════════════════════════════════════════════════════════════

def suppressed_value(h: GeneralizationHierarchy, value: str) -> str:
    """Valor totalmente suprimido: máscara repetida ou '*'"""
    if isinstance(h, MaskHierarchy):
        return h.mask_char * len(value)
    return "*"


def assemble_output(
    table: Table,
    result: AnonymizationResult,
    hierarchies: Hierarchies,
) -> Table:
    """
    Monta D' na ordem original das linhas. Só as células de QI mudam;
    o tratamento do resíduo segue result.residual_policy.
    """
    names = result.quasi_identifiers
    indexes = [table.column_index(name) for name in names]
    replacement: Dict[int, Tuple[str, ...]] = {}

    for group in result.groups:
        for row_id in group.member_ids:
            replacement[row_id] = group.key

    policy = result.residual_policy
    if policy != ResidualPolicy.DROP and result.residual_ids:
        gen = Generalizer(table, {name: hierarchies[name] for name in names})
        for row_id in result.residual_ids:
            if policy == ResidualPolicy.KEEP:
                replacement[row_id] = gen.key(row_id, result.final_vector)
            else:
                row = table.rows[row_id]
                replacement[row_id] = tuple(
                    suppressed_value(hierarchies[name], row[index])
                    for name, index in zip(names, indexes)
                )

    rows = []
    for row_id, row in enumerate(table.rows):
        if row_id not in replacement:
            continue
        cells = list(row)
        for index, value in zip(indexes, replacement[row_id]):
            cells[index] = value
        rows.append(tuple(cells))
    return table.with_rows(rows)


def verify_k_anonymity(
    output: Union[Table, AnonymizationResult],
    k: int,
    quasi_identifiers: Optional[Sequence[str]] = None,
) -> KAnonymityReport:
    """
    Agrupa as linhas por igualdade exata dos QIs e confere se toda classe
    tem pelo menos k linhas.

    Args:
        output: Tabela publicada ou resultado (só os grupos; resíduo descartado)
        k: Parâmetro de anonimato
        quasi_identifiers: Nomes dos QIs (obrigatório para Table se o schema
            não marcar QIs)
    """
    sizes: Dict[Tuple[str, ...], int] = {}
    if isinstance(output, AnonymizationResult):
        for group in output.groups:
            sizes[group.key] = sizes.get(group.key, 0) + group.size
    else:
        names = list(quasi_identifiers or output.hierarchies())
        if not names:
            raise InvalidArgumentError("Nenhum quasi-identificador informado")
        frame = output.to_frame()
        if len(frame):
            counts = frame.groupby(names, sort=True).size()
            for key, size in counts.items():
                key = key if isinstance(key, tuple) else (key,)
                sizes[tuple(str(v) for v in key)] = int(size)

    offending = sorted(
        ((key, size) for key, size in sizes.items() if size < k),
        key=lambda item: (item[1], item[0]),
    )
    return KAnonymityReport(
        k=k,
        passed=not offending,
        class_count=len(sizes),
        offending=offending,
    )
