"""
Modelo de Domínio: Hierarquias de generalização ("tabelas de dimensão")

Cada hierarquia mapeia um valor bruto para valores cada vez mais grossos.
O nível 0 é sempre a identidade.
"""

from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import ClassVar, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.domain.errors import HierarchyError


# ════════════════════════════════════════════════════════════════
# RELATÓRIO DE VALIDAÇÃO
# ════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class HierarchyViolation:
    """Uma violação encontrada pela validação"""

    message: str
    level: Optional[int] = None
    values: Tuple[str, ...] = ()

    def __str__(self) -> str:
        where = f"nível {self.level}: " if self.level is not None else ""
        vals = f" {list(self.values)}" if self.values else ""
        return f"{where}{self.message}{vals}"


@dataclass(frozen=True)
class ValidationReport:
    """Resultado de validate_hierarchy; violações são dados, não exceções"""

    violations: Tuple[HierarchyViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


# ════════════════════════════════════════════════════════════════
# HIERARQUIAS
# ════════════════════════════════════════════════════════════════

class GeneralizationHierarchy(ABC):
    """
    Base das hierarquias. Imutáveis após a construção;
    generalize é uma função pura.
    """

    kind: ClassVar[str]

    @property
    @abstractmethod
    def max_level(self) -> int:
        ...

    @abstractmethod
    def _generalize(self, value: str, level: int) -> str:
        ...

    def structural_violations(self) -> List[HierarchyViolation]:
        """Invariantes que não dependem de amostra de dados"""
        return []

    def sample_violations(self, sample: Sequence[str]) -> List[HierarchyViolation]:
        """Invariantes específicos do tipo, verificados contra uma amostra"""
        return []

    def generalize(self, value: str, level: int) -> str:
        """
        Generaliza um valor bruto até o nível pedido.

        Raises:
            HierarchyError: nível fora de [0, max_level] ou valor fora do domínio
        """
        if level < 0 or level > self.max_level:
            raise HierarchyError(
                f"Nível {level} fora do intervalo [0, {self.max_level}] ({self.kind})"
            )
        if level == 0:
            return value
        return self._generalize(value, level)


@dataclass(frozen=True)
class IntervalBin:
    """Intervalo fechado [lower, upper] com rótulo"""

    lower: int
    upper: int
    label: str

    def contains(self, number: float) -> bool:
        return self.lower <= number <= self.upper

    def covers(self, other: "IntervalBin") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper


class IntervalHierarchy(GeneralizationHierarchy):
    """
    Hierarquia numérica: em cada nível uma lista ordenada de intervalos
    fechados, disjuntos e contíguos (domínio inteiro, ex.: idades).
    """

    kind = "interval"

    def __init__(self, levels: Sequence[Sequence[IntervalBin]]):
        self.levels: Tuple[Tuple[IntervalBin, ...], ...] = tuple(
            tuple(sorted(bins, key=lambda b: (b.lower, b.upper))) for bins in levels
        )
        self._lowers = tuple(tuple(b.lower for b in bins) for bins in self.levels)

    @property
    def max_level(self) -> int:
        return len(self.levels)

    def _find_bin(self, number: float, level: int) -> Optional[IntervalBin]:
        bins = self.levels[level - 1]
        pos = bisect_right(self._lowers[level - 1], number) - 1
        if pos >= 0 and bins[pos].contains(number):
            return bins[pos]
        return None

    def bin_for(self, value: str, level: int) -> IntervalBin:
        try:
            number = float(value)
        except ValueError:
            raise HierarchyError(f"Valor '{value}' não é numérico (interval)") from None

        if not self.levels or self._find_bin(number, 1) is None:
            raise HierarchyError(f"Valor '{value}' fora de todos os intervalos")

        found = self._find_bin(number, level)
        if found is None:
            raise HierarchyError(f"Valor '{value}' sem intervalo no nível {level}")
        return found

    def _generalize(self, value: str, level: int) -> str:
        return self.bin_for(value, level).label

    def structural_violations(self) -> List[HierarchyViolation]:
        violations = []
        if not self.levels:
            violations.append(HierarchyViolation("max_level deve ser >= 1"))
            return violations

        for level, bins in enumerate(self.levels, start=1):
            if not bins:
                violations.append(HierarchyViolation("nível sem intervalos", level))
                continue

            labels = [b.label for b in bins]
            duplicated = sorted({lbl for lbl in labels if labels.count(lbl) > 1})
            if duplicated:
                violations.append(HierarchyViolation("rótulos repetidos", level, tuple(duplicated)))

            for b in bins:
                if b.lower > b.upper:
                    violations.append(HierarchyViolation("intervalo invertido", level, (b.label,)))

            for prev, nxt in zip(bins, bins[1:]):
                if nxt.lower <= prev.upper:
                    violations.append(
                        HierarchyViolation("intervalos sobrepostos", level, (prev.label, nxt.label))
                    )
                elif nxt.lower > prev.upper + 1:
                    violations.append(
                        HierarchyViolation("lacuna entre intervalos", level, (prev.label, nxt.label))
                    )

        # cada intervalo do nível l contido em exatamente um intervalo do nível l+1
        for level in range(1, len(self.levels)):
            parents = self.levels[level]
            for b in self.levels[level - 1]:
                holders = [p for p in parents if p.covers(b)]
                if len(holders) != 1:
                    violations.append(
                        HierarchyViolation(
                            f"intervalo contido em {len(holders)} intervalos do nível {level + 1}",
                            level,
                            (b.label,),
                        )
                    )
        return violations

    def level1_label(self, value: str) -> Optional[str]:
        """Rótulo de nível 1 quando o valor é numérico e coberto; senão None"""
        try:
            number = float(value)
        except ValueError:
            return None
        found = self._find_bin(number, 1) if self.levels else None
        return found.label if found else None


class CategoryHierarchy(GeneralizationHierarchy):
    """
    Hierarquia categórica composta nível a nível: o mapa do nível l recebe
    o valor do nível l-1, e só ele.
    """

    kind = "category"

    def __init__(self, levels: Sequence[Mapping[str, str]]):
        self.levels: Tuple[Dict[str, str], ...] = tuple(dict(m) for m in levels)

    @property
    def max_level(self) -> int:
        return len(self.levels)

    def _generalize(self, value: str, level: int) -> str:
        current = value
        for index in range(level):
            try:
                current = self.levels[index][current]
            except KeyError:
                raise HierarchyError(
                    f"Valor '{current}' ausente do mapa do nível {index + 1} (category)"
                ) from None
        return current

    def structural_violations(self) -> List[HierarchyViolation]:
        violations = []
        if not self.levels:
            violations.append(HierarchyViolation("max_level deve ser >= 1"))
        for level, mapping in enumerate(self.levels, start=1):
            if not mapping:
                violations.append(HierarchyViolation("mapa vazio", level))

        # totalidade: cada imagem do nível l precisa de entrada no nível l+1
        for level in range(1, len(self.levels)):
            missing = sorted(set(self.levels[level - 1].values()) - set(self.levels[level]))
            if missing:
                violations.append(
                    HierarchyViolation(
                        f"valores do nível {level} sem mapeamento no nível {level + 1}",
                        level + 1,
                        tuple(missing),
                    )
                )
        return violations


class MaskHierarchy(GeneralizationHierarchy):
    """Mascaramento de sufixo: o nível l troca os últimos l caracteres por mask_char"""

    kind = "mask"

    def __init__(self, max_level: int, mask_char: str = "*"):
        self._max_level = max_level
        self.mask_char = mask_char

    @property
    def max_level(self) -> int:
        return self._max_level

    def _generalize(self, value: str, level: int) -> str:
        # valores mais curtos que o nível ficam totalmente mascarados
        if len(value) <= level:
            return self.mask_char * len(value)
        return value[:-level] + self.mask_char * level

    def structural_violations(self) -> List[HierarchyViolation]:
        violations = []
        if self._max_level < 1:
            violations.append(HierarchyViolation("max_level deve ser >= 1"))
        if len(self.mask_char) != 1:
            violations.append(HierarchyViolation("mask_char deve ter um caractere", values=(self.mask_char,)))
        return violations

    def sample_violations(self, sample: Sequence[str]) -> List[HierarchyViolation]:
        short = sorted({v for v in sample if len(v) < self._max_level})
        if short:
            return [
                HierarchyViolation(
                    f"max_level {self._max_level} maior que o comprimento do valor",
                    self._max_level,
                    tuple(short),
                )
            ]
        return []


# ════════════════════════════════════════════════════════════════
# VALIDAÇÃO
# ════════════════════════════════════════════════════════════════

def validate_hierarchy(h: GeneralizationHierarchy, domain_sample: Iterable[str] = ()) -> ValidationReport:
    """
    Verifica os invariantes estruturais e o aninhamento sobre uma amostra.

    Aninhamento: se dois valores coincidem no nível l, coincidem em todo
    nível acima. Basta checar níveis consecutivos.

    Args:
        h: Hierarquia a validar
        domain_sample: Valores brutos observados

    Returns:
        ValidationReport com a lista de violações (vazia = ok)
    """
    violations = list(h.structural_violations())
    if violations:
        return ValidationReport(tuple(violations))

    sample = sorted(set(domain_sample))
    violations.extend(h.sample_violations(sample))

    images: Dict[str, List[str]] = {}
    for value in sample:
        chain = []
        try:
            for level in range(h.max_level + 1):
                chain.append(h.generalize(value, level))
        except HierarchyError as e:
            violations.append(HierarchyViolation(str(e), len(chain), (value,)))
            continue
        images[value] = chain

    for level in range(1, h.max_level):
        parent_of: Dict[str, str] = {}
        for value, chain in images.items():
            image, parent = chain[level], chain[level + 1]
            seen = parent_of.setdefault(image, parent)
            if seen != parent:
                violations.append(
                    HierarchyViolation(
                        f"aninhamento violado: '{image}' generaliza para '{seen}' e '{parent}'",
                        level,
                        (value,),
                    )
                )

    return ValidationReport(tuple(violations))


# ════════════════════════════════════════════════════════════════
# VETOR DE GENERALIZAÇÃO (nó do reticulado)
# ════════════════════════════════════════════════════════════════

@dataclass(frozen=True, order=True)
class GeneralizationVector:
    """Um nível por quasi-identificador; o vetor nulo representa os dados brutos"""

    levels: Tuple[int, ...] = field(default=())

    @classmethod
    def zero(cls, size: int) -> "GeneralizationVector":
        return cls(tuple([0] * size))

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, index: int) -> int:
        return self.levels[index]

    @property
    def height(self) -> int:
        return sum(self.levels)

    def describe(self, names: Sequence[str]) -> str:
        """Ex.: <Age^1, Gender^0, ZIP^0>"""
        parts = [f"{name}^{level}" for name, level in zip(names, self.levels)]
        return "<" + ", ".join(parts) + ">"

    def __str__(self) -> str:
        return "<" + ",".join(str(level) for level in self.levels) + ">"


def successors(
    v: GeneralizationVector,
    hierarchies: Sequence[GeneralizationHierarchy],
) -> List[GeneralizationVector]:
    """
    Vetores obtidos incrementando exatamente uma coordenada em 1,
    na ordem de declaração dos quasi-identificadores.
    """
    result = []
    for index, h in enumerate(hierarchies):
        if v.levels[index] < h.max_level:
            levels = list(v.levels)
            levels[index] += 1
            result.append(GeneralizationVector(tuple(levels)))
    return result


def lattice_size(hierarchies: Sequence[GeneralizationHierarchy]) -> int:
    size = 1
    for h in hierarchies:
        size *= h.max_level + 1
    return size
