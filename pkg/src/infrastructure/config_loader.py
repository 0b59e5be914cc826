"""
Config Loader: Configuração JSON da execução (RunConfig) com Pydantic
"""

import json
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.domain.anonymization import ResidualPolicy, SearchOptions
from src.domain.errors import ConfigError
from src.domain.hierarchy import (
    CategoryHierarchy,
    GeneralizationHierarchy,
    IntervalBin,
    IntervalHierarchy,
    MaskHierarchy,
    validate_hierarchy,
)
from src.domain.table import AttributeRole, AttributeSchema
from src.infrastructure.logger import get_logger

logger = get_logger(__name__)


# ════════════════════════════════════════════════════════════════
# SCHEMAS DE HIERARQUIA
# ════════════════════════════════════════════════════════════════

class IntervalBinSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lo: int
    hi: int
    label: str


class IntervalHierarchySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["interval"]
    levels: List[List[IntervalBinSpec]] = Field(min_length=1)

    def build(self) -> GeneralizationHierarchy:
        return IntervalHierarchy(
            [[IntervalBin(b.lo, b.hi, b.label) for b in bins] for bins in self.levels]
        )


class CategoryHierarchySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["category"]
    levels: List[Dict[str, str]] = Field(min_length=1)

    def build(self) -> GeneralizationHierarchy:
        return CategoryHierarchy(self.levels)


class MaskHierarchySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["mask"]
    mask_char: str = Field(default="*", min_length=1, max_length=1)
    max_level: int = Field(ge=1)

    def build(self) -> GeneralizationHierarchy:
        return MaskHierarchy(self.max_level, self.mask_char)


HierarchySpec = Annotated[
    Union[IntervalHierarchySpec, CategoryHierarchySpec, MaskHierarchySpec],
    Field(discriminator="kind"),
]


class QuasiIdentifierSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    hierarchy: HierarchySpec


# ════════════════════════════════════════════════════════════════
# RUN CONFIG
# ════════════════════════════════════════════════════════════════

class RunConfig(BaseModel):
    """
    Configuração de uma execução.
    Os conjuntos de nomes (QI, sensíveis, identificadores) são disjuntos.
    """

    model_config = ConfigDict(extra="forbid")

    k: int = Field(ge=2)
    quasi_identifiers: List[QuasiIdentifierSpec] = Field(min_length=1)
    sensitive: List[str] = Field(min_length=1)
    identifiers: List[str] = Field(default_factory=list)
    residual_policy: ResidualPolicy = ResidualPolicy.DROP
    max_branches: Optional[int] = Field(default=64, ge=1)
    class_attr: Optional[str] = None

    @field_validator("sensitive", "identifiers")
    @classmethod
    def _unique_names(cls, names: List[str]) -> List[str]:
        if len(set(names)) != len(names):
            raise ValueError("nomes repetidos")
        return names

    @model_validator(mode="after")
    def _disjoint_roles(self) -> "RunConfig":
        qi = [q.name for q in self.quasi_identifiers]
        if len(set(qi)) != len(qi):
            raise ValueError("quasi-identificadores repetidos")

        groups = {"quasi_identifiers": set(qi), "sensitive": set(self.sensitive), "identifiers": set(self.identifiers)}
        names = list(groups)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                shared = groups[a] & groups[b]
                if shared:
                    raise ValueError(f"atributos em '{a}' e '{b}' ao mesmo tempo: {sorted(shared)}")
        return self

    # ═══════════════════════════════════════════════════════════
    # PROPRIEDADES CALCULADAS
    # ═══════════════════════════════════════════════════════════

    @property
    def q(self) -> int:
        return len(self.quasi_identifiers)

    @property
    def qi_names(self) -> List[str]:
        return [q.name for q in self.quasi_identifiers]

    def hierarchies(self) -> Dict[str, GeneralizationHierarchy]:
        """Hierarquias na ordem de declaração (ordem das coordenadas do vetor)"""
        return {q.name: q.hierarchy.build() for q in self.quasi_identifiers}

    def search_options(self, record_explored: bool = False) -> SearchOptions:
        return SearchOptions(
            max_branches=self.max_branches,
            residual_policy=self.residual_policy,
            record_explored=record_explored,
        )

    def attribute_schema(self, header: Sequence[str]) -> List[AttributeSchema]:
        """
        Schema completo para um cabeçalho: colunas não citadas são insensitive.

        Raises:
            ConfigError: coluna citada na configuração ausente do cabeçalho
        """
        named = self.qi_names + self.sensitive + self.identifiers
        if self.class_attr:
            named.append(self.class_attr)
        missing = [name for name in named if name not in header]
        if missing:
            raise ConfigError(f"Coluna(s) ausente(s) do CSV: {missing}")

        hierarchies = self.hierarchies()
        schema = []
        for name in header:
            if name in hierarchies:
                schema.append(AttributeSchema(name, AttributeRole.QUASI_IDENTIFIER, hierarchies[name]))
            elif name in self.sensitive:
                schema.append(AttributeSchema(name, AttributeRole.SENSITIVE))
            elif name in self.identifiers:
                schema.append(AttributeSchema(name, AttributeRole.IDENTIFIER))
            else:
                schema.append(AttributeSchema(name, AttributeRole.INSENSITIVE))
        return schema


def _pointer(loc) -> str:
    return "/" + "/".join(str(part) for part in loc)


def parse_config(json_path: Union[str, Path]) -> RunConfig:
    """
    Lê e valida a configuração JSON.
    Cada hierarquia passa pela validação estrutural (a validação contra os
    dados acontece na anonimização).

    Raises:
        ConfigError: arquivo ausente, JSON malformado, violação de schema
            (com caminho no estilo JSON pointer), tipo de hierarquia
            desconhecido, k < 2
    """
    path = Path(json_path)
    if not path.is_file():
        raise ConfigError(f"Arquivo de configuração não encontrado: {path}")

    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON malformado: {e}") from None

    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(first["msg"], _pointer(first["loc"])) from None

    for index, qi in enumerate(config.quasi_identifiers):
        report = validate_hierarchy(qi.hierarchy.build())
        if not report.ok:
            raise ConfigError(
                f"hierarquia inválida para '{qi.name}': {report}",
                f"/quasi_identifiers/{index}/hierarchy",
            )

    logger.info(f"✓ Configuração carregada: {path.name} (k={config.k}, q={config.q})")
    return config
