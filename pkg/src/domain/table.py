"""
Modelo de Domínio: Tabela de microdados
Schema de atributos com papéis de privacidade e linhas imutáveis de strings
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, TYPE_CHECKING

import pandas as pd

from src.domain.errors import TableError

if TYPE_CHECKING:
    from src.domain.hierarchy import GeneralizationHierarchy


class AttributeRole(str, Enum):
    """Papel de privacidade de uma coluna"""

    IDENTIFIER = "identifier"
    QUASI_IDENTIFIER = "quasi_identifier"
    SENSITIVE = "sensitive"
    INSENSITIVE = "insensitive"


@dataclass(frozen=True)
class AttributeSchema:
    """
    Descrição de uma coluna.
    A hierarquia existe se e somente se o papel for quasi_identifier.
    """

    name: str
    role: AttributeRole
    hierarchy: Optional["GeneralizationHierarchy"] = field(default=None, compare=False)

    def __post_init__(self):
        is_qi = self.role == AttributeRole.QUASI_IDENTIFIER
        if is_qi and self.hierarchy is None:
            raise TableError(f"Quasi-identificador '{self.name}' sem hierarquia")
        if not is_qi and self.hierarchy is not None:
            raise TableError(f"Atributo '{self.name}' ({self.role.value}) não aceita hierarquia")


Row = Tuple[str, ...]


@dataclass(frozen=True)
class Table:
    """
    Tabela imutável. O id de cada tupla é o índice 0-based da linha.
    Todas as células são strings; nenhuma coerção de tipo acontece aqui.
    """

    schema: Tuple[AttributeSchema, ...]
    rows: Tuple[Row, ...]

    def __post_init__(self):
        width = len(self.schema)
        for row_id, row in enumerate(self.rows):
            if len(row) != width:
                raise TableError(
                    f"Linha {row_id} tem {len(row)} células, esperado {width}"
                )

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def names(self) -> List[str]:
        return [attr.name for attr in self.schema]

    @property
    def ids(self) -> range:
        return range(len(self.rows))

    def column_index(self, name: str) -> int:
        for index, attr in enumerate(self.schema):
            if attr.name == name:
                return index
        raise KeyError(name)

    def column(self, name: str) -> List[str]:
        index = self.column_index(name)
        return [row[index] for row in self.rows]

    def attribute(self, name: str) -> AttributeSchema:
        return self.schema[self.column_index(name)]

    def names_with_role(self, role: AttributeRole) -> List[str]:
        return [attr.name for attr in self.schema if attr.role == role]

    def hierarchies(self) -> Dict[str, "GeneralizationHierarchy"]:
        """Hierarquias dos quasi-identificadores, na ordem do schema"""
        return {
            attr.name: attr.hierarchy
            for attr in self.schema
            if attr.role == AttributeRole.QUASI_IDENTIFIER
        }

    def with_rows(self, rows: Sequence[Sequence[str]]) -> "Table":
        return Table(schema=self.schema, rows=tuple(tuple(r) for r in rows))

    def to_frame(self) -> pd.DataFrame:
        """Converte para DataFrame (todas as colunas como str)"""
        return pd.DataFrame(list(self.rows), columns=self.names, dtype=str)


def drop_identifiers(table: Table) -> Table:
    """
    Remove as colunas com papel identifier.
    As demais células permanecem idênticas.
    """
    keep = [i for i, attr in enumerate(table.schema) if attr.role != AttributeRole.IDENTIFIER]
    if len(keep) == len(table.schema):
        return table

    return Table(
        schema=tuple(table.schema[i] for i in keep),
        rows=tuple(tuple(row[i] for i in keep) for row in table.rows),
    )
