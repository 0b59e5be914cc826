"""
CSV / JSON I/O: ingestão e emissão de tabelas e relatórios

CSV: vírgula, aspas duplas, primeira linha = cabeçalho, UTF-8 (BOM opcional).
"""

import csv
import json
from pathlib import Path
from typing import Any, List, Sequence, Tuple, Union

from pydantic import BaseModel

from src.domain.errors import TableError
from src.domain.table import AttributeSchema, Table
from src.infrastructure.logger import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def _read_records(path: Path, header_only: bool = False) -> Tuple[List[str], List[List[str]]]:
    """
    Lê cabeçalho e registros de um CSV UTF-8 (BOM opcional).

    Raises:
        TableError: arquivo ausente, vazio, com bytes fora do UTF-8 ou CSV malformado
    """
    if not path.is_file():
        raise TableError(f"Arquivo não encontrado: {path}")

    try:
        with path.open("r", encoding="utf-8-sig", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise TableError(f"Arquivo vazio (sem cabeçalho): {path}")
            records = [] if header_only else list(reader)
    except (UnicodeDecodeError, csv.Error) as e:
        raise TableError(f"CSV ilegível em {path}: {e}") from None

    return [name.strip() for name in header], records


def read_header(csv_path: PathLike) -> List[str]:
    """Lê apenas o cabeçalho (nomes sem espaços nas bordas)"""
    header, _ = _read_records(Path(csv_path), header_only=True)
    return header


def load_table(csv_path: PathLike, schema: Sequence[AttributeSchema]) -> Table:
    """
    Carrega um CSV como Table.
    Colunas ficam na ordem do cabeçalho; o schema é casado por nome.

    Args:
        csv_path: Caminho do CSV
        schema: Um AttributeSchema por coluna do cabeçalho (qualquer ordem)

    Returns:
        Table com células como strings, sem espaços nas bordas

    Raises:
        TableError: arquivo ausente, ilegível, cabeçalho divergente ou linha irregular
    """
    path = Path(csv_path)
    header, records = _read_records(path)
    by_name = {attr.name: attr for attr in schema}

    missing = sorted(set(by_name) - set(header))
    unknown = sorted(set(header) - set(by_name))
    if missing or unknown or len(set(header)) != len(header):
        raise TableError(
            f"Cabeçalho não confere com o schema em {path}: "
            f"ausentes={missing}, desconhecidas={unknown}"
        )

    width = len(header)
    rows = []
    for line_number, raw in enumerate(records, start=2):
        if not raw:
            continue  # linha em branco
        if len(raw) != width:
            raise TableError(
                f"Linha {line_number} (tupla {len(rows)}) tem {len(raw)} células, "
                f"esperado {width}: {path}"
            )
        rows.append(tuple(cell.strip() for cell in raw))

    table = Table(schema=tuple(by_name[name] for name in header), rows=tuple(rows))
    logger.info(f"✓ Tabela carregada: {path.name} ({len(table)} tuplas, {width} colunas)")
    return table


def write_table(table: Table, csv_path: PathLike) -> None:
    """
    Grava a tabela como CSV no estilo RFC-4180 (com cabeçalho).
    load_table(write_table(t)) reproduz t célula a célula.
    """
    path = Path(csv_path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(table.names)
        writer.writerows(table.rows)
    logger.info(f"✓ Tabela gravada: {path.name} ({len(table)} tuplas)")


def write_json(payload: Union[BaseModel, Any], json_path: PathLike) -> str:
    """
    Serializa um relatório de forma determinística e grava em disco.

    Returns:
        str: o texto JSON gravado
    """
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)

    Path(json_path).write_text(text + "\n", encoding="utf-8")
    return text
