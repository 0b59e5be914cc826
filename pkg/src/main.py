"""
main.py - Entry point da aplicação (CLI)

Subcomandos:
    anonymize   D -> D' + relatório JSON (métricas + trilha de iterações)
    verify      confere k-anonimato de um CSV publicado
    evaluate    acurácia Naïve Bayes: original vs. anonimizado
    experiment  grade k x q (anonymize + evaluate) para várias configurações

Códigos de saída: 0 sucesso, 1 entrada/config inválida,
2 anonimização impossível, 3 verificação falhou, 4 falha de I/O.
"""

import argparse
import json
import sys
import time
from typing import List, Optional, Sequence

from src.domain.anonymization import AnonymizationResult, ExploredBranch, IterationRecord, ResidualPolicy
from src.domain.errors import AnonymizationError, AnonymizationImpossibleError
from src.domain.reports import AnonymizationReport, ExploredEntry, TraceEntry
from src.domain.table import AttributeRole, AttributeSchema, Table, drop_identifiers
from src.infrastructure.config_loader import RunConfig, parse_config
from src.infrastructure.csv_io import load_table, read_header, write_json, write_table
from src.infrastructure.logger import get_logger, setup_logging
from src.services.anonymizer_service import anonymize, assemble_output, verify_k_anonymity
from src.services.classifier_service import utility_report
from src.services.experiment_service import ExperimentService
from src.services.metrics_service import summarize

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IMPOSSIBLE = 2
EXIT_VERIFY_FAILED = 3
EXIT_IO = 4


# ════════════════════════════════════════════════════════════════
# AUXILIARES
# ════════════════════════════════════════════════════════════════

def _load_with_config(csv_path: str, config: RunConfig) -> Table:
    header = read_header(csv_path)
    return load_table(csv_path, config.attribute_schema(header))


def _load_plain(csv_path: str) -> Table:
    """Carrega sem config: todas as colunas insensitive"""
    header = read_header(csv_path)
    return load_table(csv_path, [AttributeSchema(name, AttributeRole.INSENSITIVE) for name in header])


def _trace_entries(trace: Sequence[IterationRecord], names: Sequence[str]) -> List[TraceEntry]:
    return [
        TraceEntry(
            vector=list(record.chosen_vector.levels),
            vector_label=record.chosen_vector.describe(names),
            prgain=record.prgain,
            nil=record.is_nil,
            newly_anonymized=sorted(record.newly_anonymized),
            emitted_class_sizes=[c.size for c in record.emitted_classes],
        )
        for record in trace
    ]


def _explored_entries(explored: Sequence[ExploredBranch], names: Sequence[str]) -> List[ExploredEntry]:
    return [
        ExploredEntry(
            history=[list(v.levels) for v in branch.history],
            outcome=branch.outcome,
            anonymized_count=branch.anonymized_count,
            trace=_trace_entries(branch.trace, names),
        )
        for branch in explored
    ]


def build_report(
    result: AnonymizationResult,
    hierarchies,
    wall_time_ms: float,
    trace_mode: str = "best",
) -> AnonymizationReport:
    metrics = summarize(result, hierarchies, wall_time_ms)
    names = result.quasi_identifiers
    return AnonymizationReport(
        **metrics.model_dump(),
        k=result.k,
        q=len(names),
        quasi_identifiers=list(names),
        residual_policy=result.residual_policy.value,
        final_vector=list(result.final_vector.levels),
        trace=_trace_entries(result.trace, names),
        explored=_explored_entries(result.explored, names) if trace_mode == "all" else None,
    )


# ════════════════════════════════════════════════════════════════
# SUBCOMANDOS
# ════════════════════════════════════════════════════════════════

def cmd_anonymize(args) -> int:
    """Anonimiza o CSV de entrada e grava D' + relatório JSON"""
    try:
        config = parse_config(args.config)
        if args.k is not None:
            config = config.model_copy(update={"k": args.k})
        if args.residual is not None:
            config = config.model_copy(update={"residual_policy": ResidualPolicy(args.residual)})
        if args.max_branches is not None:
            config = config.model_copy(update={"max_branches": args.max_branches or None})
        if config.k < 2:
            logger.error(f"✗ k deve ser >= 2 (recebido {config.k})")
            return EXIT_INVALID

        table = drop_identifiers(_load_with_config(args.input, config))
        hierarchies = config.hierarchies()
        options = config.search_options(record_explored=args.trace == "all")

        started = time.perf_counter()
        result = anonymize(table, hierarchies, config.k, options)
        wall_time_ms = 0.0 if args.omit_timing else (time.perf_counter() - started) * 1000.0

        output = assemble_output(table, result, hierarchies)
        report = build_report(result, hierarchies, wall_time_ms, args.trace)
    except AnonymizationImpossibleError as e:
        logger.error(f"✗ {e}")
        return EXIT_IMPOSSIBLE
    except AnonymizationError as e:
        logger.error(f"✗ Entrada inválida: {e}")
        return EXIT_INVALID

    try:
        write_table(output, args.output)
        write_json(report, args.report)
    except OSError as e:
        logger.error(f"✗ Falha de I/O: {e}")
        return EXIT_IO

    logger.info(f"✓ D' gravado em {args.output} ({len(output)} tuplas)")
    return EXIT_OK


def cmd_verify(args) -> int:
    """Sai com 0 se o CSV for k-anônimo nos QIs da config, 3 caso contrário"""
    try:
        config = parse_config(args.config)
        k = args.k if args.k is not None else config.k
        table = _load_plain(args.input)
        missing = [name for name in config.qi_names if name not in table.names]
        if missing:
            logger.error(f"✗ Quasi-identificador(es) ausente(s) do CSV: {missing}")
            return EXIT_INVALID
    except AnonymizationError as e:
        logger.error(f"✗ Entrada inválida: {e}")
        return EXIT_INVALID

    report = verify_k_anonymity(table, k, config.qi_names)
    if report.passed:
        print(f"OK: {len(table)} tuplas, {report.class_count} classes, todas com >= {k}")
        return EXIT_OK

    print(f"FALHOU: {len(report.offending)} classe(s) com menos de {k} tuplas")
    for key, size in report.offending:
        print(f"  {json.dumps(list(key), ensure_ascii=False)}: {size}")
    return EXIT_VERIFY_FAILED


def cmd_evaluate(args) -> int:
    """Compara a acurácia NB de original vs. anonimizado"""
    try:
        hierarchies = parse_config(args.config).hierarchies() if args.config else None
        original = _load_plain(args.original)
        anonymized = _load_plain(args.anonymized)
        record = utility_report(
            original,
            anonymized,
            args.class_attr,
            seed=args.seed,
            split=args.split,
            alpha=args.alpha,
            hierarchies=hierarchies,
            omit_timing=args.omit_timing,
        )
    except AnonymizationError as e:
        logger.error(f"✗ Entrada inválida: {e}")
        return EXIT_INVALID

    text = record.model_dump_json(indent=2)
    print(text)
    if args.output:
        try:
            write_json(record, args.output)
        except OSError as e:
            logger.error(f"✗ Falha de I/O: {e}")
            return EXIT_IO
    return EXIT_OK


def cmd_experiment(args) -> int:
    """Grade k x q: anonimiza (política drop) e avalia cada combinação"""
    service = ExperimentService(seed=args.seed, split=args.split, omit_timing=args.omit_timing)
    try:
        rows = service.run(args.input, args.config, args.k_values, args.class_attr)
    except AnonymizationImpossibleError as e:
        logger.error(f"✗ {e}")
        return EXIT_IMPOSSIBLE
    except AnonymizationError as e:
        logger.error(f"✗ Entrada inválida: {e}")
        return EXIT_INVALID

    try:
        write_json([row.model_dump() for row in rows], args.output)
    except OSError as e:
        logger.error(f"✗ Falha de I/O: {e}")
        return EXIT_IO
    return EXIT_OK


# ════════════════════════════════════════════════════════════════
# PARSER
# ════════════════════════════════════════════════════════════════

def _max_branches(value: str) -> int:
    """'inf'/'none'/'0' = sem limite (representado por 0)"""
    if value.lower() in ("inf", "none", "0"):
        return 0
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("max-branches deve ser >= 1 ou 'inf'")
    return number


def _k_values(value: str) -> List[int]:
    """'2,3,4' -> [2, 3, 4]"""
    try:
        values = [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"k-values inválido: '{value}'") from None
    if not values:
        raise argparse.ArgumentTypeError("k-values vazio")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prgain",
        description="k-anonimização multi-iterativa guiada por PrGain",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("anonymize", help="anonimiza um CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--residual", choices=[p.value for p in ResidualPolicy], default=None)
    p.add_argument("--max-branches", type=_max_branches, default=None)
    p.add_argument("--trace", choices=["best", "all"], default="best")
    p.add_argument("--omit-timing", action="store_true", help="grava tempos como 0 (saída byte-idêntica)")
    p.set_defaults(handler=cmd_anonymize)

    p = sub.add_parser("verify", help="confere k-anonimato")
    p.add_argument("--input", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("evaluate", help="acurácia NB original vs. anonimizado")
    p.add_argument("--original", required=True)
    p.add_argument("--anonymized", required=True)
    p.add_argument("--class-attr", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--split", type=float, default=0.7)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--config", default=None, help="hierarquias para discretização")
    p.add_argument("--output", default=None)
    p.add_argument("--omit-timing", action="store_true")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("experiment", help="grade k x q (anonymize + evaluate)")
    p.add_argument("--input", required=True)
    p.add_argument("--config", required=True, nargs="+")
    p.add_argument("--k-values", type=_k_values, default="2,3,4")
    p.add_argument("--class-attr", default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--split", type=float, default=0.7)
    p.add_argument("--output", required=True)
    p.add_argument("--omit-timing", action="store_true")
    p.set_defaults(handler=cmd_experiment)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point da aplicação"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INVALID

    setup_logging(args.log_level)
    return args.handler(args)


if __name__ == '__main__':
    sys.exit(main())
