"""Output writers and input parsers for the CLI."""

from reports.writers import (
    GOLDEN_TOL,
    SCHEMA_VERSION,
    EvalRow,
    compare_golden,
    complex_pair,
    parse_points_file,
    read_eval_csv,
    write_eval_csv,
    write_json,
    write_matrix_csv,
)

__all__ = [
    "EvalRow",
    "GOLDEN_TOL",
    "SCHEMA_VERSION",
    "compare_golden",
    "complex_pair",
    "parse_points_file",
    "read_eval_csv",
    "write_eval_csv",
    "write_json",
    "write_matrix_csv",
]
