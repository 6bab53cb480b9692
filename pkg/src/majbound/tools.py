"""
Tools used in majbound: CSV and SVG emission of sweep tables and human
friendly display of reports.
"""
from __future__ import annotations

import csv
import io
import json
import sys

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402

FLOAT_FORMAT = '.17g'
SVG_HASH_SALT = 'majbound'


def _cell(value) -> str:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return format(float(value), FLOAT_FORMAT)


def _columns(table: list[dict]) -> list[str]:
    if not table:
        raise ValueError("Table cannot be empty!")

    columns = list(table[0])
    for row in table[1:]:
        columns += [key for key in row if key not in columns]
    return columns


def table_to_csv(table: list[dict]) -> str:
    """
    Header row then one row per entry, floats with 17 significant digits,
    LF line endings. Missing cells are left empty.
    """
    columns = _columns(table)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')

    writer.writerow(columns)
    for row in table:
        writer.writerow([_cell(row[key]) if key in row else '' for key in columns])

    return buffer.getvalue()


def emit_csv(table: list[dict], path: str = 'stdout'):
    """
    Writes the table to path, or to standard output for 'stdout'.
    """
    text = table_to_csv(table)

    if path == 'stdout':
        sys.stdout.write(text)
        return

    try:
        with open(path, 'w', encoding='utf-8', newline='') as csv_file:
            csv_file.write(text)
    except OSError as exc:
        raise OSError(f"Cannot write CSV to {path}: {exc}") from exc


def read_csv(path: str) -> list[dict]:
    """
    Parses a table written by emit_csv; empty cells are dropped.
    """
    try:
        with open(path, encoding='utf-8', newline='') as csv_file:
            rows = list(csv.DictReader(csv_file))
    except OSError as exc:
        raise OSError(f"Cannot read CSV from {path}: {exc}") from exc

    return [{key: float(value) for key, value in row.items() if value != ''} for row in rows]


def emit_svg_lines(table: list[dict], path: str, x_column: str, columns: list[str] = None,
                   log_base: float = 2.0, title: str = ''):
    """
    Line chart with one polyline per bound column against x_column.
    """
    columns = columns or [key for key in _columns(table) if key != x_column]
    unit = 'bits' if log_base == 2.0 else 'nats'

    plt.rcParams['svg.hashsalt'] = SVG_HASH_SALT
    fig, ax = plt.subplots()
    xs = [row[x_column] for row in table]

    for column in columns:
        ax.plot(xs, [row.get(column, float('nan')) for row in table], label=column)

    ax.set(title=title, xlabel=x_column, ylabel=f'bound [{unit}]')
    ax.legend(loc='best')

    try:
        fig.savefig(path, format='svg', metadata={'Date': None})
    except OSError as exc:
        raise OSError(f"Cannot write SVG to {path}: {exc}") from exc
    finally:
        plt.close(fig)


def display_report(values: dict, indent: int = 0):
    """
    Print a (nested) dict of results in the human friendly format.
    """
    def display(d, indent=0):
        for key, value in d.items():
            print(' ' * indent + f'"{key}": ', end='')
            if isinstance(value, dict):
                print('{')
                display(value, indent + 4)
                print(' ' * indent + '},')
            elif isinstance(value, (list, tuple)):
                print(json.dumps([float(x) for x in value]) + ',')
            else:
                print(f'{value},')

    print('{')
    display(dict(values), indent + 4)
    print('}')
