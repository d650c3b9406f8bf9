"""
reports.py - Human-readable report and machine-readable summary of a run

Every command fills one RunReport: tables for report.txt (tabulate) and
named checks for summary.json. Nothing time-dependent is written, so the
same inputs and seed give byte-identical files.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tabulate import tabulate

from Synthesis.MeshIO import atomic_write_text
from config import CLI_CONFIG

logger = logging.getLogger(__name__)

try:
    from colorama import init, Fore, Style
    init(autoreset=True)
    COLORS_AVAILABLE = True
except ImportError:
    COLORS_AVAILABLE = False

    class Fore:
        RED = GREEN = YELLOW = CYAN = ""

    class Style:
        RESET_ALL = BRIGHT = ""


def canonical(obj: Any) -> Any:
    """numpy scalars and arrays to plain JSON values; non-finite floats to strings"""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if math.isfinite(value) else str(value)
    if hasattr(obj, 'as_posix'):
        return obj.as_posix()
    if hasattr(obj, 'to_dict'):
        return canonical(obj.to_dict())
    return obj


def fmt(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), CLI_CONFIG['float_format'])
    if value is None:
        return "-"
    return str(value)


def status_line(name: str, passed: bool, detail: str = "") -> str:
    color = Fore.GREEN if passed else Fore.RED
    word = "PASS" if passed else "FAIL"
    return f"  {color}{word}{Style.RESET_ALL} {name}" + (f"  ({detail})" if detail else "")


class RunReport:
    """Tables and checks collected during one command"""

    def __init__(self, command: str, config: Dict[str, Any]):
        self.command = command
        self.config = config
        self.tables: List[Tuple[str, List[Sequence[Any]], Sequence[str]]] = []
        self.checks: Dict[str, Dict[str, Any]] = {}
        self.results: Dict[str, Any] = {}
        self.failure: Optional[Dict[str, Any]] = None

    def add_table(self, title: str, rows: List[Sequence[Any]], headers: Sequence[str]):
        self.tables.append((title, [[fmt(v) for v in row] for row in rows], list(headers)))

    def add_values(self, title: str, values: Dict[str, Any]):
        self.add_table(title, [[k, v] for k, v in values.items()], ["quantity", "value"])
        self.results[title] = values

    def add_check(self, name: str, report: Dict[str, Any], detail_key: str = None) -> bool:
        passed = bool(report.get('passed', False))
        self.checks[name] = report
        detail = ""
        if detail_key is not None and report.get(detail_key) is not None:
            detail = f"{detail_key} {fmt(report[detail_key])}"
        print(status_line(name, passed, detail))
        return passed

    def fail(self, category: str, message: str, report: Dict[str, Any] = None):
        self.failure = {'category': category, 'message': message, 'report': report or {}}
        print(f"  {Fore.RED}FAIL{Style.RESET_ALL} {category}: {message}")

    @property
    def passed(self) -> bool:
        return self.failure is None and all(bool(c.get('passed', False)) for c in self.checks.values())

    def text(self) -> str:
        sb = [f"polarsynth {self.command}\n", "\n"]
        sb.append(tabulate([[k, fmt(v)] for k, v in sorted(self.config.items())],
                           headers=["setting", "value"], tablefmt="simple") + "\n\n")
        for title, rows, headers in self.tables:
            sb.append(f"{title}\n")
            sb.append(tabulate(rows, headers=headers, tablefmt="simple") + "\n\n")
        if self.checks:
            rows = [[name, "PASS" if c.get('passed') else "FAIL"] for name, c in self.checks.items()]
            sb.append("checks\n")
            sb.append(tabulate(rows, headers=["check", "status"], tablefmt="simple") + "\n\n")
        if self.failure:
            sb.append(f"failure: {self.failure['category']}: {self.failure['message']}\n")
        sb.append(f"overall: {'PASS' if self.passed else 'FAIL'}\n")
        return "".join(sb)

    def summary(self) -> Dict[str, Any]:
        return canonical({
            'command': self.command,
            'config': self.config,
            'results': self.results,
            'checks': self.checks,
            'failure': self.failure,
            'passed': self.passed
        })

    def write(self, out_dir) -> Tuple[Path, Path]:
        out_dir = Path(out_dir)
        report_path = atomic_write_text(out_dir / CLI_CONFIG['report_name'], self.text())
        summary_path = atomic_write_text(out_dir / CLI_CONFIG['summary_name'],
                                         json.dumps(self.summary(), indent=2, sort_keys=True) + "\n")
        logger.info(f"Report written to {report_path}")
        return report_path, summary_path
