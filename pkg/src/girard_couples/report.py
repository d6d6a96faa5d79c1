"""Reports shared by all CLI commands: checks in run order, totals, and exit codes."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

from . import __version__
from .checks import Check, _plain

# exit status for the first failing suite
SUITE_EXIT = {"lattice": 10, "quantale": 11, "couple": 12, "girard": 13, "spectrum": 14, "eval": 15}
EXIT_INPUT_ERROR = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


@dataclass
class Report:
    command: str
    inputs: list[dict] = field(default_factory=list)  # {"source": ..., "sha256": ...}
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None
    info: dict = field(default_factory=dict)
    error: str | None = None
    error_exit: int | None = None

    def add(self, *checks: Check) -> None:
        self.checks.extend(checks)

    def add_input(self, source: str, content: bytes | str) -> None:
        self.inputs.append({"source": source, "sha256": digest(content)})

    def fail_with(self, message: str, code: int) -> None:
        """Record an error that stopped the command before its checks finished."""
        self.error = message
        self.error_exit = code

    @property
    def totals(self) -> dict[str, int]:
        t = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            t[{True: "pass", False: "fail", None: "skip"}[c.passed]] += 1
        return t

    @property
    def passed(self) -> bool:
        return self.error is None and not any(c.failed for c in self.checks)

    @property
    def exit_code(self) -> int:
        if self.error_exit is not None:
            return self.error_exit
        for c in self.checks:
            if c.failed:
                return SUITE_EXIT.get(c.suite, EXIT_INPUT_ERROR)
        return 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "version": __version__,
            "seed": self.seed,
            "inputs": self.inputs,
            "checks": [c.to_dict() for c in self.checks],
            "totals": self.totals,
            "passed": self.passed,
            "exit_code": self.exit_code,
            "error": self.error,
            "info": _plain(self.info),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"$ {self.command}"]
        for inp in self.inputs:
            lines.append(f"input {inp['source']} sha256={inp['sha256'][:16]}")
        if self.seed is not None:
            lines.append(f"seed {self.seed}")
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            status = {True: "PASS", False: "FAIL", None: "SKIP"}[c.passed]
            line = f"[{status}] {c.suite + ':' if c.suite else ''}{c.name.ljust(width)}"
            if c.anchor:
                line += f"  ({c.anchor})"
            if c.error is not None:
                line += f"  max err {c.error:.3g}"
            if c.passed is not True and c.witness is not None:
                line += f"\n         witness: {_render(c.witness)}"
            lines.append(line)
        for k, v in self.info.items():
            lines.append(f"{k}: {_render(v)}")
        if self.error:
            lines.append(f"error: {self.error}")
        t = self.totals
        lines.append(f"{t['pass']} passed, {t['fail']} failed, {t['skip']} skipped"
                     f" -> {'OK' if self.passed else 'FAILED'} (exit {self.exit_code})")
        return "\n".join(lines) + "\n"


def _render(v) -> str:
    v = _plain(v)
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False)


def load_schema() -> dict:
    return json.loads(resources.files("girard_couples").joinpath("report_schema.json").read_text(encoding="utf-8"))
