"""Run reports: a text rendering for people and a JSON sidecar for replay."""

from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..utils.codec import dumps, encode_value
from ..utils.logger import get_logger

logger = get_logger(__name__)


class ExitCode(IntEnum):
    PASS = 0
    FAILED = 1
    EXHAUSTED = 2
    INPUT = 3


@dataclass
class Report:
    """Outcome of one command; `data` must hold exact values only."""
    command: str
    status: ExitCode
    lines: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    # extra JSON files written next to the report, by name
    archives: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return int(self.status)

    @property
    def verdict(self) -> str:
        return {
            ExitCode.PASS: "pass",
            ExitCode.FAILED: "fail",
            ExitCode.EXHAUSTED: "exhausted",
            ExitCode.INPUT: "input error",
        }[self.status]

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def text(self) -> str:
        header = f"== {self.command}: {self.verdict}"
        return "\n".join([header, *self.lines]) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return encode_value({"command": self.command, "verdict": self.verdict, **self.data})

    def write(self, out_dir: str, sidecar: bool = True) -> List[Path]:
        """<out>/<command>.txt, <out>/<command>.json and any archives."""
        root = Path(out_dir)
        root.mkdir(parents=True, exist_ok=True)
        written = [root / f"{self.command}.txt"]
        written[0].write_text(self.text(), encoding="utf-8")
        if sidecar:
            path = root / f"{self.command}.json"
            path.write_text(dumps(self.to_dict()), encoding="utf-8")
            written.append(path)
        for name, payload in sorted(self.archives.items()):
            path = root / f"{name}.json"
            path.write_text(dumps(encode_value(payload)), encoding="utf-8")
            written.append(path)
        logger.info(
            f"Wrote {self.command} report",
            extra={"extra_fields": {"out": str(root), "files": len(written), "verdict": self.verdict}},
        )
        return written


def error_report(command: str, status: ExitCode, message: str, detail: Optional[Dict[str, Any]] = None) -> Report:
    report = Report(command, status, data={"error": message, "detail": detail or {}})
    report.add(message)
    return report
