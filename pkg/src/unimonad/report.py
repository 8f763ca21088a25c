"""Check reports: a plain-text summary plus an optional key=value sidecar."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

STATUSES = ("pass", "fail", "error")


@dataclass
class Record:
    check: str
    status: str
    witness: str = ""


@dataclass
class Report:
    suite: str
    records: list[Record] = field(default_factory=list)

    def add(self, check: str, status: str | bool, witness="") -> Record:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        if status not in STATUSES:
            raise ValueError(f"unknown status {status!r}")
        rec = Record(check, status, str(witness) if witness not in (None, "") else "")
        self.records.append(rec)
        return rec

    def extend(self, results):
        """Append ``CheckResult``-like items carrying ``check``, ``passed``, ``witness``."""
        for r in results:
            self.add(r.check, r.passed, r.witness)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def text(self) -> str:
        lines = [f"suite: {self.suite}"]
        for r in self.records:
            line = f"{r.status.upper():5} {r.check}"
            if r.witness:
                line += f"  [{r.witness}]"
            lines.append(line)
        c = self.counts()
        lines.append(f"summary: {c['pass']} passed, {c['fail']} failed, {c['error']} errors")
        return "\n".join(lines) + "\n"

    def sidecar(self) -> str:
        chunks = [f"suite={self.suite}\n"]
        for r in self.records:
            chunks.append(f"check={r.check}\nstatus={r.status}\nwitness={r.witness}\n")
        c = self.counts()
        chunks.append(f"passed={c['pass']}\nfailed={c['fail']}\nerrors={c['error']}\n")
        return "\n".join(chunks)

    def write_sidecar(self, path) -> None:
        Path(path).write_text(self.sidecar(), encoding="utf-8")


def read_sidecar(text: str) -> list[dict[str, str]]:
    """Parse a sidecar back into one dict per blank-line separated record."""
    out = []
    for chunk in text.strip().split("\n\n"):
        rec = {}
        for line in chunk.splitlines():
            key, _, value = line.partition("=")
            rec[key] = value
        out.append(rec)
    return out
