"""Versioned JSON documents emitted by the command line tool."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1"
_DOC_FIELDS = {"schema_version", "command", "inputs", "result", "checks"}
_CHECK_FIELDS = {"name", "passed", "detail"}


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def __post_init__(self):
        if not self.passed and not self.detail:
            raise CertificateFormatError(f"failed check {self.name!r} needs a detail")


@dataclass(frozen=True)
class CertificateDocument:
    command: str
    inputs: dict[str, Any]
    result: Any
    checks: tuple[Check, ...] = ()
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CertificateDocument":
        if not isinstance(data, dict):
            raise CertificateFormatError("document must be a JSON object")
        unknown = set(data) - _DOC_FIELDS
        if unknown:
            raise CertificateFormatError(f"unknown fields: {sorted(unknown)}")
        missing = _DOC_FIELDS - set(data)
        if missing:
            raise CertificateFormatError(f"missing fields: {sorted(missing)}")
        if data["schema_version"] != SCHEMA_VERSION:
            raise CertificateFormatError(f"unsupported schema_version {data['schema_version']!r}")
        checks = []
        for c in data["checks"]:
            extra = set(c) - _CHECK_FIELDS
            if extra:
                raise CertificateFormatError(f"unknown check fields: {sorted(extra)}")
            checks.append(Check(c["name"], bool(c["passed"]), c.get("detail", "")))
        return cls(data["command"], dict(data["inputs"]), data["result"], tuple(checks),
                   data["schema_version"])

    @classmethod
    def from_json(cls, text: str) -> "CertificateDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(str(exc)) from exc
        return cls.from_dict(data)
