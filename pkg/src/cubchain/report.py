"""Validation reports shared by every law checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .intlin import FGAbHom, HomError


def _sort_key(v):
    return (v.law, tuple((0, x, "") if isinstance(x, int) else (1, 0, str(x)) for x in v.indices))


@dataclass(frozen=True)
class Violation:
    law: str
    indices: tuple = ()
    witness: Any = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {"law": self.law, "indices": list(self.indices), "witness": self.witness}


class Report:
    """An order-independent collection of violations; empty means every check passed."""

    def __init__(self, violations=()):
        self._violations = list(violations)

    @property
    def violations(self) -> list[Violation]:
        return sorted(self._violations, key=_sort_key)

    @property
    def ok(self) -> bool:
        return not self._violations

    def __len__(self):
        return len(self._violations)

    def __iter__(self):
        return iter(self.violations)

    def __repr__(self):
        return f"Report({self.violations!r})"

    def add(self, law: str, indices=(), witness=None):
        self._violations.append(Violation(law, tuple(indices), witness))

    def extend(self, other: Report):
        self._violations.extend(other._violations)

    def expect_equal(self, law: str, indices, lhs: FGAbHom, rhs: FGAbHom) -> bool:
        """Record a violation unless ``lhs == rhs``; the witness is a source generator."""
        try:
            bad = (lhs - rhs).nonzero_generators()
        except HomError as exc:
            self.add(law, indices, {"error": str(exc)})
            return False
        if bad:
            diff = (lhs - rhs).matrix.column(bad[0])
            self.add(law, indices, {"generator": bad[0], "difference": list(diff)})
            return False
        return True

    def expect_zero(self, law: str, indices, h: FGAbHom) -> bool:
        bad = h.nonzero_generators()
        if bad:
            self.add(law, indices, {"generator": bad[0], "image": list(h.matrix.column(bad[0]))})
            return False
        return True

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.violations]


class ValidationError(ValueError):
    """Raised when an operation receives a structure that fails its validator."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report if report is not None else Report()
