"""Audit reports: hypotheses and conclusions of a statement, evaluated clause by clause."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Clause:
    name: str
    hypotheses: dict
    conclusion: dict

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def conclusion_holds(self) -> bool:
        return all(self.conclusion.values())

    def to_dict(self):
        return {
            "name": self.name,
            "hypotheses": dict(self.hypotheses),
            "conclusion": dict(self.conclusion),
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
        }


@dataclass
class AuditReport:
    """A statement is violated exactly when some clause has true hypotheses and a false conclusion."""

    statement: str
    clauses: list
    witness: dict = field(default_factory=dict)
    certification: str = "window-certified"

    @property
    def hypotheses_hold(self) -> bool:
        return any(c.hypotheses_hold for c in self.clauses)

    @property
    def conclusion_holds(self) -> bool:
        return all(c.conclusion_holds for c in self.clauses if c.hypotheses_hold)

    @property
    def consistent(self) -> bool:
        return not self.hypotheses_hold or self.conclusion_holds

    def clause(self, name: str) -> Clause:
        return next(c for c in self.clauses if c.name == name)

    def to_dict(self):
        return {
            "statement": self.statement,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "clauses": [c.to_dict() for c in self.clauses],
            "witness": self.witness,
            "certification": self.certification,
        }
