"""Report containers shared by the property checkers and literal-clause suites."""

from __future__ import annotations

from dataclasses import dataclass

PASS = "PASS"
FAIL_LITERAL = "FAIL-LITERAL"


@dataclass(frozen=True)
class AxiomResult:
    """Outcome of one sampled axiom: pass count out of total, first counterexample."""

    name: str
    passed: int
    total: int
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.total and self.counterexample is None

    def render(self) -> str:
        line = f"axiom={self.name} pass={self.passed}/{self.total}"
        if self.counterexample is not None:
            line += f" counterexample={self.counterexample}"
        return line


@dataclass(frozen=True)
class CheckReport:
    results: tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def render(self) -> str:
        return "\n".join(r.render() for r in self.results)

    def to_flat_dict(self) -> dict:
        out: dict = {}
        for r in self.results:
            out[f"{r.name}.pass"] = str(r.passed)
            out[f"{r.name}.total"] = str(r.total)
            if r.counterexample is not None:
                out[f"{r.name}.counterexample"] = r.counterexample
        out["ok"] = self.ok
        return out


@dataclass(frozen=True)
class ClauseStatus:
    """Verdict for one clause of a literal-semantics suite."""

    clause: str
    status: str
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def render(self) -> str:
        line = f"clause={self.clause} status={self.status}"
        if self.witness is not None:
            line += f" witness={self.witness}"
        return line


@dataclass(frozen=True)
class StatusReport:
    clauses: tuple[ClauseStatus, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.ok for c in self.clauses)

    def status_map(self) -> dict:
        return {c.clause: c.status for c in self.clauses}

    def render(self) -> str:
        return "\n".join(c.render() for c in self.clauses)

    def to_flat_dict(self) -> dict:
        out: dict = {}
        for c in self.clauses:
            out[f"{c.clause}.status"] = c.status
            if c.witness is not None:
                out[f"{c.clause}.witness"] = c.witness
        out["all_pass"] = self.all_pass
        return out
