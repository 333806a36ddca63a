"""Validation reports: violations are data, not exceptions."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    check: str
    message: str
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"check": self.check, "message": self.message,
                "witness": {k: _plain(v) for k, v in self.witness.items()}}


def _plain(v):
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return str(v)


class ValidationReport:
    """Ordered list of violations; truthy iff nothing was violated."""

    def __init__(self, subject=""):
        self.subject = subject
        self.violations = []

    def add(self, check, message, **witness):
        self.violations.append(Violation(check, message, witness))

    def extend(self, other, prefix=None):
        for v in other.violations:
            check = "%s/%s" % (prefix, v.check) if prefix else v.check
            self.violations.append(Violation(check, v.message, v.witness))

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def checks(self):
        return {v.check for v in self.violations}

    def cites(self, fragment):
        return any(fragment in v.check for v in self.violations)

    def to_json(self):
        return {"subject": self.subject, "ok": self.ok,
                "violations": [v.to_json() for v in self.violations]}

    def __repr__(self):
        if self.ok:
            return "ValidationReport(%s: ok)" % self.subject
        return "ValidationReport(%s: %d violations, first %s)" % (
            self.subject, len(self.violations), self.violations[0])
