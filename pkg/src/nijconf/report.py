"""Deterministic pass/fail reports shared by all checkers.

A Report is an ordered list of named checks.  Each check is either a pass or
a fail with a witness string; witnesses always name the lexicographically
least failing basis tuple so reports do not depend on evaluation order.
"""

from __future__ import annotations

PASS = "pass"
FAIL = "fail"
PRECONDITION = "precondition-failed"


class Report:
    def __init__(self, title=""):
        self.title = title
        self.checks = []  # list of (key, status, witness-or-None)

    def add(self, key, ok, witness=None):
        self.checks.append((key, PASS if ok else FAIL, None if ok else witness))
        return self

    def add_status(self, key, status, witness=None):
        self.checks.append((key, status, witness))
        return self

    @property
    def passed(self):
        return all(status == PASS for _, status, _ in self.checks)

    def status_of(self, key):
        for k, status, _ in self.checks:
            if k == key:
                return status
        raise KeyError(key)

    def witness_of(self, key):
        for k, _, witness in self.checks:
            if k == key:
                return witness
        raise KeyError(key)

    def lines(self):
        out = []
        for key, status, witness in self.checks:
            if witness:
                out.append("%s: %s %s" % (key, status, witness))
            else:
                out.append("%s: %s" % (key, status))
        return out

    def __repr__(self):
        head = "Report(%s: %s)" % (self.title or "-", PASS if self.passed else FAIL)
        return head


def first_witness(failures):
    """Format the least failing tuple from [(tuple, residual-string), ...]."""
    if not failures:
        return None
    key, residual = min(failures, key=lambda item: item[0])
    return "at=%s residual=[%s]" % (",".join(map(str, key)), residual)
