"""VerifyReport and the margin tally every suite fills in."""

import math
from dataclasses import dataclass, field

from .._version import __version__

MAX_WITNESSES = 20


def _clean(x):
    """JSON-safe float: non-finite values become None."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


@dataclass
class VerifyReport:
    """Outcome of one verification suite.

    ``worst_margin`` is the smallest slack seen over all checked instances;
    a check fails exactly when its slack is negative (or NaN).
    """

    suite: str
    statement: str
    trials: int
    failures: int
    worst_margin: float
    seed: int
    tol: float
    witnesses: list = field(default_factory=list)
    observations: dict = field(default_factory=dict)
    version: str = __version__

    @property
    def passed(self):
        return self.failures == 0

    def to_dict(self):
        return {
            "suite": self.suite,
            "statement": self.statement,
            "passed": self.passed,
            "trials": int(self.trials),
            "failures": int(self.failures),
            "worst_margin": _clean(self.worst_margin),
            "seed": int(self.seed),
            "tol": float(self.tol),
            "version": self.version,
            "witnesses": self.witnesses,
            "observations": _jsonable(self.observations),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    try:
        return _clean(obj)
    except (TypeError, ValueError):
        return str(obj)


class Tally:
    """Accumulates per-instance margins into a VerifyReport."""

    def __init__(self):
        self.trials = 0
        self.failures = 0
        self.worst = math.inf
        self.witnesses = []
        self.observations = {}

    def record(self, margin, check, **descriptor):
        margin = float(margin)
        self.trials += 1
        # a NaN margin means the check could not be evaluated: count it as the worst case
        self.worst = min(self.worst, -math.inf if math.isnan(margin) else margin)
        if not margin >= 0.0:
            self.failures += 1
            if len(self.witnesses) < MAX_WITNESSES:
                entry = {"check": check, "margin": _clean(margin)}
                entry.update(_jsonable(descriptor))
                self.witnesses.append(entry)
        return margin

    def strict(self, margin, check, **descriptor):
        """Strict inequality: an exact tie counts as a failure."""
        margin = float(margin)
        return self.record(-math.ulp(0.0) if margin == 0.0 else margin, check, **descriptor)

    def upper(self, value, bound, tol, check, **descriptor):
        """value <= bound, with ``tol`` of rounding slack."""
        return self.record(bound - value + tol, check, **descriptor)

    def equal(self, error, tol, check, **descriptor):
        """|error| <= tol."""
        return self.record(tol - abs(error), check, **descriptor)

    def observe(self, **items):
        self.observations.update(items)

    def report(self, suite, statement, seed, tol):
        return VerifyReport(
            suite=suite,
            statement=statement,
            trials=self.trials,
            failures=self.failures,
            worst_margin=self.worst,
            seed=seed,
            tol=tol,
            witnesses=self.witnesses,
            observations=self.observations,
        )
