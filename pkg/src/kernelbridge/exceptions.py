"""Error taxonomy.

Two families matter to callers (and to the CLI exit codes):

* plain validation problems -- bad inputs, unknown names, malformed files.
  These are ``ValueError`` or :class:`EvaluationError` / :class:`EigenSolverError`.
* mathematical rejections -- the input is well formed but the requested
  object does not exist (a sample that is not negative definite, a metric
  with no bounded kernel, a kernel that is not positive definite).  These
  subclass :class:`MathematicalRejection` and carry a machine-readable
  diagnostic.
"""

from __future__ import annotations


class KernelBridgeError(Exception):
    """Base class for library-specific errors."""


class EvaluationError(KernelBridgeError):
    """A profile produced a non-finite value; names the offending argument."""

    def __init__(self, message: str, argument: float | None = None):
        super().__init__(message)
        self.argument = argument


class EigenSolverError(KernelBridgeError):
    """The symmetric eigensolver failed to converge.

    Carries basic condition diagnostics of the offending matrix so the
    failure can be triaged without re-running.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class MathematicalRejection(KernelBridgeError):
    """Base for rejections that certify a mathematical impossibility."""

    #: short stable identifier used in CLI diagnostics
    code = "MathematicalRejection"

    def diagnostic(self) -> dict:
        return {"error": self.code, "message": str(self)}


class NotHilbertianError(MathematicalRejection):
    """A squared-distance sample admits no Euclidean/Hilbert embedding.

    ``witness_vector`` is a unit vector orthogonal to the all-ones
    direction whose quadratic form against the input is positive;
    ``witness_eigenvalue`` is that (positive) quadratic-form value.
    """

    code = "NotHilbertian"

    def __init__(self, message: str, witness_eigenvalue: float, witness_vector=None):
        super().__init__(message)
        self.witness_eigenvalue = float(witness_eigenvalue)
        self.witness_vector = witness_vector

    def diagnostic(self) -> dict:
        d = super().diagnostic()
        d["witness_eigenvalue"] = self.witness_eigenvalue
        if self.witness_vector is not None:
            d["witness_vector"] = [float(v) for v in self.witness_vector]
        return d


class UnboundedMetricError(MathematicalRejection):
    """The metric has no bounded translation-invariant kernel.

    Raised when the quadratic-decay integral of a gamma measure exceeds
    four times the requested kernel value at zero.
    """

    code = "UnboundedMetric"

    def __init__(self, integral: float, bound: float):
        super().__init__(
            "metric has no bounded translation-invariant kernel: "
            f"integral of t^-2 d(gamma) = {integral!r} exceeds 4*k(0) = {bound!r}"
        )
        self.integral = float(integral)
        self.bound = float(bound)

    def diagnostic(self) -> dict:
        d = super().diagnostic()
        d["integral"] = self.integral
        d["bound"] = self.bound
        return d


class NotPositiveDefiniteError(MathematicalRejection):
    """Spectral inversion certified that the profile is not positive definite.

    Either the zero-frequency mass estimate is negative (a negative atom)
    or the recovered density has negative components beyond quadrature
    noise.
    """

    code = "NotPositiveDefinite"

    def __init__(self, message: str, atom0: float | None = None,
                 worst_density: float | None = None, frequency: float | None = None):
        super().__init__(message)
        self.atom0 = atom0
        self.worst_density = worst_density
        self.frequency = frequency

    def diagnostic(self) -> dict:
        d = super().diagnostic()
        if self.atom0 is not None:
            d["atom0"] = float(self.atom0)
        if self.worst_density is not None:
            d["worst_density"] = float(self.worst_density)
        if self.frequency is not None:
            d["frequency"] = float(self.frequency)
        return d
