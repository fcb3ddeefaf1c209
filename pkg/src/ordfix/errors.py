"""Exception hierarchy.

Every error carries its offending indices as attributes and can render
itself as a plain dict, so reports can embed the structured rejection.
"""


class OrdfixError(Exception):
    """Base class for all package errors."""

    def to_dict(self):
        d = {"error": type(self).__name__, "message": str(self)}
        d.update({k: v for k, v in vars(self).items() if not k.startswith("_")})
        return d


class ValidationError(OrdfixError, ValueError):
    """Input data violates a structural axiom (metric, order, map)."""


class NotSquare(ValidationError):
    def __init__(self, shape):
        self.shape = list(shape)
        super().__init__(f"distance matrix must be square, got shape {tuple(shape)}")


class NonzeroDiagonal(ValidationError):
    def __init__(self, i, value):
        self.i, self.value = i, value
        super().__init__(f"dist[{i}][{i}] = {value!r}, expected 0")


class NegativeDistance(ValidationError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"dist[{i}][{j}] = {value!r} is negative")


class NonFiniteDistance(ValidationError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"dist[{i}][{j}] = {value!r} is not finite")


class Asymmetric(ValidationError):
    def __init__(self, i, j, a, b):
        self.i, self.j, self.a, self.b = i, j, a, b
        super().__init__(f"dist[{i}][{j}] = {a!r} != dist[{j}][{i}] = {b!r}")


class ZeroDistanceDistinct(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"distinct points {i} and {j} are at distance 0")


class TriangleViolation(ValidationError):
    """``dist[i][j] > dist[i][k] + dist[k][j] + tol``; ``defect`` is the excess."""

    def __init__(self, i, j, k, defect):
        self.i, self.j, self.k, self.defect = i, j, k, defect
        super().__init__(
            f"triangle inequality fails: d({i},{j}) exceeds d({i},{k}) + d({k},{j}) by {defect!r}"
        )


class DuplicatePoint(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"rows {i} and {j} of the embedding coincide")


class AntisymmetryViolation(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"partial order closure relates {i} <= {j} and {j} <= {i}")


class InvalidPoint(ValidationError):
    def __init__(self, point, n):
        self.point, self.n = point, n
        super().__init__(f"point id {point!r} out of range for a space of size {n}")


class SizeMismatch(ValidationError):
    def __init__(self, what, expected, got):
        self.what, self.expected, self.got = what, expected, got
        super().__init__(f"{what}: expected size {expected}, got {got}")


class NotAnOrder(ValidationError):
    def __init__(self, reason, i=None, j=None, k=None):
        self.reason, self.i, self.j, self.k = reason, i, j, k
        super().__init__(f"relation is not a quasi-order: {reason}")


class SpaceTooLarge(OrdfixError, ValueError):
    def __init__(self, n, cap):
        self.n, self.cap = n, cap
        super().__init__(f"brute force enumeration refused: n={n} exceeds cap={cap}")


class DomainError(OrdfixError, ValueError):
    def __init__(self, func, t):
        self.func, self.t = func, t
        super().__init__(f"{func} is undefined at t={t!r}")


class NonMonotoneProfile(OrdfixError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"step function decreases at interval {index}")


class GenerationBudgetExhausted(OrdfixError, RuntimeError):
    def __init__(self, config, seed):
        self.config, self.seed = config, seed
        super().__init__(f"no acceptable instance for seed={seed} within the retry budget")


class NotApplicable(OrdfixError):
    def __init__(self, hypothesis):
        self.hypothesis = hypothesis
        super().__init__(f"reduction not applicable: hypothesis {hypothesis} fails")


class ParseError(OrdfixError, ValueError):
    """Instance or report document is malformed."""
