"""Exception hierarchy.

``InputError`` subclasses describe bad input (CLI exit code 1);
``InvariantViolation`` subclasses describe a failed check (exit code 2).
"""


class LieWeightsError(Exception):
    pass


class InputError(LieWeightsError):
    pass


class InvariantViolation(LieWeightsError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class DimensionMismatch(InputError, ValueError):
    pass


class DimensionTooLarge(InputError):
    pass


class JacobiViolation(InputError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        i, j, k = (t + 1 for t in triple)
        nz = {idx + 1: str(c) for idx, c in enumerate(residual) if c}
        super().__init__(f"Jacobi identity fails on ({i},{j},{k}); residual {nz}")


class NotADerivation(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"matrix {index} is not a derivation")


class NonCommutingDerivations(InputError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"derivations {a} and {b} do not commute")


class NotNilpotent(InputError):
    pass


class ZeroRank(InputError):
    pass


class MultipleWeights(InputError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"basis vectors {i + 1} and {j + 1} share a weight; weight spaces must be one-dimensional")


class NonIntegralWeights(InputError):
    pass


class RankDeficient(InputError):
    pass


class TooLarge(InputError):
    pass


class PreconditionFailed(LieWeightsError):
    pass


class ParseError(InputError):
    pass


class DuplicateBracket(ParseError):
    pass


class VerdictMismatch(InvariantViolation):
    """Graph criterion and derived-series oracle disagree on some subtorus."""

    def __init__(self, mismatches, report=None):
        self.mismatches = mismatches
        self.report = report
        subsets = ", ".join("{" + ",".join(map(str, s)) + "}" for s in mismatches)
        super().__init__(f"graph criterion and derived-series oracle disagree on subtori {subsets}")
