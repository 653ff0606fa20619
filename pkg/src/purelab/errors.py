"""Exception types shared across purelab."""


class PurelabError(Exception):
    pass


class FormatError(PurelabError, ValueError):
    pass


class BudgetExceeded(PurelabError):
    def __init__(self, budget, explored=None):
        super().__init__(f"budget of {budget} states exhausted")
        self.budget = budget
        self.explored = explored


class NonAdjacent(PurelabError, ValueError):
    pass


class NotReduced(PurelabError, ValueError):
    pass


class IllegalMove(PurelabError, ValueError):
    pass


class NotAComplementationSet(PurelabError):
    pass


class NotInvertible(PurelabError):
    pass


class NotASplit(PurelabError, ValueError):
    pass


class RootIsolated(PurelabError, ValueError):
    pass


class NotPure(PurelabError, ValueError):
    pass


class NotADecomposition(PurelabError, ValueError):
    pass


class DegreeTooSmall(PurelabError, ValueError):
    pass


class LoopObstruction(PurelabError):
    pass


class NotEulerian(PurelabError, ValueError):
    pass


class NotTwoFactored(PurelabError, ValueError):
    pass


class NotDoubleOccurrence(PurelabError, ValueError):
    pass


class NotAlternating(PurelabError, ValueError):
    pass


class NotAnticlique(PurelabError, ValueError):
    pass


class NotADouble(PurelabError, ValueError):
    pass


class NotFourRegular(PurelabError, ValueError):
    pass


class NotConnected(PurelabError, ValueError):
    pass


class DegreeNotFour(PurelabError, ValueError):
    pass


class NotCubic(PurelabError, ValueError):
    pass


class NoPerfectMatching(PurelabError):
    pass
