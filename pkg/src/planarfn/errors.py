"""Exception types shared across the package."""


class ContractViolationError(RuntimeError):
    """A precondition that the caller promised (e.g. "f is planar and
    homogeneous") turned out to be false mid-computation."""


class NotPlanarFormError(ContractViolationError):
    """An exponential sum did not decompose as (+-1) * p * omega^l, which
    certifies that the input function is not planar."""


class NotConicError(RuntimeError):
    """A fitted point set did not determine a unique conic (nullspace
    dimension of the quadratic-form system is not 1)."""


class SearchLimitError(RuntimeError):
    """The exhaustive search hit its node or wall-clock cap.

    Carries the partial solutions found so far and the DFS frontier (the
    assignment stack at the moment the cap was hit) so a caller can resume
    or report progress.
    """

    def __init__(self, message, solutions, frontier, nodes):
        super().__init__(message)
        self.solutions = solutions
        self.frontier = frontier
        self.nodes = nodes
