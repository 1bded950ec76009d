"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can report failures without a traceback.
"""


class TopoControlError(Exception):
    code = "error"


class UniverseMismatch(TopoControlError, ValueError):
    code = "universe_mismatch"


class InvalidUniverse(TopoControlError, ValueError):
    code = "invalid_universe"


class BoundExceeded(TopoControlError, ValueError):
    code = "bound_exceeded"


class EmptyF(TopoControlError, ValueError):
    code = "empty_f"


class FullF(TopoControlError, ValueError):
    code = "full_f"


class InvalidOperator(TopoControlError, ValueError):
    code = "invalid_operator"


class NotAClosureOperator(TopoControlError):
    code = "not_a_closure_operator"

    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed_axioms())
        super().__init__(f"operator violates Kuratowski axiom(s): {failed}")


class NotATopology(TopoControlError, ValueError):
    code = "not_a_topology"

    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed_checks())
        super().__init__(f"family is not a topology: {failed}")


class EmptySubspace(TopoControlError, ValueError):
    code = "empty_subspace"


class FNotClosed(TopoControlError, ValueError):
    code = "f_not_closed"


class InconsistentDimensions(TopoControlError, ValueError):
    code = "inconsistent_dimensions"


class NonfiniteState(TopoControlError, FloatingPointError):
    code = "nonfinite_state"


class BadInterval(TopoControlError, ValueError):
    code = "bad_interval"


class TooManyCells(TopoControlError, ValueError):
    code = "too_many_cells"


class EmptyCloud(TopoControlError, ValueError):
    code = "empty_cloud"


class ParseError(TopoControlError, ValueError):
    code = "parse_error"


class MisalignedSegments(TopoControlError, ValueError):
    code = "misaligned_segments"
