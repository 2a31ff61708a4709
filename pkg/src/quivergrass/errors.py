"""Exception hierarchy.

Two families matter to callers (and to the CLI exit-code contract):

* ``InputError`` -- the caller handed us something malformed.  CLI exit 2.
* ``Refusal`` -- the input is fine but the requested computation is not
  available (wrong mode, too large, certificate failed).  CLI exit 1.
"""


class QuivergrassError(Exception):
    pass


class InputError(QuivergrassError):
    pass


class Refusal(QuivergrassError):
    pass


class ParseError(InputError):
    """Malformed line in the quiver text format."""


class DuplicateIdentifier(InputError):
    """A vertex/arrow identifier was declared twice, or a dim line repeated."""


class DanglingEndpoint(InputError):
    """An arrow or dim line references a vertex that was never declared."""


class CycleDetected(InputError):
    """The quiver has a directed cycle; only acyclic quivers are supported."""


class InfeasibleDimensions(InputError):
    """A dimension vector is negative, wrongly sized, or exceeds its ambient."""


class NotASubrepresentation(InputError):
    """Per-vertex subspaces are not closed under the arrow action."""


class SupportNotArrowClosed(InputError):
    """An ambient support set is not closed under extension arrows."""


class ParallelPathsUnsupported(Refusal):
    """The operation needs tree mode (no two distinct paths share endpoints)."""


class EnumerationTooLarge(Refusal):
    """The estimated exhaustive workload exceeds the configured cap."""


class SmoothnessNotCertified(Refusal):
    """The Ext-vanishing certificate failed, so cell dimensions are unreliable."""


class PavingInconsistent(Refusal):
    """Cell dimensions violate a structural check (degree, palindromy, count)."""


class NotPolynomialCount(Refusal):
    """Point counts did not interpolate to an integer polynomial."""


class MissingRepVarietyMotive(Refusal):
    """The recursion needs a representation-variety motive that was not supplied."""
