"""
errors.py - Exception hierarchy for geometric failures

Every class derives from ValueError so callers that only guard against
bad input keep working. `report` carries the failing check so the CLI can
write it before exiting.
"""

from typing import Any, Dict, Optional


class GeometryError(ValueError):
    """Base class for domain failures"""

    category = "unexpected"

    def __init__(self, message: str, report: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.report = report or {}


class NonSkewError(GeometryError):
    category = "usage"


class DegenerateFrameError(GeometryError):
    category = "degenerate"


class PointOrbitError(GeometryError):
    category = "degenerate"


class NonRegularPointError(GeometryError):
    category = "degenerate"


class TangentialVectorError(GeometryError):
    category = "degenerate"


class ClusteringAmbiguityError(GeometryError):
    category = "degenerate"


class WeylGroupOverflowError(GeometryError):
    category = "weyl_invariance"


class ImmersionError(GeometryError):
    category = "degenerate"


class WeylInvarianceError(GeometryError):
    category = "weyl_invariance"


class TransversalityError(GeometryError):
    category = "transversality"


class ProfileSmoothnessError(GeometryError):
    category = "smoothness"


class RealizabilityError(GeometryError):
    category = "realizability"


class MetadataError(GeometryError):
    category = "metadata"


class ConfigParseError(GeometryError):
    category = "usage"
