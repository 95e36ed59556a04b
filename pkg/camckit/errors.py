"""Module containing camc-kit errors"""

__author__ = "camc-kit developers"
__license__ = "MIT"


class CamcKitException(Exception):
    """Base class of every error raised by camc-kit"""


class DomainError(CamcKitException):
    """A value lies outside the domain where a formula makes sense"""


class OutOfDomain(CamcKitException):
    """A parameter point lies outside (or too close to) a parameter domain"""


class DegenerateJet(CamcKitException):
    """The parametrization is not an immersion at the sample (Xs x Xtheta = 0)"""


class VerticalNormalDegeneracy(CamcKitException):
    """The Gauss map is vertical, so the principal-direction frame vanishes"""


class GridTooSmall(CamcKitException):
    """A sampling grid has too few nodes for the requested stencil"""


class DegenerateRadius(CamcKitException):
    """A circle radius (or polar radius) is not positive"""


class RadiusCollapse(CamcKitException):
    """An ODE trajectory reached a non-positive radius.

    The accepted part of the trajectory is kept on ``trajectory``.
    """

    def __init__(self, message: str, trajectory: object = None) -> None:
        super().__init__(message)
        self.trajectory = trajectory


class StepTooLarge(CamcKitException):
    """The first integral drifted more than allowed within a single step"""


class AliasingRisk(CamcKitException):
    """Too few samples per period for the requested number of Fourier modes"""


class FrameUndefined(CamcKitException):
    """The Frenet frame of a curve is undefined (vanishing curvature)"""


class NewtonDivergence(CamcKitException):
    """Newton inversion of the planar projection did not converge"""


class NotAGraph(CamcKitException):
    """The surface is not a local graph over the xy-plane near the seed"""


class UnsupportedExtension(CamcKitException):
    """The requested Schwarz extension does not exist for this family"""


class InvalidPreset(CamcKitException):
    """A presets file is missing, is not valid YAML or has the wrong shape"""


class FormatUnavailable(CamcKitException):
    """The requested output format cannot render this kind of document"""
