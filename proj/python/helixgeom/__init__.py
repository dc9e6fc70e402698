"""Closed-form spherical slant helices and their diagnostics.

Thin package wrapper around the compiled ``_core`` module: the slant helix
family construction, Frenet apparatus diagnostics, Wong sphericity criteria,
projection/reconstruction pipeline, and closure analysis.
"""

from ._core import (  # noqa: F401
    ClosureResult,
    HelixError,
    InvalidParamsError,
    InvalidRatioError,
    SlantHelixParams,
    Vec3,
    __version__,
    a_for_ratio,
    arc_length,
    curvature_closed,
    curvature_denominator,
    frame_closed,
    is_closed,
    lift_to_sphere,
    position,
    position_derivative,
    projection_curvature,
    sigma,
    speed_weight,
    tangent_angle,
    torsion_closed,
    verify,
    wong_report,
    y_curvatures,
    y_indicatrix,
    y_sigma,
)
