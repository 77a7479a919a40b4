"""Eccentric pie charts and 3-blade pie cutting."""

from ._eccpie import (  # noqa: F401
    ChartLayout,
    Orientation,
    PiecutMode,
    PiecutOutcome,
    PiecutSolution,
    PolySystem,
    Root,
    RootClass,
    RootSet,
    TrackerConfig,
    UniPoly,
    arccos_taylor,
    build_piecut_system,
    build_single_sector_system,
    central_angle,
    export_system,
    nine_cell_grid,
    filter_roots,
    max_abs_error,
    max_sector_fraction,
    parse_system,
    pizza_check,
    ray_extent,
    render_svg,
    sector_area,
    sector_area_integral,
    segment_area,
    signed_triangle_area,
    solve_chart,
    solve_piecut,
    total_degree_solve,
    triangle_area,
)

__all__ = [name for name in dir() if not name.startswith("_")]
