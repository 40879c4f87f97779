# SPDX-License-Identifier: Apache-2.0
# Copyright (c) 2026 emtrace contributors
"""Deterministic site-specific radio ray tracing and MIMO channel synthesis."""

from ._core import (  # noqa: F401
    SPEED_OF_LIGHT,
    AntennaArray,
    CorruptionError,
    IncompletePackageError,
    InteractionEvent,
    Material,
    PackageExistsError,
    ParseError,
    PathRecord,
    RisPanel,
    Scene,
    SemanticError,
    Terminal,
    TerminationPolicy,
    apply_ris_to_path,
    array_response,
    assemble_cir,
    assign_materials_by_name,
    biased_directions,
    compute_coverage,
    default_freq_grid,
    doppler_shift,
    evaluate_cfr,
    fibonacci_directions,
    fresnel_par,
    fresnel_perp,
    parse_scene,
    path_metrics,
    read_package,
    ris_array_factor,
    ris_multibeam_optimize,
    ris_single_beam_profile,
    run_scenario,
    serialize_scene,
    sha256_hex,
    snell_angle,
    trace_paths,
    transform_points,
    transmission_coeffs,
    update_amplitude,
    utd_diffraction_coeff,
    validate_config,
)

__version__ = "0.1.0"
