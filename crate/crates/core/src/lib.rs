//! Double coil knots and their relatives.
//!
//! * [`slope`]: reduced slopes and canonical continued fractions.
//! * [`curves`]: curves on the 4-punctured sphere and their intersection
//!   numbers with the framing arcs.
//! * [`diagram`]: planar diagrams, PD codes, twist regions and the
//!   generators for 2-bridge links, double coils and augmented links.
//! * [`bounds`]: volume and spectral-gap estimates.
//! * [`family`]: sweeps over parametrized families of double coils.

pub mod bounds;
pub mod curves;
pub mod diagram;
pub mod family;
pub mod slope;

pub use bounds::{
    buser_upper, cheeger_upper, coil_hyperbolicity_certificate, coil_k, coil_lambda_interval,
    coil_report, coil_volume_interval, cusp_slope_length_lower, dehn_filling_factor,
    disk_obstruction_check, ell_param, lambda_lower, lambda_upper, parent_volume_interval,
    slope_length_lower, BoundsError, CoilReport, Condition, HyperbolicityCertificate,
    SpectralInterval, VolumeInterval,
};
pub use curves::{
    arc_curve_intersection, brute_force_intersection, curve_coordinates, curve_curve_intersection,
    dehn_twist, multicurve_coordinates, CurveError, FramedCurve, IntersectionMode, LatticeTrace,
    DEFAULT_ORACLE_CAP,
};
pub use diagram::{
    emit_pd, faces, fill_crossing_circle, gen_augmented, gen_clasped_two_bridge, gen_double_coil,
    gen_two_bridge, generalized_twist_regions, parse_pd, render_svg, twist_regions, CoilSpec,
    DiagramError, PlanarDiagram, RenderOptions, TwistRegionPartition,
};
pub use family::{
    analyze_family, analyze_family_with_cap, expanding_verdict, parse_family_config,
    twist_growth_experiment, CoilFamily, FamilyError, FamilyKind, FamilyReport, SlopeSequence,
    Verdict,
};
pub use slope::{
    canonical_coil_slope, cfrac_eval, cfrac_eval_checked, cfrac_expand, cfrac_length, mirror_slope,
    reduce_slope, ContinuedFraction, Slope, SlopeError,
};
