//! Assembly of `K^*(BG)` and `K_*(BG)` for groups with a finite model for
//! proper actions: the `r`-table, the exact-sequence presentations, their
//! rationalization and duality checks, and the pipelines for finite groups,
//! maximal-subgroup decompositions and Fuchsian groups.

mod duality;
mod package;
mod pipelines;
mod presentation;
mod rtable;

pub use duality::{borel_uct, duality_check, uct_cross_check, Check, DualityReport};
pub use package::{ClassData, GroupPackage, QuotientData, BUILTIN_PACKAGES};
pub use pipelines::{
    assembly_report, con_p_tables, finite_reduced_cohomology, fuchsian_pipeline, mnm_assemble, mnm_unreduced, AssemblyReport,
    FuchsianReport, MnmReport,
};
pub use presentation::{
    assemble_cohomology, assemble_homology, rationalize, Assembly, HypothesisStatus, KPresentation, Kind, QuotientK,
    QuotientTorsion, Rationalization, Sharpness, Slot, Term,
};
pub use rtable::{complex_classes, parity, r_pk_from_complex, r_pk_from_package, RRow, RTable};
