//! Ext modules, local and sheaf cohomology, and the Bott oracle.

pub mod bott;
pub mod ext;
pub mod les;
pub mod tables;

pub use bott::{bott_oracle, line_bundle_cohomology};
pub use ext::{ext_modules, ExtModule, ExtSlice, ExtSystem, Top};
pub use les::{is_nonzerodivisor, les_ext_maps, LesData};
pub use tables::{
    a_invariant, fmt_ainv, intermediate_vanish, local_cohomology_dims, regularity, serre_duality_check,
    sheaf_cohomology_table, LocalCohomologyTable, RegularityReport, SheafCohomologyTable,
};
