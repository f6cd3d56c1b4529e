//! Graded free modules, presented modules and their resolutions.

pub mod chain;
pub mod free;
pub mod io;
pub mod koszul;
pub mod module;
pub mod resolution;
pub mod syzygy;

pub use chain::{lift_chain_map, mapping_cone, ChainMap};
pub use free::{GradedFreeModule, GradedMap, Ring};
pub use io::{parse_presentation, presentation_to_json, PresentationFile};
pub use koszul::{koszul_complex, koszul_differential, koszul_module, koszul_syzygy_module, subsets};
pub use module::{module_mult_matrix, ModuleSlice, PresentedModule, RingReduction};
pub use resolution::{
    minimal_free_resolution, minimal_presentation, prune, BettiTable, FreeResolution, HilbertPolynomial,
    ResolutionOptions,
};
pub use syzygy::{syzygy, syzygy_checked};
