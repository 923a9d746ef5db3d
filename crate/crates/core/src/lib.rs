//! Exact binary codes, rational lattices and abelian sector data, with duals,
//! graded invariants (weight enumerators, theta series, characters) and the
//! lifts between them.

pub mod assets;
pub mod codes;
pub mod error;
pub mod io;
pub mod lattices;
pub mod lifts;
pub mod matrix;
pub mod qseries;
pub mod sectors;

pub use codes::{BinaryCode, BitVector, DEFAULT_ENUMERATION_CAP};
pub use error::{Error, Result};
pub use lattices::{discriminant_form, CosetMap, RationalLattice, ShortVectorReport};
pub use lifts::{
    code_sector_set, code_to_sectors, construction_a, intermediate_to_sectors, lattice_to_sectors,
    verify_table_row, CorrespondenceReport, TierObject, Verdict, VerifyOptions,
};
pub use matrix::{rat, Int, IntMatrix, Rat, RatMatrix};
pub use qseries::{colored_partitions, eta, QSeries};
pub use sectors::{all_subgroups, heisenberg_character, Element, FiniteQuadraticModule, SectorAlgebra, SectorSet};
