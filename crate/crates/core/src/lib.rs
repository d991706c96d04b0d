//! Suspension splittings and gauge-group product decompositions over highly
//! connected manifolds.
//!
//! * [`arith`]: Bernoulli numbers, `|Im J|`, residues and subset gcds.
//! * [`modmatrix`]: attaching matrices over cyclic groups reduced by
//!   certified row operations, and ranks over `F_2`.
//! * [`tables`]: homotopy groups with citations.
//! * [`expr`]: the space-expression algebra and its renderers.
//! * [`decompose`]: theorem dispatch.

pub mod arith;
pub mod decompose;
pub mod error;
pub mod expr;
pub mod modmatrix;
pub mod tables;

pub use arith::{bernoulli, gcd_mod, imj_order, CyclicElem, Rational};
pub use decompose::{
    decompose, gauge_decompose_complex, gauge_decompose_n2, gauge_decompose_sphere_bundle,
    gauge_decompose_wall, index_e, skeleton_split_n2, suspension_split_wall, Decomposition,
    GeneralComplex, ManifoldSpec, N2Type, Rule, SigmaFCase, SphereBundle, WallType,
};
pub use error::{Error, Result};
pub use expr::{localize, render, Format, SpaceExpr};
pub use modmatrix::{AttachingMatrix, F2Matrix, RowOp};
pub use tables::{FGAbelianGroup, GroupQueryResult, Space, StructureGroup, TableSet};
