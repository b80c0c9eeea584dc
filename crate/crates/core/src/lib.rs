//! Exact computation of the bigraded Hochschild cohomology `HH^{2,q}` of zigzag
//! algebras by three independent routes: the reduced Hochschild complex of
//! `Z(Γ)`, the small complex of the 2-Ginzburg dg algebra `Π₂(Q)`, and the trace
//! space of the preprojective algebra `Λ_Q`. Also checks Stasheff identities for
//! explicit A∞-deformations.

pub mod ainfty;
pub mod error;
pub mod exactla;
pub mod ginzburg;
pub mod pathalg;
pub mod preproj;
pub mod quiver;
pub mod report;
pub mod zigzag;

pub use error::{Error, Result};
