//! Geometric algebra kernel for the conformal model (CGA) and the projective
//! model (PGA) computed as a subalgebra of it.
//!
//! * [`multivector`] and [`signature`]: signature-generic Clifford arithmetic.
//! * [`cga`]: conformal points, flats, spheres, duality and versors.
//! * [`pga`]: the `sharp` automorphism, projective duality, regressive
//!   product, PGA objects and versors.
//! * [`expr`]: a small expression language over multivectors.
//! * [`scene`] and [`check`]: the worked scene and the randomized identity
//!   suites used by the `gab` command.

pub mod cga;
pub mod check;
pub mod entity;
pub mod error;
mod exact;
pub mod expr;
pub mod multivector;
pub mod pga;
pub mod sampling;
pub mod scene;
pub mod signature;
pub mod versor;

pub use entity::{equivalent, GeometricEntity, Kind, Representation};
pub use error::{GaError, Result};
pub use multivector::Multivector;
pub use signature::{BasisBlade, Model, Signature};
pub use versor::{apply_versor, normalize_versor, Parity, Versor};
