//! Exact computations in the algebra D(𝒜) of differential operators tangent
//! to a central line arrangement in the plane.

pub mod arrangement;
pub mod calabi_yau;
pub mod comparison;
pub mod diagonal;
pub mod error;
pub mod ext;
pub mod gerstenhaber;
pub mod hochschild;
pub mod linalg;
pub mod lincomb;
pub mod morphism;
pub mod ore;
pub mod orlik_solomon;
pub mod poly;
pub mod rational;
pub mod report;
pub mod resolution;
pub mod rewrite;
pub mod symmetry;
pub mod text;
pub mod wedge;
pub mod window;

pub use arrangement::Arrangement;
pub use error::{Error, Result};
pub use hochschild::Cochain;
pub use lincomb::LinComb;
pub use morphism::{AlgebraMorphism, Derivation};
pub use ore::{Letter, Mono, OreElement};
pub use poly::{CommPoly, LinearForm};
pub use rational::Rational;
pub use resolution::BimoduleChain;
pub use wedge::Wedge;
pub use window::TruncationWindow;
