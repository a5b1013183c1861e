//! Exact arithmetic for Seiberg-Witten invariant data of closed oriented
//! 4-manifolds.
//!
//! The crate works from topological input only: Betti numbers, an
//! intersection lattice, `w₂`, and where needed cup products on `H¹` or
//! complex-geometric facts about a Kähler surface. No floating point is
//! used anywhere.
//!
//! * [`topology`]: the manifold record, expected dimensions, admissibility.
//! * [`chambers`]: walls and chambers when `b₊ = 1`.
//! * [`extalg`]: the integer exterior algebra on `H₁/Tors` and the
//!   universal wall-crossing difference.
//! * [`kahler`]: full `(SW⁺, SW⁻)` tables from PSC and Kähler `p_g = 0` facts.
//! * [`stability`]: slope and Hilbert-polynomial stability of oriented pairs.
//!
//! ```
//! use swcalc::topology::ManifoldTopology;
//!
//! let cp2 = ManifoldTopology::projective_plane();
//! assert!(cp2.validate().is_valid());
//! let c = cp2.characteristic(vec![7]).unwrap();
//! assert_eq!(cp2.expected_dim_abelian(&c).unwrap(), 10);
//! ```

pub mod chambers;
pub mod cone;
pub mod error;
pub mod extalg;
pub mod kahler;
pub mod lattice;
pub mod rational;
pub mod stability;
pub mod topology;

pub use error::{Error, Result};
pub use rational::Q;
