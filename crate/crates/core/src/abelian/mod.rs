//! Abelian-group value types and the homological algebra on them:
//! finitely generated groups, groups "up to finite torsion" built from
//! `p`-adic integers or Prüfer groups, `hom`/`ext` into `Z`, `dim_p^`
//! and rank-level Pontryagin duality.

mod adic;
mod fg;
mod notation;
mod prime;
mod uct;
mod value;

pub use adic::{AdicGroup, DivisibleGroup};
pub use fg::FgAbGroup;
pub use notation::{Notation, Render};
pub use prime::{is_prime, prime_divisors, prime_divisors_big, Prime};
pub use uct::{uct_transfer, UctDirection};
pub use value::{euler_balanced, euler_dim_hat_sum, GroupValue};
