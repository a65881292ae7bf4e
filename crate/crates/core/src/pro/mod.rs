//! Towers of finitely generated abelian groups, maps between them in the
//! pro-category, and the limits that pro-isomorphisms preserve.

mod homs;
mod limits;
mod map;
mod tower;

pub use limits::{colim_hom_ext, is_pro_trivial, lim_lim1, pro_pushforward_check, ColimitReport, LimitReport, PushforwardReport};
pub use map::{tower_levels, MapTail, TowerMap};
pub use tower::{TailRule, Tower, TowerLevel};

#[cfg(test)]
pub(crate) use homs::check_hom;
