//! Type I, II and III points of the Berkovich projective line as closed
//! disks, their correspondence with the coarse-grained product space, the
//! path metric, and disk seminorms of polynomials.

mod ext;
mod point;
mod poly;

pub use ext::Ext;
pub use point::{type3_from_path, BerkPoint, BerkPointJson, BerkType, WPoint};
pub use poly::{gauss_seminorm, seminorm_sampled_sup, Polynomial};
