//! `GL_n(q)`, its root system of type `A_{n-1}`, the unitriangular group and
//! the standard parabolic subgroups.

pub mod glmat;
pub mod parabolic;
pub mod roots;
pub mod uni;
pub mod word;

pub use glmat::{GLMat, GlGroup};
pub use parabolic::{build_parabolic_table, parabolic_index, ParabolicTable};
pub use roots::{positive_roots, root_apply, root_orth, root_sum, simple_roots, Perm, Root};
pub use uni::UniIndex;
pub use word::Gen;
