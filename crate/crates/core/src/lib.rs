//! Exact local models of the symplectic Quot scheme.
//!
//! A point of the Quot scheme of torsion quotients of the trivial rank `2r`
//! bundle on a curve is described, near each support point, by a full-rank
//! `2r x 2r` matrix over truncated power series. The standard symplectic form
//! restricted to the column span decides membership in the symplectic locus,
//! and its vanishing order gives the divisor map.
//!
//! All arithmetic is exact over the rationals.
//!
//! Runnable examples, one per capability:
//!
//! | example | shows |
//! |---|---|
//! | `standard_form` | the symplectic form, Lagrangians, chart and group dimensions |
//! | `membership` | membership tests and the divisor map on hand-written models |
//! | `fiber_points` | points over a reduced divisor from Lagrangians and back |
//! | `tangent_spaces` | hom space, tangent space and fiber tangent dimensions |
//! | `group_action` | the group acting on points and Lagrangians, effectiveness |
//! | `point_files` | JSON point documents |
//! | `dimension_report` | the dimension table over a grid of `(r, d)` |

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod local_model;
pub mod rng;
pub mod symplectic;
pub mod tangent;
