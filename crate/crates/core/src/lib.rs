//! Exact rational-point counting on smooth surfaces of degree 4 and 5 in P³(Q).
//!
//! The crate follows the plane-section strategy end to end:
//!
//! * [`projective`]: primitive points and planes, heights, exterior products.
//! * [`lattice`]: orthogonal lattices, exact LLL, and the covering plane of a point.
//! * [`surface`]: parsing and evaluating the defining form, heuristic smoothness checks.
//! * [`points`]: sieved enumeration of points of bounded height, rational lines, line stripping.
//! * [`section`]: plane sections, factorization of ternary forms, geometric genus.
//! * [`experiment`]: configuration, orchestration, and the CSV reports.
//!
//! Everything is exact: integers are arbitrary precision at the API boundary and
//! the hot loops switch to `i128` only when an a-priori bound rules out overflow.

pub mod algebra;
pub mod experiment;
pub mod lattice;
pub mod par;
pub mod points;
pub mod projective;
pub mod section;
pub mod surface;

pub use lattice::{covering_plane, enumerate_planes, OrthogonalLatticeBasis};
pub use points::{enumerate_points, find_lines, strip_lines, LineOnSurface, PointSet};
pub use projective::{PrimitivePlane, PrimitivePoint, SubspaceBasis};
pub use section::{classify_section, factor_ternary, genus, SectionProfile, TernaryForm};
pub use surface::{parse_surface, SurfaceForm};
