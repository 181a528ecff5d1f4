//! Khovanov-type homology over the two-element field, and the state-sum
//! Laurent polynomial, for ordered Morse signed divides.

pub mod complex;
pub mod divide;
pub mod fixtures;
pub mod frobenius;
pub mod gf2;
pub mod homology;
pub mod moves;
pub mod poly;
pub mod states;
pub mod text;

pub use complex::{build_complex, check_d_squared, ComplexError, GradedComplex};
pub use divide::{Crossing, Divide, DivideError, PartialDivide, PointKind, Resolvable, Side, Sign, SingularProfile, WallItem};
pub use homology::{graded_euler, homology_table, HomologyTable};
pub use moves::{apply_move, random_divide, MoveSpec};
pub use poly::{HalfLaurent, Laurent, PolyError, Scalar};
pub use states::{EnhancedState, ResolutionWord, StateError, DEFAULT_MAX_POINTS};
