pub mod beam;
pub mod bounds;
pub mod corpus;
pub mod extension;
pub mod geometry;
pub mod ilp;
pub mod linalg;
pub mod oss;
pub mod similarity;
pub mod tables;
pub mod scalar;

pub use geometry::{GeometryError, PairRole, Point, PointSet};
pub use scalar::{Coord, ExactField};

pub type Rational = num_rational::BigRational;
pub type GridPoint = Point<i64>;
pub type GridSet = PointSet<i64>;
pub type RatPoint = Point<Rational>;
