pub mod coxplane;
pub mod diagrams;
pub mod error;
pub mod folding;
pub mod linalg;
pub mod masses;
pub mod project;
pub mod registry;
pub mod render;
pub mod roots;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};

pub use coxplane::{CoxeterPlane, PlaneData};
pub use diagrams::CoxeterDiagram;
pub use project::{circle_spectrum, projections, CircleSpectrum, Mode, PointSet};
pub use roots::{RootSystem, Vector};
pub use scalars::GoldenScalar;
