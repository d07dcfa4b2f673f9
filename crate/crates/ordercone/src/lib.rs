//! Exact-arithmetic toolkit for finite-dimensional polyhedral ordered vector
//! spaces: semi-open polyhedral sets, order cones, the Riesz-Kantorovich
//! transform of finite operator families, decomposition-property checkers
//! with certificates, and constructive dominating extensions.
//!
//! All computation is over arbitrary-precision rationals; results are exact
//! and deterministic.

pub mod decomp;
pub mod error;
pub mod hahn_banach;
pub mod lab;
pub mod num;
pub mod operator;
pub mod ordered_space;
pub mod polyhedron;
pub mod ratgeom;
pub mod rk;

pub use error::{Error, Result};
pub use decomp::{check_lrdp, check_rdp, FunctionalClass, RdpReport, SeparationResult};
pub use hahn_banach::{ExtensionDomain, ExtensionProblem, SuperlinearKind, SuperlinearMap};
pub use lab::{GrkfReport, TrialConfig};
pub use num::{Rat, RatMatrix, RatVector};
pub use operator::LinearOperator;
pub use ordered_space::{dim_cap, ConeRepr, OrderInterval, OrderedSpace};
pub use polyhedron::{Cell, CellUnion, VertexList};
pub use rk::{DualPolyhedron, Linearity, RkInstance, RkValue};
