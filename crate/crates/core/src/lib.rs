//! Multi-scale local homology of sampled spaces.
//!
//! Given a finite sample `L` of a space `X` and a basepoint `x`, this crate
//! approximates the persistent local homology of `X` at `x` from
//! Vietoris-Rips complexes on `L`, and certifies how far the computed
//! diagram can be from the ideal one in bottleneck distance.
//!
//! The building blocks are exposed as well: Rips, Čech and lower-star
//! filtrations ([`complex`]), Z/2 persistence of filtrations and of filtered
//! pairs ([`persistence`]), and the exact bottleneck distance ([`metric`]).
//!
//! ```
//! use localhom::geometry::LocalQuery;
//! use localhom::local::alpha_pipeline;
//! use localhom::synthetic::{generate, SpaceKind, SpaceSpec};
//!
//! let cross = generate(&SpaceSpec::new(SpaceKind::Cross2d { half_length: 0.5 }, 0.05)).unwrap();
//! let query = LocalQuery {
//!     basepoint: vec![0.0, 0.0],
//!     radius: 0.25,
//!     epsilon: 0.05,
//!     max_scale: 0.1,
//!     max_dim: 1,
//! };
//! let result = alpha_pipeline(&cross, &query).unwrap();
//! // four arms meet at the crossing: three independent relative 1-cycles
//! let long_lived = result.diagram.in_dim(1).filter(|p| p.persistence() > 2.0 * result.bound).count();
//! assert_eq!(long_lived, 3);
//! ```

pub mod complex;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod io;
pub mod local;
pub mod metric;
pub mod persistence;
pub mod synthetic;

pub use complex::{FilteredPair, Filtration, Simplex};
pub use diagram::{DiagramPoint, PersistenceDiagram};
pub use error::{Error, Result};
pub use geometry::{LocalQuery, PointCloud};
pub use local::{ApproxResult, BoundFormula, TranslatedDiagram};
