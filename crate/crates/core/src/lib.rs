pub mod algebra;
pub mod counting;
pub mod degeneration;
pub mod error;
pub mod pencil;
pub mod ratmap;
pub mod schubert;

pub use algebra::{Fe, FiniteField, Poly};
pub use error::{Error, Result};
pub use pencil::Pencil;
pub use ratmap::{Divisor, Mobius, ProjPoint, RatMap};
pub use counting::{CharClass, Characteristic, Count, CountResult, RamProfile};
