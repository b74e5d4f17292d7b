//! Exact arithmetic, F4 root data and Cayley-plane pushforwards for
//! constructing string-cobordism generators.

pub mod bundles;
pub mod exactnum;
pub mod f4roots;
pub mod gcdlaws;
pub mod generators;
pub mod polyalg;
pub mod pushforward;

pub use bundles::{BordismCombination, CayleyBundleSpec, CompleteIntersection, P1Convention};
pub use exactnum::{PadicOrder, Integer, Rational};
pub use gcdlaws::GcdKind;
pub use generators::{ConstructionOptions, GeneratorReport, Mutation, TheoremReport, Triple};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use polyalg::{Monomial, Partition, Poly2, Poly4, QPoly};
pub use pushforward::PushforwardCache;
