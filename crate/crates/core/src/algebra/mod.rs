//! Finite fields, polynomials over them, and square classes.

pub mod ext;
pub mod factor;
pub mod fp;
pub mod poly;
pub mod square;
pub mod zech;

pub use ext::ExtField;
pub use factor::{factor, is_irreducible, Factorization};
pub use fp::{is_prime, prime_factors, PrimeField};
pub use poly::Poly;
pub use square::{square_class, square_class_ext, square_class_of_rational, SquareClass};
pub use zech::ZechField;
