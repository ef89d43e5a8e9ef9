//! Exact integer, rational and polynomial algebra.

pub mod intpoly;
pub mod modp;
pub mod numtheory;
pub mod padic;
pub mod poly;
pub mod serial;
pub mod sturm;
pub mod zassenhaus;

pub use intpoly::{content, disc_in_t, discriminant, primitive_part, resultant, squarefree_part};
pub use modp::{factor_mod_p, FpPoly};
pub use padic::{find_newton_witness, hensel_lift_root, newton_converges, valuation, NewtonCheck, PAdicInt};
pub use sturm::sturm_real_roots;
pub use zassenhaus::{factor_over_z, is_irreducible_q, Irreducibility, DEFAULT_DEGREE_CAP};
