//! Division/split decision for `(a,b/Q)` through local Hilbert symbols,
//! plus two independent oracles used to cross-check it.

pub mod factor;
pub mod hilbert;
pub mod oracle;

pub use factor::{factorize, is_prime, FactorBudget};
pub use hilbert::{
    are_isomorphic, classification_record, form_from_algebra, hilbert_symbol, is_division,
    ramified_places, square_class, Place, RamificationSet, TernaryForm,
};
pub use oracle::{isotropy_oracle, padic_solvability_oracle, PadicBudget, Triple};
