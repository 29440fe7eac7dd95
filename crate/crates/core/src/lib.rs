//! Exact computation with finitely generated n-valued groups.
//!
//! The crate is `no_std` and only needs `alloc`. It provides concrete group
//! backends with a solvable word problem ([`groups`]), multisets ([`multiset`]),
//! coset and double coset n-valued groups ([`mvalued`]), Cayley-graph balls
//! and power supports ([`cayley`]) and the growth of n-valued dynamics
//! ([`dynamics`]). File formats and the command line live in the `mvgroup`
//! crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cayley;
pub mod dynamics;
mod error;
pub mod groups;
pub mod multiset;
pub mod mvalued;
pub mod word;

pub use error::{AutomorphismDefect, Error, Result};
pub use groups::{Automorphism, AutomorphismGroup, Backend, Element};
pub use multiset::MultiSet;
pub use mvalued::{CosetGroup, DoubleCosetGroup, MultiValuedGroup, MvGroup, NatGroup};
pub use word::Word;

/// Maximum number of elements any breadth-first exploration may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(1_000_000);

    pub(crate) fn check(self, size: usize) -> Result<()> {
        if size > self.0 {
            Err(Error::BudgetExceeded { budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
