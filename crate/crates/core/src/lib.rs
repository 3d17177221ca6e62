//! GT-shadows for the gentle Grothendieck–Teichmüller group over finite
//! quotients of the braid group `B3`.
//!
//! Objects are finite-index normal subgroups `N` of `B3` contained in the pure
//! braid group `PB3`, each represented as the kernel of an explicit
//! homomorphism `B3 -> Sym(n)`. Morphisms are GT-shadows `[m, f]` with
//! `m mod N_ord` and `f` a coset of `N ∩ F2` in the commutator subgroup of
//! `F2 / (N ∩ F2)`.
//!
//! Module map:
//!
//! * [`permcore`]: permutations, subgroup generation with word tracking,
//!   commutator subgroups and kernel containment.
//! * [`braidword`]: free reduction, the `F2` automorphisms `θ` and `τ`, the
//!   endomorphisms `E_{m,f}`, the `•` monoid, a `B3` normal form over the
//!   pure braid transversal and the Artin-action equality oracle.
//! * [`nfi`]: objects of the groupoid, quotient data, containment,
//!   intersections, the core construction from an `F2` quotient and catalog
//!   search.
//! * [`shadows`]: hexagon predicates, enumeration of `GT(N)`, `T_{m,f}`,
//!   sources, composition and inversion.
//! * [`groupoid`]: connected components, isolated objects, `N◇`, reductions,
//!   survival, finite-depth genuineness and the main line diagram.
//!
//! The crate is `no_std` (it needs `alloc`). The default `parallel` feature
//! pulls in `std` and rayon for candidate filtering and catalog search; every
//! result is independent of the thread count.
//!
//! Composition convention: the product `p * q` of permutations means "apply
//! `p` first, then `q`", and a word `w1 w2` evaluates to `eval(w1) * eval(w2)`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod braidword;
mod error;
pub mod groupoid;
pub mod nfi;
pub mod permcore;
pub mod shadows;

pub use braidword::{Alphabet, B3NormalForm, FreeWord, Letter};
pub use error::{Error, Result};
pub use groupoid::{ComponentReport, Explorer, FakeCertificate, MainLine, Verdict};
pub use nfi::{NfiSubgroup, QuotientData};
pub use permcore::{Domain, GenHom, GeneratedGroup, Permutation};
pub use shadows::GtShadow;

/// Resource caps shared by every enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be materialised by breadth-first closure.
    pub max_group_size: usize,
    /// Largest candidate grid `#units × |[F2/N_F2, F2/N_F2]|` scanned by
    /// shadow enumeration.
    pub max_candidates: usize,
    /// Largest permutation degree accepted by catalog search.
    pub max_catalog_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_size: 100_000,
            max_candidates: 2_000_000,
            max_catalog_degree: 6,
        }
    }
}
