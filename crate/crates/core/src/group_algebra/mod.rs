//! Finite presentations and bounded group computations.

mod presentation;
mod snf;
mod svk;
mod tietze;
mod todd_coxeter;
mod word;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use presentation::Presentation;
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use svk::{disconnected_complements, free_product, glue_images, svk_pushout, Gluing};
pub use tietze::{cyclic_normal_form, tietze_simplify, DEFAULT_TIETZE_PASSES};
pub use todd_coxeter::{coset_index, todd_coxeter, words_equal, CosetResult};
pub use word::{free_reduce, Letter, Word};

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let k = p.generator_count();
    let mut m = IntMatrix::zeros(p.relator_count(), k);
    for (i, r) in p.relators().iter().enumerate() {
        for g in 0..k {
            m.set(i, g, BigInt::from(r.exponent_sum(g)));
        }
    }
    m
}

/// Invariants of `G / [G, G]` from the Smith normal form of the relation
/// matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&relation_matrix(p), false);
    let nonzero: Vec<BigInt> = snf.diagonal.into_iter().filter(|d| !d.is_zero()).collect();
    let rank = p.generator_count() - nonzero.len();
    let torsion = nonzero
        .into_iter()
        .map(|d| d.abs())
        .filter(|d| !d.is_one())
        .collect();
    AbelianInvariants { rank, torsion }
}
