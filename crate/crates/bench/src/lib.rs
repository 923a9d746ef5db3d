//! Fixtures shared by the criterion targets.

use std::sync::Arc;

use codelat_core::{assets, code_sector_set, discriminant_form, FiniteQuadraticModule, RatMatrix, RationalLattice, SectorSet};

/// The Golay code sectors inside (Z/2)²⁴, a group of order 2¹².
pub fn golay_sectors() -> SectorSet {
    code_sector_set(&assets::golay_24_12())
}

fn block_sum(parts: &[RationalLattice]) -> RationalLattice {
    let n: usize = parts.iter().map(|p| p.rank()).sum();
    let mut g = RatMatrix::zeros(n, n);
    let mut at = 0;
    for p in parts {
        let r = p.rank();
        for i in 0..r {
            for j in 0..r {
                g[(at + i, at + j)] = p.gram()[(i, j)].clone();
            }
        }
        at += r;
    }
    RationalLattice::from_gram(g).expect("nondegenerate blocks")
}

/// Discriminant form of D₄ ⊕ A₁², small enough to list every subgroup.
pub fn mixed_module() -> Arc<FiniteQuadraticModule> {
    let (d4, a1) = (assets::d4(), assets::a1());
    let l = block_sum(&[d4, a1.clone(), a1]);
    Arc::new(discriminant_form(&l).expect("even lattice").0)
}
