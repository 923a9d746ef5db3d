//! Discriminant forms L°/L of even nondegenerate lattices.
//!
//! With Gram matrix G, an element of L° is z·G⁻¹·B for an integer row z, and
//! it lies in L exactly when z ∈ Zⁿ·G. If U·G·V = diag(d₁, …, dₙ) is the
//! Smith form, z ↦ z·V identifies L°/L with ⊕ Z/dᵢ. Factors with dᵢ = 1 are
//! dropped from the presentation.

use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use super::RationalLattice;
use crate::error::{Error, Result};
use crate::matrix::{frac, rat, rat_from_int, smith_normal_form, Int, IntMatrix, Rat, RatMatrix};
use crate::sectors::{Element, FiniteQuadraticModule};

/// Identifies vectors of L° with elements of the discriminant group.
#[derive(Clone, Debug)]
pub struct CosetMap {
    lattice: RationalLattice,
    gram: IntMatrix,
    gram_inv: RatMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
    kept: Vec<usize>,
    orders: Vec<i64>,
}

impl CosetMap {
    pub fn lattice(&self) -> &RationalLattice {
        &self.lattice
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    /// Discriminant-group coordinates of an ambient vector of L°.
    pub fn coset_of(&self, v: &[Rat]) -> Result<Element> {
        let y = self.lattice.coordinates(v).ok_or_else(|| {
            Error::InclusionViolation("vector is outside the rational span of the lattice".into())
        })?;
        let z = self.gram.to_rational().left_mul_vec(&y);
        if !z.iter().all(|x| x.is_integer()) {
            return Err(Error::InclusionViolation("vector is not in the dual lattice".into()));
        }
        let z: Vec<Int> = z.iter().map(|x| x.to_integer()).collect();
        let w = self.right.left_mul_vec(&z);
        Ok(self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, &d)| {
                let r = w[i].clone() % Int::from(d);
                let r = if r < Int::zero() { r + Int::from(d) } else { r };
                r.to_i64().expect("reduced below the order")
            })
            .collect())
    }

    /// Basis coordinates (in L) of a representative of the coset `a`.
    pub fn representative_coordinates(&self, a: &[i64]) -> Vec<Rat> {
        let n = self.lattice.rank();
        let mut w = vec![Int::zero(); n];
        for (&i, &x) in self.kept.iter().zip(a) {
            w[i] = Int::from(x);
        }
        let z = self.right_inv.left_mul_vec(&w);
        let z: Vec<Rat> = z.iter().map(rat_from_int).collect();
        self.gram_inv.left_mul_vec(&z)
    }

    /// Ambient vector representing the coset `a`.
    pub fn representative(&self, a: &[i64]) -> Vec<Rat> {
        self.lattice.vector(&self.representative_coordinates(a))
    }

    /// The lattice L + Σ Z·rep(g) for the given group elements.
    pub fn intermediate_lattice(&self, generators: &[Element]) -> Result<RationalLattice> {
        let mut rows = self.lattice.basis().row_vecs();
        rows.extend(generators.iter().map(|g| self.representative(g)));
        RationalLattice::from_generators(self.lattice.form().clone(), &rows)
    }
}

/// The discriminant form of an even nondegenerate lattice, realized by it.
pub fn discriminant_form(lattice: &RationalLattice) -> Result<(FiniteQuadraticModule, Arc<CosetMap>)> {
    let gram_inv = lattice.gram_inverse()?;
    if !lattice.is_even() {
        return Err(Error::NotEvenLattice);
    }
    let gram = lattice.gram().to_integer().expect("even lattices are integral");
    let smith = smith_normal_form(&gram);
    let right_inv = smith
        .right
        .to_rational()
        .inverse()
        .and_then(|m| m.to_integer())
        .expect("Smith transforms are unimodular");
    let n = lattice.rank();
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for i in 0..n {
        let d = smith.diag[(i, i)].clone();
        if !d.is_one() {
            kept.push(i);
            orders.push(d.to_i64().ok_or_else(|| {
                Error::InvalidArgument(format!("discriminant group factor {d} is too large"))
            })?);
        }
    }
    // Gram of the generator representatives: W·G⁻¹·Wᵀ with W = V⁻¹.
    let w = right_inv.to_rational();
    let h = w.mul(&gram_inv).mul(&w.transpose());
    let q_gen: Vec<Rat> = kept.iter().map(|&i| frac(&(&h[(i, i)] * rat(1, 2)))).collect();
    let r = kept.len();
    let b_gen = RatMatrix::from_fn(r, r, |a, b| frac(&h[(kept[a], kept[b])]));
    let map = Arc::new(CosetMap {
        lattice: lattice.clone(),
        gram,
        gram_inv,
        right: smith.right,
        right_inv,
        kept,
        orders: orders.clone(),
    });
    let module = FiniteQuadraticModule::build(orders, q_gen, b_gen, rat(n as i64, 1))?
        .with_realization(map.clone());
    Ok((module, map))
}
