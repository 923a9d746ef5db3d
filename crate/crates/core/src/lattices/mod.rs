//! Rational lattices inside an ambient rational quadratic space.
//!
//! A [`RationalLattice`] is a set of basis rows in Qᵐ together with the
//! ambient symmetric form, so a lattice and its dual live in the same space
//! and can be compared by mutual inclusion.

mod discriminant;
mod enumerate;

pub use discriminant::{discriminant_form, CosetMap};
pub use enumerate::ShortVectorReport;

pub use crate::matrix::{smith_normal_form, SmithForm};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{common_denominator, hermite_normal_form, rat_from_int, Int, Ldl, Rat, RatMatrix, SpanSolver};

#[derive(Clone, Debug)]
pub struct RationalLattice {
    form: RatMatrix,
    basis: RatMatrix,
    gram: RatMatrix,
    solver: SpanSolver,
}

impl RationalLattice {
    /// Lattice spanned by the rows of `basis` (which must be linearly
    /// independent) in the space with symmetric form `form`.
    pub fn new(form: RatMatrix, basis: RatMatrix) -> Result<RationalLattice> {
        if !form.is_square() {
            return Err(Error::DimensionMismatch("ambient form is not square".into()));
        }
        if !form.is_symmetric() {
            return Err(Error::InvalidArgument("ambient form is not symmetric".into()));
        }
        if basis.cols() != form.rows() {
            return Err(Error::DimensionMismatch(format!(
                "basis rows have length {}, ambient dimension is {}",
                basis.cols(),
                form.rows()
            )));
        }
        let solver = SpanSolver::new(&basis)
            .ok_or_else(|| Error::InvalidArgument("basis rows are linearly dependent".into()))?;
        let gram = basis.mul(&form).mul(&basis.transpose());
        Ok(RationalLattice {
            form,
            basis,
            gram,
            solver,
        })
    }

    /// The lattice Zⁿ with Gram matrix `gram`.
    pub fn from_gram(gram: RatMatrix) -> Result<RationalLattice> {
        let n = gram.rows();
        RationalLattice::new(gram, RatMatrix::identity(n))
    }

    /// The standard lattice Zⁿ.
    pub fn standard(n: usize) -> RationalLattice {
        RationalLattice::from_gram(RatMatrix::identity(n)).expect("identity is a valid Gram")
    }

    /// Z-span of arbitrary (possibly dependent) rational rows, with a
    /// Hermite-reduced basis.
    pub fn from_generators(form: RatMatrix, rows: &[Vec<Rat>]) -> Result<RationalLattice> {
        let m = form.rows();
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "generator has length {}, ambient dimension is {m}",
                bad.len()
            )));
        }
        let den = common_denominator(rows.iter().flatten());
        let scaled: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * rat_from_int(&den)).to_integer()).collect())
            .collect();
        let hnf = hermite_normal_form(m, &scaled);
        let basis: Vec<Vec<Rat>> = hnf
            .iter()
            .map(|r| r.iter().map(|x| Rat::new(x.clone(), den.clone())).collect())
            .collect();
        RationalLattice::new(form, RatMatrix::from_rows(m, &basis))
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn form(&self) -> &RatMatrix {
        &self.form
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn det_gram(&self) -> Rat {
        self.gram.determinant()
    }

    /// (u, v) under the ambient form.
    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let fu = self.form.left_mul_vec(u);
        fu.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// The ambient vector with the given basis coordinates.
    pub fn vector(&self, coords: &[Rat]) -> Vec<Rat> {
        self.basis.left_mul_vec(coords)
    }

    /// Basis coordinates of an ambient vector, if it lies in the rational span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        self.solver.solve(v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// True iff `other` is a sublattice of `self` (same ambient form).
    pub fn contains_lattice(&self, other: &RationalLattice) -> bool {
        self.form == other.form && (0..other.rank()).all(|r| self.contains(other.basis.row(r)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det_gram().is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| (self.gram[(i, i)].to_integer() % 2u32).is_zero())
    }

    pub fn is_positive_definite(&self) -> bool {
        Ldl::factor(&self.gram).is_some_and(|f| f.is_positive_definite())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det_gram().abs().is_one()
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_integral() && self.is_unimodular()
    }

    /// L° = {α ∈ L_Q : (α, L) ⊆ Z}, with the dual basis G⁻¹·B.
    pub fn dual(&self) -> Result<RationalLattice> {
        let inv = self.gram.inverse().ok_or(Error::DegenerateLattice)?;
        RationalLattice::new(self.form.clone(), inv.mul(&self.basis))
    }

    pub(crate) fn gram_inverse(&self) -> Result<RatMatrix> {
        self.gram.inverse().ok_or(Error::DegenerateLattice)
    }
}

/// Equality is mutual inclusion inside the same ambient space.
impl PartialEq for RationalLattice {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.contains_lattice(other) && other.contains_lattice(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assets;
    use crate::matrix::rat;

    fn gram(rows: &[&[i64]]) -> RationalLattice {
        let n = rows.len();
        let v: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        RationalLattice::from_gram(RatMatrix::from_rows(n, &v)).unwrap()
    }

    #[test]
    fn gram_and_determinants() {
        let z = RationalLattice::standard(3);
        assert_eq!(*z.gram(), RatMatrix::identity(3));
        assert_eq!(z.det_gram(), rat(1, 1));
        assert_eq!(assets::a1().det_gram(), rat(2, 1));
        assert_eq!(assets::e8().det_gram(), rat(1, 1));
        assert_eq!(assets::d4().det_gram(), rat(4, 1));
        assert_eq!(assets::leech().det_gram(), rat(1, 1));
    }

    #[test]
    fn predicates() {
        let z = RationalLattice::standard(4);
        assert!(z.is_integral() && z.is_positive_definite() && z.is_unimodular() && z.is_self_dual());
        assert!(!z.is_even());
        let a1 = assets::a1();
        assert!(a1.is_even() && !a1.is_unimodular() && !a1.is_self_dual());
        let e8 = assets::e8();
        assert!(e8.is_even() && e8.is_unimodular() && e8.is_self_dual() && e8.is_positive_definite());
        let hyperbolic = gram(&[&[0, 1], &[1, 0]]);
        assert!(hyperbolic.is_even() && hyperbolic.is_unimodular());
        assert!(!hyperbolic.is_positive_definite());
        let degenerate = gram(&[&[2, 2], &[2, 2]]);
        assert!(!degenerate.is_nondegenerate());
        assert!(!degenerate.is_positive_definite());
    }

    #[test]
    fn duals() {
        let z = RationalLattice::standard(3);
        assert_eq!(z.dual().unwrap(), z);
        let a1d = assets::a1().dual().unwrap();
        assert_eq!(a1d.gram()[(0, 0)], rat(1, 2));
        let e8 = assets::e8();
        assert_eq!(e8.dual().unwrap(), e8);
        assert_eq!(e8.dual().unwrap().det_gram() * e8.det_gram(), rat(1, 1));
        let err = gram(&[&[2, 2], &[2, 2]]).dual().unwrap_err();
        assert_eq!(err, Error::DegenerateLattice);
        let a1 = assets::a1();
        assert_ne!(a1.dual().unwrap(), a1);
        assert!(a1.dual().unwrap().contains_lattice(&a1));
        assert_eq!(a1.dual().unwrap().dual().unwrap(), a1);
    }

    #[test]
    fn generators_reduce_to_basis() {
        let form = RatMatrix::identity(2);
        let rows = vec![
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ];
        let l = RationalLattice::from_generators(form.clone(), &rows).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.det_gram(), rat(1, 4));
        assert!(l.contains(&[rat(1, 2), rat(-1, 2)]));
        assert!(!l.contains(&[rat(1, 2), rat(0, 1)]));
    }
}
