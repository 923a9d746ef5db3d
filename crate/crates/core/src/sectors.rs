//! Abelian sector data for completely-extendable conformal intertwining
//! algebras.
//!
//! The complete extension is a [`FiniteQuadraticModule`] (D, q, c): a finite
//! abelian group ∏ Z/dᵢ with a quadratic form valued in Q/Z. An algebra is
//! its [`SectorSet`], a subgroup A ⊆ D containing the unit sector 0. An
//! intertwining operator among sectors a, b, a + b has exponents in
//! q(a + b) − q(a) − q(b) + Z = B(a, b) + Z, so the operators between A and a
//! sector b are all Laurent series exactly when B(A, b) ≡ 0 mod Z. That
//! criterion defines the dual A°.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattices::CosetMap;
use crate::matrix::{common_denominator, frac, hermite_normal_form, rat, smith_normal_form, IntMatrix, Rat, RatMatrix};
use crate::qseries::{eta, QSeries};

/// Above this many sectors a character is read from one enumeration of
/// L + A instead of one per coset.
const COSET_SUM_LIMIT: u128 = 64;

/// An element of ∏ Z/dᵢ, coordinates reduced into `0..dᵢ`.
pub type Element = Vec<i64>;

/// Finite abelian group with a Q/Z-valued quadratic form and central charge.
#[derive(Clone, Debug)]
pub struct FiniteQuadraticModule {
    orders: Vec<i64>,
    q_gen: Vec<Rat>,
    b_gen: RatMatrix,
    central_charge: Rat,
    realization: Option<Arc<CosetMap>>,
}

/// Structural equality; the realization is not compared.
impl PartialEq for FiniteQuadraticModule {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
            && self.q_gen == other.q_gen
            && self.b_gen == other.b_gen
            && self.central_charge == other.central_charge
    }
}

impl Eq for FiniteQuadraticModule {}

impl FiniteQuadraticModule {
    /// Validates and builds a module. Values of `q_gen` and `b_gen` are taken mod Z.
    pub fn build(
        orders: Vec<i64>,
        q_gen: Vec<Rat>,
        b_gen: RatMatrix,
        central_charge: Rat,
    ) -> Result<FiniteQuadraticModule> {
        let r = orders.len();
        let ill = |m: String| Err(Error::IllFormedQuadraticForm(m));
        if let Some(d) = orders.iter().find(|&&d| d < 1) {
            return ill(format!("order {d} is not a positive integer"));
        }
        if q_gen.len() != r || b_gen.rows() != r || b_gen.cols() != r {
            return ill(format!("expected {r} quadratic values and an {r}x{r} bilinear matrix"));
        }
        let q_gen: Vec<Rat> = q_gen.iter().map(frac).collect();
        let b_gen = b_gen.map(frac);
        if !b_gen.is_symmetric() {
            return ill("bilinear matrix is not symmetric".into());
        }
        for i in 0..r {
            let d = rat(orders[i], 1);
            if b_gen[(i, i)] != frac(&(&q_gen[i] * rat(2, 1))) {
                return ill(format!("B(g{i},g{i}) is not 2·q(g{i}) mod Z"));
            }
            if !(&q_gen[i] * &d * rat(2, 1)).is_integer() {
                return ill(format!("2·{}·q(g{i}) = 2·{}·{} is not an integer", orders[i], orders[i], q_gen[i]));
            }
            if !(&q_gen[i] * &d * &d).is_integer() {
                return ill(format!("{}²·q(g{i}) is not an integer", orders[i]));
            }
            for j in 0..r {
                if !(&b_gen[(i, j)] * &d).is_integer() {
                    return ill(format!("{}·B(g{i},g{j}) is not an integer", orders[i]));
                }
            }
        }
        Ok(FiniteQuadraticModule {
            orders,
            q_gen,
            b_gen,
            central_charge,
            realization: None,
        })
    }

    pub fn with_realization(mut self, map: Arc<CosetMap>) -> FiniteQuadraticModule {
        self.realization = Some(map);
        self
    }

    pub fn realization(&self) -> Option<&Arc<CosetMap>> {
        self.realization.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn q_gen(&self) -> &[Rat] {
        &self.q_gen
    }

    pub fn b_gen(&self) -> &RatMatrix {
        &self.b_gen
    }

    pub fn central_charge(&self) -> &Rat {
        &self.central_charge
    }

    /// |D|, saturating.
    pub fn size(&self) -> u128 {
        self.orders
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, a: &[i64]) -> Element {
        a.iter().zip(&self.orders).map(|(x, d)| x.rem_euclid(*d)).collect()
    }

    pub fn check(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::ElementOutOfRange(format_element(a)));
        }
        Ok(())
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Element {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[i64]) -> Element {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    /// q(x) = Σ xᵢ² q(gᵢ) + Σ_{i<j} xᵢ xⱼ B(gᵢ, gⱼ) mod Z.
    pub fn quad(&self, a: &[i64]) -> Rat {
        let r = self.rank();
        let mut acc = Rat::zero();
        for i in 0..r {
            acc += &self.q_gen[i] * rat(a[i] * a[i], 1);
            for j in i + 1..r {
                acc += &self.b_gen[(i, j)] * rat(a[i] * a[j], 1);
            }
        }
        frac(&acc)
    }

    /// B(a, b) = Σ aᵢ bⱼ B(gᵢ, gⱼ) mod Z, equal to q(a + b) − q(a) − q(b).
    pub fn bilinear(&self, a: &[i64], b: &[i64]) -> Rat {
        let r = self.rank();
        let mut acc = Rat::zero();
        for i in 0..r {
            for j in 0..r {
                acc += &self.b_gen[(i, j)] * rat(a[i] * b[j], 1);
            }
        }
        frac(&acc)
    }

    /// Every element of D, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        MixedRadix::new(self.orders.clone())
    }

    /// True iff B has trivial radical on D.
    pub fn is_nondegenerate(self: &Arc<Self>) -> bool {
        SectorSet::trivial(self).dual().order() == 1
    }
}

struct MixedRadix {
    radix: Vec<i64>,
    current: Option<Vec<i64>>,
}

impl MixedRadix {
    fn new(radix: Vec<i64>) -> Self {
        let current = Some(vec![0; radix.len()]);
        MixedRadix { radix, current }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        let mut carried = true;
        while carried && i > 0 {
            i -= 1;
            next[i] += 1;
            if next[i] == self.radix[i] {
                next[i] = 0;
            } else {
                carried = false;
            }
        }
        if !carried {
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn format_element(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A subgroup A ⊆ D, held canonically as the Hermite form of its preimage
/// lattice in Zʳ (which contains ⊕ dᵢZ).
#[derive(Clone, Debug)]
pub struct SectorSet {
    module: Arc<FiniteQuadraticModule>,
    hnf: Vec<Vec<i64>>,
}

impl PartialEq for SectorSet {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf && self.module == other.module
    }
}

impl Eq for SectorSet {}

impl SectorSet {
    /// Smallest subgroup containing `generators`.
    pub fn span(module: &Arc<FiniteQuadraticModule>, generators: &[Element]) -> Result<SectorSet> {
        for g in generators {
            module.check(g)?;
        }
        let r = module.rank();
        let mut rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        for (i, &d) in module.orders.iter().enumerate() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = BigInt::from(d);
            rows.push(row);
        }
        let hnf = hermite_normal_form(r, &rows)
            .into_iter()
            .map(|row| row.iter().map(|x| x.to_i64().expect("bounded by the orders")).collect())
            .collect();
        Ok(SectorSet {
            module: module.clone(),
            hnf,
        })
    }

    /// {0}.
    pub fn trivial(module: &Arc<FiniteQuadraticModule>) -> SectorSet {
        SectorSet::span(module, &[]).expect("no generators to check")
    }

    /// All of D: the complete extension.
    pub fn full(module: &Arc<FiniteQuadraticModule>) -> SectorSet {
        let r = module.rank();
        let gens: Vec<Element> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                module.reduce(&e)
            })
            .collect();
        SectorSet::span(module, &gens).expect("unit vectors have the right length")
    }

    pub fn module(&self) -> &Arc<FiniteQuadraticModule> {
        &self.module
    }

    /// |A|.
    pub fn order(&self) -> u128 {
        let index: u128 = (0..self.hnf.len()).map(|i| self.hnf[i][i] as u128).product();
        self.module.size() / index
    }

    /// Nonzero canonical generators.
    pub fn generators(&self) -> Vec<Element> {
        self.hnf
            .iter()
            .map(|row| self.module.reduce(row))
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        if a.len() != self.module.rank() {
            return false;
        }
        let mut x: Vec<i64> = a.to_vec();
        for (i, row) in self.hnf.iter().enumerate() {
            let p = row[i];
            if x[i] % p != 0 {
                return false;
            }
            let t = x[i] / p;
            for (xj, rj) in x.iter_mut().zip(row) {
                *xj -= t * rj;
            }
        }
        x.iter().all(|&v| v == 0)
    }

    pub fn is_subset_of(&self, other: &SectorSet) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// Every element of A, each once.
    pub fn elements(&self) -> Vec<Element> {
        let counts: Vec<i64> = self
            .hnf
            .iter()
            .enumerate()
            .map(|(i, row)| self.module.orders[i] / row[i])
            .collect();
        MixedRadix::new(counts)
            .map(|c| {
                let mut v = vec![0i64; self.module.rank()];
                for (ci, row) in c.iter().zip(&self.hnf) {
                    for (vj, rj) in v.iter_mut().zip(row) {
                        *vj += ci * rj;
                    }
                }
                self.module.reduce(&v)
            })
            .collect()
    }

    /// A° = {b ∈ D : B(a, b) ≡ 0 mod Z for all a ∈ A}.
    pub fn dual(&self) -> SectorSet {
        let module = &self.module;
        let r = module.rank();
        let gens = self.generators();
        if gens.is_empty() {
            return SectorSet::full(module);
        }
        // b ∈ A° ⟺ M·b ≡ 0 mod N, with M[j][i] = N·B(a_j, g_i).
        let n = common_denominator((0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|ij| &module.b_gen[ij]));
        let nr = Rat::from_integer(n.clone());
        let m = IntMatrix::from_fn(gens.len(), r, |j, i| {
            let mut e = vec![0; r];
            e[i] = 1;
            let row: Rat = (0..r).map(|l| &module.b_gen[(l, i)] * rat(gens[j][l], 1)).sum();
            (row * &nr).to_integer()
        });
        let smith = smith_normal_form(&m);
        let k = gens.len().min(r);
        let kernel: Vec<Element> = (0..r)
            .map(|i| {
                let factor = if i < k {
                    &n / n.gcd(&smith.diag[(i, i)])
                } else {
                    BigInt::from(1)
                };
                let col: Vec<i64> = (0..r)
                    .map(|row| {
                        let v = (&factor * &smith.right[(row, i)]).mod_floor(&BigInt::from(module.orders[row]));
                        v.to_i64().expect("reduced")
                    })
                    .collect();
                col
            })
            .collect();
        SectorSet::span(module, &kernel).expect("kernel vectors have the module rank")
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    /// A = (A°)°.
    pub fn is_nondegenerate(&self) -> bool {
        *self == self.dual().dual()
    }

    /// B(a, b) ≡ 0 for all a, b ∈ A. Checked on generators by bilinearity.
    pub fn is_meromorphic(&self) -> bool {
        let g = self.generators();
        g.iter()
            .all(|a| g.iter().all(|b| self.module.bilinear(a, b).is_zero()))
    }

    /// q(a) ≡ 0 for all a ∈ A. Since q(a + b) = q(a) + q(b) + B(a, b), it
    /// suffices that q vanishes on generators and B vanishes between them.
    pub fn is_z_graded(&self) -> bool {
        self.is_meromorphic() && self.generators().iter().all(|a| self.module.quad(a).is_zero())
    }

    /// The fixed ambient extension, all of D.
    pub fn complete_extension(&self) -> SectorSet {
        SectorSet::full(&self.module)
    }

    /// χ = (Σ_{a∈A} Θ_{a+L}) · η^{−rank L}, for a lattice-realized module.
    pub fn character(&self, order: &Rat) -> Result<QSeries> {
        let map = self.module.realization().ok_or(Error::NoLatticeRealization)?;
        let lattice = map.lattice();
        let rank = lattice.rank();
        if rank == 0 {
            return Ok(QSeries::one(order.clone()));
        }
        if !lattice.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let theta_order = order + rat(rank as i64, 24);
        let theta = if self.order() <= COSET_SUM_LIMIT {
            let mut theta = QSeries::zero(theta_order.clone());
            for a in self.elements() {
                let shift = map.representative_coordinates(&a);
                theta = theta.add(&lattice.coset_theta(&shift, &theta_order)?);
            }
            theta
        } else {
            // The union of the cosets is the lattice L + A.
            map.intermediate_lattice(&self.generators())?.theta_series(&theta_order)?
        };
        let bosons = inverse_eta_power(rank, order)?;
        Ok(theta.mul(&bosons).truncate(order))
    }
}

impl fmt::Display for SectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| format_element(g)).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// η^{−m}, known through exponent `order`.
fn inverse_eta_power(m: usize, order: &Rat) -> Result<QSeries> {
    let eta_order = order + rat(m as i64 + 1, 24);
    Ok(eta(&eta_order).pow(-(m as i64))?.truncate(order))
}

/// Character η^{−m} of m free bosons; the coefficient of q^{n − m/24} is the
/// number of m-colored partitions of n.
pub fn heisenberg_character(rank: usize, order: &Rat) -> Result<QSeries> {
    if rank == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    inverse_eta_power(rank, order)
}

/// Every subgroup of D. Intended for small modules; fails above `cap` elements.
pub fn all_subgroups(module: &Arc<FiniteQuadraticModule>, cap: u128) -> Result<Vec<SectorSet>> {
    if module.size() > cap {
        return Err(Error::InvalidArgument(format!(
            "module of order {} exceeds the subgroup search cap {cap}",
            module.size()
        )));
    }
    let elements: Vec<Element> = module.elements().collect();
    let start = SectorSet::trivial(module);
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    seen.insert(start.hnf.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(s) = queue.pop_front() {
        for x in &elements {
            if s.contains(x) {
                continue;
            }
            let mut gens = s.generators();
            gens.push(x.clone());
            let t = SectorSet::span(module, &gens)?;
            if seen.insert(t.hnf.clone()) {
                queue.push_back(t);
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.hnf.cmp(&b.hnf)));
    Ok(out)
}

/// A sector set with fusion channels declared zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorAlgebra {
    sectors: SectorSet,
    mask: BTreeSet<(Element, Element)>,
}

impl SectorAlgebra {
    pub fn new(sectors: SectorSet, mask: impl IntoIterator<Item = (Element, Element)>) -> Result<SectorAlgebra> {
        let module = sectors.module().clone();
        let mut set = BTreeSet::new();
        for (a, b) in mask {
            module.check(&a)?;
            module.check(&b)?;
            let (a, b) = (module.reduce(&a), module.reduce(&b));
            if !sectors.contains(&a) || !sectors.contains(&b) {
                return Err(Error::InvalidMask(format!(
                    "pair ({}, {}) is not in the sector set",
                    format_element(&a),
                    format_element(&b)
                )));
            }
            set.insert((a, b));
        }
        if let Some((a, b)) = set.iter().find(|(a, b)| !set.contains(&(b.clone(), a.clone()))) {
            return Err(Error::InvalidMask(format!(
                "pair ({}, {}) lacks its mirror",
                format_element(a),
                format_element(b)
            )));
        }
        Ok(SectorAlgebra { sectors, mask: set })
    }

    pub fn unmasked(sectors: SectorSet) -> SectorAlgebra {
        SectorAlgebra {
            sectors,
            mask: BTreeSet::new(),
        }
    }

    pub fn sectors(&self) -> &SectorSet {
        &self.sectors
    }

    pub fn mask(&self) -> &BTreeSet<(Element, Element)> {
        &self.mask
    }

    /// A dual always carries the full intertwining spaces, so a masked
    /// algebra is never a dual; otherwise degeneracy is A ≠ A°°.
    pub fn is_degenerate(&self) -> bool {
        !self.mask.is_empty() || !self.sectors.is_nondegenerate()
    }
}
