//! Fincke–Pohst enumeration of short lattice vectors and theta series.
//!
//! The exact LDLᵀ pivots of the Gram matrix drive the search. Interval
//! bounds are evaluated in floating point with a small outward slack, and
//! every candidate leaf is accepted or rejected by an exact integer norm
//! computation, so the reported set is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::RationalLattice;
use crate::error::{Error, Result};
use crate::matrix::{common_denominator, rat_from_int, Int, Ldl, Rat};
use crate::qseries::QSeries;

/// Nonzero lattice vectors of norm at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVectorReport {
    pub bound: Rat,
    /// (basis coordinates, (α, α)), sorted by norm then coordinates.
    pub entries: Vec<(Vec<i64>, Rat)>,
}

impl ShortVectorReport {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

struct Search {
    n: usize,
    // Exact side: norm(x + p/e) = (Yᵀ·Gs·Y) / (scale·e²) with Y = e·x + p.
    gram_scaled: Vec<i128>,
    shift_num: Vec<i128>,
    shift_den: i128,
    big_gram: Vec<Int>,
    big_limit: Int,
    limit: Option<i128>,
    bound_den: i128,
    // Float side.
    pivots: Vec<f64>,
    mu: Vec<f64>,
    shift: Vec<f64>,
    bound: f64,
    slack: f64,
}

fn to_i128(x: &Int) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::InvalidArgument("lattice data too large for enumeration".into()))
}

fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Search {
    fn new(lattice: &RationalLattice, shift: &[Rat], bound: &Rat) -> Result<Search> {
        let n = lattice.rank();
        let gram = lattice.gram();
        let Some(ldl) = Ldl::factor(gram).filter(|f| f.is_positive_definite()) else {
            return Err(Error::NotPositiveDefinite);
        };
        let scale = common_denominator((0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|rc| &gram[rc]));
        let big_gram: Vec<Int> = (0..n * n)
            .map(|k| (&gram[(k / n, k % n)] * rat_from_int(&scale)).to_integer())
            .collect();
        let gram_scaled = big_gram.iter().map(to_i128).collect::<Result<Vec<_>>>()?;
        let den = common_denominator(shift.iter());
        let shift_num = shift
            .iter()
            .map(|s| to_i128(&(s * rat_from_int(&den)).to_integer()))
            .collect::<Result<Vec<_>>>()?;
        let shift_den = to_i128(&den)?;
        // Accept iff N · bound_den ≤ bound_num · scale · e².
        let big_limit = bound.numer() * &scale * &den * &den;
        let limit = big_limit.to_i128();
        let bound_den = to_i128(bound.denom())?;

        let mut mu = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..j {
                mu[j * n + i] = to_f64(&ldl.lower[(j, i)]);
            }
        }
        let bound_f = to_f64(bound);
        Ok(Search {
            n,
            gram_scaled,
            shift_num,
            shift_den,
            big_gram,
            big_limit,
            limit,
            bound_den,
            pivots: ldl.pivots.iter().map(to_f64).collect(),
            mu,
            shift: shift.iter().map(to_f64).collect(),
            bound: bound_f,
            slack: 1e-9 * (1.0 + bound_f.abs()),
        })
    }

    /// Exact scaled norm of x + shift if within the bound.
    fn accept(&self, x: &[i64]) -> Option<Int> {
        match self.exact_small(x) {
            Some(norm) => {
                let ok = match (norm.checked_mul(self.bound_den), self.limit) {
                    (Some(lhs), Some(limit)) => lhs <= limit,
                    _ => Int::from(norm) * Int::from(self.bound_den) <= self.big_limit,
                };
                ok.then(|| Int::from(norm))
            }
            None => {
                let norm = self.exact_big(x);
                (&norm * Int::from(self.bound_den) <= self.big_limit).then_some(norm)
            }
        }
    }

    fn exact_small(&self, x: &[i64]) -> Option<i128> {
        let n = self.n;
        let mut y = [0i128; 64];
        let y = if n <= 64 {
            &mut y[..n]
        } else {
            return None;
        };
        for i in 0..n {
            y[i] = (x[i] as i128)
                .checked_mul(self.shift_den)?
                .checked_add(self.shift_num[i])?;
        }
        let mut total: i128 = 0;
        for i in 0..n {
            let mut row: i128 = 0;
            for j in 0..n {
                row = row.checked_add(self.gram_scaled[i * n + j].checked_mul(y[j])?)?;
            }
            total = total.checked_add(row.checked_mul(y[i])?)?;
        }
        Some(total)
    }

    fn exact_big(&self, x: &[i64]) -> Int {
        let n = self.n;
        let y: Vec<Int> = (0..n)
            .map(|i| Int::from(x[i]) * Int::from(self.shift_den) + Int::from(self.shift_num[i]))
            .collect();
        let mut total = Int::zero();
        for i in 0..n {
            for j in 0..n {
                total += &y[i] * &self.big_gram[i * n + j] * &y[j];
            }
        }
        total
    }

    fn range(&self, level: usize, y: &[f64], partial: f64) -> Option<(i64, i64, f64)> {
        let n = self.n;
        let mut center = -self.shift[level];
        for j in level + 1..n {
            center -= self.mu[j * n + level] * y[j];
        }
        let remaining = self.bound - partial + self.slack;
        if remaining < 0.0 {
            return None;
        }
        let radius = (remaining / self.pivots[level]).sqrt();
        let lo = (center - radius).ceil();
        let hi = (center + radius).floor();
        if lo > hi {
            return None;
        }
        Some((lo as i64, hi as i64, center))
    }

    fn descend(
        &self,
        level: usize,
        x: &mut [i64],
        y: &mut [f64],
        partial: f64,
        visit: &mut dyn FnMut(&[i64], Int),
    ) {
        let Some((lo, hi, center)) = self.range(level, y, partial) else {
            return;
        };
        for v in lo..=hi {
            x[level] = v;
            y[level] = v as f64 + self.shift[level];
            let t = v as f64 - center;
            let next = partial + self.pivots[level] * t * t;
            if level == 0 {
                if let Some(norm) = self.accept(x) {
                    visit(x, norm);
                }
            } else {
                self.descend(level - 1, x, y, next, visit);
            }
        }
    }

    /// Runs the search, splitting the outermost coordinate across threads.
    /// Results come back in a deterministic order.
    fn collect<T: Send>(&self, make: impl Fn(&[i64], Int) -> T + Sync) -> Vec<T> {
        let n = self.n;
        if n == 0 {
            return self.accept(&[]).map(|norm| make(&[], norm)).into_iter().collect();
        }
        let top = n - 1;
        let zeros = vec![0.0; n];
        let Some((lo, hi, _)) = self.range(top, &zeros, 0.0) else {
            return Vec::new();
        };
        let chunks: Vec<Vec<T>> = (lo..=hi)
            .into_par_iter()
            .map(|v| {
                let mut out = Vec::new();
                let mut x = vec![0i64; n];
                let mut y = vec![0.0; n];
                x[top] = v;
                y[top] = v as f64 + self.shift[top];
                let t = y[top];
                let partial = self.pivots[top] * t * t;
                let mut visit = |x: &[i64], norm: Int| out.push(make(x, norm));
                if top == 0 {
                    if let Some(norm) = self.accept(&x) {
                        visit(&x, norm);
                    }
                } else {
                    self.descend(top - 1, &mut x, &mut y, partial, &mut visit);
                }
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }
}

impl RationalLattice {
    /// Counts of vectors α ∈ shift + L (shift in basis coordinates) with
    /// (α, α) ≤ bound, keyed by the exact norm. The zero vector is included.
    pub fn coset_norm_counts(&self, shift: &[Rat], bound: &Rat) -> Result<BTreeMap<Rat, u64>> {
        if shift.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "shift has length {}, lattice rank is {}",
                shift.len(),
                self.rank()
            )));
        }
        if bound < &Rat::zero() {
            return Ok(BTreeMap::new());
        }
        let search = Search::new(self, shift, bound)?;
        let den = norm_denominator(self, shift);
        let mut counts: BTreeMap<Int, u64> = BTreeMap::new();
        for norm in search.collect(|_, norm| norm) {
            *counts.entry(norm).or_default() += 1;
        }
        Ok(counts
            .into_iter()
            .map(|(k, v)| (Rat::new(k, den.clone()), v))
            .collect())
    }

    /// All nonzero vectors with 0 < (α, α) ≤ bound.
    pub fn short_vectors(&self, bound: &Rat) -> Result<ShortVectorReport> {
        if bound < &Rat::zero() {
            return Err(Error::InvalidArgument(format!("negative bound {bound}")));
        }
        let zero_shift = vec![Rat::zero(); self.rank()];
        let search = Search::new(self, &zero_shift, bound)?;
        let den = norm_denominator(self, &zero_shift);
        let mut entries: Vec<(Vec<i64>, Rat)> = search
            .collect(|x, norm| (x.to_vec(), norm))
            .into_iter()
            .filter(|(_, norm)| !norm.is_zero())
            .map(|(x, norm)| (x, Rat::new(norm, den.clone())))
            .collect();
        entries.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(ShortVectorReport {
            bound: bound.clone(),
            entries,
        })
    }

    /// Θ_{shift+L}(q) = Σ q^{(α,α)/2}, known through exponent `order`.
    pub fn coset_theta(&self, shift: &[Rat], order: &Rat) -> Result<QSeries> {
        if !self.is_positive_definite() && self.rank() > 0 {
            return Err(Error::NotPositiveDefinite);
        }
        let two = Rat::from_integer(2.into());
        let counts = self.coset_norm_counts(shift, &(order * &two))?;
        Ok(QSeries::from_terms(
            counts.into_iter().map(|(norm, c)| (norm / &two, BigInt::from(c))),
            order.clone(),
        ))
    }

    /// Θ_L(q) = Σ_{α∈L} q^{(α,α)/2}, known through exponent `order`.
    pub fn theta_series(&self, order: &Rat) -> Result<QSeries> {
        self.coset_theta(&vec![Rat::zero(); self.rank()], order)
    }
}

fn norm_denominator(lattice: &RationalLattice, shift: &[Rat]) -> Int {
    let n = lattice.rank();
    let gram = lattice.gram();
    let scale = common_denominator((0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|rc| &gram[rc]));
    let e = common_denominator(shift.iter());
    scale * &e * &e
}
