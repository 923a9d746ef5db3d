//! Truncated formal series in q with exact rational exponents and
//! arbitrary-precision integer coefficients.
//!
//! A series carries its truncation order explicitly: coefficients at
//! exponents above the order are unknown, never assumed zero. Reading one is
//! an error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{rat, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    terms: BTreeMap<Rat, BigInt>,
    order: Rat,
}

impl QSeries {
    /// The zero series known through `order`.
    pub fn zero(order: Rat) -> QSeries {
        QSeries {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: Rat) -> QSeries {
        QSeries::monomial(BigInt::one(), Rat::zero(), order)
    }

    pub fn monomial(coefficient: BigInt, exponent: Rat, order: Rat) -> QSeries {
        QSeries::from_terms([(exponent, coefficient)], order)
    }

    /// Collects terms, summing repeated exponents and discarding zeros and
    /// anything beyond `order`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, BigInt)>, order: Rat) -> QSeries {
        let mut map: BTreeMap<Rat, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e > order {
                continue;
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        QSeries { terms: map, order }
    }

    /// Coefficients of q⁰, q¹, … in order, known through integer `order`.
    pub fn from_integer_coefficients(coefficients: impl IntoIterator<Item = BigInt>, order: i64) -> QSeries {
        QSeries::from_terms(
            coefficients
                .into_iter()
                .enumerate()
                .map(|(i, c)| (rat(i as i64, 1), c)),
            rat(order, 1),
        )
    }

    pub fn order(&self) -> &Rat {
        &self.order
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Rat, &BigInt)> {
        self.terms.iter().next()
    }

    /// Lowest exponent with a possibly nonzero coefficient: the leading
    /// exponent, or the order itself when no term is known.
    fn effective_valuation(&self) -> Rat {
        self.leading().map_or_else(|| self.order.clone(), |(e, _)| e.clone())
    }

    pub fn coefficient(&self, exponent: &Rat) -> Result<BigInt> {
        if *exponent > self.order {
            return Err(Error::ExponentBeyondTruncation {
                exponent: exponent.to_string(),
                order: self.order.to_string(),
            });
        }
        Ok(self.terms.get(exponent).cloned().unwrap_or_default())
    }

    pub fn coefficient_at_int(&self, exponent: i64) -> Result<BigInt> {
        self.coefficient(&rat(exponent, 1))
    }

    /// True iff both series are known through `order` and agree on every
    /// exponent up to it.
    pub fn equal_up_to(&self, other: &QSeries, order: &Rat) -> bool {
        if *order > self.order || *order > other.order {
            return false;
        }
        let a = self.terms.range(..=order.clone());
        let b = other.terms.range(..=order.clone());
        a.eq(b)
    }

    /// Drops everything beyond `order` (which must not exceed the current order).
    pub fn truncate(&self, order: &Rat) -> QSeries {
        let order = order.min(&self.order).clone();
        QSeries {
            terms: self
                .terms
                .range(..=order.clone())
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            order,
        }
    }

    /// Multiplies by q^shift.
    pub fn shift(&self, shift: &Rat) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
            order: &self.order + shift,
        }
    }

    pub fn scale(&self, k: &BigInt) -> QSeries {
        QSeries::from_terms(
            self.terms.iter().map(|(e, c)| (e.clone(), c * k)),
            self.order.clone(),
        )
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order.clone().min(other.order.clone());
        QSeries::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            order,
        )
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            order: self.order.clone(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Cauchy product on the rational exponent grid.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = (&self.order + other.effective_valuation())
            .min(&other.order + self.effective_valuation());
        let mut out: BTreeMap<Rat, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if e > order {
                    // Exponents of `other` are increasing.
                    break;
                }
                *out.entry(e).or_default() += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        QSeries { terms: out, order }
    }

    /// Integer power. `f⁰` is 1 known to the relative precision of `f`;
    /// negative powers go through [`QSeries::invert`].
    pub fn pow(&self, k: i64) -> Result<QSeries> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        if k == 0 {
            let precision = &self.order - self.effective_valuation();
            return Ok(QSeries::one(precision));
        }
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("k > 0"))
    }

    /// Multiplicative inverse. The leading coefficient must be ±1.
    pub fn invert(&self) -> Result<QSeries> {
        let (lead_exp, lead_coef) = self
            .leading()
            .ok_or_else(|| Error::NonUnitLeadingCoefficient("0".into()))?;
        if !lead_coef.abs().is_one() {
            return Err(Error::NonUnitLeadingCoefficient(lead_coef.to_string()));
        }
        let unit = lead_coef.clone();
        let precision = &self.order - lead_exp;
        // f = unit · q^lead · (1 + h), with h supported on (0, precision].
        let h: Vec<(Rat, BigInt)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, c)| (e - lead_exp, c * &unit))
            .collect();

        let mut g: BTreeMap<Rat, BigInt> = BTreeMap::new();
        let mut pending: BTreeSet<Rat> = BTreeSet::new();
        pending.insert(Rat::zero());
        while let Some(e) = pending.pop_first() {
            let coef = if e.is_zero() {
                BigInt::one()
            } else {
                let mut acc = BigInt::zero();
                for (t, ht) in &h {
                    if *t > e {
                        break;
                    }
                    if let Some(gv) = g.get(&(&e - t)) {
                        acc -= ht * gv;
                    }
                }
                acc
            };
            for (t, _) in &h {
                let next = &e + t;
                if next > precision {
                    break;
                }
                pending.insert(next);
            }
            g.insert(e, coef);
        }
        let shift = -lead_exp;
        Ok(QSeries::from_terms(
            g.into_iter().map(|(e, c)| (&e + &shift, c * &unit)),
            &shift + &precision,
        ))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

fn fmt_exponent(e: &Rat) -> String {
    if e.is_integer() && e.is_positive() {
        if e.is_one() {
            "q".to_string()
        } else {
            format!("q^{e}")
        }
    } else {
        format!("q^({e})")
    }
}

impl fmt::Display for QSeries {
    /// `1 + 240q + 2160q^2`, fractional exponents as `q^(1/24)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&fmt_exponent(e))?;
            } else {
                write!(f, "{mag}{}", fmt_exponent(e))?;
            }
        }
        Ok(())
    }
}

/// Dedekind eta, q^{1/24} ∏_{n≥1} (1 − qⁿ), known through `order`.
///
/// Built from Euler's pentagonal expansion
/// ∏(1 − qⁿ) = Σ_{k∈Z} (−1)^k q^{k(3k−1)/2}.
pub fn eta(order: &Rat) -> QSeries {
    let base = rat(1, 24);
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for j in if k == 0 { vec![0] } else { vec![k, -k] } {
            let pent = j * (3 * j - 1) / 2;
            let e = &base + rat(pent, 1);
            if e <= *order {
                any = true;
                let sign = if j.rem_euclid(2) == 0 { 1 } else { -1 };
                terms.push((e, BigInt::from(sign)));
            }
        }
        // Both pentagonal branches grow with |k|.
        if !any {
            break;
        }
        k += 1;
    }
    QSeries::from_terms(terms, order.clone())
}

/// Counts of m-colored partitions of 0..=n_max, i.e. coefficients of
/// ∏_{j≥1} (1 − q^j)^{−m}.
pub fn colored_partition_counts(n_max: usize, colors: usize) -> Vec<BigUint> {
    let mut a = vec![BigUint::zero(); n_max + 1];
    a[0] = BigUint::one();
    for _ in 0..colors {
        for part in 1..=n_max {
            for i in part..=n_max {
                let add = a[i - part].clone();
                a[i] += add;
            }
        }
    }
    a
}

/// Number of partitions of `n` into parts of `colors` kinds.
pub fn colored_partitions(n: usize, colors: usize) -> BigUint {
    colored_partition_counts(n, colors).pop().expect("nonempty")
}
