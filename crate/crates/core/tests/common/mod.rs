//! Random object generators and brute-force oracles shared by the
//! integration targets. Nothing here calls the algorithms under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use codelat_core::{rat, BinaryCode, BitVector, Rat, RatMatrix, RationalLattice};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_code<R: Rng>(rng: &mut R, n: usize, k: usize, even: bool) -> BinaryCode {
    let rows: Vec<BitVector> = (0..k)
        .map(|_| {
            let mut bits: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            if even && bits.iter().filter(|&&b| b).count() % 2 == 1 {
                bits[n - 1] = !bits[n - 1];
            }
            BitVector::from_bits(&bits)
        })
        .collect();
    BinaryCode::canonicalize(n, &rows).unwrap()
}

/// Weight counts by summing every subset of the generators.
pub fn brute_weights(code: &BinaryCode) -> Vec<u64> {
    let n = code.length();
    let gens: Vec<Vec<bool>> = code.generators().iter().map(|g| g.iter().collect()).collect();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u64..(1u64 << gens.len()) {
        let mut word = vec![false; n];
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (w, b) in word.iter_mut().zip(g) {
                    *w ^= *b;
                }
            }
        }
        counts[word.iter().filter(|&&b| b).count()] += 1;
    }
    counts
}

/// Weight counts of C° by testing all 2ⁿ words against the generators.
pub fn brute_dual_weights(code: &BinaryCode) -> Vec<u64> {
    let n = code.length();
    let gens: Vec<u64> = code
        .generators()
        .iter()
        .map(|g| g.iter().enumerate().fold(0u64, |acc, (i, b)| acc | ((b as u64) << i)))
        .collect();
    let mut counts = vec![0u64; n + 1];
    for word in 0u64..(1u64 << n) {
        if gens.iter().all(|g| (g & word).count_ones() % 2 == 0) {
            counts[word.count_ones() as usize] += 1;
        }
    }
    counts
}

pub fn gram(rows: &[Vec<i64>]) -> RationalLattice {
    let n = rows.len();
    let v: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
    RationalLattice::from_gram(RatMatrix::from_rows(n, &v)).unwrap()
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &a[c][k] * &f;
                a[r][k] -= v;
            }
        }
    }
    det.to_integer().try_into().unwrap()
}

/// A random even Gram matrix (possibly indefinite) with 0 < |det| ≤ `max_det`.
pub fn random_even_gram<R: Rng>(rng: &mut R, max_rank: usize, max_det: i128) -> (Vec<Vec<i64>>, i128) {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = 2 * rng.gen_range(1..=4) * if rng.gen_bool(0.85) { 1 } else { -1 };
            for j in 0..i {
                let x = rng.gen_range(-3..=3);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let d = det_i128(&g);
        if d != 0 && d.abs() <= max_det {
            return (g, d);
        }
    }
}

/// Subgroups of ∏ Z/dᵢ as sorted element lists, found by closing
/// {0} ∪ {x} under addition from every known subgroup.
pub fn brute_subgroups(orders: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let elements = all_elements(orders);
    let zero = vec![0i64; orders.len()];
    let mut found: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut frontier = vec![vec![zero]];
    while let Some(s) = frontier.pop() {
        if !found.insert(s.clone()) {
            continue;
        }
        for x in &elements {
            if s.contains(x) {
                continue;
            }
            let mut set: BTreeSet<Vec<i64>> = s.iter().cloned().collect();
            set.insert(x.clone());
            loop {
                let snapshot: Vec<Vec<i64>> = set.iter().cloned().collect();
                let before = set.len();
                for a in &snapshot {
                    for b in &snapshot {
                        set.insert(add(orders, a, b));
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            let t: Vec<Vec<i64>> = set.into_iter().collect();
            if !found.contains(&t) {
                frontier.push(t);
            }
        }
    }
    found.into_iter().collect()
}

pub fn all_elements(orders: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &d in orders {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn add(orders: &[i64], a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).zip(orders).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect()
}

fn frac(x: Rat) -> Rat {
    &x - Rat::from_integer(x.floor().to_integer())
}

/// q(x) = Σ xᵢ² qᵢ + Σ_{i<j} xᵢ xⱼ Bᵢⱼ mod 1, straight from the presentation.
pub fn quad_oracle(q: &[Rat], b: &RatMatrix, x: &[i64]) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..x.len() {
        acc += &q[i] * rat(x[i] * x[i], 1);
        for j in i + 1..x.len() {
            acc += &b[(i, j)] * rat(x[i] * x[j], 1);
        }
    }
    frac(acc)
}

/// B(x, y) = q(x + y) − q(x) − q(y) mod 1.
pub fn bilinear_oracle(orders: &[i64], q: &[Rat], b: &RatMatrix, x: &[i64], y: &[i64]) -> Rat {
    let s = add(orders, x, y);
    frac(quad_oracle(q, b, &s) - quad_oracle(q, b, x) - quad_oracle(q, b, y))
}

/// A random presentation satisfying the well-definedness conditions, with
/// |D| ≤ `max_size`. The form may be degenerate.
pub fn random_presentation<R: Rng>(rng: &mut R, max_size: i64) -> (Vec<i64>, Vec<Rat>, RatMatrix) {
    let choices = [2i64, 2, 2, 3, 4, 4, 5, 6, 8];
    let mut orders = Vec::new();
    let mut size = 1;
    let r = rng.gen_range(0..=4);
    for _ in 0..r {
        let d = choices[rng.gen_range(0..choices.len())];
        if size * d <= max_size {
            size *= d;
            orders.push(d);
        }
    }
    let r = orders.len();
    let q: Vec<Rat> = orders
        .iter()
        .map(|&d| {
            let den = num_integer::gcd(2 * d, d * d);
            rat(rng.gen_range(0..den), den)
        })
        .collect();
    let mut b = RatMatrix::zeros(r, r);
    for i in 0..r {
        b[(i, i)] = frac(&q[i] * rat(2, 1));
        for j in 0..i {
            let g = num_integer::gcd(orders[i], orders[j]);
            let v = rat(rng.gen_range(0..g), g);
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    (orders, q, b)
}

/// Euler's recurrence n·p(n) = m Σ_{k=1}^{n} σ(k) p(n−k) for m-colored partitions.
pub fn colored_partitions_oracle(n_max: usize, m: usize) -> Vec<BigInt> {
    let sigma: Vec<BigInt> = (0..=n_max)
        .map(|k| BigInt::from((1..=k).filter(|d| k % d == 0).sum::<usize>()))
        .collect();
    let mut p = vec![BigInt::one()];
    for n in 1..=n_max {
        let s: BigInt = (1..=n).map(|k| &sigma[k] * &p[n - k]).sum();
        p.push(s * BigInt::from(m) / BigInt::from(n));
    }
    p
}

/// Vector counts of E8 by norm, from the coordinate model
/// {x ∈ Z⁸ ∪ (Z + ½)⁸ : Σxᵢ ∈ 2Z}, up to norm `2·max_half_norm`.
pub fn e8_norm_counts(max_half_norm: i64) -> BTreeMap<i64, u64> {
    let mut counts = BTreeMap::new();
    let max_norm = 2 * max_half_norm;
    let r = (max_norm as f64).sqrt() as i64 + 1;
    // Work with doubled coordinates y = 2x, all even or all odd.
    let mut rec = |parity: i64| {
        let vals: Vec<i64> = (-2 * r..=2 * r).filter(|v| v.rem_euclid(2) == parity).collect();
        let mut stack = vec![(0usize, 0i64, 0i64)];
        let mut frames: Vec<(usize, i64, i64)> = Vec::new();
        while let Some((depth, sum, norm4)) = stack.pop() {
            if norm4 > 4 * max_norm {
                continue;
            }
            if depth == 8 {
                if (sum / 2).rem_euclid(2) == 0 && norm4 % 4 == 0 {
                    *counts.entry(norm4 / 8).or_insert(0u64) += 1;
                }
                continue;
            }
            for &v in &vals {
                frames.push((depth + 1, sum + v, norm4 + v * v));
            }
            stack.append(&mut frames);
        }
    };
    rec(0);
    rec(1);
    counts
}
