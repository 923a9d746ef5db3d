//! Acceptance suite: one line per criterion, nonzero exit if any is red.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use codelat_core::{
    all_subgroups, assets, colored_partitions, construction_a, discriminant_form, eta, heisenberg_character,
    intermediate_to_sectors, rat, Error, FiniteQuadraticModule, QSeries, Rat,
    RatMatrix, RationalLattice, SectorAlgebra, SectorSet, DEFAULT_ENUMERATION_CAP,
};
use common::*;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = DEFAULT_ENUMERATION_CAP;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golay_suite() -> Outcome {
    let golay = assets::golay_24_12();
    ensure(golay.is_doubly_even(), || "not doubly even".into())?;
    ensure(golay.is_self_dual(), || "not self-dual".into())?;
    let oracle = brute_weights(&golay);
    ensure(oracle.iter().sum::<u64>() == 4096, || "oracle did not visit 4096 words".into())?;
    let mut expected = vec![0u64; 25];
    for (w, c) in [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)] {
        expected[w] = c;
    }
    ensure(oracle == expected, || format!("oracle distribution {oracle:?}"))?;
    let w = golay.weight_enumerator(CAP).map_err(|e| e.to_string())?;
    for (i, &c) in expected.iter().enumerate() {
        let got = w.coefficient_at_int(i as i64).map_err(|e| e.to_string())?;
        ensure(got == BigInt::from(c), || format!("coefficient of q^{i} is {got}"))?;
    }
    ensure(
        w.to_string() == "1 + 759q^8 + 2576q^12 + 759q^16 + q^24",
        || format!("enumerator {w}"),
    )
}

fn hamming_e8_chain() -> Outcome {
    let h = assets::hamming_8_4();
    ensure(h.is_self_dual() && h.is_doubly_even(), || "hamming predicates".into())?;
    let oracle = brute_weights(&h);
    ensure(oracle == vec![1, 0, 0, 0, 14, 0, 0, 0, 1], || format!("oracle {oracle:?}"))?;
    let w = h.weight_enumerator(CAP).map_err(|e| e.to_string())?;
    ensure(w.to_string() == "1 + 14q^4 + q^8", || format!("enumerator {w}"))?;
    let l = construction_a(&h);
    ensure(l.is_even(), || "lift not even".into())?;
    ensure(l.is_unimodular(), || "lift not unimodular".into())?;
    ensure(l.is_positive_definite(), || "lift not positive definite".into())?;
    let order = rat(3, 1);
    let theta = l.theta_series(&order).map_err(|e| e.to_string())?;
    let e8_theta = assets::e8().theta_series(&order).map_err(|e| e.to_string())?;
    let counts = e8_norm_counts(3);
    for n in 0..=3i64 {
        let a = theta.coefficient_at_int(n).unwrap();
        let b = e8_theta.coefficient_at_int(n).unwrap();
        let c = BigInt::from(counts[&n]);
        ensure(a == b && b == c, || format!("q^{n}: lift {a}, e8.gram {b}, coordinate oracle {c}"))?;
    }
    ensure(
        theta.to_string() == "1 + 240q + 2160q^2 + 6720q^3",
        || format!("theta {theta}"),
    )
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn macwilliams() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3ac3);
    for trial in 0..100 {
        let n = rng.gen_range(1..=16);
        let k = rng.gen_range(0..=n);
        let code = random_code(&mut rng, n, k, false);
        let k = code.dimension();
        let a = brute_weights(&code);
        let lib = code.weight_distribution(CAP).map_err(|e| e.to_string())?;
        ensure(lib == a, || format!("trial {trial}: weight distribution disagrees with oracle"))?;
        // 2^{-k} Σ_w A_w (1 − q)^w (1 + q)^{n−w}
        let one_minus = [BigInt::one(), -BigInt::one()];
        let one_plus = [BigInt::one(), BigInt::one()];
        let mut rhs = vec![BigInt::zero(); n + 1];
        for (w, &count) in a.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let mut p = vec![BigInt::from(count)];
            for _ in 0..w {
                p = poly_mul(&p, &one_minus);
            }
            for _ in w..n {
                p = poly_mul(&p, &one_plus);
            }
            for (r, c) in rhs.iter_mut().zip(p) {
                *r += c;
            }
        }
        let scale = BigInt::one() << k;
        let dual = code.dual();
        let w_dual = dual.weight_enumerator(CAP).map_err(|e| e.to_string())?;
        let brute_dual = brute_dual_weights(&code);
        for (i, r) in rhs.iter().enumerate() {
            ensure((r % &scale).is_zero(), || format!("trial {trial}: 2^k does not divide"))?;
            let expected = r / &scale;
            let got = w_dual.coefficient_at_int(i as i64).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("trial {trial} (n={n}, k={k}): q^{i} {got} vs {expected}"))?;
            ensure(
                BigInt::from(brute_dual[i]) == expected,
                || format!("trial {trial}: brute-force dual disagrees at q^{i}"),
            )?;
        }
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, symmetric: bool) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if symmetric && j < i {
                m[(i, j)] = m[(j, i)].clone();
            } else {
                m[(i, j)] = random_rational(rng, 10);
            }
        }
    }
    m
}

fn lattice_dual_involution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(1..=6);
        let form = random_matrix(&mut rng, n, n, true);
        let basis = random_matrix(&mut rng, n, n, false);
        if form.determinant().is_zero() || basis.determinant().is_zero() {
            continue;
        }
        let l = RationalLattice::new(form, basis).map_err(|e| e.to_string())?;
        let d = l.dual().map_err(|e| e.to_string())?;
        let dd = d.dual().map_err(|e| e.to_string())?;
        ensure(dd == l, || format!("lattice {done}: double dual differs"))?;
        ensure(
            d.det_gram() * l.det_gram() == rat(1, 1),
            || format!("lattice {done}: det product {}", d.det_gram() * l.det_gram()),
        )?;
        done += 1;
    }
    let degenerate = gram(&[vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 0]]);
    ensure(
        degenerate.dual().unwrap_err() == Error::DegenerateLattice,
        || "degenerate dual did not raise DegenerateLattice".into(),
    )?;
    let embedded = RationalLattice::new(
        RatMatrix::from_rows(2, &[vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]]),
        RatMatrix::from_rows(2, &[vec![rat(0, 1), rat(1, 1)]]),
    )
    .map_err(|e| e.to_string())?;
    ensure(
        embedded.dual().unwrap_err() == Error::DegenerateLattice,
        || "null line did not raise DegenerateLattice".into(),
    )
}

fn discriminant_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    for trial in 0..50 {
        let (g, det) = random_even_gram(&mut rng, 4, 64);
        let l = gram(&g);
        let (m, map) = discriminant_form(&l).map_err(|e| e.to_string())?;
        ensure(m.size() == det.unsigned_abs(), || {
            format!("trial {trial}: |L°/L| = {} but |det| = {det}", m.size())
        })?;
        for a in m.elements() {
            let v = map.representative(&a);
            let back = map.coset_of(&v).map_err(|e| e.to_string())?;
            ensure(back == a, || format!("trial {trial}: representative of {a:?} maps to {back:?}"))?;
            let half = l.inner(&v, &v) / rat(2, 1);
            let q = &half - Rat::from_integer(half.floor().to_integer());
            ensure(m.quad(&a) == q, || format!("trial {trial}: q({a:?}) disagrees with the norm"))?;
        }
    }
    let (a1, _) = discriminant_form(&assets::a1()).map_err(|e| e.to_string())?;
    ensure(a1.orders() == [2] && a1.q_gen() == [rat(1, 4)], || "A1 discriminant".into())?;
    let (d4, _) = discriminant_form(&assets::d4()).map_err(|e| e.to_string())?;
    ensure(d4.orders() == [2, 2], || format!("D4 orders {:?}", d4.orders()))?;
    for a in d4.elements() {
        if a.iter().any(|&x| x != 0) {
            ensure(d4.quad(&a) == rat(1, 2), || format!("D4 q({a:?}) = {}", d4.quad(&a)))?;
        }
    }
    Ok(())
}

fn random_module(rng: &mut ChaCha8Rng, index: usize) -> (Vec<i64>, Vec<Rat>, RatMatrix) {
    if index % 2 == 0 {
        let (g, _) = random_even_gram(rng, 4, 64);
        let (m, _) = discriminant_form(&gram(&g)).unwrap();
        (m.orders().to_vec(), m.q_gen().to_vec(), m.b_gen().clone())
    } else {
        random_presentation(rng, 64)
    }
}

fn dual_construction_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4d0a1);
    let mut subgroups_checked = 0usize;
    for index in 0..50 {
        let (orders, q, b) = random_module(&mut rng, index);
        let module = Arc::new(
            FiniteQuadraticModule::build(orders.clone(), q.clone(), b.clone(), rat(0, 1)).map_err(|e| e.to_string())?,
        );
        let elements = all_elements(&orders);
        let brute = brute_subgroups(&orders);
        let library = all_subgroups(&module, 64).map_err(|e| e.to_string())?;
        ensure(brute.len() == library.len(), || {
            format!("module {index}: {} subgroups by brute force, {} by library", brute.len(), library.len())
        })?;
        let b_nondegenerate = elements.iter().all(|x| {
            x.iter().all(|&c| c == 0) || elements.iter().any(|y| !bilinear_oracle(&orders, &q, &b, x, y).is_zero())
        });
        let as_set = |s: &SectorSet| -> BTreeSet<Vec<i64>> { s.elements().into_iter().collect() };
        let brute_dual = |a: &BTreeSet<Vec<i64>>| -> BTreeSet<Vec<i64>> {
            elements
                .iter()
                .filter(|y| a.iter().all(|x| bilinear_oracle(&orders, &q, &b, x, y).is_zero()))
                .cloned()
                .collect()
        };
        let mut spans = Vec::new();
        for s in &brute {
            let span = SectorSet::span(&module, s).map_err(|e| e.to_string())?;
            ensure(as_set(&span) == s.iter().cloned().collect(), || format!("module {index}: span differs"))?;
            spans.push(span);
        }
        let duals: BTreeSet<BTreeSet<Vec<i64>>> = spans.iter().map(|s| as_set(&s.dual())).collect();
        for a in &spans {
            let set = as_set(a);
            let d = a.dual();
            let dset = as_set(&d);
            ensure(dset == brute_dual(&set), || format!("module {index}: dual differs from brute force"))?;
            ensure(
                brute.iter().any(|s| s.iter().cloned().collect::<BTreeSet<_>>() == dset),
                || format!("module {index}: dual is not a subgroup"),
            )?;
            let dd = d.dual();
            ensure(a.is_subset_of(&dd), || format!("module {index}: A ⊄ A°°"))?;
            ensure(dd.dual() == d, || format!("module {index}: A°°° ≠ A°"))?;
            ensure(
                a.is_nondegenerate() == duals.contains(&set),
                || format!("module {index}: nondegeneracy disagrees with the search over duals"),
            )?;
            if b_nondegenerate {
                ensure(a.order() * d.order() == module.size(), || format!("module {index}: |A||A°| ≠ |D|"))?;
                ensure(dd == *a, || format!("module {index}: A°° ≠ A for nondegenerate B"))?;
            }
            if a.is_z_graded() {
                ensure(a.is_meromorphic(), || format!("module {index}: z-graded but not meromorphic"))?;
            }
            subgroups_checked += 1;
        }
    }
    ensure(subgroups_checked > 200, || format!("only {subgroups_checked} subgroups checked"))
}

fn dual_lift_commutation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    for trial in 0..50 {
        let n = rng.gen_range(1..=12);
        let k = rng.gen_range(0..=n);
        let code = random_code(&mut rng, n, k, true);
        ensure(code.is_even(), || format!("trial {trial}: generated code is not even"))?;
        let lhs = construction_a(&code.dual());
        let rhs = construction_a(&code).dual().map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("trial {trial}: A(C°) ≠ A(C)°"))?;
    }

    let l = gram(&[vec![4]]);
    let m = RationalLattice::new(l.form().clone(), RatMatrix::from_rows(1, &[vec![rat(1, 2)]])).unwrap();
    let s = intermediate_to_sectors(&l, &m).map_err(|e| e.to_string())?;
    let s_dual = intermediate_to_sectors(&l, &m.dual().unwrap()).map_err(|e| e.to_string())?;
    ensure(s.elements() == vec![vec![0], vec![2]], || "Gram [[4]]: M/L".into())?;
    ensure(s_dual == s.dual(), || "Gram [[4]]: M°/L ≠ (M/L)°".into())?;

    let mut pairs = 0;
    while pairs < 20 {
        let (g, _) = random_even_gram(&mut rng, 4, 16);
        let l = gram(&g);
        let (module, map) = discriminant_form(&l).map_err(|e| e.to_string())?;
        let module = Arc::new(module);
        let subgroups = all_subgroups(&module, 64).map_err(|e| e.to_string())?;
        let s = &subgroups[rng.gen_range(0..subgroups.len())];
        let m = map.intermediate_lattice(&s.generators()).map_err(|e| e.to_string())?;
        let back = intermediate_to_sectors(&l, &m).map_err(|e| e.to_string())?;
        ensure(back == *s, || format!("pair {pairs}: M/L does not recover the subgroup"))?;
        let lhs = intermediate_to_sectors(&l, &m.dual().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(lhs == back.dual(), || format!("pair {pairs}: M°/L ≠ (M/L)°"))?;
        pairs += 1;
    }
    Ok(())
}

fn character_suite() -> Outcome {
    let order = rat(50, 1);
    for m in 1..=3usize {
        let h = heisenberg_character(m, &order).map_err(|e| e.to_string())?;
        let oracle = colored_partitions_oracle(50, m);
        for n in 0..=50usize {
            let e = rat(n as i64, 1) - rat(m as i64, 24);
            let got = h.coefficient(&e).map_err(|e| e.to_string())?;
            ensure(got == oracle[n], || format!("m = {m}, n = {n}: {got} vs {}", oracle[n]))?;
            ensure(
                BigInt::from(colored_partitions(n, m)) == oracle[n],
                || format!("colored_partitions({n}, {m})"),
            )?;
        }
    }
    let first: Vec<i64> = colored_partitions_oracle(6, 1).iter().map(|x| x.to_i64().unwrap()).collect();
    ensure(first == vec![1, 1, 2, 3, 5, 7, 11], || format!("partition oracle {first:?}"))?;

    let (m, _) = discriminant_form(&assets::e8()).map_err(|e| e.to_string())?;
    let a = SectorSet::trivial(&Arc::new(m));
    let chi = a.character(&rat(2, 1)).map_err(|e| e.to_string())?;
    ensure(
        chi.to_string() == "q^(-1/3) + 248q^(2/3) + 4124q^(5/3)",
        || format!("E8 character {chi}"),
    )?;
    // Convolution oracle: states at level N are vectors of half-norm j times
    // 8-colored partitions of N − j.
    let vectors = e8_norm_counts(2);
    let p8 = colored_partitions_oracle(2, 8);
    for level in 0..=2i64 {
        let states: BigInt = (0..=level)
            .map(|j| BigInt::from(*vectors.get(&j).unwrap_or(&0)) * &p8[(level - j) as usize])
            .sum();
        let got = chi.coefficient(&(rat(level, 1) - rat(1, 3))).map_err(|e| e.to_string())?;
        ensure(got == states, || format!("level {level}: {got} vs oracle {states}"))?;
    }

    let e = eta(&(rat(20, 1) + rat(1, 12)));
    let product = e.mul(&e.pow(-1).map_err(|e| e.to_string())?);
    ensure(
        product.equal_up_to(&QSeries::one(rat(20, 1)), &rat(20, 1)),
        || format!("eta·eta⁻¹ = {product}"),
    )
}

fn degeneracy_example() -> Outcome {
    let z4 = Arc::new(
        FiniteQuadraticModule::build(
            vec![4],
            vec![rat(1, 8)],
            RatMatrix::from_rows(1, &[vec![rat(1, 4)]]),
            rat(1, 1),
        )
        .map_err(|e| e.to_string())?,
    );
    let (a1, _) = discriminant_form(&assets::a1()).map_err(|e| e.to_string())?;
    let a1 = Arc::new(a1);
    for (module, g) in [(&z4, vec![2]), (&a1, vec![1])] {
        let a = SectorSet::span(module, &[g.clone()]).map_err(|e| e.to_string())?;
        let masked = SectorAlgebra::new(a.clone(), [(g.clone(), g.clone())]).map_err(|e| e.to_string())?;
        ensure(masked.is_degenerate(), || format!("masked {{0, {g:?}}} not degenerate"))?;
    }
    let half = SectorSet::span(&z4, &[vec![2]]).map_err(|e| e.to_string())?;
    let plain = SectorAlgebra::unmasked(half.clone());
    ensure(!plain.is_degenerate(), || "unmasked {0,2} degenerate".into())?;
    ensure(half.is_nondegenerate() && half.is_self_dual(), || "unmasked {0,2} not self-dual".into())
}

fn leech_theta() -> Outcome {
    let leech = assets::leech();
    ensure(leech.is_even() && leech.is_unimodular(), || "Leech asset is not even unimodular".into())?;
    let theta = leech.theta_series(&rat(2, 1)).map_err(|e| e.to_string())?;
    let roots = theta.coefficient_at_int(1).map_err(|e| e.to_string())?;
    let min = theta.coefficient_at_int(2).map_err(|e| e.to_string())?;
    ensure(roots.is_zero(), || format!("{roots} vectors of norm 2"))?;
    ensure(min == BigInt::from(196560), || format!("{min} vectors of norm 4"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Golay suite", limit: Some(Duration::from_secs(1)), run: golay_suite },
        Criterion { id: 2, name: "Hamming/E8 chain", limit: Some(Duration::from_secs(5)), run: hamming_e8_chain },
        Criterion { id: 3, name: "MacWilliams cross-check", limit: Some(Duration::from_secs(10)), run: macwilliams },
        Criterion { id: 4, name: "Lattice dual involution", limit: None, run: lattice_dual_involution },
        Criterion { id: 5, name: "Discriminant law", limit: None, run: discriminant_law },
        Criterion { id: 6, name: "Dual-construction suite", limit: Some(Duration::from_secs(30)), run: dual_construction_suite },
        Criterion { id: 7, name: "Dual/lift commutation", limit: None, run: dual_lift_commutation },
        Criterion { id: 8, name: "Character suite", limit: None, run: character_suite },
        Criterion { id: 9, name: "Degeneracy example", limit: None, run: degeneracy_example },
        Criterion { id: 10, name: "Leech theta (slow)", limit: Some(Duration::from_secs(600)), run: leech_theta },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match &outcome {
            Ok(()) => println!("criterion {:>2} PASS {} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
