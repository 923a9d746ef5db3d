//! Lifts between the three tiers (codes, lattices, sector algebras) and the
//! row-by-row correspondence report.
//!
//! Construction A uses the ambient form ½·I, so a code C ⊆ F₂ⁿ lifts to
//! {x/√2 : x mod 2 ∈ C}. Every such lattice sits between A1ⁿ (the lift of
//! the zero code) and its dual Zⁿ, so a code is also a sector set inside the
//! discriminant group (Z/2)ⁿ of A1ⁿ, where q(c) = wt(c)/4 mod Z.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::codes::{BinaryCode, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::lattices::{discriminant_form, RationalLattice};
use crate::matrix::{frac, rat, Rat, RatMatrix};
use crate::qseries::{eta, QSeries};
use crate::sectors::{FiniteQuadraticModule, SectorAlgebra, SectorSet};

/// L_C, with ambient form ½·I and a Hermite-reduced integer basis.
pub fn construction_a(code: &BinaryCode) -> RationalLattice {
    let n = code.length();
    let mut rows: Vec<Vec<Rat>> = code
        .generators()
        .iter()
        .map(|g| g.iter().map(|b| rat(b as i64, 1)).collect())
        .collect();
    for i in 0..n {
        let mut row = vec![Rat::zero(); n];
        row[i] = rat(2, 1);
        rows.push(row);
    }
    let form = RatMatrix::diagonal(&vec![rat(1, 2); n]);
    RationalLattice::from_generators(form, &rows).expect("generators have length n")
}

/// The discriminant module of an even nondegenerate lattice together with
/// the sector set {0} of V_L.
pub fn lattice_to_sectors(lattice: &RationalLattice) -> Result<(Arc<FiniteQuadraticModule>, SectorSet)> {
    let (module, _) = discriminant_form(lattice)?;
    let module = Arc::new(module);
    let trivial = SectorSet::trivial(&module);
    Ok((module, trivial))
}

/// M/L as a subgroup of L°/L, for L ⊆ M ⊆ L° in the same ambient space.
pub fn intermediate_to_sectors(lattice: &RationalLattice, middle: &RationalLattice) -> Result<SectorSet> {
    let (module, map) = discriminant_form(lattice)?;
    if lattice.form() != middle.form() {
        return Err(Error::InclusionViolation("lattices live in different ambient spaces".into()));
    }
    if !middle.contains_lattice(lattice) {
        return Err(Error::InclusionViolation("the smaller lattice is not contained in the larger".into()));
    }
    let generators = (0..middle.rank())
        .map(|r| map.coset_of(middle.basis().row(r)))
        .collect::<Result<Vec<_>>>()?;
    SectorSet::span(&Arc::new(module), &generators)
}

/// The discriminant lift of construction_a(C); requires C doubly even.
pub fn code_to_sectors(code: &BinaryCode) -> Result<(Arc<FiniteQuadraticModule>, SectorSet)> {
    if !code.is_doubly_even() {
        return Err(Error::NotDoublyEven);
    }
    lattice_to_sectors(&construction_a(code))
}

/// C as the sector set L_C / A1ⁿ inside (Z/2)ⁿ.
pub fn code_sector_set(code: &BinaryCode) -> SectorSet {
    let base = construction_a(&BinaryCode::zero(code.length()));
    intermediate_to_sectors(&base, &construction_a(code)).expect("A1ⁿ ⊆ L_C ⊆ Zⁿ")
}

/// Input to [`verify_table_row`].
#[derive(Clone, Debug)]
pub enum TierObject {
    Code(BinaryCode),
    Lattice(RationalLattice),
    Sectors(SectorAlgebra),
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Truncation order of the theta series; characters are carried as far
    /// as that determines them.
    pub order: Rat,
    pub cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: rat(2, 1),
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable(String),
    Info,
}

impl Verdict {
    fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::NotApplicable(_) => "n/a",
            Verdict::Info => "info",
        }
    }

    fn detail(&self) -> Option<&str> {
        match self {
            Verdict::Fail(s) | Verdict::NotApplicable(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub key: &'static str,
    pub title: &'static str,
    /// Code, lattice and sector cells; `-` where the tier is absent.
    pub cells: [String; 3],
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub rows: Vec<ReportRow>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        !self.rows.iter().any(|r| matches!(r.verdict, Verdict::Fail(_)))
    }

    pub fn row(&self, key: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.key == key)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let _ = writeln!(s, "{} [{}]", row.title, row.verdict.label());
            for (tier, cell) in ["code", "lattice", "sectors"].iter().zip(&row.cells) {
                let _ = writeln!(s, "  {tier:<8} {cell}");
            }
            if let Some(d) = row.verdict.detail() {
                let _ = writeln!(s, "  {:<8} {d}", "note");
            }
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "pass" } else { "fail" });
        s
    }

    pub fn render_kv(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            for (tier, cell) in ["code", "lattice", "sectors"].iter().zip(&row.cells) {
                let _ = writeln!(s, "{}.{tier}={cell}", row.key);
            }
            let _ = writeln!(s, "{}.verdict={}", row.key, row.verdict.label());
            if let Some(d) = row.verdict.detail() {
                let _ = writeln!(s, "{}.note={d}", row.key);
            }
        }
        let _ = writeln!(s, "result={}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

const ABSENT: &str = "-";

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn row(key: &'static str, title: &'static str, cells: [String; 3], verdict: Verdict) -> ReportRow {
    ReportRow {
        key,
        title,
        cells,
        verdict,
    }
}

/// Lattice-side view shared by all tiers.
struct LatticeView {
    lattice: RationalLattice,
    theta: Option<QSeries>,
}

impl LatticeView {
    fn new(lattice: RationalLattice, options: &VerifyOptions) -> Result<LatticeView> {
        let theta = if lattice.is_positive_definite() {
            Some(lattice.theta_series(&options.order)?)
        } else {
            None
        };
        Ok(LatticeView { lattice, theta })
    }
}

/// Σ_w A_w f₀^{n−w} f₁^w, with f₀ = Σ q^{k²} and f₁ = Σ q^{(2k+1)²/4}: the
/// theta series of construction_a(C) read off the weight distribution.
fn theta_from_weights(counts: &[u64], order: &Rat) -> Result<QSeries> {
    let n = counts.len() - 1;
    let mut f0 = Vec::new();
    let mut f1 = Vec::new();
    let mut k: i64 = 0;
    while rat(k * k, 1) <= *order {
        let c = BigInt::from(if k == 0 { 1 } else { 2 });
        f0.push((rat(k * k, 1), c));
        k += 1;
    }
    let mut k: i64 = 0;
    while rat((2 * k + 1) * (2 * k + 1), 4) <= *order {
        f1.push((rat((2 * k + 1) * (2 * k + 1), 4), BigInt::from(2)));
        k += 1;
    }
    let f0 = QSeries::from_terms(f0, order.clone());
    let f1 = QSeries::from_terms(f1, order.clone());
    let mut total = QSeries::zero(order.clone());
    for (w, &a) in counts.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let term = match (n - w, w) {
            (0, _) => f1.pow(w as i64)?,
            (_, 0) => f0.pow(n as i64)?,
            (a, b) => f0.pow(a as i64)?.mul(&f1.pow(b as i64)?),
        };
        total = total.add(&term.scale(&BigInt::from(a)).truncate(order));
    }
    Ok(total.truncate(order))
}

fn series_cell(s: &Option<QSeries>, reason: &str) -> String {
    match s {
        Some(s) => format!("{s} + O(q^{})", s.order()),
        None => reason.to_string(),
    }
}

/// Lifts the object through the tiers and evaluates every row of the
/// correspondence table.
pub fn verify_table_row(object: &TierObject, options: &VerifyOptions) -> Result<CorrespondenceReport> {
    match object {
        TierObject::Code(code) => verify_code(code, options),
        TierObject::Lattice(lattice) => verify_lattice(lattice, options),
        TierObject::Sectors(algebra) => verify_sectors(algebra, options),
    }
}

fn verify_code(code: &BinaryCode, options: &VerifyOptions) -> Result<CorrespondenceReport> {
    let n = code.length();
    let k = code.dimension();
    let view = LatticeView::new(construction_a(code), options)?;
    let lattice = &view.lattice;
    let sectors = code_sector_set(code);
    let module = sectors.module().clone();
    let counts = code.weight_distribution(options.cap)?;
    let mut rows = Vec::new();

    rows.push(row(
        "object",
        "Objects",
        [
            format!("[{n},{k}] binary code"),
            format!("construction A, rank {}, det {}", lattice.rank(), lattice.det_gram()),
            format!("C inside (Z/2)^{n}, |A| = {}", sectors.order()),
        ],
        Verdict::Info,
    ));

    let c = module.central_charge().clone();
    let invariants_ok = lattice.rank() == n && c == rat(n as i64, 1);
    rows.push(row(
        "invariants",
        "Lengths / Ranks / Central charges",
        [n.to_string(), lattice.rank().to_string(), c.to_string()],
        if invariants_ok {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("length {n}, rank {}, c = {c}", lattice.rank()))
        },
    ));

    let weights: Vec<usize> = (0..=n).filter(|&w| counts[w] > 0).collect();
    let mut bad_weight = None;
    for word in code.codewords(options.cap)? {
        let a: Vec<i64> = word.iter().map(|b| b as i64).collect();
        if module.quad(&a) != frac(&rat(word.weight() as i64, 4)) {
            bad_weight = Some(word);
            break;
        }
    }
    let sector_weights: std::collections::BTreeSet<Rat> = sectors.elements().iter().map(|a| module.quad(a)).collect();
    let norms = view
        .theta
        .as_ref()
        .map(|t| t.terms().map(|(e, _)| (e * rat(2, 1)).to_string()).collect::<Vec<_>>().join(", "))
        .unwrap_or_default();
    rows.push(row(
        "weights",
        "Weights / Square lengths / Weights",
        [
            format!("{{{}}}", weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")),
            format!("{{{norms}}} up to norm {}", &options.order * rat(2, 1)),
            format!(
                "{{{}}} mod 1",
                sector_weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
            ),
        ],
        match bad_weight {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(format!("codeword {w} has q ≠ wt/4")),
        },
    ));

    let triple = |key, title, c: bool, l: bool, s: bool| {
        row(
            key,
            title,
            [yes_no(c), yes_no(l), yes_no(s)],
            if c == l && l == s {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("code {c}, lattice {l}, sectors {s}"))
            },
        )
    };
    rows.push(triple(
        "even",
        "Even codes / Integral lattices / Meromorphic",
        code.is_even(),
        lattice.is_integral(),
        sectors.is_meromorphic(),
    ));
    rows.push(triple(
        "doubly_even",
        "Doubly even codes / Even lattices / Z-graded",
        code.is_doubly_even(),
        lattice.is_even(),
        sectors.is_z_graded(),
    ));

    rows.push(row(
        "positive_definite",
        "Positive definite",
        [ABSENT.into(), yes_no(lattice.is_positive_definite()), ABSENT.into()],
        Verdict::Info,
    ));

    let dual_code = code.dual();
    let lifted_dual = construction_a(&dual_code);
    let dual_lattice = lattice.dual()?;
    let base = construction_a(&BinaryCode::zero(n));
    let lattice_ok = lifted_dual == dual_lattice;
    let sectors_ok = intermediate_to_sectors(&base, &dual_lattice)? == sectors.dual();
    rows.push(row(
        "dual",
        "Dual codes / Dual lattices / Duals",
        [
            format!("[{n},{}] dual code", dual_code.dimension()),
            format!("A(C°) = A(C)°: {}", yes_no(lattice_ok)),
            format!("A(C)°/A1^{n} = A°: {}", yes_no(sectors_ok)),
        ],
        if lattice_ok && sectors_ok {
            Verdict::Pass
        } else {
            Verdict::Fail("lifting does not commute with taking duals".into())
        },
    ));
    rows.push(triple(
        "self_dual",
        "Self-dual codes / Self-dual lattices / Self-dual",
        code.is_self_dual(),
        lattice.is_self_dual(),
        sectors.is_self_dual(),
    ));
    rows.push(row(
        "nondegenerate",
        "Nondegenerate",
        [ABSENT.into(), yes_no(lattice.is_nondegenerate()), yes_no(sectors.is_nondegenerate())],
        if sectors.is_nondegenerate() {
            Verdict::Pass
        } else {
            Verdict::Fail("A ≠ A°° inside a nondegenerate module".into())
        },
    ));
    rows.push(row(
        "ambient",
        "F2^n / L_Q / Complete extensions",
        [
            format!("F2^{n}"),
            format!("Q^{n} with form 1/2·I"),
            format!("(Z/2)^{n}, order {}", sectors.complete_extension().order()),
        ],
        Verdict::Info,
    ));

    let weight_enumerator = code.weight_enumerator(options.cap)?;
    let predicted = theta_from_weights(&counts, &options.order)?;
    let theta = view.theta.clone().expect("construction A is positive definite");
    let chi = character_from_theta(&theta, n)?;
    let character = sectors.character(&character_order(n, &options.order))?;
    let theta_ok = predicted == theta;
    let chi_ok = character == chi;
    rows.push(row(
        "series",
        "W(q) / Theta(q) / chi(q)",
        [
            weight_enumerator.to_string(),
            series_cell(&Some(theta), ""),
            series_cell(&Some(character), ""),
        ],
        if theta_ok && chi_ok {
            Verdict::Pass
        } else {
            Verdict::Fail(format!(
                "theta from weights agrees: {}, character equals theta/eta^{n}: {}",
                yes_no(theta_ok),
                yes_no(chi_ok)
            ))
        },
    ));

    rows.push(golay_row_for_code(code, view.theta.as_ref()));

    rows.push(match code_to_sectors(code) {
        Ok((m, _)) => {
            let expected = 1u128 << (n - 2 * k).min(127);
            row(
                "sector_lift",
                "Discriminant lift of A(C)",
                [
                    ABSENT.into(),
                    format!("|det| = {}", lattice.det_gram()),
                    format!("|D| = {}, c = {}", m.size(), m.central_charge()),
                ],
                if m.size() == expected && *m.central_charge() == rat(n as i64, 1) {
                    Verdict::Pass
                } else {
                    Verdict::Fail(format!("expected |D| = 2^{}", n - 2 * k))
                },
            )
        }
        Err(e) => row(
            "sector_lift",
            "Discriminant lift of A(C)",
            [ABSENT.into(), ABSENT.into(), format!("refused: {}", e.name())],
            Verdict::NotApplicable(format!("{e}: A(C) is not even")),
        ),
    });

    Ok(CorrespondenceReport { rows })
}

/// Θ_L · η^{−rank}, known through `theta.order() − rank/24`.
fn character_from_theta(theta: &QSeries, rank: usize) -> Result<QSeries> {
    let order = character_order(rank, theta.order());
    Ok(theta.mul(&inverse_eta(rank, &order)?).truncate(&order))
}

fn character_order(rank: usize, theta_order: &Rat) -> Rat {
    theta_order - rat(rank as i64, 24)
}

fn inverse_eta(rank: usize, order: &Rat) -> Result<QSeries> {
    if rank == 0 {
        return Ok(QSeries::one(order.clone()));
    }
    Ok(eta(&(order + rat(rank as i64 + 1, 24))).pow(-(rank as i64))?.truncate(order))
}

fn is_golay_like(code: &BinaryCode) -> bool {
    code.length() == 24 && code.dimension() == 12 && code.is_doubly_even() && code.is_self_dual()
}

fn golay_row_for_code(code: &BinaryCode, theta: Option<&QSeries>) -> ReportRow {
    let title = "Golay code / Leech lattice / Moonshine module";
    if !is_golay_like(code) {
        return row(
            "golay_leech",
            title,
            [ABSENT.into(), ABSENT.into(), ABSENT.into()],
            Verdict::NotApplicable("not a self-dual doubly even [24,12] code".into()),
        );
    }
    let roots = theta
        .and_then(|t| t.coefficient_at_int(1).ok())
        .map(|c| c.to_string())
        .unwrap_or_else(|| "?".into());
    row(
        "golay_leech",
        title,
        [
            "self-dual doubly even [24,12]".into(),
            format!("construction A has {roots} roots, so it is not the Leech lattice (no roots)"),
            "moonshine module not modeled".into(),
        ],
        Verdict::Info,
    )
}

fn verify_lattice(lattice: &RationalLattice, options: &VerifyOptions) -> Result<CorrespondenceReport> {
    let view = LatticeView::new(lattice.clone(), options)?;
    let lifted = lattice_to_sectors(lattice);
    let mut rows = Vec::new();
    let not_lifted = |e: &Error| format!("no sector lift: {}", e.name());

    rows.push(row(
        "object",
        "Objects",
        [
            ABSENT.into(),
            format!("rank {} in Q^{}, det {}", lattice.rank(), lattice.ambient_dim(), lattice.det_gram()),
            match &lifted {
                Ok((m, a)) => format!("A = {a} in a module of order {}", m.size()),
                Err(e) => not_lifted(e),
            },
        ],
        Verdict::Info,
    ));

    let rank = lattice.rank();
    rows.push(match &lifted {
        Ok((m, _)) => row(
            "invariants",
            "Lengths / Ranks / Central charges",
            [ABSENT.into(), rank.to_string(), m.central_charge().to_string()],
            if *m.central_charge() == rat(rank as i64, 1) {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("rank {rank}, c = {}", m.central_charge()))
            },
        ),
        Err(e) => row(
            "invariants",
            "Lengths / Ranks / Central charges",
            [ABSENT.into(), rank.to_string(), not_lifted(e)],
            Verdict::Info,
        ),
    });

    let implication = |key, title, l: bool, s: Option<bool>, reason: String| match s {
        Some(s) => row(
            key,
            title,
            [ABSENT.into(), yes_no(l), yes_no(s)],
            if !l || s {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("lattice {l} but sectors {s}"))
            },
        ),
        None => row(key, title, [ABSENT.into(), yes_no(l), reason], Verdict::Info),
    };
    let reason = match &lifted {
        Ok(_) => String::new(),
        Err(e) => not_lifted(e),
    };
    let sectors = lifted.as_ref().ok().map(|(_, a)| a);
    rows.push(implication(
        "even",
        "Even codes / Integral lattices / Meromorphic",
        lattice.is_integral(),
        sectors.map(|a| a.is_meromorphic()),
        reason.clone(),
    ));
    rows.push(implication(
        "doubly_even",
        "Doubly even codes / Even lattices / Z-graded",
        lattice.is_even(),
        sectors.map(|a| a.is_z_graded()),
        reason.clone(),
    ));
    rows.push(row(
        "positive_definite",
        "Positive definite",
        [ABSENT.into(), yes_no(lattice.is_positive_definite()), ABSENT.into()],
        Verdict::Info,
    ));

    rows.push(match (lattice.dual(), sectors) {
        (Ok(dual), Some(a)) => {
            let ok = intermediate_to_sectors(lattice, &dual)? == a.dual();
            row(
                "dual",
                "Dual codes / Dual lattices / Duals",
                [
                    ABSENT.into(),
                    format!("dual has det {}", dual.det_gram()),
                    format!("L°/L = {{0}}°: {}", yes_no(ok)),
                ],
                if ok {
                    Verdict::Pass
                } else {
                    Verdict::Fail("L°/L differs from the dual of {0}".into())
                },
            )
        }
        (Ok(dual), None) => row(
            "dual",
            "Dual codes / Dual lattices / Duals",
            [ABSENT.into(), format!("dual has det {}", dual.det_gram()), reason.clone()],
            Verdict::Info,
        ),
        (Err(e), _) => row(
            "dual",
            "Dual codes / Dual lattices / Duals",
            [ABSENT.into(), format!("no dual: {}", e.name()), reason.clone()],
            Verdict::NotApplicable(e.to_string()),
        ),
    });

    rows.push(implication(
        "self_dual",
        "Self-dual codes / Self-dual lattices / Self-dual",
        lattice.is_self_dual(),
        sectors.map(|a| a.is_self_dual()),
        reason.clone(),
    ));
    rows.push(row(
        "nondegenerate",
        "Nondegenerate",
        [
            ABSENT.into(),
            yes_no(lattice.is_nondegenerate()),
            sectors.map(|a| yes_no(a.is_nondegenerate())).unwrap_or(reason.clone()),
        ],
        Verdict::Info,
    ));
    rows.push(row(
        "ambient",
        "F2^n / L_Q / Complete extensions",
        [
            ABSENT.into(),
            format!("Q^{}", lattice.ambient_dim()),
            sectors
                .map(|a| format!("L°/L, order {}", a.complete_extension().order()))
                .unwrap_or(reason.clone()),
        ],
        Verdict::Info,
    ));

    let character = match sectors {
        Some(a) if view.theta.is_some() => Some(a.character(&character_order(rank, &options.order))?),
        _ => None,
    };
    let series_verdict = match (&view.theta, &character) {
        (Some(theta), Some(chi)) => {
            let expected = character_from_theta(theta, rank)?;
            if expected == *chi {
                Verdict::Pass
            } else {
                Verdict::Fail("character differs from theta/eta^rank".into())
            }
        }
        (None, _) => Verdict::NotApplicable("theta series needs a positive definite lattice".into()),
        _ => Verdict::Info,
    };
    rows.push(row(
        "series",
        "W(q) / Theta(q) / chi(q)",
        [
            ABSENT.into(),
            series_cell(&view.theta, "not positive definite"),
            series_cell(&character, if reason.is_empty() { "not positive definite" } else { &reason }),
        ],
        series_verdict,
    ));

    let leech_like = rank == 24 && lattice.is_even() && lattice.is_unimodular() && lattice.is_positive_definite();
    rows.push(if leech_like && view.theta.is_some() {
        let roots = view
            .theta
            .as_ref()
            .and_then(|t| t.coefficient_at_int(1).ok())
            .map(|c| c.to_string())
            .unwrap_or_else(|| "?".into());
        row(
            "golay_leech",
            "Golay code / Leech lattice / Moonshine module",
            [
                ABSENT.into(),
                format!("even unimodular rank 24 with {roots} roots"),
                "moonshine module not modeled".into(),
            ],
            Verdict::Info,
        )
    } else {
        row(
            "golay_leech",
            "Golay code / Leech lattice / Moonshine module",
            [ABSENT.into(), ABSENT.into(), ABSENT.into()],
            Verdict::NotApplicable("not an even unimodular rank-24 lattice".into()),
        )
    });

    Ok(CorrespondenceReport { rows })
}

fn verify_sectors(algebra: &SectorAlgebra, options: &VerifyOptions) -> Result<CorrespondenceReport> {
    let a = algebra.sectors();
    let module = a.module();
    let realization = module.realization().cloned();
    let middle = match &realization {
        Some(map) => Some(map.intermediate_lattice(&a.generators())?),
        None => None,
    };
    let mut rows = Vec::new();
    let absent_lattice = || "no lattice realization".to_string();

    rows.push(row(
        "object",
        "Objects",
        [
            ABSENT.into(),
            middle
                .as_ref()
                .map(|m| format!("L + A, rank {}, det {}", m.rank(), m.det_gram()))
                .unwrap_or_else(absent_lattice),
            format!("A = {a}, |A| = {}, |D| = {}", a.order(), module.size()),
        ],
        Verdict::Info,
    ));

    let c = module.central_charge().clone();
    rows.push(match &middle {
        Some(m) => row(
            "invariants",
            "Lengths / Ranks / Central charges",
            [ABSENT.into(), m.rank().to_string(), c.to_string()],
            if c == rat(m.rank() as i64, 1) {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("rank {}, c = {c}", m.rank()))
            },
        ),
        None => row(
            "invariants",
            "Lengths / Ranks / Central charges",
            [ABSENT.into(), absent_lattice(), c.to_string()],
            Verdict::Info,
        ),
    });

    let pair = |key, title, l: Option<bool>, s: bool| match l {
        Some(l) => row(
            key,
            title,
            [ABSENT.into(), yes_no(l), yes_no(s)],
            if l == s {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("lattice {l}, sectors {s}"))
            },
        ),
        None => row(key, title, [ABSENT.into(), absent_lattice(), yes_no(s)], Verdict::Info),
    };
    rows.push(pair(
        "even",
        "Even codes / Integral lattices / Meromorphic",
        middle.as_ref().map(|m| m.is_integral()),
        a.is_meromorphic(),
    ));
    rows.push(pair(
        "doubly_even",
        "Doubly even codes / Even lattices / Z-graded",
        middle.as_ref().map(|m| m.is_even()),
        a.is_z_graded(),
    ));

    let dual = a.dual();
    rows.push(match (&realization, &middle) {
        (Some(map), Some(m)) if m.is_integral() => {
            let ok = intermediate_to_sectors(map.lattice(), &m.dual()?)? == dual;
            row(
                "dual",
                "Dual codes / Dual lattices / Duals",
                [ABSENT.into(), "(L + A)°".into(), format!("A° = {dual}")],
                if ok {
                    Verdict::Pass
                } else {
                    Verdict::Fail("(L + A)°/L differs from A°".into())
                },
            )
        }
        _ => row(
            "dual",
            "Dual codes / Dual lattices / Duals",
            [ABSENT.into(), ABSENT.into(), format!("A° = {dual}")],
            Verdict::Info,
        ),
    });

    rows.push(pair(
        "self_dual",
        "Self-dual codes / Self-dual lattices / Self-dual",
        middle.as_ref().map(|m| m.is_self_dual()),
        a.is_self_dual() && algebra.mask().is_empty(),
    ));
    rows.push(row(
        "nondegenerate",
        "Nondegenerate",
        [ABSENT.into(), ABSENT.into(), yes_no(!algebra.is_degenerate())],
        Verdict::Info,
    ));
    rows.push(row(
        "ambient",
        "F2^n / L_Q / Complete extensions",
        [
            ABSENT.into(),
            realization
                .as_ref()
                .map(|map| format!("Q^{}", map.lattice().ambient_dim()))
                .unwrap_or_else(absent_lattice),
            format!("D, order {}", a.complete_extension().order()),
        ],
        Verdict::Info,
    ));

    let series = match &middle {
        Some(m) if m.is_positive_definite() => {
            let theta = m.theta_series(&options.order)?;
            let chi = a.character(&character_order(m.rank(), &options.order))?;
            let expected = character_from_theta(&theta, m.rank())?;
            let verdict = if expected == chi {
                Verdict::Pass
            } else {
                Verdict::Fail("character differs from theta(L + A)/eta^rank".into())
            };
            row(
                "series",
                "W(q) / Theta(q) / chi(q)",
                [ABSENT.into(), series_cell(&Some(theta), ""), series_cell(&Some(chi), "")],
                verdict,
            )
        }
        _ => row(
            "series",
            "W(q) / Theta(q) / chi(q)",
            [ABSENT.into(), ABSENT.into(), ABSENT.into()],
            Verdict::NotApplicable("characters need a positive definite lattice realization".into()),
        ),
    };
    rows.push(series);

    Ok(CorrespondenceReport { rows })
}
