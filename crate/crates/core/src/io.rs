//! Plain-text formats with exact rationals.
//!
//! ```text
//! code n k            lattice m n            fqm r c=<rational>
//! <k rows of bits>    <m rows: form>         <orders>
//!                     <n rows: basis>        <q values>
//!                                            <r rows: B>
//!                                            sectors (a,…) (b,…)
//!                                            realize <lattice file>
//!                                            mask (a₁,…,a_r,b₁,…,b_r) …
//!
//! qseries order=<rational>
//! <exponent> <coefficient>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::codes::{BinaryCode, BitVector};
use crate::error::{Error, Result};
use crate::lattices::{discriminant_form, RationalLattice};
use crate::matrix::{Rat, RatMatrix};
use crate::qseries::QSeries;
use crate::sectors::{format_element, Element, FiniteQuadraticModule, SectorAlgebra, SectorSet};

/// The tier an input file belongs to, read from its header keyword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Code,
    Lattice,
    Sectors,
    Series,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            self.last = i + 1;
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, t));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let after = self.last;
        self.next_content().ok_or_else(|| Error::Parse {
            line: after + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_rational(token: &str) -> std::result::Result<Rat, String> {
    let (p, q) = match token.split_once('/') {
        Some((p, q)) => (p, q),
        None => (token, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| format!("malformed rational {token:?}"))?;
    let q: BigInt = q.parse().map_err(|_| format!("malformed rational {token:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {token:?}"));
    }
    Ok(Rat::new(p, q))
}

fn rationals(line: usize, text: &str, expected: usize) -> Result<Vec<Rat>> {
    let v = text
        .split_whitespace()
        .map(|t| parse_rational(t).map_err(|m| parse_err(line, m)))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != expected {
        return Err(parse_err(line, format!("expected {expected} entries, found {}", v.len())));
    }
    Ok(v)
}

fn header<'a>(line: usize, text: &'a str, keyword: &str, count: usize) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.first() != Some(&keyword) || parts.len() != count + 1 {
        return Err(parse_err(line, format!("expected header `{keyword}` with {count} fields")));
    }
    Ok(parts[1..].to_vec())
}

fn usize_field(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_err(line, format!("expected a nonnegative integer, found {s:?}")))
}

/// Header keyword of the first content line.
pub fn detect_kind(text: &str) -> Option<FileKind> {
    let (_, first) = Lines::new(text).next_content()?;
    match first.split_whitespace().next()? {
        "code" => Some(FileKind::Code),
        "lattice" => Some(FileKind::Lattice),
        "fqm" => Some(FileKind::Sectors),
        "qseries" => Some(FileKind::Series),
        _ => None,
    }
}

pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let mut lines = Lines::new(text);
    let (ln, h) = lines.expect("`code n k`")?;
    let f = header(ln, h, "code", 2)?;
    let n = usize_field(ln, f[0])?;
    let k = usize_field(ln, f[1])?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, t) = lines.expect("a codeword row")?;
        if t.len() != n {
            return Err(parse_err(ln, format!("row has {} symbols, expected {n}", t.chars().count())));
        }
        let v: BitVector = t.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
        rows.push(v);
    }
    if let Some((ln, _)) = lines.next_content() {
        return Err(parse_err(ln, "trailing content after the last row"));
    }
    BinaryCode::canonicalize(n, &rows)
}

pub fn format_code(code: &BinaryCode) -> String {
    let mut s = format!("code {} {}\n", code.length(), code.dimension());
    for g in code.generators() {
        let _ = writeln!(s, "{g}");
    }
    s
}

fn rows_text(m: &RatMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn parse_lattice(text: &str) -> Result<RationalLattice> {
    let mut lines = Lines::new(text);
    let (ln, h) = lines.expect("`lattice m n`")?;
    let f = header(ln, h, "lattice", 2)?;
    let m = usize_field(ln, f[0])?;
    let n = usize_field(ln, f[1])?;
    let mut read = |count: usize, what: &str| -> Result<Vec<Vec<Rat>>> {
        (0..count)
            .map(|_| {
                let (ln, t) = lines.expect(what)?;
                rationals(ln, t, m)
            })
            .collect()
    };
    let form = read(m, "a row of the ambient form")?;
    let basis = read(n, "a basis row")?;
    if let Some((ln, _)) = lines.next_content() {
        return Err(parse_err(ln, "trailing content after the last basis row"));
    }
    RationalLattice::new(RatMatrix::from_rows(m, &form), RatMatrix::from_rows(m, &basis))
}

pub fn format_lattice(lattice: &RationalLattice) -> String {
    format!(
        "lattice {} {}\n{}{}",
        lattice.ambient_dim(),
        lattice.rank(),
        rows_text(lattice.form()),
        rows_text(lattice.basis())
    )
}

fn parse_tuple(line: usize, token: &str) -> Result<Vec<i64>> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected a parenthesized tuple, found {token:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| parse_err(line, format!("malformed integer in {token:?}")))
        })
        .collect()
}

/// A sector-algebra file, with the realization path if one was named.
#[derive(Clone, Debug)]
pub struct SectorFile {
    pub algebra: SectorAlgebra,
    pub realize: Option<String>,
}

/// Parses the sector format. `resolve` loads the lattice named by a
/// `realize` line; the declared form must agree with its discriminant form.
pub fn parse_sectors(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Result<RationalLattice>,
) -> Result<SectorFile> {
    let mut lines = Lines::new(text);
    let (ln, h) = lines.expect("`fqm r c=<rational>`")?;
    let f = header(ln, h, "fqm", 2)?;
    let r = usize_field(ln, f[0])?;
    let c = f[1]
        .strip_prefix("c=")
        .ok_or_else(|| parse_err(ln, "expected `c=<rational>`"))
        .and_then(|t| parse_rational(t).map_err(|m| parse_err(ln, m)))?;
    let (ln, t) = lines.expect("the orders line")?;
    let orders: Vec<i64> = if r == 0 && t == "-" {
        Vec::new()
    } else {
        let v: Vec<i64> = t
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| parse_err(ln, format!("malformed order {x:?}"))))
            .collect::<Result<_>>()?;
        if v.len() != r {
            return Err(parse_err(ln, format!("expected {r} orders, found {}", v.len())));
        }
        v
    };
    let (ln, t) = lines.expect("the quadratic values line")?;
    let q_gen = if r == 0 && t == "-" { Vec::new() } else { rationals(ln, t, r)? };
    let mut b_rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (ln, t) = lines.expect("a row of the bilinear form")?;
        b_rows.push(rationals(ln, t, r)?);
    }
    let mut module = FiniteQuadraticModule::build(orders, q_gen, RatMatrix::from_rows(r, &b_rows), c)?;

    let mut generators: Vec<Element> = Vec::new();
    let mut mask: Vec<(Element, Element)> = Vec::new();
    let mut realize = None;
    while let Some((ln, t)) = lines.next_content() {
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match kw {
            "sectors" => {
                for tok in rest.split_whitespace() {
                    let g = parse_tuple(ln, tok)?;
                    if g.len() != r {
                        return Err(parse_err(ln, format!("sector {tok} does not have {r} coordinates")));
                    }
                    generators.push(g);
                }
            }
            "mask" => {
                for tok in rest.split_whitespace() {
                    let p = parse_tuple(ln, tok)?;
                    if p.len() != 2 * r {
                        return Err(parse_err(ln, format!("mask pair {tok} does not have {} coordinates", 2 * r)));
                    }
                    mask.push((p[..r].to_vec(), p[r..].to_vec()));
                }
            }
            "realize" => {
                let path = rest.trim();
                if path.is_empty() {
                    return Err(parse_err(ln, "`realize` needs a lattice file"));
                }
                let lattice = resolve(path)?;
                let (realized, _) = discriminant_form(&lattice)?;
                if realized != module {
                    return Err(Error::IllFormedQuadraticForm(format!(
                        "declared form does not match the discriminant form of {path}"
                    )));
                }
                module = realized;
                realize = Some(path.to_string());
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let module = Arc::new(module);
    let sectors = SectorSet::span(&module, &generators)?;
    Ok(SectorFile {
        algebra: SectorAlgebra::new(sectors, mask)?,
        realize,
    })
}

pub fn format_sectors(algebra: &SectorAlgebra, realize: Option<&str>) -> String {
    let sectors = algebra.sectors();
    let m = sectors.module();
    let r = m.rank();
    let mut s = format!("fqm {r} c={}\n", m.central_charge());
    let join = |v: Vec<String>| if v.is_empty() { "-".to_string() } else { v.join(" ") };
    let _ = writeln!(s, "{}", join(m.orders().iter().map(|d| d.to_string()).collect()));
    let _ = writeln!(s, "{}", join(m.q_gen().iter().map(|q| q.to_string()).collect()));
    s.push_str(&rows_text(m.b_gen()));
    let gens = sectors.generators();
    if !gens.is_empty() {
        let g: Vec<String> = gens.iter().map(|g| format_element(g)).collect();
        let _ = writeln!(s, "sectors {}", g.join(" "));
    }
    if let Some(path) = realize {
        let _ = writeln!(s, "realize {path}");
    }
    if !algebra.mask().is_empty() {
        let pairs: Vec<String> = algebra
            .mask()
            .iter()
            .map(|(a, b)| format_element(&[a.as_slice(), b.as_slice()].concat()))
            .collect();
        let _ = writeln!(s, "mask {}", pairs.join(" "));
    }
    s
}

pub fn parse_qseries(text: &str) -> Result<QSeries> {
    let mut lines = Lines::new(text);
    let (ln, h) = lines.expect("`qseries order=<rational>`")?;
    let f = header(ln, h, "qseries", 1)?;
    let order = f[0]
        .strip_prefix("order=")
        .ok_or_else(|| parse_err(ln, "expected `order=<rational>`"))
        .and_then(|t| parse_rational(t).map_err(|m| parse_err(ln, m)))?;
    let mut terms = Vec::new();
    let mut previous: Option<Rat> = None;
    while let Some((ln, t)) = lines.next_content() {
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_err(ln, "expected `<exponent> <coefficient>`"));
        }
        let e = parse_rational(parts[0]).map_err(|m| parse_err(ln, m))?;
        let c: BigInt = parts[1]
            .parse()
            .map_err(|_| parse_err(ln, format!("malformed coefficient {:?}", parts[1])))?;
        if previous.as_ref().is_some_and(|p| *p >= e) {
            return Err(parse_err(ln, "exponents must be strictly increasing"));
        }
        if e > order {
            return Err(parse_err(ln, format!("exponent {e} exceeds the order {order}")));
        }
        previous = Some(e.clone());
        terms.push((e, c));
    }
    Ok(QSeries::from_terms(terms, order))
}

pub fn format_qseries(series: &QSeries) -> String {
    let mut s = format!("qseries order={}\n", series.order());
    for (e, c) in series.terms() {
        let _ = writeln!(s, "{e} {c}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assets;
    use crate::matrix::rat;

    fn no_files(_: &str) -> Result<RationalLattice> {
        Err(Error::InvalidArgument("no files".into()))
    }

    #[test]
    fn assets_round_trip() {
        for name in assets::NAMES {
            let text = assets::text(name).unwrap();
            let again = match detect_kind(&text).unwrap() {
                FileKind::Code => format_code(&parse_code(&text).unwrap()),
                FileKind::Lattice => format_lattice(&parse_lattice(&text).unwrap()),
                _ => unreachable!(),
            };
            assert_eq!(again, text, "{name}");
        }
    }

    #[test]
    fn zero_denominator() {
        let err = parse_lattice("lattice 2 2\n1 0\n0 1/0\n1 0\n0 1\n").unwrap_err();
        assert_eq!(err, parse_err(3, "zero denominator in \"1/0\""));
        assert_eq!(err.name(), "ParseError");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_code("code 3 1\n10\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_code("code 3 2\n101\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_code("code 2 1\n1x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_lattice("lattice 1 1\n1 2\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_qseries("qseries 3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn lattice_rationals() {
        let text = "lattice 2 1\n1/2 0\n0 1/2\n1 1\n";
        let l = parse_lattice(text).unwrap();
        assert_eq!(l.gram()[(0, 0)], rat(1, 1));
        assert_eq!(format_lattice(&l), text);
    }

    #[test]
    fn sectors_round_trip() {
        let text = "fqm 1 c=1\n4\n1/8\n1/4\nsectors (2)\nmask (2,2)\n";
        let file = parse_sectors(text, &mut no_files).unwrap();
        assert_eq!(file.algebra.sectors().order(), 2);
        assert!(file.algebra.is_degenerate());
        assert_eq!(format_sectors(&file.algebra, None), text);
    }

    #[test]
    fn sectors_realized() {
        let text = "fqm 1 c=1\n2\n1/4\n1/2\nrealize a1.gram\n";
        let mut resolve = |name: &str| Ok(assets::lattice(name).unwrap());
        let file = parse_sectors(text, &mut resolve).unwrap();
        assert!(file.algebra.sectors().module().realization().is_some());
        assert_eq!(format_sectors(&file.algebra, file.realize.as_deref()), text);
        let wrong = "fqm 1 c=1\n2\n3/4\n1/2\nrealize a1.gram\n";
        assert_eq!(
            parse_sectors(wrong, &mut resolve).unwrap_err().name(),
            "IllFormedQuadraticForm"
        );
    }

    #[test]
    fn trivial_module() {
        let text = "fqm 0 c=8\n-\n-\n";
        let file = parse_sectors(text, &mut no_files).unwrap();
        assert_eq!(file.algebra.sectors().module().size(), 1);
        assert_eq!(format_sectors(&file.algebra, None), text);
    }

    #[test]
    fn qseries_round_trip() {
        let s = QSeries::from_terms([(rat(-1, 3), BigInt::from(1)), (rat(2, 3), BigInt::from(248))], rat(5, 3));
        let text = format_qseries(&s);
        assert_eq!(text, "qseries order=5/3\n-1/3 1\n2/3 248\n");
        assert_eq!(parse_qseries(&text).unwrap(), s);
    }
}
