//! Bundled codes and lattices.

use crate::codes::BinaryCode;
use crate::io::{parse_code, parse_lattice};
use crate::lattices::RationalLattice;

pub const NAMES: [&str; 6] = [
    "hamming_8_4.code",
    "golay_24_12.code",
    "a1.gram",
    "d4.gram",
    "e8.gram",
    "leech.gram",
];

const HAMMING_8_4: &str = include_str!("../../../data/hamming_8_4.code");
const GOLAY_24_12: &str = include_str!("../../../data/golay_24_12.code");
const A1: &str = include_str!("../../../data/a1.gram");
const D4: &str = include_str!("../../../data/d4.gram");
const E8: &str = include_str!("../../../data/e8.gram");
const LEECH: &str = include_str!("../../../data/leech.gram");

/// Text of a bundled file; `z<n>.gram` is generated on demand.
pub fn text(name: &str) -> Option<String> {
    let fixed = match name {
        "hamming_8_4.code" => HAMMING_8_4,
        "golay_24_12.code" => GOLAY_24_12,
        "a1.gram" => A1,
        "d4.gram" => D4,
        "e8.gram" => E8,
        "leech.gram" => LEECH,
        _ => {
            let n: usize = name.strip_prefix('z')?.strip_suffix(".gram")?.parse().ok()?;
            return Some(zn_text(n));
        }
    };
    Some(fixed.to_string())
}

fn zn_text(n: usize) -> String {
    let identity: String = (0..n)
        .map(|i| {
            let row: Vec<&str> = (0..n).map(|j| if i == j { "1" } else { "0" }).collect();
            row.join(" ") + "\n"
        })
        .collect();
    format!("lattice {n} {n}\n{identity}{identity}")
}

pub fn code(name: &str) -> Option<BinaryCode> {
    text(name).and_then(|t| parse_code(&t).ok())
}

pub fn lattice(name: &str) -> Option<RationalLattice> {
    text(name).and_then(|t| parse_lattice(&t).ok())
}

pub fn hamming_8_4() -> BinaryCode {
    parse_code(HAMMING_8_4).expect("bundled code")
}

pub fn golay_24_12() -> BinaryCode {
    parse_code(GOLAY_24_12).expect("bundled code")
}

pub fn a1() -> RationalLattice {
    parse_lattice(A1).expect("bundled lattice")
}

pub fn d4() -> RationalLattice {
    parse_lattice(D4).expect("bundled lattice")
}

pub fn e8() -> RationalLattice {
    parse_lattice(E8).expect("bundled lattice")
}

pub fn leech() -> RationalLattice {
    parse_lattice(LEECH).expect("bundled lattice")
}

/// Zⁿ with the identity form.
pub fn zn(n: usize) -> RationalLattice {
    parse_lattice(&zn_text(n)).expect("generated lattice")
}
