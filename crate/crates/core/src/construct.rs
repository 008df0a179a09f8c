//! The generator pairs: generic n = 9, 10; the five hard-coded small cases; and SL_11.
//!
//! Matrices are transcribed once as text tables of symbolic entries and
//! instantiated at build time. Entry tokens:
//!
//! | token  | meaning                      |
//! |--------|------------------------------|
//! | `0`, `1`, `-1` | integers              |
//! | `aK`   | α_K                          |
//! | `aK/`  | α_K · α_last⁻¹               |
//! | `/`    | α_last⁻¹                     |
//! | `dK`, `-dK` | ±δ_K                    |
//! | `e`    | η, a generator of GF(4)*     |

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::arith::{factor, prime_power_decompose, Factorization, Natural};
use crate::error::{Error, Result};
use crate::ff::{element_of_order, embed, make_field, Embedding, FieldElem, GaloisField};
use crate::matrix::{GenWord, Mat};
use crate::poly::{extract_alphas, minimal_polynomial, read_l_coeffs, Poly};
use crate::scalar::Field;
use crate::{GfMat, GfPoly};

const X9: [&str; 9] = [
    "-1 0 0 0 0 0 a5/ 0 a5",
    "0 -1 0 0 0 0 a4/ 0 a4",
    "0 0 0 -1 0 0 a3/ 0 a6",
    "0 0 -1 0 0 0 a6/ 0 a3",
    "0 0 0 0 -1 0 a2/ 0 a2",
    "0 0 0 0 0 0 a1/ -1 a7",
    "0 0 0 0 0 0 0 0 a8",
    "0 0 0 0 0 -1 a7/ 0 a1",
    "0 0 0 0 0 0 / 0 0",
];

const Y9: [&str; 9] = [
    "0 0 1 0 0 0 0 0 0",
    "1 0 0 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0 0",
    "0 0 0 0 0 1 0 0 0",
    "0 0 0 1 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0",
    "0 0 0 0 0 0 0 0 1",
    "0 0 0 0 0 0 1 0 0",
    "0 0 0 0 0 0 0 1 0",
];

/// Displayed product x_9·y_9, kept for the transcription cross-check.
pub const Z9_DISPLAYED: [&str; 9] = [
    "0 0 -1 0 0 0 0 a5 a5/",
    "-1 0 0 0 0 0 0 a4 a4/",
    "0 0 0 0 0 -1 0 a6 a3/",
    "0 -1 0 0 0 0 0 a3 a6/",
    "0 0 0 -1 0 0 0 a2 a2/",
    "0 0 0 0 0 0 -1 a7 a1/",
    "0 0 0 0 0 0 0 a8 0",
    "0 0 0 0 -1 0 0 a1 a7/",
    "0 0 0 0 0 0 0 0 /",
];

const X10: [&str; 10] = [
    "0 0 0 -1 0 0 0 a2/ 0 a3",
    "0 0 0 0 0 -1 0 a4/ 0 a7",
    "0 0 -1 0 0 0 0 a5/ 0 a5",
    "-1 0 0 0 0 0 0 a3/ 0 a2",
    "0 0 0 0 0 0 0 a1/ -1 a8",
    "0 -1 0 0 0 0 0 a7/ 0 a4",
    "0 0 0 0 0 0 -1 a6/ 0 a6",
    "0 0 0 0 0 0 0 0 0 a9",
    "0 0 0 0 -1 0 0 a8/ 0 a1",
    "0 0 0 0 0 0 0 / 0 0",
];

const Y10: [&str; 10] = [
    "1 0 0 0 0 0 0 0 0 0",
    "0 0 1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 1 0 0 0",
    "0 0 0 0 0 1 0 0 0 0",
    "0 0 0 1 0 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0 0",
    "0 1 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 1",
    "0 0 0 0 0 0 0 1 0 0",
    "0 0 0 0 0 0 0 0 1 0",
];

/// Displayed product x_10·y_10.
pub const Z10_DISPLAYED: [&str; 10] = [
    "0 0 0 0 0 -1 0 0 a3 a2/",
    "0 0 0 0 -1 0 0 0 a7 a4/",
    "0 0 0 0 0 0 -1 0 a5 a5/",
    "-1 0 0 0 0 0 0 0 a2 a3/",
    "0 0 0 0 0 0 0 -1 a8 a1/",
    "0 0 -1 0 0 0 0 0 a4 a7/",
    "0 -1 0 0 0 0 0 0 a6 a6/",
    "0 0 0 0 0 0 0 0 a9 0",
    "0 0 0 -1 0 0 0 0 a1 a8/",
    "0 0 0 0 0 0 0 0 0 /",
];

const X11: [&str; 11] = [
    "0 0 0 0 0 0 0 0 0 0 1",
    "0 0 0 0 0 0 0 0 0 1 0",
    "0 0 0 0 0 0 0 0 1 0 0",
    "0 0 0 0 0 0 0 1 0 0 0",
    "0 0 0 0 0 0 1 0 0 0 0",
    "0 0 0 0 0 -1 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0 0 0",
    "0 0 0 1 0 0 0 0 0 0 0",
    "0 0 1 0 0 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0 0 0 0",
    "1 0 0 0 0 0 0 0 0 0 0",
];

const Y11: [&str; 11] = [
    "-1 -1 0 0 0 0 0 0 0 0 d1",
    "1 0 0 0 0 0 0 0 0 0 d2",
    "0 0 -1 -1 0 0 0 0 0 0 d3",
    "0 0 1 0 0 0 0 0 0 0 d4",
    "0 0 0 0 -1 -1 0 0 0 0 d5",
    "0 0 0 0 1 0 0 0 0 0 d6",
    "0 0 0 0 0 0 -1 -1 0 0 d7",
    "0 0 0 0 0 0 1 0 0 0 d8",
    "0 0 0 0 0 0 0 0 -1 -1 d9",
    "0 0 0 0 0 0 0 0 1 0 d10",
    "0 0 0 0 0 0 0 0 0 0 1",
];

/// Displayed product x_11·y_11.
pub const Z11_DISPLAYED: [&str; 11] = [
    "0 0 0 0 0 0 0 0 0 0 1",
    "0 0 0 0 0 0 0 0 1 0 d10",
    "0 0 0 0 0 0 0 0 -1 -1 d9",
    "0 0 0 0 0 0 1 0 0 0 d8",
    "0 0 0 0 0 0 -1 -1 0 0 d7",
    "0 0 0 0 -1 0 0 0 0 0 -d6",
    "0 0 0 0 -1 -1 0 0 0 0 d5",
    "0 0 1 0 0 0 0 0 0 0 d4",
    "0 0 -1 -1 0 0 0 0 0 0 d3",
    "1 0 0 0 0 0 0 0 0 0 d2",
    "-1 -1 0 0 0 0 0 0 0 0 d1",
];

/// One of the five hard-coded small cases.
pub struct SpecialCase {
    pub n: u32,
    pub q: u64,
    pub x: &'static [&'static str],
    pub y: &'static [&'static str],
    /// Words with the order reported for them, the product `xy` first.
    pub witnesses: &'static [(&'static str, u64)],
    /// Two primes whose product divides no maximal subgroup order (cited, not checked).
    pub excluded_divisor: (u64, u64),
}

pub const SPECIAL_CASES: [SpecialCase; 5] = [
    SpecialCase {
        n: 9,
        q: 2,
        x: &[
            "1 0 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0",
            "0 1 0 0 0 0 0 0 0",
            "0 0 0 0 1 0 0 0 0",
            "0 0 0 1 0 0 0 0 0",
            "0 0 0 0 0 1 1 0 1",
            "0 0 0 0 0 1 0 1 1",
            "0 0 0 0 0 0 1 1 1",
            "0 0 0 0 0 1 1 1 0",
        ],
        y: &[
            "0 1 0 0 0 0 0 0 0",
            "1 1 0 0 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0",
            "0 0 1 1 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0",
            "0 0 0 0 1 1 0 0 0",
            "0 0 0 0 0 0 0 0 1",
            "0 0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 0 1 0",
        ],
        witnesses: &[("xy", 73), ("xy(xY)^2", 381)],
        excluded_divisor: (73, 127),
    },
    SpecialCase {
        n: 9,
        q: 4,
        x: &[
            "0 1 0 0 0 0 0 0 0",
            "1 0 0 0 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0",
            "0 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 0 1 0 0",
            "0 0 0 0 0 1 0 0 0",
            "0 0 0 0 0 0 0 1 e",
            "0 0 0 0 0 0 0 0 1",
        ],
        y: &[
            "1 0 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0",
            "0 1 1 0 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0",
            "0 0 0 1 0 0 0 0 0",
            "0 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 0 1 1 1",
            "0 0 0 0 0 0 1 1 0",
            "0 0 0 0 0 0 0 1 0",
        ],
        witnesses: &[
            ("xy", 81915),
            ("(xY)^2(xy)^3xY(xy)^2xY(xy)^2xYxy", 29127),
        ],
        excluded_divisor: (43, 73),
    },
    SpecialCase {
        n: 10,
        q: 2,
        x: &[
            "0 1 0 0 0 0 0 0 0 0",
            "1 0 0 0 0 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0 0",
            "0 0 0 0 1 0 0 0 0 0",
            "0 0 0 0 0 0 1 1 0 1",
            "0 0 0 0 0 0 1 0 1 1",
            "0 0 0 0 0 0 0 1 1 1",
            "0 0 0 0 0 0 1 1 1 0",
        ],
        y: &[
            "1 0 0 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0 0",
            "0 1 1 0 0 0 0 0 0 0",
            "0 0 0 0 1 0 0 0 0 0",
            "0 0 0 1 1 0 0 0 0 0",
            "0 0 0 0 0 0 1 0 0 0",
            "0 0 0 0 0 1 1 0 0 0",
            "0 0 0 0 0 0 0 0 0 1",
            "0 0 0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 0 0 1 0",
        ],
        witnesses: &[("xy", 1023), ("xy(xY)^2", 73)],
        excluded_divisor: (11, 73),
    },
    SpecialCase {
        n: 10,
        q: 3,
        x: &[
            "0 1 0 0 0 0 0 0 0 0",
            "1 0 0 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0 0",
            "0 0 0 0 1 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 1 0 0 0",
            "0 0 0 0 0 0 0 0 -1 1",
            "0 0 0 0 0 0 0 0 0 1",
        ],
        y: &[
            "1 0 0 0 0 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0 0",
            "0 1 0 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0 0",
            "0 0 0 0 0 0 1 0 0 0",
            "0 0 0 0 1 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 0 0 0 1 1",
            "0 0 0 0 0 0 0 1 0 -1",
            "0 0 0 0 0 0 0 0 1 0",
        ],
        witnesses: &[("xy", 7381), ("(xy)^2xY(xy)^2xYxyxYxy", 19682)],
        excluded_divisor: (61, 757),
    },
    SpecialCase {
        n: 10,
        q: 4,
        x: &[
            "1 0 0 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0 0",
            "0 1 0 0 0 0 0 0 0 0",
            "0 0 0 0 1 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 1 0 0 0",
            "0 0 0 0 0 0 0 0 1 e",
            "0 0 0 0 0 0 0 0 0 1",
        ],
        y: &[
            "0 1 0 0 0 0 0 0 0 0",
            "1 1 0 0 0 0 0 0 0 0",
            "0 0 0 1 0 0 0 0 0 0",
            "0 0 1 1 0 0 0 0 0 0",
            "0 0 0 0 0 0 1 0 0 0",
            "0 0 0 0 1 0 0 0 0 0",
            "0 0 0 0 0 1 0 0 0 0",
            "0 0 0 0 0 0 0 1 1 1",
            "0 0 0 0 0 0 0 1 1 0",
            "0 0 0 0 0 0 0 0 1 0",
        ],
        witnesses: &[("xy", 4161), ("(xY)^3xy(xY)^6", 69905)],
        excluded_divisor: (41, 73),
    },
];

/// Which construction produced a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionTag {
    Generic9,
    Generic10,
    Special,
    Sl11,
}

impl ConstructionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionTag::Generic9 => "generic9",
            ConstructionTag::Generic10 => "generic10",
            ConstructionTag::Special => "special",
            ConstructionTag::Sl11 => "sl11",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "generic9" => ConstructionTag::Generic9,
            "generic10" => ConstructionTag::Generic10,
            "special" => ConstructionTag::Special,
            "sl11" => ConstructionTag::Sl11,
            _ => return None,
        })
    }
}

/// A witness word together with its reported order.
#[derive(Clone, Debug)]
pub struct Witness {
    pub word: GenWord,
    pub claimed_order: Natural,
}

#[derive(Clone, Debug)]
pub enum PairMetadata {
    Generic {
        big: GaloisField,
        omega: FieldElem,
        /// The minimal polynomial `f_n` of ω over GF(q).
        min_poly: GfPoly,
        /// α_1 … α_{n−1}.
        alphas: Vec<FieldElem>,
    },
    Special {
        witnesses: Vec<Witness>,
        excluded_divisor: (u64, u64),
    },
    Sl11 {
        big: GaloisField,
        omega: FieldElem,
        l_poly: GfPoly,
        /// `[a, b, c, d, e, f, g, h, k, m]` read off `l(t)`.
        l_coeffs: [FieldElem; 10],
        /// δ_1 … δ_10.
        deltas: [FieldElem; 10],
    },
}

/// An order-2 / order-3 pair with its product.
#[derive(Clone, Debug)]
pub struct GenPair {
    pub n: u32,
    pub q: u64,
    pub field: GaloisField,
    pub x: GfMat,
    pub y: GfMat,
    pub z: GfMat,
    pub tag: ConstructionTag,
    pub metadata: PairMetadata,
    pub q_order: Natural,
    pub q_factors: Factorization,
}

impl GenPair {
    /// Characteristic polynomial `z` is expected to have, from the construction data.
    pub fn expected_char_poly(&self) -> Option<GfPoly> {
        match &self.metadata {
            PairMetadata::Generic { min_poly, alphas, .. } => {
                let last_inv = self.field.inv(alphas.last()?)?;
                Some(Poly::linear(&self.field, &last_inv).mul(min_poly))
            }
            PairMetadata::Sl11 { l_poly, .. } => Some(l_poly.clone()),
            PairMetadata::Special { .. } => None,
        }
    }
}

/// The order `Q` an element of the pair's product is meant to have.
pub fn q_value(n: u32, q: u64) -> Result<Natural> {
    prime_power_decompose(q)?;
    let qn = Natural::from(q);
    match n {
        9 | 10 => {
            let full = qn.pow(n - 1) - 1u32;
            Ok(if q == 3 || q == 7 { full / 2u32 } else { full })
        }
        11 => Ok((qn.pow(11) - 1u32) / (qn - 1u32)),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Small field GF(q), the extension GF(q^d) and the embedding between them.
pub struct FieldSetup {
    pub small: GaloisField,
    pub big: GaloisField,
    pub embedding: Embedding,
}

pub fn field_setup(q: u64, extension_degree: usize) -> Result<FieldSetup> {
    let (p, m) = prime_power_decompose(q)?;
    let small = make_field(&p, m as usize)?;
    let big = make_field(&p, m as usize * extension_degree)?;
    let embedding = embed(&small, &big)?;
    Ok(FieldSetup {
        small,
        big,
        embedding,
    })
}

/// Symbolic values available while instantiating a table.
#[derive(Default)]
struct Symbols<'a> {
    alphas: &'a [FieldElem],
    deltas: &'a [FieldElem],
    eta: Option<FieldElem>,
}

fn instantiate(field: &GaloisField, table: &[&str], sym: &Symbols<'_>) -> Result<GfMat> {
    let bad = |tok: &str| Error::ConstructionCheck(format!("unknown table entry {tok:?}"));
    let index = |s: &str, tok: &str| s.parse::<usize>().map_err(|_| bad(tok));
    let alpha = |i: usize, tok: &str| sym.alphas.get(i.wrapping_sub(1)).copied().ok_or_else(|| bad(tok));
    let last_inv = || {
        sym.alphas
            .last()
            .and_then(|a| field.inv(a))
            .ok_or_else(|| bad("/"))
    };
    let rows = table
        .iter()
        .map(|row| {
            row.split_whitespace()
                .map(|tok| -> Result<FieldElem> {
                    Ok(match tok {
                        "/" => last_inv()?,
                        "e" => sym.eta.ok_or_else(|| bad(tok))?,
                        _ if tok.starts_with('a') && tok.ends_with('/') => {
                            let a = alpha(index(&tok[1..tok.len() - 1], tok)?, tok)?;
                            field.mul(&a, &last_inv()?)
                        }
                        _ if tok.starts_with('a') => alpha(index(&tok[1..], tok)?, tok)?,
                        _ if tok.starts_with("-d") || tok.starts_with('d') => {
                            let neg = tok.starts_with('-');
                            let i = index(tok.trim_start_matches('-').trim_start_matches('d'), tok)?;
                            let d = *sym.deltas.get(i.wrapping_sub(1)).ok_or_else(|| bad(tok))?;
                            if neg {
                                field.neg(&d)
                            } else {
                                d
                            }
                        }
                        _ => field.from_i64(tok.parse::<i64>().map_err(|_| bad(tok))?),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(field, rows)
}

/// Generic construction for n = 9 (q ≠ 2, 4) and n = 10 (q > 4).
pub fn build_generic(n: u32, q: u64) -> Result<GenPair> {
    if n != 9 && n != 10 {
        return Err(Error::UnsupportedN(n));
    }
    prime_power_decompose(q)?;
    let excluded = match n {
        9 => q == 2 || q == 4,
        _ => q <= 4,
    };
    if excluded {
        return Err(Error::OutOfRange { n, q });
    }
    instantiate_generic(n, q)
}

/// The generic matrices at any prime power `q`, including the excluded values.
pub fn instantiate_generic(n: u32, q: u64) -> Result<GenPair> {
    let tag = match n {
        9 => ConstructionTag::Generic9,
        10 => ConstructionTag::Generic10,
        _ => return Err(Error::UnsupportedN(n)),
    };
    let q_order = q_value(n, q)?;
    let q_factors = factor(&q_order);
    let setup = field_setup(q, n as usize - 1)?;
    let omega = element_of_order(&setup.big, &q_order, &q_factors)?;
    let min_poly = minimal_polynomial(&omega, &setup.embedding)?;
    let alphas = extract_alphas(&min_poly)?;
    let field = setup.small;
    let (x, y) = generic_matrices(n, &field, &alphas)?;
    let z = x.mul(&y)?;
    Ok(GenPair {
        n,
        q,
        field,
        x,
        y,
        z,
        tag,
        metadata: PairMetadata::Generic {
            big: setup.big,
            omega,
            min_poly,
            alphas,
        },
        q_order,
        q_factors,
    })
}

/// `x_n`, `y_n` filled in from α_1 … α_{n−1}.
pub fn generic_matrices(n: u32, field: &GaloisField, alphas: &[FieldElem]) -> Result<(GfMat, GfMat)> {
    let (xt, yt): (&[&str], &[&str]) = match n {
        9 => (&X9, &Y9),
        10 => (&X10, &Y10),
        _ => return Err(Error::UnsupportedN(n)),
    };
    if alphas.len() != n as usize - 1 {
        return Err(Error::WrongShape(format!("expected {} alphas", n - 1)));
    }
    let sym = Symbols {
        alphas,
        ..Default::default()
    };
    Ok((instantiate(field, xt, &sym)?, instantiate(field, yt, &sym)?))
}

/// The hard-coded pair over `field` (η is the first element of order 3 when q = 4).
pub fn special_matrices(case: &SpecialCase, field: &GaloisField) -> Result<(GfMat, GfMat)> {
    let eta = if case.q == 4 {
        let three = Natural::from(3u32);
        Some(element_of_order(field, &three, &factor(&three))?)
    } else {
        None
    };
    let sym = Symbols {
        eta,
        ..Default::default()
    };
    Ok((instantiate(field, case.x, &sym)?, instantiate(field, case.y, &sym)?))
}

pub fn special_case(n: u32, q: u64) -> Option<&'static SpecialCase> {
    SPECIAL_CASES.iter().find(|c| c.n == n && c.q == q)
}

/// The hard-coded pairs for (9,2), (9,4), (10,2), (10,3), (10,4).
pub fn build_special(n: u32, q: u64) -> Result<GenPair> {
    let case = special_case(n, q).ok_or(Error::NotSpecialCase { n, q })?;
    let setup = field_setup(q, 1)?;
    let field = setup.small;
    let (x, y) = special_matrices(case, &field)?;
    let z = x.mul(&y)?;
    let witnesses = case
        .witnesses
        .iter()
        .map(|(w, ord)| {
            Ok(Witness {
                word: w.parse()?,
                claimed_order: Natural::from(*ord),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let q_order = q_value(n, q)?;
    let q_factors = factor(&q_order);
    Ok(GenPair {
        n,
        q,
        field,
        x,
        y,
        z,
        tag: ConstructionTag::Special,
        metadata: PairMetadata::Special {
            witnesses,
            excluded_divisor: case.excluded_divisor,
        },
        q_order,
        q_factors,
    })
}

/// δ_1 … δ_10 from the coefficients `[a, b, c, d, e, f, g, h, k, m]` of `l(t)`.
pub fn deltas_from_l<F: Field>(field: &F, named: &[F::Elem; 10]) -> [F::Elem; 10] {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const FF: usize = 5;
    const G: usize = 6;
    const H: usize = 7;
    const K: usize = 8;
    const M: usize = 9;
    let rules: [(i64, &[(i64, usize)]); 10] = [
        (0, &[(1, A)]),
        (1, &[(-1, M)]),
        (-1, &[(-2, A), (-1, C)]),
        (-2, &[(1, A), (2, M), (-1, K), (1, H)]),
        (3, &[(1, A), (-1, M), (1, C), (1, B), (1, E)]),
        (1, &[(-1, A), (-1, C), (1, G), (-1, M), (1, K), (-1, H), (-1, FF)]),
        (3, &[(-1, M), (1, K), (-1, H), (1, G), (1, A), (1, B), (1, D)]),
        (1, &[(-1, A), (1, K), (-1, M), (-1, B), (-1, D)]),
        (-4, &[(1, M), (-1, B), (-1, K)]),
        (1, &[(1, B)]),
    ];
    rules.map(|(c, terms)| linear_combination(field, c, terms, named))
}

/// The closed-form characteristic polynomial of `z_11` as a function of δ.
pub fn symbolic_fz11<F: Field>(field: &F, deltas: &[F::Elem; 10]) -> Poly<F> {
    // coefficient of t^i for i = 0..=10, terms index δ_1..δ_10 as 0..9
    let rules: [(i64, &[(i64, usize)]); 11] = [
        (-1, &[]),
        (1, &[(-1, 1)]),
        (2, &[(1, 1), (1, 8), (1, 9)]),
        (-2, &[(-1, 0), (1, 1), (1, 3), (-1, 8), (-1, 9)]),
        (0, &[(1, 0), (-1, 1), (-1, 3), (-1, 6), (-1, 7), (-1, 8), (-1, 9)]),
        (1, &[(1, 0), (1, 2), (-1, 5), (1, 6), (1, 7), (1, 8), (1, 9)]),
        (0, &[(-1, 0), (1, 1), (-1, 2), (-1, 4), (1, 9)]),
        (-1, &[(-1, 0), (-1, 7), (-1, 8), (-2, 9)]),
        (1, &[(2, 0), (1, 2)]),
        (-1, &[(1, 9)]),
        (0, &[(-1, 0)]),
    ];
    let mut coeffs: Vec<F::Elem> = rules
        .iter()
        .map(|(c, terms)| linear_combination(field, *c, terms, deltas))
        .collect();
    coeffs.push(field.one());
    Poly::new(field, coeffs)
}

fn linear_combination<F: Field>(
    field: &F,
    constant: i64,
    terms: &[(i64, usize)],
    vars: &[F::Elem],
) -> F::Elem {
    terms.iter().fold(field.from_i64(constant), |acc, &(c, i)| {
        field.add(&acc, &field.mul(&field.from_i64(c), &vars[i]))
    })
}

/// x_11 for the given field.
pub fn x11(field: &GaloisField) -> Result<GfMat> {
    instantiate(field, &X11, &Symbols::default())
}

/// y_11 with an arbitrary δ vector.
pub fn y11(field: &GaloisField, deltas: &[FieldElem; 10]) -> Result<GfMat> {
    instantiate(
        field,
        &Y11,
        &Symbols {
            deltas,
            ..Default::default()
        },
    )
}

/// SL_11(q): δ chosen so that `z_11` has characteristic polynomial `l(t)`.
pub fn build_sl11(q: u64) -> Result<GenPair> {
    let q_order = q_value(11, q)?;
    let q_factors = factor(&q_order);
    let setup = field_setup(q, 11)?;
    let omega = element_of_order(&setup.big, &q_order, &q_factors)?;
    let l_poly = minimal_polynomial(&omega, &setup.embedding)?;
    let l_coeffs = read_l_coeffs(&l_poly)?;
    let field = setup.small;
    let deltas = deltas_from_l(&field, &l_coeffs);
    let x = x11(&field)?;
    let y = y11(&field, &deltas)?;
    let z = x.mul(&y)?;
    Ok(GenPair {
        n: 11,
        q,
        field,
        x,
        y,
        z,
        tag: ConstructionTag::Sl11,
        metadata: PairMetadata::Sl11 {
            big: setup.big,
            omega,
            l_poly,
            l_coeffs,
            deltas,
        },
        q_order,
        q_factors,
    })
}

/// Dispatches to the right construction for `(n, q)`.
pub fn build(n: u32, q: u64) -> Result<GenPair> {
    prime_power_decompose(q)?;
    match n {
        11 => build_sl11(q),
        9 | 10 if special_case(n, q).is_some() => build_special(n, q),
        9 | 10 => build_generic(n, q),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// The displayed `z` table for a generic or SL_11 pair, instantiated with its data.
pub fn displayed_z(pair: &GenPair) -> Result<Option<GfMat>> {
    let field = &pair.field;
    match (&pair.metadata, pair.n) {
        (PairMetadata::Generic { alphas, .. }, 9) => {
            instantiate(field, &Z9_DISPLAYED, &Symbols { alphas, ..Default::default() }).map(Some)
        }
        (PairMetadata::Generic { alphas, .. }, _) => {
            instantiate(field, &Z10_DISPLAYED, &Symbols { alphas, ..Default::default() }).map(Some)
        }
        (PairMetadata::Sl11 { deltas, .. }, _) => {
            instantiate(field, &Z11_DISPLAYED, &Symbols { deltas, ..Default::default() }).map(Some)
        }
        _ => Ok(None),
    }
}

/// `gcd(6, Q) = 1`.
pub fn coprime_to_six(q_order: &Natural) -> bool {
    q_order.gcd(&Natural::from(6u32)).is_one()
}

/// Small convenience for callers that need `Q` as a machine integer.
pub fn q_value_u64(n: u32, q: u64) -> Option<u64> {
    q_value(n, q).ok()?.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::multiplicative_order;
    use crate::poly::is_irreducible;
    use crate::scalar::FiniteField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn check_pair_basics(pair: &GenPair) {
        let one = pair.field.one();
        assert_eq!(pair.x.element_order().unwrap(), nat(2), "ord x");
        assert_eq!(pair.y.element_order().unwrap(), nat(3), "ord y");
        assert_eq!(pair.x.determinant(), one);
        assert_eq!(pair.y.determinant(), one);
        assert_eq!(pair.z, pair.x.mul(&pair.y).unwrap());
    }

    #[test]
    fn q_values() {
        assert_eq!(q_value(9, 5).unwrap(), nat(390624));
        assert_eq!(q_value(9, 3).unwrap(), nat(3280));
        assert_eq!(q_value(11, 2).unwrap(), nat(2047));
        assert_eq!(q_value(11, 3).unwrap(), nat(88573));
        assert!(matches!(q_value(12, 2), Err(Error::UnsupportedN(12))));
        assert!(matches!(q_value(9, 6), Err(Error::NotPrimePower(_))));
    }

    #[test]
    fn generic_pairs_match_their_displays() {
        for (n, q) in [(9, 3), (9, 5), (9, 7), (10, 5), (10, 7)] {
            let pair = build_generic(n, q).unwrap();
            check_pair_basics(&pair);
            assert_eq!(displayed_z(&pair).unwrap().unwrap(), pair.z, "({n},{q})");
            assert_eq!(pair.z.char_poly(), pair.expected_char_poly().unwrap());
            assert_eq!(pair.z.element_order().unwrap(), pair.q_order, "({n},{q})");
            let PairMetadata::Generic { min_poly, .. } = &pair.metadata else {
                panic!()
            };
            assert!(is_irreducible(min_poly).unwrap());
        }
    }

    #[test]
    fn generic_range_checks() {
        assert!(matches!(build_generic(10, 3), Err(Error::OutOfRange { n: 10, q: 3 })));
        assert!(matches!(build_generic(9, 4), Err(Error::OutOfRange { .. })));
        assert!(matches!(build_special(9, 3), Err(Error::NotSpecialCase { .. })));
        assert!(matches!(build(12, 5), Err(Error::UnsupportedN(12))));
        let pair = build_generic(10, 5).unwrap();
        assert_eq!(pair.z.element_order().unwrap(), nat(1953124));
    }

    #[test]
    fn last_alpha_remarks() {
        for (n, q) in [(9, 3), (9, 5), (9, 7), (10, 7), (10, 8), (9, 9)] {
            let pair = build_generic(n, q).unwrap();
            let PairMetadata::Generic { alphas, .. } = &pair.metadata else {
                panic!()
            };
            let a = alphas.last().unwrap();
            let f = &pair.field;
            match q {
                3 => assert!(f.is_one(a)),
                7 => {
                    assert!(f.pow_u64(a, 3) == f.one() && !f.is_one(a));
                }
                _ => {
                    let bound = factor(&nat(q - 1));
                    assert_eq!(multiplicative_order(f, a, &bound).unwrap(), nat(q - 1));
                }
            }
        }
    }

    #[test]
    fn special_case_witnesses() {
        for case in &SPECIAL_CASES {
            let pair = build_special(case.n, case.q).unwrap();
            check_pair_basics(&pair);
            let PairMetadata::Special { witnesses, .. } = &pair.metadata else {
                panic!()
            };
            assert_eq!(witnesses[0].word.to_string(), "xy");
            for w in witnesses {
                let m = w.word.eval(&pair.x, &pair.y).unwrap();
                assert_eq!(
                    m.element_order().unwrap(),
                    w.claimed_order,
                    "({},{}) {}",
                    case.n,
                    case.q,
                    w.word
                );
            }
        }
    }

    #[test]
    fn sl11_small_fields() {
        for q in [2, 3] {
            let pair = build_sl11(q).unwrap();
            check_pair_basics(&pair);
            let PairMetadata::Sl11 { l_poly, deltas, .. } = &pair.metadata else {
                panic!()
            };
            let cp = pair.z.char_poly();
            assert_eq!(&cp, l_poly);
            assert_eq!(symbolic_fz11(&pair.field, deltas), cp);
            assert_eq!(displayed_z(&pair).unwrap().unwrap(), pair.z);
            assert_eq!(pair.z.element_order().unwrap(), pair.q_order);
            assert!(coprime_to_six(&pair.q_order));
            assert_eq!(l_poly.coeff(0), pair.field.from_i64(-1));
        }
    }

    #[test]
    fn symbolic_fz11_matches_char_poly() {
        let f = GaloisField::prime(7).unwrap();
        let x = x11(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let d: [FieldElem; 10] = std::array::from_fn(|_| f.random(&mut rng));
            let z = x.mul(&y11(&f, &d).unwrap()).unwrap();
            assert_eq!(symbolic_fz11(&f, &d), z.char_poly());
        }
    }

    #[test]
    fn symbolic_fz11_at_zero() {
        for p in [5, 7, 11] {
            let f = GaloisField::prime(p).unwrap();
            let zero = [f.zero(); 10];
            let expect = Poly::new(
                &f,
                [-1, 1, 2, -2, 0, 1, 0, -1, 1, -1, 0, 1]
                    .iter()
                    .map(|&c| f.from_i64(c))
                    .collect(),
            );
            assert_eq!(symbolic_fz11(&f, &zero), expect);
            let z = x11(&f).unwrap().mul(&y11(&f, &zero).unwrap()).unwrap();
            assert_eq!(z.char_poly(), expect);
        }
        let f = GaloisField::prime(5).unwrap();
        let mut d = [f.zero(); 10];
        d[1] = f.one();
        assert!(f.is_zero(&symbolic_fz11(&f, &d).coeff(1)));
    }

    #[test]
    fn y11_has_order_three_for_any_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3, 4, 5, 7, 9] {
            let setup = field_setup(q, 1).unwrap();
            let f = setup.small;
            for _ in 0..100 / 6 + 1 {
                let d: [FieldElem; 10] = std::array::from_fn(|_| f.random(&mut rng));
                let y = y11(&f, &d).unwrap();
                assert!(!y.is_identity());
                assert!(y.pow_u64(3).is_identity());
            }
        }
    }

    #[test]
    fn deltas_invert_the_char_poly() {
        let f = GaloisField::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let named: [FieldElem; 10] = std::array::from_fn(|_| f.random(&mut rng));
            let d = deltas_from_l(&f, &named);
            let l = crate::poly::expand_l_poly(&f, &named);
            assert_eq!(symbolic_fz11(&f, &d), l);
        }
    }
}
