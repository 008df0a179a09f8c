//! Certificates: assembly, JSON round trip, independent re-verification, and the
//! SL_11(q) maximal-subgroup order table.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_prime, prime_power_decompose, Natural};
use crate::construct::{
    build, coprime_to_six, deltas_from_l, generic_matrices, special_case, special_matrices,
    symbolic_fz11, x11, y11, ConstructionTag, GenPair, PairMetadata,
};
use crate::error::{Error, Result};
use crate::ff::{multiplicative_order, FieldElem, GaloisField};
use crate::matrix::{GenWord, Mat};
use crate::meataxe::{check_witness, is_irreducible_module_seeded, scan_lines, Side, Verdict};
use crate::poly::{expand_l_poly, is_irreducible, poly_from_alphas, Poly};
use crate::scalar::Field;
use crate::{GfMat, GfPoly};

pub const CERT_VERSION: &str = "1";

/// One order formula of a maximal subgroup class of SL_11(q); one instance per
/// subfield `q_0` for the subfield classes 8 and 11.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxSubInstance {
    pub q0: Option<u64>,
    pub order: Natural,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxSubEntry {
    pub case_id: u32,
    pub structure: &'static str,
    pub applicable: bool,
    /// Condition under which the class occurs.
    pub condition: &'static str,
    pub instances: Vec<MaxSubInstance>,
}

const LABELS: [(&str, &str); 14] = [
    ("E_{q^10}:GL_10(q)", "always"),
    ("E_{q^18}:(SL_9(q) x SL_2(q)):(q-1)", "always"),
    ("E_{q^24}:(SL_8(q) x SL_3(q)):(q-1)", "always"),
    ("E_{q^28}:(SL_7(q) x SL_4(q)):(q-1)", "always"),
    ("E_{q^30}:(SL_6(q) x SL_5(q)):(q-1)", "always"),
    ("(q-1)^10:S_11", "q >= 5"),
    ("((q^11-1)/(q-1)):11", "always"),
    ("SL_11(q0).(11,(q-1)/(q0-1))", "q = q0^r, r prime"),
    ("11_+^{1+2}:Sp_2(11)", "q = p = 1 mod 11, or q = p^5 with p = 3,4,5,9 mod 11"),
    ("d x SO_11(q)", "q odd"),
    ("(11,q0-1) x SU_11(q0)", "q = q0^2"),
    ("d x L_2(23)", "q = p = 1,2,3,4,6,8,9,12,13,16,18 mod 23, q != 2"),
    ("d x U_5(2)", "q = p = 1 mod 3"),
    ("M_24", "q = 2"),
];

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

/// `Π_{i ∈ range} (q^i − 1)`.
fn prod_minus_one(q: &Natural, range: std::ops::RangeInclusive<u32>) -> Natural {
    range.map(|i| q.pow(i) - 1u32).product()
}

fn small_gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// The fourteen classes with their orders at `q`.
pub fn maxsub_table(q: u64) -> Result<Vec<MaxSubEntry>> {
    let (p, m) = prime_power_decompose(q)?;
    let p = p.to_u64().expect("q fits in u64");
    let qn = nat(q);
    let d = nat(small_gcd(11, q - 1));
    let q55 = qn.pow(55);
    let sq = |i: u32| (qn.pow(i) - 1u32).pow(2);
    let one = |order: Natural| vec![MaxSubInstance { q0: None, order }];

    let mut orders: Vec<Vec<MaxSubInstance>> = vec![
        one(&q55 * prod_minus_one(&qn, 1..=10)),
        one(&q55 * (&qn - 1u32) * sq(2) * prod_minus_one(&qn, 3..=9)),
        one(&q55 * (&qn - 1u32) * sq(2) * sq(3) * prod_minus_one(&qn, 4..=8)),
        one(&q55 * (&qn - 1u32) * sq(2) * sq(3) * sq(4) * prod_minus_one(&qn, 5..=7)),
        one(&q55 * (&qn - 1u32) * sq(2) * sq(3) * sq(4) * sq(5) * (qn.pow(6) - 1u32)),
        one(nat(2u64.pow(8) * 3u64.pow(4) * 25 * 7 * 11) * (&qn - 1u32).pow(10)),
        one(nat(11) * (qn.pow(11) - 1u32) / (&qn - 1u32)),
    ];
    // case 8: every q0 with q = q0^r, r prime
    let case8 = factor(&nat(m as u64))
        .primes()
        .map(|r| {
            let q0 = p.pow(m / r.to_u32().expect("small"));
            let q0n = nat(q0);
            let idx = small_gcd(11, (q - 1) / (q0 - 1));
            MaxSubInstance {
                q0: Some(q0),
                order: q0n.pow(55) * prod_minus_one(&q0n, 2..=11) * nat(idx),
            }
        })
        .collect();
    orders.push(case8);
    orders.push(one(nat(8 * 3 * 5) * nat(11).pow(4)));
    orders.push(one(
        &d * qn.pow(25) * [2u32, 4, 6, 8, 10].iter().map(|&i| qn.pow(i) - 1u32).product::<Natural>(),
    ));
    let case11 = if m % 2 == 0 {
        let q0 = p.pow(m / 2);
        let q0n = nat(q0);
        let su: Natural = (2..=11u32)
            .map(|i| if i % 2 == 0 { q0n.pow(i) - 1u32 } else { q0n.pow(i) + 1u32 })
            .product();
        vec![MaxSubInstance {
            q0: Some(q0),
            order: q0n.pow(55) * su * nat(small_gcd(11, q0 - 1)),
        }]
    } else {
        Vec::new()
    };
    orders.push(case11);
    orders.push(one(nat(8 * 3 * 11 * 23) * &d));
    orders.push(one(nat(2u64.pow(10) * 3u64.pow(5) * 5 * 11) * &d));
    orders.push(one(nat(2u64.pow(10) * 27 * 5 * 7 * 11 * 23)));

    let prime_field = m == 1;
    let applicable = [
        true,
        true,
        true,
        true,
        true,
        q >= 5,
        true,
        m > 1,
        (prime_field && p % 11 == 1) || (m == 5 && [3, 4, 5, 9].contains(&(p % 11))),
        q % 2 == 1,
        m % 2 == 0,
        prime_field && [1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18].contains(&(p % 23)) && q != 2,
        prime_field && p % 3 == 1,
        q == 2,
    ];
    Ok(orders
        .into_iter()
        .zip(LABELS)
        .zip(applicable)
        .enumerate()
        .map(|(i, ((instances, (structure, condition)), applicable))| MaxSubEntry {
            case_id: i as u32 + 1,
            structure,
            applicable,
            condition,
            instances,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub case: u32,
    pub q0: Option<String>,
    pub applicable: bool,
    pub order: String,
    pub divisible: bool,
}

/// Which subgroup orders are multiples of `Q = (q^11 − 1)/(q − 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    #[serde(rename = "Q")]
    pub q_order: String,
    /// Applicable cases with at least one divisible instance.
    pub divisible: Vec<u32>,
    pub rows: Vec<ScanRow>,
}

pub fn scan_report(q: u64) -> Result<ScanReport> {
    let q_order = crate::construct::q_value(11, q)?;
    let mut rows = Vec::new();
    let mut divisible = Vec::new();
    for entry in maxsub_table(q)? {
        for inst in &entry.instances {
            let div = (&inst.order % &q_order).is_zero();
            if div && entry.applicable && !divisible.contains(&entry.case_id) {
                divisible.push(entry.case_id);
            }
            rows.push(ScanRow {
                case: entry.case_id,
                q0: inst.q0.map(|v| v.to_string()),
                applicable: entry.applicable,
                order: inst.order.to_string(),
                divisible: div,
            });
        }
    }
    Ok(ScanReport {
        q_order: q_order.to_string(),
        divisible,
        rows,
    })
}

/// [`scan_report`], failing unless exactly case 7 is divisible.
pub fn q_divisibility_scan(q: u64) -> Result<ScanReport> {
    let r = scan_report(q)?;
    if r.divisible != [7] {
        return Err(Error::ScanMismatch {
            found: r.divisible.clone(),
        });
    }
    Ok(r)
}

/// Statements the certificate relies on without checking them.
pub fn assumptions(n: u32, q: u64) -> Vec<String> {
    let mut out = Vec::new();
    match special_case(n, q) {
        Some(c) => out.push(format!(
            "no maximal subgroup of SL_{n}({q}) has order divisible by {}*{} (cited classification of maximal subgroups)",
            c.excluded_divisor.0, c.excluded_divisor.1
        )),
        None if n != 11 => out.push(format!(
            "every maximal subgroup of SL_{n}(q) acts reducibly on the natural module or contains no element of order Q (cited classification of maximal subgroups)"
        )),
        None => {
            out.push(
                "the fourteen listed classes exhaust the maximal subgroups of SL_11(q) (cited classification)".into(),
            );
            out.push("case 8 order taken as q0^55 (q0^2-1)...(q0^11-1) * (11,(q-1)/(q0-1)), as listed".into());
        }
    }
    out.push("generation of SL_n(q) passes to the projective images in PSL_n(q)".into());
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: String,
    pub k: String,
    /// Defining polynomial, low degree first.
    pub modulus: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatricesJson {
    pub x: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrdersJson {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyJson {
    pub z: Vec<String>,
    pub expected: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordJson {
    pub word: String,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    /// `scan` or `meataxe`.
    pub from: String,
    pub side: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrreducibilityJson {
    /// `no_invariant_line_or_hyperplane` or `invariant_subspace`.
    pub scan: String,
    /// `irreducible`, `reducible` or `inconclusive`.
    pub meataxe: String,
    pub seed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub n: String,
    pub q: String,
    pub p: String,
    pub m: String,
    pub construction: String,
    pub field: FieldJson,
    pub matrices: MatricesJson,
    #[serde(rename = "Q")]
    pub q_order: String,
    #[serde(rename = "Q_factors")]
    pub q_factors: Vec<[String; 2]>,
    pub orders: OrdersJson,
    pub charpoly: CharPolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<String>>,
    /// `[a, b, c, d, e, f, g, h, k, m]` of `l(t)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<WordJson>>,
    pub irreducibility: IrreducibilityJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maxsub_scan: Option<ScanReport>,
    pub assumptions: Vec<String>,
    pub seed: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }
}

fn elems(v: &[FieldElem]) -> Vec<String> {
    v.iter().map(|e| e.canonical().to_string()).collect()
}

fn mat_json(m: &GfMat) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| elems(r)).collect()
}

fn poly_json(f: &GfPoly) -> Vec<String> {
    elems(f.coeffs())
}

fn witness_json(from: &str, basis: &[Vec<FieldElem>], side: Side) -> WitnessJson {
    WitnessJson {
        from: from.into(),
        side: side.as_str().into(),
        basis: basis.iter().map(|v| elems(v)).collect(),
    }
}

fn scan_label<E>(v: &Verdict<E>) -> &'static str {
    match v {
        Verdict::Irreducible => "no_invariant_line_or_hyperplane",
        Verdict::Reducible { .. } => "invariant_subspace",
    }
}

fn meataxe_label<E>(v: &Result<Verdict<E>>) -> &'static str {
    match v {
        Ok(Verdict::Irreducible) => "irreducible",
        Ok(Verdict::Reducible { .. }) => "reducible",
        Err(_) => "inconclusive",
    }
}

/// Runs the whole pipeline for `(n, q)` and records the results.
pub fn certify(n: u32, q: u64, seed: u64) -> Result<Certificate> {
    let pair = build(n, q)?;
    certify_pair(&pair, seed)
}

pub fn certify_pair(pair: &GenPair, seed: u64) -> Result<Certificate> {
    let (p, m) = prime_power_decompose(pair.q)?;
    let f = &pair.field;
    let order_x = pair.x.element_order()?;
    let order_y = pair.y.element_order()?;
    let order_z = pair.z.element_order()?;
    let scan = scan_lines(&pair.x, &pair.y);
    let gens = [pair.x.clone(), pair.y.clone()];
    let meataxe = is_irreducible_module_seeded(&gens, seed);
    let witness = match (&scan, &meataxe) {
        (Verdict::Reducible { basis, side }, _) => Some(witness_json("scan", basis, *side)),
        (_, Ok(Verdict::Reducible { basis, side })) => Some(witness_json("meataxe", basis, *side)),
        _ => None,
    };
    let mut cert = Certificate {
        version: CERT_VERSION.into(),
        n: pair.n.to_string(),
        q: pair.q.to_string(),
        p: p.to_string(),
        m: m.to_string(),
        construction: pair.tag.as_str().into(),
        field: FieldJson {
            p: f.p().to_string(),
            k: f.degree().to_string(),
            modulus: f.modulus().iter().map(u64::to_string).collect(),
        },
        matrices: MatricesJson {
            x: mat_json(&pair.x),
            y: mat_json(&pair.y),
        },
        q_order: pair.q_order.to_string(),
        q_factors: pair
            .q_factors
            .factors()
            .iter()
            .map(|(r, e)| [r.to_string(), e.to_string()])
            .collect(),
        orders: OrdersJson {
            x: order_x.to_string(),
            y: order_y.to_string(),
            z: order_z.to_string(),
        },
        charpoly: CharPolyJson {
            z: poly_json(&pair.z.char_poly()),
            expected: pair.expected_char_poly().as_ref().map(poly_json),
        },
        alphas: None,
        deltas: None,
        l: None,
        words: None,
        irreducibility: IrreducibilityJson {
            scan: scan_label(&scan).into(),
            meataxe: meataxe_label(&meataxe).into(),
            seed: seed.to_string(),
            witness,
        },
        maxsub_scan: None,
        assumptions: assumptions(pair.n, pair.q),
        seed: seed.to_string(),
    };
    match &pair.metadata {
        PairMetadata::Generic { alphas, .. } => cert.alphas = Some(elems(alphas)),
        PairMetadata::Sl11 { l_coeffs, deltas, .. } => {
            cert.deltas = Some(elems(deltas));
            cert.l = Some(elems(l_coeffs));
            cert.maxsub_scan = Some(scan_report(pair.q)?);
        }
        PairMetadata::Special { witnesses, .. } => {
            cert.words = Some(
                witnesses
                    .iter()
                    .map(|w| {
                        Ok(WordJson {
                            word: w.word.to_string(),
                            order: w.word.eval(&pair.x, &pair.y)?.element_order()?.to_string(),
                        })
                    })
                    .collect::<Result<_>>()?,
            );
        }
    }
    Ok(cert)
}

/// Outcome of [`verify`]: the checks that passed and the first one that did not.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub passed: Vec<String>,
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

struct Checker {
    report: VerifyReport,
}

/// Early exit from `run_checks` once a check fails.
struct Stop;

impl Checker {
    fn check(&mut self, name: &str, ok: bool) -> std::result::Result<(), Stop> {
        if ok {
            self.report.passed.push(name.to_string());
            Ok(())
        } else {
            self.report.failure = Some(name.to_string());
            Err(Stop)
        }
    }

    fn parse<T>(&mut self, name: &str, r: Result<T>) -> std::result::Result<T, Stop> {
        r.map_err(|e| {
            self.report.failure = Some(format!("{name}: {e}"));
            Stop
        })
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::Malformed(format!("{s:?} is not an integer")))
}

fn parse_nat(s: &str) -> Result<Natural> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Malformed(format!("{s:?} is not a natural number")));
    }
    s.parse().map_err(|_| Error::Malformed(format!("{s:?} is not a natural number")))
}

fn parse_elems(f: &GaloisField, v: &[String]) -> Result<Vec<FieldElem>> {
    v.iter().map(|s| f.elem(parse_u64(s)?)).collect()
}

fn parse_mat(f: &GaloisField, rows: &[Vec<String>], n: usize) -> Result<GfMat> {
    if rows.len() != n {
        return Err(Error::Malformed(format!("expected {n} rows")));
    }
    let rows = rows.iter().map(|r| parse_elems(f, r)).collect::<Result<Vec<_>>>()?;
    Mat::from_rows(f, rows)
}

fn parse_array<const N: usize>(f: &GaloisField, v: &Option<Vec<String>>) -> Result<[FieldElem; N]> {
    let v = v
        .as_ref()
        .ok_or_else(|| Error::Malformed("missing coefficient list".into()))?;
    parse_elems(f, v)?
        .try_into()
        .map_err(|_| Error::Malformed(format!("expected {N} entries")))
}

/// Recomputes every claim in `cert` from the serialized data.
pub fn verify(cert: &Certificate) -> VerifyReport {
    let mut c = Checker {
        report: VerifyReport::default(),
    };
    let _ = run_checks(cert, &mut c);
    c.report
}

fn run_checks(cert: &Certificate, c: &mut Checker) -> std::result::Result<(), Stop> {
    c.check("version", cert.version == CERT_VERSION)?;
    let n = c.parse("n", parse_u64(&cert.n))? as u32;
    c.check("n in {9,10,11}", matches!(n, 9..=11))?;
    let q = c.parse("q", parse_u64(&cert.q))?;
    let (p, m) = c.parse("q is a prime power", prime_power_decompose(q))?;
    c.check("p and m", cert.p == p.to_string() && cert.m == m.to_string())?;
    let tag = ConstructionTag::parse(&cert.construction);
    let expected_tag = match n {
        11 => ConstructionTag::Sl11,
        _ if special_case(n, q).is_some() => ConstructionTag::Special,
        9 => ConstructionTag::Generic9,
        _ => ConstructionTag::Generic10,
    };
    c.check("construction tag", tag == Some(expected_tag))?;
    let generic_range = match n {
        9 => q != 2 && q != 4,
        10 => q > 4,
        _ => true,
    };
    c.check("q within the construction's range", generic_range || expected_tag == ConstructionTag::Special)?;

    let fp = c.parse("field p", parse_u64(&cert.field.p))?;
    let fk = c.parse("field k", parse_u64(&cert.field.k))?;
    c.check("field matches q", p == nat(fp) && fk == m as u64)?;
    let modulus = c.parse(
        "field modulus",
        cert.field.modulus.iter().map(|s| parse_u64(s)).collect::<Result<Vec<_>>>(),
    )?;
    let f = c.parse("field modulus", GaloisField::with_modulus(fp, modulus))?;
    c.check("field degree", f.degree() as u64 == fk)?;

    let dim = n as usize;
    let x = c.parse("matrix x", parse_mat(&f, &cert.matrices.x, dim))?;
    let y = c.parse("matrix y", parse_mat(&f, &cert.matrices.y, dim))?;
    let z = x.mul(&y).expect("same shape");
    let one = f.one();
    c.check("det x = 1", x.determinant() == one)?;
    c.check("det y = 1", y.determinant() == one)?;
    c.check("x^2 = 1 != x", !x.is_identity() && x.pow_u64(2).is_identity())?;
    c.check("y^3 = 1 != y", !y.is_identity() && y.pow_u64(3).is_identity())?;
    c.check("recorded orders of x, y", cert.orders.x == "2" && cert.orders.y == "3")?;

    let q_order = c.parse("Q", crate::construct::q_value(n, q))?;
    c.check("Q value", cert.q_order == q_order.to_string())?;
    let mut product = Natural::one();
    let mut last = Natural::zero();
    for [r, e] in &cert.q_factors {
        let r = c.parse("Q factor", parse_nat(r))?;
        let e = c.parse("Q exponent", parse_u64(e))? as u32;
        c.check("Q factors ascending and prime", r > last && e > 0 && is_prime(&r))?;
        product *= r.pow(e);
        last = r;
    }
    c.check("Q factorization reconstructs Q", product == q_order)?;

    let order_z = c.parse("order of z", z.element_order())?;
    c.check("recorded order of z", cert.orders.z == order_z.to_string())?;
    let cp = z.char_poly();
    c.check("char poly of z", cert.charpoly.z == poly_json(&cp))?;

    match expected_tag {
        ConstructionTag::Generic9 | ConstructionTag::Generic10 => {
            c.check("ord z = Q", order_z == q_order)?;
            let alphas = c.parse(
                "alphas",
                cert.alphas
                    .as_ref()
                    .ok_or_else(|| Error::Malformed("missing alphas".into()))
                    .and_then(|a| parse_elems(&f, a)),
            )?;
            let (gx, gy) = c.parse("alphas fill the tables", generic_matrices(n, &f, &alphas))?;
            c.check("x, y match the tables filled with the alphas", gx == x && gy == y)?;
            let fn_poly = poly_from_alphas(&f, &alphas);
            c.check("f_n irreducible", is_irreducible(&fn_poly).unwrap_or(false))?;
            let last = alphas.last().expect("n - 1 alphas");
            let Some(last_inv) = f.inv(last) else {
                return c.check("last alpha nonzero", false);
            };
            let expected = Poly::linear(&f, &last_inv).mul(&fn_poly);
            c.check("char poly = (t - 1/alpha) f_n", expected == cp)?;
            c.check("recorded expected char poly", cert.charpoly.expected == Some(poly_json(&expected)))?;
            let distinct = fn_poly.gcd(&fn_poly.derivative()).is_one() && !f.is_zero(&fn_poly.eval(&last_inv));
            c.check("characteristic roots pairwise distinct", distinct)?;
            let ok = match q {
                3 => f.is_one(last),
                7 => f.pow_u64(last, 3) == one && !f.is_one(last),
                _ => multiplicative_order(&f, last, &factor(&nat(q - 1))).ok() == Some(nat(q - 1)),
            };
            c.check("order of the last alpha", ok)?;
        }
        ConstructionTag::Sl11 => {
            c.check("ord z = Q", order_z == q_order)?;
            c.check("gcd(6, Q) = 1", coprime_to_six(&q_order))?;
            let deltas: [FieldElem; 10] = c.parse("deltas", parse_array(&f, &cert.deltas))?;
            let named: [FieldElem; 10] = c.parse("l coefficients", parse_array(&f, &cert.l))?;
            c.check("deltas follow from l", deltas_from_l(&f, &named) == deltas)?;
            let gx = x11(&f).expect("fixed table");
            let gy = y11(&f, &deltas).expect("fixed table");
            c.check("x, y match the tables filled with the deltas", gx == x && gy == y)?;
            let l = expand_l_poly(&f, &named);
            c.check("char poly of z = l", l == cp)?;
            c.check("closed-form f_z11 = char poly", symbolic_fz11(&f, &deltas) == cp)?;
            c.check("recorded expected char poly", cert.charpoly.expected == Some(poly_json(&l)))?;
            c.check("l irreducible", is_irreducible(&l).unwrap_or(false))?;
            let scan = c.parse("maxsub scan", scan_report(q))?;
            c.check("recorded maxsub scan", cert.maxsub_scan.as_ref() == Some(&scan))?;
            c.check("only case 7 divisible by Q", scan.divisible == [7])?;
        }
        ConstructionTag::Special => {
            let case = special_case(n, q).expect("checked above");
            let (gx, gy) = c.parse("special tables", special_matrices(case, &f))?;
            c.check("x, y match the hard-coded tables", gx == x && gy == y)?;
            c.check("no expected char poly for the hard-coded pairs", cert.charpoly.expected.is_none())?;
            let words = cert.words.as_deref().unwrap_or_default();
            c.check("witness words recorded", words.len() == case.witnesses.len())?;
            for (w, (text, claim)) in words.iter().zip(case.witnesses) {
                let word: GenWord = c.parse("witness word", text.parse())?;
                c.check("witness word matches the table", w.word == word.to_string())?;
                let ord = c.parse("witness order", word.eval(&x, &y).and_then(|m| m.element_order()))?;
                c.check(&format!("order of {text} = {claim}"), ord == nat(*claim) && w.order == claim.to_string())?;
            }
            c.check("ord z = order of the first witness", order_z == nat(case.witnesses[0].1))?;
        }
    }
    if expected_tag != ConstructionTag::Sl11 {
        c.check("no maxsub scan outside n = 11", cert.maxsub_scan.is_none())?;
    }

    let gens = [x.clone(), y.clone()];
    let scan = scan_lines(&x, &y);
    c.check("line/hyperplane scan reproduces", cert.irreducibility.scan == scan_label(&scan))?;
    c.check("no invariant line or hyperplane", scan.is_irreducible())?;
    let seed = c.parse("meataxe seed", parse_u64(&cert.irreducibility.seed))?;
    let mt = is_irreducible_module_seeded(&gens, seed);
    c.check("meataxe verdict reproduces", cert.irreducibility.meataxe == meataxe_label(&mt))?;
    c.check("meataxe: irreducible", matches!(mt, Ok(Verdict::Irreducible)))?;
    if let Some(w) = &cert.irreducibility.witness {
        let side = Side::parse(&w.side);
        let basis = c.parse(
            "witness basis",
            w.basis.iter().map(|v| parse_elems(&f, v)).collect::<Result<Vec<_>>>(),
        )?;
        c.check("witness is invariant", side.is_some_and(|s| check_witness(&gens, &basis, s)))?;
    }

    c.check("assumptions", cert.assumptions == assumptions(n, q))?;
    c.check("seed", parse_u64(&cert.seed).is_ok())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(table: &[MaxSubEntry], case: u32) -> String {
        table[case as usize - 1].instances[0].order.to_string()
    }

    #[test]
    fn maxsub_goldens_q2() {
        let t = maxsub_table(2).unwrap();
        assert_eq!(t.len(), 14);
        assert_eq!(order(&t, 14), "244823040");
        assert_eq!(order(&t, 7), "22517");
        assert_eq!(order(&t, 6), "39916800");
        assert_eq!(order(&t, 9), "1756920");
        assert_eq!(order(&t, 12), "6072");
        assert_eq!(order(&t, 13), "13685760");
        assert_eq!(order(&t, 1), "375234700595146883504949480652800");
        assert_eq!(order(&t, 5), "216438644912026221438566400");
        assert_eq!(order(&t, 10), "24815256521932800");
        assert!(t[13].applicable && !t[5].applicable && !t[9].applicable);
        assert!(t[7].instances.is_empty() && t[10].instances.is_empty());
    }

    #[test]
    fn maxsub_goldens_q3_q4_q5() {
        let t = maxsub_table(3).unwrap();
        assert!(!t[5].applicable);
        assert_eq!(order(&t, 7), "974303");
        assert_eq!(order(&t, 6), "40874803200");
        assert_eq!(order(&t, 10), "152915585868239728626892800");
        assert_eq!(
            order(&t, 2),
            "2309469780956539891495244693859649634483935641600"
        );
        let t = maxsub_table(4).unwrap();
        assert_eq!(order(&t, 7), "15379111");
        assert_eq!(t[7].instances[0].q0, Some(2));
        assert_eq!(order(&t, 8), "768105432118265670534631586896281600");
        assert_eq!(order(&t, 11), "1073060286276491879676057352352563200");
        assert_eq!(order(&t, 6), "2357047123200");
        let t = maxsub_table(5).unwrap();
        assert!(t[5].applicable);
        assert_eq!(order(&t, 6), "41855798476800");
        assert_eq!(order(&t, 7), "134277341");
        assert_eq!(order(&t, 10), "266009466302345390625000000000000000000");
        assert_eq!(
            order(&t, 3),
            "9139181934772964849397540092468261718750000000000000000000000000000"
        );
    }

    #[test]
    fn case9_and_12_conditions() {
        let t = maxsub_table(331).unwrap();
        assert!(t[8].applicable && t[11].applicable);
        assert_eq!(order(&t, 12), (8 * 3 * 11 * 23 * 11u64).to_string());
        let t = maxsub_table(3u64.pow(5)).unwrap();
        assert!(t[8].applicable);
        assert_eq!(t[7].instances[0].q0, Some(3));
        let t = maxsub_table(64).unwrap();
        let q0s: Vec<_> = t[7].instances.iter().map(|i| i.q0).collect();
        assert_eq!(q0s, [Some(8), Some(4)]);
        assert_eq!(t[10].instances[0].q0, Some(8));
    }

    #[test]
    fn scan_is_exactly_case_seven() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            assert_eq!(q_divisibility_scan(q).unwrap().divisible, [7], "q = {q}");
        }
    }

    #[test]
    fn round_trip_and_tamper() {
        let cert = certify(9, 3, 0).unwrap();
        let json = cert.to_json();
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        let r = verify(&back);
        assert!(r.is_ok(), "{:?}", r.failure);

        let mut bad = cert.clone();
        let v = &mut bad.matrices.y[0][0];
        *v = if v == "0" { "1".into() } else { "0".into() };
        assert!(!verify(&bad).is_ok());

        let mut bad = cert.clone();
        bad.orders.z = "3279".into();
        assert_eq!(verify(&bad).failure.as_deref(), Some("recorded order of z"));
    }

    #[test]
    fn certificates_are_byte_stable() {
        let a = certify(11, 2, 7).unwrap().to_json();
        let b = certify(11, 2, 7).unwrap().to_json();
        assert_eq!(a, b);
        let cert = Certificate::from_json(&a).unwrap();
        assert!(verify(&cert).is_ok());
        assert_eq!(cert.orders.z, "2047");
        assert_eq!(cert.maxsub_scan.unwrap().divisible, [7]);
    }

    #[test]
    fn special_certificate() {
        let cert = certify(10, 3, 0).unwrap();
        assert_eq!(cert.construction, "special");
        assert_eq!(cert.orders.z, "7381");
        assert!(verify(&cert).is_ok());
    }

    #[test]
    fn malformed_input_is_reported() {
        let mut cert = certify(9, 5, 0).unwrap();
        cert.q = "6".into();
        assert!(verify(&cert).failure.unwrap().starts_with("q is a prime power"));
        assert!(Certificate::from_json("{}").is_err());
    }
}
