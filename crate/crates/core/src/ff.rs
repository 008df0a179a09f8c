//! Exact arithmetic in GF(p^k) with an explicit defining polynomial over GF(p).
//!
//! Elements are stored as their canonical integer `Σ c_i p^i`, where `c_i` is
//! the coefficient of `t^i` in the reduced representative. Fields of at most
//! 2^16 elements use exp/log tables for multiplication.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, ToPrimitive};

use crate::arith::{factor, is_prime, Factorization, Natural};
use crate::error::{Error, Result};
use crate::poly::{is_irreducible, Poly};
use crate::scalar::{Field, FiniteField};

const TABLE_LIMIT: u64 = 1 << 16;
const MAX_DEGREE: usize = 64;

/// An element of a [`GaloisField`], as its canonical integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) u64);

impl FieldElem {
    pub fn canonical(self) -> u64 {
        self.0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct Desc {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    size: u64,
    tables: Option<Tables>,
}

/// GF(p^k) together with its defining polynomial.
#[derive(Clone)]
pub struct GaloisField(Arc<Desc>);

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {})", self.0.p, self.0.k, self.modulus_string())
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisField {}

type Digits = ([u64; MAX_DEGREE], usize);

impl GaloisField {
    /// The prime field GF(p), defining polynomial `t`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(&Natural::from(p)) {
            return Err(Error::InvalidPrime(p.to_string()));
        }
        Ok(Self::build(p, vec![0, 1]))
    }

    /// GF(p^k) with a caller-supplied monic defining polynomial (low degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let prime = Self::prime(p)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus);
        }
        if k == 1 {
            return if modulus == [0, 1] {
                Ok(prime)
            } else {
                Err(Error::BadModulus)
            };
        }
        if checked_size(p, k).is_none() {
            return Err(Error::FieldTooLarge { p, k });
        }
        let f = Poly::new(&prime, modulus.iter().map(|&c| FieldElem(c)).collect());
        if !is_irreducible(&f)? {
            return Err(Error::BadModulus);
        }
        Ok(Self::build(p, modulus))
    }

    fn build(p: u64, modulus: Vec<u64>) -> Self {
        let k = modulus.len() - 1;
        let size = checked_size(p, k).expect("size checked by caller");
        let mut field = GaloisField(Arc::new(Desc {
            p,
            k,
            modulus,
            size,
            tables: None,
        }));
        if k > 1 && size <= TABLE_LIMIT {
            let tables = field.build_tables();
            Arc::get_mut(&mut field.0).expect("unshared").tables = Some(tables);
        }
        field
    }

    fn build_tables(&self) -> Tables {
        let n = self.0.size - 1;
        let nf = factor(&Natural::from(n));
        let g = (self.0.p..self.0.size)
            .map(FieldElem)
            .find(|g| {
                nf.primes().all(|r| {
                    let e = n / r.to_u64().expect("small prime");
                    self.pow_u64(g, e) != FieldElem(1)
                })
            })
            .expect("a finite field has a primitive element");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; self.0.size as usize];
        let mut acc = FieldElem(1);
        for i in 0..n {
            exp.push(acc.0);
            log[acc.0 as usize] = i as u32;
            acc = self.mul_slow(&acc, &g);
        }
        Tables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Defining polynomial, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }

    /// Element from its canonical integer.
    pub fn elem(&self, v: u64) -> Result<FieldElem> {
        if v < self.0.size {
            Ok(FieldElem(v))
        } else {
            Err(Error::Malformed(format!("{v} is not an element of {self:?}")))
        }
    }

    /// Element from coefficients over GF(p), low degree first.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        let mut d = ([0u64; MAX_DEGREE], self.0.k);
        for (i, &c) in coeffs.iter().enumerate().take(self.0.k) {
            d.0[i] = c % self.0.p;
        }
        self.encode(&d)
    }

    pub fn coeffs(&self, a: &FieldElem) -> Vec<u64> {
        let (d, k) = self.decode(a.0);
        d[..k].to_vec()
    }

    /// The element `t`, i.e. the class of the polynomial variable.
    pub fn generator(&self) -> FieldElem {
        if self.0.k == 1 {
            FieldElem(0)
        } else {
            FieldElem(self.0.p)
        }
    }

    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow_u64(a, self.0.p)
    }

    fn decode(&self, mut v: u64) -> Digits {
        let mut d = [0u64; MAX_DEGREE];
        for slot in d.iter_mut().take(self.0.k) {
            *slot = v % self.0.p;
            v /= self.0.p;
        }
        (d, self.0.k)
    }

    fn encode(&self, d: &Digits) -> FieldElem {
        FieldElem(d.0[..d.1].iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c))
    }

    fn mod_p(&self, v: u128) -> u64 {
        (v % self.0.p as u128) as u64
    }

    fn mul_slow(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.0.p;
        if self.0.k == 1 {
            return FieldElem(self.mod_p(a.0 as u128 * b.0 as u128));
        }
        let k = self.0.k;
        let (da, _) = self.decode(a.0);
        let (db, _) = self.decode(b.0);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = self.mod_p(prod[i + j] as u128 + da[i] as u128 * db[j] as u128);
            }
        }
        let m = &self.0.modulus;
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &mi) in m.iter().enumerate().take(k) {
                let slot = &mut prod[deg - k + i];
                let sub = self.mod_p(c as u128 * mi as u128);
                *slot = (*slot + p - sub) % p;
            }
        }
        let mut d = [0u64; MAX_DEGREE];
        d[..k].copy_from_slice(&prod[..k]);
        self.encode(&(d, k))
    }

    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u64, u64) -> u64) -> FieldElem {
        let (da, k) = self.decode(a);
        let (db, _) = self.decode(b);
        let mut d = [0u64; MAX_DEGREE];
        for i in 0..k {
            d[i] = op(da[i], db[i]);
        }
        self.encode(&(d, k))
    }
}

fn checked_size(p: u64, k: usize) -> Option<u64> {
    if k > MAX_DEGREE {
        return None;
    }
    p.checked_pow(k as u32)
}

impl Field for GaloisField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.0.p;
        if p == 2 {
            FieldElem(a.0 ^ b.0)
        } else if self.0.k == 1 {
            FieldElem(self.mod_p(a.0 as u128 + b.0 as u128))
        } else {
            self.digitwise(a.0, b.0, |x, y| (x + y) % p)
        }
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.0.p;
        if p == 2 {
            FieldElem(a.0 ^ b.0)
        } else if self.0.k == 1 {
            FieldElem(self.mod_p(a.0 as u128 + (p - b.0) as u128))
        } else {
            self.digitwise(a.0, b.0, |x, y| (x + p - y) % p)
        }
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.sub(&FieldElem(0), a)
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        match &self.0.tables {
            Some(t) => {
                let n = t.exp.len();
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElem(t.exp[if i >= n { i - n } else { i }])
            }
            None => self.mul_slow(a, b),
        }
    }

    fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let n = t.exp.len();
            let l = t.log[a.0 as usize] as usize;
            return Some(FieldElem(t.exp[(n - l) % n]));
        }
        Some(self.pow_u64(a, self.0.size - 2))
    }

    fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.0.p as i128;
        FieldElem((v as i128).rem_euclid(p) as u64)
    }

    fn is_zero(&self, a: &FieldElem) -> bool {
        a.0 == 0
    }

    fn pow(&self, a: &FieldElem, e: &Natural) -> FieldElem {
        if a.0 == 0 {
            return FieldElem(if e.bits() == 0 { 1 } else { 0 });
        }
        let reduced = (e % (self.0.size - 1)).to_u64().expect("reduced below field size");
        self.pow_u64(a, reduced)
    }

    fn pow_u64(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        if let Some(t) = &self.0.tables {
            if a.0 == 0 {
                return FieldElem(if e == 0 { 1 } else { 0 });
            }
            let n = t.exp.len() as u128;
            let i = (t.log[a.0 as usize] as u128 * (e as u128 % n)) % n;
            return FieldElem(t.exp[i as usize]);
        }
        let mut base = *a;
        let mut acc = FieldElem(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl FiniteField for GaloisField {
    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn size(&self) -> u64 {
        self.0.size
    }

    fn element(&self, index: u64) -> FieldElem {
        FieldElem(index)
    }

    fn index_of(&self, a: &FieldElem) -> u64 {
        a.0
    }
}

/// GF(p^k) defined by the lexicographically smallest monic irreducible of degree `k`,
/// coefficients compared constant term first.
pub fn make_field(p: &Natural, k: usize) -> Result<GaloisField> {
    let p = p
        .to_u64()
        .filter(|_| is_prime(p))
        .ok_or_else(|| Error::InvalidPrime(p.to_string()))?;
    if k == 0 {
        return Err(Error::BadModulus);
    }
    let prime = GaloisField::prime(p)?;
    if k == 1 {
        return Ok(prime);
    }
    let size = checked_size(p, k).ok_or(Error::FieldTooLarge { p, k })?;
    // Index digits run most significant = constant term, so the scan order is
    // lexicographic with c_0 varying slowest. c_0 = 0 is divisible by t.
    let per_c0 = size / p;
    for idx in per_c0..size {
        let mut coeffs = vec![0u64; k + 1];
        let mut v = idx;
        for i in (0..k).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[k] = 1;
        let f = Poly::new(&prime, coeffs.iter().map(|&c| FieldElem(c)).collect());
        if is_irreducible(&f)? {
            return Ok(GaloisField::build(p, coeffs));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field embedding GF(p^m) → GF(p^K), determined by the image of `t`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: GaloisField,
    big: GaloisField,
    image_of_generator: FieldElem,
    basis: Vec<FieldElem>,
}

impl Embedding {
    pub fn small(&self) -> &GaloisField {
        &self.small
    }

    pub fn big(&self) -> &GaloisField {
        &self.big
    }

    pub fn image_of_generator(&self) -> FieldElem {
        self.image_of_generator
    }

    /// Image of a small-field element.
    pub fn map(&self, x: &FieldElem) -> FieldElem {
        let big = &self.big;
        self.small
            .coeffs(x)
            .into_iter()
            .zip(&self.basis)
            .fold(big.zero(), |acc, (c, b)| {
                big.add(&acc, &big.mul(b, &FieldElem(c)))
            })
    }

    /// Unique preimage of a big-field element.
    pub fn project(&self, y: &FieldElem) -> Result<FieldElem> {
        let p = self.small.p();
        let columns: Vec<Vec<u64>> = self.basis.iter().map(|b| self.big.coeffs(b)).collect();
        let rhs = self.big.coeffs(y);
        let c = solve_mod_p(p, &columns, &rhs).ok_or(Error::NotInSubfield)?;
        Ok(self.small.from_coeffs(&c))
    }
}

/// Embeds `small` into `big`, sending `t` to the smallest root of the small defining polynomial.
pub fn embed(small: &GaloisField, big: &GaloisField) -> Result<Embedding> {
    let (m, kk) = (small.degree(), big.degree());
    if small.p() != big.p() || kk % m != 0 {
        return Err(Error::NoEmbedding {
            p: small.p(),
            small: m,
            big: kk,
        });
    }
    if m == 1 {
        return Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            image_of_generator: FieldElem(0),
            basis: vec![FieldElem(1)],
        });
    }
    let sub_order = small.size() - 1;
    let gamma = element_of_order(big, &Natural::from(sub_order), &factor(&Natural::from(sub_order)))?;
    let eval = |x: &FieldElem| {
        small
            .modulus()
            .iter()
            .rev()
            .fold(big.zero(), |acc, &c| big.add(&big.mul(&acc, x), &FieldElem(c)))
    };
    let mut root: Option<FieldElem> = None;
    let mut x = FieldElem(1);
    for _ in 0..sub_order {
        if big.is_zero(&eval(&x)) && root.is_none_or(|r| x < r) {
            root = Some(x);
        }
        x = big.mul(&x, &gamma);
    }
    let g = root.expect("the subfield contains every root of its defining polynomial");
    let mut basis = vec![FieldElem(1)];
    for i in 1..m {
        basis.push(big.mul(&basis[i - 1], &g));
    }
    Ok(Embedding {
        small: small.clone(),
        big: big.clone(),
        image_of_generator: g,
        basis,
    })
}

pub fn project(e: &Embedding, x: &FieldElem) -> Result<FieldElem> {
    e.project(x)
}

// Solves Σ_i c_i columns[i] = rhs over GF(p); None when inconsistent.
fn solve_mod_p(p: u64, columns: &[Vec<u64>], rhs: &[u64]) -> Option<Vec<u64>> {
    let unknowns = columns.len();
    let rows = rhs.len();
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let mut acc = 1u64;
        let (mut base, mut e) = (a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, base);
            }
            base = mulm(base, base);
            e >>= 1;
        }
        acc
    };
    let mut aug: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(pr) = (r..rows).find(|&i| aug[i][c] != 0) else {
            continue;
        };
        aug.swap(r, pr);
        let iv = inv(aug[r][c]);
        for v in aug[r].iter_mut() {
            *v = mulm(*v, iv);
        }
        for i in 0..rows {
            if i != r && aug[i][c] != 0 {
                let f = aug[i][c];
                for j in 0..=unknowns {
                    let sub = mulm(f, aug[r][j]);
                    aug[i][j] = (aug[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| row[unknowns] != 0) {
        return None;
    }
    let mut sol = vec![0u64; unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = aug[i][unknowns];
    }
    Some(sol)
}

/// An element of exact multiplicative order `q_order`, found by scanning
/// `g = t, t+1, …` and taking `g^((|F|−1)/q_order)`.
pub fn element_of_order(
    f: &GaloisField,
    q_order: &Natural,
    q_fact: &Factorization,
) -> Result<FieldElem> {
    let group = Natural::from(f.size() - 1);
    if (&group % q_order) != Natural::from(0u32) {
        return Err(Error::OrderDoesNotDivide {
            order: q_order.to_string(),
            group: group.to_string(),
        });
    }
    debug_assert_eq!(q_fact.value(), *q_order);
    let cofactor = &group / q_order;
    let start = if f.degree() > 1 { f.p() } else { 2.min(f.size() - 1) };
    let candidates = (start..f.size()).chain(1..start);
    for g in candidates {
        let w = f.pow(&FieldElem(g), &cofactor);
        let exact = q_fact.primes().all(|r| !f.is_one(&f.pow(&w, &(q_order / r))));
        if exact {
            return Ok(w);
        }
    }
    unreachable!("the multiplicative group is cyclic")
}

/// Exact multiplicative order of `x`, given a factored exponent that annihilates it.
pub fn multiplicative_order(
    f: &GaloisField,
    x: &FieldElem,
    bound: &Factorization,
) -> Result<Natural> {
    let mut order = bound.value();
    if !f.is_one(&f.pow(x, &order)) {
        return Err(Error::NotAnnihilated);
    }
    for (r, e) in bound.factors() {
        for _ in 0..*e {
            let smaller = &order / r;
            if f.is_one(&f.pow(x, &smaller)) {
                order = smaller;
            } else {
                break;
            }
        }
    }
    debug_assert!(!order.is_one() || f.is_one(x));
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: usize) -> GaloisField {
        make_field(&Natural::from(p), k).unwrap()
    }

    #[test]
    fn defining_polynomials() {
        assert_eq!(gf(2, 1).modulus(), &[0, 1]);
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]);
        // t^3 + t^2 + 1 precedes t^3 + t + 1 with the constant term most significant
        assert_eq!(gf(2, 3).modulus(), &[1, 0, 1, 1]);
        assert!(matches!(
            make_field(&Natural::from(6u32), 2),
            Err(Error::InvalidPrime(_))
        ));
    }

    #[test]
    fn with_modulus_validates() {
        assert!(GaloisField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(GaloisField::with_modulus(2, vec![1, 1, 1]).is_ok());
        assert!(GaloisField::with_modulus(3, vec![1, 0, 2]).is_err());
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = gf(3, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!(f.mul(&a, &b), f.mul_slow(&a, &b));
        }
    }

    #[test]
    fn embedding_examples() {
        let (f2, f4, f8, f16) = (gf(2, 1), gf(2, 2), gf(2, 3), gf(2, 4));
        let e = embed(&f2, &f4).unwrap();
        assert_eq!(e.map(&FieldElem(1)), FieldElem(1));
        assert_eq!(e.project(&FieldElem(1)).unwrap(), FieldElem(1));
        assert_eq!(e.project(&f4.generator()), Err(Error::NotInSubfield));

        let e = embed(&f4, &f16).unwrap();
        let h = e.image_of_generator();
        let h2 = f16.mul(&h, &h);
        assert!(f16.is_zero(&f16.add(&f16.add(&h2, &h), &FieldElem(1))));
        assert_eq!(e.project(&h).unwrap(), f4.generator());

        assert!(matches!(embed(&f4, &f8), Err(Error::NoEmbedding { .. })));
    }

    #[test]
    fn element_of_order_examples() {
        let f4 = gf(2, 2);
        let w = element_of_order(&f4, &Natural::from(3u32), &factor(&Natural::from(3u32))).unwrap();
        assert_eq!(f4.pow_u64(&w, 3), FieldElem(1));
        assert_ne!(w, FieldElem(1));

        let f256 = gf(2, 8);
        let q = Natural::from(255u32);
        let w = element_of_order(&f256, &q, &factor(&q)).unwrap();
        assert_eq!(f256.pow_u64(&w, 255), FieldElem(1));
        for e in [85, 51, 15] {
            assert_ne!(f256.pow_u64(&w, e), FieldElem(1));
        }

        let f9 = gf(3, 2);
        let five = Natural::from(5u32);
        assert!(matches!(
            element_of_order(&f9, &five, &factor(&five)),
            Err(Error::OrderDoesNotDivide { .. })
        ));
    }

    #[test]
    fn multiplicative_order_examples() {
        let f4 = gf(2, 2);
        let three = factor(&Natural::from(3u32));
        assert_eq!(multiplicative_order(&f4, &FieldElem(1), &three).unwrap(), Natural::from(1u32));
        assert_eq!(
            multiplicative_order(&f4, &f4.generator(), &three).unwrap(),
            Natural::from(3u32)
        );
        let f5 = gf(5, 1);
        assert_eq!(
            multiplicative_order(&f5, &FieldElem(2), &three),
            Err(Error::NotAnnihilated)
        );
    }
}
