//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::arith::{factor, Natural};
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldElem, GaloisField};
use crate::scalar::{Field, FiniteField};

/// Polynomial with little-endian coefficients; no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    /// `c · t^d`.
    pub fn monomial(field: &F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    /// The variable `t`.
    pub fn var(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `t − c`.
    pub fn linear(field: &F, c: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f, c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Self::new(&self.field, c)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.mul(a, s)).collect();
        Self::new(&self.field, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let slot = &mut rem[i - dd + j];
                *slot = f.sub(slot, &f.mul(&c, d));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Self::new(f, c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, e: &Natural, modulus: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }
}

/// `t^(q^i) mod f` for `i = 0..=count`, where `q` is the field size.
fn frobenius_powers<F: FiniteField>(f: &Poly<F>, count: usize) -> Vec<Poly<F>> {
    let q = f.field().size_natural();
    let mut out = vec![Poly::var(f.field()).rem(f)];
    for i in 0..count {
        let next = out[i].pow_mod(&q, f);
        out.push(next);
    }
    out
}

/// Rabin's test: `t^(q^n) ≡ t (mod f)` and `gcd(t^(q^(n/r)) − t, f) = 1` for primes `r | n`.
pub fn is_irreducible<F: FiniteField>(f: &Poly<F>) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::WrongShape("constant polynomial".into()));
    }
    if n == 1 {
        return Ok(true);
    }
    let frob = frobenius_powers(f, n);
    let t = Poly::var(f.field()).rem(f);
    if frob[n] != t {
        return Ok(false);
    }
    let n_fact = factor(&Natural::from(n));
    for r in n_fact.primes() {
        let d = n / r.to_usize().expect("degree factor fits");
        if !frob[d].sub(&t).gcd(f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a monic `f` into `(d, g_d)` where `g_d` is the product of the distinct
/// irreducible factors of degree `d`. Repeated factors are collapsed.
pub fn distinct_degree_split<F: FiniteField>(f: &Poly<F>) -> Vec<(usize, Poly<F>)> {
    let field = f.field();
    let q = field.size_natural();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = Poly::var(field);
    let mut d = 0;
    while let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        d += 1;
        if 2 * d > deg {
            // every factor has degree >= d, so rest is a single irreducible
            out.push((deg, rest));
            break;
        }
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&Poly::var(field)).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            loop {
                let common = rest.gcd(&g);
                if common.is_one() {
                    break;
                }
                rest = rest.div_rem(&common).0;
            }
            if rest.degree() == Some(0) {
                out.push((d, g));
                break;
            }
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    out
}

/// Cantor–Zassenhaus: factors of a squarefree product of degree-`d` irreducibles.
pub fn equal_degree_split<F: FiniteField, R: Rng + ?Sized>(
    g: &Poly<F>,
    d: usize,
    rng: &mut R,
) -> Vec<Poly<F>> {
    let n = g.degree().unwrap_or(0);
    if n <= d {
        return vec![g.monic()];
    }
    let field = g.field();
    let q = field.size_natural();
    let p = field.characteristic();
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let bits = (field.size().trailing_zeros() as usize) * d;
            let mut acc = a.rem(g);
            let mut term = acc.clone();
            for _ in 1..bits {
                term = term.mul_mod(&term, g);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, g).sub(&Poly::one(field))
        };
        let h = b.gcd(g);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let mut out = equal_degree_split(&h, d, rng);
            out.extend(equal_degree_split(&g.div_rem(&h).0, d, rng));
            return out;
        }
    }
}

/// Distinct monic irreducible factors, ordered by degree then coefficients.
pub fn irreducible_factors<F: FiniteField, R: Rng + ?Sized>(
    f: &Poly<F>,
    rng: &mut R,
) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree_split(f) {
        out.extend(equal_degree_split(&g, d, rng));
    }
    let field = f.field().clone();
    out.sort_by_key(|g| {
        (
            g.degree(),
            g.coeffs().iter().map(|c| field.index_of(c)).collect::<Vec<_>>(),
        )
    });
    out
}

/// Minimal polynomial of `w` over the small field of `e`, as the product of the
/// Frobenius conjugates `w^(q^i)` projected back into the small field.
pub fn minimal_polynomial(w: &FieldElem, e: &Embedding) -> Result<Poly<GaloisField>> {
    let big = e.big();
    let small = e.small();
    let d = big.degree() / small.degree();
    let q = small.size();
    let mut conj = Vec::with_capacity(d);
    let mut c = *w;
    for _ in 0..d {
        conj.push(c);
        c = big.pow_u64(&c, q);
    }
    let mut sorted = conj.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != d {
        return Err(Error::DegenerateConjugates);
    }
    let product = conj
        .iter()
        .fold(Poly::one(big), |acc, c| acc.mul(&Poly::linear(big, c)));
    let coeffs = product
        .coeffs()
        .iter()
        .map(|c| e.project(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(small, coeffs))
}

/// Reads `f = t^N − α_1 t^(N−1) + α_2 t^(N−2) − … + (−1)^N α_N` and returns `α_1..α_N`.
pub fn extract_alphas<F: Field>(f: &Poly<F>) -> Result<Vec<F::Elem>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    let field = f.field();
    Ok((1..=n)
        .map(|i| {
            let c = f.coeff(n - i);
            if i % 2 == 1 {
                field.neg(&c)
            } else {
                c
            }
        })
        .collect())
}

/// Inverse of [`extract_alphas`].
pub fn poly_from_alphas<F: Field>(field: &F, alphas: &[F::Elem]) -> Poly<F> {
    let n = alphas.len();
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    for (i, a) in alphas.iter().enumerate() {
        coeffs[n - 1 - i] = if i % 2 == 0 { field.neg(a) } else { a.clone() };
    }
    Poly::new(field, coeffs)
}

/// Signs of `a, b, c, d, e, f, g, h, k, m` in
/// `l(t) = t^11 − a t^10 + b t^9 − c t^8 + d t^7 − e t^6 + f t^5 − g t^4 + h t^3 − k t^2 + m t − 1`,
/// listed by the power of `t` they multiply.
const L_SIGNS: [(usize, bool); 10] = [
    (10, true),
    (9, false),
    (8, true),
    (7, false),
    (6, true),
    (5, false),
    (4, true),
    (3, false),
    (2, true),
    (1, false),
];

/// Builds `l(t)` from the ten named coefficients `[a, b, c, d, e, f, g, h, k, m]`.
pub fn expand_l_poly<F: Field>(field: &F, named: &[F::Elem; 10]) -> Poly<F> {
    let mut coeffs = vec![field.zero(); 12];
    coeffs[11] = field.one();
    coeffs[0] = field.from_i64(-1);
    for (value, &(power, negated)) in named.iter().zip(&L_SIGNS) {
        coeffs[power] = if negated { field.neg(value) } else { value.clone() };
    }
    Poly::new(field, coeffs)
}

/// Inverse of [`expand_l_poly`].
pub fn read_l_coeffs<F: Field>(l: &Poly<F>) -> Result<[F::Elem; 10]> {
    let field = l.field();
    if l.degree() != Some(11) || !l.is_monic() {
        return Err(Error::WrongShape("expected a monic polynomial of degree 11".into()));
    }
    if l.coeff(0) != field.from_i64(-1) {
        return Err(Error::WrongShape("constant term must be -1".into()));
    }
    Ok(L_SIGNS.map(|(power, negated)| {
        let c = l.coeff(power);
        if negated {
            field.neg(&c)
        } else {
            c
        }
    }))
}
