//! Dense square matrices over a [`Field`], plus generator words.

use std::fmt;
use std::str::FromStr;

use crate::arith::{factor, Factorization, Natural};
use crate::error::{Error, Result};
use crate::poly::{distinct_degree_split, Poly};
use crate::scalar::{Field, FiniteField};

/// Column vector.
pub type Vector<E> = Vec<E>;

#[derive(Clone, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    n: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.n, self.n)?;
        for r in 0..self.n {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Mat<F> {
    pub fn zero(field: &F, n: usize) -> Self {
        Mat {
            field: field.clone(),
            n,
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &F, n: usize, c: &F::Elem) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows must form a square".into()));
        }
        Ok(Mat {
            field: field.clone(),
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    /// Companion matrix of a monic polynomial (ones on the subdiagonal, last column `−c_i`).
    pub fn companion(f: &Poly<F>) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let field = f.field();
        let n = f.degree().unwrap();
        let mut m = Self::zero(field, n);
        for i in 0..n {
            if i + 1 < n {
                m.set(i + 1, i, field.one());
            }
            m.set(i, n - 1, field.neg(&f.coeff(i)));
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.n + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.n)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let n = self.n;
        let mut out = Self::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Mat {
            field: f.clone(),
            n: self.n,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Mat {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vector<F::Elem> {
        let f = &self.field;
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, e: &Natural) -> Self {
        let mut acc = Self::identity(&self.field, self.n);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).expect("same shape");
            if e.bit(i) {
                acc = acc.mul(self).expect("same shape");
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.pow(&Natural::from(e))
    }

    /// Evaluates a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &Poly<F>) -> Self {
        let f = &self.field;
        p.coeffs().iter().rev().fold(Self::zero(f, self.n), |acc, c| {
            acc.mul(self)
                .and_then(|m| m.add(&Self::scalar(f, self.n, c)))
                .expect("same shape")
        })
    }

    /// Determinant by Gaussian elimination (first nonzero pivot).
    pub fn determinant(&self) -> F::Elem {
        let f = &self.field;
        let n = self.n;
        let mut a = self.rows();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
                return f.zero();
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[c][c]);
            let inv = f.inv(&a[c][c]).unwrap();
            for r in c + 1..n {
                if f.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = f.mul(&a[r][c], &inv);
                for j in c..n {
                    let v = f.mul(&factor, &a[c][j]);
                    a[r][j] = f.sub(&a[r][j], &v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(f, n).rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !f.is_zero(&a[r][c])).ok_or(Error::Singular)?;
            a.swap(p, c);
            inv.swap(p, c);
            let s = f.inv(&a[c][c]).unwrap();
            for j in 0..n {
                a[c][j] = f.mul(&a[c][j], &s);
                inv[c][j] = f.mul(&inv[c][j], &s);
            }
            for r in 0..n {
                if r == c || f.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = a[r][c].clone();
                for j in 0..n {
                    let v = f.mul(&factor, &a[c][j]);
                    a[r][j] = f.sub(&a[r][j], &v);
                    let w = f.mul(&factor, &inv[c][j]);
                    inv[r][j] = f.sub(&inv[r][j], &w);
                }
            }
        }
        Self::from_rows(f, inv)
    }

    /// Characteristic polynomial `det(tI − A)` via reduction to upper Hessenberg form.
    pub fn char_poly(&self) -> Poly<F> {
        let f = &self.field;
        let n = self.n;
        let mut h = self.rows();
        // similarity transforms: eliminate below the subdiagonal column by column
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !f.is_zero(&h[i][j])) else {
                continue;
            };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let inv = f.inv(&h[j + 1][j]).unwrap();
            for i in j + 2..n {
                if f.is_zero(&h[i][j]) {
                    continue;
                }
                let u = f.mul(&h[i][j], &inv);
                for k in 0..n {
                    let v = f.mul(&u, &h[j + 1][k]);
                    h[i][k] = f.sub(&h[i][k], &v);
                }
                for row in h.iter_mut() {
                    let v = f.mul(&u, &row[i]);
                    row[j + 1] = f.add(&row[j + 1], &v);
                }
            }
        }
        // p_m = (t − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{k=i+1..m} h_{k,k−1}) p_{i−1}, zero-based
        let mut ps: Vec<Poly<F>> = vec![Poly::one(f)];
        for m in 0..n {
            let mut pm = Poly::linear(f, &h[m][m]).mul(&ps[m]);
            let mut prod = f.one();
            for i in (0..m).rev() {
                prod = f.mul(&prod, &h[i + 1][i]);
                if f.is_zero(&prod) {
                    break;
                }
                let coeff = f.mul(&h[i][m], &prod);
                pm = pm.sub(&ps[i].scale(&coeff));
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// Basis of the right kernel `{v : A v = 0}`, in reduced echelon order.
    pub fn kernel(&self) -> Vec<Vector<F::Elem>> {
        kernel_of_rows(&self.field, self.rows(), self.n)
    }
}

/// Kernel of a (not necessarily square) row list with `cols` columns.
pub fn kernel_of_rows<F: Field>(f: &F, mut a: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vector<F::Elem>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(p, r);
        let s = f.inv(&a[r][c]).unwrap();
        for v in a[r].iter_mut() {
            *v = f.mul(v, &s);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let v = f.mul(&factor, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols).filter(|c| !pivots.contains(c));
    free.map(|fc| {
        let mut v = vec![f.zero(); cols];
        v[fc] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[i][fc]);
        }
        v
    })
    .collect()
}

impl<F: FiniteField> Mat<F> {
    /// Degrees of the distinct irreducible factors of the characteristic polynomial.
    pub fn char_poly_factor_degrees(&self) -> Vec<usize> {
        distinct_degree_split(&self.char_poly())
            .into_iter()
            .map(|(d, _)| d)
            .collect()
    }

    /// Factored exponent `p^c · lcm_d (q^d − 1)` that annihilates every invertible
    /// matrix with this characteristic polynomial (`p^c ≥ n`).
    pub fn order_bound(&self) -> Factorization {
        let f = &self.field;
        let q = f.size_natural();
        let p = f.characteristic();
        let mut bound = Factorization::default();
        for d in self.char_poly_factor_degrees() {
            bound = bound.lcm(&factor(&(q.pow(d as u32) - 1u32)));
        }
        let mut c = 0u32;
        let mut pc = 1u64;
        while (pc as usize) < self.n {
            pc *= p;
            c += 1;
        }
        bound.product(&Factorization::from_pairs([(Natural::from(p), c)]))
    }

    /// Exact multiplicative order of an invertible matrix.
    pub fn element_order(&self) -> Result<Natural> {
        if self.field.is_zero(&self.determinant()) {
            return Err(Error::Singular);
        }
        let bound = self.order_bound();
        let mut order = bound.value();
        if !self.pow(&order).is_identity() {
            return Err(Error::OrderBoundViolated);
        }
        for (r, e) in bound.factors() {
            for _ in 0..*e {
                let smaller = &order / r;
                if self.pow(&smaller).is_identity() {
                    order = smaller;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }
}

/// Letter of a word in the two generators; `Y2` stands for `y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Y,
    Y2,
}

/// A normalized word in `x` (order 2) and `y` (order 3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenWord {
    letters: Vec<Letter>,
}

impl GenWord {
    /// Normalizes `xx → 1`, `yy → y²`, `y y² → 1`, `y² y² → y`.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match (out.last().copied(), l) {
                (Some(Letter::X), Letter::X) => {
                    out.pop();
                }
                (Some(prev @ (Letter::Y | Letter::Y2)), Letter::Y | Letter::Y2) => {
                    out.pop();
                    let e = (y_exp(prev) + y_exp(l)) % 3;
                    match e {
                        1 => out.push(Letter::Y),
                        2 => out.push(Letter::Y2),
                        _ => {}
                    }
                }
                _ => out.push(l),
            }
        }
        if out.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(GenWord { letters: out })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Evaluates the word left to right.
    pub fn eval<F: Field>(&self, x: &Mat<F>, y: &Mat<F>) -> Result<Mat<F>> {
        eval_word(self, x, y)
    }
}

fn y_exp(l: Letter) -> u8 {
    match l {
        Letter::Y => 1,
        Letter::Y2 => 2,
        Letter::X => 0,
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
                Letter::Y2 => "Y",
            })?;
        }
        Ok(())
    }
}

/// Parses `x`, `y`, `Y` (= y²) with parenthesized groups and `^k` powers,
/// e.g. `xy(xY)^2`.
impl FromStr for GenWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (letters, used) = parse_group(&chars, 0)?;
        if used != chars.len() {
            return Err(Error::WordSyntax(format!("unexpected ')' in {s:?}")));
        }
        GenWord::new(letters)
    }
}

fn parse_group(chars: &[char], mut i: usize) -> Result<(Vec<Letter>, usize)> {
    let mut out = Vec::new();
    while i < chars.len() {
        let mut atom = match chars[i] {
            'x' => vec![Letter::X],
            'y' => vec![Letter::Y],
            'Y' => vec![Letter::Y2],
            '(' => {
                let (inner, j) = parse_group(chars, i + 1)?;
                if chars.get(j) != Some(&')') {
                    return Err(Error::WordSyntax("unbalanced '('".into()));
                }
                i = j;
                inner
            }
            ')' => return Ok((out, i)),
            c => return Err(Error::WordSyntax(format!("unexpected {c:?}"))),
        };
        i += 1;
        if chars.get(i) == Some(&'^') {
            let digits: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
            let k: usize = digits
                .parse()
                .map_err(|_| Error::WordSyntax("missing exponent".into()))?;
            i += 1 + digits.len();
            atom = atom.repeat(k);
        }
        out.extend(atom);
    }
    Ok((out, i))
}

/// Product of the word's letters, left to right.
pub fn eval_word<F: Field>(w: &GenWord, x: &Mat<F>, y: &Mat<F>) -> Result<Mat<F>> {
    x.check_compatible(y)?;
    let y2 = y.mul(y)?;
    let mut acc = Mat::identity(x.field(), x.dim());
    for l in &w.letters {
        let m = match l {
            Letter::X => x,
            Letter::Y => y,
            Letter::Y2 => &y2,
        };
        acc = acc.mul(m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_field, GaloisField};
    use crate::scalar::Exact;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: usize) -> GaloisField {
        make_field(&Natural::from(p), k).unwrap()
    }

    fn random_mat(f: &GaloisField, n: usize, rng: &mut ChaCha8Rng) -> Mat<GaloisField> {
        let rows = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
        Mat::from_rows(f, rows).unwrap()
    }

    #[test]
    fn identity_behaviour() {
        let f = gf(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_mat(&f, 4, &mut rng);
        assert_eq!(Mat::identity(&f, 4).mul(&a).unwrap(), a);
        let id3 = Mat::identity(&f, 3);
        let t_minus_1 = Poly::linear(&f, &f.one());
        assert_eq!(id3.char_poly(), t_minus_1.mul(&t_minus_1).mul(&t_minus_1));
        assert_eq!(id3.element_order().unwrap(), Natural::from(1u32));
    }

    #[test]
    fn determinant_of_diagonal_over_gf4() {
        let f = gf(2, 2);
        let eta = f.generator();
        let mut d = Mat::identity(&f, 5);
        d.set(0, 0, eta);
        d.set(1, 1, f.mul(&eta, &eta));
        assert_eq!(d.determinant(), f.one());
    }

    #[test]
    fn mismatches_are_errors() {
        let f = gf(3, 1);
        let a = Mat::identity(&f, 2);
        let b = Mat::identity(&f, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
        let c = Mat::identity(&gf(5, 1), 2);
        assert_eq!(a.mul(&c), Err(Error::FieldMismatch));
        assert_eq!(Mat::zero(&f, 2).element_order(), Err(Error::Singular));
    }

    #[test]
    fn companion_matrix_char_poly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [gf(2, 1), gf(7, 1), gf(3, 2)] {
            for _ in 0..50 {
                let deg = 1 + (f.random(&mut rng).canonical() as usize % 7);
                let mut c: Vec<_> = (0..deg).map(|_| f.random(&mut rng)).collect();
                c.push(f.one());
                let p = Poly::new(&f, c);
                assert_eq!(Mat::companion(&p).unwrap().char_poly(), p);
            }
        }
    }

    #[test]
    fn cycle_permutation_order() {
        let f = gf(2, 1);
        let mut m = Mat::zero(&f, 11);
        for i in 0..11 {
            m.set((i + 1) % 11, i, f.one());
        }
        assert_eq!(m.element_order().unwrap(), Natural::from(11u32));
    }

    #[test]
    fn unipotent_order_uses_p_part() {
        // a single 5x5 Jordan block over GF(2) has order 8
        let f = gf(2, 1);
        let mut m = Mat::identity(&f, 5);
        for i in 0..4 {
            m.set(i, i + 1, f.one());
        }
        assert_eq!(m.element_order().unwrap(), Natural::from(8u32));
    }

    #[test]
    fn rational_char_poly_and_det() {
        let q = Exact::<BigRational>::new();
        let a = Mat::from_i64_rows(&q, &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap();
        // det(tI - A) = t^3 - 9t^2 + 24t - 18
        let expect = Poly::new(
            &q,
            [-18, 24, -9, 1].iter().map(|&v| q.from_i64(v)).collect(),
        );
        assert_eq!(a.char_poly(), expect);
        assert_eq!(a.determinant(), q.from_i64(18));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn word_parsing_and_normalization() {
        let w: GenWord = "xy(xY)^2".parse().unwrap();
        assert_eq!(w.to_string(), "xyxYxY");
        let w: GenWord = "xyyyx y".parse().unwrap();
        assert_eq!(w.to_string(), "y");
        assert_eq!("xx".parse::<GenWord>(), Err(Error::EmptyWord));
        assert!("x(y".parse::<GenWord>().is_err());
        assert!("xz".parse::<GenWord>().is_err());
    }

    #[test]
    fn word_x_evaluates_to_x() {
        let f = gf(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_mat(&f, 3, &mut rng);
        let y = random_mat(&f, 3, &mut rng);
        let w: GenWord = "x".parse().unwrap();
        assert_eq!(eval_word(&w, &x, &y).unwrap(), x);
        let w: GenWord = "xY".parse().unwrap();
        assert_eq!(eval_word(&w, &x, &y).unwrap(), x.mul(&y).unwrap().mul(&y).unwrap());
    }
}
