//! Module irreducibility: spinning, the invariant line/hyperplane scan, and a Norton-style MeatAxe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{kernel_of_rows, Mat, Vector};
use crate::poly::irreducible_factors;
use crate::scalar::{Field, FiniteField};

/// Algebra elements tried before giving up.
pub const RETRY_BUDGET: usize = 64;

const POOL_CAP: usize = 12;

/// The submodule generated by a seed vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinResult<E> {
    /// Vectors in the order they were discovered; the seed comes first.
    pub basis: Vec<Vector<E>>,
    pub dimension: usize,
}

/// Which module a witness lives in: `V` itself, or its dual (transposed action).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Natural,
    Dual,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Natural => "natural",
            Side::Dual => "dual",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "natural" => Some(Side::Natural),
            "dual" => Some(Side::Dual),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<E> {
    Irreducible,
    Reducible { basis: Vec<Vector<E>>, side: Side },
}

impl<E> Verdict<E> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible)
    }
}

/// Row-echelon accumulator; rows are reduced against all earlier rows.
struct Echelon<F: Field> {
    field: F,
    rows: Vec<(usize, Vector<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    fn new(field: &F) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &[F::Elem]) -> Vector<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if f.is_zero(&v[*piv]) {
                continue;
            }
            let c = v[*piv].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a = f.sub(a, &f.mul(&c, b));
            }
        }
        v
    }

    /// Adds `v` if it is independent; reports whether it was.
    fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        let r = self.reduce(v);
        let Some(piv) = r.iter().position(|a| !f.is_zero(a)) else {
            return false;
        };
        let s = f.inv(&r[piv]).unwrap();
        let r = r.iter().map(|a| f.mul(a, &s)).collect();
        self.rows.push((piv, r));
        true
    }

    fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|a| self.field.is_zero(a))
    }
}

/// Closes `seed` under `gens`, breadth first, generators in the listed order.
pub fn spin<F: Field>(seed: &[F::Elem], gens: &[Mat<F>]) -> Result<SpinResult<F::Elem>> {
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => return Err(Error::WrongShape("no generators".into())),
    };
    if gens.iter().any(|g| g.dim() != seed.len() || *g.field() != field) {
        return Err(Error::DimensionMismatch("seed and generators disagree".into()));
    }
    let mut ech = Echelon::new(&field);
    if !ech.insert(seed) {
        return Err(Error::ZeroSeed);
    }
    let mut basis = vec![seed.to_vec()];
    let mut next = 0;
    while next < basis.len() && basis.len() < seed.len() {
        for g in gens {
            let w = g.mul_vec(&basis[next]);
            if ech.insert(&w) {
                basis.push(w);
            }
        }
        next += 1;
    }
    let dimension = basis.len();
    Ok(SpinResult { basis, dimension })
}

/// True iff `basis` is linearly independent, spans a proper nonzero subspace, and is
/// mapped into its span by every generator (transposed generators on the dual side).
pub fn check_witness<F: Field>(gens: &[Mat<F>], basis: &[Vector<F::Elem>], side: Side) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let n = first.dim();
    if basis.is_empty() || basis.len() >= n || basis.iter().any(|v| v.len() != n) {
        return false;
    }
    let mut ech = Echelon::new(first.field());
    if !basis.iter().all(|v| ech.insert(v)) {
        return false;
    }
    gens.iter().all(|g| {
        let g = match side {
            Side::Natural => g.clone(),
            Side::Dual => g.transpose(),
        };
        basis.iter().all(|v| ech.contains(&g.mul_vec(v)))
    })
}

fn common_eigenvector<F: FiniteField>(x: &Mat<F>, y: &Mat<F>) -> Option<Vector<F::Elem>> {
    let f = x.field();
    let n = x.dim();
    let one = f.one();
    let cube_roots: Vec<F::Elem> = f.elements().filter(|l| f.pow_u64(l, 3) == one).collect();
    let mut signs = vec![one.clone()];
    if f.neg(&one) != one {
        signs.push(f.neg(&one));
    }
    for lambda in &cube_roots {
        let yl = y.sub(&Mat::scalar(f, n, lambda)).ok()?;
        for nu in &signs {
            let xn = x.sub(&Mat::scalar(f, n, nu)).ok()?;
            let mut rows = yl.rows();
            rows.extend(xn.rows());
            if let Some(v) = kernel_of_rows(f, rows, n).into_iter().next() {
                return Some(v);
            }
        }
    }
    None
}

/// Looks for a line fixed by `x` and `y` (a common eigenvector with `λ³ = 1`, `ν² = 1`),
/// then for a fixed hyperplane through the transposed pair.
///
/// `Irreducible` here means only that no invariant line or hyperplane exists.
pub fn scan_lines<F: FiniteField>(x: &Mat<F>, y: &Mat<F>) -> Verdict<F::Elem> {
    if let Some(v) = common_eigenvector(x, y) {
        return Verdict::Reducible {
            basis: vec![v],
            side: Side::Natural,
        };
    }
    if let Some(v) = common_eigenvector(&x.transpose(), &y.transpose()) {
        return Verdict::Reducible {
            basis: vec![v],
            side: Side::Dual,
        };
    }
    Verdict::Irreducible
}

/// Random element of the enveloping algebra: `c_0 I + Σ c_i P_i` over a pool of products.
fn random_algebra_element<F: FiniteField, R: Rng + ?Sized>(
    pool: &mut Vec<Mat<F>>,
    ngens: usize,
    rng: &mut R,
) -> Mat<F> {
    let f = pool[0].field().clone();
    let n = pool[0].dim();
    let a = pool[rng.gen_range(0..pool.len())].clone();
    let b = pool[rng.gen_range(0..pool.len())].clone();
    let prod = a.mul(&b).expect("same shape");
    let cap = POOL_CAP.max(ngens + 4);
    if pool.len() < cap {
        pool.push(prod);
    } else {
        let slot = rng.gen_range(ngens..cap);
        pool[slot] = prod;
    }
    pool.iter().fold(Mat::scalar(&f, n, &f.random(rng)), |acc, m| {
        acc.add(&m.scale(&f.random(rng))).expect("same shape")
    })
}

/// Norton's irreducibility test.
///
/// For a random algebra element `A` and an irreducible factor `g` of its characteristic
/// polynomial, a null vector of `g(A)` is spun under the generators; a proper result is a
/// witness. When `g(A)` has nullity `deg g`, a full spin on both sides proves irreducibility.
pub fn is_irreducible_module<F: FiniteField, R: Rng + ?Sized>(
    gens: &[Mat<F>],
    rng: &mut R,
) -> Result<Verdict<F::Elem>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::WrongShape("no generators".into()))?;
    let n = first.dim();
    for g in gens {
        if g.field() != first.field() {
            return Err(Error::FieldMismatch);
        }
        if g.dim() != n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", g.dim(), n)));
        }
    }
    if n <= 1 {
        return Ok(Verdict::Irreducible);
    }
    let transposed: Vec<Mat<F>> = gens.iter().map(Mat::transpose).collect();
    let mut pool = gens.to_vec();
    for _ in 0..RETRY_BUDGET {
        let a = random_algebra_element(&mut pool, gens.len(), rng);
        let factors = irreducible_factors(&a.char_poly(), rng);
        for g in &factors {
            let deg = g.degree().unwrap();
            let ga = a.eval_poly(g);
            let null = ga.kernel();
            let Some(v) = null.first() else { continue };
            let s = spin(v, gens)?;
            if s.dimension < n {
                return Ok(Verdict::Reducible {
                    basis: s.basis,
                    side: Side::Natural,
                });
            }
            if null.len() != deg {
                continue;
            }
            let w = ga.transpose().kernel().swap_remove(0);
            let s = spin(&w, &transposed)?;
            if s.dimension < n {
                return Ok(Verdict::Reducible {
                    basis: s.basis,
                    side: Side::Dual,
                });
            }
            return Ok(Verdict::Irreducible);
        }
    }
    Err(Error::InconclusiveAfterRetries(RETRY_BUDGET))
}

/// [`is_irreducible_module`] driven by a ChaCha stream seeded with `seed`.
pub fn is_irreducible_module_seeded<F: FiniteField>(
    gens: &[Mat<F>],
    seed: u64,
) -> Result<Verdict<F::Elem>> {
    is_irreducible_module(gens, &mut ChaCha8Rng::seed_from_u64(seed))
}
