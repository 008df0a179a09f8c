//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use sl23::matrix::Mat;
use sl23::meataxe::{check_witness, is_irreducible_module, Verdict};
use sl23::{Field, FiniteField, GaloisField};

/// Plain integer matrix over GF(p), row-major.
#[derive(Clone, Debug)]
pub struct IntMat {
    pub p: u64,
    pub n: usize,
    pub a: Vec<u64>,
}

impl IntMat {
    fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.a[i * self.n + j] * v[j]).sum::<u64>() % self.p)
            .collect()
    }
}

/// Exhaustive check: some nonzero vector generates a proper submodule.
///
/// The submodule is grown as a set of vectors, closed under sums and the generators;
/// no linear algebra involved.
pub fn brute_force_reducible(gens: &[IntMat]) -> bool {
    let p = gens[0].p;
    let n = gens[0].n;
    let total = p.pow(n as u32) as usize;
    let all: Vec<Vec<u64>> = (0..total as u64)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % p;
                    k /= p;
                    d
                })
                .collect()
        })
        .collect();
    all.iter().skip(1).any(|v| {
        let mut set: HashSet<Vec<u64>> = HashSet::new();
        set.insert(vec![0; n]);
        let mut frontier = vec![v.clone()];
        while let Some(w) = frontier.pop() {
            if !set.insert(w.clone()) {
                continue;
            }
            let existing: Vec<Vec<u64>> = set.iter().cloned().collect();
            for u in existing {
                let s: Vec<u64> = u.iter().zip(&w).map(|(a, b)| (a + b) % p).collect();
                if !set.contains(&s) {
                    frontier.push(s);
                }
            }
            for g in gens {
                let gw = g.apply(&w);
                if !set.contains(&gw) {
                    frontier.push(gw);
                }
            }
        }
        set.len() < total
    })
}

pub fn to_mat(f: &GaloisField, m: &IntMat) -> Mat<GaloisField> {
    let rows = (0..m.n)
        .map(|i| (0..m.n).map(|j| f.elem(m.a[i * m.n + j]).unwrap()).collect())
        .collect();
    Mat::from_rows(f, rows).unwrap()
}

fn int_mul(x: &IntMat, y: &IntMat) -> IntMat {
    let n = x.n;
    let mut a = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (0..n).map(|k| x.a[i * n + k] * y.a[k * n + j]).sum::<u64>() % x.p;
        }
    }
    IntMat { p: x.p, n, a }
}

/// A random pair; about a third are conjugated block-triangular (hence reducible).
pub fn random_pair<R: Rng>(rng: &mut R) -> (IntMat, IntMat) {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let n = rng.gen_range(1..=4);
    let triangular = n > 1 && rng.gen_range(0..3) == 0;
    let split = if triangular { rng.gen_range(1..n) } else { 0 };
    let make = |rng: &mut R| {
        let mut a: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
        if triangular {
            for i in split..n {
                for j in 0..split {
                    a[i * n + j] = 0;
                }
            }
        }
        IntMat { p, n, a }
    };
    let (x, y) = (make(rng), make(rng));
    if !triangular {
        return (x, y);
    }
    let f = GaloisField::prime(p).unwrap();
    loop {
        let a: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
        let pm = IntMat { p, n, a };
        let m = to_mat(&f, &pm);
        let Ok(inv) = m.inverse() else { continue };
        let inv = IntMat {
            p,
            n,
            a: inv.entries().iter().map(|e| e.canonical()).collect(),
        };
        return (int_mul(&int_mul(&pm, &x), &inv), int_mul(&int_mul(&pm, &y), &inv));
    }
}

/// Runs `trials` random comparisons; returns the number of disagreements.
pub fn oracle_disagreements<R: Rng>(rng: &mut R, trials: usize) -> usize {
    let mut bad = 0;
    for _ in 0..trials {
        let (x, y) = random_pair(rng);
        let f = GaloisField::prime(x.p).unwrap();
        let gens = [to_mat(&f, &x), to_mat(&f, &y)];
        let expect_reducible = brute_force_reducible(&[x, y]);
        let agrees = match is_irreducible_module(&gens, rng) {
            Ok(Verdict::Irreducible) => !expect_reducible,
            Ok(Verdict::Reducible { basis, side }) => {
                expect_reducible && check_witness(&gens, &basis, side)
            }
            Err(_) => false,
        };
        if !agrees {
            bad += 1;
        }
    }
    bad
}

/// Field axioms and Frobenius on `samples` random triples; returns the first failure.
pub fn field_axioms(f: &GaloisField, samples: usize, seed: u64) -> Result<(), String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = f.characteristic();
    let k = f.degree() as u32;
    for _ in 0..samples {
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        if f.mul(&f.mul(&a, &b), &c) != f.mul(&a, &f.mul(&b, &c)) {
            return Err(format!("{f:?}: mul not associative"));
        }
        if f.add(&f.add(&a, &b), &c) != f.add(&a, &f.add(&b, &c)) {
            return Err(format!("{f:?}: add not associative"));
        }
        if f.mul(&a, &f.add(&b, &c)) != f.add(&f.mul(&a, &b), &f.mul(&a, &c)) {
            return Err(format!("{f:?}: not distributive"));
        }
        if f.mul(&a, &b) != f.mul(&b, &a) || f.add(&a, &b) != f.add(&b, &a) {
            return Err(format!("{f:?}: not commutative"));
        }
        if !f.is_zero(&a) && !f.is_one(&f.mul(&a, &f.inv(&a).unwrap())) {
            return Err(format!("{f:?}: bad inverse"));
        }
        let fr = |x: &_| f.pow_u64(x, p);
        if fr(&f.add(&a, &b)) != f.add(&fr(&a), &fr(&b)) || fr(&f.mul(&a, &b)) != f.mul(&fr(&a), &fr(&b)) {
            return Err(format!("{f:?}: Frobenius not a ring map"));
        }
        if f.pow_u64(&a, p.pow(k)) != a {
            return Err(format!("{f:?}: x^(p^k) != x"));
        }
    }
    Ok(())
}
