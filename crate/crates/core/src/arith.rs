//! Big-integer number theory: primality, factorization, primitive prime divisors.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Seed used by the seedless entry points.
pub const DEFAULT_SEED: u64 = 0;

const SMALL_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const TRIAL_BOUND: u64 = 1000;
const RANDOM_ROUNDS: usize = 40;

/// Prime factorization with primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    /// Builds from `(prime, exponent)` pairs in any order; equal primes merge.
    /// Primality is not re-checked here, see [`Factorization::is_valid_for`].
    pub fn from_pairs<I: IntoIterator<Item = (Natural, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Natural, u32> = BTreeMap::new();
        for (p, e) in pairs {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        Factorization {
            factors: map.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Factorization of the least common multiple.
    pub fn lcm(&self, other: &Factorization) -> Factorization {
        let mut map: BTreeMap<Natural, u32> = self.factors.iter().cloned().collect();
        for (p, e) in &other.factors {
            let slot = map.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Factorization {
            factors: map.into_iter().collect(),
        }
    }

    /// Factorization of the product.
    pub fn product(&self, other: &Factorization) -> Factorization {
        Factorization::from_pairs(self.factors.iter().chain(&other.factors).cloned())
    }

    /// Canonical form, every prime passes [`is_prime`], and the product is `n`.
    pub fn is_valid_for(&self, n: &Natural) -> bool {
        let ascending = self.factors.windows(2).all(|w| w[0].0 < w[1].0);
        ascending
            && self.factors.iter().all(|(p, e)| *e > 0 && is_prime(p))
            && self.value() == *n
    }
}

/// Primality test: deterministic below 3·10^24, 40 seeded Miller–Rabin rounds above.
pub fn is_prime(n: &Natural) -> bool {
    is_prime_seeded(n, DEFAULT_SEED)
}

pub fn is_prime_seeded(n: &Natural, seed: u64) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bound: Natural = Natural::from(3u32) * Natural::from(10u32).pow(24);
    if *n < bound {
        SMALL_PRIMES
            .iter()
            .all(|&a| miller_rabin_big(n, &Natural::from(a)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = n - 3u32;
        (0..RANDOM_ROUNDS).all(|_| {
            let a = random_below(&mut rng, &span) + 2u32;
            miller_rabin_big(n, &a)
        })
    }
}

fn random_below<R: Rng>(rng: &mut R, bound: &Natural) -> Natural {
    let bytes = (bound.bits() / 8 + 2) as usize;
    let buf: Vec<u8> = (0..bytes).map(|_| rng.gen()).collect();
    Natural::from_bytes_le(&buf) % bound
}

fn miller_rabin_big(n: &Natural, a: &Natural) -> bool {
    let one = Natural::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // The first twelve primes are a deterministic witness set for all of u64.
    'witness: for &a in &SMALL_PRIMES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n ≥ 1`.
pub fn factor(n: &Natural) -> Factorization {
    factor_seeded(n, DEFAULT_SEED)
}

/// Prime factorization with the Pollard-rho parameter schedule derived from `seed`.
pub fn factor_seeded(n: &Natural, seed: u64) -> Factorization {
    assert!(!n.is_zero(), "factor(0) is undefined");
    let mut found: Vec<(Natural, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_BOUND {
        if rest.bits() < 64 && p * p > rest.to_u64().unwrap() {
            break;
        }
        let mut e = 0;
        match rest.to_u64() {
            Some(mut r) => {
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                rest = Natural::from(r);
            }
            None => {
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
            }
        }
        if e > 0 {
            found.push((Natural::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    let mut attempt = 0u64;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_seeded(&m, seed) {
            found.push((m, 1));
            continue;
        }
        if let Some((root, k)) = perfect_power(&m) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        let d = loop {
            attempt += 1;
            let c = seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt);
            if let Some(d) = rho_split(&m, c) {
                break d;
            }
        };
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    Factorization::from_pairs(found)
}

fn perfect_power(n: &Natural) -> Option<(Natural, u32)> {
    for k in 2..=n.bits() as u32 {
        let r = n.nth_root(k);
        if r < Natural::from(2u32) {
            break;
        }
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

fn rho_split(n: &Natural, c: u64) -> Option<Natural> {
    match n.to_u64() {
        Some(small) => rho_u64(small, c % small.max(2)).map(Natural::from),
        None => rho_big(n, &Natural::from(c)),
    }
}

// Brent's cycle detection with batched gcds.
fn rho_u64(n: u64, c: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let c = if c == 0 { 1 } else { c };
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    let mut g = 1u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_big(n: &Natural, c: &Natural) -> Option<Natural> {
    let one = Natural::one();
    let f = |x: &Natural| (x * x + c) % n;
    let diff = |a: &Natural, b: &Natural| if a > b { a - b } else { b - a };
    let mut y = Natural::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = one.clone();
    let mut g = one.clone();
    let mut r = 1u64;
    const BATCH: u64 = 128;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = q * diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// Primes dividing `a^k − 1` but no `a^i − 1` for `0 < i < k`, ascending.
pub fn zsigmondy_primes(a: &Natural, k: u32) -> Vec<Natural> {
    assert!(*a >= Natural::from(2u32) && k >= 1);
    let n = a.pow(k) - 1u32;
    let k_primes = factor(&Natural::from(k));
    factor(&n)
        .primes()
        .filter(|r| {
            let a_mod = a % *r;
            k_primes.primes().all(|s| {
                let e = Natural::from(k) / s;
                !a_mod.modpow(&e, r).is_one()
            })
        })
        .cloned()
        .collect()
}

/// Writes `q = p^m` with `p` prime.
pub fn prime_power_decompose(q: u64) -> Result<(Natural, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q.to_string()));
    }
    let f = factor(&Natural::from(q));
    match f.factors() {
        [(p, m)] => Ok((p.clone(), *m)),
        _ => Err(Error::NotPrimePower(q.to_string())),
    }
}

/// `q^e − 1` as a natural.
pub fn pow_minus_one(q: &Natural, e: u32) -> Natural {
    q.pow(e) - 1u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&nat(2)));
        assert!(!is_prime(&nat(2047)));
        assert!(is_prime(&nat(757)));
        assert!(!is_prime(&nat(0)));
        assert!(!is_prime(&nat(1)));
        // strong pseudoprime to bases 2..=37 except the full set
        assert!(!is_prime(&nat(3_215_031_751)));
    }

    #[test]
    fn primality_above_u64() {
        let m61: Natural = (Natural::one() << 61) - 1u32;
        let m89: Natural = (Natural::one() << 89) - 1u32;
        let m127: Natural = (Natural::one() << 127) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m61 * &m89)));
        assert!(!is_prime(&(&m89 * &m127)));
    }

    #[test]
    fn factor_examples() {
        assert!(factor(&nat(1)).is_empty());
        assert_eq!(pairs(&factor(&nat(2047))), vec![(23, 1), (89, 1)]);
        assert_eq!(pairs(&factor(&nat(59048))), vec![(2, 3), (11, 2), (61, 1)]);
    }

    #[test]
    fn factor_large_semiprimes_and_powers() {
        let p = nat(1_000_003);
        let q = nat(998_244_353);
        let n = &p * &q * &q;
        assert_eq!(
            pairs(&factor(&n)),
            vec![(1_000_003, 1), (998_244_353, 2)]
        );
        // 2^64 + 1 = 274177 · 67280421310721
        let f = factor(&((Natural::one() << 64) + 1u32));
        assert_eq!(pairs(&f), vec![(274177, 1), (67280421310721, 1)]);
        let cube = nat(1_000_003).pow(3);
        assert_eq!(pairs(&factor(&cube)), vec![(1_000_003, 3)]);
    }

    #[test]
    fn factor_is_seed_independent() {
        let n = nat(16u64.pow(11) - 1);
        assert_eq!(factor_seeded(&n, 0), factor_seeded(&n, 12345));
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_primes(&nat(2), 11), vec![nat(23), nat(89)]);
        assert!(zsigmondy_primes(&nat(2), 6).is_empty());
        assert_eq!(zsigmondy_primes(&nat(3), 10), vec![nat(61)]);
        // a = 2^j − 1, k = 2 is the other exceptional family
        assert!(zsigmondy_primes(&nat(7), 2).is_empty());
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_decompose(8).unwrap(), (nat(2), 3));
        assert_eq!(prime_power_decompose(49).unwrap(), (nat(7), 2));
        assert!(matches!(
            prime_power_decompose(12),
            Err(Error::NotPrimePower(_))
        ));
        assert!(prime_power_decompose(1).is_err());
    }

    #[test]
    fn factorization_lcm_and_product() {
        let a = factor(&nat(12));
        let b = factor(&nat(18));
        assert_eq!(a.lcm(&b).value(), nat(36));
        assert_eq!(a.product(&b).value(), nat(216));
    }
}
