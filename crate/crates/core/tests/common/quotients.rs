//! Finite matrix quotients used as a nontriviality oracle. A homomorphism
//! from the free group to GL(2, p) that kills every relator factors through
//! the presented group, so a nonidentity image proves a word nontrivial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = [u64; 4];

fn mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn det(a: &Mat, p: u64) -> u64 {
    (a[0] * a[3] % p + p - a[1] * a[2] % p) % p
}

fn inv(a: &Mat, p: u64) -> Mat {
    let d = inv_mod(det(a, p), p);
    [a[3] * d % p, (p - a[1]) * d % p, (p - a[2]) * d % p, a[0] * d % p]
}

fn mpow(a: &Mat, mut e: u64, p: u64) -> Mat {
    let mut r = [1, 0, 0, 1];
    let mut b = *a;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(&r, &b, p);
        }
        b = mul(&b, &b, p);
        e >>= 1;
    }
    r
}

fn random_invertible(rng: &mut ChaCha8Rng, p: u64) -> Mat {
    loop {
        let m = [rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p)];
        if det(&m, p) != 0 {
            return m;
        }
    }
}

/// An element of exact multiplicative order `d` in F_p (`d | p − 1`).
fn root_of_unity(rng: &mut ChaCha8Rng, d: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % d, 0);
    let primes: Vec<u64> = (2..=d).filter(|q| d.is_multiple_of(*q) && (2..*q).all(|r| q % r != 0)).collect();
    loop {
        let h = pow_mod(rng.gen_range(2..p), (p - 1) / d, p);
        if primes.iter().all(|q| pow_mod(h, d / q, p) != 1) {
            return h;
        }
    }
}

/// A random conjugate of `diag(ζ, ζ⁻¹)`.
fn torus_element(rng: &mut ChaCha8Rng, zeta: u64, p: u64) -> Mat {
    let c = random_invertible(rng, p);
    let d = [zeta, 0, 0, inv_mod(zeta, p)];
    mul(&mul(&c, &d, p), &inv(&c, p), p)
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    // Brute force is fine for the small primes used here.
    (0..p).find(|x| x * x % p == a % p)
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub p: u64,
    gens: Vec<Mat>,
    invs: Vec<Mat>,
}

impl Quotient {
    pub fn new(p: u64, gens: Vec<Mat>) -> Quotient {
        let invs = gens.iter().map(|g| inv(g, p)).collect();
        Quotient { p, gens, invs }
    }

    pub fn image(&self, w: &[i32]) -> Mat {
        let mut m = [1, 0, 0, 1];
        for &l in w {
            let i = (l.unsigned_abs() - 1) as usize;
            let g = if l > 0 { &self.gens[i] } else { &self.invs[i] };
            m = mul(&m, g, self.p);
        }
        m
    }

    pub fn is_identity(&self, w: &[i32]) -> bool {
        self.image(w) == [1, 0, 0, 1]
    }
}

/// Quotients of `⟨a, x ∣ (a^2 x^2)^8⟩`: `M = A²X²` has order 8.
pub fn a2x2_power8(seed: u64, primes: &[u64], per_prime: usize) -> Vec<Quotient> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &p in primes {
        while out.iter().filter(|q: &&Quotient| q.p == p).count() < per_prime {
            let zeta = root_of_unity(&mut rng, 8, p);
            let m = torus_element(&mut rng, zeta, p);
            let a = random_invertible(&mut rng, p);
            let b = mul(&inv(&mpow(&a, 2, p), p), &m, p);
            // X with X² = B from Cayley–Hamilton, using det B = 1 after scaling.
            let d = det(&b, p);
            let Some(sd) = sqrt_mod(d, p) else { continue };
            let bs = {
                let s = inv_mod(sd, p);
                [b[0] * s % p, b[1] * s % p, b[2] * s % p, b[3] * s % p]
            };
            let t = (bs[0] + bs[3]) % p;
            let mut found = None;
            for s in [1u64, p - 1] {
                let r2 = (t + 2 * s) % p;
                if r2 == 0 {
                    continue;
                }
                if let Some(r) = sqrt_mod(r2, p) {
                    let ri = inv_mod(r, p);
                    let x = [(bs[0] + s) % p * ri % p, bs[1] * ri % p, bs[2] * ri % p, (bs[3] + s) % p * ri % p];
                    found = Some(x);
                    break;
                }
            }
            let Some(x0) = found else { continue };
            // X² = B/√d, so rescale by a square root of √d.
            let Some(f) = sqrt_mod(sd, p) else { continue };
            let x = [x0[0] * f % p, x0[1] * f % p, x0[2] * f % p, x0[3] * f % p];
            let q = Quotient::new(p, vec![a, x]);
            assert!(q.is_identity(&super::block(0, 1, 2, 8)), "relator must die");
            out.push(q);
        }
    }
    out
}

/// Quotients where `u = (a x)^13` maps to the central element −I, so
/// `[a,u]`, `[x,u]` and `u²` all die.
pub fn ax13_central(seed: u64, primes: &[u64], per_prime: usize) -> Vec<Quotient> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &p in primes {
        for _ in 0..per_prime {
            let zeta = root_of_unity(&mut rng, 26, p);
            let m = torus_element(&mut rng, zeta, p);
            let a = random_invertible(&mut rng, p);
            let x = mul(&inv(&a, p), &m, p);
            let q = Quotient::new(p, vec![a, x]);
            let u = super::block(0, 1, 1, 13);
            assert_eq!(q.image(&u), [p - 1, 0, 0, p - 1]);
            out.push(q);
        }
    }
    out
}
