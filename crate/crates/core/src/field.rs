//! Small Galois fields GF(p^d), table-driven.
//!
//! Elements are encoded as integers `0..p^d` whose base-`p` digits are the
//! polynomial coefficients, lowest degree first.

use crate::error::{Error, Result};

/// Irreducible moduli (coefficients lowest degree first) for the prime-power
/// orders available without a user override.
const BUILTIN_MODULI: &[(usize, usize, &[usize])] = &[
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (3, 2, &[1, 0, 1]),       // x^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (5, 2, &[2, 0, 1]),       // x^2 + 2
    (3, 3, &[1, 2, 0, 1]),    // x^3 + 2x + 1
];

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, d))` with `n = p^d`, `p` prime, `d ≥ 1`.
pub fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut rest, mut d) = (n, 0);
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    characteristic: usize,
    degree: usize,
    /// Monic, `degree + 1` coefficients, lowest first. `[0, 1]` for prime fields.
    modulus: Vec<usize>,
}

impl FieldSpec {
    pub fn prime(p: usize) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `modulus` may be omitted for prime fields and for orders in the
    /// built-in table (4, 8, 9, 16, 25, 27).
    pub fn new(p: usize, degree: usize, modulus: Option<Vec<usize>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("characteristic {p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::BadField("degree must be positive".into()));
        }
        let modulus = match modulus {
            Some(m) => m,
            None if degree == 1 => vec![0, 1],
            None => BUILTIN_MODULI
                .iter()
                .find(|(bp, bd, _)| *bp == p && *bd == degree)
                .map(|(_, _, m)| m.to_vec())
                .ok_or_else(|| {
                    Error::BadField(format!(
                        "no built-in modulus for GF({p}^{degree}); supply one"
                    ))
                })?,
        };
        let modulus = normalize_modulus(p, degree, modulus)?;
        if !is_irreducible(p, &modulus) {
            return Err(Error::BadField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(FieldSpec {
            characteristic: p,
            degree,
            modulus,
        })
    }

    pub fn for_order(q: usize) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        Self::new(p, d, None)
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn order(&self) -> usize {
        self.characteristic.pow(self.degree as u32)
    }
}

fn normalize_modulus(p: usize, degree: usize, mut m: Vec<usize>) -> Result<Vec<usize>> {
    if m.iter().any(|&c| c >= p) {
        return Err(Error::BadField(format!("modulus coefficient out of range for GF({p})")));
    }
    while m.last() == Some(&0) {
        m.pop();
    }
    if m.len() != degree + 1 {
        return Err(Error::BadField(format!(
            "modulus has degree {}, expected {degree}",
            m.len().saturating_sub(1)
        )));
    }
    let lead_inv = inv_mod(m[degree], p);
    Ok(m.into_iter().map(|c| c * lead_inv % p).collect())
}

fn inv_mod(a: usize, p: usize) -> usize {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue mod prime")
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(p: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(p: usize, modulus: &[usize]) -> bool {
    let d = modulus.len() - 1;
    for k in 1..=d / 2 {
        for low in 0..p.pow(k as u32) {
            let mut f: Vec<usize> = digits(low, p, k);
            f.push(1);
            if poly_rem(p, modulus, &f).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: usize, p: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

/// Field with precomputed addition and multiplication tables.
#[derive(Clone, Debug)]
pub struct GaloisField {
    spec: FieldSpec,
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Self {
        let p = spec.characteristic;
        let d = spec.degree;
        let q = spec.order();
        let encode = |coeffs: &[usize]| coeffs.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, d);
            for b in 0..q {
                let db = digits(b, p, d);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);

                let mut prod = vec![0; 2 * d - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut rem = poly_rem(p, &prod, &spec.modulus);
                rem.resize(d, 0);
                mul[a * q + b] = encode(&rem);
            }
        }
        GaloisField { spec, q, add, mul }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }
}
