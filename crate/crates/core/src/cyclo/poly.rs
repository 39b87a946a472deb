//! Integer and rational polynomial helpers: cyclotomic polynomials and the
//! extended Euclidean algorithm used for field inversion.

use num::{BigInt, BigRational, Zero};

use super::num::Rat;

pub fn euler_phi(n: u32) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Coefficients of Phi_n, low degree first, monic.
///
/// Computed by exact division: Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    let mut num = vec![BigInt::from(0); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    for d in 1..n {
        if n % d == 0 {
            num = div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Exact division of integer polynomials with monic divisor (up to the sign
/// of the leading coefficient, which for cyclotomic factors is always 1).
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem: Vec<BigInt> = a.to_vec();
    let da = rem.len() - 1;
    assert!(da >= db);
    let mut quot = vec![BigInt::from(0); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[db + k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for i in 0..=db {
            rem[i + k] -= &c * &b[i];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

pub fn deg(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_sub_scaled(a: &mut Vec<Rat>, b: &[Rat], scale: &Rat, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        if !c.is_zero() {
            a[i + shift] -= scale * c;
        }
    }
}

/// Remainder-producing division over Q[x]. Returns (quotient, remainder).
pub fn divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = deg(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Rat> = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().max(db + 1)];
    loop {
        match deg(&rem) {
            Some(dr) if dr >= db => {
                let c = &rem[dr] / &lead;
                quot[dr - db] = c.clone();
                poly_sub_scaled(&mut rem, b, &c, dr - db);
            }
            _ => break,
        }
    }
    (trim(quot), trim(rem))
}

/// Extended gcd over Q[x]: returns (g, s) with s*a = g (mod b) and g the gcd
/// of a and b. Enough for inversion modulo an irreducible polynomial.
pub fn half_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0: Vec<Rat> = a.to_vec();
    let mut r1: Vec<Rat> = b.to_vec();
    let mut s0: Vec<Rat> = vec![BigRational::from_integer(1.into())];
    let mut s1: Vec<Rat> = vec![BigRational::zero()];
    while deg(&r1).is_some() {
        let (q, r) = divmod(&r0, &r1);
        let mut s = s0.clone();
        // s = s0 - q * s1
        let prod = mul(&q, &s1);
        if s.len() < prod.len() {
            s.resize(prod.len(), BigRational::zero());
        }
        for (i, c) in prod.iter().enumerate() {
            s[i] -= c;
        }
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = trim(s);
    }
    (trim(r0), s0)
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if deg(a).is_none() || deg(b).is_none() {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(coeffs(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(coeffs(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(coeffs(&cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(coeffs(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(coeffs(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(coeffs(&cyclotomic_poly(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(coeffs(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_matches_degree() {
        for n in 1..60u32 {
            assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n), "n={n}");
        }
    }
}
