//! The scalar type: an exact element of Q(zeta_N).

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{field_data, poly};
use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Exact element of the cyclotomic field Q(zeta_N), stored in the power
/// basis reduced modulo Phi_N. Equality, ordering and hashing are structural,
/// which is sound because the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    conductor: u32,
    coeffs: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// zeta_N^k as a canonical field element; k is reduced mod N.
pub fn root_of_unity(n: u32, k: i64) -> CycloNum {
    assert!(n >= 1, "conductor must be positive");
    let k = k.rem_euclid(n as i64) as usize;
    let fd = field_data(n);
    let mut coeffs = vec![Rat::zero(); fd.phi];
    if k < fd.phi {
        coeffs[k] = Rat::one();
    } else {
        for (i, c) in fd.pow_red[k - fd.phi].iter().enumerate() {
            coeffs[i] = Rat::from_integer(c.clone());
        }
    }
    CycloNum { conductor: n, coeffs }
}

/// Exact field arithmetic with automatic embedding into the lcm conductor.
pub fn field_arith(a: &CycloNum, b: &CycloNum, op: ArithOp) -> Result<CycloNum> {
    let (a, b) = CycloNum::unify(a, b);
    Ok(match op {
        ArithOp::Add => &a + &b,
        ArithOp::Sub => &a - &b,
        ArithOp::Mul => &a * &b,
        ArithOp::Div => a.checked_div(&b)?,
    })
}

impl CycloNum {
    pub fn zero(conductor: u32) -> Self {
        let fd = field_data(conductor);
        CycloNum { conductor, coeffs: vec![Rat::zero(); fd.phi] }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rat::one())
    }

    pub fn from_rational(conductor: u32, r: Rat) -> Self {
        let mut v = Self::zero(conductor);
        v.coeffs[0] = r;
        v
    }

    pub fn from_int(conductor: u32, k: i64) -> Self {
        Self::from_rational(conductor, Rat::from_integer(BigInt::from(k)))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Same field element written with conductor `m` (requires N | m).
    pub fn embed(&self, m: u32) -> Result<CycloNum> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if m % self.conductor != 0 {
            return Err(Error::BadEmbedding { from: self.conductor, to: m });
        }
        let step = (m / self.conductor) as i64;
        let mut acc = CycloNum::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &root_of_unity(m, step * i as i64).scale(c);
            }
        }
        Ok(acc)
    }

    /// Both arguments embedded into the lcm of their conductors.
    pub fn unify(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = num::integer::lcm(a.conductor, b.conductor);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    pub fn scale(&self, r: &Rat) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugate (the Galois map zeta -> zeta^(N-1)).
    pub fn conj(&self) -> CycloNum {
        let n = self.conductor;
        let mut acc = CycloNum::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &root_of_unity(n, -(i as i64)).scale(c);
            }
        }
        acc
    }

    pub fn checked_div(&self, rhs: &CycloNum) -> Result<CycloNum> {
        let (a, b) = CycloNum::unify(self, rhs);
        Ok(&a * &b.inverse()?)
    }

    pub fn inverse(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.conductor));
        }
        let fd = field_data(self.conductor);
        if fd.phi == 1 {
            return Ok(CycloNum::from_rational(
                self.conductor,
                self.coeffs[0].recip(),
            ));
        }
        // Phi_N as a rational polynomial.
        let phi_poly = {
            let ints = super::poly::cyclotomic_poly(self.conductor);
            ints.into_iter().map(Rat::from_integer).collect::<Vec<_>>()
        };
        let (g, s) = poly::half_ext_gcd(&self.coeffs, &phi_poly);
        debug_assert_eq!(poly::deg(&g), Some(0), "Phi_N must be coprime to a nonzero element");
        let ginv = g[0].recip();
        let mut coeffs = vec![Rat::zero(); fd.phi];
        for (i, c) in s.iter().enumerate() {
            // deg(s) < phi since deg(self) < phi = deg(Phi).
            coeffs[i] = c * &ginv;
        }
        Ok(CycloNum { conductor: self.conductor, coeffs })
    }

    /// Multiplicative order, or None if `self` is not a root of unity of
    /// order <= cap.
    pub fn mult_order(&self, cap: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    fn reduce_product(conductor: u32, raw: Vec<Rat>) -> CycloNum {
        let fd = field_data(conductor);
        let mut coeffs: Vec<Rat> = raw[..fd.phi.min(raw.len())].to_vec();
        coeffs.resize(fd.phi, Rat::zero());
        for (k, c) in raw.iter().enumerate().skip(fd.phi) {
            if !c.is_zero() {
                for (i, r) in fd.pow_red[k - fd.phi].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[i] += c * &Rat::from_integer(r.clone());
                    }
                }
            }
        }
        CycloNum { conductor, coeffs }
    }
}

impl std::ops::Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        let (mut a, b) = CycloNum::unify(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl std::ops::Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        let (mut a, b) = CycloNum::unify(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl std::ops::Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::unify(self, rhs);
        let phi = a.coeffs.len();
        let mut raw = vec![Rat::zero(); 2 * phi - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    raw[i + j] += ca * cb;
                }
            }
        }
        CycloNum::reduce_product(a.conductor, raw)
    }
}

impl std::ops::Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloNum {
    /// Canonical textual form, e.g. `1/2 - 1/2*z8^3 + z8`. Round-trips
    /// through the `FromStr` parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", fmt_rat(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rat(&mag))?;
                }
                write!(f, "z{}", self.conductor)?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({})", self)
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    } else {
        Ok(Rat::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?))
    }
}

impl FromStr for CycloNum {
    type Err = Error;

    /// Parses the `Display` grammar: terms `r`, `z<N>`, `r*z<N>^k` joined by
    /// `+`/`-`. All z-tokens must name the same conductor.
    fn from_str(s: &str) -> Result<CycloNum> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic literal".into()));
        }
        // Split into signed terms at top level.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut seen_any = false;
        for ch in s.chars() {
            match ch {
                '+' | '-' if seen_any && !cur.trim().is_empty() => {
                    terms.push((neg, cur.trim().to_string()));
                    cur = String::new();
                    neg = ch == '-';
                }
                '-' if cur.trim().is_empty() => {
                    neg = !neg;
                    seen_any = true;
                }
                '+' if cur.trim().is_empty() => {
                    seen_any = true;
                }
                _ => {
                    cur.push(ch);
                    seen_any = true;
                }
            }
        }
        if !cur.trim().is_empty() {
            terms.push((neg, cur.trim().to_string()));
        }
        let mut conductor = 1u32;
        let mut parsed: Vec<(bool, Rat, u32, usize)> = Vec::new();
        for (neg, t) in &terms {
            let (coeff, zpart) = match t.split_once('*') {
                Some((c, z)) => (parse_rat(c)?, z.trim().to_string()),
                None => {
                    if t.starts_with('z') {
                        (Rat::one(), t.clone())
                    } else {
                        (parse_rat(t)?, String::new())
                    }
                }
            };
            let (n, k) = if zpart.is_empty() {
                (1u32, 0usize)
            } else {
                let rest = zpart
                    .strip_prefix('z')
                    .ok_or_else(|| Error::Parse(format!("bad term '{t}'")))?;
                let (nstr, kstr) = match rest.split_once('^') {
                    Some((n, k)) => (n, k),
                    None => (rest, "1"),
                };
                let n: u32 = nstr
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad conductor in '{t}'")))?;
                let k: usize = kstr
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{t}'")))?;
                (n, k)
            };
            if n > 1 {
                if conductor > 1 && conductor != n {
                    return Err(Error::Parse(format!(
                        "mixed conductors {conductor} and {n} in '{s}'"
                    )));
                }
                conductor = n;
            }
            parsed.push((*neg, coeff, n, k));
        }
        let mut acc = CycloNum::zero(conductor);
        for (neg, coeff, n, k) in parsed {
            let coeff = if neg { -coeff } else { coeff };
            let term = if n == 1 {
                CycloNum::from_rational(conductor, coeff)
            } else {
                root_of_unity(conductor, k as i64).scale(&coeff)
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // Pure rationals print without a z-token; pin the conductor so that
        // deserialization is exact.
        if self.conductor > 1 && self.as_rational().is_some() {
            serializer.serialize_str(&format!("{}@{}", self, self.conductor))
        } else {
            serializer.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let (body, cond) = match s.split_once('@') {
            Some((b, c)) => {
                let cond: u32 = c.parse().map_err(serde::de::Error::custom)?;
                (b.to_string(), Some(cond))
            }
            None => (s, None),
        };
        let v: CycloNum = body.parse().map_err(serde::de::Error::custom)?;
        match cond {
            Some(c) => v.embed(c).map_err(serde::de::Error::custom),
            None => Ok(v),
        }
    }
}
