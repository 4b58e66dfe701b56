//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNumber`] is stored as a sparse list of rational coefficients on the
//! Zumbroich basis of the smallest cyclotomic field containing it. Because
//! that representation is unique, structural equality is field equality.
//!
//! The Zumbroich basis of `Q(zeta_N)` is built prime by prime. Write the
//! `p`-part of an exponent `k` as `j + p^(e-1) * i` with `0 <= j < p^(e-1)`
//! and `0 <= i < p`. An exponent is admissible when `i != 0` for odd `p`
//! and `i == 0` for `p = 2`. Inadmissible powers are rewritten through the
//! relation `sum_{t=0}^{p-1} zeta_N^(k + t*N/p) = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of a cyclotomic field in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNumber {
    conductor: u64,
    terms: Vec<(u64, BigRational)>,
}

/// Prime factorisation as `(p, e)` pairs, ascending in `p`.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_admissible(k: u64, p: u64, e: u32) -> bool {
    let pe = p.pow(e);
    let digit = (k % pe) / p.pow(e - 1);
    if p == 2 {
        digit == 0
    } else {
        digit != 0
    }
}

/// Rewrite a dense coefficient vector of length `n` onto the Zumbroich basis.
fn zumbroich_reduce(n: u64, v: &mut [BigRational]) {
    for (p, e) in factorize(n) {
        let shift = n / p;
        for k in 0..n {
            if is_admissible(k, p, e) || v[k as usize].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[k as usize], BigRational::zero());
            if p == 2 {
                v[((k + shift) % n) as usize] -= &c;
            } else {
                for t in 1..p {
                    v[((k + t * shift) % n) as usize] -= &c;
                }
            }
        }
    }
}

/// `Q(zeta_{2M}) = Q(zeta_M)` for odd `M`: re-express over the smaller root.
fn halve_odd(n: u64, v: Vec<BigRational>) -> (u64, Vec<BigRational>) {
    let m = n / 2;
    let mut out = vec![BigRational::zero(); m as usize];
    for (k, c) in v.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u64;
        if k % 2 == 0 {
            out[((k / 2) % m) as usize] += c;
        } else {
            out[(((k + m) / 2) % m) as usize] -= c;
        }
    }
    (m, out)
}

/// If the reduced vector lies in a proper cyclotomic subfield `Q(zeta_{N/p})`,
/// return it re-expressed there (not yet reduced).
fn try_shrink(n: u64, v: &[BigRational]) -> Option<(u64, Vec<BigRational>)> {
    for (p, e) in factorize(n) {
        let q = n / p;
        if e >= 2 {
            let all_divisible = v
                .iter()
                .enumerate()
                .all(|(k, c)| c.is_zero() || k as u64 % p == 0);
            if all_divisible {
                let mut out = vec![BigRational::zero(); q as usize];
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        out[k / p as usize] = c.clone();
                    }
                }
                return Some((q, out));
            }
        } else {
            // p exactly divides n and p is odd; the subfield elements are
            // those whose coefficients are constant along each p-fibre.
            let mut out = vec![BigRational::zero(); q as usize];
            let mut ok = true;
            for k0 in (0..n).step_by(p as usize) {
                let first = &v[((k0 + q) % n) as usize];
                if (2..p).any(|t| &v[((k0 + t * q) % n) as usize] != first) {
                    ok = false;
                    break;
                }
                if !first.is_zero() {
                    out[(k0 / p) as usize] = -first.clone();
                }
            }
            if ok {
                return Some((q, out));
            }
        }
    }
    None
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycNumber {
            conductor: 1,
            terms: vec![(0, q)],
        }
    }

    /// Build from the dense coefficients of `1, zeta_n, ..., zeta_n^(n-1)`.
    pub fn from_dense(n: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        if coeffs.len() as u64 != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::normalize(n, coeffs))
    }

    fn normalize(n: u64, v: Vec<BigRational>) -> Self {
        let (mut n, mut v) = if n % 4 == 2 { halve_odd(n, v) } else { (n, v) };
        loop {
            zumbroich_reduce(n, &mut v);
            match try_shrink(n, &v) {
                Some((m, w)) => {
                    (n, v) = if m % 4 == 2 { halve_odd(m, w) } else { (m, w) };
                }
                None => break,
            }
        }
        let terms = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect::<Vec<_>>();
        if terms.is_empty() {
            return Self::zero();
        }
        CycNumber { conductor: n, terms }
    }

    fn dense_at(&self, n: u64) -> Vec<BigRational> {
        debug_assert_eq!(n % self.conductor, 0);
        let scale = n / self.conductor;
        let mut v = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.terms {
            v[(k * scale) as usize] += c;
        }
        v
    }

    /// `zeta_n^k` in canonical form.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "root of unity of order 0 is undefined".into(),
            ));
        }
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); n as usize];
        v[e] = BigRational::one();
        Ok(Self::normalize(n, v))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Exponent/coefficient pairs on the Zumbroich basis, ascending in the exponent.
    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (_, []) => Some(BigRational::zero()),
            (1, [(0, q)]) => Some(q.clone()),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// The Galois automorphism `zeta -> zeta^a`; `a` must be coprime to the conductor.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let n = self.conductor;
        if (a.rem_euclid(n as i64) as u64).gcd(&n) != 1 && n > 1 {
            return Err(Error::InvalidArgument(format!(
                "{a} is not a unit modulo {n}"
            )));
        }
        let mut v = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.terms {
            let e = ((*k as i64) * a).rem_euclid(n as i64) as usize;
            v[e] += c;
        }
        Ok(Self::normalize(n, v))
    }

    /// `sum_l w_l x_l y_l`, or `sum_l w_l x_l conj(y_l)` when `conj_y` is set,
    /// normalised once at the end.
    pub fn weighted_dot(x: &[CycNumber], y: &[CycNumber], weights: &[i64], conj_y: bool) -> Self {
        let n = x
            .iter()
            .chain(y)
            .fold(1u64, |acc, c| acc.lcm(&c.conductor));
        fn exps(c: &CycNumber, n: u64, flip: bool) -> Vec<(usize, &BigRational)> {
            let scale = n / c.conductor;
            c.terms
                .iter()
                .map(|(k, q)| {
                    let e = (k * scale) % n;
                    let e = if flip { (n - e) % n } else { e };
                    (e as usize, q)
                })
                .collect()
        }
        let small = |q: &BigRational| q.is_integer() && q.numer().to_i64().is_some_and(|v| v.abs() < 1 << 20);
        let integral = x.iter().chain(y).all(|c| c.terms.iter().all(|(_, q)| small(q)))
            && weights.iter().all(|w| w.abs() < 1 << 20);
        let nu = n as usize;
        if integral {
            let mut acc = vec![0i128; nu];
            for ((a, b), &w) in x.iter().zip(y).zip(weights) {
                let (ta, tb) = (exps(a, n, false), exps(b, n, conj_y));
                for &(ea, qa) in &ta {
                    let ca = i128::from(qa.numer().to_i64().unwrap()) * i128::from(w);
                    for &(eb, qb) in &tb {
                        acc[(ea + eb) % nu] += ca * i128::from(qb.numer().to_i64().unwrap());
                    }
                }
            }
            let dense = acc
                .into_iter()
                .map(|v| BigRational::from_integer(BigInt::from(v)))
                .collect();
            return Self::normalize(n, dense);
        }
        let mut acc = vec![BigRational::zero(); nu];
        for ((a, b), &w) in x.iter().zip(y).zip(weights) {
            let w = BigRational::from_integer(w.into());
            let (ta, tb) = (exps(a, n, false), exps(b, n, conj_y));
            for &(ea, qa) in &ta {
                let ca = qa * &w;
                for &(eb, qb) in &tb {
                    acc[(ea + eb) % nu] += &ca * qb;
                }
            }
        }
        Self::normalize(n, acc)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycNumber {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor;
        let mut others = Self::one();
        for a in 2..n.max(2) {
            if a.gcd(&n) == 1 {
                others = &others * &self.galois(a as i64).ok()?;
            }
        }
        let norm = (self * &others).to_rational()?;
        Some(others.scale(&norm.recip()))
    }

    /// Floating-point embedding with `zeta_N = exp(2 pi i / N)`; display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let angle = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    fn binary(a: &Self, b: &Self, f: impl Fn(&Self, &Self, u64) -> Vec<BigRational>) -> Self {
        let n = a.conductor.lcm(&b.conductor);
        Self::normalize(n, f(a, b, n))
    }
}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        CycNumber::binary(self, rhs, |a, b, n| {
            let mut v = a.dense_at(n);
            let scale = n / b.conductor;
            for (k, c) in &b.terms {
                v[(k * scale) as usize] += c;
            }
            v
        })
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero();
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        CycNumber::binary(self, rhs, |a, b, n| {
            let (sa, sb) = (n / a.conductor, n / b.conductor);
            let mut v = vec![BigRational::zero(); n as usize];
            for (ka, ca) in &a.terms {
                for (kb, cb) in &b.terms {
                    v[((ka * sa + kb * sb) % n) as usize] += ca * cb;
                }
            }
            v
        })
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> Self {
        // accumulate densely at a common conductor, normalise once
        let items: Vec<_> = iter.collect();
        let n = items.iter().fold(1u64, |acc, x| acc.lcm(&x.conductor));
        let mut v = vec![BigRational::zero(); n as usize];
        for x in &items {
            let s = n / x.conductor;
            for (k, c) in &x.terms {
                v[(k * s) as usize] += c;
            }
        }
        CycNumber::normalize(n, v)
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{k}", self.conductor)?,
                (_, false) => write!(f, "{mag}*z{}^{k}", self.conductor)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({self})")
    }
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse an integer or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational number '{s}'"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    #[serde(rename = "N")]
    n: u64,
    terms: Vec<(u64, String)>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            n: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, rational_to_string(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(D::Error::custom("conductor N must be positive"));
        }
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (k, c) in repr.terms {
            let q = parse_rational(&c).map_err(D::Error::custom)?;
            *acc.entry(k % repr.n).or_insert_with(BigRational::zero) += q;
        }
        let mut v = vec![BigRational::zero(); repr.n as usize];
        for (k, q) in acc {
            v[k as usize] = q;
        }
        Ok(CycNumber::normalize(repr.n, v))
    }
}
