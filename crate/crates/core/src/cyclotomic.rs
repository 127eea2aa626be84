//! Exact arithmetic in cyclotomic fields Q(w_n) and the Galois action of (Z/n)^*.
//!
//! Elements are stored as rational-coefficient polynomials in a primitive
//! n-th root of unity w, reduced modulo the n-th cyclotomic polynomial
//! Phi_n. The representation is canonical: two elements are equal iff their
//! coefficient vectors (length phi(n)) are equal.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Euler totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            phi -= phi / p;
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials; `num` must be divisible by `den`.
/// Coefficients are low-to-high.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let lead = den[dd].clone();
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] / &lead;
        debug_assert_eq!(&c * &lead, rem[k + dd]);
        if !c.is_zero() {
            for j in 0..=dd {
                let t = &c * &den[j];
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial Phi_n as integer coefficients, low-to-high.
///
/// Computed by iterated exact division of x^n - 1 by Phi_d over the proper
/// divisors d of n; results are cached per n.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^n - 1
        let mut f = vec![BigInt::zero(); (n + 1) as usize];
        f[0] = BigInt::from(-1);
        f[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                f = poly_div_exact(&f, &phi_d);
            }
        }
        f
    };
    debug_assert_eq!(poly.len() as u64 - 1, euler_phi(n));
    let arc = Arc::new(poly);
    cyclotomic_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

/// Element of Q(w_n): polynomial in w of degree < phi(n), reduced mod Phi_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn zero(order: u64) -> Self {
        let phi = euler_phi(order) as usize;
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); phi],
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(order: u64, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(n)))
    }

    /// w_n^k, reduced.
    pub fn root_of_unity(order: u64, k: u64) -> Self {
        let k = k % order;
        let mut poly = vec![Rational::zero(); k as usize + 1];
        poly[k as usize] = Rational::one();
        Self::from_poly(order, poly)
    }

    /// Builds an element from arbitrary-degree polynomial coefficients in w,
    /// reducing mod Phi_n.
    pub fn from_poly(order: u64, poly: Vec<Rational>) -> Self {
        let coeffs = reduce_mod_phi(order, poly);
        Cyclotomic { order, coeffs }
    }

    /// Exact coefficient vector as given; errors unless the length is phi(n).
    pub fn from_reduced_coeffs(order: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let phi = euler_phi(order) as usize;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch {
                expected: phi,
                got: coeffs.len(),
            });
        }
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational iff every coefficient beyond index 0 vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_poly(self.order, prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Bezout: u * self + v * Phi_n = gcd (a nonzero constant, since Phi_n
        // is irreducible over Q and self != 0 mod Phi_n).
        let (g, u) = ext_gcd_poly(&self.coeffs, &phi);
        debug_assert_eq!(poly_degree(&g), Some(0));
        let c = g[0].recip();
        let inv_poly: Vec<Rational> = u.iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(self.order, inv_poly))
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Order of the element in the multiplicative group, if finite.
    ///
    /// Roots of unity in Q(w_n) have order dividing lcm(2, n); anything whose
    /// order exceeds that bound is not of finite order.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = num_integer::lcm(2, self.order);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self).ok()?;
        }
        None
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{s}")?,
                1 if s == "1" => write!(f, "w")?,
                1 => write!(f, "{s}*w")?,
                _ if s == "1" => write!(f, "w^{i}")?,
                _ => write!(f, "{s}*w^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of `poly` modulo Phi_order, truncated/padded to length phi(order).
fn reduce_mod_phi(order: u64, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi_poly = cyclotomic_polynomial(order);
    let deg = phi_poly.len() - 1;
    let modulus: Vec<Rational> = phi_poly
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    while let Some(d) = poly_degree(&poly) {
        if d < deg {
            break;
        }
        let lead = poly[d].clone();
        // Phi_n is monic: subtract lead * x^(d-deg) * Phi_n.
        for j in 0..=deg {
            let t = &lead * &modulus[j];
            poly[d - deg + j] -= t;
        }
    }
    // deg(Phi_n) = phi(n); the loop left poly with degree < deg.
    poly.resize(deg, Rational::zero());
    poly.truncate(deg);
    poly
}

/// Extended gcd of polynomials over Q: returns (g, u) with u*a + v*b = g.
fn ext_gcd_poly(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = a.to_vec();
    let mut r1: Vec<Rational> = b.to_vec();
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let uq = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = uq;
    }
    (r0, u0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (da, db) = (poly_degree(a), poly_degree(b));
    let (da, db) = match (da, db) {
        (Some(x), Some(y)) => (x, y),
        _ => return vec![Rational::zero()],
    };
    let mut out = vec![Rational::zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![Rational::zero(); a.len().saturating_sub(db) + 1];
    let lead = b[db].clone();
    loop {
        let da = match poly_degree(&rem) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let c = &rem[da] / &lead;
        for j in 0..=db {
            let t = &c * &b[j];
            rem[da - db + j] -= t;
        }
        quot[da - db] = c;
    }
    (quot, rem)
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(self, rhs).expect("cyclotomic order mismatch")
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::sub(self, rhs).expect("cyclotomic order mismatch")
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::mul(self, rhs).expect("cyclotomic order mismatch")
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

/// Field automorphism of Q(w_n) determined by w -> w^unit, gcd(unit, n) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisAutomorphism {
    order: u64,
    unit: u64,
}

impl GaloisAutomorphism {
    pub fn new(order: u64, unit: u64) -> Result<Self> {
        let unit = unit % order;
        if num_integer::gcd(unit, order) != 1 {
            return Err(Error::NonUnitResidue {
                residue: unit,
                modulus: order,
            });
        }
        Ok(GaloisAutomorphism { order, unit })
    }

    pub fn identity(order: u64) -> Self {
        GaloisAutomorphism {
            order,
            unit: 1 % order,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(GaloisAutomorphism {
            order: self.order,
            unit: (self.unit as u128 * other.unit as u128 % self.order as u128) as u64,
        })
    }

    /// Image of `a` under w -> w^unit, reduced mod Phi_n.
    pub fn apply(&self, a: &Cyclotomic) -> Result<Cyclotomic> {
        if self.order != a.order() {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: a.order(),
            });
        }
        let n = self.order;
        let mut poly = vec![Rational::zero(); n as usize];
        for (i, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as u128 * self.unit as u128) % n as u128) as usize;
            poly[e] += c;
        }
        Ok(Cyclotomic::from_poly(n, poly))
    }
}

/// Serialization: `{"n": 5, "coeffs": ["1", "-1/2", ...]}` with phi(n) entries.
impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("n", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u64,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        if raw.n > Budgets::default().cyclotomic_order_cap {
            return Err(D::Error::custom("order exceeds cap"));
        }
        let coeffs: Vec<Rational> = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()
            .map_err(|e| D::Error::custom(e.to_string()))?;
        Cyclotomic::from_reduced_coeffs(raw.n, coeffs).map_err(|e| D::Error::custom(e.to_string()))
    }
}

use crate::budget::Budgets;
