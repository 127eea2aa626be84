//! Sparse multivariate polynomials with exact cyclotomic coefficients.
//!
//! Terms are kept in graded-lex order with no zero coefficients stored, so
//! equality is structural. All coefficients of one polynomial share a single
//! cyclotomic order (order 1 means rational coefficients).

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector ordered by (total degree, lex).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials in `nvars` variables of total degree in [1, d], graded-lex.
pub fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    for total in 1..=d {
        fill(&mut out, &mut current, 0, total);
    }
    return out;

    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(Monomial(current.clone()));
            current[pos] = 0;
            return;
        }
        for v in 0..=remaining {
            current[pos] = v;
            fill(out, current, pos + 1, remaining - v);
        }
        current[pos] = 0;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    nvars: usize,
    order: u64,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl ExactPolynomial {
    pub fn zero(nvars: usize, order: u64) -> Self {
        ExactPolynomial {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        let mut p = Self::zero(nvars, c.order());
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, order: u64, i: usize) -> Self {
        let mut p = Self::zero(nvars, order);
        p.terms
            .insert(Monomial::var(nvars, i), Cyclotomic::one(order));
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Cyclotomic) -> Self {
        let mut p = Self::zero(nvars, c.order());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(existing) => {
                    let sum = existing.add(c)?;
                    if sum.is_zero() {
                        terms.remove(m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(ExactPolynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExactPolynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self> {
        if c.is_zero() {
            return Ok(Self::zero(self.nvars, self.order));
        }
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            let prod = x.mul(c)?;
            if !prod.is_zero() {
                terms.insert(m.clone(), prod);
            }
        }
        Ok(ExactPolynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        })
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&Cyclotomic::from_rational(self.order, q.clone()))
            .expect("same order")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut terms: BTreeMap<Monomial, Cyclotomic> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb)?;
                match terms.get_mut(&m) {
                    Some(existing) => {
                        let sum = existing.add(&c)?;
                        if sum.is_zero() {
                            terms.remove(&m);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            terms.insert(m, c);
                        }
                    }
                }
            }
        }
        Ok(ExactPolynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(self.nvars, Cyclotomic::one(self.order));
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Cyclotomic]) -> Result<Cyclotomic> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Cyclotomic::zero(self.order);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term = term.mul(&x.pow(e as u64)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Substitutes each variable by the given polynomial.
    pub fn substitute(&self, images: &[ExactPolynomial]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let mut acc = Self::zero(self.nvars, self.order);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.nvars, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    term = term.mul(&img.pow(e)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match c.as_rational() {
                Some(q) if q == Rational::from_integer(1.into()) && m.degree() > 0 => {
                    write!(f, "{m}")?
                }
                Some(q) => {
                    let qs = crate::rational::format_rational(&q);
                    if m.degree() == 0 {
                        write!(f, "{qs}")?;
                    } else {
                        write!(f, "{qs}*{m}")?;
                    }
                }
                None => {
                    if m.degree() == 0 {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c})*{m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn x(i: usize) -> ExactPolynomial {
        ExactPolynomial::var(3, 1, i)
    }

    #[test]
    fn arithmetic_and_eval() {
        // p = (x1 + x2)^2 - x3
        let p = x(0).add(&x(1)).unwrap().pow(2).unwrap().sub(&x(2)).unwrap();
        assert_eq!(p.degree(), Some(2));
        let pt: Vec<Cyclotomic> = [2, 3, 4]
            .iter()
            .map(|&v| Cyclotomic::from_integer(1, v))
            .collect();
        assert_eq!(p.eval(&pt).unwrap(), Cyclotomic::from_integer(1, 21));
    }

    #[test]
    fn graded_lex_order() {
        let ms = monomials_up_to_degree(2, 2);
        let shown: Vec<String> = ms.iter().map(|m| format!("{m}")).collect();
        assert_eq!(shown, vec!["x2", "x1", "x2^2", "x1*x2", "x1^2"]);
    }

    #[test]
    fn substitution_is_ring_hom() {
        // substitute x1 -> x2, x2 -> x1 into x1^2 * x2: get x2^2 * x1
        let p = x(0).pow(2).unwrap().mul(&x(1)).unwrap();
        let images = vec![x(1), x(0), x(2)];
        let q = p.substitute(&images).unwrap();
        let want = x(1).pow(2).unwrap().mul(&x(0)).unwrap();
        assert_eq!(q, want);
    }

    #[test]
    fn zero_coefficients_dropped() {
        let p = x(0).sub(&x(0)).unwrap();
        assert!(p.is_zero());
        let q = x(0).scale_rational(&rat_int(0));
        assert!(q.is_zero());
    }

    #[test]
    fn mixed_order_rejected() {
        let a = ExactPolynomial::var(2, 1, 0);
        let b = ExactPolynomial::var(2, 3, 0);
        assert!(a.add(&b).is_err());
    }
}
