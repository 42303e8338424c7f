//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Just enough algebra for symbolic identity checks: arithmetic, partial
//! derivatives, and evaluation. Monomials are exponent vectors over a
//! fixed number of variables.

use crate::exact::{rational_to_string, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0u32; nvars];
        exp[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exp, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (exp, coeff) in &self.terms {
            if exp[i] == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[i] -= 1;
            let c = coeff * Rational::from_integer(exp[i].into());
            out.insert(e, c);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exp.iter()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    fn insert(&mut self, exp: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.insert(exp, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", rational_to_string(coeff))?;
            for (i, &e) in exp.iter().enumerate() {
                if e == 1 {
                    write!(f, "*z{}", i)?;
                } else if e > 1 {
                    write!(f, "*z{}^{}", i, e)?;
                }
            }
        }
        Ok(())
    }
}
