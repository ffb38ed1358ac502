//! Dense integer polynomials in the variable q.
//!
//! Kazhdan-Lusztig polynomials are polynomials in q = t^2 with nonnegative
//! exponents, so a plain coefficient vector is enough. The vector never keeps
//! trailing zeros: the zero polynomial is the empty vector.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// q^k with coefficient c. Returns zero when c == 0.
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in q, None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of t^n under q = t^2: zero for negative or odd n.
    pub fn t_coefficient(&self, n: i64) -> i64 {
        if n < 0 || n % 2 != 0 {
            0
        } else {
            self.coeff((n / 2) as usize)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![0; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i) + other.coeff(i);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![0; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i) - other.coeff(i);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn scale(&self, c: i64) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Ascending coefficient list "c0,c1,...". The zero polynomial prints "0".
    pub fn coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse the coeff_list format back. "0" and "" give zero.
    pub fn parse_coeff_list(s: &str) -> Result<Poly, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Poly::zero());
        }
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let c: i64 = part
                .trim()
                .parse()
                .map_err(|e| format!("bad coefficient {part:?}: {e}"))?;
            coeffs.push(c);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if *c == 1 => write!(f, "q")?,
                1 => write!(f, "{c}q")?,
                _ if *c == 1 => write!(f, "q^{k}")?,
                _ => write!(f, "{c}q^{k}")?,
            }
        }
        Ok(())
    }
}
