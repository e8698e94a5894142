//! Commutative polynomials in `n` variables (the simple-coroot coordinates
//! of V∨), with sparse monomial storage.

use std::collections::BTreeMap;

use num::complex::Complex64;

use crate::field::Field;
use crate::linalg::Mat;

/// Exponent vector.
pub type Monomial = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    n: usize,
    terms: BTreeMap<Monomial, F>,
}

fn degree_of(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl<F: Field> Poly<F> {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: F) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, F::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(m, F::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.negligible() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.negligible() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(degree_of).max().unwrap_or(0)
    }

    /// True when every term has total degree exactly `d`.
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|m| degree_of(m) == d)
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&vec![0; self.n]).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u8) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Coefficient-wise conjugation.
    pub fn conj(&self) -> Self {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Algebra substitution `x_j ↦ images[j]`.
    pub fn substitute(&self, images: &[Poly<F>]) -> Self {
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(p.n)]).collect();
        let mut out = Self::zero(images.first().map_or(self.n, |p| p.n));
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out.n, c.clone());
            for (j, &e) in m.iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().expect("nonempty").mul(&images[j]);
                    powers[j].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[j][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Linear change of variables: `x_j ↦ Σ_k m[(k, j)] x_k` (the action of
    /// the matrix `m` on V∨ extended to S(V∨)).
    pub fn act(&self, m: &Mat<F>) -> Self {
        let images: Vec<Poly<F>> = (0..self.n).map(|j| Poly::linear(&m.column(j))).collect();
        self.substitute(&images)
    }

    /// Divides by `x_i`; `None` if some monomial lacks `x_i` (float round-off
    /// below `1e-9` is discarded).
    pub fn divide_var(&self, i: usize) -> Option<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                if F::EXACT || c.magnitude() > 1e-9 {
                    return None;
                }
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c.clone());
        }
        Some(out)
    }

    pub fn eval(&self, point: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let v = m.iter().zip(point).fold(c.clone(), |v, (&e, x)| {
                (0..e).fold(v, |v, _| v * x.clone())
            });
            acc + v
        })
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
            let v = m
                .iter()
                .zip(point)
                .fold(c.to_c64(), |v, (&e, x)| v * x.powu(e as u32));
            acc + v
        })
    }

    /// All monomials in `n` variables of total degree exactly `d`, in a fixed order.
    pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
        fn rec(n: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if prefix.len() == n - 1 {
                prefix.push(d as u8);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e as u8);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_string_with(&self, names: &[String], fmt: impl Fn(&F) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| if e == 1 { names[j].clone() } else { format!("{}^{}", names[j], e) })
                    .collect();
                if vars.is_empty() {
                    fmt(c)
                } else {
                    format!("{}*{}", fmt(c), vars.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};

    #[test]
    fn arithmetic_and_substitution() {
        let x: Poly<Q> = Poly::var(2, 0);
        let y: Poly<Q> = Poly::var(2, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.terms().len(), 3);
        // swap x and y
        let swapped = p.substitute(&[y.clone(), x.clone()]);
        assert_eq!(swapped, p);
        let d = p.sub(&x.pow(2)).divide_var(1).unwrap();
        assert_eq!(d, x.scale(&q(2, 1)).add(&y));
        assert!(x.divide_var(1).is_none());
        assert_eq!(p.eval(&[q(1, 1), q(2, 1)]), q(9, 1));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Poly::<Q>::monomials_of_degree(2, 3).len(), 4);
        assert_eq!(Poly::<Q>::monomials_of_degree(3, 2).len(), 6);
        assert_eq!(Poly::<Q>::monomials_of_degree(1, 0), vec![vec![0u8]]);
    }
}
