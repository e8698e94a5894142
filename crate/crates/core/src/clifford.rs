//! The Clifford algebra C(V∨) in an orthogonal basis `e_1, …, e_n` with
//! `e_i² = −q_i`, its grading, transpose and Pin membership, and explicit
//! spin modules.
//!
//! Elements are dense coefficient vectors indexed by bitmasks: bit `i` of the
//! index marks `e_{i+1}` in the ordered word `e_{i1} ⋯ e_{ik}`.

use std::ops::{Add, Neg, Sub};

use num::complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{max_abs, CMat, Mat};

/// Sign of `e_A e_B` before contracting repeated generators.
fn reorder_sign(a: usize, b: usize) -> bool {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        swaps += (a >> (i + 1)).count_ones();
        bb &= bb - 1;
    }
    swaps % 2 == 1
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement<F> {
    n: usize,
    coeffs: Vec<F>,
}

/// The algebra data: dimension and the squares `e_i² = −q_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Clifford<F> {
    q: Vec<F>,
    /// `Π_{i∈A} (−q_i)` for every bitmask `A`.
    factors: Vec<F>,
}

impl<F: Field> Clifford<F> {
    pub fn new(q: Vec<F>) -> Self {
        let n = q.len();
        let factors = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(F::one(), |acc, i| acc * -q[i].clone())
            })
            .collect();
        Clifford { q, factors }
    }

    /// Orthonormal generators (`e_i² = −1`).
    pub fn orthonormal(n: usize) -> Self {
        Self::new(vec![F::one(); n])
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[F] {
        &self.q
    }

    pub fn zero(&self) -> CliffordElement<F> {
        CliffordElement { n: self.dim(), coeffs: vec![F::zero(); 1 << self.dim()] }
    }

    pub fn scalar(&self, s: F) -> CliffordElement<F> {
        let mut e = self.zero();
        e.coeffs[0] = s;
        e
    }

    pub fn one(&self) -> CliffordElement<F> {
        self.scalar(F::one())
    }

    pub fn blade(&self, mask: usize, coeff: F) -> CliffordElement<F> {
        let mut e = self.zero();
        e.coeffs[mask] = coeff;
        e
    }

    /// `Σ v_i e_i`.
    pub fn vector(&self, v: &[F]) -> CliffordElement<F> {
        assert_eq!(v.len(), self.dim());
        let mut e = self.zero();
        for (i, x) in v.iter().enumerate() {
            e.coeffs[1 << i] = x.clone();
        }
        e
    }

    /// `e_A e_B = sign · e_{A xor B}`.
    pub fn blade_product(&self, a: usize, b: usize) -> (usize, F) {
        let f = self.factors[a & b].clone();
        (a ^ b, if reorder_sign(a, b) { -f } else { f })
    }

    pub fn mul(&self, x: &CliffordElement<F>, y: &CliffordElement<F>) -> Result<CliffordElement<F>> {
        if x.n != self.dim() || y.n != self.dim() {
            return Err(Error::Domain(format!(
                "Clifford dimension mismatch: {} and {} in C({})",
                x.n,
                y.n,
                self.dim()
            )));
        }
        Ok(self.mul_unchecked(x, y))
    }

    pub fn mul_unchecked(&self, x: &CliffordElement<F>, y: &CliffordElement<F>) -> CliffordElement<F> {
        let mut out = self.zero();
        for (a, ca) in x.coeffs.iter().enumerate() {
            if ca.negligible() {
                continue;
            }
            for (b, cb) in y.coeffs.iter().enumerate() {
                if cb.negligible() {
                    continue;
                }
                let (m, s) = self.blade_product(a, b);
                out.coeffs[m] = out.coeffs[m].clone() + s * ca.clone() * cb.clone();
            }
        }
        out
    }

    /// Matrix of left multiplication `y ↦ x y` on the blade basis.
    pub fn left_matrix(&self, x: &CliffordElement<F>) -> Mat<F> {
        let size = 1 << self.dim();
        let mut m: Mat<F> = Mat::zeros(size, size);
        for (a, ca) in x.coeffs.iter().enumerate() {
            if ca.negligible() {
                continue;
            }
            for b in 0..size {
                let (r, s) = self.blade_product(a, b);
                m[(r, b)] = m[(r, b)].clone() + s * ca.clone();
            }
        }
        m
    }

    pub fn inverse(&self, x: &CliffordElement<F>) -> Option<CliffordElement<F>> {
        let l = self.left_matrix(x);
        let mut rhs = vec![F::zero(); 1 << self.dim()];
        rhs[0] = F::one();
        let sol = l.solve(&rhs)?;
        let inv = CliffordElement { n: self.dim(), coeffs: sol };
        self.mul_unchecked(x, &inv).approx_eq(&self.one()).then_some(inv)
    }

    /// Matrix (in the `e_i` basis) of `p(a): ω ↦ ε(a) ω a⁻¹`, if it preserves V∨.
    pub fn projection(&self, a: &CliffordElement<F>) -> Option<Mat<F>> {
        let inv = self.inverse(a)?;
        let ea = a.epsilon();
        let n = self.dim();
        let mut m: Mat<F> = Mat::zeros(n, n);
        for j in 0..n {
            let img = self.mul_unchecked(&self.mul_unchecked(&ea, &self.blade(1 << j, F::one())), &inv);
            for (mask, c) in img.coeffs.iter().enumerate() {
                if c.negligible() {
                    continue;
                }
                if mask.count_ones() != 1 {
                    return None;
                }
                m[(mask.trailing_zeros() as usize, j)] = c.clone();
            }
        }
        Some(m)
    }

    /// Membership in `Pin(V∨) = {a : ε(a)V∨a⁻¹ ⊆ V∨, aᵗ = a⁻¹}`.
    pub fn pin_check(&self, a: &CliffordElement<F>) -> bool {
        match self.inverse(a) {
            Some(inv) => a.transpose().approx_eq(&inv) && self.projection(a).is_some(),
            None => false,
        }
    }

    /// Certifies that `a/√N ∈ Pin(V∨)` where `aᵗa = N` is a positive scalar;
    /// returns `N`.
    pub fn pin_ray_norm(&self, a: &CliffordElement<F>) -> Option<F> {
        let n = self.mul_unchecked(&a.transpose(), a);
        let s = n.scalar_part();
        if !n.approx_eq(&self.scalar(s.clone())) || s.to_c64().re <= 0.0 {
            return None;
        }
        self.projection(a).map(|_| s)
    }
}

impl<F: Field> CliffordElement<F> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &F {
        &self.coeffs[mask]
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<F>) -> Self {
        assert_eq!(coeffs.len(), 1 << n);
        CliffordElement { n, coeffs }
    }

    pub fn scalar_part(&self) -> F {
        self.coeffs[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.approx_eq(b))
    }

    fn map_grades(&self, f: impl Fn(u32) -> bool) -> Self {
        CliffordElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if f(m.count_ones()) { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// The grading automorphism induced by `−1 ∈ O(V∨)`.
    pub fn epsilon(&self) -> Self {
        self.map_grades(|k| k % 2 == 1)
    }

    /// The antiautomorphism with `ωᵗ = −ω`.
    pub fn transpose(&self) -> Self {
        self.map_grades(|k| (k + k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    pub fn even_part(&self) -> Self {
        self.project(|k| k % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.project(|k| k % 2 == 1)
    }

    fn project(&self, keep: impl Fn(u32) -> bool) -> Self {
        CliffordElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if keep(m.count_ones()) { c.clone() } else { F::zero() })
                .collect(),
        }
    }

    /// `Some(0)` / `Some(1)` for pure parity, `None` for mixed or zero.
    pub fn parity(&self) -> Option<u32> {
        let mut p = None;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.negligible() {
                continue;
            }
            let k = m.count_ones() % 2;
            match p {
                None => p = Some(k),
                Some(q) if q != k => return None,
                _ => {}
            }
        }
        p
    }

    pub fn scale(&self, s: &F) -> Self {
        CliffordElement { n: self.n, coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CliffordElement<G> {
        CliffordElement { n: self.n, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Nonzero blades.
    pub fn support(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.negligible())
    }
}

impl<F: Field> Add for &CliffordElement<F> {
    type Output = CliffordElement<F>;
    fn add(self, rhs: &CliffordElement<F>) -> CliffordElement<F> {
        assert_eq!(self.n, rhs.n);
        CliffordElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<F: Field> Sub for &CliffordElement<F> {
    type Output = CliffordElement<F>;
    fn sub(self, rhs: &CliffordElement<F>) -> CliffordElement<F> {
        assert_eq!(self.n, rhs.n);
        CliffordElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<F: Field> Neg for &CliffordElement<F> {
    type Output = CliffordElement<F>;
    fn neg(self) -> CliffordElement<F> {
        CliffordElement { n: self.n, coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

/// Orthogonal coordinates for V∨: with Gram matrix `G = L D Lᵀ` in the
/// simple-coroot basis, `y = Lᵀ x` are coordinates for an orthogonal basis
/// `u_i` with `⟨u_i, u_i⟩ = d_i`.
#[derive(Clone, Debug)]
pub struct OrthogonalFrame<F> {
    lt: Mat<F>,
    lt_inv: Mat<F>,
    d: Vec<F>,
}

impl<F: Field> OrthogonalFrame<F> {
    pub fn from_gram(gram: &Mat<F>) -> Result<Self> {
        let (l, d) = gram.ldl()?;
        let lt = l.transpose();
        let lt_inv = lt.inverse()?;
        Ok(OrthogonalFrame { lt, lt_inv, d })
    }

    /// Squared lengths `⟨u_i, u_i⟩`.
    pub fn squares(&self) -> &[F] {
        &self.d
    }

    /// The Clifford algebra in this frame.
    pub fn algebra(&self) -> Clifford<F> {
        Clifford::new(self.d.clone())
    }

    /// Coroot coordinates → frame coordinates.
    pub fn to_frame(&self, x: &[F]) -> Vec<F> {
        self.lt.mul_vec(x)
    }

    /// Frame coordinates → coroot coordinates.
    pub fn from_frame(&self, y: &[F]) -> Vec<F> {
        self.lt_inv.mul_vec(y)
    }

    /// Simple-coroot coordinates of `u_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        self.lt_inv.column(i)
    }

    /// Simple-coroot coordinates of the dual vector `u^i = u_i / d_i`.
    pub fn dual_basis_vector(&self, i: usize) -> Vec<F> {
        let inv = F::one() / self.d[i].clone();
        self.basis_vector(i).into_iter().map(|x| x * inv.clone()).collect()
    }

    /// Converts a frame-basis matrix into the simple-coroot basis.
    pub fn matrix_to_coroot_basis(&self, m: &Mat<F>) -> Mat<F> {
        &(&self.lt_inv * m) * &self.lt
    }
}

/// A complex spin module: `γ(u_i)` for orthonormal generators, with the
/// standard Hermitian form (identity matrix).
#[derive(Clone, Debug)]
pub struct SpinModule {
    pub n: usize,
    pub chirality: i8,
    pub gammas: Vec<CMat>,
    pub form: CMat,
}

fn pauli() -> [CMat; 4] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        CMat::from_row_slice(2, 2, &[o, z, z, o]),
        CMat::from_row_slice(2, 2, &[z, o, o, z]),
        CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

fn kron_all(factors: &[&CMat]) -> CMat {
    factors.iter().fold(CMat::identity(1, 1), |acc, f| acc.kronecker(f))
}

impl SpinModule {
    /// Jordan–Wigner realization; `chirality = −1` negates all generators
    /// (inequivalent only when `n` is odd).
    pub fn new(n: usize, chirality: i8) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("spin module needs n >= 1".into()));
        }
        let [id, x, y, z] = pauli();
        let m = n / 2;
        let i = Complex64::new(0.0, 1.0) * f64::from(chirality.signum());
        let mut gammas = Vec::with_capacity(n);
        for j in 0..m {
            for p in [&x, &y] {
                let mut f: Vec<&CMat> = Vec::with_capacity(m);
                f.extend(std::iter::repeat_n(&z, j));
                f.push(p);
                f.extend(std::iter::repeat_n(&id, m - j - 1));
                gammas.push(kron_all(&f) * i);
            }
        }
        if n % 2 == 1 {
            let f: Vec<&CMat> = std::iter::repeat_n(&z, m).collect();
            gammas.push(kron_all(&f) * i);
        }
        let dim = 1 << m;
        Ok(SpinModule { n, chirality: chirality.signum(), gammas, form: CMat::identity(dim, dim) })
    }

    /// One module for even `n`, both chiralities for odd `n`.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n.is_multiple_of(2) {
            Ok(vec![Self::new(n, 1)?])
        } else {
            Ok(vec![Self::new(n, 1)?, Self::new(n, -1)?])
        }
    }

    pub fn dim(&self) -> usize {
        self.form.nrows()
    }

    pub fn label(&self) -> &'static str {
        if self.chirality >= 0 {
            "+"
        } else {
            "-"
        }
    }

    /// `γ(e_A)` for an orthogonal frame with `e_i² = −q_i` (so `e_i = √q_i u_i`).
    pub fn blade<F: Field>(&self, alg: &Clifford<F>, mask: usize) -> CMat {
        let d = self.dim();
        let mut m = CMat::identity(d, d);
        for i in 0..self.n {
            if mask >> i & 1 == 1 {
                let s = alg.q()[i].to_c64().sqrt();
                m *= &self.gammas[i] * s;
            }
        }
        m
    }

    pub fn act<F: Field>(&self, alg: &Clifford<F>, a: &CliffordElement<F>) -> CMat {
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for (mask, c) in a.support() {
            out += self.blade(alg, mask) * c.to_c64();
        }
        out
    }

    /// Max residual of `γ_iγ_j + γ_jγ_i = −2δ_ij`.
    pub fn relation_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let ac = &self.gammas[i] * &self.gammas[j] + &self.gammas[j] * &self.gammas[i];
                let expect = if i == j { CMat::identity(d, d) * Complex64::new(-2.0, 0.0) } else { CMat::zeros(d, d) };
                worst = worst.max(max_abs(&(ac - expect)));
            }
        }
        worst
    }

    /// Max residual of `⟨γ(a)s, s'⟩ = ⟨s, γ(aᵗ)s'⟩` over the generators and their pairwise products.
    pub fn hermitian_residual(&self) -> f64 {
        let check = |g: &CMat, gt: &CMat| max_abs(&(g.adjoint() * &self.form - &self.form * gt));
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            worst = worst.max(check(&self.gammas[i], &(-&self.gammas[i])));
            for j in 0..self.n {
                let g = &self.gammas[i] * &self.gammas[j];
                let gt = &self.gammas[j] * &self.gammas[i];
                worst = worst.max(check(&g, &gt));
            }
        }
        worst
    }

    /// `(1/|G|) Σ |tr γ(g)|²` over the group `{±u_A}`; equals 1 iff irreducible.
    pub fn character_norm(&self) -> f64 {
        let alg = Clifford::<f64>::orthonormal(self.n);
        let total: f64 = (0..1usize << self.n).map(|m| self.blade(&alg, m).trace().norm_sqr()).sum();
        2.0 * total / (1u64 << (self.n + 1)) as f64
    }

    /// Trace of the volume element `u_1⋯u_n`; distinguishes chiralities for odd `n`.
    pub fn volume_trace(&self) -> Complex64 {
        let alg = Clifford::<f64>::orthonormal(self.n);
        self.blade(&alg, (1 << self.n) - 1).trace()
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &CMat| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| vec![m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        json!({
            "n": self.n,
            "chirality": self.label(),
            "dim": self.dim(),
            "gammas": self.gammas.iter().map(mat).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};

    #[test]
    fn basic_products() {
        let c = Clifford::<Q>::orthonormal(2);
        let w1 = c.blade(0b01, q(1, 1));
        let w2 = c.blade(0b10, q(1, 1));
        assert_eq!(c.mul(&w1, &w1).unwrap(), c.scalar(q(-1, 1)));
        let w12 = c.mul(&w1, &w2).unwrap();
        assert_eq!(w12, c.blade(0b11, q(1, 1)));
        assert_eq!(c.mul(&w2, &w1).unwrap(), c.blade(0b11, q(-1, 1)));
        assert_eq!(c.mul(&w12, &w12).unwrap(), c.scalar(q(-1, 1)));
        assert_eq!(w12.transpose(), c.blade(0b11, q(-1, 1)));
        assert_eq!(w12.epsilon(), w12);
        let c3 = Clifford::<Q>::orthonormal(3);
        assert!(c.mul(&w1, &c3.one()).is_err());
    }

    #[test]
    fn pin_examples() {
        let c = Clifford::<Q>::orthonormal(2);
        let w1 = c.blade(0b01, q(1, 1));
        assert!(c.pin_check(&w1));
        assert!(c.pin_check(&c.scalar(q(-1, 1))));
        let p = c.projection(&c.scalar(q(-1, 1))).unwrap();
        assert_eq!(p, Mat::identity(2));
        assert!(!c.pin_check(&(&c.one() + &w1)));
    }

    #[test]
    fn spin_module_dimensions() {
        for n in 1..=5 {
            let mods = SpinModule::all(n).unwrap();
            assert_eq!(mods.len(), if n % 2 == 1 { 2 } else { 1 });
            for s in &mods {
                assert_eq!(s.dim(), 1 << (n / 2));
                assert!(s.relation_residual() < 1e-12);
                assert!(s.hermitian_residual() < 1e-12);
                assert!((s.character_norm() - 1.0).abs() < 1e-8);
            }
            if n % 2 == 1 {
                assert!((mods[0].volume_trace() + mods[1].volume_trace()).norm() < 1e-12);
                assert!(mods[0].volume_trace().norm() > 0.5);
            }
        }
        let s2 = SpinModule::new(2, 1).unwrap();
        assert!((&s2.gammas[0] * &s2.gammas[1]).trace().norm() < 1e-12);
    }
}
