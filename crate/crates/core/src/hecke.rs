//! The graded affine Hecke algebra 𝗛 in normal form `Σ_w t_w f_w`
//! (group elements on the left, polynomials in the simple-coroot
//! coordinates on the right).
//!
//! Products are normal-ordered with the divided-difference form of the cross
//! relation, `f t_s = t_s s(f) + c_α (f − s(f))/α∨` for a simple reflection
//! `s = s_α`, applied along a shortest word.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::rootsys::{ParameterFunction, RootSystem};
use crate::spincover::obtuse_pairs;
use crate::weyl::WeylGroup;

/// Default bound on polynomial degrees produced by multiplication.
pub const DEFAULT_DEGREE_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement<F> {
    n: usize,
    terms: BTreeMap<usize, Poly<F>>,
}

impl<F: Field> HeckeElement<F> {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (usize, Poly<F>)>) -> Self {
        let mut out = Self::zero(n);
        for (w, p) in terms {
            out.add_term(w, &p);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<usize, Poly<F>> {
        &self.terms
    }

    pub fn coefficient(&self, w: usize) -> Poly<F> {
        self.terms.get(&w).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn add_term(&mut self, w: usize, p: &Poly<F>) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(|| Poly::zero(p.nvars()));
        *e = e.add(p);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.values().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(*w, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.n);
        for (w, p) in &self.terms {
            out.add_term(*w, &p.scale(s));
        }
        out
    }

    /// Keeps only the polynomial parts of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (w, p) in &self.terms {
            let mut q = Poly::zero(self.n);
            for (m, c) in p.terms() {
                if m.iter().map(|&e| e as usize).sum::<usize>() == d {
                    q.add_term(m.clone(), c.clone());
                }
            }
            out.add_term(*w, &q);
        }
        out
    }

    /// The group-algebra part (degree-0 coefficients), when the element has no polynomial part.
    pub fn as_group_algebra(&self) -> Option<BTreeMap<usize, F>> {
        self.terms
            .iter()
            .map(|(w, p)| (p.degree() == 0).then(|| (*w, p.constant_term())))
            .collect()
    }
}

/// Context for arithmetic in 𝗛 for a fixed root system and parameter function.
#[derive(Clone, Debug)]
pub struct Hecke<F> {
    rs: Arc<RootSystem<F>>,
    weyl: Arc<WeylGroup<F>>,
    c: ParameterFunction<F>,
    degree_cap: usize,
    c_simple: Vec<F>,
    simple_mats: Vec<Mat<F>>,
}

impl<F: Field> Hecke<F> {
    pub fn new(rs: Arc<RootSystem<F>>, weyl: Arc<WeylGroup<F>>, c: ParameterFunction<F>) -> Self {
        let c_simple = rs.simple_roots().iter().map(|&r| c.get(r).clone()).collect();
        let simple_mats = (0..rs.rank()).map(|i| rs.simple_coreflection_matrix(i)).collect();
        Hecke { rs, weyl, c, degree_cap: DEFAULT_DEGREE_CAP, c_simple, simple_mats }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    /// The same algebra with `c ≡ 0`, i.e. ℂ[W] ⋉ S(V∨).
    pub fn graded(&self) -> Self {
        let zero = ParameterFunction::constant(&self.rs, F::zero());
        Hecke::new(self.rs.clone(), self.weyl.clone(), zero).with_degree_cap(self.degree_cap)
    }

    pub fn rs(&self) -> &RootSystem<F> {
        &self.rs
    }

    pub fn rs_arc(&self) -> Arc<RootSystem<F>> {
        self.rs.clone()
    }

    pub fn weyl(&self) -> &WeylGroup<F> {
        &self.weyl
    }

    pub fn weyl_arc(&self) -> Arc<WeylGroup<F>> {
        self.weyl.clone()
    }

    pub fn params(&self) -> &ParameterFunction<F> {
        &self.c
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn zero(&self) -> HeckeElement<F> {
        HeckeElement::zero(self.rank())
    }

    pub fn one(&self) -> HeckeElement<F> {
        self.t(0)
    }

    pub fn scalar(&self, s: F) -> HeckeElement<F> {
        HeckeElement::from_terms(self.rank(), [(0, Poly::constant(self.rank(), s))])
    }

    pub fn t(&self, w: usize) -> HeckeElement<F> {
        HeckeElement::from_terms(self.rank(), [(w, Poly::one(self.rank()))])
    }

    pub fn t_simple(&self, i: usize) -> HeckeElement<F> {
        self.t(self.weyl.simple(i))
    }

    pub fn t_reflection(&self, root: usize) -> HeckeElement<F> {
        self.t(self.weyl.reflection(root))
    }

    pub fn poly(&self, p: Poly<F>) -> HeckeElement<F> {
        HeckeElement::from_terms(self.rank(), [(0, p)])
    }

    pub fn t_poly(&self, w: usize, p: Poly<F>) -> HeckeElement<F> {
        HeckeElement::from_terms(self.rank(), [(w, p)])
    }

    /// The coroot-coordinate variable `x_i = α_i∨`.
    pub fn var(&self, i: usize) -> HeckeElement<F> {
        self.poly(Poly::var(self.rank(), i))
    }

    /// `ω = Σ ω_j α_j∨`.
    pub fn vector(&self, omega: &[F]) -> HeckeElement<F> {
        self.poly(Poly::linear(omega))
    }

    /// `w(f)` for the action of W on S(V∨).
    pub fn act_poly(&self, w: usize, f: &Poly<F>) -> Poly<F> {
        f.act(self.weyl.matrix(w))
    }

    fn check_cap(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::DegreeCap { cap: self.degree_cap, degree })
        } else {
            Ok(())
        }
    }

    /// `f · t_s` for the `i`-th simple reflection, as `t_s s(f) + c_i Δ_i f`.
    fn poly_times_simple(&self, i: usize, f: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let sf = f.act(&self.simple_mats[i]);
        let diff = f.sub(&sf);
        let delta = diff
            .divide_var(i)
            .expect("f - s(f) is divisible by the simple coroot")
            .scale(&self.c_simple[i]);
        (sf, delta)
    }

    /// `f · t_v` in normal form.
    pub fn poly_times_t(&self, f: &Poly<F>, v: usize) -> HeckeElement<F> {
        let mut cur = HeckeElement::from_terms(self.rank(), [(0, f.clone())]);
        for &i in self.weyl.table().word(v) {
            let mut next = self.zero();
            for (u, h) in &cur.terms {
                let (sh, delta) = self.poly_times_simple(i, h);
                next.add_term(self.weyl.table().right_mul_gen(*u, i), &sh);
                next.add_term(*u, &delta);
            }
            cur = next;
        }
        cur
    }

    pub fn mul(&self, a: &HeckeElement<F>, b: &HeckeElement<F>) -> Result<HeckeElement<F>> {
        let mut out = self.zero();
        for (w, f) in &a.terms {
            for (v, g) in &b.terms {
                self.check_cap(f.degree() + g.degree())?;
                let ft = self.poly_times_t(f, *v);
                for (u, h) in &ft.terms {
                    out.add_term(self.weyl.mul(*w, *u), &h.mul(g));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[&HeckeElement<F>]) -> Result<HeckeElement<F>> {
        factors.iter().try_fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator(&self, a: &HeckeElement<F>, b: &HeckeElement<F>) -> Result<HeckeElement<F>> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// `ω* = −ω + Σ_{β>0} c_β (β, ω) t_{s_β}` for `ω = x_i`.
    pub fn star_var(&self, i: usize) -> HeckeElement<F> {
        let mut e = self.var(i).neg();
        let mut unit = vec![F::zero(); self.rank()];
        unit[i] = F::one();
        for b in self.rs.positive_roots() {
            let k = self.c.get(b).clone() * self.rs.root_pairing(b, &unit);
            e = e.add(&self.t_reflection(b).scale(&k));
        }
        e
    }

    /// The conjugate-linear anti-involution with `t_w* = t_{w⁻¹}`.
    pub fn star(&self, a: &HeckeElement<F>) -> Result<HeckeElement<F>> {
        let n = self.rank();
        let xs: Vec<HeckeElement<F>> = (0..n).map(|i| self.star_var(i)).collect();
        let mut powers: Vec<Vec<HeckeElement<F>>> = xs.iter().map(|_| vec![self.one()]).collect();
        let mut out = self.zero();
        for (w, f) in &a.terms {
            let mut fstar = self.zero();
            for (m, c) in f.terms() {
                let mut term = self.scalar(c.conj());
                for (j, &e) in m.iter().enumerate() {
                    while powers[j].len() <= e as usize {
                        let next = self.mul(powers[j].last().expect("nonempty"), &xs[j])?;
                        powers[j].push(next);
                    }
                    if e > 0 {
                        term = self.mul(&term, &powers[j][e as usize])?;
                    }
                }
                fstar = fstar.add(&term);
            }
            out = out.add(&self.mul(&fstar, &self.t(self.weyl.inverse(*w)))?);
        }
        Ok(out)
    }

    /// `Σ_{β>0} c_β (β, ω) t_{s_β}`.
    fn reflection_sum(&self, omega: &[F]) -> HeckeElement<F> {
        let mut e = self.zero();
        for b in self.rs.positive_roots() {
            let k = self.c.get(b).clone() * self.rs.root_pairing(b, omega);
            e = e.add(&self.t_reflection(b).scale(&k));
        }
        e
    }

    /// `T_ω = ½ Σ_{β>0} c_β (β, ω) t_{s_β}`.
    pub fn t_omega(&self, omega: &[F]) -> HeckeElement<F> {
        self.reflection_sum(omega).scale(&F::from_ratio(1, 2))
    }

    /// `ω̃ = ω − T_ω`.
    pub fn omega_tilde(&self, omega: &[F]) -> HeckeElement<F> {
        self.vector(omega).sub(&self.t_omega(omega))
    }

    /// The simple-coroot basis and its Gram-dual basis.
    pub fn standard_dual_pair(&self) -> (Vec<Vec<F>>, Vec<Vec<F>>) {
        let n = self.rank();
        let basis: Vec<Vec<F>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        let ginv = self.rs.gram_inverse();
        let dual = (0..n).map(|i| ginv.column(i)).collect();
        (basis, dual)
    }

    /// An orthogonal basis `u_i` (from `G = LDLᵀ`) and its dual `u_i/d_i`.
    pub fn orthogonal_dual_pair(&self) -> Result<(Vec<Vec<F>>, Vec<Vec<F>>)> {
        let frame = crate::clifford::OrthogonalFrame::from_gram(self.rs.gram())?;
        let n = self.rank();
        Ok(((0..n).map(|i| frame.basis_vector(i)).collect(), (0..n).map(|i| frame.dual_basis_vector(i)).collect()))
    }

    /// `Ω = Σ ω_i ω^i`.
    pub fn casimir_with(&self, pair: &(Vec<Vec<F>>, Vec<Vec<F>>)) -> Result<HeckeElement<F>> {
        let mut out = self.zero();
        for (a, b) in pair.0.iter().zip(&pair.1) {
            out = out.add(&self.mul(&self.vector(a), &self.vector(b))?);
        }
        Ok(out)
    }

    pub fn casimir(&self) -> Result<HeckeElement<F>> {
        self.casimir_with(&self.standard_dual_pair())
    }

    /// `Ω̃ = Σ ω̃_i ω̃^i`.
    pub fn casimir_tilde_with(&self, pair: &(Vec<Vec<F>>, Vec<Vec<F>>)) -> Result<HeckeElement<F>> {
        let mut out = self.zero();
        for (a, b) in pair.0.iter().zip(&pair.1) {
            out = out.add(&self.mul(&self.omega_tilde(a), &self.omega_tilde(b))?);
        }
        Ok(out)
    }

    pub fn casimir_tilde(&self) -> Result<HeckeElement<F>> {
        self.casimir_tilde_with(&self.standard_dual_pair())
    }

    /// `Σ T_{ω_i} T_{ω^i}`.
    pub fn t_square_sum(&self, pair: &(Vec<Vec<F>>, Vec<Vec<F>>)) -> Result<HeckeElement<F>> {
        let mut out = self.zero();
        for (a, b) in pair.0.iter().zip(&pair.1) {
            out = out.add(&self.mul(&self.t_omega(a), &self.t_omega(b))?);
        }
        Ok(out)
    }

    /// `Ω_W = ¼ Σ_{α,β>0, s_α(β)<0} c_α c_β ⟨α,β⟩ t_{s_α} t_{s_β}` (pairs with `α = β` included).
    pub fn omega_w(&self) -> HeckeElement<F> {
        let rs = &self.rs;
        let quarter = F::from_ratio(1, 4);
        let mut out = self.zero();
        for a in rs.positive_roots() {
            let v = self.c.get(a).clone() * self.c.get(a).clone() * rs.root_norm2(a) * quarter.clone();
            out = out.add(&self.scalar(v));
        }
        for (a, b) in obtuse_pairs(rs, &self.weyl) {
            let w = self.weyl.mul(self.weyl.reflection(a), self.weyl.reflection(b));
            let v = self.c.get(a).clone()
                * self.c.get(b).clone()
                * rs.dual_inner_product(rs.root(a), rs.root(b))
                * quarter.clone();
            out = out.add(&self.t(w).scale(&v));
        }
        out
    }

    /// Right side of the commutator formula for `[T_{ω_1}, T_{ω_2}]`:
    /// `¼ Σ_{s_α(β)<0} c_α c_β ((α,ω_1)(β,ω_2) − (β,ω_1)(α,ω_2)) t_{s_α} t_{s_β}`.
    pub fn t_commutator_formula(&self, o1: &[F], o2: &[F]) -> HeckeElement<F> {
        let rs = &self.rs;
        let quarter = F::from_ratio(1, 4);
        let mut out = self.zero();
        for (a, b) in obtuse_pairs(rs, &self.weyl) {
            let k = self.c.get(a).clone()
                * self.c.get(b).clone()
                * (rs.root_pairing(a, o1) * rs.root_pairing(b, o2) - rs.root_pairing(b, o1) * rs.root_pairing(a, o2))
                * quarter.clone();
            let w = self.weyl.mul(self.weyl.reflection(a), self.weyl.reflection(b));
            out = out.add(&self.t(w).scale(&k));
        }
        out
    }

    /// Right side of the conjugation formula
    /// `t_w ω t_{w⁻¹} = w(ω) + Σ_{β>0, wβ<0} c_β (β,ω) t_{s_{wβ}}`.
    pub fn conjugation_formula(&self, w: usize, omega: &[F]) -> HeckeElement<F> {
        let mut out = self.vector(&self.weyl.act_on_coroot_coords(w, omega));
        for b in self.weyl.inversions(w) {
            let k = self.c.get(b).clone() * self.rs.root_pairing(b, omega);
            let wb = self.weyl.act_on_root(w, b);
            out = out.add(&self.t_reflection(wb).scale(&k));
        }
        out
    }

    /// `(1/|W|) Σ_w w(f)`.
    pub fn reynolds(&self, f: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero(self.rank());
        for w in 0..self.weyl.order() {
            out = out.add(&self.act_poly(w, f));
        }
        out.scale(&(F::one() / F::from_i64(self.weyl.order() as i64)))
    }

    /// A nonzero W-invariant polynomial of degree `d`, obtained by averaging
    /// the first monomial whose average does not vanish.
    pub fn invariant_of_degree(&self, d: usize) -> Option<Poly<F>> {
        Poly::<F>::monomials_of_degree(self.rank(), d)
            .into_iter()
            .map(|m| self.reynolds(&Poly::monomial(m, F::one())))
            .find(|p| !p.is_zero())
    }

    /// Commutes with every `t_{s_i}` and every `x_i`.
    pub fn is_central(&self, a: &HeckeElement<F>) -> Result<bool> {
        for i in 0..self.rank() {
            if !self.commutator(a, &self.t_simple(i))?.is_zero() || !self.commutator(a, &self.var(i))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies the defining relation coordinate by coordinate: moves each
    /// variable of `f` past `t_s` one factor at a time using
    /// `x_j t_s = t_s s(x_j) + c (α, x_j)`. Independent of the divided
    /// difference used by [`mul`](Self::mul); intended as a test oracle.
    pub fn poly_times_simple_naive(&self, i: usize, f: &Poly<F>) -> Result<HeckeElement<F>> {
        let n = self.rank();
        let alpha = self.rs.simple_root(i);
        let mut out = self.zero();
        for (m, c) in f.terms() {
            // the word x_{j1} x_{j2} … followed by t_s; process from the right
            let mut vars = Vec::new();
            for (j, &e) in m.iter().enumerate() {
                vars.extend(std::iter::repeat_n(j, e as usize));
            }
            // acc = (suffix of the word) · t_s, as Σ t_u g_u
            let mut acc = self.t_simple(i);
            for &j in vars.iter().rev() {
                let mut next = self.zero();
                for (u, g) in acc.terms() {
                    let xj = Poly::var(n, j);
                    if *u == 0 {
                        next.add_term(0, &xj.mul(g));
                    } else {
                        // x_j t_s = t_s s(x_j) + c (α, x_j)
                        let sx = xj.act(&self.simple_mats[i]);
                        let mut unit = vec![F::zero(); n];
                        unit[j] = F::one();
                        let k = self.c.get(alpha).clone() * self.rs.root_pairing(alpha, &unit);
                        next.add_term(*u, &sx.mul(g));
                        next.add_term(0, &g.scale(&k));
                    }
                }
                acc = next;
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    pub fn format(&self, a: &HeckeElement<F>, fmt: impl Fn(&F) -> String + Copy) -> String {
        let names: Vec<String> = (0..self.rank()).map(|i| format!("x{}", i + 1)).collect();
        if a.is_zero() {
            return "0".into();
        }
        a.terms
            .iter()
            .map(|(w, p)| {
                let word: String = self.weyl.table().word(*w).iter().map(|g| (g + 1).to_string()).collect();
                let t = if word.is_empty() { "1".to_string() } else { format!("t[{word}]") };
                format!("{t}*({})", p.to_string_with(&names, fmt))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};
    use crate::rootsys::{RootSystemSpec, Series};

    fn hecke(series: Series, rank: usize) -> Hecke<Q> {
        let rs = Arc::new(RootSystem::build(RootSystemSpec::new(series, rank)).unwrap());
        let w = Arc::new(WeylGroup::new(&rs).unwrap());
        let c = ParameterFunction::equal(&rs);
        Hecke::new(rs, w, c)
    }

    #[test]
    fn cross_relation() {
        let h = hecke(Series::A, 2);
        for i in 0..2 {
            for j in 0..2 {
                let x = h.var(j);
                let ts = h.t_simple(i);
                let lhs = h.mul(&x, &ts).unwrap().sub(&h.mul(&ts, &h.poly(Poly::var(2, j).act(&h.simple_mats[i]))).unwrap());
                let mut unit = vec![q(0, 1); 2];
                unit[j] = q(1, 1);
                let expect = h.rs().root_pairing(h.rs().simple_root(i), &unit);
                assert_eq!(lhs, h.scalar(expect));
            }
        }
    }

    #[test]
    fn a1_omega_tilde_and_casimir() {
        let h = hecke(Series::A, 1);
        let wt = h.omega_tilde(&[q(1, 1)]);
        assert_eq!(wt, h.var(0).sub(&h.t_simple(0)));
        let om = h.casimir().unwrap();
        assert_eq!(om, h.poly(Poly::var(1, 0).pow(2).scale(&q(1, 2))));
        assert!(h.is_central(&om).unwrap());
        assert!(!h.is_central(&wt).unwrap());
    }

    #[test]
    fn degree_cap_is_explicit() {
        let h = hecke(Series::A, 1).with_degree_cap(2);
        let x = h.var(0);
        let x2 = h.mul(&x, &x).unwrap();
        assert_eq!(h.mul(&x2, &x).unwrap_err(), Error::DegreeCap { cap: 2, degree: 3 });
    }
}
