//! Finite-dimensional 𝗛-modules given by generator matrices: validation,
//! the one-dimensional modules, principal series, central characters and
//! the Casimir-based unitarity tests.
//!
//! A module is stored as `π(t_{s_i})` and `π(x_i)` (the simple-coroot
//! coordinates) as complex matrices, with an optional exact rational copy
//! used for exact validation.

use std::collections::BTreeMap;

use nalgebra::{Cholesky, SymmetricEigen};
use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chartab::{character_of, isotypic_projector, CharacterTable};
use crate::error::{Error, Result};
use crate::field::{parse_q, q_to_string, Field, Q};
use crate::hecke::{Hecke, HeckeElement};
use crate::linalg::{max_abs, CMat, Mat};
use crate::poly::Poly;
use crate::rootsys::RootSystem;
use crate::spincover::{c_sigma, omega_w};
use crate::weyl::WeylGroup;

/// Tolerance for float relation residuals.
pub const RELATION_TOL: f64 = 1e-10;

/// A point ν ∈ V recorded through its pairings `λ_j = (ν, α_j∨)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(Vec<Q>),
    Float(Vec<f64>),
}

impl Weight {
    pub fn len(&self) -> usize {
        match self {
            Weight::Exact(v) => v.len(),
            Weight::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Weight::Exact(v) => v.iter().map(f64::from_rational).collect(),
            Weight::Float(v) => v.clone(),
        }
    }

    pub fn exact(&self) -> Option<&[Q]> {
        match self {
            Weight::Exact(v) => Some(v),
            Weight::Float(_) => None,
        }
    }

    /// Pairings from user coordinates: ambient coordinates when the length
    /// equals the ambient dimension, otherwise coordinates in the basis of
    /// simple roots.
    pub fn from_coords<F: Field>(rs: &RootSystem<F>, coords: &Weight) -> Result<Weight> {
        let n = coords.len();
        if n != rs.ambient_dim() && n != rs.rank() {
            return Err(Error::Shape(format!(
                "weight has {n} coordinates; expected {} (ambient) or {} (simple roots)",
                rs.ambient_dim(),
                rs.rank()
            )));
        }
        match coords {
            Weight::Exact(v) if F::EXACT => {
                let v: Vec<F> = v.iter().map(F::from_rational).collect();
                let amb = if n == rs.ambient_dim() { v } else { rs.from_simple_root_coords(&v) };
                let p = rs.pairings_with_simple_coroots(&amb);
                Ok(Weight::Exact(p.iter().map(|x| x.to_rational().expect("exact field")).collect()))
            }
            _ => {
                let v: Vec<f64> = coords.to_f64();
                let amb: Vec<f64> = if n == rs.ambient_dim() {
                    v
                } else {
                    let mut a = vec![0.0; rs.ambient_dim()];
                    for (c, &s) in v.iter().zip(rs.simple_roots()) {
                        for (x, r) in a.iter_mut().zip(rs.root(s)) {
                            *x += c * r.to_c64().re;
                        }
                    }
                    a
                };
                let p = (0..rs.rank())
                    .map(|j| {
                        let cr = rs.coroot(rs.simple_root(j));
                        amb.iter().zip(cr).map(|(a, b)| a * b.to_c64().re).sum()
                    })
                    .collect();
                Ok(Weight::Float(p))
            }
        }
    }

    /// Ambient coordinates of the point (floats).
    pub fn ambient<F: Field>(&self, rs: &RootSystem<F>) -> Vec<f64> {
        let lam = self.to_f64();
        let c = rs.pairing_matrix().transpose();
        let cm = c.to_cmat();
        let lu = cm.lu();
        let b = CMat::from_fn(lam.len(), 1, |i, _| Complex64::new(lam[i], 0.0));
        let coords = lu.solve(&b).expect("pairing matrix is invertible");
        let mut a = vec![0.0; rs.ambient_dim()];
        for (k, &s) in rs.simple_roots().iter().enumerate() {
            for (x, r) in a.iter_mut().zip(rs.root(s)) {
                *x += coords[(k, 0)].re * r.to_c64().re;
            }
        }
        a
    }
}

/// `⟨ν, ν⟩` from the pairings of ν.
pub fn nu_norm2<F: Field>(rs: &RootSystem<F>, nu: &Weight) -> f64 {
    let g = rs.gram_inverse().to_cmat();
    let lam = nu.to_f64();
    let mut s = 0.0;
    for i in 0..lam.len() {
        for j in 0..lam.len() {
            s += lam[i] * g[(i, j)].re * lam[j];
        }
    }
    s
}

/// Exact `⟨ν, ν⟩` when both ν and the root system are exact.
pub fn nu_norm2_exact<F: Field>(rs: &RootSystem<F>, nu: &Weight) -> Option<Q> {
    let lam = nu.exact()?;
    if !F::EXACT {
        return None;
    }
    let lam_f: Vec<F> = lam.iter().map(F::from_rational).collect();
    rs.dual_inner_from_pairings(&lam_f, &lam_f).to_rational()
}

/// Exact copies of the generator matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactGenerators {
    pub reflections: Vec<Mat<Q>>,
    pub coords: Vec<Mat<Q>>,
    pub form: Option<Mat<Q>>,
}

/// A finite-dimensional 𝗛-module `(π, X)`.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub label: String,
    pub dim: usize,
    /// `π(t_{s_i})` for the simple reflections.
    pub reflections: Vec<CMat>,
    /// `π(x_i)` for the simple-coroot coordinates.
    pub coords: Vec<CMat>,
    /// Matrix `H` of the invariant form `(x, y) = y† H x`.
    pub form: Option<CMat>,
    pub nu: Option<Weight>,
    pub exact: Option<ExactGenerators>,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn to_cmats(ms: &[Mat<Q>]) -> Vec<CMat> {
    ms.iter().map(Mat::to_cmat).collect()
}

/// Evaluates a polynomial on commuting matrices.
fn poly_on_cmats<F: Field>(xs: &[CMat], dim: usize, p: &Poly<F>) -> CMat {
    let mut powers: Vec<Vec<CMat>> = xs.iter().map(|_| vec![CMat::identity(dim, dim)]).collect();
    let mut out = CMat::zeros(dim, dim);
    for (m, coef) in p.terms() {
        let mut term = CMat::identity(dim, dim) * coef.to_c64();
        for (j, &e) in m.iter().enumerate() {
            while powers[j].len() <= e as usize {
                let next = powers[j].last().expect("nonempty") * &xs[j];
                powers[j].push(next);
            }
            if e > 0 {
                term = &term * &powers[j][e as usize];
            }
        }
        out += term;
    }
    out
}

fn poly_on_qmats<F: Field>(xs: &[Mat<Q>], dim: usize, p: &Poly<F>) -> Option<Mat<Q>> {
    let mut out: Mat<Q> = Mat::zeros(dim, dim);
    for (m, coef) in p.terms() {
        let mut term: Mat<Q> = Mat::identity(dim).scale(&coef.to_rational()?);
        for (j, &e) in m.iter().enumerate() {
            for _ in 0..e {
                term = &term * &xs[j];
            }
        }
        out = &out + &term;
    }
    Some(out)
}

impl ModuleRep {
    /// Float module from generator matrices.
    pub fn new(label: impl Into<String>, reflections: Vec<CMat>, coords: Vec<CMat>) -> Result<Self> {
        let dim = reflections.first().or(coords.first()).map_or(0, |m| m.nrows());
        for m in reflections.iter().chain(&coords) {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Shape(format!("generator of shape {}x{} in a module of dimension {dim}", m.nrows(), m.ncols())));
            }
        }
        Ok(ModuleRep { label: label.into(), dim, reflections, coords, form: None, nu: None, exact: None })
    }

    /// Exact module from rational generator matrices.
    pub fn from_exact(label: impl Into<String>, reflections: Vec<Mat<Q>>, coords: Vec<Mat<Q>>) -> Result<Self> {
        let mut m = Self::new(label, to_cmats(&reflections), to_cmats(&coords))?;
        m.exact = Some(ExactGenerators { reflections, coords, form: None });
        Ok(m)
    }

    pub fn with_form(mut self, form: CMat) -> Result<Self> {
        if form.nrows() != self.dim || form.ncols() != self.dim {
            return Err(Error::Shape("form does not match the module dimension".into()));
        }
        self.form = Some(form);
        Ok(self)
    }

    pub fn with_exact_form(mut self, form: Mat<Q>) -> Result<Self> {
        self = self.with_form(form.to_cmat())?;
        if let Some(e) = self.exact.as_mut() {
            e.form = Some(form);
        }
        Ok(self)
    }

    pub fn with_nu(mut self, nu: Weight) -> Self {
        self.nu = Some(nu);
        self
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `π(t_w)` for every element of W.
    pub fn group_matrices<F: Field>(&self, weyl: &WeylGroup<F>) -> Vec<CMat> {
        weyl.table().extend(CMat::identity(self.dim, self.dim), &self.reflections, |a, b| a * b)
    }

    pub fn group_matrices_exact<F: Field>(&self, weyl: &WeylGroup<F>) -> Option<Vec<Mat<Q>>> {
        let e = self.exact.as_ref()?;
        Some(weyl.table().extend(Mat::identity(self.dim), &e.reflections, |a, b| a * b))
    }

    pub fn poly_matrix<F: Field>(&self, p: &Poly<F>) -> CMat {
        poly_on_cmats(&self.coords, self.dim, p)
    }

    /// `π(h) = Σ_w π(t_w) f_w(π(x))`, given `π(t_w)` for all `w`.
    pub fn act<F: Field>(&self, t: &[CMat], h: &HeckeElement<F>) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (w, f) in h.terms() {
            out += &t[*w] * self.poly_matrix(f);
        }
        out
    }

    pub fn act_exact<F: Field>(&self, t: &[Mat<Q>], h: &HeckeElement<F>) -> Option<Mat<Q>> {
        let e = self.exact.as_ref()?;
        let mut out: Mat<Q> = Mat::zeros(self.dim, self.dim);
        for (w, f) in h.terms() {
            out = &out + &(&t[*w] * &poly_on_qmats(&e.coords, self.dim, f)?);
        }
        Some(out)
    }

    /// Generic linear combination of the coordinate operators.
    fn generic_coordinate(&self, seed: u64) -> (Vec<f64>, CMat) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r: Vec<f64> = (0..self.rank()).map(|_| rng.random_range(0.5..1.5)).collect();
        let mut a = CMat::zeros(self.dim, self.dim);
        for (x, k) in self.coords.iter().zip(&r) {
            a += x * c(*k);
        }
        (r, a)
    }

    /// Eigenvalues of a generic combination `Σ r_j π(x_j)` (via complex Schur).
    pub fn coordinate_spectrum(&self, seed: u64) -> (Vec<f64>, Vec<Complex64>) {
        let (r, a) = self.generic_coordinate(seed);
        let t = a.schur().unpack().1;
        (r, (0..self.dim).map(|i| t[(i, i)]).collect())
    }

    /// ν recovered from a joint eigenvector: the first Schur vector of a
    /// generic coordinate combination.
    pub fn recover_nu(&self, seed: u64) -> Result<Vec<Complex64>> {
        let (_, a) = self.generic_coordinate(seed);
        let (qm, _) = a.schur().unpack();
        let v = qm.column(0).into_owned();
        let mut lam = Vec::new();
        for x in &self.coords {
            let xv = x * &v;
            let l = (v.adjoint() * &xv)[(0, 0)];
            let resid = (xv - &v * l).norm();
            if resid > 1e-6 {
                return Err(Error::Numerical(format!("joint eigenvector residual {resid:.2e}")));
            }
            lam.push(l);
        }
        Ok(lam)
    }
}

/// One checked relation.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub residual: f64,
    /// Verified in exact arithmetic.
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

impl ValidationReport {
    fn push(&mut self, name: String, residual: f64, exact: bool) {
        let pass = if exact { residual == 0.0 } else { residual < RELATION_TOL };
        self.pass &= pass;
        self.checks.push(RelationCheck { name, residual, exact, pass });
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn qmat_residual(m: &Mat<Q>) -> f64 {
    if m.is_zero() {
        0.0
    } else {
        max_abs(&m.to_cmat()).max(f64::MIN_POSITIVE)
    }
}

/// Checks the defining relations of 𝗛 (and form invariance if a form is
/// declared). Uses exact arithmetic when the module and algebra are exact.
pub fn validate_module<F: Field>(hecke: &Hecke<F>, m: &ModuleRep) -> Result<ValidationReport> {
    let n = hecke.rank();
    if m.reflections.len() != n || m.coords.len() != n {
        return Err(Error::Shape(format!(
            "module has {} reflections and {} coordinates for rank {n}",
            m.reflections.len(),
            m.coords.len()
        )));
    }
    let weyl = hecke.weyl();
    let rs = hecke.rs();
    let exact = m.exact.as_ref().filter(|_| F::EXACT);
    let mut rep = ValidationReport { checks: Vec::new(), pass: true };
    let d = m.dim;
    let id = CMat::identity(d, d);
    let qid: Mat<Q> = Mat::identity(d);
    let c_simple: Vec<F> = (0..n).map(|i| hecke.params().get(rs.simple_root(i)).clone()).collect();
    let smats: Vec<Mat<F>> = (0..n).map(|i| rs.simple_coreflection_matrix(i)).collect();

    for i in 0..n {
        let name = format!("t_s{}^2 = 1", i + 1);
        match exact {
            Some(e) => rep.push(name, qmat_residual(&(&(&e.reflections[i] * &e.reflections[i]) - &qid)), true),
            None => rep.push(name, max_abs(&(&m.reflections[i] * &m.reflections[i] - &id)), false),
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let order = weyl.table().element_order(weyl.mul(weyl.simple(i), weyl.simple(j)));
            let name = format!("(t_s{} t_s{})^{order} = 1", i + 1, j + 1);
            match exact {
                Some(e) => {
                    let p = &e.reflections[i] * &e.reflections[j];
                    let pw = (0..order).fold(qid.clone(), |acc, _| &acc * &p);
                    rep.push(name, qmat_residual(&(&pw - &qid)), true);
                }
                None => {
                    let p = &m.reflections[i] * &m.reflections[j];
                    let pw = (0..order).fold(id.clone(), |acc, _| acc * &p);
                    rep.push(name, max_abs(&(pw - &id)), false);
                }
            }
            let name = format!("x{} x{} = x{} x{}", i + 1, j + 1, j + 1, i + 1);
            match exact {
                Some(e) => {
                    let r = &(&e.coords[i] * &e.coords[j]) - &(&e.coords[j] * &e.coords[i]);
                    rep.push(name, qmat_residual(&r), true);
                }
                None => {
                    let r = &m.coords[i] * &m.coords[j] - &m.coords[j] * &m.coords[i];
                    rep.push(name, max_abs(&r), false);
                }
            }
        }
    }
    // x_j t_s − t_s s(x_j) = c_s (δ_ij − s[i][j]) for s = s_i
    for i in 0..n {
        for j in 0..n {
            let name = format!("x{} t_s{} - t_s{} s{}(x{}) = const", j + 1, i + 1, i + 1, i + 1, j + 1);
            let delta = if i == j { F::one() } else { F::zero() };
            let k = c_simple[i].clone() * (delta - smats[i][(i, j)].clone());
            match exact {
                Some(e) => {
                    let sx = (0..n).fold(Mat::<Q>::zeros(d, d), |acc, l| {
                        &acc + &e.coords[l].scale(&smats[i][(l, j)].to_rational().expect("exact"))
                    });
                    let lhs = &(&e.coords[j] * &e.reflections[i]) - &(&e.reflections[i] * &sx);
                    let r = &lhs - &qid.scale(&k.to_rational().expect("exact"));
                    rep.push(name, qmat_residual(&r), true);
                }
                None => {
                    let mut sx = CMat::zeros(d, d);
                    for l in 0..n {
                        sx += &m.coords[l] * smats[i][(l, j)].to_c64();
                    }
                    let r = &m.coords[j] * &m.reflections[i] - &m.reflections[i] * sx - &id * k.to_c64();
                    rep.push(name, max_abs(&r), false);
                }
            }
        }
    }
    if m.form.is_some() {
        form_checks(hecke, m, &mut rep)?;
    }
    Ok(rep)
}

/// `H = H†` and `H π(h) = π(h*)† H` for the generators.
fn form_checks<F: Field>(hecke: &Hecke<F>, m: &ModuleRep, rep: &mut ValidationReport) -> Result<()> {
    let n = hecke.rank();
    let weyl = hecke.weyl();
    let exact = m.exact.as_ref().filter(|e| F::EXACT && e.form.is_some());
    let mut gens: Vec<(String, HeckeElement<F>)> = Vec::new();
    for i in 0..n {
        gens.push((format!("t_s{}", i + 1), hecke.t_simple(i)));
        gens.push((format!("x{}", i + 1), hecke.var(i)));
    }
    match exact {
        Some(e) => {
            let h = e.form.as_ref().expect("checked");
            rep.push("form is Hermitian".into(), qmat_residual(&(h - &h.transpose())), true);
            let t = m.group_matrices_exact(weyl).expect("exact module");
            for (name, g) in gens {
                let pg = m.act_exact(&t, &g).ok_or_else(|| Error::Validation("inexact coefficient".into()))?;
                let ps = m.act_exact(&t, &hecke.star(&g)?).ok_or_else(|| Error::Validation("inexact coefficient".into()))?;
                let r = &(h * &pg) - &(&ps.transpose() * h);
                rep.push(format!("form invariance for {name}"), qmat_residual(&r), true);
            }
        }
        None => {
            let h = m.form.as_ref().expect("checked");
            rep.push("form is Hermitian".into(), max_abs(&(h - h.adjoint())), false);
            let t = m.group_matrices(weyl);
            for (name, g) in gens {
                let pg = m.act(&t, &g);
                let ps = m.act(&t, &hecke.star(&g)?);
                let r = h * pg - ps.adjoint() * h;
                rep.push(format!("form invariance for {name}"), max_abs(&r), false);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneDimKind {
    Trivial,
    Steinberg,
}

impl std::str::FromStr for OneDimKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trivial" | "triv" => Ok(OneDimKind::Trivial),
            "steinberg" | "st" | "sgn" => Ok(OneDimKind::Steinberg),
            _ => Err(Error::Config(format!("unknown one-dimensional module '{s}'"))),
        }
    }
}

/// The trivial (`t_s ↦ 1`, `x_i ↦ c_i`) or Steinberg (`t_s ↦ −1`,
/// `x_i ↦ −c_i`) module, with the form `[1]`.
pub fn one_dimensional<F: Field>(hecke: &Hecke<F>, kind: OneDimKind) -> ModuleRep {
    let n = hecke.rank();
    let rs = hecke.rs();
    let sign = match kind {
        OneDimKind::Trivial => F::one(),
        OneDimKind::Steinberg => -F::one(),
    };
    let lam: Vec<F> = (0..n).map(|i| sign.clone() * hecke.params().get(rs.simple_root(i)).clone()).collect();
    let label = match kind {
        OneDimKind::Trivial => "trivial",
        OneDimKind::Steinberg => "steinberg",
    };
    let one_by_one = |x: &F| CMat::from_element(1, 1, x.to_c64());
    let mut m = ModuleRep {
        label: label.into(),
        dim: 1,
        reflections: vec![one_by_one(&sign); n],
        coords: lam.iter().map(one_by_one).collect(),
        form: Some(CMat::identity(1, 1)),
        nu: None,
        exact: None,
    };
    if F::EXACT {
        let q = |x: &F| Mat::from_rows(vec![vec![x.to_rational().expect("exact")]]);
        m.exact = Some(ExactGenerators {
            reflections: vec![q(&sign); n],
            coords: lam.iter().map(q).collect(),
            form: Some(Mat::identity(1)),
        });
        m.nu = Some(Weight::Exact(lam.iter().map(|x| x.to_rational().expect("exact")).collect()));
    } else {
        m.nu = Some(Weight::Float(lam.iter().map(|x| x.to_c64().re).collect()));
    }
    m
}

/// The principal series `X(ν) = 𝗛 ⊗_{S(V∨)} ℂ_ν` on the basis `t_w ⊗ 1`.
/// Exact when both the algebra and ν are exact.
pub fn principal_series<F: Field>(hecke: &Hecke<F>, nu: &Weight) -> Result<ModuleRep> {
    let n = hecke.rank();
    if nu.len() != n {
        return Err(Error::Shape(format!("ν has {} pairings for rank {n}", nu.len())));
    }
    let weyl = hecke.weyl();
    let order = weyl.order();
    let exact_nu = nu.exact().filter(|_| F::EXACT);
    let point_c: Vec<Complex64> = nu.to_f64().into_iter().map(c).collect();

    let mut refl_q: Vec<Mat<Q>> = Vec::new();
    let mut refl_c = Vec::new();
    for i in 0..n {
        let s = weyl.simple(i);
        let mut mq: Mat<Q> = Mat::zeros(order, order);
        let mut mc = CMat::zeros(order, order);
        for w in 0..order {
            let u = weyl.mul(s, w);
            mq[(u, w)] = Q::from_i64(1);
            mc[(u, w)] = c(1.0);
        }
        refl_q.push(mq);
        refl_c.push(mc);
    }
    let mut coord_q: Vec<Mat<Q>> = Vec::new();
    let mut coord_c = Vec::new();
    for j in 0..n {
        let x = Poly::var(n, j);
        let mut mq: Mat<Q> = Mat::zeros(order, order);
        let mut mc = CMat::zeros(order, order);
        for w in 0..order {
            let prod = hecke.poly_times_t(&x, w);
            for (u, f) in prod.terms() {
                match exact_nu {
                    Some(lam) => {
                        let val = f.terms().iter().fold(Q::zero(), |acc, (mono, coef)| {
                            let mut v = coef.to_rational().expect("exact");
                            for (k, &e) in mono.iter().enumerate() {
                                for _ in 0..e {
                                    v *= &lam[k];
                                }
                            }
                            acc + v
                        });
                        mc[(*u, w)] = val.to_c64();
                        mq[(*u, w)] = val;
                    }
                    None => mc[(*u, w)] = f.eval_c64(&point_c),
                }
            }
        }
        coord_q.push(mq);
        coord_c.push(mc);
    }
    let label = "principal series".to_string();
    let m = if exact_nu.is_some() {
        ModuleRep::from_exact(label, refl_q, coord_q)?
    } else {
        ModuleRep::new(label, refl_c, coord_c)?
    };
    Ok(m.with_nu(nu.clone()))
}

/// `‖π(z) − z(ν)·Id‖_max` for a polynomial central element `z`.
pub fn central_scalar_residual<F: Field>(m: &ModuleRep, z: &Poly<F>, nu: &Weight) -> f64 {
    let point: Vec<Complex64> = nu.to_f64().into_iter().map(c).collect();
    let expected = z.eval_c64(&point);
    let pz = m.poly_matrix(z);
    max_abs(&(pz - CMat::identity(m.dim, m.dim) * expected))
}

/// Multiset distance between the spectrum of a generic coordinate
/// combination and the values predicted by the weights `{wν}`.
pub fn weight_multiset_residual<F: Field>(weyl: &WeylGroup<F>, m: &ModuleRep, nu: &Weight, seed: u64) -> f64 {
    let (r, spec) = m.coordinate_spectrum(seed);
    let lam = nu.to_f64();
    let mut expected: Vec<Complex64> = Vec::new();
    for w in 0..weyl.order() {
        let wl = weyl_act_weight_f64(weyl, w, &lam);
        expected.push(c(wl.iter().zip(&r).map(|(a, b)| a * b).sum()));
    }
    multiset_distance(&spec, &expected)
}

/// `wν` on float pairings.
pub fn weyl_act_weight_f64<F: Field>(weyl: &WeylGroup<F>, w: usize, lam: &[f64]) -> Vec<f64> {
    let m = weyl.matrix(weyl.inverse(w));
    (0..lam.len())
        .map(|i| (0..lam.len()).map(|k| m[(k, i)].to_c64().re * lam[k]).sum())
        .collect()
}

/// Greedy matching distance between two equal-size multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    let mut sorted: Vec<&Complex64> = a.iter().collect();
    sorted.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    for x in sorted {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("same length");
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Whether two weights lie in the same W-orbit (exactly when both are exact).
pub fn same_orbit<F: Field>(weyl: &WeylGroup<F>, a: &Weight, b: &Weight, tol: f64) -> bool {
    if let (Some(x), Some(y)) = (a.exact(), b.exact()) {
        if F::EXACT {
            let xf: Vec<F> = x.iter().map(F::from_rational).collect();
            let yf: Vec<F> = y.iter().map(F::from_rational).collect();
            return (0..weyl.order()).any(|w| weyl.act_on_weight(w, &xf) == yf);
        }
    }
    let xa = a.to_f64();
    let yb = b.to_f64();
    (0..weyl.order()).any(|w| {
        weyl_act_weight_f64(weyl, w, &xa).iter().zip(&yb).all(|(p, q)| (p - q).abs() <= tol)
    })
}

/// The W-translate with lexicographically largest pairings (dominance
/// tie-break for recovered central characters).
pub fn dominant_representative<F: Field>(weyl: &WeylGroup<F>, lam: &[f64]) -> Vec<f64> {
    let mut best = lam.to_vec();
    for w in 0..weyl.order() {
        let cand = weyl_act_weight_f64(weyl, w, lam);
        let better = cand
            .iter()
            .zip(&best)
            .find(|(a, b)| (*a - *b).abs() > 1e-9)
            .is_some_and(|(a, b)| a > b);
        if better {
            best = cand;
        }
    }
    best
}

/// Checks that π(Ω) and a higher invariant act by the scalars predicted by
/// the declared ν; returns the larger residual.
pub fn verify_declared_nu<F: Field>(hecke: &Hecke<F>, m: &ModuleRep) -> Result<f64> {
    let nu = m.nu.as_ref().ok_or_else(|| Error::Precondition("module has no declared ν".into()))?;
    let omega = hecke.casimir()?;
    let omega_poly = omega.coefficient(0);
    let mut r = central_scalar_residual(m, &omega_poly, nu);
    for d in 3..=4 {
        if let Some(z) = hecke.invariant_of_degree(d) {
            r = r.max(central_scalar_residual(m, &z, nu));
            break;
        }
    }
    Ok(r)
}

/// Result of the Casimir test `(π(Ω̃)x, x) ≤ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct CasimirCriterion {
    /// Largest eigenvalue of the form-symmetrized π(Ω̃), relative to the form.
    pub max_eigenvalue: f64,
    pub fails_necessity: bool,
}

pub const CASIMIR_TOL: f64 = 1e-9;

/// Cholesky factor of a positive-definite form.
fn form_factor(form: &CMat) -> Result<CMat> {
    let herm = (form + form.adjoint()) * c(0.5);
    Cholesky::new(herm)
        .map(|ch| ch.l())
        .ok_or_else(|| Error::Precondition("the declared form is not positive definite".into()))
}

pub fn casimir_criterion<F: Field>(hecke: &Hecke<F>, m: &ModuleRep) -> Result<CasimirCriterion> {
    let h = m.form.as_ref().ok_or_else(|| Error::Precondition("no invariant form declared".into()))?;
    let l = form_factor(h)?;
    let t = m.group_matrices(hecke.weyl());
    let p = m.act(&t, &hecke.casimir_tilde()?);
    let a = h * p;
    let s = (&a + a.adjoint()) * c(0.5);
    let linv = l.clone().try_inverse().ok_or_else(|| Error::Numerical("singular form factor".into()))?;
    let b = &linv * s * linv.adjoint();
    let b = (&b + b.adjoint()) * c(0.5);
    let eig = SymmetricEigen::new(b);
    let max_eigenvalue = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(CasimirCriterion { max_eigenvalue, fails_necessity: max_eigenvalue > CASIMIR_TOL })
}

/// One W-type of a module and its bound.
#[derive(Clone, Debug, Serialize)]
pub struct WTypeBound {
    pub name: String,
    pub degree: usize,
    pub multiplicity: usize,
    pub c_value: f64,
    pub nu_norm2: f64,
    pub violated: bool,
}

/// Multiplicities of the W-irreducibles in the restriction of `m` to W,
/// read off from isotypic projectors.
pub fn w_multiplicities<F: Field>(weyl: &WeylGroup<F>, table: &CharacterTable, t: &[CMat]) -> Result<Vec<usize>> {
    (0..table.num_characters())
        .map(|s| {
            let p = isotypic_projector(weyl.table(), table, s, t)?;
            let mult = p.trace().re / table.degrees[s] as f64;
            let r = mult.round();
            if (mult - r).abs() > 1e-4 {
                return Err(Error::Numerical(format!("non-integral multiplicity {mult}")));
            }
            Ok(r as usize)
        })
        .collect()
}

/// `⟨ν,ν⟩ ≤ c(σ)` for every W-type σ of `m`.
pub fn w_type_bound_report<F: Field>(hecke: &Hecke<F>, m: &ModuleRep, seed: u64) -> Result<Vec<WTypeBound>> {
    if m.form.is_none() {
        return Err(Error::Precondition("no invariant form declared".into()));
    }
    let nu = m.nu.as_ref().ok_or_else(|| Error::Precondition("module has no declared ν".into()))?;
    let weyl = hecke.weyl();
    let table = weyl.character_table(seed)?;
    let names = weyl.character_names(&table);
    let t = m.group_matrices(weyl);
    let mults = w_multiplicities(weyl, &table, &t)?;
    let ow = omega_w(hecke.rs(), weyl, hecke.params());
    let n2 = nu_norm2(hecke.rs(), nu);
    Ok(mults
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(s, &k)| {
            let cv = c_sigma(&ow, weyl, &table, s);
            WTypeBound {
                name: names[s].clone(),
                degree: table.degrees[s],
                multiplicity: k,
                c_value: cv,
                nu_norm2: n2,
                violated: n2 > cv + 1e-9,
            }
        })
        .collect())
}

/// Character of the restriction to W.
pub fn restriction_character<F: Field>(weyl: &WeylGroup<F>, m: &ModuleRep) -> Vec<Complex64> {
    character_of(weyl.table(), &m.group_matrices(weyl))
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    label: String,
    dimension: usize,
    reflections: Vec<Vec<Vec<Value>>>,
    coords: Vec<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    form: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu: Option<Vec<Value>>,
}

fn q_value(x: &Q) -> Value {
    Value::String(q_to_string(x))
}

fn c_value(z: &Complex64) -> Value {
    if z.im == 0.0 {
        serde_json::json!(z.re)
    } else {
        serde_json::json!([z.re, z.im])
    }
}

fn qmat_json(m: &Mat<Q>) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(q_value).collect()).collect()
}

fn cmat_json(m: &CMat) -> Vec<Vec<Value>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| c_value(&m[(i, j)])).collect()).collect()
}

/// A JSON scalar: `"p/q"` (exact), a number, or `[re, im]`.
enum Entry {
    Exact(Q),
    Complex(Complex64),
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::String(s) => parse_q(s).map(Entry::Exact).ok_or_else(|| Error::Config(format!("bad rational '{s}'"))),
        Value::Number(n) => Ok(Entry::Complex(c(n.as_f64().unwrap_or(f64::NAN)))),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64().ok_or_else(|| Error::Config("bad complex entry".into()))?;
            let im = a[1].as_f64().ok_or_else(|| Error::Config("bad complex entry".into()))?;
            Ok(Entry::Complex(Complex64::new(re, im)))
        }
        _ => Err(Error::Config(format!("bad matrix entry {v}"))),
    }
}

/// Parsed matrix: exact if every entry is a rational string.
fn parse_matrix(rows: &[Vec<Value>], dim: usize) -> Result<(CMat, Option<Mat<Q>>)> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Shape(format!("matrix is not {dim}x{dim}")));
    }
    let mut cm = CMat::zeros(dim, dim);
    let mut qm: Option<Mat<Q>> = Some(Mat::zeros(dim, dim));
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            match parse_entry(v)? {
                Entry::Exact(x) => {
                    cm[(i, j)] = x.to_c64();
                    if let Some(q) = qm.as_mut() {
                        q[(i, j)] = x;
                    }
                }
                Entry::Complex(z) => {
                    cm[(i, j)] = z;
                    qm = None;
                }
            }
        }
    }
    Ok((cm, qm))
}

impl ModuleRep {
    pub fn to_json(&self) -> Value {
        let j = match &self.exact {
            Some(e) => ModuleJson {
                label: self.label.clone(),
                dimension: self.dim,
                reflections: e.reflections.iter().map(qmat_json).collect(),
                coords: e.coords.iter().map(qmat_json).collect(),
                form: e.form.as_ref().map(qmat_json).or_else(|| self.form.as_ref().map(cmat_json)),
                nu: None,
            },
            None => ModuleJson {
                label: self.label.clone(),
                dimension: self.dim,
                reflections: self.reflections.iter().map(cmat_json).collect(),
                coords: self.coords.iter().map(cmat_json).collect(),
                form: self.form.as_ref().map(cmat_json),
                nu: None,
            },
        };
        let mut v = serde_json::to_value(j).expect("serializable");
        if let Some(nu) = &self.nu {
            v["nu"] = match nu {
                Weight::Exact(x) => Value::Array(x.iter().map(q_value).collect()),
                Weight::Float(x) => serde_json::json!(x),
            };
        }
        v
    }

    /// Reads the JSON layout written by [`to_json`](Self::to_json); `nu` is
    /// read as pairings with the simple coroots.
    pub fn from_json(v: &Value) -> Result<Self> {
        let j: ModuleJson = serde_json::from_value(v.clone()).map_err(|e| Error::Config(e.to_string()))?;
        let parse_all = |ms: &[Vec<Vec<Value>>]| -> Result<Vec<(CMat, Option<Mat<Q>>)>> {
            ms.iter().map(|m| parse_matrix(m, j.dimension)).collect()
        };
        let refl = parse_all(&j.reflections)?;
        let coords = parse_all(&j.coords)?;
        let all_exact = refl.iter().chain(&coords).all(|(_, q)| q.is_some());
        let mut m = if all_exact {
            ModuleRep::from_exact(
                j.label.clone(),
                refl.into_iter().map(|(_, q)| q.expect("exact")).collect(),
                coords.into_iter().map(|(_, q)| q.expect("exact")).collect(),
            )?
        } else {
            ModuleRep::new(j.label.clone(), refl.into_iter().map(|p| p.0).collect(), coords.into_iter().map(|p| p.0).collect())?
        };
        m.dim = j.dimension;
        if let Some(f) = &j.form {
            let (cm, qm) = parse_matrix(f, j.dimension)?;
            m = match (qm, all_exact) {
                (Some(q), true) => m.with_exact_form(q)?,
                _ => m.with_form(cm)?,
            };
        }
        if let Some(nu) = &j.nu {
            let entries: Vec<Entry> = nu.iter().map(parse_entry).collect::<Result<_>>()?;
            let w = if entries.iter().all(|e| matches!(e, Entry::Exact(_))) {
                Weight::Exact(entries.into_iter().map(|e| if let Entry::Exact(x) = e { x } else { unreachable!() }).collect())
            } else {
                Weight::Float(
                    entries
                        .into_iter()
                        .map(|e| match e {
                            Entry::Exact(x) => f64::from_rational(&x),
                            Entry::Complex(z) => z.re,
                        })
                        .collect(),
                )
            };
            m.nu = Some(w);
        }
        Ok(m)
    }
}

/// Per-orbit summary of parameters, for report echoes.
pub fn parameter_echo<F: Field>(hecke: &Hecke<F>) -> BTreeMap<String, f64> {
    hecke.params().per_orbit().iter().map(|(k, v)| (k.clone(), v.to_c64().re)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::rootsys::{ParameterFunction, RootSystemSpec, Series};
    use std::sync::Arc;

    fn hecke(series: Series, rank: usize) -> Hecke<Q> {
        let rs = Arc::new(RootSystem::build(RootSystemSpec::new(series, rank)).unwrap());
        let w = Arc::new(WeylGroup::new(&rs).unwrap());
        let c = ParameterFunction::equal(&rs);
        Hecke::new(rs, w, c)
    }

    #[test]
    fn trivial_a2_weight_and_norm() {
        let h = hecke(Series::A, 2);
        let m = one_dimensional(&h, OneDimKind::Trivial);
        assert!(validate_module(&h, &m).unwrap().pass);
        let nu = m.nu.clone().unwrap();
        assert_eq!(nu_norm2_exact(h.rs(), &nu), Some(q(2, 1)));
        let amb = nu.ambient(h.rs());
        for (a, b) in amb.iter().zip([1.0, 0.0, -1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn generic_diagonal_fails_cross_relation() {
        let h = hecke(Series::A, 1);
        let one = Mat::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        let x = Mat::from_rows(vec![vec![q(3, 1), q(0, 1)], vec![q(0, 1), q(5, 1)]]);
        let m = ModuleRep::from_exact("bad", vec![one], vec![x]).unwrap();
        let rep = validate_module(&h, &m).unwrap();
        assert!(!rep.pass);
        assert!(rep.failures().iter().any(|c| c.name.starts_with("x1 t_s1")));
    }

    #[test]
    fn principal_series_a2_casimir() {
        let h = hecke(Series::A, 2);
        let nu = Weight::from_coords(h.rs(), &Weight::Exact(vec![q(1, 1), q(0, 1), q(-1, 1)])).unwrap();
        let m = principal_series(&h, &nu).unwrap();
        assert_eq!(m.dim, 6);
        assert!(validate_module(&h, &m).unwrap().pass);
        let omega = h.casimir().unwrap().coefficient(0);
        let p = m.poly_matrix(&omega);
        assert!(max_abs(&(p - CMat::identity(6, 6) * c(2.0))) < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let h = hecke(Series::B, 2);
        let m = one_dimensional(&h, OneDimKind::Steinberg);
        let back = ModuleRep::from_json(&m.to_json()).unwrap();
        assert_eq!(back.exact, m.exact);
        assert_eq!(back.nu, m.nu);
    }
}
