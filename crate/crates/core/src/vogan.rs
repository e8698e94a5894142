//! The operator `d(a) = 𝒟a − (−1)^k a𝒟` on 𝗛 ⊗ C(V∨), its associated graded
//! `d̄` on ℂ[W] ⋉ S(V∨) ⊗ C(V∨), Koszul cohomology, the kernel
//! decompositions, and the central elements ζ(z) with
//! `z ⊗ 1 = ρ(ζ(z)) + 𝒟a + b𝒟`.
//!
//! Elements are maps `Clifford blade → HeckeElement`; the mode decides
//! whether products use the cross relation (filtered) or `c ≡ 0` (graded).

use std::collections::{BTreeMap, BTreeSet};

use num::complex::Complex64;
use num::Signed;
use serde::Serialize;

use crate::clifford::{CliffordElement, SpinModule};
use crate::dirac::DiracContext;
use crate::error::{Error, Result};
use crate::field::{to_f64, Field};
use crate::hecke::{Hecke, HeckeElement};
use crate::hmod::ModuleRep;
use crate::linalg::{rank_of, row_basis, CMat, Mat};
use crate::poly::{Monomial, Poly};
use crate::setting::Setting;
use crate::spincover::GroupClifford;

/// `Σ_A h_A ⊗ e_A` over blades `e_A` of the orthogonal frame.
pub type Tensor<F> = BTreeMap<usize, HeckeElement<F>>;

/// Coordinate label `(w, monomial, blade)` of `t_w x^m ⊗ e_A`.
pub type Key = (usize, Monomial, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Filtered,
    Graded,
}

/// Isotypic pieces for the conjugation action of W̃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    /// `ρ(w̃) a = a ρ(w̃)`.
    Triv,
    /// `ρ(w̃) a = sgn(w̃) a ρ(w̃)`.
    Sgn,
}

pub fn t_add<F: Field>(a: &Tensor<F>, b: &Tensor<F>) -> Tensor<F> {
    let mut out = a.clone();
    for (m, h) in b {
        match out.get_mut(m) {
            Some(e) => *e = e.add(h),
            None => {
                out.insert(*m, h.clone());
            }
        }
    }
    out.retain(|_, h| !h.is_zero());
    out
}

pub fn t_scale<F: Field>(a: &Tensor<F>, s: &F) -> Tensor<F> {
    let mut out: Tensor<F> = a.iter().map(|(m, h)| (*m, h.scale(s))).collect();
    out.retain(|_, h| !h.is_zero());
    out
}

pub fn t_sub<F: Field>(a: &Tensor<F>, b: &Tensor<F>) -> Tensor<F> {
    t_add(a, &t_scale(b, &-F::one()))
}

pub fn t_is_zero<F: Field>(a: &Tensor<F>) -> bool {
    a.values().all(HeckeElement::is_zero)
}

/// Even and odd Clifford parts.
pub fn t_parity_split<F: Field>(a: &Tensor<F>) -> (Tensor<F>, Tensor<F>) {
    let (even, odd): (Vec<_>, Vec<_>) = a.iter().map(|(m, h)| (*m, h.clone())).partition(|(m, _)| m.count_ones() % 2 == 0);
    (even.into_iter().collect(), odd.into_iter().collect())
}

pub fn t_coords<F: Field>(a: &Tensor<F>) -> BTreeMap<Key, F> {
    let mut out = BTreeMap::new();
    for (mask, h) in a {
        for (w, p) in h.terms() {
            for (m, c) in p.terms() {
                if !c.negligible() {
                    out.insert((*w, m.clone(), *mask), c.clone());
                }
            }
        }
    }
    out
}

/// Largest coefficient magnitude.
pub fn t_max_abs<F: Field>(a: &Tensor<F>) -> f64 {
    t_coords(a).values().map(Field::magnitude).fold(0.0, f64::max)
}

fn t_from_coords<F: Field>(n: usize, coords: impl IntoIterator<Item = (Key, F)>) -> Tensor<F> {
    let mut out: Tensor<F> = BTreeMap::new();
    for ((w, m, mask), c) in coords {
        if c.negligible() {
            continue;
        }
        out.entry(mask)
            .or_insert_with(|| HeckeElement::zero(n))
            .add_term(w, &Poly::monomial(m, c));
    }
    out.retain(|_, h| !h.is_zero());
    out
}

fn key_index<F: Field>(vectors: &[&BTreeMap<Key, F>]) -> BTreeMap<Key, usize> {
    let keys: BTreeSet<&Key> = vectors.iter().flat_map(|v| v.keys()).collect();
    keys.into_iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()
}

fn dense<F: Field>(v: &BTreeMap<Key, F>, index: &BTreeMap<Key, usize>) -> Vec<F> {
    let mut out = vec![F::zero(); index.len()];
    for (k, c) in v {
        out[index[k]] = c.clone();
    }
    out
}

/// Dimension of the span.
pub fn rank_tensors<F: Field>(vs: &[Tensor<F>]) -> usize {
    let coords: Vec<_> = vs.iter().map(t_coords).collect();
    let index = key_index(&coords.iter().collect::<Vec<_>>());
    let rows: Vec<Vec<F>> = coords.iter().map(|c| dense(c, &index)).collect();
    rank_of(&rows, index.len())
}

/// A basis of the span (reduced echelon rows).
pub fn span_basis<F: Field>(n: usize, vs: &[Tensor<F>]) -> Vec<Tensor<F>> {
    let coords: Vec<_> = vs.iter().map(t_coords).collect();
    let index = key_index(&coords.iter().collect::<Vec<_>>());
    let rows: Vec<Vec<F>> = coords.iter().map(|c| dense(c, &index)).collect();
    let keys: Vec<Key> = index.keys().cloned().collect();
    row_basis(&rows, index.len())
        .into_iter()
        .map(|r| t_from_coords(n, keys.iter().cloned().zip(r)))
        .collect()
}

/// Exact square root of a rational square, or a float square root.
fn sqrt_field<F: Field>(x: &F) -> Option<F> {
    match x.to_rational() {
        Some(q) => {
            if q.is_negative() {
                return None;
            }
            let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
            (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| F::from_rational(&crate::field::Q::new(n, d)))
        }
        None => F::from_f64(x.to_c64().re.sqrt()),
    }
}

/// Coordinate keys `(w, m, A)` with `w` in `ws`, `deg m` in `degrees` and
/// blade parity `parity` (both parities when `None`).
pub fn basis_keys(
    n: usize,
    ws: &[usize],
    degrees: impl IntoIterator<Item = usize> + Clone,
    parity: Option<u32>,
) -> Vec<Key> {
    let mut out = Vec::new();
    for &w in ws {
        for d in degrees.clone() {
            for m in Poly::<f64>::monomials_of_degree(n, d) {
                for mask in 0..(1usize << n) {
                    if parity.is_none_or(|p| mask.count_ones() % 2 == p) {
                        out.push((w, m.clone(), mask));
                    }
                }
            }
        }
    }
    out
}

/// 𝗛 ⊗ C(V∨) (filtered) or ℂ[W] ⋉ S(V∨) ⊗ C(V∨) (graded), with the Dirac
/// element, the embedding ρ and the W̃-conjugation projectors.
pub struct TensorAlgebra<'a, F> {
    pub setting: &'a Setting<F>,
    pub mode: Mode,
    hecke: Hecke<F>,
    /// `(ω_i, ω^i)` in simple-coroot coordinates (orthogonal frame).
    pair: (Vec<Vec<F>>, Vec<Vec<F>>),
    /// `ω^i` in C(V∨).
    duals: Vec<CliffordElement<F>>,
    dirac: Tensor<F>,
    lifts: Vec<usize>,
    lift_inverses: Vec<Tensor<F>>,
}

impl<'a, F: Field> TensorAlgebra<'a, F> {
    pub fn new(setting: &'a Setting<F>, mode: Mode) -> Result<Self> {
        let hecke = match mode {
            Mode::Filtered => setting.hecke.clone(),
            Mode::Graded => setting.hecke.graded(),
        };
        let pair = hecke.orthogonal_dual_pair()?;
        let alg = setting.cover.algebra();
        let frame = setting.cover.frame();
        let duals: Vec<CliffordElement<F>> = pair.1.iter().map(|v| alg.vector(&frame.to_frame(v))).collect();
        let mut s = TensorAlgebra {
            setting,
            mode,
            hecke,
            pair,
            duals,
            dirac: BTreeMap::new(),
            lifts: setting.cover.lifts(setting.weyl.order()),
            lift_inverses: Vec::new(),
        };
        let mut dirac = BTreeMap::new();
        for (o, c) in s.pair.0.iter().zip(&s.duals) {
            dirac = t_add(&dirac, &s.tensor(&s.hecke.omega_tilde(o), c));
        }
        s.dirac = dirac;
        let mut invs = Vec::new();
        for &g in &s.lifts {
            let e = setting.cover.element(g);
            let r = alg
                .inverse(&e.ray)
                .ok_or_else(|| Error::Numerical("spin-cover ray is not invertible".into()))?;
            let w = setting.weyl.inverse(setting.cover.project(g));
            invs.push(s.tensor(&s.hecke.t(w), &r));
        }
        s.lift_inverses = invs;
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.setting.rank()
    }

    pub fn hecke(&self) -> &Hecke<F> {
        &self.hecke
    }

    /// The Dirac element `𝒟 = Σ ω̃_i ⊗ ω^i` (in graded mode `Σ ω_i ⊗ ω^i`).
    pub fn dirac(&self) -> &Tensor<F> {
        &self.dirac
    }

    /// `h ⊗ c`.
    pub fn tensor(&self, h: &HeckeElement<F>, c: &CliffordElement<F>) -> Tensor<F> {
        let mut out = BTreeMap::new();
        for (mask, x) in c.support() {
            let hs = h.scale(x);
            if !hs.is_zero() {
                out.insert(mask, hs);
            }
        }
        out
    }

    pub fn one(&self) -> Tensor<F> {
        BTreeMap::from([(0, self.hecke.one())])
    }

    pub fn from_hecke(&self, h: &HeckeElement<F>) -> Tensor<F> {
        let mut out = BTreeMap::new();
        if !h.is_zero() {
            out.insert(0, h.clone());
        }
        out
    }

    pub fn basis_element(&self, key: &Key) -> Tensor<F> {
        t_from_coords(self.rank(), [(key.clone(), F::one())])
    }

    pub fn from_group_clifford(&self, gc: &GroupClifford<F>) -> Tensor<F> {
        let mut out = BTreeMap::new();
        for (w, c) in gc {
            out = t_add(&out, &self.tensor(&self.hecke.t(*w), c));
        }
        out
    }

    /// `ρ(g)` up to the positive factor `1/√N_g`: `t_{p(g)} ⊗ ray(g)`.
    pub fn rho(&self, g: usize) -> Tensor<F> {
        self.from_group_clifford(&self.setting.cover.rho_ray(g))
    }

    pub fn mul(&self, a: &Tensor<F>, b: &Tensor<F>) -> Result<Tensor<F>> {
        let alg = self.setting.cover.algebra();
        let mut out: Tensor<F> = BTreeMap::new();
        for (ma, ha) in a {
            for (mb, hb) in b {
                let (m, s) = alg.blade_product(*ma, *mb);
                let prod = self.hecke.mul(ha, hb)?.scale(&s);
                match out.get_mut(&m) {
                    Some(e) => *e = e.add(&prod),
                    None => {
                        out.insert(m, prod);
                    }
                }
            }
        }
        out.retain(|_, h| !h.is_zero());
        Ok(out)
    }

    /// `d(a) = 𝒟a − (−1)^k a𝒟`, extended over the parity splitting.
    pub fn d(&self, a: &Tensor<F>) -> Result<Tensor<F>> {
        let (even, odd) = t_parity_split(a);
        let left = self.mul(&self.dirac, a)?;
        let re = self.mul(&even, &self.dirac)?;
        let ro = self.mul(&odd, &self.dirac)?;
        Ok(t_add(&t_sub(&left, &re), &ro))
    }

    /// `d̄` by its explicit formula:
    /// `Σ t_w w⁻¹(ω_i) f ⊗ ω^i v − (−1)^k Σ t_w f ω_i ⊗ v ω^i`.
    pub fn dbar(&self, a: &Tensor<F>) -> Result<Tensor<F>> {
        if self.mode != Mode::Graded {
            return Err(Error::Precondition("d̄ is defined on the graded algebra".into()));
        }
        let n = self.rank();
        let alg = self.setting.cover.algebra();
        let weyl = &self.setting.weyl;
        let mut out: BTreeMap<Key, F> = BTreeMap::new();
        let mut push = |k: Key, c: F| {
            let e = out.entry(k).or_insert_with(F::zero);
            *e = e.clone() + c;
        };
        for ((w, m, mask), c) in t_coords(a) {
            let f = Poly::monomial(m, c);
            let sign = if mask.count_ones() % 2 == 0 { -F::one() } else { F::one() };
            for (o, dual) in self.pair.0.iter().zip(&self.duals) {
                let moved = Poly::linear(&weyl.act_on_coroot_coords(weyl.inverse(w), o));
                let left_poly = moved.mul(&f);
                let right_poly = f.mul(&Poly::linear(o));
                for (b, x) in dual.support() {
                    let (lm, ls) = alg.blade_product(b, mask);
                    for (mono, y) in left_poly.terms() {
                        push((w, mono.clone(), lm), ls.clone() * x.clone() * y.clone());
                    }
                    let (rm, rs) = alg.blade_product(mask, b);
                    for (mono, y) in right_poly.terms() {
                        push((w, mono.clone(), rm), sign.clone() * rs.clone() * x.clone() * y.clone());
                    }
                }
            }
        }
        Ok(t_from_coords(n, out))
    }

    /// `d̄` as the graded commutator with `Σ ω_i ⊗ ω^i`.
    pub fn dbar_commutator(&self, a: &Tensor<F>) -> Result<Tensor<F>> {
        if self.mode != Mode::Graded {
            return Err(Error::Precondition("d̄ is defined on the graded algebra".into()));
        }
        self.d(a)
    }

    /// `ρ(g) a ρ(g)⁻¹` for the chosen lift of `w`.
    pub fn conjugate(&self, w: usize, a: &Tensor<F>) -> Result<Tensor<F>> {
        let left = self.mul(&self.rho(self.lifts[w]), a)?;
        self.mul(&left, &self.lift_inverses[w])
    }

    /// Projector onto the triv or sgn part: `|W|⁻¹ Σ_w ε(w) ρ(w̃) a ρ(w̃)⁻¹`.
    pub fn project(&self, a: &Tensor<F>, part: Part) -> Result<Tensor<F>> {
        let weyl = &self.setting.weyl;
        let mut out = BTreeMap::new();
        for w in 0..weyl.order() {
            let c = self.conjugate(w, a)?;
            out = match part {
                Part::Sgn if weyl.sign(w) < 0 => t_sub(&out, &c),
                _ => t_add(&out, &c),
            };
        }
        Ok(t_scale(&out, &F::from_ratio(1, weyl.order() as i64)))
    }

    /// Class pairs `{C, −C}` of W̃ with `C ≠ −C`; the smaller index first.
    pub fn genuine_class_pairs(&self) -> Vec<(usize, usize)> {
        let g = self.setting.cover.table();
        let mut out = Vec::new();
        for c in 0..g.num_classes() {
            let neg = g.class_of(self.setting.cover.negate(g.class_rep(c)));
            if c < neg {
                out.push((c, neg));
            }
        }
        out
    }

    /// `√N_rep · ρ(Σ_{g∈C} g)`, exact whenever the ray norms in the class
    /// differ by rational squares.
    pub fn class_sum_image(&self, class: usize) -> Result<Tensor<F>> {
        let cover = &self.setting.cover;
        let g = cover.table();
        let n_rep = cover.element(g.class_rep(class)).norm.clone();
        let mut out = BTreeMap::new();
        for &x in &g.classes()[class] {
            let ratio = n_rep.clone() / cover.element(x).norm.clone();
            let s = sqrt_field(&ratio)
                .ok_or_else(|| Error::Numerical("conjugate ray norms differ by an irrational factor".into()))?;
            out = t_add(&out, &t_scale(&self.rho(x), &s));
        }
        Ok(out)
    }
}

/// Cohomology of `d̄′` on S(V∨) ⊗ C(V∨) in degrees `0..window`.
#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub window: usize,
    pub kernel_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub pass: bool,
}

fn dbar_rank<F: Field>(alg: &TensorAlgebra<F>, keys: &[Key]) -> Result<usize> {
    let imgs = keys.iter().map(|k| alg.dbar(&alg.basis_element(k))).collect::<Result<Vec<_>>>()?;
    Ok(rank_tensors(&imgs))
}

/// Kernels are taken in degrees `< window`, where every image of `d̄` lies
/// inside the computed range.
pub fn koszul_cohomology<F: Field>(setting: &Setting<F>, window: usize) -> Result<KoszulReport> {
    let alg = TensorAlgebra::new(setting, Mode::Graded)?;
    let n = setting.rank();
    let id = setting.weyl.table().identity();
    let mut ranks = Vec::new();
    let mut kernel_dims = Vec::new();
    for j in 0..window {
        let keys = basis_keys(n, &[id], [j], None);
        let r = dbar_rank(&alg, &keys)?;
        kernel_dims.push(keys.len() - r);
        ranks.push(r);
    }
    let image_dims: Vec<usize> = (0..window).map(|j| if j == 0 { 0 } else { ranks[j - 1] }).collect();
    let cohomology: Vec<usize> = kernel_dims.iter().zip(&image_dims).map(|(k, i)| k - i).collect();
    let pass = cohomology.iter().enumerate().all(|(j, &h)| h == usize::from(j == 0));
    Ok(KoszulReport { window, kernel_dims, image_dims, cohomology, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionRow {
    pub degree: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_rho: usize,
    /// Rank of the image basis concatenated with the ρ̄ vectors.
    pub dim_sum: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub window: usize,
    /// `dim ρ̄(ℂ[W̃])`, expected `|W|`.
    pub rho_span: usize,
    pub rho_in_kernel: bool,
    pub rows: Vec<DecompositionRow>,
    /// `ker d̄^triv = Im d̄^sgn ⊕ ρ̄(ℂ[W̃]^W̃)` rows.
    pub refined_rows: Vec<DecompositionRow>,
    pub rho_center_span: usize,
    pub rho_center_triv: bool,
    pub pass: bool,
}

/// Rank accounting for `ker d̄ = Im d̄ ⊕ ρ̄(ℂ[W̃])` and its triv/sgn
/// refinement in degrees `< window`. `d̄` preserves the `t_w` component and
/// W̃-conjugation preserves W-classes, so the ranks are computed blockwise.
pub fn graded_decomposition_check<F: Field>(setting: &Setting<F>, window: usize) -> Result<DecompositionReport> {
    if window < 2 {
        return Err(Error::Domain("the decomposition check needs a window of at least 2".into()));
    }
    let alg = TensorAlgebra::new(setting, Mode::Graded)?;
    let n = setting.rank();
    let weyl = &setting.weyl;
    let lifts = setting.cover.lifts(weyl.order());
    let rhos: Vec<Tensor<F>> = lifts.iter().map(|&g| alg.rho(g)).collect();
    let rho_span = rank_tensors(&rhos);
    let mut rho_in_kernel = true;
    for g in 0..setting.cover.order() {
        rho_in_kernel &= t_is_zero(&alg.dbar(&alg.rho(g))?);
    }

    let mut rows = Vec::new();
    for j in 0..window {
        let (mut ker, mut im, mut sum) = (0, 0, 0);
        for w in 0..weyl.order() {
            let keys = basis_keys(n, &[w], [j], None);
            ker += keys.len() - dbar_rank(&alg, &keys)?;
            let mut gens = Vec::new();
            if j > 0 {
                for k in basis_keys(n, &[w], [j - 1], None) {
                    gens.push(alg.dbar(&alg.basis_element(&k))?);
                }
                im += rank_tensors(&gens);
            } else {
                gens.push(rhos[w].clone());
            }
            sum += rank_tensors(&gens);
        }
        let dim_rho = if j == 0 { rho_span } else { 0 };
        let pass = ker == im + dim_rho && sum == ker;
        rows.push(DecompositionRow { degree: j, dim_kernel: ker, dim_image: im, dim_rho, dim_sum: sum, pass });
    }

    let centers = (0..setting.cover.table().num_classes())
        .map(|c| alg.class_sum_image(c))
        .collect::<Result<Vec<_>>>()?;
    let rho_center_span = rank_tensors(&centers);
    let mut rho_center_triv = true;
    for c in &centers {
        rho_center_triv &= t_is_zero(&alg.dbar(c)?) && t_is_zero(&t_sub(&alg.project(c, Part::Triv)?, c));
    }

    let part_basis = |class: &[usize], j: usize, part: Part| -> Result<Vec<Tensor<F>>> {
        let keys = basis_keys(n, class, [j], None);
        let proj = keys
            .iter()
            .map(|k| alg.project(&alg.basis_element(k), part))
            .collect::<Result<Vec<_>>>()?;
        Ok(span_basis(n, &proj))
    };
    let mut refined_rows = Vec::new();
    for j in 0..window {
        let (mut ker, mut im, mut sum) = (0, 0, 0);
        for class in weyl.table().classes() {
            let triv = part_basis(class, j, Part::Triv)?;
            let imgs = triv.iter().map(|a| alg.dbar(a)).collect::<Result<Vec<_>>>()?;
            ker += triv.len() - rank_tensors(&imgs);
            let mut gens = Vec::new();
            if j > 0 {
                for a in part_basis(class, j - 1, Part::Sgn)? {
                    gens.push(alg.dbar(&a)?);
                }
                im += rank_tensors(&gens);
            } else {
                gens.extend(centers.iter().map(|c| restrict(c, class)));
            }
            sum += rank_tensors(&gens);
        }
        let dim_rho = if j == 0 { rho_center_span } else { 0 };
        let pass = ker == im + dim_rho && sum == ker;
        refined_rows.push(DecompositionRow { degree: j, dim_kernel: ker, dim_image: im, dim_rho, dim_sum: sum, pass });
    }

    let pass = rho_span == weyl.order()
        && rho_in_kernel
        && rho_center_triv
        && rows.iter().all(|r| r.pass)
        && refined_rows.iter().all(|r| r.pass);
    Ok(DecompositionReport { window, rho_span, rho_in_kernel, rows, refined_rows, rho_center_span, rho_center_triv, pass })
}

/// The `t_w` components with `w` in `ws`.
fn restrict<F: Field>(a: &Tensor<F>, ws: &[usize]) -> Tensor<F> {
    let n = a.values().next().map_or(0, HeckeElement::rank);
    t_from_coords(n, t_coords(a).into_iter().filter(|((w, _, _), _)| ws.contains(w)))
}

/// Structural identities of `d̄` and `d` on small elements.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialReport {
    pub window: usize,
    /// `d̄ ∘ d̄ = 0` on every basis element of degree `≤ window`.
    pub dbar_square_zero: bool,
    /// Formula and commutator definitions of `d̄` agree on the same elements.
    pub dbar_formula_matches: bool,
    /// `d̄` raises polynomial degree by exactly one.
    pub dbar_homogeneous: bool,
    pub odd_derivation_pairs: usize,
    pub odd_derivation: bool,
    /// `d̄(t_{s_α} ⊗ α∨) = 0` for every simple root.
    pub reflection_tensors_closed: bool,
    /// `d(Ω ⊗ 1) = 0`.
    pub casimir_closed: bool,
    /// `d(ρ(f_α)) = 0` for every simple root.
    pub rho_f_alpha_closed: bool,
    /// `d(1 ⊗ ω_1) ≠ 0`.
    pub vector_not_closed: bool,
    /// Projectors idempotent and mutually annihilating on degree-≤1 elements.
    pub projectors_ok: bool,
    /// `d` exchanges the triv and sgn parts.
    pub d_swaps_parts: bool,
    /// `(d^triv)² = (d^sgn)² = 0` on degree-≤1 elements.
    pub d_square_zero: bool,
    pub pass: bool,
}

fn random_element<F: Field>(alg: &TensorAlgebra<F>, rng: &mut impl rand::Rng, parity: u32) -> Tensor<F> {
    let n = alg.rank();
    let order = alg.setting.weyl.order();
    let mut out = BTreeMap::new();
    for _ in 0..rng.random_range(1..=3) {
        let w = rng.random_range(0..order);
        let d = rng.random_range(0..=1);
        let monos = Poly::<F>::monomials_of_degree(n, d);
        let m = monos[rng.random_range(0..monos.len())].clone();
        let masks: Vec<usize> = (0..1usize << n).filter(|m| m.count_ones() % 2 == parity).collect();
        let mask = masks[rng.random_range(0..masks.len())];
        let c = F::from_i64(rng.random_range(-3..=3));
        out = t_add(&out, &t_scale(&alg.basis_element(&(w, m, mask)), &c));
    }
    out
}

pub fn differential_check<F: Field>(setting: &Setting<F>, window: usize, pairs: usize) -> Result<DifferentialReport> {
    use rand::{Rng, SeedableRng};
    let graded = TensorAlgebra::new(setting, Mode::Graded)?;
    let filtered = TensorAlgebra::new(setting, Mode::Filtered)?;
    let n = setting.rank();
    let weyl = &setting.weyl;
    let all_w: Vec<usize> = (0..weyl.order()).collect();

    let mut dbar_square_zero = true;
    let mut dbar_formula_matches = true;
    let mut dbar_homogeneous = true;
    for k in basis_keys(n, &all_w, 0..=window, None) {
        let a = graded.basis_element(&k);
        let da = graded.dbar(&a)?;
        dbar_homogeneous &= t_coords(&da).keys().all(|(w, m, _)| *w == k.0 && m.iter().map(|&e| e as usize).sum::<usize>() == k.1.iter().map(|&e| e as usize).sum::<usize>() + 1);
        dbar_square_zero &= t_is_zero(&graded.dbar(&da)?);
        if k.1.iter().map(|&e| e as usize).sum::<usize>() <= 1 {
            dbar_formula_matches &= t_is_zero(&t_sub(&da, &graded.dbar_commutator(&a)?));
        }
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(setting.seed);
    let mut odd_derivation = true;
    for _ in 0..pairs {
        let k = rng.random_range(0..2u32);
        let a = random_element(&graded, &mut rng, k);
        let kb = rng.random_range(0..2u32);
        let b = random_element(&graded, &mut rng, kb);
        let lhs = graded.dbar(&graded.mul(&a, &b)?)?;
        let first = graded.mul(&graded.dbar(&a)?, &b)?;
        let second = graded.mul(&a, &graded.dbar(&b)?)?;
        let rhs = if k == 0 { t_add(&first, &second) } else { t_sub(&first, &second) };
        odd_derivation &= t_is_zero(&t_sub(&lhs, &rhs));
    }

    let mut reflection_tensors_closed = true;
    let mut rho_f_alpha_closed = true;
    for &r in setting.rs.simple_roots() {
        let s = weyl.reflection(r);
        let x = graded.tensor(&graded.hecke().t(s), &setting.cover.coroot_vector(r));
        reflection_tensors_closed &= t_is_zero(&graded.dbar(&x)?);
        let f = filtered.rho(setting.cover.f_alpha(r));
        rho_f_alpha_closed &= t_is_zero(&filtered.d(&f)?);
    }
    let omega = filtered.from_hecke(&setting.hecke.casimir()?);
    let casimir_closed = t_is_zero(&filtered.d(&omega)?);
    let e1 = filtered.tensor(&setting.hecke.one(), &setting.cover.algebra().vector(&setting.cover.frame().to_frame(&filtered.pair.0[0])));
    let vector_not_closed = !t_is_zero(&filtered.d(&e1)?);

    let mut projectors_ok = true;
    let mut d_swaps_parts = true;
    let mut d_square_zero = true;
    let mut triv_all = Vec::new();
    let mut sgn_all = Vec::new();
    for k in basis_keys(n, &all_w, 0..=1, None) {
        let a = filtered.basis_element(&k);
        let t = filtered.project(&a, Part::Triv)?;
        let s = filtered.project(&a, Part::Sgn)?;
        triv_all.push(t);
        sgn_all.push(s);
    }
    let triv = span_basis(n, &triv_all);
    let sgn = span_basis(n, &sgn_all);
    for (basis, part, other) in [(&triv, Part::Triv, Part::Sgn), (&sgn, Part::Sgn, Part::Triv)] {
        for a in basis {
            projectors_ok &= t_is_zero(&t_sub(&filtered.project(a, part)?, a));
            projectors_ok &= t_is_zero(&filtered.project(a, other)?);
            let da = filtered.d(a)?;
            d_swaps_parts &= t_is_zero(&t_sub(&filtered.project(&da, other)?, &da));
            d_square_zero &= t_is_zero(&filtered.d(&da)?);
        }
    }

    let pass = dbar_square_zero
        && dbar_formula_matches
        && dbar_homogeneous
        && odd_derivation
        && reflection_tensors_closed
        && casimir_closed
        && rho_f_alpha_closed
        && vector_not_closed
        && projectors_ok
        && d_swaps_parts
        && d_square_zero;
    Ok(DifferentialReport {
        window,
        dbar_square_zero,
        dbar_formula_matches,
        dbar_homogeneous,
        odd_derivation_pairs: pairs,
        odd_derivation,
        reflection_tensors_closed,
        casimir_closed,
        rho_f_alpha_closed,
        vector_not_closed,
        projectors_ok,
        d_swaps_parts,
        d_square_zero,
        pass,
    })
}

/// Coefficient of ζ(z) on one W̃ class sum (the partner class `−C` carries
/// the negative).
#[derive(Clone, Debug, Serialize)]
pub struct ZetaClass {
    pub class: usize,
    pub partner: usize,
    pub size: usize,
    pub coefficient: f64,
}

#[derive(Clone, Debug)]
pub struct ZetaSolution<F> {
    pub degree: usize,
    pub classes: Vec<ZetaClass>,
    /// `ρ(ζ(z))` exactly.
    pub rho_zeta: Tensor<F>,
    pub a: Tensor<F>,
    pub b: Tensor<F>,
    /// `max |z ⊗ 1 − ρ(ζ) − 𝒟a − b𝒟|`.
    pub residual: f64,
    /// The ζ-projection of the solution set is a single point.
    pub unique: bool,
    /// A solution with `b = a` exists.
    pub b_equals_a: bool,
    pub sgn_odd_dim: usize,
    pub unknowns: usize,
    pub equations: usize,
}

impl<F: Field> ZetaSolution<F> {
    /// `σ̃(ζ)` from a character row of W̃ (class representatives).
    pub fn scalar_on(&self, row: &[Complex64]) -> Complex64 {
        let deg = row[0];
        self.classes
            .iter()
            .map(|c| Complex64::new(c.coefficient * c.size as f64, 0.0) * row[c.class])
            .sum::<Complex64>()
            / deg
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "classes": self.classes,
            "residual": self.residual,
            "unique": self.unique,
            "b_equals_a": self.b_equals_a,
            "sgn_odd_dim": self.sgn_odd_dim,
            "unknowns": self.unknowns,
            "equations": self.equations,
        })
    }
}

/// Solves `z ⊗ 1 = ρ(ζ) + 𝒟a + b𝒟` with ζ central in ℂ[W̃] and `a, b` odd,
/// in the sgn part, of degree `< deg z`, as one exact linear system.
pub fn solve_zeta<F: Field>(setting: &Setting<F>, z: &HeckeElement<F>) -> Result<ZetaSolution<F>> {
    if !setting.hecke.is_central(z)? {
        return Err(Error::Precondition("z is not central".into()));
    }
    let alg = TensorAlgebra::new(setting, Mode::Filtered)?;
    let n = setting.rank();
    let degree = z.degree();
    if degree + 1 > setting.hecke.degree_cap() {
        return Err(Error::DegreeCap { cap: setting.hecke.degree_cap(), degree: degree + 1 });
    }
    let pairs = alg.genuine_class_pairs();
    let centers = pairs.iter().map(|(c, _)| alg.class_sum_image(*c)).collect::<Result<Vec<_>>>()?;
    let all_w: Vec<usize> = (0..setting.weyl.order()).collect();
    let sgn_odd = if degree == 0 {
        Vec::new()
    } else {
        let proj = basis_keys(n, &all_w, 0..degree, Some(1))
            .iter()
            .map(|k| alg.project(&alg.basis_element(k), Part::Sgn))
            .collect::<Result<Vec<_>>>()?;
        span_basis(n, &proj)
    };
    let mut columns: Vec<Tensor<F>> = centers.clone();
    let left = sgn_odd.iter().map(|a| alg.mul(alg.dirac(), a)).collect::<Result<Vec<_>>>()?;
    let right = sgn_odd.iter().map(|a| alg.mul(a, alg.dirac())).collect::<Result<Vec<_>>>()?;
    columns.extend(left.iter().cloned());
    columns.extend(right.iter().cloned());
    let rhs = alg.from_hecke(z);

    let coords: Vec<_> = columns.iter().map(t_coords).collect();
    let rhs_coords = t_coords(&rhs);
    let mut refs: Vec<&BTreeMap<Key, F>> = coords.iter().collect();
    refs.push(&rhs_coords);
    let index = key_index(&refs);
    let cols: Vec<Vec<F>> = coords.iter().map(|c| dense(c, &index)).collect();
    let matrix = Mat::from_fn(index.len(), cols.len(), |i, j| cols[j][i].clone());
    let b = dense(&rhs_coords, &index);
    let sol = matrix.solve(&b).ok_or_else(|| Error::DegreeCap {
        cap: setting.hecke.degree_cap(),
        degree: degree + 1,
    })?;
    let m = centers.len();
    let k = sgn_odd.len();
    let unique = matrix.nullspace().iter().all(|v| v[..m].iter().all(Field::negligible));

    let combine = |vs: &[Tensor<F>], cs: &[F]| {
        vs.iter().zip(cs).fold(BTreeMap::new(), |acc, (v, c)| t_add(&acc, &t_scale(v, c)))
    };
    let rho_zeta = combine(&centers, &sol[..m]);
    let a = combine(&sgn_odd, &sol[m..m + k]);
    let bb = combine(&sgn_odd, &sol[m + k..]);
    let recon = t_add(&t_add(&rho_zeta, &alg.mul(alg.dirac(), &a)?), &alg.mul(&bb, alg.dirac())?);
    let residual = t_max_abs(&t_sub(&rhs, &recon));

    let sym: Vec<Tensor<F>> = left.iter().zip(&right).map(|(l, r)| t_add(l, r)).collect();
    let mut sym_cols: Vec<Vec<F>> = cols[..m].to_vec();
    sym_cols.extend(sym.iter().map(|s| dense(&t_coords(s), &index)));
    let sym_ok = sym.iter().all(|s| t_coords(s).keys().all(|key| index.contains_key(key)));
    let sym_matrix = Mat::from_fn(index.len(), sym_cols.len(), |i, j| sym_cols[j][i].clone());
    let b_equals_a = sym_ok && sym_matrix.solve(&b).is_some();

    let g = setting.cover.table();
    let classes = pairs
        .iter()
        .zip(&sol[..m])
        .map(|(&(c, partner), y)| {
            let norm = setting.cover.element(g.class_rep(c)).norm.to_c64().re;
            ZetaClass { class: c, partner, size: g.class_size(c), coefficient: to_f64(y) * norm.sqrt() }
        })
        .collect();
    Ok(ZetaSolution {
        degree,
        classes,
        rho_zeta,
        a,
        b: bb,
        residual,
        unique,
        b_equals_a,
        sgn_odd_dim: k,
        unknowns: cols.len(),
        equations: index.len(),
    })
}

/// `ζ(Ω)` against Ω_W̃: exact ρ-image equality and class-coefficient match.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaOmegaCheck {
    pub rho_equal: bool,
    pub coefficient_error: f64,
    pub unique: bool,
    pub residual: f64,
    pub dirac_witness: bool,
    pub pass: bool,
}

pub fn zeta_casimir_check<F: Field>(setting: &Setting<F>) -> Result<ZetaOmegaCheck> {
    let omega = setting.hecke.casimir()?;
    let sol = solve_zeta(setting, &omega)?;
    let alg = TensorAlgebra::new(setting, Mode::Filtered)?;
    let target = alg.from_group_clifford(&setting.omega_tilde.rho_image(&setting.cover));
    let diff = t_sub(&sol.rho_zeta, &target);
    let rho_equal = if F::EXACT { t_is_zero(&diff) } else { t_max_abs(&diff) < 1e-8 };
    let coeffs = setting.omega_tilde.group_algebra(setting.cover.order());
    let g = setting.cover.table();
    let coefficient_error = sol
        .classes
        .iter()
        .map(|c| {
            let expected = coeffs[g.class_rep(c.class)] - coeffs[g.class_rep(c.partner)];
            (expected - Complex64::new(c.coefficient, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    let square = alg.mul(alg.dirac(), alg.dirac())?;
    let dirac_witness = t_is_zero(&t_sub(&t_add(&alg.from_hecke(&omega), &square), &target));
    let pass = rho_equal && coefficient_error < 1e-8 && sol.unique && sol.residual < 1e-8 && dirac_witness;
    Ok(ZetaOmegaCheck { rho_equal, coefficient_error, unique: sol.unique, residual: sol.residual, dirac_witness, pass })
}

/// `χ_ν(z) = σ̃(ζ(z))` for every σ̃ in the Dirac kernel of `module`, plus the
/// direct check that `(π⊗γ)(ρ(ζ))` is the scalar `χ_ν(z)` there.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaCharacterCheck {
    pub module: String,
    pub chi_nu: f64,
    pub entries: Vec<(String, f64)>,
    pub character_error: f64,
    pub operator_error: f64,
    pub pass: bool,
}

pub fn zeta_character_check<F: Field>(
    setting: &Setting<F>,
    module: &ModuleRep,
    spin: &SpinModule,
    z: &HeckeElement<F>,
    sol: &ZetaSolution<F>,
) -> Result<ZetaCharacterCheck> {
    let nu = crate::dirac::declared_nu(module)?.to_f64();
    let point: Vec<Complex64> = nu.iter().map(|x| Complex64::new(*x, 0.0)).collect();
    let mut chi = Complex64::new(0.0, 0.0);
    for (w, p) in z.terms() {
        if *w != setting.weyl.table().identity() {
            return Err(Error::Precondition("central element with a t_w component".into()));
        }
        chi += p.eval_c64(&point);
    }
    let ctx = DiracContext::new(setting, module, spin.clone())?;
    let coh = ctx.cohomology();
    let zero = CMat::zeros(ctx.dim(), 0);
    let entries = ctx.isotypic_report(&coh.kernel, &zero)?;
    let mut character_error: f64 = 0.0;
    let mut out = Vec::new();
    for e in &entries {
        let val = sol.scalar_on(&setting.cover_table.values[e.index]);
        character_error = character_error.max((val - chi).norm());
        out.push((e.name.clone(), val.re));
    }
    let alg = setting.cover.algebra();
    let mut op = CMat::zeros(ctx.dim(), ctx.dim());
    for (mask, h) in &sol.rho_zeta {
        let x = module.act(&ctx.t, h);
        let c = spin.blade(alg, *mask);
        op += crate::linalg::kron(&x, &c);
    }
    let k = &coh.kernel;
    let operator_error = crate::linalg::max_abs(&(&op * k - k * chi));
    let pass = !entries.is_empty() && character_error < 1e-8 && operator_error < 1e-8;
    Ok(ZetaCharacterCheck {
        module: module.label.clone(),
        chi_nu: chi.re,
        entries: out,
        character_error,
        operator_error,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::rootsys::{RootSystemSpec, Series};

    fn setting(series: Series, n: usize) -> Setting<Q> {
        Setting::equal(RootSystemSpec::new(series, n), 7).unwrap()
    }

    #[test]
    fn a1_koszul_and_decomposition() {
        let s = setting(Series::A, 1);
        let k = koszul_cohomology(&s, 4).unwrap();
        assert_eq!(k.cohomology, vec![1, 0, 0, 0]);
        let d = graded_decomposition_check(&s, 3).unwrap();
        assert_eq!(d.rho_span, 2);
        assert!(d.pass, "{d:?}");
    }

    #[test]
    fn a1_differentials() {
        let s = setting(Series::A, 1);
        let r = differential_check(&s, 3, 20).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn a1_zeta_of_casimir() {
        let s = setting(Series::A, 1);
        let c = zeta_casimir_check(&s).unwrap();
        assert!(c.pass, "{c:?}");
        let one = solve_zeta(&s, &s.hecke.one()).unwrap();
        assert!(one.unique && one.residual == 0.0);
        assert!(t_is_zero(&t_sub(&one.rho_zeta, &TensorAlgebra::new(&s, Mode::Filtered).unwrap().one())));
    }
}
