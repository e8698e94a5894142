//! The spin double cover W̃ ⊂ Pin(V∨) of the Weyl group, its projection to
//! W, genuine characters, and the central elements Ω_W̃ ∈ ℂ[W̃] and
//! Ω_W ∈ ℂ[W].
//!
//! Elements of W̃ are stored as rays: a Clifford element `r` with rational
//! coefficients together with `N = rᵗr > 0`, standing for `r/√N`. Rays are
//! normalized so their first nonzero coefficient is `±1`, which makes the
//! coefficient vector a faithful key.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::complex::Complex64;

use crate::chartab::CharacterTable;
use crate::clifford::{Clifford, CliffordElement, OrthogonalFrame, SpinModule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{GroupElement, GroupTable, DEFAULT_GROUP_CAP};
use crate::linalg::CMat;
use crate::rootsys::{ParameterFunction, RootSystem};
use crate::weyl::WeylGroup;

#[derive(Clone, Debug)]
pub struct SpinElement<F> {
    alg: Arc<Clifford<F>>,
    pub ray: CliffordElement<F>,
    pub norm: F,
}

impl<F: Field> SpinElement<F> {
    fn normalized(alg: Arc<Clifford<F>>, ray: CliffordElement<F>, norm: F) -> Self {
        let lead = ray.coeffs().iter().find(|c| !c.negligible()).cloned().unwrap_or_else(F::one);
        let a = if lead.to_c64().re < 0.0 { -lead } else { lead };
        let inv = F::one() / a.clone();
        let ray = ray.scale(&inv);
        let norm = norm * inv.clone() * inv;
        SpinElement { alg, ray, norm }
    }

    /// Complex coefficients of the actual Pin element `r/√N`.
    pub fn to_complex(&self) -> CliffordElement<Complex64> {
        let s = self.norm.to_c64().sqrt();
        self.ray.map(|c| c.to_c64() / s)
    }
}

impl<F: Field> GroupElement for SpinElement<F> {
    type Key = Vec<F::Key>;
    fn key(&self) -> Vec<F::Key> {
        self.ray.coeffs().iter().map(Field::key).collect()
    }
    fn compose(&self, other: &Self) -> Self {
        let ray = self.alg.mul_unchecked(&self.ray, &other.ray);
        Self::normalized(self.alg.clone(), ray, self.norm.clone() * other.norm.clone())
    }
}

/// Sums `Σ_w t_w ⊗ a_w` in ℂ[W] ⊗ C(V∨); the image of ℂ[W̃] under the
/// diagonal embedding ρ lives here.
pub type GroupClifford<F> = BTreeMap<usize, CliffordElement<F>>;

pub fn gc_mul<F: Field>(
    w: &WeylGroup<F>,
    alg: &Clifford<F>,
    a: &GroupClifford<F>,
    b: &GroupClifford<F>,
) -> GroupClifford<F> {
    let mut out: GroupClifford<F> = BTreeMap::new();
    for (x, ca) in a {
        for (y, cb) in b {
            let prod = alg.mul_unchecked(ca, cb);
            let key = w.mul(*x, *y);
            let entry = out.entry(key).or_insert_with(|| alg.zero());
            *entry = &*entry + &prod;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn gc_sub<F: Field>(a: &GroupClifford<F>, b: &GroupClifford<F>) -> GroupClifford<F> {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(|| v.scale(&F::zero()));
        *e = &*e - v;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn gc_is_zero<F: Field>(a: &GroupClifford<F>) -> bool {
    a.values().all(CliffordElement::is_zero)
}

#[derive(Clone, Debug)]
pub struct SpinCover<F> {
    frame: OrthogonalFrame<F>,
    alg: Arc<Clifford<F>>,
    table: GroupTable<SpinElement<F>>,
    proj: Vec<usize>,
    minus_one: usize,
    /// `f_α` for every root index (negative roots give `−f_{−α}`).
    f_index: Vec<usize>,
    /// Frame coordinates of every coroot.
    coroot_frame: Vec<Vec<F>>,
}

impl<F: Field> SpinCover<F> {
    pub fn new(rs: &RootSystem<F>, weyl: &WeylGroup<F>) -> Result<Self> {
        Self::with_cap(rs, weyl, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(rs: &RootSystem<F>, weyl: &WeylGroup<F>, cap: usize) -> Result<Self> {
        let frame = OrthogonalFrame::from_gram(rs.gram())?;
        let alg = Arc::new(frame.algebra());
        let coroot_frame: Vec<Vec<F>> =
            (0..rs.num_roots()).map(|r| frame.to_frame(rs.coroot_coords(r))).collect();
        let ray_of = |r: usize| {
            let v = alg.vector(&coroot_frame[r]);
            SpinElement::normalized(alg.clone(), v, rs.coroot_norm2(r))
        };
        let identity = SpinElement::normalized(alg.clone(), alg.one(), F::one());
        let gens: Vec<SpinElement<F>> = rs.simple_roots().iter().map(|&r| ray_of(r)).collect();
        let table = GroupTable::generate(identity, &gens, cap)?;
        let simple_w: Vec<usize> = (0..rs.rank()).map(|i| weyl.simple(i)).collect();
        let proj = table.extend(0usize, &simple_w, |a, b| weyl.mul(*a, *b));
        let lookup: std::collections::HashMap<Vec<F::Key>, usize> =
            (0..table.order()).map(|i| (table.element(i).key(), i)).collect();
        let minus = SpinElement::normalized(alg.clone(), alg.scalar(-F::one()), F::one());
        let minus_one = *lookup
            .get(&minus.key())
            .ok_or_else(|| Error::Validation("-1 is not in the generated cover".into()))?;
        let f_index = (0..rs.num_roots())
            .map(|r| {
                lookup
                    .get(&ray_of(r).key())
                    .copied()
                    .ok_or_else(|| Error::Validation(format!("f_alpha for root {r} missing from the cover")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpinCover { frame, alg, table, proj, minus_one, f_index, coroot_frame })
    }

    pub fn table(&self) -> &GroupTable<SpinElement<F>> {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn algebra(&self) -> &Clifford<F> {
        &self.alg
    }

    pub fn frame(&self) -> &OrthogonalFrame<F> {
        &self.frame
    }

    pub fn element(&self, g: usize) -> &SpinElement<F> {
        self.table.element(g)
    }

    /// The projection `p: W̃ → W`.
    pub fn project(&self, g: usize) -> usize {
        self.proj[g]
    }

    pub fn minus_one(&self) -> usize {
        self.minus_one
    }

    pub fn negate(&self, g: usize) -> usize {
        self.table.mul(self.minus_one, g)
    }

    pub fn f_alpha(&self, root: usize) -> usize {
        self.f_index[root]
    }

    /// Frame coordinates of the coroot `α∨`.
    pub fn coroot_in_frame(&self, root: usize) -> &[F] {
        &self.coroot_frame[root]
    }

    /// The Clifford vector `α∨` (a ray of `f_α`).
    pub fn coroot_vector(&self, root: usize) -> CliffordElement<F> {
        self.alg.vector(&self.coroot_frame[root])
    }

    pub fn sign(&self, weyl: &WeylGroup<F>, g: usize) -> i64 {
        weyl.sign(self.proj[g])
    }

    /// One element of W̃ over each `w ∈ W`.
    pub fn lifts(&self, weyl_order: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; weyl_order];
        for g in 0..self.order() {
            let w = self.proj[g];
            if out[w] == usize::MAX {
                out[w] = g;
            }
        }
        out
    }

    /// `γ(g)` on a spin module.
    pub fn gamma(&self, spin: &SpinModule, g: usize) -> CMat {
        let e = self.element(g);
        spin.act(&self.alg, &e.ray) / Complex64::new(e.norm.to_c64().re.sqrt(), 0.0)
    }

    /// `ρ(g) = t_{p(g)} ⊗ ray` (up to the positive factor `1/√N`).
    pub fn rho_ray(&self, g: usize) -> GroupClifford<F> {
        BTreeMap::from([(self.proj[g], self.element(g).ray.clone())])
    }

    pub fn character_table(&self, seed: u64) -> Result<CharacterTable> {
        CharacterTable::compute(&self.table, seed)
    }

    /// `χ(−1) = −χ(1)`.
    pub fn genuine_flags(&self, table: &CharacterTable) -> Vec<bool> {
        let c = self.table.class_of(self.minus_one);
        let id = self.table.class_of(0);
        table.values.iter().map(|row| (row[c] + row[id]).norm() < 1e-6).collect()
    }

    /// Character of `w̃ ↦ γ(w̃)` on a spin module, on class representatives.
    pub fn spin_character(&self, spin: &SpinModule) -> Vec<Complex64> {
        (0..self.table.num_classes())
            .map(|c| self.gamma(spin, self.table.class_rep(c)).trace())
            .collect()
    }
}

/// One off-diagonal term `−¼ c_α c_β |α||β| f_α f_β` of Ω_W̃.
#[derive(Clone, Debug)]
pub struct PairTerm<F> {
    pub alpha: usize,
    pub beta: usize,
    /// `−¼ c_α c_β`.
    pub coeff: F,
    /// `|α||β|` as a float.
    pub length_product: f64,
    /// The group element `f_α f_β ∈ W̃`.
    pub element: usize,
    /// `|α||β| f_α f_β = 4/(⟨α∨,α∨⟩⟨β∨,β∨⟩) α∨β∨` in C(V∨), exactly.
    pub clifford: CliffordElement<F>,
}

/// Ω_W̃ = (¼ Σ_{α>0} c_α² ⟨α,α⟩)·1 − ¼ Σ_{R²∘} c_α c_β |α||β| f_α f_β,
/// where `R²∘ = {(α,β): α,β > 0, α ≠ β, s_α(β) < 0}`.
#[derive(Clone, Debug)]
pub struct OmegaWTilde<F> {
    pub scalar: F,
    pub terms: Vec<PairTerm<F>>,
}

/// Pairs of positive roots `α ≠ β` with `s_α(β) < 0`.
pub fn obtuse_pairs<F: Field>(rs: &RootSystem<F>, weyl: &WeylGroup<F>) -> Vec<(usize, usize)> {
    let np = rs.num_positive();
    let mut out = Vec::new();
    for a in 0..np {
        for b in 0..np {
            if a != b && !rs.is_positive(weyl.act_on_root(weyl.reflection(a), b)) {
                out.push((a, b));
            }
        }
    }
    out
}

impl<F: Field> OmegaWTilde<F> {
    pub fn new(rs: &RootSystem<F>, weyl: &WeylGroup<F>, cover: &SpinCover<F>, c: &ParameterFunction<F>) -> Self {
        let quarter = F::from_ratio(1, 4);
        let scalar = rs
            .positive_roots()
            .fold(F::zero(), |acc, a| acc + c.get(a).clone() * c.get(a).clone() * rs.root_norm2(a))
            * quarter.clone();
        let alg = cover.algebra();
        let terms = obtuse_pairs(rs, weyl)
            .into_iter()
            .map(|(a, b)| {
                let na = rs.coroot_norm2(a);
                let nb = rs.coroot_norm2(b);
                let prod = alg.mul_unchecked(&cover.coroot_vector(a), &cover.coroot_vector(b));
                let factor = F::from_i64(4) / (na.clone() * nb.clone());
                PairTerm {
                    alpha: a,
                    beta: b,
                    coeff: -(c.get(a).clone() * c.get(b).clone() * quarter.clone()),
                    length_product: (rs.root_norm2(a).to_c64().re * rs.root_norm2(b).to_c64().re).sqrt(),
                    element: cover.table().mul(cover.f_alpha(a), cover.f_alpha(b)),
                    clifford: prod.scale(&factor),
                }
            })
            .collect();
        OmegaWTilde { scalar, terms }
    }

    /// Coefficients in ℂ[W̃] (index = element of W̃).
    pub fn group_algebra(&self, order: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); order];
        v[0] += self.scalar.to_c64();
        for t in &self.terms {
            v[t.element] += t.coeff.to_c64() * t.length_product;
        }
        v
    }

    /// ρ(Ω_W̃) in ℂ[W] ⊗ C(V∨), exactly.
    pub fn rho_image(&self, cover: &SpinCover<F>) -> GroupClifford<F> {
        let alg = cover.algebra();
        let mut out: GroupClifford<F> = BTreeMap::new();
        out.insert(0, alg.scalar(self.scalar.clone()));
        for t in &self.terms {
            let w = cover.project(t.element);
            let e = out.entry(w).or_insert_with(|| alg.zero());
            *e = &*e + &t.clifford.scale(&t.coeff);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Scalar of Ω_W̃ on the irreducible `sigma` of W̃, by the character formula.
    pub fn scalar_on_character(&self, cover: &SpinCover<F>, table: &CharacterTable, sigma: usize) -> f64 {
        let g = cover.table();
        let row = &table.values[sigma];
        let deg = table.degrees[sigma] as f64;
        let mut total = self.scalar.to_c64() * deg;
        for t in &self.terms {
            total += t.coeff.to_c64() * t.length_product * row[g.class_of(t.element)];
        }
        (total / deg).re
    }

    /// Exact commutation with `ρ(f_i)` for every simple root.
    pub fn commutes_with_generators(&self, rs: &RootSystem<F>, weyl: &WeylGroup<F>, cover: &SpinCover<F>) -> bool {
        let rho = self.rho_image(cover);
        rs.simple_roots().iter().all(|&r| {
            let f = cover.rho_ray(cover.f_alpha(r));
            let lhs = gc_mul(weyl, cover.algebra(), &f, &rho);
            let rhs = gc_mul(weyl, cover.algebra(), &rho, &f);
            gc_is_zero(&gc_sub(&lhs, &rhs))
        })
    }

    /// `(π ⊗ γ)(ρ(Ω_W̃))` given `π(t_w)` for all `w` and a spin module.
    pub fn on_module(&self, cover: &SpinCover<F>, t: &[CMat], spin: &SpinModule) -> CMat {
        let d = t[0].nrows() * spin.dim();
        let mut out = CMat::zeros(d, d);
        for (w, a) in self.rho_image(cover) {
            out += t[w].kronecker(&spin.act(cover.algebra(), &a));
        }
        out
    }
}

/// Scalar of Ω_W̃ per irreducible of W̃ by two routes.
#[derive(Clone, Debug)]
pub struct CTildeValue {
    pub index: usize,
    pub degree: usize,
    pub genuine: bool,
    /// Character-formula value.
    pub formula: f64,
    /// Eigenvalue of left multiplication by Ω_W̃ on `v = P_σ e_1` in the
    /// regular representation.
    pub eigenvalue: f64,
    /// `‖L v − λ v‖_max / ‖v‖_max`.
    pub off_scalar: f64,
}

pub fn c_sigma_tilde_values<F: Field>(
    omega: &OmegaWTilde<F>,
    cover: &SpinCover<F>,
    table: &CharacterTable,
) -> Result<Vec<CTildeValue>> {
    let g = cover.table();
    let n = g.order();
    let k = table.num_characters();
    let support: Vec<(usize, Complex64)> = omega
        .group_algebra(n)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .collect();
    // columns P_σ e_1 = (deg σ/|W̃|) Σ_g conj(χ_σ(g)) e_g of the regular representation
    let v = CMat::from_fn(n, k, |x, s| {
        table.values[s][g.class_of(x)].conj() * (table.degrees[s] as f64 / n as f64)
    });
    let mut lv = CMat::zeros(n, k);
    for &(x, c) in &support {
        for y in 0..n {
            let xy = g.mul(x, y);
            for s in 0..k {
                lv[(xy, s)] += c * v[(y, s)];
            }
        }
    }
    let genuine = cover.genuine_flags(table);
    Ok((0..k)
        .map(|s| {
            let col = v.column(s);
            let lcol = lv.column(s);
            let lambda = (col.dotc(&lcol) / col.dotc(&col)).re;
            let scale = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let off = (lcol - col * Complex64::new(lambda, 0.0)).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
            CTildeValue {
                index: s,
                degree: table.degrees[s],
                genuine: genuine[s],
                formula: omega.scalar_on_character(cover, table, s),
                eigenvalue: lambda,
                off_scalar: off,
            }
        })
        .collect())
}

/// Ω_W = ¼ Σ_{α>0} c_α²⟨α,α⟩ + ¼ Σ_{R²∘} c_α c_β ⟨α,β⟩ t_{s_α} t_{s_β} ∈ ℂ[W].
pub fn omega_w<F: Field>(rs: &RootSystem<F>, weyl: &WeylGroup<F>, c: &ParameterFunction<F>) -> BTreeMap<usize, F> {
    let quarter = F::from_ratio(1, 4);
    let mut out = BTreeMap::new();
    let scalar = rs
        .positive_roots()
        .fold(F::zero(), |acc, a| acc + c.get(a).clone() * c.get(a).clone() * rs.root_norm2(a))
        * quarter.clone();
    out.insert(0, scalar);
    for (a, b) in obtuse_pairs(rs, weyl) {
        let w = weyl.mul(weyl.reflection(a), weyl.reflection(b));
        let v = c.get(a).clone() * c.get(b).clone() * rs.dual_inner_product(rs.root(a), rs.root(b)) * quarter.clone();
        let e = out.entry(w).or_insert_with(F::zero);
        *e = e.clone() + v;
    }
    out.retain(|_, v| !v.negligible());
    out
}

/// `c(σ)`: the scalar of Ω_W on the W-irreducible `sigma`.
pub fn c_sigma<F: Field>(omega_w: &BTreeMap<usize, F>, weyl: &WeylGroup<F>, table: &CharacterTable, sigma: usize) -> f64 {
    let row = &table.values[sigma];
    let deg = table.degrees[sigma] as f64;
    let total: Complex64 = omega_w
        .iter()
        .map(|(w, v)| v.to_c64() * row[weyl.table().class_of(*w)])
        .sum();
    (total / deg).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::rootsys::{RootSystemSpec, Series};

    fn setup(series: Series, rank: usize) -> (RootSystem<Q>, WeylGroup<Q>, SpinCover<Q>) {
        let rs = RootSystem::build(RootSystemSpec::new(series, rank)).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        let sc = SpinCover::new(&rs, &w).unwrap();
        (rs, w, sc)
    }

    #[test]
    fn cover_orders() {
        let (_, _, a1) = setup(Series::A, 1);
        assert_eq!(a1.order(), 4);
        assert_eq!(a1.table().element_order(a1.f_alpha(0)), 4);
        let (_, _, a2) = setup(Series::A, 2);
        assert_eq!(a2.order(), 12);
        assert_eq!(a2.table().num_classes(), 6);
        let (_, _, b2) = setup(Series::B, 2);
        assert_eq!(b2.order(), 16);
    }

    #[test]
    fn projection_is_two_to_one() {
        let (_, w, sc) = setup(Series::G2, 2);
        let mut count = vec![0; w.order()];
        for g in 0..sc.order() {
            count[sc.project(g)] += 1;
            assert_eq!(sc.project(sc.negate(g)), sc.project(g));
        }
        assert!(count.iter().all(|&k| k == 2));
    }

    #[test]
    fn a2_genuine_degrees() {
        let (_, _, sc) = setup(Series::A, 2);
        let t = sc.character_table(11).unwrap();
        let flags = sc.genuine_flags(&t);
        let mut deg: Vec<usize> = (0..t.num_characters()).filter(|&i| flags[i]).map(|i| t.degrees[i]).collect();
        deg.sort();
        assert_eq!(deg, vec![1, 1, 2]);
    }

    #[test]
    fn a2_c_values() {
        let (rs, w, sc) = setup(Series::A, 2);
        let c = ParameterFunction::equal(&rs);
        let om = OmegaWTilde::new(&rs, &w, &sc, &c);
        assert!(om.commutes_with_generators(&rs, &w, &sc));
        let t = sc.character_table(2).unwrap();
        let vals = c_sigma_tilde_values(&om, &sc, &t).unwrap();
        let mut genuine: Vec<f64> = vals.iter().filter(|v| v.genuine).map(|v| v.formula).collect();
        genuine.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((genuine[0] - 0.5).abs() < 1e-9 && (genuine[1] - 0.5).abs() < 1e-9 && (genuine[2] - 2.0).abs() < 1e-9);
        for v in &vals {
            assert!((v.formula - v.eigenvalue).abs() < 1e-8 && v.off_scalar < 1e-8);
        }
        let ow = omega_w(&rs, &w, &c);
        let wt = w.character_table(2).unwrap();
        assert!((c_sigma(&ow, &w, &wt, 0) - 2.0).abs() < 1e-12);
    }
}
