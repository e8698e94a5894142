//! The Dirac operator `D = Σ π(ω̃_i) ⊗ γ(ω^i)` on `X ⊗ S`, the identity
//! `D² = −π(Ω) ⊗ 1 + (π⊗γ)(ρ(Ω_W̃))`, Dirac cohomology and the bounds it
//! implies.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::SpinModule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hmod::{nu_norm2, same_orbit, ModuleRep, Weight};
use crate::linalg::{max_abs, orthonormal_columns, svd_subspaces, CMat};
use crate::orbits::{length_table, nu_regular, nu_subregular, OrbitDatum};
use crate::rootsys::Series;
use crate::setting::Setting;

/// Relative singular-value threshold for kernels and images.
pub const RANK_TOL: f64 = 1e-8;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub struct DiracContext<'a, F> {
    pub setting: &'a Setting<F>,
    pub module: &'a ModuleRep,
    pub spin: SpinModule,
    /// `π(t_w)` for every `w ∈ W`.
    pub t: Vec<CMat>,
    pub d: CMat,
    /// `−π(Ω) ⊗ 1 + (π⊗γ)(ρ(Ω_W̃))`.
    pub d_square_expected: CMat,
}

/// `Σ π(ω̃_i) ⊗ γ(ω^i)` for a given dual pair.
fn dirac_matrix<F: Field>(
    setting: &Setting<F>,
    module: &ModuleRep,
    t: &[CMat],
    spin: &SpinModule,
    pair: &(Vec<Vec<F>>, Vec<Vec<F>>),
) -> CMat {
    let alg = setting.cover.algebra();
    let frame = setting.cover.frame();
    let dim = module.dim * spin.dim();
    let mut d = CMat::zeros(dim, dim);
    for (a, b) in pair.0.iter().zip(&pair.1) {
        let pw = module.act(t, &setting.hecke.omega_tilde(a));
        let g = spin.act(alg, &alg.vector(&frame.to_frame(b)));
        d += pw.kronecker(&g);
    }
    d
}

impl<'a, F: Field> DiracContext<'a, F> {
    pub fn new(setting: &'a Setting<F>, module: &'a ModuleRep, spin: SpinModule) -> Result<Self> {
        if module.rank() != setting.rank() || spin.n != setting.rank() {
            return Err(Error::Shape(format!(
                "module rank {} / spin rank {} for a rank {} system",
                module.rank(),
                spin.n,
                setting.rank()
            )));
        }
        let t = module.group_matrices(&setting.weyl);
        let d = dirac_matrix(setting, module, &t, &spin, &setting.hecke.standard_dual_pair());
        let omega = module.act(&t, &setting.hecke.casimir()?);
        let sd = spin.dim();
        let rho = setting.omega_tilde.on_module(&setting.cover, &t, &spin);
        let d_square_expected = rho - omega.kronecker(&CMat::identity(sd, sd));
        Ok(DiracContext { setting, module, spin, t, d, d_square_expected })
    }

    pub fn dim(&self) -> usize {
        self.d.nrows()
    }

    /// `ρ̂(g) = π(t_{p(g)}) ⊗ γ(g)` for `g ∈ W̃`.
    pub fn rho_hat(&self, g: usize) -> CMat {
        self.t[self.setting.cover.project(g)].kronecker(&self.setting.cover.gamma(&self.spin, g))
    }

    /// `‖D − D'‖` for `D'` built from an orthogonal dual pair.
    pub fn basis_independence_residual(&self) -> Result<f64> {
        let pair = self.setting.hecke.orthogonal_dual_pair()?;
        let d2 = dirac_matrix(self.setting, self.module, &self.t, &self.spin, &pair);
        Ok(max_abs(&(&self.d - d2)))
    }

    /// `max ‖ρ̂(f_α) D + D ρ̂(f_α)‖` over the simple roots.
    pub fn equivariance_residual(&self) -> f64 {
        let cover = &self.setting.cover;
        self.setting
            .rs
            .simple_roots()
            .iter()
            .map(|&r| {
                let g = cover.f_alpha(r);
                let sign = c(cover.sign(&self.setting.weyl, g) as f64);
                let rh = self.rho_hat(g);
                max_abs(&(&rh * &self.d - &self.d * &rh * sign))
            })
            .fold(0.0, f64::max)
    }

    /// `‖(H⊗H_S) D − D†(H⊗H_S)‖`, if the module carries a form.
    pub fn self_adjoint_residual(&self) -> Option<f64> {
        let h = self.module.form.as_ref()?.kronecker(&self.spin.form);
        Some(max_abs(&(&h * &self.d - self.d.adjoint() * &h)))
    }

    /// `‖D² − (−π(Ω)⊗1 + (π⊗γ)ρ(Ω_W̃))‖_max`.
    pub fn dirac_square_residual(&self) -> f64 {
        max_abs(&(&self.d * &self.d - &self.d_square_expected))
    }

    /// All of W̃ acting on `X ⊗ S`.
    pub fn cover_action(&self) -> Vec<CMat> {
        (0..self.setting.cover.order()).map(|g| self.rho_hat(g)).collect()
    }

    pub fn cohomology(&self) -> Cohomology {
        dirac_cohomology(&self.d, self.setting.seed)
    }

    /// Character of W̃ on the quotient `span(section ∪ inter) / span(inter)`,
    /// where both spans are W̃-stable.
    pub fn quotient_character(&self, section: &CMat, inter: &CMat) -> Vec<Complex64> {
        let g = self.setting.cover.table();
        let k = section.ncols();
        let mut basis = CMat::zeros(self.dim(), k + inter.ncols());
        basis.view_mut((0, 0), (self.dim(), k)).copy_from(section);
        basis.view_mut((0, k), (self.dim(), inter.ncols())).copy_from(inter);
        let pinv = basis.clone().pseudo_inverse(1e-10).expect("pseudo-inverse");
        (0..g.num_classes())
            .map(|cl| {
                if k == 0 {
                    return c(0.0);
                }
                let image = self.rho_hat(g.class_rep(cl)) * section;
                let coords = &pinv * image;
                (0..k).map(|i| coords[(i, i)]).sum()
            })
            .collect()
    }

    /// Multiplicities of W̃-irreducibles in the quotient described above.
    pub fn isotypic_report(&self, section: &CMat, inter: &CMat) -> Result<Vec<IsotypicEntry>> {
        if section.ncols() == 0 {
            return Ok(Vec::new());
        }
        let chi = self.quotient_character(section, inter);
        let mults = self.setting.cover_table.decompose(&chi)?;
        let total: usize = mults.iter().zip(&self.setting.cover_table.degrees).map(|(m, d)| m * d).sum();
        if total != section.ncols() {
            return Err(Error::Numerical(format!("isotypic dimensions {total} != {}", section.ncols())));
        }
        Ok(self.entries(&mults))
    }

    fn entries(&self, mults: &[usize]) -> Vec<IsotypicEntry> {
        let s = self.setting;
        mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| IsotypicEntry {
                index: i,
                name: s.cover_names[i].clone(),
                degree: s.cover_table.degrees[i],
                multiplicity: m,
                genuine: s.genuine[i],
                c_value: s.c_value(i),
            })
            .collect()
    }

    /// Multiplicities in all of `X ⊗ S`.
    pub fn full_decomposition(&self) -> Result<Vec<IsotypicEntry>> {
        let n = self.dim();
        self.isotypic_report(&CMat::identity(n, n), &CMat::zeros(n, 0))
    }

    /// `max ‖D²|_U − (c(σ̃) − ⟨ν,ν⟩)‖` over σ̃-isotypic subspaces `U`.
    pub fn isotypic_scalar_residual(&self, nu_norm2: f64) -> Result<f64> {
        let action = self.cover_action();
        let d2 = &self.d * &self.d;
        let mut worst: f64 = 0.0;
        for e in self.full_decomposition()? {
            let p = crate::chartab::isotypic_projector(self.setting.cover.table(), &self.setting.cover_table, e.index, &action)?;
            let r = max_abs(&(&d2 * &p - &p * c(e.c_value - nu_norm2)));
            worst = worst.max(r);
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicEntry {
    pub index: usize,
    pub name: String,
    pub degree: usize,
    pub multiplicity: usize,
    pub genuine: bool,
    pub c_value: f64,
}

/// `ker D`, `im D`, `ker ∩ im` and a section of `H^D = ker/(ker ∩ im)`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub kernel: CMat,
    pub image: CMat,
    pub intersection: CMat,
    /// Orthogonal complement of the intersection inside the kernel.
    pub section: CMat,
    /// A second, randomly sheared complement.
    pub random_section: CMat,
}

impl Cohomology {
    pub fn dim_kernel(&self) -> usize {
        self.kernel.ncols()
    }

    pub fn dim_image(&self) -> usize {
        self.image.ncols()
    }

    pub fn dim_intersection(&self) -> usize {
        self.intersection.ncols()
    }

    pub fn dim(&self) -> usize {
        self.section.ncols()
    }
}

pub fn dirac_cohomology(d: &CMat, seed: u64) -> Cohomology {
    let sv = svd_subspaces(d, RANK_TOL);
    let kernel = sv.kernel;
    let image = sv.image;
    let n = d.nrows();
    // kernel vectors lying in the image: null space of (1 − P_im) K
    let p_im = &image * image.adjoint();
    let resid = (CMat::identity(n, n) - p_im) * &kernel;
    let k = kernel.ncols();
    let (inter_coords, section_coords) = if k == 0 {
        (CMat::zeros(0, 0), CMat::zeros(0, 0))
    } else {
        let s = svd_subspaces(&resid, RANK_TOL);
        // singular values are relative to the kernel-restricted map; an all-zero
        // map means the whole kernel lies in the image
        let null = if max_abs(&resid) < 1e-10 { CMat::identity(k, k) } else { s.kernel };
        let comp = complement(&null, k);
        (null, comp)
    };
    let intersection = if k == 0 { CMat::zeros(n, 0) } else { &kernel * &inter_coords };
    let section = if k == 0 { CMat::zeros(n, 0) } else { &kernel * &section_coords };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let shear = CMat::from_fn(intersection.ncols(), section.ncols(), |_, _| c(rng.random_range(-1.0..1.0)));
    let random_section = &section + &intersection * shear;
    Cohomology { kernel, image, intersection, section, random_section }
}

/// Orthonormal complement of the column span of `a` in `ℂ^k`.
fn complement(a: &CMat, k: usize) -> CMat {
    if a.ncols() == 0 {
        return CMat::identity(k, k);
    }
    let p = a * a.adjoint();
    orthonormal_columns(&(CMat::identity(k, k) - p), 1e-8)
}

/// One row of the Dirac-inequality table.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityRow {
    pub name: String,
    pub degree: usize,
    pub multiplicity: usize,
    pub c_value: f64,
    pub nu_norm2: f64,
    pub violated: bool,
    pub saturated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub nu_norm2: f64,
    pub rows: Vec<InequalityRow>,
    pub any_violation: bool,
    pub regular_bound: Option<f64>,
    pub exceeds_regular_bound: Option<bool>,
    pub subregular_bound: Option<f64>,
    /// Only for modules other than the trivial and Steinberg ones, in type A.
    pub exceeds_subregular_bound: Option<bool>,
}

pub const BOUND_TOL: f64 = 1e-9;

/// `⟨ν,ν⟩ ≤ c(σ̃)` for every σ̃ in `X ⊗ S`. The module must carry a form
/// or be flagged unitary by the caller.
pub fn dirac_inequality_report<F: Field>(ctx: &DiracContext<F>, assume_unitary: bool) -> Result<InequalityReport> {
    if ctx.module.form.is_none() && !assume_unitary {
        return Err(Error::Precondition("module has no form and is not flagged unitary".into()));
    }
    let nu = ctx.module.nu.as_ref().ok_or_else(|| Error::Precondition("module has no declared ν".into()))?;
    let rs = &ctx.setting.rs;
    let n2 = nu_norm2(rs, nu);
    let rows: Vec<InequalityRow> = ctx
        .full_decomposition()?
        .into_iter()
        .map(|e| InequalityRow {
            name: e.name,
            degree: e.degree,
            multiplicity: e.multiplicity,
            c_value: e.c_value,
            nu_norm2: n2,
            violated: n2 > e.c_value + BOUND_TOL,
            saturated: (n2 - e.c_value).abs() <= 1e-8,
        })
        .collect();
    let regular_bound = nu_regular(rs.as_ref()).ok().map(|d| d.norm2);
    let subregular_bound = nu_subregular(rs.as_ref()).ok().map(|d| d.norm2);
    let one_dim = matches!(ctx.module.label.as_str(), "trivial" | "steinberg");
    Ok(InequalityReport {
        nu_norm2: n2,
        any_violation: rows.iter().any(|r| r.violated),
        rows,
        regular_bound,
        exceeds_regular_bound: regular_bound.map(|b| n2 > b + BOUND_TOL),
        subregular_bound,
        exceeds_subregular_bound: if one_dim { None } else { subregular_bound.map(|b| n2 > b + BOUND_TOL) },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VoganEntry {
    pub name: String,
    pub multiplicity: usize,
    pub c_value: f64,
    pub nu_norm2: f64,
    pub length_residual: f64,
    pub length_ok: bool,
    /// Orbits whose `⟨ν_e,ν_e⟩` equals `c(σ̃)`.
    pub matched_orbits: Vec<String>,
    /// `ν ∈ W·ν_e` for some matched orbit; `None` when no orbit data applies.
    pub orbit_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VoganReport {
    /// `H^D`, or `kernel` when `H^D = 0` but `ker D ≠ 0`.
    pub subspace: String,
    pub vacuous: bool,
    /// Orbit matching was not available for some σ̃.
    pub partial: bool,
    pub entries: Vec<VoganEntry>,
    pub pass: bool,
}

pub const VOGAN_TOL: f64 = 1e-8;

fn orbit_candidates<F: Field>(setting: &Setting<F>) -> Vec<OrbitDatum> {
    let rs = setting.rs.as_ref();
    if rs.spec().series == Series::A {
        length_table(rs, true).unwrap_or_default()
    } else {
        nu_regular(rs).map(|d| vec![d]).unwrap_or_default()
    }
}

/// For each σ̃ in `H^D(X)`: `⟨ν,ν⟩ = c(σ̃)` and, when orbit data is
/// available, `ν ∈ W·ν_e` for an orbit with `⟨ν_e,ν_e⟩ = c(σ̃)`. If
/// `H^D = 0` but `ker D ≠ 0`, the same checks run on `ker D`.
pub fn vogan_check<F: Field>(ctx: &DiracContext<F>) -> Result<VoganReport> {
    let nu = ctx.module.nu.as_ref().ok_or_else(|| Error::Precondition("module has no declared ν".into()))?;
    let coh = ctx.cohomology();
    let (label, section, inter) = if coh.dim() > 0 {
        ("H^D", coh.section.clone(), coh.intersection.clone())
    } else if coh.dim_kernel() > 0 {
        ("kernel", coh.kernel.clone(), CMat::zeros(ctx.dim(), 0))
    } else {
        return Ok(VoganReport { subspace: "H^D".into(), vacuous: true, partial: false, entries: Vec::new(), pass: true });
    };
    let n2 = nu_norm2(&ctx.setting.rs, nu);
    let orbits = orbit_candidates(ctx.setting);
    let mut partial = false;
    let entries: Vec<VoganEntry> = ctx
        .isotypic_report(&section, &inter)?
        .into_iter()
        .map(|e| {
            let r = (n2 - e.c_value).abs();
            let matched: Vec<&OrbitDatum> = orbits.iter().filter(|o| (o.norm2 - e.c_value).abs() < VOGAN_TOL).collect();
            let orbit_ok = if matched.is_empty() {
                partial = true;
                None
            } else {
                Some(matched.iter().any(|o| same_orbit(&ctx.setting.weyl, nu, &o.nu, VOGAN_TOL)))
            };
            VoganEntry {
                name: e.name,
                multiplicity: e.multiplicity,
                c_value: e.c_value,
                nu_norm2: n2,
                length_residual: r,
                length_ok: r < VOGAN_TOL,
                matched_orbits: matched.iter().map(|o| o.label.clone()).collect(),
                orbit_ok,
            }
        })
        .collect();
    let pass = entries.iter().all(|e| e.length_ok && e.orbit_ok != Some(false));
    Ok(VoganReport { subspace: label.into(), vacuous: false, partial, entries, pass })
}

/// One genuine σ̃ against a candidate ν.
#[derive(Clone, Debug, Serialize)]
pub struct ScreenBound {
    pub name: String,
    pub c_value: f64,
    /// `⟨ν,ν⟩ > c(σ̃)`.
    pub violated: bool,
    /// `⟨ν,ν⟩ = c(σ̃)`; then σ̃ would lie in ker D, which forces
    /// `ν ∈ W·ν_e` for an orbit with `⟨ν_e,ν_e⟩ = c(σ̃)`.
    pub equality: bool,
    pub orbit_consistent: Option<bool>,
    pub admissible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScreenRow {
    pub nu: Vec<f64>,
    pub nu_norm2: f64,
    pub bounds: Vec<ScreenBound>,
    /// Some genuine σ̃ survives: a unitary irreducible module with this
    /// central character is not excluded.
    pub passes: bool,
    /// Exceeds `⟨ν_r,ν_r⟩`.
    pub exceeds_regular: Option<bool>,
    /// Exceeds `⟨ν_sr,ν_sr⟩`, so only the trivial or Steinberg module could be unitary.
    pub exceeds_subregular: Option<bool>,
    pub in_regular_orbit: Option<bool>,
}

/// Screens central characters with the Dirac inequality
/// `⟨ν,ν⟩ ≤ c(σ̃)` over every genuine σ̃, sharpened at equality by the
/// orbit condition on ker D.
pub fn bounds_screen<F: Field>(setting: &Setting<F>, nus: &[Weight]) -> Result<Vec<ScreenRow>> {
    let rs = setting.rs.as_ref();
    let orbits = orbit_candidates(setting);
    let regular = nu_regular(rs).ok();
    let subregular = nu_subregular(rs).ok().filter(|_| rs.rank() >= 2);
    let mut out = Vec::new();
    for nu in nus {
        if nu.len() != rs.rank() {
            return Err(Error::Shape(format!("ν has {} pairings for rank {}", nu.len(), rs.rank())));
        }
        let n2 = nu_norm2(rs, nu);
        let bounds: Vec<ScreenBound> = (0..setting.cover_names.len())
            .filter(|&i| setting.genuine[i])
            .map(|i| {
                let cv = setting.c_value(i);
                let violated = n2 > cv + BOUND_TOL;
                let equality = (n2 - cv).abs() <= BOUND_TOL;
                let orbit_consistent = equality.then(|| {
                    orbits
                        .iter()
                        .filter(|o| (o.norm2 - cv).abs() < VOGAN_TOL)
                        .any(|o| same_orbit(&setting.weyl, nu, &o.nu, VOGAN_TOL))
                });
                ScreenBound {
                    name: setting.cover_names[i].clone(),
                    c_value: cv,
                    violated,
                    equality,
                    orbit_consistent,
                    admissible: !violated && orbit_consistent != Some(false),
                }
            })
            .collect();
        out.push(ScreenRow {
            nu: nu.to_f64(),
            nu_norm2: n2,
            passes: bounds.iter().any(|b| b.admissible),
            bounds,
            exceeds_regular: regular.as_ref().map(|r| n2 > r.norm2 + BOUND_TOL),
            exceeds_subregular: subregular.as_ref().map(|r| n2 > r.norm2 + BOUND_TOL),
            in_regular_orbit: regular.as_ref().map(|r| same_orbit(&setting.weyl, nu, &r.nu, VOGAN_TOL)),
        });
    }
    Ok(out)
}

/// The square grid of pairings `{-r, -r+h, …, r}^n`, exact.
pub fn pairing_grid(rank: usize, radius: crate::field::Q, step: crate::field::Q) -> Vec<Weight> {
    use num::Zero;
    let mut axis = Vec::new();
    let mut x = -radius.clone();
    while x <= radius {
        axis.push(x.clone());
        x += step.clone();
        if step.is_zero() {
            break;
        }
    }
    let mut pts: Vec<Vec<crate::field::Q>> = vec![Vec::new()];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    pts.into_iter().map(Weight::Exact).collect()
}


/// Convenience: ν of a module as a [`Weight`] (declared, required).
pub fn declared_nu(module: &ModuleRep) -> Result<&Weight> {
    module.nu.as_ref().ok_or_else(|| Error::Precondition("module has no declared ν".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};
    use crate::hmod::{one_dimensional, principal_series, OneDimKind};
    use crate::rootsys::RootSystemSpec;

    fn a(n: usize) -> Setting<Q> {
        Setting::equal(RootSystemSpec::new(Series::A, n), 7).unwrap()
    }

    #[test]
    fn trivial_a2_dirac_vanishes() {
        let s = a(2);
        let m = one_dimensional(&s.hecke, OneDimKind::Trivial);
        let ctx = DiracContext::new(&s, &m, SpinModule::new(2, 1).unwrap()).unwrap();
        assert!(max_abs(&ctx.d) < 1e-12);
        assert!(ctx.dirac_square_residual() < 1e-12);
        let coh = ctx.cohomology();
        assert_eq!(coh.dim(), 2);
        let rep = ctx.isotypic_report(&coh.section, &coh.intersection).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].name, "S");
        assert!((rep[0].c_value - 2.0).abs() < 1e-10);
        let v = vogan_check(&ctx).unwrap();
        assert!(v.pass && !v.vacuous && !v.partial);
    }

    #[test]
    fn a1_principal_series_square() {
        let s = a(1);
        for lam in [q(1, 3), q(2, 1), q(-5, 7)] {
            let nu = Weight::Exact(vec![lam.clone()]);
            let m = principal_series(&s.hecke, &nu).unwrap();
            for spin in SpinModule::all(1).unwrap() {
                let ctx = DiracContext::new(&s, &m, spin).unwrap();
                let l: f64 = num::ToPrimitive::to_f64(&lam).unwrap();
                let expect = 0.5 - l * l / 2.0;
                let d2 = &ctx.d * &ctx.d;
                assert!(max_abs(&(d2 - CMat::identity(2, 2) * c(expect))) < 1e-12);
                assert!(ctx.dirac_square_residual() < 1e-12);
                assert!(ctx.equivariance_residual() < 1e-12);
            }
        }
    }
}
