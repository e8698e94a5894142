//! Irreducible character tables by the Burnside–Dixon eigenvector method,
//! carried out in floating point, and isotypic projectors.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupTable};
use crate::linalg::{max_abs, svd_subspaces, CMat};

const SEPARATION: f64 = 1e-6;
const RETRIES: usize = 12;
/// Orthogonality tolerance for the computed table.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

/// Characters as rows, conjugacy classes as columns (same class order as the group table).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub values: Vec<Vec<Complex64>>,
    pub degrees: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub order: usize,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl CharacterTable {
    pub fn compute<E: GroupElement>(g: &GroupTable<E>, seed: u64) -> Result<Self> {
        let k = g.num_classes();
        let order = g.order();
        let class_sizes: Vec<usize> = (0..k).map(|c| g.class_size(c)).collect();
        // a[r][s][t] = #{x ∈ C_r : x⁻¹ z_t ∈ C_s}
        let mut a = vec![vec![vec![0u32; k]; k]; k];
        for t in 0..k {
            let z = g.class_rep(t);
            for (r, class) in g.classes().iter().enumerate() {
                for &x in class {
                    let y = g.mul(g.inverse(x), z);
                    a[r][g.class_of(y)][t] += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RETRIES {
            let coeffs: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
            let m = CMat::from_fn(k, k, |s, t| {
                c((0..k).map(|r| coeffs[r] * a[r][s][t] as f64).sum())
            });
            if let Some(table) = Self::from_combination(&m, &class_sizes, order) {
                let mut table = table;
                table.sort(g);
                if table.orthogonality_residual() < ORTHOGONALITY_TOL {
                    return Ok(table);
                }
            }
        }
        Err(Error::Numerical("character table: eigenvalues never separated".into()))
    }

    fn from_combination(m: &CMat, class_sizes: &[usize], order: usize) -> Option<Self> {
        let k = m.nrows();
        let eig: Vec<Complex64> = m.clone().schur().eigenvalues()?.iter().copied().collect();
        let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..k {
            for j in i + 1..k {
                if (eig[i] - eig[j]).norm() < SEPARATION * scale {
                    return None;
                }
            }
        }
        let mut values = Vec::with_capacity(k);
        let mut degrees = Vec::with_capacity(k);
        for lambda in eig {
            let shifted = m - CMat::identity(k, k) * lambda;
            let sub = svd_subspaces(&shifted, 1e-9);
            // smallest singular vector
            let v = if sub.kernel.ncols() >= 1 {
                sub.kernel.column(0).into_owned()
            } else {
                let svd = shifted.svd(false, true);
                let v_t = svd.v_t?;
                let (imin, _) = svd
                    .singular_values
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())?;
                v_t.row(imin).transpose().map(|z| z.conj())
            };
            let v0 = v[0];
            if v0.norm() < 1e-12 {
                return None;
            }
            let omega: Vec<Complex64> = v.iter().map(|z| z / v0).collect();
            let denom: f64 = omega.iter().zip(class_sizes).map(|(w, &s)| w.norm_sqr() / s as f64).sum();
            let d = (order as f64 / denom).sqrt();
            let dr = d.round();
            if (d - dr).abs() > 1e-6 || dr < 1.0 {
                return None;
            }
            degrees.push(dr as usize);
            values.push(omega.iter().zip(class_sizes).map(|(w, &s)| w * dr / s as f64).collect());
        }
        Some(CharacterTable { values, degrees, class_sizes: class_sizes.to_vec(), order })
    }

    /// Trivial character first, then by degree and a deterministic value order.
    fn sort<E: GroupElement>(&mut self, g: &GroupTable<E>) {
        let k = self.values.len();
        let id_class = g.class_of(g.identity());
        let mut idx: Vec<usize> = (0..k).collect();
        let trivial = |v: &Vec<Complex64>| v.iter().all(|z| (z - c(1.0)).norm() < 1e-6);
        let key = |i: usize| -> (bool, usize, Vec<i64>) {
            let v = &self.values[i];
            (
                !trivial(v),
                self.degrees[i],
                v.iter()
                    .flat_map(|z| [-(z.re * 1e6).round() as i64, -(z.im * 1e6).round() as i64])
                    .collect(),
            )
        };
        idx.sort_by_key(|&i| key(i));
        self.values = idx.iter().map(|&i| self.values[i].clone()).collect();
        self.degrees = idx.iter().map(|&i| self.degrees[i]).collect();
        debug_assert!(self.values.iter().all(|v| (v[id_class].re - v[id_class].re.round()).abs() < 1e-6));
    }

    pub fn num_characters(&self) -> usize {
        self.values.len()
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_c |C| χ(c) conj(ψ(c))`.
    pub fn inner(&self, chi: &[Complex64], psi: &[Complex64]) -> Complex64 {
        chi.iter()
            .zip(psi)
            .zip(&self.class_sizes)
            .map(|((a, b), &s)| a * b.conj() * s as f64)
            .sum::<Complex64>()
            / self.order as f64
    }

    /// Largest deviation from row and column orthogonality.
    pub fn orthogonality_residual(&self) -> f64 {
        let k = self.values.len();
        let mut worst: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.inner(&self.values[i], &self.values[j]) - c(expect)).norm());
            }
        }
        for a in 0..k {
            for b in 0..k {
                let s: Complex64 = (0..k).map(|i| self.values[i][a] * self.values[i][b].conj()).sum();
                let expect = if a == b { self.order as f64 / self.class_sizes[a] as f64 } else { 0.0 };
                worst = worst.max((s - c(expect)).norm() / (self.order as f64).sqrt());
            }
        }
        worst
    }

    pub fn sum_of_squared_degrees(&self) -> usize {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Index of the character equal to `values` (class function), if any.
    pub fn find(&self, values: &[Complex64]) -> Option<usize> {
        self.values
            .iter()
            .position(|row| row.iter().zip(values).all(|(a, b)| (a - b).norm() < 1e-6))
    }

    /// Decomposes a class function into irreducible multiplicities, rounding
    /// with a guard band of `1e-4`.
    pub fn decompose(&self, chi: &[Complex64]) -> Result<Vec<usize>> {
        self.values
            .iter()
            .map(|row| {
                let m = self.inner(chi, row);
                let r = m.re.round();
                if (m - c(r)).norm() > 1e-4 || r < 0.0 {
                    Err(Error::Numerical(format!("non-integral multiplicity {m}")))
                } else {
                    Ok(r as usize)
                }
            })
            .collect()
    }
}

/// Checks `ρ(x)ρ(g) = ρ(xg)` for the generators and a sample of elements.
pub fn check_representation<E: GroupElement>(g: &GroupTable<E>, action: &[CMat], tol: f64) -> Result<()> {
    if action.len() != g.order() {
        return Err(Error::Shape(format!("{} matrices for a group of order {}", action.len(), g.order())));
    }
    let step = (g.order() / 50).max(1);
    for x in (0..g.order()).step_by(step) {
        for (k, &gen) in g.generators().iter().enumerate() {
            let y = g.right_mul_gen(x, k);
            let r = max_abs(&(&action[x] * &action[gen] - &action[y]));
            if r > tol {
                return Err(Error::Validation(format!("action is not a representation (residual {r:.2e})")));
            }
        }
    }
    Ok(())
}

/// `P = (dim σ / |G|) Σ_g conj(χ_σ(g)) ρ(g)`.
pub fn isotypic_projector<E: GroupElement>(
    g: &GroupTable<E>,
    table: &CharacterTable,
    sigma: usize,
    action: &[CMat],
) -> Result<CMat> {
    check_representation(g, action, 1e-8)?;
    let n = action[0].nrows();
    let mut p = CMat::zeros(n, n);
    for (x, m) in action.iter().enumerate() {
        let w = table.values[sigma][g.class_of(x)].conj();
        if w.norm() > 0.0 {
            p += m * w;
        }
    }
    Ok(p * c(table.degrees[sigma] as f64 / g.order() as f64))
}

/// Character of a representation on the class representatives.
pub fn character_of<E: GroupElement>(g: &GroupTable<E>, action: &[CMat]) -> Vec<Complex64> {
    (0..g.num_classes()).map(|cl| action[g.class_rep(cl)].trace()).collect()
}

/// Left regular representation `e_x ↦ e_{gx}`.
pub fn regular_representation<E: GroupElement>(g: &GroupTable<E>) -> Vec<CMat> {
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut m = DMatrix::zeros(n, n);
            for x in 0..n {
                m[(g.mul(a, x), x)] = c(1.0);
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Perm, DEFAULT_GROUP_CAP};

    fn dihedral(n: u32) -> GroupTable<Perm> {
        let id = Perm((0..n).collect());
        let rot = Perm((0..n).map(|i| (i + 1) % n).collect());
        let refl = Perm((0..n).map(|i| (n - i) % n).collect());
        GroupTable::generate(id, &[rot, refl], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn dihedral_tables() {
        let d8 = dihedral(4);
        let t = CharacterTable::compute(&d8, 1).unwrap();
        let mut deg = t.degrees.clone();
        deg.sort();
        assert_eq!(deg, vec![1, 1, 1, 1, 2]);
        assert!(t.orthogonality_residual() < 1e-8);
        let d10 = dihedral(5);
        let t = CharacterTable::compute(&d10, 7).unwrap();
        assert_eq!(t.sum_of_squared_degrees(), 10);
        assert_eq!(t.num_characters(), 4);
    }

    #[test]
    fn regular_projectors_resolve_identity() {
        let s3 = dihedral(3);
        let t = CharacterTable::compute(&s3, 3).unwrap();
        let reg = regular_representation(&s3);
        let mut total = CMat::zeros(6, 6);
        for s in 0..t.num_characters() {
            let p = isotypic_projector(&s3, &t, s, &reg).unwrap();
            assert!(max_abs(&(&p * &p - &p)) < 1e-9);
            let d = t.degrees[s] as f64;
            assert!((p.trace().re - d * d).abs() < 1e-6);
            total += p;
        }
        assert!(max_abs(&(total - CMat::identity(6, 6))) < 1e-9);
        let mut bad = reg.clone();
        bad[1] = CMat::identity(6, 6) * c(2.0);
        assert!(isotypic_projector(&s3, &t, 0, &bad).is_err());
    }
}
