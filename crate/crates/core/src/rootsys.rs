//! Reduced root systems in standard ambient realizations, with the
//! W-invariant inner product on the coroot space, its dual on the root
//! space, and W-invariant parameter functions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G2,
    F4,
    I2,
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "G2" | "G" => Ok(Series::G2),
            "F4" | "F" => Ok(Series::F4),
            "I2" | "I" => Ok(Series::I2),
            other => Err(Error::Config(format!("unknown series {other:?}"))),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::G2 => "G2",
            Series::F4 => "F4",
            Series::I2 => "I2",
        };
        f.write_str(s)
    }
}

/// Which root system to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub series: Series,
    pub rank: usize,
    /// Dihedral order for `I2(m)`.
    pub m: Option<u32>,
}

impl RootSystemSpec {
    pub fn new(series: Series, rank: usize) -> Self {
        RootSystemSpec { series, rank, m: None }
    }

    pub fn dihedral(m: u32) -> Self {
        RootSystemSpec { series: Series::I2, rank: 2, m: Some(m) }
    }

    /// Validates the series/rank combination and resolves `I2(3|4|6)` to
    /// the rational realizations `A2`, `B2`, `G2`.
    pub fn resolve(self) -> Result<Self> {
        let bad = |msg: &str| Err(Error::Config(format!("unsupported root system {}: {msg}", self.label())));
        match self.series {
            Series::A if self.rank >= 1 => Ok(Self::new(Series::A, self.rank)),
            Series::B | Series::C if self.rank >= 2 => Ok(Self::new(self.series, self.rank)),
            Series::D if self.rank >= 3 => Ok(Self::new(Series::D, self.rank)),
            Series::G2 if self.rank == 2 || self.rank == 0 => Ok(Self::new(Series::G2, 2)),
            Series::F4 if self.rank == 4 || self.rank == 0 => Ok(Self::new(Series::F4, 4)),
            Series::I2 => match self.m {
                Some(3) => Ok(Self::new(Series::A, 2)),
                Some(4) => Ok(Self::new(Series::B, 2)),
                Some(6) => Ok(Self::new(Series::G2, 2)),
                Some(m) if m >= 3 => Ok(Self::dihedral(m)),
                _ => bad("I2(m) needs m >= 3"),
            },
            _ => bad("rank out of range"),
        }
    }

    pub fn label(&self) -> String {
        match self.series {
            Series::I2 => format!("I2({})", self.m.unwrap_or(0)),
            Series::G2 | Series::F4 => self.series.to_string(),
            s => format!("{s}{}", self.rank),
        }
    }

    /// Dihedral systems other than A2/B2/G2 have irrational coordinates.
    pub fn numeric_only(&self) -> bool {
        self.series == Series::I2 && !matches!(self.m, Some(3 | 4 | 6))
    }

    pub fn crystallographic(&self) -> bool {
        !self.numeric_only()
    }
}

/// A reduced root system in a fixed ambient coordinate system. Roots and
/// coroots share the ambient space; the pairing `(v, ω)` is the ambient dot
/// product.
#[derive(Clone, Debug)]
pub struct RootSystem<F> {
    spec: RootSystemSpec,
    ambient_dim: usize,
    roots: Vec<Vec<F>>,
    coroots: Vec<Vec<F>>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    negative_of: Vec<usize>,
    /// `(β, α_j∨)` for every root β and simple coroot α_j∨.
    root_pairing: Mat<F>,
    /// Coroots in the simple-coroot basis.
    coroot_coords: Vec<Vec<F>>,
    /// `⟨α_i∨, α_j∨⟩`.
    gram: Mat<F>,
    gram_inv: Mat<F>,
    /// `⟨ω, ω'⟩ = scale · (ω · ω')` on the coroot span.
    scale: F,
    /// W-orbit index of each root.
    orbit: Vec<usize>,
    orbit_names: Vec<String>,
    /// Permutation of root indices induced by each simple reflection.
    simple_perms: Vec<Vec<usize>>,
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn lex_positive<F: Field>(v: &[F]) -> bool {
    for x in v {
        if !x.negligible() {
            return x.to_c64().re > 0.0;
        }
    }
    false
}

fn key_of<F: Field>(v: &[F]) -> Vec<F::Key> {
    v.iter().map(Field::key).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Integer ambient roots (doubled where half-integers occur) plus a divisor.
fn integer_realization(spec: &RootSystemSpec) -> (usize, Vec<Vec<i64>>, i64) {
    let n = spec.rank;
    let mut roots = Vec::new();
    let pm_pairs = |dim: usize, out: &mut Vec<Vec<i64>>| {
        for i in 0..dim {
            for j in i + 1..dim {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = vec![0; dim];
                    v[i] = si;
                    v[j] = sj;
                    out.push(v);
                }
            }
        }
    };
    match spec.series {
        Series::A => {
            let d = n + 1;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        let mut v = vec![0; d];
                        v[i] = 1;
                        v[j] = -1;
                        roots.push(v);
                    }
                }
            }
            (d, roots, 1)
        }
        Series::B | Series::C | Series::D => {
            pm_pairs(n, &mut roots);
            let short = match spec.series {
                Series::B => 1,
                Series::C => 2,
                _ => 0,
            };
            if short > 0 {
                for i in 0..n {
                    let e = unit(n, i);
                    roots.push(e.iter().map(|x| x * short).collect());
                    roots.push(e.iter().map(|x| -x * short).collect());
                }
            }
            (n, roots, 1)
        }
        Series::G2 => {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut v = vec![0; 3];
                        v[i] = 1;
                        v[j] = -1;
                        roots.push(v);
                    }
                }
                let mut v = vec![-1; 3];
                v[i] = 2;
                roots.push(v.clone());
                roots.push(v.iter().map(|x| -x).collect());
            }
            (3, roots, 1)
        }
        Series::F4 => {
            // doubled coordinates: ±2e_i, ±2e_i±2e_j, (±1,±1,±1,±1)
            let mut pairs = Vec::new();
            pm_pairs(4, &mut pairs);
            roots.extend(pairs.into_iter().map(|v| v.iter().map(|x| 2 * x).collect::<Vec<_>>()));
            for i in 0..4 {
                let e = unit(4, i);
                roots.push(e.iter().map(|x| 2 * x).collect());
                roots.push(e.iter().map(|x| -2 * x).collect());
            }
            for mask in 0..16 {
                roots.push((0..4).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect());
            }
            (4, roots, 2)
        }
        Series::I2 => unreachable!("dihedral systems use the float realization"),
    }
}

impl<F: Field> RootSystem<F> {
    pub fn build(spec: RootSystemSpec) -> Result<Self> {
        let spec = spec.resolve()?;
        let (ambient_dim, roots) = if spec.numeric_only() {
            let m = spec.m.expect("dihedral order") as usize;
            let mut roots = Vec::with_capacity(2 * m);
            for k in 0..2 * m {
                let theta = std::f64::consts::PI * k as f64 / m as f64;
                let c = F::from_f64(theta.cos());
                let s = F::from_f64(theta.sin());
                match (c, s) {
                    (Some(c), Some(s)) => roots.push(vec![c, s]),
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "{} is numeric-only; use the floating-point layer",
                            spec.label()
                        )))
                    }
                }
            }
            (2, roots)
        } else {
            let (d, ints, div) = integer_realization(&spec);
            let roots = ints
                .into_iter()
                .map(|v| v.into_iter().map(|x| F::from_ratio(x, div)).collect())
                .collect();
            (d, roots)
        };
        Self::from_roots(spec, ambient_dim, roots)
    }

    fn from_roots(spec: RootSystemSpec, ambient_dim: usize, mut roots: Vec<Vec<F>>) -> Result<Self> {
        // deterministic order: positive roots first (lexicographically descending), then negatives
        let cmp = |a: &Vec<F>, b: &Vec<F>| {
            for (x, y) in a.iter().zip(b) {
                let d = (x.clone() - y.clone()).to_c64().re;
                if d.abs() > 1e-9 {
                    return d.partial_cmp(&0.0).unwrap().reverse();
                }
            }
            std::cmp::Ordering::Equal
        };
        let mut pos: Vec<Vec<F>> = roots.iter().filter(|r| lex_positive(r)).cloned().collect();
        pos.sort_by(cmp);
        let neg: Vec<Vec<F>> = pos.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect();
        if pos.len() * 2 != roots.len() {
            return Err(Error::Domain("root list is not symmetric".into()));
        }
        roots = pos.into_iter().chain(neg).collect();
        let np = roots.len() / 2;
        let positive: Vec<bool> = (0..roots.len()).map(|i| i < np).collect();
        let negative_of: Vec<usize> = (0..roots.len()).map(|i| if i < np { i + np } else { i - np }).collect();
        let coroots: Vec<Vec<F>> = roots
            .iter()
            .map(|r| {
                let two_over = F::from_i64(2) / dot(r, r);
                r.iter().map(|x| x.clone() * two_over.clone()).collect()
            })
            .collect();

        let index: std::collections::HashMap<Vec<F::Key>, usize> =
            roots.iter().enumerate().map(|(i, r)| (key_of(r), i)).collect();
        let reflect_root = |a: usize, v: &[F]| -> Vec<F> {
            let p = dot(v, &coroots[a]);
            v.iter().zip(&roots[a]).map(|(x, y)| x.clone() - p.clone() * y.clone()).collect()
        };
        // simple roots: positive roots whose reflection makes exactly one positive root negative
        let mut simple = Vec::new();
        for a in 0..np {
            let inversions = (0..np).filter(|&b| !lex_positive(&reflect_root(a, &roots[b]))).count();
            if inversions == 1 {
                simple.push(a);
            }
        }
        if simple.len() != spec.rank {
            return Err(Error::Domain(format!(
                "found {} simple roots for {} (expected {})",
                simple.len(),
                spec.label(),
                spec.rank
            )));
        }
        let n = spec.rank;
        let simple_perms: Vec<Vec<usize>> = simple
            .iter()
            .map(|&a| {
                (0..roots.len())
                    .map(|b| {
                        let img = reflect_root(a, &roots[b]);
                        *index.get(&key_of(&img)).expect("reflection permutes roots")
                    })
                    .collect()
            })
            .collect();
        let root_pairing = Mat::from_fn(roots.len(), n, |b, j| dot(&roots[b], &coroots[simple[j]]));
        let longest = coroots
            .iter()
            .map(|c| dot(c, c))
            .fold(F::zero(), |m, x| if x.to_c64().re > m.to_c64().re { x } else { m });
        let scale = F::from_i64(2) / longest;
        let gram = Mat::from_fn(n, n, |i, j| scale.clone() * dot(&coroots[simple[i]], &coroots[simple[j]]));
        let gram_inv = gram.inverse()?;
        // coroots in the simple-coroot basis: solve via the pairing with simple roots
        let cartan_t = Mat::from_fn(n, n, |i, j| dot(&roots[simple[i]], &coroots[simple[j]]));
        let coroot_coords = coroots
            .iter()
            .map(|c| {
                let rhs: Vec<F> = simple.iter().map(|&s| dot(&roots[s], c)).collect();
                cartan_t.solve(&rhs).expect("Cartan matrix is invertible")
            })
            .collect();

        // W-orbits of roots
        let mut orbit = vec![usize::MAX; roots.len()];
        let mut reps = Vec::new();
        for start in 0..roots.len() {
            if orbit[start] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(start);
            let mut stack = vec![start];
            orbit[start] = id;
            while let Some(b) = stack.pop() {
                for p in &simple_perms {
                    let c = p[b];
                    if orbit[c] == usize::MAX {
                        orbit[c] = id;
                        stack.push(c);
                    }
                }
            }
        }
        let orbit_names = match reps.len() {
            1 => vec!["all".to_string()],
            2 => {
                let l0 = dot(&roots[reps[0]], &roots[reps[0]]).to_c64().re;
                let l1 = dot(&roots[reps[1]], &roots[reps[1]]).to_c64().re;
                // equal lengths (even dihedral): the orbit of the first simple root is "long"
                let first_long = if (l0 - l1).abs() > 1e-9 { l0 > l1 } else { orbit[simple[0]] == 0 };
                if first_long {
                    vec!["long".into(), "short".into()]
                } else {
                    vec!["short".into(), "long".into()]
                }
            }
            k => (0..k).map(|i| format!("orbit{i}")).collect(),
        };

        Ok(RootSystem {
            spec,
            ambient_dim,
            roots,
            coroots,
            positive,
            simple,
            negative_of,
            root_pairing,
            coroot_coords,
            gram,
            gram_inv,
            scale,
            orbit,
            orbit_names,
            simple_perms,
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn label(&self) -> String {
        self.spec.label()
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Indices of the positive roots.
    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.num_positive()
    }

    pub fn root(&self, i: usize) -> &[F] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[F] {
        &self.coroots[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn negative_of(&self, i: usize) -> usize {
        self.negative_of[i]
    }

    /// Root indices of the simple roots.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// `(β, α_j∨)` for root index `b` and simple index `j`.
    pub fn pairing_with_simple_coroot(&self, b: usize, j: usize) -> F {
        self.root_pairing[(b, j)].clone()
    }

    /// `(β, ω)` with `ω` given in the simple-coroot basis.
    pub fn root_pairing(&self, b: usize, omega: &[F]) -> F {
        (0..self.rank()).fold(F::zero(), |acc, j| acc + self.root_pairing[(b, j)].clone() * omega[j].clone())
    }

    /// Cartan-type matrix `C[i][j] = (α_i, α_j∨)`.
    pub fn pairing_matrix(&self) -> Mat<F> {
        Mat::from_fn(self.rank(), self.rank(), |i, j| self.root_pairing[(self.simple[i], j)].clone())
    }

    /// Coroot of root `i` in the simple-coroot basis.
    pub fn coroot_coords(&self, i: usize) -> &[F] {
        &self.coroot_coords[i]
    }

    /// Gram matrix of `⟨·,·⟩` on V∨ in the simple-coroot basis.
    pub fn gram(&self) -> &Mat<F> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Mat<F> {
        &self.gram_inv
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    /// Ambient dot product, i.e. the pairing `(v, ω)`.
    pub fn pairing(&self, v: &[F], omega: &[F]) -> F {
        dot(v, omega)
    }

    /// Inner product on V∨ for vectors in the simple-coroot basis.
    pub fn coroot_inner(&self, a: &[F], b: &[F]) -> F {
        let gb = self.gram.mul_vec(b);
        dot(a, &gb)
    }

    /// `⟨v1, v2⟩ = Σ_i (v1, ω_i)(v2, ω^i)` with `ω_i` the simple coroots and
    /// `ω^i` the Gram-dual basis. Vectors are ambient.
    pub fn dual_inner_product(&self, v1: &[F], v2: &[F]) -> F {
        let a = self.pairings_with_simple_coroots(v1);
        let b = self.pairings_with_simple_coroots(v2);
        let gb = self.gram_inv.mul_vec(&b);
        dot(&a, &gb)
    }

    /// Same as [`dual_inner_product`](Self::dual_inner_product) for vectors
    /// already given through their pairings with the simple coroots.
    pub fn dual_inner_from_pairings(&self, a: &[F], b: &[F]) -> F {
        dot(a, &self.gram_inv.mul_vec(b))
    }

    /// `((v, α_1∨), …, (v, α_n∨))`.
    pub fn pairings_with_simple_coroots(&self, v: &[F]) -> Vec<F> {
        self.simple.iter().map(|&s| dot(v, &self.coroots[s])).collect()
    }

    /// Ambient vector from coordinates in the simple-root basis.
    pub fn from_simple_root_coords(&self, coords: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.ambient_dim];
        for (c, &s) in coords.iter().zip(&self.simple) {
            for (x, r) in v.iter_mut().zip(&self.roots[s]) {
                *x = x.clone() + c.clone() * r.clone();
            }
        }
        v
    }

    /// The vector of V₀ (ambient, in the root span) with prescribed
    /// pairings with the simple coroots.
    pub fn vector_with_pairings(&self, pairings: &[F]) -> Vec<F> {
        let c = self.pairing_matrix().transpose();
        let coords = c.solve(pairings).expect("pairing matrix is invertible");
        self.from_simple_root_coords(&coords)
    }

    pub fn root_index(&self, v: &[F]) -> Option<usize> {
        let k = key_of(v);
        self.roots.iter().position(|r| key_of(r) == k)
    }

    /// `s_α(v) = v − (v, α∨) α` for the root with index `a`.
    pub fn reflect_index(&self, a: usize, v: &[F]) -> Vec<F> {
        let p = dot(v, &self.coroots[a]);
        v.iter().zip(&self.roots[a]).map(|(x, y)| x.clone() - p.clone() * y.clone()).collect()
    }

    /// `s∨_α(ω) = ω − (α, ω) α∨` for ambient ω.
    pub fn coreflect_index(&self, a: usize, omega: &[F]) -> Vec<F> {
        let p = dot(&self.roots[a], omega);
        omega.iter().zip(&self.coroots[a]).map(|(x, y)| x.clone() - p.clone() * y.clone()).collect()
    }

    /// Reflection through an explicitly given root; errors when `alpha ∉ R`.
    pub fn reflect(&self, alpha: &[F], v: &[F]) -> Result<Vec<F>> {
        let a = self
            .root_index(alpha)
            .ok_or_else(|| Error::Domain("vector is not a root".into()))?;
        Ok(self.reflect_index(a, v))
    }

    pub fn coreflect(&self, alpha: &[F], omega: &[F]) -> Result<Vec<F>> {
        let a = self
            .root_index(alpha)
            .ok_or_else(|| Error::Domain("vector is not a root".into()))?;
        Ok(self.coreflect_index(a, omega))
    }

    /// Permutation of roots induced by the `i`-th simple reflection.
    pub fn simple_permutation(&self, i: usize) -> &[usize] {
        &self.simple_perms[i]
    }

    pub fn orbit_of(&self, root: usize) -> usize {
        self.orbit[root]
    }

    pub fn orbit_names(&self) -> &[String] {
        &self.orbit_names
    }

    /// Squared length `⟨α, α⟩` of a root.
    pub fn root_norm2(&self, i: usize) -> F {
        self.dual_inner_product(&self.roots[i], &self.roots[i])
    }

    /// Squared length `⟨α∨, α∨⟩` of a coroot.
    pub fn coroot_norm2(&self, i: usize) -> F {
        self.scale.clone() * dot(&self.coroots[i], &self.coroots[i])
    }

    /// Matrix of the simple reflection `s_i` acting on V∨ in the simple-coroot basis.
    pub fn simple_coreflection_matrix(&self, i: usize) -> Mat<F> {
        let n = self.rank();
        let c = self.pairing_matrix();
        Mat::from_fn(n, n, |k, j| {
            let delta = if k == j { F::one() } else { F::zero() };
            if k == i {
                delta - c[(i, j)].clone()
            } else {
                delta
            }
        })
    }

    /// Matrix of the reflection `s_β` acting on V∨ (simple-coroot basis).
    pub fn coreflection_matrix(&self, b: usize) -> Mat<F> {
        let n = self.rank();
        let cc = &self.coroot_coords[b];
        Mat::from_fn(n, n, |k, j| {
            let delta = if k == j { F::one() } else { F::zero() };
            delta - self.root_pairing[(b, j)].clone() * cc[k].clone()
        })
    }
}

/// A W-invariant parameter function, stored per W-orbit of roots.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterFunction<F> {
    per_root: Vec<F>,
    per_orbit: BTreeMap<String, F>,
}

impl<F: Field> ParameterFunction<F> {
    /// `c ≡ 1`.
    pub fn constant(rs: &RootSystem<F>, value: F) -> Self {
        let per_orbit = rs.orbit_names().iter().map(|n| (n.clone(), value.clone())).collect();
        ParameterFunction { per_root: vec![value; rs.num_roots()], per_orbit }
    }

    pub fn equal(rs: &RootSystem<F>) -> Self {
        Self::constant(rs, F::one())
    }

    /// Builds from a map `orbit name → value`. Missing names default to 1;
    /// a single-orbit system accepts any single key.
    pub fn from_map(rs: &RootSystem<F>, values: &BTreeMap<String, F>) -> Result<Self> {
        let names = rs.orbit_names();
        for k in values.keys() {
            if !names.contains(k) && names.len() > 1 {
                return Err(Error::Config(format!(
                    "parameter class {k:?} not among {:?} for {}",
                    names,
                    rs.label()
                )));
            }
        }
        let per_orbit: BTreeMap<String, F> = names
            .iter()
            .map(|n| {
                let v = values
                    .get(n)
                    .cloned()
                    .or_else(|| if names.len() == 1 { values.values().next().cloned() } else { None })
                    .unwrap_or_else(F::one);
                (n.clone(), v)
            })
            .collect();
        let per_root = (0..rs.num_roots())
            .map(|r| per_orbit[&names[rs.orbit_of(r)]].clone())
            .collect();
        Ok(ParameterFunction { per_root, per_orbit })
    }

    pub fn get(&self, root: usize) -> &F {
        &self.per_root[root]
    }

    pub fn per_orbit(&self) -> &BTreeMap<String, F> {
        &self.per_orbit
    }

    pub fn is_constant_one(&self) -> bool {
        self.per_root.iter().all(|c| c.approx_eq(&F::one()))
    }

    /// Checks W-invariance against the simple-reflection permutations.
    pub fn is_w_invariant(&self, rs: &RootSystem<F>) -> bool {
        (0..rs.rank()).all(|i| {
            let p = rs.simple_permutation(i);
            (0..rs.num_roots()).all(|r| self.per_root[r].approx_eq(&self.per_root[p[r]]))
        })
    }
}

/// JSON export with exact rationals as `"p/q"` strings.
pub fn export_root_data(rs: &RootSystem<Q>) -> Value {
    use crate::field::q_to_string;
    let vec_s = |v: &[Q]| v.iter().map(q_to_string).collect::<Vec<_>>();
    let mat_s = |m: &Mat<Q>| (0..m.rows()).map(|i| vec_s(m.row(i))).collect::<Vec<_>>();
    json!({
        "label": rs.label(),
        "rank": rs.rank(),
        "ambient_dim": rs.ambient_dim(),
        "positive_roots": (0..rs.num_positive()).map(|i| vec_s(rs.root(i))).collect::<Vec<_>>(),
        "simple_roots": rs.simple_roots().iter().map(|&i| vec_s(rs.root(i))).collect::<Vec<_>>(),
        "simple_coroots": rs.simple_roots().iter().map(|&i| vec_s(rs.coroot(i))).collect::<Vec<_>>(),
        "pairing_matrix": mat_s(&rs.pairing_matrix()),
        "gram": mat_s(rs.gram()),
        "positivity": "lexicographic: first nonzero ambient coordinate positive",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn build(series: Series, rank: usize) -> RootSystem<Q> {
        RootSystem::build(RootSystemSpec::new(series, rank)).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, r, total) in [
            (Series::A, 1, 2),
            (Series::A, 2, 6),
            (Series::A, 3, 12),
            (Series::B, 2, 8),
            (Series::C, 3, 18),
            (Series::D, 4, 24),
            (Series::G2, 2, 12),
            (Series::F4, 4, 48),
        ] {
            let rs = build(s, r);
            assert_eq!(rs.num_roots(), total, "{s}{r}");
            assert_eq!(rs.num_positive(), total / 2);
            assert_eq!(rs.simple_roots().len(), r);
        }
    }

    #[test]
    fn a2_gram_and_dual_product() {
        let rs = build(Series::A, 2);
        assert_eq!(rs.gram()[(0, 0)], q(2, 1));
        assert_eq!(rs.gram()[(0, 1)], q(-1, 1));
        let a1 = rs.root(rs.simple_root(0)).to_vec();
        assert_eq!(rs.dual_inner_product(&a1, &a1), q(2, 1));
    }

    #[test]
    fn g2_has_two_lengths() {
        let rs = build(Series::G2, 2);
        let mut lengths: Vec<Q> = (0..rs.num_roots()).map(|i| rs.root_norm2(i)).collect();
        lengths.sort();
        lengths.dedup();
        assert_eq!(lengths.len(), 2);
        assert_eq!(rs.orbit_names().len(), 2);
    }

    #[test]
    fn a2_reflection_examples() {
        let rs = build(Series::A, 2);
        let a1 = rs.root(rs.simple_root(0)).to_vec();
        let a2 = rs.root(rs.simple_root(1)).to_vec();
        let theta: Vec<Q> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
        assert_eq!(rs.reflect(&a1, &a2).unwrap(), theta);
        let neg_a2: Vec<Q> = a2.iter().map(|x| -x).collect();
        assert_eq!(rs.reflect(&theta, &a1).unwrap(), neg_a2);
        let neg_a1: Vec<Q> = a1.iter().map(|x| -x).collect();
        assert_eq!(rs.reflect(&a1, &a1).unwrap(), neg_a1);
        assert!(rs.reflect(&[q(1, 1), q(1, 1), q(0, 1)], &a1).is_err());
    }

    #[test]
    fn unsupported_specs() {
        assert!(RootSystem::<Q>::build(RootSystemSpec::new(Series::B, 1)).is_err());
        assert!(RootSystem::<Q>::build(RootSystemSpec::new(Series::D, 2)).is_err());
        assert!(matches!(
            RootSystem::<Q>::build(RootSystemSpec::dihedral(5)),
            Err(Error::Unsupported(_))
        ));
        let i5 = RootSystem::<f64>::build(RootSystemSpec::dihedral(5)).unwrap();
        assert_eq!(i5.num_roots(), 10);
        let i4 = RootSystem::<Q>::build(RootSystemSpec::dihedral(4)).unwrap();
        assert_eq!(i4.label(), "B2");
    }

    #[test]
    fn parameter_function_by_length() {
        let rs = build(Series::B, 2);
        let mut m = BTreeMap::new();
        m.insert("long".to_string(), q(1, 1));
        m.insert("short".to_string(), q(2, 1));
        let c = ParameterFunction::from_map(&rs, &m).unwrap();
        assert!(c.is_w_invariant(&rs));
        for r in 0..rs.num_roots() {
            let expect = if rs.root_norm2(r) == q(2, 1) { q(2, 1) } else { q(1, 1) };
            assert_eq!(c.get(r), &expect);
        }
        m.insert("medium".to_string(), q(3, 1));
        assert!(ParameterFunction::from_map(&rs, &m).is_err());
    }
}
