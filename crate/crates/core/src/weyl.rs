//! The Weyl group as a matrix group on V∨ (simple-coroot coordinates),
//! identified by its permutation action on the roots.

use num::complex::Complex64;

use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::field::Field;
use crate::group::{GroupElement, GroupTable, DEFAULT_GROUP_CAP};
use crate::linalg::{CMat, Mat};
use crate::rootsys::RootSystem;

#[derive(Clone, Debug)]
pub struct WeylElement<F> {
    /// Action on V∨ in the simple-coroot basis.
    pub matrix: Mat<F>,
    /// `perm[r]` is the index of `w(α_r)`.
    pub perm: Vec<u32>,
}

impl<F: Field> GroupElement for WeylElement<F> {
    type Key = Vec<u32>;
    fn key(&self) -> Vec<u32> {
        self.perm.clone()
    }
    fn compose(&self, other: &Self) -> Self {
        WeylElement {
            matrix: &self.matrix * &other.matrix,
            perm: other.perm.iter().map(|&r| self.perm[r as usize]).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup<F> {
    table: GroupTable<WeylElement<F>>,
    /// Element index of `s_β` for every root index β.
    reflection: Vec<usize>,
    num_positive: usize,
}

impl<F: Field> WeylGroup<F> {
    pub fn new(rs: &RootSystem<F>) -> Result<Self> {
        Self::with_cap(rs, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(rs: &RootSystem<F>, cap: usize) -> Result<Self> {
        let n = rs.rank();
        let identity = WeylElement { matrix: Mat::identity(n), perm: (0..rs.num_roots() as u32).collect() };
        let gens: Vec<WeylElement<F>> = (0..n)
            .map(|i| WeylElement {
                matrix: rs.simple_coreflection_matrix(i),
                perm: rs.simple_permutation(i).iter().map(|&x| x as u32).collect(),
            })
            .collect();
        let table = GroupTable::generate(identity, &gens, cap)?;
        let lookup: std::collections::HashMap<Vec<u32>, usize> =
            (0..table.order()).map(|i| (table.element(i).perm.clone(), i)).collect();
        let reflection = (0..rs.num_roots())
            .map(|b| {
                let perm: Vec<u32> = (0..rs.num_roots())
                    .map(|r| {
                        let img = rs.reflect_index(b, rs.root(r));
                        rs.root_index(&img).expect("reflections permute roots") as u32
                    })
                    .collect();
                lookup[&perm]
            })
            .collect();
        Ok(WeylGroup { table, reflection, num_positive: rs.num_positive() })
    }

    pub fn table(&self) -> &GroupTable<WeylElement<F>> {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn matrix(&self, w: usize) -> &Mat<F> {
        &self.table.element(w).matrix
    }

    /// Index of the root `w(α_r)`.
    pub fn act_on_root(&self, w: usize, r: usize) -> usize {
        self.table.element(w).perm[r] as usize
    }

    /// `w(ω)` for ω in simple-coroot coordinates.
    pub fn act_on_coroot_coords(&self, w: usize, omega: &[F]) -> Vec<F> {
        self.matrix(w).mul_vec(omega)
    }

    /// `wν` for ν given by its pairings `λ_j = (ν, α_j∨)`.
    pub fn act_on_weight(&self, w: usize, lambda: &[F]) -> Vec<F> {
        self.matrix(self.table.inverse(w)).transpose().mul_vec(lambda)
    }

    pub fn simple(&self, i: usize) -> usize {
        self.table.generators()[i]
    }

    pub fn reflection(&self, root: usize) -> usize {
        self.reflection[root]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.table.inverse(w)
    }

    pub fn length(&self, w: usize) -> usize {
        self.table.word_length(w)
    }

    /// `(−1)^{ℓ(w)}`.
    pub fn sign(&self, w: usize) -> i64 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Positive roots sent to negative roots by `w`.
    pub fn inversions(&self, w: usize) -> Vec<usize> {
        (0..self.num_positive).filter(|&b| self.act_on_root(w, b) >= self.num_positive).collect()
    }

    /// Reflection representation on V∨ as complex matrices, per element.
    pub fn reflection_representation(&self) -> Vec<CMat> {
        (0..self.order()).map(|w| self.matrix(w).to_cmat()).collect()
    }

    pub fn sign_character(&self) -> Vec<Complex64> {
        (0..self.table.num_classes())
            .map(|c| Complex64::new(self.sign(self.table.class_rep(c)) as f64, 0.0))
            .collect()
    }

    pub fn character_table(&self, seed: u64) -> Result<CharacterTable> {
        CharacterTable::compute(&self.table, seed)
    }

    /// Conventional names: `triv`, `sgn`, `refl` (reflection representation
    /// when irreducible), otherwise `chi{i}`.
    pub fn character_names(&self, table: &CharacterTable) -> Vec<String> {
        let refl: Vec<Complex64> = (0..self.table.num_classes())
            .map(|c| self.matrix(self.table.class_rep(c)).to_cmat().trace())
            .collect();
        let sgn = self.sign_character();
        (0..table.num_characters())
            .map(|i| {
                let row = &table.values[i];
                let same = |v: &[Complex64]| row.iter().zip(v).all(|(a, b)| (a - b).norm() < 1e-6);
                if i == 0 {
                    "triv".to_string()
                } else if same(&sgn) {
                    "sgn".to_string()
                } else if same(&refl) {
                    "refl".to_string()
                } else {
                    format!("chi{i}")
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::rootsys::{RootSystemSpec, Series};

    fn weyl(series: Series, rank: usize) -> WeylGroup<Q> {
        let rs = RootSystem::build(RootSystemSpec::new(series, rank)).unwrap();
        WeylGroup::new(&rs).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(weyl(Series::A, 1).order(), 2);
        assert_eq!(weyl(Series::A, 2).order(), 6);
        assert_eq!(weyl(Series::B, 2).order(), 8);
        assert_eq!(weyl(Series::G2, 2).order(), 12);
        assert_eq!(weyl(Series::A, 3).order(), 24);
    }

    #[test]
    fn lengths_count_inversions() {
        let w = weyl(Series::B, 2);
        for x in 0..w.order() {
            assert_eq!(w.length(x), w.inversions(x).len());
        }
    }

    #[test]
    fn a2_classes_and_table() {
        let w = weyl(Series::A, 2);
        let mut sizes: Vec<usize> = w.table().classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let t = w.character_table(5).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        let names = w.character_names(&t);
        assert_eq!(names, vec!["triv", "sgn", "refl"]);
    }

    #[test]
    fn reflections_match_matrices() {
        let rs = RootSystem::<Q>::build(RootSystemSpec::new(Series::G2, 2)).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        for b in 0..rs.num_roots() {
            assert_eq!(w.matrix(w.reflection(b)), &rs.coreflection_matrix(b));
        }
    }
}
