//! Everything attached to one (root system, parameter function) pair:
//! the Weyl group, 𝗛, the spin cover, Ω_W̃ and both character tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::complex::Complex64;

use crate::chartab::CharacterTable;
use crate::clifford::SpinModule;
use crate::error::Result;
use crate::field::Field;
use crate::group::DEFAULT_GROUP_CAP;
use crate::hecke::{Hecke, DEFAULT_DEGREE_CAP};
use crate::rootsys::{ParameterFunction, RootSystem, RootSystemSpec};
use crate::spincover::{c_sigma_tilde_values, CTildeValue, OmegaWTilde, SpinCover};
use crate::weyl::WeylGroup;

#[derive(Clone, Debug)]
pub struct Setting<F> {
    pub rs: Arc<RootSystem<F>>,
    pub weyl: Arc<WeylGroup<F>>,
    pub hecke: Hecke<F>,
    pub cover: SpinCover<F>,
    pub omega_tilde: OmegaWTilde<F>,
    pub weyl_table: CharacterTable,
    pub weyl_names: Vec<String>,
    pub cover_table: CharacterTable,
    pub cover_names: Vec<String>,
    pub genuine: Vec<bool>,
    /// `c(σ̃)` for every irreducible of W̃ (character formula and
    /// regular-representation eigenvalue).
    pub c_tilde: Vec<CTildeValue>,
    pub seed: u64,
}

impl<F: Field> Setting<F> {
    pub fn new(spec: RootSystemSpec, params: &BTreeMap<String, F>, seed: u64) -> Result<Self> {
        Self::with_caps(spec, params, seed, DEFAULT_GROUP_CAP, DEFAULT_DEGREE_CAP)
    }

    pub fn with_caps(
        spec: RootSystemSpec,
        params: &BTreeMap<String, F>,
        seed: u64,
        group_cap: usize,
        degree_cap: usize,
    ) -> Result<Self> {
        let rs = Arc::new(RootSystem::build(spec)?);
        let c = ParameterFunction::from_map(&rs, params)?;
        let weyl = Arc::new(WeylGroup::with_cap(&rs, group_cap)?);
        let hecke = Hecke::new(rs.clone(), weyl.clone(), c.clone()).with_degree_cap(degree_cap);
        let cover = SpinCover::with_cap(&rs, &weyl, 2 * group_cap)?;
        let omega_tilde = OmegaWTilde::new(&rs, &weyl, &cover, &c);
        let weyl_table = weyl.character_table(seed)?;
        let weyl_names = weyl.character_names(&weyl_table);
        let cover_table = cover.character_table(seed)?;
        let genuine = cover.genuine_flags(&cover_table);
        let c_tilde = c_sigma_tilde_values(&omega_tilde, &cover, &cover_table)?;
        let mut s = Setting {
            rs,
            weyl,
            hecke,
            cover,
            omega_tilde,
            weyl_table,
            weyl_names,
            cover_table,
            cover_names: Vec::new(),
            genuine,
            c_tilde,
            seed,
        };
        s.cover_names = s.name_cover_characters()?;
        Ok(s)
    }

    /// Equal parameters.
    pub fn equal(spec: RootSystemSpec, seed: u64) -> Result<Self> {
        Self::new(spec, &BTreeMap::new(), seed)
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn spin_modules(&self) -> Result<Vec<SpinModule>> {
        SpinModule::all(self.rank())
    }

    /// Names for W̃-irreducibles: pullbacks of W-irreducibles keep their W
    /// name; genuine ones matching a spin module are `S` (`S+`/`S-` in odd
    /// rank), others `S*<w-name>` when they equal a spin module tensored with
    /// a W-irreducible, else `gen{k}`.
    fn name_cover_characters(&self) -> Result<Vec<String>> {
        let g = self.cover.table();
        let pulled: Vec<Vec<Complex64>> = self
            .weyl_table
            .values
            .iter()
            .map(|row| {
                (0..g.num_classes())
                    .map(|cl| row[self.weyl.table().class_of(self.cover.project(g.class_rep(cl)))])
                    .collect()
            })
            .collect();
        let spins = self.spin_modules()?;
        let spin_chars: Vec<(String, Vec<Complex64>)> = spins
            .iter()
            .map(|s| {
                let name = if spins.len() == 1 { "S".to_string() } else { format!("S{}", s.label()) };
                (name, self.cover.spin_character(s))
            })
            .collect();
        let mut names = Vec::new();
        let mut k = 0;
        for (i, row) in self.cover_table.values.iter().enumerate() {
            let same = |v: &[Complex64]| row.iter().zip(v).all(|(a, b)| (a - b).norm() < 1e-6);
            if !self.genuine[i] {
                let j = pulled.iter().position(|p| same(p));
                names.push(j.map_or_else(|| format!("chi{i}"), |j| self.weyl_names[j].clone()));
                continue;
            }
            if let Some((n, _)) = spin_chars.iter().find(|(_, ch)| same(ch)) {
                names.push(n.clone());
                continue;
            }
            let mut found = None;
            'outer: for (sn, sch) in &spin_chars {
                for (j, p) in pulled.iter().enumerate() {
                    let prod: Vec<Complex64> = sch.iter().zip(p).map(|(a, b)| a * b).collect();
                    if same(&prod) {
                        found = Some(format!("{sn}*{}", self.weyl_names[j]));
                        break 'outer;
                    }
                }
            }
            names.push(found.unwrap_or_else(|| {
                k += 1;
                format!("gen{k}")
            }));
        }
        Ok(names)
    }

    /// `c(σ̃)` by the character formula.
    pub fn c_value(&self, sigma: usize) -> f64 {
        self.c_tilde[sigma].formula
    }
}
