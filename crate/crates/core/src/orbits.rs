//! Central characters `ν_e = h/2` attached to nilpotent orbits: type A via
//! partitions (Jordan types), the regular and zero orbits in every type.

use std::collections::BTreeMap;

use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{q_to_string, Field, Q};
use crate::hmod::{nu_norm2, nu_norm2_exact, Weight};
use crate::rootsys::{RootSystem, Series};

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDatum {
    /// Partition (type A) or `regular` / `zero`.
    pub label: String,
    pub partition: Option<Vec<usize>>,
    /// ν_e through its pairings with the simple coroots.
    pub nu: Weight,
    /// Ambient coordinates of ν_e (type A: `h/2` sorted decreasingly).
    pub ambient: Option<Vec<Q>>,
    pub norm2: f64,
    pub norm2_exact: Option<Q>,
    /// The centralizer of `e` is solvable.
    pub solvable: bool,
}

impl OrbitDatum {
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct J<'a> {
            label: &'a str,
            partition: &'a Option<Vec<usize>>,
            nu_pairings: Vec<String>,
            nu_ambient: Option<Vec<String>>,
            norm2: String,
            solvable: bool,
        }
        let nu_pairings = match &self.nu {
            Weight::Exact(v) => v.iter().map(q_to_string).collect(),
            Weight::Float(v) => v.iter().map(|x| x.to_string()).collect(),
        };
        serde_json::to_value(J {
            label: &self.label,
            partition: &self.partition,
            nu_pairings,
            nu_ambient: self.ambient.as_ref().map(|v| v.iter().map(q_to_string).collect()),
            norm2: self.norm2_exact.as_ref().map_or_else(|| self.norm2.to_string(), q_to_string),
            solvable: self.solvable,
        })
        .expect("serializable")
    }
}

fn datum<F: Field>(rs: &RootSystem<F>, label: String, partition: Option<Vec<usize>>, nu: Weight, ambient: Option<Vec<Q>>, solvable: bool) -> OrbitDatum {
    let norm2_exact = nu_norm2_exact(rs, &nu);
    let norm2 = norm2_exact.as_ref().and_then(ToPrimitive::to_f64).unwrap_or_else(|| nu_norm2(rs, &nu));
    OrbitDatum { label, partition, nu, ambient, norm2, norm2_exact, solvable }
}

/// The regular orbit: `(ν_r, α_i∨) = 1` for every simple coroot.
pub fn nu_regular<F: Field>(rs: &RootSystem<F>) -> Result<OrbitDatum> {
    if !rs.spec().crystallographic() {
        return Err(Error::Unsupported(format!("{} is not crystallographic", rs.label())));
    }
    let nu = if F::EXACT {
        Weight::Exact(vec![Q::from_i64(1); rs.rank()])
    } else {
        Weight::Float(vec![1.0; rs.rank()])
    };
    let ambient = if F::EXACT {
        Some(
            rs.vector_with_pairings(&vec![F::one(); rs.rank()])
                .iter()
                .map(|x| x.to_rational().expect("exact"))
                .collect(),
        )
    } else {
        None
    };
    Ok(datum(rs, "regular".into(), None, nu, ambient, true))
}

pub fn nu_zero<F: Field>(rs: &RootSystem<F>) -> OrbitDatum {
    let nu = if F::EXACT { Weight::Exact(vec![Q::zero(); rs.rank()]) } else { Weight::Float(vec![0.0; rs.rank()]) };
    let solvable = rs.rank() == 0;
    datum(rs, "zero".into(), None, nu, Some(vec![Q::zero(); rs.ambient_dim()]), solvable)
}

/// `h/2` for the Jordan type `λ`: the union over parts `p` of
/// `{(p−1)/2, (p−3)/2, …, (1−p)/2}`, sorted decreasingly.
pub fn half_h_of_partition(parts: &[usize]) -> Vec<Q> {
    let mut v: Vec<Q> = Vec::new();
    for &p in parts {
        let p = p as i64;
        for k in 0..p {
            v.push(Q::from_ratio(p - 1 - 2 * k, 2));
        }
    }
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// All part multiplicities are at most one.
pub fn has_distinct_parts(parts: &[usize]) -> bool {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    counts.values().all(|&k| k <= 1)
}

fn require_type_a<F: Field>(rs: &RootSystem<F>) -> Result<()> {
    if rs.spec().series != Series::A {
        return Err(Error::Unsupported(format!("partition data is only available in type A, not {}", rs.label())));
    }
    Ok(())
}

pub fn format_partition(parts: &[usize]) -> String {
    format!("({})", parts.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// Orbit datum for a partition of `n + 1` in type `A_n`.
pub fn nu_from_partition<F: Field>(rs: &RootSystem<F>, parts: &[usize]) -> Result<OrbitDatum> {
    require_type_a(rs)?;
    let n1 = rs.rank() + 1;
    if parts.iter().sum::<usize>() != n1 || parts.contains(&0) {
        return Err(Error::Domain(format!("{} is not a partition of {n1}", format_partition(parts))));
    }
    let mut sorted = parts.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let amb = half_h_of_partition(&sorted);
    let nu = Weight::from_coords(rs, &Weight::Exact(amb.clone()))?;
    let solvable = has_distinct_parts(&sorted);
    Ok(datum(rs, format_partition(&sorted), Some(sorted), nu, Some(amb), solvable))
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Supported orbits sorted by decreasing `⟨ν_e, ν_e⟩`: every partition in
/// type A, otherwise the regular and zero orbits. With `solvable_only`,
/// only orbits with solvable centralizer are kept.
pub fn length_table<F: Field>(rs: &RootSystem<F>, solvable_only: bool) -> Result<Vec<OrbitDatum>> {
    let mut out = if rs.spec().series == Series::A {
        partitions(rs.rank() + 1)
            .iter()
            .map(|p| nu_from_partition(rs, p))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![nu_regular(rs)?, nu_zero(rs)]
    };
    if solvable_only {
        out.retain(|d| d.solvable);
    }
    out.sort_by(|a, b| b.norm2.total_cmp(&a.norm2));
    Ok(out)
}

/// The subregular orbit, available in type A as the partition `(n, 1)`.
pub fn nu_subregular<F: Field>(rs: &RootSystem<F>) -> Result<OrbitDatum> {
    require_type_a(rs)?;
    let n = rs.rank();
    if n == 1 {
        return nu_from_partition(rs, &[1, 1]);
    }
    nu_from_partition(rs, &[n, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::rootsys::RootSystemSpec;

    fn a(n: usize) -> RootSystem<Q> {
        RootSystem::build(RootSystemSpec::new(Series::A, n)).unwrap()
    }

    #[test]
    fn partition_weights() {
        assert_eq!(half_h_of_partition(&[3]), vec![q(1, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(half_h_of_partition(&[2, 1]), vec![q(1, 2), q(0, 1), q(-1, 2)]);
        assert_eq!(partitions(4).len(), 5);
    }

    #[test]
    fn a2_table() {
        let t = length_table(&a(2), true).unwrap();
        let got: Vec<(String, Q)> = t.iter().map(|d| (d.label.clone(), d.norm2_exact.clone().unwrap())).collect();
        assert_eq!(got, vec![("(3)".to_string(), q(2, 1)), ("(2,1)".to_string(), q(1, 2))]);
        let z = nu_from_partition(&a(2), &[1, 1, 1]).unwrap();
        assert!(!z.solvable);
        assert_eq!(z.norm2, 0.0);
    }

    #[test]
    fn regular_matches_partition() {
        let rs = a(3);
        let r = nu_regular(&rs).unwrap();
        let p = nu_from_partition(&rs, &[4]).unwrap();
        assert_eq!(r.nu, p.nu);
        assert_eq!(r.norm2_exact, Some(q(5, 1)));
        assert!(nu_from_partition(&rs, &[2, 1]).is_err());
    }
}
