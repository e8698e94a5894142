//! The subcommands, generic over the coefficient field.

use clap::ValueEnum;
use hecke_dirac::dirac::{bounds_screen, dirac_inequality_report, pairing_grid, vogan_check, DiracContext};
use hecke_dirac::field::{parse_q, q_to_string, to_f64, Field, Q};
use hecke_dirac::hecke::HeckeElement;
use hecke_dirac::hmod::{nu_norm2, nu_norm2_exact, one_dimensional, principal_series, OneDimKind, Weight};
use hecke_dirac::linalg::CMat;
use hecke_dirac::orbits::length_table;
use hecke_dirac::rootsys::RootSystem;
use hecke_dirac::setting::Setting;
use hecke_dirac::suite::{run_suites, Status, SuiteOptions};
use hecke_dirac::vogan::solve_zeta;
use serde_json::{json, Value};

use crate::output::{fmt_f64, fmt_opt, round9, Report};
use crate::CliError;

/// How user-supplied coordinates of ν are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// `(ν, α_j∨)` for the simple coroots.
    Pairings,
    /// Ambient coordinates.
    Ambient,
    /// Coefficients on the simple roots.
    SimpleRoots,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    Principal,
    Trivial,
    Steinberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Chirality {
    All,
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupKind {
    Cover,
    Weyl,
}

pub fn weight_strings(w: &Weight) -> Vec<String> {
    match w {
        Weight::Exact(v) => v.iter().map(q_to_string).collect(),
        Weight::Float(v) => v.iter().map(|x| fmt_f64(*x)).collect(),
    }
}

fn norm2_string<F: Field>(rs: &RootSystem<F>, nu: &Weight) -> String {
    nu_norm2_exact(rs, nu).map_or_else(|| fmt_f64(nu_norm2(rs, nu)), |q| q_to_string(&q))
}

pub fn parse_point(s: &str) -> Result<Vec<Q>, CliError> {
    s.split(',')
        .map(|t| parse_q(t).ok_or_else(|| CliError::Usage(format!("cannot parse coordinate {t:?}"))))
        .collect()
}

/// Pairings of ν with the simple coroots from coordinates in `basis`.
pub fn to_pairings<F: Field>(rs: &RootSystem<F>, coords: &[Q], basis: Basis) -> Result<Weight, CliError> {
    let expected = match basis {
        Basis::Ambient => rs.ambient_dim(),
        _ => rs.rank(),
    };
    if coords.len() != expected {
        return Err(CliError::Usage(format!("ν has {} coordinates; expected {expected}", coords.len())));
    }
    if basis == Basis::Pairings {
        return Ok(Weight::Exact(coords.to_vec()));
    }
    let v: Vec<F> = coords.iter().map(F::from_rational).collect();
    let amb = if basis == Basis::Ambient { v } else { rs.from_simple_root_coords(&v) };
    let p = rs.pairings_with_simple_coroots(&amb);
    Ok(if F::EXACT {
        Weight::Exact(p.iter().map(|x| x.to_rational().expect("exact field")).collect())
    } else {
        Weight::Float(p.iter().map(to_f64).collect())
    })
}

pub fn verify<F: Field>(s: &Setting<F>, opts: &SuiteOptions) -> Result<Report, CliError> {
    let checks = run_suites(s, opts)?;
    let count = |st: Status| checks.iter().filter(|c| c.status == st).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.suite.to_string(),
                c.name.clone(),
                serde_json::to_value(c.status).expect("serializable").as_str().unwrap_or_default().to_string(),
                c.exact.to_string(),
                fmt_opt(c.residual.map(|r| format!("{r:.3e}"))),
            ]
        })
        .collect();
    Ok(Report {
        command: "verify",
        result: json!({
            "suites": opts.suites,
            "checks": checks,
            "counts": { "pass": passed, "fail": failed, "skipped": skipped },
        }),
        columns: vec!["suite", "check", "status", "exact", "residual"],
        rows,
        pass: failed == 0,
    })
}

pub fn ctable<F: Field>(s: &Setting<F>, group: GroupKind) -> Result<Report, CliError> {
    let (table, names) = match group {
        GroupKind::Cover => (&s.cover_table, &s.cover_names),
        GroupKind::Weyl => (&s.weyl_table, &s.weyl_names),
    };
    let values: Vec<Vec<[f64; 2]>> = table
        .values
        .iter()
        .map(|row| row.iter().map(|z| [round9(z.re), round9(z.im)]).collect())
        .collect();
    let mut chars = Vec::new();
    let mut rows = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let mut entry = json!({ "index": i, "name": name, "degree": table.degrees[i], "values": values[i] });
        let mut row = vec![i.to_string(), name.clone(), table.degrees[i].to_string()];
        if group == GroupKind::Cover {
            let c = &s.c_tilde[i];
            entry["genuine"] = json!(s.genuine[i]);
            entry["c_formula"] = json!(round9(c.formula));
            entry["c_eigenvalue"] = json!(round9(c.eigenvalue));
            row.extend([s.genuine[i].to_string(), fmt_f64(c.formula), fmt_f64(c.eigenvalue)]);
        }
        chars.push(entry);
        rows.push(row);
    }
    let mut columns = vec!["index", "name", "degree"];
    if group == GroupKind::Cover {
        columns.extend(["genuine", "c_formula", "c_eigenvalue"]);
    }
    let agree = s.c_tilde.iter().all(|c| (c.formula - c.eigenvalue).abs() < 1e-8);
    Ok(Report {
        command: "ctable",
        result: json!({
            "group": if group == GroupKind::Cover { "cover" } else { "weyl" },
            "order": table.order,
            "class_sizes": table.class_sizes,
            "characters": chars,
        }),
        columns,
        rows,
        pass: group == GroupKind::Weyl || agree,
    })
}

pub struct DiracArgs {
    pub module: ModuleKind,
    pub nu: Option<Vec<Q>>,
    pub basis: Basis,
    pub chirality: Chirality,
    pub tol: f64,
}

fn isotypic_json(entries: &[hecke_dirac::dirac::IsotypicEntry]) -> Value {
    json!(entries
        .iter()
        .map(|e| json!({
            "name": e.name,
            "degree": e.degree,
            "multiplicity": e.multiplicity,
            "genuine": e.genuine,
            "c_value": round9(e.c_value),
        }))
        .collect::<Vec<_>>())
}

fn type_list(entries: &[hecke_dirac::dirac::IsotypicEntry]) -> String {
    entries.iter().map(|e| format!("{}x{}", e.multiplicity, e.name)).collect::<Vec<_>>().join(" ")
}

pub fn dirac_report<F: Field>(s: &Setting<F>, a: &DiracArgs) -> Result<Report, CliError> {
    let module = match a.module {
        ModuleKind::Principal => {
            let coords = a.nu.as_ref().ok_or_else(|| CliError::Usage("the principal series needs --nu".into()))?;
            principal_series(&s.hecke, &to_pairings(&s.rs, coords, a.basis)?)?
        }
        ModuleKind::Trivial => one_dimensional(&s.hecke, OneDimKind::Trivial),
        ModuleKind::Steinberg => one_dimensional(&s.hecke, OneDimKind::Steinberg),
    };
    let nu = module.nu.clone().ok_or_else(|| CliError::Failure("module has no central character".into()))?;
    let mut spins = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for spin in s.spin_modules()? {
        let keep = match a.chirality {
            Chirality::All => true,
            Chirality::Plus => spin.chirality >= 0,
            Chirality::Minus => spin.chirality < 0,
        };
        if !keep {
            continue;
        }
        let label = spin.label();
        let ctx = DiracContext::new(s, &module, spin)?;
        let square = ctx.dirac_square_residual();
        let coh = ctx.cohomology();
        let hd = ctx.isotypic_report(&coh.section, &coh.intersection)?;
        let ker = ctx.isotypic_report(&coh.kernel, &CMat::zeros(ctx.dim(), 0))?;
        let inequality = match module.form {
            Some(_) => Some(dirac_inequality_report(&ctx, false)?),
            None => None,
        };
        let vogan = vogan_check(&ctx)?;
        let ok = square < a.tol && vogan.pass && inequality.as_ref().is_none_or(|r| !r.any_violation);
        pass &= ok;
        rows.push(vec![
            label.to_string(),
            ctx.dim().to_string(),
            format!("{square:.3e}"),
            coh.dim_kernel().to_string(),
            coh.dim_image().to_string(),
            coh.dim().to_string(),
            type_list(&hd),
            type_list(&ker),
            vogan.pass.to_string(),
        ]);
        spins.push(json!({
            "chirality": label,
            "dim": ctx.dim(),
            "dirac_square_residual": square,
            "dim_kernel": coh.dim_kernel(),
            "dim_image": coh.dim_image(),
            "dim_kernel_cap_image": coh.dim_intersection(),
            "dim_cohomology": coh.dim(),
            "cohomology": isotypic_json(&hd),
            "kernel": isotypic_json(&ker),
            "inequality": inequality,
            "vogan": vogan,
            "pass": ok,
        }));
    }
    Ok(Report {
        command: "dirac-report",
        result: json!({
            "module": module.label,
            "module_dim": module.dim,
            "nu": weight_strings(&nu),
            "nu_norm2": norm2_string(&s.rs, &nu),
            "spins": spins,
        }),
        columns: vec!["spin", "dim", "d2_residual", "dim_ker", "dim_im", "dim_HD", "HD_types", "ker_types", "vogan"],
        rows,
        pass,
    })
}

/// `default`, `radius:step`, or explicit points `a,b;c,d`.
pub fn grid_points<F: Field>(rs: &RootSystem<F>, grid: &str, basis: Basis) -> Result<Vec<Weight>, CliError> {
    let g = grid.trim();
    if g == "default" {
        return Ok(pairing_grid(rs.rank(), Q::from_integer(2.into()), Q::new(1.into(), 2.into())));
    }
    if let Some((r, h)) = g.split_once(':') {
        let bad = || CliError::Usage(format!("bad grid {g:?}; expected radius:step"));
        let r = parse_q(r).ok_or_else(bad)?;
        let h = parse_q(h).ok_or_else(bad)?;
        if h <= Q::from_integer(0.into()) || r < Q::from_integer(0.into()) {
            return Err(bad());
        }
        return Ok(pairing_grid(rs.rank(), r, h));
    }
    g.split(';').map(|p| to_pairings(rs, &parse_point(p)?, basis)).collect()
}

pub fn bounds<F: Field>(s: &Setting<F>, points: &[Weight]) -> Result<Report, CliError> {
    let screen = bounds_screen(s, points)?;
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for (nu, row) in points.iter().zip(&screen) {
        let admissible: Vec<&str> = row.bounds.iter().filter(|b| b.admissible).map(|b| b.name.as_str()).collect();
        rows.push(vec![
            weight_strings(nu).join(" "),
            norm2_string(&s.rs, nu),
            row.passes.to_string(),
            admissible.join(" "),
            fmt_opt(row.exceeds_regular),
            fmt_opt(row.exceeds_subregular),
            fmt_opt(row.in_regular_orbit),
        ]);
        let mut j = serde_json::to_value(row).expect("serializable");
        j["nu"] = json!(weight_strings(nu));
        j["nu_norm2"] = json!(norm2_string(&s.rs, nu));
        out.push(j);
    }
    let passing = screen.iter().filter(|r| r.passes).count();
    Ok(Report {
        command: "bounds",
        result: json!({ "points": screen.len(), "passing": passing, "rows": out }),
        columns: vec!["nu", "norm2", "passes", "admissible", "exceeds_regular", "exceeds_subregular", "in_regular_orbit"],
        rows,
        pass: true,
    })
}

pub fn orbits<F: Field>(s: &Setting<F>, solvable_only: bool) -> Result<Report, CliError> {
    let table = length_table(s.rs.as_ref(), solvable_only)?;
    let rows = table
        .iter()
        .map(|d| {
            let j = d.to_json();
            vec![
                d.label.clone(),
                weight_strings(&d.nu).join(" "),
                j["norm2"].as_str().unwrap_or_default().to_string(),
                d.solvable.to_string(),
            ]
        })
        .collect();
    Ok(Report {
        command: "orbits",
        result: json!({ "orbits": table.iter().map(|d| d.to_json()).collect::<Vec<_>>() }),
        columns: vec!["orbit", "nu", "norm2", "solvable"],
        rows,
        pass: true,
    })
}

/// `casimir`, `casimir-squared`, `cubic` or `invariant:<d>`.
fn central_element<F: Field>(s: &Setting<F>, which: &str) -> Result<HeckeElement<F>, CliError> {
    let h = &s.hecke;
    let invariant = |d: usize| {
        h.invariant_of_degree(d)
            .map(|p| h.poly(p))
            .ok_or_else(|| CliError::Usage(format!("no invariant of degree {d} for {}", s.rs.label())))
    };
    match which {
        "casimir" => Ok(h.casimir()?),
        "casimir-squared" => {
            let c = h.casimir()?;
            Ok(h.mul(&c, &c)?)
        }
        "cubic" => invariant(3),
        other => match other.strip_prefix("invariant:").and_then(|d| d.parse().ok()) {
            Some(d) => invariant(d),
            None => Err(CliError::Usage(format!("unknown central element {other:?}"))),
        },
    }
}

pub fn zeta<F: Field>(s: &Setting<F>, which: &str) -> Result<Report, CliError> {
    if !F::EXACT {
        return Err(CliError::Usage(format!("zeta needs exact arithmetic, unavailable for {}", s.rs.label())));
    }
    let z = central_element(s, which)?;
    let sol = solve_zeta(s, &z)?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for (i, name) in s.cover_names.iter().enumerate().filter(|&(i, _)| s.genuine[i]) {
        let v = sol.scalar_on(&s.cover_table.values[i]);
        rows.push(vec![name.clone(), fmt_f64(v.re), fmt_f64(v.im)]);
        values.push(json!({ "name": name, "re": round9(v.re), "im": round9(v.im) }));
    }
    let mut result = sol.to_json();
    result["element"] = json!(which);
    result["character_values"] = json!(values);
    Ok(Report {
        command: "zeta",
        result,
        columns: vec!["character", "re", "im"],
        rows,
        pass: sol.residual == 0.0 && sol.unique,
    })
}
