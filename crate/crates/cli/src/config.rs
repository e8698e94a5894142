//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use hecke_dirac::field::{parse_q, q_to_string, Q};
use hecke_dirac::hecke::DEFAULT_DEGREE_CAP;
use hecke_dirac::rootsys::{RootSystemSpec, Series};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub series: Option<String>,
    pub rank: Option<usize>,
    pub m: Option<u32>,
    /// Parameter per root orbit, as numbers or `"p/q"` strings.
    pub c: BTreeMap<String, Value>,
    pub degree: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: RootSystemSpec,
    pub params: BTreeMap<String, Q>,
    pub degree: usize,
    pub tol: f64,
    pub seed: u64,
    pub format: Format,
}

impl Resolved {
    pub fn echo(&self) -> Value {
        json!({
            "system": self.spec.label(),
            "series": self.spec.series.to_string(),
            "rank": self.spec.rank,
            "m": self.spec.m,
            "parameters": self.params.iter().map(|(k, v)| (k.clone(), q_to_string(v))).collect::<BTreeMap<_, _>>(),
            "degree_cap": self.degree,
            "tol": self.tol,
            "seed": self.seed,
        })
    }
}

/// Parses `long=1,short=2`.
pub fn parse_parameter_list(s: &str) -> Result<BTreeMap<String, Value>, CliError> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter {item:?} is not of the form name=value")))?;
        out.insert(k.trim().to_string(), Value::String(v.trim().to_string()));
    }
    Ok(out)
}

fn parse_value(name: &str, v: &Value) -> Result<Q, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(CliError::Usage(format!("parameter {name}: unsupported value {other}"))),
    };
    let x = parse_q(&text).ok_or_else(|| CliError::Usage(format!("parameter {name}: cannot parse {text:?}")))?;
    if x <= Q::from_integer(0.into()) {
        return Err(CliError::Usage(format!("parameter {name} must be positive")));
    }
    Ok(x)
}

/// Accepts `A`, `A3`, `G2`, `F4`, `I2` and `I2(5)`.
fn parse_system(series: &str, rank: Option<usize>, m: Option<u32>) -> Result<RootSystemSpec, CliError> {
    let s = series.trim();
    let usage = |msg: String| CliError::Usage(msg);
    if let Some(inner) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let mm: u32 = inner.trim().parse().map_err(|_| usage(format!("bad dihedral order in {s:?}")))?;
        if m.is_some_and(|x| x != mm) {
            return Err(usage(format!("--m {} disagrees with {s}", m.unwrap())));
        }
        return RootSystemSpec::dihedral(mm).resolve().map_err(|e| usage(e.to_string()));
    }
    let (series, rank) = match s.parse::<Series>() {
        Ok(series) => (series, rank),
        Err(_) => {
            let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| usage(format!("unknown series {s:?}")))?;
            let series: Series = s[..split].parse().map_err(|e: hecke_dirac::Error| usage(e.to_string()))?;
            let r: usize = s[split..].parse().map_err(|_| usage(format!("bad rank in {s:?}")))?;
            if rank.is_some_and(|x| x != r) {
                return Err(usage(format!("--rank {} disagrees with {s}", rank.unwrap())));
            }
            (series, Some(r))
        }
    };
    let spec = match series {
        Series::I2 => RootSystemSpec::dihedral(m.ok_or_else(|| usage("I2 needs --m".into()))?),
        Series::G2 | Series::F4 => RootSystemSpec::new(series, rank.unwrap_or(0)),
        _ => RootSystemSpec::new(series, rank.ok_or_else(|| usage(format!("series {series} needs --rank")))?),
    };
    spec.resolve().map_err(|e| usage(e.to_string()))
}

/// Flags override the file; the file overrides the defaults.
pub fn resolve(file: RunConfig, flags: RunConfig) -> Result<Resolved, CliError> {
    let series = flags
        .series
        .or(file.series)
        .ok_or_else(|| CliError::Usage("no root system given (use --series)".into()))?;
    let spec = parse_system(&series, flags.rank.or(file.rank), flags.m.or(file.m))?;
    let mut raw = file.c;
    raw.extend(flags.c);
    let params = raw.iter().map(|(k, v)| Ok((k.clone(), parse_value(k, v)?))).collect::<Result<_, CliError>>()?;
    let tol = flags.tol.or(file.tol).unwrap_or(1e-9);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(Resolved {
        spec,
        params,
        degree: flags.degree.or(file.degree).unwrap_or(DEFAULT_DEGREE_CAP),
        tol,
        seed: flags.seed.or(file.seed).unwrap_or(0),
        format: flags.format.or(file.format).unwrap_or(Format::Json),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_names() {
        let a3 = parse_system("A3", None, None).unwrap();
        assert_eq!(a3, RootSystemSpec::new(Series::A, 3));
        assert_eq!(parse_system("B", Some(2), None).unwrap(), RootSystemSpec::new(Series::B, 2));
        assert_eq!(parse_system("G2", None, None).unwrap().rank, 2);
        assert_eq!(parse_system("I2(5)", None, None).unwrap(), RootSystemSpec::dihedral(5));
        assert_eq!(parse_system("I2", None, Some(4)).unwrap(), RootSystemSpec::new(Series::B, 2));
        assert!(parse_system("A3", Some(2), None).is_err());
        assert!(parse_system("Q7", None, None).is_err());
        assert!(parse_system("I2", None, None).is_err());
    }

    #[test]
    fn parameters() {
        let m = parse_parameter_list("long=1, short=3/2").unwrap();
        assert_eq!(parse_value("short", &m["short"]).unwrap(), Q::new(3.into(), 2.into()));
        assert!(parse_parameter_list("long").is_err());
        assert!(parse_value("x", &Value::String("-1".into())).is_err());
    }
}
