//! Batch runs of equilibrium enumeration, tabulated as JSON and text.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{Cost, Game, GameMode};
use crate::equilibria::{enumerate_equilibria, Discrepancy, SearchOptions};
use crate::error::{Error, Result};
use crate::graph::{cycle_instance, path_instance, GameInstance};
use crate::rational;
use crate::reductions::discrepancy_family;

/// A random connected instance: a random recursive tree plus each remaining
/// pair independently with probability `extra`.
pub fn random_connected(n: usize, k: usize, extra: f64, seed: u64) -> Result<GameInstance> {
    if !(0.0..=1.0).contains(&extra) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {extra} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    GameInstance::standard(n, &edges, k)
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RowSpec {
    Family {
        k: usize,
        a: usize,
        b: usize,
    },
    Cycle {
        n: usize,
        k: usize,
    },
    Path {
        n: usize,
        k: usize,
    },
    Random {
        n: usize,
        k: usize,
        #[serde(default = "default_extra")]
        p: f64,
        seed: u64,
    },
    Instance {
        label: Option<String>,
        instance: serde_json::Value,
    },
    File {
        path: String,
    },
}

fn default_extra() -> f64 {
    0.3
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub mode: GameMode,
    /// Overrides the caller's budget for every row.
    pub budget: Option<u64>,
    #[serde(default)]
    pub rows: Vec<RowSpec>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteRow {
    pub label: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub equilibria: Option<usize>,
    pub min_cost: Option<Cost>,
    pub max_cost: Option<Cost>,
    pub discrepancy: Option<Discrepancy>,
    /// Discrepancy divided by `sqrt(k n)`, when finite.
    pub discrepancy_per_sqrt_kn: Option<f64>,
    /// `cost(f') / cost(f)` for family rows.
    pub family_ratio: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteTable {
    pub mode: GameMode,
    pub rows: Vec<SuiteRow>,
}

fn label(spec: &RowSpec) -> String {
    match spec {
        RowSpec::Family { k, a, b } => format!("family(k={k},a={a},b={b})"),
        RowSpec::Cycle { n, k } => format!("cycle(n={n},k={k})"),
        RowSpec::Path { n, k } => format!("path(n={n},k={k})"),
        RowSpec::Random { n, k, p, seed } => format!("random(n={n},k={k},p={p},seed={seed})"),
        RowSpec::Instance { label, .. } => label.clone().unwrap_or_else(|| "instance".into()),
        RowSpec::File { path } => path.clone(),
    }
}

fn build(spec: &RowSpec) -> Result<(GameInstance, Option<String>)> {
    Ok(match spec {
        RowSpec::Family { k, a, b } => {
            let fam = discrepancy_family(*k, *a, *b)?;
            (fam.instance, Some(rational::to_string(&fam.ratio)))
        }
        RowSpec::Cycle { n, k } => (cycle_instance(*n, *k)?, None),
        RowSpec::Path { n, k } => (path_instance(*n, *k)?, None),
        RowSpec::Random { n, k, p, seed } => (random_connected(*n, *k, *p, *seed)?, None),
        RowSpec::Instance { instance, .. } => {
            (GameInstance::from_json(&instance.to_string())?, None)
        }
        RowSpec::File { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
            (GameInstance::from_json(&text)?, None)
        }
    })
}

fn run_row(spec: &RowSpec, mode: GameMode, opts: SearchOptions) -> SuiteRow {
    let mut row = SuiteRow {
        label: label(spec),
        n: None,
        k: None,
        equilibria: None,
        min_cost: None,
        max_cost: None,
        discrepancy: None,
        discrepancy_per_sqrt_kn: None,
        family_ratio: None,
        error: None,
    };
    let (instance, family_ratio) = match build(spec) {
        Ok(x) => x,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.n = Some(instance.n());
    row.k = Some(instance.k());
    row.family_ratio = family_ratio;
    let kn = (instance.n() * instance.k()) as f64;
    match enumerate_equilibria(&Game::new(instance), mode, opts) {
        Ok(report) => {
            row.equilibria = Some(report.count());
            row.min_cost = report.min_cost;
            row.max_cost = report.max_cost;
            row.discrepancy = Some(report.discrepancy);
            if let Discrepancy::Finite(r) = report.discrepancy {
                row.discrepancy_per_sqrt_kn = Some(rational::to_f64(&r) / kn.sqrt());
            }
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs every row; failures are recorded in the row and the suite goes on.
pub fn run_suite(config: &SuiteConfig, opts: SearchOptions) -> SuiteTable {
    let opts = SearchOptions {
        budget: config.budget.unwrap_or(opts.budget),
        ..opts
    };
    SuiteTable {
        mode: config.mode,
        rows: config
            .rows
            .iter()
            .map(|spec| run_row(spec, config.mode, opts))
            .collect(),
    }
}

impl SuiteTable {
    /// Fixed-width text rendering.
    pub fn to_text(&self) -> String {
        let header = [
            "label",
            "n",
            "k",
            "#eq",
            "min_cost",
            "max_cost",
            "discrepancy",
            "disc/sqrt(kn)",
            "family_ratio",
            "error",
        ];
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    opt(r.n.map(|x| x.to_string())),
                    opt(r.k.map(|x| x.to_string())),
                    opt(r.equilibria.map(|x| x.to_string())),
                    opt(r.min_cost.map(|x| x.to_string())),
                    opt(r.max_cost.map(|x| x.to_string())),
                    opt(r.discrepancy.map(|x| x.to_string())),
                    opt(r.discrepancy_per_sqrt_kn.map(|x| format!("{x:.4}"))),
                    opt(r.family_ratio.clone()),
                    opt(r.error.clone()),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let mut line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(header.to_vec());
        for row in &cells {
            line(row.iter().map(String::as_str).collect());
        }
        out
    }
}
