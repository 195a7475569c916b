//! Browser bindings: every export takes plain numbers or a comma-separated
//! profile and returns a JSON string for the page to render.

use serde_json::{json, Value};
use vgg_core::cycle::{canonicalize, lemma2_is_nash};
use vgg_core::dynamics::{potential, run_dynamic, Outcome, Policy, Selection, TieBreak};
use vgg_core::reductions::discrepancy_family;
use vgg_core::{cycle_instance, rational, Error, Game, GameMode, Result};
use wasm_bindgen::prelude::*;

fn parse_positions(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::InvalidArgument(format!("not a vertex: {s:?}")))
        })
        .collect()
}

fn mode(disjoint: bool) -> GameMode {
    if disjoint {
        GameMode::Disjoint
    } else {
        GameMode::Shared
    }
}

fn strings(v: &[vgg_core::Rational]) -> Vec<String> {
    v.iter().map(rational::to_string).collect()
}

pub fn explore(n: usize, positions: &str, disjoint: bool) -> Result<Value> {
    let profile = parse_positions(positions)?;
    let game = Game::new(cycle_instance(n, profile.len())?);
    game.check_profile(&profile)?;
    let mode = mode(disjoint);
    let partition = game.voronoi_partition(&profile, mode);
    let owners: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..profile.len())
                .filter(|&i| partition.shares[i][v] > 0.into())
                .collect()
        })
        .collect();
    let best: Vec<Value> = (0..profile.len())
        .map(|i| {
            let br = game.best_responses(&profile, i, mode);
            json!({ "vertices": br.vertices, "value": rational::to_string(&br.value) })
        })
        .collect();
    let verdict = lemma2_is_nash(&canonicalize(n, &profile)?);
    Ok(json!({
        "n": n,
        "profile": profile,
        "payoffs": strings(&game.payoffs(&profile, mode)),
        "owners": owners,
        "best_responses": best,
        "nash": game.is_nash(&profile, mode),
        "conditions": {
            "nash": verdict.nash,
            "violated": verdict.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        },
        "social_cost": game.social_cost(&profile),
    }))
}

pub fn dynamics(
    n: usize,
    positions: &str,
    disjoint: bool,
    random: bool,
    seed: u64,
) -> Result<Value> {
    let start = parse_positions(positions)?;
    let inst = cycle_instance(n, start.len())?;
    let game = Game::new(inst.clone());
    let policy = Policy {
        selection: if random {
            Selection::Random
        } else {
            Selection::LowestIndex
        },
        tie_break: if random {
            TieBreak::Random
        } else {
            TieBreak::LowestVertex
        },
        seed,
        max_steps: 500,
    };
    let run = run_dynamic(&game, &start, mode(disjoint), policy)?;
    let mut states = vec![start.clone()];
    for m in &run.trace {
        let mut next = states.last().expect("non-empty").clone();
        next[m.player] = m.to;
        states.push(next);
    }
    let potentials: Vec<Option<Vec<usize>>> = states
        .iter()
        .map(|s| potential(&inst, s).ok().map(|g| g.values().to_vec()))
        .collect();
    let outcome = match &run.outcome {
        Outcome::Converged { .. } => "converged",
        Outcome::Cycled { .. } => "cycled",
        Outcome::Exhausted { .. } => "exhausted",
    };
    Ok(json!({
        "outcome": outcome,
        "states": states,
        "trace": run.trace,
        "potentials": potentials,
    }))
}

pub fn family(k: usize, a: usize, b: usize) -> Result<Value> {
    let fam = discrepancy_family(k, a, b)?;
    Ok(serde_json::from_str(&fam.to_json()).expect("family JSON is valid"))
}

fn export(result: Result<Value>) -> std::result::Result<String, JsError> {
    result
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e.to_string()))
}

/// Payoffs, cells, best responses and both equilibrium verdicts for a
/// profile on the cycle `C_n`.
#[wasm_bindgen]
pub fn explore_cycle(
    n: usize,
    positions: &str,
    disjoint: bool,
) -> std::result::Result<String, JsError> {
    export(explore(n, positions, disjoint))
}

/// Best-response dynamics on `C_n` from the given profile, with every
/// visited state and its gap multiset.
#[wasm_bindgen]
pub fn cycle_dynamics(
    n: usize,
    positions: &str,
    disjoint: bool,
    random: bool,
    seed: u64,
) -> std::result::Result<String, JsError> {
    export(dynamics(n, positions, disjoint, random, seed))
}

/// The discrepancy family member and its two equilibrium costs.
#[wasm_bindgen]
pub fn family_costs(k: usize, a: usize, b: usize) -> std::result::Result<String, JsError> {
    export(family(k, a, b))
}
