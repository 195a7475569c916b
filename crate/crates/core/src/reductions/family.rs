//! A family with a cheap and an expensive equilibrium.
//!
//! `k` hubs sit on a ring; consecutive hubs are joined by a path with
//! `2a + 1` internal vertices and every hub carries `b` leaves, so
//! `n = k (2a + b + 2)`. Players on the hubs serve the leaves at distance 1;
//! moving every player `a` steps along its outgoing path is also stable but
//! leaves each group of leaves at distance `a + 1`.

use serde::Serialize;

use crate::engine::{Cost, Game, GameMode};
use crate::error::{Error, Result};
use crate::graph::{GameInstance, RawInstance};
use crate::rational::{self, Rational};

use super::gadget::Certificate;

pub const PREDICATE: &str =
    "both profiles are pure Nash equilibria (engine check of every unilateral deviation)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    #[serde(skip)]
    pub instance: GameInstance,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub n: usize,
    /// Players on the hubs.
    pub f: Vec<usize>,
    /// Players `a` steps along the paths.
    pub f_prime: Vec<usize>,
    pub cost_f: Cost,
    pub cost_f_prime: Cost,
    #[serde(with = "rational::as_string")]
    pub ratio: Rational,
}

#[derive(Serialize)]
struct FamilyFile<'a> {
    #[serde(flatten)]
    instance: RawInstance,
    family: &'a FamilyInstance,
    certificate: Certificate,
}

impl FamilyInstance {
    /// Instance JSON with the family parameters and a certificate block.
    pub fn to_json(&self) -> String {
        let file = FamilyFile {
            instance: self.instance.to_raw(),
            family: self,
            certificate: Certificate {
                predicate: PREDICATE.to_string(),
                verified: true,
                seed: None,
                budget: None,
            },
        };
        serde_json::to_string(&file).expect("family serialization is infallible")
    }
}

/// Builds the family member and checks both profiles with the engine.
pub fn discrepancy_family(k: usize, a: usize, b: usize) -> Result<FamilyInstance> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need k >= 2, got {k}")));
    }
    if a == 0 {
        return Err(Error::InvalidArgument(
            "a = 0 makes both profiles identical".into(),
        ));
    }
    if b == 0 {
        return Err(Error::InvalidArgument("need b >= 1".into()));
    }
    let path_len = 2 * a + 1;
    let n = k * (2 * a + b + 2);
    let path = |i: usize, t: usize| k + i * path_len + t;
    let leaf_start = k + k * path_len;
    let mut edges = Vec::with_capacity(n);
    for i in 0..k {
        let next_hub = (i + 1) % k;
        edges.push((i, path(i, 0)));
        for t in 1..path_len {
            edges.push((path(i, t - 1), path(i, t)));
        }
        edges.push((path(i, path_len - 1), next_hub));
        for l in 0..b {
            edges.push((i, leaf_start + i * b + l));
        }
    }
    let instance = GameInstance::standard(n, &edges, k)?;
    let game = Game::new(instance.clone());
    let f: Vec<usize> = (0..k).collect();
    let f_prime: Vec<usize> = (0..k).map(|i| path(i, a - 1)).collect();
    for profile in [&f, &f_prime] {
        if !game.is_nash(profile, GameMode::Shared) {
            return Err(Error::NotEquilibrium {
                profile: profile.clone(),
            });
        }
    }
    let cost_f = game.social_cost(&f);
    let cost_f_prime = game.social_cost(&f_prime);
    let (Cost::Finite(lo), Cost::Finite(hi)) = (cost_f, cost_f_prime) else {
        unreachable!("the family is connected");
    };
    Ok(FamilyInstance {
        instance,
        k,
        a,
        b,
        n,
        f,
        f_prime,
        cost_f,
        cost_f_prime,
        ratio: Rational::new(hi as i64, lo as i64),
    })
}
