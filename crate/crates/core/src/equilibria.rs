//! Exhaustive equilibrium enumeration and social cost discrepancy.
//!
//! Payoffs and the Nash property are invariant under permuting players, so
//! profiles are enumerated as facility multisets (non-decreasing vectors).

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::engine::{Cost, Game, GameMode};
use crate::error::{Error, Result};
use crate::graph::GameInstance;
use crate::pool;
use crate::rational::{self, Rational};

/// Default cap on (profile, deviation) checks.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

/// `C(m + k - 1, k)`, the number of size-`k` multisets over `m` items.
pub fn multiset_count(m: usize, k: usize) -> u128 {
    if m == 0 {
        return u128::from(k == 0);
    }
    let (top, k) = ((m + k - 1) as u128, k as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// Size-`k` multisets over `items`, in lexicographic order of positions.
#[derive(Clone, Debug)]
pub struct Multisets {
    items: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Multisets {
    pub fn new(items: &[usize], k: usize) -> Self {
        Multisets {
            items: items.to_vec(),
            idx: vec![0; k],
            done: items.is_empty() && k > 0,
        }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let last = self.items.len().saturating_sub(1);
        match self.idx.iter().rposition(|&i| i < last) {
            Some(p) => {
                let next = self.idx[p] + 1;
                self.idx[p..].iter_mut().for_each(|x| *x = next);
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Streams every facility multiset of the instance, refusing when there
/// are more than `budget` of them.
pub fn enumerate_profiles(instance: &GameInstance, budget: u64) -> Result<Multisets> {
    let count = multiset_count(instance.facilities().len(), instance.k());
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: count,
            budget,
        });
    }
    Ok(Multisets::new(instance.facilities(), instance.k()))
}

/// Estimated (profile, deviation) checks for an exhaustive Nash scan.
pub fn required_checks(instance: &GameInstance) -> u128 {
    let u = instance.facilities().len();
    multiset_count(u, instance.k()) * u as u128 * instance.k() as u128
}

fn check_budget(instance: &GameInstance, budget: u64) -> Result<Vec<Vec<usize>>> {
    let required = required_checks(instance);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(Multisets::new(instance.facilities(), instance.k()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquilibriumEntry {
    pub profile: Vec<usize>,
    #[serde(with = "rational::vec_as_string")]
    pub payoffs: Vec<Rational>,
    pub cost: Cost,
}

/// Worst-to-best equilibrium cost ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    /// No equilibrium exists.
    Undefined,
    Infinite,
    Finite(Rational),
}

impl Discrepancy {
    pub fn from_costs(min: Option<Cost>, max: Option<Cost>) -> Self {
        match (min, max) {
            (Some(Cost::Finite(lo)), Some(Cost::Finite(hi))) => {
                Discrepancy::Finite(Rational::new(hi as i64, lo as i64))
            }
            (Some(_), Some(_)) => Discrepancy::Infinite,
            _ => Discrepancy::Undefined,
        }
    }
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Discrepancy::Undefined => f.write_str("undefined"),
            Discrepancy::Infinite => f.write_str("inf"),
            Discrepancy::Finite(r) => f.write_str(&rational::to_string(r)),
        }
    }
}

impl Serialize for Discrepancy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Discrepancy::Undefined => s.serialize_none(),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquilibriumReport {
    pub mode: GameMode,
    pub profiles_checked: u64,
    pub equilibria: Vec<EquilibriumEntry>,
    pub min_cost: Option<Cost>,
    pub max_cost: Option<Cost>,
    pub discrepancy: Discrepancy,
}

impl EquilibriumReport {
    pub fn count(&self) -> usize {
        self.equilibria.len()
    }
}

/// Every equilibrium of the game, as facility multisets.
pub fn enumerate_equilibria(
    game: &Game,
    mode: GameMode,
    opts: SearchOptions,
) -> Result<EquilibriumReport> {
    let profiles = check_budget(game.instance(), opts.budget)?;
    let found: Vec<Vec<usize>> = pool::install(opts.threads, || {
        profiles
            .par_iter()
            .filter(|p| game.is_nash(p, mode))
            .cloned()
            .collect()
    });
    let equilibria: Vec<EquilibriumEntry> = found
        .into_iter()
        .map(|profile| EquilibriumEntry {
            payoffs: game.payoffs(&profile, mode),
            cost: game.social_cost(&profile),
            profile,
        })
        .collect();
    let min_cost = equilibria.iter().map(|e| e.cost).min();
    let max_cost = equilibria.iter().map(|e| e.cost).max();
    Ok(EquilibriumReport {
        mode,
        profiles_checked: profiles.len() as u64,
        discrepancy: Discrepancy::from_costs(min_cost, max_cost),
        equilibria,
        min_cost,
        max_cost,
    })
}

/// First equilibrium in enumeration order, if any.
pub fn find_equilibrium(
    game: &Game,
    mode: GameMode,
    opts: SearchOptions,
) -> Result<Option<Vec<usize>>> {
    let profiles = check_budget(game.instance(), opts.budget)?;
    Ok(pool::install(opts.threads, || {
        profiles
            .par_iter()
            .find_first(|p| game.is_nash(p, mode))
            .cloned()
    }))
}

pub fn nash_exists(game: &Game, mode: GameMode, opts: SearchOptions) -> Result<bool> {
    Ok(find_equilibrium(game, mode, opts)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub profile: Vec<usize>,
    pub player: usize,
    #[serde(with = "rational::as_string")]
    pub payoff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PayoffBoundsCheck {
    #[serde(with = "rational::as_string")]
    pub lower: Rational,
    #[serde(with = "rational::as_string")]
    pub upper: Rational,
    pub violations: Vec<BoundViolation>,
}

impl PayoffBoundsCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `n/2k < p_i < 2n/k` strictly at every reported equilibrium.
/// Only meaningful for connected standard games.
pub fn verify_payoff_bounds(
    report: &EquilibriumReport,
    instance: &GameInstance,
) -> Result<PayoffBoundsCheck> {
    if !instance.is_standard() {
        return Err(Error::InvalidArgument(
            "payoff bounds need a standard instance".into(),
        ));
    }
    if !instance.is_connected() {
        return Err(Error::Disconnected);
    }
    let (n, k) = (instance.n() as i64, instance.k() as i64);
    let lower = Rational::new(n, 2 * k);
    let upper = Rational::new(2 * n, k);
    let violations = report
        .equilibria
        .iter()
        .flat_map(|e| {
            e.payoffs
                .iter()
                .enumerate()
                .filter(|&(_, &payoff)| payoff <= lower || payoff >= upper)
                .map(|(player, &payoff)| BoundViolation {
                    profile: e.profile.clone(),
                    player,
                    payoff,
                })
        })
        .collect();
    Ok(PayoffBoundsCheck {
        lower,
        upper,
        violations,
    })
}
