//! Best-response dynamics, move graphs and the gap-multiset potential.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{Game, GameMode};
use crate::error::{Error, Result};
use crate::graph::{cycle_instance, GameInstance};
use crate::pool;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    #[default]
    LowestIndex,
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    #[default]
    LowestVertex,
    Random,
}

/// How an unhappy player and its new vertex are picked each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    pub selection: Selection,
    pub tie_break: TieBreak,
    pub seed: u64,
    pub max_steps: usize,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            selection: Selection::LowestIndex,
            tie_break: TieBreak::LowestVertex,
            seed: 0,
            max_steps: 10_000,
        }
    }
}

impl Policy {
    pub fn is_deterministic(&self) -> bool {
        self.selection == Selection::LowestIndex && self.tie_break == TieBreak::LowestVertex
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub step: usize,
    pub player: usize,
    pub from: usize,
    pub to: usize,
    #[serde(with = "rational::as_string")]
    pub payoff_before: Rational,
    #[serde(with = "rational::as_string")]
    pub payoff_after: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Outcome {
    Converged {
        profile: Vec<usize>,
        steps: usize,
    },
    /// Repeating states; the first and last entries are equal.
    Cycled {
        states: Vec<Vec<usize>>,
    },
    Exhausted {
        max_steps: usize,
        profile: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicRun {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub trace: Vec<MoveRecord>,
}

/// Runs best-response dynamics from `start`.
///
/// Under a deterministic policy the next state is a function of the current
/// one, so the first repeated state closes a cycle. Randomized runs stop at
/// a fixed point or after `max_steps`.
pub fn run_dynamic(
    game: &Game,
    start: &[usize],
    mode: GameMode,
    policy: Policy,
) -> Result<DynamicRun> {
    game.check_profile(start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut profile = start.to_vec();
    let mut trace = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut history = vec![profile.clone()];
    let detect = policy.is_deterministic();
    for step in 0..policy.max_steps {
        if detect {
            if let Some(&first) = seen.get(&profile) {
                return Ok(DynamicRun {
                    outcome: Outcome::Cycled {
                        states: history[first..].to_vec(),
                    },
                    trace,
                });
            }
            seen.insert(profile.clone(), step);
        }
        let mut unhappy = Vec::new();
        for i in 0..profile.len() {
            let current = game.payoff_of(&profile, i, mode);
            let br = game.best_responses(&profile, i, mode);
            if br.value > current {
                unhappy.push((i, current, br));
                if policy.selection == Selection::LowestIndex {
                    break;
                }
            }
        }
        let pick = match policy.selection {
            Selection::LowestIndex => unhappy.first(),
            Selection::Random => unhappy.choose(&mut rng),
        };
        let Some((player, before, br)) = pick else {
            return Ok(DynamicRun {
                outcome: Outcome::Converged {
                    profile,
                    steps: step,
                },
                trace,
            });
        };
        let to = match policy.tie_break {
            TieBreak::LowestVertex => br.vertices[0],
            TieBreak::Random => *br
                .vertices
                .choose(&mut rng)
                .expect("best responses are non-empty"),
        };
        trace.push(MoveRecord {
            step: step + 1,
            player: *player,
            from: profile[*player],
            to,
            payoff_before: *before,
            payoff_after: br.value,
        });
        profile[*player] = to;
        history.push(profile.clone());
    }
    if game.is_nash(&profile, mode) {
        return Ok(DynamicRun {
            outcome: Outcome::Converged {
                profile,
                steps: policy.max_steps,
            },
            trace,
        });
    }
    Ok(DynamicRun {
        outcome: Outcome::Exhausted {
            max_steps: policy.max_steps,
            profile,
        },
        trace,
    })
}

/// Every best-response move between ordered profiles.
///
/// Node `x` encodes the profile whose entries are the base-`|U|` digits of
/// `x`, most significant first, mapped through the sorted facility list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveGraph {
    facilities: Vec<usize>,
    k: usize,
    /// `(player, successor)` pairs per node, sorted.
    out: Vec<Vec<(usize, usize)>>,
}

impl MoveGraph {
    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn profile(&self, node: usize) -> Vec<usize> {
        let m = self.facilities.len();
        let mut digits = vec![0; self.k];
        let mut x = node;
        for slot in digits.iter_mut().rev() {
            *slot = self.facilities[x % m];
            x /= m;
        }
        digits
    }

    pub fn node(&self, profile: &[usize]) -> Option<usize> {
        if profile.len() != self.k {
            return None;
        }
        let m = self.facilities.len();
        profile.iter().try_fold(0usize, |acc, v| {
            self.facilities.binary_search(v).ok().map(|d| acc * m + d)
        })
    }

    pub fn successors(&self, node: usize) -> &[(usize, usize)] {
        &self.out[node]
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.out[node].len()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&x| self.out[x].is_empty())
            .collect()
    }

    /// A directed cycle reachable from `starts` (every node when `None`),
    /// as a node sequence whose first and last entries coincide.
    pub fn find_cycle(&self, starts: Option<&[usize]>) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let all: Vec<usize>;
        let starts = match starts {
            Some(s) => s,
            None => {
                all = (0..self.node_count()).collect();
                &all
            }
        };
        let mut color = vec![WHITE; self.node_count()];
        for &root in starts {
            if color[root] != WHITE {
                continue;
            }
            // (node, next successor index)
            let mut stack = vec![(root, 0usize)];
            color[root] = GREY;
            while let Some(&mut (x, ref mut i)) = stack.last_mut() {
                if let Some(&(_, y)) = self.out[x].get(*i) {
                    *i += 1;
                    match color[y] {
                        WHITE => {
                            color[y] = GREY;
                            stack.push((y, 0));
                        }
                        GREY => {
                            let at = stack
                                .iter()
                                .position(|&(z, _)| z == y)
                                .expect("grey node is on the stack");
                            let mut cycle: Vec<usize> =
                                stack[at..].iter().map(|&(z, _)| z).collect();
                            cycle.push(y);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[x] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// `|U|^k` profiles times `k |U|` deviations each.
pub fn move_graph_checks(instance: &GameInstance) -> u128 {
    let m = instance.facilities().len() as u128;
    let k = instance.k() as u32;
    m.checked_pow(k)
        .and_then(|nodes| nodes.checked_mul(m * k as u128))
        .unwrap_or(u128::MAX)
}

pub fn br_move_graph(
    game: &Game,
    mode: GameMode,
    budget: u64,
    threads: Option<usize>,
) -> Result<MoveGraph> {
    let required = move_graph_checks(game.instance());
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut graph = MoveGraph {
        facilities: game.facilities().to_vec(),
        k: game.k(),
        out: Vec::new(),
    };
    let nodes = game.facilities().len().pow(game.k() as u32);
    let out = pool::install(threads, || {
        (0..nodes)
            .into_par_iter()
            .map(|x| {
                let profile = graph.profile(x);
                let mut succ = Vec::new();
                for i in 0..profile.len() {
                    let current = game.payoff_of(&profile, i, mode);
                    let br = game.best_responses(&profile, i, mode);
                    if br.value > current {
                        let mut next = profile.clone();
                        for &u in &br.vertices {
                            next[i] = u;
                            succ.push((i, graph.node(&next).expect("facility profile")));
                        }
                    }
                }
                succ
            })
            .collect()
    });
    graph.out = out;
    Ok(graph)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleMove {
    pub player: usize,
    pub from: usize,
    pub to: usize,
}

/// A cycle instance with a closed walk of best-response moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrCycleWitness {
    pub n: usize,
    pub k: usize,
    pub mode: GameMode,
    /// Visited profiles; the first and last coincide.
    pub states: Vec<Vec<usize>>,
    pub moves: Vec<CycleMove>,
}

impl BrCycleWitness {
    pub fn instance(&self) -> GameInstance {
        cycle_instance(self.n, self.k).expect("witness sizes are valid")
    }
}

/// Checks that every step of `states` moves one unhappy player to one of
/// its best responses, and that the walk is closed.
pub fn verify_br_walk(
    game: &Game,
    mode: GameMode,
    states: &[Vec<usize>],
) -> Result<Vec<CycleMove>> {
    if states.len() < 2 || states.first() != states.last() {
        return Err(Error::Verification(
            "walk must be closed with at least one move".into(),
        ));
    }
    let mut moves = Vec::new();
    for (s, pair) in states.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        game.check_profile(a)?;
        let changed: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        let [player] = changed[..] else {
            return Err(Error::Verification(format!(
                "step {s} changes {} players",
                changed.len()
            )));
        };
        let br = game.best_responses(a, player, mode);
        if br.value <= game.payoff_of(a, player, mode) || !br.vertices.contains(&b[player]) {
            return Err(Error::Verification(format!(
                "step {s}: player {player} moving {} -> {} is not an improving best response",
                a[player], b[player]
            )));
        }
        moves.push(CycleMove {
            player,
            from: a[player],
            to: b[player],
        });
    }
    Ok(moves)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleSearch {
    pub mode: GameMode,
    /// Only explore profiles reachable from starts with distinct facilities.
    pub distinct_starts: bool,
    pub budget: u64,
    pub threads: Option<usize>,
}

/// Scans cycles `C_n` for `n` in `ns` and `k` in `ks` (smallest first) for a
/// reachable directed cycle in the best-response move graph. Sizes whose
/// move graph exceeds the budget are skipped.
pub fn find_br_cycle(
    ns: std::ops::RangeInclusive<usize>,
    ks: std::ops::RangeInclusive<usize>,
    search: CycleSearch,
) -> Result<Option<BrCycleWitness>> {
    for n in ns.filter(|&n| n >= 3) {
        for k in ks.clone().filter(|&k| k >= 1 && k < n) {
            let game = Game::new(cycle_instance(n, k)?);
            let graph = match br_move_graph(&game, search.mode, search.budget, search.threads) {
                Ok(g) => g,
                Err(Error::BudgetExceeded { .. }) => {
                    log::debug!("skipping C{n} with k = {k}: move graph over budget");
                    continue;
                }
                Err(e) => return Err(e),
            };
            let starts: Option<Vec<usize>> = search.distinct_starts.then(|| {
                (0..graph.node_count())
                    .filter(|&x| {
                        let mut p = graph.profile(x);
                        p.sort_unstable();
                        p.windows(2).all(|w| w[0] != w[1])
                    })
                    .collect()
            });
            if let Some(cycle) = graph.find_cycle(starts.as_deref()) {
                let states: Vec<Vec<usize>> = cycle.iter().map(|&x| graph.profile(x)).collect();
                let moves = verify_br_walk(&game, search.mode, &states)?;
                return Ok(Some(BrCycleWitness {
                    n,
                    k,
                    mode: search.mode,
                    states,
                    moves,
                }));
            }
        }
    }
    Ok(None)
}

/// Gap lengths between consecutive occupied vertices on a cycle, stored in
/// non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GapMultiset(Vec<usize>);

impl GapMultiset {
    pub fn new(mut gaps: Vec<usize>) -> Self {
        gaps.sort_unstable_by(|a, b| b.cmp(a));
        GapMultiset(gaps)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `Greater` when `a` dominates `b`: fewer elements dominate, and equal-size
/// multisets compare by their largest elements in turn.
pub fn dominance_compare(a: &GapMultiset, b: &GapMultiset) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.0.cmp(&b.0))
}

impl PartialOrd for GapMultiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GapMultiset {
    fn cmp(&self, other: &Self) -> Ordering {
        dominance_compare(self, other)
    }
}

/// True when the instance is `C_n` with edges `{i, i + 1 mod n}`.
pub fn is_cycle_instance(instance: &GameInstance) -> bool {
    let n = instance.n();
    n >= 3
        && instance.graph().edge_count() == n
        && (0..n).all(|i| instance.graph().has_edge(i, (i + 1) % n))
}

/// The gap multiset of a cycle profile with pairwise distinct facilities.
pub fn potential(instance: &GameInstance, profile: &[usize]) -> Result<GapMultiset> {
    if !is_cycle_instance(instance) {
        return Err(Error::InvalidArgument(
            "potential is defined on cycle instances".into(),
        ));
    }
    let n = instance.n();
    let mut sorted = profile.to_vec();
    sorted.sort_unstable();
    if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidProfile(format!("vertex {v} not on C{n}")));
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidProfile(format!(
            "facility {} is shared",
            w[0]
        )));
    }
    let l = sorted.len();
    let gaps = (0..l)
        .map(|j| match (sorted[(j + 1) % l] + n - sorted[j]) % n {
            0 => n,
            d => d,
        })
        .collect();
    Ok(GapMultiset::new(gaps))
}

/// Checks that the potential strictly decreases along a trace that starts
/// from `start` with distinct facilities.
pub fn check_potential_descent(
    instance: &GameInstance,
    start: &[usize],
    trace: &[MoveRecord],
) -> Result<()> {
    let mut profile = start.to_vec();
    let mut before = potential(instance, &profile)?;
    for m in trace {
        profile[m.player] = m.to;
        let after = potential(instance, &profile)?;
        if dominance_compare(&before, &after) != Ordering::Greater {
            return Err(Error::Verification(format!(
                "step {}: potential {:?} does not dominate {:?}",
                m.step,
                before.values(),
                after.values()
            )));
        }
        before = after;
    }
    Ok(())
}
