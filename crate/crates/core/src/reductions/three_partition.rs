//! 3-Partition instances and their compilation into weighted games.
//!
//! Layout of the compiled game, for `3m` numbers `a_1..a_{3m}`:
//!
//! * vertex `0` is `v_0` with weight 1, and vertex `i` is `v_i` with
//!   weight `a_i c`;
//! * then one vertex `u_{ijk}` of weight 1 per triple `i < j < k`, in
//!   lexicographic order, adjacent to `v_0, v_i, v_j, v_k`;
//! * then the 9 gadget vertices of weight `d`, forming their own component.
//!
//! Facilities are the triple and gadget vertices, and `k = m + 1`.

use serde::{Deserialize, Serialize};

use crate::engine::{Game, GameMode};
use crate::equilibria::{enumerate_equilibria, SearchOptions};
use crate::error::{Error, Result};
use crate::graph::GameInstance;
use crate::rational::{self, int, Rational};

use super::gadget::{Gadget, GADGET_N};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub m: usize,
    pub a: Vec<u64>,
    #[serde(rename = "B", alias = "b")]
    pub b: u64,
}

impl ThreePartitionInstance {
    pub fn new(m: usize, a: Vec<u64>, b: u64) -> Result<Self> {
        let inst = ThreePartitionInstance { m, a, b };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidThreePartition(why));
        if self.m < 2 {
            return bad(format!("m must be at least 2, got {}", self.m));
        }
        if self.a.len() != 3 * self.m {
            return bad(format!(
                "expected {} numbers, got {}",
                3 * self.m,
                self.a.len()
            ));
        }
        if let Some((i, x)) = self
            .a
            .iter()
            .enumerate()
            .find(|(_, &x)| 4 * x <= self.b || 2 * x >= self.b)
        {
            return bad(format!(
                "a[{i}] = {x} is not strictly between B/4 and B/2 for B = {}",
                self.b
            ));
        }
        let sum: u64 = self.a.iter().sum();
        if sum != self.m as u64 * self.b {
            return bad(format!(
                "numbers sum to {sum}, expected m * B = {}",
                self.m as u64 * self.b
            ));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: ThreePartitionInstance = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }
}

/// Exhaustive search for a split into triples summing to `B`. Returns the
/// groups as index triples, each sorted, in order of their smallest index.
pub fn three_partition_oracle(inst: &ThreePartitionInstance) -> Option<Vec<[usize; 3]>> {
    fn go(a: &[u64], b: u64, used: &mut [bool], groups: &mut Vec<[usize; 3]>) -> bool {
        let Some(i) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..a.len() {
            if used[j] || a[i] + a[j] >= b {
                continue;
            }
            used[j] = true;
            for k in j + 1..a.len() {
                if !used[k] && a[i] + a[j] + a[k] == b {
                    used[k] = true;
                    groups.push([i, j, k]);
                    if go(a, b, used, groups) {
                        return true;
                    }
                    groups.pop();
                    used[k] = false;
                }
            }
            used[j] = false;
        }
        used[i] = false;
        false
    }
    let mut used = vec![false; inst.a.len()];
    let mut groups = Vec::new();
    go(&inst.a, inst.b, &mut used, &mut groups).then_some(groups)
}

fn binomial3(n: u64) -> u64 {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionConstants {
    pub c: u64,
    pub d: u64,
}

/// The five strict inequalities the construction relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantChecks {
    /// `5d > Bc - c + c/m`
    pub five_d_lower: bool,
    /// `5d < Bc + c/m`
    pub five_d_upper: bool,
    /// `9d > (3/2)Bc + c/m`
    pub nine_d_lower: bool,
    /// `3d < (3/4)Bc + c/m`
    pub three_d_upper: bool,
    /// `(3/4)Bc + c/(m+1) < 9d`
    pub nine_d_above_split: bool,
}

impl ConstantChecks {
    pub fn all(&self) -> bool {
        self.five_d_lower
            && self.five_d_upper
            && self.nine_d_lower
            && self.three_d_upper
            && self.nine_d_above_split
    }
}

impl ReductionConstants {
    /// `c = C(3m, 3) + 1` and `d = floor((Bc - c + c/m) / 5) + 1`.
    pub fn for_instance(inst: &ThreePartitionInstance) -> Self {
        let m = inst.m as u64;
        let c = binomial3(3 * m) + 1;
        // (Bc - c + c/m) / 5 = ((B - 1) c m + c) / (5 m)
        let d = ((inst.b - 1) * c * m + c) / (5 * m) + 1;
        ReductionConstants { c, d }
    }

    pub fn check(&self, inst: &ThreePartitionInstance) -> ConstantChecks {
        let r = |x: u64| int(x as i64);
        let (b, c, d, m) = (r(inst.b), r(self.c), r(self.d), r(inst.m as u64));
        let bc = b * c;
        let per_group = c / m;
        ConstantChecks {
            five_d_lower: d * 5 > bc - c + per_group,
            five_d_upper: d * 5 < bc + per_group,
            nine_d_lower: d * 9 > bc * Rational::new(3, 2) + per_group,
            three_d_upper: d * 3 < bc * Rational::new(3, 4) + per_group,
            nine_d_above_split: bc * Rational::new(3, 4) + c / (m + 1) < d * 9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionGame {
    pub instance: GameInstance,
    pub constants: ReductionConstants,
    /// Index triples in vertex order; triple `t` sits on vertex `triple_start + t`.
    pub triples: Vec<[usize; 3]>,
    pub triple_start: usize,
    pub gadget_start: usize,
    pub gadget_anchor: usize,
}

impl ReductionGame {
    /// One player on the gadget, the rest on triples covering every index once.
    pub fn is_disjoint_cover(&self, profile: &[usize]) -> bool {
        let in_gadget = profile.iter().filter(|&&v| v >= self.gadget_start).count();
        if in_gadget != 1 {
            return false;
        }
        let mut seen = vec![false; 3 * (profile.len() - 1)];
        profile
            .iter()
            .filter(|&&v| (self.triple_start..self.gadget_start).contains(&v))
            .flat_map(|&v| self.triples[v - self.triple_start])
            .all(|i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn triple_vertex(&self, group: [usize; 3]) -> Option<usize> {
        self.triples
            .binary_search(&group)
            .ok()
            .map(|t| self.triple_start + t)
    }

    /// The profile built from a solution: one player per group, plus one on
    /// the gadget anchor.
    pub fn solution_profile(&self, groups: &[[usize; 3]]) -> Result<Vec<usize>> {
        let mut profile = groups
            .iter()
            .map(|g| {
                let mut g = *g;
                g.sort_unstable();
                self.triple_vertex(g).ok_or_else(|| {
                    Error::InvalidArgument(format!("{g:?} is not a triple of distinct indices"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        profile.push(self.gadget_anchor);
        profile.sort_unstable();
        Ok(profile)
    }
}

pub fn build_3partition_game(
    inst: &ThreePartitionInstance,
    gadget: &Gadget,
) -> Result<ReductionGame> {
    inst.validate()?;
    let gadget_verdict = super::gadget::verify_gadget(&gadget.graph)?;
    let constants = ReductionConstants::for_instance(inst);
    let checks = constants.check(inst);
    if !checks.all() {
        return Err(Error::Verification(format!(
            "reduction constants violate the ordering chain: {checks:?}"
        )));
    }
    let count = inst.a.len();
    let mut weights: Vec<u64> = vec![1];
    weights.extend(inst.a.iter().map(|&x| x * constants.c));
    let triple_start = weights.len();
    let mut triples = Vec::new();
    let mut edges = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            for k in j + 1..count {
                let u = triple_start + triples.len();
                triples.push([i, j, k]);
                edges.extend([(0, u), (1 + i, u), (1 + j, u), (1 + k, u)]);
                weights.push(1);
            }
        }
    }
    let gadget_start = weights.len();
    weights.extend(std::iter::repeat_n(constants.d, GADGET_N));
    edges.extend(
        gadget
            .graph
            .edges()
            .into_iter()
            .map(|(u, v)| (gadget_start + u, gadget_start + v)),
    );
    let facilities: Vec<usize> = (triple_start..gadget_start + GADGET_N).collect();
    let instance = GameInstance::new(
        weights.len(),
        &edges,
        Some(weights),
        Some(facilities),
        inst.m + 1,
    )?;
    Ok(ReductionGame {
        instance,
        constants,
        triples,
        triple_start,
        gadget_start,
        gadget_anchor: gadget_start + gadget_verdict.anchor,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub constants: ReductionConstants,
    pub constant_checks: ConstantChecks,
    pub n: usize,
    pub facilities: usize,
    pub k: usize,
    /// Solution found by the exhaustive 3-Partition search.
    pub partition: Option<Vec<[usize; 3]>>,
    pub nash_exists: bool,
    pub equilibria: usize,
    /// First equilibrium in enumeration order.
    pub equilibrium: Option<Vec<usize>>,
    #[serde(with = "opt_rationals")]
    pub equilibrium_payoffs: Option<Vec<Rational>>,
    /// First equilibrium with one player on the gadget and the others on
    /// pairwise disjoint triples.
    pub disjoint_equilibrium: Option<Vec<usize>>,
    pub agree: bool,
}

mod opt_rationals {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_seq(v.iter().map(super::rational::to_string)),
            None => s.serialize_none(),
        }
    }
}

/// Compiles the instance, decides equilibrium existence by enumeration and
/// compares with the exhaustive 3-Partition answer.
///
/// With `m = 2` the compiled game has equilibria whatever the numbers: both
/// group players can stack on a triple summing to at least `B` (or share
/// elements of overlapping triples), each earning `Bc + c/2`, and no single
/// move does better. `disjoint_equilibrium` singles out the equilibria
/// shaped like a solution.
pub fn reduction_roundtrip(
    inst: &ThreePartitionInstance,
    gadget: &Gadget,
    opts: SearchOptions,
) -> Result<RoundtripReport> {
    let built = build_3partition_game(inst, gadget)?;
    let partition = three_partition_oracle(inst);
    let game = Game::new(built.instance.clone());
    let report = enumerate_equilibria(&game, GameMode::Shared, opts)?;
    let first = report.equilibria.first();
    let equilibrium = first.map(|e| e.profile.clone());
    let equilibrium_payoffs = first.map(|e| e.payoffs.clone());
    let disjoint_equilibrium = report
        .equilibria
        .iter()
        .find(|e| built.is_disjoint_cover(&e.profile))
        .map(|e| e.profile.clone());
    let nash_exists = equilibrium.is_some();
    Ok(RoundtripReport {
        constants: built.constants,
        constant_checks: built.constants.check(inst),
        n: built.instance.n(),
        facilities: built.instance.facilities().len(),
        k: built.instance.k(),
        agree: nash_exists == partition.is_some(),
        partition,
        nash_exists,
        equilibria: report.count(),
        equilibrium,
        equilibrium_payoffs,
        disjoint_equilibrium,
    })
}
