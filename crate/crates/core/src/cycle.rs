//! The Voronoi game on the cycle `C_n` in canonical form.
//!
//! A profile on a cycle is determined, up to permuting players, by its
//! occupied facilities `u_0 < u_1 < ... < u_{l-1}` (taken in increasing vertex
//! order), the number of players `c_j` on each, and the gaps `d_j` from
//! `u_j` to `u_{j+1}`. Writing `d_j = 1 + 2 a_j + b_j` with `b_j in {0, 1}`,
//! a player on `u_j` earns
//!
//! ```text
//! b_{j-1} / (c_{j-1} + c_j) + (a_{j-1} + 1 + a_j) / c_j + b_j / (c_j + c_{j+1})
//! ```
//!
//! with indices taken modulo `l`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleProfile {
    pub n: usize,
    /// Occupied vertices `u_j`, increasing.
    pub occupied: Vec<usize>,
    /// `c_j`, players on `u_j`.
    pub counts: Vec<usize>,
    /// `d_j`, edges from `u_j` to `u_{j+1}`.
    pub gaps: Vec<usize>,
    /// `a_j` in `d_j = 1 + 2 a_j + b_j`.
    pub halves: Vec<usize>,
    /// `b_j`, 1 when a vertex sits exactly midway.
    pub parities: Vec<usize>,
    /// Minimum payoff over players.
    #[serde(with = "rational::as_string")]
    pub gamma: Rational,
}

impl CycleProfile {
    pub fn ell(&self) -> usize {
        self.occupied.len()
    }

    pub fn k(&self) -> usize {
        self.counts.iter().sum()
    }

    fn prev(&self, j: usize) -> usize {
        (j + self.ell() - 1) % self.ell()
    }

    fn next(&self, j: usize) -> usize {
        (j + 1) % self.ell()
    }

    /// Players as a sorted position list.
    pub fn positions(&self) -> Vec<usize> {
        self.occupied
            .iter()
            .zip(&self.counts)
            .flat_map(|(&u, &c)| std::iter::repeat_n(u, c))
            .collect()
    }
}

pub fn canonicalize(n: usize, positions: &[usize]) -> Result<CycleProfile> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a cycle needs n >= 3, got {n}"
        )));
    }
    if positions.is_empty() || positions.len() >= n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k < n, got k = {} on n = {n}",
            positions.len()
        )));
    }
    if let Some(&v) = positions.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidProfile(format!("vertex {v} not on C{n}")));
    }
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let mut occupied: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for v in sorted {
        if occupied.last() == Some(&v) {
            *counts.last_mut().unwrap() += 1;
        } else {
            occupied.push(v);
            counts.push(1);
        }
    }
    let ell = occupied.len();
    let gaps: Vec<usize> = (0..ell)
        .map(|j| match (occupied[(j + 1) % ell] + n - occupied[j]) % n {
            0 => n,
            d => d,
        })
        .collect();
    let halves = gaps.iter().map(|d| (d - 1) / 2).collect();
    let parities = gaps.iter().map(|d| (d - 1) % 2).collect();
    let mut profile = CycleProfile {
        n,
        occupied,
        counts,
        gaps,
        halves,
        parities,
        gamma: int(0),
    };
    profile.gamma = cycle_payoffs(&profile)
        .into_iter()
        .min()
        .expect("at least one facility");
    Ok(profile)
}

/// Closed-form payoff of a player on each occupied facility `u_j`.
pub fn cycle_payoffs(p: &CycleProfile) -> Vec<Rational> {
    (0..p.ell())
        .map(|j| {
            let (jm, jp) = (p.prev(j), p.next(j));
            let (c, cm, cp) = (p.counts[j] as i64, p.counts[jm] as i64, p.counts[jp] as i64);
            Rational::new(p.parities[jm] as i64, cm + c)
                + Rational::new((p.halves[jm] + 1 + p.halves[j]) as i64, c)
                + Rational::new(p.parities[j] as i64, c + cp)
        })
        .collect()
}

/// Closed-form payoffs listed per player, in `positions` order.
pub fn player_payoffs(p: &CycleProfile, positions: &[usize]) -> Vec<Rational> {
    let per_facility = cycle_payoffs(p);
    positions
        .iter()
        .map(|v| per_facility[p.occupied.binary_search(v).expect("position is occupied")])
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// `c_j <= 2`.
    StackSize,
    /// `d_j <= 2 gamma`.
    GapLength,
    /// A lone player between two gaps of length `2 gamma` needs stacks of
    /// two on both sides.
    TightGaps,
    /// Occupancy `(2, 1, 1)` needs `d_{j-1}` odd; `(1, 1, 2)` needs `d_j` odd.
    OddGap,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::StackSize => "(i)",
            Condition::GapLength => "(ii)",
            Condition::TightGaps => "(iii)",
            Condition::OddGap => "(iv)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub condition: Condition,
    pub index: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.condition, self.index)
    }
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Verdict {
    pub nash: bool,
    pub violations: Vec<Violation>,
}

/// Evaluates the four-condition equilibrium test for cycles.
///
/// This is a direct transcription of the conditions. It does not agree with
/// the exhaustive check everywhere: co-location deviations (a lone player
/// joining a neighbouring facility) are not covered, and condition (iii)
/// rejects some genuine equilibria such as `C9` with players on `0, 3, 6, 6`.
pub fn lemma2_is_nash(p: &CycleProfile) -> Lemma2Verdict {
    let two_gamma = p.gamma * 2;
    let mut violations = Vec::new();
    for j in 0..p.ell() {
        let (jm, jp) = (p.prev(j), p.next(j));
        let (c, cm, cp) = (p.counts[j], p.counts[jm], p.counts[jp]);
        let (d, dm) = (p.gaps[j], p.gaps[jm]);
        let mut flag = |condition| {
            violations.push(Violation {
                condition,
                index: j,
            })
        };
        if c > 2 {
            flag(Condition::StackSize);
        }
        if int(d as i64) > two_gamma {
            flag(Condition::GapLength);
        }
        if c == 1
            && int(dm as i64) == two_gamma
            && int(d as i64) == two_gamma
            && !(cm == 2 && cp == 2)
        {
            flag(Condition::TightGaps);
        }
        let left = cm == 2 && c == 1 && cp == 1 && dm % 2 == 0;
        let right = cm == 1 && c == 1 && cp == 2 && d % 2 == 0;
        if left || right {
            flag(Condition::OddGap);
        }
    }
    violations.sort();
    Lemma2Verdict {
        nash: violations.is_empty(),
        violations,
    }
}

/// One player leaves facility `u_from` for the vertex `offset` steps after
/// `u_gap` inside gap `gap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relocation {
    pub from: usize,
    pub gap: usize,
    pub offset: usize,
}

impl Relocation {
    pub fn target(&self, p: &CycleProfile) -> usize {
        (p.occupied[self.gap] + self.offset) % p.n
    }

    /// Sorted positions after the move.
    pub fn apply(&self, p: &CycleProfile) -> Vec<usize> {
        let mut pos = p.positions();
        let at = pos
            .iter()
            .position(|&v| v == p.occupied[self.from])
            .expect("occupied");
        pos[at] = self.target(p);
        pos.sort_unstable();
        pos
    }
}

/// Share of the customers strictly between the mover and a facility `s`
/// steps away holding `others` players.
fn half_interval(s: usize, others: usize) -> Rational {
    let between = s - 1;
    int((between / 2) as i64) + Rational::new((between % 2) as i64, others as i64 + 1)
}

/// Payoff of the relocated player, in closed form.
///
/// Walking away from the target in each direction, the first facility that
/// still holds a player after the move sits `s` steps away with `L` players;
/// the mover earns `1 + h(s_left, L_left) + h(s_right, L_right)` where
/// `h(s, L) = floor((s - 1) / 2) + [s even] / (L + 1)`.
pub fn appendix_move_payoff(p: &CycleProfile, mv: Relocation) -> Result<Rational> {
    let ell = p.ell();
    if mv.from >= ell || mv.gap >= ell {
        return Err(Error::InvalidArgument(format!(
            "facility index out of range 0..{ell}"
        )));
    }
    if mv.offset == 0 || mv.offset >= p.gaps[mv.gap] {
        return Err(Error::InvalidArgument(format!(
            "offset {} does not land on a vacant vertex of gap {} (length {})",
            mv.offset, mv.gap, p.gaps[mv.gap]
        )));
    }
    let remaining = |j: usize| p.counts[j] - usize::from(j == mv.from);
    if (0..ell).all(|j| remaining(j) == 0) {
        return Ok(int(p.n as i64));
    }
    // backwards from the target
    let mut j = mv.gap;
    let mut left = mv.offset;
    while remaining(j) == 0 {
        j = p.prev(j);
        left += p.gaps[j];
    }
    let left_count = remaining(j);
    // forwards
    let mut j = p.next(mv.gap);
    let mut right = p.gaps[mv.gap] - mv.offset;
    while remaining(j) == 0 {
        right += p.gaps[j];
        j = p.next(j);
    }
    let right_count = remaining(j);
    Ok(int(1) + half_interval(left, left_count) + half_interval(right, right_count))
}
