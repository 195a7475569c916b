//! Game semantics: the fractional Voronoi partition, payoffs, best
//! responses and Nash checks.
//!
//! Every customer is shared equally among its closest facilities. A
//! customer that no facility can reach is assigned to nobody. In
//! [`GameMode::Disjoint`] players sharing a facility receive nothing.
//!
//! All payoff arithmetic is exact: a player's payoff is accumulated as
//! integer weight sums bucketed by the number of tied facilities, then
//! folded into a [`Rational`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::Extended;
use crate::graph::{Distance, DistanceMatrix, GameInstance, Graph};
use crate::rational::{int, Rational};

pub type PayoffVector = Vec<Rational>;

/// Weighted social cost, infinite when some customer is unreachable.
pub type Cost = Extended<u64>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameMode {
    /// Co-located players split their cell.
    #[default]
    Shared,
    /// Co-located players gain zero.
    Disjoint,
}

impl std::str::FromStr for GameMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shared" => Ok(GameMode::Shared),
            "disjoint" => Ok(GameMode::Disjoint),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

/// The generalized partition induced by a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoronoiPartition {
    /// `shares[i][v]` is the fraction of customer `v` assigned to player `i`.
    pub shares: Vec<Vec<Rational>>,
    /// Distance from each customer to its closest facility.
    pub customer_distance: Vec<Distance>,
}

impl VoronoiPartition {
    pub fn column_sum(&self, v: usize) -> Rational {
        self.shares.iter().map(|row| row[v]).sum()
    }
}

/// All best responses of one player and the payoff they attain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponse {
    pub vertices: Vec<usize>,
    pub value: Rational,
}

/// An instance paired with its precomputed distance matrix.
#[derive(Clone, Debug)]
pub struct Game {
    instance: GameInstance,
    dist: DistanceMatrix,
}

impl Game {
    pub fn new(instance: GameInstance) -> Self {
        let dist = instance.distances();
        Game { instance, dist }
    }

    pub fn instance(&self) -> &GameInstance {
        &self.instance
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn k(&self) -> usize {
        self.instance.k()
    }

    pub fn facilities(&self) -> &[usize] {
        self.instance.facilities()
    }

    /// Checks length and that every entry is an allowed facility.
    pub fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.k() {
            return Err(Error::InvalidProfile(format!(
                "expected {} entries, got {}",
                self.k(),
                profile.len()
            )));
        }
        if let Some((i, &v)) = profile
            .iter()
            .enumerate()
            .find(|(_, &v)| !self.instance.is_facility(v))
        {
            return Err(Error::InvalidProfile(format!(
                "player {i} is on vertex {v}, which is not an allowed facility"
            )));
        }
        Ok(())
    }

    /// `d(v, f)`, the distance from `v` to its closest facility.
    pub fn customer_distance(&self, v: usize, profile: &[usize]) -> Distance {
        profile
            .iter()
            .map(|&f| self.dist.get(f, v))
            .min()
            .unwrap_or(Distance::Infinite)
    }

    fn co_located(profile: &[usize], player: usize) -> bool {
        let f = profile[player];
        profile
            .iter()
            .enumerate()
            .any(|(j, &g)| j != player && g == f)
    }

    pub fn voronoi_partition(&self, profile: &[usize], mode: GameMode) -> VoronoiPartition {
        let (n, k) = (self.n(), profile.len());
        let mut shares = vec![vec![int(0); n]; k];
        let mut customer_distance = Vec::with_capacity(n);
        for v in 0..n {
            let dv = self.customer_distance(v, profile);
            customer_distance.push(dv);
            if !dv.is_finite() {
                continue;
            }
            let owners: Vec<usize> = (0..k)
                .filter(|&i| self.dist.get(profile[i], v) == dv)
                .collect();
            let share = Rational::new(1, owners.len() as i64);
            for i in owners {
                shares[i][v] = share;
            }
        }
        if mode == GameMode::Disjoint {
            for (i, row) in shares.iter_mut().enumerate() {
                if Self::co_located(profile, i) {
                    row.iter_mut().for_each(|x| *x = int(0));
                }
            }
        }
        VoronoiPartition {
            shares,
            customer_distance,
        }
    }

    /// Payoff of a single player, computed without building the partition.
    pub fn payoff_of(&self, profile: &[usize], player: usize, mode: GameMode) -> Rational {
        if mode == GameMode::Disjoint && Self::co_located(profile, player) {
            return int(0);
        }
        let k = profile.len();
        let own = self.dist.row(profile[player]);
        // bucket[c] = total weight of customers tied among c + 1 facilities
        let mut bucket = vec![0u64; k];
        for (v, &dv) in own.iter().enumerate() {
            let Distance::Finite(d) = dv else { continue };
            let mut ties = 0usize;
            let mut closer = false;
            for &f in profile {
                match self.dist.get(f, v) {
                    Distance::Finite(x) if x < d => {
                        closer = true;
                        break;
                    }
                    Distance::Finite(x) if x == d => ties += 1,
                    _ => {}
                }
            }
            if !closer {
                bucket[ties - 1] += self.instance.weight(v);
            }
        }
        bucket
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(c, &w)| Rational::new(w as i64, c as i64 + 1))
            .sum()
    }

    /// `p_i = sum_v w(v) F_{i,v}` for every player.
    pub fn payoffs(&self, profile: &[usize], mode: GameMode) -> PayoffVector {
        (0..profile.len())
            .map(|i| self.payoff_of(profile, i, mode))
            .collect()
    }

    /// `sum_v w(v) d(v, f)`.
    pub fn social_cost(&self, profile: &[usize]) -> Cost {
        let mut total = 0u64;
        for v in 0..self.n() {
            match self.customer_distance(v, profile) {
                Distance::Finite(d) => total += self.instance.weight(v) * d as u64,
                Distance::Infinite => return Cost::Infinite,
            }
        }
        Cost::Finite(total)
    }

    /// Payoffs `player` would get at each allowed facility, others fixed.
    pub fn deviation_payoffs(
        &self,
        profile: &[usize],
        player: usize,
        mode: GameMode,
    ) -> Vec<(usize, Rational)> {
        let mut trial = profile.to_vec();
        self.facilities()
            .iter()
            .map(|&u| {
                trial[player] = u;
                (u, self.payoff_of(&trial, player, mode))
            })
            .collect()
    }

    pub fn best_responses(&self, profile: &[usize], player: usize, mode: GameMode) -> BestResponse {
        let options = self.deviation_payoffs(profile, player, mode);
        let value = options
            .iter()
            .map(|(_, p)| *p)
            .max()
            .expect("facility set is non-empty");
        BestResponse {
            vertices: options
                .iter()
                .filter(|(_, p)| *p == value)
                .map(|(u, _)| *u)
                .collect(),
            value,
        }
    }

    /// True iff no unilateral deviation strictly improves `player`'s payoff.
    pub fn is_happy(&self, profile: &[usize], player: usize, mode: GameMode) -> bool {
        let current = self.payoff_of(profile, player, mode);
        let mut trial = profile.to_vec();
        self.facilities().iter().all(|&u| {
            trial[player] = u;
            self.payoff_of(&trial, player, mode) <= current
        })
    }

    /// Happiness is checked once per occupied facility: co-located players
    /// face the same deviations from the same payoff.
    pub fn is_nash(&self, profile: &[usize], mode: GameMode) -> bool {
        (0..profile.len())
            .filter(|&i| !profile[..i].contains(&profile[i]))
            .all(|i| self.is_happy(profile, i, mode))
    }

    /// Players owning a positive share of `v` (shared mode).
    fn owners(&self, profile: &[usize], v: usize) -> Vec<usize> {
        let dv = self.customer_distance(v, profile);
        if !dv.is_finite() {
            return Vec::new();
        }
        (0..profile.len())
            .filter(|&i| self.dist.get(profile[i], v) == dv)
            .collect()
    }

    /// Player graph `H_f`: `i ~ j` when their cells share a customer or
    /// contain the two ends of some edge.
    pub fn delaunay_graph(&self, profile: &[usize]) -> Graph {
        let k = profile.len();
        let owners: Vec<Vec<usize>> = (0..self.n()).map(|v| self.owners(profile, v)).collect();
        let mut adj = vec![vec![false; k]; k];
        for list in &owners {
            for &i in list {
                for &j in list {
                    adj[i][j] = true;
                }
            }
        }
        for (v, w) in self.instance.graph().edges() {
            for &i in &owners[v] {
                for &j in &owners[w] {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if adj[i][j] {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(k, &edges).expect("player graph edges are well-formed")
    }

    /// Largest `d(v, f_i)` over customers with a positive share in `i`'s cell.
    pub fn cell_radius(&self, profile: &[usize], player: usize, mode: GameMode) -> Result<u32> {
        if mode == GameMode::Disjoint && Self::co_located(profile, player) {
            return Err(Error::EmptyCell { player });
        }
        let f = profile[player];
        (0..self.n())
            .filter(|&v| self.owners(profile, v).contains(&player))
            .filter_map(|v| self.dist.get(f, v).finite())
            .max()
            .ok_or(Error::EmptyCell { player })
    }
}
