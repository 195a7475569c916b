//! Star partitions and the proximity checks between two equilibria.
//!
//! A star is a vertex set of size at least two with a center adjacent to
//! every other member. Any connected graph on two or more vertices can be
//! partitioned into stars: repeatedly take a pendant edge `(u, v)` (or the
//! smallest edge when there is none), together with every vertex whose
//! remaining neighbors all lie in `{u, v}`.

use serde::Serialize;

use crate::engine::{Game, GameMode};
use crate::error::{Error, Result};
use crate::ext::Extended;
use crate::graph::{Distance, Graph};
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    /// Sorted, includes the center.
    pub members: Vec<usize>,
}

pub fn is_star(graph: &Graph, set: &[usize]) -> bool {
    set.len() >= 2
        && set
            .iter()
            .any(|&c| set.iter().all(|&v| v == c || graph.has_edge(c, v)))
}

/// Partitions a connected graph into stars.
///
/// Pendant vertices are processed first, smallest id first; otherwise the
/// lexicographically smallest remaining edge is taken. Fails on graphs with
/// fewer than two vertices or more than one component.
pub fn star_partition(graph: &Graph) -> Result<Vec<Star>> {
    let n = graph.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "a star partition needs at least two vertices".into(),
        ));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut remaining = n;
    let mut stars = Vec::new();

    while remaining > 0 {
        let alive_neighbors = |v: usize, alive: &[bool]| {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| alive[w])
                .collect::<Vec<_>>()
        };
        let (u, v, center) = match (0..n).find(|&u| alive[u] && degree[u] == 1) {
            Some(u) => {
                let v = alive_neighbors(u, &alive)[0];
                (u, v, v)
            }
            None => {
                let (u, v) = (0..n)
                    .filter(|&u| alive[u])
                    .find_map(|u| {
                        alive_neighbors(u, &alive)
                            .into_iter()
                            .find(|&v| v > u)
                            .map(|v| (u, v))
                    })
                    .ok_or_else(|| {
                        Error::Verification("residual graph has an isolated vertex".into())
                    })?;
                (u, v, u)
            }
        };
        let mut members = vec![u, v];
        for w in 0..n {
            if alive[w]
                && w != u
                && w != v
                && alive_neighbors(w, &alive).iter().all(|&x| x == u || x == v)
            {
                members.push(w);
            }
        }
        members.sort_unstable();
        for &m in &members {
            alive[m] = false;
            remaining -= 1;
            for &x in graph.neighbors(m) {
                degree[x] -= 1;
            }
        }
        if let Some(w) = (0..n).find(|&w| alive[w] && degree[w] == 0) {
            return Err(Error::Verification(format!(
                "removing {members:?} isolates vertex {w}"
            )));
        }
        stars.push(Star { center, members });
    }
    Ok(stars)
}

/// Disjointness, coverage and the star property.
pub fn check_star_partition(graph: &Graph, stars: &[Star]) -> Result<()> {
    let mut seen = vec![false; graph.n()];
    for star in stars {
        if !star.members.contains(&star.center) || !is_star(graph, &star.members) {
            return Err(Error::Verification(format!("{star:?} is not a star")));
        }
        if star
            .members
            .iter()
            .any(|&m| m != star.center && !graph.has_edge(star.center, m))
        {
            return Err(Error::Verification(format!(
                "center of {star:?} misses a member"
            )));
        }
        for &m in &star.members {
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::Verification(format!("vertex {m} lies in two stars")));
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(Error::Verification(format!("vertex {v} is not covered"))),
        None => Ok(()),
    }
}

/// `sum_v W_v d(v, f)` for a weight vector `0 <= W_v <= 1`.
pub fn restricted_cost(
    game: &Game,
    w: &[Rational],
    profile: &[usize],
) -> Result<Extended<Rational>> {
    if w.len() != game.n() {
        return Err(Error::InvalidArgument(format!(
            "weight vector has length {}, expected {}",
            w.len(),
            game.n()
        )));
    }
    if let Some(v) = w.iter().position(|x| *x < int(0) || *x > int(1)) {
        return Err(Error::InvalidArgument(format!("W[{v}] outside [0, 1]")));
    }
    let mut total = int(0);
    for (v, &wv) in w.iter().enumerate() {
        if wv == int(0) {
            continue;
        }
        match game.customer_distance(v, profile) {
            Distance::Finite(d) => total += wv * int(d as i64),
            Distance::Infinite => return Ok(Extended::Infinite),
        }
    }
    Ok(Extended::Finite(total))
}

/// `r(r - 1) / 2k`, the lower bound on `cost_W(f)` for a star of radius `r`.
pub fn restricted_cost_lower_bound(k: usize, r: u32) -> Rational {
    let r = r as i64;
    Rational::new(r * (r - 1), 2 * k as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    pub star: Star,
    pub radius: u32,
    /// Player of `f'` closest (in max distance) to the star's facilities.
    pub nearest_player: usize,
    pub max_distance: u32,
    pub proximity_ok: bool,
    #[serde(with = "rational::as_string")]
    pub mass: Rational,
    #[serde(with = "rational::as_string")]
    pub cost_f: Rational,
    #[serde(with = "rational::as_string")]
    pub cost_f_prime: Rational,
    pub cost_bound_ok: bool,
    pub lower_bound_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CloseLemmaReport {
    pub stars: Vec<StarCheck>,
}

impl CloseLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.stars
            .iter()
            .all(|s| s.proximity_ok && s.cost_bound_ok && s.lower_bound_ok)
    }
}

/// For each star `A` of a star partition of `H_f`, with `r` the largest cell
/// radius in `A` and `W = sum_{i in A} F_i`, checks that
/// * some player `j` of `f'` has `d(f_i, f'_j) <= 6r` for every `i in A`,
/// * `cost_W(f') <= cost_W(f) + 6r |W|`,
/// * `cost_W(f) >= r(r - 1) / 2k`.
///
/// Both profiles must be equilibria of a connected standard game.
pub fn verify_close_lemma(game: &Game, f: &[usize], f_prime: &[usize]) -> Result<CloseLemmaReport> {
    let inst = game.instance();
    if !inst.is_standard() {
        return Err(Error::InvalidArgument(
            "expected a standard instance".into(),
        ));
    }
    if !inst.is_connected() {
        return Err(Error::Disconnected);
    }
    game.check_profile(f)?;
    game.check_profile(f_prime)?;
    for p in [f, f_prime] {
        if !game.is_nash(p, GameMode::Shared) {
            return Err(Error::NotEquilibrium {
                profile: p.to_vec(),
            });
        }
    }
    let dist = game.distances();
    let partition = game.voronoi_partition(f, GameMode::Shared);
    let h = game.delaunay_graph(f);
    let mut checks = Vec::new();
    for star in star_partition(&h)? {
        let radius = star
            .members
            .iter()
            .map(|&i| game.cell_radius(f, i, GameMode::Shared))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .expect("stars are non-empty");
        let (nearest_player, max_distance) = (0..f_prime.len())
            .map(|j| {
                let worst = star
                    .members
                    .iter()
                    .map(|&i| dist.get(f[i], f_prime[j]).finite().expect("connected"))
                    .max()
                    .expect("stars are non-empty");
                (j, worst)
            })
            .min_by_key(|&(j, worst)| (worst, j))
            .expect("at least one player");
        let w: Vec<Rational> = (0..game.n())
            .map(|v| star.members.iter().map(|&i| partition.shares[i][v]).sum())
            .collect();
        let mass: Rational = w.iter().sum();
        let finite = |c: Extended<Rational>| c.finite().expect("connected graph has finite costs");
        let cost_f = finite(restricted_cost(game, &w, f)?);
        let cost_f_prime = finite(restricted_cost(game, &w, f_prime)?);
        let six_r = int(6 * radius as i64);
        checks.push(StarCheck {
            proximity_ok: max_distance as i64 <= 6 * radius as i64,
            cost_bound_ok: cost_f_prime <= cost_f + six_r * mass,
            lower_bound_ok: cost_f >= restricted_cost_lower_bound(f.len(), radius),
            star,
            radius,
            nearest_player,
            max_distance,
            mass,
            cost_f,
            cost_f_prime,
        });
    }
    Ok(CloseLemmaReport { stars: checks })
}
