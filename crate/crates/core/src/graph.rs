//! Graphs, shortest-path distances and game instances.
//!
//! Vertices are dense ids `0..n`. A [`GameInstance`] is a graph together
//! with positive integer customer weights, the set of vertices players may
//! choose as facilities, and the player count `k`. An instance with unit
//! weights and every vertex allowed is a *standard* game.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ext::Extended;

/// Edge count of a shortest path, or infinity between components.
pub type Distance = Extended<u32>;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(invalid(
                    format!("edges[{idx}]"),
                    format!("vertex id out of range 0..{n} in ({u}, {v})"),
                ));
            }
            if u == v {
                return Err(invalid(
                    format!("edges[{idx}]"),
                    format!("self-loop on {u}"),
                ));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(invalid("edges", format!("duplicate edge ({v}, {})", w[0])));
            }
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Breadth-first distances from `source`.
    pub fn bfs(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Distance::Finite(0);
        queue.push_back((source, 0u32));
        while let Some((u, du)) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == Distance::Infinite {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back((v, du + 1));
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Distance::is_finite)
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(self.bfs(s));
        }
        DistanceMatrix { n, d }
    }
}

/// Dense `n x n` table of shortest-path distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[Distance] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

/// A (possibly generalized) Voronoi game instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameInstance {
    graph: Graph,
    weights: Vec<u64>,
    facilities: Vec<usize>,
    is_facility: Vec<bool>,
    k: usize,
}

impl GameInstance {
    /// Validates and builds an instance; absent weights default to 1 and an
    /// absent facility set to every vertex.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        weights: Option<Vec<u64>>,
        facilities: Option<Vec<usize>>,
        k: usize,
    ) -> Result<Self> {
        let graph = Graph::new(n, edges)?;
        Self::from_graph(graph, weights, facilities, k)
    }

    pub fn standard(n: usize, edges: &[(usize, usize)], k: usize) -> Result<Self> {
        Self::new(n, edges, None, None, k)
    }

    pub fn from_graph(
        graph: Graph,
        weights: Option<Vec<u64>>,
        facilities: Option<Vec<usize>>,
        k: usize,
    ) -> Result<Self> {
        let n = graph.n();
        if k == 0 {
            return Err(invalid("k", "at least one player is required"));
        }
        if k >= n {
            return Err(invalid(
                "k",
                format!("k = {k} must be smaller than n = {n}"),
            ));
        }
        let weights = match weights {
            None => vec![1; n],
            Some(w) => {
                if w.len() != n {
                    return Err(invalid(
                        "weights",
                        format!("length {} does not match n = {n}", w.len()),
                    ));
                }
                if let Some(v) = w.iter().position(|&x| x == 0) {
                    return Err(invalid(format!("weights[{v}]"), "weights must be positive"));
                }
                w
            }
        };
        let facilities = match facilities {
            None => (0..n).collect(),
            Some(mut f) => {
                if f.is_empty() {
                    return Err(invalid("facilities", "facility set is empty"));
                }
                if let Some(&v) = f.iter().find(|&&v| v >= n) {
                    return Err(invalid(
                        "facilities",
                        format!("vertex {v} out of range 0..{n}"),
                    ));
                }
                f.sort_unstable();
                if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
                    return Err(invalid("facilities", format!("duplicate vertex {}", w[0])));
                }
                f
            }
        };
        let mut is_facility = vec![false; n];
        for &v in &facilities {
            is_facility[v] = true;
        }
        Ok(GameInstance {
            graph,
            weights,
            facilities,
            is_facility,
            k,
        })
    }

    /// Same graph, weights and facilities with a different player count.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::from_graph(
            self.graph.clone(),
            Some(self.weights.clone()),
            Some(self.facilities.clone()),
            k,
        )
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn facilities(&self) -> &[usize] {
        &self.facilities
    }

    pub fn is_facility(&self, v: usize) -> bool {
        self.is_facility.get(v).copied().unwrap_or(false)
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn all_facilities(&self) -> bool {
        self.facilities.len() == self.n()
    }

    /// Unit weights and every vertex allowed as a facility.
    pub fn is_standard(&self) -> bool {
        self.has_unit_weights() && self.all_facilities()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn distances(&self) -> DistanceMatrix {
        self.graph.all_pairs_distances()
    }

    /// Parses the JSON instance format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text)?;
        raw.into_instance()
    }

    /// Deterministic single-line JSON. `weights` and `facilities` are
    /// omitted when they hold their default values.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("instance serialization is infallible")
    }

    pub(crate) fn to_raw(&self) -> RawInstance {
        RawInstance {
            n: self.n(),
            edges: self
                .graph
                .edges()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
            weights: (!self.has_unit_weights())
                .then(|| self.weights.iter().map(|&w| w as i64).collect()),
            facilities: (!self.all_facilities()).then(|| self.facilities.clone()),
            k: self.k,
        }
    }
}

/// Wire form of an instance file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct RawInstance {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facilities: Option<Vec<usize>>,
    pub k: usize,
}

impl RawInstance {
    pub fn into_instance(self) -> Result<GameInstance> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let weights = match self.weights {
            None => None,
            Some(w) => {
                if let Some(v) = w.iter().position(|&x| x <= 0) {
                    return Err(invalid(
                        format!("weights[{v}]"),
                        format!("weight {} is not positive", w[v]),
                    ));
                }
                Some(w.into_iter().map(|x| x as u64).collect())
            }
        };
        GameInstance::new(self.n, &edges, weights, self.facilities, self.k)
    }
}

/// Cycle `v_0 v_1 ... v_{n-1} v_0`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a cycle needs n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

pub fn cycle_instance(n: usize, k: usize) -> Result<GameInstance> {
    GameInstance::from_graph(cycle_graph(n)?, None, None, k)
}

/// Path `v_0 - v_1 - ... - v_{n-1}`.
pub fn path_instance(n: usize, k: usize) -> Result<GameInstance> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    GameInstance::standard(n, &edges, k)
}

/// Graphviz rendering of an instance, optionally with a strategy profile.
///
/// Occupied vertices are filled and carry an `xlabel` listing their players;
/// non-unit weights appear as `w=<weight>` in the label, and allowed
/// facilities are drawn as boxes when not every vertex is allowed.
pub fn export_dot(instance: &GameInstance, profile: Option<&[usize]>) -> Result<String> {
    let n = instance.n();
    let mut occupants: Vec<Vec<usize>> = vec![Vec::new(); n];
    if let Some(profile) = profile {
        if profile.len() != instance.k() {
            return Err(Error::InvalidProfile(format!(
                "expected {} entries, got {}",
                instance.k(),
                profile.len()
            )));
        }
        for (player, &v) in profile.iter().enumerate() {
            if !instance.is_facility(v) {
                return Err(Error::InvalidProfile(format!(
                    "player {player} is on vertex {v}, which is not a facility"
                )));
            }
            occupants[v].push(player);
        }
    }
    let mark_facilities = !instance.all_facilities();
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for (v, occ) in occupants.iter().enumerate() {
        let mut label = v.to_string();
        if instance.weight(v) != 1 {
            let _ = write!(label, "\\nw={}", instance.weight(v));
        }
        let mut attrs = vec![format!("label=\"{label}\"")];
        if mark_facilities && instance.is_facility(v) {
            attrs.push("shape=box".into());
        }
        if !occ.is_empty() {
            let players: Vec<String> = occ.iter().map(|p| format!("p{p}")).collect();
            attrs.push("style=filled".into());
            attrs.push("fillcolor=\"#f4a261\"".into());
            attrs.push(format!("xlabel=\"{}\"", players.join(",")));
            if occ.len() > 1 {
                attrs.push(format!("peripheries={}", occ.len()));
            }
        }
        let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
    }
    for (u, v) in instance.graph().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    Ok(out)
}
