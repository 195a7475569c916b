//! The 9-vertex two-player game without a pure equilibrium.
//!
//! Wherever one player stands, the other can collect at least 5 of the 9
//! customers, which leaves at most 4 for the first; so no profile is stable.
//! The hardness reduction also needs a placement where the best reply is
//! worth exactly 5, capping what an intruder can take from a lone gadget
//! player standing there (the *anchor*).

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{Game, GameMode};
use crate::equilibria::Multisets;
use crate::error::{Error, Result};
use crate::graph::{GameInstance, Graph, RawInstance};
use crate::pool;
use crate::rational::{self, int, Rational};

pub const GADGET_N: usize = 9;

pub const PREDICATE: &str =
    "connected 9-vertex graph, k=2: every placement of one player admits a best response \
worth >= 5 and some placement admits exactly 5; checked on all 45 multiset profiles";

const BUNDLED: &str = include_str!("../../data/gadget.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub predicate: String,
    pub verified: bool,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetVerdict {
    /// Best-response value of the second player, per placement of the first.
    #[serde(with = "rational::vec_as_string")]
    pub best_reply: Vec<Rational>,
    /// Lowest placement whose best reply is worth exactly 5.
    pub anchor: usize,
    pub profiles_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub graph: Graph,
    pub verdict: GadgetVerdict,
    pub certificate: Certificate,
}

#[derive(Serialize, Deserialize)]
struct GadgetFile {
    #[serde(flatten)]
    instance: RawInstance,
    certificate: Certificate,
}

/// Checks the gadget predicate exhaustively.
pub fn verify_gadget(graph: &Graph) -> Result<GadgetVerdict> {
    let reject = |why: String| Err(Error::GadgetRejected(why));
    if graph.n() != GADGET_N {
        return reject(format!("expected {GADGET_N} vertices, got {}", graph.n()));
    }
    if !graph.is_connected() {
        return reject("graph is disconnected".into());
    }
    let game = Game::new(GameInstance::from_graph(graph.clone(), None, None, 2)?);
    let vertices: Vec<usize> = (0..GADGET_N).collect();
    let mut profiles_checked = 0;
    for profile in Multisets::new(&vertices, 2) {
        profiles_checked += 1;
        if game.is_nash(&profile, GameMode::Shared) {
            return reject(format!("profile {profile:?} is an equilibrium"));
        }
    }
    let best_reply: Vec<Rational> = vertices
        .iter()
        .map(|&p| game.best_responses(&[p, p], 1, GameMode::Shared).value)
        .collect();
    if let Some(p) = best_reply.iter().position(|&v| v < int(5)) {
        return reject(format!(
            "best reply to placement {p} is worth only {}",
            best_reply[p]
        ));
    }
    let Some(anchor) = best_reply.iter().position(|&v| v == int(5)) else {
        return reject("no placement caps the best reply at exactly 5".into());
    };
    Ok(GadgetVerdict {
        best_reply,
        anchor,
        profiles_checked,
    })
}

impl Gadget {
    pub fn new(graph: Graph, seed: Option<u64>, budget: Option<u64>) -> Result<Self> {
        let verdict = verify_gadget(&graph)?;
        Ok(Gadget {
            graph,
            verdict,
            certificate: Certificate {
                predicate: PREDICATE.to_string(),
                verified: true,
                seed,
                budget,
            },
        })
    }

    pub fn anchor(&self) -> usize {
        self.verdict.anchor
    }

    /// Parses a stored gadget and re-verifies it.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GadgetFile = serde_json::from_str(text)?;
        if !file.certificate.verified {
            return Err(Error::GadgetRejected(
                "certificate is not marked verified".into(),
            ));
        }
        let instance = file.instance.into_instance()?;
        if !instance.is_standard() || instance.k() != 2 {
            return Err(Error::GadgetRejected(
                "gadget must be a standard two-player instance".into(),
            ));
        }
        let mut gadget = Gadget::new(
            instance.graph().clone(),
            file.certificate.seed,
            file.certificate.budget,
        )?;
        gadget.certificate.predicate = file.certificate.predicate;
        Ok(gadget)
    }

    pub fn to_json(&self) -> String {
        let instance = GameInstance::from_graph(self.graph.clone(), None, None, 2)
            .expect("nine vertices, two players");
        let file = GadgetFile {
            instance: instance.to_raw(),
            certificate: self.certificate.clone(),
        };
        serde_json::to_string(&file).expect("gadget serialization is infallible")
    }

    /// The gadget shipped with the crate: three triangles joined in a ring.
    pub fn bundled() -> Result<Self> {
        Self::from_json(BUNDLED)
    }
}

/// Candidate `index` of the search stream for `seed`: a uniformly random
/// 9-vertex graph with 8 to 13 edges, kept only if connected.
fn candidate(seed: u64, index: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let m = rng.gen_range(8..=13);
    let pairs: Vec<(usize, usize)> = (0..GADGET_N)
        .flat_map(|u| (u + 1..GADGET_N).map(move |v| (u, v)))
        .collect();
    let mut edges: Vec<(usize, usize)> = index::sample(&mut rng, pairs.len(), m)
        .into_iter()
        .map(|i| pairs[i])
        .collect();
    edges.sort_unstable();
    let graph = Graph::new(GADGET_N, &edges).expect("distinct pairs");
    graph.is_connected().then_some(graph)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSearch {
    pub gadget: Gadget,
    /// Index of the winning candidate in the seed's stream.
    pub candidate: u64,
}

/// Scans candidates `0..budget` of the seed's stream and returns the first
/// that verifies. The winner depends only on `seed`, not on `threads`.
pub fn gadget_search(seed: u64, budget: u64, threads: Option<usize>) -> Result<GadgetSearch> {
    let hit = pool::install(threads, || {
        (0..budget).into_par_iter().find_map_first(|i| {
            candidate(seed, i)
                .filter(|g| verify_gadget(g).is_ok())
                .map(|g| (i, g))
        })
    });
    let (i, graph) = hit.ok_or(Error::SearchExhausted { budget })?;
    Ok(GadgetSearch {
        gadget: Gadget::new(graph, Some(seed), Some(budget))?,
        candidate: i,
    })
}
