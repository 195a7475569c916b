//! Weighted, facility-restricted games as standard games.
//!
//! A vertex of weight `w` gets `w - 1` pendant copies, so every original
//! customer becomes `w` unit customers. Then `k (a + 1)` hub vertices, with
//! `a` the total weight, are joined to every allowed facility: any player
//! outside the facility set loses the hub customers to the others.

use crate::error::Result;
use crate::graph::GameInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub instance: GameInstance,
    /// Original vertices keep their ids `0..n`.
    pub original_n: usize,
    /// First hub vertex; pendants occupy `original_n..hub_start`.
    pub hub_start: usize,
}

impl Expansion {
    pub fn is_hub(&self, v: usize) -> bool {
        v >= self.hub_start
    }
}

pub fn expand_generalized(instance: &GameInstance) -> Result<Expansion> {
    let n = instance.n();
    let k = instance.k();
    let a = instance.total_weight() as usize;
    let mut edges: Vec<(usize, usize)> = instance.graph().edges();
    let mut next = n;
    for u in 0..n {
        for _ in 1..instance.weight(u) {
            edges.push((u, next));
            next += 1;
        }
    }
    let hub_start = next;
    let hubs = k * (a + 1);
    for h in hub_start..hub_start + hubs {
        edges.extend(instance.facilities().iter().map(|&u| (u, h)));
    }
    let expanded = GameInstance::standard(hub_start + hubs, &edges, k)?;
    Ok(Expansion {
        instance: expanded,
        original_n: n,
        hub_start,
    })
}
