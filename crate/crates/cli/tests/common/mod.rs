//! Brute-force reference implementation shared by the integration tests.
//! Deliberately naive: per-source BFS, explicit tie counting, and every
//! deviation scored from scratch.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;
use std::process::Command;

use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub struct Net {
    pub adj: Vec<Vec<usize>>,
    pub weights: Vec<u64>,
    pub facilities: Vec<usize>,
    pub k: usize,
}

impl Net {
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        weights: Vec<u64>,
        facilities: Vec<usize>,
        k: usize,
    ) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Net {
            adj,
            weights,
            facilities,
            k,
        }
    }

    pub fn standard(n: usize, edges: &[(usize, usize)], k: usize) -> Self {
        Self::new(n, edges, vec![1; n], (0..n).collect(), k)
    }

    pub fn cycle(n: usize, k: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::standard(n, &edges, k)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; self.n()];
        d[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[u] {
                if d[v].is_none() {
                    d[v] = Some(d[u].unwrap() + 1);
                    q.push_back(v);
                }
            }
        }
        d
    }

    pub fn payoffs(&self, profile: &[usize], disjoint: bool) -> Vec<Q> {
        let dist: Vec<_> = profile.iter().map(|&f| self.bfs(f)).collect();
        let mut pay = vec![Q::from_integer(0); profile.len()];
        for v in 0..self.n() {
            let Some(best) = dist.iter().filter_map(|d| d[v]).min() else {
                continue;
            };
            let winners: Vec<usize> = (0..profile.len())
                .filter(|&i| dist[i][v] == Some(best))
                .collect();
            for &i in &winners {
                pay[i] += Q::new(self.weights[v] as i64, winners.len() as i64);
            }
        }
        if disjoint {
            for i in 0..profile.len() {
                if profile.iter().filter(|&&f| f == profile[i]).count() > 1 {
                    pay[i] = Q::from_integer(0);
                }
            }
        }
        pay
    }

    /// Best deviation value and the vertices achieving it.
    pub fn best_response(
        &self,
        profile: &[usize],
        player: usize,
        disjoint: bool,
    ) -> (Q, Vec<usize>) {
        let mut best = None::<Q>;
        let mut at = Vec::new();
        for &u in &self.facilities {
            let mut p = profile.to_vec();
            p[player] = u;
            let val = self.payoffs(&p, disjoint)[player];
            match best {
                Some(b) if val < b => {}
                Some(b) if val == b => at.push(u),
                _ => {
                    best = Some(val);
                    at = vec![u];
                }
            }
        }
        (best.unwrap(), at)
    }

    pub fn is_nash(&self, profile: &[usize], disjoint: bool) -> bool {
        let base = self.payoffs(profile, disjoint);
        (0..profile.len()).all(|i| self.best_response(profile, i, disjoint).0 <= base[i])
    }

    pub fn social_cost(&self, profile: &[usize]) -> Option<u64> {
        let dist: Vec<_> = profile.iter().map(|&f| self.bfs(f)).collect();
        (0..self.n())
            .map(|v| {
                dist.iter()
                    .filter_map(|d| d[v])
                    .min()
                    .map(|d| d as u64 * self.weights[v])
            })
            .sum()
    }

    /// All sorted facility multisets of size k.
    pub fn multisets(&self) -> Vec<Vec<usize>> {
        fn rec(
            items: &[usize],
            k: usize,
            from: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in from..items.len() {
                cur.push(items[i]);
                rec(items, k, i, cur, out);
                cur.pop();
            }
        }
        let mut items = self.facilities.clone();
        items.sort_unstable();
        let mut out = Vec::new();
        rec(&items, self.k, 0, &mut Vec::new(), &mut out);
        out
    }

    pub fn equilibria(&self, disjoint: bool) -> Vec<Vec<usize>> {
        self.multisets()
            .into_iter()
            .filter(|p| self.is_nash(p, disjoint))
            .collect()
    }
}

pub fn from_instance(inst: &vgg_core::GameInstance) -> Net {
    Net::new(
        inst.n(),
        &inst.graph().edges(),
        inst.weights().to_vec(),
        inst.facilities().to_vec(),
        inst.k(),
    )
}

pub fn to_q(r: &vgg_core::Rational) -> Q {
    Q::new(*r.numer(), *r.denom())
}

/// Clockwise distances between consecutive occupied vertices on a cycle,
/// in decreasing order; a lone facility gets the full length `n`.
pub fn cycle_gaps(n: usize, profile: &[usize]) -> Vec<usize> {
    let mut occ = profile.to_vec();
    occ.sort_unstable();
    occ.dedup();
    let mut gaps: Vec<usize> = (0..occ.len())
        .map(|i| {
            let next = occ[(i + 1) % occ.len()];
            if occ.len() == 1 {
                n
            } else {
                (next + n - occ[i]) % n
            }
        })
        .collect();
    gaps.sort_unstable_by(|a, b| b.cmp(a));
    gaps
}

/// True when `a` strictly dominates `b`: fewer gaps, or as many and
/// lexicographically larger in decreasing order.
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a > b)
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_vgg"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn vgg(args: &[&str]) -> Run {
    let out = Command::new(bin())
        .args(args)
        .env_remove("VGG_BUDGET")
        .output()
        .expect("vgg runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn json(run: &Run) -> serde_json::Value {
    serde_json::from_str(&run.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", run.stdout))
}
