//! Instance families: directed cycles, rotational and Paley tournaments, the
//! tournament-with-pendant-sinks construction, and seeded random digraphs
//! restricted to the classes the solver has guarantees for.
//!
//! Random families draw from a SplitMix64 stream seeded with the spec's
//! 64-bit seed; identical specs give identical digraphs.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::{certify, find_induced_star, GraphClass};
use crate::digraph::{Digraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad residue set: {0}")]
    BadResidueSet(String),
    #[error("tournament not eligible for the sink construction: {0}")]
    NotSinkEligible(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
}

const RETRIES: usize = 64;

/// Seed for the `index`-th derived stream of `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)).next_u64()
}

/// `0 → 1 → … → n-1 → 0`. Fewer than two vertices gives an edgeless graph.
pub fn directed_cycle(n: usize) -> Digraph {
    if n < 2 {
        return Digraph::empty(n);
    }
    Digraph::build(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// `m` disjoint directed 4-cycles on `4i..4i+3`.
pub fn disjoint_c4s(m: usize) -> Digraph {
    Digraph::build(
        4 * m,
        (0..m).flat_map(|c| (0..4).map(move |i| (4 * c + i, 4 * c + (i + 1) % 4))),
    )
    .expect("valid cycles")
}

/// Edge `i → j` iff `(j - i) mod q` is in `residues`.
pub fn rotational_tournament(q: usize, residues: &[usize]) -> Result<Digraph, GenError> {
    if q.is_multiple_of(2) {
        return Err(GenError::BadResidueSet(format!("q = {q} must be odd")));
    }
    let set: HashSet<usize> = residues.iter().map(|r| r % q).collect();
    if set.len() != residues.len() || set.len() != (q - 1) / 2 {
        return Err(GenError::BadResidueSet(format!(
            "need {} distinct residues mod {q}",
            (q - 1) / 2
        )));
    }
    if let Some(r) = set.iter().find(|&&r| r == 0 || set.contains(&(q - r))) {
        return Err(GenError::BadResidueSet(format!(
            "residue {r} clashes with its negation mod {q}"
        )));
    }
    let mut sorted: Vec<usize> = set.into_iter().collect();
    sorted.sort_unstable();
    Ok(Digraph::build(
        q,
        (0..q).flat_map(|i| sorted.iter().map(move |r| (i, (i + r) % q))),
    )
    .expect("valid tournament"))
}

/// Rotational tournament on the quadratic residues mod a prime `q ≡ 3 (mod 4)`.
pub fn paley_tournament(q: usize) -> Result<Digraph, GenError> {
    let prime = q >= 2
        && (2..q)
            .take_while(|p| p * p <= q)
            .all(|p| !q.is_multiple_of(p));
    if !prime || q % 4 != 3 {
        return Err(GenError::BadResidueSet(format!(
            "Paley tournaments need a prime q = 3 mod 4, got {q}"
        )));
    }
    let mut residues: Vec<usize> = (1..q).map(|x| x * x % q).collect();
    residues.sort_unstable();
    residues.dedup();
    rotational_tournament(q, &residues)
}

/// Checks that `t` is a regular tournament with no pair `u, v` where
/// `N⁺(v) = N⁻(u)`.
pub fn check_sink_eligible(t: &Digraph) -> Result<(), GenError> {
    let n = t.n();
    let bad = |msg: String| Err(GenError::NotSinkEligible(msg));
    if n.is_multiple_of(2) {
        return bad(format!("order {n} is even"));
    }
    let half = (n - 1) / 2;
    for u in 0..n {
        if t.out_degree(u) != half || t.in_degree(u) != half {
            return bad(format!("vertex {u} is not regular"));
        }
        for v in u + 1..n {
            if t.has_edge(u, v) == t.has_edge(v, u) {
                return bad(format!("pair ({u}, {v}) is not a tournament pair"));
            }
        }
    }
    for v in 0..n {
        if let Some(u) = (0..n).find(|&u| t.out_neighbors(v) == t.in_neighbors(u)) {
            return bad(format!("N+({v}) = N-({u})"));
        }
    }
    Ok(())
}

/// Appends `k` private sinks to every tournament vertex; sinks of vertex `v`
/// get ids `|T| + v·k .. |T| + (v+1)·k`.
pub fn with_private_sinks(t: &Digraph, k: usize) -> Result<Digraph, GenError> {
    check_sink_eligible(t)?;
    let n = t.n();
    let sinks = (0..n).flat_map(|v| (0..k).map(move |i| (v, n + v * k + i)));
    Ok(Digraph::build(n + n * k, t.edges().chain(sinks)).expect("valid construction"))
}

fn infeasible<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::InfeasibleParams(msg.into()))
}

/// Sourceless digraph with `Δ⁺ ≤ d`: a random derangement gives every vertex
/// one in-edge, then a random number of extra edges is attempted uniformly.
pub fn random_sourceless(
    n: usize,
    d: usize,
    seed: u64,
    oriented: bool,
) -> Result<Digraph, GenError> {
    if n < 2 || d == 0 || (oriented && n < 3) {
        return infeasible(format!(
            "no sourceless digraph for n = {n}, d = {d}, oriented = {oriented}"
        ));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    loop {
        perm.shuffle(&mut rng);
        let fixed = (0..n).any(|i| perm[i] == i);
        let two_cycle = oriented && (0..n).any(|i| perm[perm[i]] == i);
        if !fixed && !two_cycle {
            break;
        }
    }
    let mut builder = EdgeBuilder::new(n);
    for (i, &p) in perm.iter().enumerate() {
        builder.add(i, p);
    }
    let attempts = rng.random_range(0..=n * (d - 1));
    for _ in 0..attempts {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v
            && builder.out_deg[u] < d
            && !builder.has(u, v)
            && !(oriented && builder.has(v, u))
        {
            builder.add(u, v);
        }
    }
    Ok(builder.finish())
}

struct EdgeBuilder {
    edges: Vec<(Vertex, Vertex)>,
    present: HashSet<(Vertex, Vertex)>,
    out_deg: Vec<usize>,
    undirected: Vec<Vec<Vertex>>,
}

impl EdgeBuilder {
    fn new(n: usize) -> Self {
        EdgeBuilder {
            edges: Vec::new(),
            present: HashSet::new(),
            out_deg: vec![0; n],
            undirected: vec![Vec::new(); n],
        }
    }

    fn has(&self, u: Vertex, v: Vertex) -> bool {
        self.present.contains(&(u, v))
    }

    fn add(&mut self, u: Vertex, v: Vertex) {
        if self.present.insert((u, v)) {
            self.edges.push((u, v));
            self.out_deg[u] += 1;
            self.undirected[u].push(v);
            self.undirected[v].push(u);
        }
    }

    /// Whether `v` is within undirected distance `radius` of `u`.
    fn within(&self, u: Vertex, v: Vertex, radius: usize) -> bool {
        let mut dist = std::collections::HashMap::new();
        let mut queue = VecDeque::from([u]);
        dist.insert(u, 0usize);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return true;
            }
            let dx = dist[&x];
            if dx == radius {
                continue;
            }
            for &y in &self.undirected[x] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        false
    }

    fn finish(self) -> Digraph {
        let n = self.out_deg.len();
        Digraph::build(n, self.edges).expect("builder only adds valid edges")
    }

    fn relabeled(self, labels: &[Vertex]) -> Digraph {
        let n = self.out_deg.len();
        Digraph::build(
            n,
            self.edges.into_iter().map(|(u, v)| (labels[u], labels[v])),
        )
        .expect("builder only adds valid edges")
    }
}

/// Sourceless orientation of a random graph of girth at least 7 with
/// `Δ⁺ ≤ d`: directed cycles of length ≥ 7 as a core, random out-trees hung
/// off it, then extra edges between vertices at undirected distance ≥ 6.
/// Below 7 vertices the core is a single directed cycle.
pub fn random_short_cycle_free(n: usize, d: usize, seed: u64) -> Result<Digraph, GenError> {
    if n < 4 || d == 0 {
        return infeasible(format!(
            "no short-cycle-free sourceless orientation for n = {n}, d = {d}"
        ));
    }
    for attempt in 0..RETRIES {
        let mut rng = SplitMix64::seed_from_u64(derive_seed(seed, attempt as u64));
        let core = if n < 7 || d == 1 {
            n
        } else {
            rng.random_range(7..=(n / 2).max(7))
        };
        let mut labels: Vec<Vertex> = (0..n).collect();
        labels.shuffle(&mut rng);

        let mut b = EdgeBuilder::new(n);
        let mut start = 0;
        while start < core {
            let left = core - start;
            let len = if left < 14 {
                left
            } else {
                rng.random_range(7..=left - 7)
            };
            for i in 0..len {
                b.add(start + i, start + (i + 1) % len);
            }
            start += len;
        }
        let mut open: Vec<Vertex> = (0..core).filter(|&v| b.out_deg[v] < d).collect();
        let mut stuck = false;
        for child in core..n {
            if open.is_empty() {
                stuck = true;
                break;
            }
            let i = rng.random_range(0..open.len());
            let parent = open[i];
            b.add(parent, child);
            if b.out_deg[parent] >= d {
                open.swap_remove(i);
            }
            open.push(child);
        }
        if stuck {
            continue;
        }
        let attempts = rng.random_range(0..=n * (d - 1));
        for _ in 0..attempts {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && b.out_deg[u] < d && !b.within(u, v, 5) {
                b.add(u, v);
            }
        }
        let g = b.relabeled(&labels);
        if certify(&g, GraphClass::ShortCycleFree { d: d as u32 }).holds {
            return Ok(g);
        }
    }
    Err(GenError::GenerationFailed { attempts: RETRIES })
}

/// Sourceless digraph with `Δ⁺ ≤ d` and no induced `K⃗_{1,d}`. Draws
/// [`random_sourceless`] instances and breaks induced stars by dropping a
/// centre→leaf edge when the leaf keeps another in-edge, or else joining two
/// leaves, then certifies; retries on failure.
pub fn random_star_free(n: usize, d: usize, seed: u64) -> Result<Digraph, GenError> {
    if d < 2 {
        return infeasible("star-freeness needs d >= 2");
    }
    for attempt in 0..RETRIES {
        let sub = derive_seed(seed, attempt as u64);
        let oriented = sub & 1 == 1 && n >= 3;
        let mut g = random_sourceless(n, d, sub, oriented)?;
        let mut repairs = 0;
        while let Some(star) = find_induced_star(&g, d) {
            repairs += 1;
            if repairs > n * d {
                break;
            }
            match repair_star(&g, &star, d, oriented) {
                Some(next) => g = next,
                None => break,
            }
        }
        if certify(&g, GraphClass::StarFree { d: d as u32 }).holds && g.max_out_degree() <= d {
            return Ok(g);
        }
    }
    Err(GenError::GenerationFailed { attempts: RETRIES })
}

fn repair_star(
    g: &Digraph,
    star: &crate::detect::StarEmbedding,
    d: usize,
    oriented: bool,
) -> Option<Digraph> {
    let leaves = &star.leaves;
    if let Some(leaf) = leaves.iter().copied().find(|&l| g.in_degree(l) >= 2) {
        return Some(
            Digraph::build(g.n(), g.edges().filter(|&e| e != (star.center, leaf)))
                .expect("subset of valid edges"),
        );
    }
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            for (u, v) in [(a, b), (b, a)] {
                if g.out_degree(u) < d && !(oriented && g.has_edge(v, u)) {
                    return Some(
                        Digraph::build(g.n(), g.edges().chain([(u, v)])).expect("valid edge"),
                    );
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Cycle {
        n: usize,
    },
    DisjointC4s {
        m: usize,
    },
    Rotational {
        q: usize,
        residues: Vec<usize>,
    },
    Paley {
        q: usize,
    },
    /// Paley tournament on `q` vertices with `k` sinks per vertex.
    PaleySinks {
        q: usize,
        k: usize,
    },
    RandomSourceless {
        n: usize,
        d: usize,
        oriented: bool,
    },
    RandomShortCycleFree {
        n: usize,
        d: usize,
    },
    RandomStarFree {
        n: usize,
        d: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }

    /// Classes every instance of this spec belongs to.
    pub fn advertised_classes(&self) -> Vec<GraphClass> {
        match &self.family {
            Family::Cycle { n } if *n >= 2 => vec![GraphClass::MaxOutDegree { d: 1 }],
            Family::Cycle { .. } => vec![],
            Family::DisjointC4s { .. } => vec![
                GraphClass::MaxOutDegree { d: 1 },
                GraphClass::ShortCycleFree { d: 1 },
            ],
            Family::Rotational { .. } | Family::Paley { .. } | Family::PaleySinks { .. } => {
                vec![GraphClass::Sourceless, GraphClass::Oriented]
            }
            Family::RandomSourceless { d, oriented, .. } => {
                let mut classes = vec![GraphClass::MaxOutDegree { d: *d as u32 }];
                if *oriented {
                    classes.push(GraphClass::Oriented);
                }
                if *oriented && *d <= 3 {
                    classes.push(GraphClass::OutDeg3);
                }
                classes
            }
            Family::RandomShortCycleFree { d, .. } => {
                vec![GraphClass::ShortCycleFree { d: *d as u32 }]
            }
            Family::RandomStarFree { d, .. } => vec![GraphClass::StarFree { d: *d as u32 }],
        }
    }

    /// One-line `key=value` description for instance file headers.
    pub fn describe(&self) -> String {
        let family = match &self.family {
            Family::Cycle { n } => format!("family=cycle n={n}"),
            Family::DisjointC4s { m } => format!("family=disjoint-c4s m={m}"),
            Family::Rotational { q, residues } => {
                let r: Vec<String> = residues.iter().map(ToString::to_string).collect();
                format!("family=rotational q={q} residues={}", r.join(","))
            }
            Family::Paley { q } => format!("family=paley q={q}"),
            Family::PaleySinks { q, k } => format!("family=paley-sinks q={q} k={k}"),
            Family::RandomSourceless { n, d, oriented } => {
                format!("family=random-sourceless n={n} d={d} oriented={oriented}")
            }
            Family::RandomShortCycleFree { n, d } => {
                format!("family=random-short-cycle-free n={n} d={d}")
            }
            Family::RandomStarFree { n, d } => format!("family=random-star-free n={n} d={d}"),
        };
        format!("{family} seed={}", self.seed)
    }
}

pub fn generate(spec: &GenSpec) -> Result<Digraph, GenError> {
    let seed = spec.seed;
    match &spec.family {
        Family::Cycle { n } => Ok(directed_cycle(*n)),
        Family::DisjointC4s { m } => Ok(disjoint_c4s(*m)),
        Family::Rotational { q, residues } => rotational_tournament(*q, residues),
        Family::Paley { q } => paley_tournament(*q),
        Family::PaleySinks { q, k } => with_private_sinks(&paley_tournament(*q)?, *k),
        Family::RandomSourceless { n, d, oriented } => random_sourceless(*n, *d, seed, *oriented),
        Family::RandomShortCycleFree { n, d } => random_short_cycle_free(*n, *d, seed),
        Family::RandomStarFree { n, d } => random_star_free(*n, *d, seed),
    }
}
