//! Class membership checks: sourceless, oriented, bounded out-degree,
//! induced-star-free, and free of the four short-cycle orientations.
//!
//! Cycle patterns use subgraph semantics (extra edges among the images are
//! fine); the out-star uses induced semantics.

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Vertex};
use crate::ratio::{
    out_degree_three_threshold, short_cycle_free_threshold, star_free_threshold, Rational,
};

/// Small digraph patterns searched for as subgraphs.
///
/// Pattern vertex ids are listed so that every vertex after the first has an
/// edge to an earlier one; the matcher relies on that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// a→b→c→a.
    C3Dir,
    /// v→x→u→z plus the chord v→z: a 4-cycle with one edge reversed.
    C4Minus,
    /// v→w→u and v→z→u: two 2-paths with common ends.
    C4Up,
    /// v→x→u→z and v→y→w→z: two 3-paths with common ends.
    C6Up,
    /// Centre 0 with edges 0→i for i = 1..=d.
    StarOut(usize),
}

impl Pattern {
    pub const SHORT_CYCLES: [Pattern; 4] = [
        Pattern::C3Dir,
        Pattern::C4Minus,
        Pattern::C4Up,
        Pattern::C6Up,
    ];

    pub fn vertex_count(&self) -> usize {
        match self {
            Pattern::C3Dir => 3,
            Pattern::C4Minus | Pattern::C4Up => 4,
            Pattern::C6Up => 6,
            Pattern::StarOut(d) => d + 1,
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Pattern::C3Dir => vec![(0, 1), (1, 2), (2, 0)],
            Pattern::C4Minus => vec![(0, 1), (1, 2), (2, 3), (0, 3)],
            Pattern::C4Up => vec![(0, 1), (0, 2), (1, 3), (2, 3)],
            Pattern::C6Up => vec![(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 3)],
            Pattern::StarOut(d) => (1..=*d).map(|i| (0, i)).collect(),
        }
    }

    /// The pattern as a digraph on its own vertex ids.
    pub fn digraph(&self) -> Digraph {
        Digraph::build(self.vertex_count(), self.edges()).expect("pattern edges are valid")
    }

    pub fn name(&self) -> String {
        match self {
            Pattern::C3Dir => "C3dir".into(),
            Pattern::C4Minus => "C4minus".into(),
            Pattern::C4Up => "C4up".into(),
            Pattern::C6Up => "C6up".into(),
            Pattern::StarOut(d) => format!("StarOut({d})"),
        }
    }
}

/// Whether `embedding` maps every pattern edge onto an edge of `d`, injectively.
pub fn embedding_is_valid(d: &Digraph, pattern: Pattern, embedding: &[Vertex]) -> bool {
    if embedding.len() != pattern.vertex_count() || embedding.iter().any(|&v| v >= d.n()) {
        return false;
    }
    let mut seen = embedding.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == embedding.len()
        && pattern
            .edges()
            .into_iter()
            .all(|(a, b)| d.has_edge(embedding[a], embedding[b]))
}

/// Finds the lexicographically smallest embedding of `pattern` as a
/// (not necessarily induced) subgraph of `d`.
pub fn find_subgraph(d: &Digraph, pattern: Pattern) -> Option<Vec<Vertex>> {
    let k = pattern.vertex_count();
    if k > d.n() {
        return None;
    }
    let edges = pattern.edges();
    let mut pat_out = vec![0usize; k];
    let mut pat_in = vec![0usize; k];
    for &(a, b) in &edges {
        pat_out[a] += 1;
        pat_in[b] += 1;
    }
    // For each pattern vertex after the first, one edge to an earlier vertex
    // that seeds its candidate list.
    let anchors: Vec<Option<(usize, bool)>> = (0..k)
        .map(|i| {
            edges.iter().find_map(|&(a, b)| {
                if b == i && a < i {
                    Some((a, true))
                } else if a == i && b < i {
                    Some((b, false))
                } else {
                    None
                }
            })
        })
        .collect();
    let matcher = Matcher {
        d,
        edges: &edges,
        pat_out: &pat_out,
        pat_in: &pat_in,
        anchors: &anchors,
    };
    let mut image = Vec::with_capacity(k);
    matcher.extend(&mut image).then_some(image)
}

struct Matcher<'a> {
    d: &'a Digraph,
    edges: &'a [(usize, usize)],
    pat_out: &'a [usize],
    pat_in: &'a [usize],
    anchors: &'a [Option<(usize, bool)>],
}

impl Matcher<'_> {
    fn extend(&self, image: &mut Vec<Vertex>) -> bool {
        let i = image.len();
        if i == self.pat_out.len() {
            return true;
        }
        let candidates: &[Vertex] = match self.anchors[i] {
            Some((p, true)) => self.d.out_neighbors(image[p]),
            Some((p, false)) => self.d.in_neighbors(image[p]),
            None => &[],
        };
        let all: Vec<Vertex>;
        let candidates = if self.anchors[i].is_none() {
            all = self.d.vertices().collect();
            &all[..]
        } else {
            candidates
        };
        for &c in candidates {
            if image.contains(&c)
                || self.d.out_degree(c) < self.pat_out[i]
                || self.d.in_degree(c) < self.pat_in[i]
            {
                continue;
            }
            let consistent = self.edges.iter().all(|&(a, b)| {
                if a == i && b < i {
                    self.d.has_edge(c, image[b])
                } else if b == i && a < i {
                    self.d.has_edge(image[a], c)
                } else {
                    true
                }
            });
            if !consistent {
                continue;
            }
            image.push(c);
            if self.extend(image) {
                return true;
            }
            image.pop();
        }
        false
    }
}

/// An induced out-star: `leaves` are out-neighbours of `center`, pairwise
/// non-adjacent, and none of them points back at the centre.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarEmbedding {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

impl StarEmbedding {
    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        let c = self.center;
        c < d.n()
            && self
                .leaves
                .iter()
                .all(|&l| l < d.n() && l != c && d.has_edge(c, l) && !d.has_edge(l, c))
            && self.leaves.iter().enumerate().all(|(i, &a)| {
                self.leaves[i + 1..]
                    .iter()
                    .all(|&b| a != b && !d.adjacent(a, b))
            })
    }
}

/// Finds an induced `K⃗_{1,d}`, scanning centres in ascending order.
pub fn find_induced_star(d: &Digraph, leaves: usize) -> Option<StarEmbedding> {
    assert!(leaves >= 2, "star detection needs at least two leaves");
    for c in d.vertices().filter(|&c| d.out_degree(c) >= leaves) {
        let candidates: Vec<Vertex> = d
            .out_neighbors(c)
            .iter()
            .copied()
            .filter(|&u| !d.has_edge(u, c))
            .collect();
        if candidates.len() < leaves {
            continue;
        }
        let mut chosen = Vec::with_capacity(leaves);
        if pick_independent(d, &candidates, 0, leaves, &mut chosen) {
            return Some(StarEmbedding {
                center: c,
                leaves: chosen,
            });
        }
    }
    None
}

fn pick_independent(
    d: &Digraph,
    candidates: &[Vertex],
    from: usize,
    want: usize,
    chosen: &mut Vec<Vertex>,
) -> bool {
    if chosen.len() == want {
        return true;
    }
    if candidates.len() - from < want - chosen.len() {
        return false;
    }
    for i in from..candidates.len() {
        let u = candidates[i];
        if chosen.iter().all(|&w| !d.adjacent(u, w)) {
            chosen.push(u);
            if pick_independent(d, candidates, i + 1, want, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// First digon `(u, v)` with `u < v`, if any.
pub fn find_digon(d: &Digraph) -> Option<(Vertex, Vertex)> {
    d.edges().find(|&(u, v)| u < v && d.has_edge(v, u))
}

pub fn is_oriented(d: &Digraph) -> bool {
    find_digon(d).is_none()
}

/// The digraph classes whose size bounds this crate certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum GraphClass {
    Sourceless,
    Oriented,
    /// Sourceless with Δ⁺ ≤ d.
    MaxOutDegree {
        d: u32,
    },
    /// Sourceless, oriented, Δ⁺ ≤ 3: the class where a 4/3 witness always exists.
    OutDeg3,
    /// Sourceless with no induced `K⃗_{1,d}`.
    StarFree {
        d: u32,
    },
    /// Sourceless, oriented, Δ⁺ ≤ d, and none of the four short-cycle patterns.
    ShortCycleFree {
        d: u32,
    },
}

impl GraphClass {
    /// Witness threshold `t` for the class, when it carries a size bound.
    pub fn threshold(&self) -> Option<Rational> {
        match *self {
            GraphClass::Sourceless | GraphClass::Oriented => None,
            GraphClass::OutDeg3 => Some(out_degree_three_threshold()),
            GraphClass::MaxOutDegree { d } if d <= 3 => Some(out_degree_three_threshold()),
            // Δ⁺ ≤ d rules out an induced star with d + 1 leaves.
            GraphClass::MaxOutDegree { d } => Some(star_free_threshold(d + 1)),
            GraphClass::StarFree { d } => Some(star_free_threshold(d)),
            GraphClass::ShortCycleFree { d } => Some(short_cycle_free_threshold(d)),
        }
    }

    /// `t / (t + 1)`: quasi-kernels of at most this fraction of `n` exist.
    pub fn bound_factor(&self) -> Option<Rational> {
        self.threshold().map(|t| t.bound_factor())
    }

    pub fn name(&self) -> String {
        match self {
            GraphClass::Sourceless => "sourceless".into(),
            GraphClass::Oriented => "oriented".into(),
            GraphClass::MaxOutDegree { d } => format!("max-out-degree(d={d})"),
            GraphClass::OutDeg3 => "out-degree-3".into(),
            GraphClass::StarFree { d } => format!("star-free(d={d})"),
            GraphClass::ShortCycleFree { d } => format!("short-cycle-free(d={d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Source {
        vertex: Vertex,
    },
    Digon {
        u: Vertex,
        v: Vertex,
    },
    OutDegree {
        vertex: Vertex,
        degree: usize,
        limit: usize,
    },
    Pattern {
        pattern: Pattern,
        embedding: Vec<Vertex>,
    },
    InducedStar {
        star: StarEmbedding,
    },
}

impl Violation {
    /// Re-checks the witness against `d`.
    pub fn reverifies(&self, d: &Digraph) -> bool {
        match self {
            Violation::Source { vertex } => *vertex < d.n() && d.in_degree(*vertex) == 0,
            Violation::Digon { u, v } => {
                *u < d.n() && *v < d.n() && d.has_edge(*u, *v) && d.has_edge(*v, *u)
            }
            Violation::OutDegree { vertex, limit, .. } => {
                *vertex < d.n() && d.out_degree(*vertex) > *limit
            }
            Violation::Pattern { pattern, embedding } => embedding_is_valid(d, *pattern, embedding),
            Violation::InducedStar { star } => star.is_valid_in(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCertificate {
    pub class: GraphClass,
    pub threshold: Option<Rational>,
    pub bound_factor: Option<Rational>,
    pub holds: bool,
    pub violation: Option<Violation>,
}

/// Runs the constituent checks for `class`, stopping at the first failure.
pub fn certify(d: &Digraph, class: GraphClass) -> ClassCertificate {
    let violation = first_violation(d, class);
    ClassCertificate {
        class,
        threshold: class.threshold(),
        bound_factor: class.bound_factor(),
        holds: violation.is_none(),
        violation,
    }
}

fn first_violation(d: &Digraph, class: GraphClass) -> Option<Violation> {
    let source = || d.first_source().map(|vertex| Violation::Source { vertex });
    let digon = || find_digon(d).map(|(u, v)| Violation::Digon { u, v });
    let degree = |limit: usize| {
        d.vertices()
            .find(|&v| d.out_degree(v) > limit)
            .map(|vertex| Violation::OutDegree {
                vertex,
                degree: d.out_degree(vertex),
                limit,
            })
    };
    match class {
        GraphClass::Sourceless => source(),
        GraphClass::Oriented => digon(),
        GraphClass::MaxOutDegree { d: limit } => source().or_else(|| degree(limit as usize)),
        GraphClass::OutDeg3 => source().or_else(digon).or_else(|| degree(3)),
        GraphClass::StarFree { d: leaves } => source().or_else(|| {
            find_induced_star(d, leaves as usize).map(|star| Violation::InducedStar { star })
        }),
        GraphClass::ShortCycleFree { d: limit } => source()
            .or_else(digon)
            .or_else(|| degree(limit as usize))
            .or_else(|| {
                Pattern::SHORT_CYCLES.iter().find_map(|&pattern| {
                    find_subgraph(d, pattern)
                        .map(|embedding| Violation::Pattern { pattern, embedding })
                })
            }),
    }
}
