//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.
//!
//! All size checks are exact integer comparisons. Quasi-kernel validity and
//! subgraph matches are re-checked here with naive implementations that do
//! not share code with the library.

use std::collections::{BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qkernel::detect::{find_induced_star, find_subgraph, Pattern};
use qkernel::exact::{quasi_kernel_number, smallest_quasi_kernel, OracleBudget};
use qkernel::generate::{
    derive_seed, disjoint_c4s, paley_tournament, random_short_cycle_free, random_sourceless,
    random_star_free, with_private_sinks,
};
use qkernel::solver::{counterexample_scan, solve, PickPolicy, Selection, Strategy};
use qkernel::{certify, Digraph, GraphClass, Rational, VertexSet};
use qkernel_cli::table::bound_table_rows;

struct Criterion {
    id: u32,
    name: &'static str,
    failures: Vec<String>,
    checked: usize,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u32, name: &'static str) -> Self {
        Criterion {
            id,
            name,
            failures: Vec::new(),
            checked: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    fn timed(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        self.note(format!(
            "{label} {:.2}s (limit {}s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
        self.check(elapsed < limit, || {
            format!("{label} took {elapsed:?}, limit {limit:?}")
        });
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn report(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2} [{status}] {}: {} checks",
            self.id, self.name, self.checked
        );
        for n in &self.notes {
            line.push_str("; ");
            line.push_str(n);
        }
        if !self.passed() {
            line.push_str(&format!(
                "; {} failures, first: {}",
                self.failures.len(),
                self.failures[0]
            ));
        }
        line
    }
}

/// Draws from `lo..=hi` using the `index`-th derived stream of `seed`.
fn pick(seed: u64, index: u64, lo: usize, hi: usize) -> usize {
    lo + (derive_seed(seed, index) % (hi - lo + 1) as u64) as usize
}

fn adjacency(g: &Digraph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
    }
    a
}

/// Independent and every vertex within two steps of the set.
fn naive_is_quasi_kernel(g: &Digraph, q: &VertexSet) -> bool {
    let a = adjacency(g);
    let n = g.n();
    let members: Vec<usize> = q.iter().collect();
    if members.iter().any(|&x| x >= n) {
        return false;
    }
    for &x in &members {
        for &y in &members {
            if a[x][y] {
                return false;
            }
        }
    }
    (0..n).all(|x| {
        members
            .iter()
            .any(|&s| s == x || a[s][x] || (0..n).any(|y| a[s][y] && a[y][x]))
    })
}

fn strategies(d: u32) -> Vec<Strategy> {
    vec![
        Strategy::baseline(),
        Strategy::baseline().with_source_pick(PickPolicy::MaxOutDegree),
        Strategy::tratio(Rational::integer(1)),
        Strategy::tratio(Rational::integer(1)).with_source_pick(PickPolicy::MaxOutDegree),
        Strategy::outdeg3(),
        Strategy::star_free(d.max(2)),
        Strategy::short_cycle_free(d),
        Strategy::tratio(Rational::integer(1)).with_exact_tail(10),
    ]
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "validity fuzz over 1000 random sourceless digraphs");
    let started = Instant::now();
    for i in 0..1000u64 {
        let seed = derive_seed(0xC1, i);
        let n = pick(seed, 1, 3, 200);
        let d = pick(seed, 2, 2, 6);
        let oriented = i % 2 == 0;
        let g = random_sourceless(n, d, seed, oriented).expect("feasible parameters");
        for s in strategies(d as u32) {
            match solve(&g, &s) {
                Ok(r) => c.check(naive_is_quasi_kernel(&g, &r.quasi_kernel), || {
                    format!(
                        "instance {i} (n={n}, d={d}): {} output is not a quasi-kernel",
                        s.rule.name()
                    )
                }),
                Err(e) => c.check(false, || format!("instance {i}: {e}")),
            }
        }
    }
    c.timed("total", started.elapsed(), Duration::from_secs(60));
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "disjoint directed 4-cycles are tight");
    let budget = OracleBudget::default();
    for m in 1..=10 {
        let g = disjoint_c4s(m);
        let r = solve(&g, &Strategy::tratio(Rational::integer(1))).unwrap();
        c.check(r.size() == 2 * m && 2 * r.size() == g.n(), || {
            format!("greedy size {} for m = {m}", r.size())
        });
        c.check(naive_is_quasi_kernel(&g, &r.quasi_kernel), || {
            format!("invalid output for m = {m}")
        });
        if m <= 3 {
            let q = smallest_quasi_kernel(&g, &budget).unwrap();
            c.check(q.len() == 2 * m, || {
                format!("exact size {} for m = {m}", q.len())
            });
        }
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "out-degree-3 bound 4n/7 on 500 oriented instances");
    let started = Instant::now();
    for i in 0..500u64 {
        let seed = derive_seed(0xC3, i);
        let n = pick(seed, 1, 3, 100);
        let g = random_sourceless(n, 3, seed, true).unwrap();
        c.check(certify(&g, GraphClass::OutDeg3).holds, || {
            format!("instance {i} not certified")
        });
        let r = solve(&g, &Strategy::outdeg3()).unwrap();
        c.check(7 * r.size() <= 4 * n, || {
            format!("instance {i}: |Q| = {} > 4·{n}/7", r.size())
        });
        c.check(r.bound_guaranteed && r.fallback_events == 0, || {
            format!(
                "instance {i} (n = {n}): {} fallback phases",
                r.fallback_events
            )
        });
        c.check(naive_is_quasi_kernel(&g, &r.quasi_kernel), || {
            format!("instance {i}: invalid")
        });
    }
    c.timed("total", started.elapsed(), Duration::from_secs(30));
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(
        4,
        "induced-star-free bound on 200 instances each for d = 3, 4",
    );
    for d in [3usize, 4] {
        let (num, den) = (d * d - 2 * d + 2, d * d - d + 1);
        let mut worst = 0.0f64;
        for i in 0..200u64 {
            let seed = derive_seed(0xC4 + d as u64, i);
            let n = pick(seed, 1, 4, 80);
            let g = random_star_free(n, d, seed).unwrap();
            c.check(
                certify(&g, GraphClass::StarFree { d: d as u32 }).holds,
                || format!("d = {d}, instance {i} not certified"),
            );
            let r = solve(&g, &Strategy::star_free(d as u32)).unwrap();
            c.check(naive_is_quasi_kernel(&g, &r.quasi_kernel), || {
                format!("d = {d}, instance {i}: invalid")
            });
            c.check(r.size() <= num * n / den, || {
                format!(
                    "d = {d}, instance {i}: |Q| = {} > floor({num}·{n}/{den})",
                    r.size()
                )
            });
            worst = worst.max((r.size() * den) as f64 / (num * n) as f64);
        }
        c.note(format!("d = {d} max ratio {worst:.3}"));
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "short-cycle-free bound, climb length and scaling");
    for d in [2usize, 3] {
        let (num, den) = (d * d + 4, (d + 2) * (d + 2));
        let mut longest = 0;
        for i in 0..200u64 {
            let seed = derive_seed(0xC5 + d as u64, i);
            let n = pick(seed, 1, 4, 200);
            let g = random_short_cycle_free(n, d, seed).unwrap();
            c.check(
                certify(&g, GraphClass::ShortCycleFree { d: d as u32 }).holds,
                || format!("d = {d}, instance {i} not certified"),
            );
            let r = solve(&g, &Strategy::short_cycle_free(d as u32)).unwrap();
            c.check(naive_is_quasi_kernel(&g, &r.quasi_kernel), || {
                format!("d = {d}, instance {i}: invalid")
            });
            c.check(r.size() <= num * n / den, || {
                format!(
                    "d = {d}, instance {i}: |Q| = {} > floor({num}·{n}/{den})",
                    r.size()
                )
            });
            for (p, phase) in r.phases.iter().enumerate() {
                let hops = match &phase.selection {
                    Selection::Climb { hops } => Some(hops.len()),
                    _ => None,
                };
                longest = longest.max(hops.unwrap_or(0));
                c.check(hops.is_some_and(|h| h <= d + 1), || {
                    format!(
                        "d = {d}, instance {i}, phase {p}: selection {:?}",
                        phase.selection
                    )
                });
            }
        }
        c.note(format!("d = {d} longest climb {longest} vertices"));
    }

    let big = random_short_cycle_free(5000, 2, 5).unwrap();
    let started = Instant::now();
    let r = solve(&big, &Strategy::short_cycle_free(2)).unwrap();
    c.timed(
        "n=5000 climb solve",
        started.elapsed(),
        Duration::from_secs(5),
    );
    c.check(r.size() * 16 <= 8 * 5000, || {
        format!("n = 5000: |Q| = {}", r.size())
    });

    let mid = random_sourceless(300, 4, 7, false).unwrap();
    let started = Instant::now();
    let r = solve(&mid, &Strategy::tratio(Rational::integer(1))).unwrap();
    c.timed(
        "n=300 ratio-scan solve",
        started.elapsed(),
        Duration::from_secs(30),
    );
    c.check(naive_is_quasi_kernel(&mid, &r.quasi_kernel), || {
        "n = 300: invalid".into()
    });
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(
        6,
        "exact oracle dominates every strategy on 200 small instances",
    );
    let started = Instant::now();
    let budget = OracleBudget::default();
    let mut bounded = 0;
    for i in 0..200u64 {
        let seed = derive_seed(0xC6, i);
        let n = pick(seed, 1, 3, 14);
        let d = pick(seed, 2, 2, 4);
        let g = random_sourceless(n, d, seed, i % 2 == 0).unwrap();
        let q = smallest_quasi_kernel(&g, &budget).unwrap();
        c.check(naive_is_quasi_kernel(&g, &q), || {
            format!("instance {i}: exact output invalid")
        });
        for s in strategies(d as u32) {
            let r = solve(&g, &s).unwrap();
            c.check(q.len() <= r.size(), || {
                format!(
                    "instance {i}: exact {} > {} from {}",
                    q.len(),
                    r.size(),
                    s.rule.name()
                )
            });
        }
        let classes = [
            GraphClass::MaxOutDegree { d: d as u32 },
            GraphClass::OutDeg3,
            GraphClass::StarFree { d: 3 },
            GraphClass::StarFree { d: 4 },
            GraphClass::ShortCycleFree { d: d as u32 },
        ];
        for class in classes {
            if certify(&g, class).holds {
                bounded += 1;
                let factor = class.bound_factor().unwrap();
                c.check(factor.admits(q.len(), n), || {
                    format!(
                        "instance {i}: exact {} breaks {} bound {factor} at n = {n}",
                        q.len(),
                        class.name()
                    )
                });
            }
        }
    }
    c.note(format!("{bounded} class bounds checked"));
    c.timed("total", started.elapsed(), Duration::from_secs(120));
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, "Paley-7 with three sinks per vertex has no 1-witness");
    let g = with_private_sinks(&paley_tournament(7).unwrap(), 3).unwrap();
    c.check(g.n() == 28, || format!("n = {}", g.n()));
    for v in g.vertices().filter(|&v| g.out_degree(v) >= 1) {
        let s = g
            .s_of(&VertexSet::from_vertices(g.n(), [v]).unwrap())
            .unwrap();
        let out_s: BTreeSet<usize> = s
            .iter()
            .flat_map(|u| g.out_neighbors(u).iter().copied())
            .collect();
        let reach: BTreeSet<usize> = g
            .out_neighbors(v)
            .iter()
            .copied()
            .chain(out_s.iter().copied())
            .collect();
        c.check(reach.len() == 6, || {
            format!("vertex {v}: reach {}", reach.len())
        });
        c.check(s.len() == 9, || format!("vertex {v}: |S| = {}", s.len()));
        c.check(out_s.is_empty(), || {
            format!("vertex {v}: N+(S) = {out_s:?}")
        });
    }
    let report = counterexample_scan(&g, Rational::integer(1)).unwrap();
    let nonsinks: Vec<usize> = report
        .witnesses
        .iter()
        .copied()
        .filter(|&v| g.out_degree(v) >= 1)
        .collect();
    c.check(nonsinks.is_empty(), || format!("witnesses {nonsinks:?}"));
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, "bound-factor table matches the published rows");
    let published = [
        (4, "10/13", "5/9"),
        (5, "17/21", "29/49"),
        (6, "26/31", "5/8"),
        (7, "37/43", "53/81"),
        (8, "50/57", "17/25"),
        (25, "577/601", "629/729"),
        (50, "2402/2451", "313/338"),
        (100, "9802/9901", "2501/2601"),
    ];
    let rows = bound_table_rows(8);
    c.check(rows.len() == published.len(), || {
        format!("{} rows", rows.len())
    });
    for (row, (d, r1, r2)) in rows.iter().zip(published) {
        c.check(row.d == d, || {
            format!("row for d = {} where {d} expected", row.d)
        });
        c.check(row.star_free.to_string() == r1, || {
            format!("d = {d}: {} vs {r1}", row.star_free)
        });
        c.check(row.short_cycle_free.to_string() == r2, || {
            format!("d = {d}: {} vs {r2}", row.short_cycle_free)
        });
    }
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, "structure of S(v) in short-cycle-free digraphs");
    for i in 0..200u64 {
        let seed = derive_seed(0xC9, i);
        let d = pick(seed, 1, 2, 4);
        let n = pick(seed, 2, 8, 120);
        let g = random_short_cycle_free(n, d, seed).unwrap();
        c.check(
            certify(&g, GraphClass::ShortCycleFree { d: d as u32 }).holds,
            || format!("instance {i} not certified"),
        );
        for v in g.vertices() {
            let single = VertexSet::from_vertices(g.n(), [v]).unwrap();
            let s = g.s_of(&single).unwrap();
            let t = g.t_of(&single).unwrap();
            let closed_v: BTreeSet<usize> = std::iter::once(v)
                .chain(g.out_neighbors(v).iter().copied())
                .collect();
            let out_v: BTreeSet<usize> = g.out_neighbors(v).iter().copied().collect();
            let mut out_s = BTreeSet::new();
            for u in s.iter() {
                c.check(g.in_degree(u) == 1, || {
                    format!("instance {i}, v = {v}: deg-({u}) = {}", g.in_degree(u))
                });
                for &y in g.out_neighbors(u) {
                    c.check(out_s.insert(y), || {
                        format!("instance {i}, v = {v}: {y} shared inside S(v)")
                    });
                    c.check(!closed_v.contains(&y), || {
                        format!("instance {i}, v = {v}: {u} -> {y} in N+[v]")
                    });
                }
            }
            let fresh = out_s.difference(&out_v).count();
            let s_minus_t = s.iter().filter(|&u| !t.contains(u)).count();
            c.check(fresh >= s_minus_t, || {
                format!("instance {i}, v = {v}: |N+(S) - N+(v)| = {fresh} < |S - T| = {s_minus_t}")
            });
        }
    }
    c
}

/// First injective map, in lexicographic order of images, carrying every
/// pattern edge onto an edge.
fn naive_embedding(a: &[Vec<bool>], pattern: Pattern) -> Option<Vec<usize>> {
    fn extend(a: &[Vec<bool>], edges: &[(usize, usize)], k: usize, map: &mut Vec<usize>) -> bool {
        if map.len() == k {
            return edges.iter().all(|&(x, y)| a[map[x]][map[y]]);
        }
        for v in 0..a.len() {
            if !map.contains(&v) {
                map.push(v);
                if extend(a, edges, k, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::new();
    extend(a, &pattern.edges(), pattern.vertex_count(), &mut map).then_some(map)
}

/// Centre with `leaves` out-neighbours that form, with it, an induced out-star.
fn naive_has_induced_star(a: &[Vec<bool>], leaves: usize) -> bool {
    let n = a.len();
    (0..n).any(|c| {
        let outs: Vec<usize> = (0..n).filter(|&x| a[c][x] && !a[x][c]).collect();
        (0u32..1 << outs.len()).any(|mask| {
            if mask.count_ones() as usize != leaves {
                return false;
            }
            let chosen: Vec<usize> = (0..outs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| outs[i])
                .collect();
            chosen.iter().all(|&x| chosen.iter().all(|&y| !a[x][y]))
        })
    })
}

fn undirected_within(adj: &[Vec<usize>], u: usize, v: usize, radius: usize) -> bool {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            return true;
        }
        if dist[x] == radius {
            continue;
        }
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    false
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new(10, "pattern detector agrees with brute force");
    let started = Instant::now();
    let patterns = [
        Pattern::C3Dir,
        Pattern::C4Minus,
        Pattern::C4Up,
        Pattern::C6Up,
    ];
    let mut digraphs = 0u64;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        for mask in 0u64..1 << pairs.len() {
            digraphs += 1;
            let edges: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = Digraph::build(n, edges).unwrap();
            let a = adjacency(&g);
            for p in patterns {
                let found = find_subgraph(&g, p);
                let expected = naive_embedding(&a, p);
                if found != expected {
                    c.check(false, || {
                        format!(
                            "n = {n}, mask {mask:#x}, {}: {found:?} vs {expected:?}",
                            p.name()
                        )
                    });
                }
            }
            for leaves in [2, 3] {
                let found = find_induced_star(&g, leaves);
                let ok = found.as_ref().is_none_or(|s| s.is_valid_in(&g))
                    && found.is_some() == naive_has_induced_star(&a, leaves);
                if !ok {
                    c.check(false, || {
                        format!("n = {n}, mask {mask:#x}: star({leaves}) {found:?}")
                    });
                }
            }
        }
    }
    c.checked += digraphs as usize;
    c.note(format!(
        "{digraphs} digraphs on <= 5 vertices in {:.1}s",
        started.elapsed().as_secs_f64()
    ));

    let mut hits = 0;
    for i in 0..100u64 {
        let seed = derive_seed(0xCA, i);
        let n = pick(seed, 1, 10, 60);
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for j in 0..(n * 3) as u64 {
            let u = pick(seed, 100 + 2 * j, 0, n - 1);
            let v = pick(seed, 101 + 2 * j, 0, n - 1);
            if u != v && !undirected_within(&adj, u, v, 5) {
                adj[u].push(v);
                adj[v].push(u);
                let forward = derive_seed(seed, 10_000 + j) & 1 == 0;
                edges.push(if forward { (u, v) } else { (v, u) });
            }
        }
        let g = Digraph::build(n, edges).unwrap();
        for p in patterns {
            if let Some(e) = find_subgraph(&g, p) {
                hits += 1;
                c.check(false, || {
                    format!("girth-7 orientation {i}: {} at {e:?}", p.name())
                });
            }
        }
        c.checked += 1;
    }
    c.note(format!("{hits} hits on 100 girth >= 7 orientations"));
    c
}

fn main() -> ExitCode {
    let criteria: [fn() -> Criterion; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut all_passed = true;
    for run in criteria {
        let c = run();
        println!("{}", c.report());
        all_passed &= c.passed();
    }
    // Guard against the oracle silently shrinking: a quick known value.
    let q = quasi_kernel_number(&disjoint_c4s(2), &OracleBudget::default()).unwrap();
    assert_eq!(q, 4);
    if all_passed {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria FAILED");
        ExitCode::FAILURE
    }
}
