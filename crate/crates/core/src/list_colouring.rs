//! List edge-colouring of cubic graphs and a random-list sampling harness.
//!
//! Lists are drawn with `ChaCha8Rng::seed_from_u64`; trial `i` of a sample
//! with base seed `s` uses seed `s.wrapping_add(i)`.

use std::time::Instant;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GpGraph;

/// Allowed colours per edge, indexed by edge id. Lists are kept sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self> {
        let lists: Vec<Vec<u32>> = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        if let Some(edge) = lists.iter().position(|l| l.is_empty()) {
            return Err(Error::EmptyList { edge });
        }
        Ok(ListAssignment { lists })
    }

    /// The same list on every edge of `g`.
    pub fn uniform(g: &GpGraph, colours: &[u32]) -> Result<Self> {
        Self::new(vec![colours.to_vec(); g.edge_count()])
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    pub fn list(&self, edge: usize) -> &[u32] {
        &self.lists[edge]
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Common list size, if all lists have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.lists.first()?.len();
        self.lists.iter().all(|l| l.len() == first).then_some(first)
    }
}

/// Random `list_size`-subsets of `{1..=palette_size}` for every edge.
pub fn random_lists(
    g: &GpGraph,
    palette_size: usize,
    list_size: usize,
    seed: u64,
) -> Result<ListAssignment> {
    if list_size > palette_size {
        return Err(Error::ListLargerThanPalette {
            list_size,
            palette_size,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = (0..g.edge_count())
        .map(|_| {
            index::sample(&mut rng, palette_size, list_size)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect()
        })
        .collect();
    ListAssignment::new(lists)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListOutcome {
    /// A proper colouring with every edge coloured from its list.
    Coloured(Vec<u32>),
    /// The complete search tree was exhausted without finding a colouring.
    Unsolvable { nodes_explored: u64 },
}

impl ListOutcome {
    pub fn is_coloured(&self) -> bool {
        matches!(self, ListOutcome::Coloured(_))
    }
}

/// Complete backtracking search: always branches on the uncoloured edge with
/// the fewest remaining colours, and removes each chosen colour from the
/// lists of the neighbouring edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ListSolver {
    pub max_edges: usize,
}

impl Default for ListSolver {
    fn default() -> Self {
        ListSolver { max_edges: 60 }
    }
}

impl ListSolver {
    pub fn solve(&self, g: &GpGraph, lists: &ListAssignment) -> Result<ListOutcome> {
        if g.edge_count() > self.max_edges {
            return Err(Error::InstanceTooLarge {
                size: g.edge_count(),
                bound: self.max_edges,
            });
        }
        assert_eq!(lists.len(), g.edge_count(), "one list per edge");
        let mut state = ListSearch {
            g,
            domains: lists.lists.clone(),
            assigned: vec![None; g.edge_count()],
            trail: Vec::new(),
            nodes: 0,
        };
        if state.search() {
            let colouring = state.assigned.into_iter().map(|c| c.unwrap()).collect();
            Ok(ListOutcome::Coloured(colouring))
        } else {
            Ok(ListOutcome::Unsolvable {
                nodes_explored: state.nodes,
            })
        }
    }
}

pub fn solve_list_colouring(g: &GpGraph, lists: &ListAssignment) -> Result<ListOutcome> {
    ListSolver::default().solve(g, lists)
}

/// Checks that `colouring` is proper and respects `lists`.
pub fn is_valid_list_colouring(g: &GpGraph, lists: &ListAssignment, colouring: &[u32]) -> bool {
    colouring.len() == g.edge_count()
        && colouring
            .iter()
            .enumerate()
            .all(|(e, c)| lists.list(e).contains(c))
        && (0..g.vertex_count()).all(|v| {
            let [a, b, c] = g.incident(v).map(|e| colouring[e]);
            a != b && b != c && a != c
        })
}

struct ListSearch<'g> {
    g: &'g GpGraph,
    domains: Vec<Vec<u32>>,
    assigned: Vec<Option<u32>>,
    // (edge, colour) pairs removed from domains
    trail: Vec<(usize, u32)>,
    nodes: u64,
}

impl ListSearch<'_> {
    fn pick_edge(&self) -> Option<usize> {
        (0..self.domains.len())
            .filter(|&e| self.assigned[e].is_none())
            .min_by_key(|&e| self.domains[e].len())
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, c) = self.trail.pop().unwrap();
            let pos = self.domains[e].binary_search(&c).unwrap_err();
            self.domains[e].insert(pos, c);
        }
    }

    fn search(&mut self) -> bool {
        self.nodes += 1;
        let Some(e) = self.pick_edge() else {
            return true;
        };
        let candidates = self.domains[e].clone();
        for c in candidates {
            let mark = self.trail.len();
            self.assigned[e] = Some(c);
            let mut wiped = false;
            let neighbours: Vec<usize> = self.g.adjacent_edges(e).collect();
            for f in neighbours {
                if self.assigned[f].is_some() {
                    continue;
                }
                if let Ok(pos) = self.domains[f].binary_search(&c) {
                    self.domains[f].remove(pos);
                    self.trail.push((f, c));
                    if self.domains[f].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped && self.search() {
                return true;
            }
            self.undo_to(mark);
            self.assigned[e] = None;
        }
        false
    }
}

/// Default palette size for sampling on GP(3k,k): `3k`, capped at 9.
pub fn default_palette(k: usize) -> usize {
    (3 * k).clamp(3, 9)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: u64,
    /// Decimal string, replayable with [`random_lists`].
    pub seed: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoosabilityReport {
    pub k: usize,
    pub trials: u64,
    pub palette_size: usize,
    pub seed: u64,
    pub successes: u64,
    pub failures: Vec<TrialFailure>,
    pub elapsed_ms: u64,
    pub max_trial_us: u64,
}

impl ChoosabilityReport {
    pub fn trial_seed(&self, trial: u64) -> u64 {
        self.seed.wrapping_add(trial)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.successes == self.trials
    }

    /// Report JSON, newline-terminated. Timing is included only on request
    /// since it varies between runs.
    pub fn to_json(&self, with_timing: bool) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            k: usize,
            trials: u64,
            successes: u64,
            failures: &'a [TrialFailure],
            #[serde(skip_serializing_if = "Option::is_none")]
            elapsed_ms: Option<u64>,
        }
        let doc = Doc {
            k: self.k,
            trials: self.trials,
            successes: self.successes,
            failures: &self.failures,
            elapsed_ms: with_timing.then_some(self.elapsed_ms),
        };
        let mut out = serde_json::to_string(&doc).expect("serialises");
        out.push('\n');
        out
    }
}

/// Runs `trials` random size-3 list assignments on GP(3k,k) through the
/// solver. Trials run in parallel on the current rayon pool; the report does
/// not depend on scheduling apart from the timing fields.
pub fn verify_choosability_sample(
    k: usize,
    trials: u64,
    palette_size: usize,
    seed: u64,
) -> Result<ChoosabilityReport> {
    let g = GpGraph::gp3k(k)?;
    let solver = ListSolver::default();
    if g.edge_count() > solver.max_edges {
        return Err(Error::InstanceTooLarge {
            size: g.edge_count(),
            bound: solver.max_edges,
        });
    }
    if palette_size < 3 {
        return Err(Error::ListLargerThanPalette {
            list_size: 3,
            palette_size,
        });
    }
    let start = Instant::now();
    let outcomes: Vec<Result<(bool, u64)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let t0 = Instant::now();
            let lists = random_lists(&g, palette_size, 3, seed.wrapping_add(trial))?;
            let ok = match solver.solve(&g, &lists)? {
                ListOutcome::Coloured(c) => is_valid_list_colouring(&g, &lists, &c),
                ListOutcome::Unsolvable { .. } => false,
            };
            Ok((ok, t0.elapsed().as_micros() as u64))
        })
        .collect();
    let mut successes = 0;
    let mut failures = Vec::new();
    let mut max_trial_us = 0;
    for (trial, outcome) in (0..trials).zip(outcomes) {
        let (ok, us) = outcome?;
        max_trial_us = max_trial_us.max(us);
        if ok {
            successes += 1;
        } else {
            failures.push(TrialFailure {
                trial,
                seed: seed.wrapping_add(trial).to_string(),
            });
        }
    }
    Ok(ChoosabilityReport {
        k,
        trials,
        palette_size,
        seed,
        successes,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        max_trial_us,
    })
}
