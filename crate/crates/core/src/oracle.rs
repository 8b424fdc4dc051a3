//! Exhaustive proper 3-edge-colouring search, independent of the triple
//! machinery. Used to validate the structural counts.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factorisation::EdgeColouring;
use crate::graph::GpGraph;
use crate::triple::Colour;

/// Backtracking search over edges in the order outer cycle, spokes, inner
/// edges, with forward checking on neighbouring edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    pub max_vertices: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce { max_vertices: 40 }
    }
}

impl BruteForce {
    fn check_size(&self, g: &GpGraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::InstanceTooLarge {
                size: g.vertex_count(),
                bound: self.max_vertices,
            });
        }
        Ok(())
    }

    /// All proper 3-edge-colourings of `g`, each as a total colouring.
    pub fn colourings<'g>(&self, g: &'g GpGraph) -> Result<Vec<EdgeColouring<'g>>> {
        self.check_size(g)?;
        let mut search = Search::new(g);
        let mut out = Vec::new();
        search.run(0, &mut |c| out.push(EdgeColouring::total(g, c.to_vec())));
        Ok(out)
    }

    /// As [`BruteForce::colourings`], splitting the search on the colours of
    /// the first two edges. The result order equals the sequential order.
    pub fn colourings_par<'g>(&self, g: &'g GpGraph) -> Result<Vec<EdgeColouring<'g>>> {
        self.check_size(g)?;
        let prefixes: Vec<[Colour; 2]> = (1..=3)
            .flat_map(|a| (1..=3).map(move |b| [a, b]))
            .collect();
        let chunks: Vec<Vec<Vec<Colour>>> = prefixes
            .into_par_iter()
            .map(|prefix| {
                let mut search = Search::new(g);
                let mut out = Vec::new();
                if search.try_assign(0, prefix[0]) && search.try_assign(1, prefix[1]) {
                    search.run(2, &mut |c| out.push(c.to_vec()));
                }
                out
            })
            .collect();
        Ok(chunks
            .into_iter()
            .flatten()
            .map(|c| EdgeColouring::total(g, c))
            .collect())
    }

    pub fn count(&self, g: &GpGraph) -> Result<u64> {
        self.check_size(g)?;
        let mut search = Search::new(g);
        let mut count = 0u64;
        search.run(0, &mut |_| count += 1);
        Ok(count)
    }

    /// Number of proper total colourings agreeing with `outer` on the outer
    /// cycle (`outer[j]` colours `u_j u_{j+1}`).
    pub fn count_extensions(&self, g: &GpGraph, outer: &[Colour]) -> Result<u64> {
        self.check_size(g)?;
        assert_eq!(outer.len(), g.n());
        let mut search = Search::new(g);
        for (j, &c) in outer.iter().enumerate() {
            if !search.try_assign(j, c) {
                return Ok(0);
            }
        }
        let mut count = 0u64;
        search.run(g.n(), &mut |_| count += 1);
        Ok(count)
    }
}

pub fn brute_force_colourings(g: &GpGraph) -> Result<Vec<EdgeColouring<'_>>> {
    BruteForce::default().colourings(g)
}

struct Search<'g> {
    g: &'g GpGraph,
    colours: Vec<Colour>,
    // bitmask of colours used at each vertex, bits 1..=3
    used: Vec<u8>,
}

impl<'g> Search<'g> {
    fn new(g: &'g GpGraph) -> Self {
        Search {
            g,
            colours: vec![0; g.edge_count()],
            used: vec![0; g.vertex_count()],
        }
    }

    fn free(&self, e: usize) -> u8 {
        let (a, b) = self.g.edge(e).endpoints();
        0b1110 & !(self.used[a] | self.used[b])
    }

    /// Assigns `c` to `e` if legal and no neighbouring uncoloured edge is
    /// left without options; otherwise leaves the state unchanged.
    fn try_assign(&mut self, e: usize, c: Colour) -> bool {
        if self.free(e) & (1 << c) == 0 {
            return false;
        }
        let (a, b) = self.g.edge(e).endpoints();
        self.colours[e] = c;
        self.used[a] |= 1 << c;
        self.used[b] |= 1 << c;
        let ok = self
            .g
            .adjacent_edges(e)
            .all(|f| self.colours[f] != 0 || self.free(f) != 0);
        if !ok {
            self.unassign(e);
        }
        ok
    }

    fn unassign(&mut self, e: usize) {
        let (a, b) = self.g.edge(e).endpoints();
        let c = self.colours[e];
        self.used[a] &= !(1 << c);
        self.used[b] &= !(1 << c);
        self.colours[e] = 0;
    }

    fn run(&mut self, e: usize, visit: &mut dyn FnMut(&[Colour])) {
        if e == self.colours.len() {
            visit(&self.colours);
            return;
        }
        if self.colours[e] != 0 {
            self.run(e + 1, visit);
            return;
        }
        for c in 1..=3 {
            if self.try_assign(e, c) {
                self.run(e + 1, visit);
                self.unassign(e);
            }
        }
    }
}
