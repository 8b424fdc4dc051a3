//! 1-factorisations of GP(3k,k) via colour-triple walks.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GpGraph;
use crate::sign::Sign;
use crate::triple::{
    classify_step, third_colour, Colour, ColourTriple, SignedCount, TripleGraph, TriplePattern,
    Walks,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    OuterOnly,
    Total,
}

/// Map from edge ids to colours `1..=3`, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouring<'g> {
    graph: &'g GpGraph,
    colours: Vec<Option<Colour>>,
    scope: Scope,
}

impl<'g> EdgeColouring<'g> {
    /// Colours the outer cycle; `outer[j]` is the colour of `u_j u_{j+1}`.
    pub fn from_outer(graph: &'g GpGraph, outer: &[Colour]) -> Self {
        Self::from_outer_partial(graph, outer.iter().map(|&c| Some(c)).collect())
    }

    pub fn from_outer_partial(graph: &'g GpGraph, outer: Vec<Option<Colour>>) -> Self {
        assert_eq!(outer.len(), graph.n(), "one colour per outer edge");
        let mut colours = outer;
        colours.resize(graph.edge_count(), None);
        EdgeColouring {
            graph,
            colours,
            scope: Scope::OuterOnly,
        }
    }

    /// A colouring of every edge, indexed by edge id.
    pub fn total(graph: &'g GpGraph, colours: Vec<Colour>) -> Self {
        assert_eq!(colours.len(), graph.edge_count(), "one colour per edge");
        EdgeColouring {
            graph,
            colours: colours.into_iter().map(Some).collect(),
            scope: Scope::Total,
        }
    }

    pub fn graph(&self) -> &'g GpGraph {
        self.graph
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn colour(&self, edge: usize) -> Option<Colour> {
        self.colours[edge]
    }

    pub fn colours(&self) -> &[Option<Colour>] {
        &self.colours
    }

    /// Colours of all edges, if every edge is coloured.
    pub fn total_colours(&self) -> Result<Vec<Colour>> {
        self.colours
            .iter()
            .enumerate()
            .map(|(edge, c)| c.ok_or(Error::IncompleteColouring { edge }))
            .collect()
    }

    pub fn outer_colours(&self) -> &[Option<Colour>] {
        &self.colours[..self.graph.n()]
    }

    /// No two coloured edges at a common vertex share a colour, and all
    /// colours lie in `1..=3`.
    pub fn is_proper(&self) -> bool {
        if self.colours.iter().flatten().any(|c| !(1..=3).contains(c)) {
            return false;
        }
        (0..self.graph.vertex_count()).all(|v| {
            let mut seen = 0u8;
            for e in self.graph.incident(v) {
                if let Some(c) = self.colours[e] {
                    if seen & (1 << c) != 0 {
                        return false;
                    }
                    seen |= 1 << c;
                }
            }
            true
        })
    }

    /// Applies a colour permutation given as the images of `1, 2, 3`.
    pub fn relabel(&self, perm: [Colour; 3]) -> Self {
        EdgeColouring {
            graph: self.graph,
            colours: self
                .colours
                .iter()
                .map(|c| c.map(|c| perm[(c - 1) as usize]))
                .collect(),
            scope: self.scope,
        }
    }

    /// The colouring transported along `u_i -> u_{i+s}`, `v_i -> v_{i+s}`.
    pub fn rotate(&self, s: usize) -> Self {
        let mut colours = vec![None; self.colours.len()];
        for (e, &c) in self.colours.iter().enumerate() {
            colours[self.graph.rotate_edge(e, s)] = c;
        }
        EdgeColouring {
            graph: self.graph,
            colours,
            scope: self.scope,
        }
    }
}

/// The colour triples `φ_1, ..., φ_{k+1}` of an outer colouring, stored from
/// index 0 (`φ_1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSequence(Vec<ColourTriple>);

impl TripleSequence {
    pub fn as_slice(&self) -> &[ColourTriple] {
        &self.0
    }

    /// `φ_i` with 1-based `i`.
    pub fn get(&self, i: usize) -> ColourTriple {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Splits the outer colours of GP(3k,k) into the triples
/// `φ_i = (φ(u_i u_{i+1}), φ(u_{k+i} u_{k+i+1}), φ(u_{2k+i} u_{2k+i+1}))`
/// for `i = 1..=k+1`.
pub fn triples_of(phi: &EdgeColouring) -> Result<TripleSequence> {
    let g = phi.graph();
    g.require_gp3k()?;
    let (n, k) = (g.n(), g.k());
    let outer: Vec<Colour> = (0..n)
        .map(|j| phi.colour(j).ok_or(Error::IncompleteColouring { edge: j }))
        .collect::<Result<_>>()?;
    Ok(TripleSequence(
        (1..=k + 1)
            .map(|i| ColourTriple([outer[i % n], outer[(k + i) % n], outer[(2 * k + i) % n]]))
            .collect(),
    ))
}

/// Extends a proper colouring of the outer cycle to the unique proper
/// colouring of the whole graph, if one exists.
///
/// Spokes are forced by the two outer edges at their outer endpoint, inner
/// edges by the two spokes of their endpoints.
pub fn extend_outer<'g>(phi: &EdgeColouring<'g>) -> Result<EdgeColouring<'g>> {
    let g = phi.graph();
    let triples = triples_of(phi)?;
    let (n, k) = (g.n(), g.k());

    for i in 1..=k {
        let (p, q) = (triples.get(i), triples.get(i + 1));
        if p.pattern() == TriplePattern::Monochromatic || classify_step(p, q).is_none() {
            return Err(Error::NotExtendable { index: i });
        }
    }

    // u_j sits between φ_i and φ_{i+1} for j ≡ i + 1 (mod k)
    let triple_index = |j: usize| (j + n - 2) % k + 1;
    let mut colours = vec![0 as Colour; g.edge_count()];
    for j in 0..n {
        colours[g.outer_edge(j)] = phi.colour(j).expect("checked by triples_of");
    }
    for j in 0..n {
        let left = colours[g.outer_edge(j + n - 1)];
        let right = colours[g.outer_edge(j)];
        colours[g.spoke(j)] = third_colour(left, right).ok_or(Error::NotExtendable {
            index: triple_index(j),
        })?;
    }
    for j in 0..n {
        let a = colours[g.spoke(j)];
        let b = colours[g.spoke(j + k)];
        colours[g.inner_edge(j)] = third_colour(a, b).ok_or(Error::NotExtendable {
            index: triple_index(j),
        })?;
    }
    let gamma = EdgeColouring::total(g, colours);
    if !gamma.is_proper() {
        let bad = (0..n)
            .find(|&i| {
                g.incident(g.v(i))
                    .map(|e| gamma.colour(e))
                    .windows(2)
                    .any(|w| w[0] == w[1])
            })
            .unwrap_or(0);
        return Err(Error::NotExtendable {
            index: triple_index(bad),
        });
    }
    Ok(gamma)
}

/// Number of 1-factorisations of GP(3k,k): `t_k(1) + 3 h_k(2)`.
pub fn count_1f(k: usize) -> BigUint {
    let t = TripleGraph::t()
        .count_walks(k, 0, 2)
        .expect("x0 and x2 exist")
        .total();
    let h = TripleGraph::h()
        .count_walks(k, 0, 2)
        .expect("y0 and y2 exist")
        .total();
    t + h * 3u32
}

/// Positive and negative 1-factorisations of GP(3k,k):
/// `t±_k(2) + 3 h±_k(2)`.
pub fn signed_count_1f(k: usize) -> SignedCount {
    let t = TripleGraph::t_signed()
        .count_walks(k, 0, 2)
        .expect("x0 and x2 exist");
    let h = TripleGraph::h_signed()
        .count_walks(k, 0, 2)
        .expect("y0 and y2 exist");
    &t + &h.scaled(3)
}

/// Sum of the signs of all 1-factorisations of GP(3k,k).
pub fn alon_tarsi_sum(k: usize) -> BigInt {
    signed_count_1f(k).difference()
}

/// Sign of the local colour triple at a vertex: positive exactly for the
/// cyclic rotations of `123`.
pub fn vertex_sign(colours: [Colour; 3]) -> Sign {
    match colours {
        [1, 2, 3] | [2, 3, 1] | [3, 1, 2] => Sign::Plus,
        _ => Sign::Minus,
    }
}

/// Product of the vertex signs of a total colouring of GP(3k,k), reading the
/// incident colours in the fixed rotation order.
pub fn sign_of(gamma: &EdgeColouring) -> Result<Sign> {
    let g = gamma.graph();
    let rotation = g.require_gp3k()?;
    let colours = gamma.total_colours()?;
    Ok((0..g.vertex_count())
        .map(|v| vertex_sign(rotation.at(v).map(|e| colours[e])))
        .product())
}

/// Product of the `T±`/`H±` arc signs along the colour triples of `gamma`.
pub fn sign_product_along_triples(gamma: &EdgeColouring) -> Result<Sign> {
    let triples = triples_of(gamma)?;
    triples
        .as_slice()
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            classify_step(w[0], w[1])
                .map(|step| step.sign())
                .ok_or(Error::NotExtendable { index: i + 1 })
        })
        .product()
}

/// A partition of the edges into three perfect matchings, in canonical form:
/// each matching is a sorted list of edge ids and the matchings are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneFactorisation {
    matchings: [Vec<usize>; 3],
}

impl OneFactorisation {
    /// The colour classes of a total proper 3-edge-colouring.
    pub fn from_colouring(gamma: &EdgeColouring) -> Result<Self> {
        let colours = gamma.total_colours()?;
        let mut matchings: [Vec<usize>; 3] = Default::default();
        for (e, c) in colours.into_iter().enumerate() {
            matchings[(c - 1) as usize].push(e);
        }
        matchings.sort();
        Ok(OneFactorisation { matchings })
    }

    pub fn matchings(&self) -> &[Vec<usize>; 3] {
        &self.matchings
    }

    /// Checks that the three matchings are perfect and partition the edges.
    pub fn is_valid(&self, g: &GpGraph) -> bool {
        let mut seen = vec![false; g.edge_count()];
        for m in &self.matchings {
            let mut covered = vec![false; g.vertex_count()];
            for &e in m {
                if e >= seen.len() || std::mem::replace(&mut seen[e], true) {
                    return false;
                }
                let (a, b) = g.edge(e).endpoints();
                if std::mem::replace(&mut covered[a], true) || std::mem::replace(&mut covered[b], true)
                {
                    return false;
                }
            }
            if !covered.into_iter().all(|c| c) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Colouring that gives matching `i` the colour `i + 1`.
    pub fn colouring<'g>(&self, g: &'g GpGraph) -> EdgeColouring<'g> {
        let mut colours = vec![0; g.edge_count()];
        for (i, m) in self.matchings.iter().enumerate() {
            for &e in m {
                colours[e] = i as Colour + 1;
            }
        }
        EdgeColouring::total(g, colours)
    }

    /// One JSON object, newline-terminated. Each factor lists its edges as
    /// vertex-name pairs sorted by vertex id.
    pub fn to_json(&self, g: &GpGraph) -> String {
        #[derive(Serialize)]
        struct Doc {
            k: usize,
            factors: Vec<Vec<[String; 2]>>,
        }
        let factors = self
            .matchings
            .iter()
            .map(|m| {
                let mut pairs: Vec<(usize, usize)> =
                    m.iter().map(|&e| g.edge(e).endpoints()).collect();
                pairs.sort();
                pairs
                    .into_iter()
                    .map(|(a, b)| [g.vertex_name(a), g.vertex_name(b)])
                    .collect()
            })
            .collect();
        let mut out = serde_json::to_string(&Doc { k: g.k(), factors }).expect("serialises");
        out.push('\n');
        out
    }
}

/// Start and end vertices of the walk classes, in stream order: `T` from
/// `123` to `231`, then `H` from `112`, `121`, `211` to their left shifts.
const WALK_CLASSES: [(bool, usize, usize); 4] = [(true, 0, 2), (false, 0, 2), (false, 2, 4), (false, 4, 0)];

fn class_graph(is_t: bool) -> TripleGraph {
    if is_t {
        TripleGraph::t()
    } else {
        TripleGraph::h()
    }
}

fn factorisation_from_walk(g: &GpGraph, graph: TripleGraph, walk: &[usize]) -> OneFactorisation {
    let (n, k) = (g.n(), g.k());
    let mut outer = vec![0 as Colour; n];
    for (idx, &v) in walk[..k].iter().enumerate() {
        let i = idx + 1;
        let ColourTriple([a, b, c]) = graph.triple_at(v);
        outer[i % n] = a;
        outer[(k + i) % n] = b;
        outer[(2 * k + i) % n] = c;
    }
    let phi = EdgeColouring::from_outer(g, &outer);
    let gamma = extend_outer(&phi).expect("walks in T and H extend");
    OneFactorisation::from_colouring(&gamma).expect("total colouring")
}

/// Streams every 1-factorisation of GP(3k,k) once, ordered by walk class and
/// then lexicographically by walk.
pub fn enumerate_1f(k: usize) -> Result<Factorisations> {
    let graph = GpGraph::gp3k(k)?;
    Ok(Factorisations {
        graph,
        class: 0,
        walks: None,
    })
}

/// Same items and order as [`enumerate_1f`], with the walk classes and the
/// first step of each walk searched in parallel.
pub fn enumerate_1f_par(k: usize) -> Result<Vec<OneFactorisation>> {
    let g = GpGraph::gp3k(k)?;
    let mut jobs = Vec::new();
    for (is_t, from, to) in WALK_CLASSES {
        let tg = class_graph(is_t);
        for first in tg.neighbours(from) {
            jobs.push((tg, from, first, to));
        }
    }
    let chunks: Vec<Vec<OneFactorisation>> = jobs
        .into_par_iter()
        .map(|(tg, from, first, to)| {
            tg.walks(k - 1, first, to)
                .expect("valid vertices")
                .map(|rest| {
                    let mut walk = Vec::with_capacity(k + 1);
                    walk.push(from);
                    walk.extend(rest);
                    factorisation_from_walk(&g, tg, &walk)
                })
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

pub struct Factorisations {
    graph: GpGraph,
    class: usize,
    walks: Option<(TripleGraph, Walks)>,
}

impl Factorisations {
    pub fn graph(&self) -> &GpGraph {
        &self.graph
    }
}

impl Iterator for Factorisations {
    type Item = OneFactorisation;

    fn next(&mut self) -> Option<OneFactorisation> {
        loop {
            if let Some((tg, walks)) = &mut self.walks {
                if let Some(walk) = walks.next() {
                    return Some(factorisation_from_walk(&self.graph, *tg, &walk));
                }
                self.walks = None;
            }
            let &(is_t, from, to) = WALK_CLASSES.get(self.class)?;
            self.class += 1;
            let tg = class_graph(is_t);
            let walks = tg.walks(self.graph.k(), from, to).expect("valid vertices");
            self.walks = Some((tg, walks));
        }
    }
}

/// Counts for the `count` command, big integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedCountReport {
    pub k: usize,
    pub count: String,
    pub positive: String,
    pub negative: String,
    pub sign_sum: String,
}

impl SignedCountReport {
    pub fn new(k: usize) -> Self {
        let signed = signed_count_1f(k);
        SignedCountReport {
            k,
            count: count_1f(k).to_string(),
            positive: signed.pos.to_string(),
            negative: signed.neg.to_string(),
            sign_sum: signed.difference().to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("serialises");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Outer colours given in the order `u_1u_2, u_2u_3, ..., u_nu_1`.
    fn outer_from_one(g: &GpGraph, from_one: &[Colour]) -> Vec<Colour> {
        let n = g.n();
        let mut outer = vec![0; n];
        for (idx, &c) in from_one.iter().enumerate() {
            outer[(idx + 1) % n] = c;
        }
        outer
    }

    fn t(s: &str) -> ColourTriple {
        ColourTriple::parse(s).unwrap()
    }

    #[test]
    fn triples_examples() {
        let g = GpGraph::gp3k(1).unwrap();
        let phi = EdgeColouring::from_outer(&g, &outer_from_one(&g, &[1, 2, 3]));
        assert_eq!(triples_of(&phi).unwrap().as_slice(), &[t("123"), t("231")]);

        let g = GpGraph::gp3k(2).unwrap();
        let phi = EdgeColouring::from_outer(&g, &[1; 6]);
        assert_eq!(triples_of(&phi).unwrap().as_slice(), &[t("111"); 3]);

        let phi = EdgeColouring::from_outer(&g, &outer_from_one(&g, &[1, 2, 1, 3, 1, 2]));
        let seq = triples_of(&phi).unwrap();
        assert_eq!(seq.get(1), t("111"));
        assert_eq!(seq.get(2), t("232"));
        assert_eq!(seq.get(3), seq.get(1).shift_left());
    }

    #[test]
    fn triples_require_complete_outer_colouring() {
        let g = GpGraph::gp3k(2).unwrap();
        let phi = EdgeColouring::from_outer_partial(&g, vec![Some(1), None, Some(2), Some(1), Some(2), Some(3)]);
        assert_eq!(triples_of(&phi), Err(Error::IncompleteColouring { edge: 1 }));

        let petersen = GpGraph::new(5, 2).unwrap();
        let phi = EdgeColouring::from_outer(&petersen, &[1, 2, 1, 2, 3]);
        assert_eq!(triples_of(&phi), Err(Error::NotApplicable { n: 5, k: 2 }));
    }

    #[test]
    fn extend_prism() {
        let g = GpGraph::gp3k(1).unwrap();
        let phi = EdgeColouring::from_outer(&g, &outer_from_one(&g, &[1, 2, 3]));
        let gamma = extend_outer(&phi).unwrap();
        assert!(gamma.is_proper());
        // spokes u1v1, u2v2, u3v3
        let spokes: Vec<_> = [1, 2, 0].iter().map(|&j| gamma.colour(g.spoke(j)).unwrap()).collect();
        assert_eq!(spokes, [2, 3, 1]);
        // v1v2, v2v3, v3v1
        let inner: Vec<_> = [1, 2, 0].iter().map(|&j| gamma.colour(g.inner_edge(j)).unwrap()).collect();
        assert_eq!(inner, [1, 2, 3]);
        assert_eq!(sign_of(&gamma).unwrap(), Sign::Minus);
        let rot = g.rotation().unwrap();
        for i in 0..3 {
            let u = vertex_sign(rot.at(g.u(i)).map(|e| gamma.colour(e).unwrap()));
            let v = vertex_sign(rot.at(g.v(i)).map(|e| gamma.colour(e).unwrap()));
            assert_eq!((u, v), (Sign::Plus, Sign::Minus));
        }
    }

    #[test]
    fn extend_rejects_monochromatic_triple() {
        let g = GpGraph::gp3k(2).unwrap();
        let phi = EdgeColouring::from_outer(&g, &outer_from_one(&g, &[1, 2, 1, 3, 1, 2]));
        assert_eq!(extend_outer(&phi), Err(Error::NotExtendable { index: 1 }));
        // φ_2 = 111 after φ_1 = 232
        let phi = EdgeColouring::from_outer(&g, &outer_from_one(&g, &[2, 1, 3, 1, 2, 1]));
        assert_eq!(extend_outer(&phi), Err(Error::NotExtendable { index: 1 }));
    }

    #[test]
    fn extend_k2_t_walk() {
        let g = GpGraph::gp3k(2).unwrap();
        // φ_1 = 123, φ_2 = 312 → outer u1u2..u6u1 = 1,3,2,1,3,2
        let phi = EdgeColouring::from_outer(&g, &outer_from_one(&g, &[1, 3, 2, 1, 3, 2]));
        let seq = triples_of(&phi).unwrap();
        assert_eq!(seq.as_slice(), &[t("123"), t("312"), t("231")]);
        let gamma = extend_outer(&phi).unwrap();
        assert!(gamma.is_proper());
        assert_eq!(gamma.scope(), Scope::Total);
    }

    #[test]
    fn vertex_sign_table() {
        assert_eq!(vertex_sign([1, 2, 3]), Sign::Plus);
        assert_eq!(vertex_sign([2, 1, 3]), Sign::Minus);
        assert_eq!(vertex_sign([3, 1, 2]), Sign::Plus);
        assert_eq!(vertex_sign([1, 3, 2]), Sign::Minus);
    }

    #[test]
    fn counts_and_sign_sums() {
        assert_eq!(count_1f(1), BigUint::from(1u32));
        assert_eq!(count_1f(2), BigUint::from(4u32));
        assert_eq!(count_1f(6), BigUint::from(84u32));
        assert_eq!(signed_count_1f(3), SignedCount::new(3u32, 0u32));
        assert_eq!(signed_count_1f(4), SignedCount::new(4u32, 16u32));
        assert_eq!(signed_count_1f(2), SignedCount::new(4u32, 0u32));
        assert_eq!(alon_tarsi_sum(2), BigInt::from(4));
        assert_eq!(alon_tarsi_sum(4), BigInt::from(-12));
        assert_eq!(alon_tarsi_sum(5), BigInt::from(-9));
    }

    #[test]
    fn enumerate_small() {
        let g1 = GpGraph::gp3k(1).unwrap();
        let all: Vec<_> = enumerate_1f(1).unwrap().collect();
        assert_eq!(all.len(), 1);
        for m in all[0].matchings() {
            let roles: HashSet<_> = m.iter().map(|&e| g1.edge(e).role).collect();
            assert_eq!(m.len(), 3);
            assert_eq!(roles.len(), 3);
        }
        assert!(all[0].is_valid(&g1));

        assert_eq!(enumerate_1f(3).unwrap().count(), 3);
        let two: HashSet<_> = enumerate_1f(2).unwrap().collect();
        assert_eq!(two.len(), 4);
        assert!(enumerate_1f(0).is_err());
    }

    #[test]
    fn parallel_enumeration_matches_sequential() {
        for k in 1..=7 {
            let seq: Vec<_> = enumerate_1f(k).unwrap().collect();
            assert_eq!(enumerate_1f_par(k).unwrap(), seq);
        }
    }

    #[test]
    fn report_json() {
        let json = SignedCountReport::new(4).to_json();
        assert_eq!(
            json,
            "{\"k\":4,\"count\":\"20\",\"positive\":\"4\",\"negative\":\"16\",\"sign_sum\":\"-12\"}\n"
        );
    }

    #[test]
    fn factorisation_json_is_sorted() {
        let g = GpGraph::gp3k(1).unwrap();
        let f = enumerate_1f(1).unwrap().next().unwrap();
        let doc: serde_json::Value = serde_json::from_str(&f.to_json(&g)).unwrap();
        assert_eq!(doc["k"], 1);
        let factors = doc["factors"].as_array().unwrap();
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|f| f.as_array().unwrap().len() == 3));
    }
}
