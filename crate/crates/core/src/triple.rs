//! Colour-triple graphs and exact walk counting.
//!
//! `T` is a triangle on the vertices `x_0, x_1, x_2`, `H` a 6-cycle on
//! `y_0, y_1, y_2, z_0, z_1, z_2`. In both, vertex position `p` is followed
//! clockwise by position `p + 1`. The signed variants carry a sign on each
//! direction of each edge: clockwise arcs are positive in `T±` and negative
//! in `H±`.
//!
//! With colours `(a, b, c) = (1, 2, 3)` the positions are labelled by
//! concrete triples: `T` reads `abc, cab, bca` and `H` reads
//! `aab, bcc, aba, ccb, baa, cbc`. Moving two steps clockwise is a left
//! cyclic shift of the triple.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

pub type Colour = u8;

/// Ordered triple of colours from `{1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourTriple(pub [Colour; 3]);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriplePattern {
    /// Three distinct colours: a vertex of some copy of `T`.
    Distinct,
    /// Exactly two equal colours: a vertex of some copy of `H`.
    TwoEqual,
    Monochromatic,
}

impl ColourTriple {
    pub fn new(a: Colour, b: Colour, c: Colour) -> Self {
        debug_assert!([a, b, c].iter().all(|x| (1..=3).contains(x)));
        ColourTriple([a, b, c])
    }

    /// Parses `"123"`-style notation.
    pub fn parse(s: &str) -> Option<Self> {
        let digits: Vec<Colour> = s
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as Colour))
            .collect::<Option<_>>()?;
        match digits[..] {
            [a, b, c] if [a, b, c].iter().all(|x| (1..=3).contains(x)) => {
                Some(ColourTriple([a, b, c]))
            }
            _ => None,
        }
    }

    pub fn pattern(&self) -> TriplePattern {
        let [a, b, c] = self.0;
        if a == b && b == c {
            TriplePattern::Monochromatic
        } else if a != b && b != c && a != c {
            TriplePattern::Distinct
        } else {
            TriplePattern::TwoEqual
        }
    }

    /// `(c1, c2, c3) -> (c2, c3, c1)`.
    pub fn shift_left(&self) -> Self {
        let [a, b, c] = self.0;
        ColourTriple([b, c, a])
    }

    /// `(c1, c2, c3) -> (c3, c1, c2)`.
    pub fn shift_right(&self) -> Self {
        let [a, b, c] = self.0;
        ColourTriple([c, a, b])
    }

    /// Applies a colour relabelling given as the images of `1, 2, 3`.
    pub fn relabel(&self, perm: [Colour; 3]) -> Self {
        ColourTriple(self.0.map(|c| perm[(c - 1) as usize]))
    }
}

impl fmt::Display for ColourTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}{b}{c}")
    }
}

/// The colour that differs from two distinct colours.
pub(crate) fn third_colour(a: Colour, b: Colour) -> Option<Colour> {
    (a != b).then(|| 6 - a - b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Clockwise,
    CounterClockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    T,
    H,
}

/// An arc between two concrete consecutive colour triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub family: Family,
    pub direction: Direction,
}

impl Step {
    /// Sign of the arc in `T±` or `H±`.
    pub fn sign(&self) -> crate::Sign {
        let kind = match self.family {
            Family::T => TripleKind::TSigned,
            Family::H => TripleKind::HSigned,
        };
        kind.arc_sign(self.direction)
    }
}

const PERMUTATIONS: [[Colour; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

/// Decides whether `q` may follow `p` as consecutive colour triples, and if
/// so in which triple graph and direction the step runs.
pub fn classify_step(p: ColourTriple, q: ColourTriple) -> Option<Step> {
    match p.pattern() {
        TriplePattern::Monochromatic => None,
        TriplePattern::Distinct => {
            let direction = if q == p.shift_right() {
                Direction::Clockwise
            } else if q == p.shift_left() {
                Direction::CounterClockwise
            } else {
                return None;
            };
            Some(Step {
                family: Family::T,
                direction,
            })
        }
        TriplePattern::TwoEqual => {
            let h = TripleGraph::new(TripleKind::H);
            for perm in PERMUTATIONS {
                for pos in 0..6 {
                    if h.triple_at(pos).relabel(perm) != p {
                        continue;
                    }
                    let direction = if h.triple_at((pos + 1) % 6).relabel(perm) == q {
                        Direction::Clockwise
                    } else if h.triple_at((pos + 5) % 6).relabel(perm) == q {
                        Direction::CounterClockwise
                    } else {
                        continue;
                    };
                    return Some(Step {
                        family: Family::H,
                        direction,
                    });
                }
            }
            None
        }
    }
}

/// Pair of nonnegative counts split by sign. Multiplication is the
/// sign-tracking product `(p1, n1)(p2, n2) = (p1 p2 + n1 n2, p1 n2 + n1 p2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedCount {
    pub pos: BigUint,
    pub neg: BigUint,
}

impl SignedCount {
    pub fn new(pos: impl Into<BigUint>, neg: impl Into<BigUint>) -> Self {
        SignedCount {
            pos: pos.into(),
            neg: neg.into(),
        }
    }

    pub fn zero() -> Self {
        SignedCount::default()
    }

    pub fn one() -> Self {
        SignedCount::new(1u32, 0u32)
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_zero() && self.neg.is_zero()
    }

    pub fn of_sign(sign: crate::Sign) -> Self {
        match sign {
            crate::Sign::Plus => SignedCount::new(1u32, 0u32),
            crate::Sign::Minus => SignedCount::new(0u32, 1u32),
        }
    }

    pub fn total(&self) -> BigUint {
        &self.pos + &self.neg
    }

    /// `pos - neg`.
    pub fn difference(&self) -> BigInt {
        BigInt::from(self.pos.clone()) - BigInt::from(self.neg.clone())
    }

    pub fn swapped(&self) -> Self {
        SignedCount {
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    pub fn scaled(&self, factor: u32) -> Self {
        SignedCount {
            pos: &self.pos * factor,
            neg: &self.neg * factor,
        }
    }
}

impl Add for &SignedCount {
    type Output = SignedCount;

    fn add(self, rhs: &SignedCount) -> SignedCount {
        SignedCount {
            pos: &self.pos + &rhs.pos,
            neg: &self.neg + &rhs.neg,
        }
    }
}

impl Add for SignedCount {
    type Output = SignedCount;

    fn add(self, rhs: SignedCount) -> SignedCount {
        &self + &rhs
    }
}

impl Mul for &SignedCount {
    type Output = SignedCount;

    fn mul(self, rhs: &SignedCount) -> SignedCount {
        SignedCount {
            pos: &self.pos * &rhs.pos + &self.neg * &rhs.neg,
            neg: &self.pos * &rhs.neg + &self.neg * &rhs.pos,
        }
    }
}

impl Mul for SignedCount {
    type Output = SignedCount;

    fn mul(self, rhs: SignedCount) -> SignedCount {
        &self * &rhs
    }
}

impl fmt::Display for SignedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(+{}, -{})", self.pos, self.neg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleKind {
    T,
    H,
    TSigned,
    HSigned,
}

impl TripleKind {
    pub const ALL: [TripleKind; 4] = [
        TripleKind::T,
        TripleKind::H,
        TripleKind::TSigned,
        TripleKind::HSigned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TripleKind::T => "T",
            TripleKind::H => "H",
            TripleKind::TSigned => "T±",
            TripleKind::HSigned => "H±",
        }
    }

    pub fn order(self) -> usize {
        match self {
            TripleKind::T | TripleKind::TSigned => 3,
            TripleKind::H | TripleKind::HSigned => 6,
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(self, TripleKind::TSigned | TripleKind::HSigned)
    }

    pub fn arc_sign(self, direction: Direction) -> crate::Sign {
        use crate::Sign::{Minus, Plus};
        match (self, direction) {
            (TripleKind::T | TripleKind::H, _) => Plus,
            (TripleKind::TSigned, Direction::Clockwise) => Plus,
            (TripleKind::TSigned, Direction::CounterClockwise) => Minus,
            (TripleKind::HSigned, Direction::Clockwise) => Minus,
            (TripleKind::HSigned, Direction::CounterClockwise) => Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub direction: Direction,
    pub sign: crate::Sign,
}

/// One of `T`, `H`, `T±`, `H±`. Vertices are cycle positions `0..order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleGraph {
    kind: TripleKind,
}

const T_PATTERN: [[Colour; 3]; 3] = [[1, 2, 3], [3, 1, 2], [2, 3, 1]];
const H_PATTERN: [[Colour; 3]; 6] = [
    [1, 1, 2],
    [2, 3, 3],
    [1, 2, 1],
    [3, 3, 2],
    [2, 1, 1],
    [3, 2, 3],
];

impl TripleGraph {
    pub fn new(kind: TripleKind) -> Self {
        TripleGraph { kind }
    }

    pub fn t() -> Self {
        Self::new(TripleKind::T)
    }

    pub fn h() -> Self {
        Self::new(TripleKind::H)
    }

    pub fn t_signed() -> Self {
        Self::new(TripleKind::TSigned)
    }

    pub fn h_signed() -> Self {
        Self::new(TripleKind::HSigned)
    }

    pub fn kind(&self) -> TripleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.kind.order()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// `x_i` for the triangle kinds, `y_i`/`z_i` for the hexagon kinds.
    pub fn vertex_name(&self, v: usize) -> String {
        match self.order() {
            3 => format!("x{v}"),
            _ if v < 3 => format!("y{v}"),
            _ => format!("z{}", v - 3),
        }
    }

    /// Colour triple labelling vertex `v` under `(a, b, c) = (1, 2, 3)`.
    pub fn triple_at(&self, v: usize) -> ColourTriple {
        match self.order() {
            3 => ColourTriple(T_PATTERN[v]),
            _ => ColourTriple(H_PATTERN[v]),
        }
    }

    pub fn vertex_of(&self, triple: ColourTriple) -> Option<usize> {
        self.vertices().find(|&v| self.triple_at(v) == triple)
    }

    pub fn direction(&self, from: usize, to: usize) -> Option<Direction> {
        let m = self.order();
        if from >= m || to >= m {
            return None;
        }
        if (from + 1) % m == to {
            Some(Direction::Clockwise)
        } else if (to + 1) % m == from {
            Some(Direction::CounterClockwise)
        } else {
            None
        }
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let m = self.order();
        let mut out = Vec::with_capacity(2 * m);
        for from in 0..m {
            for (to, direction) in [
                ((from + 1) % m, Direction::Clockwise),
                ((from + m - 1) % m, Direction::CounterClockwise),
            ] {
                out.push(Arc {
                    from,
                    to,
                    direction,
                    sign: self.kind.arc_sign(direction),
                });
            }
        }
        out
    }

    /// Neighbours of `v` in ascending vertex order.
    pub fn neighbours(&self, v: usize) -> [usize; 2] {
        let m = self.order();
        let a = (v + 1) % m;
        let b = (v + m - 1) % m;
        [a.min(b), a.max(b)]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexNotInGraph {
                graph: self.kind.name(),
                vertex: v,
            })
        }
    }

    pub fn transfer_matrix(&self) -> TransferMatrix {
        let mut m = TransferMatrix::zero(self.order());
        for arc in self.arcs() {
            m.entries[arc.from][arc.to] = SignedCount::of_sign(arc.sign);
        }
        m
    }

    /// Number of walks of the given length from `from` to `to`, split by the
    /// product of arc signs.
    pub fn count_walks(&self, length: usize, from: usize, to: usize) -> Result<SignedCount> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        Ok(self.transfer_matrix().pow(length).entries[from][to].clone())
    }

    /// Sign of the walk given as a vertex sequence, or `None` if two
    /// consecutive vertices are not adjacent.
    pub fn walk_sign(&self, walk: &[usize]) -> Option<crate::Sign> {
        walk.windows(2).try_fold(crate::Sign::Plus, |acc, w| {
            let d = self.direction(w[0], w[1])?;
            Some(acc * self.kind.arc_sign(d))
        })
    }

    /// Lazily enumerates walks of the given length from `from` to `to` in
    /// lexicographic order of their vertex sequences.
    pub fn walks(&self, length: usize, from: usize, to: usize) -> Result<Walks> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        Ok(Walks::new(*self, length, from, to))
    }
}

/// Square matrix over the sign semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    entries: Vec<Vec<SignedCount>>,
}

impl TransferMatrix {
    pub fn zero(size: usize) -> Self {
        TransferMatrix {
            entries: vec![vec![SignedCount::zero(); size]; size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.entries[i][i] = SignedCount::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &SignedCount {
        &self.entries[i][j]
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.size());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: &TransferMatrix) -> TransferMatrix {
        let n = self.size();
        let mut out = TransferMatrix::zero(n);
        for i in 0..n {
            for l in 0..n {
                let a = &self.entries[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[l][j];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i][j] = &out.entries[i][j] + &(a * b);
                }
            }
        }
        out
    }
}

/// Iterator over the walks of a fixed length between two vertices.
///
/// Branches that cannot reach the target in the remaining steps are cut
/// using a reachability table, so every emitted prefix extends to a walk.
#[derive(Debug, Clone)]
pub struct Walks {
    graph: TripleGraph,
    to: usize,
    length: usize,
    // reachable[r][v]: some walk of length r leads from v to `to`
    reachable: Vec<Vec<bool>>,
    path: Vec<usize>,
    // choice index at each depth (0 or 1 into the sorted neighbour list)
    choices: Vec<usize>,
    started: bool,
    done: bool,
}

impl Walks {
    fn new(graph: TripleGraph, length: usize, from: usize, to: usize) -> Self {
        let m = graph.order();
        let mut reachable = vec![vec![false; m]; length + 1];
        reachable[0][to] = true;
        for r in 1..=length {
            for v in 0..m {
                reachable[r][v] = graph.neighbours(v).iter().any(|&w| reachable[r - 1][w]);
            }
        }
        let done = !reachable[length][from];
        Walks {
            graph,
            to,
            length,
            reachable,
            path: vec![from],
            choices: Vec::with_capacity(length),
            started: false,
            done,
        }
    }

    /// Extends the current path greedily with the smallest feasible choices,
    /// starting the search at depth `self.choices.len()` with choice `first`.
    fn descend(&mut self, mut first: usize) -> bool {
        loop {
            if self.path.len() == self.length + 1 {
                debug_assert_eq!(*self.path.last().unwrap(), self.to);
                return true;
            }
            let v = *self.path.last().unwrap();
            let remaining = self.length - self.path.len();
            let nbrs = self.graph.neighbours(v);
            match (first..2).find(|&c| self.reachable[remaining][nbrs[c]]) {
                Some(c) => {
                    self.choices.push(c);
                    self.path.push(nbrs[c]);
                    first = 0;
                }
                None => {
                    // backtrack
                    match self.choices.pop() {
                        Some(c) => {
                            self.path.pop();
                            first = c + 1;
                        }
                        None => return false,
                    }
                }
            }
        }
    }
}

impl Iterator for Walks {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.descend(0)
        } else {
            match self.choices.pop() {
                Some(c) => {
                    self.path.pop();
                    self.descend(c + 1)
                }
                None => false,
            }
        };
        if found {
            Some(self.path.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// Lifts a walk in `T` starting at `x_0` to the walk in `H` starting at `y_0`
/// whose steps have the same rotational directions. Returns `None` if `walk`
/// is not a walk in `T` from `x_0`.
pub fn lift_walk(walk: &[usize]) -> Option<Vec<usize>> {
    let t = TripleGraph::t();
    if walk.first() != Some(&0) {
        return None;
    }
    let mut pos = 0usize;
    let mut out = Vec::with_capacity(walk.len());
    out.push(pos);
    for w in walk.windows(2) {
        pos = match t.direction(w[0], w[1])? {
            Direction::Clockwise => (pos + 1) % 6,
            Direction::CounterClockwise => (pos + 5) % 6,
        };
        out.push(pos);
    }
    Some(out)
}

/// Jacobsthal number `J(k)` from `J(0) = 0`, `J(1) = 1`,
/// `J(k) = J(k-1) + 2 J(k-2)`.
pub fn jacobsthal(k: usize) -> BigUint {
    let mut prev = BigUint::zero();
    let mut cur = BigUint::one();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &cur + (&prev << 1u32);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `J(k) = (2^k + (-1)^(k+1)) / 3`.
pub fn jacobsthal_closed_form(k: usize) -> Result<BigUint> {
    exact_div(pow2(k) - neg_one_pow(k), 3, "J(k)")
}

/// Distance between the endpoints counted by `t_k(ℓ)` in the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleDistance {
    Same,
    Adjacent,
}

/// Closed forms for walks in `T`: `t_k(0) = (2^k + 2(-1)^k)/3` and
/// `t_k(1) = J(k)`.
pub fn closed_form_t(k: usize, distance: TriangleDistance) -> Result<BigUint> {
    match distance {
        TriangleDistance::Same => exact_div(pow2(k) + 2 * neg_one_pow(k), 3, "t_k(0)"),
        TriangleDistance::Adjacent => exact_div(pow2(k) - neg_one_pow(k), 3, "t_k(1)"),
    }
}

/// Positive and negative walks of length `k` from `x_0` to `x_2` in `T±`:
///
/// `t+ = (2^k - (-1)^k (1 + (-3)^ceil(k/2))) / 6`,
/// `t- = (2^k - (-1)^k (1 - (-3)^ceil(k/2))) / 6`.
///
/// For `k = 0` there is no walk between the distinct endpoints and the
/// result is `(0, 0)`.
pub fn closed_form_signed_t(k: usize) -> Result<SignedCount> {
    if k == 0 {
        return Ok(SignedCount::zero());
    }
    let sign = neg_one_pow(k);
    let power: BigInt = Pow::pow(BigInt::from(-3), k.div_ceil(2) as u32);
    let two_k = pow2(k);
    let pos = exact_div(&two_k - &sign * (BigInt::one() + &power), 6, "t+_k(2)")?;
    let neg = exact_div(&two_k - &sign * (BigInt::one() - &power), 6, "t-_k(2)")?;
    Ok(SignedCount { pos, neg })
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

fn neg_one_pow(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn exact_div(numerator: BigInt, divisor: u32, what: &'static str) -> Result<BigUint> {
    let (q, r) = numerator.div_rem(&BigInt::from(divisor));
    match (r.is_zero(), q.sign()) {
        (true, BigSign::Plus | BigSign::NoSign) => Ok(q.magnitude().clone()),
        _ => Err(Error::NonIntegerResult {
            what,
            numerator: numerator.to_string(),
            divisor,
        }),
    }
}
