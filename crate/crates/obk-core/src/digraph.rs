//! Vertex/arc model and algebraic host-graph constructors.
//!
//! Every host this library touches is the symmetric digraph of an undirected
//! graph, so arc membership reduces to edge membership on the unordered pair.
//! Membership is computed from the host's parameters; nothing stores an
//! adjacency list except the blown cycle, whose column order is itself a
//! parameter.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HostError {
    #[error("complete symmetric digraph needs at least 2 vertices, got {0}")]
    OrderTooSmall(u32),
    #[error("split representation needs an even order, got {0}")]
    SplitOddOrder(u32),
    #[error("circulant distance {distance} out of range 1..={max} for order {m}")]
    DistanceOutOfRange { m: u32, distance: u32, max: u32 },
    #[error("circulant connection set must be non-empty")]
    EmptyConnectionSet,
    #[error("order {0} does not support the mixed 1/3 connection pattern (need even, >= 6)")]
    BadOneThreeOrder(u32),
    #[error("blown cycle needs at least 3 columns, got {0}")]
    TooFewColumns(usize),
    #[error("duplicate column label {0} in blown cycle")]
    DuplicateColumn(u32),
    #[error("doubled host order must be even and at least 10, got {0}")]
    BadDoubledOrder(u32),
}

/// Which of the two rows of a doubled host a vertex sits in. Plain hosts on
/// n vertices use `X` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    X,
    Y,
}

/// A vertex: a column index (a residue modulo the host's column count) plus
/// a row tag. One carrier type serves every host, so cross-module composition
/// is pure relabelling.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub column: u32,
    pub row: Row,
}

impl Vertex {
    pub fn x(column: u32) -> Self {
        Self {
            column,
            row: Row::X,
        }
    }

    pub fn y(column: u32) -> Self {
        Self {
            column,
            row: Row::Y,
        }
    }

    /// Parse a token like `x7` or `y12`.
    pub fn parse(token: &str) -> Option<Self> {
        let (row, digits) = match token.as_bytes().first()? {
            b'x' => (Row::X, &token[1..]),
            b'y' => (Row::Y, &token[1..]),
            _ => return None,
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().map(|column| Vertex { column, row })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.row {
            Row::X => 'x',
            Row::Y => 'y',
        };
        write!(f, "{tag}{}", self.column)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered pair of distinct vertices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        debug_assert!(tail != head, "digraphs are strict");
        Self { tail, head }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Algebraic description of a host digraph. All values are immutable after
/// construction and safe to share across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HostSpec {
    /// Complete symmetric digraph on `n` vertices. With `split` set, the
    /// vertex set is the doubled form (columns 0..n/2, both rows); otherwise
    /// it is the plain form (columns 0..n, row X).
    CompleteSymmetric { n: u32, split: bool },
    /// Undirected circulant on Z_m with the given connection set, viewed as
    /// its symmetric digraph.
    Circulant { m: u32, distances: BTreeSet<u32> },
    /// The mixed pattern on even m: all distance-1 edges plus the distance-3
    /// edges based at even columns.
    CirculantOneThreeEven { m: u32 },
    /// Blow-up of an m-cycle on the listed columns: between consecutive
    /// columns all four cross edges; vertical edges only when `vertical`.
    BlownCycle { columns: Vec<u32>, vertical: bool },
    /// The sparse doubled host on 2m vertices: blow-up of the {1,2}-circulant
    /// (m odd) or the mixed 1/3 pattern (m even), plus all vertical edges.
    WStar { two_m: u32 },
}

impl HostSpec {
    pub fn complete_symmetric(n: u32) -> Result<Self, HostError> {
        if n < 2 {
            return Err(HostError::OrderTooSmall(n));
        }
        Ok(HostSpec::CompleteSymmetric { n, split: false })
    }

    /// Complete symmetric digraph on an even order, carried on the doubled
    /// vertex set Z_{n/2} x {X,Y}.
    pub fn complete_symmetric_split(n: u32) -> Result<Self, HostError> {
        if n < 2 {
            return Err(HostError::OrderTooSmall(n));
        }
        if !n.is_multiple_of(2) {
            return Err(HostError::SplitOddOrder(n));
        }
        Ok(HostSpec::CompleteSymmetric { n, split: true })
    }

    pub fn circulant(m: u32, distances: impl IntoIterator<Item = u32>) -> Result<Self, HostError> {
        let distances: BTreeSet<u32> = distances.into_iter().collect();
        if distances.is_empty() {
            return Err(HostError::EmptyConnectionSet);
        }
        for &d in &distances {
            if d == 0 || d > m / 2 {
                return Err(HostError::DistanceOutOfRange {
                    m,
                    distance: d,
                    max: m / 2,
                });
            }
        }
        Ok(HostSpec::Circulant { m, distances })
    }

    pub fn circulant_one_three_even(m: u32) -> Result<Self, HostError> {
        if m < 6 || !m.is_multiple_of(2) {
            return Err(HostError::BadOneThreeOrder(m));
        }
        Ok(HostSpec::CirculantOneThreeEven { m })
    }

    pub fn blown_cycle(columns: &[u32], vertical: bool) -> Result<Self, HostError> {
        if columns.len() < 3 {
            return Err(HostError::TooFewColumns(columns.len()));
        }
        let mut seen = BTreeSet::new();
        for &c in columns {
            if !seen.insert(c) {
                return Err(HostError::DuplicateColumn(c));
            }
        }
        Ok(HostSpec::BlownCycle {
            columns: columns.to_vec(),
            vertical,
        })
    }

    pub fn w_star(two_m: u32) -> Result<Self, HostError> {
        // The base circulant patterns are well defined from m = 5 (odd) and
        // m = 6 (even) upwards, hence the order-10 floor.
        if !two_m.is_multiple_of(2) || two_m < 10 {
            return Err(HostError::BadDoubledOrder(two_m));
        }
        Ok(HostSpec::WStar { two_m })
    }

    /// Column modulus of the host (the m subscripts are reduced by).
    pub fn columns(&self) -> u32 {
        match self {
            HostSpec::CompleteSymmetric { n, split: true } => n / 2,
            HostSpec::CompleteSymmetric { n, split: false } => *n,
            HostSpec::Circulant { m, .. } => *m,
            HostSpec::CirculantOneThreeEven { m } => *m,
            HostSpec::BlownCycle { columns, .. } => columns.len() as u32,
            HostSpec::WStar { two_m } => two_m / 2,
        }
    }

    pub fn vertex_count(&self) -> u32 {
        match self {
            HostSpec::CompleteSymmetric { n, .. } => *n,
            HostSpec::Circulant { m, .. } => *m,
            HostSpec::CirculantOneThreeEven { m } => *m,
            HostSpec::BlownCycle { columns, .. } => 2 * columns.len() as u32,
            HostSpec::WStar { two_m } => *two_m,
        }
    }

    /// Number of undirected edges underlying the host.
    pub fn edge_count(&self) -> u64 {
        match self {
            HostSpec::CompleteSymmetric { n, .. } => u64::from(*n) * u64::from(n - 1) / 2,
            HostSpec::Circulant { m, distances } => {
                let m = u64::from(*m);
                distances
                    .iter()
                    .map(|&d| if u64::from(d) * 2 == m { m / 2 } else { m })
                    .sum()
            }
            HostSpec::CirculantOneThreeEven { m } => u64::from(*m) * 3 / 2,
            HostSpec::BlownCycle { columns, vertical } => {
                let m = columns.len() as u64;
                4 * m + if *vertical { m } else { 0 }
            }
            HostSpec::WStar { two_m } => {
                let m = u64::from(two_m / 2);
                if m % 2 == 1 {
                    9 * m
                } else {
                    7 * m
                }
            }
        }
    }

    pub fn arc_count(&self) -> u64 {
        2 * self.edge_count()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match self {
            HostSpec::CompleteSymmetric { n, split: true } => v.column < n / 2,
            HostSpec::CompleteSymmetric { n, split: false } => v.column < *n && v.row == Row::X,
            HostSpec::Circulant { m, .. } => v.column < *m && v.row == Row::X,
            HostSpec::CirculantOneThreeEven { m } => v.column < *m && v.row == Row::X,
            HostSpec::BlownCycle { columns, .. } => columns.contains(&v.column),
            HostSpec::WStar { two_m } => v.column < two_m / 2,
        }
    }

    /// Undirected adjacency of two distinct valid vertices.
    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u == v || !self.contains_vertex(u) || !self.contains_vertex(v) {
            return false;
        }
        match self {
            HostSpec::CompleteSymmetric { .. } => true,
            HostSpec::Circulant { m, distances } => {
                distances.contains(&circulant_distance(*m, u.column, v.column))
            }
            HostSpec::CirculantOneThreeEven { m } => one_three_adjacent(*m, u.column, v.column),
            HostSpec::BlownCycle { columns, vertical } => {
                if u.column == v.column {
                    return *vertical;
                }
                let pu = columns.iter().position(|&c| c == u.column).unwrap();
                let pv = columns.iter().position(|&c| c == v.column).unwrap();
                let m = columns.len();
                (pu + 1) % m == pv || (pv + 1) % m == pu
            }
            HostSpec::WStar { two_m } => {
                let m = two_m / 2;
                if u.column == v.column {
                    // Distinct rows, same column: a vertical edge.
                    return true;
                }
                if m % 2 == 1 {
                    let d = circulant_distance(m, u.column, v.column);
                    d == 1 || d == 2
                } else {
                    one_three_adjacent(m, u.column, v.column)
                }
            }
        }
    }

    pub fn contains_arc(&self, arc: &Arc) -> bool {
        arc.tail != arc.head && self.contains_edge(arc.tail, arc.head)
    }

    /// All vertices in canonical order (column, then row with X < Y).
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        match self {
            HostSpec::CompleteSymmetric { n, split: false }
            | HostSpec::Circulant { m: n, .. }
            | HostSpec::CirculantOneThreeEven { m: n } => {
                out.extend((0..*n).map(Vertex::x));
            }
            HostSpec::CompleteSymmetric { n, split: true } => {
                for c in 0..n / 2 {
                    out.push(Vertex::x(c));
                    out.push(Vertex::y(c));
                }
            }
            HostSpec::BlownCycle { columns, .. } => {
                let mut cols: Vec<u32> = columns.clone();
                cols.sort_unstable();
                for c in cols {
                    out.push(Vertex::x(c));
                    out.push(Vertex::y(c));
                }
            }
            HostSpec::WStar { two_m } => {
                for c in 0..two_m / 2 {
                    out.push(Vertex::x(c));
                    out.push(Vertex::y(c));
                }
            }
        }
        out
    }

    /// All arcs in canonical (tail, head) order.
    pub fn arcs(&self) -> Vec<Arc> {
        let vertices = self.vertices();
        let mut out = Vec::new();
        for &u in &vertices {
            for &v in &vertices {
                if u != v && self.contains_edge(u, v) {
                    out.push(Arc::new(u, v));
                }
            }
        }
        out
    }

    /// Undirected edges as ordered (lesser, greater) vertex pairs.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let vertices = self.vertices();
        let mut out = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if self.contains_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Circular distance between two columns of Z_m, in 0..=m/2.
pub fn circulant_distance(m: u32, a: u32, b: u32) -> u32 {
    let d = (a as i64 - b as i64).rem_euclid(m as i64) as u32;
    d.min(m - d)
}

/// Adjacency in the mixed pattern: distance-1 edges everywhere, distance-3
/// edges based at even columns only.
fn one_three_adjacent(m: u32, a: u32, b: u32) -> bool {
    let diff = (b as i64 - a as i64).rem_euclid(m as i64) as u32;
    if diff == 1 || diff == m - 1 {
        return true;
    }
    (diff == 3 && a.is_multiple_of(2)) || (diff == m - 3 && b.is_multiple_of(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_tokens_round_trip() {
        for token in ["x0", "y12", "x117"] {
            assert_eq!(Vertex::parse(token).unwrap().to_string(), token);
        }
        assert!(Vertex::parse("z3").is_none());
        assert!(Vertex::parse("x").is_none());
        assert!(Vertex::parse("x-1").is_none());
        assert!(Vertex::parse("x 1").is_none());
    }

    #[test]
    fn complete_symmetric_census() {
        assert_eq!(HostSpec::complete_symmetric(3).unwrap().arc_count(), 6);
        assert_eq!(HostSpec::complete_symmetric(6).unwrap().arc_count(), 30);
        assert_eq!(HostSpec::complete_symmetric(14).unwrap().arc_count(), 182);
        assert_eq!(
            HostSpec::complete_symmetric(1),
            Err(HostError::OrderTooSmall(1))
        );
        assert_eq!(
            HostSpec::complete_symmetric_split(14).unwrap().arc_count(),
            182
        );
        assert_eq!(
            HostSpec::complete_symmetric_split(7),
            Err(HostError::SplitOddOrder(7))
        );
    }

    #[test]
    fn circulant_census_and_degree() {
        let c = HostSpec::circulant(7, [1, 2]).unwrap();
        assert_eq!(c.edge_count(), 14);
        for v in c.vertices() {
            let deg = c
                .vertices()
                .iter()
                .filter(|&&u| c.contains_edge(v, u))
                .count();
            assert_eq!(deg, 4);
        }

        // A diameter class contributes m/2 edges and degree 1.
        let matching = HostSpec::circulant(8, [4]).unwrap();
        assert_eq!(matching.edge_count(), 4);
        for v in matching.vertices() {
            let deg = matching
                .vertices()
                .iter()
                .filter(|&&u| matching.contains_edge(v, u))
                .count();
            assert_eq!(deg, 1);
        }

        assert!(matches!(
            HostSpec::circulant(7, [4]),
            Err(HostError::DistanceOutOfRange { .. })
        ));
    }

    #[test]
    fn circulant_distance_three_is_a_seven_cycle() {
        let c = HostSpec::circulant(7, [3]).unwrap();
        assert_eq!(c.edge_count(), 7);
        // Walk the unique 2-regular structure from 0 and count the cycle.
        let mut visited = [false; 7];
        let mut cur = 0u32;
        let mut prev = u32::MAX;
        let mut steps = 0;
        loop {
            visited[cur as usize] = true;
            steps += 1;
            let next = (0..7)
                .find(|&v| v != cur && v != prev && c.contains_edge(Vertex::x(cur), Vertex::x(v)))
                .unwrap();
            if next == 0 {
                break;
            }
            prev = cur;
            cur = next;
        }
        assert_eq!(steps, 7);
        assert!(visited.iter().all(|&b| b));
    }

    #[test]
    fn w_star_census_and_verticals() {
        let w10 = HostSpec::w_star(10).unwrap();
        assert!(w10.contains_arc(&Arc::new(Vertex::x(2), Vertex::y(2))));
        assert!(w10.contains_arc(&Arc::new(Vertex::y(2), Vertex::x(2))));
        assert_eq!(HostSpec::w_star(14).unwrap().arc_count(), 126);
        assert_eq!(HostSpec::w_star(16).unwrap().arc_count(), 112);
        assert_eq!(HostSpec::w_star(9), Err(HostError::BadDoubledOrder(9)));
        assert_eq!(HostSpec::w_star(8), Err(HostError::BadDoubledOrder(8)));
    }

    #[test]
    fn blown_cycle_census_and_orders() {
        let b3 = HostSpec::blown_cycle(&[0, 1, 2], false).unwrap();
        assert_eq!(b3.arc_count(), 24);
        assert_eq!(b3.edge_count(), 12);

        // Stepping by 3 in Z_7 is a valid column order.
        let order = [0u32, 3, 6, 2, 5, 1, 4];
        let b7 = HostSpec::blown_cycle(&order, false).unwrap();
        assert_eq!(b7.arc_count(), 56);
        // Adjacency follows the listed order, not numeric order.
        assert!(b7.contains_edge(Vertex::x(0), Vertex::y(3)));
        assert!(!b7.contains_edge(Vertex::x(0), Vertex::x(1)));

        assert_eq!(
            HostSpec::blown_cycle(&[0, 1, 1], false),
            Err(HostError::DuplicateColumn(1))
        );
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let hosts = [
            HostSpec::complete_symmetric(6).unwrap(),
            HostSpec::complete_symmetric_split(12).unwrap(),
            HostSpec::circulant(9, [2, 4]).unwrap(),
            HostSpec::circulant(8, [1, 4]).unwrap(),
            HostSpec::circulant_one_three_even(8).unwrap(),
            HostSpec::blown_cycle(&[0, 3, 6, 2, 5, 1, 4], false).unwrap(),
            HostSpec::blown_cycle(&[0, 1, 2, 3], true).unwrap(),
            HostSpec::w_star(14).unwrap(),
            HostSpec::w_star(16).unwrap(),
        ];
        for host in &hosts {
            let arcs = host.arcs();
            assert_eq!(
                arcs.len() as u64,
                host.arc_count(),
                "census mismatch for {host:?}"
            );
            assert_eq!(host.vertices().len() as u64, u64::from(host.vertex_count()));
            let set: std::collections::BTreeSet<Arc> = arcs.iter().copied().collect();
            assert_eq!(set.len(), arcs.len());
            // Membership and enumeration agree on every ordered pair.
            for &u in &host.vertices() {
                for &v in &host.vertices() {
                    if u == v {
                        continue;
                    }
                    assert_eq!(
                        host.contains_arc(&Arc::new(u, v)),
                        set.contains(&Arc::new(u, v))
                    );
                }
            }
        }
    }

    #[test]
    fn w_star_is_blown_circulant_plus_verticals() {
        for two_m in [14u32, 16] {
            let m = two_m / 2;
            let w = HostSpec::w_star(two_m).unwrap();
            let base = if m % 2 == 1 {
                HostSpec::circulant(m, [1, 2]).unwrap()
            } else {
                HostSpec::circulant_one_three_even(m).unwrap()
            };
            let mut cross = 0u64;
            let mut vertical = 0u64;
            for arc in w.arcs() {
                if arc.tail.column == arc.head.column {
                    vertical += 1;
                } else {
                    assert!(
                        base.contains_edge(Vertex::x(arc.tail.column), Vertex::x(arc.head.column))
                    );
                    cross += 1;
                }
            }
            assert_eq!(vertical, u64::from(two_m));
            assert_eq!(cross + vertical, w.arc_count());
            assert_eq!(cross, 8 * base.edge_count());
        }
    }
}
