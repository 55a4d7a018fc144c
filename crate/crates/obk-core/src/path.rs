//! Dipaths, directed cycles, column translations, and the (cyclic)
//! concatenation calculus. Paths store vertices; arcs are derived.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::digraph::{Arc, HostSpec, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("a dipath needs at least 2 vertices, got {0}")]
    TooShort(usize),
    #[error("a directed cycle needs at least 2 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("repeated vertex {0}")]
    RepeatedVertex(Vertex),
    #[error("empty sequence")]
    EmptySequence,
    #[error("endpoint mismatch at index {index}: terminal {terminal} vs source {start}")]
    EndpointMismatch {
        index: usize,
        terminal: Vertex,
        start: Vertex,
    },
    #[error("vertex {vertex} reused by the path at index {index}")]
    VertexReuse { index: usize, vertex: Vertex },
    #[error("translation by {shift} leaves the order-{two_m} host at arc {arc}")]
    TranslationOutsideHost { shift: i64, two_m: u32, arc: Arc },
    #[error("no doubled host of order {two_m} to check an odd translation against")]
    HostUndefined { two_m: u32 },
    #[error("column reduction modulo {m} collapses {a} and {b}")]
    ReductionCollision { m: u32, a: Vertex, b: Vertex },
}

/// A directed path: pairwise-distinct vertices v0..vt, t >= 1 arcs.
#[derive(Clone, PartialEq, Eq)]
pub struct DiPath {
    vertices: Vec<Vertex>,
}

impl DiPath {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, PathError> {
        if vertices.len() < 2 {
            return Err(PathError::TooShort(vertices.len()));
        }
        check_distinct(&vertices)?;
        Ok(Self { vertices })
    }

    pub fn from_tokens(tokens: &str) -> Option<Self> {
        let vertices: Option<Vec<Vertex>> = tokens.split_whitespace().map(Vertex::parse).collect();
        Self::new(vertices?).ok()
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn terminal(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.vertices.windows(2).map(|w| Arc::new(w[0], w[1]))
    }
}

impl fmt::Display for DiPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.vertices)
    }
}

impl fmt::Debug for DiPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A directed cycle on >= 2 pairwise-distinct vertices. Stored in canonical
/// rotation (lexicographically least vertex first); this is representation
/// only and does not change the cycle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiCycle {
    vertices: Vec<Vertex>,
}

impl DiCycle {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, PathError> {
        if vertices.len() < 2 {
            return Err(PathError::CycleTooShort(vertices.len()));
        }
        check_distinct(&vertices)?;
        Ok(Self {
            vertices: canonical_rotation(vertices),
        })
    }

    pub fn from_tokens(tokens: &str) -> Option<Self> {
        let vertices: Option<Vec<Vertex>> = tokens.split_whitespace().map(Vertex::parse).collect();
        Self::new(vertices?).ok()
    }

    /// Number of arcs (equals the number of vertices).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Arc::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

impl fmt::Display for DiCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.vertices)
    }
}

impl fmt::Debug for DiCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_tokens(f: &mut fmt::Formatter<'_>, vertices: &[Vertex]) -> fmt::Result {
    for (i, v) in vertices.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

fn check_distinct(vertices: &[Vertex]) -> Result<(), PathError> {
    let mut seen = BTreeSet::new();
    for &v in vertices {
        if !seen.insert(v) {
            return Err(PathError::RepeatedVertex(v));
        }
    }
    Ok(())
}

fn canonical_rotation(vertices: Vec<Vertex>) -> Vec<Vertex> {
    let least = vertices
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap();
    let mut rotated = Vec::with_capacity(vertices.len());
    rotated.extend_from_slice(&vertices[least..]);
    rotated.extend_from_slice(&vertices[..least]);
    rotated
}

/// A spanning disjoint union of directed cycles of a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFactor {
    cycles: Vec<DiCycle>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cycles share vertex {0}")]
    SharedVertex(Vertex),
    #[error("factor does not cover vertex {0}")]
    Uncovered(Vertex),
    #[error("arc {0} is not in the host")]
    ForeignArc(Arc),
}

impl TwoFactor {
    /// Builds a two-factor, checking vertex-disjointness, spanning, and arc
    /// membership against the host.
    pub fn new(cycles: Vec<DiCycle>, host: &HostSpec) -> Result<Self, FactorError> {
        let mut covered = BTreeSet::new();
        for cycle in &cycles {
            for &v in cycle.vertices() {
                if !covered.insert(v) {
                    return Err(FactorError::SharedVertex(v));
                }
            }
            for arc in cycle.arcs() {
                if !host.contains_arc(&arc) {
                    return Err(FactorError::ForeignArc(arc));
                }
            }
        }
        for v in host.vertices() {
            if !covered.contains(&v) {
                return Err(FactorError::Uncovered(v));
            }
        }
        Ok(Self { cycles })
    }

    /// Wraps cycles without any validation. For verifier input paths, where
    /// the whole point is to re-check the claim.
    pub fn from_cycles_unchecked(cycles: Vec<DiCycle>) -> Self {
        Self { cycles }
    }

    pub fn cycles(&self) -> &[DiCycle] {
        &self.cycles
    }

    /// Cycle lengths, sorted ascending.
    pub fn lengths(&self) -> Vec<u32> {
        let mut lengths: Vec<u32> = self.cycles.iter().map(|c| c.len() as u32).collect();
        lengths.sort_unstable();
        lengths
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.cycles.iter().flat_map(|c| c.arcs())
    }
}

fn shift_vertex(v: Vertex, shift: i64, m: u32) -> Vertex {
    let column = (v.column as i64 + shift).rem_euclid(m as i64) as u32;
    Vertex { column, row: v.row }
}

/// Translation of a dipath: every column shifted by `shift` modulo `m`, rows
/// unchanged, interpreted in the order-2m doubled host.
///
/// Even shifts (and any shift when m is odd) are column-rotation
/// automorphisms of the host and need no check. An odd shift in an even-m
/// host is legal only if every output arc still lies in the host, which is
/// checked directly; a failure there usually means corrupt input data.
pub fn translate(path: &DiPath, shift: i64, m: u32) -> Result<DiPath, PathError> {
    let vertices: Vec<Vertex> = path
        .vertices()
        .iter()
        .map(|&v| shift_vertex(v, shift, m))
        .collect();
    let shifted = match DiPath::new(vertices) {
        Ok(p) => p,
        Err(PathError::RepeatedVertex(v)) => {
            // Distinct inputs can only collide through the modulus.
            let orig = path
                .vertices()
                .iter()
                .copied()
                .find(|&u| shift_vertex(u, shift, m) == v)
                .unwrap();
            return Err(PathError::ReductionCollision { m, a: orig, b: v });
        }
        Err(e) => return Err(e),
    };
    if shift.rem_euclid(2) == 1 && m.is_multiple_of(2) {
        let host =
            HostSpec::w_star(2 * m).map_err(|_| PathError::HostUndefined { two_m: 2 * m })?;
        for arc in shifted.arcs() {
            if !host.contains_arc(&arc) {
                return Err(PathError::TranslationOutsideHost {
                    shift,
                    two_m: 2 * m,
                    arc,
                });
            }
        }
    }
    Ok(shifted)
}

/// Reduces a path written in unreduced coordinates into the order-2m host,
/// taking every column modulo m. Fails if the reduction collapses two
/// vertices.
pub fn reduce_path(path: &DiPath, m: u32) -> Result<DiPath, PathError> {
    translate(path, 0, m)
}

/// Cycle analogue of [`reduce_path`].
pub fn reduce_cycle(cycle: &DiCycle, m: u32) -> Result<DiCycle, PathError> {
    let vertices: Vec<Vertex> = cycle
        .vertices()
        .iter()
        .map(|&v| shift_vertex(v, 0, m))
        .collect();
    DiCycle::new(vertices).map_err(|e| match e {
        PathError::RepeatedVertex(v) => PathError::ReductionCollision { m, a: v, b: v },
        other => other,
    })
}

fn stitch(paths: &[DiPath], cyclic: bool) -> Result<Vec<Vertex>, PathError> {
    if paths.is_empty() {
        return Err(PathError::EmptySequence);
    }
    for (i, pair) in paths.windows(2).enumerate() {
        if pair[0].terminal() != pair[1].source() {
            return Err(PathError::EndpointMismatch {
                index: i,
                terminal: pair[0].terminal(),
                start: pair[1].source(),
            });
        }
    }
    // Join on shared endpoints; any other coincidence is an error naming
    // the later path and the vertex. In the cyclic case the last path's
    // terminal closes back onto the first source and is dropped here.
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for (i, path) in paths.iter().enumerate() {
        let skip = usize::from(i > 0);
        let body = &path.vertices()[skip..];
        let trim = usize::from(cyclic && i + 1 == paths.len());
        for &v in &body[..body.len() - trim] {
            if !seen.insert(v) {
                return Err(PathError::VertexReuse {
                    index: i,
                    vertex: v,
                });
            }
            vertices.push(v);
        }
    }
    Ok(vertices)
}

/// Concatenates a sequence of dipaths sharing consecutive endpoints into a
/// single dipath of the summed length.
pub fn concatenate(paths: &[DiPath]) -> Result<DiPath, PathError> {
    DiPath::new(stitch(paths, false)?)
}

/// Closes a sequence of dipaths into a directed cycle: consecutive endpoints
/// shared, the last terminal equal to the first source, and no other vertex
/// repeated anywhere.
pub fn cyclic_concatenate(paths: &[DiPath]) -> Result<DiCycle, PathError> {
    let last = paths.last().ok_or(PathError::EmptySequence)?;
    let first = &paths[0];
    if last.terminal() != first.source() {
        return Err(PathError::EndpointMismatch {
            index: paths.len() - 1,
            terminal: last.terminal(),
            start: first.source(),
        });
    }
    DiCycle::new(stitch(paths, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(tokens: &str) -> DiPath {
        DiPath::from_tokens(tokens).unwrap()
    }

    #[test]
    fn dipath_basics() {
        let p = path("x7 y9 x9");
        assert_eq!(p.len(), 2);
        assert_eq!(p.source(), Vertex::x(7));
        assert_eq!(p.terminal(), Vertex::x(9));
        assert_eq!(p.to_string(), "x7 y9 x9");
        assert!(DiPath::new(vec![Vertex::x(1)]).is_err());
        assert_eq!(
            DiPath::new(vec![Vertex::x(1), Vertex::x(2), Vertex::x(1)]),
            Err(PathError::RepeatedVertex(Vertex::x(1)))
        );
    }

    #[test]
    fn cycle_canonical_rotation() {
        let a = DiCycle::from_tokens("x4 x3 y5 y3").unwrap();
        let b = DiCycle::from_tokens("y5 y3 x4 x3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices()[0], Vertex::x(3));
        // Direction matters: the reversed cycle is different.
        let r = DiCycle::from_tokens("y3 y5 x3 x4").unwrap();
        assert_ne!(a, r);
    }

    #[test]
    fn translate_identity_and_example() {
        let s0 = path("x7 y9 x9 x8 y10 x11");
        assert_eq!(translate(&s0, 0, 19).unwrap(), s0);
        let shifted = translate(&s0, 4, 19).unwrap();
        assert_eq!(shifted, path("x11 y13 x13 x12 y14 x15"));
    }

    #[test]
    fn translate_additivity() {
        let p = path("x0 x1 y1 y2");
        for m in [7u32, 9, 11] {
            for a in -6..=6i64 {
                for b in -6..=6i64 {
                    let lhs = translate(&translate(&p, b, m).unwrap(), a, m).unwrap();
                    let rhs = translate(&p, a + b, m).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn odd_translation_in_even_host_is_checked() {
        // In the order-16 host (m = 8), x0->x3 is an arc (distance-3 based
        // at an even column) but its shift by 1, x1->x4, is not.
        let p = path("x0 x3");
        assert!(matches!(
            translate(&p, 1, 8),
            Err(PathError::TranslationOutsideHost { .. })
        ));
        // An odd shift that happens to stay inside the host is accepted:
        // x0->x1 shifts to x1->x2, still a distance-1 arc.
        let q = path("x0 x1");
        assert_eq!(translate(&q, 1, 8).unwrap(), path("x1 x2"));
        // Odd m admits any shift.
        assert_eq!(translate(&p, 1, 7).unwrap(), path("x1 x4"));
    }

    #[test]
    fn concatenation_laws() {
        let joined = concatenate(&[path("x0 x1"), path("x1 x2")]).unwrap();
        assert_eq!(joined, path("x0 x1 x2"));

        assert_eq!(
            concatenate(&[path("x0 x1"), path("x2 x3")]),
            Err(PathError::EndpointMismatch {
                index: 0,
                terminal: Vertex::x(1),
                start: Vertex::x(2),
            })
        );

        // Reuse of a non-endpoint vertex names the offender.
        assert_eq!(
            concatenate(&[path("x0 x1 x2"), path("x2 x1 y1")]),
            Err(PathError::VertexReuse {
                index: 1,
                vertex: Vertex::x(1)
            })
        );
    }

    #[test]
    fn cyclic_concatenation() {
        // Degenerate closure of two length-1 paths yields a 2-cycle.
        let two = cyclic_concatenate(&[path("x0 x1"), path("x1 x0")]).unwrap();
        assert_eq!(two.len(), 2);

        let c = cyclic_concatenate(&[path("x0 x1 x2"), path("x2 y2 x0")]).unwrap();
        assert_eq!(c.len(), 4);

        assert!(matches!(
            cyclic_concatenate(&[path("x0 x1"), path("x1 x2")]),
            Err(PathError::EndpointMismatch { index: 1, .. })
        ));

        // An interior vertex shared by two paths is named.
        assert_eq!(
            cyclic_concatenate(&[path("x0 y3 x1"), path("x1 y3 x0")]),
            Err(PathError::VertexReuse {
                index: 1,
                vertex: Vertex::y(3)
            })
        );
    }

    #[test]
    fn length_and_vertex_count_laws() {
        let parts = [path("x0 x1 y2"), path("y2 y3"), path("y3 x4 x5 y6")];
        let total_len: usize = parts.iter().map(|p| p.len()).sum();
        let total_vertices: usize = parts.iter().map(|p| p.vertices().len()).sum();
        let joined = concatenate(&parts).unwrap();
        assert_eq!(joined.len(), total_len);
        assert_eq!(joined.vertices().len(), total_vertices - (parts.len() - 1));

        let closing = path("y6 x0");
        let mut cyc_parts = parts.to_vec();
        cyc_parts.push(closing.clone());
        let cycle = cyclic_concatenate(&cyc_parts).unwrap();
        assert_eq!(cycle.len(), total_len + closing.len());
        assert_eq!(
            cycle.vertices().len(),
            total_vertices + closing.vertices().len() - cyc_parts.len()
        );
    }

    #[test]
    fn two_factor_checks() {
        let host = HostSpec::w_star(10).unwrap();
        // W*_10, m=5: a 4-cycle and a 6-cycle spanning all ten vertices.
        let c1 = DiCycle::from_tokens("x0 x1 y1 y0").unwrap();
        let c2 = DiCycle::from_tokens("x2 x3 x4 y4 y3 y2").unwrap();
        let f = TwoFactor::new(vec![c1.clone(), c2.clone()], &host).unwrap();
        assert_eq!(f.lengths(), vec![4, 6]);
        assert_eq!(f.arcs().count(), 10);

        // Missing a vertex.
        let c3 = DiCycle::from_tokens("x2 x3 x4 y4 y3").unwrap();
        assert_eq!(
            TwoFactor::new(vec![c1.clone(), c3], &host),
            Err(FactorError::Uncovered(Vertex::y(2)))
        );

        // Foreign arc: columns 0 and 2 are adjacent in the base circulant,
        // but 0 and 3 are not at distance 1 or 2... they are (distance 2).
        // Use x0->y3 in W*_14 (m=7): distance 3 is outside {1,2}.
        let w14 = HostSpec::w_star(14).unwrap();
        let bad = DiCycle::from_tokens("x0 x5 x1 x2 x3 x4 y0 y1 y2 y3 y4 y5 x6 y6").unwrap();
        assert!(matches!(
            TwoFactor::new(vec![bad], &w14),
            Err(FactorError::ForeignArc(_))
        ));
    }

    #[test]
    fn reduce_path_wraps_columns() {
        let p = path("x6 x7 y8");
        let r = reduce_path(&p, 7).unwrap();
        assert_eq!(r, path("x6 x0 y1"));
        // Collapse is detected.
        let q = path("x0 x1 x8");
        assert!(matches!(
            reduce_path(&q, 8),
            Err(PathError::ReductionCollision { .. })
        ));
    }
}
