//! Factorizations of blown-up cycles: an m-cycle with each vertex doubled
//! (no vertical edges) splits into two undirected 2-factors of prescribed
//! even cycle lengths, and the symmetric digraph of each splits into its two
//! coherent orientations, giving four directed factors in total.
//!
//! The block construction: lengths (2a_1,...,2a_t) tile the host cycle into
//! blocks of a_i consecutive columns sharing boundary columns. Inside a
//! block, factor one runs straight along the rows (left end on the x row,
//! right end on the y row); factor two takes the complementary zigzag (left
//! end y, right end x). Boundary columns are covered complementarily by the
//! adjacent blocks, so each factor is spanning and the two are edge-disjoint
//! by construction. Outputs are validated anyway.

use thiserror::Error;

use crate::digraph::{HostSpec, Vertex};
use crate::path::{DiCycle, TwoFactor};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlowupError {
    #[error(
        "cycle length {0} is below 4 (doubled cycles of length 2 are not factorable this way)"
    )]
    LengthTooShort(u32),
    #[error("cycle length {0} is odd; blown factors have even cycles only")]
    OddLength(u32),
    #[error("cycle lengths sum to {got}, need twice the column count {expected}")]
    WrongTotal { got: u32, expected: u32 },
    #[error("need at least one cycle length")]
    NoLengths,
    #[error("host construction failed: {0}")]
    Host(#[from] crate::digraph::HostError),
    #[error("internal factor validation failed: {0}")]
    Factor(#[from] crate::path::FactorError),
}

/// Tiling of the host cycle's columns into blocks, one per requested cycle.
/// Block i spans `half_lengths[i]` cycle edges; consecutive blocks share
/// their boundary column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPlan {
    pub columns: Vec<u32>,
    pub half_lengths: Vec<u32>,
}

impl BlockPlan {
    pub fn new(columns: &[u32], cycle_lengths: &[u32]) -> Result<Self, BlowupError> {
        if cycle_lengths.is_empty() {
            return Err(BlowupError::NoLengths);
        }
        for &len in cycle_lengths {
            if len % 2 != 0 {
                return Err(BlowupError::OddLength(len));
            }
            if len < 4 {
                return Err(BlowupError::LengthTooShort(len));
            }
        }
        let total: u32 = cycle_lengths.iter().sum();
        let m = columns.len() as u32;
        if total != 2 * m {
            return Err(BlowupError::WrongTotal {
                got: total,
                expected: 2 * m,
            });
        }
        Ok(BlockPlan {
            columns: columns.to_vec(),
            half_lengths: cycle_lengths.iter().map(|&len| len / 2).collect(),
        })
    }

    /// Column indices of block `i` relative to the cycle order: `a+1`
    /// entries, the last shared with the next block.
    fn block_columns(&self, i: usize) -> Vec<u32> {
        let start: u32 = self.half_lengths[..i].iter().sum();
        let a = self.half_lengths[i];
        (0..=a)
            .map(|j| self.columns[((start + j) % self.columns.len() as u32) as usize])
            .collect()
    }
}

/// An undirected 2-factor of the doubled cycle, stored as vertex sequences.
pub type UndirectedFactor = Vec<Vec<Vertex>>;

/// Splits the doubled cycle on `columns` into two edge-disjoint spanning
/// 2-factors, each with cycle lengths exactly `cycle_lengths`.
pub fn f_factorize_blowup(
    columns: &[u32],
    cycle_lengths: &[u32],
) -> Result<[UndirectedFactor; 2], BlowupError> {
    let plan = BlockPlan::new(columns, cycle_lengths)?;
    let mut first: UndirectedFactor = Vec::new();
    let mut second: UndirectedFactor = Vec::new();
    for i in 0..plan.half_lengths.len() {
        let cols = plan.block_columns(i);
        let a = cols.len() - 1;
        // Straight factor: x at the left boundary, y at the right.
        let mut straight = Vec::with_capacity(2 * a);
        straight.push(Vertex::x(cols[0]));
        straight.extend((1..=a).map(|j| Vertex::y(cols[j])));
        straight.extend((1..a).rev().map(|j| Vertex::x(cols[j])));
        first.push(straight);
        // Zigzag factor: y at the left boundary, x at the right, alternating
        // rows along both strands.
        let mut zigzag = Vec::with_capacity(2 * a);
        zigzag.push(Vertex::y(cols[0]));
        for j in 1..a {
            zigzag.push(if j % 2 == 1 {
                Vertex::x(cols[j])
            } else {
                Vertex::y(cols[j])
            });
        }
        zigzag.push(Vertex::x(cols[a]));
        for j in (1..a).rev() {
            zigzag.push(if j % 2 == 1 {
                Vertex::y(cols[j])
            } else {
                Vertex::x(cols[j])
            });
        }
        second.push(zigzag);
    }
    Ok([first, second])
}

/// Splits the symmetric digraph of the doubled cycle into four directed
/// 2-factors, each with cycle lengths {t1, t2}: both undirected factors,
/// each in both coherent orientations.
pub fn d_factorize_blowup_star(
    columns: &[u32],
    t1: u32,
    t2: u32,
) -> Result<Vec<TwoFactor>, BlowupError> {
    d_factorize_blowup_star_multi(columns, &[t1, t2])
}

/// General-lengths form of [`d_factorize_blowup_star`].
pub fn d_factorize_blowup_star_multi(
    columns: &[u32],
    cycle_lengths: &[u32],
) -> Result<Vec<TwoFactor>, BlowupError> {
    let host = HostSpec::blown_cycle(columns, false)?;
    let undirected = f_factorize_blowup(columns, cycle_lengths)?;
    let mut factors = Vec::with_capacity(4);
    for factor in &undirected {
        for reversed in [false, true] {
            let cycles: Result<Vec<DiCycle>, _> = factor
                .iter()
                .map(|cycle| {
                    let mut vertices = cycle.clone();
                    if reversed {
                        vertices.reverse();
                    }
                    DiCycle::new(vertices)
                })
                .collect();
            let cycles = cycles.expect("block cycles have >= 4 distinct vertices");
            factors.push(TwoFactor::new(cycles, &host)?);
        }
    }
    Ok(factors)
}
