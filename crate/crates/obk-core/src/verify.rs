//! Independent verification of claimed decompositions, plus an exhaustive
//! oracle for tiny complete hosts.
//!
//! The verifier shares only the vertex/arc types with the constructors and
//! recomputes host membership from the host's parameters; it never trusts a
//! cached arc set or a pre-validated factor. Outcomes are order-insensitive:
//! permuting factors or rotating cycle representations cannot change them.

use std::collections::BTreeMap;

use crate::digraph::{Arc, HostSpec, Vertex};
use crate::path::DiCycle;
use crate::util::map_in_order;

/// One verification violation with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A host arc never covered by any factor.
    MissingArc { arc: Arc },
    /// An arc claimed by two factors (or twice by one).
    DuplicateArc {
        arc: Arc,
        first: usize,
        second: usize,
    },
    /// An arc outside the host.
    ForeignArc { factor: usize, arc: Arc },
    /// A host vertex missed by a factor.
    NotSpanning { factor: usize, vertex: Vertex },
    /// Cycle-length multiset differs from the claim.
    BadCycleLengths {
        factor: usize,
        expected: Vec<u32>,
        found: Vec<u32>,
    },
    /// Two cycles of one factor share a vertex.
    OverlappingCycles { factor: usize, vertex: Vertex },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingArc { arc } => write!(f, "missing arc {arc}"),
            Violation::DuplicateArc { arc, first, second } => {
                write!(f, "arc {arc} claimed by factors {first} and {second}")
            }
            Violation::ForeignArc { factor, arc } => {
                write!(f, "factor {factor} uses foreign arc {arc}")
            }
            Violation::NotSpanning { factor, vertex } => {
                write!(f, "factor {factor} misses vertex {vertex}")
            }
            Violation::BadCycleLengths {
                factor,
                expected,
                found,
            } => {
                write!(
                    f,
                    "factor {factor} has cycle lengths {found:?}, claimed {expected:?}"
                )
            }
            Violation::OverlappingCycles { factor, vertex } => {
                write!(f, "factor {factor} has overlapping cycles at {vertex}")
            }
        }
    }
}

/// Verification outcome: passes exactly when no violations were found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub violations: Vec<Violation>,
}

impl VerifyOutcome {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sorted(mut lengths: Vec<u32>) -> Vec<u32> {
    lengths.sort_unstable();
    lengths
}

/// Checks one claimed two-factor: arcs in the host, cycles vertex-disjoint,
/// spanning, cycle lengths equal to the claimed multiset.
pub fn verify_two_factor(cycles: &[DiCycle], host: &HostSpec, lengths: &[u32]) -> VerifyOutcome {
    verify_factor_indexed(cycles, host, lengths, 0)
}

fn verify_factor_indexed(
    cycles: &[DiCycle],
    host: &HostSpec,
    lengths: &[u32],
    factor: usize,
) -> VerifyOutcome {
    let mut violations = Vec::new();

    let found = sorted(cycles.iter().map(|c| c.len() as u32).collect());
    let expected = sorted(lengths.to_vec());
    if found != expected {
        violations.push(Violation::BadCycleLengths {
            factor,
            expected,
            found,
        });
    }

    let mut covered: BTreeMap<Vertex, usize> = BTreeMap::new();
    for cycle in cycles {
        for &v in cycle.vertices() {
            *covered.entry(v).or_insert(0) += 1;
        }
        for arc in cycle.arcs() {
            if !host.contains_arc(&arc) {
                violations.push(Violation::ForeignArc { factor, arc });
            }
        }
    }
    for (&v, &count) in &covered {
        if count > 1 {
            violations.push(Violation::OverlappingCycles { factor, vertex: v });
        }
    }
    for v in host.vertices() {
        if !covered.contains_key(&v) {
            violations.push(Violation::NotSpanning { factor, vertex: v });
        }
    }
    VerifyOutcome { violations }
}

/// Checks a claimed factorization: every per-factor condition plus an exact
/// arc partition of the host.
pub fn verify_factorization(
    factors: &[Vec<DiCycle>],
    host: &HostSpec,
    lengths: &[u32],
) -> VerifyOutcome {
    let per_factor: Vec<VerifyOutcome> = {
        let indexed: Vec<(usize, &Vec<DiCycle>)> = factors.iter().enumerate().collect();
        map_in_order(&indexed, |(i, cycles)| {
            verify_factor_indexed(cycles, host, lengths, *i)
        })
    };
    let mut violations: Vec<Violation> =
        per_factor.into_iter().flat_map(|o| o.violations).collect();

    let mut claimed: BTreeMap<Arc, usize> = BTreeMap::new();
    for (i, cycles) in factors.iter().enumerate() {
        for cycle in cycles {
            for arc in cycle.arcs() {
                if let Some(&first) = claimed.get(&arc) {
                    violations.push(Violation::DuplicateArc {
                        arc,
                        first,
                        second: i,
                    });
                } else {
                    claimed.insert(arc, i);
                }
            }
        }
    }
    for arc in host.arcs() {
        if !claimed.contains_key(&arc) {
            violations.push(Violation::MissingArc { arc });
        }
    }
    VerifyOutcome { violations }
}

/// Result of the exhaustive oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult {
    /// A factorization exists; the witness is returned (and self-verifies).
    Found(Vec<Vec<DiCycle>>),
    /// The symmetry-reduced search space is exhausted: no factorization.
    ExhaustedNone,
    /// The node budget ran out before exhaustion.
    Timeout,
}

/// Wraps an oracle witness into a certificate over the plain complete host,
/// tagged with the search method in its provenance.
pub fn oracle_certificate(lengths: &[u32], factors: &[Vec<DiCycle>]) -> crate::cert::Certificate {
    let n: u32 = lengths.iter().sum();
    let host = HostSpec::complete_symmetric(n).expect("oracle hosts have n >= 2");
    let wrapped: Vec<crate::path::TwoFactor> = factors
        .iter()
        .map(|cycles| crate::path::TwoFactor::from_cycles_unchecked(cycles.clone()))
        .collect();
    crate::cert::Certificate::new(
        &host,
        lengths.to_vec(),
        crate::cert::Provenance {
            method: "oracle_search".into(),
            seed: 0,
            q: None,
            k: None,
            special_case: false,
            km_split: None,
            data_checksums: std::collections::BTreeMap::new(),
        },
        &wrapped,
    )
}

/// Exhaustive backtracking search for a factorization of the plain complete
/// symmetric digraph on n = sum(lengths) vertices into n-1 factors with the
/// given cycle-length multiset.
///
/// Symmetry reduction (documented so exhaustion claims are auditable):
/// the first factor is pinned to its canonical form (cycles laid on
/// consecutive vertex blocks in sorted length order, so vertex 0's first
/// out-neighbor is vertex 1), which any factorization can be relabelled
/// onto; and the remaining factors are ordered by vertex 0's out-neighbor,
/// which any factor list can be permuted into. `budget` bounds the number
/// of search nodes; exceeding it yields `Timeout`, never `ExhaustedNone`.
///
/// Exhaustive mode is intended for hosts of at most ten vertices; larger
/// orders will typically exhaust any reasonable budget.
pub fn oracle_search(lengths: &[u32], budget: u64) -> OracleResult {
    let n: u32 = lengths.iter().sum();
    let n = n as usize;
    let sorted_lengths = sorted(lengths.to_vec());

    // used[u][v]: arc u->v already claimed by an earlier factor.
    let mut used = vec![vec![false; n]; n];
    let mut factors: Vec<Vec<Vec<u32>>> = Vec::new();

    // Pin the first factor: consecutive blocks in sorted length order.
    let mut first: Vec<Vec<u32>> = Vec::new();
    let mut next = 0u32;
    for &len in &sorted_lengths {
        first.push((next..next + len).collect());
        next += len;
    }
    for cycle in &first {
        for i in 0..cycle.len() {
            used[cycle[i] as usize][cycle[(i + 1) % cycle.len()] as usize] = true;
        }
    }
    factors.push(first);

    struct Search {
        n: usize,
        sorted_lengths: Vec<u32>,
        budget: u64,
        nodes: u64,
        witness: Option<Vec<Vec<Vec<u32>>>>,
    }

    enum Outcome {
        Done,
        Exhausted,
        Out,
    }

    impl Search {
        /// Extends the current factor by choosing the rest of one cycle and
        /// then further cycles; on a complete factor recurses into
        /// `next_factor`.
        #[allow(clippy::too_many_arguments)]
        fn extend(
            &mut self,
            used: &mut Vec<Vec<bool>>,
            factors: &mut Vec<Vec<Vec<u32>>>,
            current: &mut Vec<Vec<u32>>,
            in_factor: &mut Vec<bool>,
            remaining: &mut Vec<u32>,
            cycle: &mut Vec<u32>,
            target_len: u32,
            min_first_neighbor: u32,
        ) -> Outcome {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::Out;
            }
            let last = *cycle.last().unwrap() as usize;
            if cycle.len() == target_len as usize {
                // Close the cycle.
                let start = cycle[0] as usize;
                if used[last][start] {
                    return Outcome::Exhausted;
                }
                used[last][start] = true;
                current.push(cycle.clone());
                let outcome = self.next_cycle(
                    used,
                    factors,
                    current,
                    in_factor,
                    remaining,
                    min_first_neighbor,
                );
                current.pop();
                used[last][start] = false;
                return outcome;
            }
            for v in 0..self.n {
                if in_factor[v] || used[last][v] {
                    continue;
                }
                // The very first step of the factor's first cycle respects
                // the factor-ordering constraint.
                if cycle.len() == 1 && current.is_empty() && (v as u32) < min_first_neighbor {
                    continue;
                }
                in_factor[v] = true;
                used[last][v] = true;
                cycle.push(v as u32);
                let outcome = self.extend(
                    used,
                    factors,
                    current,
                    in_factor,
                    remaining,
                    cycle,
                    target_len,
                    min_first_neighbor,
                );
                cycle.pop();
                used[last][v] = false;
                in_factor[v] = false;
                if !matches!(outcome, Outcome::Exhausted) {
                    return outcome;
                }
            }
            Outcome::Exhausted
        }

        /// Starts the next cycle of the current factor (at the smallest
        /// vertex not yet in the factor), or finishes the factor.
        fn next_cycle(
            &mut self,
            used: &mut Vec<Vec<bool>>,
            factors: &mut Vec<Vec<Vec<u32>>>,
            current: &mut Vec<Vec<u32>>,
            in_factor: &mut Vec<bool>,
            remaining: &mut Vec<u32>,
            min_first_neighbor: u32,
        ) -> Outcome {
            if remaining.is_empty() {
                factors.push(current.clone());
                let outcome = self.next_factor(used, factors);
                factors.pop();
                return outcome;
            }
            let start = (0..self.n).find(|&v| !in_factor[v]).unwrap();
            in_factor[start] = true;
            let mut tried = std::collections::BTreeSet::new();
            for i in 0..remaining.len() {
                let len = remaining[i];
                if !tried.insert(len) {
                    continue;
                }
                remaining.swap_remove(i);
                let mut cycle = vec![start as u32];
                let outcome = self.extend(
                    used,
                    factors,
                    current,
                    in_factor,
                    remaining,
                    &mut cycle,
                    len,
                    min_first_neighbor,
                );
                remaining.push(len);
                let last = remaining.len() - 1;
                remaining.swap(i, last);
                if !matches!(outcome, Outcome::Exhausted) {
                    in_factor[start] = false;
                    return outcome;
                }
            }
            in_factor[start] = false;
            Outcome::Exhausted
        }

        fn next_factor(
            &mut self,
            used: &mut Vec<Vec<bool>>,
            factors: &mut Vec<Vec<Vec<u32>>>,
        ) -> Outcome {
            if factors.len() == self.n - 1 {
                // Capture the witness here; the stack unwinds on the way
                // back up.
                self.witness = Some(factors.clone());
                return Outcome::Done;
            }
            // Factor ordering: vertex 0's out-neighbor must exceed the
            // previous factor's.
            let prev = factors
                .last()
                .and_then(|f| f.iter().find(|c| c[0] == 0))
                .map(|c| c[1])
                .unwrap_or(0);
            let mut in_factor = vec![false; self.n];
            let mut remaining = self.sorted_lengths.clone();
            let mut current: Vec<Vec<u32>> = Vec::new();
            self.next_cycle(
                used,
                factors,
                &mut current,
                &mut in_factor,
                &mut remaining,
                prev + 1,
            )
        }
    }

    let mut search = Search {
        n,
        sorted_lengths,
        budget,
        nodes: 0,
        witness: None,
    };
    let outcome = search.next_factor(&mut used, &mut factors);

    match outcome {
        Outcome::Out => OracleResult::Timeout,
        Outcome::Exhausted => OracleResult::ExhaustedNone,
        Outcome::Done => {
            let stack = search.witness.expect("completed search captured a witness");
            let factors = stack
                .iter()
                .map(|factor| {
                    factor
                        .iter()
                        .map(|cycle| {
                            DiCycle::new(cycle.iter().map(|&v| Vertex::x(v)).collect())
                                .expect("oracle cycles are valid")
                        })
                        .collect()
                })
                .collect();
            OracleResult::Found(factors)
        }
    }
}
