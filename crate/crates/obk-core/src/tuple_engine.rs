//! Seed-tuple validation and factor assembly.
//!
//! A seed tuple generates one two-factor of the doubled host of every order
//! t1+q+8k: the anchor cycle stays put while k translated copies of the two
//! window paths stretch the long cycle by 8 per step. This module checks the
//! six conditions a tuple must satisfy, builds the stretched factor for a
//! given k, and assembles whole factorizations from a case's tuple set.
//! Assembly re-verifies the arc partition at the target order outright, on
//! top of the two hypothesis checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::digraph::{Arc, HostSpec, Vertex};
use crate::path::{
    cyclic_concatenate, reduce_cycle, reduce_path, translate, DiPath, PathError, TwoFactor,
};
use crate::tuple_store::{expected_tuple_count, BaseTuple};
use crate::util::map_in_order;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("tuple ({t1},{q})#{index} fails {condition}: {detail}")]
    InvalidTuple {
        t1: u32,
        q: u32,
        index: u32,
        condition: Condition,
        detail: String,
    },
    #[error("factor assembly for tuple ({t1},{q})#{index} at k={k} broke: {source}")]
    Assembly {
        t1: u32,
        q: u32,
        index: u32,
        k: u32,
        source: PathError,
    },
    #[error("factor from tuple ({t1},{q})#{index} at k={k} is not a two-factor: {source}")]
    BadFactor {
        t1: u32,
        q: u32,
        index: u32,
        k: u32,
        source: crate::path::FactorError,
    },
    #[error("case ({t1},{q}) needs {expected} tuples, got {got}")]
    WrongTupleCount {
        t1: u32,
        q: u32,
        expected: u32,
        got: u32,
    },
    #[error("tuple set mixes cases ({t1},{q}) and ({other_t1},{other_q})")]
    MixedCases {
        t1: u32,
        q: u32,
        other_t1: u32,
        other_q: u32,
    },
    #[error("tuples {a} and {b} share arc {arc} in the order-{two_m} host")]
    SharedArc {
        a: u32,
        b: u32,
        arc: Arc,
        two_m: u32,
    },
    #[error(
        "long paths of tuples {a} (outbound) and {b} (return) share arc {arc} at the base order"
    )]
    BaseOrderClash { a: u32, b: u32, arc: Arc },
    #[error("assembled factors do not partition the order-{two_m} host: {detail}")]
    NotAPartition { two_m: u32, detail: String },
    #[error("factor from tuple ({t1},{q})#{index} at k={k} has cycle lengths {found:?}, want {expected:?}")]
    WrongLengths {
        t1: u32,
        q: u32,
        index: u32,
        k: u32,
        found: Vec<u32>,
        expected: Vec<u32>,
    },
}

/// The six conditions a seed tuple must satisfy, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Anchor inside the core interior; long paths inside the core minus the
    /// relevant boundary columns; window paths inside the first window.
    RegionContainment,
    /// len(Q)+len(R) = q and len(S)+len(T) = 8.
    LengthBudget,
    /// Anchor and both long paths pairwise vertex-disjoint.
    CoreDisjointness,
    /// (Q, R shifted by p) closes into a cycle.
    BaseClosure,
    /// (T,Q,S) and (S shifted by -p-4, R, T shifted by -p-4) concatenate.
    BridgeLinkage,
    /// (S, S shifted by 4) and (T shifted by 4, T) concatenate, with the two
    /// unions vertex-disjoint.
    ExtensionChaining,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::RegionContainment,
        Condition::LengthBudget,
        Condition::CoreDisjointness,
        Condition::BaseClosure,
        Condition::BridgeLinkage,
        Condition::ExtensionChaining,
    ];

    /// 1-based position in the table order.
    pub fn number(self) -> usize {
        Condition::ALL.iter().position(|&c| c == self).unwrap() + 1
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Condition::RegionContainment => "region containment",
            Condition::LengthBudget => "length budget",
            Condition::CoreDisjointness => "core disjointness",
            Condition::BaseClosure => "base closure",
            Condition::BridgeLinkage => "bridge linkage",
            Condition::ExtensionChaining => "extension chaining",
        };
        write!(f, "condition {} ({name})", self.number())
    }
}

/// Vertex windows of the order-2m doubled host used by the containment
/// condition: the core `v0` (columns 0..=p+1), its interior `v0_interior`
/// (columns 2..=p-1), and k 12-vertex windows, the j-th spanning columns
/// p+4j-4..=p+4j+1.
#[derive(Clone, Debug)]
pub struct RegionSet {
    pub p: u32,
    pub k: u32,
    pub m: u32,
    pub v0: BTreeSet<Vertex>,
    pub v0_interior: BTreeSet<Vertex>,
    pub windows: Vec<BTreeSet<Vertex>>,
}

fn column_band(lo: i64, hi: i64, m: u32) -> BTreeSet<Vertex> {
    let mut set = BTreeSet::new();
    for c in lo..=hi {
        let column = c.rem_euclid(m as i64) as u32;
        set.insert(Vertex::x(column));
        set.insert(Vertex::y(column));
    }
    set
}

/// Builds the window system for half-order p and step count k; `m` must be
/// p + 4k.
pub fn regions(p: u32, k: u32, m: u32) -> RegionSet {
    debug_assert_eq!(m, p + 4 * k);
    let v0 = column_band(0, i64::from(p) + 1, m);
    let v0_interior = column_band(2, i64::from(p) - 1, m);
    let windows = (1..=k)
        .map(|j| {
            let base = i64::from(p) + 4 * i64::from(j);
            column_band(base - 4, base + 1, m)
        })
        .collect();
    RegionSet {
        p,
        k,
        m,
        v0,
        v0_interior,
        windows,
    }
}

impl RegionSet {
    /// Region by index: 0 is the core, j >= 1 the j-th window.
    pub fn region(&self, i: u32) -> &BTreeSet<Vertex> {
        if i == 0 {
            &self.v0
        } else {
            &self.windows[(i - 1) as usize]
        }
    }

    pub fn intersection(&self, i: u32, j: u32) -> BTreeSet<Vertex> {
        self.region(i)
            .intersection(self.region(j))
            .copied()
            .collect()
    }
}

/// Outcome of one condition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: Condition,
    pub pass: bool,
    /// Counterexample vertices/arcs, as display strings, on failure.
    pub failures: Vec<String>,
}

/// Per-tuple validation report: overall pass iff all six conditions pass.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub t1: u32,
    pub q: u32,
    pub index: u32,
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, condition: Condition) -> &ConditionCheck {
        self.checks
            .iter()
            .find(|c| c.condition == condition)
            .unwrap()
    }

    /// One line per condition, for the audit report file.
    pub fn render(&self) -> String {
        let mut out = format!("tuple ({},{})#{}:", self.t1, self.q, self.index);
        for check in &self.checks {
            if check.pass {
                out.push_str(&format!(" {} ok;", check.condition));
            } else {
                out.push_str(&format!(
                    " {} FAIL [{}];",
                    check.condition,
                    check.failures.join(", ")
                ));
            }
        }
        out
    }

    fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn contained_in(
    label: char,
    vertices: &[Vertex],
    allowed: &BTreeSet<Vertex>,
    failures: &mut Vec<String>,
) {
    for &v in vertices {
        if !allowed.contains(&v) {
            failures.push(format!("{label} leaves its region at {v}"));
        }
    }
}

/// Checks the six seed conditions against the tuple's table host (order
/// t1+q+24). Failures are report entries, never errors.
pub fn validate_base_tuple(tuple: &BaseTuple) -> ValidationReport {
    let p = i64::from(tuple.p());
    let two_m = tuple.table_host_order();
    let m = two_m / 2;
    // The table host has k = 3 windows beyond the core.
    let regions = regions(tuple.p(), 3, m);
    let mut checks = Vec::new();

    // Region containment. The long outbound path avoids columns 0,1 of the
    // core; the return path avoids columns p,p+1.
    {
        let mut failures = Vec::new();
        contained_in('X', tuple.x.vertices(), &regions.v0_interior, &mut failures);
        let boundary_low: BTreeSet<Vertex> =
            [Vertex::x(0), Vertex::y(0), Vertex::x(1), Vertex::y(1)].into();
        let q_allowed: BTreeSet<Vertex> = regions.v0.difference(&boundary_low).copied().collect();
        contained_in('Q', tuple.q_path.vertices(), &q_allowed, &mut failures);
        let boundary_high: BTreeSet<Vertex> = [
            Vertex::x(tuple.p()),
            Vertex::y(tuple.p()),
            Vertex::x(tuple.p() + 1),
            Vertex::y(tuple.p() + 1),
        ]
        .into();
        let r_allowed: BTreeSet<Vertex> = regions.v0.difference(&boundary_high).copied().collect();
        contained_in('R', tuple.r_path.vertices(), &r_allowed, &mut failures);
        contained_in(
            'S',
            tuple.s_path.vertices(),
            &regions.windows[0],
            &mut failures,
        );
        contained_in(
            'T',
            tuple.t_path.vertices(),
            &regions.windows[0],
            &mut failures,
        );
        checks.push(ConditionCheck {
            condition: Condition::RegionContainment,
            pass: failures.is_empty(),
            failures,
        });
    }

    // Length budget.
    {
        let mut failures = Vec::new();
        if (tuple.q_path.len() + tuple.r_path.len()) as u32 != tuple.q {
            failures.push(format!(
                "len(Q)+len(R) = {}+{} != {}",
                tuple.q_path.len(),
                tuple.r_path.len(),
                tuple.q
            ));
        }
        if tuple.s_path.len() + tuple.t_path.len() != 8 {
            failures.push(format!(
                "len(S)+len(T) = {}+{} != 8",
                tuple.s_path.len(),
                tuple.t_path.len()
            ));
        }
        if tuple.x.len() as u32 != tuple.t1 {
            failures.push(format!("len(X) = {} != {}", tuple.x.len(), tuple.t1));
        }
        checks.push(ConditionCheck {
            condition: Condition::LengthBudget,
            pass: failures.is_empty(),
            failures,
        });
    }

    // Core disjointness: X, Q, R pairwise vertex-disjoint.
    {
        let mut failures = Vec::new();
        let sets: [(&str, BTreeSet<Vertex>); 3] = [
            ("X", tuple.x.vertices().iter().copied().collect()),
            ("Q", tuple.q_path.vertices().iter().copied().collect()),
            ("R", tuple.r_path.vertices().iter().copied().collect()),
        ];
        for i in 0..3 {
            for j in i + 1..3 {
                for v in sets[i].1.intersection(&sets[j].1) {
                    failures.push(format!("{} and {} share {v}", sets[i].0, sets[j].0));
                }
            }
        }
        checks.push(ConditionCheck {
            condition: Condition::CoreDisjointness,
            pass: failures.is_empty(),
            failures,
        });
    }

    // Base closure: (Q, R shifted by p) cyclically concatenates.
    {
        let mut failures = Vec::new();
        match translate(&tuple.r_path, p, m) {
            Ok(shifted) => {
                if let Err(e) = cyclic_concatenate(&[tuple.q_path.clone(), shifted]) {
                    failures.push(e.to_string());
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
        checks.push(ConditionCheck {
            condition: Condition::BaseClosure,
            pass: failures.is_empty(),
            failures,
        });
    }

    // Bridge linkage: (T,Q,S) and (S shifted by -p-4, R, T shifted by -p-4)
    // concatenate.
    {
        let mut failures = Vec::new();
        if let Err(e) = crate::path::concatenate(&[
            tuple.t_path.clone(),
            tuple.q_path.clone(),
            tuple.s_path.clone(),
        ]) {
            failures.push(format!("(T,Q,S): {e}"));
        }
        match (
            translate(&tuple.s_path, -p - 4, m),
            translate(&tuple.t_path, -p - 4, m),
        ) {
            (Ok(s_back), Ok(t_back)) => {
                if let Err(e) = crate::path::concatenate(&[s_back, tuple.r_path.clone(), t_back]) {
                    failures.push(format!("(S<<,R,T<<): {e}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
        checks.push(ConditionCheck {
            condition: Condition::BridgeLinkage,
            pass: failures.is_empty(),
            failures,
        });
    }

    // Extension chaining: S chains forward onto its shift by 4; the shift of
    // T by 4 chains back onto T (the long cycle walks the T copies in
    // descending order). The two chained unions must be vertex-disjoint.
    {
        let mut failures = Vec::new();
        let s_next = translate(&tuple.s_path, 4, m);
        let t_next = translate(&tuple.t_path, 4, m);
        match (&s_next, &t_next) {
            (Ok(s_next), Ok(t_next)) => {
                let s_chain = crate::path::concatenate(&[tuple.s_path.clone(), s_next.clone()]);
                if let Err(e) = &s_chain {
                    failures.push(format!("(S,S>>): {e}"));
                }
                let t_chain = crate::path::concatenate(&[t_next.clone(), tuple.t_path.clone()]);
                if let Err(e) = &t_chain {
                    failures.push(format!("(T>>,T): {e}"));
                }
                if let (Ok(s_chain), Ok(t_chain)) = (s_chain, t_chain) {
                    let s_set: BTreeSet<Vertex> = s_chain.vertices().iter().copied().collect();
                    for v in t_chain.vertices() {
                        if s_set.contains(v) {
                            failures.push(format!("chained S and T unions share {v}"));
                        }
                    }
                }
            }
            _ => failures.push("translation by 4 failed".to_string()),
        }
        checks.push(ConditionCheck {
            condition: Condition::ExtensionChaining,
            pass: failures.is_empty(),
            failures,
        });
    }

    ValidationReport {
        t1: tuple.t1,
        q: tuple.q,
        index: tuple.index,
        checks,
    }
}

/// Builds the two-factor a tuple generates in the order-(t1+q+8k) doubled
/// host: the anchor cycle plus the cyclic concatenation of Q, the k forward
/// shifts of S, R, and the k shifts of T in descending order.
pub fn build_factor(tuple: &BaseTuple, k: u32) -> Result<TwoFactor, EngineError> {
    let two_m = tuple.t1 + tuple.q + 8 * k;
    let m = two_m / 2;
    let host = HostSpec::w_star(two_m).expect("host order is even and >= 14");
    let wrap = |source: PathError| EngineError::Assembly {
        t1: tuple.t1,
        q: tuple.q,
        index: tuple.index,
        k,
        source,
    };

    let mut pieces: Vec<DiPath> = Vec::with_capacity(2 * k as usize + 2);
    pieces.push(reduce_path(&tuple.q_path, m).map_err(wrap)?);
    for j in 1..=i64::from(k) {
        pieces.push(translate(&tuple.s_path, 4 * (j - 1), m).map_err(wrap)?);
    }
    pieces.push(reduce_path(&tuple.r_path, m).map_err(wrap)?);
    for j in (1..=i64::from(k)).rev() {
        pieces.push(translate(&tuple.t_path, 4 * (j - 1), m).map_err(wrap)?);
    }

    let long_cycle = cyclic_concatenate(&pieces).map_err(wrap)?;
    let anchor = reduce_cycle(&tuple.x, m).map_err(wrap)?;

    let factor =
        TwoFactor::new(vec![anchor, long_cycle], &host).map_err(|e| EngineError::BadFactor {
            t1: tuple.t1,
            q: tuple.q,
            index: tuple.index,
            k,
            source: e,
        })?;

    let expected = {
        let mut lengths = vec![tuple.t1, tuple.q + 8 * k];
        lengths.sort_unstable();
        lengths
    };
    let found = factor.lengths();
    if found != expected {
        return Err(EngineError::WrongLengths {
            t1: tuple.t1,
            q: tuple.q,
            index: tuple.index,
            k,
            found,
            expected,
        });
    }
    Ok(factor)
}

fn arc_set(factor: &TwoFactor) -> BTreeSet<Arc> {
    factor.arcs().collect()
}

/// Assembles the full factorization of the order-(t1+q+8k) doubled host from
/// a case's tuple set.
///
/// Hypothesis checks: every tuple passes the six seed conditions; the r
/// factors built at k=2 are pairwise arc-disjoint; and, when k=0, every
/// outbound path is arc-disjoint from every return path in base-order
/// coordinates (where the shift by p is the identity). On top of that the
/// assembled factors are verified to partition the host's arcs outright.
pub fn assemble_w_factorization(
    tuples: &[BaseTuple],
    k: u32,
) -> Result<Vec<TwoFactor>, EngineError> {
    let first = tuples.first().ok_or(EngineError::WrongTupleCount {
        t1: 0,
        q: 0,
        expected: 0,
        got: 0,
    })?;
    let (t1, q) = (first.t1, first.q);
    let r = expected_tuple_count(t1, q);
    if tuples.len() as u32 != r {
        return Err(EngineError::WrongTupleCount {
            t1,
            q,
            expected: r,
            got: tuples.len() as u32,
        });
    }
    if let Some(stray) = tuples.iter().find(|t| (t.t1, t.q) != (t1, q)) {
        return Err(EngineError::MixedCases {
            t1,
            q,
            other_t1: stray.t1,
            other_q: stray.q,
        });
    }

    // Seed conditions per tuple.
    let reports = map_in_order(tuples, validate_base_tuple);
    for report in &reports {
        if let Some(check) = report.first_failure() {
            return Err(EngineError::InvalidTuple {
                t1,
                q,
                index: report.index,
                condition: check.condition,
                detail: check.failures.join("; "),
            });
        }
    }

    // Pairwise arc-disjointness of the k=2 factors.
    let probe: Vec<TwoFactor> = map_in_order(tuples, |t| build_factor(t, 2))
        .into_iter()
        .collect::<Result<_, _>>()?;
    let probe_arcs: Vec<BTreeSet<Arc>> = probe.iter().map(arc_set).collect();
    for a in 0..probe_arcs.len() {
        for b in a + 1..probe_arcs.len() {
            if let Some(arc) = probe_arcs[a].intersection(&probe_arcs[b]).next() {
                return Err(EngineError::SharedArc {
                    a: a as u32,
                    b: b as u32,
                    arc: *arc,
                    two_m: t1 + q + 16,
                });
            }
        }
    }

    // At the base order the long-path pair must also be cross-disjoint.
    if k == 0 {
        let p = (t1 + q) / 2;
        let outbound: Vec<BTreeSet<Arc>> = tuples
            .iter()
            .map(|t| reduce_path(&t.q_path, p).map(|path| path.arcs().collect()))
            .collect::<Result<_, _>>()
            .map_err(|e| EngineError::Assembly {
                t1,
                q,
                index: 0,
                k,
                source: e,
            })?;
        let returns: Vec<BTreeSet<Arc>> = tuples
            .iter()
            .map(|t| translate(&t.r_path, i64::from(p), p).map(|path| path.arcs().collect()))
            .collect::<Result<_, _>>()
            .map_err(|e| EngineError::Assembly {
                t1,
                q,
                index: 0,
                k,
                source: e,
            })?;
        for (a, q_arcs) in outbound.iter().enumerate() {
            for (b, r_arcs) in returns.iter().enumerate() {
                if let Some(arc) = q_arcs.intersection(r_arcs).next() {
                    return Err(EngineError::BaseOrderClash {
                        a: a as u32,
                        b: b as u32,
                        arc: *arc,
                    });
                }
            }
        }
    }

    // Build at the target order and verify the partition outright.
    let factors: Vec<TwoFactor> = map_in_order(tuples, |t| build_factor(t, k))
        .into_iter()
        .collect::<Result<_, _>>()?;
    let two_m = t1 + q + 8 * k;
    let host = HostSpec::w_star(two_m).expect("host order is even");
    let mut seen: BTreeMap<Arc, usize> = BTreeMap::new();
    for (i, factor) in factors.iter().enumerate() {
        for arc in factor.arcs() {
            if let Some(prev) = seen.insert(arc, i) {
                return Err(EngineError::NotAPartition {
                    two_m,
                    detail: format!("arc {arc} in factors {prev} and {i}"),
                });
            }
        }
    }
    if seen.len() as u64 != host.arc_count() {
        return Err(EngineError::NotAPartition {
            two_m,
            detail: format!("covered {} of {} arcs", seen.len(), host.arc_count()),
        });
    }
    Ok(factors)
}
