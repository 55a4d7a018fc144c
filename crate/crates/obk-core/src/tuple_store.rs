//! Embedded, machine-readable seed data: the eight tables of base tuples and
//! the four special-case factorizations, with a plain-text file format.
//!
//! Data lives in text files checked into the repo (and compiled in via
//! `include_str!`), one line per path, so the transcription stays auditable
//! and diffable. The loader enforces structure (counts, length sums, host
//! membership); the deeper seed conditions live in [`crate::tuple_engine`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use thiserror::Error;

use crate::digraph::HostSpec;
use crate::path::{DiCycle, DiPath};
use crate::util::fnv1a64;

/// The eight tabulated (t1, q) cases.
pub const CASE_KEYS: [(u32, u32); 8] = [
    (4, 10),
    (4, 14),
    (4, 16),
    (4, 20),
    (6, 14),
    (6, 16),
    (6, 18),
    (6, 20),
];

/// The four factor pairs shipped as whole factorizations of their host.
pub const SPECIAL_KEYS: [(u32, u32); 4] = [(4, 12), (6, 8), (6, 10), (6, 12)];

/// Number of seed tuples a (t1, q) case must carry: 9 when t1+q = 2 mod 4,
/// 7 when t1+q = 0 mod 4.
pub fn expected_tuple_count(t1: u32, q: u32) -> u32 {
    if (t1 + q) % 4 == 2 {
        9
    } else {
        7
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StoreError {
    #[error("unknown case t1={0} q={1}")]
    UnknownCase(u32, u32),
    #[error("unknown special pair t1={0} t2={1}")]
    UnknownSpecial(u32, u32),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("file holds zero tuples")]
    Empty,
    #[error("header says r={header} but t1={t1} q={q} requires r={expected}")]
    WrongTupleCount {
        t1: u32,
        q: u32,
        header: u32,
        expected: u32,
    },
    #[error("tuple {index} line {line}: length contract broken: {message}")]
    LengthContract {
        index: usize,
        line: usize,
        message: String,
    },
    #[error(
        "tuple {index} line {line}: {piece} has an arc outside the order-{two_m} host: {message}"
    )]
    OutsideHost {
        index: usize,
        line: usize,
        piece: char,
        two_m: u32,
        message: String,
    },
    #[error("special factor {index} line {line}: {message}")]
    BadSpecialFactor {
        index: usize,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// One seed tuple: a short anchor cycle `x` plus four dipaths. `q` and `r`
/// close into the long cycle; `s` and `t` are the window paths whose
/// translations stretch it by 8 per step. Written in table coordinates
/// (subscripts unreduced); reduction happens at factor-build time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTuple {
    pub t1: u32,
    pub q: u32,
    /// Position within its case table.
    pub index: u32,
    pub x: DiCycle,
    pub q_path: DiPath,
    pub r_path: DiPath,
    pub s_path: DiPath,
    pub t_path: DiPath,
}

impl BaseTuple {
    /// Half the smallest host order this tuple generates.
    pub fn p(&self) -> u32 {
        (self.t1 + self.q) / 2
    }

    /// Order of the host the tuple is written against.
    pub fn table_host_order(&self) -> u32 {
        self.t1 + self.q + 24
    }
}

/// A shipped factorization of the doubled host of order t1+t2 into factors
/// with cycle lengths {t1, t2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFactorization {
    pub t1: u32,
    pub t2: u32,
    pub factors: Vec<Vec<DiCycle>>,
}

/// All eight case tables, keyed by (t1, q).
#[derive(Clone, Debug)]
pub struct CaseTable {
    pub cases: BTreeMap<(u32, u32), Vec<BaseTuple>>,
}

/// Where data files come from: compiled-in copies or an override directory
/// (the CLI wires this to OBK_DATA_DIR).
#[derive(Clone, Debug, Default)]
pub enum DataSource {
    #[default]
    Embedded,
    Dir(PathBuf),
}

struct EmbeddedFile {
    name: &'static str,
    text: &'static str,
}

const EMBEDDED: &[EmbeddedFile] = &[
    EmbeddedFile {
        name: "case_t4_q10.txt",
        text: include_str!("../data/case_t4_q10.txt"),
    },
    EmbeddedFile {
        name: "case_t4_q14.txt",
        text: include_str!("../data/case_t4_q14.txt"),
    },
    EmbeddedFile {
        name: "case_t4_q16.txt",
        text: include_str!("../data/case_t4_q16.txt"),
    },
    EmbeddedFile {
        name: "case_t4_q20.txt",
        text: include_str!("../data/case_t4_q20.txt"),
    },
    EmbeddedFile {
        name: "case_t6_q14.txt",
        text: include_str!("../data/case_t6_q14.txt"),
    },
    EmbeddedFile {
        name: "case_t6_q16.txt",
        text: include_str!("../data/case_t6_q16.txt"),
    },
    EmbeddedFile {
        name: "case_t6_q18.txt",
        text: include_str!("../data/case_t6_q18.txt"),
    },
    EmbeddedFile {
        name: "case_t6_q20.txt",
        text: include_str!("../data/case_t6_q20.txt"),
    },
    EmbeddedFile {
        name: "special_t4_t12.txt",
        text: include_str!("../data/special_t4_t12.txt"),
    },
    EmbeddedFile {
        name: "special_t6_t8.txt",
        text: include_str!("../data/special_t6_t8.txt"),
    },
    EmbeddedFile {
        name: "special_t6_t10.txt",
        text: include_str!("../data/special_t6_t10.txt"),
    },
    EmbeddedFile {
        name: "special_t6_t12.txt",
        text: include_str!("../data/special_t6_t12.txt"),
    },
    EmbeddedFile {
        name: "km_cache.txt",
        text: include_str!("../data/km_cache.txt"),
    },
];

impl DataSource {
    /// Honors the OBK_DATA_DIR environment variable when set.
    pub fn from_env() -> Self {
        match std::env::var_os("OBK_DATA_DIR") {
            Some(dir) => DataSource::Dir(PathBuf::from(dir)),
            None => DataSource::Embedded,
        }
    }

    pub fn read(&self, name: &str) -> Result<String, StoreError> {
        match self {
            DataSource::Embedded => EMBEDDED
                .iter()
                .find(|f| f.name == name)
                .map(|f| f.text.to_string())
                .ok_or_else(|| StoreError::Io {
                    path: name.to_string(),
                    message: "no embedded file by that name".to_string(),
                }),
            DataSource::Dir(dir) => {
                let path = dir.join(name);
                fs::read_to_string(&path).map_err(|e| StoreError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })
            }
        }
    }

    /// FNV-1a fingerprints of every data file, for certificate provenance.
    pub fn checksums(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for file in EMBEDDED {
            if let Ok(text) = self.read(file.name) {
                out.insert(
                    file.name.to_string(),
                    format!("fnv64:{:016x}", fnv1a64(text.as_bytes())),
                );
            }
        }
        out
    }
}

fn case_file_name(t1: u32, q: u32) -> String {
    format!("case_t{t1}_q{q}.txt")
}

fn special_file_name(t1: u32, t2: u32) -> String {
    format!("special_t{t1}_t{t2}.txt")
}

/// Loads the seed tuples for one of the eight cases.
pub fn load_case(source: &DataSource, t1: u32, q: u32) -> Result<Vec<BaseTuple>, StoreError> {
    if !CASE_KEYS.contains(&(t1, q)) {
        return Err(StoreError::UnknownCase(t1, q));
    }
    let text = source.read(&case_file_name(t1, q))?;
    let tuples = parse_case(&text)?;
    if tuples[0].t1 != t1 || tuples[0].q != q {
        return Err(StoreError::Malformed {
            line: 0,
            message: format!(
                "file holds case t1={} q={}, expected t1={t1} q={q}",
                tuples[0].t1, tuples[0].q
            ),
        });
    }
    Ok(tuples)
}

/// Loads one of the four shipped whole factorizations.
pub fn load_special(
    source: &DataSource,
    t1: u32,
    t2: u32,
) -> Result<SpecialFactorization, StoreError> {
    if !SPECIAL_KEYS.contains(&(t1, t2)) {
        return Err(StoreError::UnknownSpecial(t1, t2));
    }
    let text = source.read(&special_file_name(t1, t2))?;
    let special = parse_special(&text)?;
    if special.t1 != t1 || special.t2 != t2 {
        return Err(StoreError::Malformed {
            line: 0,
            message: format!(
                "file holds pair ({}, {}), expected ({t1}, {t2})",
                special.t1, special.t2
            ),
        });
    }
    Ok(special)
}

/// Loads every case table.
pub fn load_all_cases(source: &DataSource) -> Result<CaseTable, StoreError> {
    let mut cases = BTreeMap::new();
    for &(t1, q) in &CASE_KEYS {
        cases.insert((t1, q), load_case(source, t1, q)?);
    }
    Ok(CaseTable { cases })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header_fields(
    line: usize,
    content: &str,
    keyword: &str,
    keys: &[&'static str],
) -> Result<Vec<(&'static str, u32)>, StoreError> {
    let mut parts = content.split_whitespace();
    let Some(word) = parts.next() else {
        return Err(StoreError::Malformed {
            line,
            message: "empty header".into(),
        });
    };
    if word != keyword {
        return Err(StoreError::Malformed {
            line,
            message: format!("expected `{keyword}` header, found `{word}`"),
        });
    }
    let mut fields = Vec::new();
    for (part, &key) in parts.by_ref().zip(keys) {
        let Some((name, value)) = part.split_once('=') else {
            return Err(StoreError::Malformed {
                line,
                message: format!("expected `{key}=<int>`, found `{part}`"),
            });
        };
        if name != key {
            return Err(StoreError::Malformed {
                line,
                message: format!("expected field `{key}`, found `{name}`"),
            });
        }
        let value: u32 = value.parse().map_err(|_| StoreError::Malformed {
            line,
            message: format!("bad integer `{value}` for `{key}`"),
        })?;
        fields.push((key, value));
    }
    if fields.len() != keys.len() || parts.next().is_some() {
        return Err(StoreError::Malformed {
            line,
            message: format!("header needs exactly fields {keys:?}"),
        });
    }
    Ok(fields)
}

fn parse_labeled_path(
    line: usize,
    content: &str,
    label: char,
) -> Result<Vec<crate::digraph::Vertex>, StoreError> {
    let prefix = format!("{label}:");
    let Some(rest) = content.strip_prefix(&prefix) else {
        return Err(StoreError::Malformed {
            line,
            message: format!("expected `{prefix}` line, found `{content}`"),
        });
    };
    let mut vertices = Vec::new();
    for token in rest.split_whitespace() {
        match crate::digraph::Vertex::parse(token) {
            Some(v) => vertices.push(v),
            None => {
                return Err(StoreError::Malformed {
                    line,
                    message: format!("bad vertex token `{token}`"),
                })
            }
        }
    }
    if vertices.is_empty() {
        return Err(StoreError::Malformed {
            line,
            message: format!("`{prefix}` line has no vertices"),
        });
    }
    Ok(vertices)
}

/// Parses a case file. Checks, per tuple: the anchor is a t1-cycle, the
/// length sums len(Q)+len(R)=q and len(S)+len(T)=8 hold, and every piece is
/// a dipath/dicycle of the order-(t1+q+24) doubled host.
pub fn parse_case(text: &str) -> Result<Vec<BaseTuple>, StoreError> {
    let mut lines = content_lines(text).peekable();
    let Some((header_line, header)) = lines.next() else {
        return Err(StoreError::Empty);
    };
    let fields = parse_header_fields(header_line, header, "case", &["t1", "q", "r"])?;
    let (t1, q, r) = (fields[0].1, fields[1].1, fields[2].1);
    if !CASE_KEYS.contains(&(t1, q)) {
        return Err(StoreError::UnknownCase(t1, q));
    }
    let expected = expected_tuple_count(t1, q);
    if r != expected {
        return Err(StoreError::WrongTupleCount {
            t1,
            q,
            header: r,
            expected,
        });
    }

    let host = HostSpec::w_star(t1 + q + 24).expect("table host order is even and >= 10");
    let two_m = t1 + q + 24;

    let mut tuples = Vec::new();
    while lines.peek().is_some() {
        let index = tuples.len();
        let mut piece = |label: char| -> Result<(usize, Vec<crate::digraph::Vertex>), StoreError> {
            let Some((line, content)) = lines.next() else {
                return Err(StoreError::Malformed {
                    line: 0,
                    message: format!("tuple {index} truncated before `{label}:`"),
                });
            };
            Ok((line, parse_labeled_path(line, content, label)?))
        };
        let (x_line, x_vertices) = piece('X')?;
        let (q_line, q_vertices) = piece('Q')?;
        let (r_line, r_vertices) = piece('R')?;
        let (s_line, s_vertices) = piece('S')?;
        let (t_line, t_vertices) = piece('T')?;

        let x = DiCycle::new(x_vertices).map_err(|e| StoreError::Malformed {
            line: x_line,
            message: e.to_string(),
        })?;
        let mk = |line: usize, vertices: Vec<crate::digraph::Vertex>| {
            DiPath::new(vertices).map_err(|e| StoreError::Malformed {
                line,
                message: e.to_string(),
            })
        };
        let q_path = mk(q_line, q_vertices)?;
        let r_path = mk(r_line, r_vertices)?;
        let s_path = mk(s_line, s_vertices)?;
        let t_path = mk(t_line, t_vertices)?;

        if x.len() as u32 != t1 {
            return Err(StoreError::LengthContract {
                index,
                line: x_line,
                message: format!("anchor cycle has length {}, need t1={t1}", x.len()),
            });
        }
        if (q_path.len() + r_path.len()) as u32 != q {
            return Err(StoreError::LengthContract {
                index,
                line: q_line,
                message: format!(
                    "len(Q)+len(R) = {}+{} != q = {q}",
                    q_path.len(),
                    r_path.len()
                ),
            });
        }
        if q_path.len() + r_path.len() >= 2 && (s_path.len() + t_path.len()) != 8 {
            return Err(StoreError::LengthContract {
                index,
                line: s_line,
                message: format!("len(S)+len(T) = {}+{} != 8", s_path.len(), t_path.len()),
            });
        }

        let membership = [
            ('X', x_line, x.arcs().collect::<Vec<_>>()),
            ('Q', q_line, q_path.arcs().collect()),
            ('R', r_line, r_path.arcs().collect()),
            ('S', s_line, s_path.arcs().collect()),
            ('T', t_line, t_path.arcs().collect()),
        ];
        for (label, line, arcs) in membership {
            for arc in arcs {
                if !host.contains_arc(&arc) {
                    return Err(StoreError::OutsideHost {
                        index,
                        line,
                        piece: label,
                        two_m,
                        message: arc.to_string(),
                    });
                }
            }
        }

        tuples.push(BaseTuple {
            t1,
            q,
            index: index as u32,
            x,
            q_path,
            r_path,
            s_path,
            t_path,
        });
    }

    if tuples.is_empty() {
        return Err(StoreError::Empty);
    }
    if tuples.len() as u32 != expected {
        return Err(StoreError::WrongTupleCount {
            t1,
            q,
            header: tuples.len() as u32,
            expected,
        });
    }
    Ok(tuples)
}

/// Canonical serialization of a case table; `parse_case` of the output
/// reproduces the same tuples.
pub fn serialize_case(tuples: &[BaseTuple]) -> String {
    let first = &tuples[0];
    let mut out = String::new();
    writeln!(out, "case t1={} q={} r={}", first.t1, first.q, tuples.len()).unwrap();
    for tuple in tuples {
        writeln!(out, "X: {}", tuple.x).unwrap();
        writeln!(out, "Q: {}", tuple.q_path).unwrap();
        writeln!(out, "R: {}", tuple.r_path).unwrap();
        writeln!(out, "S: {}", tuple.s_path).unwrap();
        writeln!(out, "T: {}", tuple.t_path).unwrap();
    }
    out
}

/// Parses a special-case file: factor lines `F<k>:` with `;`-separated
/// cycles, each checked against the order-(t1+t2) doubled host.
pub fn parse_special(text: &str) -> Result<SpecialFactorization, StoreError> {
    let mut lines = content_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return Err(StoreError::Empty);
    };
    let fields = parse_header_fields(header_line, header, "special", &["t1", "t2"])?;
    let (t1, t2) = (fields[0].1, fields[1].1);
    if !SPECIAL_KEYS.contains(&(t1, t2)) {
        return Err(StoreError::UnknownSpecial(t1, t2));
    }
    let host = HostSpec::w_star(t1 + t2).expect("special host order is even and >= 10");

    let mut factors: Vec<Vec<DiCycle>> = Vec::new();
    for (line, content) in lines {
        let index = factors.len();
        let expected_label = format!("F{index}:");
        let Some(rest) = content.strip_prefix(&expected_label) else {
            return Err(StoreError::Malformed {
                line,
                message: format!("expected `{expected_label}` line, found `{content}`"),
            });
        };
        let mut cycles = Vec::new();
        for chunk in rest.split(';') {
            let vertices: Option<Vec<_>> = chunk
                .split_whitespace()
                .map(crate::digraph::Vertex::parse)
                .collect();
            let Some(vertices) = vertices else {
                return Err(StoreError::BadSpecialFactor {
                    index,
                    line,
                    message: format!("bad vertex token in `{}`", chunk.trim()),
                });
            };
            let cycle = DiCycle::new(vertices).map_err(|e| StoreError::BadSpecialFactor {
                index,
                line,
                message: e.to_string(),
            })?;
            for arc in cycle.arcs() {
                if !host.contains_arc(&arc) {
                    return Err(StoreError::BadSpecialFactor {
                        index,
                        line,
                        message: format!("arc {arc} is outside the order-{} host", t1 + t2),
                    });
                }
            }
            cycles.push(cycle);
        }
        factors.push(cycles);
    }

    if factors.is_empty() {
        return Err(StoreError::Empty);
    }
    // The factor count follows the same rule as tuple counts: 9 when the
    // host half-order is odd, 7 when it is even.
    let expected: u32 = if (t1 + t2) % 4 == 2 { 9 } else { 7 };
    if factors.len() as u32 != expected {
        return Err(StoreError::Malformed {
            line: 0,
            message: format!(
                "pair ({t1}, {t2}) needs {expected} factors, found {}",
                factors.len()
            ),
        });
    }
    Ok(SpecialFactorization { t1, t2, factors })
}

/// Canonical serialization of a special-case factorization.
pub fn serialize_special(special: &SpecialFactorization) -> String {
    let mut out = String::new();
    writeln!(out, "special t1={} t2={}", special.t1, special.t2).unwrap();
    for (k, factor) in special.factors.iter().enumerate() {
        let cycles: Vec<String> = factor.iter().map(|c| c.to_string()).collect();
        writeln!(out, "F{k}: {}", cycles.join(" ; ")).unwrap();
    }
    out
}

/// Loads the Hamilton-cycle cache for even-order complete graphs: sections
/// `km <m>` followed by one cycle per line as space-separated column indices.
/// Entries are not trusted; callers re-verify and fall back to search.
pub fn load_km_cache(source: &DataSource) -> BTreeMap<u32, Vec<Vec<u32>>> {
    let Ok(text) = source.read("km_cache.txt") else {
        return BTreeMap::new();
    };
    parse_km_cache(&text)
}

pub fn parse_km_cache(text: &str) -> BTreeMap<u32, Vec<Vec<u32>>> {
    let mut out: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
    let mut current: Option<u32> = None;
    for (_, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("km ") {
            current = rest.trim().parse().ok();
            if let Some(m) = current {
                out.entry(m).or_default();
            }
            continue;
        }
        let Some(m) = current else { continue };
        let cycle: Option<Vec<u32>> = line.split_whitespace().map(|t| t.parse().ok()).collect();
        if let Some(cycle) = cycle {
            out.entry(m).or_default().push(cycle);
        }
    }
    out
}

pub fn serialize_km_cache(cache: &BTreeMap<u32, Vec<Vec<u32>>>) -> String {
    let mut out = String::new();
    for (m, cycles) in cache {
        writeln!(out, "km {m}").unwrap();
        for cycle in cycles {
            let tokens: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", tokens.join(" ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Vertex;

    #[test]
    fn loads_every_case_with_the_right_count() {
        let source = DataSource::Embedded;
        let mut total = 0;
        for &(t1, q) in &CASE_KEYS {
            let tuples = load_case(&source, t1, q).unwrap();
            assert_eq!(
                tuples.len() as u32,
                expected_tuple_count(t1, q),
                "case ({t1},{q})"
            );
            total += tuples.len();
        }
        assert_eq!(total, 64);
        let table = load_all_cases(&source).unwrap();
        assert_eq!(table.cases.len(), 8);
        assert_eq!(table.cases.values().map(Vec::len).sum::<usize>(), 64);
    }

    #[test]
    fn loads_every_special_with_the_right_count() {
        let source = DataSource::Embedded;
        let counts: Vec<usize> = SPECIAL_KEYS
            .iter()
            .map(|&(t1, t2)| load_special(&source, t1, t2).unwrap().factors.len())
            .collect();
        assert_eq!(counts, vec![7, 9, 7, 9]);
    }

    #[test]
    fn known_entries_match_the_tables() {
        let source = DataSource::Embedded;
        let tuples = load_case(&source, 4, 10).unwrap();
        assert_eq!(
            tuples[0].x,
            DiCycle::new(vec![Vertex::x(4), Vertex::x(3), Vertex::y(5), Vertex::y(3)]).unwrap()
        );
        let tuples = load_case(&source, 6, 14).unwrap();
        assert_eq!(
            tuples[0].t_path,
            DiPath::from_tokens("y14 y13 x13 y10").unwrap()
        );
    }

    #[test]
    fn unknown_case_is_rejected() {
        assert_eq!(
            load_case(&DataSource::Embedded, 5, 10),
            Err(StoreError::UnknownCase(5, 10))
        );
        assert_eq!(
            load_special(&DataSource::Embedded, 4, 10),
            Err(StoreError::UnknownSpecial(4, 10))
        );
    }

    #[test]
    fn case_round_trip() {
        let tuples = load_case(&DataSource::Embedded, 4, 10).unwrap();
        let text = serialize_case(&tuples);
        let reparsed = parse_case(&text).unwrap();
        assert_eq!(tuples, reparsed);
        // Serialization is canonical: a second pass is byte-identical.
        assert_eq!(text, serialize_case(&reparsed));
    }

    #[test]
    fn special_round_trip() {
        for &(t1, t2) in &SPECIAL_KEYS {
            let special = load_special(&DataSource::Embedded, t1, t2).unwrap();
            let text = serialize_special(&special);
            assert_eq!(parse_special(&text).unwrap(), special);
        }
    }

    #[test]
    fn length_contract_violations_are_schema_errors() {
        let text = "case t1=4 q=10 r=9\nX: x4 x3 y5 y3\nQ: y7 x5 y6 y4 x6 x7\nR: x0 y2 x1 x2 y1 y0\nS: x7 y9 x9\nT: y11 x10 y8 y7\n";
        let err = parse_case(text).unwrap_err();
        assert!(
            matches!(err, StoreError::LengthContract { index: 0, .. }),
            "{err}"
        );
        assert!(err.to_string().contains("len(S)+len(T)"));
    }

    #[test]
    fn empty_file_is_rejected() {
        assert_eq!(parse_case("# nothing here\n"), Err(StoreError::Empty));
        assert_eq!(
            parse_case("case t1=4 q=10 r=9\n").unwrap_err(),
            StoreError::Empty
        );
    }

    #[test]
    fn wrong_header_count_is_rejected() {
        let err = parse_case("case t1=4 q=10 r=7\nX: x1 x2\n").unwrap_err();
        assert_eq!(
            err,
            StoreError::WrongTupleCount {
                t1: 4,
                q: 10,
                header: 7,
                expected: 9
            }
        );
    }

    #[test]
    fn foreign_arcs_are_rejected_at_load() {
        // x0 -> x5 is not an arc of the order-38 doubled host (distance 5).
        let text = "case t1=4 q=10 r=9\nX: x4 x3 y5 y3\nQ: y7 x5 y6 y4 x6 x7\nR: x0 x5 x1 x2 y1 y0\nS: x7 y9 x9 x8 y10 x11\nT: y11 x10 y8 y7\n";
        let err = parse_case(text).unwrap_err();
        assert!(
            matches!(err, StoreError::OutsideHost { piece: 'R', .. }),
            "{err}"
        );
    }

    #[test]
    fn km_cache_round_trip() {
        let mut cache = BTreeMap::new();
        cache.insert(8u32, vec![vec![0u32, 1, 2, 3, 4, 5, 6, 7]]);
        let text = serialize_km_cache(&cache);
        assert_eq!(parse_km_cache(&text), cache);
    }

    #[test]
    fn checksums_cover_all_files() {
        let sums = DataSource::Embedded.checksums();
        assert_eq!(sums.len(), EMBEDDED.len());
        assert!(sums["case_t4_q10.txt"].starts_with("fnv64:"));
    }
}
