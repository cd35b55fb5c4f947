//! Weighted undirected graphs, the text file format, cut evaluation and
//! heavy-edge contraction.
//!
//! Vertices are `0..n` internally. Files and printed cuts use 1-based ids.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dsu::Dsu;
use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// Largest accepted total edge weight. Leaves headroom so that signed score
/// arithmetic (which can reach about `-4W`) never overflows an `i64`.
pub const MAX_TOTAL_WEIGHT: u64 = (i64::MAX as u64) / 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    /// Smaller endpoint.
    pub u: usize,
    /// Larger endpoint.
    pub v: usize,
    pub w: u64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected graph with positive integer weights; parallel edges are merged
/// and edges are kept sorted by endpoint pair.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
    total: u64,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl WeightedGraph {
    /// Builds a graph from 0-based `(u, v, w)` triples, merging parallel edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut merged: HashMap<(usize, usize), u64> = HashMap::new();
        let mut total: u64 = 0;
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidSide(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(ParseError { line: 0, kind: ParseErrorKind::SelfLoop(u as u64 + 1) }.into());
            }
            if w == 0 {
                return Err(ParseError { line: 0, kind: ParseErrorKind::WeightTooSmall }.into());
            }
            total = total
                .checked_add(w)
                .filter(|&t| t <= MAX_TOTAL_WEIGHT)
                .ok_or(ParseError { line: 0, kind: ParseErrorKind::Overflow })?;
            *merged.entry(key(u, v)).or_insert(0) += w;
        }
        Ok(Self::from_merged(n, merged, total))
    }

    fn from_merged(n: usize, merged: HashMap<(usize, usize), u64>, total: u64) -> Self {
        let mut edges: Vec<Edge> = merged.into_iter().map(|((u, v), w)| Edge { u, v, w }).collect();
        edges.sort_unstable();
        let index = edges.iter().enumerate().map(|(i, e)| ((e.u, e.v), i)).collect();
        WeightedGraph { n, edges, index, total }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    /// Index of the edge joining `a` and `b`.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&key(a, b)).copied()
    }

    /// Adjacency lists of `(neighbor, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut dsu = Dsu::new(self.n);
        let mut parts = self.n;
        for e in &self.edges {
            if dsu.union(e.u, e.v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Canonical text form: header, then one `u v w` line per merged edge.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.w);
        }
        out
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const K: usize>(line_no: usize, line: &str) -> Result<[u64; K], ParseError> {
    let malformed = || ParseError { line: line_no, kind: ParseErrorKind::Malformed(line.to_string()) };
    let mut out = [0u64; K];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        *slot = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
    }
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok(out)
}

/// Parses the graph file format (`n m` header, then `u v w` lines, 1-based).
pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let [n, m] = parse_fields::<2>(hline, header)?;
    let n = n as usize;
    let m = m as usize;
    let mut merged: HashMap<(usize, usize), u64> = HashMap::new();
    let mut total: u64 = 0;
    let mut found = 0usize;
    let mut last_line = hline;
    for (line_no, line) in lines {
        last_line = line_no;
        let [u, v, w] = parse_fields::<3>(line_no, line)?;
        found += 1;
        if found > m {
            return Err(ParseError { line: line_no, kind: ParseErrorKind::EdgeCount { expected: m, found } });
        }
        for id in [u, v] {
            if id == 0 || id > n as u64 {
                return Err(ParseError { line: line_no, kind: ParseErrorKind::VertexOutOfRange { id, n } });
            }
        }
        if u == v {
            return Err(ParseError { line: line_no, kind: ParseErrorKind::SelfLoop(u) });
        }
        if w < 1 {
            return Err(ParseError { line: line_no, kind: ParseErrorKind::WeightTooSmall });
        }
        total = total
            .checked_add(w)
            .filter(|&t| t <= MAX_TOTAL_WEIGHT)
            .ok_or(ParseError { line: line_no, kind: ParseErrorKind::Overflow })?;
        *merged.entry(key(u as usize - 1, v as usize - 1)).or_insert(0) += w;
    }
    if found != m {
        return Err(ParseError { line: last_line, kind: ParseErrorKind::EdgeCount { expected: m, found } });
    }
    Ok(WeightedGraph::from_merged(n, merged, total))
}

/// Parses a tree file: one `u v` line per edge (1-based). Returns 0-based pairs.
pub fn parse_tree_edges(text: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    content_lines(text)
        .map(|(line_no, line)| {
            let [u, v] = parse_fields::<2>(line_no, line)?;
            if u == 0 || v == 0 {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::VertexOutOfRange { id: 0, n: usize::MAX },
                });
            }
            Ok((u as usize - 1, v as usize - 1))
        })
        .collect()
}

/// Membership mask for a side, rejecting empty, full, duplicate or out-of-range sides.
pub(crate) fn side_mask(n: usize, side: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in side {
        if v >= n {
            return Err(Error::InvalidSide(format!("vertex {} out of range", v + 1)));
        }
        if mask[v] {
            return Err(Error::InvalidSide(format!("vertex {} listed twice", v + 1)));
        }
        mask[v] = true;
    }
    if side.is_empty() || side.len() == n {
        return Err(Error::InvalidSide("side must be a nonempty proper subset".into()));
    }
    Ok(mask)
}

/// Total weight of edges with exactly one endpoint in `side`.
pub fn cut_weight(g: &WeightedGraph, side: &[usize]) -> Result<u64> {
    let mask = side_mask(g.n(), side)?;
    Ok(cut_weight_mask(g, &mask))
}

pub(crate) fn cut_weight_mask(g: &WeightedGraph, mask: &[bool]) -> u64 {
    g.edges().iter().filter(|e| mask[e.u] != mask[e.v]).map(|e| e.w).sum()
}

/// Maps original vertices to the vertices of a contracted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMapping {
    forward: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl VertexMapping {
    pub fn identity(n: usize) -> Self {
        VertexMapping { forward: (0..n).collect(), classes: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn forward(&self, original: usize) -> usize {
        self.forward[original]
    }

    pub fn class(&self, contracted: usize) -> &[usize] {
        &self.classes[contracted]
    }

    pub fn original_count(&self) -> usize {
        self.forward.len()
    }

    pub fn contracted_count(&self) -> usize {
        self.classes.len()
    }

    /// Lifts a side of the contracted graph to original vertices (sorted).
    pub fn expand(&self, side: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.classes.len()];
        let mut out = Vec::new();
        for &c in side {
            if c >= self.classes.len() {
                return Err(Error::UnknownVertex(c));
            }
            if !std::mem::replace(&mut seen[c], true) {
                out.extend_from_slice(&self.classes[c]);
            }
        }
        if out.is_empty() || out.len() == self.forward.len() {
            return Err(Error::InvalidSide("expanded side must be a nonempty proper subset".into()));
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Contracts every edge heavier than `threshold`. Contracted vertices are
/// numbered by their smallest original member.
pub fn contract_heavy_edges(g: &WeightedGraph, threshold: u64) -> (WeightedGraph, VertexMapping) {
    let mut dsu = Dsu::new(g.n());
    for e in g.edges().iter().filter(|e| e.w > threshold) {
        dsu.union(e.u, e.v);
    }
    let mut label = vec![usize::MAX; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut forward = vec![0; g.n()];
    for v in 0..g.n() {
        let r = dsu.find(v);
        if label[r] == usize::MAX {
            label[r] = classes.len();
            classes.push(Vec::new());
        }
        forward[v] = label[r];
        classes[label[r]].push(v);
    }
    let mut merged: HashMap<(usize, usize), u64> = HashMap::new();
    let mut total = 0;
    for e in g.edges() {
        let (a, b) = (forward[e.u], forward[e.v]);
        if a != b {
            *merged.entry(key(a, b)).or_insert(0) += e.w;
            total += e.w;
        }
    }
    let contracted = WeightedGraph::from_merged(classes.len(), merged, total);
    (contracted, VertexMapping { forward, classes })
}

/// Which tree edges determined a reported cut. Edges are 0-based vertex pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    OneRespecting((usize, usize)),
    TwoRespecting((usize, usize), (usize, usize)),
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::OneRespecting((a, b)) => write!(f, "one-respecting(({},{}))", a + 1, b + 1),
            Provenance::TwoRespecting((a, b), (c, d)) => {
                write!(f, "two-respecting(({},{}),({},{}))", a + 1, b + 1, c + 1, d + 1)
            }
            Provenance::Oracle => write!(f, "oracle"),
        }
    }
}

/// A cut of the original graph: weight, one side (0-based, sorted) and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub weight: u64,
    pub side: Vec<usize>,
    pub provenance: Provenance,
}

impl CutResult {
    /// 1-based sorted vertex ids of the side.
    pub fn side_ids(&self) -> Vec<usize> {
        self.side.iter().map(|v| v + 1).collect()
    }

    /// Two-line text form: weight, then the side.
    pub fn to_text(&self) -> String {
        let ids: Vec<String> = self.side_ids().iter().map(|v| v.to_string()).collect();
        format!("{}\n{}\n", self.weight, ids.join(" "))
    }

    /// Checks the reported weight against a direct evaluation on `g`.
    pub fn verify(&self, g: &WeightedGraph) -> Result<()> {
        let actual = cut_weight(g, &self.side)?;
        if actual != self.weight {
            return Err(Error::Internal(format!("reported weight {} but side has weight {actual}", self.weight)));
        }
        Ok(())
    }
}

impl Serialize for CutResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CutResult", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("side", &self.side_ids())?;
        st.serialize_field("provenance", &self.provenance.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> WeightedGraph {
        parse_graph("3 3\n1 2 1\n2 3 2\n1 3 3").unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.total_weight(), 6);
    }

    #[test]
    fn merges_parallel_edges() {
        let g = parse_graph("2 2\n1 2 4\n2 1 6").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edge(0), Edge { u: 0, v: 1, w: 10 });
    }

    #[test]
    fn rejects_self_loop_with_line() {
        let err = parse_graph("2 1\n1 1 5").unwrap_err();
        assert_eq!(err, ParseError { line: 2, kind: ParseErrorKind::SelfLoop(1) });
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("3 1\n1 4 1", ParseErrorKind::VertexOutOfRange { id: 4, n: 3 }),
            ("3 1\n1 2 0", ParseErrorKind::WeightTooSmall),
            ("3 1\n1 2", ParseErrorKind::Malformed("1 2".into())),
            ("3 2\n1 2 1", ParseErrorKind::EdgeCount { expected: 2, found: 1 }),
            ("", ParseErrorKind::MissingHeader),
        ];
        for (text, kind) in cases {
            assert_eq!(parse_graph(text).unwrap_err().kind, kind, "{text:?}");
        }
        let big = format!("2 2\n1 2 {}\n1 2 {}", MAX_TOTAL_WEIGHT, 1);
        let err = parse_graph(&big).unwrap_err();
        assert_eq!((err.line, err.kind), (3, ParseErrorKind::Overflow));
        assert!(parse_graph("2 1\n1 2 1.5").is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# hi\n2 1\n\n# edge\n1 2 3\n").unwrap();
        assert_eq!(g.total_weight(), 3);
    }

    #[test]
    fn cut_weight_examples() {
        let g = triangle();
        assert_eq!(cut_weight(&g, &[1]).unwrap(), 3);
        assert_eq!(cut_weight(&g, &[0, 2]).unwrap(), 3);
        let p = parse_graph("2 1\n1 2 5").unwrap();
        assert_eq!(cut_weight(&p, &[0]).unwrap(), 5);
        assert!(cut_weight(&g, &[]).is_err());
        assert!(cut_weight(&g, &[0, 1, 2]).is_err());
    }

    #[test]
    fn contraction_examples() {
        let g = triangle();
        let (c, map) = contract_heavy_edges(&g, 2);
        assert_eq!(c.n(), 2);
        assert_eq!(c.edges(), &[Edge { u: 0, v: 1, w: 3 }]);
        assert_eq!(map.class(0), &[0, 2]);
        assert_eq!(map.expand(&[0]).unwrap(), vec![0, 2]);

        let (same, map) = contract_heavy_edges(&g, 3);
        assert_eq!(same, g);
        assert_eq!(map, VertexMapping::identity(3));

        let (one, _) = contract_heavy_edges(&g, 0);
        assert_eq!(one.n(), 1);
        assert_eq!(one.m(), 0);
    }

    #[test]
    fn expand_validation() {
        let map = VertexMapping::identity(3);
        assert_eq!(map.expand(&[1]).unwrap(), vec![1]);
        assert_eq!(map.expand(&[5]), Err(Error::UnknownVertex(5)));
        assert!(map.expand(&[0, 1, 2]).is_err());
    }

    #[test]
    fn json_schema() {
        let r = CutResult { weight: 3, side: vec![1], provenance: Provenance::TwoRespecting((0, 1), (1, 2)) };
        let json: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"weight": 3, "side": [2], "provenance": "two-respecting((1,2),(2,3))"})
        );
        assert_eq!(r.to_text(), "3\n2\n");
    }

    fn arb_graph() -> impl Strategy<Value = WeightedGraph> {
        (2usize..12).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, 1u64..50), 1..40).prop_map(move |es| {
                let es = es.into_iter().filter(|(u, v, _)| u != v);
                WeightedGraph::new(n, es).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn cut_weight_is_symmetric(g in arb_graph(), bits in any::<u32>()) {
            let side: Vec<usize> = (0..g.n()).filter(|v| bits >> v & 1 == 1).collect();
            prop_assume!(!side.is_empty() && side.len() < g.n());
            let rest: Vec<usize> = (0..g.n()).filter(|v| bits >> v & 1 == 0).collect();
            prop_assert_eq!(cut_weight(&g, &side).unwrap(), cut_weight(&g, &rest).unwrap());
        }

        #[test]
        fn canonical_text_round_trips(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
        }
    }
}
