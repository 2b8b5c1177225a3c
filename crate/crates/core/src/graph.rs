//! Graph ingestion, validation, metric closure and bridge contraction.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
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

/// Undirected graph with strictly positive edge weights and opaque string
/// labels. Algorithms work on the dense indices `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    /// Builds a graph from labels and `(u, v, w)` triples over label indices.
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let n = labels.len();
        let mut g = WeightedGraph {
            labels,
            edges: Vec::new(),
            index: HashMap::new(),
        };
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge ({u},{v}) references a vertex outside 0..{n}")));
            }
            g.push_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unlabeled convenience constructor; vertex `i` gets label `i`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Complete graph whose edge weights are the entries of `d`.
    pub fn complete_from_metric(d: &DistanceMatrix, labels: Option<Vec<String>>) -> Result<Self> {
        let n = d.n();
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::Invalid(format!("{} labels for {} vertices", labels.len(), n)));
        }
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::new(labels, edges.map(|(i, j)| (i, j, d.get(i, j))).collect::<Vec<_>>())
    }

    fn push_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if u == v {
            return Err(Error::Invalid(format!("self-loop at `{}`", self.labels[u])));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Invalid(format!(
                "non-positive weight {w} on `{}`-`{}`",
                self.labels[u], self.labels[v]
            )));
        }
        let k = key(u, v);
        if self.index.contains_key(&k) {
            return Err(Error::Invalid(format!(
                "duplicate undirected edge `{}`-`{}`",
                self.labels[u], self.labels[v]
            )));
        }
        self.index.insert(k, self.edges.len());
        self.edges.push(Edge { u, v, w });
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&key(u, v)).copied()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edge_between(u, v).map(|e| self.edges[e].w)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).fold(0.0, |acc, x| acc + x)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    /// Adjacency lists of `(neighbor, edge index)`, sorted by neighbor.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// `Some((a, b))` naming an unreachable pair, or `None` when connected.
    pub fn unreachable_pair(&self) -> Option<(usize, usize)> {
        let n = self.n();
        if n == 0 {
            return None;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().position(|s| !s).map(|b| (0, b))
    }

    pub fn is_connected(&self) -> bool {
        self.unreachable_pair().is_none()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        match self.unreachable_pair() {
            Some((a, b)) => Err(Error::Disconnected(self.labels[a].clone(), self.labels[b].clone())),
            None => Ok(()),
        }
    }

    /// Serializes to the edge-list text format, header included.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::from("u,v,w\n");
        for e in &self.edges {
            out.push_str(&format!("{},{},{}\n", self.labels[e.u], self.labels[e.v], e.w));
        }
        out
    }
}

/// Dense symmetric distance matrix. Construction only checks shape and
/// finiteness; [`verify_metric`] reports metric violations.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Invalid(format!("expected {} entries, got {}", n * n, data.len())));
        }
        if let Some(x) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Invalid(format!("non-finite distance {x}")));
        }
        Ok(DistanceMatrix { n, d: data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("distance matrix is not square".into()));
        }
        Self::new(n, rows.concat())
    }

    /// Absolute differences between points on a line.
    pub fn from_line(points: &[f64]) -> Self {
        let n = points.len();
        let d = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (points[i] - points[j]).abs())
            .collect();
        DistanceMatrix { n, d }
    }

    /// Euclidean distances between planar points.
    pub fn from_points(points: &[(f64, f64)]) -> Self {
        let n = points.len();
        let d = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (points[i].0 - points[j].0).hypot(points[i].1 - points[j].1))
            .collect();
        DistanceMatrix { n, d }
    }

    /// Every off-diagonal entry equal to `w`.
    pub fn uniform(n: usize, w: f64) -> Self {
        let d = (0..n * n).map(|k| if k / n == k % n { 0.0 } else { w }).collect();
        DistanceMatrix { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        DistanceMatrix {
            n: self.n,
            d: self.d.iter().map(|x| x * factor).collect(),
        }
    }

    /// Restriction to `vertices`, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let d = (0..m * m).map(|k| self.get(vertices[k / m], vertices[k % m])).collect();
        DistanceMatrix { n: m, d }
    }

    pub fn max_entry(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }
}

/// Shortest-path metric of a connected graph (cubic all-pairs relaxation).
pub fn metric_closure(g: &WeightedGraph) -> Result<DistanceMatrix> {
    g.require_connected()?;
    let n = g.n();
    let mut d = vec![f64::INFINITY; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    for e in g.edges() {
        d[e.u * n + e.v] = d[e.u * n + e.v].min(e.w);
        d[e.v * n + e.u] = d[e.u * n + e.v];
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    DistanceMatrix::new(n, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricViolation {
    NonZeroDiagonal { i: usize },
    Asymmetric { i: usize, j: usize },
    NonPositive { i: usize, j: usize },
    /// `d(i, j) > d(i, via) + d(via, j)`.
    Triangle { i: usize, via: usize, j: usize },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NonZeroDiagonal { i } => write!(f, "d({i},{i}) != 0"),
            MetricViolation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            MetricViolation::NonPositive { i, j } => write!(f, "d({i},{j}) <= 0"),
            MetricViolation::Triangle { i, via, j } => {
                write!(f, "d({i},{j}) > d({i},{via}) + d({via},{j})")
            }
        }
    }
}

/// Lists every way `d` fails to be a metric, within [`TOL`].
pub fn verify_metric(d: &DistanceMatrix) -> Vec<MetricViolation> {
    let n = d.n();
    let mut out = Vec::new();
    for i in 0..n {
        if d.get(i, i).abs() > TOL {
            out.push(MetricViolation::NonZeroDiagonal { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (d.get(i, j) - d.get(j, i)).abs() > TOL {
                out.push(MetricViolation::Asymmetric { i, j });
            }
            if d.get(i, j) <= 0.0 || d.get(j, i) <= 0.0 {
                out.push(MetricViolation::NonPositive { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for via in 0..n {
                if via != i && via != j && d.get(i, j) > d.get(i, via) + d.get(via, j) + TOL {
                    out.push(MetricViolation::Triangle { i, via, j });
                }
            }
        }
    }
    out
}

pub(crate) fn require_metric(d: &DistanceMatrix) -> Result<()> {
    let v = verify_metric(d);
    match v.first() {
        Some(first) => Err(Error::NotMetric(v.len(), first.to_string())),
        None => Ok(()),
    }
}

/// Edge indices of all bridges, found with an iterative lowpoint DFS.
pub fn find_bridges(g: &WeightedGraph) -> Vec<usize> {
    let n = g.n();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut clock = 0;
    let mut bridges = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, edge used to enter it, next adjacency position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
            if let Some(&(w, e)) = adj[v].get(*pos) {
                *pos += 1;
                if e == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push(via);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

/// Result of merging the endpoints of every bridge.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeContraction {
    /// Bridgeless remainder. Vertex labels are those of the smallest original
    /// vertex in each merged class.
    pub contracted: WeightedGraph,
    pub bridge_weight: f64,
    /// Original vertex index to contracted vertex index.
    pub vertex_map: Vec<usize>,
    /// Edge indices (in the input graph) of the contracted bridges.
    pub bridges: Vec<usize>,
}

pub fn contract_bridges(g: &WeightedGraph) -> Result<BridgeContraction> {
    g.require_connected()?;
    let n = g.n();
    let bridges = find_bridges(g);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &b in &bridges {
        let e = g.edges()[b];
        let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
        // keep the smaller index as the class root
        if ru < rv {
            parent[rv] = ru;
        } else if rv < ru {
            parent[ru] = rv;
        }
    }
    let mut labels = Vec::new();
    let mut class_id = HashMap::new();
    let vertex_map: Vec<usize> = (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            *class_id.entry(r).or_insert_with(|| {
                labels.push(g.label(r).to_string());
                labels.len() - 1
            })
        })
        .collect();
    let is_bridge: Vec<bool> = {
        let mut m = vec![false; g.edges().len()];
        for &b in &bridges {
            m[b] = true;
        }
        m
    };
    let mut merged: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, e) in g.edges().iter().enumerate() {
        if is_bridge[k] {
            continue;
        }
        let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
        if a == b {
            continue;
        }
        match seen.get(&key(a, b)) {
            Some(&pos) => merged[pos].2 = merged[pos].2.min(e.w),
            None => {
                seen.insert(key(a, b), merged.len());
                merged.push((a, b, e.w));
            }
        }
    }
    let bridge_weight = bridges.iter().map(|&b| g.edges()[b].w).fold(0.0, |acc, x| acc + x);
    Ok(BridgeContraction {
        contracted: WeightedGraph::new(labels, merged)?,
        bridge_weight,
        vertex_map,
        bridges,
    })
}

fn split_record(line: &str) -> Option<[&str; 3]> {
    let mut it = line.split(',').map(str::trim);
    let rec = [it.next()?, it.next()?, it.next()?];
    it.next().is_none().then_some(rec)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut first = true;
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let is_header = first && line.replace(' ', "").eq_ignore_ascii_case("u,v,w");
        first = false;
        (!is_header).then_some((i + 1, line))
    })
}

fn parse_records<T>(
    text: &str,
    mut third: impl FnMut(&str) -> std::result::Result<T, String>,
) -> Result<Vec<(usize, String, String, T)>> {
    let mut out = Vec::new();
    for (line_no, line) in data_lines(text) {
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let [u, v, w] = split_record(line).ok_or_else(|| err("expected `label,label,weight`".into()))?;
        if u.is_empty() || v.is_empty() {
            return Err(err("empty vertex label".into()));
        }
        let w = third(w).map_err(err)?;
        out.push((line_no, u.to_string(), v.to_string(), w));
    }
    Ok(out)
}

fn intern_records<T>(
    records: Vec<(usize, String, String, T)>,
    mut weight: impl FnMut(T) -> f64,
) -> Result<WeightedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut g = WeightedGraph {
        labels: Vec::new(),
        edges: Vec::new(),
        index: HashMap::new(),
    };
    for (line, u, v, w) in records {
        let mut id = |s: String, g: &mut WeightedGraph| {
            *ids.entry(s.clone()).or_insert_with(|| {
                g.labels.push(s);
                g.labels.len() - 1
            })
        };
        let a = id(u, &mut g);
        let b = id(v, &mut g);
        g.push_edge(a, b, weight(w))
            .map_err(|e| Error::Parse { line, msg: e.to_string().trim_start_matches("invalid input: ").to_string() })?;
    }
    Ok(g)
}

/// Parses the `label,label,weight` edge-list format.
///
/// Labels are interned in order of first appearance. Connectivity is not
/// checked here.
pub fn load_edge_list(text: &str) -> Result<WeightedGraph> {
    let records = parse_records(text, |w| {
        w.parse::<f64>().map_err(|_| format!("bad weight `{w}`"))
    })?;
    for (line, _, _, w) in &records {
        if !(w.is_finite() && *w > 0.0) {
            return Err(Error::Parse {
                line: *line,
                msg: format!("non-positive weight {w}"),
            });
        }
    }
    intern_records(records, |w| w)
}

/// Parses the similarity format (integer co-occurrence counts in the third
/// column) into `(u, v, count)` triples.
pub fn load_similarity_list(text: &str) -> Result<Vec<(String, String, i64)>> {
    let records = parse_records(text, |c| c.parse::<i64>().map_err(|_| format!("bad count `{c}`")))?;
    for (line, _, _, c) in &records {
        if *c < 0 {
            return Err(Error::Parse {
                line: *line,
                msg: format!("negative count {c}"),
            });
        }
    }
    Ok(records.into_iter().map(|(_, u, v, c)| (u, v, c)).collect())
}

/// Turns similarity counts into distances `1 / (c + 1)`. Pairs absent from
/// the list get no edge.
pub fn similarity_to_distance(counts: &[(String, String, i64)]) -> Result<WeightedGraph> {
    if let Some((u, v, c)) = counts.iter().find(|r| r.2 < 0) {
        return Err(Error::Invalid(format!("negative count {c} for `{u}`-`{v}`")));
    }
    let records = counts
        .iter()
        .enumerate()
        .map(|(i, (u, v, c))| (i + 1, u.clone(), v.clone(), *c))
        .collect();
    intern_records(records, |c| 1.0 / (c as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_triangles() -> WeightedGraph {
        WeightedGraph::from_edges(
            6,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (2, 3, 7.0),
                (3, 4, 2.0),
                (4, 5, 2.0),
                (3, 5, 2.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn loads_simple_edge_list() {
        let g = load_edge_list("a,b,5\nb,c,2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.labels(), &["a", "b", "c"]);
        assert_eq!(g.edges()[0], Edge { u: 0, v: 1, w: 5.0 });
        assert_eq!(g.edges()[1], Edge { u: 1, v: 2, w: 2.0 });
    }

    #[test]
    fn header_and_comments_are_skipped() {
        let g = load_edge_list("# comment\nu,v,w\n\na,b,1\n# x\nb,c,2\n").unwrap();
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn rejects_bad_records() {
        assert!(matches!(load_edge_list("a,b,0"), Err(Error::Parse { line: 1, .. })));
        let e = load_edge_list("a,b,1\nb,a,2").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("duplicate"));
        assert!(load_edge_list("a,a,1").unwrap_err().to_string().contains("self-loop"));
        assert!(matches!(load_edge_list("a,b"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_edge_list("a,b,x"), Err(Error::Parse { .. })));
        assert!(matches!(load_edge_list("a,b,-1"), Err(Error::Parse { .. })));
        assert!(matches!(load_edge_list("a,b,1,2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn similarity_weights() {
        let rows = vec![
            ("a".to_string(), "b".to_string(), 1),
            ("b".to_string(), "c".to_string(), 0),
            ("c".to_string(), "d".to_string(), 3),
        ];
        let g = similarity_to_distance(&rows).unwrap();
        assert_eq!(g.weight(0, 1), Some(0.5));
        assert_eq!(g.weight(1, 2), Some(1.0));
        assert_eq!(g.weight(2, 3), Some(0.25));
        let neg = vec![("a".to_string(), "b".to_string(), -1)];
        assert!(similarity_to_distance(&neg).is_err());
        assert!(load_similarity_list("a,b,-2").is_err());
        assert_eq!(load_similarity_list("u,v,w\na,b,4").unwrap()[0].2, 4);
    }

    #[test]
    fn closure_examples() {
        let g = load_edge_list("a,b,1\nb,c,1").unwrap();
        assert_eq!(metric_closure(&g).unwrap().get(0, 2), 2.0);
        let g = load_edge_list("a,b,5\nb,c,1\na,c,1").unwrap();
        let d = metric_closure(&g).unwrap();
        assert_eq!(d.get(0, 1), 2.0);
        assert!(verify_metric(&d).is_empty());
        let g = load_edge_list("a,b,1\nc,d,1").unwrap();
        assert_eq!(metric_closure(&g).unwrap_err(), Error::Disconnected("a".into(), "c".into()));
    }

    #[test]
    fn metric_violations() {
        let d = DistanceMatrix::from_rows(&[
            vec![0.0, 10.0, 1.0],
            vec![10.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(verify_metric(&d), vec![MetricViolation::Triangle { i: 0, via: 2, j: 1 }]);
        assert!(verify_metric(&DistanceMatrix::new(1, vec![0.0]).unwrap()).is_empty());
        let bad = DistanceMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 0.0]]).unwrap();
        let v = verify_metric(&bad);
        assert!(v.contains(&MetricViolation::NonZeroDiagonal { i: 0 }));
        assert!(v.contains(&MetricViolation::Asymmetric { i: 0, j: 1 }));
    }

    #[test]
    fn bridge_contraction_examples() {
        let c = contract_bridges(&two_triangles()).unwrap();
        assert_eq!(c.bridge_weight, 7.0);
        assert_eq!(c.contracted.n(), 5);
        assert_eq!(c.contracted.edges().len(), 6);
        assert_eq!(c.vertex_map[2], c.vertex_map[3]);
        assert!(find_bridges(&c.contracted).is_empty());

        let cycle = WeightedGraph::from_edges(4, vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0), (3, 0, 4.0)]).unwrap();
        let c = contract_bridges(&cycle).unwrap();
        assert_eq!(c.bridge_weight, 0.0);
        assert_eq!(c.contracted, cycle);

        let tree = WeightedGraph::from_edges(4, vec![(0, 1, 1.0), (1, 2, 2.0), (1, 3, 3.0)]).unwrap();
        let c = contract_bridges(&tree).unwrap();
        assert_eq!(c.bridge_weight, 6.0);
        assert_eq!(c.contracted.n(), 1);
        assert!(c.contracted.edges().is_empty());

        let split = WeightedGraph::from_edges(4, vec![(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(contract_bridges(&split), Err(Error::Disconnected(..))));
    }

    fn arb_graph() -> impl Strategy<Value = WeightedGraph> {
        (2usize..8, proptest::collection::vec((0usize..8, 0usize..8, 1u32..1000), 1..20)).prop_map(|(n, raw)| {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = raw
                .into_iter()
                .map(|(a, b, w)| (a % n, b % n, w as f64 / 7.0))
                .filter(|&(a, b, _)| a != b && seen.insert(key(a, b)))
                .collect();
            // re-intern through the text path so labels follow first appearance
            let text: String = edges.iter().map(|(a, b, w)| format!("v{a},v{b},{w}\n")).collect();
            load_edge_list(&text).unwrap()
        })
    }

    proptest! {
        #[test]
        fn edge_list_round_trips(g in arb_graph()) {
            prop_assert_eq!(load_edge_list(&g.to_edge_list()).unwrap(), g);
        }

        #[test]
        fn closure_never_exceeds_edges(g in arb_graph()) {
            prop_assume!(g.is_connected());
            let d = metric_closure(&g).unwrap();
            prop_assert!(verify_metric(&d).is_empty());
            for e in g.edges() {
                prop_assert!(d.get(e.u, e.v) <= e.w);
            }
        }

        #[test]
        fn contraction_leaves_no_bridges(g in arb_graph()) {
            prop_assume!(g.is_connected());
            let c = contract_bridges(&g).unwrap();
            prop_assert!(find_bridges(&c.contracted).is_empty());
            let expected: f64 = c.bridges.iter().map(|&b| g.edges()[b].w).sum();
            prop_assert_eq!(c.bridge_weight, expected);
        }
    }
}
