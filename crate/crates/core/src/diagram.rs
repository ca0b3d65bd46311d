//! Coxeter diagrams, vertex-set bitmasks and the graph predicates used by
//! every other module.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Hard cap on vertex count; vertex sets are stored as `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;
/// Induced-cycle search in [`CoxeterDiagram::select_path`] is exhaustive up to this size.
pub const SELECT_PATH_LIMIT: usize = 16;

/// A set of vertex indices stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VSet(pub u64);

impl serde::Serialize for VSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl VSet {
    pub const EMPTY: VSet = VSet(0);

    pub fn single(v: usize) -> VSet {
        VSet(1u64 << v)
    }

    pub fn from_iter_idx<I: IntoIterator<Item = usize>>(it: I) -> VSet {
        let mut s = VSet::EMPTY;
        for v in it {
            s.insert(v);
        }
        s
    }

    /// The first `n` indices.
    pub fn full(n: usize) -> VSet {
        if n >= 64 {
            VSet(u64::MAX)
        } else {
            VSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }
    pub fn with(self, v: usize) -> VSet {
        VSet(self.0 | 1u64 << v)
    }
    pub fn without(self, v: usize) -> VSet {
        VSet(self.0 & !(1u64 << v))
    }
    pub fn union(self, o: VSet) -> VSet {
        VSet(self.0 | o.0)
    }
    pub fn inter(self, o: VSet) -> VSet {
        VSet(self.0 & o.0)
    }
    pub fn minus(self, o: VSet) -> VSet {
        VSet(self.0 & !o.0)
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_subset(self, o: VSet) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn intersects(self, o: VSet) -> bool {
        self.0 & o.0 != 0
    }
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
    pub fn iter(self) -> VSetIter {
        VSetIter(self.0)
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VSetIter(u64);

impl Iterator for VSetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl IntoIterator for VSet {
    type Item = usize;
    type IntoIter = VSetIter;
    fn into_iter(self) -> VSetIter {
        self.iter()
    }
}

/// Simple graph on indices `0..n`, restricted to a universe of live vertices.
///
/// Restricting keeps global indices, so subgraphs such as Λ_P and Λ_T can be
/// compared with sets computed in the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VSet>,
    universe: VSet,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Graph {
        assert!(n <= MAX_VERTICES);
        let mut adj = vec![VSet::EMPTY; n];
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph {
            adj,
            universe: VSet::full(n),
        }
    }

    /// Number of index slots (including vertices outside the universe).
    pub fn slots(&self) -> usize {
        self.adj.len()
    }

    pub fn universe(&self) -> VSet {
        self.universe
    }

    pub fn neighbors(&self, v: usize) -> VSet {
        if self.universe.contains(v) {
            self.adj[v]
        } else {
            VSet::EMPTY
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(v)
    }

    /// The induced subgraph on `keep`.
    pub fn restrict(&self, keep: VSet) -> Graph {
        let universe = self.universe.inter(keep);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, a)| {
                if universe.contains(v) {
                    a.inter(universe)
                } else {
                    VSet::EMPTY
                }
            })
            .collect();
        Graph { adj, universe }
    }

    /// Vertices reachable from `from ∩ allowed` by paths inside `allowed`.
    pub fn flood(&self, from: VSet, allowed: VSet) -> VSet {
        let allowed = allowed.inter(self.universe);
        let mut seen = from.inter(allowed);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier {
                next |= self.adj[v].0;
            }
            let next = VSet(next).inter(allowed).minus(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// N(s) ∖ s.
    pub fn boundary(&self, s: VSet) -> VSet {
        let mut out = 0u64;
        for v in s.inter(self.universe) {
            out |= self.adj[v].0;
        }
        VSet(out).minus(s)
    }

    /// Connected components of the induced subgraph on `within`, ordered by least vertex.
    pub fn components(&self, within: VSet) -> Vec<VSet> {
        let mut rest = within.inter(self.universe);
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.flood(VSet::single(v), rest);
            out.push(c);
            rest = rest.minus(c);
        }
        out
    }

    pub fn is_connected(&self, within: VSet) -> bool {
        self.components(within).len() <= 1
    }

    /// True iff every x ∈ A∖C and y ∈ B∖C lie in different components of Λ∖C.
    pub fn separates(&self, c: VSet, a: VSet, b: VSet) -> bool {
        let rest = self.universe.minus(c);
        let a = a.inter(rest);
        let b = b.inter(rest);
        if a.is_empty() || b.is_empty() {
            return true;
        }
        !self.flood(a, rest).intersects(b)
    }

    /// BFS distances from `s` inside the universe (`usize::MAX` when unreachable).
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.adj.len()];
        if !self.universe.contains(s) {
            return d;
        }
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for w in self.adj[u] {
                if d[w] == usize::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    /// Vertices of `targets` reachable from `sources` by a path that runs inside
    /// `region` and meets `targets` exactly once, at its final vertex. A source
    /// lying in `targets` is reachable by the trivial path.
    pub fn tight_reachable(&self, sources: VSet, region: VSet, targets: VSet) -> VSet {
        let region = region.minus(targets);
        let reach = self.flood(sources, region);
        self.boundary(reach)
            .union(sources)
            .inter(targets)
            .inter(self.universe)
    }

    /// Search for a simple path `from → to` avoiding `forbidden` and meeting each
    /// set of `tight` in exactly one vertex. Neighbours are explored in index
    /// order, so the result is the lexicographically least such path.
    pub fn tight_path(
        &self,
        from: usize,
        to: usize,
        tight: &[VSet],
        forbidden: VSet,
    ) -> Option<Vec<usize>> {
        let allowed = self.universe.minus(forbidden);
        if !allowed.contains(from) || !allowed.contains(to) {
            return None;
        }
        let mut counts = vec![0u8; tight.len()];
        let mut path = vec![from];
        if !bump(tight, &mut counts, from, 1) {
            return None;
        }
        if self.tight_dfs(to, tight, allowed, &mut counts, &mut path, VSet::single(from)) {
            Some(path)
        } else {
            None
        }
    }

    fn tight_dfs(
        &self,
        to: usize,
        tight: &[VSet],
        allowed: VSet,
        counts: &mut [u8],
        path: &mut Vec<usize>,
        on_path: VSet,
    ) -> bool {
        let last = *path.last().unwrap();
        if last == to {
            return counts.iter().all(|&c| c == 1);
        }
        for w in self.adj[last].inter(allowed).minus(on_path) {
            if bump(tight, counts, w, 1) {
                path.push(w);
                if self.tight_dfs(to, tight, allowed, counts, path, on_path.with(w)) {
                    return true;
                }
                path.pop();
            }
            bump(tight, counts, w, -1);
        }
        false
    }
}

fn bump(tight: &[VSet], counts: &mut [u8], v: usize, delta: i8) -> bool {
    let mut ok = true;
    for (i, t) in tight.iter().enumerate() {
        if t.contains(v) {
            if delta > 0 {
                counts[i] += 1;
                ok &= counts[i] <= 1;
            } else {
                counts[i] -= 1;
            }
        }
    }
    ok
}

/// Edge label of a Coxeter diagram. Non-edges carry the implicit label 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => write!(f, "inf"),
        }
    }
}

/// A labeled simple graph; vertex indices follow the lexicographic order of ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    names: Vec<String>,
    edges: BTreeMap<(usize, usize), Label>,
    graph: Graph,
}

impl CoxeterDiagram {
    /// Build from vertex ids and labeled edges.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, Label)]) -> Result<CoxeterDiagram> {
        let mut names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Parse {
                    location: "vertices".into(),
                    message: format!("duplicate vertex id {:?}", w[0]),
                });
            }
        }
        if names.len() > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "diagram",
                size: names.len(),
                limit: MAX_VERTICES,
            });
        }
        let idx = |s: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(s))
                .map_err(|_| Error::UnknownVertex(s.to_string()))
        };
        let mut map = BTreeMap::new();
        for (u, v, l) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let (i, j) = (idx(u)?, idx(v)?);
            if i == j {
                return Err(Error::Parse {
                    location: format!("edge {u}-{v}"),
                    message: "loop".into(),
                });
            }
            if let Label::Finite(m) = l {
                if *m < 3 {
                    return Err(Error::LabelTooSmall(u.into(), v.into()));
                }
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, *l).is_some() {
                return Err(Error::DuplicateEdge(u.into(), v.into()));
            }
        }
        let pairs: Vec<(usize, usize)> = map.keys().copied().collect();
        let graph = Graph::new(names.len(), &pairs);
        Ok(CoxeterDiagram {
            names,
            edges: map,
            graph,
        })
    }

    /// Convenience constructor used throughout tests: all labels equal.
    pub fn uniform(vertices: &[&str], edges: &[(&str, &str)], label: Label) -> Result<Self> {
        let e: Vec<(&str, &str, Label)> = edges.iter().map(|&(u, v)| (u, v, label)).collect();
        CoxeterDiagram::new(vertices, &e)
    }

    /// Parse the diagram JSON format `{"vertices":[…],"edges":[[u,v,label]…]}`.
    pub fn from_json(text: &str) -> Result<CoxeterDiagram> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let perr = |loc: String, msg: &str| Error::Parse {
            location: loc,
            message: msg.to_string(),
        };
        let obj = v
            .as_object()
            .ok_or_else(|| perr("root".into(), "expected object"))?;
        let verts = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("vertices".into(), "expected array of ids"))?;
        let mut names = Vec::new();
        for (i, x) in verts.iter().enumerate() {
            names.push(
                x.as_str()
                    .ok_or_else(|| perr(format!("vertices[{i}]"), "expected string id"))?
                    .to_string(),
            );
        }
        let edges_v = match obj.get("edges") {
            None => Vec::new(),
            Some(e) => e
                .as_array()
                .ok_or_else(|| perr("edges".into(), "expected array"))?
                .clone(),
        };
        let mut edges = Vec::new();
        for (i, e) in edges_v.iter().enumerate() {
            let arr = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| perr(format!("edges[{i}]"), "expected [id, id, label]"))?;
            let u = arr[0]
                .as_str()
                .ok_or_else(|| perr(format!("edges[{i}][0]"), "expected string id"))?;
            let w = arr[1]
                .as_str()
                .ok_or_else(|| perr(format!("edges[{i}][1]"), "expected string id"))?;
            let label = match &arr[2] {
                Value::String(s) if s == "inf" => Label::Infinity,
                Value::Number(n) => {
                    let m = n
                        .as_u64()
                        .ok_or_else(|| perr(format!("edges[{i}][2]"), "expected integer label"))?;
                    if m < 3 {
                        return Err(Error::LabelTooSmall(u.into(), w.into()));
                    }
                    Label::Finite(u32::try_from(m).map_err(|_| {
                        perr(format!("edges[{i}][2]"), "label out of range")
                    })?)
                }
                _ => return Err(perr(format!("edges[{i}][2]"), "expected integer or \"inf\"")),
            };
            edges.push((u.to_string(), w.to_string(), label));
        }
        CoxeterDiagram::new(&names, &edges)
    }

    /// Canonical serialization: sorted vertices and edges, no whitespace.
    pub fn canonical_json(&self) -> String {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(&(i, j), l)| {
                let lv = match l {
                    Label::Finite(m) => Value::from(*m),
                    Label::Infinity => Value::from("inf"),
                };
                Value::Array(vec![self.names[i].clone().into(), self.names[j].clone().into(), lv])
            })
            .collect();
        let mut m = serde_json::Map::new();
        m.insert("vertices".into(), Value::from(self.names.clone()));
        m.insert("edges".into(), Value::Array(edges));
        serde_json::to_string(&Value::Object(m)).expect("serializable")
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let d = Sha256::digest(self.canonical_json().as_bytes());
        d.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }
    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn all(&self) -> VSet {
        VSet::full(self.names.len())
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(id))
            .map_err(|_| Error::UnknownVertex(id.to_string()))
    }

    /// Parse a set of ids (comma or whitespace separated, braces optional).
    pub fn parse_set(&self, text: &str) -> Result<VSet> {
        let mut s = VSet::EMPTY;
        for tok in text
            .split(|c: char| c == ',' || c.is_whitespace() || c == '{' || c == '}')
            .filter(|t| !t.is_empty())
        {
            s.insert(self.index(tok)?);
        }
        Ok(s)
    }

    pub fn set_names(&self, s: VSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    /// Label m_uv (2 when u, v are not joined).
    pub fn label(&self, u: usize, v: usize) -> Label {
        self.edges
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(Label::Finite(2))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.edges.iter().map(|(&(i, j), &l)| (i, j, l))
    }

    /// The induced subdiagram on `keep`, re-indexed.
    pub fn induced(&self, keep: VSet) -> CoxeterDiagram {
        let names: Vec<&str> = keep.iter().map(|v| self.names[v].as_str()).collect();
        let edges: Vec<(&str, &str, Label)> = self
            .edges()
            .filter(|(i, j, _)| keep.contains(*i) && keep.contains(*j))
            .map(|(i, j, l)| (self.names[i].as_str(), self.names[j].as_str(), l))
            .collect();
        CoxeterDiagram::new(&names, &edges).expect("induced subdiagram is valid")
    }

    pub fn separates(&self, c: VSet, a: VSet, b: VSet) -> bool {
        self.graph.separates(c, a, b)
    }

    pub fn tight_path(&self, from: usize, to: usize, tight: &[VSet], forbidden: VSet) -> Option<Vec<usize>> {
        self.graph.tight_path(from, to, tight, forbidden)
    }

    /// A vertex x ∈ X with X∖{x} inside one component of Λ∖{x}, x ≠ `avoid`.
    /// Ties resolve to the smallest id.
    pub fn peripheral_vertex(&self, x: VSet, avoid: Option<usize>) -> Result<usize> {
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        if !self.graph.is_connected(self.all()) {
            return Err(Error::Disconnected);
        }
        if avoid.is_some() && x.len() < 2 {
            return Err(Error::Precondition("avoid requires |X| > 1".into()));
        }
        for v in x {
            if Some(v) == avoid {
                continue;
            }
            if is_peripheral(&self.graph, x, v) {
                return Ok(v);
            }
        }
        Err(Error::Internal("no peripheral vertex found".into()))
    }

    /// Choice of the path P around a nearest induced cycle (see module docs).
    pub fn select_path(&self, s: usize) -> Result<PathP> {
        let n = self.len();
        if n > SELECT_PATH_LIMIT {
            return Err(Error::TooLarge {
                what: "diagram",
                size: n,
                limit: SELECT_PATH_LIMIT,
            });
        }
        if s >= n {
            return Err(Error::UnknownVertex(format!("#{s}")));
        }
        if !self.graph.is_connected(self.all()) {
            return Err(Error::Disconnected);
        }
        let dist = self.graph.distances(s);
        let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
        for cyc in induced_cycles(&self.graph) {
            let d = cyc.iter().map(|&v| dist[v]).min().unwrap();
            let mut key = cyc.clone();
            key.sort_unstable();
            let better = match &best {
                None => true,
                Some((bd, bk, _)) => (d, &key) < (*bd, bk),
            };
            if better {
                best = Some((d, key, cyc));
            }
        }
        let (d, _, cyc) = best.ok_or(Error::Forest)?;
        let nearest: Vec<usize> = (0..cyc.len()).filter(|&i| dist[cyc[i]] == d).collect();
        if nearest.len() != 1 {
            return Err(Error::Internal(format!(
                "nearest vertex on the chosen cycle is not unique ({} candidates)",
                nearest.len()
            )));
        }
        let start = nearest[0];
        let k = cyc.len();
        let walk = |step: usize| {
            let mut seq = vec![cyc[start]];
            let mut i = start;
            loop {
                i = (i + step) % k;
                seq.push(cyc[i]);
                if i == start || self.graph.degree(cyc[i]) != 2 {
                    break;
                }
            }
            seq
        };
        let fwd = walk(1);
        let bwd = walk(k - 1);
        let pick = if (fwd.len(), std::cmp::Reverse(&fwd)) >= (bwd.len(), std::cmp::Reverse(&bwd)) {
            fwd
        } else {
            bwd
        };
        PathP::new(self, pick)
    }
}

fn is_peripheral(g: &Graph, x: VSet, v: usize) -> bool {
    let rest = x.without(v);
    match rest.min() {
        None => true,
        Some(r) => rest.is_subset(g.flood(VSet::single(r), g.universe().without(v))),
    }
}

/// All induced cycles, each listed once starting from its least vertex.
pub fn induced_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, on: VSet, out: &mut Vec<Vec<usize>>) {
        let v0 = path[0];
        let last = *path.last().unwrap();
        let inner = on.without(last).without(v0);
        for w in g.neighbors(last).minus(on) {
            if w < v0 || g.neighbors(w).intersects(inner) {
                continue;
            }
            if path.len() >= 2 && g.adjacent(w, v0) {
                if path[1] < w {
                    let mut c = path.clone();
                    c.push(w);
                    out.push(c);
                }
                continue;
            }
            path.push(w);
            extend(g, path, on.with(w), out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for v in g.universe() {
        let mut path = vec![v];
        extend(g, &mut path, VSet::single(v), &mut out);
    }
    out
}

/// A path a = p₀, p₁, …, p_k = b whose interior vertices have valence 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathP {
    vertices: Vec<usize>,
}

impl PathP {
    pub fn new(d: &CoxeterDiagram, vertices: Vec<usize>) -> Result<PathP> {
        let g = d.graph();
        if vertices.len() < 2 {
            return Err(Error::InvalidPath("path must have at least one edge".into()));
        }
        for &v in &vertices {
            if v >= d.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        for w in vertices.windows(2) {
            if !g.adjacent(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    d.name(w[0]),
                    d.name(w[1])
                )));
            }
        }
        let closed = vertices.first() == vertices.last();
        let body = if closed {
            &vertices[..vertices.len() - 1]
        } else {
            &vertices[..]
        };
        if VSet::from_iter_idx(body.iter().copied()).len() != body.len() {
            return Err(Error::InvalidPath("path is not embedded".into()));
        }
        if closed && body.len() < 3 {
            return Err(Error::InvalidPath("closed path needs at least three vertices".into()));
        }
        for &v in &vertices[1..vertices.len() - 1] {
            if g.degree(v) != 2 {
                return Err(Error::InvalidPath(format!(
                    "interior vertex {} has valence {}",
                    d.name(v),
                    g.degree(v)
                )));
            }
        }
        for &v in [vertices[0], *vertices.last().unwrap()].iter() {
            if g.degree(v) == 1 {
                return Err(Error::InvalidPath(format!("endpoint {} has valence 1", d.name(v))));
            }
        }
        Ok(PathP { vertices })
    }

    /// Parse `"a,p,b"` against a diagram.
    pub fn parse(d: &CoxeterDiagram, text: &str) -> Result<PathP> {
        let vs = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| d.index(t))
            .collect::<Result<Vec<_>>>()?;
        PathP::new(d, vs)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
    pub fn a(&self) -> usize {
        self.vertices[0]
    }
    pub fn b(&self) -> usize {
        *self.vertices.last().unwrap()
    }
    pub fn is_closed(&self) -> bool {
        self.a() == self.b()
    }
    /// Interior vertices p₁ … p_{k−1}, in path order.
    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }
    pub fn interior_set(&self) -> VSet {
        VSet::from_iter_idx(self.interior().iter().copied())
    }
    pub fn vertex_set(&self) -> VSet {
        VSet::from_iter_idx(self.vertices.iter().copied())
    }
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }
    /// Λ_P: the host graph with the interior of P removed.
    pub fn lambda_p(&self, d: &CoxeterDiagram) -> Graph {
        d.graph().restrict(d.all().minus(self.interior_set()))
    }
    /// Distance from an interior vertex to b measured along P.
    pub fn dist_to_b(&self, v: usize) -> Option<usize> {
        let k = self.vertices.len() - 1;
        self.interior()
            .iter()
            .position(|&x| x == v)
            .map(|i| k - (i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_acb() -> CoxeterDiagram {
        CoxeterDiagram::uniform(&["a", "b", "c"], &[("a", "c"), ("c", "b")], Label::Finite(3)).unwrap()
    }

    #[test]
    fn load_examples() {
        let d = CoxeterDiagram::from_json(r#"{"vertices":["a","b"],"edges":[["a","b",3]]}"#).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.label(0, 1), Label::Finite(3));
        let d = CoxeterDiagram::from_json(r#"{"vertices":["a","b","c"],"edges":[["a","b","inf"]]}"#).unwrap();
        assert_eq!(d.label(0, 1), Label::Infinity);
        assert_eq!(d.label(0, 2), Label::Finite(2));
        let e = CoxeterDiagram::from_json(r#"{"vertices":["a","b"],"edges":[["a","b",2]]}"#).unwrap_err();
        assert!(matches!(e, Error::LabelTooSmall(..)));
        assert!(e.to_string().contains("label < 3"));
        let e = CoxeterDiagram::from_json(r#"{"vertices":["a","b"],"edges":[["a","b",3],["b","a",4]]}"#)
            .unwrap_err();
        assert!(matches!(e, Error::DuplicateEdge(..)));
        let e = CoxeterDiagram::from_json(r#"{"vertices":["a"],"edges":[["a","z",3]]}"#).unwrap_err();
        assert!(matches!(e, Error::UnknownVertex(..)));
        let e = CoxeterDiagram::from_json("{\"vertices\":\n[1]}").unwrap_err();
        assert!(e.to_string().contains("vertices[0]"));
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let d1 = CoxeterDiagram::from_json(r#"{"vertices":["b","a","c"],"edges":[["c","a",4],["b","a",3]]}"#).unwrap();
        let d2 = CoxeterDiagram::from_json(r#"{ "vertices": ["a","c","b"], "edges": [["a","b",3],["a","c",4]] }"#)
            .unwrap();
        assert_eq!(d1.canonical_json(), d2.canonical_json());
        assert_eq!(d1.hash(), d2.hash());
        let again = CoxeterDiagram::from_json(&d1.canonical_json()).unwrap();
        assert_eq!(again, d1);
    }

    #[test]
    fn separation_examples() {
        let d = path_acb();
        let s = |x: &str| d.parse_set(x).unwrap();
        assert!(d.separates(s("c"), s("a"), s("b")));
        let tri = CoxeterDiagram::uniform(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], Label::Finite(3))
            .unwrap();
        assert!(!tri.separates(s("c"), s("a"), s("b")));
        let sq = CoxeterDiagram::uniform(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")],
            Label::Finite(3),
        )
        .unwrap();
        let s = |x: &str| sq.parse_set(x).unwrap();
        assert!(sq.separates(s("c,d"), s("a"), s("b")));
        assert!(!sq.separates(s("c"), s("a"), s("b")));
        // vacuous when a side is swallowed by C
        assert!(sq.separates(s("a"), s("a"), s("b")));
    }

    #[test]
    fn tight_path_examples() {
        let d = path_acb();
        let (a, b, c) = (0, 1, 2);
        assert_eq!(d.tight_path(a, b, &[VSet::single(c)], VSet::EMPTY), Some(vec![a, c, b]));
        assert_eq!(d.tight_path(a, b, &[VSet::single(c)], VSet::single(c)), None);
        let sq = CoxeterDiagram::uniform(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")],
            Label::Finite(3),
        )
        .unwrap();
        let cd = sq.parse_set("c,d").unwrap();
        assert_eq!(sq.tight_path(0, 1, &[cd], VSet::single(3)), Some(vec![0, 2, 1]));
    }

    #[test]
    fn peripheral_examples() {
        let d = CoxeterDiagram::uniform(&["a", "b", "c"], &[("a", "b"), ("b", "c")], Label::Finite(3)).unwrap();
        assert_eq!(d.peripheral_vertex(d.parse_set("a,c").unwrap(), None).unwrap(), 0);
        assert_eq!(d.peripheral_vertex(d.all(), Some(0)).unwrap(), 2);
        let star = CoxeterDiagram::uniform(&["p", "q", "r", "z"], &[("z", "p"), ("z", "q"), ("z", "r")], Label::Finite(3))
            .unwrap();
        let x = star.parse_set("p,q").unwrap();
        let v = star.peripheral_vertex(x, None).unwrap();
        assert!(x.contains(v));
        assert_eq!(star.peripheral_vertex(VSet::EMPTY, None), Err(Error::EmptySet));
    }

    #[test]
    fn select_path_examples() {
        let tri = CoxeterDiagram::uniform(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], Label::Finite(3))
            .unwrap();
        let p = tri.select_path(0).unwrap();
        assert!(p.is_closed());
        assert_eq!(p.vertices(), &[0, 1, 2, 0]);

        let pend = CoxeterDiagram::uniform(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")],
            Label::Finite(3),
        )
        .unwrap();
        let p = pend.select_path(3).unwrap();
        assert_eq!(p.a(), 2);
        assert_eq!(p.vertices(), &[2, 0, 1, 2]);

        let tree = CoxeterDiagram::uniform(&["a", "b", "c"], &[("a", "b"), ("b", "c")], Label::Finite(3)).unwrap();
        assert_eq!(tree.select_path(0), Err(Error::Forest));
    }

    #[test]
    fn induced_cycles_of_k4_are_triangles() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c = induced_cycles(&g);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|x| x.len() == 3));
    }
}
