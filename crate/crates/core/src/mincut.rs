//! Minimal cuts between vertex sets and their lattice structure.

use serde::Serialize;

use crate::diagram::{Graph, VSet};
use crate::error::{Error, Result};

/// Enumeration is brute force over subsets; refuse anything larger.
pub const MINCUT_LIMIT: usize = 20;

/// A minimal cut together with its cached sides Φ^A and Φ^B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub set: VSet,
    pub side_a: VSet,
    pub side_b: VSet,
}

/// Result of comparing two cuts of one family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Φ^A and Φ^B: unions of components of Λ∖C meeting A∖C (resp. B∖C).
pub fn sides(g: &Graph, c: VSet, a: VSet, b: VSet) -> (VSet, VSet) {
    let rest = g.universe().minus(c);
    (g.flood(a.minus(c), rest), g.flood(b.minus(c), rest))
}

/// Membership test for Mincut(A, B).
///
/// Dropping x from a separating C reconnects A to B exactly when x touches
/// (or belongs to) both sides, so minimality is a local check.
pub fn is_mincut(g: &Graph, c: VSet, a: VSet, b: VSet) -> bool {
    if !a.inter(b).is_subset(c) {
        return false;
    }
    let rest = g.universe().minus(c);
    let sa = g.flood(a.minus(c), rest);
    if sa.intersects(b) {
        return false;
    }
    if !c.is_subset(a.union(g.boundary(sa))) {
        return false;
    }
    let sb = g.flood(b.minus(c), rest);
    c.is_subset(b.union(g.boundary(sb)))
}

/// The family Mincut_Λ(A, B) with the order Φ₁ < Φ₂ ⇔ Φ₁^A ⊊ Φ₂^A.
#[derive(Clone, Debug)]
pub struct MincutFamily {
    graph: Graph,
    a: VSet,
    b: VSet,
    cuts: Vec<Cut>,
}

impl MincutFamily {
    /// All minimal cuts, sorted by (|Φ^A|, bitmask), which is a linear extension of <.
    pub fn enumerate(g: &Graph, a: VSet, b: VSet) -> Result<MincutFamily> {
        let u = g.universe();
        if !a.is_subset(u) || !b.is_subset(u) {
            return Err(Error::UnknownVertex("A or B outside the graph".into()));
        }
        if u.len() > MINCUT_LIMIT {
            return Err(Error::TooLarge {
                what: "graph for mincut enumeration",
                size: u.len(),
                limit: MINCUT_LIMIT,
            });
        }
        let forced = a.inter(b);
        let free: Vec<usize> = u.minus(forced).iter().collect();
        let mut cuts = Vec::new();
        for mask in 0u64..(1u64 << free.len()) {
            let mut c = forced;
            let mut m = mask;
            while m != 0 {
                c.insert(free[m.trailing_zeros() as usize]);
                m &= m - 1;
            }
            if is_mincut(g, c, a, b) {
                let (side_a, side_b) = sides(g, c, a, b);
                cuts.push(Cut { set: c, side_a, side_b });
            }
        }
        cuts.sort_by_key(|c| (c.side_a.len(), c.side_a.0, c.set.0));
        Ok(MincutFamily {
            graph: g.clone(),
            a,
            b,
            cuts,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn a(&self) -> VSet {
        self.a
    }
    pub fn b(&self) -> VSet {
        self.b
    }
    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }
    pub fn len(&self) -> usize {
        self.cuts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
    pub fn set(&self, i: usize) -> VSet {
        self.cuts[i].set
    }
    pub fn sets(&self) -> Vec<VSet> {
        self.cuts.iter().map(|c| c.set).collect()
    }

    pub fn index_of(&self, c: VSet) -> Option<usize> {
        self.cuts.iter().position(|x| x.set == c)
    }

    pub fn require(&self, c: VSet) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::NotInFamily(format!("{c:?}")))
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        i != j && self.cuts[i].side_a.is_subset(self.cuts[j].side_a)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j)
    }

    pub fn compare(&self, i: usize, j: usize) -> Cmp {
        let (x, y) = (&self.cuts[i], &self.cuts[j]);
        debug_assert!(
            {
                let c1 = x.side_a.is_subset(y.side_a);
                let c2 = y.side_b.is_subset(x.side_b);
                let c3 = self.graph.separates(x.set, y.set, self.a);
                let c4 = self.graph.separates(y.set, x.set, self.b);
                c1 == c2 && c2 == c3 && c3 == c4
            },
            "the four comparability conditions disagree"
        );
        if i == j {
            Cmp::Equal
        } else if x.side_a.is_subset(y.side_a) {
            Cmp::Less
        } else if y.side_a.is_subset(x.side_a) {
            Cmp::Greater
        } else {
            Cmp::Incomparable
        }
    }

    /// Compare two cut sets, failing when either is not in the family.
    pub fn compare_sets(&self, p: VSet, q: VSet) -> Result<Cmp> {
        Ok(self.compare(self.require(p)?, self.require(q)?))
    }

    /// ∂E ∪ (Φ₁∩A) ∪ (Φ₂∩A), E = points reachable from A outside Φ₁∪Φ₂.
    pub fn meet_set(&self, p: VSet, q: VSet) -> VSet {
        bound_set(&self.graph, p, q, self.a)
    }

    /// Dual construction using B.
    pub fn join_set(&self, p: VSet, q: VSet) -> VSet {
        bound_set(&self.graph, p, q, self.b)
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        let m = self.meet_set(self.cuts[i].set, self.cuts[j].set);
        self.index_of(m)
            .ok_or_else(|| Error::Internal(format!("meet {m:?} is not a minimal cut")))
    }

    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        let m = self.join_set(self.cuts[i].set, self.cuts[j].set);
        self.index_of(m)
            .ok_or_else(|| Error::Internal(format!("join {m:?} is not a minimal cut")))
    }

    /// Covering pairs (i, j) with i ⋖ j.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.less(i, j) && !(0..n).any(|k| self.less(i, k) && self.less(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Strict order as a matrix, for the generic poset tools.
    pub fn relation(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.less(i, j)).collect()).collect()
    }

    /// Longest-chain height of each cut above the minimum.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut h = vec![0usize; n];
        // indices are a linear extension of <
        for j in 0..n {
            for i in 0..j {
                if self.less(i, j) {
                    h[j] = h[j].max(h[i] + 1);
                }
            }
        }
        h
    }
}

fn bound_set(g: &Graph, p: VSet, q: VSet, side: VSet) -> VSet {
    let pq = p.union(q);
    let e = g.flood(side.minus(pq), g.universe().minus(pq));
    g.boundary(e)
        .inter(g.universe())
        .union(p.inter(side))
        .union(q.inter(side))
}

/// A failed lemma check with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub lemma: &'static str,
    pub detail: String,
}

/// Reconstruction Φ̄₁ from the comparable-pair lemma: Φ₁' = Φ₁ ∩ Φ₂^A together
/// with the vertices of Φ₂ reachable from A by Φ₂-tight paths in (Φ₂^A ∪ Φ₂)∖Φ₁'.
pub fn reconstruct_lower(g: &Graph, a: VSet, lower: VSet, upper: &Cut) -> VSet {
    let inner = lower.inter(upper.side_a);
    let region = upper.side_a.union(upper.set).minus(inner);
    inner.union(g.tight_reachable(a.minus(inner), region, upper.set))
}

/// Run the lattice lemmas on a family: constructive meet/join are the
/// infimum/supremum, containment in Φ₁∪Φ₂, squeeze, chain separation and the
/// comparable-pair reconstruction.
pub fn check_lattice(f: &MincutFamily) -> Result<Vec<LemmaViolation>> {
    let n = f.len();
    let g = f.graph();
    let mut out = Vec::new();
    let v = |lemma: &'static str, detail: String| LemmaViolation { lemma, detail };
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (f.set(i), f.set(j));
            let m = f.meet_set(p, q);
            let jn = f.join_set(p, q);
            if !m.is_subset(p.union(q)) || !jn.is_subset(p.union(q)) {
                out.push(v("containment", format!("meet/join of {p:?},{q:?} leaves the union")));
            }
            let glb = (0..n).filter(|&k| f.le(k, i) && f.le(k, j)).find(|&k| {
                (0..n).all(|l| !(f.le(l, i) && f.le(l, j)) || f.le(l, k))
            });
            let lub = (0..n).filter(|&k| f.le(i, k) && f.le(j, k)).find(|&k| {
                (0..n).all(|l| !(f.le(i, l) && f.le(j, l)) || f.le(k, l))
            });
            if glb.map(|k| f.set(k)) != Some(m) {
                out.push(v("meet-join", format!("meet of {p:?},{q:?}: built {m:?}, infimum {glb:?}")));
            }
            if lub.map(|k| f.set(k)) != Some(jn) {
                out.push(v("meet-join", format!("join of {p:?},{q:?}: built {jn:?}, supremum {lub:?}")));
            }
            if f.less(i, j) {
                let (lo, hi) = (&f.cuts()[i], &f.cuts()[j]);
                if !lo.set.is_subset(hi.side_a.union(hi.set)) {
                    out.push(v("comparable-pair", format!("{p:?} not inside side of {q:?}")));
                }
                let rebuilt = reconstruct_lower(g, f.a(), lo.set, hi);
                if rebuilt != lo.set {
                    out.push(v("comparable-pair", format!("reconstruction of {p:?} below {q:?} gave {rebuilt:?}")));
                }
                let inner = lo.set.inter(hi.side_a);
                let alt = g.flood(f.a().inter(hi.side_a).minus(inner), hi.side_a.minus(inner));
                if alt != lo.side_a {
                    out.push(v("comparable-pair", format!("side of {p:?} not recovered inside {q:?}")));
                }
                let sq = MincutFamily::enumerate(g, p, q)?;
                for c in sq.sets() {
                    match f.index_of(c) {
                        Some(k) if f.le(i, k) && f.le(k, j) => {}
                        _ => out.push(v("squeeze", format!("{c:?} in Mincut({p:?},{q:?}) is not between them"))),
                    }
                }
                for k in 0..n {
                    if f.less(j, k) && !g.separates(q, p, f.set(k)) {
                        out.push(v("separation", format!("{q:?} does not separate {p:?} from {:?}", f.set(k))));
                    }
                }
            }
        }
    }
    Ok(out)
}
