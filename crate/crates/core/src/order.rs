//! Finite posets, partial cyclic orders, the glued construction, the family
//! C_P with its localizations, and admissibility checking.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::{CoxeterDiagram, Graph, PathP, VSet};
use crate::error::{Error, Result};
use crate::mincut::MincutFamily;

/// Ground sets up to this size get their cyclic relation materialized.
pub const MATERIALIZE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PosetViolation {
    Reflexive { x: usize },
    Antisymmetry { x: usize, y: usize },
    Transitivity { x: usize, y: usize, z: usize },
}

/// A strict order on `0..n` stored as a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    lt: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn new(lt: Vec<Vec<bool>>) -> FinitePoset {
        assert!(lt.iter().all(|r| r.len() == lt.len()));
        FinitePoset { lt }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> FinitePoset {
        FinitePoset {
            lt: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    /// A chain 0 < 1 < … < n−1.
    pub fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_fn(n, |i, j| i < j)
    }

    pub fn len(&self) -> usize {
        self.lt.len()
    }
    pub fn is_empty(&self) -> bool {
        self.lt.is_empty()
    }
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt[i][j]
    }
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt[i][j]
    }
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    pub fn violations(&self) -> Vec<PosetViolation> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            if self.lt[x][x] {
                out.push(PosetViolation::Reflexive { x });
            }
            for y in x + 1..n {
                if self.lt[x][y] && self.lt[y][x] {
                    out.push(PosetViolation::Antisymmetry { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.lt[x][y] {
                    continue;
                }
                for z in 0..n {
                    if self.lt[y][z] && !self.lt[x][z] {
                        out.push(PosetViolation::Transitivity { x, y, z });
                    }
                }
            }
        }
        out
    }

    pub fn is_poset(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn upper_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.le(i, k) && self.le(j, k)).collect()
    }
    pub fn lower_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.le(k, i) && self.le(k, j)).collect()
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let ub = self.upper_bounds(i, j);
        ub.iter().copied().find(|&k| ub.iter().all(|&l| self.le(k, l)))
    }
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lb = self.lower_bounds(i, j);
        lb.iter().copied().find(|&k| lb.iter().all(|&l| self.le(l, k)))
    }

    /// Longest-chain height; requires an acyclic relation.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut h: Vec<Option<usize>> = vec![None; n];
        fn go(p: &FinitePoset, v: usize, h: &mut Vec<Option<usize>>, depth: usize) -> usize {
            if let Some(x) = h[v] {
                return x;
            }
            assert!(depth <= p.len(), "relation has a cycle");
            let mut best = 0;
            for u in 0..p.len() {
                if p.lt[u][v] {
                    best = best.max(go(p, u, h, depth + 1) + 1);
                }
            }
            h[v] = Some(best);
            best
        }
        (0..n).map(|v| go(self, v, &mut h, 0)).collect()
    }

    /// Pairs with a common upper (resp. lower) bound but no join (resp. meet).
    pub fn missing_bounds(&self) -> Vec<(usize, usize, &'static str)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.upper_bounds(i, j).is_empty() && self.join(i, j).is_none() {
                    out.push((i, j, "join"));
                }
                if !self.lower_bounds(i, j).is_empty() && self.meet(i, j).is_none() {
                    out.push((i, j, "meet"));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicViolation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

/// A ternary relation on `0..n`, stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PartialCyclicOrder {
    n: usize,
    triples: BTreeSet<[usize; 3]>,
}

impl PartialCyclicOrder {
    pub fn new<I: IntoIterator<Item = [usize; 3]>>(n: usize, triples: I) -> PartialCyclicOrder {
        PartialCyclicOrder {
            n,
            triples: triples.into_iter().collect(),
        }
    }

    /// The cyclic order induced by a linear order given as a sequence.
    pub fn from_sequence(n: usize, seq: &[usize]) -> PartialCyclicOrder {
        let mut t = BTreeSet::new();
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                for k in j + 1..seq.len() {
                    let (x, y, z) = (seq[i], seq[j], seq[k]);
                    t.insert([x, y, z]);
                    t.insert([y, z, x]);
                    t.insert([z, x, y]);
                }
            }
        }
        PartialCyclicOrder { n, triples: t }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }
    pub fn holds(&self, a: usize, b: usize, c: usize) -> bool {
        self.triples.contains(&[a, b, c])
    }
    pub fn triples(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.triples.iter()
    }
    pub fn len(&self) -> usize {
        self.triples.len()
    }
    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Every axiom violation, each with a witness.
    pub fn check(&self) -> Vec<CyclicViolation> {
        let mut out = Vec::new();
        let mut by_first: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &[a, b, c] in &self.triples {
            by_first.entry((a, b)).or_default().push(c);
        }
        for &[a, b, c] in &self.triples {
            if a == b || b == c || a == c {
                out.push(CyclicViolation {
                    axiom: "distinctness",
                    witness: vec![a, b, c],
                });
                continue;
            }
            if !self.holds(b, c, a) {
                out.push(CyclicViolation {
                    axiom: "cyclicity",
                    witness: vec![a, b, c],
                });
            }
            if self.holds(c, b, a) && a < c {
                out.push(CyclicViolation {
                    axiom: "asymmetry",
                    witness: vec![a, b, c],
                });
            }
            if let Some(ds) = by_first.get(&(a, c)) {
                for &d in ds {
                    if !self.holds(a, b, d) {
                        out.push(CyclicViolation {
                            axiom: "transitivity",
                            witness: vec![a, b, c, d],
                        });
                    }
                }
            }
        }
        out
    }

    /// The order y < z ⇔ [y, z, x] on the ground set minus x. Returns the
    /// element list and the poset on positions of that list.
    pub fn induced_order(&self, x: usize) -> (Vec<usize>, FinitePoset) {
        let elems: Vec<usize> = (0..self.n).filter(|&y| y != x).collect();
        let p = FinitePoset::from_fn(elems.len(), |i, j| self.holds(elems[i], elems[j], x));
        (elems, p)
    }
}

/// A poset on a subset of a ground set, for gluing.
#[derive(Clone, Debug)]
pub struct GroundPoset {
    pub elements: Vec<usize>,
    pub order: FinitePoset,
}

impl GroundPoset {
    pub fn new(elements: Vec<usize>, order: FinitePoset) -> GroundPoset {
        assert_eq!(elements.len(), order.len());
        GroundPoset { elements, order }
    }

    /// Chain in the listed order.
    pub fn chain(elements: Vec<usize>) -> GroundPoset {
        let n = elements.len();
        GroundPoset::new(elements, FinitePoset::chain(n))
    }

    fn pos(&self, x: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == x)
    }

    fn lt(&self, x: usize, y: usize) -> Option<bool> {
        Some(self.order.lt(self.pos(x)?, self.pos(y)?))
    }
}

/// The cyclic relation glued from X₁ (b minimum, a maximum) and X₂ (a
/// minimum, b maximum), answered on demand.
#[derive(Clone, Debug)]
pub struct GluedOrder {
    n: usize,
    x1: GroundPoset,
    x2: GroundPoset,
}

impl GluedOrder {
    pub fn new(n: usize, x1: GroundPoset, x2: GroundPoset, a: usize, b: usize) -> Result<GluedOrder> {
        let mut problems = Vec::new();
        let s1: BTreeSet<usize> = x1.elements.iter().copied().collect();
        let s2: BTreeSet<usize> = x2.elements.iter().copied().collect();
        let common: BTreeSet<usize> = s1.intersection(&s2).copied().collect();
        if common != BTreeSet::from([a, b]) {
            problems.push(format!("X1 ∩ X2 = {common:?}, expected {{{a}, {b}}}"));
        }
        if a == b {
            problems.push("a and b must differ".to_string());
        }
        if s1.len() != x1.elements.len() || s2.len() != x2.elements.len() {
            problems.push("repeated element".to_string());
        }
        for (name, p) in [("X1", &x1), ("X2", &x2)] {
            if !p.order.is_poset() {
                problems.push(format!("{name} is not a poset"));
            }
            if p.elements.iter().any(|&e| e >= n) {
                problems.push(format!("{name} leaves the ground set"));
            }
        }
        let is_min = |p: &GroundPoset, m: usize| p.elements.iter().all(|&e| e == m || p.lt(m, e) == Some(true));
        let is_max = |p: &GroundPoset, m: usize| p.elements.iter().all(|&e| e == m || p.lt(e, m) == Some(true));
        if common.contains(&a) && common.contains(&b) {
            if !is_min(&x2, a) {
                problems.push("a is not the minimum of X2".into());
            }
            if !is_max(&x2, b) {
                problems.push("b is not the maximum of X2".into());
            }
            if !is_min(&x1, b) {
                problems.push("b is not the minimum of X1".into());
            }
            if !is_max(&x1, a) {
                problems.push("a is not the maximum of X1".into());
            }
        }
        if !problems.is_empty() {
            return Err(Error::Precondition(problems.join("; ")));
        }
        Ok(GluedOrder { n, x1, x2 })
    }

    fn generator(&self, x: usize, y: usize, z: usize) -> bool {
        let (p1, p2) = (&self.x1, &self.x2);
        let in1 = |e| p1.pos(e).is_some();
        let in2 = |e| p2.pos(e).is_some();
        (in2(x) && in2(y) && in2(z) && p2.lt(x, y) == Some(true) && p2.lt(y, z) == Some(true))
            || (in1(x) && in1(y) && in1(z) && p1.lt(x, y) == Some(true) && p1.lt(y, z) == Some(true))
            || (in2(x) && in2(y) && in1(z) && p2.lt(x, y) == Some(true))
            || (in1(x) && in1(y) && in2(z) && p1.lt(x, y) == Some(true))
    }

    pub fn holds(&self, x: usize, y: usize, z: usize) -> bool {
        x != y
            && y != z
            && x != z
            && (self.generator(x, y, z) || self.generator(y, z, x) || self.generator(z, x, y))
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn materialize(&self) -> Result<PartialCyclicOrder> {
        if self.n > MATERIALIZE_LIMIT {
            return Err(Error::TooLarge {
                what: "cyclic order ground set",
                size: self.n,
                limit: MATERIALIZE_LIMIT,
            });
        }
        let mut t = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.holds(x, y, z) {
                        t.push([x, y, z]);
                    }
                }
            }
        }
        Ok(PartialCyclicOrder::new(self.n, t))
    }
}

/// Glue two posets into a partial cyclic order (materialized).
pub fn glue(n: usize, x1: GroundPoset, x2: GroundPoset, a: usize, b: usize) -> Result<PartialCyclicOrder> {
    GluedOrder::new(n, x1, x2, a, b)?.materialize()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CPKind {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CPElement {
    pub set: VSet,
    pub kind: CPKind,
}

#[derive(Clone, Debug)]
enum CyclicSource {
    Glued(GluedOrder),
    Sequence(Vec<usize>),
}

/// The family C_P of type I and type II elements for a path P.
#[derive(Clone, Debug)]
pub struct CPFamily {
    diagram: CoxeterDiagram,
    path: PathP,
    lambda_p: Graph,
    elements: Vec<CPElement>,
    type2: MincutFamily,
    comparable: Vec<Vec<bool>>,
    source: CyclicSource,
    cyclic: Option<PartialCyclicOrder>,
    rank: Vec<i64>,
    period: i64,
}

impl CPFamily {
    pub fn build(d: &CoxeterDiagram, p: &PathP) -> Result<CPFamily> {
        let p = PathP::new(d, p.vertices().to_vec())?;
        let lp = p.lambda_p(d);
        if !lp.is_connected(lp.universe()) {
            return Err(Error::Disconnected);
        }
        let (a, b) = (p.a(), p.b());
        let fam = MincutFamily::enumerate(&lp, VSet::single(a), VSet::single(b))?;
        let ia = fam.index_of(VSet::single(a));
        let ib = fam.index_of(VSet::single(b));
        let (ia, ib) = match (ia, ib) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::Internal("{a} or {b} missing from Mincut_{Λ_P}({a},{b})".into())),
        };
        for (i, c) in fam.cuts().iter().enumerate() {
            if i != ia && i != ib && (c.set.contains(a) || c.set.contains(b)) {
                return Err(Error::Internal(format!("cut {:?} other than {{a}},{{b}} contains an endpoint", c.set)));
            }
        }
        let mut elements: Vec<CPElement> = fam
            .sets()
            .into_iter()
            .map(|set| CPElement { set, kind: CPKind::TypeII })
            .collect();
        let n2 = elements.len();
        for &v in p.interior() {
            elements.push(CPElement {
                set: VSet::single(v),
                kind: CPKind::TypeI,
            });
        }
        let n = elements.len();
        let comparable: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i == j || i >= n2 || j >= n2 || fam.less(i, j) || fam.less(j, i))
                    .collect()
            })
            .collect();
        let heights = fam.heights();
        let fb = heights[ib] as i64;
        let mut rank: Vec<i64> = heights.iter().map(|&h| h as i64).collect();
        for &v in p.interior() {
            rank.push(fb + p.dist_to_b(v).unwrap() as i64);
        }
        let period = fb + p.edge_count() as i64;
        // type I elements sit at n2.. in path order p₁ … p_k
        let descending: Vec<usize> = (n2..n).rev().collect();
        let source = if a == b {
            let mut seq = vec![ia];
            seq.extend(descending);
            CyclicSource::Sequence(seq)
        } else {
            let mut chain = vec![ib];
            chain.extend(descending);
            chain.push(ia);
            let x1 = GroundPoset::chain(chain);
            let x2 = GroundPoset::new((0..n2).collect(), FinitePoset::new(fam.relation()));
            CyclicSource::Glued(GluedOrder::new(n, x1, x2, ia, ib)?)
        };
        let cyclic = match &source {
            CyclicSource::Sequence(seq) => Some(PartialCyclicOrder::from_sequence(n, seq)),
            CyclicSource::Glued(g) if n <= MATERIALIZE_LIMIT => Some(g.materialize()?),
            CyclicSource::Glued(_) => None,
        };
        Ok(CPFamily {
            diagram: d.clone(),
            path: p,
            lambda_p: lp,
            elements,
            type2: fam,
            comparable,
            source,
            cyclic,
            rank,
            period,
        })
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }
    pub fn path(&self) -> &PathP {
        &self.path
    }
    pub fn lambda_p(&self) -> &Graph {
        &self.lambda_p
    }
    pub fn elements(&self) -> &[CPElement] {
        &self.elements
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn type2_family(&self) -> &MincutFamily {
        &self.type2
    }
    pub fn index_of(&self, s: VSet) -> Option<usize> {
        self.elements.iter().position(|e| e.set == s)
    }
    /// Comparability (reflexive on the diagonal).
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.comparable[i][j]
    }
    /// Rank map f: C_P → [0, n−1].
    pub fn rank(&self, i: usize) -> i64 {
        self.rank[i]
    }
    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn holds(&self, x: usize, y: usize, z: usize) -> bool {
        match (&self.cyclic, &self.source) {
            (Some(c), _) => c.holds(x, y, z),
            (None, CyclicSource::Glued(g)) => g.holds(x, y, z),
            (None, CyclicSource::Sequence(_)) => unreachable!("sequences are always materialized"),
        }
    }

    pub fn cyclic_order(&self) -> Option<&PartialCyclicOrder> {
        self.cyclic.as_ref()
    }

    /// f is a morphism of cyclically ordered sets into Z (mod the period).
    pub fn rank_morphism_violations(&self) -> Vec<[usize; 3]> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.holds(x, y, z) && !cyclic_z(self.rank[x], self.rank[y], self.rank[z]) {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        out
    }

    /// Name of an element for reports, e.g. `{x,y}`.
    pub fn element_name(&self, i: usize) -> String {
        format!("{{{}}}", self.diagram.set_names(self.elements[i].set).join(","))
    }

    pub fn localize(&self, t: usize) -> Result<Localization> {
        if t >= self.len() {
            return Err(Error::NotInFamily(format!("element #{t}")));
        }
        let tset = self.elements[t].set;
        let g = self.diagram.graph();
        let members: Vec<usize> = (0..self.len())
            .filter(|&r| r != t && self.comparable(r, t))
            .collect();
        let order = FinitePoset::from_fn(members.len(), |i, j| self.holds(members[i], members[j], t));
        let p_rest = self.path.vertex_set().minus(tset);
        let comps: Vec<VSet> = g
            .components(g.universe().minus(tset))
            .into_iter()
            .filter(|c| c.intersects(p_rest))
            .collect();
        let lambda_t = comps.iter().fold(VSet::EMPTY, |acc, c| acc.union(*c));
        let primed: Vec<VSet> = members.iter().map(|&r| self.elements[r].set.inter(lambda_t)).collect();
        let lp = &self.lambda_p;
        let (a, b) = (self.path.a(), self.path.b());
        let (side_a, side_b) = if self.elements[t].kind == CPKind::TypeII {
            let rest = lp.universe().minus(tset);
            (
                lp.flood(VSet::single(a).minus(tset), rest),
                lp.flood(VSet::single(b).minus(tset), rest),
            )
        } else {
            (VSet::EMPTY, VSet::EMPTY)
        };
        let mut inverse = Vec::with_capacity(members.len());
        let mut problems = Vec::new();
        for (k, &r) in members.iter().enumerate() {
            let rp = primed[k];
            let back = if self.elements[t].kind == CPKind::TypeI || self.elements[r].kind == CPKind::TypeI {
                rp
            } else if rp.is_subset(side_a) {
                rp.union(lp.tight_reachable(VSet::single(a), side_a.union(tset).minus(rp), tset))
            } else if rp.is_subset(side_b) {
                rp.union(lp.tight_reachable(VSet::single(b), side_b.union(tset).minus(rp), tset))
            } else {
                problems.push(format!("{rp:?} lies in neither side of T"));
                rp
            };
            if back != self.elements[r].set {
                problems.push(format!(
                    "inverse map sends {rp:?} to {back:?}, expected {:?}",
                    self.elements[r].set
                ));
            }
            inverse.push(back);
        }
        let distinct: BTreeSet<VSet> = primed.iter().copied().collect();
        if distinct.len() != primed.len() {
            problems.push("intersection map is not injective".into());
        }
        Ok(Localization {
            t,
            members,
            order,
            lambda_t,
            lambda_t_components: comps.len(),
            primed,
            inverse,
            problems,
        })
    }
}

/// [x, y, z] in the canonical cyclic order of Z.
pub fn cyclic_z(x: i64, y: i64, z: i64) -> bool {
    (x < y && y < z) || (y < z && z < x) || (z < x && x < y)
}

/// C_{P,T}, its image C′_{P,T} in Λ_T, and the verified inverse map.
#[derive(Clone, Debug)]
pub struct Localization {
    pub t: usize,
    /// Indices into the parent family.
    pub members: Vec<usize>,
    /// x < y ⇔ [x, y, T], on positions of `members`.
    pub order: FinitePoset,
    pub lambda_t: VSet,
    /// More than one component meets P∖T when this exceeds 1.
    pub lambda_t_components: usize,
    pub primed: Vec<VSet>,
    pub inverse: Vec<VSet>,
    /// Bijectivity failures; empty when φ and its inverse agree.
    pub problems: Vec<String>,
}

impl Localization {
    pub fn is_bijective(&self) -> bool {
        self.problems.is_empty()
    }

    /// Admissibility of C′_{P,T} inside Λ_T.
    pub fn admissibility(&self, host: &Graph) -> Result<Vec<AdmissibleViolation>> {
        check_admissible(&self.primed, &self.order, &host.restrict(self.lambda_t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleViolation {
    pub condition: u8,
    pub detail: String,
}

/// The four admissibility conditions; condition 2 is read with ≤ since A
/// and B themselves always lie in Mincut(A, B).
pub fn check_admissible(q: &[VSet], lt: &FinitePoset, g: &Graph) -> Result<Vec<AdmissibleViolation>> {
    let n = q.len();
    let mut out = Vec::new();
    let viol = |condition, detail| AdmissibleViolation { condition, detail };
    for v in lt.violations() {
        out.push(viol(1, format!("{v:?}")));
    }
    if !out.is_empty() {
        return Ok(out);
    }
    let index: BTreeMap<VSet, usize> = q.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    for i in 0..n {
        for j in 0..n {
            if !lt.lt(i, j) {
                continue;
            }
            let fam = MincutFamily::enumerate(g, q[i], q[j])?;
            for c in fam.sets() {
                match index.get(&c) {
                    None => out.push(viol(2, format!("{c:?} ∈ Mincut({:?},{:?}) is missing from Q", q[i], q[j]))),
                    Some(&k) if !(lt.le(i, k) && lt.le(k, j)) => {
                        out.push(viol(2, format!("{c:?} ∈ Mincut({:?},{:?}) is not between them", q[i], q[j])))
                    }
                    _ => {}
                }
            }
            for k in 0..n {
                if lt.lt(j, k) && !g.separates(q[j], q[i], q[k]) {
                    out.push(viol(3, format!("{:?} does not separate {:?} from {:?}", q[j], q[i], q[k])));
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !lt.upper_bounds(i, j).is_empty() {
                match lt.join(i, j) {
                    None => out.push(viol(4, format!("{:?},{:?} have upper bounds but no join", q[i], q[j]))),
                    Some(k) if !q[k].is_subset(q[i].union(q[j])) => {
                        out.push(viol(4, format!("join {:?} of {:?},{:?} leaves the union", q[k], q[i], q[j])))
                    }
                    _ => {}
                }
            }
            if !lt.lower_bounds(i, j).is_empty() {
                match lt.meet(i, j) {
                    None => out.push(viol(4, format!("{:?},{:?} have lower bounds but no meet", q[i], q[j]))),
                    Some(k) if !q[k].is_subset(q[i].union(q[j])) => {
                        out.push(viol(4, format!("meet {:?} of {:?},{:?} leaves the union", q[k], q[i], q[j])))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(out)
}
