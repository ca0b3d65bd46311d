//! Windows of coset complexes, gates, and the (oriented) Davis complex.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::ball::{BallTable, Coset};
use super::group::CoxeterGroup;
use crate::diagram::VSet;
use crate::error::{Error, Result};

/// Vertices are cosets w·W_{X_k} (one generating set X_k per vertex kind)
/// whose minimal representative has length ≤ R; edges join intersecting
/// cosets of compatible kinds.
#[derive(Clone, Debug)]
pub struct CosetWindow {
    table: Arc<BallTable>,
    radius: usize,
    kinds: Vec<VSet>,
    vertices: Vec<Coset>,
    kind_of: Vec<usize>,
    adj: Vec<Vec<usize>>,
    index: BTreeMap<Coset, usize>,
}

/// A window together with the discrepancies found while declaring simplices.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FlagDiscrepancy {
    pub clique: Vec<usize>,
}

impl CosetWindow {
    /// Ball radius needed for exact intersection tests on a radius-R window.
    pub fn ball_radius(r: usize) -> usize {
        3 * r + 1
    }

    pub fn build(
        table: Arc<BallTable>,
        kinds: Vec<VSet>,
        radius: usize,
        compatible: impl Fn(usize, usize) -> bool,
    ) -> Result<CosetWindow> {
        if table.radius() < 2 * radius {
            return Err(Error::Truncated(format!(
                "ball radius {} too small for window radius {radius}",
                table.radius()
            )));
        }
        let mut index = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut kind_of = Vec::new();
        for i in 0..table.size() {
            if table.len(i) > radius {
                break;
            }
            for (k, &x) in kinds.iter().enumerate() {
                let c = table.coset(i, x);
                if let std::collections::btree_map::Entry::Vacant(e) = index.entry(c) {
                    e.insert(vertices.len());
                    vertices.push(c);
                    kind_of.push(k);
                }
            }
        }
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if compatible(kind_of[i], kind_of[j]) && table.intersects(vertices[i], vertices[j])? {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Ok(CosetWindow {
            table,
            radius,
            kinds,
            vertices,
            kind_of,
            adj,
            index,
        })
    }

    /// The relative Coxeter complex: vertex kinds ŝ = S∖{s} for s ∈ types.
    pub fn coxeter_complex(table: Arc<BallTable>, types: VSet, radius: usize) -> Result<CosetWindow> {
        let all = VSet::full(table.rank());
        let kinds = types.iter().map(|s| all.without(s)).collect();
        CosetWindow::build(table, kinds, radius, |a, b| a != b)
    }

    pub fn table(&self) -> &BallTable {
        &self.table
    }
    pub fn radius(&self) -> usize {
        self.radius
    }
    pub fn kinds(&self) -> &[VSet] {
        &self.kinds
    }
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
    pub fn vertex(&self, i: usize) -> Coset {
        self.vertices[i]
    }
    pub fn kind(&self, i: usize) -> usize {
        self.kind_of[i]
    }
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }
    pub fn index_of(&self, c: Coset) -> Option<usize> {
        self.index.get(&c).copied()
    }
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
    /// Length of the vertex's minimal representative.
    pub fn depth(&self, i: usize) -> usize {
        self.table.len(self.vertices[i].rep as usize)
    }

    /// All cliques of size ≥ 2 (the simplices declared from pairwise
    /// intersection).
    pub fn cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..self.len())
            .map(|v| (vec![v], self.adj[v].iter().copied().filter(|&w| w > v).collect()))
            .collect();
        while let Some((c, cand)) = stack.pop() {
            if c.len() >= 2 {
                out.push(c.clone());
            }
            for (k, &w) in cand.iter().enumerate() {
                let next: Vec<usize> = cand[k + 1..].iter().copied().filter(|&u| self.adjacent(w, u)).collect();
                let mut c2 = c.clone();
                c2.push(w);
                stack.push((c2, next));
            }
        }
        out.sort();
        out
    }

    /// Cliques whose cosets have empty common intersection.
    pub fn flag_discrepancies(&self) -> Result<Vec<FlagDiscrepancy>> {
        let mut out = Vec::new();
        for c in self.cliques() {
            if c.len() < 3 {
                continue;
            }
            let mut acc = Some(self.vertices[c[0]]);
            for &v in &c[1..] {
                acc = match acc {
                    Some(a) => self.table.intersect(a, self.vertices[v])?,
                    None => None,
                };
            }
            if acc.is_none() {
                out.push(FlagDiscrepancy { clique: c });
            }
        }
        Ok(out)
    }

    pub fn vertex_label(&self, group: &CoxeterGroup, i: usize) -> String {
        let c = self.vertices[i];
        let w = group.word_names(&self.table.word(c.rep as usize));
        let g = group.diagram().set_names(c.gens);
        format!("{}W{{{}}}", if w.is_empty() { "e".to_string() } else { w.join("") }, g.join(","))
    }
}

/// Faces of the Davis complex are spherical cosets; an oriented cell
/// [E, v] is stored canonically as (E, gate_E(v)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrientedCell {
    pub face_rep: u32,
    pub face_gens: VSet,
    pub base: u32,
}

#[derive(Clone, Debug)]
pub struct DavisWindow {
    table: Arc<BallTable>,
    radius: usize,
    spherical: Vec<VSet>,
    faces: Vec<Coset>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RetractionReport {
    pub faces: usize,
    pub targets: usize,
    pub pairs: usize,
    pub compatibility_checks: usize,
    pub failures: Vec<String>,
    pub truncated: usize,
}

impl DavisWindow {
    /// Spherical faces whose minimal representative has length ≤ R.
    pub fn build(group: &CoxeterGroup, table: Arc<BallTable>, radius: usize) -> Result<DavisWindow> {
        let n = table.rank();
        let spherical: Vec<VSet> = (0u64..1 << n)
            .map(VSet)
            .filter(|&x| group.is_spherical(x))
            .collect();
        let mut seen = BTreeSet::new();
        for i in 0..table.size() {
            if table.len(i) > radius {
                break;
            }
            for &x in &spherical {
                seen.insert(table.coset(i, x));
            }
        }
        Ok(DavisWindow {
            table,
            radius,
            spherical,
            faces: seen.into_iter().collect(),
        })
    }

    pub fn faces(&self) -> &[Coset] {
        &self.faces
    }
    pub fn spherical_types(&self) -> &[VSet] {
        &self.spherical
    }
    pub fn table(&self) -> &BallTable {
        &self.table
    }

    /// Π_F on faces: the face spanned by the gates of E's vertices.
    pub fn face_projection(&self, e: Coset, f: Coset) -> Result<Coset> {
        let verts = self.table.elements(e)?;
        let gates: BTreeSet<usize> = verts
            .iter()
            .map(|&v| self.table.gate(v, f))
            .collect::<Result<_>>()?;
        self.table.face_of(&gates.into_iter().collect::<Vec<_>>())
    }

    pub fn cell(&self, e: Coset, v: usize) -> Result<OrientedCell> {
        Ok(OrientedCell {
            face_rep: e.rep,
            face_gens: e.gens,
            base: self.table.gate(v, e)? as u32,
        })
    }

    /// Π_F̂[E, v] = [Π_F(E), v].
    pub fn oriented_retraction(&self, e: Coset, v: usize, f: Coset) -> Result<OrientedCell> {
        let pe = self.face_projection(e, f)?;
        self.cell(pe, v)
    }

    /// Canonical cells of Ê for a face E: all (E′, u) with E′ ⊆ E, u ∈ E′.
    pub fn hat(&self, e: Coset) -> Result<BTreeSet<OrientedCell>> {
        let mut out = BTreeSet::new();
        for u in self.table.elements(e)? {
            for sub in (0u64..1 << self.table.rank()).map(VSet).filter(|x| x.is_subset(e.gens)) {
                let face = self.table.coset(u, sub);
                out.insert(self.cell(face, u)?);
            }
        }
        Ok(out)
    }

    /// Checks Π_F̂(Ê) = (Π_F(E))^ for every window face E and every coset F
    /// of the given kinds whose representative has length ≤ R, plus the
    /// compatibility [E,v₁]=[E,v₂] ⇒ [Π_F(E),v₁]=[Π_F(E),v₂] for all v in
    /// the radius-R ball.
    pub fn check_retractions(&self, target_kinds: &[VSet]) -> Result<RetractionReport> {
        let mut rep = RetractionReport {
            faces: self.faces.len(),
            ..Default::default()
        };
        let mut targets = BTreeSet::new();
        for i in 0..self.table.size() {
            if self.table.len(i) > self.radius {
                break;
            }
            for &x in target_kinds {
                targets.insert(self.table.coset(i, x));
            }
        }
        rep.targets = targets.len();
        let ball: Vec<usize> = (0..self.table.size()).filter(|&i| self.table.len(i) <= self.radius).collect();
        for &e in &self.faces {
            let hat_e = self.hat(e)?;
            for &f in &targets {
                rep.pairs += 1;
                let res: Result<()> = (|| {
                    let pe = self.face_projection(e, f)?;
                    let mut image = BTreeSet::new();
                    for c in &hat_e {
                        let sub = Coset {
                            rep: c.face_rep,
                            gens: c.face_gens,
                        };
                        image.insert(self.oriented_retraction(sub, c.base as usize, f)?);
                    }
                    if image != self.hat(pe)? {
                        rep.failures.push(format!("retraction property fails for E={e:?}, F={f:?}"));
                    }
                    let mut by_class: BTreeMap<u32, u32> = BTreeMap::new();
                    for &v in &ball {
                        rep.compatibility_checks += 1;
                        let here = self.cell(e, v)?.base;
                        let there = self.cell(pe, v)?.base;
                        if let Some(&prev) = by_class.get(&here) {
                            if prev != there {
                                rep.failures.push(format!("compatibility fails for E={e:?}, F={f:?}, v={v}"));
                            }
                        } else {
                            by_class.insert(here, there);
                        }
                    }
                    Ok(())
                })();
                match res {
                    Ok(()) => {}
                    Err(Error::Truncated(_)) => rep.truncated += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(rep)
    }
}
