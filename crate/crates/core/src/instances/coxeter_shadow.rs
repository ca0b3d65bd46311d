//! Windows of relative Coxeter complexes as finite typed complexes.

use std::sync::Arc;

use crate::coxeter::{BallTable, CosetWindow, CoxeterGroup};
use crate::diagram::{CoxeterDiagram, Label, VSet};
use crate::error::{Error, Result};
use crate::garside::FiniteComplex;

#[derive(Clone, Debug)]
pub struct CoxeterShadow {
    pub window: CosetWindow,
    pub complex: FiniteComplex,
    /// Generator s for each vertex kind (vertex of kind k has type ŝ).
    pub kind_types: Vec<usize>,
    /// Whether the diagram is an Ã_{n−1} cycle carrying a cyclic order.
    pub affine_a: bool,
}

/// The vertices of the diagram in cycle order, when it is a single cycle
/// of length ≥ 3 with all labels 3.
pub fn affine_a_cycle(d: &CoxeterDiagram) -> Option<Vec<usize>> {
    let n = d.len();
    if n < 3 || !d.graph().is_connected(d.all()) {
        return None;
    }
    if (0..n).any(|v| d.graph().degree(v) != 2) || d.edges().any(|(_, _, l)| l != Label::Finite(3)) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = d.graph().neighbors(cur).iter().find(|&w| w != prev)?;
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

/// Longest element length over the standard parabolics, or None if one is
/// infinite or leaves the ball.
fn max_longest(table: &BallTable, kinds: &[VSet]) -> Option<usize> {
    let mut best = 0;
    for &k in kinds {
        let elems = table.elements(table.coset(0, k)).ok()?;
        best = best.max(elems.iter().map(|&e| table.len(e)).max().unwrap_or(0));
    }
    Some(best)
}

/// The relative Coxeter complex on the types in `types`, cut to cosets
/// with minimal representative of length ≤ radius.
pub fn coxeter_shadow_provider(group: &CoxeterGroup, table: Arc<BallTable>, types: VSet, radius: usize) -> Result<CoxeterShadow> {
    if types.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = group.diagram();
    let window = CosetWindow::coxeter_complex(table.clone(), types, radius)?;
    let kind_types: Vec<usize> = types.iter().collect();
    let cycle = if types == d.all() { affine_a_cycle(d) } else { None };
    let mut pos = vec![0i64; d.len()];
    match &cycle {
        Some(c) => {
            for (i, &s) in c.iter().enumerate() {
                pos[s] = i as i64;
            }
        }
        None => {
            for (i, &s) in kind_types.iter().enumerate() {
                pos[s] = i as i64;
            }
        }
    }
    let longest = max_longest(&table, window.kinds());
    let n = window.len();
    let tp = |i: usize| kind_types[window.kind(i)];
    let mut c = FiniteComplex {
        names: (0..n).map(|i| window.vertex_label(group, i)).collect(),
        types: (0..n).map(tp).collect(),
        adj: (0..n).map(|i| window.neighbors(i).to_vec()).collect(),
        f: (0..n).map(|i| pos[tp(i)]).collect(),
        period: if cycle.is_some() { d.len() as i64 } else { kind_types.len() as i64 },
        boundary: (0..n)
            .map(|i| longest.map_or(true, |l| window.depth(i) + l > radius))
            .collect(),
        is_window: true,
        ..Default::default()
    };
    for a in &mut c.adj {
        a.sort_unstable();
    }
    if cycle.is_some() {
        for [u, v, w] in c.triangles() {
            let mut t = [u, v, w];
            t.sort_by_key(|&x| c.f[x]);
            c.set_orientation(t[0], t[1], t[2]);
        }
    }
    for d in window.flag_discrepancies()? {
        c.non_simplices.push(d.clique);
    }
    Ok(CoxeterShadow {
        window,
        complex: c,
        kind_types,
        affine_a: cycle.is_some(),
    })
}
