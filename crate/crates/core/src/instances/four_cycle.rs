//! Labeled 4-cycle searches on windows of Coxeter complexes.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::coxeter_shadow::CoxeterShadow;
use crate::coxeter::{Coset, CoxeterGroup, GroupElement};
use crate::diagram::VSet;
use crate::error::{Error, Result};
use crate::mincut::MincutFamily;

/// Exhaustive enumeration up to this many vertices; sampled above.
pub const EXACT_LIMIT: usize = 10_000;
const SAMPLE_BASES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleVerdict {
    pub case: usize,
    /// x₁x₂x₃x₄ as window vertex labels.
    pub cycle: Vec<String>,
    pub has_center: bool,
    /// All centers, as labels.
    pub centers: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourCycleReport {
    pub label: &'static str,
    pub s: String,
    pub t: String,
    pub subdiagram: Vec<String>,
    pub vertices: usize,
    pub exhaustive: bool,
    pub seed: u64,
    pub cycles: usize,
    pub with_center: usize,
    pub without_center: usize,
    pub verdicts: Vec<CycleVerdict>,
}

fn type_of(sh: &CoxeterShadow, v: usize) -> usize {
    sh.kind_types[sh.window.kind(v)]
}

/// All embedded 4-cycles of type ŝt̂ŝt̂ as (x₁,x₂,x₃,x₄) with x₁ < x₃ and
/// x₂ < x₄, in lexicographic order.
pub fn alternating_cycles(sh: &CoxeterShadow, s: usize, t: usize, seed: u64) -> (Vec<[usize; 4]>, bool) {
    let c = &sh.complex;
    let mut svs: Vec<usize> = (0..c.len()).filter(|&v| type_of(sh, v) == s).collect();
    let exhaustive = c.len() <= EXACT_LIMIT;
    if !exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        svs.shuffle(&mut rng);
        svs.truncate(SAMPLE_BASES);
        svs.sort_unstable();
    }
    let mut out = Vec::new();
    for &x1 in &svs {
        let n1: BTreeSet<usize> = c.adj[x1].iter().copied().filter(|&v| type_of(sh, v) == t).collect();
        let x3s: BTreeSet<usize> = n1
            .iter()
            .flat_map(|&v| c.adj[v].iter().copied())
            .filter(|&w| (w > x1 || !exhaustive) && w != x1 && type_of(sh, w) == s && !c.adjacent(x1, w))
            .collect();
        for x3 in x3s {
            let common: Vec<usize> = n1.iter().copied().filter(|&v| c.adjacent(v, x3)).collect();
            for (i, &x2) in common.iter().enumerate() {
                for &x4 in &common[i + 1..] {
                    if !c.adjacent(x2, x4) {
                        out.push([x1, x2, x3, x4]);
                    }
                }
            }
        }
    }
    (out, exhaustive)
}

/// Centers of a cycle read off the window adjacency.
fn centers_by_adjacency(sh: &CoxeterShadow, cyc: &[usize; 4], sub: VSet) -> Vec<usize> {
    let c = &sh.complex;
    c.adj[cyc[0]]
        .iter()
        .copied()
        .filter(|&z| sub.contains(type_of(sh, z)) && cyc[1..].iter().all(|&x| c.adjacent(z, x)))
        .collect()
}

fn element(group: &CoxeterGroup, sh: &CoxeterShadow, v: usize) -> Result<(GroupElement, VSet)> {
    let Coset { rep, gens } = sh.window.vertex(v);
    Ok((group.from_word(&sh.window.table().word(rep as usize))?, gens))
}

/// Centers of a cycle recomputed with exact coset intersections over all
/// window vertices, independently of the stored adjacency.
pub fn centers_by_cosets(group: &CoxeterGroup, sh: &CoxeterShadow, cyc: &[usize; 4], sub: VSet) -> Result<Vec<usize>> {
    let xs = cyc.iter().map(|&v| element(group, sh, v)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for z in 0..sh.complex.len() {
        if !sub.contains(type_of(sh, z)) || cyc.contains(&z) {
            continue;
        }
        let (gz, kz) = element(group, sh, z)?;
        let mut all = true;
        for (g, k) in &xs {
            if !group.cosets_intersect(&gz, kz, g, *k)? {
                all = false;
                break;
            }
        }
        if all {
            out.push(z);
        }
    }
    Ok(out)
}

fn validate(group: &CoxeterGroup, s: usize, t: usize, sub: VSet) -> Result<()> {
    let d = group.diagram();
    if s == t {
        return Err(Error::Precondition("s and t must differ".into()));
    }
    if !sub.contains(s) || !sub.contains(t) {
        return Err(Error::Precondition("the subdiagram must contain s and t".into()));
    }
    if !d.graph().is_connected(sub) {
        return Err(Error::Precondition("the subdiagram must be connected".into()));
    }
    Ok(())
}

fn verdict(sh: &CoxeterShadow, case: usize, cyc: &[usize; 4], centers: &[usize]) -> CycleVerdict {
    let c = &sh.complex;
    CycleVerdict {
        case,
        cycle: cyc.iter().map(|&v| c.names[v].clone()).collect(),
        has_center: !centers.is_empty(),
        centers: centers.iter().map(|&z| c.names[z].clone()).collect(),
    }
}

pub fn four_cycle_search(group: &CoxeterGroup, sh: &CoxeterShadow, s: usize, t: usize, sub: VSet, seed: u64) -> Result<FourCycleReport> {
    validate(group, s, t, sub)?;
    let d = group.diagram();
    let (cycles, exhaustive) = alternating_cycles(sh, s, t, seed);
    let verdicts: Vec<CycleVerdict> = cycles
        .iter()
        .enumerate()
        .map(|(k, cyc)| verdict(sh, k, cyc, &centers_by_adjacency(sh, cyc, sub)))
        .collect();
    let with_center = verdicts.iter().filter(|v| v.has_center).count();
    Ok(FourCycleReport {
        label: super::mincut_shadow::SHADOW_LABEL,
        s: d.name(s).to_string(),
        t: d.name(t).to_string(),
        subdiagram: d.set_names(sub),
        vertices: sh.complex.len(),
        exhaustive,
        seed,
        cycles: verdicts.len(),
        with_center,
        without_center: verdicts.len() - with_center,
        verdicts,
    })
}

/// Re-derives the verdict of a single case with exact coset arithmetic.
pub fn replay_case(group: &CoxeterGroup, sh: &CoxeterShadow, s: usize, t: usize, sub: VSet, seed: u64, case: usize) -> Result<CycleVerdict> {
    validate(group, s, t, sub)?;
    let (cycles, _) = alternating_cycles(sh, s, t, seed);
    let cyc = cycles
        .get(case)
        .ok_or_else(|| Error::Precondition(format!("case {case} out of range (0..{})", cycles.len())))?;
    Ok(verdict(sh, case, cyc, &centers_by_cosets(group, sh, cyc, sub)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongVerdict {
    pub case: usize,
    pub cycle: Vec<String>,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongReport {
    pub label: &'static str,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub cuts: Vec<Vec<String>>,
    pub cycles: usize,
    pub with_witness: usize,
    pub verdicts: Vec<StrongVerdict>,
}

/// Strong variant: generalized 4-cycles of type ÂB̂ÂB̂ among cosets with
/// minimal representative in the window, and witnesses y of type Ĉ with
/// C ∈ Mincut_Λ(A, B) meeting all four.
pub fn strong_four_cycle_search(group: &CoxeterGroup, sh: &CoxeterShadow, a: VSet, b: VSet) -> Result<StrongReport> {
    let d = group.diagram();
    let table = sh.window.table();
    let all = d.all();
    let fam = MincutFamily::enumerate(d.graph(), a, b)?;
    let radius = sh.window.radius();
    let cosets = |x: VSet| -> Vec<Coset> {
        let set: BTreeSet<Coset> = (0..table.size())
            .take_while(|&i| table.len(i) <= radius)
            .map(|i| table.coset(i, all.minus(x)))
            .collect();
        set.into_iter().collect()
    };
    let (ca, cb) = (cosets(a), cosets(b));
    let ys: Vec<Coset> = fam.sets().into_iter().flat_map(cosets).collect();
    let label = |c: Coset| -> String {
        let w = group.word_names(&table.word(c.rep as usize));
        format!("{}W{{{}}}", if w.is_empty() { "e".into() } else { w.join("") }, d.set_names(c.gens).join(","))
    };
    let mut verdicts = Vec::new();
    for (i, &x1) in ca.iter().enumerate() {
        for &x3 in &ca[i + 1..] {
            let common: Vec<Coset> = cb
                .iter()
                .copied()
                .filter(|&y| table.intersects(x1, y).unwrap_or(false) && table.intersects(x3, y).unwrap_or(false))
                .collect();
            for (j, &x2) in common.iter().enumerate() {
                for &x4 in &common[j + 1..] {
                    let cyc = [x1, x2, x3, x4];
                    let mut wit = Vec::new();
                    for &y in &ys {
                        let mut ok = true;
                        for &x in &cyc {
                            if !table.intersects(x, y)? {
                                ok = false;
                                break;
                            }
                        }
                        if ok {
                            wit.push(label(y));
                        }
                    }
                    verdicts.push(StrongVerdict {
                        case: verdicts.len(),
                        cycle: cyc.iter().map(|&c| label(c)).collect(),
                        witnesses: wit,
                    });
                }
            }
        }
    }
    Ok(StrongReport {
        label: super::mincut_shadow::SHADOW_LABEL,
        a: d.set_names(a),
        b: d.set_names(b),
        cuts: fam.sets().into_iter().map(|c| d.set_names(c)).collect(),
        cycles: verdicts.len(),
        with_witness: verdicts.iter().filter(|v| !v.witnesses.is_empty()).count(),
        verdicts,
    })
}
