//! Class-level order theory: class algebra constants by exact pair counting,
//! the layered reflection-length computation, the length and codimension
//! orders on conjugacy classes, atom detection, cover relations, and the
//! coincidence report.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matgroup::GroupTable;

/// All class algebra constants of a group, indexed (A, C, Y):
/// cac(A, Y, C) counts pairs (a, y) in A x Y with a*y = rep(C), computed as
/// the number of a in A with a^-1 * rep(C) in Y.
pub struct CacTable {
    k: usize,
    counts: Vec<u32>,
}

impl CacTable {
    pub fn get(&self, x: usize, y: usize, c: usize) -> u64 {
        self.counts[(x * self.k + c) * self.k + y] as u64
    }
}

/// One pass per (A, C) pair over the members of A; the whole table costs
/// #classes * |G| group products.
pub fn cac_table(g: &GroupTable) -> CacTable {
    let k = g.num_classes();
    let mut counts = vec![0u32; k * k * k];
    for a in 0..k {
        for c in 0..k {
            let crep = g.class_rep(c);
            let base = (a * k + c) * k;
            for &x in g.members(a) {
                let y = g.mul(g.inv(x), crep);
                counts[base + g.class_of(y)] += 1;
            }
        }
    }
    CacTable { k, counts }
}

/// The class algebra constant cac(X, Y, C).
pub fn cac(table: &CacTable, x: usize, y: usize, c: usize) -> u64 {
    table.get(x, y, c)
}

/// Reflection length per class by the layering recurrence: L(0) is the
/// identity class, L(1) the reflection classes, and a class C outside
/// L(0),...,L(k) lies in L(k+1) exactly when some cac(X, Y, C) with X in
/// L(1), Y in L(k) is nonzero.
pub fn reflection_length_by_layers(g: &GroupTable, cac: &CacTable) -> Result<Vec<usize>> {
    let k = g.num_classes();
    let mut lengths: Vec<Option<usize>> = vec![None; k];
    let identity_class = g.class_of(g.identity());
    lengths[identity_class] = Some(0);
    let refl_classes: Vec<usize> = (0..k).filter(|&c| g.is_reflection_class(c)).collect();
    for &c in &refl_classes {
        lengths[c] = Some(1);
    }
    let mut frontier: Vec<usize> = refl_classes.clone();
    let mut level = 1usize;
    while lengths.iter().any(|l| l.is_none()) {
        let mut next = Vec::new();
        for c in 0..k {
            if lengths[c].is_some() {
                continue;
            }
            let mut total = 0u64;
            for &x in &refl_classes {
                for &y in &frontier {
                    total += cac.get(x, y, c);
                }
            }
            if total != 0 {
                next.push(c);
            }
        }
        if next.is_empty() {
            let unassigned = lengths.iter().filter(|l| l.is_none()).count();
            return Err(Error::NonReflectionGroup(unassigned));
        }
        level += 1;
        for &c in &next {
            lengths[c] = Some(level);
        }
        frontier = next;
    }
    Ok(lengths.into_iter().map(|l| l.unwrap()).collect())
}

/// Independent oracle: breadth-first distance from the identity in the
/// Cayley graph generated by all reflections, per element.
pub fn bfs_reflection_length(g: &GroupTable, max_elements: u64) -> Result<Vec<usize>> {
    if g.order() as u64 > max_elements {
        return Err(Error::BudgetExceeded {
            task: format!("breadth-first length oracle on {}", g.name),
            needed: g.order() as u64,
            budget: max_elements,
        });
    }
    let mut dist = vec![usize::MAX; g.order()];
    dist[g.identity() as usize] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(g.identity());
    while let Some(x) = queue.pop_front() {
        for &r in g.reflections() {
            let y = g.mul(x, r);
            if dist[y as usize] == usize::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                queue.push_back(y);
            }
        }
    }
    let stranded = dist.iter().filter(|&&d| d == usize::MAX).count();
    if stranded > 0 {
        return Err(Error::NonReflectionGroup(stranded));
    }
    Ok(dist)
}

/// Per-class reflection length, codimension, both order relations, atom
/// flags, and cover edges for each order.
pub struct OrderTables {
    pub length_by_class: Vec<usize>,
    pub codim_by_class: Vec<usize>,
    pub leq_ell: Vec<Vec<bool>>,
    pub leq_perp: Vec<Vec<bool>>,
    pub atom_flags_perp: Vec<bool>,
    pub covers_ell: Vec<(usize, usize)>,
    pub covers_perp: Vec<(usize, usize)>,
}

/// A <= C in the codimension order iff some cac(A, X, C) with
/// codim(A) + codim(X) = codim(C) is nonzero; the length order is the same
/// formula with length in place of codimension.
fn relation_matrix(g: &GroupTable, cac: &CacTable, grade: &[usize]) -> Vec<Vec<bool>> {
    let k = g.num_classes();
    let mut rel = vec![vec![false; k]; k];
    for a in 0..k {
        for c in 0..k {
            if grade[a] > grade[c] {
                continue;
            }
            let need = grade[c] - grade[a];
            let mut total = 0u64;
            for x in 0..k {
                if grade[x] == need {
                    total += cac.get(a, x, c);
                }
            }
            rel[a][c] = total != 0;
        }
    }
    rel
}

/// C is an atom in the codimension order iff every cac(X, Y, C) with X, Y
/// ranging over nonidentity classes distinct from C and
/// codim(X) + codim(Y) = codim(C) vanishes.
pub fn codim_atoms(g: &GroupTable, cac: &CacTable) -> Vec<bool> {
    let k = g.num_classes();
    let identity_class = g.class_of(g.identity());
    let codim = g.codims_by_class();
    (0..k)
        .map(|c| {
            if c == identity_class {
                return false;
            }
            let mut total = 0u64;
            for x in 0..k {
                if x == identity_class || x == c || codim[x] >= codim[c] {
                    continue;
                }
                let need = codim[c] - codim[x];
                for y in 0..k {
                    if y != identity_class && y != c && codim[y] == need {
                        total += cac.get(x, y, c);
                    }
                }
            }
            total == 0
        })
        .collect()
}

/// Checks the partial-order axioms, reporting the first violation.
pub fn validate_poset(rel: &[Vec<bool>]) -> Result<()> {
    let k = rel.len();
    for a in 0..k {
        if !rel[a][a] {
            return Err(Error::PosetAxiomViolation(format!("not reflexive at {a}")));
        }
    }
    for a in 0..k {
        for b in 0..k {
            if a != b && rel[a][b] && rel[b][a] {
                return Err(Error::PosetAxiomViolation(format!(
                    "antisymmetry fails on ({a},{b})"
                )));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if !rel[a][b] {
                continue;
            }
            for c in 0..k {
                if rel[b][c] && !rel[a][c] {
                    return Err(Error::PosetAxiomViolation(format!(
                        "transitivity fails on ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Cover edges of a validated partial order: the transitive reduction of the
/// strict relation, computed by removing all two-step consequences.
pub fn cover_relations(rel: &[Vec<bool>]) -> Result<Vec<(usize, usize)>> {
    validate_poset(rel)?;
    let k = rel.len();
    let strict = |a: usize, b: usize| a != b && rel[a][b];
    let mut covers = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if strict(a, b) && !(0..k).any(|m| strict(a, m) && strict(m, b)) {
                covers.push((a, b));
            }
        }
    }
    Ok(covers)
}

/// Builds the full order-theoretic package for a group, validating the
/// structural invariants along the way.
pub fn order_tables(g: &GroupTable, cac: &CacTable) -> Result<OrderTables> {
    let length_by_class = reflection_length_by_layers(g, cac)?;
    let codim_by_class = g.codims_by_class().to_vec();
    let identity_class = g.class_of(g.identity());
    for (c, (&l, &d)) in length_by_class.iter().zip(&codim_by_class).enumerate() {
        if d > l {
            return Err(Error::InvariantViolation(format!(
                "class {c}: codimension {d} exceeds reflection length {l}"
            )));
        }
        if (l == 0) != (c == identity_class) || (d == 0) != (c == identity_class) {
            return Err(Error::InvariantViolation(format!(
                "class {c}: zero length or codimension away from the identity"
            )));
        }
        if (l == 1) != g.is_reflection_class(c) {
            return Err(Error::InvariantViolation(format!(
                "class {c}: length-one classes must be exactly the reflection classes"
            )));
        }
    }
    let leq_perp = relation_matrix(g, cac, &codim_by_class);
    let leq_ell = relation_matrix(g, cac, &length_by_class);
    validate_poset(&leq_perp)?;
    validate_poset(&leq_ell)?;
    let atom_flags_perp = codim_atoms(g, cac);
    let covers_perp = cover_relations(&leq_perp)?;
    let covers_ell = cover_relations(&leq_ell)?;
    // atoms are exactly the covers of the identity class
    let identity_covers: Vec<usize> = covers_perp
        .iter()
        .filter(|&&(a, _)| a == identity_class)
        .map(|&(_, b)| b)
        .collect();
    for c in 0..g.num_classes() {
        let is_cover = identity_covers.contains(&c);
        if is_cover != atom_flags_perp[c] {
            return Err(Error::InvariantViolation(format!(
                "class {c}: atom flag disagrees with identity covers"
            )));
        }
    }
    Ok(OrderTables {
        length_by_class,
        codim_by_class,
        leq_ell,
        leq_perp,
        atom_flags_perp,
        covers_ell,
        covers_perp,
    })
}

/// The summary behind the classification: how many classes split length from
/// codimension, how many nonreflection atom classes exist, the maximum
/// length, and whether the two functions coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    pub num_length_neq_codim: usize,
    pub num_nonreflection_atoms: usize,
    pub max_length: usize,
    pub coincide: bool,
}

pub fn coincidence_report(g: &GroupTable, ot: &OrderTables) -> CoincidenceReport {
    let num_length_neq_codim = ot
        .length_by_class
        .iter()
        .zip(&ot.codim_by_class)
        .filter(|(l, d)| l != d)
        .count();
    let num_nonreflection_atoms = (0..g.num_classes())
        .filter(|&c| ot.atom_flags_perp[c] && !g.is_reflection_class(c))
        .count();
    let max_length = ot.length_by_class.iter().copied().max().unwrap_or(0);
    let coincide = num_length_neq_codim == 0;
    // the two characterizations agree on every group
    debug_assert_eq!(coincide, num_nonreflection_atoms == 0);
    CoincidenceReport {
        num_length_neq_codim,
        num_nonreflection_atoms,
        max_length,
        coincide,
    }
}

/// Verification report for the class-level order lemmas.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    /// (1) length = codim everywhere; (2) length = codim on atoms;
    /// (3) every atom is a reflection class; (4) every nonidentity element
    /// admits a reflection dropping its codimension.
    pub tfae: [bool; 4],
    pub tfae_consistent: bool,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.tfae_consistent
    }
}

/// Checks the order lemmas on the computed tables: the backward implication
/// (length-order relations under length = codim descend to the codimension
/// order), the four-way equivalence, and subadditivity of both grades over
/// all cac-witnessed products.
pub fn verify_section2_lemmas(g: &GroupTable, ot: &OrderTables, cac: &CacTable) -> LemmaReport {
    let k = g.num_classes();
    let mut violations = Vec::new();

    // backward implication
    for c in 0..k {
        if ot.length_by_class[c] != ot.codim_by_class[c] {
            continue;
        }
        for h in 0..k {
            if ot.leq_ell[h][c] && !ot.leq_perp[h][c] {
                violations.push(format!(
                    "class {h} <=_l class {c} with l = codim at {c}, but not <=_perp"
                ));
            }
        }
    }

    // four equivalent conditions
    let cond1 = (0..k).all(|c| ot.length_by_class[c] == ot.codim_by_class[c]);
    let cond2 = (0..k)
        .filter(|&c| ot.atom_flags_perp[c])
        .all(|c| ot.length_by_class[c] == ot.codim_by_class[c]);
    let cond3 = (0..k)
        .filter(|&c| ot.atom_flags_perp[c])
        .all(|c| g.is_reflection_class(c));
    let cond4 = (1..g.order() as u32).all(|x| {
        let d = g.codim_of_element(x);
        g.reflections().iter().any(|&s| g.codim_of_element(g.mul(x, s)) < d)
    });
    let tfae = [cond1, cond2, cond3, cond4];
    let tfae_consistent = tfae.iter().all(|&b| b == cond1);
    if !tfae_consistent {
        violations.push(format!("tfae conditions disagree: {tfae:?}"));
    }

    // subadditivity over witnessed products
    for x in 0..k {
        for c in 0..k {
            for y in 0..k {
                if cac.get(x, y, c) > 0 {
                    if ot.codim_by_class[c] > ot.codim_by_class[x] + ot.codim_by_class[y] {
                        violations.push(format!("codim subadditivity fails on ({x},{y},{c})"));
                    }
                    if ot.length_by_class[c] > ot.length_by_class[x] + ot.length_by_class[y] {
                        violations.push(format!("length subadditivity fails on ({x},{y},{c})"));
                    }
                }
            }
        }
    }

    LemmaReport { tfae, tfae_consistent, violations }
}

/// Factorization of an element into atoms with codimensions adding; exists
/// for every nonidentity element. Returns atom element indices whose ordered
/// product is the element.
pub fn atom_factorization(g: &GroupTable, ot: &OrderTables, elt: u32) -> Option<Vec<u32>> {
    if elt == g.identity() {
        return Some(Vec::new());
    }
    let d = g.codim_of_element(elt);
    for c in 0..g.num_classes() {
        if !ot.atom_flags_perp[c] {
            continue;
        }
        for &a in g.members(c) {
            let rest = g.mul(g.inv(a), elt);
            if g.codim_of_element(a) + g.codim_of_element(rest) == d {
                if let Some(mut tail) = atom_factorization(g, ot, rest) {
                    let mut out = vec![a];
                    out.append(&mut tail);
                    return Some(out);
                }
            }
        }
    }
    None
}

/// Poset export: DOT with cover edges and atom highlighting, plus a JSON
/// document mirroring the full tables.
pub mod export {
    use super::*;

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum PosetKind {
        Perp,
        Ell,
    }

    /// DOT digraph of the cover relation; classes are labeled
    /// "repindex:length/codim" and atoms are double-circled.
    pub fn dot_poset(g: &GroupTable, ot: &OrderTables, kind: PosetKind) -> String {
        let (covers, name) = match kind {
            PosetKind::Perp => (&ot.covers_perp, "perp"),
            PosetKind::Ell => (&ot.covers_ell, "ell"),
        };
        let identity_class = g.class_of(g.identity());
        let atoms: Vec<usize> = covers
            .iter()
            .filter(|&&(a, _)| a == identity_class)
            .map(|&(_, b)| b)
            .collect();
        let mut out = String::new();
        out.push_str(&format!("digraph \"{} {}\" {{\n", g.name, name));
        out.push_str("  rankdir=BT;\n");
        for c in 0..g.num_classes() {
            let label = format!(
                "{}:{}/{}",
                g.class_rep(c),
                ot.length_by_class[c],
                ot.codim_by_class[c]
            );
            let deco = if atoms.contains(&c) { ", peripheries=2" } else { "" };
            out.push_str(&format!("  c{} [label=\"{}\"{}];\n", c, label, deco));
        }
        for &(a, b) in covers {
            out.push_str(&format!("  c{} -> c{};\n", a, b));
        }
        out.push_str("}\n");
        out
    }

    #[derive(Serialize)]
    pub struct ClassSummary {
        pub rep: u32,
        pub size: u32,
        pub length: usize,
        pub codim: usize,
        pub atom_perp: bool,
    }

    #[derive(Serialize)]
    pub struct PosetJson {
        pub schema: String,
        pub group: String,
        pub order: usize,
        pub classes: Vec<ClassSummary>,
        pub leq_perp: Vec<Vec<u8>>,
        pub leq_ell: Vec<Vec<u8>>,
        pub covers: CoversJson,
    }

    #[derive(Serialize)]
    pub struct CoversJson {
        pub perp: Vec<(usize, usize)>,
        pub ell: Vec<(usize, usize)>,
    }

    pub fn poset_json(g: &GroupTable, ot: &OrderTables) -> PosetJson {
        PosetJson {
            schema: "reflen/poset/1".into(),
            group: g.name.clone(),
            order: g.order(),
            classes: (0..g.num_classes())
                .map(|c| ClassSummary {
                    rep: g.class_rep(c),
                    size: g.classes()[c].size,
                    length: ot.length_by_class[c],
                    codim: ot.codim_by_class[c],
                    atom_perp: ot.atom_flags_perp[c],
                })
                .collect(),
            leq_perp: ot
                .leq_perp
                .iter()
                .map(|r| r.iter().map(|&b| b as u8).collect())
                .collect(),
            leq_ell: ot
                .leq_ell
                .iter()
                .map(|r| r.iter().map(|&b| b as u8).collect())
                .collect(),
            covers: CoversJson {
                perp: ot.covers_perp.clone(),
                ell: ot.covers_ell.clone(),
            },
        }
    }
}

#[cfg(test)]
mod tests;
