//! Generic finite matrix-group engine: closure enumeration from generators,
//! conjugacy classes, class lookup, codimension; also the embedded generator
//! data for the exceptional groups.

mod data;
mod pool;

pub use data::{exceptional_entry, load_exceptional, ExceptionalEntry, DATA_VERSION};

use std::collections::{HashMap, VecDeque};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloMatrix, CycloNum};
use crate::error::{Error, Result};
use crate::monomial::{self, GmpnParams, MonomialElt};
use pool::MatBackend;

/// A group element in one of the two concrete representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elem {
    Mono(MonomialElt),
    Mat(CycloMatrix),
}

impl Elem {
    pub fn codim(&self) -> usize {
        match self {
            Elem::Mono(g) => g.codim(),
            Elem::Mat(g) => elt_codim(g),
        }
    }

    pub fn as_matrix(&self) -> CycloMatrix {
        match self {
            Elem::Mono(g) => g.to_matrix(),
            Elem::Mat(g) => g.clone(),
        }
    }
}

/// codim(g) = rank(g - I), the codimension of the fixed point space.
pub fn elt_codim(g: &CycloMatrix) -> usize {
    g.sub_identity().rank()
}

/// Bases for the fixed space V^g = ker(g - I) and for the covector space
/// ((V^g)*)^perp, realized as the row space of (g - I). Pairing coordinates
/// with dual coordinates, each returned covector annihilates V^g.
pub fn fixed_and_perp_bases(g: &CycloMatrix) -> (Vec<Vec<CycloNum>>, Vec<Vec<CycloNum>>) {
    let d = g.sub_identity();
    (d.kernel_basis(), d.row_space_basis())
}

/// Enumeration budgets. `max_order` bounds group closure; `max_element_level`
/// bounds element-level computations (breadth-first length oracle,
/// per-element generator listings).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Budget {
    pub max_order: u64,
    pub max_element_level: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_order: 2_000_000, max_element_level: 10_000 }
    }
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    Monomial(GmpnParams),
    Exceptional(u8),
    Explicit { name: String, dim: usize, gens: Vec<CycloMatrix> },
}

impl GroupKind {
    /// Parses the group naming grammar: "G(m,p,n)" for the infinite family,
    /// "G<k>" with 4 <= k <= 37 for the exceptional groups.
    pub fn parse(s: &str) -> Result<GroupKind> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognized group '{s}' (expected G(m,p,n) or G<k>)"));
        let rest = s.strip_prefix('G').ok_or_else(bad)?;
        if let Some(body) = rest.strip_prefix('(') {
            let body = body.strip_suffix(')').ok_or_else(bad)?;
            let parts: Vec<&str> = body.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let m: u32 = parts[0].parse().map_err(|_| bad())?;
            let p: u32 = parts[1].parse().map_err(|_| bad())?;
            let n: usize = parts[2].parse().map_err(|_| bad())?;
            Ok(GroupKind::Monomial(GmpnParams::new(m, p, n)?))
        } else {
            let k: u8 = rest.trim().parse().map_err(|_| bad())?;
            if !(4..=37).contains(&k) {
                return Err(Error::UnknownExceptionalIndex(k));
            }
            Ok(GroupKind::Exceptional(k))
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupKind::Monomial(p) => p.to_string(),
            GroupKind::Exceptional(k) => format!("G{k}"),
            GroupKind::Explicit { name, .. } => name.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub budget: Budget,
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> Self {
        GroupSpec { kind, budget: Budget::default() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(GroupKind::parse(s)?))
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ClassInfo {
    /// Least element index in the class; deterministic across runs.
    pub rep: u32,
    pub size: u32,
}

enum Backend {
    Mono {
        elems: Vec<MonomialElt>,
        index: HashMap<MonomialElt, u32>,
    },
    Mat(Mutex<MatBackend>),
}

/// Fully enumerated finite group with conjugacy classes and a class-index
/// lookup. Immutable after construction; the matrix backend's internal
/// arithmetic caches sit behind a mutex, so sharing across threads is safe.
pub struct GroupTable {
    pub name: String,
    pub dim: usize,
    backend: Backend,
    order: usize,
    gens: Vec<u32>,
    inv: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<ClassInfo>,
    class_members: Vec<Vec<u32>>,
    codim_by_class: Vec<usize>,
    reflection_classes: Vec<bool>,
    reflection_elements: Vec<u32>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_of(&self, i: u32) -> usize {
        self.class_of[i as usize] as usize
    }

    pub fn members(&self, class: usize) -> &[u32] {
        &self.class_members[class]
    }

    pub fn codim_of_class(&self, class: usize) -> usize {
        self.codim_by_class[class]
    }

    pub fn codims_by_class(&self) -> &[usize] {
        &self.codim_by_class
    }

    pub fn is_reflection_class(&self, class: usize) -> bool {
        self.reflection_classes[class]
    }

    pub fn reflection_class_flags(&self) -> &[bool] {
        &self.reflection_classes
    }

    /// Element indices of all reflections, ascending.
    pub fn reflections(&self) -> &[u32] {
        &self.reflection_elements
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.backend {
            Backend::Mono { elems, index } => {
                let prod = elems[i as usize].mul(&elems[j as usize]).expect("same group");
                index[&prod]
            }
            Backend::Mat(b) => {
                let mut b = b.lock().unwrap();
                let x = b.packed[i as usize].clone();
                let y = b.packed[j as usize].clone();
                let p = b.matmul(&x, &y);
                b.lookup(&p).expect("group is closed under products")
            }
        }
    }

    pub fn element(&self, i: u32) -> Elem {
        match &self.backend {
            Backend::Mono { elems, .. } => Elem::Mono(elems[i as usize].clone()),
            Backend::Mat(b) => {
                let b = b.lock().unwrap();
                Elem::Mat(b.unpack(&b.packed[i as usize]))
            }
        }
    }

    /// Index of an element given in either representation, if present.
    pub fn index_of(&self, e: &Elem) -> Option<u32> {
        match (&self.backend, e) {
            (Backend::Mono { index, .. }, Elem::Mono(g)) => index.get(g).copied(),
            (Backend::Mat(b), g) => {
                let mat = g.as_matrix();
                let mut b = b.lock().unwrap();
                let mat = mat.embed(b.conductor).ok()?;
                let p = b.pack(&mat);
                b.lookup(&p)
            }
            (Backend::Mono { elems, .. }, Elem::Mat(m)) => {
                // slow path: compare matrix forms
                elems
                    .iter()
                    .position(|g| g.to_matrix().embed(m.conductor()).ok() == Some(m.clone()))
                    .map(|i| i as u32)
            }
        }
    }

    pub fn element_order(&self, i: u32) -> u64 {
        let mut acc = i;
        let mut k = 1u64;
        while acc != self.identity() {
            acc = self.mul(acc, i);
            k += 1;
        }
        k
    }

    pub fn determinant(&self, i: u32) -> CycloNum {
        self.element(i).as_matrix().determinant()
    }

    pub fn codim_of_element(&self, i: u32) -> usize {
        self.codim_by_class[self.class_of[i as usize] as usize]
    }

    /// Conjugacy-class representative elements, by class index.
    pub fn class_rep(&self, class: usize) -> u32 {
        self.classes[class].rep
    }
}

/// Breadth-first closure under the generators; elements are hashed by
/// canonical cyclotomic form. Fails if the closure exceeds the budget.
pub fn enumerate_group(spec: &GroupSpec) -> Result<GroupTable> {
    match &spec.kind {
        GroupKind::Monomial(params) => {
            let order = params.order();
            if order > spec.budget.max_order as u128 {
                return Err(Error::BudgetExceeded {
                    task: format!("enumeration of {params}"),
                    needed: order.min(u64::MAX as u128) as u64,
                    budget: spec.budget.max_order,
                });
            }
            build_monomial_table(*params)
        }
        GroupKind::Exceptional(k) => {
            let entry = data::exceptional_entry(*k)?;
            if entry.order > spec.budget.max_order {
                return Err(Error::BudgetExceeded {
                    task: format!("enumeration of G{k}"),
                    needed: entry.order,
                    budget: spec.budget.max_order,
                });
            }
            let table = build_matrix_table(
                format!("G{k}"),
                entry.dim,
                entry.gens()?,
                spec.budget.max_order,
            )?;
            validate_exceptional(&table, entry)?;
            Ok(table)
        }
        GroupKind::Explicit { name, dim, gens } => {
            for (i, g) in gens.iter().enumerate() {
                if g.dim() != *dim {
                    return Err(Error::BadParams(format!(
                        "generator {i} has dimension {} but the group is declared in dimension {dim}",
                        g.dim()
                    )));
                }
                if g.rank() != *dim {
                    return Err(Error::NonInvertibleGenerator(i));
                }
            }
            build_matrix_table(name.clone(), *dim, gens.clone(), spec.budget.max_order)
        }
    }
}

fn build_monomial_table(params: GmpnParams) -> Result<GroupTable> {
    let elems = monomial::enumerate_group(params);
    let order = elems.len();
    let mut index = HashMap::with_capacity(order);
    for (i, e) in elems.iter().enumerate() {
        index.insert(e.clone(), i as u32);
    }
    debug_assert!(elems[0].is_identity());
    let mut gens = Vec::new();
    for g in monomial::gmpn_generators(params) {
        let idx = *index.get(&g).ok_or_else(|| {
            Error::InvariantViolation(format!("generator of {params} missing from enumeration"))
        })?;
        if !gens.contains(&idx) {
            gens.push(idx);
        }
    }
    let inv: Vec<u32> = elems.iter().map(|e| index[&e.inv()]).collect();
    let codim: Vec<usize> = elems.iter().map(|e| e.codim()).collect();
    let backend = Backend::Mono { elems, index };
    finish_table(params.to_string(), params.n, backend, gens, inv, codim)
}

fn build_matrix_table(
    name: String,
    dim: usize,
    gens: Vec<CycloMatrix>,
    max_order: u64,
) -> Result<GroupTable> {
    let mut conductor = 1u32;
    for g in &gens {
        conductor = num::integer::lcm(conductor, g.conductor());
    }
    let mut backend = MatBackend::new(dim, conductor);

    let id_packed = {
        let id = CycloMatrix::identity(dim, conductor);
        backend.pack(&id)
    };
    backend.push_element(id_packed);

    let mut gen_packed = Vec::new();
    let mut gen_inv_packed = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let m = g.embed(conductor)?;
        let p = backend.pack(&m);
        let inv = g.inverse().ok_or(Error::NonInvertibleGenerator(i))?.embed(conductor)?;
        gen_inv_packed.push(backend.pack(&inv));
        gen_packed.push(p);
    }

    // BFS closure; parent links give inverses afterwards.
    let mut parent: Vec<(u32, usize)> = vec![(0, 0)];
    let mut queue: VecDeque<u32> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let base = backend.packed[i as usize].clone();
        for (gi, gp) in gen_packed.iter().enumerate() {
            let prod = backend.matmul(&base, gp);
            if backend.lookup(&prod).is_none() {
                let idx = backend.push_element(prod);
                parent.push((i, gi));
                if backend.packed.len() as u64 > max_order {
                    return Err(Error::BudgetExceeded {
                        task: format!("closure of {name}"),
                        needed: backend.packed.len() as u64,
                        budget: max_order,
                    });
                }
                queue.push_back(idx);
            }
        }
    }

    let order = backend.packed.len();

    // generator element indices
    let mut gen_indices = Vec::new();
    for p in &gen_packed {
        let idx = backend.lookup(p).expect("generators are enumerated");
        if !gen_indices.contains(&idx) {
            gen_indices.push(idx);
        }
    }

    // inverses: inv(prev * gen) = inv(gen) * inv(prev), computed in BFS
    // discovery order so inv(prev) is always available.
    let gen_inv_idx: Vec<u32> = gen_inv_packed
        .iter()
        .map(|p| backend.lookup(p).expect("generator inverses are enumerated"))
        .collect();
    let mut inv = vec![0u32; order];
    for i in 1..order {
        let (prev, gi) = parent[i];
        let a = backend.packed[gen_inv_idx[gi] as usize].clone();
        let b = backend.packed[inv[prev as usize] as usize].clone();
        let p = backend.matmul(&a, &b);
        inv[i] = backend.lookup(&p).expect("inverse is enumerated");
    }

    // codimension per element
    let codim: Vec<usize> = (0..order)
        .map(|i| backend.unpack(&backend.packed[i]).sub_identity().rank())
        .collect();

    let backend = Backend::Mat(Mutex::new(backend));
    finish_table(name, dim, backend, gen_indices, inv, codim)
}

/// Conjugacy classes by generator-conjugation orbits, then the class-level
/// tables. Also checks that codimension is constant on every class.
fn finish_table(
    name: String,
    dim: usize,
    backend: Backend,
    gens: Vec<u32>,
    inv: Vec<u32>,
    codim_elt: Vec<usize>,
) -> Result<GroupTable> {
    let order = codim_elt.len();
    let mut table = GroupTable {
        name,
        dim,
        backend,
        order,
        gens,
        inv,
        class_of: vec![u32::MAX; order],
        classes: Vec::new(),
        class_members: Vec::new(),
        codim_by_class: Vec::new(),
        reflection_classes: Vec::new(),
        reflection_elements: Vec::new(),
    };

    // orbits under conjugation by generators
    let gen_list: Vec<(u32, u32)> = table
        .gens
        .iter()
        .map(|&g| (g, table.inv[g as usize]))
        .collect();
    for start in 0..order as u32 {
        if table.class_of[start as usize] != u32::MAX {
            continue;
        }
        let class_idx = table.classes.len() as u32;
        let mut members = vec![start];
        table.class_of[start as usize] = class_idx;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &(g, ginv) in &gen_list {
                let y = table.mul(table.mul(ginv, x), g);
                if table.class_of[y as usize] == u32::MAX {
                    table.class_of[y as usize] = class_idx;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        table.classes.push(ClassInfo { rep: start, size: members.len() as u32 });
        table.class_members.push(members);
    }

    // class sizes must sum to |G| and divide |G|
    let total: usize = table.classes.iter().map(|c| c.size as usize).sum();
    if total != order {
        return Err(Error::InvariantViolation(format!(
            "class sizes sum to {total}, expected {order}"
        )));
    }
    for c in &table.classes {
        if order % c.size as usize != 0 {
            return Err(Error::InvariantViolation(format!(
                "class size {} does not divide the group order {order}",
                c.size
            )));
        }
    }

    // codimension is a class function; verify on every element
    for (ci, members) in table.class_members.iter().enumerate() {
        let c0 = codim_elt[table.classes[ci].rep as usize];
        for &m in members {
            if codim_elt[m as usize] != c0 {
                return Err(Error::InvariantViolation(format!(
                    "codimension is not constant on class {ci}"
                )));
            }
        }
        table.codim_by_class.push(c0);
    }

    table.reflection_classes = table.codim_by_class.iter().map(|&c| c == 1).collect();
    table.reflection_elements = (0..order as u32)
        .filter(|&i| codim_elt[i as usize] == 1)
        .collect();

    if table.codim_by_class[table.class_of[0] as usize] != 0 {
        return Err(Error::InvariantViolation("identity has nonzero codimension".into()));
    }

    Ok(table)
}

fn validate_exceptional(table: &GroupTable, entry: &ExceptionalEntry) -> Result<()> {
    if table.order() as u64 != entry.order {
        return Err(Error::InvariantViolation(format!(
            "G{}: closure order {} does not match the recorded order {}",
            entry.index,
            table.order(),
            entry.order
        )));
    }
    let mut profile: HashMap<u64, u64> = HashMap::new();
    for &r in table.reflections() {
        *profile.entry(table.element_order(r)).or_insert(0) += 1;
    }
    let mut expected: HashMap<u64, u64> = HashMap::new();
    for &(ord, count) in &entry.reflections {
        expected.insert(ord as u64, count);
    }
    if profile != expected {
        return Err(Error::InvariantViolation(format!(
            "G{}: reflection profile {:?} does not match the recorded profile {:?}",
            entry.index, profile, expected
        )));
    }
    Ok(())
}

/// Serializable snapshot of a `GroupTable` for the per-group cache file.
#[derive(Serialize, Deserialize)]
pub struct GroupTableDoc {
    pub name: String,
    pub dim: usize,
    pub elements: Vec<Elem>,
    pub gens: Vec<u32>,
    pub inv: Vec<u32>,
    pub class_of: Vec<u32>,
    pub classes: Vec<ClassInfo>,
    pub codim_by_class: Vec<usize>,
}

impl GroupTable {
    pub fn to_doc(&self) -> GroupTableDoc {
        GroupTableDoc {
            name: self.name.clone(),
            dim: self.dim,
            elements: (0..self.order as u32).map(|i| self.element(i)).collect(),
            gens: self.gens.clone(),
            inv: self.inv.clone(),
            class_of: self.class_of.clone(),
            classes: self.classes.clone(),
            codim_by_class: self.codim_by_class.clone(),
        }
    }

    pub fn from_doc(doc: GroupTableDoc) -> Result<GroupTable> {
        let order = doc.elements.len();
        if doc.inv.len() != order || doc.class_of.len() != order || order == 0 {
            return Err(Error::InvariantViolation("inconsistent cached table".into()));
        }
        let backend = match &doc.elements[0] {
            Elem::Mono(_) => {
                let mut elems = Vec::with_capacity(order);
                let mut index = HashMap::with_capacity(order);
                for (i, e) in doc.elements.iter().enumerate() {
                    match e {
                        Elem::Mono(g) => {
                            elems.push(g.clone());
                            index.insert(g.clone(), i as u32);
                        }
                        _ => return Err(Error::InvariantViolation("mixed element kinds".into())),
                    }
                }
                Backend::Mono { elems, index }
            }
            Elem::Mat(first) => {
                let mut conductor = first.conductor();
                for e in &doc.elements {
                    if let Elem::Mat(m) = e {
                        conductor = num::integer::lcm(conductor, m.conductor());
                    }
                }
                let dim = first.dim();
                let mut b = MatBackend::new(dim, conductor);
                for e in &doc.elements {
                    match e {
                        Elem::Mat(m) => {
                            let packed = b.pack(&m.embed(conductor)?);
                            b.push_element(packed);
                        }
                        _ => return Err(Error::InvariantViolation("mixed element kinds".into())),
                    }
                }
                Backend::Mat(Mutex::new(b))
            }
        };
        let num_classes = doc.classes.len();
        let mut class_members = vec![Vec::new(); num_classes];
        for (i, &c) in doc.class_of.iter().enumerate() {
            class_members[c as usize].push(i as u32);
        }
        let reflection_classes: Vec<bool> = doc.codim_by_class.iter().map(|&c| c == 1).collect();
        let mut reflection_elements = Vec::new();
        for (i, &c) in doc.class_of.iter().enumerate() {
            if reflection_classes[c as usize] {
                reflection_elements.push(i as u32);
            }
        }
        Ok(GroupTable {
            name: doc.name,
            dim: doc.dim,
            backend,
            order,
            gens: doc.gens,
            inv: doc.inv,
            class_of: doc.class_of,
            classes: doc.classes,
            class_members,
            codim_by_class: doc.codim_by_class,
            reflection_classes,
            reflection_elements,
        })
    }
}
