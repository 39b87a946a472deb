//! Compact arithmetic and combinatorics for the infinite family G(m,p,n) of
//! monomial reflection groups: cycle-sums, codimension, p-connectedness,
//! atom classification, and the explicit counterexample constructors.
//!
//! An element is a permutation sigma of the coordinates together with an
//! exponent vector (a_1, ..., a_n) of residues mod m; it acts by
//! v_i -> zeta_m^(a_i) v_(sigma(i)). Membership in G(m,p,n) requires
//! a_1 + ... + a_n = 0 (mod p).

use serde::{Deserialize, Serialize};

use crate::cyclo::{root_of_unity, CycloMatrix};
use crate::error::{Error, Result};

/// Parameters (m, p, n) with p | m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GmpnParams {
    pub m: u32,
    pub p: u32,
    pub n: usize,
}

impl GmpnParams {
    pub fn new(m: u32, p: u32, n: usize) -> Result<Self> {
        if m == 0 || p == 0 || n == 0 {
            return Err(Error::BadParams(format!(
                "G({m},{p},{n}): all parameters must be positive"
            )));
        }
        if m % p != 0 {
            return Err(Error::BadParams(format!("G({m},{p},{n}): p must divide m")));
        }
        Ok(GmpnParams { m, p, n })
    }

    /// |G(m,p,n)| = m^n * n! / p.
    pub fn order(&self) -> u128 {
        let mut o: u128 = 1;
        for _ in 0..self.n {
            o *= self.m as u128;
        }
        for k in 2..=self.n as u128 {
            o *= k;
        }
        o / self.p as u128
    }

    /// True exactly for the real (Coxeter) members of the family.
    pub fn is_coxeter(&self) -> bool {
        self.m == 1 || (self.m == 2 && self.p <= 2) || (self.p == self.m && self.n == 2) || self.n == 1
    }
}

impl std::fmt::Display for GmpnParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G({},{},{})", self.m, self.p, self.n)
    }
}

/// Permutation plus exponent vector mod m; the compact form of a monomial
/// matrix with m-th root-of-unity entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialElt {
    m: u32,
    /// sigma as images: perm[i] = sigma(i), zero-based.
    perm: Vec<usize>,
    /// Residues mod m.
    exps: Vec<u32>,
}

/// One (orbit, sum) pair per cycle of the underlying permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSumProfile {
    pub m: u32,
    /// Orbits partition the coordinate set; each carries the mod-m sum of
    /// exponents along the cycle.
    pub cycles: Vec<(Vec<usize>, u32)>,
}

impl MonomialElt {
    pub fn new(m: u32, perm: Vec<usize>, exps: Vec<u32>) -> Result<Self> {
        let n = perm.len();
        if exps.len() != n {
            return Err(Error::MismatchedElements(format!(
                "permutation of length {n} with exponent vector of length {}",
                exps.len()
            )));
        }
        let mut seen = vec![false; n];
        for &img in &perm {
            if img >= n || seen[img] {
                return Err(Error::BadParams("perm is not a bijection".into()));
            }
            seen[img] = true;
        }
        let exps = exps.into_iter().map(|a| a % m).collect();
        Ok(MonomialElt { m, perm, exps })
    }

    pub fn identity(m: u32, n: usize) -> Self {
        MonomialElt { m, perm: (0..n).collect(), exps: vec![0; n] }
    }

    /// Diagonal element with the given exponents.
    pub fn diagonal(m: u32, exps: Vec<u32>) -> Self {
        let n = exps.len();
        MonomialElt { m, perm: (0..n).collect(), exps: exps.into_iter().map(|a| a % m).collect() }
    }

    /// Transposition-type reflection swapping i and j with twist a:
    /// v_i -> zeta^a v_j, v_j -> zeta^-a v_i.
    pub fn transposition(m: u32, n: usize, i: usize, j: usize, a: u32) -> Self {
        assert!(i != j && i < n && j < n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        let mut exps = vec![0; n];
        exps[i] = a % m;
        exps[j] = (m - a % m) % m;
        MonomialElt { m, perm, exps }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &s)| i == s) && self.exps.iter().all(|&a| a == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Sum of exponents mod m; for diagonal elements this is the exponent of
    /// the determinant, so det = 1 iff it vanishes.
    pub fn exp_sum(&self) -> u32 {
        (self.exps.iter().map(|&a| a as u64).sum::<u64>() % self.m as u64) as u32
    }

    /// Membership in G(m,p,n): the exponent sum must vanish mod p.
    pub fn is_member(&self, p: u32) -> bool {
        self.exps.iter().map(|&a| a as u64).sum::<u64>() % p as u64 == 0
    }

    /// Group product under "apply rhs, then self".
    pub fn mul(&self, rhs: &MonomialElt) -> Result<MonomialElt> {
        if self.m != rhs.m || self.dim() != rhs.dim() {
            return Err(Error::MismatchedElements(format!(
                "monomial product between G({},_,{}) and G({},_,{}) elements",
                self.m,
                self.dim(),
                rhs.m,
                rhs.dim()
            )));
        }
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            perm[i] = self.perm[rhs.perm[i]];
            exps[i] = (rhs.exps[i] + self.exps[rhs.perm[i]]) % self.m;
        }
        Ok(MonomialElt { m: self.m, perm, exps })
    }

    pub fn inv(&self) -> MonomialElt {
        let n = self.dim();
        let mut perm = vec![0; n];
        for (i, &s) in self.perm.iter().enumerate() {
            perm[s] = i;
        }
        let mut exps = vec![0; n];
        for i in 0..n {
            exps[i] = (self.m - self.exps[perm[i]]) % self.m;
        }
        MonomialElt { m: self.m, perm, exps }
    }

    /// One entry per cycle of the permutation: the orbit and the mod-m sum
    /// of the exponents over it.
    pub fn cycle_sums(&self) -> CycleSumProfile {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut sum: u64 = 0;
            let mut i = start;
            loop {
                seen[i] = true;
                orbit.push(i);
                sum += self.exps[i] as u64;
                i = self.perm[i];
                if i == start {
                    break;
                }
            }
            cycles.push((orbit, (sum % self.m as u64) as u32));
        }
        CycleSumProfile { m: self.m, cycles }
    }

    /// codim(g) = n - #(cycles with zero cycle-sum); equals the rank of
    /// (matrix of g) - I.
    pub fn codim(&self) -> usize {
        let profile = self.cycle_sums();
        self.dim() - profile.cycles.iter().filter(|(_, s)| *s == 0).count()
    }

    pub fn is_reflection(&self) -> bool {
        self.codim() == 1
    }

    /// The n x n matrix with entry zeta_m^(a_i) in row sigma(i), column i.
    pub fn to_matrix(&self) -> CycloMatrix {
        let n = self.dim();
        let mut mat = CycloMatrix::zero(n, self.m);
        for i in 0..n {
            mat.set(self.perm[i], i, root_of_unity(self.m, self.exps[i] as i64));
        }
        mat
    }

    /// For a transposition-type reflection, the data (i, j, a) with i < j
    /// such that v_i -> zeta^a v_j.
    pub fn transposition_data(&self) -> Option<(usize, usize, u32)> {
        let n = self.dim();
        let moved: Vec<usize> = (0..n).filter(|&i| self.perm[i] != i).collect();
        if moved.len() != 2 {
            return None;
        }
        let (i, j) = (moved[0], moved[1]);
        if self.perm[i] != j || self.perm[j] != i {
            return None;
        }
        if (0..n).any(|k| k != i && k != j && self.exps[k] != 0) {
            return None;
        }
        if (self.exps[i] + self.exps[j]) % self.m != 0 {
            return None;
        }
        Some((i, j, self.exps[i]))
    }

    /// True iff the element is diagonal, not the identity, lies in G(m,p,n),
    /// and no proper nonempty sub-multiset of its non-1 exponents has sum
    /// divisible by p.
    pub fn is_p_connected(&self, p: u32) -> bool {
        if !self.is_diagonal() || self.is_identity() {
            return false;
        }
        let nonzero: Vec<u64> = self.exps.iter().filter(|&&a| a != 0).map(|&a| a as u64).collect();
        let total: u64 = nonzero.iter().sum();
        if total % p as u64 != 0 {
            return false;
        }
        let k = nonzero.len();
        // exhaustive check over proper nonempty subsets; k <= n stays small
        // at desk scale
        for mask in 1..(1u32 << k) - 1 {
            let s: u64 = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| nonzero[i]).sum();
            if s % p as u64 == 0 {
                return false;
            }
        }
        true
    }
}

impl Serialize for MonomialElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MonomialElt", 3)?;
        // one-line notation, 1-based
        let perm: Vec<usize> = self.perm.iter().map(|&i| i + 1).collect();
        st.serialize_field("perm", &perm)?;
        st.serialize_field("exps", &self.exps)?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for MonomialElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            perm: Vec<usize>,
            exps: Vec<u32>,
            m: u32,
        }
        let raw = Raw::deserialize(d)?;
        let perm: Vec<usize> = raw
            .perm
            .iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("perm is 1-based")))
            .collect::<std::result::Result<_, _>>()?;
        MonomialElt::new(raw.m, perm, raw.exps).map_err(serde::de::Error::custom)
    }
}

/// All codimension-one elements of G(m,p,n): m*n(n-1)/2 transposition-type
/// reflections, and n*(m/p - 1) diagonal reflections when p properly
/// divides m.
pub fn enumerate_reflections(params: GmpnParams) -> Vec<MonomialElt> {
    let GmpnParams { m, p, n } = params;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..m {
                out.push(MonomialElt::transposition(m, n, i, j, a));
            }
        }
    }
    for i in 0..n {
        for mult in 1..m / p {
            let mut exps = vec![0; n];
            exps[i] = mult * p;
            out.push(MonomialElt::diagonal(m, exps));
        }
    }
    out
}

/// Deterministic enumeration of the whole group: permutations in
/// lexicographic order, exponent vectors in odometer order with the last
/// coordinate solving the membership congruence.
pub fn enumerate_group(params: GmpnParams) -> Vec<MonomialElt> {
    let GmpnParams { m, p, n } = params;
    let mut out = Vec::with_capacity(params.order() as usize);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        // exponent vectors: free coordinates 0..n-1, last solves sum = 0 mod p
        let mut free = vec![0u32; n - 1];
        loop {
            let s: u64 = free.iter().map(|&a| a as u64).sum();
            let need = ((p as u64 - s % p as u64) % p as u64) as u32;
            let mut last = need;
            while last < m {
                let mut exps = free.clone();
                exps.push(last);
                out.push(MonomialElt { m, perm: perm.clone(), exps });
                last += p;
            }
            // odometer over the free coordinates
            let mut k = n - 1;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                free[k] += 1;
                if free[k] < m {
                    break;
                }
                free[k] = 0;
            }
            if free.iter().all(|&a| a == 0) {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A generating set for G(m,p,n): the adjacent plain transpositions, the
/// twisted transposition with a = 1 when p > 1, and the diagonal
/// zeta^p-scaling when p < m.
pub fn gmpn_generators(params: GmpnParams) -> Vec<MonomialElt> {
    let GmpnParams { m, p, n } = params;
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        gens.push(MonomialElt::transposition(m, n, i, i + 1, 0));
    }
    if p > 1 && n >= 2 && m > 1 {
        gens.push(MonomialElt::transposition(m, n, 0, 1, 1));
    }
    if p < m {
        let mut exps = vec![0; n];
        exps[0] = p;
        gens.push(MonomialElt::diagonal(m, exps));
    }
    gens
}

/// How an atom arises in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AtomKind {
    TranspositionReflection,
    DiagonalReflection,
    PConnectedDiagonal,
}

/// A family of nonreflection atoms, parameterized by the sorted multiset of
/// non-1 exponents.
#[derive(Clone, Debug, Serialize)]
pub struct PConnectedFamily {
    pub exps: Vec<u32>,
    pub codim: usize,
    pub element_count: u64,
}

/// Symbolic description of the atom set for groups beyond the enumeration
/// budget.
#[derive(Clone, Debug, Serialize)]
pub struct AtomFamilies {
    pub transposition_reflection_count: u64,
    pub diagonal_reflection_count: u64,
    pub nonreflection_families: Vec<PConnectedFamily>,
}

#[derive(Clone, Debug)]
pub enum GmpnAtoms {
    Exhaustive(Vec<(MonomialElt, AtomKind)>),
    Symbolic(AtomFamilies),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomMode {
    Auto,
    Exhaustive,
    Symbolic,
}

/// The codimension atoms of G(m,p,n): the reflections together with the
/// p-connected diagonal elements, except those of codimension two and
/// determinant one.
pub fn gmpn_codim_atoms(params: GmpnParams, mode: AtomMode, budget: u64) -> Result<GmpnAtoms> {
    let within = params.order() <= budget as u128;
    let exhaustive = match mode {
        AtomMode::Auto => within,
        AtomMode::Exhaustive => {
            if !within {
                return Err(Error::BudgetExceeded {
                    task: format!("exhaustive atom listing for {params}"),
                    needed: params.order().min(u64::MAX as u128) as u64,
                    budget,
                });
            }
            true
        }
        AtomMode::Symbolic => false,
    };
    if exhaustive {
        Ok(GmpnAtoms::Exhaustive(exhaustive_atoms(params)))
    } else {
        Ok(GmpnAtoms::Symbolic(symbolic_atoms(params)))
    }
}

fn atom_excluded(codim: usize, exp_sum_mod_m: u32) -> bool {
    codim == 2 && exp_sum_mod_m == 0
}

fn exhaustive_atoms(params: GmpnParams) -> Vec<(MonomialElt, AtomKind)> {
    let GmpnParams { m, p, n } = params;
    let mut out = Vec::new();
    for r in enumerate_reflections(params) {
        let kind = if r.is_diagonal() {
            AtomKind::DiagonalReflection
        } else {
            AtomKind::TranspositionReflection
        };
        out.push((r, kind));
    }
    // diagonal members with codim >= 2: the p-connected ones not excluded
    let mut free = vec![0u32; n - 1];
    loop {
        let s: u64 = free.iter().map(|&a| a as u64).sum();
        let need = ((p as u64 - s % p as u64) % p as u64) as u32;
        let mut last = need;
        while last < m {
            let mut exps = free.clone();
            exps.push(last);
            let g = MonomialElt::diagonal(m, exps);
            if g.codim() >= 2 && g.is_p_connected(p) && !atom_excluded(g.codim(), g.exp_sum()) {
                out.push((g, AtomKind::PConnectedDiagonal));
            }
            last += p;
        }
        let mut k = n - 1;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            free[k] += 1;
            if free[k] < m {
                break;
            }
            free[k] = 0;
        }
        if free.iter().all(|&a| a == 0) {
            break;
        }
    }
    out
}

fn symbolic_atoms(params: GmpnParams) -> AtomFamilies {
    let GmpnParams { m, p, n } = params;
    let transposition_reflection_count = m as u64 * (n as u64 * (n as u64 - 1) / 2);
    let diagonal_reflection_count = n as u64 * (m / p - 1) as u64;
    // sorted multisets of non-1 exponents, sizes 2..=n
    let mut families = Vec::new();
    let mut multiset: Vec<u32> = Vec::new();
    fn rec(
        m: u32,
        p: u32,
        n: usize,
        start: u32,
        multiset: &mut Vec<u32>,
        families: &mut Vec<PConnectedFamily>,
    ) {
        if multiset.len() >= 2 {
            let probe = MonomialElt::diagonal(m, multiset.clone());
            if probe.is_p_connected(p) && !atom_excluded(multiset.len(), probe.exp_sum()) {
                families.push(PConnectedFamily {
                    exps: multiset.clone(),
                    codim: multiset.len(),
                    element_count: placements(n, multiset),
                });
            }
        }
        if multiset.len() == n {
            return;
        }
        for c in start..m {
            multiset.push(c);
            rec(m, p, n, c, multiset, families);
            multiset.pop();
        }
    }
    rec(m, p, n, 1, &mut multiset, &mut families);
    AtomFamilies {
        transposition_reflection_count,
        diagonal_reflection_count,
        nonreflection_families: families,
    }
}

/// Number of elements whose non-1 exponent multiset equals `multiset`:
/// n! / ((n-k)! * prod of multiplicities!).
fn placements(n: usize, multiset: &[u32]) -> u64 {
    let k = multiset.len();
    let mut count: u64 = 1;
    for i in 0..k {
        count *= (n - i) as u64;
    }
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j < k && multiset[j] == multiset[i] {
            j += 1;
        }
        let mut fact = 1u64;
        for t in 2..=(j - i) as u64 {
            fact *= t;
        }
        count /= fact;
        i = j;
    }
    count
}

/// The explicit witness that reflection length exceeds codimension, when one
/// exists: diag(zeta, zeta^(p-1)) + identity when 1 < p < m and n >= 2, and
/// diag(zeta, zeta^(m-2), zeta) + identity when p = m >= 3 and n >= 3.
/// Returns None exactly when length and codimension coincide on the group.
pub fn counterexample(params: GmpnParams) -> Option<MonomialElt> {
    let GmpnParams { m, p, n } = params;
    if p > 1 && p < m && n >= 2 {
        let mut exps = vec![0; n];
        exps[0] = 1;
        exps[1] = p - 1;
        return Some(MonomialElt::diagonal(m, exps));
    }
    if p == m && m >= 3 && n >= 3 {
        let mut exps = vec![0; n];
        exps[0] = 1;
        exps[1] = m - 2;
        exps[2] = 1;
        return Some(MonomialElt::diagonal(m, exps));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(m: u32, p: u32, n: usize) -> GmpnParams {
        GmpnParams::new(m, p, n).unwrap()
    }

    #[test]
    fn param_validation() {
        assert!(GmpnParams::new(4, 3, 2).is_err());
        assert!(GmpnParams::new(0, 1, 2).is_err());
        assert_eq!(params(4, 2, 2).order(), 16);
        assert_eq!(params(2, 1, 2).order(), 8);
        assert_eq!(params(3, 1, 3).order(), 162);
    }

    #[test]
    fn mul_and_inverse() {
        let g = MonomialElt::new(4, vec![1, 2, 0], vec![1, 3, 2]).unwrap();
        let id = MonomialElt::identity(4, 3);
        assert_eq!(g.mul(&id).unwrap(), g);
        assert_eq!(id.mul(&g).unwrap(), g);
        assert_eq!(g.mul(&g.inv()).unwrap(), id);
        assert_eq!(g.inv().mul(&g).unwrap(), id);

        let d = MonomialElt::diagonal(5, vec![1, 2, 3]);
        assert_eq!(d.inv(), MonomialElt::diagonal(5, vec![4, 3, 2]));
    }

    #[test]
    fn inverse_matches_matrix_inverse() {
        let g = MonomialElt::new(6, vec![2, 0, 1], vec![5, 1, 2]).unwrap();
        let inv_mat = g.to_matrix().inverse().unwrap();
        assert_eq!(g.inv().to_matrix(), inv_mat);
    }

    #[test]
    fn disjoint_transpositions_product() {
        // two disjoint transposition-type reflections multiply to an element
        // with two 2-cycles; checked against the matrix product
        let s = MonomialElt::transposition(4, 4, 0, 1, 1);
        let t = MonomialElt::transposition(4, 4, 2, 3, 2);
        let st = s.mul(&t).unwrap();
        let profile = st.cycle_sums();
        assert_eq!(profile.cycles.len(), 2);
        assert!(profile.cycles.iter().all(|(orb, _)| orb.len() == 2));
        let mat = s.to_matrix().matmul(&t.to_matrix()).unwrap();
        assert_eq!(st.to_matrix(), mat);
    }

    #[test]
    fn cycle_sum_examples() {
        let id = MonomialElt::identity(4, 3);
        let profile = id.cycle_sums();
        assert_eq!(profile.cycles.len(), 3);
        assert!(profile.cycles.iter().all(|(orb, s)| orb.len() == 1 && *s == 0));

        // M2 = diag(zeta, zeta^(p-1)) in G(4,2,2): two singleton orbits with
        // sums 1 and p-1
        let m2 = counterexample(params(4, 2, 2)).unwrap();
        let profile = m2.cycle_sums();
        let mut sums: Vec<u32> = profile.cycles.iter().map(|(_, s)| *s).collect();
        sums.sort();
        assert_eq!(sums, vec![1, 1]);

        // an n-cycle with all exponents zero: one orbit, sum zero
        let c = MonomialElt::new(3, vec![1, 2, 0], vec![0, 0, 0]).unwrap();
        let profile = c.cycle_sums();
        assert_eq!(profile.cycles.len(), 1);
        assert_eq!(profile.cycles[0].1, 0);
    }

    #[test]
    fn codim_examples() {
        assert_eq!(MonomialElt::identity(4, 3).codim(), 0);
        let m2 = counterexample(params(4, 2, 3)).unwrap();
        assert_eq!(m2.codim(), 2);
        let m3 = counterexample(params(3, 3, 3)).unwrap();
        assert_eq!(m3.codim(), 3);
        assert_eq!(m3.exps(), &[1, 1, 1]);
    }

    #[test]
    fn codim_matches_matrix_rank_exhaustively() {
        for p in [params(4, 2, 2), params(3, 1, 2), params(2, 2, 3), params(3, 3, 3)] {
            for g in enumerate_group(p) {
                assert_eq!(
                    g.codim(),
                    g.to_matrix().sub_identity().rank(),
                    "codim mismatch for {g:?} in {p}"
                );
            }
        }
    }

    #[test]
    fn reflection_enumeration() {
        // G(4,2,2): 4 transposition-type + 2 diagonal; cross-checked against
        // an exhaustive codimension-1 scan
        let refl = enumerate_reflections(params(4, 2, 2));
        assert_eq!(refl.len(), 6);
        let scan: Vec<MonomialElt> = enumerate_group(params(4, 2, 2))
            .into_iter()
            .filter(|g| g.codim() == 1)
            .collect();
        assert_eq!(scan.len(), 6);
        for r in &refl {
            assert!(scan.contains(r));
            assert!(r.is_member(2));
        }

        // G(1,1,3): the three transpositions of S_3
        assert_eq!(enumerate_reflections(params(1, 1, 3)).len(), 3);

        // G(m,m,n) has no diagonal reflections
        assert!(enumerate_reflections(params(4, 4, 3))
            .iter()
            .all(|r| !r.is_diagonal()));
        assert_eq!(
            enumerate_reflections(params(4, 4, 3)).len(),
            4 * 3 // m * n(n-1)/2
        );
    }

    #[test]
    fn group_enumeration_counts() {
        for p in [params(4, 2, 2), params(2, 1, 3), params(3, 3, 3), params(6, 3, 2)] {
            let elems = enumerate_group(p);
            assert_eq!(elems.len() as u128, p.order(), "{p}");
            assert!(elems[0].is_identity());
            for g in &elems {
                assert!(g.is_member(p.p));
            }
            // no duplicates
            let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
            assert_eq!(set.len(), elems.len());
        }
    }

    #[test]
    fn generators_generate() {
        for p in [params(4, 2, 2), params(3, 3, 3), params(2, 1, 3), params(6, 3, 2), params(5, 1, 1)] {
            let gens = gmpn_generators(p);
            let id = MonomialElt::identity(p.m, p.n);
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![id];
            seen.insert(queue[0].clone());
            while let Some(g) = queue.pop() {
                for h in &gens {
                    let gh = g.mul(h).unwrap();
                    if seen.insert(gh.clone()) {
                        queue.push(gh);
                    }
                }
            }
            assert_eq!(seen.len() as u128, p.order(), "{p}");
        }
    }

    #[test]
    fn p_connected_examples() {
        // a diagonal reflection is p-connected (single exponent)
        let r = MonomialElt::diagonal(4, vec![2, 0]);
        assert!(r.is_p_connected(2));

        // M2 in G(4,2,2): exponents {1,1}, 2 divides 2 but not 1
        let m2 = counterexample(params(4, 2, 2)).unwrap();
        assert!(m2.is_p_connected(2));

        // diag(zeta^p, zeta^p) with p < m: the proper subset sum p is
        // divisible by p
        let g = MonomialElt::diagonal(4, vec![2, 2]);
        assert!(!g.is_p_connected(2));

        // non-diagonal and identity elements are never p-connected
        assert!(!MonomialElt::transposition(4, 2, 0, 1, 0).is_p_connected(2));
        assert!(!MonomialElt::identity(4, 2).is_p_connected(2));
    }

    #[test]
    fn atoms_in_g_m_1_n_are_reflections() {
        for p in [params(3, 1, 2), params(2, 1, 3), params(4, 1, 2)] {
            let atoms = match gmpn_codim_atoms(p, AtomMode::Exhaustive, 10_000).unwrap() {
                GmpnAtoms::Exhaustive(v) => v,
                _ => unreachable!(),
            };
            assert_eq!(atoms.len(), enumerate_reflections(p).len(), "{p}");
            assert!(atoms.iter().all(|(g, _)| g.is_reflection()));
        }
    }

    #[test]
    fn m2_is_a_nonreflection_atom_in_g422() {
        let p = params(4, 2, 2);
        let m2 = counterexample(p).unwrap();
        let atoms = match gmpn_codim_atoms(p, AtomMode::Exhaustive, 10_000).unwrap() {
            GmpnAtoms::Exhaustive(v) => v,
            _ => unreachable!(),
        };
        assert!(atoms
            .iter()
            .any(|(g, k)| *g == m2 && *k == AtomKind::PConnectedDiagonal));
        // every nonreflection atom is diagonal and p-connected
        for (g, k) in &atoms {
            if *k == AtomKind::PConnectedDiagonal {
                assert!(g.is_diagonal() && g.is_p_connected(p.p));
            }
        }
    }

    #[test]
    fn det_one_codim_two_elements_are_not_atoms() {
        // diag(zeta^c, zeta^-c) has determinant one and codimension two
        let p = params(4, 4, 3);
        let atoms = match gmpn_codim_atoms(p, AtomMode::Exhaustive, 10_000).unwrap() {
            GmpnAtoms::Exhaustive(v) => v,
            _ => unreachable!(),
        };
        let bad = MonomialElt::diagonal(4, vec![1, 3, 0]);
        assert!(atoms.iter().all(|(g, _)| *g != bad));
    }

    #[test]
    fn symbolic_atoms_match_exhaustive_counts() {
        for p in [params(4, 2, 2), params(3, 3, 3), params(6, 2, 2), params(4, 4, 3)] {
            let exh = match gmpn_codim_atoms(p, AtomMode::Exhaustive, 100_000).unwrap() {
                GmpnAtoms::Exhaustive(v) => v,
                _ => unreachable!(),
            };
            let sym = match gmpn_codim_atoms(p, AtomMode::Symbolic, 0).unwrap() {
                GmpnAtoms::Symbolic(f) => f,
                _ => unreachable!(),
            };
            let refl = exh.iter().filter(|(_, k)| *k != AtomKind::PConnectedDiagonal).count() as u64;
            assert_eq!(
                refl,
                sym.transposition_reflection_count + sym.diagonal_reflection_count,
                "{p}"
            );
            let nonrefl = exh.iter().filter(|(_, k)| *k == AtomKind::PConnectedDiagonal).count() as u64;
            let famsum: u64 = sym.nonreflection_families.iter().map(|f| f.element_count).sum();
            assert_eq!(nonrefl, famsum, "{p}");
        }
    }

    #[test]
    fn exhaustive_mode_respects_budget() {
        let p = params(6, 2, 4);
        assert!(matches!(
            gmpn_codim_atoms(p, AtomMode::Exhaustive, 10).unwrap_err(),
            Error::BudgetExceeded { .. }
        ));
        assert!(matches!(
            gmpn_codim_atoms(p, AtomMode::Auto, 10).unwrap(),
            GmpnAtoms::Symbolic(_)
        ));
    }

    #[test]
    fn counterexample_cases() {
        assert_eq!(
            counterexample(params(4, 2, 2)).unwrap(),
            MonomialElt::diagonal(4, vec![1, 1])
        );
        assert_eq!(
            counterexample(params(3, 3, 3)).unwrap(),
            MonomialElt::diagonal(3, vec![1, 1, 1])
        );
        assert!(counterexample(params(5, 1, 4)).is_none());
        assert!(counterexample(params(2, 2, 4)).is_none()); // Coxeter D_4
        assert!(counterexample(params(6, 6, 2)).is_none()); // dihedral
        assert!(counterexample(params(4, 4, 1)).is_none());
        for p in [params(4, 2, 2), params(6, 3, 2), params(3, 3, 3), params(4, 4, 4)] {
            let w = counterexample(p).unwrap();
            assert!(w.is_member(p.p), "{p}");
        }
    }

    #[test]
    fn monomial_serialization_shape() {
        let g = MonomialElt::new(4, vec![1, 0, 2], vec![1, 3, 0]).unwrap();
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["perm"], serde_json::json!([2, 1, 3]));
        assert_eq!(json["exps"], serde_json::json!([1, 3, 0]));
        assert_eq!(json["m"], serde_json::json!(4));
        let back: MonomialElt = serde_json::from_value(json).unwrap();
        assert_eq!(back, g);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn to_matrix_is_a_homomorphism(
            pa in proptest::sample::select(vec![(4u32, 2u32, 3usize), (3, 3, 3), (6, 2, 2)]),
            seed in any::<u64>(),
        ) {
            let p = params(pa.0, pa.1, pa.2);
            let elems = enumerate_group(p);
            let a = &elems[(seed % elems.len() as u64) as usize];
            let b = &elems[((seed / 7) % elems.len() as u64) as usize];
            let lhs = a.mul(b).unwrap().to_matrix();
            let rhs = a.to_matrix().matmul(&b.to_matrix()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn codim_changes_by_at_most_one_under_reflections(seed in any::<u64>()) {
            let p = params(4, 2, 2);
            let elems = enumerate_group(p);
            let g = &elems[(seed % elems.len() as u64) as usize];
            for s in enumerate_reflections(p) {
                let gs = g.mul(&s).unwrap();
                let d = g.codim() as i64 - gs.codim() as i64;
                prop_assert!(d.abs() <= 1);
            }
        }
    }

    #[test]
    fn cycle_sums_split_merge_under_reflections() {
        // multiplying by a transposition-type reflection splits one cycle-sum
        // into d, c-d or merges two sums; a diagonal reflection shifts one
        // sum. Checked exhaustively on small groups.
        for p in [params(4, 2, 2), params(3, 3, 3), params(2, 1, 3)] {
            let elems = enumerate_group(p);
            for g in &elems {
                let before: Vec<u32> = {
                    let mut v: Vec<u32> = g.cycle_sums().cycles.iter().map(|c| c.1).collect();
                    v.sort();
                    v
                };
                for s in enumerate_reflections(p) {
                    let gs = g.mul(&s).unwrap();
                    let after: Vec<u32> = {
                        let mut v: Vec<u32> = gs.cycle_sums().cycles.iter().map(|c| c.1).collect();
                        v.sort();
                        v
                    };
                    if s.is_diagonal() {
                        // one sum shifted by the diagonal exponent
                        assert_eq!(before.len(), after.len());
                        let a = s.exps().iter().copied().find(|&x| x != 0).unwrap();
                        let mut found = false;
                        for (i, &c) in before.iter().enumerate() {
                            let mut shifted = before.clone();
                            shifted[i] = (c + a) % p.m;
                            shifted.sort();
                            if shifted == after {
                                found = true;
                                break;
                            }
                        }
                        assert!(found, "diagonal shift not observed for {g:?} * {s:?}");
                    } else {
                        let delta = before.len() as i64 - after.len() as i64;
                        assert_eq!(delta.abs(), 1, "split or merge changes cycle count by one");
                        if delta == 1 {
                            // merge: two sums replaced by their mod-m total
                            check_merge(&before, &after, p.m);
                        } else {
                            // split: one sum replaced by d and c-d
                            check_merge(&after, &before, p.m);
                        }
                    }
                }
            }
        }
    }

    /// `merged` arises from `fine` by replacing two entries with their sum.
    fn check_merge(fine: &[u32], merged: &[u32], m: u32) {
        for i in 0..fine.len() {
            for j in i + 1..fine.len() {
                let mut rest: Vec<u32> = Vec::new();
                for (k, &c) in fine.iter().enumerate() {
                    if k != i && k != j {
                        rest.push(c);
                    }
                }
                rest.push((fine[i] + fine[j]) % m);
                rest.sort();
                if rest == merged {
                    return;
                }
            }
        }
        panic!("no merge explains {fine:?} -> {merged:?}");
    }
}
