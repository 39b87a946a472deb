//! Square matrices over one cyclotomic field, with the exact elimination
//! routines behind codimension and fixed-space computations.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::num::CycloNum;
use crate::error::{Error, Result};

/// n x n matrix whose entries all share one conductor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloMatrix {
    dim: usize,
    conductor: u32,
    entries: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn zero(dim: usize, conductor: u32) -> Self {
        CycloMatrix {
            dim,
            conductor,
            entries: vec![CycloNum::zero(conductor); dim * dim],
        }
    }

    pub fn identity(dim: usize, conductor: u32) -> Self {
        let mut m = Self::zero(dim, conductor);
        for i in 0..dim {
            m.set(i, i, CycloNum::one(conductor));
        }
        m
    }

    /// Builds a matrix from rows, embedding every entry into the lcm of all
    /// conductors present.
    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let dim = rows.len();
        let mut conductor = 1u32;
        for row in &rows {
            if row.len() != dim {
                return Err(Error::BadParams(format!(
                    "expected a square matrix, got a row of length {} in dimension {}",
                    row.len(),
                    dim
                )));
            }
            for e in row {
                conductor = num::integer::lcm(conductor, e.conductor());
            }
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            for e in row {
                entries.push(e.embed(conductor)?);
            }
        }
        Ok(CycloMatrix { dim, conductor, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        self.entries[r * self.dim + c] = v.embed(self.conductor).expect("conductor mismatch");
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    /// Re-expresses every entry with conductor `m`.
    pub fn embed(&self, m: u32) -> Result<CycloMatrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.embed(m)?);
        }
        Ok(CycloMatrix { dim: self.dim, conductor: m, entries })
    }

    pub fn matmul(&self, rhs: &CycloMatrix) -> Result<CycloMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::MismatchedElements(format!(
                "matrix dimensions {} vs {}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let l = num::integer::lcm(self.conductor, rhs.conductor);
        let a = self.embed(l)?;
        let b = rhs.embed(l)?;
        let mut out = CycloMatrix::zero(n, l);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycloNum::zero(l);
                for k in 0..n {
                    let x = a.get(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    let y = b.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    acc = &acc + &(x * y);
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn sub_identity(&self) -> CycloMatrix {
        let mut m = self.clone();
        let one = CycloNum::one(self.conductor);
        for i in 0..self.dim {
            let v = m.get(i, i) - &one;
            m.entries[i * self.dim + i] = v;
        }
        m
    }

    pub fn direct_sum(&self, rhs: &CycloMatrix) -> CycloMatrix {
        let l = num::integer::lcm(self.conductor, rhs.conductor);
        let a = self.embed(l).unwrap();
        let b = rhs.embed(l).unwrap();
        let n = a.dim + b.dim;
        let mut out = CycloMatrix::zero(n, l);
        for i in 0..a.dim {
            for j in 0..a.dim {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                out.set(a.dim + i, a.dim + j, b.get(i, j).clone());
            }
        }
        out
    }

    /// Row echelon reduction (fully reduced form). Returns the reduced matrix
    /// together with the pivot columns, pivoting on the first nonzero entry
    /// in column order; no numerical concerns arise since arithmetic is
    /// exact.
    pub fn rref(&self) -> (CycloMatrix, Vec<usize>) {
        let n = self.dim;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            // find pivot
            let mut pr = None;
            for r in row..n {
                if !m.get(r, col).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != row {
                for c in 0..n {
                    m.entries.swap(pr * n + c, row * n + c);
                }
            }
            let pivot = m.get(row, col).clone();
            let pinv = pivot.inverse().expect("pivot is nonzero");
            for c in col..n {
                let v = m.get(row, c) * &pinv;
                m.entries[row * n + c] = v;
            }
            for r in 0..n {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in col..n {
                        let v = m.get(r, c) - &(&f * m.get(row, c));
                        m.entries[r * n + c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        (m, pivots)
    }

    /// Exact rank over Q(zeta_N).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space; length = dim - rank. Deterministic: one
    /// basis vector per free column, in ascending column order, with a 1 in
    /// the free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<CycloNum>> {
        let n = self.dim;
        let (r, pivots) = self.rref();
        let is_pivot: Vec<Option<usize>> = {
            let mut v = vec![None; n];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..n {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut vec = vec![CycloNum::zero(self.conductor); n];
            vec[free] = CycloNum::one(self.conductor);
            for (prow, &pcol) in pivots.iter().enumerate() {
                // x_pcol = -R[prow][free]
                vec[pcol] = -r.get(prow, free);
            }
            basis.push(vec);
        }
        basis
    }

    /// Basis of the row space: the nonzero rows of the reduced echelon form.
    /// Rows are leading-one normalized, so the output is canonical.
    pub fn row_space_basis(&self) -> Vec<Vec<CycloNum>> {
        let n = self.dim;
        let (r, pivots) = self.rref();
        (0..pivots.len())
            .map(|i| (0..n).map(|c| r.get(i, c).clone()).collect())
            .collect()
    }

    /// Inverse, or None when singular.
    pub fn inverse(&self) -> Option<CycloMatrix> {
        let n = self.dim;
        // Augmented elimination on [self | I].
        let mut a = self.clone();
        let mut b = CycloMatrix::identity(n, self.conductor);
        let mut row = 0;
        for col in 0..n {
            let mut pr = None;
            for r in row..n {
                if !a.get(r, col).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { return None };
            if pr != row {
                for c in 0..n {
                    a.entries.swap(pr * n + c, row * n + c);
                    b.entries.swap(pr * n + c, row * n + c);
                }
            }
            let pinv = a.get(row, col).inverse().unwrap();
            for c in 0..n {
                let va = a.get(row, c) * &pinv;
                a.entries[row * n + c] = va;
                let vb = b.get(row, c) * &pinv;
                b.entries[row * n + c] = vb;
            }
            for r in 0..n {
                if r != row && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    for c in 0..n {
                        let va = a.get(r, c) - &(&f * a.get(row, c));
                        a.entries[r * n + c] = va;
                        let vb = b.get(r, c) - &(&f * b.get(row, c));
                        b.entries[r * n + c] = vb;
                    }
                }
            }
            row += 1;
        }
        Some(b)
    }

    pub fn determinant(&self) -> CycloNum {
        let n = self.dim;
        let mut m = self.clone();
        let mut det = CycloNum::one(self.conductor);
        let mut row = 0;
        for col in 0..n {
            let mut pr = None;
            for r in row..n {
                if !m.get(r, col).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else {
                return CycloNum::zero(self.conductor);
            };
            if pr != row {
                for c in 0..n {
                    m.entries.swap(pr * n + c, row * n + c);
                }
                det = -&det;
            }
            let pivot = m.get(row, col).clone();
            det = &det * &pivot;
            let pinv = pivot.inverse().unwrap();
            for r in row + 1..n {
                if !m.get(r, col).is_zero() {
                    let f = m.get(r, col) * &pinv;
                    for c in col..n {
                        let v = m.get(r, c) - &(&f * m.get(row, c));
                        m.entries[r * n + c] = v;
                    }
                }
            }
            row += 1;
        }
        det
    }

    /// Multiplicative order under repeated self-multiplication, bounded by
    /// `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let id = CycloMatrix::identity(self.dim, self.conductor);
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc == id {
                return Some(k);
            }
            acc = acc.matmul(self).unwrap();
        }
        None
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix(dim={}, N={})", self.dim, self.conductor)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
