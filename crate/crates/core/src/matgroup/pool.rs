//! Interned cyclotomic values with cached binary operations.
//!
//! The entries of all elements of a finite matrix group form a small finite
//! set, so after a short warmup every scalar product and sum needed for a
//! group multiplication is a cache hit. Matrices are stored "packed" as rows
//! of value ids, and group elements are identified by the packed form, which
//! is canonical because `CycloNum` is.

use std::collections::HashMap;

use crate::cyclo::{CycloMatrix, CycloNum};

pub(crate) struct ValuePool {
    conductor: u32,
    vals: Vec<CycloNum>,
    ids: HashMap<CycloNum, u32>,
    mul_cache: HashMap<(u32, u32), u32>,
    add_cache: HashMap<(u32, u32), u32>,
    pub zero: u32,
}

impl ValuePool {
    pub fn new(conductor: u32) -> Self {
        let mut pool = ValuePool {
            conductor,
            vals: Vec::new(),
            ids: HashMap::new(),
            mul_cache: HashMap::new(),
            add_cache: HashMap::new(),
            zero: 0,
        };
        pool.zero = pool.intern(CycloNum::zero(conductor));
        pool
    }

    pub fn intern(&mut self, v: CycloNum) -> u32 {
        debug_assert_eq!(v.conductor(), self.conductor);
        if let Some(&id) = self.ids.get(&v) {
            return id;
        }
        let id = self.vals.len() as u32;
        self.vals.push(v.clone());
        self.ids.insert(v, id);
        id
    }

    pub fn get(&self, id: u32) -> &CycloNum {
        &self.vals[id as usize]
    }

    pub fn mul(&mut self, a: u32, b: u32) -> u32 {
        if a == self.zero || b == self.zero {
            return self.zero;
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&id) = self.mul_cache.get(&key) {
            return id;
        }
        let v = self.get(key.0) * self.get(key.1);
        let id = self.intern(v);
        self.mul_cache.insert(key, id);
        id
    }

    pub fn add(&mut self, a: u32, b: u32) -> u32 {
        if a == self.zero {
            return b;
        }
        if b == self.zero {
            return a;
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&id) = self.add_cache.get(&key) {
            return id;
        }
        let v = self.get(key.0) + self.get(key.1);
        let id = self.intern(v);
        self.add_cache.insert(key, id);
        id
    }
}

/// Matrix-group arithmetic backend: packed matrices over a value pool plus
/// the packed-form-to-element-index map.
pub(crate) struct MatBackend {
    pub dim: usize,
    pub conductor: u32,
    pub pool: ValuePool,
    pub packed: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, u32>,
}

impl MatBackend {
    pub fn new(dim: usize, conductor: u32) -> Self {
        MatBackend {
            dim,
            conductor,
            pool: ValuePool::new(conductor),
            packed: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn pack(&mut self, m: &CycloMatrix) -> Vec<u32> {
        debug_assert_eq!(m.dim(), self.dim);
        let m = m.embed(self.conductor).expect("conductor must contain the matrix entries");
        m.entries().iter().map(|e| self.pool.intern(e.clone())).collect()
    }

    pub fn unpack(&self, p: &[u32]) -> CycloMatrix {
        let n = self.dim;
        let rows: Vec<Vec<CycloNum>> = (0..n)
            .map(|r| (0..n).map(|c| self.pool.get(p[r * n + c]).clone()).collect())
            .collect();
        CycloMatrix::from_rows(rows)
            .expect("packed rows are square")
            .embed(self.conductor)
            .expect("same conductor")
    }

    pub fn matmul(&mut self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let mut out = vec![self.pool.zero; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == self.pool.zero {
                    continue;
                }
                for j in 0..n {
                    let y = b[k * n + j];
                    if y == self.pool.zero {
                        continue;
                    }
                    let prod = self.pool.mul(x, y);
                    out[i * n + j] = self.pool.add(out[i * n + j], prod);
                }
            }
        }
        out
    }

    /// Registers a packed matrix as a new element, returning its index.
    pub fn push_element(&mut self, p: Vec<u32>) -> u32 {
        let idx = self.packed.len() as u32;
        self.index.insert(p.clone(), idx);
        self.packed.push(p);
        idx
    }

    pub fn lookup(&self, p: &[u32]) -> Option<u32> {
        self.index.get(p).copied()
    }
}
