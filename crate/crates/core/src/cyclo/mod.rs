//! Exact arithmetic in cyclotomic fields Q(zeta_N) and exact linear algebra
//! over them.
//!
//! Elements are kept in the power basis 1, zeta, ..., zeta^(phi(N)-1) reduced
//! modulo the N-th cyclotomic polynomial, so structural equality coincides
//! with field equality and values hash consistently.

mod matrix;
mod num;
mod poly;

pub use matrix::CycloMatrix;
pub use num::{field_arith, root_of_unity, ArithOp, CycloNum, Rat};
pub(crate) use poly::euler_phi;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use num_bigint_shim::BigInt;

/// `num`'s bigint re-exported under a private name so the submodules agree on
/// one import path.
mod num_bigint_shim {
    pub use num::BigInt;
}

/// Per-conductor data: the cyclotomic polynomial and reduction rows for the
/// powers zeta^k with k >= phi(N).
pub(crate) struct FieldData {
    pub n: u32,
    pub phi: usize,
    /// Reduction of x^(phi + j) modulo Phi_N, as integer coefficient rows of
    /// length phi. Covers j = 0 ..= max(N-1, 2*phi-2) - phi.
    pub pow_red: Vec<Vec<BigInt>>,
}

static REGISTRY: Lazy<Mutex<HashMap<u32, Arc<FieldData>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub(crate) fn field_data(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "conductor must be positive");
    let mut reg = REGISTRY.lock().unwrap();
    if let Some(fd) = reg.get(&n) {
        return Arc::clone(fd);
    }
    let fd = Arc::new(FieldData::compute(n));
    reg.insert(n, Arc::clone(&fd));
    fd
}

impl FieldData {
    fn compute(n: u32) -> FieldData {
        let phi_poly = poly::cyclotomic_poly(n);
        let phi = phi_poly.len() - 1;
        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})  (Phi_N is monic)
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let base: Vec<BigInt> = phi_poly[..phi].iter().map(|c| -c.clone()).collect();
        let top = std::cmp::max(n as usize, 2 * phi - 1);
        rows.push(base);
        // x^(k+1) = x * x^k, folding the overflow coefficient back in.
        while rows.len() < top - phi {
            let prev = rows.last().unwrap();
            let mut next = vec![BigInt::from(0); phi];
            let carry = prev[phi - 1].clone();
            for i in 1..phi {
                next[i] = prev[i - 1].clone();
            }
            for i in 0..phi {
                next[i] += &carry * &rows[0][i];
            }
            rows.push(next);
        }
        FieldData { n, phi, pow_red: rows }
    }
}
