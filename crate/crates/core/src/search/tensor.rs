//! Vectors and 2-tensors with polynomial coordinates over a fixed multiplication table.

use super::poly::Poly;
use crate::graded::{koszul, BasisIndex};
use crate::scalar::GaussScalar;
use crate::structures::{MultTable, SuperBialgebraData};

pub(crate) struct PolyAlgebra {
    pub d: usize,
    pub basis: Vec<BasisIndex>,
    prod: Vec<Vec<(usize, GaussScalar)>>,
}

impl PolyAlgebra {
    pub fn new(mult: &MultTable) -> Self {
        let space = mult.space();
        let basis = space.basis();
        let d = basis.len();
        let mut prod = Vec::with_capacity(d * d);
        for &a in &basis {
            for &b in &basis {
                prod.push(mult.get(a, b).terms().map(|(k, c)| (space.flat(k), c.clone())).collect());
            }
        }
        PolyAlgebra { d, basis, prod }
    }

    pub fn of(data: &SuperBialgebraData) -> Self {
        Self::new(&data.mult)
    }

    pub fn parity(&self, k: usize) -> u8 {
        self.basis[k].parity
    }

    pub fn zero_vec(&self) -> Vec<Poly> {
        vec![Poly::zero(); self.d]
    }

    pub fn zero_t2(&self) -> Vec<Poly> {
        vec![Poly::zero(); self.d * self.d]
    }

    pub fn mul_vec(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let mut out = self.zero_vec();
        for (a, pa) in u.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (b, pb) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let ab = pa.mul(pb);
                for (k, c) in &self.prod[a * self.d + b] {
                    out[*k].add_scaled(&ab, c);
                }
            }
        }
        out
    }

    /// `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd`.
    pub fn mul_t2(&self, s: &[Poly], t: &[Poly]) -> Vec<Poly> {
        let d = self.d;
        let mut out = self.zero_t2();
        for (ij, ps) in s.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let (i, j) = (ij / d, ij % d);
            for (kl, pt) in t.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let (k, l) = (kl / d, kl % d);
                let left = &self.prod[i * d + k];
                let right = &self.prod[j * d + l];
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let mut c = ps.mul(pt);
                if koszul(self.parity(j), self.parity(k)) {
                    c = c.scale(&-GaussScalar::one());
                }
                for (p, x) in left {
                    for (q, y) in right {
                        out[p * d + q].add_scaled(&c, &(x * y));
                    }
                }
            }
        }
        out
    }
}
