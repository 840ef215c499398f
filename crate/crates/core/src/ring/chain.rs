//! Cochain-level model of `H^*(G)` on the minimal resolution: the monomial
//! basis identified with dual cochains, products through the tensor diagonal
//! and the Massey homotopy through the coassociativity homotopy.

use crate::diagonal::{abelian_diagonal, evaluate, AbelianDiagonal, KOSZUL_EVALUATION};
use crate::group::AbelianPGroupSpec;
use crate::linalg::{mul_mod, neg_mod};

use super::{CohoClass, Monomial};

/// Whether the dual cochain of `e_{d_1} ⊗ … ⊗ e_{d_r}` carries the sign
/// `(-1)^{Σ_{i<j} d_i d_j}` relative to its monomial.
pub const MONOMIAL_SIGN_KOSZUL: bool = true;

pub struct ChainModel {
    spec: AbelianPGroupSpec,
    ad: AbelianDiagonal,
}

impl ChainModel {
    pub fn new(spec: &AbelianPGroupSpec, max_degree: usize) -> Self {
        ChainModel {
            spec: spec.clone(),
            ad: abelian_diagonal(spec, max_degree),
        }
    }

    pub fn diagonal(&self) -> &AbelianDiagonal {
        &self.ad
    }

    fn generator_monomial(&self, n: usize, k: usize) -> (Monomial, u32) {
        let degrees = self.ad.resolution.multidegree(n, k);
        let mut m = Monomial::one(self.spec.rank());
        let mut sign = 0;
        for (i, &d) in degrees.iter().enumerate() {
            m.pows[i] = (d / 2) as u32;
            if d % 2 == 1 {
                m.ext |= 1 << i;
            }
            sign += d * degrees[..i].iter().sum::<usize>();
        }
        let s = if MONOMIAL_SIGN_KOSZUL && sign % 2 == 1 {
            neg_mod(1, self.spec.p)
        } else {
            1
        };
        (m, s)
    }

    /// Values of the cochain representing `class` on the generators of its degree.
    pub fn cochain(&self, class: &CohoClass) -> Vec<u32> {
        let n = class.degree();
        (0..self.ad.resolution.rank(n))
            .map(|k| {
                let (m, s) = self.generator_monomial(n, k);
                mul_mod(class.coeff(&m), s, self.spec.p)
            })
            .collect()
    }

    pub fn class(&self, n: usize, values: &[u32]) -> CohoClass {
        let mut out = CohoClass::zero(&self.spec, n);
        for (k, &v) in values.iter().enumerate() {
            let (m, s) = self.generator_monomial(n, k);
            out = out
                .add(&CohoClass::monomial(&self.spec, m, mul_mod(v, s, self.spec.p)))
                .expect("same degree");
        }
        out
    }

    /// `φ ⌣ θ` computed by evaluating `φ ⊗ θ` on the diagonal.
    pub fn cup(&self, a: &CohoClass, b: &CohoClass) -> CohoClass {
        let n = a.degree() + b.degree();
        let (va, vb) = (self.cochain(a), self.cochain(b));
        let values: Vec<u32> = (0..self.ad.resolution.rank(n))
            .map(|k| {
                evaluate(
                    self.ad.diagonal.get(n, k),
                    &[(a.degree(), &va), (b.degree(), &vb)],
                    self.spec.p,
                    KOSZUL_EVALUATION,
                )
            })
            .collect();
        self.class(n, &values)
    }

    /// `(φ_1 ⊗ φ_2 ⊗ φ_3) ∘ H` on the coassociativity homotopy.
    pub fn homotopy_value(&self, a: &CohoClass, b: &CohoClass, c: &CohoClass) -> CohoClass {
        let n = a.degree() + b.degree() + c.degree() - 1;
        let (va, vb, vc) = (self.cochain(a), self.cochain(b), self.cochain(c));
        let values: Vec<u32> = (0..self.ad.resolution.rank(n))
            .map(|k| {
                evaluate(
                    self.ad.homotopy.get(n, k),
                    &[(a.degree(), &va), (b.degree(), &vb), (c.degree(), &vc)],
                    self.spec.p,
                    KOSZUL_EVALUATION,
                )
            })
            .collect();
        self.class(n, &values)
    }
}
