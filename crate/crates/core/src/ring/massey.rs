//! Massey triple products in the cohomology of a finite abelian p-group.
//!
//! With a minimal resolution the cochains are the cohomology, so the
//! bounding cochains of `ab` and `bc` may be taken to be zero and the product
//! is the value of the coassociativity homotopy `h`. On a cyclic factor `h` is
//! read off from the Cartan-Eilenberg homotopy; across a product of groups it
//! is assembled factor by factor, splitting off the last cyclic factor. The
//! recursion agrees term for term with evaluating cochains on the tensor
//! homotopy built in [`crate::diagonal::tensor_homotopy`].

use crate::diagonal::{ce_homotopy, evaluate};
use crate::group::AbelianPGroupSpec;
use crate::linalg::{mul_mod, EchelonBasis};

use super::{monomial_product, CohoClass, DegreeBasis, Monomial, RingError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasseyResult {
    pub representative: CohoClass,
    /// Echelon basis of `a·H^{|b|+|c|-1} + H^{|a|+|b|-1}·c`.
    pub indeterminacy_basis: Vec<CohoClass>,
    pub defined: bool,
}

impl MasseyResult {
    /// Whether `class` lies in the indeterminacy subspace.
    pub fn in_indeterminacy(&self, class: &CohoClass) -> bool {
        let basis = class.monomials_in_degree();
        let mut ech = EchelonBasis::new(class.prime(), basis.len());
        for b in &self.indeterminacy_basis {
            ech.insert(&b.to_vector(&basis));
        }
        ech.contains(&class.to_vector(&basis))
    }

    pub fn contains_zero(&self) -> bool {
        self.in_indeterminacy(&self.representative)
    }

    /// Same coset: the two representatives differ by indeterminacy.
    pub fn same_coset(&self, class: &CohoClass) -> bool {
        match class.sub(&self.representative) {
            Ok(d) => self.in_indeterminacy(&d),
            Err(_) => false,
        }
    }
}

/// `⟨a, b, c⟩`, defined when `ab = 0` and `bc = 0`.
pub fn massey_triple(a: &CohoClass, b: &CohoClass, c: &CohoClass) -> Result<MasseyResult, RingError> {
    let spec = a.group().clone();
    if b.group() != &spec || c.group() != &spec {
        return Err(RingError::Mismatch);
    }
    let ab = a.cup(b)?;
    if !ab.is_zero() {
        return Err(RingError::Undefined(format!("({a})*({b}) = {ab}")));
    }
    let bc = b.cup(c)?;
    if !bc.is_zero() {
        return Err(RingError::Undefined(format!("({b})*({c}) = {bc}")));
    }
    let total = a.degree() + b.degree() + c.degree();
    if total == 0 {
        return Ok(MasseyResult {
            representative: CohoClass::zero(&spec, 0),
            indeterminacy_basis: vec![],
            defined: true,
        });
    }
    let p = spec.p;
    let mut rep = CohoClass::zero(&spec, total - 1);
    for (m1, &c1) in a.terms() {
        for (m2, &c2) in b.terms() {
            for (m3, &c3) in c.terms() {
                let coeff = mul_mod(mul_mod(c1, c2, p), c3, p);
                rep = rep.add(&massey_homotopy(&spec, m1, m2, m3).scale(coeff))?;
            }
        }
    }
    let indeterminacy_basis = indeterminacy(a, b, c)?;
    Ok(MasseyResult {
        representative: rep,
        indeterminacy_basis,
        defined: true,
    })
}

fn indeterminacy(a: &CohoClass, b: &CohoClass, c: &CohoClass) -> Result<Vec<CohoClass>, RingError> {
    let spec = a.group();
    let target = DegreeBasis::new(spec, a.degree() + b.degree() + c.degree() - 1);
    let mut ech = EchelonBasis::new(spec.p, target.len());
    if b.degree() + c.degree() >= 1 {
        for m in DegreeBasis::new(spec, b.degree() + c.degree() - 1).monomials {
            ech.insert(&a.cup(&CohoClass::monomial(spec, m, 1))?.to_vector(&target));
        }
    }
    if a.degree() + b.degree() >= 1 {
        for m in DegreeBasis::new(spec, a.degree() + b.degree() - 1).monomials {
            ech.insert(&CohoClass::monomial(spec, m, 1).cup(c)?.to_vector(&target));
        }
    }
    Ok(ech
        .rows()
        .iter()
        .map(|v| CohoClass::from_vector(spec, &target, v))
        .collect())
}

/// `h(m1, m2, m3)` on basis monomials, normalized so that `⟨u,u,u⟩ = t` on `C_3`:
/// `(-1)^{|m1|+|m2|+|m3|}` times `(m1 ⊗ m2 ⊗ m3) ∘ H` with Koszul evaluation.
pub fn massey_homotopy(spec: &AbelianPGroupSpec, m1: &Monomial, m2: &Monomial, m3: &Monomial) -> CohoClass {
    let h = h_koszul(spec, m1, m2, m3);
    if (m1.degree() + m2.degree() + m3.degree()) % 2 == 1 {
        h.neg()
    } else {
        h
    }
}

/// `(m1 ⊗ m2 ⊗ m3) ∘ H` for the iterated tensor homotopy, by recursion on the
/// number of factors: with `m_k = φ_k θ_k` split off the last factor,
/// `h = (-1)^s ((-1)^{|θ1θ2θ3|} h'(φ) × θ1θ2θ3 + φ1φ2φ3 × h''(θ))`,
/// `s = |θ1|(|φ2|+|φ3|) + |θ2||φ3|` from interlacing the factors.
fn h_koszul(spec: &AbelianPGroupSpec, m1: &Monomial, m2: &Monomial, m3: &Monomial) -> CohoClass {
    let degree = m1.degree() + m2.degree() + m3.degree();
    let r = spec.rank();
    if r == 0 || degree == 0 {
        return CohoClass::zero(spec, degree.saturating_sub(1));
    }
    if r == 1 {
        return h_cyclic(spec, [m1.degree(), m2.degree(), m3.degree()]);
    }
    let k = r - 1;
    let p = spec.p;
    let (lo, hi) = (spec.factors(0..k), spec.factors(k..r));
    let (f1, t1) = m1.split_at(k);
    let (f2, t2) = m2.split_at(k);
    let (f3, t3) = m3.split_at(k);
    let (df, dt) = (
        [f1.degree(), f2.degree(), f3.degree()],
        [t1.degree(), t2.degree(), t3.degree()],
    );

    let mut out = CohoClass::zero(spec, degree - 1);
    if let Some((s, theta)) = triple_product(&hi, &t1, &t2, &t3) {
        let h_lo = h_koszul(&lo, &f1, &f2, &f3);
        let s = if (dt[0] + dt[1] + dt[2]) % 2 == 1 { p - s } else { s };
        out = out.add(&cross(spec, &h_lo, &theta, s)).expect("same degree");
    }
    if let Some((s, phi)) = triple_product(&lo, &f1, &f2, &f3) {
        let h_hi = h_koszul(&hi, &t1, &t2, &t3);
        let left = CohoClass::monomial(&lo, phi, s);
        for (m, &c) in h_hi.terms() {
            out = out.add(&cross(spec, &left, m, c)).expect("same degree");
        }
    }
    let swaps = dt[0] * (df[1] + df[2]) + dt[1] * df[2];
    if swaps % 2 == 1 {
        out.neg()
    } else {
        out
    }
}

fn triple_product(spec: &AbelianPGroupSpec, a: &Monomial, b: &Monomial, c: &Monomial) -> Option<(u32, Monomial)> {
    let (s1, ab) = monomial_product(spec, a, b)?;
    let (s2, abc) = monomial_product(spec, &ab, c)?;
    Some((mul_mod(s1, s2, spec.p), abc))
}

/// `left × right` where `left` lives on the first factors and `right` on the last.
fn cross(spec: &AbelianPGroupSpec, left: &CohoClass, right: &Monomial, coeff: u32) -> CohoClass {
    let p = spec.p;
    let mut out = CohoClass::zero(spec, left.degree() + right.degree());
    for (m, &c) in left.terms() {
        out = out
            .add(&CohoClass::monomial(spec, m.concat(right), mul_mod(c, coeff, p)))
            .expect("same degree");
    }
    out
}

/// `h` on a cyclic group: the dual cochains evaluated on the Cartan-Eilenberg
/// homotopy. Nonzero only when all three degrees are odd.
fn h_cyclic(spec: &AbelianPGroupSpec, degrees: [usize; 3]) -> CohoClass {
    let total = degrees.iter().sum::<usize>() - 1;
    let n = spec.factor_order(0);
    let chain = ce_homotopy(n, spec.p, degrees[0], degrees[1], degrees[2]);
    let one = [1u32];
    let cochains: Vec<(usize, &[u32])> = degrees.iter().map(|&d| (d, &one[..])).collect();
    let value = evaluate(&chain, &cochains, spec.p, true);
    let mut m = Monomial::one(1);
    if total % 2 == 1 {
        m.ext = 1;
    }
    m.pows[0] = (total / 2) as u32;
    CohoClass::monomial(spec, m, value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u32, e: &[u32]) -> AbelianPGroupSpec {
        AbelianPGroupSpec::new(p, e.to_vec()).unwrap()
    }

    fn c(text: &str, spec: &AbelianPGroupSpec) -> CohoClass {
        CohoClass::parse_any(text, spec).unwrap()
    }

    #[test]
    fn cyclic_triple_products() {
        let c3 = g(3, &[1]);
        let r = massey_triple(&c("y1", &c3), &c("y1", &c3), &c("y1", &c3)).unwrap();
        assert_eq!(r.representative, c("x1", &c3));
        assert!(r.indeterminacy_basis.is_empty());
        let c9 = g(3, &[2]);
        let r = massey_triple(&c("y1", &c9), &c("y1", &c9), &c("y1", &c9)).unwrap();
        assert!(r.representative.is_zero());
    }

    #[test]
    fn rank_two_fixture() {
        let s = g(3, &[1, 1]);
        let a = c("x1*y2 - y1*x2", &s);
        let r = massey_triple(&a, &a, &c("y1*y2", &s)).unwrap();
        assert_eq!(r.representative, c("x1*x2^2*y2 - x1^2*x2*y1", &s));
        // ⟨x2y1, y1, y1y2⟩ = ⟨y1, y1, y1⟩x2y2 vanishes once the first factor is C_9
        let t = g(3, &[2, 1]);
        let r = massey_triple(&c("x2*y1", &t), &c("y1", &t), &c("y1*y2", &t)).unwrap();
        assert!(r.representative.is_zero());
        let r = massey_triple(&c("x2*y1", &s), &c("y1", &s), &c("y1*y2", &s)).unwrap();
        assert_eq!(r.representative, c("x1*x2*y2", &s));
    }

    #[test]
    fn undefined_products_are_rejected() {
        let s = g(3, &[1, 1]);
        assert!(matches!(
            massey_triple(&c("y1", &s), &c("y2", &s), &c("y1", &s)),
            Err(RingError::Undefined(_))
        ));
    }
}
