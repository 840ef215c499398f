//! `E_2 = H*(G) ⊗ H*(C)` in `(t, u)`-coordinates.
//!
//! The basis of `E_2^{i,j}` is `t^k u^ε χ` with `j = 2k + ε` and `χ` running
//! over the monomial basis of `H^i(G)`; the fiber part is written first, as in
//! `t^n u χ`. When the kernel has order 2, `u² = t` and the same indexing
//! covers the powers `u^j`.

use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{self, ExprError, ExprRing};
use crate::group::ExtensionSpec;
use crate::linalg::{add_mod, mul_mod, neg_mod, reduce_i64};
use crate::ring::{monomial_product, CohoClass, DegreeBasis, Monomial};

use super::SseqError;

/// An element of `E_2^{i,j}`: the row `j` and the base class `χ ∈ H^i(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Class {
    pub j: usize,
    pub chi: CohoClass,
}

impl E2Class {
    pub fn new(j: usize, chi: CohoClass) -> Self {
        E2Class { j, chi }
    }

    pub fn i(&self) -> usize {
        self.chi.degree()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.chi.degree(), self.j)
    }

    pub fn is_zero(&self) -> bool {
        self.chi.is_zero()
    }
}

impl fmt::Display for E2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chi.is_zero() {
            return write!(f, "0");
        }
        let (k, eps) = (self.j / 2, self.j % 2);
        let mut fiber = Vec::new();
        match k {
            0 => {}
            1 => fiber.push("t".to_string()),
            _ => fiber.push(format!("t^{k}")),
        }
        if eps == 1 {
            fiber.push("u".to_string());
        }
        let base = self.chi.to_string();
        if fiber.is_empty() {
            return write!(f, "{base}");
        }
        let fiber = fiber.join("*");
        if self.chi.degree() == 0 && self.chi.terms().len() == 1 {
            let c = self.chi.to_string();
            return match c.as_str() {
                "1" => write!(f, "{fiber}"),
                "-1" => write!(f, "-{fiber}"),
                _ => write!(f, "{c}*{fiber}"),
            };
        }
        if self.chi.terms().len() == 1 && !base.starts_with('-') {
            write!(f, "{fiber}*{base}")
        } else {
            write!(f, "{fiber}*({base})")
        }
    }
}

/// Coordinates and multiplication on `E_2`.
#[derive(Debug, Clone)]
pub struct E2Coordinates {
    pub spec: ExtensionSpec,
    /// `u² = t` (kernel of order 2) rather than `u² = 0`.
    pub u_squared_is_t: bool,
    bases: Vec<DegreeBasis>,
}

impl E2Coordinates {
    pub fn new(spec: &ExtensionSpec, max_degree: usize) -> Self {
        let bases = (0..=max_degree + 4)
            .map(|n| DegreeBasis::new(&spec.quotient, n))
            .collect();
        E2Coordinates {
            spec: spec.clone(),
            u_squared_is_t: spec.kernel_order() == 2,
            bases,
        }
    }

    pub fn basis(&self, i: usize) -> &DegreeBasis {
        &self.bases[i]
    }

    /// `dim E_2^{i,j} = dim H^i(G)` for every row `j`.
    pub fn dim(&self, i: usize) -> usize {
        self.bases.get(i).map_or(0, |b| b.len())
    }

    pub fn max_base_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn to_vector(&self, c: &E2Class) -> Vec<u32> {
        c.chi.to_vector(&self.bases[c.i()])
    }

    pub fn from_vector(&self, i: usize, j: usize, v: &[u32]) -> E2Class {
        E2Class::new(j, CohoClass::from_vector(&self.spec.quotient, &self.bases[i], v))
    }

    pub fn base(&self, chi: CohoClass) -> E2Class {
        E2Class::new(0, chi)
    }

    /// `t^k u^ε`.
    pub fn fiber(&self, j: usize) -> E2Class {
        E2Class::new(j, CohoClass::one(&self.spec.quotient))
    }

    /// `(t^a u^ε χ)(t^b u^δ χ') = (-1)^{δ|χ|} t^{a+b} u^ε u^δ χχ'`.
    pub fn mul(&self, a: &E2Class, b: &E2Class) -> E2Class {
        let j = a.j + b.j;
        let both_odd = a.j % 2 == 1 && b.j % 2 == 1;
        let mut chi = a.chi.cup(&b.chi).expect("same group");
        if both_odd && !self.u_squared_is_t {
            chi = CohoClass::zero(&self.spec.quotient, chi.degree());
        }
        if b.j % 2 == 1 && a.chi.degree() % 2 == 1 {
            chi = chi.neg();
        }
        E2Class::new(j, chi)
    }

    pub fn parse(&self, text: &str) -> Result<E2Class, SseqError> {
        let poly = expr::parse(text)?.eval(&E2Poly::zero(self))?;
        poly.into_class()
    }

    /// Parse and require the given bidegree.
    pub fn parse_at(&self, text: &str, i: usize, j: usize) -> Result<E2Class, SseqError> {
        let c = self.parse(text)?;
        if c.is_zero() {
            return Ok(E2Class::new(j, CohoClass::zero(&self.spec.quotient, i)));
        }
        if c.bidegree() != (i, j) {
            return Err(SseqError::Bidegree {
                expected: (i, j),
                found: c.bidegree(),
            });
        }
        Ok(c)
    }
}

/// Inhomogeneous `E_2` polynomial used while parsing.
#[derive(Clone)]
struct E2Poly<'a> {
    coords: &'a E2Coordinates,
    terms: BTreeMap<(usize, Monomial), u32>,
}

impl<'a> E2Poly<'a> {
    fn zero(coords: &'a E2Coordinates) -> Self {
        E2Poly {
            coords,
            terms: BTreeMap::new(),
        }
    }

    fn p(&self) -> u32 {
        self.coords.spec.p
    }

    fn with(&self, terms: BTreeMap<(usize, Monomial), u32>) -> Self {
        E2Poly {
            coords: self.coords,
            terms: terms.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    fn into_class(self) -> Result<E2Class, SseqError> {
        let q = &self.coords.spec.quotient;
        let mut bideg = None;
        for (j, m) in self.terms.keys() {
            let b = (m.degree(), *j);
            match bideg {
                None => bideg = Some(b),
                Some(x) if x != b => return Err(SseqError::Inhomogeneous(x, b)),
                _ => {}
            }
        }
        let (i, j) = bideg.unwrap_or((0, 0));
        let mut chi = CohoClass::zero(q, i);
        for ((_, m), c) in self.terms {
            chi = chi.add(&CohoClass::monomial(q, m, c))?;
        }
        Ok(E2Class::new(j, chi))
    }
}

impl ExprRing for E2Poly<'_> {
    fn from_int(&self, n: i64) -> Result<Self, ExprError> {
        let r = self.coords.spec.quotient.rank();
        Ok(self.with(BTreeMap::from([((0, Monomial::one(r)), reduce_i64(n, self.p()))])))
    }

    fn symbol(&self, name: &str) -> Result<Self, ExprError> {
        let q = &self.coords.spec.quotient;
        let one = Monomial::one(q.rank());
        let term = match name {
            "t" => (2, one),
            "u" => (1, one),
            _ => {
                let c = CohoClass::parse_any(name, q).map_err(|_| ExprError::UnknownSymbol(name.to_string()))?;
                let (m, _) = c.terms().iter().next().ok_or_else(|| ExprError::UnknownSymbol(name.to_string()))?;
                (0, m.clone())
            }
        };
        Ok(self.with(BTreeMap::from([(term, 1)])))
    }

    fn add(&self, other: &Self) -> Result<Self, ExprError> {
        let p = self.p();
        let mut terms = self.terms.clone();
        for (k, &c) in &other.terms {
            let e = terms.entry(k.clone()).or_insert(0);
            *e = add_mod(*e, c, p);
        }
        Ok(self.with(terms))
    }

    fn mul(&self, other: &Self) -> Result<Self, ExprError> {
        let p = self.p();
        let q = &self.coords.spec.quotient;
        let mut terms = BTreeMap::new();
        for ((ja, ma), &ca) in &self.terms {
            for ((jb, mb), &cb) in &other.terms {
                if ja % 2 == 1 && jb % 2 == 1 && !self.coords.u_squared_is_t {
                    continue;
                }
                let Some((s, m)) = monomial_product(q, ma, mb) else { continue };
                let mut c = mul_mod(mul_mod(ca, cb, p), s, p);
                if jb % 2 == 1 && ma.degree() % 2 == 1 {
                    c = neg_mod(c, p);
                }
                let e = terms.entry((ja + jb, m)).or_insert(0);
                *e = add_mod(*e, c, p);
            }
        }
        Ok(self.with(terms))
    }

    fn neg(&self) -> Result<Self, ExprError> {
        let p = self.p();
        Ok(self.with(self.terms.iter().map(|(k, &c)| (k.clone(), neg_mod(c, p))).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianPGroupSpec;

    fn coords(p: u32, km: u32, e: &[u32], xi: &str) -> E2Coordinates {
        let q = AbelianPGroupSpec::new(p, e.to_vec()).unwrap();
        let xi = CohoClass::parse(xi, &q, 2).unwrap();
        E2Coordinates::new(&ExtensionSpec::new(km, q, xi, None).unwrap(), 8)
    }

    #[test]
    fn parse_and_print() {
        let c = coords(3, 1, &[1, 1], "y1*y2");
        let a = c.parse("t^2*u*y1*y2").unwrap();
        assert_eq!(a.bidegree(), (2, 5));
        assert_eq!(a.to_string(), "t^2*u*y1*y2");
        // moving u past y1 costs a sign
        let b = c.parse("y1*u").unwrap();
        assert_eq!(b, c.parse("-u*y1").unwrap());
        let d = c.parse("t^2*(x1*y2 - x2*y1)").unwrap();
        assert_eq!(d.bidegree(), (3, 4));
        assert_eq!(d.to_string(), "t^2*(x1*y2 - x2*y1)");
        assert!(c.parse("u*u").unwrap().is_zero());
        assert!(c.parse("t + y1").is_err());
        assert_eq!(c.parse_at("0", 3, 2).unwrap().bidegree(), (3, 2));
    }

    #[test]
    fn products_match_parsing() {
        let c = coords(3, 1, &[1, 1], "y1*y2");
        let a = c.parse("t*u*y1").unwrap();
        let b = c.parse("u*y2 + t*x1").unwrap_err();
        let _ = b;
        let b = c.parse("t*y2").unwrap();
        assert_eq!(c.mul(&a, &b), c.parse("t*u*y1*t*y2").unwrap());
        assert_eq!(c.mul(&b, &a), c.parse("t*y2*t*u*y1").unwrap());
        let k = coords(2, 1, &[1], "x1");
        assert!(k.u_squared_is_t);
        assert_eq!(k.mul(&k.fiber(1), &k.fiber(1)), k.fiber(2));
    }
}
