//! The mod-p cohomology ring of a finite abelian p-group
//! `C_{p^{m_1}} ⊕ … ⊕ C_{p^{m_r}}`, presented as `Λ[y_1..y_r] ⊗ F_p[x_1..x_r]`
//! (with `y_i^2 = x_i` on `C_2` factors).

mod chain;
mod massey;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::expr::{self, ExprError, ExprRing};
use crate::group::AbelianPGroupSpec;
use crate::linalg::{add_mod, mul_mod, neg_mod, reduce_i64};

pub use chain::{ChainModel, MONOMIAL_SIGN_KOSZUL};
pub use massey::{massey_homotopy, massey_triple, MasseyResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("classes live over different groups")]
    Mismatch,
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error("expression is not homogeneous: degrees {0} and {1}")]
    Inhomogeneous(usize, usize),
    #[error("expected a class of degree {expected}, found degree {found}")]
    Degree { expected: usize, found: usize },
    #[error("Massey product undefined: {0} is nonzero")]
    Undefined(String),
}

/// `x^a · y_{i_1} ⋯ y_{i_k}` with `i_1 < … < i_k` given by the bits of `ext`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub ext: u32,
    pub pows: Vec<u32>,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial {
            ext: 0,
            pows: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.pows.len()
    }

    pub fn has_y(&self, i: usize) -> bool {
        self.ext >> i & 1 == 1
    }

    pub fn degree(&self) -> usize {
        self.ext.count_ones() as usize + 2 * self.pows.iter().map(|&a| a as usize).sum::<usize>()
    }

    /// Degree of the part living on factor `i`.
    pub fn factor_degree(&self, i: usize) -> usize {
        2 * self.pows[i] as usize + self.has_y(i) as usize
    }

    /// Split into the parts on factors `< k` and `>= k`.
    pub fn split_at(&self, k: usize) -> (Monomial, Monomial) {
        let lo = Monomial {
            ext: self.ext & ((1u32 << k) - 1),
            pows: self.pows[..k].to_vec(),
        };
        let hi = Monomial {
            ext: self.ext >> k,
            pows: self.pows[k..].to_vec(),
        };
        (lo, hi)
    }

    /// Juxtapose a monomial on the first factors with one on the remaining factors.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut pows = self.pows.clone();
        pows.extend_from_slice(&other.pows);
        Monomial {
            ext: self.ext | (other.ext << self.rank()),
            pows,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &a) in self.pows.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, a)),
            }
        }
        for i in 0..self.rank() {
            if self.has_y(i) {
                parts.push(format!("y{}", i + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Product of two monomials as `(coefficient, monomial)`, or `None` if it vanishes.
pub fn monomial_product(spec: &AbelianPGroupSpec, a: &Monomial, b: &Monomial) -> Option<(u32, Monomial)> {
    let p = spec.p;
    let overlap = a.ext & b.ext;
    let mut pows: Vec<u32> = a.pows.iter().zip(&b.pows).map(|(x, y)| x + y).collect();
    for i in 0..spec.rank() {
        if overlap >> i & 1 == 1 {
            if !spec.is_order_two(i) {
                return None;
            }
            pows[i] += 1;
        }
    }
    // sign from moving b's y's past a's larger-indexed y's
    let mut inversions = 0;
    for j in 0..spec.rank() {
        if b.ext >> j & 1 == 1 {
            inversions += (a.ext >> (j + 1)).count_ones();
        }
    }
    let coeff = if inversions % 2 == 1 { p - 1 } else { 1 % p };
    Some((coeff, Monomial { ext: a.ext ^ b.ext, pows }))
}

/// Monomials of degree `n`, in increasing [`Monomial`] order.
pub fn monomial_basis(spec: &AbelianPGroupSpec, n: usize) -> Vec<Monomial> {
    let r = spec.rank();
    let mut out = Vec::new();
    for ext in 0u32..(1 << r) {
        let e = ext.count_ones() as usize;
        if e > n || (n - e) % 2 != 0 {
            continue;
        }
        let total = (n - e) / 2;
        for pows in compositions(total, r) {
            out.push(Monomial { ext, pows });
        }
    }
    out.sort();
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// `dim H^n(G; F_p)` for `n = 0..=max`.
pub fn dims(spec: &AbelianPGroupSpec, max: usize) -> Vec<usize> {
    let r = spec.rank();
    if r == 0 {
        return (0..=max).map(|n| (n == 0) as usize).collect();
    }
    (0..=max)
        .map(|n| {
            (0..=r.min(n))
                .filter(|e| (n - e) % 2 == 0)
                .map(|e| binomial(r, e) * binomial((n - e) / 2 + r - 1, r - 1))
                .sum()
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Index lookup for the monomial basis of one degree.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(spec: &AbelianPGroupSpec, degree: usize) -> Self {
        let monomials = monomial_basis(spec, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A homogeneous element of `H^*(G; F_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohoClass {
    group: AbelianPGroupSpec,
    degree: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl CohoClass {
    pub fn zero(group: &AbelianPGroupSpec, degree: usize) -> Self {
        CohoClass {
            group: group.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &AbelianPGroupSpec) -> Self {
        Self::monomial(group, Monomial::one(group.rank()), 1)
    }

    pub fn monomial(group: &AbelianPGroupSpec, m: Monomial, coeff: u32) -> Self {
        let mut c = Self::zero(group, m.degree());
        c.add_term(m, coeff);
        c
    }

    pub fn y(group: &AbelianPGroupSpec, i: usize) -> Self {
        let mut m = Monomial::one(group.rank());
        m.ext = 1 << i;
        Self::monomial(group, m, 1)
    }

    pub fn x(group: &AbelianPGroupSpec, i: usize) -> Self {
        let mut m = Monomial::one(group.rank());
        m.pows[i] = 1;
        Self::monomial(group, m, 1)
    }

    /// Parse the text form; `0` is accepted in any degree.
    pub fn parse(text: &str, group: &AbelianPGroupSpec, degree: usize) -> Result<Self, RingError> {
        let poly = expr::parse(text)?.eval(&PolyCtx::zero(group))?;
        let c = poly.into_class(degree)?;
        if c.degree != degree {
            return Err(RingError::Degree {
                expected: degree,
                found: c.degree,
            });
        }
        Ok(c)
    }

    /// Parse a homogeneous expression of any degree (zero gets degree 0).
    pub fn parse_any(text: &str, group: &AbelianPGroupSpec) -> Result<Self, RingError> {
        expr::parse(text)?.eval(&PolyCtx::zero(group))?.into_class(0)
    }

    pub fn from_vector(group: &AbelianPGroupSpec, basis: &DegreeBasis, v: &[u32]) -> Self {
        let mut c = Self::zero(group, basis.degree);
        for (m, &x) in basis.monomials.iter().zip(v) {
            c.add_term(m.clone(), x);
        }
        c
    }

    pub fn to_vector(&self, basis: &DegreeBasis) -> Vec<u32> {
        let mut v = vec![0; basis.len()];
        for (m, &c) in &self.terms {
            v[basis.position(m).expect("monomial in basis")] = c;
        }
        v
    }

    pub fn group(&self) -> &AbelianPGroupSpec {
        &self.group
    }
    pub fn prime(&self) -> u32 {
        self.group.p
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        let p = self.group.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        debug_assert_eq!(m.degree(), self.degree);
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e = add_mod(*e, c, p);
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.group != other.group {
            Err(RingError::Mismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(RingError::Inhomogeneous(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.group.p - 1)
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(&self.group, self.degree);
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), mul_mod(x, c % self.group.p, self.group.p));
        }
        out
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(reduce_i64(c, self.group.p))
    }

    pub fn cup(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let p = self.group.p;
        let mut out = Self::zero(&self.group, self.degree + other.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some((s, m)) = monomial_product(&self.group, a, b) {
                    out.add_term(m, mul_mod(mul_mod(ca, cb, p), s, p));
                }
            }
        }
        Ok(out)
    }

    /// The Bockstein, a derivation with `β(y_i) = x_i` on factors of order p.
    pub fn bockstein(&self) -> Self {
        let p = self.group.p;
        let mut out = Self::zero(&self.group, self.degree + 1);
        for (m, &c) in &self.terms {
            // β(x^a y_{i1}⋯y_{ik}) = Σ_s (-1)^s x^a y_{i1}⋯β(y_{is})⋯y_{ik}
            let mut s = 0;
            for i in 0..self.group.rank() {
                if !m.has_y(i) {
                    continue;
                }
                if self.group.exponents[i] == 1 {
                    let mut n = m.clone();
                    n.ext &= !(1 << i);
                    n.pows[i] += 1;
                    let sign = if s % 2 == 1 { neg_mod(1, p) } else { 1 };
                    out.add_term(n, mul_mod(c, sign, p));
                }
                s += 1;
            }
        }
        out
    }

    /// Monomial basis of this class's degree.
    pub fn monomials_in_degree(&self) -> DegreeBasis {
        DegreeBasis::new(&self.group, self.degree)
    }
}

impl fmt::Display for CohoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Monomial, u32)> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        terms.sort_by_key(|(m, _)| display_key(m));
        write_signed_terms(f, self.group.p, terms.into_iter().map(|(m, c)| (m.to_string(), c)))
    }
}

/// Print order: fewer y's first, then higher-indexed y's, then higher x powers.
pub(crate) fn display_key(m: &Monomial) -> (u32, std::cmp::Reverse<u32>, std::cmp::Reverse<Vec<u32>>) {
    (m.ext.count_ones(), std::cmp::Reverse(m.ext), std::cmp::Reverse(m.pows.clone()))
}

/// Write `Σ c·name` with coefficients shown in the symmetric range `(-p/2, p/2]`.
pub(crate) fn write_signed_terms(
    f: &mut fmt::Formatter<'_>,
    p: u32,
    terms: impl Iterator<Item = (String, u32)>,
) -> fmt::Result {
    let mut first = true;
    for (name, c) in terms {
        let (neg, mag) = if c > p / 2 && p > 2 { (true, p - c) } else { (false, c) };
        let body = match (mag, name.as_str()) {
            (1, n) => n.to_string(),
            (k, "1") => k.to_string(),
            (k, n) => format!("{k}*{n}"),
        };
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Inhomogeneous polynomial used while evaluating expressions.
#[derive(Debug, Clone)]
struct PolyCtx {
    group: AbelianPGroupSpec,
    terms: BTreeMap<Monomial, u32>,
}

impl PolyCtx {
    fn zero(group: &AbelianPGroupSpec) -> Self {
        PolyCtx {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn with(&self, terms: BTreeMap<Monomial, u32>) -> Self {
        PolyCtx {
            group: self.group.clone(),
            terms,
        }
    }

    fn into_class(self, zero_degree: usize) -> Result<CohoClass, RingError> {
        let mut degree = None;
        for m in self.terms.keys() {
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(RingError::Inhomogeneous(d, m.degree())),
                _ => {}
            }
        }
        Ok(CohoClass {
            group: self.group,
            degree: degree.unwrap_or(zero_degree),
            terms: self.terms,
        })
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, u32>, m: Monomial, c: u32, p: u32) {
    let e = terms.entry(m.clone()).or_insert(0);
    *e = add_mod(*e, c, p);
    if *e == 0 {
        terms.remove(&m);
    }
}

impl ExprRing for PolyCtx {
    fn from_int(&self, n: i64) -> Result<Self, ExprError> {
        let mut t = BTreeMap::new();
        let c = reduce_i64(n, self.group.p);
        if c != 0 {
            t.insert(Monomial::one(self.group.rank()), c);
        }
        Ok(self.with(t))
    }

    fn symbol(&self, name: &str) -> Result<Self, ExprError> {
        let unknown = || ExprError::UnknownSymbol(name.to_string());
        let (kind, idx) = name.split_at(1);
        let i: usize = idx.parse().map_err(|_| unknown())?;
        if i == 0 || i > self.group.rank() {
            return Err(unknown());
        }
        let class = match kind {
            "x" => CohoClass::x(&self.group, i - 1),
            "y" => CohoClass::y(&self.group, i - 1),
            _ => return Err(unknown()),
        };
        Ok(self.with(class.terms))
    }

    fn add(&self, other: &Self) -> Result<Self, ExprError> {
        let mut t = self.terms.clone();
        for (m, &c) in &other.terms {
            accumulate(&mut t, m.clone(), c, self.group.p);
        }
        Ok(self.with(t))
    }

    fn mul(&self, other: &Self) -> Result<Self, ExprError> {
        let p = self.group.p;
        let mut t = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some((s, m)) = monomial_product(&self.group, a, b) {
                    accumulate(&mut t, m, mul_mod(mul_mod(ca, cb, p), s, p), p);
                }
            }
        }
        Ok(self.with(t))
    }

    fn neg(&self) -> Result<Self, ExprError> {
        let p = self.group.p;
        Ok(self.with(self.terms.iter().map(|(m, &c)| (m.clone(), neg_mod(c, p))).collect()))
    }
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
    fn cup_examples() {
        let s = g(3, &[1, 1]);
        let lhs = c("x1*y2 - x2*y1", &s).cup(&c("y1", &s)).unwrap();
        assert_eq!(lhs, c("-y1*y2*x1", &s));
        assert!(c("y1", &s).cup(&c("y1", &s)).unwrap().is_zero());
        let c2 = g(2, &[1]);
        assert_eq!(c("y1", &c2).cup(&c("y1", &c2)).unwrap(), c("x1", &c2));
        let c4 = g(2, &[2]);
        assert!(c("y1", &c4).cup(&c("y1", &c4)).unwrap().is_zero());
    }

    #[test]
    fn text_form() {
        let s = g(3, &[1, 1]);
        assert_eq!(c("x1*y2 - x2*y1", &s).to_string(), "x1*y2 - x2*y1");
        assert_eq!(c("y1*x1^2*x2", &s).to_string(), "x1^2*x2*y1");
        assert_eq!(c("2*y2*y1", &s).to_string(), "y1*y2");
        assert_eq!(c("0", &s).to_string(), "0");
        assert!(CohoClass::parse("x1 + y1", &s, 2).is_err());
        assert!(CohoClass::parse("y3", &s, 1).is_err());
        assert!(CohoClass::parse("y1*y2*y3", &s, 2).is_err());
    }

    #[test]
    fn bockstein_examples() {
        let s = g(3, &[1, 1]);
        assert_eq!(c("y1", &s).bockstein(), c("x1", &s));
        assert_eq!(c("y1*y2", &s).bockstein(), c("x1*y2 - y1*x2", &s));
        let t = g(3, &[2, 1]);
        assert!(c("y1", &t).bockstein().is_zero());
        assert_eq!(c("x1 + y1*y2", &t).bockstein(), c("-x2*y1", &t));
        for text in ["y1*y2", "x1*y2", "x2*y1*y2", "x1^2*y1"] {
            assert!(c(text, &s).bockstein().bockstein().is_zero());
        }
    }

    #[test]
    fn dims_match_basis_sizes() {
        for spec in [g(3, &[2]), g(3, &[1, 1]), g(2, &[1, 2, 1]), g(5, &[])] {
            let d = dims(&spec, 8);
            for (n, &k) in d.iter().enumerate() {
                assert_eq!(monomial_basis(&spec, n).len(), k, "{spec} degree {n}");
            }
        }
        assert_eq!(dims(&g(3, &[2]), 5), vec![1; 6]);
        assert_eq!(dims(&g(3, &[1, 1]), 5), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(dims(&g(3, &[]), 3), vec![1, 0, 0, 0]);
    }
}
