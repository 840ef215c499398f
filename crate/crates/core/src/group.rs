//! Finite groups as multiplication tables, their group algebras over F_p, and
//! central extensions of finite abelian p-groups by cyclic p-groups built from
//! explicit normalized 2-cocycles.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{add_mod, mul_mod, neg_mod};
use crate::ring::CohoClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("group algebra elements live over different groups or primes")]
    Mismatch,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension class {class} is not a sum of x_i and y_i*y_j monomials")]
    UnsupportedClass { class: String },
    #[error("monomial {monomial} has no lift to Z/{modulus} coefficients")]
    NoLift { monomial: String, modulus: u64 },
    #[error("extension class must have degree {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("{field}: {reason}")]
    Invalid { field: &'static str, reason: String },
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroupTable(order {})", self.order)
    }
}

impl FiniteGroupTable {
    /// Validate a multiplication table. `mul[a * order + b]` is the index of `a*b`.
    pub fn new(order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 || mul.len() != order * order {
            return Err(GroupError::NotAGroup("table size".into()));
        }
        if mul.iter().any(|&x| x >= order) {
            return Err(GroupError::NotAGroup("entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul[e * order + a] == a && mul[a * order + e] == a))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
            if mul[b * order + a] != identity {
                return Err(GroupError::NotAGroup(format!("inverse of {a} is one-sided")));
            }
            inverse[a] = b;
        }
        let g = FiniteGroupTable {
            order,
            mul,
            identity,
            inverse,
        };
        if order <= 64 {
            g.check_associative()?;
        }
        Ok(g)
    }

    pub fn check_associative(&self) -> Result<(), GroupError> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in 0..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with `g^k` stored at index k.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroupTable {
            order: n,
            mul,
            identity: 0,
            inverse: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// Direct product; `(a, b)` is stored at `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[x * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
            }
        }
        FiniteGroupTable {
            order: n,
            mul,
            identity: a.identity * nb + b.identity,
            inverse: (0..n)
                .map(|x| a.inverse[x / nb] * nb + b.inverse[x % nb])
                .collect(),
        }
    }

    /// Left-associated product of cyclic groups, matching [`AbelianPGroupSpec::index`].
    pub fn abelian(spec: &AbelianPGroupSpec) -> Self {
        let mut g = FiniteGroupTable::trivial();
        for i in 0..spec.rank() {
            g = FiniteGroupTable::direct_product(&g, &FiniteGroupTable::cyclic(spec.factor_order(i)));
        }
        g
    }

    /// The same group with element `k` renamed `perm[k]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut mul = vec![0; n * n];
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[perm[a]] = perm[self.inverse[a]];
            for b in 0..n {
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteGroupTable {
            order: n,
            mul,
            identity: perm[self.identity],
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes_with_all(&self, a: usize) -> bool {
        (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    /// Subgroup generated by a set of elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        let mut out = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn commutator_subgroup_order(&self) -> usize {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated_subgroup(&comms).len()
    }

    /// A small generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in 0..self.order {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// True if the order is a power of `p`.
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order;
        while n % p as usize == 0 {
            n /= p as usize;
        }
        n == 1
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `C_{p^{m_1}} ⊕ … ⊕ C_{p^{m_r}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianPGroupSpec {
    pub p: u32,
    pub exponents: Vec<u32>,
}

impl AbelianPGroupSpec {
    pub fn new(p: u32, exponents: Vec<u32>) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if exponents.iter().any(|&m| m == 0) {
            return Err(GroupError::Invalid {
                field: "quotient",
                reason: "every exponent must be at least 1".into(),
            });
        }
        Ok(AbelianPGroupSpec { p, exponents })
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn factor_order(&self, i: usize) -> usize {
        (self.p as usize).pow(self.exponents[i])
    }

    pub fn order(&self) -> usize {
        (0..self.rank()).map(|i| self.factor_order(i)).product()
    }

    /// Whether factor `i` is `C_2`, where `y_i^2 = x_i`.
    pub fn is_order_two(&self, i: usize) -> bool {
        self.p == 2 && self.exponents[i] == 1
    }

    /// Mixed-radix index of a tuple of coordinates, first coordinate most significant.
    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &a)| acc * self.factor_order(i) + a)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut c = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.factor_order(i);
            c[i] = index % n;
            index /= n;
        }
        c
    }

    /// Sub-spec made of the factors in `range`.
    pub fn factors(&self, range: std::ops::Range<usize>) -> AbelianPGroupSpec {
        AbelianPGroupSpec {
            p: self.p,
            exponents: self.exponents[range].to_vec(),
        }
    }
}

impl fmt::Display for AbelianPGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&m| format!("C{}", (self.p as u64).pow(m)))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A central extension `C_{p^m} -> E -> G` described by the mod-p reduction
/// of its class (and, for `m > 1`, the image of the class under the Bockstein).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub p: u32,
    pub kernel_m: u32,
    pub quotient: AbelianPGroupSpec,
    pub xi: CohoClass,
    pub xi_prime: Option<CohoClass>,
}

impl ExtensionSpec {
    pub fn new(
        kernel_m: u32,
        quotient: AbelianPGroupSpec,
        xi: CohoClass,
        xi_prime: Option<CohoClass>,
    ) -> Result<Self, GroupError> {
        let p = quotient.p;
        if kernel_m == 0 {
            return Err(GroupError::Invalid {
                field: "kernel_m",
                reason: "must be at least 1".into(),
            });
        }
        if xi.group() != &quotient {
            return Err(GroupError::Invalid {
                field: "xi",
                reason: "class lives over a different group".into(),
            });
        }
        if xi.degree() != 2 {
            return Err(GroupError::Degree {
                expected: 2,
                found: xi.degree(),
            });
        }
        if let Some(xp) = &xi_prime {
            if xp.degree() != 3 {
                return Err(GroupError::Degree {
                    expected: 3,
                    found: xp.degree(),
                });
            }
            if xp.group() != &quotient {
                return Err(GroupError::Invalid {
                    field: "xi_prime",
                    reason: "class lives over a different group".into(),
                });
            }
        } else if kernel_m > 1 {
            return Err(GroupError::Invalid {
                field: "xi_prime",
                reason: "must be supplied when kernel_m > 1".into(),
            });
        }
        Ok(ExtensionSpec {
            p,
            kernel_m,
            quotient,
            xi,
            xi_prime,
        })
    }

    pub fn kernel_order(&self) -> usize {
        (self.p as usize).pow(self.kernel_m)
    }

    /// The class `d_3(t)`: supplied, or the Bockstein of `xi` when the kernel has order p.
    pub fn xi_prime(&self) -> CohoClass {
        match &self.xi_prime {
            Some(x) => x.clone(),
            None => self.xi.bockstein(),
        }
    }
}

/// The group `E` of an extension, with the kernel generator and quotient map.
#[derive(Debug, Clone)]
pub struct ExtensionGroup {
    pub table: Arc<FiniteGroupTable>,
    /// Element `(c, a)` is stored at `c * |G| + index(a)`.
    pub kernel_order: usize,
    pub quotient_order: usize,
    pub kernel_generator: usize,
}

impl ExtensionGroup {
    pub fn project(&self, e: usize) -> usize {
        e % self.quotient_order
    }

    pub fn kernel_part(&self, e: usize) -> usize {
        e / self.quotient_order
    }

    pub fn element(&self, c: usize, a: usize) -> usize {
        c * self.quotient_order + a
    }
}

/// One normalized cocycle term of the lift of `xi`.
enum CocycleTerm {
    /// `coeff * floor((a_i + b_i) / |C_i|)`
    Carry { i: usize, coeff: u64 },
    /// `coeff * a_i * b_j`
    Bilinear { i: usize, j: usize, coeff: u64 },
}

/// Build `E` as pairs `(c, a)` with `(c,a)(c',a') = (c + c' + f(a,a'), a + a')`.
pub fn build_extension_group(spec: &ExtensionSpec) -> Result<ExtensionGroup, GroupError> {
    let q = &spec.quotient;
    let modulus = (spec.p as u64).pow(spec.kernel_m);
    let mut terms = Vec::new();
    for (mono, &c) in spec.xi.terms() {
        let ys: Vec<usize> = (0..q.rank()).filter(|&i| mono.has_y(i)).collect();
        let xs: Vec<usize> = (0..q.rank()).filter(|&i| mono.pows[i] > 0).collect();
        match (xs.as_slice(), ys.as_slice()) {
            ([i], []) if mono.pows[*i] == 1 => terms.push(CocycleTerm::Carry {
                i: *i,
                coeff: c as u64,
            }),
            ([], [i, j]) => {
                let k = (spec.p as u64).pow(q.exponents[*i].min(q.exponents[*j]));
                if modulus > k {
                    return Err(GroupError::NoLift {
                        monomial: mono.to_string(),
                        modulus,
                    });
                }
                terms.push(CocycleTerm::Bilinear {
                    i: *i,
                    j: *j,
                    coeff: c as u64,
                })
            }
            _ => {
                return Err(GroupError::UnsupportedClass {
                    class: spec.xi.to_string(),
                })
            }
        }
    }
    let gorder = q.order();
    let korder = modulus as usize;
    let coords: Vec<Vec<usize>> = (0..gorder).map(|a| q.coords(a)).collect();
    let cocycle = |a: usize, b: usize| -> u64 {
        let (ca, cb) = (&coords[a], &coords[b]);
        terms
            .iter()
            .map(|t| match *t {
                CocycleTerm::Carry { i, coeff } => {
                    coeff * ((ca[i] + cb[i]) / q.factor_order(i)) as u64
                }
                CocycleTerm::Bilinear { i, j, coeff } => coeff * (ca[i] * cb[j]) as u64,
            })
            .sum::<u64>()
            % modulus
    };
    let gtab = FiniteGroupTable::abelian(q);
    let n = gorder * korder;
    let mut mul = vec![0; n * n];
    for x in 0..n {
        let (cx, ax) = (x / gorder, x % gorder);
        for y in 0..n {
            let (cy, ay) = (y / gorder, y % gorder);
            let c = (cx as u64 + cy as u64 + cocycle(ax, ay)) % modulus;
            mul[x * n + y] = c as usize * gorder + gtab.mul(ax, ay);
        }
    }
    let table = FiniteGroupTable::new(n, mul)?;
    Ok(ExtensionGroup {
        table: Arc::new(table),
        kernel_order: korder,
        quotient_order: gorder,
        kernel_generator: if korder > 1 { gorder } else { 0 },
    })
}

/// An element of F_p[G], stored sparsely.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    group: Arc<FiniteGroupTable>,
    p: u32,
    coeffs: BTreeMap<usize, u32>,
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(g, c)| format!("{c}*g{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement {}

fn same_group(a: &Arc<FiniteGroupTable>, b: &Arc<FiniteGroupTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<FiniteGroupTable>, p: u32) -> Self {
        GroupAlgebraElement {
            group: Arc::clone(group),
            p,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_element(group: &Arc<FiniteGroupTable>, p: u32, g: usize) -> Self {
        Self::from_terms(group, p, &[(g, 1)])
    }

    pub fn one(group: &Arc<FiniteGroupTable>, p: u32) -> Self {
        Self::from_element(group, p, group.identity())
    }

    /// Sum of `c * g` over the given pairs, with repeated elements combined.
    pub fn from_terms(group: &Arc<FiniteGroupTable>, p: u32, terms: &[(usize, i64)]) -> Self {
        let mut e = Self::zero(group, p);
        for &(g, c) in terms {
            e.add_term(g, crate::linalg::reduce_i64(c, p));
        }
        e
    }

    /// The norm element: sum of all group elements.
    pub fn norm(group: &Arc<FiniteGroupTable>, p: u32) -> Self {
        let terms: Vec<(usize, i64)> = (0..group.order()).map(|g| (g, 1)).collect();
        Self::from_terms(group, p, &terms)
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.group
    }
    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs.iter().map(|(&g, &c)| (g, c))
    }
    pub fn coeff(&self, g: usize) -> u32 {
        self.coeffs.get(&g).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, g: usize, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(g).or_insert(0);
        *e = add_mod(*e, c, self.p);
        if *e == 0 {
            self.coeffs.remove(&g);
        }
    }

    pub fn augmentation(&self) -> u32 {
        self.coeffs.values().fold(0, |a, &c| add_mod(a, c, self.p))
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(&self.group, self.p);
        for (g, x) in self.terms() {
            out.add_term(g, mul_mod(x, c, self.p));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.group, self.p);
        for (g, x) in self.terms() {
            out.add_term(g, neg_mod(x, self.p));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let mut out = Self::zero(&self.group, self.p);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(self.group.mul(a, b), mul_mod(x, y, self.p));
            }
        }
        Ok(out)
    }

    /// `g * self`
    pub fn left_translate(&self, g: usize) -> Self {
        let mut out = Self::zero(&self.group, self.p);
        for (a, x) in self.terms() {
            out.add_term(self.group.mul(g, a), x);
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if self.p != other.p || !same_group(&self.group, &other.group) {
            Err(GroupError::Mismatch)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CohoClass;

    fn ext(p: u32, km: u32, q: &[u32], xi: &str) -> ExtensionSpec {
        let spec = AbelianPGroupSpec::new(p, q.to_vec()).unwrap();
        let xi = CohoClass::parse(xi, &spec, 2).unwrap();
        let xi_prime = if km > 1 { Some(CohoClass::zero(&spec, 3)) } else { None };
        ExtensionSpec::new(km, spec, xi, xi_prime).unwrap()
    }

    #[test]
    fn group_algebra_products() {
        let g = Arc::new(FiniteGroupTable::cyclic(3));
        let one = GroupAlgebraElement::one(&g, 3);
        assert_eq!(one.multiply(&one).unwrap(), one);
        let gm1 = GroupAlgebraElement::from_terms(&g, 3, &[(1, 1), (0, -1)]);
        let norm = GroupAlgebraElement::norm(&g, 3);
        assert!(gm1.multiply(&norm).unwrap().is_zero());

        let c2 = Arc::new(FiniteGroupTable::cyclic(2));
        let a = GroupAlgebraElement::from_terms(&c2, 2, &[(0, 1), (1, 1)]);
        // (1+g)^2 = 1 + 2g + g^2 = 2 + 2g = 0 mod 2
        assert!(a.multiply(&a).unwrap().is_zero());

        let other = Arc::new(FiniteGroupTable::cyclic(5));
        let b = GroupAlgebraElement::one(&other, 3);
        assert_eq!(one.multiply(&b).unwrap_err(), GroupError::Mismatch);
    }

    #[test]
    fn augmentation_is_multiplicative() {
        let g = Arc::new(FiniteGroupTable::direct_product(
            &FiniteGroupTable::cyclic(3),
            &FiniteGroupTable::cyclic(9),
        ));
        for s in 0..20i64 {
            let a = GroupAlgebraElement::from_terms(&g, 3, &[(s as usize % 27, s), (5, 2), (11, 1)]);
            let b = GroupAlgebraElement::from_terms(&g, 3, &[(7, 1 + s), ((3 * s) as usize % 27, 2)]);
            let prod = a.multiply(&b).unwrap();
            assert_eq!(prod.augmentation(), mul_mod(a.augmentation(), b.augmentation(), 3));
        }
    }

    #[test]
    fn split_extension_is_elementary_abelian() {
        let e = build_extension_group(&ext(3, 1, &[1, 1], "0")).unwrap();
        assert_eq!(e.table.order(), 27);
        assert!(e.table.is_abelian());
        assert_eq!(e.table.exponent(), 3);
    }

    #[test]
    fn extraspecial_exponent_three() {
        let e = build_extension_group(&ext(3, 1, &[1, 1], "y1*y2")).unwrap();
        let t = &e.table;
        assert_eq!(t.order(), 27);
        assert!(!t.is_abelian());
        assert_eq!(t.exponent(), 3);
        assert_eq!(t.commutator_subgroup_order(), 3);
        assert!(t.commutes_with_all(e.kernel_generator));
        t.check_associative().unwrap();
    }

    #[test]
    fn metacyclic_order_27() {
        let e = build_extension_group(&ext(3, 1, &[1, 1], "x1 + y1*y2")).unwrap();
        let t = &e.table;
        assert!(!t.is_abelian());
        assert_eq!(t.exponent(), 9);
        // metacyclic: a cyclic normal subgroup of order 9 with cyclic quotient
        let g9 = (0..27).find(|&a| t.element_order(a) == 9).unwrap();
        assert_eq!(t.generated_subgroup(&[g9]).len(), 9);
        assert!(t.commutes_with_all(e.kernel_generator));
    }

    #[test]
    fn carry_class_gives_cyclic_groups() {
        let e = build_extension_group(&ext(3, 1, &[1, 2], "x1")).unwrap();
        assert!(e.table.is_abelian());
        assert_eq!(e.table.exponent(), 9);
        let c4 = build_extension_group(&ext(2, 1, &[1], "x1")).unwrap();
        assert_eq!(c4.table.exponent(), 4);
    }

    #[test]
    fn rejects_malformed_classes() {
        let spec = AbelianPGroupSpec::new(3, vec![1, 1, 1]).unwrap();
        let xi = CohoClass::parse("x1^0*y1*y2 + x1", &spec, 2).unwrap();
        assert!(ExtensionSpec::new(1, spec.clone(), xi, None).is_ok());
        let bad = CohoClass::parse("y1*y2*y3", &spec, 3).unwrap();
        assert!(matches!(
            ExtensionSpec::new(1, spec.clone(), bad, None),
            Err(GroupError::Degree { .. })
        ));
        // y1*y2 over C3+C3 cannot come from Z/9 coefficients
        let q = AbelianPGroupSpec::new(3, vec![1, 1]).unwrap();
        let xi = CohoClass::parse("y1*y2", &q, 2).unwrap();
        let s = ExtensionSpec::new(2, q.clone(), xi, Some(CohoClass::zero(&q, 3))).unwrap();
        assert!(matches!(build_extension_group(&s), Err(GroupError::NoLift { .. })));
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = FiniteGroupTable::cyclic(4);
        let h = g.relabel(&[2, 0, 3, 1]);
        assert_eq!(h.identity(), 2);
        assert_eq!(h.exponent(), 4);
        h.check_associative().unwrap();
    }
}
