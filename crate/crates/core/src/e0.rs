//! The double complex `E_0^{i,j} = Hom_E(P_i ⊗ Q_j, F_p)` built from bar
//! resolutions `P` over `G` and `Q` over `E`, its products, and the cochain
//! ladders that represent the low differentials.
//!
//! A basis of `P_i ⊗ Q_j` as a free `E`-module is given by the pairs
//! `(g_0, ..., g_i) ⊗ (1, e_1, ..., e_j)`; a cochain is its vector of values
//! on these representatives, and its value on any other tuple pair is found by
//! translating the first `E`-entry back to the identity.

use rand::Rng;
use thiserror::Error;

use crate::group::{build_extension_group, ExtensionGroup, ExtensionSpec, FiniteGroupTable, GroupError};
use crate::linalg::{add_mod, kernel_basis, mul_mod, neg_mod, reduce_i64, solve_linear, EchelonBasis, FpMatrix};
use crate::ring::{CohoClass, Monomial};

#[derive(Debug, Error)]
pub enum E0Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("double complex would need {needed} basis elements, budget is {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("bidegree ({i},{j}) is outside the stored range (total degree <= {bound})")]
    OutOfRange { i: usize, j: usize, bound: usize },
    #[error("cochains live in different bidegrees: ({0},{1}) vs ({2},{3})")]
    Bidegree(usize, usize, usize, usize),
    #[error("no solution for {0}")]
    Unsolvable(&'static str),
}

/// Default cap on the number of basis elements of a single bidegree.
pub const DEFAULT_E0_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    /// `μ(φ⊗θ)(1⊗τ⊗1)(Δ_0^P⊗Δ_0^Q)`
    Cup,
    /// `μ(φ⊗θ)(1⊗τ⊗1)(τ⊗1⊗1)(Δ_0^P⊗Δ_0^Q)`
    Wedge,
    /// `μ(φ⊗θ)(1⊗τ⊗1)(τ⊗τ)(Δ_0^P⊗Δ_0^Q)`
    Twist,
    /// `μ(φ⊗θ)(1⊗τ⊗1)(Δ_1^P⊗Δ_0^Q)`, bidegree shift `(-1, 0)`
    Cup10,
    /// `(-1)^i μ(φ⊗θ)(1⊗τ⊗1)(τ⊗1⊗1)(Δ_0^P⊗Δ_1^Q)`, bidegree shift `(0, -1)`
    Cup01,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    pub koszul_evaluation: bool,
    pub steenrod_negated: bool,
    pub cup01_map_sign: bool,
}

pub const CONVENTIONS: Conventions = Conventions {
    koszul_evaluation: false,
    steenrod_negated: false,
    cup01_map_sign: false,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E0Cochain {
    pub i: usize,
    pub j: usize,
    pub values: Vec<u32>,
}

impl E0Cochain {
    pub fn degree(&self) -> usize {
        self.i + self.j
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }
}

/// The double complex of an extension, truncated at total degree `bound`.
pub struct DoubleComplex {
    pub spec: ExtensionSpec,
    pub ext: ExtensionGroup,
    pub quotient: FiniteGroupTable,
    pub p: u32,
    pub bound: usize,
    pub conventions: Conventions,
    go: usize,
    eo: usize,
    proj: Vec<usize>,
}

fn sign(odd: bool, p: u32) -> u32 {
    if odd {
        p - 1
    } else {
        1
    }
}

fn parity(n: usize) -> bool {
    n % 2 == 1
}

impl DoubleComplex {
    pub fn new(spec: &ExtensionSpec, bound: usize) -> Result<Self, E0Error> {
        Self::with_budget(spec, bound, DEFAULT_E0_BUDGET)
    }

    pub fn with_budget(spec: &ExtensionSpec, bound: usize, budget: usize) -> Result<Self, E0Error> {
        let ext = build_extension_group(spec)?;
        let quotient = FiniteGroupTable::abelian(&spec.quotient);
        let (go, eo) = (quotient.order(), ext.table.order());
        let proj = (0..eo).map(|e| ext.project(e)).collect();
        let dc = DoubleComplex {
            spec: spec.clone(),
            ext,
            quotient,
            p: spec.p,
            bound,
            conventions: CONVENTIONS,
            go,
            eo,
            proj,
        };
        let needed = (0..=bound).map(|j| dc.dim(bound - j, j)).max().unwrap_or(0);
        if needed > budget {
            return Err(E0Error::Budget { needed, budget });
        }
        Ok(dc)
    }

    /// `dim E_0^{i,j} = |G|^{i+1} |E|^j`.
    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.go.pow(i as u32 + 1) * self.eo.pow(j as u32)
    }

    fn check(&self, i: usize, j: usize) -> Result<(), E0Error> {
        if i + j > self.bound {
            return Err(E0Error::OutOfRange { i, j, bound: self.bound });
        }
        Ok(())
    }

    pub fn zero(&self, i: usize, j: usize) -> E0Cochain {
        E0Cochain {
            i,
            j,
            values: vec![0; self.dim(i, j)],
        }
    }

    /// The unit: the augmentation at bidegree `(0,0)`.
    pub fn unit(&self) -> E0Cochain {
        E0Cochain {
            i: 0,
            j: 0,
            values: vec![1; self.dim(0, 0)],
        }
    }

    pub fn random<R: Rng>(&self, i: usize, j: usize, rng: &mut R) -> E0Cochain {
        E0Cochain {
            i,
            j,
            values: (0..self.dim(i, j)).map(|_| rng.gen_range(0..self.p)).collect(),
        }
    }

    /// The tuples `(g_0..g_i)` and `(1, e_1..e_j)` of a representative.
    fn decode(&self, mut idx: usize, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        let mut es = vec![0; j + 1];
        for k in (1..=j).rev() {
            es[k] = idx % self.eo;
            idx /= self.eo;
        }
        es[0] = self.ext.table.identity();
        let mut gs = vec![0; i + 1];
        for k in (0..=i).rev() {
            gs[k] = idx % self.go;
            idx /= self.go;
        }
        (gs, es)
    }

    /// Index of the representative of the orbit of `gs ⊗ es`.
    fn index<I, J>(&self, gs: I, es: J) -> usize
    where
        I: IntoIterator<Item = usize>,
        J: IntoIterator<Item = usize>,
    {
        let mut es = es.into_iter();
        let e0 = es.next().expect("nonempty tuple");
        let inv = self.ext.table.inv(e0);
        let h = self.proj[inv];
        let mut idx = 0;
        for g in gs {
            idx = idx * self.go + self.quotient.mul(h, g);
        }
        for e in es {
            idx = idx * self.eo + self.ext.table.mul(inv, e);
        }
        idx
    }

    fn eval<I, J>(&self, phi: &E0Cochain, gs: I, es: J) -> u32
    where
        I: IntoIterator<Item = usize>,
        J: IntoIterator<Item = usize>,
    {
        phi.values[self.index(gs, es)]
    }

    /// `d_0`: the adjoint of `(-1)^i 1⊗d^Q`, from `(i,j)` to `(i,j+1)`.
    pub fn d0(&self, phi: &E0Cochain) -> Result<E0Cochain, E0Error> {
        let (i, j) = (phi.i, phi.j + 1);
        self.check(i, j)?;
        let p = self.p;
        let mut out = self.zero(i, j);
        for (x, v) in out.values.iter_mut().enumerate() {
            let (gs, es) = self.decode(x, i, j);
            let mut s = 0;
            for k in 0..=j {
                let val = self.eval(phi, gs.iter().copied(), skip(&es, k));
                s = add_mod(s, mul_mod(val, sign(parity(k), p), p), p);
            }
            *v = mul_mod(s, sign(parity(i), p), p);
        }
        Ok(out)
    }

    /// `d_1`: induced by the differential of `P`, from `(i,j)` to `(i+1,j)`.
    pub fn d1(&self, phi: &E0Cochain) -> Result<E0Cochain, E0Error> {
        let (i, j) = (phi.i + 1, phi.j);
        self.check(i, j)?;
        let p = self.p;
        let mut out = self.zero(i, j);
        for (x, v) in out.values.iter_mut().enumerate() {
            let (gs, es) = self.decode(x, i, j);
            let mut s = 0;
            for k in 0..=i {
                let val = self.eval(phi, skip(&gs, k), es.iter().copied());
                s = add_mod(s, mul_mod(val, sign(parity(k), p), p), p);
            }
            *v = s;
        }
        Ok(out)
    }

    /// The matrix of `d_0` from `(i,j)` to `(i,j+1)`.
    pub fn d0_matrix(&self, i: usize, j: usize) -> Result<FpMatrix, E0Error> {
        self.check(i, j + 1)?;
        let p = self.p;
        let mut m = FpMatrix::zeros(p, self.dim(i, j + 1), self.dim(i, j));
        for x in 0..self.dim(i, j + 1) {
            let (gs, es) = self.decode(x, i, j + 1);
            for k in 0..=j + 1 {
                let col = self.index(gs.iter().copied(), skip(&es, k));
                m.add_to(x, col, sign(parity(k) ^ parity(i), p));
            }
        }
        Ok(m)
    }

    /// A random element of the kernel of `d_0` on `(i,j)`.
    pub fn random_d0_cocycle<R: Rng>(&self, i: usize, j: usize, rng: &mut R) -> Result<E0Cochain, E0Error> {
        let basis = kernel_basis(&self.d0_matrix(i, j)?);
        let mut out = self.zero(i, j);
        for v in &basis {
            let c = rng.gen_range(0..self.p);
            for (a, &b) in out.values.iter_mut().zip(v) {
                *a = add_mod(*a, mul_mod(c, b, self.p), self.p);
            }
        }
        Ok(out)
    }

    /// The matrix of `d_1` from `(i,j)` to `(i+1,j)`.
    pub fn d1_matrix(&self, i: usize, j: usize) -> Result<FpMatrix, E0Error> {
        self.check(i + 1, j)?;
        let p = self.p;
        let mut m = FpMatrix::zeros(p, self.dim(i + 1, j), self.dim(i, j));
        for x in 0..self.dim(i + 1, j) {
            let (gs, es) = self.decode(x, i + 1, j);
            for k in 0..=i + 1 {
                let col = self.index(skip(&gs, k), es.iter().copied());
                m.add_to(x, col, sign(parity(k), p));
            }
        }
        Ok(m)
    }

    pub fn product(&self, phi: &E0Cochain, theta: &E0Cochain, kind: ProductKind) -> Result<Option<E0Cochain>, E0Error> {
        let (a, b, c, d) = (phi.i, phi.j, theta.i, theta.j);
        let (i, j) = match kind {
            ProductKind::Cup | ProductKind::Wedge | ProductKind::Twist => (a + c, b + d),
            ProductKind::Cup10 => match (a + c).checked_sub(1) {
                Some(i) if a >= 1 && c >= 1 => (i, b + d),
                _ => return Ok(None),
            },
            ProductKind::Cup01 => match (b + d).checked_sub(1) {
                Some(j) if b >= 1 && d >= 1 => (a + c, j),
                _ => return Ok(None),
            },
        };
        self.check(i, j)?;
        let p = self.p;
        let conv = self.conventions;
        let koszul = conv.koszul_evaluation && parity((c + d) * (a + b));
        let mut out = self.zero(i, j);
        for (x, v) in out.values.iter_mut().enumerate() {
            let (gs, es) = self.decode(x, i, j);
            let value = match kind {
                ProductKind::Cup => {
                    let f = self.eval(phi, gs[..=a].iter().copied(), es[..=b].iter().copied());
                    let t = self.eval(theta, gs[a..].iter().copied(), es[b..].iter().copied());
                    mul_mod(mul_mod(f, t, p), sign(koszul ^ parity(c * b), p), p)
                }
                ProductKind::Wedge => {
                    let f = self.eval(phi, gs[c..].iter().copied(), es[..=b].iter().copied());
                    let t = self.eval(theta, gs[..=c].iter().copied(), es[b..].iter().copied());
                    mul_mod(mul_mod(f, t, p), sign(koszul ^ parity(c * a + c * b), p), p)
                }
                ProductKind::Twist => {
                    let f = self.eval(phi, gs[c..].iter().copied(), es[d..].iter().copied());
                    let t = self.eval(theta, gs[..=c].iter().copied(), es[..=d].iter().copied());
                    mul_mod(mul_mod(f, t, p), sign(koszul ^ parity(c * a + d * b + c * b), p), p)
                }
                ProductKind::Cup10 => {
                    let mut s = 0;
                    for k in 0..=i - c {
                        let l = k + c;
                        let front = gs[..=k].iter().chain(&gs[l..]).copied();
                        let f = self.eval(phi, front, es[..=b].iter().copied());
                        if f == 0 {
                            continue;
                        }
                        let t = self.eval(theta, gs[k..=l].iter().copied(), es[b..].iter().copied());
                        let odd = steenrod_odd(k, l, i) ^ conv.steenrod_negated;
                        s = add_mod(s, mul_mod(mul_mod(f, t, p), sign(odd, p), p), p);
                    }
                    mul_mod(s, sign(koszul ^ parity(c * b), p), p)
                }
                ProductKind::Cup01 => {
                    let mut s = 0;
                    for k in 0..=j - d {
                        let l = k + d;
                        let front = es[..=k].iter().chain(&es[l..]).copied();
                        let f = self.eval(phi, gs[c..].iter().copied(), front);
                        if f == 0 {
                            continue;
                        }
                        let t = self.eval(theta, gs[..=c].iter().copied(), es[k..=l].iter().copied());
                        let odd = steenrod_odd(k, l, j) ^ conv.steenrod_negated;
                        s = add_mod(s, mul_mod(mul_mod(f, t, p), sign(odd, p), p), p);
                    }
                    let odd = koszul ^ parity(c * a + c * b) ^ parity(i) ^ (conv.cup01_map_sign && parity(i));
                    mul_mod(s, sign(odd, p), p)
                }
            };
            *v = value;
        }
        Ok(Some(out))
    }

    /// Cup product that must land inside the stored range.
    pub fn cup(&self, phi: &E0Cochain, theta: &E0Cochain) -> Result<E0Cochain, E0Error> {
        Ok(self.product(phi, theta, ProductKind::Cup)?.expect("cup always has a bidegree"))
    }

    /// `φ + c·θ` (or `φ` alone when `θ` is absent), both in the bidegree of `φ`.
    pub fn axpy(&self, phi: &mut E0Cochain, c: i64, theta: Option<&E0Cochain>) -> Result<(), E0Error> {
        let Some(theta) = theta else { return Ok(()) };
        if (phi.i, phi.j) != (theta.i, theta.j) {
            return Err(E0Error::Bidegree(phi.i, phi.j, theta.i, theta.j));
        }
        let c = reduce_i64(c, self.p);
        for (a, &b) in phi.values.iter_mut().zip(&theta.values) {
            *a = add_mod(*a, mul_mod(c, b, self.p), self.p);
        }
        Ok(())
    }

    /// Solve `d_0(x) = target` for `x` in bidegree `(i, j)`.
    fn solve_d0(&self, i: usize, j: usize, target: &E0Cochain, what: &'static str) -> Result<E0Cochain, E0Error> {
        let m = self.d0_matrix(i, j)?;
        let values = solve_linear(&m, &target.values).ok_or(E0Error::Unsolvable(what))?;
        Ok(E0Cochain { i, j, values })
    }

    /// A `d_0`-cocycle in column 0 whose restriction to kernel tuples
    /// `(1) ⊗ (1, c_1, c_1c_2, ...)` is the given inhomogeneous cochain on `C`.
    fn column_zero_cocycle(&self, j: usize, on_kernel: impl Fn(&[usize]) -> u32, what: &'static str) -> Result<E0Cochain, E0Error> {
        let d = self.d0_matrix(0, j)?;
        let n = self.dim(0, j);
        let korder = self.ext.kernel_order;
        let z = |k: usize| self.ext.element(k, self.quotient.identity());
        let mut rows = d.to_rows();
        let mut rhs = vec![0; rows.len()];
        let mut exps = vec![0usize; j];
        loop {
            let mut partial = 0;
            let mut es = vec![z(0)];
            for &e in &exps {
                partial = (partial + e) % korder;
                es.push(z(partial));
            }
            let idx = self.index([self.quotient.identity()], es);
            let mut row = vec![0; n];
            row[idx] = 1;
            rows.push(row);
            rhs.push(on_kernel(&exps) % self.p);
            let mut k = 0;
            while k < j {
                exps[k] += 1;
                if exps[k] < korder {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == j {
                break;
            }
        }
        let m = FpMatrix::from_rows(self.p, n, &rows);
        let values = solve_linear(&m, &rhs).ok_or(E0Error::Unsolvable(what))?;
        Ok(E0Cochain { i: 0, j, values })
    }

    /// The inhomogeneous cochain `f(a_1..a_i) = φ((1, a_1, a_1a_2, ...) ⊗ (1))` of a row-0 cochain.
    pub fn row_zero_restriction(&self, phi: &E0Cochain) -> Vec<u32> {
        assert_eq!(phi.j, 0);
        let g = &self.quotient;
        let n = phi.i;
        let mut out = vec![0; self.go.pow(n as u32)];
        for (idx, v) in out.iter_mut().enumerate() {
            let args = digits(idx, n, self.go);
            let mut gs = vec![g.identity()];
            for &a in &args {
                gs.push(g.mul(*gs.last().unwrap(), a));
            }
            *v = self.eval(phi, gs, [self.ext.table.identity()]);
        }
        out
    }
}

fn skip(v: &[usize], k: usize) -> impl Iterator<Item = usize> + '_ {
    v.iter().enumerate().filter(move |&(m, _)| m != k).map(|(_, &x)| x)
}

fn digits(mut idx: usize, n: usize, base: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % base;
        idx /= base;
    }
    out
}

/// Parity of `f(i,j,n) = n + (n-i-1)(j-i-1)` in the Steenrod cup-1 formula.
fn steenrod_odd(i: usize, j: usize, n: usize) -> bool {
    let t = (n as i64 - i as i64 - 1) * (j as i64 - i as i64 - 1);
    (n as i64 + t).rem_euclid(2) == 1
}

/// The four residuals of the coboundary formulas for the cup-1 products.
pub fn coboundary_residuals(dc: &DoubleComplex, phi: &E0Cochain, theta: &E0Cochain) -> Result<[usize; 4], E0Error> {
    use ProductKind::*;
    let fdeg = phi.degree() as i64;
    let sf = if fdeg % 2 == 1 { -1 } else { 1 };
    let sft = if (phi.degree() * theta.degree()) % 2 == 1 { -1 } else { 1 };
    let (d0f, d0t) = (dc.d0(phi)?, dc.d0(theta)?);
    let (d1f, d1t) = (dc.d1(phi)?, dc.d1(theta)?);
    let cup = dc.product(phi, theta, Cup)?;
    let wedge = dc.product(phi, theta, Wedge)?;
    let rev = dc.product(theta, phi, Cup)?;
    let mut out = [0; 4];
    // bidegree of each residual
    let (a, b, c, d) = (phi.i, phi.j, theta.i, theta.j);
    let targets = [
        (a + c).checked_sub(1).map(|i| (i, b + d + 1)),
        Some((a + c, b + d)),
        Some((a + c, b + d)),
        (b + d).checked_sub(1).map(|j| (a + c + 1, j)),
    ];
    for (n, target) in targets.iter().enumerate() {
        let Some((ti, tj)) = *target else { continue };
        let mut r = dc.zero(ti, tj);
        let (kind, dphi, dtheta) = match n {
            0 => (Cup10, &d0f, &d0t),
            1 => (Cup10, &d1f, &d1t),
            2 => (Cup01, &d0f, &d0t),
            _ => (Cup01, &d1f, &d1t),
        };
        if let Some(x) = dc.product(phi, theta, kind)? {
            let dx = if n % 2 == 0 { dc.d0(&x)? } else { dc.d1(&x)? };
            dc.axpy(&mut r, 1, Some(&dx))?;
        }
        dc.axpy(&mut r, 1, dc.product(dphi, theta, kind)?.as_ref())?;
        dc.axpy(&mut r, sf, dc.product(phi, dtheta, kind)?.as_ref())?;
        match n {
            1 => {
                dc.axpy(&mut r, -1, cup.as_ref())?;
                dc.axpy(&mut r, 1, wedge.as_ref())?;
            }
            2 => {
                dc.axpy(&mut r, -1, wedge.as_ref())?;
                dc.axpy(&mut r, sft, rev.as_ref())?;
            }
            _ => {}
        }
        out[n] = r.nonzero_count();
    }
    Ok(out)
}

/// The cochains `u, t, θ, ξ, η_1, η_2, ξ'` of the low differentials.
#[derive(Debug, Clone)]
pub struct LadderData {
    pub u: E0Cochain,
    pub t: E0Cochain,
    pub theta: E0Cochain,
    pub xi: E0Cochain,
    pub eta1: E0Cochain,
    pub eta2: E0Cochain,
    pub xi_prime: E0Cochain,
}

pub fn build_ladder(dc: &DoubleComplex) -> Result<LadderData, E0Error> {
    build_ladder_with(dc, None::<&mut rand_chacha::ChaCha8Rng>)
}

/// Like [`build_ladder`], but when `rng` is given `θ` and `η_2` are shifted by
/// random `d_0`-cocycles, which changes `ξ` and `ξ'` as cochains but not the
/// ladder equations.
pub fn build_ladder_with<R: Rng>(dc: &DoubleComplex, mut rng: Option<&mut R>) -> Result<LadderData, E0Error> {
    let korder = dc.ext.kernel_order;
    let u = dc.column_zero_cocycle(1, |e| e[0] as u32, "u")?;
    let t = dc.column_zero_cocycle(2, |e| ((e[0] + e[1]) / korder) as u32, "t")?;
    let mut theta = dc.solve_d0(1, 0, &dc.d1(&u)?, "theta")?;
    if let Some(rng) = rng.as_deref_mut() {
        dc.axpy(&mut theta, 1, Some(&dc.random_d0_cocycle(1, 0, rng)?))?;
    }
    let xi = dc.d1(&theta)?;
    // η1 must be chosen so that d1(η1) is d0-exact: solve for (η1, η2) jointly
    let (a, b) = (dc.dim(1, 1), dc.dim(2, 0));
    let d0a = dc.d0_matrix(1, 1)?;
    let d1a = dc.d1_matrix(1, 1)?;
    let d0b = dc.d0_matrix(2, 0)?;
    let rows_top = d0a.rows();
    let mut m = FpMatrix::zeros(dc.p, rows_top + d1a.rows(), a + b);
    for r in 0..rows_top {
        for c in 0..a {
            m.set(r, c, d0a.get(r, c));
        }
    }
    for r in 0..d1a.rows() {
        for c in 0..a {
            m.set(rows_top + r, c, d1a.get(r, c));
        }
        for c in 0..b {
            m.set(rows_top + r, a + c, neg_mod(d0b.get(r, c), dc.p));
        }
    }
    let mut rhs = dc.d1(&t)?.values;
    rhs.resize(m.rows(), 0);
    let sol = solve_linear(&m, &rhs).ok_or(E0Error::Unsolvable("eta1, eta2"))?;
    let eta1 = E0Cochain { i: 1, j: 1, values: sol[..a].to_vec() };
    let mut eta2 = E0Cochain { i: 2, j: 0, values: sol[a..].to_vec() };
    if let Some(rng) = rng.as_deref_mut() {
        dc.axpy(&mut eta2, 1, Some(&dc.random_d0_cocycle(2, 0, rng)?))?;
    }
    let xi_prime = dc.d1(&eta2)?;
    Ok(LadderData {
        u,
        t,
        theta,
        xi,
        eta1,
        eta2,
        xi_prime,
    })
}

/// Residual counts for each ladder equation, in order
/// `d0 u, d1 u - d0 θ, d0 ξ, d1 ξ, d0 t, d1 t - d0 η1, d1 η1 - d0 η2, d0 ξ', d1 ξ'`.
pub fn ladder_residuals(dc: &DoubleComplex, l: &LadderData) -> Result<Vec<usize>, E0Error> {
    let diff = |a: E0Cochain, b: E0Cochain| -> Result<usize, E0Error> {
        let mut a = a;
        dc.axpy(&mut a, -1, Some(&b))?;
        Ok(a.nonzero_count())
    };
    let mut out = vec![
        dc.d0(&l.u)?.nonzero_count(),
        diff(dc.d1(&l.u)?, dc.d0(&l.theta)?)?,
        dc.d0(&l.xi)?.nonzero_count(),
    ];
    out.push(if dc.bound >= 3 { dc.d1(&l.xi)?.nonzero_count() } else { 0 });
    out.push(dc.d0(&l.t)?.nonzero_count());
    out.push(diff(dc.d1(&l.t)?, dc.d0(&l.eta1)?)?);
    out.push(diff(dc.d1(&l.eta1)?, dc.d0(&l.eta2)?)?);
    out.push(if dc.bound >= 4 { dc.d0(&l.xi_prime)?.nonzero_count() } else { 0 });
    out.push(if dc.bound >= 4 { dc.d1(&l.xi_prime)?.nonzero_count() } else { 0 });
    Ok(out)
}

/// `η_1(n) .. η_4(n)` built by the recursion in `n`.
#[derive(Debug, Clone)]
pub struct EtaFamily {
    pub n: usize,
    pub eta: [Option<E0Cochain>; 4],
    pub t_power: E0Cochain,
}

/// Residual counts of
/// `d1 t^n = d0 η1(n)`, `d1 η1(n) = d0 η2(n)`,
/// `d1 η2(n) = n t^{n-1} ξ' + d0 η3(n)`, `d1 η3(n) = n η1(n-1) ξ' + d0 η4(n)`.
pub fn eta_family(dc: &DoubleComplex, l: &LadderData, n: usize) -> Result<(EtaFamily, [usize; 4]), E0Error> {
    use ProductKind::*;
    assert!(n >= 1);
    // fam[k] = (t^k, η_1(k), .., η_4(k)), with η_i(0) = 0
    let mut fams: Vec<EtaFamily> = vec![EtaFamily {
        n: 0,
        eta: [None, None, None, None],
        t_power: dc.unit(),
    }];
    let xp = &l.xi_prime;
    for k in 1..=n {
        let prev = &fams[k - 1];
        let t_power = dc.cup(&prev.t_power, &l.t)?;
        let eta = if k == 1 {
            [Some(l.eta1.clone()), Some(l.eta2.clone()), None, None]
        } else {
            let tk1 = &prev.t_power;
            let tk2 = &fams[k - 2].t_power;
            let pp = &fams[k - 2];
            let m = (k - 1) as i64;
            let opt_cup = |a: &Option<E0Cochain>, b: &E0Cochain| -> Result<Option<E0Cochain>, E0Error> {
                a.as_ref().map(|a| dc.cup(a, b)).transpose()
            };
            // absent when the cup-1 product vanishes for bidegree reasons
            let x10_t = dc.product(xp, &l.t, Cup10)?;
            let x10_e1 = dc.product(xp, &l.eta1, Cup10)?;
            let x10_e2 = dc.product(xp, &l.eta2, Cup10)?;
            let x01_t = dc.product(xp, &l.t, Cup01)?;
            let x01_e1 = dc.product(xp, &l.eta1, Cup01)?;
            let cup_opt = |a: &Option<E0Cochain>, b: &Option<E0Cochain>| -> Result<Option<E0Cochain>, E0Error> {
                match (a, b) {
                    (Some(a), Some(b)) => Ok(Some(dc.cup(a, b)?)),
                    _ => Ok(None),
                }
            };
            let tk2 = Some(tk2.clone());

            let mut e1 = dc.cup(tk1, &l.eta1)?;
            dc.axpy(&mut e1, 1, opt_cup(&prev.eta[0], &l.t)?.as_ref())?;

            let mut e2 = dc.cup(tk1, &l.eta2)?;
            dc.axpy(&mut e2, 1, opt_cup(&prev.eta[1], &l.t)?.as_ref())?;
            dc.axpy(&mut e2, 1, opt_cup(&prev.eta[0], &l.eta1)?.as_ref())?;
            dc.axpy(&mut e2, -m, cup_opt(&tk2, &x10_t)?.as_ref())?;

            let mut e3 = dc.zero(3, 2 * k - 3);
            dc.axpy(&mut e3, 1, opt_cup(&prev.eta[2], &l.t)?.as_ref())?;
            dc.axpy(&mut e3, 1, opt_cup(&prev.eta[1], &l.eta1)?.as_ref())?;
            dc.axpy(&mut e3, 1, opt_cup(&prev.eta[0], &l.eta2)?.as_ref())?;
            dc.axpy(&mut e3, -m, cup_opt(&pp.eta[0], &x10_t)?.as_ref())?;
            dc.axpy(&mut e3, -m, cup_opt(&tk2, &x10_e1)?.as_ref())?;
            dc.axpy(&mut e3, m, cup_opt(&tk2, &x01_t)?.as_ref())?;

            let mut e4 = dc.zero(4, 2 * k - 4);
            dc.axpy(&mut e4, 1, opt_cup(&prev.eta[3], &l.t)?.as_ref())?;
            dc.axpy(&mut e4, 1, opt_cup(&prev.eta[2], &l.eta1)?.as_ref())?;
            dc.axpy(&mut e4, 1, opt_cup(&prev.eta[1], &l.eta2)?.as_ref())?;
            dc.axpy(&mut e4, -m, cup_opt(&pp.eta[1], &x10_t)?.as_ref())?;
            dc.axpy(&mut e4, -m, cup_opt(&pp.eta[0], &x10_e1)?.as_ref())?;
            dc.axpy(&mut e4, -m, cup_opt(&tk2, &x10_e2)?.as_ref())?;
            dc.axpy(&mut e4, m, cup_opt(&pp.eta[0], &x01_t)?.as_ref())?;
            dc.axpy(&mut e4, m, cup_opt(&tk2, &x01_e1)?.as_ref())?;
            [Some(e1), Some(e2), Some(e3), Some(e4)]
        };
        fams.push(EtaFamily { n: k, eta, t_power });
    }
    let fam = fams.pop().expect("n >= 1");
    let prev = fams.last().expect("n >= 1");
    let nn = n as i64;
    let or_zero = |x: &Option<E0Cochain>, i: usize, j: usize| x.clone().unwrap_or_else(|| dc.zero(i, j));
    let e: Vec<E0Cochain> = (0..4)
        .map(|k| or_zero(&fam.eta[k], k + 1, (2 * n).saturating_sub(k + 1)))
        .collect();
    let mut res = [0; 4];
    // d1 t^n - d0 η1(n)
    let mut r = dc.d1(&fam.t_power)?;
    dc.axpy(&mut r, -1, Some(&dc.d0(&e[0])?))?;
    res[0] = r.nonzero_count();
    let mut r = dc.d1(&e[0])?;
    if 2 * n >= 2 {
        dc.axpy(&mut r, -1, Some(&dc.d0(&e[1])?))?;
    }
    res[1] = r.nonzero_count();
    let mut r = dc.d1(&e[1])?;
    dc.axpy(&mut r, -nn, Some(&dc.cup(&prev.t_power, xp)?))?;
    if 2 * n >= 3 {
        dc.axpy(&mut r, -1, Some(&dc.d0(&e[2])?))?;
    }
    res[2] = r.nonzero_count();
    if 2 * n >= 3 {
        let mut r = dc.d1(&e[2])?;
        if let Some(e1prev) = &prev.eta[0] {
            dc.axpy(&mut r, -nn, Some(&dc.cup(e1prev, xp)?))?;
        }
        if 2 * n >= 4 {
            dc.axpy(&mut r, -1, Some(&dc.d0(&e[3])?))?;
        }
        res[3] = r.nonzero_count();
    }
    Ok((fam, res))
}

/// An inhomogeneous cocycle on `G^n` representing a class, built from the
/// standard cochains `y_i(a) = a_i` and the carry cocycles for `x_i`.
pub fn standard_cocycle(dc: &DoubleComplex, class: &CohoClass) -> Vec<u32> {
    let spec = &dc.spec.quotient;
    let n = class.degree();
    let go = dc.go;
    let p = dc.p;
    let coords: Vec<Vec<usize>> = (0..go).map(|a| spec.coords(a)).collect();
    let mut out = vec![0; go.pow(n as u32)];
    for (m, &c) in class.terms() {
        let factors = cochain_factors(m);
        for (idx, v) in out.iter_mut().enumerate() {
            let args = digits(idx, n, go);
            let mut pos = 0;
            let mut val = c;
            for f in &factors {
                let x = match *f {
                    Factor::Y(i) => {
                        pos += 1;
                        (coords[args[pos - 1]][i] % p as usize) as u32
                    }
                    Factor::X(i) => {
                        pos += 2;
                        let (a, b) = (coords[args[pos - 2]][i], coords[args[pos - 1]][i]);
                        ((a + b) / spec.factor_order(i)) as u32
                    }
                };
                val = mul_mod(val, x % p, p);
                if val == 0 {
                    break;
                }
            }
            *v = add_mod(*v, val, p);
        }
    }
    out
}

enum Factor {
    Y(usize),
    X(usize),
}

fn cochain_factors(m: &Monomial) -> Vec<Factor> {
    let mut out = Vec::new();
    for i in 0..m.rank() {
        for _ in 0..m.pows[i] {
            out.push(Factor::X(i));
        }
    }
    for i in 0..m.rank() {
        if m.has_y(i) {
            out.push(Factor::Y(i));
        }
    }
    out
}

/// Whether an inhomogeneous `n`-cochain on `G` is a coboundary plus a
/// combination of `extra`.
fn is_coboundary(dc: &DoubleComplex, f: &[u32], n: usize, extra: &[Vec<u32>]) -> bool {
    let mut ech = EchelonBasis::new(dc.p, f.len());
    for e in extra {
        ech.insert(e);
    }
    if n == 0 {
        return ech.contains(f);
    }
    let g = &dc.quotient;
    let go = dc.go;
    let p = dc.p;
    let src = go.pow(n as u32 - 1);
    for s in 0..src {
        let mut col = vec![0; f.len()];
        for (idx, v) in col.iter_mut().enumerate() {
            let a = digits(idx, n, go);
            let code = |args: &[usize]| args.iter().fold(0, |acc, &x| acc * go + x);
            let mut acc = 0;
            if code(&a[1..]) == s {
                acc = add_mod(acc, 1, p);
            }
            for k in 0..n - 1 {
                let mut merged: Vec<usize> = a[..k].to_vec();
                merged.push(g.mul(a[k], a[k + 1]));
                merged.extend_from_slice(&a[k + 2..]);
                if code(&merged) == s {
                    acc = add_mod(acc, sign(parity(k + 1), p), p);
                }
            }
            if code(&a[..n - 1]) == s {
                acc = add_mod(acc, sign(parity(n), p), p);
            }
            *v = acc;
        }
        ech.insert(&col);
    }
    ech.contains(f)
}

/// The sign `s ∈ {1, -1}` with `[row-0 cochain] = s·[class]` in `H^n(G)`
/// modulo the span of `modulo`, or `None` when neither sign works.
pub fn class_sign(dc: &DoubleComplex, phi: &E0Cochain, class: &CohoClass, modulo: &[CohoClass]) -> Option<i64> {
    let n = phi.i;
    let f = dc.row_zero_restriction(phi);
    let std = standard_cocycle(dc, class);
    let extra: Vec<Vec<u32>> = modulo.iter().map(|c| standard_cocycle(dc, c)).collect();
    let p = dc.p;
    for s in [1i64, -1] {
        let c = reduce_i64(s, p);
        let diff: Vec<u32> = f
            .iter()
            .zip(&std)
            .map(|(&a, &b)| add_mod(a, neg_mod(mul_mod(c, b, p), p), p))
            .collect();
        if is_coboundary(dc, &diff, n, &extra) {
            return Some(s);
        }
    }
    None
}
