//! Diagonal approximations `P -> P ⊗ P` and the homotopies between them.
//!
//! Chains in `P^{⊗k}` are sparse sums of tensors of cells; a [`Cell`] is the
//! basis element `g·e` of a free module. The group acts diagonally on tensors.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::group::FiniteGroupTable;
use crate::linalg::{add_mod, mul_mod, neg_mod};
use crate::resolution::{bar_index, bar_tuple, tensor_generators, Resolution, ResolutionError, ResolutionKind};

/// Orientation of the cup-1 homotopy: with `true`,
/// `d Δ_1 + Δ_1 d = τ Δ_0 - Δ_0`; with `false` the right side is negated.
pub const CUP1_FROM_DIAGONAL_TO_TWIST: bool = false;

/// `(φ ⊗ θ)(x ⊗ y) = (-1)^{|θ||x|} φ(x) θ(y)` when set, plain product otherwise.
pub const KOSZUL_EVALUATION: bool = true;

/// `(degree, generator, group element)`: the basis element `g·e_generator` in a degree.
pub type Cell = (usize, usize, usize);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorChain {
    pub terms: BTreeMap<Vec<Cell>, u32>,
}

impl TensorChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, cells: Vec<Cell>, c: u32, p: u32) {
        let c = c % p;
        if c == 0 {
            return;
        }
        let e = self.terms.entry(cells.clone()).or_insert(0);
        *e = add_mod(*e, c, p);
        if *e == 0 {
            self.terms.remove(&cells);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorChain, c: u32, p: u32) {
        for (cells, &x) in &other.terms {
            self.add_term(cells.clone(), mul_mod(x, c, p), p);
        }
    }

    pub fn sub(&self, other: &TensorChain, p: u32) -> TensorChain {
        let mut out = self.clone();
        out.add_scaled(other, p - 1, p);
        out
    }

    /// `g · chain` under the diagonal action.
    pub fn translate(&self, g: usize, group: &FiniteGroupTable) -> TensorChain {
        if g == group.identity() {
            return self.clone();
        }
        let mut out = TensorChain::new();
        for (cells, &c) in &self.terms {
            let moved = cells.iter().map(|&(d, k, h)| (d, k, group.mul(g, h))).collect();
            out.terms.insert(moved, c);
        }
        out
    }
}

/// An equivariant map from a resolution to its `k`-fold tensor power,
/// raising degree by `shift`, stored on generators.
#[derive(Debug, Clone)]
pub struct ChainMapToTensor {
    pub factors: usize,
    pub shift: usize,
    pub p: u32,
    /// `components[n][k]` is the image of the generator `e_k` of degree `n`.
    pub components: Vec<Vec<TensorChain>>,
}

impl ChainMapToTensor {
    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> &TensorChain {
        &self.components[n][k]
    }

    pub fn apply_cell(&self, cell: Cell, group: &FiniteGroupTable) -> TensorChain {
        self.components[cell.0][cell.1].translate(cell.2, group)
    }

    /// The identity-like map with no components, used for zero homotopies.
    pub fn zero(res: &Resolution, factors: usize, shift: usize) -> Self {
        ChainMapToTensor {
            factors,
            shift,
            p: res.prime(),
            components: (0..=res.max_degree())
                .map(|n| vec![TensorChain::new(); res.rank(n)])
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|c| c.is_zero())
    }
}

fn parity_sign(odd: bool, p: u32) -> u32 {
    if odd {
        neg_mod(1, p)
    } else {
        1
    }
}

/// The differential of the tensor-power complex, with Koszul signs.
pub fn tensor_differential(res: &Resolution, chain: &TensorChain) -> TensorChain {
    let p = res.prime();
    let group = res.group();
    let mut out = TensorChain::new();
    for (cells, &c) in &chain.terms {
        let mut before = 0;
        for (pos, &(deg, gen, elt)) in cells.iter().enumerate() {
            if deg >= 1 {
                let sign = mul_mod(c, parity_sign(before % 2 == 1, p), p);
                for (t, lambda) in res.differential(deg, gen) {
                    for (h, x) in lambda.terms() {
                        let mut next = cells.clone();
                        next[pos] = (deg - 1, t, group.mul(elt, h));
                        out.add_term(next, mul_mod(sign, x, p), p);
                    }
                }
            }
            before += deg;
        }
    }
    out
}

/// Apply `map` to tensor factor `pos` of every term, with the Koszul sign
/// `(-1)^{shift · (degrees before pos)}`.
pub fn apply_on_factor(res: &Resolution, map: &ChainMapToTensor, chain: &TensorChain, pos: usize) -> TensorChain {
    let p = res.prime();
    let group = res.group();
    let mut out = TensorChain::new();
    for (cells, &c) in &chain.terms {
        let before: usize = cells[..pos].iter().map(|x| x.0).sum();
        let sign = mul_mod(c, parity_sign(map.shift * before % 2 == 1, p), p);
        let image = map.apply_cell(cells[pos], group);
        for (inner, &x) in &image.terms {
            let mut next = cells[..pos].to_vec();
            next.extend_from_slice(inner);
            next.extend_from_slice(&cells[pos + 1..]);
            out.add_term(next, mul_mod(sign, x, p), p);
        }
    }
    out
}

/// `map(d e)` for a generator `e` of degree `n`.
pub fn map_of_boundary(res: &Resolution, map: &ChainMapToTensor, n: usize, k: usize) -> TensorChain {
    let p = res.prime();
    let group = res.group();
    let mut out = TensorChain::new();
    if n == 0 {
        return out;
    }
    for (t, lambda) in res.differential(n, k) {
        for (h, x) in lambda.terms() {
            out.add_scaled(&map.apply_cell((n - 1, t, h), group), x, p);
        }
    }
    out
}

/// `τ(a ⊗ b) = (-1)^{|a||b|} b ⊗ a` on two-fold tensors.
pub fn twist(chain: &TensorChain, p: u32) -> TensorChain {
    let mut out = TensorChain::new();
    for (cells, &c) in &chain.terms {
        let (a, b) = (cells[0], cells[1]);
        out.add_term(vec![b, a], mul_mod(c, parity_sign(a.0 * b.0 % 2 == 1, p), p), p);
    }
    out
}

/// `d F(e) - (-1)^{shift} F(d e)` style residual of a chain map (shift 0):
/// returns the first generator where `d Δ ≠ Δ d`.
pub fn check_chain_map(res: &Resolution, map: &ChainMapToTensor) -> Result<(), String> {
    let p = res.prime();
    for n in 0..=map.max_degree() {
        for k in 0..res.rank(n) {
            let lhs = tensor_differential(res, map.get(n, k));
            let rhs = map_of_boundary(res, map, n, k);
            if !lhs.sub(&rhs, p).is_zero() {
                return Err(format!("d∘Δ ≠ Δ∘d on generator {k} of degree {n}"));
            }
        }
    }
    Ok(())
}

/// `(Δ⊗1)Δ(e) - (1⊗Δ)Δ(e)`.
pub fn coassociativity_defect(res: &Resolution, diag: &ChainMapToTensor, n: usize, k: usize) -> TensorChain {
    let p = res.prime();
    let d = diag.get(n, k);
    let left = apply_on_factor(res, diag, d, 0);
    let right = apply_on_factor(res, diag, d, 1);
    left.sub(&right, p)
}

/// Residual of `dH + Hd = (Δ⊗1)Δ - (1⊗Δ)Δ` on every generator up to `max_degree`.
pub fn homotopy_residuals(
    res: &Resolution,
    diag: &ChainMapToTensor,
    homotopy: &ChainMapToTensor,
    max_degree: usize,
) -> Vec<((usize, usize), TensorChain)> {
    let p = res.prime();
    let mut out = Vec::new();
    for n in 0..=max_degree.min(homotopy.max_degree()) {
        for k in 0..res.rank(n) {
            let mut lhs = tensor_differential(res, homotopy.get(n, k));
            lhs.add_scaled(&map_of_boundary(res, homotopy, n, k), 1, p);
            let resid = lhs.sub(&coassociativity_defect(res, diag, n, k), p);
            if !resid.is_zero() {
                out.push(((n, k), resid));
            }
        }
    }
    out
}

/// Residual of `dΔ_1 + Δ_1 d = ±(τΔ_0 - Δ_0)` (orientation per [`CUP1_FROM_DIAGONAL_TO_TWIST`]).
pub fn cup1_residuals(
    res: &Resolution,
    diag: &ChainMapToTensor,
    cup1: &ChainMapToTensor,
    max_degree: usize,
    forward: bool,
) -> Vec<((usize, usize), TensorChain)> {
    let p = res.prime();
    let mut out = Vec::new();
    for n in 0..=max_degree.min(cup1.max_degree()) {
        for k in 0..res.rank(n) {
            let mut lhs = tensor_differential(res, cup1.get(n, k));
            lhs.add_scaled(&map_of_boundary(res, cup1, n, k), 1, p);
            let d = diag.get(n, k);
            let mut rhs = twist(d, p).sub(d, p);
            if !forward {
                rhs = TensorChain::new().sub(&rhs, p);
            }
            let resid = lhs.sub(&rhs, p);
            if !resid.is_zero() {
                out.push(((n, k), resid));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cartan-Eilenberg diagonal and homotopy on cyclic groups; the element g^i of
// C_n is stored at index i.

/// Component of `Δ(e_{a+b})` in bidegree `(a, b)`.
pub fn ce_diagonal(n_order: usize, p: u32, a: usize, b: usize) -> TensorChain {
    let mut out = TensorChain::new();
    if a % 2 == 0 {
        out.add_term(vec![(a, 0, 0), (b, 0, 0)], 1, p);
    } else if b % 2 == 0 {
        out.add_term(vec![(a, 0, 0), (b, 0, 1 % n_order)], 1, p);
    } else {
        for i in 0..n_order {
            for j in i + 1..n_order {
                out.add_term(vec![(a, 0, i), (b, 0, j)], 1, p);
            }
        }
    }
    out
}

/// Component of `H(e_{a+b+c-1})` in tridegree `(a, b, c)`:
/// `Σ_{i<j<k} g^i e_a ⊗ g^j e_b ⊗ g^k e_c` when all three are odd.
pub fn ce_homotopy(n_order: usize, p: u32, a: usize, b: usize, c: usize) -> TensorChain {
    let mut out = TensorChain::new();
    if a % 2 == 0 || b % 2 == 0 || c % 2 == 0 {
        return out;
    }
    for i in 0..n_order {
        for j in i + 1..n_order {
            for k in j + 1..n_order {
                out.add_term(vec![(a, 0, i), (b, 0, j), (c, 0, k)], 1, p);
            }
        }
    }
    out
}

/// Sum of coefficients: the value of the tensor product of the cochains dual
/// to the generators, with trivial action and no Koszul sign.
pub fn evaluate_plain(chain: &TensorChain, p: u32) -> u32 {
    chain.terms.values().fold(0, |a, &c| add_mod(a, c, p))
}

fn cyclic_order(res: &Resolution) -> Result<usize, ResolutionError> {
    match res.kind() {
        ResolutionKind::Cyclic { order } => Ok(order),
        _ => Err(ResolutionError::WrongKind("cyclic")),
    }
}

pub fn ce_diagonal_map(res: &Resolution) -> Result<ChainMapToTensor, ResolutionError> {
    let n = cyclic_order(res)?;
    let p = res.prime();
    let components = (0..=res.max_degree())
        .map(|deg| {
            let mut c = TensorChain::new();
            for a in 0..=deg {
                c.add_scaled(&ce_diagonal(n, p, a, deg - a), 1, p);
            }
            vec![c]
        })
        .collect();
    Ok(ChainMapToTensor {
        factors: 2,
        shift: 0,
        p,
        components,
    })
}

pub fn ce_homotopy_map(res: &Resolution) -> Result<ChainMapToTensor, ResolutionError> {
    let n = cyclic_order(res)?;
    let p = res.prime();
    let top = res.max_degree();
    let components = (0..=top)
        .map(|deg| {
            let mut c = TensorChain::new();
            for a in 0..=deg + 1 {
                for b in 0..=deg + 1 - a {
                    let cc = deg + 1 - a - b;
                    if a.max(b).max(cc) <= top {
                        c.add_scaled(&ce_homotopy(n, p, a, b, cc), 1, p);
                    }
                }
            }
            vec![c]
        })
        .collect();
    Ok(ChainMapToTensor {
        factors: 3,
        shift: 1,
        p,
        components,
    })
}

// ---------------------------------------------------------------------------
// Bar resolution: homogeneous tuples (g_0, …, g_n) = g_0·(1, g_0^{-1}g_1, …).

/// Cell of a homogeneous bar tuple.
pub fn bar_cell(tuple: &[usize], group: &FiniteGroupTable) -> Cell {
    let g0 = tuple[0];
    let inv = group.inv(g0);
    let rest: Vec<usize> = tuple[1..].iter().map(|&g| group.mul(inv, g)).collect();
    (tuple.len() - 1, bar_index(&rest, group.order()), g0)
}

/// Homogeneous tuple of a bar generator: `(1, g_1, …, g_n)`.
pub fn bar_generator_tuple(n: usize, k: usize, group: &FiniteGroupTable) -> Vec<usize> {
    let mut t = vec![group.identity()];
    t.extend(bar_tuple(k, n, group.order()));
    t
}

/// Alexander-Whitney terms of a homogeneous tuple: `Σ_i (g_0..g_i) ⊗ (g_i..g_n)`.
pub fn aw_terms(tuple: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let n = tuple.len() - 1;
    (0..=n)
        .map(|i| (tuple[..=i].to_vec(), tuple[i..].to_vec(), false))
        .collect()
}

/// `f(i, j, n) = n + (n - i - 1)(j - i - 1)`, evaluated in signed arithmetic.
pub fn steenrod_exponent(i: usize, j: usize, n: usize) -> i64 {
    let (i, j, n) = (i as i64, j as i64, n as i64);
    n + (n - i - 1) * (j - i - 1)
}

/// Steenrod cup-1 terms: `Σ_{i<j} (-1)^{f(i,j,n)} (g_0..g_i, g_j..g_n) ⊗ (g_i..g_j)`;
/// the flag marks a negative sign.
pub fn steenrod_terms(tuple: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let n = tuple.len() - 1;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let mut left = tuple[..=i].to_vec();
            left.extend_from_slice(&tuple[j..]);
            let right = tuple[i..=j].to_vec();
            out.push((left, right, steenrod_exponent(i, j, n).rem_euclid(2) == 1));
        }
    }
    out
}

fn bar_map(
    res: &Resolution,
    max_degree: usize,
    shift: usize,
    terms: fn(&[usize]) -> Vec<(Vec<usize>, Vec<usize>, bool)>,
) -> Result<ChainMapToTensor, ResolutionError> {
    if res.kind() != ResolutionKind::Bar {
        return Err(ResolutionError::WrongKind("bar"));
    }
    let p = res.prime();
    let group: &Arc<FiniteGroupTable> = res.group();
    let top = max_degree.min(res.max_degree());
    let mut components = Vec::new();
    for n in 0..=top {
        let mut comps = Vec::new();
        for k in 0..res.rank(n) {
            let tuple = bar_generator_tuple(n, k, group);
            let mut c = TensorChain::new();
            for (l, r, neg) in terms(&tuple) {
                if l.len() - 1 > res.max_degree() || r.len() - 1 > res.max_degree() {
                    continue;
                }
                let cells = vec![bar_cell(&l, group), bar_cell(&r, group)];
                c.add_term(cells, parity_sign(neg, p), p);
            }
            comps.push(c);
        }
        components.push(comps);
    }
    Ok(ChainMapToTensor {
        factors: 2,
        shift,
        p,
        components,
    })
}

pub fn aw_diagonal_map(bar: &Resolution, max_degree: usize) -> Result<ChainMapToTensor, ResolutionError> {
    bar_map(bar, max_degree, 0, aw_terms)
}

pub fn steenrod_cup1_map(bar: &Resolution, max_degree: usize) -> Result<ChainMapToTensor, ResolutionError> {
    bar_map(bar, max_degree, 1, steenrod_terms)
}

// ---------------------------------------------------------------------------
// Tensor products of resolutions (direct-product mode).

struct TensorIndex {
    gens: Vec<Vec<(usize, usize, usize)>>,
    nb: usize,
}

impl TensorIndex {
    fn new(a: &Resolution, b: &Resolution, top: usize) -> Self {
        TensorIndex {
            gens: (0..=top).map(|n| tensor_generators(a.ranks(), b.ranks(), n)).collect(),
            nb: b.group().order(),
        }
    }

    /// Combine cells of A and B into a cell of A ⊗ B.
    fn cell(&self, x: Cell, y: Cell) -> Cell {
        let n = x.0 + y.0;
        let k = self.gens[n].binary_search(&(x.0, x.1, y.1)).expect("tensor generator");
        (n, k, x.2 * self.nb + y.2)
    }
}

/// `(1 ⊗ τ ⊗ 1)(Δ_A ⊗ Δ_B)` on `A ⊗ B`.
pub fn tensor_diagonal(
    t: &Resolution,
    a: &Resolution,
    da: &ChainMapToTensor,
    b: &Resolution,
    db: &ChainMapToTensor,
) -> Result<ChainMapToTensor, ResolutionError> {
    if a.prime() != b.prime() || t.prime() != a.prime() {
        return Err(ResolutionError::PrimeMismatch);
    }
    let p = t.prime();
    let top = t.max_degree().min(da.max_degree()).min(db.max_degree());
    let idx = TensorIndex::new(a, b, t.max_degree());
    let mut components = Vec::new();
    for n in 0..=top {
        let mut comps = Vec::new();
        for &(i, x, y) in &idx.gens[n] {
            let mut c = TensorChain::new();
            for (ac, &ca) in &da.get(i, x).terms {
                for (bc, &cb) in &db.get(n - i, y).terms {
                    let neg = ac[1].0 * bc[0].0 % 2 == 1;
                    let coeff = mul_mod(mul_mod(ca, cb, p), parity_sign(neg, p), p);
                    c.add_term(vec![idx.cell(ac[0], bc[0]), idx.cell(ac[1], bc[1])], coeff, p);
                }
            }
            comps.push(c);
        }
        components.push(comps);
    }
    Ok(ChainMapToTensor {
        factors: 2,
        shift: 0,
        p,
        components,
    })
}

/// Apply `(1⊗Δ)Δ` or `(Δ⊗1)Δ` to one generator.
fn iterated(res: &Resolution, diag: &ChainMapToTensor, n: usize, k: usize, left: bool) -> TensorChain {
    apply_on_factor(res, diag, diag.get(n, k), if left { 0 } else { 1 })
}

/// Coassociativity homotopy on `A ⊗ B` built from `H_A ⊗ (Δ_B⊗1)Δ_B` and
/// `(1⊗Δ_A)Δ_A ⊗ H_B`, then interlaced into `(A⊗B)^{⊗3}` with Koszul signs.
#[allow(clippy::too_many_arguments)]
pub fn tensor_homotopy(
    t: &Resolution,
    a: &Resolution,
    da: &ChainMapToTensor,
    ha: &ChainMapToTensor,
    b: &Resolution,
    db: &ChainMapToTensor,
    hb: &ChainMapToTensor,
) -> Result<ChainMapToTensor, ResolutionError> {
    if a.prime() != b.prime() || t.prime() != a.prime() {
        return Err(ResolutionError::PrimeMismatch);
    }
    let p = t.prime();
    let top = t
        .max_degree()
        .saturating_sub(1)
        .min(ha.max_degree())
        .min(hb.max_degree());
    let idx = TensorIndex::new(a, b, t.max_degree());
    let mut components = Vec::new();
    for n in 0..=top {
        let mut comps = Vec::new();
        for &(i, x, y) in &idx.gens[n] {
            let j = n - i;
            let mut pieces: Vec<(TensorChain, TensorChain, bool)> = Vec::new();
            if j <= db.max_degree() {
                pieces.push((ha.get(i, x).clone(), iterated(b, db, j, y, true), false));
            }
            if i <= da.max_degree() {
                // Koszul sign of H_B passing e_x
                pieces.push((iterated(a, da, i, x, false), hb.get(j, y).clone(), i % 2 == 1));
            }
            let mut c = TensorChain::new();
            for (left, right, neg) in pieces {
                for (ac, &ca) in &left.terms {
                    for (bc, &cb) in &right.terms {
                        if ac.iter().chain(bc.iter()).any(|cell| cell.0 > a.max_degree().min(b.max_degree())) {
                            continue;
                        }
                        let (a2, a3) = (ac[1].0, ac[2].0);
                        let (b1, b2) = (bc[0].0, bc[1].0);
                        let swaps = b1 * (a2 + a3) + b2 * a3;
                        let sign = parity_sign((swaps % 2 == 1) ^ neg, p);
                        let coeff = mul_mod(mul_mod(ca, cb, p), sign, p);
                        let cells = vec![
                            idx.cell(ac[0], bc[0]),
                            idx.cell(ac[1], bc[1]),
                            idx.cell(ac[2], bc[2]),
                        ];
                        c.add_term(cells, coeff, p);
                    }
                }
            }
            comps.push(c);
        }
        components.push(comps);
    }
    Ok(ChainMapToTensor {
        factors: 3,
        shift: 1,
        p,
        components,
    })
}

/// Diagonal and coassociativity homotopy of an iterated tensor product of
/// cyclic resolutions, built alongside the resolution itself.
#[derive(Debug, Clone)]
pub struct AbelianDiagonal {
    pub resolution: Resolution,
    pub diagonal: ChainMapToTensor,
    pub homotopy: ChainMapToTensor,
}

pub fn abelian_diagonal(spec: &crate::group::AbelianPGroupSpec, max_degree: usize) -> AbelianDiagonal {
    use crate::resolution::{cyclic_resolution, tensor_resolution, TensorMode};
    assert!(spec.rank() >= 1, "needs at least one cyclic factor");
    let first = cyclic_resolution(spec.factor_order(0), spec.p, max_degree);
    let mut acc = AbelianDiagonal {
        diagonal: ce_diagonal_map(&first).expect("cyclic"),
        homotopy: ce_homotopy_map(&first).expect("cyclic"),
        resolution: first,
    };
    for i in 1..spec.rank() {
        let next = cyclic_resolution(spec.factor_order(i), spec.p, max_degree);
        let dn = ce_diagonal_map(&next).expect("cyclic");
        let hn = ce_homotopy_map(&next).expect("cyclic");
        let t = tensor_resolution(&acc.resolution, &next, TensorMode::DirectProduct).expect("same prime");
        let diagonal = tensor_diagonal(&t, &acc.resolution, &acc.diagonal, &next, &dn).expect("same prime");
        let homotopy = tensor_homotopy(&t, &acc.resolution, &acc.diagonal, &acc.homotopy, &next, &dn, &hn)
            .expect("same prime");
        acc = AbelianDiagonal {
            resolution: t,
            diagonal,
            homotopy,
        };
    }
    acc
}

/// Evaluate a tensor product of cochains (values on generators, trivial
/// action) on a tensor chain.
pub fn evaluate(chain: &TensorChain, cochains: &[(usize, &[u32])], p: u32, koszul: bool) -> u32 {
    let mut total = 0;
    'terms: for (cells, &c) in &chain.terms {
        let mut v = c;
        for (cell, (deg, values)) in cells.iter().zip(cochains) {
            if cell.0 != *deg {
                continue 'terms;
            }
            v = mul_mod(v, values[cell.1], p);
        }
        if koszul {
            // (φ_1 ⊗ … ⊗ φ_k)(x_1 ⊗ … ⊗ x_k): φ_j passes x_1..x_{j-1}
            let mut sign = 0;
            for j in 1..cells.len() {
                let before: usize = cells[..j].iter().map(|x| x.0).sum();
                sign += cochains[j].0 * before;
            }
            v = mul_mod(v, parity_sign(sign % 2 == 1, p), p);
        }
        total = add_mod(total, v, p);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{bar_resolution, cyclic_resolution, DEFAULT_BAR_BUDGET};

    #[test]
    fn ce_components() {
        let d = ce_diagonal(3, 3, 0, 2);
        assert_eq!(d.terms.keys().next().unwrap(), &vec![(0, 0, 0), (2, 0, 0)]);
        let d = ce_diagonal(3, 3, 1, 2);
        assert_eq!(d.terms.keys().next().unwrap(), &vec![(1, 0, 0), (2, 0, 1)]);
        let d = ce_diagonal(2, 2, 1, 1);
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms.keys().next().unwrap(), &vec![(1, 0, 0), (1, 0, 1)]);
        assert!(ce_homotopy(5, 5, 2, 1, 1).is_zero());
        let h = ce_homotopy(3, 3, 1, 1, 1);
        assert_eq!(h.terms.len(), 1);
        assert_eq!(h.terms.keys().next().unwrap(), &vec![(1, 0, 0), (1, 0, 1), (1, 0, 2)]);
        assert!(ce_homotopy(2, 2, 1, 1, 1).is_zero());
    }

    #[test]
    fn ce_diagonal_is_chain_map() {
        for (n, p) in [(2, 2), (3, 3), (4, 2), (5, 5), (8, 2), (9, 3)] {
            let res = cyclic_resolution(n, p, 6);
            check_chain_map(&res, &ce_diagonal_map(&res).unwrap()).unwrap();
        }
    }

    #[test]
    fn aw_examples() {
        let g = Arc::new(FiniteGroupTable::cyclic(2));
        let bar = bar_resolution(&g, 2, 3, DEFAULT_BAR_BUDGET).unwrap();
        let aw = aw_diagonal_map(&bar, 3).unwrap();
        // [g] ↦ ()⊗(1,g) + (1,g)⊗g()
        let c = aw.get(1, 1);
        let mut want = TensorChain::new();
        want.add_term(vec![(0, 0, 0), (1, 1, 0)], 1, 2);
        want.add_term(vec![(1, 1, 0), (0, 0, 1)], 1, 2);
        assert_eq!(c, &want);
        assert_eq!(steenrod_exponent(0, 1, 1), 1);
        assert!(steenrod_cup1_map(&bar, 0).unwrap().is_zero());
    }
}
