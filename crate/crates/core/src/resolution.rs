//! Free resolutions of F_p over group algebras: bar, Cartan-Eilenberg
//! (cyclic), tensor products, and the minimal resolution of a finite abelian
//! p-group as an iterated tensor product of cyclic ones.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{AbelianPGroupSpec, FiniteGroupTable, GroupAlgebraElement};
use crate::linalg::{add_mod, mul_mod, rank, FpMatrix};

pub const DEFAULT_BAR_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("{needed} basis elements exceed the budget of {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("resolutions are over different primes")]
    PrimeMismatch,
    #[error("diagonal mode needs both resolutions over the same group")]
    GroupMismatch,
    #[error("degree {0} is beyond the computed range")]
    OutOfRange(usize),
    #[error("operation needs a {0} resolution")]
    WrongKind(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionKind {
    Bar,
    Cyclic { order: usize },
    Tensor,
    Minimal,
}

/// How the group acts on a tensor product of resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorMode {
    /// `A ⊗ B` over `F_p[G × H]`.
    DirectProduct,
    /// `A ⊗ B` over `F_p G` with the diagonal action; both over the same group.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenLabel {
    /// Homogeneous bar tuple `(1, g_1, …, g_n)`, stored without the leading 1.
    Bar(Vec<usize>),
    Cyclic(usize),
    Minimal(usize),
    Tensor(Box<TensorLabel>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorLabel {
    pub left: GenLabel,
    pub right: GenLabel,
    pub left_degree: usize,
    pub right_degree: usize,
    pub left_index: usize,
    pub right_index: usize,
    /// Diagonal mode only: the generator is `e_left ⊗ h·e_right`.
    pub shift: Option<usize>,
}

/// Sparse differential column: `d(e) = Σ λ_k e_{t_k}`.
pub type Column = Vec<(usize, GroupAlgebraElement)>;

#[derive(Debug, Clone)]
pub struct Resolution {
    group: Arc<FiniteGroupTable>,
    p: u32,
    kind: ResolutionKind,
    max_degree: usize,
    ranks: Vec<usize>,
    /// `diffs[n][g]` for `1 <= n <= max_degree`; empty for bar resolutions.
    diffs: Vec<Vec<Column>>,
    labels: Vec<Vec<GenLabel>>,
    minimal: bool,
}

impl Resolution {
    /// Assemble a resolution from explicit data (used by the minimal-resolution oracle).
    pub fn from_parts(
        group: Arc<FiniteGroupTable>,
        p: u32,
        kind: ResolutionKind,
        ranks: Vec<usize>,
        diffs: Vec<Vec<Column>>,
        minimal: bool,
    ) -> Self {
        let labels = ranks
            .iter()
            .map(|&r| (0..r).map(GenLabel::Minimal).collect())
            .collect();
        Resolution {
            group,
            p,
            kind,
            max_degree: ranks.len() - 1,
            ranks,
            diffs,
            labels,
            minimal,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.group
    }
    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn kind(&self) -> ResolutionKind {
        self.kind
    }
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }
    pub fn label(&self, n: usize, g: usize) -> &GenLabel {
        &self.labels[n][g]
    }

    /// `d(e_g)` for a generator in degree `n >= 1`.
    pub fn differential(&self, n: usize, g: usize) -> Column {
        assert!(n >= 1 && n <= self.max_degree, "degree {n} out of range");
        match self.kind {
            ResolutionKind::Bar => self.bar_differential(n, g),
            _ => self.diffs[n][g].clone(),
        }
    }

    fn bar_differential(&self, n: usize, gen: usize) -> Column {
        let order = self.group.order();
        let tuple = bar_tuple(gen, n, order);
        let mut out: Vec<(usize, GroupAlgebraElement)> = Vec::new();
        let mut push = |target: usize, elt: usize, c: u32| {
            if let Some(entry) = out.iter_mut().find(|(t, _)| *t == target) {
                entry.1.add_term(elt, c);
            } else {
                let mut e = GroupAlgebraElement::zero(&self.group, self.p);
                e.add_term(elt, c);
                out.push((target, e));
            }
        };
        // homogeneous (1, g_1, …, g_n); dropping the 1 gives g_1·(1, g_1^{-1} g_2, …)
        let g1 = tuple[0];
        let inv = self.group.inv(g1);
        let shifted: Vec<usize> = tuple[1..].iter().map(|&g| self.group.mul(inv, g)).collect();
        push(bar_index(&shifted, order), g1, 1);
        for i in 1..=n {
            let mut rest = tuple.clone();
            rest.remove(i - 1);
            let c = if i % 2 == 1 { self.p - 1 } else { 1 };
            push(bar_index(&rest, order), self.group.identity(), c);
        }
        out.retain(|(_, e)| !e.is_zero());
        out.sort_by_key(|(t, _)| *t);
        out
    }

    /// The differential `F_n -> F_{n-1}` as an F_p-matrix; basis element
    /// `g·e_k` of `F_n` has index `k·|G| + g`.
    pub fn fp_matrix(&self, n: usize) -> FpMatrix {
        let order = self.group.order();
        let mut m = FpMatrix::zeros(self.p, self.rank(n - 1) * order, self.rank(n) * order);
        for k in 0..self.rank(n) {
            for (t, lambda) in self.differential(n, k) {
                for g in 0..order {
                    for (h, c) in lambda.terms() {
                        m.add_to(t * order + self.group.mul(g, h), k * order + g, c);
                    }
                }
            }
        }
        m
    }

    /// Check `d∘d = 0` and `ε∘d_1 = 0` exactly.
    pub fn check_complex(&self) -> Result<(), String> {
        for k in 0..self.rank(1.min(self.max_degree)) {
            if self.max_degree == 0 {
                break;
            }
            let aug = self
                .differential(1, k)
                .iter()
                .fold(0, |a, (_, l)| add_mod(a, l.augmentation(), self.p));
            if aug != 0 {
                return Err(format!("augmentation of d(e_{k}) in degree 1 is {aug}"));
            }
        }
        for n in 2..=self.max_degree {
            for k in 0..self.rank(n) {
                let mut acc: Vec<GroupAlgebraElement> =
                    vec![GroupAlgebraElement::zero(&self.group, self.p); self.rank(n - 2)];
                for (t, lambda) in self.differential(n, k) {
                    for (s, mu) in self.differential(n - 1, t) {
                        acc[s] = acc[s]
                            .add(&lambda.multiply(&mu).expect("same group"))
                            .expect("same group");
                    }
                }
                if let Some(s) = acc.iter().position(|e| !e.is_zero()) {
                    return Err(format!("d∘d(e_{k}) has component {:?} on e_{s}, degree {n}", acc[s]));
                }
            }
        }
        Ok(())
    }

    /// Every differential coefficient lies in the augmentation ideal.
    pub fn check_minimal(&self) -> bool {
        (1..=self.max_degree).all(|n| {
            (0..self.rank(n)).all(|k| self.differential(n, k).iter().all(|(_, l)| l.augmentation() == 0))
        })
    }

    /// `dim ker d_n = dim im d_{n+1}` as F_p-maps, augmented in degree 0.
    pub fn check_exact(&self, n: usize) -> bool {
        if n + 1 > self.max_degree {
            return false;
        }
        let order = self.group.order();
        let dim_n = self.rank(n) * order;
        let ker = if n == 0 {
            dim_n - 1
        } else {
            dim_n - rank(&self.fp_matrix(n))
        };
        ker == rank(&self.fp_matrix(n + 1))
    }

    /// Degrees of the cyclic factors of a generator of an abelian minimal resolution.
    pub fn multidegree(&self, n: usize, g: usize) -> Vec<usize> {
        fn walk(label: &GenLabel, degree: usize, out: &mut Vec<usize>) {
            match label {
                GenLabel::Tensor(t) => {
                    walk(&t.left, t.left_degree, out);
                    walk(&t.right, t.right_degree, out);
                }
                GenLabel::Cyclic(_) => out.push(degree),
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(&self.labels[n][g], n, &mut out);
        out
    }
}

/// Tuple `(g_1, …, g_n)` of a bar generator index.
pub fn bar_tuple(mut index: usize, n: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    t
}

pub fn bar_index(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub fn bar_resolution(
    group: &Arc<FiniteGroupTable>,
    p: u32,
    max_degree: usize,
    budget: usize,
) -> Result<Resolution, ResolutionError> {
    let order = group.order();
    let mut ranks = Vec::new();
    let mut needed = 0usize;
    for n in 0..=max_degree {
        let r = order
            .checked_pow(n as u32)
            .ok_or(ResolutionError::Budget { needed: usize::MAX, budget })?;
        needed = needed.saturating_add(r);
        if needed > budget {
            return Err(ResolutionError::Budget { needed, budget });
        }
        ranks.push(r);
    }
    let labels = ranks
        .iter()
        .enumerate()
        .map(|(n, &r)| (0..r).map(|k| GenLabel::Bar(bar_tuple(k, n, order))).collect())
        .collect();
    Ok(Resolution {
        group: Arc::clone(group),
        p,
        kind: ResolutionKind::Bar,
        max_degree,
        ranks,
        diffs: vec![],
        labels,
        minimal: false,
    })
}

/// The periodic resolution of `C_n`: `d(e_i) = (g-1)e_{i-1}` for odd `i`,
/// `(1 + g + … + g^{n-1})e_{i-1}` for even `i`.
pub fn cyclic_resolution(n_order: usize, p: u32, max_degree: usize) -> Resolution {
    let group = Arc::new(FiniteGroupTable::cyclic(n_order));
    let mut diffs = vec![vec![]];
    for i in 1..=max_degree {
        let e = if i % 2 == 1 {
            GroupAlgebraElement::from_terms(&group, p, &[(1 % n_order, 1), (0, -1)])
        } else {
            GroupAlgebraElement::norm(&group, p)
        };
        diffs.push(vec![vec![(0, e)]]);
    }
    let mut m = n_order;
    while m > 1 && m % p as usize == 0 {
        m /= p as usize;
    }
    Resolution {
        group,
        p,
        kind: ResolutionKind::Cyclic { order: n_order },
        max_degree,
        ranks: vec![1; max_degree + 1],
        diffs,
        labels: (0..=max_degree).map(|i| vec![GenLabel::Cyclic(i)]).collect(),
        minimal: m == 1,
    }
}

/// Generators of `(A ⊗ B)_n` as `(i, a, b)` with `i` the left degree, ordered by `i`, then `a`, then `b`.
pub fn tensor_generators(ranks_a: &[usize], ranks_b: &[usize], n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        let j = n - i;
        if i >= ranks_a.len() || j >= ranks_b.len() {
            continue;
        }
        for a in 0..ranks_a[i] {
            for b in 0..ranks_b[j] {
                out.push((i, a, b));
            }
        }
    }
    out
}

/// Total complex of `A ⊗ B` with `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
pub fn tensor_resolution(a: &Resolution, b: &Resolution, mode: TensorMode) -> Result<Resolution, ResolutionError> {
    if a.p != b.p {
        return Err(ResolutionError::PrimeMismatch);
    }
    let p = a.p;
    let max_degree = a.max_degree.min(b.max_degree);
    match mode {
        TensorMode::DirectProduct => {
            let group = Arc::new(FiniteGroupTable::direct_product(&a.group, &b.group));
            let nb = b.group.order();
            let mut ranks = Vec::new();
            let mut labels = Vec::new();
            let mut index = Vec::new();
            for n in 0..=max_degree {
                let gens = tensor_generators(&a.ranks, &b.ranks, n);
                ranks.push(gens.len());
                labels.push(
                    gens.iter()
                        .map(|&(i, x, y)| {
                            GenLabel::Tensor(Box::new(TensorLabel {
                                left: a.label(i, x).clone(),
                                right: b.label(n - i, y).clone(),
                                left_degree: i,
                                right_degree: n - i,
                                left_index: x,
                                right_index: y,
                                shift: None,
                            }))
                        })
                        .collect(),
                );
                index.push(gens);
            }
            let lookup = |n: usize, i: usize, x: usize, y: usize| -> usize {
                index[n].binary_search(&(i, x, y)).expect("tensor generator")
            };
            let mut diffs = vec![vec![]];
            for n in 1..=max_degree {
                let mut cols = Vec::new();
                for &(i, x, y) in &index[n] {
                    let mut col: Vec<(usize, GroupAlgebraElement)> = Vec::new();
                    if i >= 1 {
                        for (t, lambda) in a.differential(i, x) {
                            let mut e = GroupAlgebraElement::zero(&group, p);
                            for (g, c) in lambda.terms() {
                                e.add_term(g * nb + b.group.identity(), c);
                            }
                            add_column_entry(&mut col, lookup(n - 1, i - 1, t, y), e);
                        }
                    }
                    if n - i >= 1 {
                        let sign = if i % 2 == 1 { p - 1 } else { 1 };
                        for (t, lambda) in b.differential(n - i, y) {
                            let mut e = GroupAlgebraElement::zero(&group, p);
                            for (h, c) in lambda.terms() {
                                e.add_term(a.group.identity() * nb + h, mul_mod(c, sign, p));
                            }
                            add_column_entry(&mut col, lookup(n - 1, i, x, t), e);
                        }
                    }
                    col.retain(|(_, e)| !e.is_zero());
                    col.sort_by_key(|(t, _)| *t);
                    cols.push(col);
                }
                diffs.push(cols);
            }
            Ok(Resolution {
                group,
                p,
                kind: ResolutionKind::Tensor,
                max_degree,
                ranks,
                diffs,
                labels,
                minimal: a.minimal && b.minimal,
            })
        }
        TensorMode::Diagonal => {
            if *a.group != *b.group {
                return Err(ResolutionError::GroupMismatch);
            }
            let group = Arc::clone(&a.group);
            let order = group.order();
            let mut ranks = Vec::new();
            let mut labels = Vec::new();
            let mut index = Vec::new();
            for n in 0..=max_degree {
                let gens = tensor_generators(&a.ranks, &b.ranks, n);
                let mut lab = Vec::new();
                for &(i, x, y) in &gens {
                    for h in 0..order {
                        lab.push(GenLabel::Tensor(Box::new(TensorLabel {
                            left: a.label(i, x).clone(),
                            right: b.label(n - i, y).clone(),
                            left_degree: i,
                            right_degree: n - i,
                            left_index: x,
                            right_index: y,
                            shift: Some(h),
                        })));
                    }
                }
                ranks.push(lab.len());
                labels.push(lab);
                index.push(gens);
            }
            // generator (i, x, y, h) is e_x ⊗ h·e_y
            let lookup = |n: usize, i: usize, x: usize, y: usize, h: usize| -> usize {
                index[n].binary_search(&(i, x, y)).expect("tensor generator") * order + h
            };
            let mut diffs = vec![vec![]];
            for n in 1..=max_degree {
                let mut cols = Vec::new();
                for &(i, x, y) in &index[n] {
                    for h in 0..order {
                        let mut col: Vec<(usize, GroupAlgebraElement)> = Vec::new();
                        if i >= 1 {
                            // (g e_t) ⊗ h e_y = g·(e_t ⊗ g^{-1}h e_y)
                            for (t, lambda) in a.differential(i, x) {
                                for (g, c) in lambda.terms() {
                                    let e = GroupAlgebraElement::from_terms(&group, p, &[(g, c as i64)]);
                                    let shift = group.mul(group.inv(g), h);
                                    add_column_entry(&mut col, lookup(n - 1, i - 1, t, y, shift), e);
                                }
                            }
                        }
                        if n - i >= 1 {
                            let sign = if i % 2 == 1 { p - 1 } else { 1 };
                            // e_x ⊗ h g e_t
                            for (t, lambda) in b.differential(n - i, y) {
                                for (g, c) in lambda.terms() {
                                    let e = GroupAlgebraElement::from_terms(
                                        &group,
                                        p,
                                        &[(group.identity(), mul_mod(c, sign, p) as i64)],
                                    );
                                    add_column_entry(&mut col, lookup(n - 1, i, x, t, group.mul(h, g)), e);
                                }
                            }
                        }
                        col.retain(|(_, e)| !e.is_zero());
                        col.sort_by_key(|(t, _)| *t);
                        cols.push(col);
                    }
                }
                diffs.push(cols);
            }
            Ok(Resolution {
                group,
                p,
                kind: ResolutionKind::Tensor,
                max_degree,
                ranks,
                diffs,
                labels,
                minimal: false,
            })
        }
    }
}

fn add_column_entry(col: &mut Vec<(usize, GroupAlgebraElement)>, target: usize, e: GroupAlgebraElement) {
    if let Some(entry) = col.iter_mut().find(|(t, _)| *t == target) {
        entry.1 = entry.1.add(&e).expect("same group");
    } else {
        col.push((target, e));
    }
}

/// Left-associated tensor product of the cyclic resolutions of the factors.
/// Its group table is [`FiniteGroupTable::abelian`] of the spec.
pub fn abelian_minimal_resolution(spec: &AbelianPGroupSpec, max_degree: usize) -> Resolution {
    let mut res = cyclic_resolution(1, spec.p, max_degree);
    res.labels = (0..=max_degree)
        .map(|n| if n == 0 { vec![GenLabel::Minimal(0)] } else { vec![] })
        .collect();
    res.ranks = (0..=max_degree).map(|n| (n == 0) as usize).collect();
    res.diffs = vec![vec![]; max_degree + 1];
    res.minimal = true;
    res.kind = ResolutionKind::Minimal;
    if spec.rank() == 0 {
        return res;
    }
    let mut acc = cyclic_resolution(spec.factor_order(0), spec.p, max_degree);
    for i in 1..spec.rank() {
        let next = cyclic_resolution(spec.factor_order(i), spec.p, max_degree);
        acc = tensor_resolution(&acc, &next, TensorMode::DirectProduct).expect("same prime");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_ranks_and_differential() {
        let g = Arc::new(FiniteGroupTable::cyclic(2));
        let bar = bar_resolution(&g, 2, 2, DEFAULT_BAR_BUDGET).unwrap();
        assert_eq!(bar.ranks(), &[1, 2, 4]);
        // d(1, g) = g·() − ()
        let d = bar.differential(1, 1);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, GroupAlgebraElement::from_terms(&g, 2, &[(1, 1), (0, -1)]));
        bar.check_complex().unwrap();
        assert!(matches!(
            bar_resolution(&g, 2, 30, DEFAULT_BAR_BUDGET),
            Err(ResolutionError::Budget { .. })
        ));
    }

    #[test]
    fn cyclic_differentials() {
        let r = cyclic_resolution(3, 3, 6);
        let g = r.group().clone();
        assert_eq!(r.differential(1, 0)[0].1, GroupAlgebraElement::from_terms(&g, 3, &[(1, 1), (0, -1)]));
        assert_eq!(r.differential(2, 0)[0].1, GroupAlgebraElement::norm(&g, 3));
        assert!(r.is_minimal());
        r.check_complex().unwrap();
        assert!(!cyclic_resolution(6, 3, 2).is_minimal());
        cyclic_resolution(4, 2, 6).check_complex().unwrap();
    }

    #[test]
    fn tensor_ranks_signs_and_exactness() {
        let a = cyclic_resolution(3, 3, 5);
        let t = tensor_resolution(&a, &a, TensorMode::DirectProduct).unwrap();
        assert_eq!(&t.ranks()[..5], &[1, 2, 3, 4, 5]);
        t.check_complex().unwrap();
        assert!(t.check_minimal());
        // d(e1⊗e1) = (g−1)e0⊗e1 − e1⊗(h−1)e0
        let k = (0..t.rank(2)).find(|&k| t.multidegree(2, k) == vec![1, 1]).unwrap();
        let d = t.differential(2, k);
        let grp = t.group().clone();
        let want_left = GroupAlgebraElement::from_terms(&grp, 3, &[(3, 1), (0, -1)]);
        let want_right = GroupAlgebraElement::from_terms(&grp, 3, &[(1, -1), (0, 1)]);
        for (target, e) in d {
            match t.multidegree(1, target).as_slice() {
                [0, 1] => assert_eq!(e, want_left),
                [1, 0] => assert_eq!(e, want_right),
                other => panic!("unexpected target {other:?}"),
            }
        }
        for n in 0..4 {
            assert!(t.check_exact(n), "degree {n}");
        }
        let mixed = tensor_resolution(&cyclic_resolution(2, 2, 5), &cyclic_resolution(4, 2, 5), TensorMode::DirectProduct).unwrap();
        mixed.check_complex().unwrap();
    }

    #[test]
    fn diagonal_mode_is_a_resolution() {
        let g = Arc::new(FiniteGroupTable::cyclic(3));
        let bar = bar_resolution(&g, 3, 3, DEFAULT_BAR_BUDGET).unwrap();
        let c = cyclic_resolution(3, 3, 3);
        let t = tensor_resolution(&bar, &c, TensorMode::Diagonal).unwrap();
        assert_eq!(t.rank(1), (3 + 1) * 3);
        t.check_complex().unwrap();
        for n in 0..2 {
            assert!(t.check_exact(n));
        }
    }

    #[test]
    fn abelian_resolutions() {
        let c9 = abelian_minimal_resolution(&AbelianPGroupSpec::new(3, vec![2]).unwrap(), 5);
        assert_eq!(c9.ranks(), &[1; 6]);
        let c33 = abelian_minimal_resolution(&AbelianPGroupSpec::new(3, vec![1, 1]).unwrap(), 5);
        assert_eq!(c33.rank(4), 5);
        let triv = abelian_minimal_resolution(&AbelianPGroupSpec::new(3, vec![]).unwrap(), 3);
        assert_eq!(triv.ranks(), &[1, 0, 0, 0]);
    }
}
