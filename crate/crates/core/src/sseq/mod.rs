//! The LHS spectral sequence of a central extension `C_{p^m} → E → G`.
//!
//! Pages are stored as nested subspaces of `E_2` in `(t, u)`-coordinates.
//! `d_2`, `d_3` and `d_4` come from closed formulas evaluated on stored
//! representatives. Longer differentials are supplied as overrides and
//! extended multiplicatively over permanent cycles (row 0, and `t^p` while
//! `r ≤ 2p`).

mod e2;
mod page;
mod series;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::ExprError;
use crate::group::ExtensionSpec;
use crate::linalg::{axpy, is_zero, kernel_basis, solve_linear, EchelonBasis, FpMatrix};
use crate::ring::{massey_triple, CohoClass, RingError};

pub use e2::{E2Class, E2Coordinates};
pub use page::{Page, Subquotient};
pub use series::{expand_rational, Rational};

pub const DEFAULT_R_MAX: usize = 7;

#[derive(Debug, Error)]
pub enum SseqError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error("expression is not homogeneous: bidegrees {0:?} and {1:?}")]
    Inhomogeneous((usize, usize), (usize, usize)),
    #[error("expected bidegree {expected:?}, found {found:?}")]
    Bidegree {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("override d_{r}({class}): {reason}")]
    Override { r: usize, class: String, reason: String },
    #[error("d_{r} maps a class at {at:?} outside Z_{r}{target:?}")]
    NotCycle {
        r: usize,
        at: (usize, usize),
        target: (usize, usize),
    },
    #[error("d_{r} ∘ d_{r} is nonzero on E_{r}{at:?}")]
    DSquared { r: usize, at: (usize, usize) },
    #[error("d_{r} at {at:?}: {reason}")]
    Hypothesis {
        r: usize,
        at: (usize, usize),
        reason: String,
    },
    #[error("class {class} does not survive to E_{r}")]
    NotSurviving { r: usize, class: String },
    #[error("bidegree {0:?} lies beyond the computed range")]
    OutOfRange((usize, usize)),
    #[error("r_max must be at least 2")]
    RMax,
    #[error("series: {0}")]
    Series(String),
}

/// A prescribed value `d_r(source) = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialOverride {
    pub r: usize,
    pub source: String,
    pub value: String,
    #[serde(default)]
    pub provenance: String,
}

#[derive(Debug, Clone)]
struct ParsedOverride {
    r: usize,
    source: E2Class,
    value: E2Class,
}

/// `dims[j][i] = dim E_r^{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageTable {
    pub r: usize,
    pub dims: Vec<Vec<usize>>,
    /// Rank of `d_r` leaving this page, summed over bidegrees (absent on the last page).
    pub differential_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareData {
    /// `dim` of total degree `d` on the last page, for `d ≤ valid_through`.
    pub coefficients: Vec<usize>,
    pub valid_through: usize,
    /// `dims[j][i]` on the last page.
    pub bigraded: Vec<Vec<usize>>,
}

/// A differential beyond `r_max` that bidegrees alone do not rule out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PossibleDifferential {
    pub r: usize,
    pub source: (usize, usize),
    pub target: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SseqReport {
    pub max_degree: usize,
    pub r_max: usize,
    /// Kernel of order 2: rows are powers of `u` with `u² = t`.
    pub experimental: bool,
    pub pages: Vec<PageTable>,
    pub poincare: PoincareData,
    pub later_differentials: Vec<PossibleDifferential>,
    pub overrides: Vec<DifferentialOverride>,
}

#[derive(Debug, Clone)]
pub struct SseqRun {
    pub report: SseqReport,
    /// `E_2 … E_{r_max}`.
    pub pages: Vec<Page>,
}

/// `d_r` on one page: the images of the representatives of every source cell,
/// as vectors in the target's `E_2` coordinates.
#[derive(Debug, Clone)]
pub struct Differential {
    pub r: usize,
    pub images: BTreeMap<(usize, usize), Vec<Vec<u32>>>,
}

pub struct Sseq {
    coords: E2Coordinates,
    xi: CohoClass,
    xi_prime: CohoClass,
    max_degree: usize,
    overrides: Vec<ParsedOverride>,
    raw_overrides: Vec<DifferentialOverride>,
    rng: Option<ChaCha8Rng>,
}

impl Sseq {
    /// Engine truncated at total degree `max_degree`.
    pub fn new(spec: &ExtensionSpec, max_degree: usize, overrides: &[DifferentialOverride]) -> Result<Self, SseqError> {
        let coords = E2Coordinates::new(spec, max_degree + 1);
        let mut parsed = Vec::new();
        for ov in overrides {
            let bad = |reason: &str| SseqError::Override {
                r: ov.r,
                class: ov.source.clone(),
                reason: reason.to_string(),
            };
            if ov.r < 5 {
                return Err(bad("overrides are for pages r ≥ 5"));
            }
            let source = coords.parse(&ov.source)?;
            if source.is_zero() {
                return Err(bad("source is zero"));
            }
            let (i, j) = source.bidegree();
            if j + 1 < ov.r {
                return Err(bad("target row would be negative"));
            }
            let value = coords.parse_at(&ov.value, i + ov.r, j + 1 - ov.r).map_err(|e| bad(&e.to_string()))?;
            parsed.push(ParsedOverride {
                r: ov.r,
                source,
                value,
            });
        }
        Ok(Sseq {
            coords,
            xi: spec.xi.clone(),
            xi_prime: spec.xi_prime(),
            max_degree,
            overrides: parsed,
            raw_overrides: overrides.to_vec(),
            rng: None,
        })
    }

    /// Randomize the choices made by `d_4` (the solution `χ'` and the
    /// Massey representative) within their indeterminacy.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng = Some(ChaCha8Rng::seed_from_u64(seed));
        self
    }

    pub fn coordinates(&self) -> &E2Coordinates {
        &self.coords
    }

    pub fn p(&self) -> u32 {
        self.coords.spec.p
    }

    /// `E_2`, stored one total degree past the truncation so that every
    /// differential out of degree `≤ max_degree` has a target.
    pub fn initial_page(&self) -> Page {
        let top = self.max_degree + 1;
        let mut cells = BTreeMap::new();
        for i in 0..=top {
            for j in 0..=top - i {
                cells.insert((i, j), Subquotient::full(self.p(), self.coords.dim(i)));
            }
        }
        Page {
            r: 2,
            stored_through: top,
            cells,
        }
    }

    pub fn run(&mut self, r_max: usize) -> Result<SseqRun, SseqError> {
        if r_max < 2 {
            return Err(SseqError::RMax);
        }
        let valid_through = self.max_degree.saturating_sub(r_max);
        let mut pages = vec![self.initial_page()];
        let mut tables = Vec::new();
        for r in 2..r_max {
            let page = pages.last().expect("nonempty");
            let d = self.differential(page, r)?;
            let (next, rank) = self.turn(page, &d)?;
            tables.push(PageTable {
                r,
                dims: page.table(valid_through),
                differential_rank: Some(rank),
            });
            pages.push(next);
        }
        let last = pages.last().expect("nonempty");
        tables.push(PageTable {
            r: r_max,
            dims: last.table(valid_through),
            differential_rank: None,
        });
        let poincare = PoincareData {
            coefficients: (0..=valid_through).map(|d| last.total_dim(d)).collect(),
            valid_through,
            bigraded: last.table(valid_through),
        };
        let later_differentials = possible_later(last, r_max, valid_through);
        Ok(SseqRun {
            report: SseqReport {
                max_degree: self.max_degree,
                r_max,
                experimental: self.coords.u_squared_is_t,
                pages: tables,
                poincare,
                later_differentials,
                overrides: self.raw_overrides.clone(),
            },
            pages,
        })
    }

    /// `d_r` on the representatives of every cell of total degree `≤ max_degree`.
    pub fn differential(&mut self, page: &Page, r: usize) -> Result<Differential, SseqError> {
        let mut extensions = if r >= 5 { self.override_extensions(page, r)? } else { BTreeMap::new() };
        let mut images = BTreeMap::new();
        for (&(i, j), cell) in &page.cells {
            if i + j > self.max_degree || j + 1 < r || cell.dim() == 0 {
                continue;
            }
            let target = (i + r, j + 1 - r);
            let tcell = page.cell(target.0, target.1).ok_or(SseqError::OutOfRange(target))?;
            let mut col = Vec::with_capacity(cell.dim());
            for rep in cell.representatives() {
                let w = if r <= 4 {
                    let chi = self.coords.from_vector(i, j, rep).chi;
                    let value = self.formula(r, j, &chi)?;
                    self.coords.to_vector(&value)
                } else {
                    match extensions.get_mut(&(i, j)) {
                        Some(ext) => ext.eval(rep),
                        None => vec![0; tcell.ambient_dim()],
                    }
                };
                if !tcell.is_cycle(&w) {
                    return Err(SseqError::NotCycle { r, at: (i, j), target });
                }
                col.push(w);
            }
            images.insert((i, j), col);
        }
        Ok(Differential { r, images })
    }

    /// `d_r(class)` for a class surviving to `page` (which must be `E_r`).
    pub fn evaluate(&mut self, page: &Page, class: &E2Class) -> Result<E2Class, SseqError> {
        let r = page.r;
        let (i, j) = class.bidegree();
        let cell = page.cell(i, j).ok_or(SseqError::OutOfRange((i, j)))?;
        let v = self.coords.to_vector(class);
        if !cell.is_cycle(&v) {
            return Err(SseqError::NotSurviving {
                r,
                class: class.to_string(),
            });
        }
        if j + 1 < r {
            return Ok(E2Class::new(0, CohoClass::zero(&self.coords.spec.quotient, i + r)));
        }
        if r <= 4 {
            return self.formula(r, j, &class.chi);
        }
        let mut ext = self.override_extensions(page, r)?;
        let w = match ext.get_mut(&(i, j)) {
            Some(e) => e.eval(&v),
            None => vec![0; self.coords.dim(i + r)],
        };
        Ok(self.coords.from_vector(i + r, j + 1 - r, &w))
    }

    /// Homology of `d_r`; returns `E_{r+1}` and the total rank of `d_r`.
    pub fn turn(&self, page: &Page, d: &Differential) -> Result<(Page, usize), SseqError> {
        let p = self.p();
        let r = d.r;
        let target_of = |(i, j): (usize, usize)| (i + r, j + 1 - r);
        let mut coords: BTreeMap<(usize, usize), Vec<Vec<u32>>> = BTreeMap::new();
        for (&src, imgs) in &d.images {
            let t = target_of(src);
            let tcell = &page.cells[&t];
            let cols = imgs
                .iter()
                .map(|w| tcell.coordinates(w).expect("image checked to be a cycle"))
                .collect();
            coords.insert(src, cols);
        }
        for (&src, cols) in &coords {
            let t = target_of(src);
            let (Some(next_imgs), Some(_)) = (d.images.get(&t), coords.get(&t)) else { continue };
            let t2 = target_of(t);
            let t2cell = &page.cells[&t2];
            for c in cols {
                let mut w = vec![0; t2cell.ambient_dim()];
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        axpy(&mut w, ck, &next_imgs[k], p);
                    }
                }
                if !t2cell.is_boundary(&w) {
                    return Err(SseqError::DSquared { r, at: src });
                }
            }
        }
        let mut new_boundaries: BTreeMap<(usize, usize), Vec<&Vec<u32>>> = BTreeMap::new();
        for (&src, imgs) in &d.images {
            new_boundaries.entry(target_of(src)).or_default().extend(imgs);
        }
        let mut total_rank = 0;
        let mut cells = BTreeMap::new();
        for (&pos, cell) in &page.cells {
            let mut boundaries = cell.boundaries().clone();
            for w in new_boundaries.get(&pos).into_iter().flatten() {
                boundaries.insert(w);
            }
            total_rank += boundaries.rank() - cell.boundaries().rank();
            let cycles = match coords.get(&pos) {
                Some(cols) => {
                    let tdim = page.cells[&target_of(pos)].dim();
                    let kernel = if tdim == 0 {
                        identity(cell.dim())
                    } else {
                        kernel_basis(&FpMatrix::from_columns(p, tdim, cols))
                    };
                    let mut z = cell.boundaries().clone();
                    for k in kernel {
                        let mut v = vec![0; cell.ambient_dim()];
                        for (rep, &c) in cell.representatives().iter().zip(&k) {
                            if c != 0 {
                                axpy(&mut v, c, rep, p);
                            }
                        }
                        z.insert(&v);
                    }
                    z
                }
                None => cell.cycles().clone(),
            };
            cells.insert(pos, Subquotient::new(cycles, boundaries));
        }
        Ok((
            Page {
                r: r + 1,
                stored_through: page.stored_through,
                cells,
            },
            total_rank,
        ))
    }

    /// Closed formulas for `d_2`, `d_3`, `d_4` on `t^n u^ε χ` in row `j`.
    fn formula(&mut self, r: usize, j: usize, chi: &CohoClass) -> Result<E2Class, SseqError> {
        let q = self.coords.spec.quotient.clone();
        let i = chi.degree();
        let zero = |row: usize, deg: usize| E2Class::new(row, CohoClass::zero(&q, deg));
        if j + 1 < r {
            return Ok(zero(0, i + r));
        }
        let (n, odd) = ((j / 2) as i64, j % 2 == 1);
        let target = j + 1 - r;
        let p = self.p() as i64;
        match r {
            // d_2(t^n u χ) = t^n ξ χ, zero on even rows
            2 => Ok(if odd {
                E2Class::new(target, self.xi.cup(chi)?)
            } else {
                zero(target, i + 2)
            }),
            // d_3(t^n χ) = n t^{n-1} ξ' χ, d_3(t^n u χ) = -n t^{n-1} u ξ' χ
            3 => {
                let c = if odd { -n } else { n };
                Ok(E2Class::new(target, self.xi_prime.cup(chi)?.scale_i64(c)))
            }
            4 if odd => {
                // d_4(t^n u χ) = n t^{n-1} ⟨ξ', χ, ξ⟩
                if n % p == 0 {
                    return Ok(zero(target, i + 4));
                }
                let m = massey_triple(&self.xi_prime, chi, &self.xi).map_err(|e| SseqError::Hypothesis {
                    r,
                    at: (i, j),
                    reason: e.to_string(),
                })?;
                let mut value = m.representative;
                if let Some(rng) = &mut self.rng {
                    for b in &m.indeterminacy_basis {
                        value = value.add(&b.scale(rng.gen_range(0..self.coords.spec.p)))?;
                    }
                }
                Ok(E2Class::new(target, value.scale_i64(n)))
            }
            4 => {
                // d_4(t^n χ) = n(n-1) t^{n-2} u ξ' χ' with ξ χ' = ξ' χ
                let c = n * (n - 1);
                if c % p == 0 {
                    return Ok(zero(target, i + 4));
                }
                let chi1 = self.solve_xi(chi).ok_or_else(|| SseqError::Hypothesis {
                    r,
                    at: (i, j),
                    reason: format!("no class χ' with ξχ' = ξ'({chi})"),
                })?;
                Ok(E2Class::new(target, self.xi_prime.cup(&chi1)?.scale_i64(c)))
            }
            _ => unreachable!("formulas cover r ≤ 4"),
        }
    }

    /// A solution `χ'` of `ξ χ' = ξ' χ`, shifted by a random element of
    /// `ker(ξ·)` in randomized mode.
    fn solve_xi(&mut self, chi: &CohoClass) -> Option<CohoClass> {
        let p = self.p();
        let q = &self.coords.spec.quotient;
        let i = chi.degree();
        let (src, dst) = (self.coords.basis(i + 1), self.coords.basis(i + 3));
        let columns: Vec<Vec<u32>> = src
            .monomials
            .iter()
            .map(|m| {
                self.xi
                    .cup(&CohoClass::monomial(q, m.clone(), 1))
                    .expect("same group")
                    .to_vector(dst)
            })
            .collect();
        let m = FpMatrix::from_columns(p, dst.len(), &columns);
        let rhs = self.xi_prime.cup(chi).expect("same group").to_vector(dst);
        let mut x = solve_linear(&m, &rhs)?;
        if let Some(rng) = &mut self.rng {
            for k in kernel_basis(&m) {
                axpy(&mut x, rng.gen_range(0..p), &k, p);
            }
        }
        Some(CohoClass::from_vector(q, src, &x))
    }

    /// Leibniz extensions of the overrides for page `r`, keyed by source bidegree.
    fn override_extensions(
        &self,
        page: &Page,
        r: usize,
    ) -> Result<BTreeMap<(usize, usize), LinearExtension>, SseqError> {
        let p = self.p() as usize;
        let q = &self.coords.spec.quotient;
        let mut out: BTreeMap<(usize, usize), LinearExtension> = BTreeMap::new();
        for ov in self.overrides.iter().filter(|o| o.r == r) {
            let err = |reason: String| SseqError::Override {
                r,
                class: ov.source.to_string(),
                reason,
            };
            let (i0, j0) = ov.source.bidegree();
            let cell = page.cell(i0, j0).ok_or(SseqError::OutOfRange((i0, j0)))?;
            if !cell.is_cycle(&self.coords.to_vector(&ov.source)) {
                return Err(err(format!("source does not survive to E_{r}")));
            }
            // t^p is a permanent cycle through E_{2p}
            let t_steps = if r <= 2 * p { usize::MAX } else { 0 };
            for k in 0..=t_steps {
                let row = j0 + 2 * p * k;
                if i0 + row > self.max_degree {
                    break;
                }
                for e in 0..=self.max_degree - i0 - row {
                    for m in &self.coords.basis(e).monomials {
                        let rho = E2Class::new(2 * p * k, CohoClass::monomial(q, m.clone(), 1));
                        let z = self.coords.mul(&rho, &ov.source);
                        let mut w = self.coords.mul(&rho, &ov.value);
                        if e % 2 == 1 {
                            w.chi = w.chi.neg();
                        }
                        let (i, j) = (i0 + e, row);
                        let tpos = (i + r, j + 1 - r);
                        let scell = &page.cells[&(i, j)];
                        let tcell = &page.cells[&tpos];
                        let zv = self.coords.to_vector(&E2Class::new(j, z.chi.clone()));
                        let wv = self.coords.to_vector(&E2Class::new(tpos.1, w.chi.clone()));
                        if !scell.is_cycle(&zv) {
                            return Err(err(format!("the product with {rho} does not survive to E_{r}")));
                        }
                        out.entry((i, j))
                            .or_insert_with(|| LinearExtension::new(scell))
                            .add(&zv, &wv, tcell)
                            .map_err(|()| err(format!("Leibniz extension is inconsistent at {:?}", (i, j))))?;
                    }
                }
            }
        }
        Ok(out)
    }
}

fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = 1;
            e
        })
        .collect()
}

/// A linear map on `Z_r / B_r` of one cell, prescribed on a spanning set and
/// extended by zero on a complement chosen on demand.
struct LinearExtension {
    frame: EchelonBasis,
    values: Vec<Vec<u32>>,
    target_dim: Option<usize>,
}

impl LinearExtension {
    fn new(cell: &Subquotient) -> Self {
        let mut frame = EchelonBasis::new(cell.cycles().prime(), cell.ambient_dim());
        for b in cell.boundaries().rows() {
            frame.insert(b);
        }
        LinearExtension {
            frame,
            values: vec![],
            target_dim: None,
        }
    }

    fn combine(&self, coeffs: &[u32], dim: usize) -> Vec<u32> {
        let p = self.frame.prime();
        let nb = coeffs.len() - self.values.len();
        let mut w = vec![0; dim];
        for (c, v) in coeffs[nb..].iter().zip(&self.values) {
            if *c != 0 {
                axpy(&mut w, *c, v, p);
            }
        }
        w
    }

    fn add(&mut self, v: &[u32], w: &[u32], target: &Subquotient) -> Result<(), ()> {
        self.target_dim = Some(w.len());
        match self.frame.express(v) {
            Some(c) => {
                let mut diff = self.combine(&c, w.len());
                axpy(&mut diff, self.frame.prime() - 1, w, self.frame.prime());
                if is_zero(&diff) || target.is_boundary(&diff) {
                    Ok(())
                } else {
                    Err(())
                }
            }
            None => {
                self.frame.insert(v);
                self.values.push(w.to_vec());
                Ok(())
            }
        }
    }

    fn eval(&mut self, v: &[u32]) -> Vec<u32> {
        let dim = self.target_dim.expect("extension has values");
        match self.frame.express(v) {
            Some(c) => self.combine(&c, dim),
            None => {
                self.frame.insert(v);
                self.values.push(vec![0; dim]);
                vec![0; dim]
            }
        }
    }
}

/// Bidegrees where `d_r`, `r ≥ r_max`, could still be nonzero on the last page.
fn possible_later(page: &Page, r_max: usize, through: usize) -> Vec<PossibleDifferential> {
    let mut out = Vec::new();
    for (&(i, j), cell) in page.cells() {
        if i + j > through || cell.dim() == 0 {
            continue;
        }
        for r in r_max..=j + 1 {
            let target = (i + r, j + 1 - r);
            if page.dim(target.0, target.1) > 0 {
                out.push(PossibleDifferential { r, source: (i, j), target });
            }
        }
    }
    out
}
