//! Pages of the spectral sequence as nested subspaces `B_r ⊂ Z_r ⊂ E_2^{i,j}`.

use std::collections::BTreeMap;

use crate::linalg::EchelonBasis;

/// `Z / B` inside `F_p^n`, with a fixed basis of representatives for the quotient.
#[derive(Debug, Clone)]
pub struct Subquotient {
    cycles: EchelonBasis,
    boundaries: EchelonBasis,
    reps: Vec<Vec<u32>>,
    /// Boundary rows followed by the representatives.
    frame: EchelonBasis,
}

impl Subquotient {
    pub fn full(p: u32, dim: usize) -> Self {
        let mut cycles = EchelonBasis::new(p, dim);
        for k in 0..dim {
            let mut e = vec![0; dim];
            e[k] = 1;
            cycles.insert(&e);
        }
        Self::new(cycles, EchelonBasis::new(p, dim))
    }

    pub fn new(cycles: EchelonBasis, boundaries: EchelonBasis) -> Self {
        debug_assert!(boundaries.rows().iter().all(|b| cycles.contains(b)));
        let mut frame = EchelonBasis::new(cycles.prime(), cycles.dim());
        for b in boundaries.rows() {
            frame.insert(b);
        }
        let mut reps = Vec::new();
        for z in cycles.rows() {
            if !frame.contains(z) {
                frame.insert(z);
                reps.push(z.clone());
            }
        }
        Subquotient {
            cycles,
            boundaries,
            reps,
            frame,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.dim()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn cycles(&self) -> &EchelonBasis {
        &self.cycles
    }

    pub fn boundaries(&self) -> &EchelonBasis {
        &self.boundaries
    }

    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.reps
    }

    pub fn is_cycle(&self, v: &[u32]) -> bool {
        self.cycles.contains(v)
    }

    pub fn is_boundary(&self, v: &[u32]) -> bool {
        self.boundaries.contains(v)
    }

    /// Coordinates of a cycle modulo boundaries in the representative basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.frame.express(v)?;
        Some(c[self.boundaries.rank()..].to_vec())
    }
}

/// Equal as pairs of subspaces (the representative choice is ignored).
impl PartialEq for Subquotient {
    fn eq(&self, other: &Self) -> bool {
        self.cycles.rows() == other.cycles.rows() && self.boundaries.rows() == other.boundaries.rows()
    }
}

impl Eq for Subquotient {}

/// `E_r^{i,j}` for every stored bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    /// Bidegrees with `i + j ≤ stored_through` are kept.
    pub stored_through: usize,
    pub(crate) cells: BTreeMap<(usize, usize), Subquotient>,
}

impl Page {
    pub fn cell(&self, i: usize, j: usize) -> Option<&Subquotient> {
        self.cells.get(&(i, j))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &Subquotient)> {
        self.cells.iter()
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.cell(i, j).map_or(0, |c| c.dim())
    }

    pub fn total_dim(&self, d: usize) -> usize {
        (0..=d).map(|j| self.dim(d - j, j)).sum()
    }

    /// `dims[j][i] = dim E_r^{i,j}` for `i + j ≤ through`.
    pub fn table(&self, through: usize) -> Vec<Vec<usize>> {
        (0..=through)
            .map(|j| (0..=through - j).map(|i| self.dim(i, j)).collect())
            .collect()
    }
}
