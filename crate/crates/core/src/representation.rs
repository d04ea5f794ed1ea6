//! Young's orthogonal representation of the adjacent transpositions.
//!
//! For a standard tableau `T` and `1 <= k < N`, with `d = d(T, k)` the axial
//! distance, the generator `ρ((k, k+1))` has diagonal entry `1/d` at `T` and
//! off-diagonal entry `sqrt(1 - 1/d^2)` linking `T` to `(k, k+1)T` whenever
//! the latter is standard. Rows and columns follow the canonical tableau
//! order of [`crate::tableaux`].
//!
//! Words of generators are read as matrix products left to right: the word
//! `[a, b]` is `ρ((a, a+1)) · ρ((b, b+1))`.

use crate::partitions::Partition;
use crate::tableaux::{enumerate_tableaux, TableauBasis};
use crate::{Error, Result};

/// Default upper bound on `f^λ` for anything that builds matrices.
pub const DEFAULT_DIMENSION_CAP: usize = 5000;

/// Sparse symmetric orthogonal matrix with at most one off-diagonal entry
/// per row.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacentGenerator {
    k: usize,
    diag: Vec<f64>,
    partner: Vec<Option<usize>>,
    off_diag: Vec<f64>,
}

impl AdjacentGenerator {
    fn build(basis: &TableauBasis, k: usize) -> Result<Self> {
        let f = basis.len();
        let mut diag = Vec::with_capacity(f);
        let mut partner = Vec::with_capacity(f);
        let mut off_diag = Vec::with_capacity(f);
        for t in basis.tableaux() {
            let d = t.axial_distance(k)?;
            diag.push(1.0 / d as f64);
            match basis.apply_adjacent(t, k)? {
                Some(u) => {
                    // sqrt(1 - d^-2) without cancellation for large |d|
                    let df = d as f64;
                    partner.push(Some(u.index()));
                    off_diag.push(((df - 1.0) * (df + 1.0)).sqrt() / df.abs());
                }
                None => {
                    partner.push(None);
                    off_diag.push(0.0);
                }
            }
        }
        Ok(Self {
            k,
            diag,
            partner,
            off_diag,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn partner(&self, row: usize) -> Option<(usize, f64)> {
        self.partner[row].map(|p| (p, self.off_diag[row]))
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// `G · v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        Ok((0..self.dim())
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if let Some(p) = self.partner[i] {
                    acc += self.off_diag[i] * v[p];
                }
                acc
            })
            .collect())
    }

    /// `G · A` for a dense `A`, in `O(f^2)`.
    pub fn left_multiply(&self, a: &DenseMatrix) -> DenseMatrix {
        assert_eq!(a.n, self.dim());
        let n = a.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            let d = self.diag[i];
            for (o, x) in row.iter_mut().zip(a.row(i)) {
                *o = d * x;
            }
            if let Some(p) = self.partner[i] {
                let w = self.off_diag[i];
                for (o, x) in row.iter_mut().zip(a.row(p)) {
                    *o += w * x;
                }
            }
        }
        out
    }

    /// `Gᵀ · A`, using the column structure of the stored rows.
    fn transpose_left_multiply(&self, a: &DenseMatrix) -> DenseMatrix {
        let n = a.n;
        let mut out = DenseMatrix::zeros(n);
        for l in 0..n {
            // row l of G contributes G[l][l] * A[l] to output row l and
            // G[l][p] * A[l] to output row p
            let d = self.diag[l];
            for c in 0..n {
                out.data[l * n + c] += d * a.data[l * n + c];
            }
            if let Some(p) = self.partner[l] {
                let w = self.off_diag[l];
                for c in 0..n {
                    out.data[p * n + c] += w * a.data[l * n + c];
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = self.diag[i];
            if let Some(p) = self.partner[i] {
                m.data[i * n + p] = self.off_diag[i];
            }
        }
        m
    }

    /// Largest number of off-diagonal nonzeros in any row.
    pub fn max_off_diagonal_per_row(&self) -> usize {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut count = 0;
                if self.partner[i].is_some_and(|p| p != i) && self.off_diag[i] != 0.0 {
                    count += 1;
                }
                count
            })
            .max()
            .unwrap_or(0)
    }

    /// Whether the partner pairing is an involution with matching values.
    pub fn is_structurally_symmetric(&self) -> bool {
        (0..self.dim()).all(|i| match self.partner[i] {
            Some(p) => p != i && self.partner[p] == Some(i) && self.off_diag[p] == self.off_diag[i],
            None => true,
        })
    }
}

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                actual: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Max-norm of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn frobenius_squared(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

/// The generators `ρ((k, k+1))`, `k = 1..N-1`, of one shape, built once and
/// shared read-only.
#[derive(Debug, Clone)]
pub struct YoungOrthogonal {
    basis: TableauBasis,
    generators: Vec<AdjacentGenerator>,
}

impl YoungOrthogonal {
    pub fn new(p: &Partition, cap: usize) -> Result<Self> {
        let basis = enumerate_tableaux(p, cap)?;
        let generators = (1..p.size())
            .map(|k| AdjacentGenerator::build(&basis, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { basis, generators })
    }

    pub fn shape(&self) -> &Partition {
        self.basis.shape()
    }

    pub fn basis(&self) -> &TableauBasis {
        &self.basis
    }

    /// `f^λ`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `N`.
    pub fn degree(&self) -> usize {
        self.shape().size()
    }

    pub fn generators(&self) -> &[AdjacentGenerator] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> Result<&AdjacentGenerator> {
        self.check_index(k)?;
        Ok(&self.generators[k - 1])
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.degree() {
            return Err(Error::OutOfRange {
                what: "generator index",
                value: k as i64,
                min: 1,
                max: self.degree() as i64 - 1,
            });
        }
        Ok(())
    }

    /// Product of the generators in `word`, left to right.
    pub fn represent_word(&self, word: &[usize]) -> Result<DenseMatrix> {
        for &k in word {
            self.check_index(k)?;
        }
        let mut m = DenseMatrix::identity(self.dim());
        for &k in word.iter().rev() {
            m = self.generators[k - 1].left_multiply(&m);
        }
        Ok(m)
    }

    /// `trace(ρ(word)) / f^λ`.
    pub fn trace_character(&self, word: &[usize]) -> Result<f64> {
        if word.is_empty() {
            return Ok(1.0);
        }
        if word.len() == 1 {
            self.check_index(word[0])?;
            return Ok(self.generators[word[0] - 1].trace() / self.dim() as f64);
        }
        Ok(self.represent_word(word)?.trace() / self.dim() as f64)
    }

    pub fn coxeter_audit(&self) -> CoxeterAudit {
        let n = self.dim();
        let id = DenseMatrix::identity(n);
        let dense: Vec<DenseMatrix> = self.generators.iter().map(|g| g.to_dense()).collect();
        let mut audit = CoxeterAudit::default();
        for (g, gd) in self.generators.iter().zip(&dense) {
            audit.involution = audit.involution.max(g.left_multiply(gd).max_abs_diff(&id));
            audit.symmetry = audit.symmetry.max(gd.max_abs_diff(&gd.transpose()));
            audit.orthogonality = audit
                .orthogonality
                .max(g.transpose_left_multiply(gd).max_abs_diff(&id));
            audit.max_off_diagonal_per_row = audit
                .max_off_diagonal_per_row
                .max(g.max_off_diagonal_per_row());
            audit.structurally_symmetric &= g.is_structurally_symmetric();
        }
        let count = self.generators.len();
        for a in 0..count {
            for b in a + 2..count {
                let ab = self.generators[a].left_multiply(&dense[b]);
                let ba = self.generators[b].left_multiply(&dense[a]);
                audit.commutation = audit.commutation.max(ab.max_abs_diff(&ba));
            }
            if a + 1 < count {
                let (ga, gb) = (&self.generators[a], &self.generators[a + 1]);
                let aba = ga.left_multiply(&gb.left_multiply(&dense[a]));
                let bab = gb.left_multiply(&ga.left_multiply(&dense[a + 1]));
                audit.braid = audit.braid.max(aba.max_abs_diff(&bab));
            }
        }
        audit
    }
}

/// Max-norm residuals of the Coxeter relations and of symmetry and
/// orthogonality, over all generators of one shape.
#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterAudit {
    /// `max_k |G_k^2 - I|`.
    pub involution: f64,
    /// `max |G_k G_l - G_l G_k|` over `|k - l| >= 2`.
    pub commutation: f64,
    /// `max_k |G_k G_{k+1} G_k - G_{k+1} G_k G_{k+1}|`.
    pub braid: f64,
    /// `max_k |G_k - G_kᵀ|`.
    pub symmetry: f64,
    /// `max_k |G_kᵀ G_k - I|`.
    pub orthogonality: f64,
    pub max_off_diagonal_per_row: usize,
    pub structurally_symmetric: bool,
}

impl Default for CoxeterAudit {
    fn default() -> Self {
        Self {
            involution: 0.0,
            commutation: 0.0,
            braid: 0.0,
            symmetry: 0.0,
            orthogonality: 0.0,
            max_off_diagonal_per_row: 0,
            structurally_symmetric: true,
        }
    }
}

impl CoxeterAudit {
    pub fn max_residual(&self) -> f64 {
        [
            self.involution,
            self.commutation,
            self.braid,
            self.symmetry,
            self.orthogonality,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_residual() <= tolerance
            && self.max_off_diagonal_per_row <= 1
            && self.structurally_symmetric
    }
}

/// `ρ((k, k+1))` for one shape.
pub fn generator(p: &Partition, k: usize, cap: usize) -> Result<AdjacentGenerator> {
    if p.size() < 2 {
        return Err(Error::DegenerateShape {
            size: p.size(),
            needed: 2,
        });
    }
    if k == 0 || k >= p.size() {
        return Err(Error::OutOfRange {
            what: "generator index",
            value: k as i64,
            min: 1,
            max: p.size() as i64 - 1,
        });
    }
    let basis = enumerate_tableaux(p, cap)?;
    AdjacentGenerator::build(&basis, k)
}

pub fn represent_word(p: &Partition, word: &[usize], cap: usize) -> Result<DenseMatrix> {
    YoungOrthogonal::new(p, cap)?.represent_word(word)
}

pub fn trace_character(p: &Partition, word: &[usize], cap: usize) -> Result<f64> {
    YoungOrthogonal::new(p, cap)?.trace_character(word)
}

pub fn coxeter_audit(p: &Partition, cap: usize) -> Result<CoxeterAudit> {
    Ok(YoungOrthogonal::new(p, cap)?.coxeter_audit())
}
