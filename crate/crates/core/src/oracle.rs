//! Brute-force spectra: the explicit adjacency matrix of `X(S)` and a
//! cyclic Jacobi eigensolver. Shares no code with [`crate::spectra`] beyond
//! group multiplication.

use crate::exec::Execution;
use crate::subset::CayleySubset;
use crate::{Error, Result};

/// Largest matrix order the oracle accepts.
pub const ORACLE_MAX_N: usize = 4096;
pub const MAX_SWEEPS: usize = 100;
pub const DEFAULT_MATCH_TOL: f64 = 1e-8;

/// Dense symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// From rows; panics unless square and symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut a = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix is not square");
            for (j, &v) in row.iter().enumerate() {
                a.data[i * n + j] = v;
            }
        }
        assert!(a.is_symmetric(), "matrix is not symmetric");
        a
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.iter().sum())
            .collect()
    }

    /// `P A P^T` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut b = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                b.data[perm[i] * self.n + perm[j]] = self.get(i, j);
            }
        }
        b
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }
}

/// `A[g][h] = 1` iff `g^{-1} h ∈ S`.
pub fn adjacency_matrix(s: &CayleySubset) -> Result<SymmetricMatrix> {
    let group = s.group();
    let n = group.order();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge {
            n,
            cap: ORACLE_MAX_N,
        });
    }
    let mut member = vec![false; n];
    for g in s.elements() {
        member[group.index(g)] = true;
    }
    let mut a = SymmetricMatrix::zeros(n);
    for (i, g) in group.elements().enumerate() {
        let gi = group.inverse(g);
        for (j, h) in group.elements().enumerate() {
            if member[group.index(group.multiply(gi, h))] {
                a.data[i * n + j] = 1.0;
            }
        }
    }
    Ok(a)
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending. Stops once the off-diagonal Frobenius norm drops below
/// `1e-12 * ||A||_F`.
pub fn symmetric_eigenvalues(a: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = a.n;
    let mut a = a.clone();
    let target = 1e-12 * a.frobenius();
    let mut sweeps = 0;
    while a.off_diagonal() > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: a.off_diagonal(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.data[k * n + p] = c * akp - s * akq;
                    a.data[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.data[p * n + k] = c * apk - s * aqk;
                    a.data[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

pub fn oracle_spectrum(s: &CayleySubset) -> Result<Vec<f64>> {
    symmetric_eigenvalues(&adjacency_matrix(s)?)
}

/// Largest elementwise gap between the sorted formula spectrum and the
/// sorted oracle spectrum.
pub fn spectrum_delta(s: &CayleySubset) -> Result<f64> {
    let oracle = oracle_spectrum(s)?;
    let formula = crate::spectra::full_spectrum(s).values;
    Ok(formula
        .iter()
        .zip(&oracle)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

pub fn spectra_match(s: &CayleySubset, tol: f64) -> Result<bool> {
    Ok(spectrum_delta(s)? <= tol)
}

/// [`spectrum_delta`] over a batch, one matrix per task.
pub fn batch_deltas(subsets: &[CayleySubset], exec: Execution) -> Result<Vec<f64>> {
    exec.map(subsets, spectrum_delta).into_iter().collect()
}
