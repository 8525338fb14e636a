use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse row: column index to nonzero value, ordered by column.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Integer matrix stored as sparse rows.
///
/// Boundary and Laplacian matrices of meshes have a handful of nonzeros per
/// row, so elimination is done row-sparse with gcd-normalised integer rows
/// (fraction-free: no rational arithmetic until back substitution).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, i64>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (i, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i].get(&j).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v == 0 {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.data[i].iter().map(|(&j, &v)| (j, v))
    }

    pub fn nnz_in_column(&self, j: usize) -> usize {
        self.data.iter().filter(|r| r.contains_key(&j)).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, &v) in row {
                t.data[j].insert(i, v);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &a) in row {
                for (&j, &b) in &other.data[k] {
                    *acc.entry(j).or_insert(0) += a * b;
                }
            }
            acc.retain(|_, v| *v != 0);
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (&j, &v) in row {
                let cur = out.get(i, j);
                out.set(i, j, cur + v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn to_dense_f64(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (&j, &v) in row {
                d[i][j] = v as f64;
            }
        }
        d
    }

    /// Places `self` and `other` side by side: `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hcat");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i] = self.data[i].clone();
            for (&j, &v) in &other.data[i] {
                out.data[i].insert(self.cols + j, v);
            }
        }
        out
    }

    /// Keeps only the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![None; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = Some(new);
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (new_i, &old_i) in rows.iter().enumerate() {
            for (&j, &v) in &self.data[old_i] {
                if let Some(nj) = col_map[j] {
                    out.data[new_i].insert(nj, v);
                }
            }
        }
        out
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        Echelon::reduce(self, false).pivots.len()
    }

    /// Basis of the right null space over the rationals, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let ech = Echelon::reduce(self, true);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(c, _)| c).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for &(pc, ref row) in &ech.pivots {
                if let Some(entry) = row.get(&free) {
                    let p = &row[&pc];
                    v[pc] = -BigRational::new(entry.clone(), p.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

struct Echelon {
    /// (pivot column, reduced row) in elimination order.
    pivots: Vec<(usize, SparseRow)>,
}

impl Echelon {
    /// Fraction-free elimination. With `full`, pivot columns are also cleared
    /// from earlier pivot rows (reduced echelon form up to row scaling).
    fn reduce(m: &IntMatrix, full: bool) -> Self {
        let mut pending: Vec<SparseRow> = m
            .data
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().map(|(&j, &v)| (j, BigInt::from(v))).collect())
            .collect();
        let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
        for col in 0..m.cols {
            let Some(best) = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&col))
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i)
            else {
                continue;
            };
            let pivot_row = pending.swap_remove(best);
            for row in pending.iter_mut() {
                if row.contains_key(&col) {
                    eliminate(row, &pivot_row, col);
                }
            }
            pending.retain(|r| !r.is_empty());
            if full {
                for (_, row) in pivots.iter_mut() {
                    if row.contains_key(&col) {
                        eliminate(row, &pivot_row, col);
                    }
                }
            }
            pivots.push((col, pivot_row));
        }
        Echelon { pivots }
    }
}

/// row <- (p * row - a * pivot) / gcd, where p = pivot[col], a = row[col].
fn eliminate(row: &mut SparseRow, pivot: &SparseRow, col: usize) {
    let p = &pivot[&col];
    let a = row[&col].clone();
    let g = p.gcd(&a);
    let pm = p / &g;
    let am = &a / &g;
    for v in row.values_mut() {
        *v *= &pm;
    }
    for (&j, v) in pivot {
        let e = row.entry(j).or_insert_with(BigInt::zero);
        *e -= &am * v;
    }
    row.retain(|_, v| !v.is_zero());
    normalize_row(row);
}

fn normalize_row(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    let g = g.abs();
    for v in row.values_mut() {
        *v /= &g;
    }
}
