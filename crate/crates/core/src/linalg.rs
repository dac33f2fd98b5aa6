//! Exact linear algebra over ℚ and ℤ.
//!
//! Rational systems are cleared to primitive integer rows and reduced with
//! fraction-free row operations: a row `r` is reduced against a pivot row `p`
//! at column `c` as `(p_c/g)·r − (r_c/g)·p` with `g = gcd(p_c, r_c)`, and the
//! content is divided out afterwards. No division ever leaves ℤ.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{make_primitive, normalize_sign, to_primitive_integers, Rational};

/// Sparse integer row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

fn lead(row: &SparseRow) -> Option<usize> {
    row.first().map(|(c, _)| *c)
}

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `ca·a − cb·b`
fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (col, v) = if take_a {
            i += 1;
            (a[i - 1].0, ca * &a[i - 1].1)
        } else if take_b {
            j += 1;
            (b[j - 1].0, -(cb * &b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, ca * &a[i - 1].1 - cb * &b[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn primitive_sparse(mut row: SparseRow) -> SparseRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
    row
}

/// Eliminates `row`'s entry at `col` using `pivot`, whose entry at `col` is nonzero.
fn eliminate(row: &SparseRow, pivot: &SparseRow, col: usize) -> SparseRow {
    let rc = entry(row, col).expect("row has entry at col");
    let pc = entry(pivot, col).expect("pivot has entry at col");
    let g = rc.gcd(pc);
    primitive_sparse(combine(row, &(pc / &g), pivot, &(rc / &g)))
}

/// Incrementally built row-echelon basis of a row space over ℤ.
///
/// Every stored row is primitive with a positive leading entry, and no two
/// stored rows share a leading column.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseRow>,
    pivot_row: BTreeMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis; stores the remainder if nonzero.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = primitive_sparse(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        while let Some(c) = lead(&row) {
            match self.pivot_row.get(&c) {
                Some(&p) => row = eliminate(&row, &self.rows[p], c),
                None => {
                    self.pivot_row.insert(c, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }

    /// Fully reduced echelon form: rows sorted by leading column, each pivot
    /// column zero in every other row. Rows are primitive with positive pivots.
    pub fn reduced_rows(&self) -> Vec<SparseRow> {
        let mut rows: Vec<SparseRow> = self.pivot_row.values().map(|&i| self.rows[i].clone()).collect();
        for r in (0..rows.len()).rev() {
            let c = lead(&rows[r]).expect("stored rows are nonzero");
            for s in 0..r {
                if entry(&rows[s], c).is_some() {
                    rows[s] = eliminate(&rows[s], &rows[r], c);
                }
            }
        }
        rows
    }

    /// Basis of the right kernel `{v : row·v = 0 for all rows}` in `ncols`
    /// columns. One vector per free column, in increasing column order; each is
    /// a primitive integer vector whose first nonzero entry is positive.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<BigInt>> {
        let rows = self.reduced_rows();
        let pivots: HashSet<usize> = rows.iter().filter_map(lead).collect();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let involved: Vec<&SparseRow> = rows.iter().filter(|r| entry(r, free).is_some()).collect();
            let scale = involved
                .iter()
                .fold(BigInt::one(), |acc, r| acc.lcm(&r[0].1));
            let mut v = vec![BigInt::zero(); ncols];
            v[free] = scale.clone();
            for r in involved {
                let (pc, pv) = &r[0];
                let fv = entry(r, free).unwrap();
                v[*pc] = -(fv * &scale) / pv;
            }
            let mut v = make_primitive(v);
            normalize_sign(&mut v);
            basis.push(v);
        }
        basis
    }
}

/// Exact rank of a dense rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(dense_to_sparse(&to_primitive_integers(row)));
    }
    basis.rank()
}

pub fn dense_to_sparse(row: &[BigInt]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

fn rational_sparse_to_integer(row: &[(usize, Rational)]) -> SparseRow {
    let values: Vec<Rational> = row.iter().map(|(_, q)| q.clone()).collect();
    row.iter()
        .map(|(c, _)| *c)
        .zip(to_primitive_integers(&values))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// A homogeneous linear system `Σ_col row[col]·u_col = 0` over labelled unknowns.
#[derive(Debug, Clone)]
pub struct LinearSystem<U> {
    pub unknowns: Vec<U>,
    /// Sparse rational rows, column indices into `unknowns`.
    pub rows: Vec<Vec<(usize, Rational)>>,
}

impl<U> LinearSystem<U> {
    pub fn new(unknowns: Vec<U>) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.unknowns.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|(_, q)| q.is_zero()))
    }

    fn echelon(&self) -> EchelonBasis {
        let mut basis = EchelonBasis::new();
        let mut seen = HashSet::new();
        let ncols = self.ncols();
        for row in &self.rows {
            if basis.rank() == ncols {
                break;
            }
            let int_row = primitive_sparse(rational_sparse_to_integer(row));
            if int_row.is_empty() || !seen.insert(int_row.clone()) {
                continue;
            }
            basis.insert(int_row);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Exact kernel basis; see [`EchelonBasis::kernel`] for the normal form.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        self.echelon().kernel(self.ncols())
    }
}

/// Reduced row echelon basis of the span of `vectors` (length `ncols`), rows
/// primitive with positive pivots, sorted by pivot column.
pub fn reduced_span_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let ncols = vectors.first().map_or(0, Vec::len);
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(dense_to_sparse(v));
    }
    basis
        .reduced_rows()
        .into_iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); ncols];
            for (c, v) in r {
                dense[c] = v;
            }
            dense
        })
        .collect()
}

/// Reduces rows `from..` of `rows` at column `col` to a single nonzero entry
/// by unimodular row operations (Euclid on the column). Returns the index of
/// the surviving row, moved to position `from`, or `None` if the column is zero.
fn euclid_column(rows: &mut [Vec<BigInt>], from: usize, col: usize) -> Option<usize> {
    loop {
        let nonzero: Vec<usize> = (from..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
        let &best = nonzero.iter().min_by_key(|&&r| rows[r][col].abs())?;
        if nonzero.len() == 1 {
            rows.swap(from, best);
            if rows[from][col].is_negative() {
                for v in rows[from].iter_mut() {
                    *v = -&*v;
                }
            }
            return Some(from);
        }
        let pivot = rows[best].clone();
        for &r in &nonzero {
            if r == best {
                continue;
            }
            let q = rows[r][col].div_floor(&pivot[col]);
            for (v, p) in rows[r].iter_mut().zip(&pivot) {
                *v -= &q * p;
            }
        }
    }
}

/// Row-style Hermite normal form of an integer matrix (zero rows dropped):
/// echelon, positive pivots, entries above each pivot in `[0, pivot)`.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        if euclid_column(&mut rows, r, c).is_none() {
            continue;
        }
        let pivot = rows[r].clone();
        for above in rows.iter_mut().take(r) {
            let q = above[c].div_floor(&pivot[c]);
            if !q.is_zero() {
                for (v, p) in above.iter_mut().zip(&pivot) {
                    *v -= &q * p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// ℤ-basis of the integer kernel `{v ∈ ℤ^ncols : A v = 0}`, in Hermite normal form.
pub fn integer_kernel_hnf(constraints: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    // Row-reduce [Aᵀ | I] unimodularly; rows whose Aᵀ part vanishes carry a
    // ℤ-basis of the kernel in their identity part.
    let m = constraints.len();
    let mut aug: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            let mut row: Vec<BigInt> = constraints.iter().map(|c| BigInt::from(c[i])).collect();
            row.extend((0..ncols).map(|j| BigInt::from(i64::from(i == j))));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..m {
        if r < aug.len() && euclid_column(&mut aug, r, c).is_some() {
            r += 1;
        }
    }
    let kernel: Vec<Vec<BigInt>> = aug[r..].iter().map(|row| row[m..].to_vec()).collect();
    hermite_normal_form(kernel)
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_i64().expect("grading weight fits in i64"))
                .collect()
        })
        .collect()
}
