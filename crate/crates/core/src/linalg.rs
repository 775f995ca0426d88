//! Exact integer linear algebra on sparse matrices: Smith invariants and
//! integer solving of `A x = b`.
//!
//! Both routines first eliminate unit pivots sparsely (boundary and
//! coboundary matrices are almost entirely reducible this way) and hand the
//! leftover block to a dense Smith or Hermite reduction.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, BigInt>>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.add(i, j, &BigInt::from(v));
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

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, r: usize, c: usize, v: &BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let e = self.entries[r].entry(c).or_default();
        *e += v;
        if e.is_zero() {
            self.entries[r].remove(&c);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, BigInt> {
        &self.entries[r]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|(&c, v)| v * &x[c]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::new(self.cols, self.rows);
        for (r, row) in self.entries.iter().enumerate() {
            for (&c, v) in row {
                t.entries[c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Nonzero Smith invariants (positive, each dividing the next).
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut elim = Eliminator::new(self, None);
        let units = elim.eliminate_units(false);
        let residual: Vec<Vec<BigInt>> = elim.residual_dense();
        let mut inv = vec![BigInt::one(); units];
        inv.extend(dense_smith(residual));
        inv.sort();
        inv
    }

    /// Smith invariants computed by the dense algorithm alone.
    pub fn smith_invariants_dense(&self) -> Vec<BigInt> {
        let mut inv = dense_smith(self.to_dense());
        inv.sort();
        inv
    }

    pub fn rank(&self) -> usize {
        self.smith_invariants().len()
    }

    /// An integer solution of `self * x = b`, or `None` if none exists.
    /// Free variables are fixed to zero; the result is deterministic.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let mut elim = Eliminator::new(self, Some(b));
        elim.eliminate_units(true);
        let mut x = vec![BigInt::zero(); self.cols];
        let residual_rows: Vec<usize> = elim.active.iter().copied().collect();
        let residual_cols: Vec<usize> = {
            let mut s = BTreeSet::new();
            for &r in &residual_rows {
                s.extend(elim.rows[r].keys().copied());
            }
            s.into_iter().collect()
        };
        let a: Vec<Vec<BigInt>> = residual_rows
            .iter()
            .map(|&r| residual_cols.iter().map(|c| elim.rows[r].get(c).cloned().unwrap_or_default()).collect())
            .collect();
        let rhs: Vec<BigInt> = residual_rows.iter().map(|&r| elim.rhs[r].clone()).collect();
        let y = hermite_solve(&a, &rhs, residual_cols.len())?;
        for (c, v) in residual_cols.iter().zip(y) {
            x[*c] = v;
        }
        for &(r, c) in &elim.pivots {
            let u = &elim.rows[r][&c];
            let mut acc = elim.rhs[r].clone();
            for (&j, v) in &elim.rows[r] {
                if j != c {
                    acc -= v * &x[j];
                }
            }
            x[c] = acc * u;
        }
        debug_assert_eq!(self.mul_vec(&x), b);
        Some(x)
    }
}

struct Eliminator {
    rows: Vec<BTreeMap<usize, BigInt>>,
    rhs: Vec<BigInt>,
    col_rows: Vec<BTreeSet<usize>>,
    active: BTreeSet<usize>,
    pivots: Vec<(usize, usize)>,
}

impl Eliminator {
    fn new(m: &IntegerMatrix, b: Option<&[BigInt]>) -> Self {
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (r, row) in m.entries.iter().enumerate() {
            for &c in row.keys() {
                col_rows[c].insert(r);
            }
        }
        Eliminator {
            rows: m.entries.clone(),
            rhs: b.map(<[BigInt]>::to_vec).unwrap_or_else(|| vec![BigInt::zero(); m.rows]),
            col_rows,
            active: (0..m.rows).collect(),
            pivots: Vec::new(),
        }
    }

    fn find_unit_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for &r in &self.active {
            let row = &self.rows[r];
            if row.is_empty() || best.is_some_and(|b| row.len() > b.0) {
                continue;
            }
            for (&c, v) in row {
                if v.abs().is_one() {
                    let key = (row.len(), self.col_rows[c].len(), r, c);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// Eliminates unit pivots. With `keep_pivots` the pivot rows stay in the
    /// system (reduced against later pivots) for back substitution; otherwise
    /// they are dropped. Returns the number of pivots.
    fn eliminate_units(&mut self, keep_pivots: bool) -> usize {
        let mut count = 0;
        while let Some((r, c)) = self.find_unit_pivot() {
            let unit = self.rows[r][&c].clone();
            let pivot_row = self.rows[r].clone();
            let pivot_rhs = self.rhs[r].clone();
            let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&x| x != r).collect();
            for o in others {
                let factor = &self.rows[o][&c] * &unit;
                for (&j, v) in &pivot_row {
                    let e = self.rows[o].entry(j).or_default();
                    *e -= &factor * v;
                    if e.is_zero() {
                        self.rows[o].remove(&j);
                        self.col_rows[j].remove(&o);
                    } else {
                        self.col_rows[j].insert(o);
                    }
                }
                self.rhs[o] -= &factor * &pivot_rhs;
            }
            self.active.remove(&r);
            if keep_pivots {
                self.pivots.push((r, c));
            } else {
                for &j in pivot_row.keys() {
                    self.col_rows[j].remove(&r);
                }
                self.rows[r].clear();
            }
            count += 1;
        }
        count
    }

    fn residual_dense(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<usize> = self.active.iter().copied().filter(|&r| !self.rows[r].is_empty()).collect();
        let cols: Vec<usize> = rows
            .iter()
            .flat_map(|&r| self.rows[r].keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        rows.iter()
            .map(|&r| cols.iter().map(|c| self.rows[r].get(c).cloned().unwrap_or_default()).collect())
            .collect()
    }
}

/// Dense Smith normal form; returns the nonzero diagonal (absolute values).
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            if let Some(i) = bad {
                for j in t..n {
                    let v = a[i][j].clone();
                    a[t][j] += v;
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    diag
}

/// Integer solution of a dense system via column Hermite reduction
/// `A U = H`; solves `H y = b` by forward substitution and returns `U y`.
fn hermite_solve(a: &[Vec<BigInt>], b: &[BigInt], n: usize) -> Option<Vec<BigInt>> {
    let m = a.len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |mat: &mut Vec<Vec<BigInt>>, j: usize, k: usize, c: [&BigInt; 4]| {
        // (col_j, col_k) <- (c0 col_j + c1 col_k, c2 col_j + c3 col_k)
        for row in mat.iter_mut() {
            let (x, y) = (row[j].clone(), row[k].clone());
            row[j] = c[0] * &x + c[1] * &y;
            row[k] = c[2] * &x + c[3] * &y;
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[i][j].is_zero() {
                continue;
            }
            if h[i][k].is_zero() {
                for row in h.iter_mut() {
                    row.swap(k, j);
                }
                for row in u.iter_mut() {
                    row.swap(k, j);
                }
                continue;
            }
            let (x, y) = (h[i][k].clone(), h[i][j].clone());
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xq, yq) = (&x / &g, &y / &g);
            let neg_yq = -yq;
            // new col_k = s col_k + t col_j ; new col_j = -y/g col_k + x/g col_j
            col_op(&mut h, k, j, [&s, &t, &neg_yq, &xq]);
            col_op(&mut u, k, j, [&s, &t, &neg_yq, &xq]);
        }
        if !h[i][k].is_zero() {
            pivots.push((i, k));
            k += 1;
        }
    }
    let mut y = vec![BigInt::zero(); n];
    for &(i, c) in &pivots {
        let mut acc = b[i].clone();
        for (s, ys) in y.iter().enumerate().take(c) {
            acc -= &h[i][s] * ys;
        }
        let (q, r) = acc.div_rem(&h[i][c]);
        if !r.is_zero() {
            return None;
        }
        y[c] = q;
    }
    for i in 0..m {
        let lhs: BigInt = (0..n).map(|s| &h[i][s] * &y[s]).sum();
        if lhs != b[i] {
            return None;
        }
    }
    Some((0..n).map(|r| (0..n).map(|s| &u[r][s] * &y[s]).sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(m.smith_invariants(), ints(&[2, 6, 12]));
        assert_eq!(m.smith_invariants_dense(), ints(&[2, 6, 12]));
        let m = IntegerMatrix::from_dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.smith_invariants(), ints(&[1, 2]));
        assert_eq!(IntegerMatrix::new(3, 2).rank(), 0);
    }

    #[test]
    fn solve_needs_column_operations() {
        // 2x + 3y = 1 has integer solutions but no unit pivot.
        let m = IntegerMatrix::from_dense(&[vec![2, 3]]);
        let x = m.solve(&ints(&[1])).unwrap();
        assert_eq!(m.mul_vec(&x), ints(&[1]));
        let m = IntegerMatrix::from_dense(&[vec![2, 4]]);
        assert!(m.solve(&ints(&[1])).is_none());
        assert!(m.solve(&ints(&[6])).is_some());
    }

    #[test]
    fn solve_inconsistent_rows() {
        let m = IntegerMatrix::from_dense(&[vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&ints(&[1, 2])).is_none());
        let x = m.solve(&ints(&[3, 3])).unwrap();
        assert_eq!(m.mul_vec(&x), ints(&[3, 3]));
    }
}
