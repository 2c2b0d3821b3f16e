//! Dense linear algebra over `K`.

use crate::rings::{KElem, KField};

/// Row-major dense matrix over `K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<KElem>,
}

impl KMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        KMat { rows, cols, data: vec![KElem(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = KElem(1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<KElem>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        KMat { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> KElem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: KElem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[KElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [KElem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> KMat {
        let mut t = KMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, k: &KField, v: &[KElem]) -> Vec<KElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| k.dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, k: &KField, other: &KMat) -> KMat {
        assert_eq!(self.cols, other.rows);
        let mut out = KMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                if a.0 != 0 {
                    k.sub_scaled(dst, k.neg(a), other.row(l));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.0 == 0)
    }

    pub fn scale(&self, k: &KField, c: KElem) -> KMat {
        KMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| k.mul(x, c)).collect() }
    }

    pub fn add(&self, k: &KField, other: &KMat) -> KMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        KMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, k: &KField, other: &KMat) -> KMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        KMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }

    pub fn rank(&self, k: &KField) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(k, self.row(i).to_vec());
        }
        e.rank()
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self, k: &KField) -> Option<KMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = KMat::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&i| a.get(i, c).0 != 0)?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    inv.data.swap(piv * n + j, c * n + j);
                }
            }
            let s = k.inv(a.get(c, c)).unwrap();
            k.scale(a.row_mut(c), s);
            k.scale(inv.row_mut(c), s);
            let arow = a.row(c).to_vec();
            let irow = inv.row(c).to_vec();
            for i in 0..n {
                let x = a.get(i, c);
                if i != c && x.0 != 0 {
                    k.sub_scaled(a.row_mut(i), x, &arow);
                    k.sub_scaled(inv.row_mut(i), x, &irow);
                }
            }
        }
        Some(inv)
    }

    pub fn det_is_zero(&self, k: &KField) -> bool {
        self.rank(k) < self.rows
    }

    /// Basis of `{v : M v = 0}`, as rows.
    pub fn kernel(&self, k: &KField) -> Vec<Vec<KElem>> {
        let (r, pivots) = rref(k, self);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![KElem(0); self.cols];
                v[f] = KElem(1);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(k: &KField, m: &KMat) -> (KMat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| a.get(i, c).0 != 0) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, row * a.cols + j);
            }
        }
        let s = k.inv(a.get(row, c)).unwrap();
        k.scale(a.row_mut(row), s);
        let prow = a.row(row).to_vec();
        for i in 0..a.rows {
            let x = a.get(i, c);
            if i != row && x.0 != 0 {
                k.sub_scaled(a.row_mut(i), x, &prow);
            }
        }
        pivots.push(c);
        row += 1;
    }
    a.rows = row;
    a.data.truncate(row * a.cols);
    (a, pivots)
}

/// Incrementally built semi-echelon basis: row `i` has a 1 at `pivots[i]`
/// and every later row vanishes there.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<KElem>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new(), is_pivot: vec![false; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
    pub fn rows(&self) -> &[Vec<KElem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_pivot(&self, c: usize) -> bool {
        self.is_pivot[c]
    }

    /// Reduces `v` in place; returns the coefficients of the subtracted rows.
    pub fn reduce(&self, k: &KField, v: &mut [KElem]) -> Vec<KElem> {
        if k.d() == 1 {
            return self.reduce_prime(k, v);
        }
        let mut coeffs = vec![KElem(0); self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = v[self.pivots[i]];
            if c.0 != 0 {
                k.sub_scaled(v, c, row);
                coeffs[i] = c;
            }
        }
        coeffs
    }

    /// Prime-field path: accumulates in `u32` and reduces only when needed.
    fn reduce_prime(&self, k: &KField, v: &mut [KElem]) -> Vec<KElem> {
        let ell = k.ell();
        let budget = k.lazy_steps();
        let mut w: Vec<u32> = v.iter().map(|x| x.0 as u32).collect();
        let mut coeffs = vec![KElem(0); self.rows.len()];
        let mut used = 0;
        for (i, row) in self.rows.iter().enumerate() {
            let c = w[self.pivots[i]] % ell;
            if c == 0 {
                continue;
            }
            if used == budget {
                w.iter_mut().for_each(|x| *x %= ell);
                used = 0;
            }
            let f = ell - c;
            for (x, &y) in w.iter_mut().zip(row) {
                *x += f * y.0 as u32;
            }
            used += 1;
            coeffs[i] = KElem(c as u16);
        }
        for (x, y) in v.iter_mut().zip(&w) {
            *x = KElem((y % ell) as u16);
        }
        coeffs
    }

    pub fn contains(&self, k: &KField, v: &[KElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(k, &mut w);
        w.iter().all(|x| x.0 == 0)
    }

    /// Adds `v` if it is independent; returns the normalized new row.
    pub fn insert(&mut self, k: &KField, mut v: Vec<KElem>) -> Option<&[KElem]> {
        self.reduce(k, &mut v);
        let p = v.iter().position(|x| x.0 != 0)?;
        let s = k.inv(v[p]).unwrap();
        k.scale(&mut v, s);
        self.rows.push(v);
        self.pivots.push(p);
        self.is_pivot[p] = true;
        self.rows.last().map(|r| r.as_slice())
    }

    /// Coordinates of a member of the span in the row basis.
    pub fn coordinates(&self, k: &KField, v: &[KElem]) -> Option<Vec<KElem>> {
        let mut w = v.to_vec();
        let c = self.reduce(k, &mut w);
        w.iter().all(|x| x.0 == 0).then_some(c)
    }

    /// Non-pivot columns, in order: unit vectors there span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| !self.is_pivot[c]).collect()
    }

    pub fn to_matrix(&self) -> KMat {
        KMat::from_rows(&self.rows, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> KField {
        KField::new(5, 2).unwrap()
    }

    fn m(rows: &[&[u16]]) -> KMat {
        let r: Vec<Vec<KElem>> = rows.iter().map(|r| r.iter().map(|&x| KElem(x)).collect()).collect();
        KMat::from_rows(&r, rows[0].len())
    }

    #[test]
    fn inverse_and_rank() {
        let k = k5();
        let a = m(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 2]]);
        let ai = a.inverse(&k).unwrap();
        assert_eq!(a.mul(&k, &ai), KMat::identity(3));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse(&k).is_none());
        assert_eq!(s.rank(&k), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let k = KField::new(2, 3).unwrap();
        let a = m(&[&[1, 2, 3, 0], &[2, 3, 1, 1]]);
        let ker = a.kernel(&k);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&k, &v).iter().all(|x| x.0 == 0));
        }
    }

    #[test]
    fn echelon_coordinates() {
        let k = k5();
        let mut e = Echelon::new(3);
        let a = vec![KElem(1), KElem(2), KElem(3)];
        let b = vec![KElem(0), KElem(1), KElem(4)];
        e.insert(&k, a.clone());
        e.insert(&k, b.clone());
        assert!(e.insert(&k, vec![KElem(1), KElem(3), KElem(2)]).is_none());
        let v: Vec<KElem> = a.iter().zip(&b).map(|(&x, &y)| k.add(k.mul(KElem(2), x), k.mul(KElem(3), y))).collect();
        let c = e.coordinates(&k, &v).unwrap();
        let rebuilt = (0..3)
            .map(|j| (0..2).fold(KElem(0), |acc, i| k.add(acc, k.mul(c[i], e.rows()[i][j]))))
            .collect::<Vec<_>>();
        assert_eq!(rebuilt, v);
        assert_eq!(e.free_columns().len(), 1);
    }
}
