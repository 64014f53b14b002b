use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::index::IndexSet;
use super::quad::QuadNum;
use super::rational::{parse_rational, Rational};
use super::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix. Dimensions are fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatQ = Mat<Rational>;
pub type MatQuad = Mat<QuadNum>;

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for r in 0..self.rows {
            l.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<T: Scalar> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix on 0-based rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Columns 0-based `cols`, all rows.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.data[0].zero_like();
        Ok(Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| {
                acc.plus(&self.get(i, k).times(other.get(k, j)))
            })
        }))
    }

    fn check_subset(&self, rows: &IndexSet, cols: &IndexSet) -> Result<()> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Dimension(format!(
                "minor needs |I| = |J| > 0, got {rows} and {cols}"
            )));
        }
        if rows.max().unwrap() > self.rows || cols.max().unwrap() > self.cols {
            return Err(Error::Dimension(format!(
                "index set {rows} x {cols} out of bounds for {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Determinant by Laplace expansion along the first row. Ring operations
    /// only, so it works over any [`Scalar`]; exponential, meant for n <= 8.
    pub fn det_cofactor(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.laplace(0, &idx))
    }

    /// Laplace expansion along any 0-based row.
    pub fn det_cofactor_along(&self, row: usize) -> Result<T> {
        if !self.is_square() || row >= self.rows {
            return Err(Error::Dimension("bad Laplace row".into()));
        }
        let n = self.rows;
        let zero = self.data[0].zero_like();
        if n == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let other_rows: Vec<usize> = (0..n).filter(|&r| r != row).collect();
        let mut acc = zero;
        for j in 0..n {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let sub = self.select(&other_rows, &cols).det_cofactor()?;
            let term = self.get(row, j).times(&sub);
            acc = if (row + j).is_multiple_of(2) {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        Ok(acc)
    }

    fn laplace(&self, r: usize, cols: &[usize]) -> T {
        if cols.len() == 1 {
            return self.get(r, cols[0]).clone();
        }
        let mut acc = self.data[0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(r, c);
            if entry.vanishes() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.times(&self.laplace(r + 1, &rest));
            acc = if k % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        acc
    }

    /// Minor on 1-based index sets, by cofactor expansion.
    pub fn minor_cofactor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<T> {
        self.check_subset(rows, cols)?;
        let r: Vec<usize> = rows.zero_based().collect();
        let c: Vec<usize> = cols.zero_based().collect();
        self.select(&r, &c).det_cofactor()
    }
}

impl MatQ {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn diag(d: &[Rational]) -> Self {
        let n = d.len();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                d[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Mat::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Lifts every entry into Q(sqrt d).
    pub fn to_quad(&self, d: &Rational) -> MatQuad {
        self.map(|x| QuadNum::from_rational(x.clone(), d))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination: each row is
    /// scaled to integers, eliminated over Z, then the scales divided out.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(Rational::zero());
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Rational::new(sign * &m[n - 1][n - 1], scale))
    }

    /// Minor on 1-based index sets.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Rational> {
        self.check_subset(rows, cols)?;
        let r: Vec<usize> = rows.zero_based().collect();
        let c: Vec<usize> = cols.zero_based().collect();
        self.select(&r, &c).det()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<MatQ> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = MatQ::identity(n).to_rows();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Err(Error::Singular {
                    det: Rational::zero(),
                });
            };
            a.swap(k, p);
            inv.swap(k, p);
            let piv = a[k][k].clone();
            for j in 0..n {
                a[k][j] = &a[k][j] / &piv;
                inv[k][j] = &inv[k][j] / &piv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                    let t = &f * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
        Mat::from_rows(inv)
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (MatQ, Vec<usize>) {
        let mut a = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x /= &piv;
            }
            let prow = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, p) in row.iter_mut().zip(&prow) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Mat::from_rows(a).expect("shape preserved"), pivots)
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn is_positive_det(&self) -> Result<bool> {
        Ok(self.det()?.is_positive())
    }
}

impl Serialize for MatQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Mat::from_rows(parsed).map_err(D::Error::custom)
    }
}

impl Serialize for MatQuad {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatQuad {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Mat::from_rows(Vec::<Vec<QuadNum>>::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{combinations, q, qi};
    use proptest::prelude::*;

    fn x1() -> MatQ {
        MatQ::from_i64(&[
            &[1, 3, 3, 1],
            &[3, 10, 11, 4],
            &[3, 11, 14, 6],
            &[1, 4, 6, 4],
        ])
        .unwrap()
    }

    fn y() -> MatQ {
        MatQ::from_i64(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::from_slice(v).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(MatQ::identity(4).det().unwrap(), qi(1));
        assert_eq!(y().det().unwrap(), qi(1));
        assert_eq!(x1().det().unwrap(), qi(1));
        assert_eq!(y().det_cofactor().unwrap(), qi(1));
        assert!(matches!(
            MatQ::from_i64(&[&[1, 2, 3]]).unwrap().det(),
            Err(Error::Dimension(_))
        ));
        // rational entries and a zero leading pivot
        let m = Mat::from_rows(vec![
            vec![qi(0), q(1, 2), qi(1)],
            vec![q(2, 3), qi(0), qi(1)],
            vec![qi(1), qi(1), q(-1, 5)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn minors() {
        let x = x1();
        assert_eq!(x.minor(&set(&[1, 3]), &set(&[1, 2])).unwrap(), qi(2));
        assert_eq!(x.minor(&set(&[2, 4]), &set(&[3, 4])).unwrap(), qi(20));
        let all = set(&[1, 2, 3, 4]);
        assert_eq!(x.minor(&all, &all).unwrap(), x.det().unwrap());
        assert!(matches!(
            x.minor(&set(&[1, 2]), &set(&[1])),
            Err(Error::Dimension(_))
        ));
        assert!(x.minor(&set(&[1, 5]), &set(&[1, 2])).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(MatQ::identity(4).inverse().unwrap(), MatQ::identity(4));
        assert_eq!(y().inverse().unwrap(), y().transpose());
        assert_eq!(y().mul(&y().transpose()).unwrap(), MatQ::identity(4));
        let d = [qi(2), qi(3), q(1, 2), qi(7)];
        let inv: Vec<Rational> = d.iter().map(|x| qi(1) / x).collect();
        assert_eq!(MatQ::diag(&d).inverse().unwrap(), MatQ::diag(&inv));
        let sing = MatQ::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(sing.inverse(), Err(Error::Singular { .. })));
    }

    #[test]
    fn nullspace_basis() {
        let m = MatQ::from_i64(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = Mat::from_rows(v.into_iter().map(|x| vec![x]).collect()).unwrap();
            let prod = m.mul(&col).unwrap();
            assert!(prod.col(0).iter().all(Zero::is_zero));
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn serde_matrix() {
        let m = Mat::from_rows(vec![vec![q(1, 2), qi(-3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","-3"]]"#);
        assert_eq!(serde_json::from_str::<MatQ>(&s).unwrap(), m);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
    }

    fn mat4() -> impl Strategy<Value = MatQ> {
        prop::collection::vec(small_rational(), 16)
            .prop_map(|v| Mat::from_fn(4, 4, |i, j| v[4 * i + j].clone()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn det_is_multiplicative(a in mat4(), b in mat4()) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn laplace_matches_bareiss_along_every_row(a in mat4()) {
            let d = a.det().unwrap();
            for r in 0..4 {
                prop_assert_eq!(a.det_cofactor_along(r).unwrap(), d.clone());
            }
        }

        #[test]
        fn minor_matches_copied_submatrix(a in mat4(), k in 1usize..=4, pick in 0usize..1000) {
            let sets = combinations(4, k);
            let rows = &sets[pick % sets.len()];
            let cols = &sets[(pick / 7) % sets.len()];
            let r: Vec<usize> = rows.zero_based().collect();
            let c: Vec<usize> = cols.zero_based().collect();
            let copied = Mat::from_rows(
                r.iter().map(|&i| c.iter().map(|&j| a.get(i, j).clone()).collect()).collect(),
            ).unwrap();
            prop_assert_eq!(a.minor(rows, cols).unwrap(), copied.det().unwrap());
            prop_assert_eq!(a.minor_cofactor(rows, cols).unwrap(), copied.det_cofactor().unwrap());
        }

        #[test]
        fn inverse_is_exact(a in mat4()) {
            if !a.det().unwrap().is_zero() {
                prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), MatQ::identity(4));
            }
        }
    }
}
