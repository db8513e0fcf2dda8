//! Dense matrices over a [`Gf`].

use serde::{Deserialize, Serialize};

use crate::field::{Elem, Gf};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn scalar(n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Elem>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match the shape");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn add(&self, other: &Matrix, f: &Gf) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(c, a)).collect() }
    }

    pub fn mul(&self, other: &Matrix, f: &Gf) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, f: &Gf) -> Matrix {
        (0..k).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self, f))
    }

    /// Row echelon form in place; returns the rank.
    pub fn echelonize(&mut self, f: &Gf) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = f.inv(self.get(rank, col)).unwrap();
            for j in col..self.cols {
                let v = f.mul(inv, self.get(rank, j));
                self.set(rank, j, v);
            }
            for i in 0..self.rows {
                if i == rank {
                    continue;
                }
                let c = self.get(i, col);
                if c.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(c, self.get(rank, j)));
                    self.set(i, j, v);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn rank(&self, f: &Gf) -> usize {
        self.clone().echelonize(f)
    }

    /// Dimension of the (right) null space `{x : Mx = 0}`.
    pub fn kernel_dim(&self, f: &Gf) -> usize {
        self.cols - self.rank(f)
    }
}
