use std::fmt;

use super::echelon::EchelonBasis;
use super::field::{FieldElement, PrimeField};
use crate::error::{Error, Result};

/// A dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

fn checked_area(rows: usize, cols: usize) -> Result<usize> {
    rows.checked_mul(cols)
        .filter(|&n| n <= isize::MAX as usize / 4)
        .ok_or_else(|| Error::DimensionOverflow(format!("{rows} x {cols} matrix")))
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Result<Self> {
        let area = checked_area(rows, cols)?;
        Ok(Self {
            field,
            rows,
            cols,
            entries: vec![0; area],
        })
    }

    pub fn identity(field: PrimeField, n: usize) -> Result<Self> {
        let mut m = Self::zeros(field, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Build from integer rows; entries are reduced modulo p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::domain(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let mut m = Self::zeros(field, rows.len(), cols)?;
        for (dst, &x) in m.entries.iter_mut().zip(rows.iter().flatten()) {
            *dst = field.from_signed(x).value() as u32;
        }
        Ok(m)
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                m.entries[r * cols + c] = field.reduce(f(r, c)) as u32;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.entries[r * self.cols + c] as u64)
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        assert_eq!(value.modulus(), self.field.modulus());
        self.entries[r * self.cols + c] = value.value() as u32;
    }

    pub(crate) fn set_raw(&mut self, r: usize, c: usize, value: u64) {
        debug_assert!(value < self.field.modulus());
        self.entries[r * self.cols + c] = value as u32;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries: vec![0; self.entries.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] += factor * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: FieldElement) {
        assert_ne!(target, source);
        let f = factor.value();
        for c in 0..self.cols {
            let s = self.entries[source * self.cols + c] as u64;
            let t = &mut self.entries[target * self.cols + c];
            *t = self.field.reduce(*t as u64 + f * s) as u32;
        }
    }

    pub fn scale_row(&mut self, r: usize, factor: FieldElement) {
        for c in 0..self.cols {
            let t = &mut self.entries[r * self.cols + c];
            *t = self.field.mul(*t as u64, factor.value()) as u32;
        }
    }

    pub fn rank(&self) -> usize {
        rank_mod_p(self)
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(8) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(12)])?;
        }
        Ok(())
    }
}

/// Rank of `m` over its prime field.
///
/// The longer dimension supplies the vectors and the shorter one their
/// length, so elimination stops as soon as the rank reaches
/// `min(rows, cols)`.
pub fn rank_mod_p(m: &DenseMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if m.rows <= m.cols {
        let mut basis = EchelonBasis::new(m.field, m.rows);
        for c in 0..m.cols {
            let v = (0..m.rows)
                .map(|r| m.entries[r * m.cols + c] as u64)
                .collect();
            if basis.push(v) {
                break;
            }
        }
        basis.rank()
    } else {
        let mut basis = EchelonBasis::new(m.field, m.cols);
        for r in 0..m.rows {
            if basis.push(m.row(r).iter().map(|&x| x as u64).collect()) {
                break;
            }
        }
        basis.rank()
    }
}
