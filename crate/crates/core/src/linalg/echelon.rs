//! Incremental row-echelon basis over GF(p).
//!
//! Vectors are pushed one at a time and reduced against the basis built so
//! far. Reduction is done in blocks: every buffered vector sweeps the
//! columns in lockstep, so each basis row is streamed from memory once per
//! block instead of once per vector.
//!
//! Invariant of the stored basis: a row with pivot column `c` is zero in all
//! columns `< c` and has a unit pivot. Reducing a vector by scanning columns
//! in increasing order is then correct regardless of insertion order.

use super::field::{PrimeField, DEFAULT_PRIME};

const NO_PIVOT: u32 = u32::MAX;
const BLOCK: usize = 32;

/// Reduction strategy used inside the elimination loops.
///
/// `fold` maps any `u64` to a congruent value below `2^34`; `full` maps any
/// `u64` to the canonical residue.
trait Reducer: Copy {
    fn p(self) -> u64;
    fn fold(self, x: u64) -> u64;
    fn full(self, x: u64) -> u64;

    /// How many products of two residues fit on top of a folded value
    /// without overflowing `u64`.
    fn headroom(self) -> u32 {
        let p = self.p() - 1;
        ((u64::MAX - (1 << 34)) / (p * p).max(1)).min(u32::MAX as u64) as u32
    }
}

#[derive(Clone, Copy)]
struct Mersenne31;

impl Reducer for Mersenne31 {
    #[inline(always)]
    fn p(self) -> u64 {
        DEFAULT_PRIME
    }

    #[inline(always)]
    fn fold(self, x: u64) -> u64 {
        (x & DEFAULT_PRIME) + (x >> 31)
    }

    #[inline(always)]
    fn full(self, x: u64) -> u64 {
        let y = self.fold(self.fold(x));
        if y >= DEFAULT_PRIME {
            y - DEFAULT_PRIME
        } else {
            y
        }
    }
}

#[derive(Clone, Copy)]
struct Barrett {
    p: u64,
    m: u64,
}

impl Barrett {
    fn new(p: u64) -> Self {
        Self { p, m: u64::MAX / p }
    }
}

impl Reducer for Barrett {
    #[inline(always)]
    fn p(self) -> u64 {
        self.p
    }

    #[inline(always)]
    fn fold(self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        x - q * self.p
    }

    #[inline(always)]
    fn full(self, x: u64) -> u64 {
        let mut r = self.fold(x);
        while r >= self.p {
            r -= self.p;
        }
        r
    }
}

/// `dst += c * src` without reduction; the caller folds before headroom
/// runs out.
#[inline(always)]
fn axpy(dst: &mut [u64], c: u32, src: &[u32]) {
    let c = c as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d += c * s as u64;
    }
}

/// Tail of a basis row, after its pivot column.
#[derive(Debug, Clone)]
enum Row {
    Dense(Vec<u32>),
    /// Offsets into the tail and the nonzero values there.
    Sparse(Vec<u32>, Vec<u32>),
}

impl Row {
    fn new(tail: Vec<u32>) -> Self {
        let nnz = tail.iter().filter(|&&x| x != 0).count();
        // a sparse entry costs roughly two dense ones
        if nnz * 2 >= tail.len() {
            return Row::Dense(tail);
        }
        let (idx, val) = tail
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i as u32, x))
            .unzip();
        Row::Sparse(idx, val)
    }

    /// `dst += c * self`, unreduced.
    #[inline(always)]
    fn axpy(&self, dst: &mut [u64], c: u32) {
        match self {
            Row::Dense(src) => axpy(dst, c, src),
            Row::Sparse(idx, val) => {
                let c = c as u64;
                for (&i, &x) in idx.iter().zip(val) {
                    dst[i as usize] += c * x as u64;
                }
            }
        }
    }
}

/// A growing set of linearly independent vectors of fixed length, kept in
/// row-echelon form.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    len: usize,
    pivot_of: Vec<u32>,
    // Row i stores only the entries after its pivot column; the pivot is 1.
    rows: Vec<Row>,
    pending: Vec<Vec<u64>>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            len,
            pivot_of: vec![NO_PIVOT; len],
            rows: Vec::new(),
            pending: Vec::new(),
        }
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Queue a vector of canonical residues for insertion. Returns `true`
    /// once the basis spans the whole space, after which further pushes are
    /// no-ops.
    pub fn push(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        debug_assert!(v.iter().all(|&x| x < self.field.modulus()));
        if self.rows.len() == self.len {
            return true;
        }
        self.pending.push(v);
        if self.pending.len() >= BLOCK {
            self.flush();
        }
        self.rows.len() == self.len
    }

    /// Rank of everything pushed so far.
    pub fn rank(&mut self) -> usize {
        self.flush();
        self.rows.len()
    }

    pub fn is_full(&mut self) -> bool {
        self.rank() == self.len
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        if self.field.modulus() == DEFAULT_PRIME {
            self.flush_with(Mersenne31);
        } else {
            self.flush_with(Barrett::new(self.field.modulus()));
        }
    }

    fn flush_with<R: Reducer>(&mut self, red: R) {
        let p = red.p();
        let headroom = red.headroom();
        let mut block = std::mem::take(&mut self.pending);
        let mut alive: Vec<usize> = (0..block.len()).collect();
        // products added to each vector since its last fold
        let mut added = vec![0u32; block.len()];

        for col in 0..self.len {
            if alive.is_empty() || self.rows.len() == self.len {
                break;
            }
            let mut claimed = None;
            for (slot, &i) in alive.iter().enumerate() {
                let v = &mut block[i];
                let e = red.full(v[col]);
                v[col] = 0;
                if e == 0 {
                    continue;
                }
                match self.pivot_of[col] {
                    NO_PIVOT => {
                        // First vector nonzero here becomes a basis row.
                        let inv = self.field.inv(e).expect("nonzero residue");
                        let tail: Vec<u32> = v[col + 1..]
                            .iter()
                            .map(|&x| red.full(red.full(x) * inv) as u32)
                            .collect();
                        self.pivot_of[col] = self.rows.len() as u32;
                        self.rows.push(Row::new(tail));
                        claimed = Some(slot);
                    }
                    r => {
                        let tail = &mut v[col + 1..];
                        if added[i] == headroom {
                            tail.iter_mut().for_each(|x| *x = red.fold(*x));
                            added[i] = 0;
                        }
                        self.rows[r as usize].axpy(tail, (p - e) as u32);
                        added[i] += 1;
                    }
                }
            }
            if let Some(slot) = claimed {
                alive.remove(slot);
            }
        }
    }
}
