//! Matrices over Z/4 and the mod-2 Bockstein lift.

use super::f2::BitVec;
use crate::error::LinalgError;

/// A dense matrix over Z/4, entries stored reduced in `0..4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl Z4Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Z4Matrix { rows, cols, entries: vec![0; rows * cols] }
    }

    /// Reduces integer rows mod 4; rows shorter than `cols` are zero-padded.
    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate().take(cols) {
                m.set(i, j, x);
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

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.entries[i * self.cols + j] = x.rem_euclid(4) as u8;
    }

    /// `M·x` for a vector of residues.
    pub fn mul_vec(&self, x: &[u8]) -> Result<Vec<u8>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::Dimension { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let s: u32 = (0..self.cols).map(|j| self.get(i, j) as u32 * x[j] as u32).sum();
                (s % 4) as u8
            })
            .collect())
    }
}

/// `(D₄·lift)/2 mod 2` for the 0/1 lift of a mod-2 cycle.
pub fn mod4_lift_boundary(cycle: &BitVec, d4: &Z4Matrix) -> Result<BitVec, LinalgError> {
    let lift: Vec<u8> = cycle.to_bools().into_iter().map(u8::from).collect();
    let y = d4.mul_vec(&lift)?;
    if y.iter().any(|v| v % 2 == 1) {
        return Err(LinalgError::NotACycle);
    }
    Ok(BitVec::from_indices(y.len(), (0..y.len()).filter(|&i| y[i] == 2)))
}
