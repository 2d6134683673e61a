//! Simplicial homology over the two-element field.

use crate::complex::SimplicialComplex;

/// Bit-packed vector over GF(2).
#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

/// Rank over GF(2) of the matrix whose columns are given.
fn rank(columns: Vec<Bits>, rows: usize) -> usize {
    let mut basis: Vec<Option<Bits>> = vec![None; rows];
    let mut r = 0;
    for mut col in columns {
        while let Some(top) = col.highest() {
            match &basis[top] {
                Some(b) => col.xor(b),
                None => {
                    basis[top] = Some(col);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

/// Rank of the boundary map from `d`-simplices to `(d-1)`-simplices.
fn boundary_rank(k: &SimplicialComplex, d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let rows = k.simplices_of_dim(d - 1).count();
    let Some(first_row) = k.simplices_of_dim(d - 1).next() else {
        return 0;
    };
    // simplices of one dimension are contiguous in canonical order
    let offset = k.position(first_row).unwrap();
    let columns: Vec<Bits> = k
        .simplices_of_dim(d)
        .map(|s| {
            let mut col = Bits::zeros(rows);
            for f in s.boundary() {
                col.set(k.position(&f).unwrap() - offset);
            }
            col
        })
        .collect();
    rank(columns, rows)
}

/// Betti numbers β₀..=β_max_dim over GF(2).
///
/// Dimensions above the complex's own are zero. The complex must contain
/// its `(max_dim + 1)`-simplices for β_max_dim to be meaningful.
pub fn betti_numbers(k: &SimplicialComplex, max_dim: usize) -> Vec<usize> {
    let f = k.f_vector();
    let count = |d: usize| f.get(d).copied().unwrap_or(0);
    let ranks: Vec<usize> = (0..=max_dim + 1).map(|d| boundary_rank(k, d)).collect();
    (0..=max_dim)
        .map(|d| count(d) - ranks[d] - ranks[d + 1])
        .collect()
}

/// Reduced Betti numbers: β̃₀ = β₀ − 1 for nonempty complexes. The empty
/// complex has β̃₋₁ = 1, which is not representable here and reported as
/// all zeros.
pub fn reduced_betti_numbers(k: &SimplicialComplex, max_dim: usize) -> Vec<usize> {
    let mut b = betti_numbers(k, max_dim);
    if !k.is_empty() {
        b[0] -= 1;
    }
    b
}
