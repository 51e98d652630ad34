//! Shared helpers for integration tests: seeded generators and a
//! brute-force solvability oracle that does not touch the library's
//! elimination or {1}-inverse code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reachobs::{Mat, Triple};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Integer entries in `[lo, hi]`; each entry is zero with probability
/// `zero_prob` to make rank deficiency common.
pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: i64, hi: i64, zero_prob: f64) -> Mat {
    Mat::from_fn(rows, cols, |_, _| {
        if rng.random_bool(zero_prob) {
            int(0)
        } else {
            int(rng.random_range(lo..=hi))
        }
    })
}

/// Rational entries `a/b` with `a ∈ [−9, 9]`, `b ∈ [1, 9]`.
pub fn rational_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| {
        BigRational::new(BigInt::from(rng.random_range(-9..=9)), BigInt::from(rng.random_range(1..=9)))
    })
}

/// Product of two random factors, so the rank is at most `inner`.
pub fn low_rank_matrix(rng: &mut impl Rng, rows: usize, cols: usize, inner: usize) -> Mat {
    let a = int_matrix(rng, rows, inner, -3, 3, 0.2);
    let b = int_matrix(rng, inner, cols, -3, 3, 0.2);
    a.matmul(&b).unwrap()
}

pub fn random_triple(rng: &mut impl Rng, n: usize, p: usize, q: usize, lo: i64, hi: i64) -> Triple {
    Triple::new(
        int_matrix(rng, n, n, lo, hi, 0.3),
        int_matrix(rng, n, p, lo, hi, 0.3),
        int_matrix(rng, q, n, lo, hi, 0.3),
    )
    .unwrap()
}

/// Gaussian elimination on an augmented system `[M | b]` given as rows.
/// True iff the system is consistent.
pub fn augmented_consistent(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> bool {
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let (head, tail) = rows.split_at_mut(pivot_row + 1);
        let pivot_vals = &head[pivot_row];
        for row in tail {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_vals[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_vals[col..]) {
                *x -= &factor * p;
            }
        }
        pivot_row += 1;
    }
    rows[pivot_row..].iter().all(|r| r[unknowns].is_zero())
}

/// Unknowns are the entries of `X` (shape `t×p`), indexed `i·p + j`.
fn push_left_equations(rows: &mut Vec<Vec<BigRational>>, f: &Mat, c: &Mat, t: usize, p: usize) {
    let n = t * p;
    for a in 0..f.rows() {
        for j in 0..p {
            let mut row = vec![int(0); n + 1];
            for i in 0..t {
                row[i * p + j] = f.get(a, i).clone();
            }
            row[n] = c.get(a, j).clone();
            rows.push(row);
        }
    }
}

fn push_right_equations(rows: &mut Vec<Vec<BigRational>>, h: &Mat, d: &Mat, t: usize, p: usize) {
    let n = t * p;
    for i in 0..t {
        for b in 0..h.cols() {
            let mut row = vec![int(0); n + 1];
            for j in 0..p {
                row[i * p + j] = h.get(j, b).clone();
            }
            row[n] = d.get(i, b).clone();
            rows.push(row);
        }
    }
}

/// Brute force: is `F·X = C`, `X·H = D` solvable, with every entry of `X`
/// an unknown of one stacked linear system.
pub fn pair_solvable(f: &Mat, c: &Mat, h: &Mat, d: &Mat) -> bool {
    let (t, p) = (f.cols(), h.rows());
    let mut rows = Vec::new();
    push_left_equations(&mut rows, f, c, t, p);
    push_right_equations(&mut rows, h, d, t, p);
    augmented_consistent(rows, t * p)
}

/// Brute force for `F·X = C` alone (`X` is `cols(F) × cols(C)`).
pub fn left_solvable(f: &Mat, c: &Mat) -> bool {
    let mut rows = Vec::new();
    push_left_equations(&mut rows, f, c, f.cols(), c.cols());
    augmented_consistent(rows, f.cols() * c.cols())
}

/// Brute force for `X·H = D` alone (`X` is `rows(D) × rows(H)`).
pub fn right_solvable(h: &Mat, d: &Mat) -> bool {
    let mut rows = Vec::new();
    push_right_equations(&mut rows, h, d, d.rows(), h.rows());
    augmented_consistent(rows, d.rows() * h.rows())
}

pub fn max_abs_entry(m: &Mat) -> BigRational {
    m.entries()
        .iter()
        .map(|v| if *v < int(0) { -v.clone() } else { v.clone() })
        .max()
        .unwrap_or_else(|| int(0))
}
