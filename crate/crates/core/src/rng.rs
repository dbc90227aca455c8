//! Seeded sampling helpers. Every sampler takes its generator explicitly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{scalar, Jet, Scalar};
use crate::linalg::{JetMatrix, ScalarMatrix};

/// Entries of sampled matrices are drawn from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 10;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    scalar(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ScalarMatrix {
    let data = (0..rows * cols).map(|_| small_int(rng)).collect();
    ScalarMatrix::from_vec(rows, cols, data).expect("consistent shape")
}

pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = small_int(rng);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    m
}

/// Random invertible matrix; resamples on the (rare) singular draw.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ScalarMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random jet with every coefficient sampled.
pub fn random_jet<R: Rng + ?Sized>(rng: &mut R, order: usize) -> Jet {
    Jet::from_coeffs((0..order).map(|_| small_int(rng)).collect(), order)
}

/// Random jet matrix whose constant term is invertible (a unit of the
/// matrix ring over the local ring).
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, order: usize) -> JetMatrix {
    let c = random_invertible(rng, n);
    let mut m = JetMatrix::from_scalar(&c, order);
    for i in 0..n {
        for j in 0..n {
            let tail = random_jet(rng, order).shift_down(1).shift_up(1);
            m[(i, j)] = &m[(i, j)] + &tail;
        }
    }
    m
}

/// Random symmetric jet matrix.
pub fn random_symmetric_jets<R: Rng + ?Sized>(rng: &mut R, n: usize, order: usize) -> JetMatrix {
    let mut m = JetMatrix::zeros(n, n, order);
    for i in 0..n {
        for j in i..n {
            let x = random_jet(rng, order);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    m
}

/// Distinct random rational coordinates `p/q`.
pub fn random_points<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.gen_range(-20i64..=20);
        let q = rng.gen_range(1i64..=4);
        let x = crate::exactnum::ratio(p, q);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}
