//! Random test inputs: Haar unitaries/orthogonals and random beamsplitters.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{CMatrix, C64};
use crate::optics::Beamsplitter;

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// diagonal phases of R divided out.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let data: Vec<C64> = (0..n * n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) / 2f64.sqrt()
        })
        .collect();
    qr_unitary_part(CMatrix::new(n, n, data).expect("finite gaussian samples"))
}

/// Haar-distributed orthogonal matrix (either determinant).
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let data: Vec<C64> = (0..n * n).map(|_| C64::new(rng.sample::<f64, _>(StandardNormal), 0.0)).collect();
    let q = qr_unitary_part(CMatrix::new(n, n, data).expect("finite gaussian samples"));
    q.map(|z| C64::new(z.re, 0.0))
}

/// Haar-distributed special orthogonal matrix.
pub fn haar_special_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut q = haar_orthogonal(n, rng);
    if q.det().expect("square").re < 0.0 {
        for j in 0..n {
            q[(0, j)] = -q[(0, j)];
        }
    }
    q
}

fn qr_unitary_part(g: CMatrix) -> CMatrix {
    let n = g.rows();
    let (q, r) = g.to_nalgebra().qr().unpack();
    let mut q = CMatrix::from_nalgebra(&q);
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Beamsplitter with mixing angle uniform in (0, pi/2) and independent uniform
/// phases on both amplitudes.
pub fn random_beamsplitter<R: Rng + ?Sized>(rng: &mut R) -> Beamsplitter {
    let theta = open_angle(rng);
    let pa = rng.random_range(0.0..2.0 * PI);
    let pb = rng.random_range(0.0..2.0 * PI);
    Beamsplitter::from_angles(theta, pa, pb)
}

/// Real beamsplitter: mixing angle uniform in (0, pi/2), random signs.
pub fn random_real_beamsplitter<R: Rng + ?Sized>(rng: &mut R) -> Beamsplitter {
    let theta = open_angle(rng);
    let pa = if rng.random_bool(0.5) { 0.0 } else { PI };
    let pb = if rng.random_bool(0.5) { 0.0 } else { PI };
    let b = Beamsplitter::from_angles(theta, pa, pb);
    // drop the ~1e-16 imaginary parts left by the polar form
    Beamsplitter::new(C64::new(b.alpha().re, 0.0), C64::new(b.beta().re, 0.0)).expect("normalized by construction")
}

fn open_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let t = rng.random_range(0.0..PI / 2.0);
        if t > 0.0 {
            return t;
        }
    }
}
