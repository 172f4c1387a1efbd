//! Quick probe: confirm the LAPACK backend links and measure dense
//! Cholesky throughput at the sizes the larger relaxations produce.

use ndarray::Array2;
use ndarray_linalg::{Cholesky, Eigh, UPLO};
use std::time::Instant;

fn main() {
    for &m in &[500usize, 2000, 4200] {
        let a = Array2::from_shape_fn((m, m), |(i, j)| {
            if i == j {
                m as f64
            } else {
                ((i * 31 + j * 17) % 19) as f64 * 0.01
            }
        });
        let t = Instant::now();
        let _l = a.cholesky(UPLO::Lower).expect("cholesky");
        let dt = t.elapsed().as_secs_f64();
        let gf = (m as f64).powi(3) / 3.0 / dt / 1e9;
        println!("cholesky m={m}: {dt:.3,}s  ({gf:.1} GF/s)");
    }
    let s = 60usize;
    let a = Array2::from_shape_fn((s, s), |(i, j)| 1.0 / (1.0 + (i + j) as f64));
    let t = Instant::now();
    for _ in 0..100 {
        let _ = a.eigh(UPLO::Lower).unwrap();
    }
    println!("eigh {s}x{s} x100: {:.3}s", t.elapsed().as_secs_f64());
}
