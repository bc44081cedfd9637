//! Wall-clock helpers for scaling measurements.

use std::time::Instant;

/// Median wall time of `reps` calls (at least one), in nanoseconds.
pub fn median_ns<T>(reps: usize, mut f: impl FnMut() -> T) -> u128 {
    let mut times: Vec<u128> = (0..reps.max(1))
        .map(|_| {
            let t0 = Instant::now();
            std::hint::black_box(f());
            t0.elapsed().as_nanos()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

/// Least-squares slope of `ln t` against `ln n`.
pub fn loglog_slope(points: &[(usize, u128)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| (p.1.max(1) as f64).ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// `2, 4, 8, ...` up to `nmax`, with `nmax` itself appended when it is not a power of two.
pub fn geometric_grid(nmax: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = std::iter::successors(Some(2usize), |n| n.checked_mul(2))
        .take_while(|n| *n <= nmax)
        .collect();
    if grid.last() != Some(&nmax) && nmax >= 2 {
        grid.push(nmax);
    }
    grid
}
