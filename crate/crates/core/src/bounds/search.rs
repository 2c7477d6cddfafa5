//! Exhaustive simplex grids and pairwise pattern-search refinement.

/// Number of points of the grid `{c / g : c in N^k, sum c = g}`.
pub(crate) fn grid_size(k: usize, g: usize) -> usize {
    // C(g + k - 1, k - 1) with saturation
    let mut acc: u128 = 1;
    for i in 0..k.saturating_sub(1) {
        acc = acc * (g + 1 + i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Visit every grid point of the `k`-simplex with resolution `g`, in
/// lexicographic order of the count vectors.
pub(crate) fn for_each_grid_point(k: usize, g: usize, mut visit: impl FnMut(&[f64])) {
    let mut counts = vec![0usize; k];
    let mut point = vec![0.0; k];
    fn rec(idx: usize, left: usize, g: usize, counts: &mut [usize], point: &mut [f64], visit: &mut dyn FnMut(&[f64])) {
        let k = counts.len();
        if idx == k - 1 {
            counts[idx] = left;
            for (p, &c) in point.iter_mut().zip(counts.iter()) {
                *p = c as f64 / g as f64;
            }
            visit(point);
            return;
        }
        for c in 0..=left {
            counts[idx] = c;
            rec(idx + 1, left - c, g, counts, point, visit);
        }
    }
    rec(0, g, g, &mut counts, &mut point, &mut visit);
}

/// Improve `x` by moving mass between pairs of coordinates, halving the
/// step from `h0` until it drops below `tol`. `better(a, b)` is true when
/// value `a` is strictly preferable to `b`.
pub(crate) fn refine(
    mut x: Vec<f64>,
    mut fx: f64,
    h0: f64,
    tol: f64,
    f: &mut dyn FnMut(&[f64]) -> f64,
    better: fn(f64, f64) -> bool,
) -> (Vec<f64>, f64) {
    let k = x.len();
    if k < 2 {
        return (x, fx);
    }
    let mut h = h0;
    let mut trial = x.clone();
    while h >= tol {
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || x[i] <= 0.0 {
                    continue;
                }
                let step = h.min(x[i]);
                trial.copy_from_slice(&x);
                trial[i] -= step;
                trial[j] += step;
                if trial[i] < 1e-15 {
                    trial[i] = 0.0;
                }
                let ft = f(&trial);
                if better(ft, fx) {
                    x.copy_from_slice(&trial);
                    fx = ft;
                    improved = true;
                }
            }
        }
        if !improved {
            h /= 2.0;
        }
    }
    (x, fx)
}

pub(crate) fn lower(a: f64, b: f64) -> bool {
    a < b - 1e-15
}

pub(crate) fn higher(a: f64, b: f64) -> bool {
    a > b + 1e-15
}
