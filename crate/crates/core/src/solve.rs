//! One-dimensional numerical engine: smallest-positive-root extraction
//! on (0, 1) and global minimization over a circle parameter.

use crate::error::{Error, Result};
use crate::grid;

pub const DEFAULT_SCAN_STEP: f64 = 1.0 / 4096.0;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_THETA_TOL: f64 = 1e-10;
pub const DEFAULT_CIRCLE_GRID: usize = 4096;

/// A smallest-positive-root problem on (0, search_max].
pub struct RootQuery<F> {
    pub objective: F,
    pub search_max: f64,
    pub scan_step: f64,
    pub tol: f64,
}

impl<F: Fn(f64) -> f64> RootQuery<F> {
    pub fn new(objective: F) -> Self {
        Self {
            objective,
            search_max: 1.0 - 1e-9,
            scan_step: DEFAULT_SCAN_STEP,
            tol: DEFAULT_ROOT_TOL,
        }
    }

    pub fn with_search_max(mut self, search_max: f64) -> Self {
        self.search_max = search_max;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.scan_step > 0.0 && self.scan_step <= 1e-3) {
            return Err(Error::Parameter(format!(
                "scan_step must lie in (0, 1e-3], got {}",
                self.scan_step
            )));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-10) {
            return Err(Error::Parameter(format!(
                "tol must lie in (0, 1e-10], got {}",
                self.tol
            )));
        }
        if !(self.search_max > 0.0 && self.search_max <= 1.0 - 1e-9) {
            return Err(Error::Parameter(format!(
                "search_max must lie in (0, 1 - 1e-9], got {}",
                self.search_max
            )));
        }
        Ok(())
    }
}

/// Scans r = k * scan_step for the first sign change, then bisects the
/// bracketing interval to width `tol`. Returns the midpoint and the
/// absolute residual there.
pub fn smallest_positive_root<F: Fn(f64) -> f64>(q: &RootQuery<F>) -> Result<(f64, f64)> {
    q.validate()?;
    let f = &q.objective;
    let mut prev_r = q.scan_step;
    let mut prev_v = f(prev_r);
    if prev_v == 0.0 {
        return Ok((prev_r, 0.0));
    }
    let mut k = 2u64;
    loop {
        let r = (k as f64) * q.scan_step;
        if r > q.search_max {
            return Err(Error::NoBracket {
                scan_step: q.scan_step,
                search_max: q.search_max,
                first: f(q.scan_step),
                last: prev_v,
            });
        }
        let v = f(r);
        if v == 0.0 {
            return Ok((r, 0.0));
        }
        if v.signum() != prev_v.signum() {
            return Ok(bisect(f, prev_r, r, prev_v, q.tol));
        }
        prev_r = r;
        prev_v = v;
        k += 1;
    }
}

/// Bisection on a bracketing interval; `fa` is the value at `a`.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, fa: f64, tol: f64) -> (f64, f64) {
    let mut sign_a = fa.signum();
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let v = f(mid);
        if v == 0.0 {
            return (mid, 0.0);
        }
        if v.signum() == sign_a {
            a = mid;
            sign_a = v.signum();
        } else {
            b = mid;
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid).abs())
}

/// Global minimum of a continuous function on [0, 2*pi): uniform grid
/// scan, then golden-section refinement around the best grid cell.
/// Grid ties resolve to the smallest angle; refinement never worsens
/// the raw grid minimum.
pub fn minimize_on_circle<F: Fn(f64) -> f64 + Sync>(
    f: F,
    grid_count: usize,
    tol: f64,
) -> (f64, f64) {
    let n = grid_count.max(512);
    let step = std::f64::consts::TAU / n as f64;
    let values = grid::map_indexed(n, |i| f(i as f64 * step));
    let (best, best_val) = grid::argmin(&values);
    let theta_best = best as f64 * step;
    let (theta_g, val_g) = golden_section(&f, theta_best - step, theta_best + step, tol);
    if val_g < best_val {
        (theta_g.rem_euclid(std::f64::consts::TAU), val_g)
    } else {
        (theta_best, best_val)
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}
