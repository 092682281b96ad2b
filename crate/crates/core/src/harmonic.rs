//! Concrete harmonic maps f = h + conj(g) and sampled verification of
//! the geometric predicates: sense-preservation, fully starlike/convex
//! margins, the close-to-convexity probe, coefficient conditions, and
//! the classical counterexamples.

use crate::error::{Error, Result};
use crate::grid;
use crate::psi::PsiSpec;
use crate::radius::ExtremalCoeffs;
use crate::series::PowerSeries;
use crate::solve;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// An analytic self-map of the disk used as dilatation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DilatationSpec {
    /// phi(z) = c, |c| <= 1.
    Constant(Complex64),
    /// phi(z) = e^{i theta0} z^n.
    Monomial { n: u32, theta0: f64 },
    /// phi(z) = (z + a)/(1 + conj(a) z), |a| < 1.
    Mobius(Complex64),
    /// phi(z) = z.
    Identity,
}

impl DilatationSpec {
    pub fn constant(c: Complex64) -> Result<Self> {
        if c.norm() > 1.0 {
            return Err(Error::Parameter(format!(
                "constant dilatation needs |c| <= 1, got |c| = {}",
                c.norm()
            )));
        }
        Ok(Self::Constant(c))
    }

    pub fn mobius(a: Complex64) -> Result<Self> {
        if a.norm() >= 1.0 {
            return Err(Error::Parameter(format!(
                "mobius dilatation needs |a| < 1, got |a| = {}",
                a.norm()
            )));
        }
        Ok(Self::Mobius(a))
    }

    pub fn monomial(n: u32, theta0: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("monomial degree must be >= 1".into()));
        }
        Ok(Self::Monomial { n, theta0 })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Constant(c) => *c,
            Self::Monomial { n, theta0 } => Complex64::from_polar(1.0, *theta0) * z.powu(*n),
            Self::Mobius(a) => (z + a) / (Complex64::ONE + a.conj() * z),
            Self::Identity => z,
        }
    }

    pub fn series(&self, order: usize) -> PowerSeries {
        match self {
            Self::Constant(c) => {
                let mut coeffs = vec![Complex64::ZERO; order + 1];
                coeffs[0] = *c;
                PowerSeries::new(coeffs).expect("nonempty")
            }
            Self::Monomial { n, theta0 } => {
                PowerSeries::monomial(*n as usize, order).scale(Complex64::from_polar(1.0, *theta0))
            }
            // (z + a) * sum_k (-conj(a))^k z^k
            Self::Mobius(a) => {
                let geo = PowerSeries::from_fn(order, |k| (-a.conj()).powu(k as u32));
                geo.mul_z().add(&geo.scale(*a)).truncated(order)
            }
            Self::Identity => PowerSeries::monomial(1, order),
        }
    }
}

/// How the co-analytic part is built from h and the dilatation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// g = phi * h.
    Product,
    /// g' = phi * h'.
    Derivative,
}

/// Closed-form evaluators for the classical counterexamples, used
/// where truncated series would converge too slowly near |z| = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClosedForm {
    /// h = z/(1-z)^2, g = ln(1-z)/2 + z(1-2z)/(2(1-z)^2).
    KoebeShearF,
    /// h = z/(1-z)^2, g = z/(2(1-z)).
    KoebeHalfG,
}

/// A harmonic map f = h + conj(g) with precomputed derivative series.
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    h: PowerSeries,
    g: PowerSeries,
    hp: PowerSeries,
    gp: PowerSeries,
    hpp: PowerSeries,
    gpp: PowerSeries,
    closed: Option<ClosedForm>,
    pub label: String,
}

impl HarmonicMap {
    /// Builds from explicit series; h must satisfy h(0) = 0, h'(0) = 1.
    pub fn from_series(h: PowerSeries, g: PowerSeries, label: &str) -> Result<Self> {
        if h.coeff(0).norm() > 1e-12 || (h.coeff(1) - Complex64::ONE).norm() > 1e-12 {
            return Err(Error::Parameter(format!(
                "h must be normalized h(0)=0, h'(0)=1; got c0={}, c1={}",
                h.coeff(0),
                h.coeff(1)
            )));
        }
        let hp = h.derivative();
        let gp = g.derivative();
        Ok(Self {
            hpp: hp.derivative(),
            gpp: gp.derivative(),
            hp,
            gp,
            h,
            g,
            closed: None,
            label: label.into(),
        })
    }

    pub fn analytic_part(&self) -> &PowerSeries {
        &self.h
    }

    pub fn co_analytic_part(&self) -> &PowerSeries {
        &self.g
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self.closed {
            Some(ClosedForm::KoebeShearF) => {
                let d = Complex64::ONE - z;
                z / (d * d) + ((d.ln() / 2.0) + z * (1.0 - 2.0 * z) / (2.0 * d * d)).conj()
            }
            Some(ClosedForm::KoebeHalfG) => {
                let d = Complex64::ONE - z;
                z / (d * d) + (z / (2.0 * d)).conj()
            }
            None => self.h.eval(z) + self.g.eval(z).conj(),
        }
    }

    pub fn h_prime(&self, z: Complex64) -> Complex64 {
        match self.closed {
            Some(_) => {
                let d = Complex64::ONE - z;
                (Complex64::ONE + z) / (d * d * d)
            }
            None => self.hp.eval(z),
        }
    }

    pub fn g_prime(&self, z: Complex64) -> Complex64 {
        match self.closed {
            Some(ClosedForm::KoebeShearF) => {
                let d = Complex64::ONE - z;
                -z * (Complex64::ONE + z) / (2.0 * d * d * d)
            }
            Some(ClosedForm::KoebeHalfG) => {
                let d = Complex64::ONE - z;
                0.5 / (d * d)
            }
            None => self.gp.eval(z),
        }
    }

    pub fn h_second(&self, z: Complex64) -> Complex64 {
        match self.closed {
            Some(_) => {
                let d = Complex64::ONE - z;
                2.0 * (z + 2.0) / (d * d * d * d)
            }
            None => self.hpp.eval(z),
        }
    }

    pub fn g_second(&self, z: Complex64) -> Complex64 {
        match self.closed {
            Some(ClosedForm::KoebeShearF) => {
                let d = Complex64::ONE - z;
                -(Complex64::ONE + 4.0 * z + z * z) / (2.0 * d * d * d * d)
            }
            Some(ClosedForm::KoebeHalfG) => {
                let d = Complex64::ONE - z;
                1.0 / (d * d * d)
            }
            None => self.gpp.eval(z),
        }
    }

    /// Applies the harmonic Alexander-type transform: every coefficient
    /// of both parts is divided by its index.
    pub fn alexander_transform(&self) -> Result<Self> {
        let h = self.h.bernardi(0.0)?;
        let g = self.g.bernardi(0.0)?;
        Self::from_series(h, g, &format!("alexander[{}]", self.label))
    }
}

/// Builds f = h_psi + conj(g) with g coupled to h through `phi`.
pub fn build_harmonic(
    spec: &PsiSpec,
    phi: &DilatationSpec,
    coupling: Coupling,
    order: usize,
) -> Result<HarmonicMap> {
    if order < 8 {
        return Err(Error::Parameter(format!(
            "series order must be >= 8, got {order}"
        )));
    }
    let h = spec.extremal_hpsi(order);
    let phi_s = phi.series(order);
    let g = match coupling {
        Coupling::Product => phi_s.mul(&h).truncated(order),
        Coupling::Derivative => phi_s.mul(&h.derivative()).truncated(order).integrate0(),
    };
    HarmonicMap::from_series(h, g, &format!("{}+{:?}+{:?}", spec.name(), phi, coupling))
}

/// Polar sampling resolution for the margin checks.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radial: 512,
            angular: 1024,
        }
    }
}

const STRICT_MARGIN: f64 = 1e-9;

/// Outcome of one sampled geometric check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub radius: f64,
    pub grid: (usize, usize),
    pub min_margin: f64,
    pub pass: bool,
    /// (r, theta) where the minimal margin was attained.
    pub witness: (f64, f64),
    pub notes: String,
}

fn report(check_id: &str, radius: f64, grid: &GridSpec, min_margin: f64, witness: (f64, f64), notes: String) -> VerificationReport {
    VerificationReport {
        check_id: check_id.into(),
        radius,
        grid: (grid.radial, grid.angular),
        min_margin,
        pass: min_margin > STRICT_MARGIN,
        witness,
        notes,
    }
}

/// Maps every grid point (r * i/radial, 2 pi j/angular), i >= 1, in a
/// fixed index order.
fn map_polar<T: Send>(
    r: f64,
    grid: &GridSpec,
    f: impl Fn(f64, f64) -> T + Sync + Send,
) -> Vec<T> {
    let (nr, na) = (grid.radial, grid.angular);
    grid::map_indexed(nr * na, move |k| {
        let i = k / na + 1;
        let j = k % na;
        f(r * i as f64 / nr as f64, TAU * j as f64 / na as f64)
    })
}

fn point(r: f64, grid: &GridSpec, k: usize) -> (f64, f64) {
    let (i, j) = (k / grid.angular + 1, k % grid.angular);
    (
        r * i as f64 / grid.radial as f64,
        TAU * j as f64 / grid.angular as f64,
    )
}

/// min(|h'| - |g'|) over the closed disk |z| <= r; the notes carry the
/// Jacobian minimum |h'|^2 - |g'|^2.
pub fn sense_preserving_margin(f: &HarmonicMap, r: f64, grid: &GridSpec) -> VerificationReport {
    let vals = map_polar(r, grid, |rr, th| {
        let z = Complex64::from_polar(rr, th);
        let (hp, gp) = (f.h_prime(z).norm(), f.g_prime(z).norm());
        (hp - gp, hp * hp - gp * gp)
    });
    let margins: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let jacobians: Vec<f64> = vals.iter().map(|v| v.1).collect();
    let (k, min_margin) = grid::argmin(&margins);
    let (_, min_jac) = grid::argmin(&jacobians);
    report(
        "sense-preserving",
        r,
        grid,
        min_margin,
        point(r, grid, k),
        format!("jacobian_min={min_jac:.6e}"),
    )
}

/// min over the disk of d/dtheta arg f(re^{i theta}) - beta, via
/// Re[(z h' - conj(z g'))/f].
pub fn fully_starlike_margin(
    f: &HarmonicMap,
    r: f64,
    beta: f64,
    grid: &GridSpec,
) -> Result<VerificationReport> {
    let vals = map_polar(r, grid, |rr, th| {
        let z = Complex64::from_polar(rr, th);
        let fz = f.eval(z);
        let num = z * f.h_prime(z) - (z * f.g_prime(z)).conj();
        ((num / fz).re - beta, fz.norm())
    });
    let moduli: Vec<f64> = vals.iter().map(|v| v.1).collect();
    let (kz, min_mod) = grid::argmin(&moduli);
    if min_mod < 1e-12 {
        let (rr, th) = point(r, grid, kz);
        return Err(Error::ZeroEncountered {
            r: rr,
            theta: th,
            what: "f vanishes on a sampled circle".into(),
        });
    }
    let margins: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let (k, min_margin) = grid::argmin(&margins);
    Ok(report(
        "fully-starlike",
        r,
        grid,
        min_margin,
        point(r, grid, k),
        format!("beta={beta}"),
    ))
}

/// min over the disk of d/dtheta arg(d/dtheta f) - beta, via
/// Im(d2f / df) with df = i(zh' - conj(zg')) and
/// d2f = -[z(h' + zh'') + conj(z(g' + zg''))].
pub fn fully_convex_margin(
    f: &HarmonicMap,
    r: f64,
    beta: f64,
    grid: &GridSpec,
) -> Result<VerificationReport> {
    let vals = map_polar(r, grid, |rr, th| {
        let z = Complex64::from_polar(rr, th);
        let df = Complex64::I * (z * f.h_prime(z) - (z * f.g_prime(z)).conj());
        let d2f = -(z * (f.h_prime(z) + z * f.h_second(z))
            + (z * (f.g_prime(z) + z * f.g_second(z))).conj());
        ((d2f / df).im - beta, df.norm())
    });
    let moduli: Vec<f64> = vals.iter().map(|v| v.1).collect();
    let (kz, min_mod) = grid::argmin(&moduli);
    if min_mod < 1e-12 {
        let (rr, th) = point(r, grid, kz);
        return Err(Error::ZeroEncountered {
            r: rr,
            theta: th,
            what: "d/dtheta f vanishes on a sampled circle".into(),
        });
    }
    let margins: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let (k, min_margin) = grid::argmin(&margins);
    Ok(report(
        "fully-convex",
        r,
        grid,
        min_margin,
        point(r, grid, k),
        format!("beta={beta}"),
    ))
}

/// Convexity of Q_delta = h - delta g on |z| = r for |delta| = 1 on a
/// uniform grid: margin = min over delta, theta of Re(1 + z Q''/Q').
pub fn close_to_convex_probe(
    f: &HarmonicMap,
    r: f64,
    delta_grid: usize,
    angular: usize,
) -> Result<VerificationReport> {
    let nd = delta_grid.max(4);
    let na = angular.max(64);
    let vals = grid::map_indexed(nd * na, |k| {
        let delta = Complex64::from_polar(1.0, TAU * (k / na) as f64 / nd as f64);
        let z = Complex64::from_polar(r, TAU * (k % na) as f64 / na as f64);
        let qp = f.h_prime(z) - delta * f.g_prime(z);
        let qpp = f.h_second(z) - delta * f.g_second(z);
        ((Complex64::ONE + z * qpp / qp).re, qp.norm())
    });
    let moduli: Vec<f64> = vals.iter().map(|v| v.1).collect();
    let (kz, min_mod) = grid::argmin(&moduli);
    if min_mod < 1e-12 {
        return Err(Error::ZeroEncountered {
            r,
            theta: TAU * (kz % na) as f64 / na as f64,
            what: "Q' vanishes".into(),
        });
    }
    let margins: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let (k, min_margin) = grid::argmin(&margins);
    Ok(VerificationReport {
        check_id: "close-to-convex".into(),
        radius: r,
        grid: (nd, na),
        min_margin,
        pass: min_margin > STRICT_MARGIN,
        witness: (r, TAU * (k % na) as f64 / na as f64),
        notes: format!("delta=exp(2 pi i {}/{nd})", k / na),
    })
}

/// Coefficient lemmas, expressed through the extremal majorants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lemma {
    FullyStarlike(f64),
    FullyConvex(f64),
    UniformStarlike,
    UniformConvex,
}

impl Lemma {
    fn weight(&self, n: usize) -> f64 {
        match self {
            Self::FullyStarlike(_) | Self::UniformStarlike => n as f64,
            Self::FullyConvex(_) => (n * n) as f64,
            Self::UniformConvex => (n * (2 * n - 1)) as f64,
        }
    }

    fn threshold(&self) -> f64 {
        match self {
            Self::FullyStarlike(beta) => (1.0 - beta) / 4.0,
            Self::FullyConvex(beta) => (5.0 - beta) / 4.0,
            Self::UniformStarlike => 0.25,
            Self::UniformConvex => 0.5,
        }
    }
}

/// Evaluates the lemma's weighted sum with |a_n|, |b_n| replaced by the
/// extremal majorant |a^_n| r^{n-1}; `k_terms = Some(k)` keeps the k
/// terms n = 2..k+1. Passing means the sum stays within the lemma's
/// threshold.
pub fn coefficient_condition(
    sums: &ExtremalCoeffs,
    lemma: Lemma,
    r: f64,
    k_terms: Option<usize>,
) -> (f64, bool) {
    let sum = sums.weighted_sum(r, |n| lemma.weight(n), k_terms, true);
    (sum, sum <= lemma.threshold() + 1e-12)
}

/// Smallest positive root of the truncated fully-convex coefficient
/// equation (table reading), as tabulated in the k-term comparison.
pub fn table1_root(spec: &PsiSpec, beta: f64, k_terms: Option<usize>) -> Result<f64> {
    let sums = ExtremalCoeffs::new(spec);
    let rhs = (5.0 - beta) / 4.0;
    let q = solve::RootQuery::new(|r: f64| {
        sums.weighted_sum(r, |n| (n * n) as f64, k_terms, true) - rhs
    })
    .with_search_max(0.9);
    solve::smallest_positive_root(&q).map(|(root, _)| root)
}

/// The shear counterexample F: sense-preserving (dilatation -z/2) yet not
/// univalent.
pub fn counterexample_f() -> HarmonicMap {
    let mut m = koebe_shear_series(|hp: &PowerSeries| {
        hp.mul(&PowerSeries::monomial(1, hp.order()))
            .scale(Complex64::new(-0.5, 0.0))
    });
    m.closed = Some(ClosedForm::KoebeShearF);
    m.label = "counterexample-F".into();
    m
}

/// The counterexample G: sense-reversing, |g'(-3/4)/h'(-3/4)| = 7/2.
pub fn counterexample_g() -> HarmonicMap {
    let order = 512;
    let h = PowerSeries::from_fn(order, |n| Complex64::new(n as f64, 0.0));
    let g = PowerSeries::from_fn(order, |n| {
        Complex64::new(if n >= 1 { 0.5 } else { 0.0 }, 0.0)
    });
    let mut m = HarmonicMap::from_series(h, g, "counterexample-G").expect("normalized");
    m.closed = Some(ClosedForm::KoebeHalfG);
    m
}

fn koebe_shear_series(make_gp: impl Fn(&PowerSeries) -> PowerSeries) -> HarmonicMap {
    let order = 512;
    let h = PowerSeries::from_fn(order, |n| Complex64::new(n as f64, 0.0));
    let g = make_gp(&h.derivative()).truncated(order).integrate0();
    HarmonicMap::from_series(h, g, "koebe-shear").expect("normalized")
}

/// The harmonic Koebe function K.
pub fn harmonic_koebe(order: usize) -> HarmonicMap {
    let h = PowerSeries::from_fn(order, |n| {
        if n == 0 {
            Complex64::ZERO
        } else {
            Complex64::new(((2 * n + 1) * (n + 1)) as f64 / 6.0, 0.0)
        }
    });
    let g = PowerSeries::from_fn(order, |n| {
        if n == 0 {
            Complex64::ZERO
        } else {
            Complex64::new(((2 * n - 1) * (n - 1)) as f64 / 6.0, 0.0)
        }
    });
    HarmonicMap::from_series(h, g, "harmonic-koebe").expect("normalized")
}

/// A pair of points with nearly equal images, found through the
/// conjugation symmetry of real-coefficient maps: where Im f(re^{i t})
/// crosses zero off the real axis, f identifies re^{i t} with its
/// conjugate.
pub fn injectivity_failure_witness(
    f: &HarmonicMap,
    r: f64,
) -> Option<(Complex64, Complex64, f64)> {
    let n = 8192;
    let im_at = |t: f64| f.eval(Complex64::from_polar(r, t)).im;
    let mut prev_t = 0.02;
    let mut prev = im_at(prev_t);
    for k in 1..n {
        let t = 0.02 + (std::f64::consts::PI - 0.04) * k as f64 / n as f64;
        let v = im_at(t);
        if v == 0.0 || v.signum() != prev.signum() {
            let (t_star, _) = solve::bisect(&im_at, prev_t, t, prev, 1e-14);
            let z1 = Complex64::from_polar(r, t_star);
            let z2 = z1.conj();
            return Some((z1, z2, (f.eval(z1) - f.eval(z2)).norm()));
        }
        prev_t = t;
        prev = v;
    }
    None
}

/// Scans circles |z| = r for the first radius where the fully-starlike
/// margin at beta = 0 turns negative.
pub fn fully_starlike_failure_radius(f: &HarmonicMap, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let circle = GridSpec {
        radial: 1,
        angular: 2048,
    };
    let mut r = lo;
    while r <= hi {
        if let Ok(rep) = fully_starlike_margin(f, r, 0.0, &circle) {
            if rep.min_margin < 0.0 {
                return Some((r, rep.min_margin));
            }
        }
        r += 0.005;
    }
    None
}

/// Reproduces the classical counterexamples as sampled reports.
pub fn counterexample_suite() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let grid = GridSpec {
        radial: 256,
        angular: 512,
    };

    let f = counterexample_f();
    let mut rep = sense_preserving_margin(&f, 0.99, &grid);
    rep.check_id = "F-sense-preserving".into();
    out.push(rep);

    // dilatation bound max |g'/h'| over a 1024^2 polar grid
    let dg = GridSpec {
        radial: 1024,
        angular: 1024,
    };
    let ratios = map_polar(0.999, &dg, |rr, th| {
        let z = Complex64::from_polar(rr, th);
        -f.g_prime(z).norm() / f.h_prime(z).norm()
    });
    let (k, neg_max) = grid::argmin(&ratios);
    out.push(report(
        "F-dilatation-bound",
        0.999,
        &dg,
        1.0 + neg_max, // 1 - max|g'/h'|
        point(0.999, &dg, k),
        format!("max_ratio={:.9}", -neg_max),
    ));

    let inj = injectivity_failure_witness(&f, 0.9);
    out.push(match inj {
        Some((z1, z2, dist)) => VerificationReport {
            check_id: "F-injectivity-failure".into(),
            radius: 0.9,
            grid: (1, 8192),
            min_margin: (z1 - z2).norm() - 0.1,
            pass: dist < 1e-6 && (z1 - z2).norm() > 0.1,
            witness: (0.9, z1.arg()),
            notes: format!(
                "f({:.9}+{:.9}i) and its conjugate point agree to {dist:.3e}",
                z1.re, z1.im
            ),
        },
        None => VerificationReport {
            check_id: "F-injectivity-failure".into(),
            radius: 0.9,
            grid: (1, 8192),
            min_margin: -1.0,
            pass: false,
            witness: (0.9, 0.0),
            notes: "no collision pair found".into(),
        },
    });

    let g = counterexample_g();
    let z34 = Complex64::new(-0.75, 0.0);
    let ratio = g.g_prime(z34).norm() / g.h_prime(z34).norm();
    out.push(VerificationReport {
        check_id: "G-ratio".into(),
        radius: 0.75,
        grid: (1, 1),
        min_margin: ratio - 1.0,
        pass: (ratio - 3.5).abs() < 1e-9,
        witness: (0.75, std::f64::consts::PI),
        notes: format!("|g'(-3/4)/h'(-3/4)| = {ratio:.12}"),
    });
    let mut rep = sense_preserving_margin(&g, 0.8, &grid);
    rep.check_id = "G-sense-preserving".into();
    out.push(rep); // expected to fail: G is sense-reversing

    let k_map = harmonic_koebe(1024);
    let mut rep = sense_preserving_margin(&k_map, 0.9, &grid);
    rep.check_id = "K-sense-preserving".into();
    out.push(rep);

    let lam = k_map.alexander_transform().expect("b0 = 0");
    out.push(match fully_starlike_failure_radius(&lam, 0.5, 0.95) {
        Some((r, margin)) => VerificationReport {
            check_id: "lambda-K-fully-starlike-failure".into(),
            radius: r,
            grid: (1, 2048),
            min_margin: margin,
            pass: true,
            witness: (r, 0.0),
            notes: format!("d/dtheta arg f dips to {margin:.6} on |z| = {r:.3}"),
        },
        None => VerificationReport {
            check_id: "lambda-K-fully-starlike-failure".into(),
            radius: 0.95,
            grid: (1, 2048),
            min_margin: 0.0,
            pass: false,
            witness: (0.95, 0.0),
            notes: "no failure radius found below 0.95".into(),
        },
    });

    out
}
