//! Catalog of Ma-Minda generators psi, their series, extremal functions
//! h_psi, closed-form derivatives, circle minima and convexity bounds.
//!
//! Every variant evaluates with principal branches. The square roots in
//! the lemniscate and Bernoulli generators act on 1+z and 1+z^2, which
//! stay off the cut for |z| < 1.

use crate::error::{Error, Result};
use crate::radius::{Branch, RadiusResult};
use crate::series::PowerSeries;
use crate::solve::{self, RootQuery};
use num_complex::Complex64;
use serde::Serialize;

/// A Ma-Minda generator psi with psi(0) = 1 and positive real part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiSpec {
    /// (1 + D z)/(1 + E z), -1 <= E < D <= 1.
    Janowski { d: f64, e: f64 },
    /// sqrt(1 + z).
    Lemniscate,
    /// e^z.
    Exponential,
    /// 1 + sin z.
    Sine,
    /// z + sqrt(1 + z^2).
    Bernoulli,
    /// 2/(1 + e^{-z}).
    Sigmoid,
    /// 1 + z e^z.
    KappaExp,
    /// ((1 + z)/(1 - z))^eta, 0 < eta <= 1.
    PowerEta { eta: f64 },
    /// The class S*[M]: |zh'/h - M| < M, represented through m = 1 - 1/M
    /// as the generator (1 + z)/(1 - m z).
    DiskM { m_big: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    ClosedFormSharp,
    NumericFallback,
}

/// A lower bound H_psi(r) on Re(1 + z h''/h') over |z| = r.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConvexityBound {
    pub kind: BoundKind,
    pub value: f64,
}

impl PsiSpec {
    pub fn janowski(d: f64, e: f64) -> Result<Self> {
        if !(-1.0 <= e && e < d && d <= 1.0) {
            return Err(Error::Parameter(format!(
                "janowski requires -1 <= E < D <= 1, got D={d}, E={e}"
            )));
        }
        Ok(Self::Janowski { d, e })
    }

    pub fn power_eta(eta: f64) -> Result<Self> {
        if !(0.0 < eta && eta <= 1.0) {
            return Err(Error::Parameter(format!(
                "power generator requires 0 < eta <= 1, got {eta}"
            )));
        }
        Ok(Self::PowerEta { eta })
    }

    pub fn disk_m(m_big: f64) -> Result<Self> {
        if m_big <= 0.5 {
            return Err(Error::Parameter(format!(
                "S*[M] requires M > 1/2, got {m_big}"
            )));
        }
        Ok(Self::DiskM { m_big })
    }

    /// The derived parameter m = 1 - 1/M for S*[M].
    pub fn disk_m_param(&self) -> Option<f64> {
        match self {
            Self::DiskM { m_big } => Some(1.0 - 1.0 / m_big),
            _ => None,
        }
    }

    /// Janowski parameters (D, E) when the generator is of Janowski type.
    fn janowski_params(&self) -> Option<(f64, f64)> {
        match self {
            Self::Janowski { d, e } => Some((*d, *e)),
            Self::DiskM { .. } => {
                let m = self.disk_m_param().unwrap();
                Some((1.0, -m))
            }
            _ => None,
        }
    }

    /// Parses a CLI catalog name:
    /// janowski:D,E | lemniscate | exp | sine | bernoulli | sigmoid |
    /// kappa-exp | power:eta | diskm:M.
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::UnknownPsi(name.to_string());
        if let Some(rest) = name.strip_prefix("janowski:") {
            let (d, e) = rest.split_once(',').ok_or_else(bad)?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            let e: f64 = e.trim().parse().map_err(|_| bad())?;
            return Self::janowski(d, e);
        }
        if let Some(eta) = name.strip_prefix("power:") {
            return Self::power_eta(eta.trim().parse().map_err(|_| bad())?);
        }
        if let Some(m) = name.strip_prefix("diskm:") {
            return Self::disk_m(m.trim().parse().map_err(|_| bad())?);
        }
        match name {
            "lemniscate" => Ok(Self::Lemniscate),
            "exp" => Ok(Self::Exponential),
            "sine" => Ok(Self::Sine),
            "bernoulli" => Ok(Self::Bernoulli),
            "sigmoid" => Ok(Self::Sigmoid),
            "kappa-exp" => Ok(Self::KappaExp),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Janowski { d, e } => format!("janowski:{d},{e}"),
            Self::Lemniscate => "lemniscate".into(),
            Self::Exponential => "exp".into(),
            Self::Sine => "sine".into(),
            Self::Bernoulli => "bernoulli".into(),
            Self::Sigmoid => "sigmoid".into(),
            Self::KappaExp => "kappa-exp".into(),
            Self::PowerEta { eta } => format!("power:{eta}"),
            Self::DiskM { m_big } => format!("diskm:{m_big}"),
        }
    }

    /// Catalog name patterns exposed by the CLI.
    pub fn catalog_names() -> &'static [&'static str] {
        &[
            "janowski:D,E",
            "lemniscate",
            "exp",
            "sine",
            "bernoulli",
            "sigmoid",
            "kappa-exp",
            "power:eta",
            "diskm:M",
        ]
    }

    /// psi(z) for |z| < 1.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk(z.norm()));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Janowski { d, e } => (1.0 + d * z) / (1.0 + e * z),
            Self::Lemniscate => (Complex64::ONE + z).sqrt(),
            Self::Exponential => z.exp(),
            Self::Sine => Complex64::ONE + z.sin(),
            Self::Bernoulli => z + (Complex64::ONE + z * z).sqrt(),
            Self::Sigmoid => 2.0 / (Complex64::ONE + (-z).exp()),
            Self::KappaExp => Complex64::ONE + z * z.exp(),
            Self::PowerEta { eta } => {
                // principal logs; exp(eta (log(1+z) - log(1-z)))
                (*eta * ((Complex64::ONE + z).ln() - (Complex64::ONE - z).ln())).exp()
            }
            Self::DiskM { .. } => {
                let (d, e) = self.janowski_params().unwrap();
                (1.0 + d * z) / (1.0 + e * z)
            }
        }
    }

    /// psi'(z), closed form per variant.
    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Janowski { d, e } => {
                let den = 1.0 + e * z;
                (d - e) / (den * den)
            }
            Self::Lemniscate => 0.5 / (Complex64::ONE + z).sqrt(),
            Self::Exponential => z.exp(),
            Self::Sine => z.cos(),
            Self::Bernoulli => Complex64::ONE + z / (Complex64::ONE + z * z).sqrt(),
            Self::Sigmoid => {
                let em = (-z).exp();
                let den = Complex64::ONE + em;
                2.0 * em / (den * den)
            }
            Self::KappaExp => (Complex64::ONE + z) * z.exp(),
            Self::PowerEta { eta } => {
                self.eval_unchecked(z) * 2.0 * *eta / (Complex64::ONE - z * z)
            }
            Self::DiskM { .. } => {
                let (d, e) = self.janowski_params().unwrap();
                let den = 1.0 + e * z;
                (d - e) / (den * den)
            }
        }
    }

    /// Taylor coefficients of psi at the origin, 1 + p_1 z + p_2 z^2 + ...
    pub fn series(&self, order: usize) -> PowerSeries {
        let r = |x: f64| Complex64::new(x, 0.0);
        match self {
            Self::Janowski { d, e } => PowerSeries::from_fn(order, |n| {
                if n == 0 {
                    Complex64::ONE
                } else {
                    r((d - e) * (-e).powi(n as i32 - 1))
                }
            }),
            Self::DiskM { .. } => {
                let (d, e) = self.janowski_params().unwrap();
                PowerSeries::from_fn(order, |n| {
                    if n == 0 {
                        Complex64::ONE
                    } else {
                        r((d - e) * (-e).powi(n as i32 - 1))
                    }
                })
            }
            Self::Lemniscate => {
                let b = binomial_half(order);
                PowerSeries::from_fn(order, |n| r(b[n]))
            }
            Self::Exponential => {
                let mut fact = 1.0;
                let mut coeffs = Vec::with_capacity(order + 1);
                coeffs.push(Complex64::ONE);
                for n in 1..=order {
                    fact *= n as f64;
                    coeffs.push(r(1.0 / fact));
                }
                PowerSeries::new(coeffs).expect("nonempty")
            }
            Self::Sine => {
                let mut coeffs = vec![Complex64::ZERO; order + 1];
                coeffs[0] = Complex64::ONE;
                let mut fact = 1.0;
                for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
                    fact *= n as f64;
                    if n % 2 == 1 {
                        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                        *c = r(sign / fact);
                    }
                }
                PowerSeries::new(coeffs).expect("nonempty")
            }
            Self::Bernoulli => {
                let b = binomial_half(order);
                let mut coeffs = vec![Complex64::ZERO; order + 1];
                for k in 0..=order / 2 {
                    coeffs[2 * k] = r(b[k]);
                }
                coeffs[1] += Complex64::ONE;
                PowerSeries::new(coeffs).expect("nonempty")
            }
            Self::Sigmoid => {
                // 2 / (1 + e^{-z}) by series reciprocal
                let den = PowerSeries::from_fn(order, |n| {
                    if n == 0 {
                        return r(2.0);
                    }
                    let mut fact = 1.0;
                    for j in 1..=n {
                        fact *= j as f64;
                    }
                    r(if n % 2 == 0 { 1.0 } else { -1.0 } / fact)
                });
                den.recip().expect("nonzero constant").scale(r(2.0))
            }
            Self::KappaExp => {
                let mut coeffs = vec![Complex64::ZERO; order + 1];
                coeffs[0] = Complex64::ONE;
                let mut fact = 1.0;
                for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
                    if n >= 2 {
                        fact *= (n - 1) as f64;
                    }
                    *c = r(1.0 / fact);
                }
                PowerSeries::new(coeffs).expect("nonempty")
            }
            Self::PowerEta { eta } => {
                // exp(eta (log(1+z) - log(1-z))) = exp(2 eta sum_{odd n} z^n/n)
                let arg = PowerSeries::from_fn(order, |n| {
                    if n % 2 == 1 {
                        r(2.0 * eta / n as f64)
                    } else {
                        Complex64::ZERO
                    }
                });
                arg.exp().expect("zero constant term")
            }
        }
    }

    /// The extremal function h_psi = z exp(int_0^z (psi(t)-1)/t dt).
    pub fn extremal_hpsi(&self, order: usize) -> PowerSeries {
        let kernel = self
            .series(order)
            .integrate_log_kernel()
            .expect("catalog psi is normalized");
        kernel
            .exp()
            .expect("kernel has zero constant term")
            .mul_z()
            .truncated(order)
    }

    /// Real coefficients a^_n of h_psi (all catalog generators are real
    /// on the real axis).
    pub fn hpsi_coeffs(&self, order: usize) -> Vec<f64> {
        self.extremal_hpsi(order)
            .coeffs()
            .iter()
            .map(|c| c.re)
            .collect()
    }

    /// h'_psi(r) via cataloged closed forms where available; other
    /// variants fall back to adaptive series evaluation of h'_psi.
    pub fn hpsi_prime_closed(&self, r: f64) -> f64 {
        if let Some((d, e)) = self.janowski_params() {
            let psi_r = (1.0 + d * r) / (1.0 + e * r);
            return if e != 0.0 {
                psi_r * (1.0 + e * r).powf((d - e) / e)
            } else {
                psi_r * (d * r).exp()
            };
        }
        match self {
            Self::Lemniscate => {
                let s = (1.0 + r).sqrt();
                4.0 * s / ((s + 1.0) * (s + 1.0)) * (2.0 * (s - 1.0)).exp()
            }
            Self::KappaExp => (1.0 + r * r.exp()) * (r.exp() - 1.0).exp(),
            Self::Bernoulli => {
                let s = (1.0 + r * r).sqrt();
                2.0 * (r + s) / (s + 1.0) * (r + s - 1.0).exp()
            }
            Self::PowerEta { .. } => {
                // h' = psi(r) exp(int_0^r (psi(t)-1)/t dt), kernel by quadrature
                let psi_r = self.eval_unchecked(Complex64::new(r, 0.0)).re;
                psi_r * self.kernel_quadrature(r).exp()
            }
            _ => self.hpsi_prime_series(r),
        }
    }

    /// Series evaluation of h'_psi(r), doubling the order until stable.
    pub fn hpsi_prime_series(&self, r: f64) -> f64 {
        let z = Complex64::new(r, 0.0);
        let mut order = 64;
        let mut prev = self.extremal_hpsi(order).derivative().eval(z).re;
        loop {
            order *= 2;
            let next = self.extremal_hpsi(order).derivative().eval(z).re;
            if (next - prev).abs() <= 1e-13 * next.abs().max(1.0) || order >= 2048 {
                return next;
            }
            prev = next;
        }
    }

    /// Composite-Simpson quadrature of (psi(t) - 1)/t on [0, r]. The
    /// integrand extends continuously to t = 0 with value p_1.
    fn kernel_quadrature(&self, r: f64) -> f64 {
        let p1 = self.series(2).coeff(1).re;
        let integrand = |t: f64| {
            if t == 0.0 {
                p1
            } else {
                (self.eval_unchecked(Complex64::new(t, 0.0)).re - 1.0) / t
            }
        };
        let panels = 512;
        let h = r / panels as f64;
        let mut acc = integrand(0.0) + integrand(r);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * integrand(i as f64 * h);
        }
        acc * h / 3.0
    }

    /// m(r) = min over |z| = r of |psi(z)|, with the arg-min angle.
    pub fn circle_min_modulus(&self, r: f64) -> (f64, f64) {
        let f = |theta: f64| {
            self.eval_unchecked(Complex64::from_polar(r, theta)).norm()
        };
        let (theta, value) = solve::minimize_on_circle(f, solve::DEFAULT_CIRCLE_GRID, solve::DEFAULT_THETA_TOL);
        (value, theta)
    }

    /// m(r) = min over |z| = r of Re psi(z), with the arg-min angle.
    pub fn circle_min_real(&self, r: f64) -> (f64, f64) {
        let f = |theta: f64| self.eval_unchecked(Complex64::from_polar(r, theta)).re;
        let (theta, value) = solve::minimize_on_circle(f, solve::DEFAULT_CIRCLE_GRID, solve::DEFAULT_THETA_TOL);
        (value, theta)
    }

    /// Sharp (where known) lower bound H_psi(r) for
    /// Re(1 + z h''/h') over |z| = r, h in S*(psi).
    pub fn h_psi_bound(&self, r: f64) -> ConvexityBound {
        match self {
            Self::Lemniscate => ConvexityBound {
                kind: BoundKind::ClosedFormSharp,
                value: (1.0 - r).sqrt() - r / (1.0 - r).sqrt(),
            },
            Self::Sigmoid => ConvexityBound {
                kind: BoundKind::ClosedFormSharp,
                value: (2.0 - r * r.exp()) / (1.0 + r.exp()),
            },
            Self::Janowski { d, e } if *d == 1.0 && *e == -1.0 => ConvexityBound {
                kind: BoundKind::ClosedFormSharp,
                value: (1.0 - 4.0 * r + r * r) / (1.0 - r * r),
            },
            _ => ConvexityBound {
                kind: BoundKind::NumericFallback,
                value: self.extremal_convexity_min(r),
            },
        }
    }

    /// min over |z| = r of Re(1 + z h''_psi/h'_psi) for the extremal
    /// function, using the identity 1 + z h''/h' = psi + z psi'/psi.
    fn extremal_convexity_min(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 1.0;
        }
        let f = |theta: f64| {
            let w = Complex64::from_polar(r, theta);
            let p = self.eval_unchecked(w);
            (p + w * self.deriv(w) / p).re
        };
        solve::minimize_on_circle(f, solve::DEFAULT_CIRCLE_GRID, solve::DEFAULT_THETA_TOL).1
    }

    /// r_c: the smallest positive root of H_psi(r) = 0 on (0, 1).
    pub fn convexity_radius(&self) -> Result<RadiusResult> {
        let bound_kind = self.h_psi_bound(0.25).kind;
        let q = RootQuery::new(|r: f64| self.h_psi_bound(r).value)
            .with_search_max(1.0 - 1e-6);
        let (root, residual) =
            solve::smallest_positive_root(&q).map_err(|_| Error::NoConvexityBracket)?;
        let sharp = bound_kind == BoundKind::ClosedFormSharp;
        Ok(RadiusResult {
            value: root,
            branch: Branch::ConvexityRadius,
            equation_id: "H_psi(r)=0".into(),
            residual,
            sharp,
            notes: if sharp {
                "closed-form sharp convexity bound".into()
            } else {
                "estimate: numeric fallback bound from the extremal function only".into()
            },
        })
    }
}

/// Binomial coefficients C(1/2, k) for k = 0..=n.
fn binomial_half(n: usize) -> Vec<f64> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(1.0);
    for k in 1..=n {
        let prev = b[k - 1];
        b.push(prev * (0.5 - (k as f64 - 1.0)) / k as f64);
    }
    b
}
