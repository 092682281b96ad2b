//! One operation per radius theorem: composes the psi catalog and the
//! scalar solver into `RadiusResult` values.
//!
//! The coefficient-sum equations are evaluated by direct summation of
//! the extremal coefficients, so the finite truncations S_k reuse the
//! same code path as the full sums.

use crate::error::{Error, Result};
use crate::psi::{BoundKind, PsiSpec};
use crate::solve::{self, RootQuery};
use num_complex::Complex64;
use serde::Serialize;

pub const ONE_THIRD: f64 = 1.0 / 3.0;

/// Which part of a min{., .} or cap produced the radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    EquationRoot,
    ConvexityRadius,
    OneThirdCap,
    BetaDegenerateZero,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiusResult {
    pub value: f64,
    pub branch: Branch,
    pub equation_id: String,
    pub residual: f64,
    pub sharp: bool,
    pub notes: String,
}

/// The fully-convex theorem's statement and its Table 1 disagree on the
/// constant term of the convolution; both readings are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexReading {
    /// sum n^2 a^_n r^{n-1} = (1 - beta)/4, as in the proof.
    ProofConsistent,
    /// sum n^2 a^_n r^{n-1} = (5 - beta)/4, the reading that reproduces
    /// the printed Table 1.
    TablePrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernardiKind {
    FullyStarlike,
    FullyConvex,
    UniformlyStarlike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformKind {
    Starlike,
    Convex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CloseToConvexVariant {
    Lemniscate,
    Monomial(u32),
    General(PsiSpec),
    SigmoidSg,
}

const SUM_ORDER: usize = 2048;

/// Extremal coefficients a^_n of h_psi, cached for repeated weighted
/// sums during a root scan.
pub struct ExtremalCoeffs {
    coeffs: Vec<f64>,
}

impl ExtremalCoeffs {
    pub fn new(spec: &PsiSpec) -> Self {
        Self {
            coeffs: spec.hpsi_coeffs(SUM_ORDER),
        }
    }

    /// Whether any low-order coefficient is negative (the case the
    /// |a^_n| variant addresses).
    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().take(129).any(|&c| c < 0.0)
    }

    /// sum over n >= 2 of weight(n) * a^_n * r^{n-1}, optionally with
    /// |a^_n| and optionally truncated to `k_terms` terms (n = 2..k+1).
    pub fn weighted_sum(
        &self,
        r: f64,
        weight: impl Fn(usize) -> f64,
        k_terms: Option<usize>,
        use_abs: bool,
    ) -> f64 {
        let last = match k_terms {
            Some(k) => (k + 1).min(self.coeffs.len() - 1),
            None => self.coeffs.len() - 1,
        };
        let mut acc = 0.0;
        let mut pw = r; // r^{n-1}
        for n in 2..=last {
            let c = if use_abs {
                self.coeffs[n].abs()
            } else {
                self.coeffs[n]
            };
            acc += weight(n) * c * pw;
            pw *= r;
            if pw < 1e-300 {
                break;
            }
        }
        acc
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::Parameter(format!(
            "beta must lie in [0, 1), got {beta}"
        )));
    }
    Ok(())
}

/// Root of `objective` capped at 1/3. `objective(0)` must be the
/// negated right-hand side; a nonnegative value there is the
/// degenerate-parameter limit and yields radius 0.
fn capped_equation_root(
    objective: impl Fn(f64) -> f64,
    equation_id: &str,
    mut notes: String,
) -> Result<RadiusResult> {
    let at_zero = objective(0.0);
    if at_zero >= 0.0 {
        return Ok(RadiusResult {
            value: 0.0,
            branch: Branch::BetaDegenerateZero,
            equation_id: equation_id.into(),
            residual: at_zero.abs(),
            sharp: false,
            notes,
        });
    }
    let q = RootQuery::new(&objective).with_search_max(0.9);
    match solve::smallest_positive_root(&q) {
        Ok((root, residual)) if root <= ONE_THIRD => Ok(RadiusResult {
            value: root,
            branch: Branch::EquationRoot,
            equation_id: equation_id.into(),
            residual,
            sharp: true,
            notes,
        }),
        Ok((root, residual)) => {
            if !notes.is_empty() {
                notes.push_str("; ");
            }
            notes.push_str(&format!("unconstrained root {root:.9} exceeds 1/3"));
            Ok(RadiusResult {
                value: ONE_THIRD,
                branch: Branch::OneThirdCap,
                equation_id: equation_id.into(),
                residual,
                sharp: false,
                notes,
            })
        }
        Err(Error::NoBracket { .. }) => {
            if !notes.is_empty() {
                notes.push_str("; ");
            }
            notes.push_str("no unconstrained root below search_max; cap active");
            Ok(RadiusResult {
                value: ONE_THIRD,
                branch: Branch::OneThirdCap,
                equation_id: equation_id.into(),
                residual: 0.0,
                sharp: false,
                notes,
            })
        }
        Err(e) => Err(e),
    }
}

/// Radius of sense-preservation and univalence:
/// min{r_psi, r_c} with r_psi the root of (1 - r^2) m(r) - 2r = 0,
/// m(r) = min |psi| on |z| = r.
pub fn univalence_radius(spec: &PsiSpec) -> Result<RadiusResult> {
    let objective = |r: f64| {
        if r == 0.0 {
            return 0.0; // m(0) = 1
        }
        (1.0 - r * r) * spec.circle_min_modulus(r).0 - 2.0 * r
    };
    let q = RootQuery::new(objective).with_search_max(0.95);
    let (r_psi, residual) = solve::smallest_positive_root(&q)?;
    let rc = spec.convexity_radius()?;

    let (m_at_root, _) = spec.circle_min_modulus(r_psi);
    let psi_minus_r = spec.eval_unchecked(Complex64::new(-r_psi, 0.0)).norm();
    let min_at_neg_axis = (m_at_root - psi_minus_r).abs() < 1e-8;

    let mut notes = format!(
        "r_psi={r_psi:.9}, r_c={:.9}{}",
        rc.value,
        if rc.sharp { "" } else { " (estimate)" }
    );
    if let Some(m) = spec.disk_m_param() {
        // both printed readings of the S*[M] corollary equation
        let printed = RootQuery::new(|r: f64| (1.0 + r) * (1.0 - r).powi(2) - 2.0 * r * (1.0 + m * r));
        let alt = RootQuery::new(|r: f64| (1.0 + r) * (1.0 - r).powi(2) - 2.0 * r * (1.0 - m * r));
        if let (Ok((rp, _)), Ok((ra, _))) = (
            solve::smallest_positive_root(&printed),
            solve::smallest_positive_root(&alt),
        ) {
            notes.push_str(&format!(
                "; printed (1+r)(1-r)^2-2r(1+mr)=0 root {rp:.9}, sign-flipped variant root {ra:.9}"
            ));
        }
    }

    if r_psi <= rc.value {
        Ok(RadiusResult {
            value: r_psi,
            branch: Branch::EquationRoot,
            equation_id: "(1-r^2)m(r)-2r=0".into(),
            residual,
            sharp: min_at_neg_axis && rc.value >= r_psi,
            notes,
        })
    } else {
        notes.push_str("; convexity radius is the binding constraint");
        Ok(RadiusResult {
            value: rc.value,
            branch: Branch::ConvexityRadius,
            equation_id: rc.equation_id,
            residual: rc.residual,
            sharp: false,
            notes,
        })
    }
}

/// Fully starlike of order beta: min{1/3, root of 4 h'_psi(r) + beta = 5}.
pub fn fully_starlike_radius(spec: &PsiSpec, beta: f64) -> Result<RadiusResult> {
    check_beta(beta)?;
    let sums = ExtremalCoeffs::new(spec);
    let rhs = (1.0 - beta) / 4.0;
    let objective = |r: f64| sums.weighted_sum(r, |n| n as f64, None, false) - rhs;
    let notes = remark_note(&sums, rhs, |n| n as f64);
    capped_equation_root(objective, "4h'_psi(r)+beta=5", notes)
}

/// When the extremal coefficients are not all nonnegative, also report
/// the |a^_n| variant root as well.
fn remark_note(sums: &ExtremalCoeffs, rhs: f64, weight: impl Fn(usize) -> f64 + Copy) -> String {
    if !sums.has_negative() {
        return String::new();
    }
    let q = RootQuery::new(|r: f64| sums.weighted_sum(r, weight, None, true) - rhs)
        .with_search_max(0.9);
    match solve::smallest_positive_root(&q) {
        Ok((root, _)) => format!(
            "psi series has negative coefficients; remark-based |a_n| root = {root:.9}"
        ),
        Err(_) => "psi series has negative coefficients; remark-based |a_n| variant has no root below search_max".into(),
    }
}

/// Improved fully-starlike radius using m(r) = min Re psi on |z| = r:
/// min{r_1, r_2}, or r_1 alone for sense-preserving maps.
pub fn fully_starlike_radius_improved(
    spec: &PsiSpec,
    beta: f64,
    sense_preserving: bool,
) -> Result<RadiusResult> {
    check_beta(beta)?;
    let min_real = |r: f64| spec.circle_min_real(r).0;
    let q1 = RootQuery::new(|r: f64| min_real(r) - r / (1.0 - r) - beta).with_search_max(0.95);
    let (r1, res1) = solve::smallest_positive_root(&q1)?;
    if sense_preserving {
        return Ok(RadiusResult {
            value: r1,
            branch: Branch::EquationRoot,
            equation_id: "m(r)-r/(1-r)=beta".into(),
            residual: res1,
            sharp: false,
            notes: "sense-preserving corollary: r_2 constraint dropped".into(),
        });
    }
    let q2 = RootQuery::new(|r: f64| {
        if r == 0.0 {
            return 0.0;
        }
        (1.0 - r * r) * min_real(r) - 2.0 * r
    })
    .with_search_max(0.95);
    let (r2, res2) = solve::smallest_positive_root(&q2)?;
    let (value, residual, equation_id) = if r1 <= r2 {
        (r1, res1, "m(r)-r/(1-r)=beta")
    } else {
        (r2, res2, "(1-r^2)m(r)-2r=0")
    };
    Ok(RadiusResult {
        value,
        branch: Branch::EquationRoot,
        equation_id: equation_id.into(),
        residual,
        sharp: false,
        notes: format!("r_1={r1:.9}, r_2={r2:.9}"),
    })
}

fn convex_rhs(beta: f64, reading: ConvexReading) -> f64 {
    match reading {
        ConvexReading::ProofConsistent => (1.0 - beta) / 4.0,
        ConvexReading::TablePrinted => (5.0 - beta) / 4.0,
    }
}

/// Fully convex of order beta: min{1/3, root of the convolution
/// equation}, under the requested reading of the theorem.
pub fn fully_convex_radius(
    spec: &PsiSpec,
    beta: f64,
    reading: ConvexReading,
) -> Result<RadiusResult> {
    check_beta(beta)?;
    let sums = ExtremalCoeffs::new(spec);
    let weight = |n: usize| (n * n) as f64;
    let rhs = convex_rhs(beta, reading);
    let objective = |r: f64| sums.weighted_sum(r, weight, None, false) - rhs;
    let (equation_id, other) = match reading {
        ConvexReading::TablePrinted => (
            "G'(r)*h'_psi(r)=(5-beta)/4",
            ConvexReading::ProofConsistent,
        ),
        ConvexReading::ProofConsistent => (
            "(G'(r)-1)*(h'_psi(r)-1)=(1-beta)/4",
            ConvexReading::TablePrinted,
        ),
    };
    let mut notes = format!("reading={reading:?}");
    let other_rhs = convex_rhs(beta, other);
    let other_q = RootQuery::new(|r: f64| sums.weighted_sum(r, weight, None, false) - other_rhs)
        .with_search_max(0.9);
    if let Ok((other_root, _)) = solve::smallest_positive_root(&other_q) {
        notes.push_str(&format!("; {other:?} reading root = {other_root:.9}"));
    }
    let remark = remark_note(&sums, rhs, weight);
    if !remark.is_empty() {
        notes.push_str("; ");
        notes.push_str(&remark);
    }
    capped_equation_root(objective, equation_id, notes)
}

/// Radii for the Bernardi-transformed map F = Lambda_{0,1}[f].
pub fn bernardi_radius(spec: &PsiSpec, beta: f64, kind: BernardiKind) -> Result<RadiusResult> {
    let sums = ExtremalCoeffs::new(spec);
    let (weight, rhs, equation_id): (fn(usize) -> f64, f64, &str) = match kind {
        BernardiKind::FullyStarlike => {
            check_beta(beta)?;
            (|_n| 1.0, (1.0 - beta) / 2.0, "2/(1-beta)((h_psi(r)-r)/r)=1")
        }
        BernardiKind::FullyConvex => {
            check_beta(beta)?;
            (|n| n as f64, (1.0 - beta) / 2.0, "2h'_psi(r)+beta=3")
        }
        BernardiKind::UniformlyStarlike => (|_n| 1.0, 0.25, "4h_psi(r)-5r=0"),
    };
    let objective = |r: f64| sums.weighted_sum(r, weight, None, false) - rhs;
    let notes = remark_note(&sums, rhs, weight);
    capped_equation_root(objective, equation_id, notes)
}

/// Uniformly starlike / uniformly convex radii.
pub fn uniform_radius(spec: &PsiSpec, kind: UniformKind) -> Result<RadiusResult> {
    let sums = ExtremalCoeffs::new(spec);
    let (weight, rhs, equation_id): (fn(usize) -> f64, f64, &str) = match kind {
        UniformKind::Starlike => (|n| n as f64, 0.25, "h'_psi(r)=5/4"),
        UniformKind::Convex => (
            |n| (n * (2 * n - 1)) as f64,
            0.5,
            "2(G'(r)-1)*(h'_psi(r)-1)-(h'_psi(r)-1)=1/2",
        ),
    };
    let objective = |r: f64| sums.weighted_sum(r, weight, None, false) - rhs;
    let notes = remark_note(&sums, rhs, weight);
    capped_equation_root(objective, equation_id, notes)
}

/// Hereditarily strongly starlike radius of order alpha in (0, 1).
pub fn strongly_starlike_radius(spec: &PsiSpec, alpha: f64) -> Result<RadiusResult> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Parameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let sums = ExtremalCoeffs::new(spec);
    let pa = std::f64::consts::PI * alpha;
    let weight = move |n: usize| {
        let nn = n as f64;
        let a_n = nn - 1.0 + (Complex64::new(nn, 0.0) - Complex64::from_polar(1.0, -pa)).norm();
        let b_n = nn + 1.0 + (Complex64::new(nn, 0.0) + Complex64::from_polar(1.0, pa)).norm();
        a_n + b_n
    };
    let rhs = 2.0 * (pa / 2.0).sin();
    let objective = |r: f64| sums.weighted_sum(r, weight, None, false) - rhs;
    let notes = remark_note(&sums, rhs, weight);
    capped_equation_root(objective, "((h_psi(r)-r)/r)*M_alpha(r)=2sin(pi alpha/2)", notes)
}

/// Close-to-convexity radii for derivative-coupled dilatations.
pub fn close_to_convex_radius(variant: &CloseToConvexVariant) -> Result<RadiusResult> {
    match variant {
        CloseToConvexVariant::Lemniscate => {
            let q = RootQuery::new(|r: f64| {
                1.0 - 6.0 * r + 12.0 * r * r - 11.0 * r.powi(3) + 4.0 * r.powi(4)
            });
            let (root, residual) = solve::smallest_positive_root(&q)?;
            Ok(RadiusResult {
                value: root,
                branch: Branch::EquationRoot,
                equation_id: "1-6r+12r^2-11r^3+4r^4=0".into(),
                residual,
                sharp: true,
                notes: String::new(),
            })
        }
        CloseToConvexVariant::Monomial(n) => {
            if *n < 1 {
                return Err(Error::Parameter("monomial degree must be >= 1".into()));
            }
            let nf = *n as f64;
            let q = RootQuery::new(|r: f64| {
                (1.0 - 4.0 * r + 4.0 * r * r)
                    - r.powi(*n as i32) * (2.0 - 8.0 * r + 8.0 * r * r)
                    + r.powi(2 * *n as i32)
                        * (1.0 - nf * nf + (nf * nf - 4.0) * r + 4.0 * r * r)
            });
            let (root, residual) = solve::smallest_positive_root(&q)?;
            Ok(RadiusResult {
                value: root,
                branch: Branch::EquationRoot,
                equation_id: format!(
                    "(1-4r+4r^2)-r^{n}(2-8r+8r^2)+r^{}(1-n^2+(n^2-4)r+4r^2)=0",
                    2 * n
                ),
                residual,
                sharp: true,
                notes: format!("dilatation e^(i theta) z^{n}"),
            })
        }
        CloseToConvexVariant::SigmoidSg => {
            let q = RootQuery::new(|r: f64| {
                (2.0 - r * r.exp()) / (1.0 + r.exp()) - r / (1.0 - r)
            });
            let (root, residual) = solve::smallest_positive_root(&q)?;
            Ok(RadiusResult {
                value: root,
                branch: Branch::EquationRoot,
                equation_id: "(2-re^r)/(1+e^r)-r/(1-r)=0".into(),
                residual,
                sharp: true,
                notes: String::new(),
            })
        }
        CloseToConvexVariant::General(spec) => {
            let bound_kind = spec.h_psi_bound(0.25).kind;
            let q = RootQuery::new(|r: f64| (1.0 - r) * spec.h_psi_bound(r).value - r)
                .with_search_max(1.0 - 1e-6);
            let (r0, residual) = solve::smallest_positive_root(&q)?;
            let rc = spec.convexity_radius()?;
            let sharp_bound = bound_kind == BoundKind::ClosedFormSharp;
            let notes = format!(
                "r_0={r0:.9}, r_c={:.9}{}",
                rc.value,
                if sharp_bound { "" } else { "; H_psi bound is a non-sharp estimate" }
            );
            if r0 <= rc.value {
                Ok(RadiusResult {
                    value: r0,
                    branch: Branch::EquationRoot,
                    equation_id: "(1-r)H_psi(r)-r=0".into(),
                    residual,
                    sharp: sharp_bound,
                    notes,
                })
            } else {
                Ok(RadiusResult {
                    value: rc.value,
                    branch: Branch::ConvexityRadius,
                    equation_id: rc.equation_id,
                    residual: rc.residual,
                    sharp: false,
                    notes,
                })
            }
        }
    }
}
