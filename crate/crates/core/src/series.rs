//! Truncated power series over complex coefficients.
//!
//! A `PowerSeries` holds the coefficients `c_0..c_N` of a polynomial
//! truncation of an analytic function at the origin. All binary
//! operations truncate to the smaller of the two orders.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// A series from explicit coefficients `c_0..c_N`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Builds `c_0..c_N` from a coefficient formula.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Complex64) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::ZERO; order + 1],
        }
    }

    /// The monomial z^k truncated at `order`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = Complex64::ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient at degree `n`; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, Complex64::ZERO);
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] + other.coeffs[k])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] - other.coeffs[k])
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * lambda).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for (i, &a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiplication by z; the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Series exponential: the unique E with E(0)=1 and E' = a'E.
    ///
    /// Requires a zero constant term. Uses the coefficient recurrence
    /// n E_n = sum_{k=1..n} k a_k E_{n-k}.
    pub fn exp(&self) -> Result<Self> {
        let c0 = self.coeffs[0].norm();
        if c0 > 1e-12 {
            return Err(Error::NonzeroConstantTerm(c0));
        }
        let n = self.order();
        let mut e = vec![Complex64::ZERO; n + 1];
        e[0] = Complex64::ONE;
        for m in 1..=n {
            let mut acc = Complex64::ZERO;
            for k in 1..=m {
                acc += (k as f64) * self.coeffs[k] * e[m - k];
            }
            e[m] = acc / (m as f64);
        }
        Ok(Self { coeffs: e })
    }

    /// Reciprocal series; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() < 1e-300 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut r = vec![Complex64::ZERO; n + 1];
        r[0] = Complex64::ONE / c0;
        for m in 1..=n {
            let mut acc = Complex64::ZERO;
            for k in 1..=m {
                acc += self.coeffs[k] * r[m - k];
            }
            r[m] = -acc / c0;
        }
        Ok(Self { coeffs: r })
    }

    /// Termwise derivative: c_n z^n -> n c_n z^{n-1}.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |k| {
            ((k + 1) as f64) * self.coeffs[k + 1]
        })
    }

    /// Antiderivative vanishing at 0: c_n z^n -> c_n z^{n+1}/(n+1).
    pub fn integrate0(&self) -> Self {
        let n = self.order();
        Self::from_fn(n + 1, |k| {
            if k == 0 {
                Complex64::ZERO
            } else {
                self.coeffs[k - 1] / (k as f64)
            }
        })
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] * other.coeffs[k])
    }

    /// Bernardi coefficient transform: c_n -> c_n (nu+1)/(n+nu).
    ///
    /// Requires a zero constant term so the n=0 term never divides by
    /// zero when nu = 0.
    pub fn bernardi(&self, nu: f64) -> Result<Self> {
        if nu < 0.0 {
            return Err(Error::NegativeBernardiOrder(nu));
        }
        let c0 = self.coeffs[0].norm();
        if c0 > 1e-12 {
            return Err(Error::NonzeroConstantTerm(c0));
        }
        Ok(Self::from_fn(self.order(), |n| {
            if n == 0 {
                Complex64::ZERO
            } else {
                self.coeffs[n] * (nu + 1.0) / (n as f64 + nu)
            }
        }))
    }

    /// For psi = 1 + sum p_n z^n, returns sum p_n z^n / n, the kernel
    /// integral of (psi(t) - 1)/t from 0 to z.
    pub fn integrate_log_kernel(&self) -> Result<Self> {
        let off = (self.coeffs[0] - Complex64::ONE).norm();
        if off > 1e-12 {
            return Err(Error::UnnormalizedPsi(off));
        }
        Ok(Self::from_fn(self.order(), |n| {
            if n == 0 {
                Complex64::ZERO
            } else {
                self.coeffs[n] / (n as f64)
            }
        }))
    }

    /// Largest coefficientwise distance to another series (smaller order).
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| (self.coeffs[k] - other.coeffs[k]).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn monomial_product() {
        let z = PowerSeries::monomial(1, 8);
        let z2 = z.mul(&z);
        assert_eq!(z2.coeff(2), Complex64::ONE);
        assert_eq!(z2.coeff(1), Complex64::ZERO);
    }

    #[test]
    fn add_zero_is_identity() {
        let a = PowerSeries::from_real(&[1.0, -2.0, 3.5]).unwrap();
        let s = a.add(&PowerSeries::zero(2));
        assert_eq!(s, a);
    }

    #[test]
    fn geometric_times_one_minus_z() {
        // (1 + z + z^2 + ...) * (1 - z) = 1 up to the dropped top degree
        let n = 16;
        let geo = PowerSeries::from_fn(n, |_| Complex64::ONE);
        let lin = {
            let mut s = PowerSeries::zero(n);
            s.coeffs[0] = Complex64::ONE;
            s.coeffs[1] = -Complex64::ONE;
            s
        };
        let p = geo.mul(&lin);
        assert_eq!(p.coeff(0), Complex64::ONE);
        for k in 1..n {
            assert!(p.coeff(k).norm() < 1e-15);
        }
        // the truncation degree cancels too for this pair
        assert!(p.coeff(n).norm() < 1e-15);
    }

    #[test]
    fn exp_of_neg_two_log_one_minus_z() {
        // exp(2z + z^2 + 2z^3/3 + ...) = 1/(1-z)^2, coefficient n+1
        let n = 24;
        let a = PowerSeries::from_fn(n, |k| {
            if k == 0 {
                Complex64::ZERO
            } else {
                c(2.0 / k as f64)
            }
        });
        let e = a.exp().unwrap();
        for k in 0..=n {
            assert!((e.coeff(k) - c((k + 1) as f64)).norm() < 1e-12 * (k + 1) as f64);
        }
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = PowerSeries::zero(6).exp().unwrap();
        assert_eq!(e.coeff(0), Complex64::ONE);
        for k in 1..=6 {
            assert_eq!(e.coeff(k), Complex64::ZERO);
        }
    }

    #[test]
    fn exp_rejects_nonzero_constant_term() {
        let a = PowerSeries::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(a.exp(), Err(Error::NonzeroConstantTerm(_))));
    }

    #[test]
    fn bell_number_series() {
        // exp(e^z - 1) = sum B_n z^n / n!
        let n = 12;
        let a = PowerSeries::from_fn(n, |k| {
            if k == 0 {
                return Complex64::ZERO;
            }
            let mut fact = 1.0;
            for j in 1..=k {
                fact *= j as f64;
            }
            c(1.0 / fact)
        });
        let e = a.exp().unwrap();
        // Bell-number recurrence oracle: B_{n+1} = sum C(n,k) B_k
        let mut bell = vec![1.0f64; n + 1];
        for m in 1..=n {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for (k, &bk) in bell.iter().enumerate().take(m) {
                acc += binom * bk;
                binom = binom * (m - 1 - k) as f64 / (k + 1) as f64;
            }
            bell[m] = acc;
        }
        let mut fact = 1.0;
        for (k, &bk) in bell.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            assert!(
                (e.coeff(k).re - bk / fact).abs() < 1e-12,
                "degree {k}"
            );
        }
        // spot values from the expansion: 1, 1, 1, 5/6, 5/8, 13/30
        assert!((e.coeff(3).re - 5.0 / 6.0).abs() < 1e-14);
        assert!((e.coeff(4).re - 5.0 / 8.0).abs() < 1e-14);
        assert!((e.coeff(5).re - 13.0 / 30.0).abs() < 1e-14);
    }

    #[test]
    fn derive_koebe_coefficients() {
        // d/dz z/(1-z)^2 has coefficient n^2 at degree n-1
        let k = PowerSeries::from_fn(10, |n| c(n as f64));
        let d = k.derivative();
        for n in 1..=10usize {
            assert_eq!(d.coeff(n - 1), c((n * n) as f64));
        }
    }

    #[test]
    fn integrate_then_derive_roundtrip() {
        let a = PowerSeries::from_real(&[0.0, 1.0, -0.5, 0.25, 3.0]).unwrap();
        let back = a.derivative().integrate0();
        assert!(a.max_coeff_distance(&back) < 1e-15);
    }

    #[test]
    fn eval_geometric_at_half() {
        let geo = PowerSeries::from_fn(64, |_| Complex64::ONE);
        let v = geo.eval(c(0.5));
        assert!((v.re - 2.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn hadamard_all_ones_identity() {
        let ones = PowerSeries::from_fn(10, |_| Complex64::ONE);
        let b = PowerSeries::from_fn(10, |k| c(1.0 / (k as f64 + 1.0)));
        assert_eq!(ones.hadamard(&b), b);
    }

    #[test]
    fn bernardi_alexander_of_koebe() {
        // nu = 0 on z/(1-z)^2 (coefficients n) gives z/(1-z)
        let k = PowerSeries::from_fn(12, |n| c(n as f64));
        let t = k.bernardi(0.0).unwrap();
        for n in 1..=12usize {
            assert_eq!(t.coeff(n), Complex64::ONE);
        }
        // nu = 1 on z + z^2: (nu+1)/(n+nu) = 2/(n+1)
        let s = PowerSeries::from_real(&[0.0, 1.0, 1.0]).unwrap();
        let t = s.bernardi(1.0).unwrap();
        assert_eq!(t.coeff(1), Complex64::ONE);
        assert!((t.coeff(2) - c(2.0 / 3.0)).norm() < 1e-15);
        assert!(matches!(
            s.bernardi(-0.5),
            Err(Error::NegativeBernardiOrder(_))
        ));
    }

    #[test]
    fn log_kernel_of_half_plane_generator() {
        // psi = (1+z)/(1-z): p_n = 2, kernel = 2z + z^2 + 2z^3/3 + ...
        let psi = PowerSeries::from_fn(8, |k| if k == 0 { Complex64::ONE } else { c(2.0) });
        let ker = psi.integrate_log_kernel().unwrap();
        for k in 1..=8usize {
            assert!((ker.coeff(k) - c(2.0 / k as f64)).norm() < 1e-15);
        }
        let flat = PowerSeries::from_fn(8, |k| if k == 0 { Complex64::ONE } else { Complex64::ZERO });
        let z = flat.integrate_log_kernel().unwrap();
        assert!(z.max_coeff_distance(&PowerSeries::zero(8)) == 0.0);
        let bad = PowerSeries::from_real(&[2.0, 1.0]).unwrap();
        assert!(matches!(
            bad.integrate_log_kernel(),
            Err(Error::UnnormalizedPsi(_))
        ));
    }
}
