//! Exact per-mode linear propagators.
//!
//! The bidirectional models share the linear system `u_t + ℒu = (0, F)` for
//! `u = (f, f_t)`, which splits into independent real 2×2 systems
//!
//! ```text
//! ℒ(n) = [ 0                       -1     ]
//!        [ |n| + β|n|³ + δ²n⁴      2δn²   ]
//! ```
//!
//! with eigenvalues `λ±(n) = δn² ± i sqrt(|n|(1 + βn²))`. The unidirectional
//! model is scalar per mode: `2ε u_t + λ(k) u = F`.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::params::ModelParams;
use crate::phi::{phi, phi_divided_difference};
use crate::spectral::{n_symbol, p_symbol};

type C = Complex64;
pub type Mat2 = [[f64; 2]; 2];
pub type CMat2 = [[C; 2]; 2];

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Linear data of one Fourier mode of the bidirectional system.
#[derive(Debug, Clone, PartialEq)]
pub struct BiModeSymbol {
    pub n: i64,
    pub lambda_minus: C,
    pub lambda_plus: C,
    /// Eigenvector matrix, columns `(1, -λ-)` and `(1, -λ+)`.
    pub s: CMat2,
    pub s_inv: CMat2,
    stiffness: f64,
    damping: f64,
}

impl BiModeSymbol {
    pub fn new(n: i64, p: &ModelParams) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::Domain(
                "the bidirectional symbol is undefined at n = 0 (zero-mean dynamics)".into(),
            ));
        }
        let a = n.unsigned_abs() as f64;
        let stiffness = a + p.beta * a.powi(3) + p.delta * p.delta * a.powi(4);
        let damping = 2.0 * p.delta * a * a;
        let re = p.delta * (a * a);
        let im = (a * (1.0 + p.beta * a * a)).sqrt();
        let lambda_minus = C::new(re, -im);
        let lambda_plus = C::new(re, im);
        let det = lambda_minus - lambda_plus;
        let s = [[ONE, ONE], [-lambda_minus, -lambda_plus]];
        let s_inv = [
            [-lambda_plus / det, -ONE / det],
            [lambda_minus / det, ONE / det],
        ];
        Ok(Self {
            n,
            lambda_minus,
            lambda_plus,
            s,
            s_inv,
            stiffness,
            damping,
        })
    }

    /// The mode's companion matrix ℒ(n).
    pub fn companion(&self) -> Mat2 {
        [[0.0, -1.0], [self.stiffness, self.damping]]
    }

    /// `(e^{-tλ+} - e^{-tλ-}) / (λ- - λ+)`, free of cancellation for small `t`.
    fn exp_quotient(&self, t: f64) -> C {
        let zp = -self.lambda_plus * t;
        let zm = -self.lambda_minus * t;
        phi_divided_difference(0, zp, zm) * t
    }

    /// `e^{-tℒ(n)} = S e^{-tD} S⁻¹` written out entrywise.
    ///
    /// With `q = (e^{-tλ+} - e^{-tλ-}) / (λ- - λ+)`:
    /// `f ← (e^{-tλ-} + λ- q) f₀ + q f₁` and
    /// `f_t ← -λ-λ+ q f₀ + (e^{-tλ+} - λ- q) f₁`.
    /// The matrix is real; rounding-level imaginary parts are dropped.
    pub fn propagator(&self, t: f64) -> Mat2 {
        let q = self.exp_quotient(t);
        let em = (-self.lambda_minus * t).exp();
        let ep = (-self.lambda_plus * t).exp();
        let lm = self.lambda_minus;
        [
            [(em + lm * q).re, q.re],
            [(-(lm * self.lambda_plus) * q).re, (ep - lm * q).re],
        ]
    }

    /// Advances the mode pair `(f̂(n), f̂_t(n))` by `t` under the linear flow.
    pub fn propagate(&self, pair: [C; 2], t: f64) -> [C; 2] {
        apply(&self.propagator(t), pair)
    }

    /// Kernel column applied to a scalar forcing `F̂(n, t')` inside the Duhamel
    /// integral, at elapsed time `t - t'`: `e^{-(t-t')ℒ} (0, 1)`.
    pub fn duhamel_weight(&self, elapsed: f64) -> [C; 2] {
        let q = self.exp_quotient(elapsed);
        let ep = (-self.lambda_plus * elapsed).exp();
        [q, ep - self.lambda_minus * q]
    }

    /// `h φ_k(-hℒ) (0, 1)`: the forcing column of an exponential integrator
    /// stage. `k = 0` gives `h` times the propagator's second column.
    pub fn phi_column(&self, k: usize, h: f64) -> [f64; 2] {
        let zp = -self.lambda_plus * h;
        let zm = -self.lambda_minus * h;
        let dd = phi_divided_difference(k, zp, zm);
        let f = dd * h;
        let ft = zp * dd + phi(k, zm);
        [h * f.re, h * ft.re]
    }

    /// `|λ± / (λ- - λ+)|` (equal for both signs).
    pub fn eigen_ratio(&self) -> f64 {
        self.lambda_plus.norm() / (self.lambda_minus - self.lambda_plus).norm()
    }

    /// 2-norm condition number of `S`.
    pub fn condition_number(&self) -> f64 {
        let frob_sq: f64 = self.s.iter().flatten().map(|c| c.norm_sqr()).sum();
        let det = (self.s[0][0] * self.s[1][1] - self.s[0][1] * self.s[1][0]).norm();
        let disc = (frob_sq * frob_sq - 4.0 * det * det).max(0.0).sqrt();
        let smax = ((frob_sq + disc) / 2.0).sqrt();
        let smin = ((frob_sq - disc) / 2.0).max(0.0).sqrt();
        // smin from the subtraction loses accuracy; det = smax * smin is exact.
        let smin = if smin > 0.0 { det / smax } else { smin };
        smax / smin
    }

    /// `S diag(λ-, λ+) S⁻¹`, which should reproduce the companion matrix.
    pub fn reconstruct(&self) -> CMat2 {
        let d = [[self.lambda_minus, ZERO], [ZERO, self.lambda_plus]];
        cmat_mul(&cmat_mul(&self.s, &d), &self.s_inv)
    }
}

pub fn apply(m: &Mat2, v: [C; 2]) -> [C; 2] {
    [
        v[0] * m[0][0] + v[1] * m[0][1],
        v[0] * m[1][0] + v[1] * m[1][1],
    ]
}

fn cmat_mul(a: &CMat2, b: &CMat2) -> CMat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Outcome of sweeping `|λ±/(λ- - λ+)| <= ½(1 + δ sqrt(|n|/(1+β)))` over `1..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioBoundReport {
    pub n_max: i64,
    /// `min_n (rhs - lhs)`.
    pub worst_slack: f64,
    pub worst_n: i64,
    pub first_violation: Option<i64>,
    pub violations: usize,
}

impl RatioBoundReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Right-hand side of the eigenvalue ratio bound.
pub fn ratio_bound_rhs(n: i64, p: &ModelParams) -> f64 {
    0.5 * (1.0 + p.delta * (n.unsigned_abs() as f64 / (1.0 + p.beta)).sqrt())
}

/// Evaluates both sides of the ratio bound for every `1 <= n <= n_max`.
pub fn ratio_bound_sweep(n_max: i64, p: &ModelParams) -> Result<RatioBoundReport> {
    if n_max < 1 {
        return Err(CoreError::Config(format!("n_max must be >= 1, got {n_max}")));
    }
    let mut report = RatioBoundReport {
        n_max,
        worst_slack: f64::INFINITY,
        worst_n: 1,
        first_violation: None,
        violations: 0,
    };
    for n in 1..=n_max {
        let lhs = BiModeSymbol::new(n, p)?.eigen_ratio();
        let slack = ratio_bound_rhs(n, p) - lhs;
        if slack < report.worst_slack {
            report.worst_slack = slack;
            report.worst_n = n;
        }
        if slack < 0.0 {
            report.violations += 1;
            report.first_violation.get_or_insert(n);
        }
    }
    Ok(report)
}

/// Like [`ratio_bound_sweep`] but fails on the first violated wavenumber.
pub fn ratio_bound_check(n_max: i64, p: &ModelParams) -> Result<RatioBoundReport> {
    let report = ratio_bound_sweep(n_max, p)?;
    match report.first_violation {
        None => Ok(report),
        Some(n) => {
            let lhs = BiModeSymbol::new(n, p)?.eigen_ratio();
            Err(CoreError::Invariant(format!(
                "ratio bound fails at n = {n}: |λ±/(λ- - λ+)| = {lhs:.6} > {:.6} \
                 ({} of {n_max} wavenumbers violate it, worst slack {:.6e} at n = {})",
                ratio_bound_rhs(n, p),
                report.violations,
                report.worst_slack,
                report.worst_n
            )))
        }
    }
}

/// Linear symbol `λ(k)` of the unidirectional model, `2ε u_t + λ(k) û = F̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniModeSymbol {
    pub k: i64,
    pub lambda: C,
    epsilon: f64,
}

/// `λ(k)` for any `k`, including `λ(0) = 0`.
pub fn uni_lambda(k: i64, p: &ModelParams) -> C {
    if k == 0 {
        return ZERO;
    }
    // λ(-k) = conj(λ(k)); evaluating at |k| keeps real fields exactly real.
    let a = k.unsigned_abs() as i64;
    let kf = a as f64;
    let (delta, beta) = (p.delta, p.beta);
    let inner = C::new(-2.0 * delta * kf * kf, kf - 1.0);
    let pk = p_symbol(a, delta);
    let extra = C::new(
        beta * delta * kf.powi(3) + delta.powi(3) * kf.powi(4),
        beta * kf * kf + delta * delta * kf.powi(3),
    ) * pk;
    let lam = -n_symbol(a, delta) * inner + extra;
    if k < 0 {
        lam.conj()
    } else {
        lam
    }
}

impl UniModeSymbol {
    pub fn new(k: i64, p: &ModelParams) -> Result<Self> {
        if k == 0 {
            return Err(CoreError::Domain(
                "the unidirectional symbol is not used at k = 0 (zero-mean dynamics)".into(),
            ));
        }
        let lambda = uni_lambda(k, p);
        if lambda.re < p.delta {
            return Err(CoreError::Invariant(format!(
                "Re λ({k}) = {} < δ = {}",
                lambda.re, p.delta
            )));
        }
        Ok(Self {
            k,
            lambda,
            epsilon: p.epsilon,
        })
    }

    /// Effective linear rate `λ(k) / (2ε)` of `u_t = -rate·u + ...`.
    pub fn rate(&self) -> C {
        self.lambda / (2.0 * self.epsilon)
    }

    /// Homogeneous evolution `û ↦ e^{-λ(k)t/(2ε)} û`.
    pub fn propagate(&self, u: C, t: f64) -> C {
        u * (-self.rate() * t).exp()
    }

    /// Integrating-factor weight of a forcing applied `elapsed` before the
    /// observation time, `e^{-λ(k)(t-s)/(2ε)}`.
    pub fn duhamel_weight(&self, elapsed: f64) -> C {
        (-self.rate() * elapsed).exp()
    }

    /// `h φ_k(-h λ(k)/(2ε))`.
    pub fn phi_weight(&self, k: usize, h: f64) -> C {
        phi(k, -self.rate() * h) * h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::expm2;

    fn params(delta: f64, beta: f64) -> ModelParams {
        ModelParams::unchecked(delta, beta, 1.0)
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn bi_symbol_examples() {
        let s = BiModeSymbol::new(1, &params(0.1, 0.0)).unwrap();
        assert!(close(s.lambda_plus, C::new(0.1, 1.0), 1e-15));
        assert!(close(s.lambda_minus, C::new(0.1, -1.0), 1e-15));
        let s = BiModeSymbol::new(2, &params(0.0, 0.0)).unwrap();
        assert!(close(s.lambda_plus, C::new(0.0, 2f64.sqrt()), 1e-15));
        assert!(close(s.lambda_minus, C::new(0.0, -(2f64.sqrt())), 1e-15));
        for n in [-7, -1, 1, 3, 40] {
            let s = BiModeSymbol::new(n, &params(0.3, 0.5)).unwrap();
            assert_eq!(s.lambda_plus.re, 0.3 * (n * n) as f64);
            assert_eq!(s.lambda_minus.re, s.lambda_plus.re);
            assert_ne!(s.lambda_plus, s.lambda_minus);
            let a = n.abs() as f64;
            assert!((s.lambda_plus.im - (a * (1.0 + 0.5 * a * a)).sqrt()).abs() < 1e-12);
        }
        assert!(matches!(BiModeSymbol::new(0, &params(0.1, 0.0)), Err(CoreError::Domain(_))));
    }

    #[test]
    fn eigen_decomposition_reconstructs_companion() {
        for &(d, b) in &[(0.1, 0.0), (0.5, 1.0), (1.0, 0.3)] {
            for n in 1..=64 {
                let s = BiModeSymbol::new(n, &params(d, b)).unwrap();
                let l = s.companion();
                let r = s.reconstruct();
                let scale = l[1][0].abs().max(1.0);
                for i in 0..2 {
                    for j in 0..2 {
                        assert!((r[i][j] - C::new(l[i][j], 0.0)).norm() < 1e-12 * scale, "n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn propagate_identity_at_zero() {
        let s = BiModeSymbol::new(3, &params(0.5, 1.0)).unwrap();
        let pair = [C::new(0.3, -0.1), C::new(-1.0, 2.0)];
        let out = s.propagate(pair, 0.0);
        assert!(close(out[0], pair[0], 1e-15) && close(out[1], pair[1], 1e-15));
    }

    #[test]
    fn eigenvector_data_decays_by_its_eigenvalue() {
        let s = BiModeSymbol::new(2, &params(0.25, 0.0)).unwrap();
        let amp = C::new(0.7, 0.2);
        let pair = [amp, -s.lambda_minus * amp];
        for t in [0.1, 0.5, 2.0] {
            let out = s.propagate(pair, t);
            let factor = (-s.lambda_minus * t).exp();
            assert!(close(out[0], pair[0] * factor, 1e-14));
            assert!(close(out[1], pair[1] * factor, 1e-14));
            assert!((out[0].norm() / amp.norm() - (-0.25 * 4.0 * t).exp()).abs() < 1e-14);
            // Same map from the scaling-and-squaring oracle.
            let e = expm2(&scale(&s.companion(), -t));
            let via_oracle = apply(&e, pair);
            assert!(close(out[0], via_oracle[0], 1e-13));
        }
    }

    fn scale(m: &Mat2, s: f64) -> Mat2 {
        [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]
    }

    #[test]
    fn semigroup_property() {
        let pair = [C::new(0.4, -0.3), C::new(0.9, 0.05)];
        for n in [1, 4, 17] {
            let s = BiModeSymbol::new(n, &params(0.5, 1.0)).unwrap();
            for (t1, t2) in [(0.1, 0.3), (0.01, 1.0), (0.7, 0.7)] {
                let two = s.propagate(s.propagate(pair, t1), t2);
                let one = s.propagate(pair, t1 + t2);
                assert!(close(two[0], one[0], 1e-12) && close(two[1], one[1], 1e-12));
            }
        }
    }

    #[test]
    fn propagator_decay_bounded_by_conditioning() {
        let pair = [C::new(1.0, 0.0), C::new(0.0, 1.0)];
        let norm = |v: [C; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        for &(d, b) in &[(0.1, 0.0), (1.0, 1.0)] {
            for n in [1, 5, 30] {
                let s = BiModeSymbol::new(n, &params(d, b)).unwrap();
                let kappa = s.condition_number();
                assert!(kappa >= 1.0);
                for t in [0.05, 0.5, 3.0] {
                    let bound = kappa * (-d * (n * n) as f64 * t).exp() * norm(pair);
                    assert!(norm(s.propagate(pair, t)) <= bound * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn duhamel_weight_at_zero() {
        let s = BiModeSymbol::new(5, &params(0.5, 0.0)).unwrap();
        let w = s.duhamel_weight(0.0);
        assert!(close(w[0], C::new(0.0, 0.0), 1e-16));
        assert!(close(w[1], C::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn duhamel_weight_integrates_to_constant_forcing_response() {
        // Oracle: integrate u' = -ℒu + (0, 1) from rest with small RK4 steps.
        let s = BiModeSymbol::new(1, &params(0.5, 0.0)).unwrap();
        let l = s.companion();
        let rhs = |u: [f64; 2]| [-(l[0][0] * u[0] + l[0][1] * u[1]), -(l[1][0] * u[0] + l[1][1] * u[1]) + 1.0];
        let (t_end, steps) = (2.0, 20_000);
        let h = t_end / steps as f64;
        let mut u = [0.0, 0.0];
        for _ in 0..steps {
            let k1 = rhs(u);
            let k2 = rhs([u[0] + 0.5 * h * k1[0], u[1] + 0.5 * h * k1[1]]);
            let k3 = rhs([u[0] + 0.5 * h * k2[0], u[1] + 0.5 * h * k2[1]]);
            let k4 = rhs([u[0] + h * k3[0], u[1] + h * k3[1]]);
            for i in 0..2 {
                u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        // ∫₀ᵀ w(T - t') dt' by composite Simpson on the weight.
        let m = 4000;
        let dt = t_end / m as f64;
        let mut acc = [C::new(0.0, 0.0); 2];
        for j in 0..=m {
            let coef = if j == 0 || j == m { 1.0 } else if j % 2 == 1 { 4.0 } else { 2.0 };
            let w = s.duhamel_weight(j as f64 * dt);
            acc[0] += w[0] * coef;
            acc[1] += w[1] * coef;
        }
        for i in 0..2 {
            let integral = acc[i] * (dt / 3.0);
            assert!((integral - C::new(u[i], 0.0)).norm() < 1e-8, "component {i}: {integral} vs {}", u[i]);
        }
    }

    #[test]
    fn duhamel_weight_envelope() {
        // |w_f| <= e^{-δn²τ}/Im λ and |w_ft| <= 2|λ±/(λ- - λ+)| e^{-δn²τ}.
        for &(d, b) in &[(0.1, 0.0), (0.5, 1.0), (1.0, 0.0)] {
            let p = params(d, b);
            for n in (1..=1024).step_by(7) {
                let s = BiModeSymbol::new(n, &p).unwrap();
                let im = s.lambda_plus.im;
                for tau in [0.0, 1e-4, 1e-2, 0.3, 1.0] {
                    let env = (-d * (n * n) as f64 * tau).exp();
                    let w = s.duhamel_weight(tau);
                    assert!(w[0].norm() <= env / im * (1.0 + 1e-10) + 1e-300, "n={n} tau={tau}");
                    assert!(w[1].norm() <= 2.0 * s.eigen_ratio() * env * (1.0 + 1e-10) + 1e-300);
                }
            }
        }
    }

    #[test]
    fn ratio_bound_small_n_examples() {
        let s = BiModeSymbol::new(1, &params(0.1, 0.0)).unwrap();
        assert!((s.eigen_ratio() - 0.5 * 1.01f64.sqrt()).abs() < 1e-15);
        assert!((ratio_bound_rhs(1, &params(0.1, 0.0)) - 0.55).abs() < 1e-15);
        let r = ratio_bound_check(1, &params(0.1, 0.0)).unwrap();
        assert!(r.holds() && r.worst_slack > 0.0);

        // δ → 0: both sides tend to 1/2.
        let tiny = params(1e-12, 0.0);
        let s = BiModeSymbol::new(5, &tiny).unwrap();
        assert!((s.eigen_ratio() - 0.5).abs() < 1e-12);
        assert!((ratio_bound_rhs(5, &tiny) - 0.5).abs() < 1e-11);
    }

    #[test]
    fn ratio_bound_fails_at_large_wavenumbers() {
        // The exact ratio is ½ sqrt(1 + δ²|n|³/(1 + βn²)), which outgrows the
        // bound; for δ = β = 1 the first failure is n = 9.
        let p = params(1.0, 1.0);
        let r = ratio_bound_sweep(1024, &p).unwrap();
        assert_eq!(r.first_violation, Some(9));
        assert!(r.worst_slack < 0.0);
        assert!(ratio_bound_check(8, &p).unwrap().holds());
        assert!(matches!(ratio_bound_check(1024, &p), Err(CoreError::Invariant(_))));
        for n in [1, 9, 100, 1024] {
            let a = n as f64;
            let exact = 0.5 * (1.0 + a.powi(3) / (1.0 + a * a)).sqrt();
            assert!((BiModeSymbol::new(n, &p).unwrap().eigen_ratio() - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn uni_symbol_positivity_sweep() {
        for &d in &[0.1, 1.0] {
            for &b in &[0.0, 1.0] {
                let p = params(d, b);
                for k in 1..=1024 {
                    for kk in [k, -k] {
                        let s = UniModeSymbol::new(kk, &p).unwrap();
                        assert!(s.lambda.re >= d);
                        assert!(s.lambda.re >= d * (k * k) as f64 * (1.0 - 1e-15));
                    }
                }
            }
        }
    }

    #[test]
    fn uni_symbol_degenerates_without_viscosity() {
        let lam = uni_lambda(1, &params(0.0, 0.0));
        assert_eq!(lam, C::new(0.0, 0.0));
        assert!(matches!(UniModeSymbol::new(0, &params(0.5, 0.0)), Err(CoreError::Domain(_))));
    }

    #[test]
    fn uni_symbol_is_continuous_in_parameters() {
        for k in [1, 3, 10] {
            for &(d, b) in &[(0.3, 0.0), (0.5, 0.7), (1.0, 1.0)] {
                let base = uni_lambda(k, &params(d, b));
                let h = 1e-7;
                let dd = (uni_lambda(k, &params(d + h, b)) - base).norm();
                let db = (uni_lambda(k, &params(d, b + h)) - base).norm();
                let scale = base.norm().max(1.0);
                assert!(dd < 1e-5 * scale * (k * k) as f64 && dd > 0.0);
                assert!(db < 1e-5 * scale * (k * k) as f64 && db > 0.0);
            }
        }
    }

    #[test]
    fn uni_symbol_closed_form_real_part() {
        // Re λ = δ(|k| + k² + β|k|³ + δ²k⁴)/(1 + δ²k²).
        let (d, b) = (0.3, 0.7);
        for k in 1..50 {
            let a = k as f64;
            let want = d * (a + a * a + b * a.powi(3) + d * d * a.powi(4)) / (1.0 + d * d * a * a);
            let got = uni_lambda(k, &params(d, b)).re;
            assert!((got - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn uni_propagation() {
        let p = ModelParams::unchecked(0.5, 0.3, 1.0);
        let s = UniModeSymbol::new(3, &p).unwrap();
        let u0 = C::new(0.2, -0.4);
        assert_eq!(s.propagate(u0, 0.0), u0);
        for t in [0.1, 1.0, 5.0] {
            let u = s.propagate(u0, t);
            let ratio = u.norm() / u0.norm();
            assert!((ratio - (-s.lambda.re * t / 2.0).exp()).abs() < 1e-15);
            assert!(ratio <= (-p.delta * t / 2.0).exp());
            let halves = s.propagate(s.propagate(u0, t / 2.0), t / 2.0);
            assert!((halves - u).norm() < 1e-13 * u0.norm());
        }
        // ε rescales time through 2ε u_t.
        let slow = UniModeSymbol::new(3, &ModelParams::unchecked(0.5, 0.3, 2.0)).unwrap();
        assert!((slow.propagate(u0, 2.0) - s.propagate(u0, 1.0)).norm() < 1e-15);
    }
}
