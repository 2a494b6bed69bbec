//! The limiting operator as a residue sum and as a contour integral.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::test_function::TestFunction;
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::symfunc::compositions;
use crate::whittaker::{gamma_c, integrate_line, integrate_line_estimate, ln_gamma, ln_inv_gamma_pair, rgamma, QuadResult, QuadratureConfig};

pub const CONTOUR_MAX_RANK: usize = 2;

/// Beyond this height the Gamma factors and the inverse-Gamma pair cancel exponents of size
/// `π|y|` whose rounding error is no longer small; the integrand is set to zero there. The
/// neglected tail is bounded by the polynomial decay of the test function.
const LINE_CUTOFF: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidueSum {
    pub value: Complex64,
    /// `|shell_cap| + |shell_{cap-1}|`, the size of the last two weight shells.
    pub tail: f64,
    pub terms: usize,
}

/// `Σ_{|ν| ≤ cap} v^{|ν|} ∏_{i<j} (w_j - w_i + i(ν_j - ν_i))/(w_j - w_i)
///  · ∏_{i,j} Γ(1 + i(w_j - w_i))/Γ(1 + ν_i + i(w_j - w_i)) · f(w + iν)` with `v = u_arg`.
pub fn residue_apply<F>(f: F, w: &[Complex64], u_arg: f64, cap: u32) -> Result<ResidueSum>
where
    F: Fn(&[Complex64]) -> Result<Complex64>,
{
    let n = w.len();
    let i = Complex64::i();
    for a in 0..n {
        for b in a + 1..n {
            if w[a] == w[b] {
                return Err(Error::Coincident(a, b));
            }
        }
    }
    let mut base = Complex64::new(1.0, 0.0);
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            base *= gamma_c(1.0 + i * (w[b] - w[a]))?;
        }
    }
    let mut shells = Vec::with_capacity(cap as usize + 1);
    let mut terms = 0;
    for k in 0..=cap {
        let mut shell = Complex64::new(0.0, 0.0);
        for nu in compositions(k, n) {
            let mut c = base;
            for a in 0..n {
                for b in a + 1..n {
                    let d = w[b] - w[a];
                    c *= (d + i * (nu[b] as f64 - nu[a] as f64)) / d;
                }
                for b in 0..n {
                    c *= rgamma(1.0 + nu[a] as f64 + i * (w[b] - w[a]));
                }
            }
            let shifted: Vec<Complex64> = w.iter().zip(&nu).map(|(wj, &v)| wj + i * v as f64).collect();
            shell += c * f(&shifted)?;
            terms += 1;
        }
        shells.push(shell * u_arg.powi(k as i32));
    }
    let value = shells.iter().sum();
    let tail = shells.iter().rev().take(2).map(|s| s.norm()).sum::<f64>();
    Ok(ResidueSum { value, tail, terms })
}

/// Hypotheses of the contour form: the line `Re ξ = a` lies to the right of every pole of
/// `Γ(ξ_j - i w_i)`, and `f` is analytic on the region the contour sweeps when shifted left.
pub fn check_contour_hypotheses(f: &TestFunction, w: &[Complex64], u: f64, a: f64) -> Result<()> {
    if !(a > 0.0 && u > 0.0) {
        return Err(Error::Precondition(format!("need a > 0 and u > 0, got a = {a}, u = {u}")));
    }
    if let Some(wj) = w.iter().find(|wj| wj.im <= -a) {
        return Err(Error::Precondition(format!(
            "Im w_j must exceed -a = {}; got w_j = {wj}",
            -a
        )));
    }
    if f.analytic_above() <= a {
        return Err(Error::Precondition(format!(
            "test function has a pole at Im w = -{}, inside the swept region Im w >= -{a}",
            f.analytic_above()
        )));
    }
    Ok(())
}

/// `∫_{(a+iR)^N} dξ s_N(ξ) u^{Σ_i(i w_i - ξ_i)} ∏_{i,j} Γ(ξ_j - i w_i) f(-iξ)`, evaluated in log
/// space along each line with the sinh-sinh rule.
pub fn contour_apply(f: &TestFunction, w: &[Complex64], u: f64, a: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    let n = w.len();
    if n == 0 || n > CONTOUR_MAX_RANK {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: CONTOUR_MAX_RANK,
            got: n,
        });
    }
    check_contour_hypotheses(f, w, u, a)?;
    let i = Complex64::i();
    let ln_u = u.ln();
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let ln_norm = -(n as f64) * Complex64::new(0.0, 2.0 * PI).ln() - factorial.ln();
    let log_integrand = |y: &[f64]| -> Result<Complex64> {
        let xi: Vec<Complex64> = y.iter().map(|&yj| Complex64::new(a, yj)).collect();
        let mut l = ln_norm;
        for p in 0..n {
            for q in p + 1..n {
                l += ln_inv_gamma_pair(xi[p] - xi[q]);
            }
        }
        for p in 0..n {
            l += ln_u * (i * w[p] - xi[p]);
            for q in 0..n {
                l += ln_gamma(xi[q] - i * w[p])?;
            }
        }
        let arg: Vec<Complex64> = xi.iter().map(|x| -i * x).collect();
        Ok(l + f.ln_eval(&arg))
    };
    // dξ = i dy along each line
    let jacobian = i.powi(n as i32);
    let mut y = vec![0.0; n];
    // a coarse pass fixes the scale of the answer, so that inner lines far out stop refining once
    // they are negligible against it
    let coarse = QuadratureConfig {
        max_depth: 3,
        ..cfg.with_tol(1e-2, 0.0)
    };
    let (rough, _, coarse_evals) = nested_line(&log_integrand, &mut y, 0, &coarse, false)?;
    let fine = cfg.with_tol(cfg.rel_tol, cfg.abs_tol.max(0.1 * cfg.rel_tol * rough.norm()));
    let (value, error, evals) = nested_line(&log_integrand, &mut y, 0, &fine, true)?;
    let evals = evals + coarse_evals;
    Ok(QuadResult {
        value: value * jacobian,
        error,
        evals,
    })
}

/// Inner lines only report their error: far out, where the integrand oscillates like
/// `e^{i y ln y}` but is negligible, they need not meet a relative tolerance of their own.
fn nested_line<G>(g: &G, y: &mut Vec<f64>, dim: usize, cfg: &QuadratureConfig, strict: bool) -> Result<(Complex64, f64, usize)>
where
    G: Fn(&[f64]) -> Result<Complex64>,
{
    if dim == y.len() {
        return Ok((g(y)?.exp(), 0.0, 1));
    }
    let child = cfg.with_tol(cfg.rel_tol / 10.0, cfg.abs_tol / 10.0);
    let mut evals = 0;
    let rule = if dim == 0 && strict {
        |c: &QuadratureConfig, f: &mut dyn FnMut(f64) -> Result<(Complex64, f64)>| integrate_line(c, 0.0, 1.0, f)
    } else {
        |c: &QuadratureConfig, f: &mut dyn FnMut(f64) -> Result<(Complex64, f64)>| {
            integrate_line_estimate(c, 0.0, 1.0, f).map(|(r, _)| r)
        }
    };
    let r = rule(cfg, &mut |t| {
        if t.abs() > LINE_CUTOFF {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        y[dim] = t;
        let (v, e, k) = nested_line(g, y, dim + 1, &child, strict)?;
        evals += k;
        // far out along a line the log-integrand is very negative; exp underflows to exactly 0
        Ok((if v.is_finite() { v } else { Complex64::new(0.0, 0.0) }, e))
    })?;
    Ok((r.value, r.error, evals.max(r.evals)))
}

/// Compares the residue sum with argument `-u` against the contour integral.
pub fn lemma1_check(
    f: &TestFunction,
    w: &[Complex64],
    u: f64,
    a: f64,
    cap: u32,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<VerificationReport> {
    check_contour_hypotheses(f, w, u, a)?;
    let residue = residue_apply(|z| Ok(f.eval(z)), w, -u, cap)?;
    let contour = contour_apply(f, w, u, a, cfg)?;
    Ok(VerificationReport::new("lemma1")
        .param("test_function", format!("{f:?}"))
        .param("w", format!("{w:?}"))
        .param("u", u)
        .param("a", a)
        .param("cap", cap)
        .param("operator_argument", -u)
        .compare(residue.value, contour.value, tol)
        .diag("residue_tail", residue.tail)
        .diag("residue_terms", residue.terms)
        .diag("quadrature_error", contour.error)
        .diag("quadrature_evals", contour.evals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_exponential_series() {
        let r = residue_apply(|_| Ok(c(1.0, 0.0)), &[c(0.3, -0.2)], -1.0, 30).unwrap();
        assert!((r.value - c((-1.0f64).exp(), 0.0)).norm() < 1e-12);
        assert!(r.tail < 1e-30);
    }

    #[test]
    fn cap_zero_is_the_function_itself() {
        let f = TestFunction::ProductPole { b: 3.0, order: 1 };
        let w = [c(0.2, -0.5), c(-0.1, -0.3)];
        let r = residue_apply(|z| Ok(f.eval(z)), &w, 0.5, 0).unwrap();
        assert!((r.value - f.eval(&w)).norm() < 1e-15);
    }

    #[test]
    fn residue_sum_is_symmetric() {
        let f = TestFunction::ProductPole { b: 3.0, order: 2 };
        let w = [c(0.2, -0.5), c(-0.1, -0.3)];
        let a = residue_apply(|z| Ok(f.eval(z)), &w, -0.5, 25).unwrap();
        let b = residue_apply(|z| Ok(f.eval(z)), &[w[1], w[0]], -0.5, 25).unwrap();
        assert!((a.value - b.value).norm() < 1e-13 * a.value.norm());
    }

    #[test]
    fn contour_rank_one_cahen_mellin() {
        let cfg = QuadratureConfig::default().with_tol(1e-12, 1e-15);
        for (a, w) in [(1.0, c(0.0, -0.5)), (0.5, c(0.3, 0.2)), (2.0, c(-0.4, -1.5))] {
            let r = contour_apply(&TestFunction::Constant, &[w], 1.0, a, &cfg).unwrap();
            assert!((r.value - c((-1.0f64).exp(), 0.0)).norm() < 1e-10, "a={a}: {}", r.value);
        }
    }

    #[test]
    fn hypotheses_are_enforced() {
        let cfg = QuadratureConfig::default();
        // the contour would pass left of the pole at ξ = i w
        let err = contour_apply(&TestFunction::Constant, &[c(0.0, -1.0)], 1.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let f = TestFunction::ProductPole { b: 0.5, order: 1 };
        assert!(contour_apply(&f, &[c(0.0, -0.2)], 1.0, 1.0, &cfg).is_err());
        assert!(residue_apply(|_| Ok(c(1.0, 0.0)), &[c(0.1, 0.0), c(0.1, 0.0)], 1.0, 2).is_err());
    }
}
