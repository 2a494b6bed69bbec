//! Numerical ε → 0 limits of the scaled objects.

use num_complex::Complex64;
use serde::Serialize;

use super::scaling::{scaled_qwhittaker, scaling_map, ScalingPoint};
use crate::error::{Error, Result};
use crate::qcore::qpoch_infinite;
use crate::report::VerificationReport;
use crate::whittaker::{gamma_c, whittaker_eval, QuadratureConfig};

pub const DEFAULT_LADDER: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

/// One row of a convergence table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub value: Complex64,
    pub target: Complex64,
    pub abs_err: f64,
}

/// Strictly decreasing, except that a ladder which is identically zero also counts.
pub fn strictly_decreasing(errors: &[f64]) -> bool {
    errors.iter().all(|&e| e == 0.0) || errors.windows(2).all(|p| p[1] < p[0])
}

fn check_ladder(eps_list: &[f64]) -> Result<()> {
    if eps_list.is_empty() {
        return Err(Error::Precondition("empty ε list".into()));
    }
    if let Some(e) = eps_list.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::Precondition(format!("ε must lie in (0, 1), got {e}")));
    }
    if !eps_list.windows(2).all(|p| p[1] < p[0]) {
        return Err(Error::Precondition("ε list must be strictly decreasing".into()));
    }
    Ok(())
}

fn ladder_report(id: &str, rows: &[SweepRow]) -> VerificationReport {
    let errors: Vec<f64> = rows.iter().map(|r| r.abs_err).collect();
    let last = rows.last().expect("non-empty ladder");
    let mut r = VerificationReport::new(id)
        .param("eps_list", format!("{:?}", rows.iter().map(|r| r.epsilon).collect::<Vec<_>>()))
        .compare_abs(last.value, last.target, f64::INFINITY)
        .diag("errors", &errors)
        .diag("rows", rows);
    r.tolerance = 0.0;
    r.pass = strictly_decreasing(&errors);
    if !r.pass {
        r = r.fail("error ladder is not strictly decreasing");
    }
    r
}

/// `1/(ζ q^{λ_N}; q)_∞` at the scaled values against `e^{-u e^{-x_N}}`, for an `n`-variable scaling
/// whose last coordinate is `x_N` (the others are placed far enough above to keep `λ` ordered).
pub fn eq_exp_limit_check(eps_list: &[f64], u: f64, x_n: f64, n: usize) -> Result<VerificationReport> {
    check_ladder(eps_list)?;
    if n == 0 {
        return Err(Error::Precondition("need N >= 1".into()));
    }
    let target = Complex64::new((-u * (-x_n).exp()).exp(), 0.0);
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut x = vec![x_n; n];
        for (k, xk) in x.iter_mut().enumerate() {
            *xk += (n - 1 - k) as f64;
        }
        let p = ScalingPoint::new(eps, x, vec![Complex64::new(0.0, 0.0); n], u)?;
        let img = scaling_map(&p)?;
        let lam_n = img.lam.parts()[n - 1];
        let a = img.zeta * img.q.powi(lam_n as i32);
        let prod = qpoch_infinite(&Complex64::new(a, 0.0), &Complex64::new(img.q, 0.0), 1e-16)?;
        let value = 1.0 / prod.value;
        rows.push(SweepRow {
            epsilon: eps,
            value,
            target,
            abs_err: (value - target).norm(),
        });
    }
    Ok(ladder_report("limit-exp", &rows)
        .param("u", u)
        .param("x_n", x_n)
        .param("n", n))
}

/// The two factors of each term of the operator: the cross ratio
/// `(q^{ν_i} z_i - q^{ν_j} z_j)/(z_i - z_j)` and `ε^{ν_i}/(q z_i/z_j; q)_{ν_i}`, against their limits
/// `(w_j - w_i + i(ν_j - ν_i))/(w_j - w_i)` and `Γ(1 + i(w_j - w_i))/Γ(1 + ν_i + i(w_j - w_i))`.
/// The error at each `ε` is the largest over both factors and both orderings of the pair.
pub fn term_limit_checks(eps_list: &[f64], nu: [u32; 2], w: [Complex64; 2]) -> Result<VerificationReport> {
    check_ladder(eps_list)?;
    if w[0] == w[1] {
        return Err(Error::Coincident(0, 1));
    }
    let i = Complex64::i();
    let limits = |a: usize, b: usize| -> Result<(Complex64, Complex64)> {
        let d = w[b] - w[a];
        let cross = (d + i * (nu[b] as f64 - nu[a] as f64)) / d;
        let poch = gamma_c(1.0 + i * d)? / gamma_c(1.0 + nu[a] as f64 + i * d)?;
        Ok((cross, poch))
    };
    let targets = [limits(0, 1)?, limits(1, 0)?];
    let mut rows = Vec::with_capacity(eps_list.len());
    let mut cross_errors = Vec::new();
    let mut poch_errors = Vec::new();
    for &eps in eps_list {
        let q = (-eps).exp();
        let z: Vec<Complex64> = w.iter().map(|wk| (i * eps * wk).exp()).collect();
        let mut worst = (0.0f64, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let (mut ce, mut pe) = (0.0f64, 0.0f64);
        for (pair, (a, b)) in [(0, 1), (1, 0)].into_iter().enumerate() {
            let qa = q.powi(nu[a] as i32);
            let qb = q.powi(nu[b] as i32);
            let cross = (qa * z[a] - qb * z[b]) / (z[a] - z[b]);
            let mut poch = Complex64::new(1.0, 0.0);
            for m in 1..=nu[a] {
                poch *= 1.0 - q.powi(m as i32) * z[a] / z[b];
            }
            let scaled = eps.powi(nu[a] as i32) / poch;
            let (tc, tp) = targets[pair];
            ce = ce.max((cross - tc).norm());
            pe = pe.max((scaled - tp).norm());
            for (v, t) in [(cross, tc), (scaled, tp)] {
                if (v - t).norm() >= worst.0 {
                    worst = ((v - t).norm(), v, t);
                }
            }
        }
        cross_errors.push(ce);
        poch_errors.push(pe);
        rows.push(SweepRow {
            epsilon: eps,
            value: worst.1,
            target: worst.2,
            abs_err: worst.0,
        });
    }
    let mut r = ladder_report("limit-terms", &rows)
        .param("nu", format!("{nu:?}"))
        .param("w", format!("{w:?}"))
        .diag("cross_ratio_errors", &cross_errors)
        .diag("pochhammer_errors", &poch_errors);
    if !(strictly_decreasing(&cross_errors) && strictly_decreasing(&poch_errors)) {
        r = r.fail("a factor's error ladder is not strictly decreasing");
    }
    Ok(r)
}

/// `ψ^ε_w(x)` against the pattern-integral `ψ_w(x)` along the ε list. Passes when the error at the
/// smallest ε is below half the error at the largest; strict monotonicity is reported separately.
pub fn convergence_sweep(
    eps_list: &[f64],
    x: &[f64],
    w: &[Complex64],
    precision: u32,
    cfg: &QuadratureConfig,
) -> Result<(VerificationReport, Vec<SweepRow>)> {
    check_ladder(eps_list)?;
    let n = x.len();
    if n == 0 || n > 2 {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: 2,
            got: n,
        });
    }
    let target = whittaker_eval(w, x, cfg)?;
    let mut rows = Vec::with_capacity(eps_list.len());
    let mut precisions = Vec::with_capacity(eps_list.len());
    let mut lattice_errors = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let p = ScalingPoint::new(eps, x.to_vec(), w.to_vec(), 1.0)?;
        let v = scaled_qwhittaker(&p, precision)?;
        precisions.push(v.precision);
        // the point the rounded λ actually represents
        let at_lattice = whittaker_eval(w, &lattice_point(&p)?, cfg)?;
        lattice_errors.push((v.value - at_lattice.value).norm());
        rows.push(SweepRow {
            epsilon: eps,
            value: v.value,
            target: target.value,
            abs_err: (v.value - target.value).norm(),
        });
    }
    let errors: Vec<f64> = rows.iter().map(|r| r.abs_err).collect();
    let last = rows.last().expect("non-empty ladder");
    let first = rows.first().expect("non-empty ladder");
    let mut r = VerificationReport::new("limit-sweep")
        .param("x", format!("{x:?}"))
        .param("w", format!("{w:?}"))
        .param("eps_list", format!("{eps_list:?}"))
        .compare_abs(last.value, last.target, f64::INFINITY)
        .diag("errors", &errors)
        .diag("strictly_decreasing", strictly_decreasing(&errors))
        .diag("lattice_errors", &lattice_errors)
        .diag("lattice_strictly_decreasing", strictly_decreasing(&lattice_errors))
        .diag("target_quadrature_error", target.error)
        .diag("precision_bits", &precisions);
    r.tolerance = 0.5;
    r.pass = last.abs_err < 0.5 * first.abs_err || errors.iter().all(|&e| e == 0.0);
    if !r.pass {
        r = r.fail("error at the smallest ε is not below half the error at the largest");
    }
    Ok((r, rows))
}

/// `x̃_k = ελ_k - (N - 2k + 1) ln(1/ε)` for the rounded `λ`: the rounding moves `x` to `x̃`.
pub fn lattice_point(p: &ScalingPoint) -> Result<Vec<f64>> {
    let img = scaling_map(p)?;
    let eps = p.epsilon;
    let n = p.n() as f64;
    let l = (1.0 / eps).ln();
    Ok(img
        .lam
        .parts()
        .iter()
        .enumerate()
        .map(|(k, &lk)| eps * lk as f64 - (n - 2.0 * (k as f64 + 1.0) + 1.0) * l)
        .collect())
}

/// CSV with header `epsilon,re(value),im(value),re(target),im(target),abs_err`.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
    w.write_record(["epsilon", "re(value)", "im(value)", "re(target)", "im(target)", "abs_err"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            format!("{:?}", r.epsilon),
            format!("{:?}", r.value.re),
            format!("{:?}", r.value.im),
            format!("{:?}", r.target.re),
            format!("{:?}", r.target.im),
            format!("{:?}", r.abs_err),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_rule() {
        assert!(strictly_decreasing(&[3.0, 2.0, 1.0]));
        assert!(!strictly_decreasing(&[3.0, 3.0, 1.0]));
        assert!(strictly_decreasing(&[0.0, 0.0]));
        assert!(!strictly_decreasing(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn trivial_limits() {
        let r = term_limit_checks(&DEFAULT_LADDER, [0, 0], [Complex64::new(0.5, 0.0), Complex64::new(-0.2, 0.0)]).unwrap();
        assert!(r.pass);
        assert!(r.abs_err < 1e-15);
        // a tiny u makes both sides 1 up to O(u)
        let r = eq_exp_limit_check(&DEFAULT_LADDER, 1e-12, 0.0, 1).unwrap();
        assert!(r.abs_err < 1e-11);
        // a large x_N kills the cutoff
        let r = eq_exp_limit_check(&DEFAULT_LADDER, 1.0, 40.0, 1).unwrap();
        assert!(r.abs_err < 1e-15);
    }

    #[test]
    fn bad_ladders() {
        assert!(eq_exp_limit_check(&[0.1, 0.2], 1.0, 0.0, 1).is_err());
        assert!(eq_exp_limit_check(&[1.5], 1.0, 0.0, 1).is_err());
        assert!(eq_exp_limit_check(&[], 1.0, 0.0, 1).is_err());
    }

    #[test]
    fn lattice_point_undoes_the_rounding() {
        let p = ScalingPoint::new(0.2, vec![0.3, -0.3], vec![Complex64::new(0.5, 0.0); 2], 1.0).unwrap();
        let xt = lattice_point(&p).unwrap();
        // λ = (10, -10) against the raw ±9.547
        let shift = 2.0 - 5f64.ln();
        assert!((xt[0] - shift).abs() < 1e-14 && (xt[1] + shift).abs() < 1e-14);
        let p = ScalingPoint::new(0.25, vec![0.5], vec![Complex64::new(0.5, 0.0)], 1.0).unwrap();
        assert_eq!(lattice_point(&p).unwrap(), vec![0.5]);
    }

    #[test]
    fn csv_header() {
        let rows = vec![SweepRow {
            epsilon: 0.1,
            value: Complex64::new(1.0, 2.0),
            target: Complex64::new(1.5, 2.0),
            abs_err: 0.5,
        }];
        let s = sweep_csv(&rows).unwrap();
        assert_eq!(s, "epsilon,re(value),im(value),re(target),im(target),abs_err\n0.1,1.0,2.0,1.5,2.0,0.5\n");
    }
}
