//! One-dimensional quadrature rules, nested by the callers.
//!
//! Integrands return `(value, error)`: the error of an inner integral is integrated along with
//! the value, so nested results carry the accumulated estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scheme {
    TanhSinh,
    GaussLegendre,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub scheme: Scheme,
    /// Half-width `L` of the box added around the coupling window of each variable.
    pub half_width: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth (Gauss–Legendre) or halving level (tanh-sinh).
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::GaussLegendre,
            half_width: 12.0,
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_depth: 30,
        }
    }
}

impl QuadratureConfig {
    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_tol(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_half_width(mut self, l: f64) -> Self {
        self.half_width = l;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.rel_tol > 0.0 && self.abs_tol >= 0.0) {
            return Err(Error::Precondition(format!("invalid quadrature config {self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
}

fn failure(value: Complex64, error: f64, evals: usize) -> Error {
    Error::Quadrature {
        value: format!("{value}"),
        error,
        evals,
    }
}

/// `∫_a^b f` with the scheme and tolerances of `cfg`.
pub fn integrate<F>(cfg: &QuadratureConfig, a: f64, b: f64, f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    cfg.validate()?;
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evals: 0,
        });
    }
    match cfg.scheme {
        Scheme::TanhSinh => tanh_sinh(cfg, a, b, f),
        Scheme::GaussLegendre => gauss_legendre_adaptive(cfg, a, b, f),
    }
}

/// `integrate` for integrands without an error of their own.
pub fn integrate_plain<F>(cfg: &QuadratureConfig, a: f64, b: f64, mut f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    integrate(cfg, a, b, |x| Ok((f(x), 0.0)))
}

const TANH_SINH_TMAX: f64 = 3.5;
const MIN_LEVEL: u32 = 3;

fn tanh_sinh<F>(cfg: &QuadratureConfig, a: f64, b: f64, mut f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let half = 0.5 * (b - a);
    let mut evals = 0;
    let mut node = |t: f64| -> Result<(Complex64, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (2.0 * s).exp();
        // distances to the endpoints, formed without cancellation
        let from_a = 2.0 * half / (1.0 + 1.0 / e);
        let from_b = 2.0 * half / (1.0 + e);
        let x = if t < 0.0 { a + from_a } else { b - from_b };
        let w = half * FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        if w == 0.0 || !w.is_finite() {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        evals += 1;
        let (v, err) = f(x)?;
        Ok((v * w, err * w))
    };

    let mut h = 1.0;
    let (mut sum, mut err_sum) = node(0.0)?;
    let mut k = 1;
    while k as f64 * h <= TANH_SINH_TMAX {
        for t in [k as f64 * h, -(k as f64) * h] {
            let (v, e) = node(t)?;
            sum += v;
            err_sum += e;
        }
        k += 1;
    }
    let mut prev = sum * h;
    for level in 1..=cfg.max_depth {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= TANH_SINH_TMAX {
            for t in [k as f64 * h, -(k as f64) * h] {
                let (v, e) = node(t)?;
                sum += v;
                err_sum += e;
            }
            k += 2;
        }
        let cur = sum * h;
        let est = (cur - prev).norm() + err_sum * h;
        if level >= MIN_LEVEL && est <= cfg.abs_tol.max(cfg.rel_tol * cur.norm()) {
            return Ok(QuadResult {
                value: cur,
                error: est,
                evals,
            });
        }
        if level == cfg.max_depth {
            return Err(failure(cur, est, evals));
        }
        prev = cur;
    }
    Err(failure(prev, f64::INFINITY, evals))
}

const GL_POINTS: usize = 10;
const INITIAL_PANELS: usize = 8;
const MAX_PANELS: usize = 100_000;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
fn gauss_legendre_rule() -> &'static ([f64; GL_POINTS], [f64; GL_POINTS]) {
    static RULE: OnceLock<([f64; GL_POINTS], [f64; GL_POINTS])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_POINTS;
        let mut x = [0.0; GL_POINTS];
        let mut w = [0.0; GL_POINTS];
        for i in 0..n {
            let mut r = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, r);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * r * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (r * p1 - p0) / (r * r - 1.0);
                let dx = p1 / dp;
                r -= dx;
                if dx.abs() < 1e-16 {
                    let (mut p0, mut p1) = (1.0, r);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * r * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    let dp = n as f64 * (r * p1 - p0) / (r * r - 1.0);
                    w[i] = 2.0 / ((1.0 - r * r) * dp * dp);
                    break;
                }
            }
            x[i] = r;
        }
        (x, w)
    })
}

#[derive(Clone, Copy)]
struct Rule {
    value: Complex64,
    err_int: f64,
}

fn gl_panel<F>(f: &mut F, a: f64, b: f64, evals: &mut usize) -> Result<Rule>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let (x, w) = gauss_legendre_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut value = Complex64::new(0.0, 0.0);
    let mut err_int = 0.0;
    for i in 0..GL_POINTS {
        let (v, e) = f(mid + half * x[i])?;
        value += v * w[i];
        err_int += e * w[i];
    }
    *evals += GL_POINTS;
    Ok(Rule {
        value: value * half,
        err_int: err_int * half.abs(),
    })
}

struct Panel {
    a: f64,
    b: f64,
    depth: u32,
    left: Rule,
    right: Rule,
    /// `|G(panel) - G(left) - G(right)|`.
    disc: f64,
}

impl Panel {
    fn value(&self) -> Complex64 {
        self.left.value + self.right.value
    }
    fn err_int(&self) -> f64 {
        self.left.err_int + self.right.err_int
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.disc.total_cmp(&other.disc) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.disc.total_cmp(&other.disc)
    }
}

fn make_panel<F>(f: &mut F, a: f64, b: f64, whole: Rule, depth: u32, evals: &mut usize) -> Result<Panel>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let m = 0.5 * (a + b);
    let left = gl_panel(f, a, m, evals)?;
    let right = gl_panel(f, m, b, evals)?;
    let disc = (whole.value - left.value - right.value).norm();
    Ok(Panel {
        a,
        b,
        depth,
        left,
        right,
        disc,
    })
}

/// Globally adaptive composite Gauss–Legendre: the panel with the largest discrepancy between
/// its rule and the rule on its halves is bisected until the total estimate meets tolerance.
fn gauss_legendre_adaptive<F>(cfg: &QuadratureConfig, a: f64, b: f64, mut f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let mut evals = 0;
    let mut heap = BinaryHeap::new();
    let width = (b - a) / INITIAL_PANELS as f64;
    for k in 0..INITIAL_PANELS {
        let (pa, pb) = (a + k as f64 * width, a + (k + 1) as f64 * width);
        let whole = gl_panel(&mut f, pa, pb, &mut evals)?;
        heap.push(make_panel(&mut f, pa, pb, whole, 0, &mut evals)?);
    }
    loop {
        let (value, disc, inner) = heap
            .iter()
            .fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, d, e), p| {
                (v + p.value(), d + p.disc, e + p.err_int())
            });
        let target = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        let error = disc + inner;
        if error <= target {
            return Ok(QuadResult { value, error, evals });
        }
        // refinement cannot reduce the error carried in from inner integrals
        if inner > target {
            return Err(failure(value, error, evals));
        }
        let worst = heap.pop().expect("non-empty heap");
        if worst.depth >= cfg.max_depth || heap.len() >= MAX_PANELS {
            return Err(failure(value, error, evals));
        }
        let m = 0.5 * (worst.a + worst.b);
        heap.push(make_panel(&mut f, worst.a, m, worst.left, worst.depth + 1, &mut evals)?);
        heap.push(make_panel(&mut f, m, worst.b, worst.right, worst.depth + 1, &mut evals)?);
    }
}

const SINH_SINH_TMAX: f64 = 4.0;

/// `∫_R f` by the sinh-sinh substitution `x = c + s·sinh(π/2 · sinh t)` and trapezoidal halving.
pub fn integrate_line<F>(cfg: &QuadratureConfig, center: f64, scale: f64, f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    let (r, converged) = integrate_line_estimate(cfg, center, scale, f)?;
    if !converged {
        return Err(failure(r.value, r.error, r.evals));
    }
    Ok(r)
}

/// `integrate_line` that returns its last estimate and error instead of failing when the
/// tolerance is not met, with a flag telling whether it was. Meant for inner levels of a nested
/// integral, where the outer level decides whether the accumulated error is acceptable.
pub fn integrate_line_estimate<F>(cfg: &QuadratureConfig, center: f64, scale: f64, mut f: F) -> Result<(QuadResult, bool)>
where
    F: FnMut(f64) -> Result<(Complex64, f64)>,
{
    cfg.validate()?;
    let mut evals = 0;
    let mut node = |t: f64| -> Result<(Complex64, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let x = center + scale * s.sinh();
        let w = scale * FRAC_PI_2 * t.cosh() * s.cosh();
        if !x.is_finite() || !w.is_finite() {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        evals += 1;
        let (v, e) = f(x)?;
        if !v.is_finite() {
            return Err(Error::Precondition(format!("non-finite integrand at {x}")));
        }
        Ok((v * w, e * w))
    };
    let mut h = 0.5;
    let (mut sum, mut err_sum) = node(0.0)?;
    let mut k = 1;
    while k as f64 * h <= SINH_SINH_TMAX {
        for t in [k as f64 * h, -(k as f64) * h] {
            let (v, e) = node(t)?;
            sum += v;
            err_sum += e;
        }
        k += 1;
    }
    let mut prev = sum * h;
    let mut est = f64::INFINITY;
    for level in 1..=cfg.max_depth.min(12) {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= SINH_SINH_TMAX {
            for t in [k as f64 * h, -(k as f64) * h] {
                let (v, e) = node(t)?;
                sum += v;
                err_sum += e;
            }
            k += 2;
        }
        let cur = sum * h;
        est = (cur - prev).norm() + err_sum * h;
        prev = cur;
        if level >= 2 && est <= cfg.abs_tol.max(cfg.rel_tol * cur.norm()) {
            return Ok((
                QuadResult {
                    value: cur,
                    error: est,
                    evals,
                },
                true,
            ));
        }
    }
    Ok((
        QuadResult {
            value: prev,
            error: est,
            evals,
        },
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(scheme: Scheme) -> QuadratureConfig {
        QuadratureConfig::default().with_scheme(scheme).with_tol(1e-12, 1e-14)
    }

    #[test]
    fn gauss_legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre_rule();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // ∫_{-1}^{1} x^18 = 2/19
        let m: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((m - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrals_both_schemes() {
        for scheme in [Scheme::TanhSinh, Scheme::GaussLegendre] {
            let r = integrate_plain(&cfg(scheme), 0.0, PI, |x| Complex64::new(x.sin(), 0.0)).unwrap();
            assert!((r.value.re - 2.0).abs() < 1e-12, "{scheme:?}");
            // Gaussian over a wide box
            let r = integrate_plain(&cfg(scheme), -12.0, 12.0, |x| Complex64::new((-x * x).exp(), 0.0)).unwrap();
            assert!((r.value.re - PI.sqrt()).abs() < 1e-12, "{scheme:?}: {}", r.value.re);
            // endpoint singularity is where tanh-sinh shines, but both must cope with sqrt
            let r = integrate_plain(&cfg(scheme), 0.0, 1.0, |x| Complex64::new(x.sqrt(), 0.0)).unwrap();
            assert!((r.value.re - 2.0 / 3.0).abs() < 1e-10, "{scheme:?}");
        }
    }

    #[test]
    fn doubly_exponential_decay() {
        // ∫ exp(a x - e^x) dx = Γ(a)
        for scheme in [Scheme::TanhSinh, Scheme::GaussLegendre] {
            let r = integrate_plain(&cfg(scheme), -40.0, 5.0, |x| Complex64::new((1.5 * x - x.exp()).exp(), 0.0))
                .unwrap();
            assert!((r.value.re - PI.sqrt() / 2.0).abs() < 1e-11, "{scheme:?}");
        }
    }

    #[test]
    fn whole_line() {
        let r = integrate_line(&cfg(Scheme::TanhSinh), 0.0, 1.0, |x| Ok((Complex64::new(1.0 / (1.0 + x * x), 0.0), 0.0)))
            .unwrap();
        assert!((r.value.re - PI).abs() < 1e-10, "{}", r.value.re);
    }

    #[test]
    fn nested_errors_accumulate() {
        let c = cfg(Scheme::GaussLegendre);
        let r = integrate(&c, 0.0, 1.0, |_| Ok((Complex64::new(1.0, 0.0), 1e-3))).unwrap_err();
        assert!(matches!(r, Error::Quadrature { .. }));
        let loose = c.with_tol(1e-2, 0.0);
        let r = integrate(&loose, 0.0, 2.0, |_| Ok((Complex64::new(1.0, 0.0), 1e-3))).unwrap();
        assert!((r.error - 2e-3).abs() < 1e-12);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let bad = QuadratureConfig::default().with_half_width(0.0);
        assert!(integrate_plain(&bad, 0.0, 1.0, |_| Complex64::new(1.0, 0.0)).is_err());
    }
}
