use num_complex::Complex64;
use serde::Serialize;

/// Symmetric test functions on which the limiting operator is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum TestFunction {
    Constant,
    /// `∏_j (b - i w_j)^{-order}`.
    ProductPole { b: f64, order: u32 },
    /// `∏_j e^{-τ(b - i w_j)} (b - i w_j)^{-order}`.
    ExpCutoff { b: f64, tau: f64, order: u32 },
}

impl TestFunction {
    /// `ln f(w)` on some branch.
    pub fn ln_eval(&self, w: &[Complex64]) -> Complex64 {
        let i = Complex64::i();
        match *self {
            TestFunction::Constant => Complex64::new(0.0, 0.0),
            TestFunction::ProductPole { b, order } => w
                .iter()
                .map(|wj| -(order as f64) * (b - i * wj).ln())
                .sum(),
            TestFunction::ExpCutoff { b, tau, order } => w
                .iter()
                .map(|wj| {
                    let d = b - i * wj;
                    -tau * d - (order as f64) * d.ln()
                })
                .sum(),
        }
    }

    pub fn eval(&self, w: &[Complex64]) -> Complex64 {
        self.ln_eval(w).exp()
    }

    /// `f` is bounded and analytic on `{Im w_j > -h}` for every `h` below this value.
    pub fn analytic_above(&self) -> f64 {
        match *self {
            TestFunction::Constant => f64::INFINITY,
            TestFunction::ProductPole { b, order } | TestFunction::ExpCutoff { b, order, .. } => {
                if order == 0 {
                    f64::INFINITY
                } else {
                    b
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let w = [Complex64::new(0.5, -0.2), Complex64::new(-1.0, 0.3)];
        assert_eq!(TestFunction::Constant.eval(&w), Complex64::new(1.0, 0.0));
        let f = TestFunction::ProductPole { b: 3.0, order: 2 };
        let i = Complex64::i();
        let direct: Complex64 = w.iter().map(|x| 1.0 / (3.0 - i * x).powi(2)).product();
        assert!((f.eval(&w) - direct).norm() < 1e-15);
        assert_eq!(f.analytic_above(), 3.0);
        let g = TestFunction::ExpCutoff { b: 2.0, tau: 0.5, order: 0 };
        let direct: Complex64 = w.iter().map(|x| (-0.5 * (2.0 - i * x)).exp()).product();
        assert!((g.eval(&w) - direct).norm() < 1e-15);
        assert_eq!(g.analytic_above(), f64::INFINITY);
    }
}
