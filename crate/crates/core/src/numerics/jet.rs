//! Truncated Taylor series ("jets") for forward-mode differentiation of
//! curve expressions to fifth order.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Highest Taylor coefficient carried.
pub const JET_ORDER: usize = 5;
const N: usize = JET_ORDER + 1;

/// Taylor coefficients `c[k] = f^(k)(x0) / k!` of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub c: [f64; N],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self { c }
    }

    /// The independent variable expanded around `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x0;
        c[1] = 1.0;
        Self { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// The `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.c[k] * factorial(k)
    }

    /// Taylor series of the derivative (one order lower; top coefficient zero).
    pub fn differentiate(&self) -> Self {
        let mut c = [0.0; N];
        for k in 0..JET_ORDER {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    /// Taylor series of an antiderivative with the given value at the point.
    pub fn integrate(&self, value: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = value;
        for k in 1..N {
            c[k] = self.c[k - 1] / k as f64;
        }
        Self { c }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0) / *self
    }

    pub fn exp(&self) -> Self {
        let a = &self.c;
        let mut e = [0.0; N];
        e[0] = a[0].exp();
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Self { c: e }
    }

    /// Natural log; the caller guarantees a positive value.
    pub fn ln(&self) -> Self {
        let a = &self.c;
        let mut l = [0.0; N];
        l[0] = a[0].ln();
        for k in 1..N {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * a[k - j]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Self { c: l }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.c;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..N {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                ds += j as f64 * a[j] * c[k - j];
                dc -= j as f64 * a[j] * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = dc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    /// Square root; the caller guarantees a positive value.
    pub fn sqrt(&self) -> Self {
        let a = &self.c;
        let mut r = [0.0; N];
        r[0] = a[0].sqrt();
        for k in 1..N {
            let s: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (a[k] - s) / (2.0 * r[0]);
        }
        Self { c: r }
    }

    pub fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `f(g)` where `self` is the series of `f` around `g(x0)` and `inner`
    /// is the series of `g` around `x0`.
    pub fn compose(&self, inner: &Jet) -> Self {
        let mut delta = *inner;
        delta.c[0] = 0.0;
        let mut acc = Jet::constant(self.c[JET_ORDER]);
        for k in (0..JET_ORDER).rev() {
            acc = acc * delta + Jet::constant(self.c[k]);
        }
        acc
    }

    /// Series of the inverse function: if `self` expands `y = f(x)` around
    /// `x0`, returns `x = f^{-1}(y)` around `y0 = f(x0)`, with value `x0`.
    pub fn invert(&self, x0: f64) -> Self {
        let slope = self.c[1];
        let mut x = Jet::variable(0.0) * (1.0 / slope);
        let mut f0 = *self;
        f0.c[0] = 0.0;
        // Each Newton sweep fixes one more coefficient.
        for _ in 0..N {
            let residual = f0.compose(&x) - Jet::variable(0.0);
            x = x - residual * (1.0 / slope);
        }
        x.c[0] = x0;
        x
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        for k in 0..N {
            self.c[k] += o.c[k];
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, o: Jet) -> Jet {
        for k in 0..N {
            self.c[k] -= o.c[k];
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, k: f64) -> Jet {
        for x in &mut self.c {
            *x *= k;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; N];
        for i in 0..N {
            for j in 0..N - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, b: Jet) -> Jet {
        let mut q = [0.0; N];
        for k in 0..N {
            let s: f64 = (1..=k).map(|j| b.c[j] * q[k - j]).sum();
            q[k] = (self.c[k] - s) / b.c[0];
        }
        Jet { c: q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn sin_derivatives_cycle() {
        let x = 0.7f64;
        let (s, c) = Jet::variable(x).sin_cos();
        let expected = [x.sin(), x.cos(), -x.sin(), -x.cos(), x.sin(), x.cos()];
        for k in 0..N {
            assert!(close(s.derivative(k), expected[k], 1e-13), "k={k}");
            assert!(close(c.derivative(k), expected[(k + 1) % 4], 1e-13));
        }
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = Jet::variable(1.3) * 0.5 + Jet::constant(2.0);
        let y = x.ln().exp();
        for k in 0..N {
            assert!(close(y.c[k], x.c[k], 1e-13));
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Jet::variable(2.0).powi(3) + Jet::constant(1.0);
        let r = x.sqrt();
        let back = r * r;
        for k in 0..N {
            assert!(close(back.c[k], x.c[k], 1e-13));
        }
    }

    #[test]
    fn division_and_negative_powers_agree() {
        let x = Jet::variable(0.4) + Jet::constant(1.0);
        let a = Jet::constant(1.0) / (x * x);
        let b = x.powi(-2);
        for k in 0..N {
            assert!(close(a.c[k], b.c[k], 1e-13));
        }
    }

    #[test]
    fn inverse_series_of_exp_is_log() {
        let x0 = 0.3f64;
        let f = Jet::variable(x0).exp();
        let inv = f.invert(x0);
        let log = Jet::variable(x0.exp()).ln();
        for k in 0..N {
            assert!(close(inv.c[k], log.c[k], 1e-12), "k={k}: {} vs {}", inv.c[k], log.c[k]);
        }
    }

    #[test]
    fn composition_matches_chain_rule() {
        // sin(x^2) around x0 = 0.8
        let x0 = 0.8f64;
        let inner = Jet::variable(x0) * Jet::variable(x0);
        let outer = Jet::variable(x0 * x0).sin_cos().0;
        let direct = inner.sin_cos().0;
        let composed = outer.compose(&inner);
        for k in 0..N {
            assert!(close(composed.c[k], direct.c[k], 1e-13));
        }
    }
}
