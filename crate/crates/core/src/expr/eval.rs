use std::collections::HashMap;

use super::ast::{BinOp, Expr, Func};
use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, Jet, ToleranceConfig};

fn domain(e: &Expr, s: f64, reason: &'static str) -> Error {
    Error::Domain {
        expr: e.to_string(),
        s,
        reason,
    }
}

/// Evaluates `expr` at `s` with default tolerances.
pub fn evaluate(expr: &Expr, s: f64) -> Result<f64> {
    evaluate_with(expr, s, &ToleranceConfig::default())
}

/// Evaluates `expr` at `s`; integrals use adaptive Simpson to
/// `tol.quadrature_abs_tol`.
pub fn evaluate_with(expr: &Expr, s: f64, tol: &ToleranceConfig) -> Result<f64> {
    scalar(expr, s, None, tol.quadrature_abs_tol)
}

fn scalar(e: &Expr, s: f64, bound: Option<f64>, qtol: f64) -> Result<f64> {
    let v = match e {
        Expr::Const(x) => *x,
        Expr::Param => s,
        Expr::Bound => bound.ok_or_else(|| domain(e, s, "`u` used outside an integrand"))?,
        Expr::Neg(a) => -scalar(a, s, bound, qtol)?,
        Expr::Binary(op, a, b) => {
            let x = scalar(a, s, bound, qtol)?;
            let y = scalar(b, s, bound, qtol)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err(domain(e, s, "division by zero"));
                    }
                    x / y
                }
                BinOp::Pow => {
                    if x < 0.0 && y.fract() != 0.0 {
                        return Err(domain(e, s, "negative base with non-integer exponent"));
                    }
                    if x == 0.0 && y < 0.0 {
                        return Err(domain(e, s, "division by zero"));
                    }
                    x.powf(y)
                }
            }
        }
        Expr::Call(f, a) => {
            let x = scalar(a, s, bound, qtol)?;
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan(),
                Func::Sqrt => {
                    if x < 0.0 {
                        return Err(domain(e, s, "square root of a negative number"));
                    }
                    x.sqrt()
                }
                Func::Ln => {
                    if x <= 0.0 {
                        return Err(domain(e, s, "logarithm of a non-positive number"));
                    }
                    x.ln()
                }
                Func::Exp => x.exp(),
                Func::Abs => x.abs(),
            }
        }
        Expr::Integral { integrand, lower } => {
            adaptive_simpson(|u| scalar(integrand, s, Some(u), qtol), *lower, s, qtol)?
        }
    };
    if !v.is_finite() {
        return Err(domain(e, s, "non-finite value"));
    }
    Ok(v)
}

/// Taylor jets of `expr` in `s` at each of the ascending `points`.
///
/// Integral nodes are accumulated segment by segment along the points, so a
/// whole grid costs one pass of quadrature per integral.
pub fn evaluate_jets(expr: &Expr, points: &[f64], tol: &ToleranceConfig) -> Result<Vec<Jet>> {
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid("jet evaluation points must be ascending".into()));
    }
    let mut integrals = HashMap::new();
    tabulate_integrals(expr, points, tol.quadrature_abs_tol, &mut integrals)?;
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| jet(expr, i, p, &integrals))
        .collect()
}

type IntegralTable = HashMap<*const Expr, Vec<f64>>;

fn tabulate_integrals(e: &Expr, points: &[f64], qtol: f64, out: &mut IntegralTable) -> Result<()> {
    match e {
        Expr::Const(_) | Expr::Param | Expr::Bound => Ok(()),
        Expr::Neg(a) | Expr::Call(_, a) => tabulate_integrals(a, points, qtol, out),
        Expr::Binary(_, a, b) => {
            tabulate_integrals(a, points, qtol, out)?;
            tabulate_integrals(b, points, qtol, out)
        }
        Expr::Integral { integrand, lower } => {
            let mut values = Vec::with_capacity(points.len());
            let mut sum = 0.0;
            let mut comp = 0.0;
            let mut from = *lower;
            for &p in points {
                let piece = adaptive_simpson(|u| scalar(integrand, p, Some(u), qtol), from, p, qtol)?;
                let t = sum + piece;
                if sum.abs() >= piece.abs() {
                    comp += (sum - t) + piece;
                } else {
                    comp += (piece - t) + sum;
                }
                sum = t;
                values.push(sum + comp);
                from = p;
            }
            out.insert(e as *const Expr, values);
            Ok(())
        }
    }
}

fn integer_exponent(b: &Jet) -> Option<i32> {
    let constant = b.c[1..].iter().all(|&x| x == 0.0);
    let v = b.value();
    (constant && v.fract() == 0.0 && v.abs() <= 64.0).then_some(v as i32)
}

fn jet(e: &Expr, i: usize, s: f64, integrals: &IntegralTable) -> Result<Jet> {
    let v = match e {
        Expr::Const(x) => Jet::constant(*x),
        Expr::Param | Expr::Bound => Jet::variable(s),
        Expr::Neg(a) => -jet(a, i, s, integrals)?,
        Expr::Binary(op, a, b) => {
            let x = jet(a, i, s, integrals)?;
            let y = jet(b, i, s, integrals)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y.value() == 0.0 {
                        return Err(domain(e, s, "division by zero"));
                    }
                    x / y
                }
                BinOp::Pow => match integer_exponent(&y) {
                    Some(n) => {
                        if n < 0 && x.value() == 0.0 {
                            return Err(domain(e, s, "division by zero"));
                        }
                        x.powi(n)
                    }
                    None => {
                        if x.value() < 0.0 {
                            return Err(domain(e, s, "negative base with non-integer exponent"));
                        }
                        if x.value() == 0.0 {
                            return Err(domain(e, s, "power not differentiable at zero base"));
                        }
                        (y * x.ln()).exp()
                    }
                },
            }
        }
        Expr::Call(f, a) => {
            let x = jet(a, i, s, integrals)?;
            match f {
                Func::Sin => x.sin_cos().0,
                Func::Cos => x.sin_cos().1,
                Func::Tan => {
                    let (sn, cs) = x.sin_cos();
                    if cs.value() == 0.0 {
                        return Err(domain(e, s, "tangent pole"));
                    }
                    sn / cs
                }
                Func::Sqrt => {
                    if x.value() < 0.0 {
                        return Err(domain(e, s, "square root of a negative number"));
                    }
                    if x.value() == 0.0 {
                        return Err(domain(e, s, "square root not differentiable at zero"));
                    }
                    x.sqrt()
                }
                Func::Ln => {
                    if x.value() <= 0.0 {
                        return Err(domain(e, s, "logarithm of a non-positive number"));
                    }
                    x.ln()
                }
                Func::Exp => x.exp(),
                Func::Abs => {
                    if x.value() < 0.0 {
                        -x
                    } else {
                        x
                    }
                }
            }
        }
        Expr::Integral { integrand, .. } => {
            let value = integrals
                .get(&(e as *const Expr))
                .map(|t| t[i])
                .expect("integral table covers every integral node");
            jet(integrand, i, s, integrals)?.integrate(value)
        }
    };
    if !v.is_finite() {
        return Err(domain(e, s, "non-finite value"));
    }
    Ok(v)
}
