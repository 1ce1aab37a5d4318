//! The curve-component expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' factor)?
//! base   := number | 's' | 'pi' | func '(' args ')' | '(' expr ')' | '-' base
//! ```
//!
//! `integral(f(u), a, s)` integrates an expression in the bound variable `u`
//! from the constant `a` up to the curve parameter `s`.

mod ast;
mod eval;
mod parser;

pub use ast::{BinOp, Expr, Func};
pub use eval::{evaluate, evaluate_jets, evaluate_with};
pub use parser::{parse_expression, ParseDiagnostic};
