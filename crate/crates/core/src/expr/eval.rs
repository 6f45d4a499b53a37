use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BinaryOp, Expr, ExprError, Func};
use crate::error::GaError;
use crate::multivector::Multivector;
use crate::signature::Signature;
use crate::{cga, pga};

/// Named values plus the active signature.
#[derive(Debug, Clone)]
pub struct Environment {
    sig: Arc<Signature>,
    vars: BTreeMap<String, Multivector>,
}

impl Environment {
    pub fn new(sig: Arc<Signature>) -> Self {
        Environment {
            sig,
            vars: BTreeMap::new(),
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// Returns a copy with `name` bound to `value`.
    pub fn with(&self, name: impl Into<String>, value: Multivector) -> Result<Self, GaError> {
        if **value.signature() != *self.sig {
            return Err(GaError::SignatureMismatch {
                left: self.sig.to_string(),
                right: value.signature().to_string(),
            });
        }
        let mut next = self.clone();
        next.vars.insert(name.into(), value);
        Ok(next)
    }

    pub fn get(&self, name: &str) -> Option<&Multivector> {
        self.vars.get(name)
    }
}

fn at(offset: usize) -> impl FnOnce(GaError) -> ExprError {
    move |source| ExprError::Eval { source, offset }
}

fn apply(func: Func, x: &Multivector) -> Result<Multivector, GaError> {
    match func {
        Func::Dual => cga::cga_dual(x),
        Func::ProjectiveDual => pga::pga_dual(x),
        Func::Sharp => {
            cga::require_conformal(x.signature())?;
            Ok(pga::sharp(x))
        }
        Func::Reverse => Ok(x.reverse()),
        Func::Up => cga::up(x),
        Func::UpProjective => pga::pga_point(x).map(|p| p.into_value()),
        Func::Down => cga::down(x),
    }
}

pub fn evaluate(expr: &Expr, env: &Environment) -> Result<Multivector, ExprError> {
    let sig = &env.sig;
    match expr {
        Expr::Number(x) => Ok(Multivector::scalar(sig, *x)),
        Expr::Blade { name, offset } => Multivector::basis(sig, name).map_err(at(*offset)),
        Expr::Var { name, offset } => env.get(name).cloned().ok_or_else(|| ExprError::Unbound {
            name: name.clone(),
            offset: *offset,
        }),
        Expr::Neg(inner) => Ok(-evaluate(inner, env)?),
        Expr::Binary { op, lhs, rhs, offset } => {
            let a = evaluate(lhs, env)?;
            let b = evaluate(rhs, env)?;
            let result = match op {
                BinaryOp::Geometric => a.geometric_product(&b),
                BinaryOp::Outer => a.outer_product(&b),
                BinaryOp::LeftContraction => a.left_contraction(&b),
                BinaryOp::Regressive => pga::regressive(&a, &b),
                BinaryOp::Add => a.try_add(&b),
                BinaryOp::Sub => a.try_sub(&b),
            };
            result.map_err(at(*offset))
        }
        Expr::Call { func, arg, offset } => {
            let x = evaluate(arg, env)?;
            apply(*func, &x).map_err(at(*offset))
        }
        Expr::Grade { expr, grade } => Ok(evaluate(expr, env)?.grade(*grade)),
    }
}
