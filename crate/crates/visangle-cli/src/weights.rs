//! Angle-weight selection for the `--f` flag.

use visangle::{AngleWeight, Error, Result};

/// Resolve `--f`: a named weight, or an expression in the variable `w`
/// (e.g. `"w - sin(w)"` or `"w^3 / (1 + w)"`). Expressions must vanish
/// like w^3 at zero, which the library verifies on construction.
pub fn weight_from_flag(flag: &str) -> Result<AngleWeight> {
    match flag {
        "crofton" => Ok(AngleWeight::crofton()),
        "sin3" => Ok(AngleWeight::sin_cubed()),
        "disc-area" => Ok(AngleWeight::disc_area()),
        "cubic" => Ok(AngleWeight::cubic()),
        expr => {
            let parsed: meval::Expr = expr
                .parse()
                .map_err(|e| Error::InvalidBody(format!("cannot parse --f {expr:?}: {e}")))?;
            let evaluator = parsed
                .clone()
                .bind("w")
                .map_err(|e| Error::InvalidBody(format!("--f must be a function of w: {e}")))?;
            drop(evaluator); // binding validated; rebuild per call below
            let f = move |w: f64| {
                parsed
                    .clone()
                    .bind("w")
                    .map(|g| g(w))
                    .unwrap_or(f64::NAN)
            };
            AngleWeight::from_fn(expr, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_weights_resolve() {
        for name in ["crofton", "sin3", "disc-area", "cubic"] {
            assert_eq!(weight_from_flag(name).unwrap().name(), name);
        }
    }

    #[test]
    fn expression_weight_evaluates() {
        let weight = weight_from_flag("w - sin(w)").unwrap();
        let reference = AngleWeight::crofton();
        for w in [0.3, 1.0, 2.5] {
            assert!((weight.eval(w) - reference.eval(w)).abs() < 1e-12);
        }
    }

    #[test]
    fn subcubic_expression_is_rejected() {
        assert!(weight_from_flag("w^2").is_err());
        assert!(weight_from_flag("sin(w)").is_err());
    }

    #[test]
    fn garbage_expression_is_rejected() {
        assert!(weight_from_flag("w +* 3").is_err());
    }
}
