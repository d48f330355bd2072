use super::EvalFn;

fn shifted_difference(f: &EvalFn, shift: f64, name: &str) -> EvalFn {
    let lo = f.domain_lo() + shift;
    let g = f.clone();
    let exact = if shift == 1.0 { f.difference_map() } else { None };
    let out = EvalFn::new(lo, format!("{name}[{}]", f.label()), move |x| match &exact {
        Some(d) => d(x),
        None => Ok(g.eval(x)? - g.eval(x - shift)?),
    });
    if f.has_derivative() {
        let g = f.clone();
        out.with_derivative(move |x| {
            Ok(g.derivative(x).expect("checked")? - g.derivative(x - shift).expect("checked")?)
        })
    } else {
        out
    }
}

/// `(Δf)(x) = f(x) - f(x-1)`; a function on `U` becomes one on `U⁺`.
pub fn forward_difference(f: &EvalFn) -> EvalFn {
    shifted_difference(f, 1.0, "delta")
}

/// `(Δ_{1/2} f)(x) = f(x) - f(x - 1/2)`, defined for `x > domain_lo + 1/2`.
pub fn half_difference(f: &EvalFn) -> EvalFn {
    shifted_difference(f, 0.5, "delta_half")
}
