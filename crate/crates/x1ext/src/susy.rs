//! SUSY layer: superpotential from the nodeless ground state, the closed-form
//! split W = W1 + W2, the partner potential V(-) = V(+) + 2 W', and the
//! translational shape-invariance check.

use crate::models::{ground_state_factorized, Model, PotentialKind};
use crate::{numerics, Error, Result};

/// Factorization data: the family and the factorization energy
/// E0 = omega (l + 3/2) or A^2, at which H(+) annihilates the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationSpec {
    pub model: Model,
    pub e0: f64,
}

impl FactorizationSpec {
    pub fn new(model: Model) -> Self {
        let e0 = model.energy(0);
        Self { model, e0 }
    }
}

/// The closed-form pieces (W1, W2) of the superpotential; W = W1 + W2.
pub fn superpotential_closed(spec: &FactorizationSpec, x: f64) -> Result<(f64, f64)> {
    match &spec.model {
        Model::Oscillator(p) => {
            if x <= 0.0 {
                return Err(Error::domain(format!(
                    "oscillator superpotential is singular at x = {x}"
                )));
            }
            let w = p.omega;
            let l = p.l as f64;
            let w1 = 0.5 * w * x - (l + 1.0) / x;
            let d1 = w * x * x + 2.0 * l + 1.0;
            let d2 = w * x * x + 2.0 * l + 3.0;
            let w2 = 2.0 * w * x * (1.0 / d1 - 1.0 / d2);
            Ok((w1, w2))
        }
        Model::Scarf(p) => {
            if x.abs() >= std::f64::consts::FRAC_PI_2 {
                return Err(Error::domain(format!(
                    "Scarf superpotential lives on (-pi/2, pi/2), got x = {x}"
                )));
            }
            let (a, b) = (p.big_a, p.big_b);
            let w1 = a * x.tan() - b / x.cos();
            let e1 = 2.0 * a - 1.0 - 2.0 * b * x.sin();
            let e2 = 2.0 * a + 1.0 - 2.0 * b * x.sin();
            let w2 = -2.0 * b * x.cos() * (1.0 / e1 - 1.0 / e2);
            Ok((w1, w2))
        }
    }
}

/// W = -psi0'/psi0 by Richardson finite differences of the analytic ground
/// state, independent of the closed forms.
pub fn superpotential_from_ground_state(spec: &FactorizationSpec, x: f64) -> Result<f64> {
    // the factorized representation avoids rebuilding the X1 polynomial
    let (psi10, opf) = ground_state_factorized(&spec.model, x)?;
    let value = psi10 * opf;
    if value == 0.0 {
        return Err(Error::domain(format!("ground state vanishes at x = {x}")));
    }
    let psi = |t: f64| match ground_state_factorized(&spec.model, t) {
        Ok((a, b)) => a * b,
        Err(_) => 0.0,
    };
    let deriv = numerics::fd_derivative(&psi, x, 1);
    Ok(-deriv / value)
}

/// Analytic derivative of the closed-form superpotential.
pub fn superpotential_derivative(spec: &FactorizationSpec, x: f64) -> Result<f64> {
    // domain check shared with the closed forms
    superpotential_closed(spec, x)?;
    match &spec.model {
        Model::Oscillator(p) => {
            let w = p.omega;
            let l = p.l as f64;
            let w1p = 0.5 * w + (l + 1.0) / (x * x);
            let d1 = w * x * x + 2.0 * l + 1.0;
            let d2 = w * x * x + 2.0 * l + 3.0;
            let w2p = 2.0 * w * (1.0 / d1 - 1.0 / d2)
                - 4.0 * w * w * x * x * (1.0 / (d1 * d1) - 1.0 / (d2 * d2));
            Ok(w1p + w2p)
        }
        Model::Scarf(p) => {
            let (a, b) = (p.big_a, p.big_b);
            let sec = 1.0 / x.cos();
            let w1p = a * sec * sec - b * sec * x.tan();
            let e1 = 2.0 * a - 1.0 - 2.0 * b * x.sin();
            let e2 = 2.0 * a + 1.0 - 2.0 * b * x.sin();
            let cos2 = x.cos() * x.cos();
            let w2p = 2.0 * b * x.sin() * (1.0 / e1 - 1.0 / e2)
                - 4.0 * b * b * cos2 * (1.0 / (e1 * e1) - 1.0 / (e2 * e2));
            Ok(w1p + w2p)
        }
    }
}

/// Partner potential V(-) = V_extended + 2 W'.
pub fn partner_potential(spec: &FactorizationSpec, x: f64) -> Result<f64> {
    let v = spec.model.potential(PotentialKind::Extended, x)?;
    Ok(v + 2.0 * superpotential_derivative(spec, x)?)
}

/// Constant gap between V(-)(x; a0) and V_extended(x; a1) with the shifted
/// parameters a1 = (omega, l+1) resp. (A+1, B); returns (gap, max deviation).
///
/// Both potentials are measured relative to their own ground energies (the
/// usual convention that puts each factorized ground state at zero), so the
/// gap reproduces the first spectral gap E1 - E0: 2 omega, resp. 2A + 1.
pub fn shape_invariance_report(spec: &FactorizationSpec, xs: &[f64]) -> Result<(f64, f64)> {
    if xs.len() < 20 {
        return Err(Error::domain("shape-invariance check needs >= 20 samples"));
    }
    let shifted = spec.model.shifted()?;
    let shifted_e0 = shifted.energy(0);
    let diffs: Vec<f64> = xs
        .iter()
        .map(|&x| {
            Ok((partner_potential(spec, x)? - spec.e0)
                - (shifted.potential(PotentialKind::Extended, x)? - shifted_e0))
        })
        .collect::<Result<_>>()?;
    let gap = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let max_dev = diffs.iter().fold(0.0f64, |acc, d| acc.max((d - gap).abs()));
    Ok((gap, max_dev))
}
