//! Point canonical transformation engine: from the ODE coefficients (Q, R)
//! and a change of variable g(x) it produces E - V(x) and the wavefunction
//! prefactor f(x), and extracts the energy from the constancy of
//! E - V(x) + V(x). The closed-form partial-fraction expansions of
//! R - Q'/2 - Q^2/4 for both families are kept alongside as oracles.

use crate::xpoly::{JacobiX1Params, LaguerreX1Params, X1Family};
use crate::{numerics, Error, Result};

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type LevelFn = Box<dyn Fn(f64, usize) -> f64 + Send + Sync>;

/// Evaluatable bundle (Q, Q', R) with its poles and the anchor used as lower
/// limit of the prefactor integral.
pub struct CoefficientFunctions {
    q: RealFn,
    qdot: RealFn,
    r: LevelFn,
    poles: Vec<f64>,
    anchor: f64,
}

impl CoefficientFunctions {
    pub fn laguerre(p: LaguerreX1Params) -> Self {
        let fam = X1Family::Laguerre(p);
        Self {
            q: Box::new(move |g| fam.q(g)),
            qdot: Box::new(move |g| fam.qdot(g)),
            r: Box::new(move |g, n| fam.r(g, n)),
            poles: fam.poles(),
            anchor: 1.0,
        }
    }

    pub fn jacobi(p: JacobiX1Params) -> Self {
        let fam = X1Family::Jacobi(p);
        Self {
            q: Box::new(move |g| fam.q(g)),
            qdot: Box::new(move |g| fam.qdot(g)),
            r: Box::new(move |g, n| fam.r(g, n)),
            poles: fam.poles(),
            anchor: 0.0,
        }
    }

    pub fn custom(q: RealFn, qdot: RealFn, r: LevelFn, poles: Vec<f64>, anchor: f64) -> Self {
        Self {
            q,
            qdot,
            r,
            poles,
            anchor,
        }
    }

    pub fn q(&self, g: f64) -> f64 {
        (self.q)(g)
    }

    pub fn qdot(&self, g: f64) -> f64 {
        (self.qdot)(g)
    }

    pub fn r(&self, g: f64, n: usize) -> f64 {
        (self.r)(g, n)
    }

    /// R - Q'/2 - Q^2/4 from the evaluatable bundle (the numeric route).
    pub fn schwarz_term(&self, g: f64, n: usize) -> f64 {
        let q = self.q(g);
        self.r(g, n) - 0.5 * self.qdot(g) - 0.25 * q * q
    }

    fn check_pole(&self, g: f64) -> Result<()> {
        for p in &self.poles {
            if (g - p).abs() < 1e-12 * (1.0 + p.abs()) {
                return Err(Error::domain(format!("g = {g} hits a pole of Q/R")));
            }
        }
        Ok(())
    }
}

/// g(x) with its first three derivatives on an open interval, g' > 0.
pub struct ChangeOfVariable {
    g: RealFn,
    g1: RealFn,
    g2: RealFn,
    g3: RealFn,
    pub domain: (f64, f64),
}

impl ChangeOfVariable {
    /// g(x) = omega x^2 / 2 on the half-line (the C = 2 omega quadratic map).
    pub fn oscillator(omega: f64) -> Self {
        Self {
            g: Box::new(move |x| 0.5 * omega * x * x),
            g1: Box::new(move |x| omega * x),
            g2: Box::new(move |_| omega),
            g3: Box::new(|_| 0.0),
            domain: (0.0, f64::INFINITY),
        }
    }

    /// g(x) = sin x on (-pi/2, pi/2) (the positive-Cbar branch with a = 1).
    pub fn scarf() -> Self {
        Self {
            g: Box::new(f64::sin),
            g1: Box::new(f64::cos),
            g2: Box::new(|x| -x.sin()),
            g3: Box::new(|x| -x.cos()),
            domain: (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
        }
    }

    pub fn custom(g: RealFn, g1: RealFn, g2: RealFn, g3: RealFn, domain: (f64, f64)) -> Self {
        Self {
            g,
            g1,
            g2,
            g3,
            domain,
        }
    }

    pub fn g(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    pub fn g1(&self, x: f64) -> f64 {
        (self.g1)(x)
    }

    pub fn g2(&self, x: f64) -> f64 {
        (self.g2)(x)
    }

    pub fn g3(&self, x: f64) -> f64 {
        (self.g3)(x)
    }

    fn check_interior(&self, x: f64) -> Result<()> {
        if !(x > self.domain.0 && x < self.domain.1) {
            return Err(Error::domain(format!(
                "x = {x} is outside the open interval ({}, {})",
                self.domain.0, self.domain.1
            )));
        }
        Ok(())
    }
}

/// E - V(x) for the level-n solution:
/// g'''/(2 g') - (3/4)(g''/g')^2 + g'^2 (R - Q'/2 - Q^2/4).
pub fn pct_rhs(cf: &CoefficientFunctions, cv: &ChangeOfVariable, n: usize, x: f64) -> Result<f64> {
    cv.check_interior(x)?;
    let g = cv.g(x);
    cf.check_pole(g)?;
    let g1 = cv.g1(x);
    if g1 <= 0.0 {
        return Err(Error::domain(format!(
            "g'(x) must be positive, got {g1} at x = {x}"
        )));
    }
    let ratio = cv.g2(x) / g1;
    Ok(cv.g3(x) / (2.0 * g1) - 0.75 * ratio * ratio + g1 * g1 * cf.schwarz_term(g, n))
}

/// Prefactor samples f(x) = exp((1/2) int_anchor^g(x) Q du) / sqrt(g'), fixed
/// up to one global multiplicative constant by the anchor choice.
pub fn pct_prefactor(
    cf: &CoefficientFunctions,
    cv: &ChangeOfVariable,
    xs: &[f64],
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        cv.check_interior(x)?;
        let g = cv.g(x);
        cf.check_pole(g)?;
        let (lo, hi) = if g < cf.anchor {
            (g, cf.anchor)
        } else {
            (cf.anchor, g)
        };
        for p in &cf.poles {
            if *p >= lo && *p <= hi {
                return Err(Error::domain(format!(
                    "integration path [{lo}, {hi}] crosses the pole g = {p}"
                )));
            }
        }
        let integral = numerics::quad(&|u| cf.q(u), cf.anchor, g)?;
        let g1 = cv.g1(x);
        if g1 <= 0.0 {
            return Err(Error::domain(format!("g'(x) must be positive at x = {x}")));
        }
        out.push((0.5 * integral).exp() / g1.sqrt());
    }
    Ok(out)
}

/// Closed-form five-term expansion of R - Q'/2 - Q^2/4 for the Laguerre case.
pub fn laguerre_expansion(g: f64, alpha: f64, n: usize) -> Result<f64> {
    if g.abs() < 1e-12 || (g + alpha).abs() < 1e-12 {
        return Err(Error::domain(format!("g = {g} is a pole of the expansion")));
    }
    let nf = n as f64;
    Ok(
        -0.25 + (2.0 * alpha * nf + alpha * alpha - alpha + 2.0) / (2.0 * alpha * g)
            - 1.0 / (alpha * (g + alpha))
            - (alpha + 1.0) * (alpha - 1.0) / (4.0 * g * g)
            - 2.0 / ((g + alpha) * (g + alpha)),
    )
}

/// The six closed-form constants of the Jacobi partial-fraction expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiExpansionConstants {
    pub c: f64,
    pub d: f64,
    pub g: f64,
    pub j: f64,
    pub k: f64,
    pub l: f64,
}

pub fn jacobi_expansion_constants(
    alpha: f64,
    beta: f64,
    n: usize,
) -> Result<JacobiExpansionConstants> {
    if alpha == 0.0 || beta == 0.0 {
        return Err(Error::domain(
            "closed-form constants are singular at alpha beta = 0",
        ));
    }
    if alpha == beta {
        return Err(Error::domain("Jacobi expansion requires alpha != beta"));
    }
    let nf = n as f64;
    let (a, b) = (alpha, beta);
    let sum = b + a;
    let diff = b - a;
    Ok(JacobiExpansionConstants {
        c: diff * sum / (2.0 * a * b),
        d: nf * nf
            + (sum - 1.0) * nf
            + 0.25 * (sum * sum - 2.0 * sum - 4.0)
            + (b * b + a * a) / (2.0 * a * b),
        g: 0.5 * diff * sum,
        j: -0.5 * (b * b + a * a - 2.0),
        k: diff * diff * sum / (2.0 * a * b),
        l: -2.0 * diff * diff,
    })
}

impl JacobiExpansionConstants {
    /// Reconstruct R - Q'/2 - Q^2/4 from the constants at a non-pole g.
    pub fn eval(&self, g: f64, alpha: f64, beta: f64) -> f64 {
        let one_minus_g2 = 1.0 - g * g;
        let s = (beta - alpha) * g - (beta + alpha);
        (self.c * g + self.d) / one_minus_g2
            + (self.g * g + self.j) / (one_minus_g2 * one_minus_g2)
            + self.k / s
            + self.l / (s * s)
    }
}

/// Extract the constant energy from pct_rhs + V over a sample set; returns
/// the mean and the maximum deviation from it.
pub fn energy_extract(
    cf: &CoefficientFunctions,
    cv: &ChangeOfVariable,
    n: usize,
    xs: &[f64],
    potential: &dyn Fn(f64) -> f64,
) -> Result<(f64, f64)> {
    if xs.len() < 10 {
        return Err(Error::domain("energy extraction needs at least 10 samples"));
    }
    let sums: Vec<f64> = xs
        .iter()
        .map(|&x| pct_rhs(cf, cv, n, x).map(|v| v + potential(x)))
        .collect::<Result<_>>()?;
    let mean = sums.iter().sum::<f64>() / sums.len() as f64;
    let max_dev = sums.iter().fold(0.0f64, |acc, v| acc.max((v - mean).abs()));
    Ok((mean, max_dev))
}
