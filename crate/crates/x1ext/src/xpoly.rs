//! Classical Laguerre/Jacobi polynomials and the X1 exceptional
//! Laguerre/Jacobi polynomials.
//!
//! The X1 members are built directly from their defining second-order ODE
//! F'' + Q(g) F' + R(g) F = 0: a monic degree-n ansatz is substituted after
//! clearing the rational coefficients' denominators, which leaves a small
//! linear system for the non-leading coefficients. The residual of the
//! original ODE is checked afterwards.

use crate::{numerics, Error, Result};

/// Dense real polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("polynomial coefficients must be finite"));
        }
        if coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            return Err(Error::domain("leading coefficient must be nonzero"));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, g: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * g + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial { coeffs: vec![0.0] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Polynomial { coeffs }
    }
}

/// Horner evaluation as a free function.
pub fn eval_poly(poly: &Polynomial, g: f64) -> f64 {
    poly.eval(g)
}

/// Parameters of the Laguerre-type X1 family (alpha > 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreX1Params {
    pub alpha: f64,
}

impl LaguerreX1Params {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::domain(format!(
                "Laguerre X1 requires alpha > 0, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }
}

/// Parameters of the Jacobi-type X1 family (alpha, beta > -1, alpha != beta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiX1Params {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiX1Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::domain(format!(
                "Jacobi X1 requires alpha, beta > -1, got ({alpha}, {beta})"
            )));
        }
        if alpha == beta {
            return Err(Error::domain(
                "Jacobi X1 family degenerates at alpha = beta",
            ));
        }
        Ok(Self { alpha, beta })
    }
}

/// One of the two X1 families with its parameters; carries the rational ODE
/// coefficients Q, R, their poles and the orthogonality weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum X1Family {
    Laguerre(LaguerreX1Params),
    Jacobi(JacobiX1Params),
}

impl X1Family {
    pub fn q(&self, g: f64) -> f64 {
        match self {
            X1Family::Laguerre(p) => {
                let a = p.alpha;
                -(g - a) * (g + a + 1.0) / (g * (g + a))
            }
            X1Family::Jacobi(p) => {
                let (a, b) = (p.alpha, p.beta);
                -((b + a + 2.0) * g - (b - a)) / (1.0 - g * g)
                    - 2.0 * (b - a) / ((b - a) * g - (b + a))
            }
        }
    }

    /// Analytic derivative of Q with respect to g.
    pub fn qdot(&self, g: f64) -> f64 {
        match self {
            X1Family::Laguerre(p) => {
                // Q = -1 + (alpha+1)/g - 2/(g+alpha)
                let a = p.alpha;
                -(a + 1.0) / (g * g) + 2.0 / ((g + a) * (g + a))
            }
            X1Family::Jacobi(p) => {
                let (a, b) = (p.alpha, p.beta);
                let d = 1.0 - g * g;
                let s = (b - a) * g - (b + a);
                -((b + a + 2.0) * (1.0 + g * g) - 2.0 * (b - a) * g) / (d * d)
                    + 2.0 * (b - a) * (b - a) / (s * s)
            }
        }
    }

    pub fn r(&self, g: f64, n: usize) -> f64 {
        let n = n as f64;
        match self {
            X1Family::Laguerre(p) => {
                let a = p.alpha;
                ((g - a) / (g + a) + n - 1.0) / g
            }
            X1Family::Jacobi(p) => {
                let (a, b) = (p.alpha, p.beta);
                -((b - a) * g - (n - 1.0) * (n + b + a)) / (1.0 - g * g)
                    - (b - a) * (b - a) / ((b - a) * g - (b + a))
            }
        }
    }

    pub fn poles(&self) -> Vec<f64> {
        match self {
            X1Family::Laguerre(p) => vec![0.0, -p.alpha],
            X1Family::Jacobi(p) => {
                let (a, b) = (p.alpha, p.beta);
                vec![-1.0, 1.0, (b + a) / (b - a)]
            }
        }
    }

    /// Sturm-Liouville orthogonality weight of the family.
    pub fn weight(&self, g: f64) -> f64 {
        match self {
            X1Family::Laguerre(p) => {
                let a = p.alpha;
                g.powf(a) * (-g).exp() / ((g + a) * (g + a))
            }
            X1Family::Jacobi(p) => {
                let (a, b) = (p.alpha, p.beta);
                let s = (b - a) * g - (b + a);
                (1.0 - g).powf(a) * (1.0 + g).powf(b) / (s * s)
            }
        }
    }

    fn construct(&self, n: usize) -> Result<Polynomial> {
        match self {
            X1Family::Laguerre(p) => x1_laguerre(n, p),
            X1Family::Jacobi(p) => x1_jacobi(n, p),
        }
    }
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_axpy(acc: &mut Vec<f64>, src: &[f64], scale: f64, shift: usize) {
    if acc.len() < src.len() + shift {
        acc.resize(src.len() + shift, 0.0);
    }
    for (i, v) in src.iter().enumerate() {
        acc[i + shift] += scale * v;
    }
}

/// Least-squares solve of an overdetermined system by Householder QR.
#[allow(clippy::needless_range_loop)]
fn lstsq(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Result<Vec<f64>> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    if cols == 0 {
        return Ok(Vec::new());
    }
    if rows < cols {
        return Err(Error::construction("underdetermined ansatz system"));
    }
    for k in 0..cols {
        let mut norm = 0.0;
        for row in m.iter().take(rows).skip(k) {
            norm += row[k] * row[k];
        }
        let norm = norm.sqrt();
        if norm < 1e-14 {
            return Err(Error::construction(
                "singular linear system in polynomial ansatz",
            ));
        }
        let alpha = if m[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|i| m[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for j in k..cols {
                let dot: f64 = (k..rows).map(|i| v[i - k] * m[i][j]).sum();
                let s = 2.0 * dot / vnorm2;
                for i in k..rows {
                    m[i][j] -= s * v[i - k];
                }
            }
            let dot: f64 = (k..rows).map(|i| v[i - k] * rhs[i]).sum();
            let s = 2.0 * dot / vnorm2;
            for i in k..rows {
                rhs[i] -= s * v[i - k];
            }
        }
    }
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let mut sum = rhs[k];
        for j in k + 1..cols {
            sum -= m[k][j] * x[j];
        }
        if m[k][k].abs() < 1e-14 {
            return Err(Error::construction(
                "singular linear system in polynomial ansatz",
            ));
        }
        x[k] = sum / m[k][k];
    }
    Ok(x)
}

/// Monic degree-n solution of A2 F'' + A1 F' + A0 F = 0 with polynomial
/// coefficient functions, by coefficient matching.
#[allow(clippy::needless_range_loop)]
fn solve_monic_ode(a2: &[f64], a1: &[f64], a0: &[f64], n: usize) -> Result<Polynomial> {
    let rows = (n + a0.len()).max(n + a1.len() - 1).max(n + a2.len() - 2);
    // contribution of the coefficient of g^k to the cleared residual
    let column = |k: usize| -> Vec<f64> {
        let mut col = vec![0.0; rows];
        poly_axpy(&mut col, a0, 1.0, k);
        if k >= 1 {
            poly_axpy(&mut col, a1, k as f64, k - 1);
        }
        if k >= 2 {
            poly_axpy(&mut col, a2, (k * (k - 1)) as f64, k - 2);
        }
        col.truncate(rows);
        col
    };

    let lead = column(n);
    let rhs: Vec<f64> = lead.iter().map(|v| -v).collect();
    let mut m = vec![vec![0.0; n]; rows];
    for k in 0..n {
        let col = column(k);
        for (i, v) in col.iter().enumerate() {
            m[i][k] = *v;
        }
    }
    let c = lstsq(m.clone(), rhs.clone())?;

    // verify the full cleared residual really vanishes
    let scale = rhs
        .iter()
        .chain(m.iter().flatten())
        .fold(1.0f64, |acc, v| acc.max(v.abs()))
        * c.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    for i in 0..rows {
        let mut r = -rhs[i];
        for k in 0..n {
            r += m[i][k] * c[k];
        }
        if r.abs() > 1e-8 * scale {
            return Err(Error::construction(format!(
                "ansatz residual {r} in power {i} exceeds tolerance"
            )));
        }
    }

    let mut coeffs = c;
    coeffs.push(1.0);
    Polynomial::new(coeffs)
}

/// Classical (generalized) Laguerre polynomial L_n^(alpha) in the standard
/// convention, as a coefficient polynomial built from the three-term
/// recurrence.
pub fn classical_laguerre(n: usize, alpha: f64) -> Result<Polynomial> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!(
            "classical Laguerre requires alpha > -1, got {alpha}"
        )));
    }
    let mut prev = vec![1.0];
    if n == 0 {
        return Polynomial::new(prev);
    }
    let mut cur = vec![alpha + 1.0, -1.0];
    for k in 1..n {
        let kf = k as f64;
        // (k+1) L_{k+1} = (2k+1+alpha - g) L_k - (k+alpha) L_{k-1}
        let mut next = vec![0.0; cur.len() + 1];
        poly_axpy(&mut next, &cur, 2.0 * kf + 1.0 + alpha, 0);
        poly_axpy(&mut next, &cur, -1.0, 1);
        poly_axpy(&mut next, &prev, -(kf + alpha), 0);
        for c in next.iter_mut() {
            *c /= kf + 1.0;
        }
        prev = cur;
        cur = next;
    }
    Polynomial::new(cur)
}

/// Classical Jacobi polynomial P_n^(alpha, beta) in the standard convention.
pub fn classical_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Polynomial> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::domain(format!(
            "classical Jacobi requires alpha, beta > -1, got ({alpha}, {beta})"
        )));
    }
    let mut prev = vec![1.0];
    if n == 0 {
        return Polynomial::new(prev);
    }
    let mut cur = vec![0.5 * (alpha - beta), 0.5 * (alpha + beta + 2.0)];
    for k in 1..n {
        let kf = k as f64;
        let ab = alpha + beta;
        let c1 = 2.0 * (kf + 1.0) * (kf + ab + 1.0) * (2.0 * kf + ab);
        let c2 = (2.0 * kf + ab + 1.0) * (alpha * alpha - beta * beta);
        let c3 = (2.0 * kf + ab + 1.0) * (2.0 * kf + ab + 2.0) * (2.0 * kf + ab);
        let c4 = 2.0 * (kf + alpha) * (kf + beta) * (2.0 * kf + ab + 2.0);
        let mut next = vec![0.0; cur.len() + 1];
        poly_axpy(&mut next, &cur, c2, 0);
        poly_axpy(&mut next, &cur, c3, 1);
        poly_axpy(&mut next, &prev, -c4, 0);
        for c in next.iter_mut() {
            *c /= c1;
        }
        prev = cur;
        cur = next;
    }
    Polynomial::new(cur)
}

/// Monic Laguerre-type X1 polynomial of degree n >= 1.
pub fn x1_laguerre(n: usize, p: &LaguerreX1Params) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::domain(
            "X1 families start with a linear polynomial; there is no degree-0 member",
        ));
    }
    let a = p.alpha;
    // ODE cleared by g (g + alpha)
    let a2 = vec![0.0, a, 1.0];
    let a1 = vec![a * (a + 1.0), -1.0, -1.0];
    let a0 = vec![a * (n as f64 - 2.0), n as f64];
    solve_monic_ode(&a2, &a1, &a0, n)
}

/// Monic Jacobi-type X1 polynomial of degree n >= 1.
pub fn x1_jacobi(n: usize, p: &JacobiX1Params) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::domain(
            "X1 families start with a linear polynomial; there is no degree-0 member",
        ));
    }
    let (a, b) = (p.alpha, p.beta);
    if a == b {
        return Err(Error::domain(
            "Jacobi X1 family degenerates at alpha = beta",
        ));
    }
    let nf = n as f64;
    let s = vec![-(b + a), b - a];
    let one_minus_g2 = vec![1.0, 0.0, -1.0];
    // ODE cleared by (1 - g^2) [(beta - alpha) g - (beta + alpha)]
    let a2 = poly_mul(&one_minus_g2, &s);
    let mut a1 = poly_mul(&[-(b - a), b + a + 2.0], &s);
    for c in a1.iter_mut() {
        *c = -*c;
    }
    poly_axpy(&mut a1, &one_minus_g2, -2.0 * (b - a), 0);
    let mut a0 = poly_mul(&[-(nf - 1.0) * (nf + b + a), b - a], &s);
    for c in a0.iter_mut() {
        *c = -*c;
    }
    poly_axpy(&mut a0, &one_minus_g2, -(b - a) * (b - a), 0);
    solve_monic_ode(&a2, &a1, &a0, n)
}

/// Residual F'' + Q F' + R F of the family ODE at a single point.
pub fn ode_residual(poly: &Polynomial, family: &X1Family, n: usize, g: f64) -> Result<f64> {
    for pole in family.poles() {
        if (g - pole).abs() < 1e-12 * (1.0 + pole.abs()) {
            return Err(Error::domain(format!(
                "g = {g} is a pole of the ODE coefficients"
            )));
        }
    }
    let d1 = poly.derivative();
    let d2 = d1.derivative();
    Ok(d2.eval(g) + family.q(g) * d1.eval(g) + family.r(g, n) * poly.eval(g))
}

/// Truncation point for the Laguerre weight integral.
fn laguerre_gmax(alpha: f64, n: usize) -> f64 {
    (10.0 * (alpha + n as f64)).max(50.0)
}

/// Weighted inner product of the degree-m and degree-n X1 members.
pub fn x1_inner_product(family: &X1Family, m: usize, n: usize) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::domain("X1 members are indexed from 1"));
    }
    let pm = family.construct(m)?;
    let pn = family.construct(n)?;
    let f = |g: f64| pm.eval(g) * pn.eval(g) * family.weight(g);
    match family {
        X1Family::Laguerre(p) => {
            let gmax = laguerre_gmax(p.alpha, m.max(n));
            numerics::quad(&f, 0.0, gmax)
        }
        X1Family::Jacobi(_) => numerics::quad(&f, -1.0, 1.0),
    }
}

/// Count the real roots of `poly` in the open interval (a, b) by dense sign
/// scanning with bisection-free refinement; adequate for the well-separated
/// roots of the families handled here.
pub fn count_roots_in(poly: &Polynomial, a: f64, b: f64, samples: usize) -> usize {
    let h = (b - a) / samples as f64;
    let mut count = 0;
    let mut prev_sign = 0i8;
    for i in 0..=samples {
        let x = a + i as f64 * h;
        let v = poly.eval(x);
        let s = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if s != 0 {
            if prev_sign != 0 && s != prev_sign {
                count += 1;
            }
            prev_sign = s;
        }
    }
    count
}
