//! Independent numerical machinery: uniform grids, symmetric tridiagonal
//! Hamiltonians with Dirichlet boundaries, Sturm-sequence eigenvalue
//! bisection, adaptive Gauss-Legendre quadrature and Richardson-extrapolated
//! finite differences.
//!
//! Everything here is deliberately self-contained so it can act as an oracle
//! for the closed-form results of the other modules.

use crate::{Error, Result};

/// Uniform grid on (a, b) with `n_interior` interior points and implicit
/// Dirichlet endpoints. Point i (0-based) sits at a + (i+1) h.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub n_interior: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(a: f64, b: f64, n_interior: usize) -> Result<Self> {
        if !(a < b) {
            return Err(Error::domain(format!(
                "grid requires a < b, got [{a}, {b}]"
            )));
        }
        if n_interior == 0 {
            return Err(Error::domain("grid requires at least one interior point"));
        }
        let h = (b - a) / (n_interior as f64 + 1.0);
        Ok(Self {
            a,
            b,
            n_interior,
            h,
        })
    }

    pub fn point(&self, i: usize) -> f64 {
        self.a + (i as f64 + 1.0) * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_interior).map(move |i| self.point(i))
    }
}

/// Symmetric tridiagonal matrix stored as diagonal plus off-diagonal.
#[derive(Debug, Clone)]
pub struct TridiagonalMatrix {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::domain(
                "tridiagonal matrix needs n diagonal and n-1 off-diagonal entries",
            ));
        }
        if diag.iter().chain(offdiag.iter()).any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite entry in tridiagonal matrix"));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }
}

/// Discretize -d^2/dx^2 + V with the 3-point stencil and Dirichlet ends.
pub fn build_hamiltonian(potential: &dyn Fn(f64) -> f64, grid: &Grid) -> Result<TridiagonalMatrix> {
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let mut diag = Vec::with_capacity(grid.n_interior);
    for i in 0..grid.n_interior {
        let x = grid.point(i);
        let v = potential(x);
        if !v.is_finite() {
            return Err(Error::domain(format!(
                "potential is not finite at grid point x = {x}"
            )));
        }
        diag.push(2.0 * inv_h2 + v);
    }
    let offdiag = vec![-inv_h2; grid.n_interior - 1];
    TridiagonalMatrix::new(diag, offdiag)
}

/// Number of eigenvalues strictly below `lambda`, from the sign count of the
/// LDL^T pivots (Sturm sequence).
pub fn sturm_count(m: &TridiagonalMatrix, lambda: f64) -> usize {
    let mut count = 0;
    let mut q = m.diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..m.n() {
        let guard = 1e-300;
        let q_safe = if q.abs() < guard {
            if q >= 0.0 {
                guard
            } else {
                -guard
            }
        } else {
            q
        };
        let e = m.offdiag[i - 1];
        q = (m.diag[i] - lambda) - e * e / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The k smallest eigenvalues, ascending, by Sturm-count bisection inside
/// Gershgorin bounds. Absolute tolerance 1e-10 * max(1, |lambda|).
pub fn eigen_lowest(m: &TridiagonalMatrix, k: usize) -> Result<Vec<f64>> {
    let n = m.n();
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "requested {k} eigenvalues of a {n} x {n} matrix"
        )));
    }
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for i in 0..n {
        let left = if i > 0 { m.offdiag[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { m.offdiag[i].abs() } else { 0.0 };
        lo = lo.min(m.diag[i] - left - right);
        hi = hi.max(m.diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;

    let mut out = Vec::with_capacity(k);
    let mut lower = lo;
    for j in 0..k {
        let (mut a, mut b) = (lower, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= 1e-10 * mid.abs().max(1.0) {
                break;
            }
            if sturm_count(m, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
        // the next eigenvalue cannot lie below this bracket
        lower = a;
    }
    Ok(out)
}

/// k lowest eigenvalues of -d^2/dx^2 + V on (a, b) with Dirichlet ends.
///
/// With `refine`, solves on `n_interior` and `2 n_interior + 1` points (exact
/// spacing halving) and Richardson-extrapolates E = (4 E_{h/2} - E_h) / 3.
pub fn solve_spectrum(
    potential: &dyn Fn(f64) -> f64,
    domain: (f64, f64),
    k: usize,
    n_interior: usize,
    refine: bool,
) -> Result<Vec<f64>> {
    let coarse = {
        let grid = Grid::new(domain.0, domain.1, n_interior)?;
        let m = build_hamiltonian(potential, &grid)?;
        eigen_lowest(&m, k)?
    };
    if !refine {
        return Ok(coarse);
    }
    let fine = {
        let grid = Grid::new(domain.0, domain.1, 2 * n_interior + 1)?;
        let m = build_hamiltonian(potential, &grid)?;
        eigen_lowest(&m, k)?
    };
    Ok(coarse
        .iter()
        .zip(fine.iter())
        .map(|(eh, eh2)| (4.0 * eh2 - eh) / 3.0)
        .collect())
}

// 16-point Gauss-Legendre rule on [-1, 1], positive half.
#[allow(clippy::excessive_precision)]
const GL_NODES: [f64; 8] = [
    0.095_012_509_837_637_440_185,
    0.281_603_550_779_258_913_230,
    0.458_016_777_657_227_386_342,
    0.617_876_244_402_643_748_447,
    0.755_404_408_355_003_033_895,
    0.865_631_202_387_831_743_880,
    0.944_575_023_073_232_576_078,
    0.989_400_934_991_649_932_596,
];
#[allow(clippy::excessive_precision)]
const GL_WEIGHTS: [f64; 8] = [
    0.189_450_610_455_068_496_285,
    0.182_603_415_044_923_588_867,
    0.169_156_519_395_002_538_189,
    0.149_595_988_816_576_732_081,
    0.124_628_971_255_533_872_052,
    0.095_158_511_682_492_784_810,
    0.062_253_523_938_647_892_863,
    0.027_152_459_411_754_094_852,
];

fn gl16(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut sum = 0.0;
    for i in 0..8 {
        sum += GL_WEIGHTS[i] * (f(c + hw * GL_NODES[i]) + f(c - hw * GL_NODES[i]));
    }
    hw * sum
}

// Deep enough for fractional-power endpoint singularities, whose panel error
// decays only algebraically; recursion concentrates on the singular chain.
const QUAD_MAX_DEPTH: u32 = 44;

fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    abs_budget: f64,
    depth: u32,
    converged: &mut bool,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = gl16(f, a, mid);
    let right = gl16(f, mid, b);
    let sum = left + right;
    let diff = (sum - whole).abs();
    if diff <= 1e-12 * (left.abs() + right.abs()) + abs_budget {
        return sum;
    }
    if depth >= QUAD_MAX_DEPTH {
        *converged = false;
        return sum;
    }
    // the absolute floor stays fixed per panel so integrable endpoint
    // singularities terminate; their panel estimates decay faster than it
    adapt(f, a, mid, left, abs_budget, depth + 1, converged)
        + adapt(f, mid, b, right, abs_budget, depth + 1, converged)
}

/// Adaptive composite 16-point Gauss-Legendre quadrature, panels halved until
/// successive estimates agree to 1e-12 relative (with a small absolute floor
/// scaled by the integral of |f|). Endpoints are never evaluated.
pub fn quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return quad(f, b, a).map(|v| -v);
    }
    let whole = gl16(f, a, b);
    // crude |f| mass to anchor the absolute part of the tolerance
    let abs_mass = {
        let g = |x: f64| f(x).abs();
        let mut mass = 0.0;
        for i in 0..8 {
            let lo = a + (b - a) * i as f64 / 8.0;
            let hi = a + (b - a) * (i + 1) as f64 / 8.0;
            mass += gl16(&g, lo, hi);
        }
        mass
    };
    let abs_budget = 1e-14 * abs_mass.max(f64::MIN_POSITIVE);
    let mut converged = true;
    let value = adapt(f, a, b, whole, abs_budget, 0, &mut converged);
    if converged {
        Ok(value)
    } else {
        Err(Error::numeric("quadrature did not converge", value))
    }
}

/// Composite Simpson on equally spaced samples. Falls back to the trapezoid
/// rule on the final interval when the sample count is even.
pub fn simpson_uniform(values: &[f64], h: f64) -> Result<f64> {
    let n = values.len();
    if n < 2 || h <= 0.0 {
        return Err(Error::domain(
            "simpson_uniform needs >= 2 samples and h > 0",
        ));
    }
    if n == 2 {
        return Ok(0.5 * h * (values[0] + values[1]));
    }
    let odd_count = if n % 2 == 1 { n } else { n - 1 };
    let mut sum = values[0] + values[odd_count - 1];
    for (i, v) in values[1..odd_count - 1].iter().enumerate() {
        sum += if i % 2 == 0 { 4.0 * v } else { 2.0 * v };
    }
    let mut total = sum * h / 3.0;
    if n.is_multiple_of(2) {
        total += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    Ok(total)
}

fn central(f: &dyn Fn(f64) -> f64, x: f64, h: f64, order: u8) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => {
            (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
        }
        _ => panic!("fd_derivative supports orders 1..=3"),
    }
}

/// Derivative of order 1, 2 or 3 by central differences with Richardson
/// extrapolation. The smallest step is h0 = eps^(1/(order+2)) (1 + |x|); the
/// tableau works downward from 8 h0 and returns the entry with the best
/// internal agreement.
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, x: f64, order: u8) -> f64 {
    assert!(
        (1..=3).contains(&order),
        "fd_derivative supports orders 1..=3"
    );
    let h0 = f64::EPSILON.powf(1.0 / (order as f64 + 2.0)) * (1.0 + x.abs());
    const LEVELS: usize = 4;
    let mut tab = [[0.0f64; LEVELS]; LEVELS];
    for (i, row) in tab.iter_mut().enumerate() {
        let h = h0 * (1u32 << (LEVELS - 1 - i)) as f64;
        row[0] = central(f, x, h, order);
    }
    let mut best = tab[LEVELS - 1][0];
    let mut best_err = f64::INFINITY;
    for j in 1..LEVELS {
        let factor = 4.0f64.powi(j as i32);
        for i in j..LEVELS {
            tab[i][j] = (factor * tab[i][j - 1] - tab[i - 1][j - 1]) / (factor - 1.0);
            let err = (tab[i][j] - tab[i][j - 1]).abs() + (tab[i][j] - tab[i - 1][j - 1]).abs();
            if err < best_err {
                best_err = err;
                best = tab[i][j];
            }
        }
    }
    best
}
