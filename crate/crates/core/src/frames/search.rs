//! Numerical ETF search by projected gradient descent on the unit spheres.
//!
//! Objective over unit vectors `φ_1 … φ_n ∈ C^d`:
//!
//! `J(Φ) = Σ_{i≠j} (|⟨φ_i|φ_j⟩|² − c)² + λ‖ΦΦ† − S·I‖²_F`
//!
//! with `S = n/d` and `c = (n − d)/((n − 1)d)`. After every step the columns
//! are renormalized, which is a retraction onto the product of spheres.
//!
//! Some frames (the qutrit SICs among them) sit at degenerate minima where
//! gradient descent only converges sublinearly. Once the descent residual
//! drops below `refine_from`, or descent ends, a damped Gauss–Newton
//! (Levenberg–Marquardt) phase on the same residuals finishes the job.

use num_complex::Complex;
use rayon::prelude::*;

use super::{etf_parameters, EquiangularTightFrame};
use crate::numerics::{random_ket, seeded_rng, ComplexVector};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    /// Weight of the tightness penalty.
    pub lambda: f64,
    /// Trial step at the start of every iteration; halved until `J` decreases.
    pub initial_step: f64,
    /// A restart succeeds once the largest ETF residual is at most this.
    pub success_tol: f64,
    /// Iteration stops early once the residual reaches this level.
    pub polish_tol: f64,
    pub max_iterations: usize,
    pub restarts: usize,
    /// Residual at which descent hands over to Levenberg–Marquardt refinement.
    pub refine_from: f64,
    /// Refinement iterations; zero disables the refinement phase.
    pub refine_iterations: usize,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            initial_step: 0.1,
            success_tol: 1e-7,
            polish_tol: 1e-13,
            max_iterations: 20_000,
            restarts: 10,
            refine_from: 1e-3,
            refine_iterations: 200,
        }
    }
}

/// Result of a successful search.
#[derive(Debug, Clone)]
pub struct OptimizedFrame<T> {
    pub frame: EquiangularTightFrame<T>,
    /// Index of the restart that produced the frame.
    pub restart: usize,
    pub iterations: usize,
    /// Largest of the norm, equiangularity and tightness residuals.
    pub residual: T,
}

#[derive(Debug, Clone)]
struct RunOutcome<T> {
    vectors: Vec<ComplexVector<T>>,
    residual: T,
    iterations: usize,
}

/// Searches for an `(d, n)` ETF. Restarts are independent, seeded from
/// `(seed, restart index)` and evaluated in parallel; the run with the
/// smallest residual wins, earlier restarts breaking ties.
///
/// Fails with [`Error::NotConverged`] carrying the best residual when no
/// restart reaches `success_tol` (some `(d, n)` admit no ETF).
pub fn optimize_etf<T: Real>(d: usize, n: usize, seed: u64, options: &OptimizeOptions) -> Result<OptimizedFrame<T>> {
    let params = etf_parameters(d, n)?;
    if options.restarts == 0 {
        return Err(Error::Invalid("at least one restart is required"));
    }
    let problem =
        Problem { d, n, s: params.tightness_as::<T>(), c: params.overlap_as::<T>(), lambda: T::lit(options.lambda) };

    let runs: Vec<RunOutcome<T>> =
        (0..options.restarts).into_par_iter().map(|r| problem.descend(restart_seed(seed, r), options)).collect();

    let (restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.residual < a.1.residual { b } else { a })
        .expect("at least one restart");

    if best.residual > T::lit(options.success_tol) {
        return Err(Error::NotConverged { best_residual: best.residual.to_f64_lossy(), restarts: options.restarts });
    }
    let frame = EquiangularTightFrame::with_tol(best.vectors, T::lit(options.success_tol))?;
    Ok(OptimizedFrame { frame, restart, iterations: best.iterations, residual: best.residual })
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    seed ^ (restart as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

struct Problem<T> {
    d: usize,
    n: usize,
    s: T,
    c: T,
    lambda: T,
}

struct Evaluation<T> {
    objective: T,
    residual: T,
}

impl<T: Real> Problem<T> {
    fn descend(&self, seed: u64, options: &OptimizeOptions) -> RunOutcome<T> {
        let mut rng = seeded_rng(seed);
        let mut x: Vec<Vec<Complex<T>>> =
            (0..self.n).map(|_| random_ket::<T, _>(self.d, &mut rng).into_entries()).collect();
        let mut grad = vec![vec![Complex::new(T::zero(), T::zero()); self.d]; self.n];
        let mut trial = x.clone();
        let step0 = T::lit(options.initial_step);
        let polish = T::lit(options.polish_tol);
        let min_step = T::epsilon() * T::epsilon();

        let handoff = T::lit(options.refine_from);
        let refine = options.refine_iterations > 0;
        let mut current = self.evaluate(&x, Some(&mut grad));
        let mut iterations = 0;
        while iterations < options.max_iterations
            && current.residual > polish
            && !(refine && current.residual <= handoff)
        {
            iterations += 1;
            let mut step = step0;
            let accepted = loop {
                for (t, (xi, gi)) in trial.iter_mut().zip(x.iter().zip(&grad)) {
                    for (tk, (xk, gk)) in t.iter_mut().zip(xi.iter().zip(gi)) {
                        *tk = xk - gk.scale(step);
                    }
                    normalize(t);
                }
                let cand = self.evaluate(&trial, None);
                if cand.objective < current.objective {
                    break Some(cand);
                }
                step = step / T::lit(2.0);
                if step < min_step {
                    break None;
                }
            };
            match accepted {
                Some(_) => {
                    std::mem::swap(&mut x, &mut trial);
                    current = self.evaluate(&x, Some(&mut grad));
                }
                // No descent at any representable step: converged to rounding.
                None => break,
            }
        }

        if refine && current.residual > polish {
            let (refined, extra) = self.refine(x.clone(), options.refine_iterations, polish);
            iterations += extra;
            let eval = self.evaluate(&refined, None);
            if eval.residual < current.residual {
                x = refined;
                current = eval;
            }
        }

        let vectors = x.into_iter().map(|v| ComplexVector::new(v).expect("finite iterate")).collect();
        RunOutcome { vectors, residual: current.residual, iterations }
    }

    /// Levenberg–Marquardt on the residual vector of [`Self::residuals`],
    /// in real coordinates `(Re φ_i[k], Im φ_i[k])`, with renormalization
    /// after every accepted step.
    fn refine(&self, mut x: Vec<Vec<Complex<T>>>, max_iterations: usize, polish: T) -> (Vec<Vec<Complex<T>>>, usize) {
        let p = 2 * self.n * self.d;
        let mut mu = T::lit(1e-3);
        let (mut r, mut jac) = self.residuals(&x, true);
        let mut cost: T = r.iter().map(|v| *v * *v).sum();
        let mut iterations = 0;
        while iterations < max_iterations {
            if self.evaluate(&x, None).residual <= polish {
                break;
            }
            iterations += 1;
            let m = r.len();
            // normal equations JᵀJ δ = −Jᵀr
            let mut jtj = vec![T::zero(); p * p];
            let mut jtr = vec![T::zero(); p];
            for row in 0..m {
                let jr = &jac[row * p..(row + 1) * p];
                for a in 0..p {
                    if jr[a] == T::zero() {
                        continue;
                    }
                    jtr[a] = jtr[a] + jr[a] * r[row];
                    for b in a..p {
                        jtj[a * p + b] = jtj[a * p + b] + jr[a] * jr[b];
                    }
                }
            }
            let mut accepted = false;
            while mu < T::lit(1e12) {
                let mut lhs = jtj.clone();
                for a in 0..p {
                    lhs[a * p + a] = lhs[a * p + a] + mu;
                }
                let Some(step) = cholesky_solve(&mut lhs, &jtr, p) else {
                    mu = mu * T::lit(4.0);
                    continue;
                };
                let mut cand = x.clone();
                for (i, v) in cand.iter_mut().enumerate() {
                    for (k, z) in v.iter_mut().enumerate() {
                        let base = 2 * (i * self.d + k);
                        *z = Complex::new(z.re - step[base], z.im - step[base + 1]);
                    }
                    normalize(v);
                }
                let (rc, _) = self.residuals(&cand, false);
                let cand_cost: T = rc.iter().map(|v| *v * *v).sum();
                if cand_cost < cost {
                    x = cand;
                    mu = (mu / T::lit(3.0)).max(T::lit(1e-15));
                    accepted = true;
                    break;
                }
                mu = mu * T::lit(4.0);
            }
            if !accepted {
                break;
            }
            let (rn, jn) = self.residuals(&x, true);
            r = rn;
            jac = jn;
            cost = r.iter().map(|v| *v * *v).sum();
        }
        (x, iterations)
    }

    /// Residuals whose sum of squares is `J/2` (each unordered pair once,
    /// tightness entries weighted by `√λ`), and optionally their Jacobian in
    /// row-major layout with `2nd` real columns.
    fn residuals(&self, x: &[Vec<Complex<T>>], with_jacobian: bool) -> (Vec<T>, Vec<T>) {
        let (d, n) = (self.d, self.n);
        let p = 2 * n * d;
        let pairs = n * (n - 1) / 2;
        let m = pairs + d * d;
        let mut r = Vec::with_capacity(m);
        let mut jac = if with_jacobian { vec![T::zero(); m * p] } else { Vec::new() };
        let two = T::lit(2.0);
        let col = |i: usize, k: usize| 2 * (i * d + k);

        let mut row = 0;
        for i in 0..n {
            for j in i + 1..n {
                let g: Complex<T> = x[i].iter().zip(&x[j]).map(|(a, b)| a.conj() * b).sum();
                r.push(g.norm_sqr() - self.c);
                if with_jacobian {
                    let jr = &mut jac[row * p..(row + 1) * p];
                    let gc = g.conj();
                    for k in 0..d {
                        // ∂|g|²/∂v = 2 Re(ḡ ∂g/∂v)
                        let (xi, xj) = (x[i][k], x[j][k]);
                        jr[col(i, k)] = two * (gc * xj).re;
                        jr[col(i, k) + 1] = two * (gc * xj * Complex::new(T::zero(), -T::one())).re;
                        jr[col(j, k)] = two * (gc * xi.conj()).re;
                        jr[col(j, k) + 1] = two * (gc * xi.conj() * Complex::new(T::zero(), T::one())).re;
                    }
                }
                row += 1;
            }
        }

        let wo = self.lambda.sqrt();
        let w = wo * T::FRAC_1_SQRT_2();
        let i_unit = Complex::new(T::zero(), T::one());
        for a in 0..d {
            for b in a..d {
                let entry: Complex<T> = x.iter().map(|v| v[a] * v[b].conj()).sum();
                // ∂A_ab/∂Re φ_m[k] = δ_ak φ̄_m[b] + φ_m[a] δ_bk,  ∂A_ab/∂Im φ_m[k] = i δ_ak φ̄_m[b] − i φ_m[a] δ_bk
                let derivs = |m_: usize, k: usize| -> (Complex<T>, Complex<T>) {
                    let zero = Complex::new(T::zero(), T::zero());
                    let mut dre = zero;
                    let mut dim = zero;
                    if a == k {
                        dre = dre + x[m_][b].conj();
                        dim = dim + i_unit * x[m_][b].conj();
                    }
                    if b == k {
                        dre = dre + x[m_][a];
                        dim = dim - i_unit * x[m_][a];
                    }
                    (dre, dim)
                };
                if a == b {
                    r.push(w * (entry.re - self.s));
                    if with_jacobian {
                        let jr = &mut jac[row * p..(row + 1) * p];
                        for m_ in 0..n {
                            let (dre, dim) = derivs(m_, a);
                            jr[col(m_, a)] = w * dre.re;
                            jr[col(m_, a) + 1] = w * dim.re;
                        }
                    }
                    row += 1;
                } else {
                    r.push(wo * entry.re);
                    r.push(wo * entry.im);
                    if with_jacobian {
                        for m_ in 0..n {
                            for k in [a, b] {
                                let (dre, dim) = derivs(m_, k);
                                jac[row * p + col(m_, k)] = wo * dre.re;
                                jac[row * p + col(m_, k) + 1] = wo * dim.re;
                                jac[(row + 1) * p + col(m_, k)] = wo * dre.im;
                                jac[(row + 1) * p + col(m_, k) + 1] = wo * dim.im;
                            }
                        }
                    }
                    row += 2;
                }
            }
        }
        (r, jac)
    }

    /// Objective, max residual and (optionally) `∂J/∂φ_i^*` for each vector.
    fn evaluate(&self, x: &[Vec<Complex<T>>], grad: Option<&mut Vec<Vec<Complex<T>>>>) -> Evaluation<T> {
        let (d, n) = (self.d, self.n);
        let zero = Complex::new(T::zero(), T::zero());
        let mut gram = vec![zero; n * n];
        for i in 0..n {
            for j in i..n {
                let g: Complex<T> = x[i].iter().zip(&x[j]).map(|(a, b)| a.conj() * b).sum();
                gram[i * n + j] = g;
                gram[j * n + i] = g.conj();
            }
        }
        // A = ΦΦ† − S·I
        let mut a = vec![zero; d * d];
        for v in x {
            for r in 0..d {
                for s in 0..d {
                    a[r * d + s] = a[r * d + s] + v[r] * v[s].conj();
                }
            }
        }
        for r in 0..d {
            a[r * d + r].re = a[r * d + r].re - self.s;
        }

        let mut equi = T::zero();
        let mut j1 = T::zero();
        let mut norm_res = T::zero();
        for i in 0..n {
            norm_res = norm_res.max((gram[i * n + i].re.sqrt() - T::one()).abs());
            for j in 0..n {
                if i != j {
                    let dev = gram[i * n + j].norm_sqr() - self.c;
                    j1 = j1 + dev * dev;
                    equi = equi.max(dev.abs());
                }
            }
        }
        let j2: T = a.iter().map(|z| z.norm_sqr()).sum();
        let tight = a.iter().map(|z| z.norm()).fold(T::zero(), T::max);

        if let Some(grad) = grad {
            let four = T::lit(4.0);
            let two_lambda = self.lambda + self.lambda;
            for i in 0..n {
                let gi = &mut grad[i];
                gi.iter_mut().for_each(|z| *z = zero);
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let g_ji = gram[j * n + i];
                    let coef = g_ji.scale(four * (gram[i * n + j].norm_sqr() - self.c));
                    for (gk, xk) in gi.iter_mut().zip(&x[j]) {
                        *gk = *gk + coef * xk;
                    }
                }
                for r in 0..d {
                    let av: Complex<T> = (0..d).map(|s| a[r * d + s] * x[i][s]).sum();
                    gi[r] = gi[r] + av.scale(two_lambda);
                }
            }
        }

        Evaluation { objective: j1 + self.lambda * j2, residual: equi.max(tight).max(norm_res) }
    }
}

/// Solves `A y = b` for symmetric positive-definite `A` given by its upper
/// triangle (overwritten). `None` if `A` is not numerically positive definite.
fn cholesky_solve<T: Real>(a: &mut [T], b: &[T], p: usize) -> Option<Vec<T>> {
    // upper triangle → lower factor L stored in the lower triangle
    for j in 0..p {
        let mut diag = a[j * p + j];
        for k in 0..j {
            diag = diag - a[j * p + k] * a[j * p + k];
        }
        if !(diag > T::zero()) {
            return None;
        }
        let ljj = diag.sqrt();
        a[j * p + j] = ljj;
        for i in j + 1..p {
            let mut v = a[j * p + i];
            for k in 0..j {
                v = v - a[i * p + k] * a[j * p + k];
            }
            a[i * p + j] = v / ljj;
        }
    }
    let mut y = b.to_vec();
    for i in 0..p {
        for k in 0..i {
            y[i] = y[i] - a[i * p + k] * y[k];
        }
        y[i] = y[i] / a[i * p + i];
    }
    for i in (0..p).rev() {
        for k in i + 1..p {
            y[i] = y[i] - a[k * p + i] * y[k];
        }
        y[i] = y[i] / a[i * p + i];
    }
    Some(y)
}

fn normalize<T: Real>(v: &mut [Complex<T>]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    v.iter_mut().for_each(|z| *z = z.unscale(norm));
}
