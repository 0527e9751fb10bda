//! Orthogonal polynomial families from three-term recurrences.
//!
//! A [`RecurrenceSystem`] stores the finite coefficient tables of
//!
//! ```text
//! gamma[l-1] P_{l-1} + alpha[l] P_l + beta[l] P_{l+1} = lambda rho[l] P_l,
//! P_{-1} = 0,  P_0 = 1,
//! ```
//!
//! together with the boundary parameter `eta` that defines the perturbed top
//! polynomial `Ptilde_{q+1} = P_{q+1} - eta P_q`. From the tables we derive the
//! orthonormalization weights, the self-adjoint weights, leading coefficients,
//! the Christoffel-Darboux kernel, and a Gauss rule for the underlying measure.

use crate::error::{Error, Result};
use crate::real::{real, real_usize, Real};
use crate::tolerances as tol;
use crate::tridiag;

/// Built-in families with analytic coefficient generators.
///
/// Generators make quadrature of any order available; custom tabulated
/// systems are capped by their stored grid size instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Chebyshev polynomials of the first kind, `T_l(1) = 1`.
    ChebyshevT,
    /// Chebyshev polynomials of the second kind, classical normalization `U_l(1) = l + 1`.
    ChebyshevU,
    /// Legendre polynomials, `P_l(1) = 1`.
    Legendre,
    /// Jacobi polynomials with exponents `(a, b)`, both `> -1`. With
    /// `normalized` set the family is rescaled so every polynomial equals one
    /// at `t = 1`.
    Jacobi { a: f64, b: f64, normalized: bool },
}

impl Family {
    /// Is every polynomial of the family equal to one at `t = 1`?
    pub fn is_normalized(&self) -> bool {
        match self {
            Family::ChebyshevT | Family::Legendre => true,
            Family::ChebyshevU => false,
            Family::Jacobi { a, normalized, .. } => *normalized || *a == 0.0,
        }
    }

    /// The orthogonality measure is even on `[-1, 1]`.
    pub fn even_measure(&self) -> bool {
        match self {
            Family::ChebyshevT | Family::ChebyshevU | Family::Legendre => true,
            Family::Jacobi { a, b, .. } => a == b,
        }
    }

    /// Row `l` of the coefficient tables: `(alpha_l, beta_l, gamma_{l-1}, rho_l)`.
    ///
    /// `gamma_{-1}` is never used by the recurrence; row 0 reports zero there.
    fn row<R: Real>(&self, l: usize) -> Result<(R, R, R, R)> {
        let lf: R = real_usize(l);
        let one = R::one();
        let half = real::<R>(0.5);
        match *self {
            Family::ChebyshevT => {
                let beta = if l == 0 { one } else { half };
                Ok((R::zero(), beta, half, one))
            }
            Family::ChebyshevU => Ok((R::zero(), half, half, one)),
            Family::Legendre => {
                // (2l+1) x P_l = l P_{l-1} + (l+1) P_{l+1}
                let beta = lf + one;
                let gamma_prev = lf;
                let rho = lf + lf + one;
                Ok((R::zero(), beta, gamma_prev, rho))
            }
            Family::Jacobi { a, b, normalized } => {
                if a <= -1.0 || b <= -1.0 {
                    return Err(Error::InvalidSystem(format!(
                        "jacobi exponents must exceed -1, got ({a}, {b})"
                    )));
                }
                let (alpha, mut beta, mut gamma_prev) = jacobi_row::<R>(a, b, l);
                if normalized {
                    // Rescale by P_l(1) = binom(l + a, l): consecutive ratio (l + a + 1)/(l + 1).
                    let af = real::<R>(a);
                    beta = beta * (lf + af + one) / (lf + one);
                    if l > 0 {
                        gamma_prev = gamma_prev * lf / (lf + af);
                    }
                }
                Ok((alpha, beta, gamma_prev, one))
            }
        }
    }

    /// Materialize the coefficient tables for grid size `q`.
    pub fn system<R: Real>(&self, q: usize, eta: R) -> Result<RecurrenceSystem<R>> {
        let mut alpha = Vec::with_capacity(q + 1);
        let mut beta = Vec::with_capacity(q + 1);
        let mut gamma = Vec::with_capacity(q);
        let mut rho = Vec::with_capacity(q + 1);
        for l in 0..=q {
            let (a, b, g, r) = self.row::<R>(l)?;
            alpha.push(a);
            beta.push(b);
            rho.push(r);
            if l > 0 {
                gamma.push(g);
            }
        }
        let mut sys = RecurrenceSystem::new(q, alpha, beta, gamma, rho, eta)?;
        sys.family = Some(*self);
        Ok(sys)
    }
}

/// Classical Jacobi recurrence in the `rho = 1` form (DLMF 18.9.2 rearranged).
fn jacobi_row<R: Real>(a: f64, b: f64, l: usize) -> (R, R, R) {
    let one = R::one();
    let two = real::<R>(2.0);
    let af = real::<R>(a);
    let bf = real::<R>(b);
    if l == 0 {
        // P_1 = ((a + b + 2) x + (a - b)) / 2
        let a0 = af + bf + two;
        let beta = two / a0;
        let alpha = -(af - bf) / a0;
        return (alpha, beta, R::zero());
    }
    let lf: R = real_usize(l);
    let s = two * lf + af + bf;
    let coef_a = (s + one) * (s + two) / (two * (lf + one) * (lf + af + bf + one));
    let coef_b = (af * af - bf * bf) * (s + one) / (two * (lf + one) * (lf + af + bf + one) * s);
    let coef_c = (lf + af) * (lf + bf) * (s + two) / ((lf + one) * (lf + af + bf + one) * s);
    // x P_l = (1/A) P_{l+1} - (B/A) P_l + (C/A) P_{l-1}
    (-coef_b / coef_a, one / coef_a, coef_c / coef_a)
}

/// Finite recurrence coefficient tables on the grid `[0, q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceSystem<R> {
    q: usize,
    alpha: Vec<R>,
    beta: Vec<R>,
    gamma: Vec<R>,
    rho: Vec<R>,
    eta: R,
    family: Option<Family>,
}

impl<R: Real> RecurrenceSystem<R> {
    /// Validate lengths, strict positivity of `beta`, `gamma`, `rho`, and finiteness.
    pub fn new(
        q: usize,
        alpha: Vec<R>,
        beta: Vec<R>,
        gamma: Vec<R>,
        rho: Vec<R>,
        eta: R,
    ) -> Result<Self> {
        let check_len = |name: &'static str, got: usize, expected: usize| {
            if got == expected {
                Ok(())
            } else {
                Err(Error::LengthMismatch {
                    name,
                    got,
                    expected,
                })
            }
        };
        check_len("alpha", alpha.len(), q + 1)?;
        check_len("beta", beta.len(), q + 1)?;
        check_len("gamma", gamma.len(), q)?;
        check_len("rho", rho.len(), q + 1)?;
        if !eta.is_finite() {
            return Err(Error::InvalidSystem("eta must be finite".into()));
        }
        for (name, seq) in [("beta", &beta), ("gamma", &gamma), ("rho", &rho)] {
            if let Some(i) = seq.iter().position(|v| !(*v > R::zero()) || !v.is_finite()) {
                return Err(Error::InvalidSystem(format!(
                    "{name}[{i}] must be a positive finite real"
                )));
            }
        }
        if let Some(i) = alpha.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSystem(format!("alpha[{i}] must be finite")));
        }
        Ok(Self {
            q,
            alpha,
            beta,
            gamma,
            rho,
            eta,
            family: None,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn eta(&self) -> R {
        self.eta
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn alpha(&self) -> &[R] {
        &self.alpha
    }

    pub fn beta(&self) -> &[R] {
        &self.beta
    }

    pub fn gamma(&self) -> &[R] {
        &self.gamma
    }

    pub fn rho(&self) -> &[R] {
        &self.rho
    }

    /// Same tables with a different boundary parameter.
    pub fn with_eta(&self, eta: R) -> Self {
        let mut out = self.clone();
        out.eta = eta;
        out
    }

    /// Regenerate the tables at a larger grid size (family-backed systems only).
    pub fn extended(&self, q: usize) -> Result<Self> {
        if q <= self.q {
            return Ok(self.clone());
        }
        match self.family {
            Some(f) => f.system(q, self.eta),
            None => Err(Error::InsufficientRecurrenceData {
                requested: q + 1,
                available: self.q + 1,
            }),
        }
    }

    /// Forward recurrence: `P_0(lambda), ..., P_{l_max}(lambda)`.
    ///
    /// Degree `q + 1` is the highest the tables support (the recurrence at
    /// `l = q` consumes `beta[q]` and `gamma[q-1]`).
    pub fn eval_polys(&self, l_max: usize, lambda: R) -> Result<Vec<R>> {
        if l_max > self.q + 1 {
            return Err(Error::OutOfRange {
                value: l_max,
                min: 0,
                max: self.q + 1,
            });
        }
        let mut out = Vec::with_capacity(l_max + 1);
        out.push(R::one());
        if l_max == 0 {
            return Ok(out);
        }
        let mut prev = R::zero(); // P_{-1}
        let mut cur = R::one(); // P_0
        for l in 0..l_max {
            let mut next = (lambda * self.rho[l] - self.alpha[l]) * cur / self.beta[l];
            if l > 0 {
                next = next - self.gamma[l - 1] * prev / self.beta[l];
            }
            prev = cur;
            cur = next;
            out.push(cur);
        }
        Ok(out)
    }

    /// The perturbed top polynomial `P_{q+1}(lambda) - eta P_q(lambda)`.
    pub fn eval_ptilde(&self, lambda: R) -> R {
        let p = self
            .eval_polys(self.q + 1, lambda)
            .expect("q + 1 is always in range");
        p[self.q + 1] - self.eta * p[self.q]
    }

    /// Orthonormalization weights, self-adjoint weights, leading coefficients,
    /// and monic (Favard) coefficients, all from running ratios.
    pub fn derive_weights(&self) -> Result<DerivedWeights<R>> {
        let q = self.q;
        let mut d = Vec::with_capacity(q + 1);
        d.push(self.rho[0]);
        let mut ratio = R::one();
        for l in 1..=q {
            ratio = ratio * self.beta[l - 1] / self.gamma[l - 1];
            let value = self.rho[l] * ratio;
            if !value.is_finite() || !(value > R::zero()) {
                return Err(Error::ProductOverflow { index: l });
            }
            d.push(value);
        }
        let w: Vec<R> = (0..=q).map(|l| self.beta[l] * d[l] / self.rho[l]).collect();
        // gamma[-1] is arbitrary in the recurrence; c_0 adopts gamma[-1] = 0.
        let c: Vec<R> = (0..=q)
            .map(|l| {
                let gamma_prev = if l == 0 { R::zero() } else { self.gamma[l - 1] };
                (self.alpha[l] + self.beta[l] + gamma_prev) * d[l] / self.rho[l]
            })
            .collect();
        let mut k = Vec::with_capacity(q + 1);
        k.push(R::one());
        for l in 1..=q {
            let value = k[l - 1] * self.rho[l - 1] / self.beta[l - 1];
            if !value.is_finite() || !(value > R::zero()) {
                return Err(Error::ProductOverflow { index: l });
            }
            k.push(value);
        }
        let monic_a: Vec<R> = (0..=q).map(|l| self.alpha[l] / self.rho[l]).collect();
        let mut monic_b = Vec::with_capacity(q + 1);
        // B_0 is free in Favard's construction; 1/rho_0 fixes total mass 1/rho_0.
        monic_b.push(R::one() / self.rho[0]);
        for l in 1..=q {
            monic_b.push(self.gamma[l - 1] * self.beta[l - 1] / (self.rho[l - 1] * self.rho[l]));
        }
        Ok(DerivedWeights {
            d,
            w,
            c,
            k,
            monic_a,
            monic_b,
        })
    }

    /// Christoffel-Darboux kernel `sum_{s<=l} d_s P_s(x) P_s(y)`.
    ///
    /// Near the diagonal the direct sum is used; elsewhere the closed form
    /// `w_l (P_{l+1}(x) P_l(y) - P_l(x) P_{l+1}(y)) / (x - y)`.
    pub fn cd_kernel(&self, l: usize, x: R, y: R) -> Result<R> {
        if l > self.q {
            return Err(Error::OutOfRange {
                value: l,
                min: 0,
                max: self.q,
            });
        }
        let switch = real::<R>(tol::CD_SWITCH) * (R::one() + x.abs());
        if (x - y).abs() < switch {
            Ok(self.cd_kernel_sum(l, x, y)?)
        } else {
            let weights = self.derive_weights()?;
            let px = self.eval_polys(l + 1, x)?;
            let py = self.eval_polys(l + 1, y)?;
            Ok(weights.w[l] * (px[l + 1] * py[l] - px[l] * py[l + 1]) / (x - y))
        }
    }

    /// Direct-sum evaluation of the kernel (no branch switch).
    pub fn cd_kernel_sum(&self, l: usize, x: R, y: R) -> Result<R> {
        if l > self.q {
            return Err(Error::OutOfRange {
                value: l,
                min: 0,
                max: self.q,
            });
        }
        let weights = self.derive_weights()?;
        let px = self.eval_polys(l, x)?;
        let py = self.eval_polys(l, y)?;
        let mut acc = R::zero();
        for s in 0..=l {
            acc = acc + weights.d[s] * px[s] * py[s];
        }
        Ok(acc)
    }

    /// Symmetrized tridiagonal matrix of the leading `size` rows.
    ///
    /// Dividing the generalized problem by `rho` and conjugating by a positive
    /// diagonal gives diagonal `alpha_l / rho_l` and off-diagonal
    /// `sqrt(gamma_l beta_l / (rho_l rho_{l+1}))`. When `boundary_eta` is set
    /// (only meaningful at `size = q + 1`) the last diagonal entry becomes
    /// `(alpha_q + eta beta_q) / rho_q`.
    pub(crate) fn symmetric_tridiagonal(
        &self,
        size: usize,
        boundary_eta: Option<R>,
    ) -> (Vec<R>, Vec<R>) {
        debug_assert!(size >= 1 && size <= self.q + 1);
        let mut diag: Vec<R> = (0..size).map(|l| self.alpha[l] / self.rho[l]).collect();
        if let Some(eta) = boundary_eta {
            let last = size - 1;
            diag[last] = (self.alpha[last] + eta * self.beta[last]) / self.rho[last];
        }
        let off: Vec<R> = (0..size.saturating_sub(1))
            .map(|l| (self.gamma[l] * self.beta[l] / (self.rho[l] * self.rho[l + 1])).sqrt())
            .collect();
        (diag, off)
    }

    /// Zeros of `P_n`, ascending (`1 <= n <= q + 1`).
    pub fn poly_zeros(&self, n: usize) -> Result<Vec<R>> {
        if n == 0 || n > self.q + 1 {
            return Err(Error::OutOfRange {
                value: n,
                min: 1,
                max: self.q + 1,
            });
        }
        let (diag, off) = self.symmetric_tridiagonal(n, None);
        Ok(tridiag::eigenvalues(&diag, &off))
    }

    /// Gauss rule for the Favard measure, with total mass `1 / rho_0`.
    ///
    /// Nodes are the zeros of `P_{n_nodes}`; the weight at a node is the
    /// reciprocal of the diagonal kernel, which fixes `d_0 * mass = 1`.
    pub fn gauss_quadrature(&self, n_nodes: usize) -> Result<Quadrature<R>> {
        if n_nodes == 0 {
            return Err(Error::OutOfRange {
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        let base;
        let sys = if n_nodes <= self.q + 1 {
            self
        } else {
            base = self.extended(n_nodes - 1)?;
            &base
        };
        let nodes = sys.poly_zeros(n_nodes)?;
        let weights = sys.derive_weights()?;
        let mut wts = Vec::with_capacity(n_nodes);
        for &x in &nodes {
            let p = sys.eval_polys(n_nodes.saturating_sub(1), x)?;
            let mut kernel = R::zero();
            for (&d, &value) in weights.d.iter().zip(&p) {
                kernel = kernel + d * value * value;
            }
            wts.push(R::one() / kernel);
        }
        Quadrature::new(nodes, wts, 2 * n_nodes - 1)
    }

    /// Monomial coefficient rows for `P_0 .. P_{l_max}`.
    pub fn monomial_table(&self, l_max: usize) -> Result<Vec<Vec<R>>> {
        if l_max > self.q + 1 {
            return Err(Error::OutOfRange {
                value: l_max,
                min: 0,
                max: self.q + 1,
            });
        }
        let mut rows: Vec<Vec<R>> = Vec::with_capacity(l_max + 1);
        rows.push(vec![R::one()]);
        for l in 0..l_max {
            let cur = &rows[l];
            let mut next = vec![R::zero(); l + 2];
            for (i, &ci) in cur.iter().enumerate() {
                next[i + 1] = next[i + 1] + self.rho[l] * ci / self.beta[l];
                next[i] = next[i] - self.alpha[l] * ci / self.beta[l];
            }
            if l > 0 {
                for (i, &ci) in rows[l - 1].iter().enumerate() {
                    next[i] = next[i] - self.gamma[l - 1] * ci / self.beta[l];
                }
            }
            rows.push(next);
        }
        Ok(rows)
    }

    /// Monomial coefficients of `Ptilde_{q+1}`.
    pub fn ptilde_monomial(&self) -> Vec<R> {
        let rows = self
            .monomial_table(self.q + 1)
            .expect("q + 1 is always in range");
        let mut out = rows[self.q + 1].clone();
        for (i, &c) in rows[self.q].iter().enumerate() {
            out[i] = out[i] - self.eta * c;
        }
        out
    }

    /// Finite-window diagnostic for the monic coefficient sequences: the pair
    /// `(max |A_l|, max B_l)` whose boundedness governs compact support.
    pub fn support_diagnostic(&self) -> Result<(R, R)> {
        let weights = self.derive_weights()?;
        let a = weights
            .monic_a
            .iter()
            .map(|v| v.abs())
            .fold(R::zero(), R::max);
        let b = weights.monic_b[1..]
            .iter()
            .cloned()
            .fold(R::zero(), R::max);
        Ok((a, b))
    }
}

/// Weights and coefficients derived from a recurrence table.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedWeights<R> {
    /// Orthonormalization weights: `d_0 = rho_0`, `d_l = rho_l prod beta_i / gamma_i`.
    pub d: Vec<R>,
    /// Self-adjoint weights `w_l = beta_l d_l / rho_l`.
    pub w: Vec<R>,
    /// Self-adjoint potential `c_l = (alpha_l + beta_l + gamma_{l-1}) d_l / rho_l`
    /// (with the `gamma_{-1} = 0` convention in slot 0).
    pub c: Vec<R>,
    /// Leading coefficients `k_0 = 1`, `k_l = prod rho_i / beta_i`.
    pub k: Vec<R>,
    /// Monic recurrence diagonal `A_l = alpha_l / rho_l`.
    pub monic_a: Vec<R>,
    /// Monic recurrence products `B_l = gamma_{l-1} beta_{l-1} / (rho_{l-1} rho_l)`;
    /// slot 0 holds the free `B_0 = 1 / rho_0` fixing the measure mass.
    pub monic_b: Vec<R>,
}

impl<R: Real> DerivedWeights<R> {
    /// Extend the leading-coefficient sequence one step past the table.
    pub fn k_next(&self, sys: &RecurrenceSystem<R>) -> R {
        let q = sys.q();
        self.k[q] * sys.rho()[q] / sys.beta()[q]
    }
}

/// A Gauss rule realizing the Favard measure.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature<R> {
    nodes: Vec<R>,
    weights: Vec<R>,
    degree_exact: usize,
}

impl<R: Real> Quadrature<R> {
    fn new(nodes: Vec<R>, weights: Vec<R>, degree_exact: usize) -> Result<Self> {
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidSystem(
                "quadrature nodes must be strictly increasing".into(),
            ));
        }
        if weights.iter().any(|w| !(*w > R::zero())) {
            return Err(Error::InvalidSystem(
                "quadrature weights must be positive".into(),
            ));
        }
        Ok(Self {
            nodes,
            weights,
            degree_exact,
        })
    }

    pub fn nodes(&self) -> &[R] {
        &self.nodes
    }

    pub fn weights(&self) -> &[R] {
        &self.weights
    }

    pub fn degree_exact(&self) -> usize {
        self.degree_exact
    }

    /// `integral f dmu` by the rule.
    pub fn integrate<F: Fn(R) -> R>(&self, f: F) -> R {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(R::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chebyshev_t(q: usize, eta: f64) -> RecurrenceSystem<f64> {
        Family::ChebyshevT.system(q, eta).unwrap()
    }

    fn family64(f: Family, q: usize) -> RecurrenceSystem<f64> {
        f.system(q, 0.0).unwrap()
    }

    #[test]
    fn chebyshev_t_weights() {
        // d = (1, 2, 2, ...) and w_1 = 1 by hand evaluation of the products.
        let sys = chebyshev_t(4, 0.0);
        let w = sys.derive_weights().unwrap();
        assert_eq!(w.d[0], 1.0);
        for l in 1..=4 {
            assert!((w.d[l] - 2.0).abs() < 1e-15);
        }
        assert!((w.w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn d0_is_rho0() {
        let sys = RecurrenceSystem::new(
            1,
            vec![0.3, -0.2],
            vec![1.5, 0.7],
            vec![0.9],
            vec![2.5, 1.1],
            0.0,
        )
        .unwrap();
        assert_eq!(sys.derive_weights().unwrap().d[0], 2.5);
    }

    #[test]
    fn eval_polys_matches_cosine_closed_form() {
        let sys = chebyshev_t(4, 0.0);
        let p = sys.eval_polys(2, 0.25).unwrap();
        assert_eq!(p[0], 1.0);
        assert!((p[1] - 0.25).abs() < 1e-15);
        assert!((p[2] + 0.875).abs() < 1e-15);
        // T_l(1) = 1 for every degree.
        let ones = sys.eval_polys(5, 1.0).unwrap();
        for v in ones {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eval_polys_degenerate_and_range() {
        let sys = chebyshev_t(2, 0.0);
        assert_eq!(sys.eval_polys(0, 0.7).unwrap(), vec![1.0]);
        assert!(sys.eval_polys(4, 0.7).is_err());
    }

    #[test]
    fn ptilde_zero_at_t2_root() {
        let sys = chebyshev_t(1, 0.0);
        let root = (2.0f64).sqrt() / 2.0;
        assert!(sys.eval_ptilde(root).abs() < 1e-15);
        // eta = 1: T_2(1) - T_1(1) = 0
        let sys = chebyshev_t(1, 1.0);
        assert!(sys.eval_ptilde(1.0).abs() < 1e-15);
    }

    #[test]
    fn ptilde_equals_last_entry_when_eta_zero() {
        let sys = chebyshev_t(3, 0.0);
        let lambda = 0.37;
        let p = sys.eval_polys(4, lambda).unwrap();
        assert_eq!(sys.eval_ptilde(lambda), p[4]);
    }

    #[test]
    fn kernel_single_term_and_direct_sum() {
        let sys = chebyshev_t(3, 0.0);
        // l = 0 at x = y = 0 collapses to d_0.
        assert!((sys.cd_kernel(0, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        // l = 1, x = 1, y = 0: 1 + 2 * 1 * 0 = 1.
        assert!((sys.cd_kernel(1, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-14);
        // Cross-check sum path against the closed form away from the diagonal.
        let by_branch = sys.cd_kernel(1, 0.3, 0.7).unwrap();
        let by_sum = sys.cd_kernel_sum(1, 0.3, 0.7).unwrap();
        assert!((by_branch - by_sum).abs() < 1e-12 * by_sum.abs());
        assert!((by_sum - 1.42).abs() < 1e-14);
    }

    #[test]
    fn kernel_rejects_out_of_range() {
        let sys = chebyshev_t(2, 0.0);
        assert!(sys.cd_kernel(3, 0.0, 0.0).is_err());
    }

    #[test]
    fn leading_coefficient_identity() {
        let sys = family64(Family::Legendre, 6);
        let w = sys.derive_weights().unwrap();
        for l in 0..=6 {
            let k_next = if l == 6 { w.k_next(&sys) } else { w.k[l + 1] };
            let lhs = w.w[l];
            let rhs = w.k[l] * w.d[l] / k_next;
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
        }
    }

    #[test]
    fn gauss_rule_chebyshev_three_nodes() {
        let sys = chebyshev_t(4, 0.0);
        let rule = sys.gauss_quadrature(3).unwrap();
        let s3 = (3.0f64).sqrt() / 2.0;
        let expect = [-s3, 0.0, s3];
        for (node, want) in rule.nodes().iter().zip(expect) {
            assert!((node - want).abs() < 1e-14);
        }
        for w in rule.weights() {
            assert!((w - 1.0 / 3.0).abs() < 1e-14);
        }
        assert_eq!(rule.degree_exact(), 5);
    }

    #[test]
    fn gauss_rule_single_node() {
        let sys: RecurrenceSystem<f64> = RecurrenceSystem::new(
            2,
            vec![0.4, 0.1, 0.0],
            vec![1.0, 0.5, 0.5],
            vec![0.5, 0.5],
            vec![2.0, 1.0, 1.0],
            0.0,
        )
        .unwrap();
        let rule = sys.gauss_quadrature(1).unwrap();
        assert!((rule.nodes()[0] - 0.2).abs() < 1e-14); // alpha_0 / rho_0
        assert!((rule.weights()[0] - 0.5).abs() < 1e-14); // 1 / rho_0
    }

    #[test]
    fn gauss_rule_orthonormality_legendre() {
        let sys = family64(Family::Legendre, 3);
        let rule = sys.gauss_quadrature(4).unwrap();
        let w = sys.derive_weights().unwrap();
        for l in 0..=3 {
            for m in 0..=3 {
                let mut acc = 0.0;
                for (&x, &wt) in rule.nodes().iter().zip(rule.weights()) {
                    let p = sys.eval_polys(3, x).unwrap();
                    acc += wt * p[l] * p[m];
                }
                let expect = if l == m { 1.0 } else { 0.0 };
                assert!(
                    (w.d[l] * acc - expect).abs() < 1e-10,
                    "gram residual at ({l},{m})"
                );
            }
        }
    }

    #[test]
    fn quadrature_mass_is_inverse_rho0() {
        let sys = RecurrenceSystem::new(
            3,
            vec![0.0, 0.1, -0.2, 0.3],
            vec![0.8, 0.6, 0.7, 0.9],
            vec![0.5, 0.4, 0.6],
            vec![1.7, 1.0, 1.2, 0.8],
            0.0,
        )
        .unwrap();
        let rule = sys.gauss_quadrature(4).unwrap();
        let mass: f64 = rule.weights().iter().sum();
        assert!((mass - 1.0 / 1.7).abs() < 1e-12);
    }

    #[test]
    fn custom_table_caps_quadrature_order() {
        let sys = chebyshev_t(2, 0.0);
        let custom = RecurrenceSystem::new(
            2,
            sys.alpha().to_vec(),
            sys.beta().to_vec(),
            sys.gamma().to_vec(),
            sys.rho().to_vec(),
            0.0,
        )
        .unwrap();
        assert!(custom.gauss_quadrature(3).is_ok());
        assert!(custom.gauss_quadrature(4).is_err());
        // The family-backed table extends analytically.
        assert!(sys.gauss_quadrature(9).is_ok());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(RecurrenceSystem::new(
            1,
            vec![0.0, 0.0],
            vec![1.0, -0.5],
            vec![0.5],
            vec![1.0, 1.0],
            0.0
        )
        .is_err());
        assert!(RecurrenceSystem::new(
            1,
            vec![0.0],
            vec![1.0, 0.5],
            vec![0.5],
            vec![1.0, 1.0],
            0.0
        )
        .is_err());
    }

    #[test]
    fn monomial_table_chebyshev() {
        let sys = chebyshev_t(3, 0.0);
        let rows = sys.monomial_table(3).unwrap();
        assert_eq!(rows[2], vec![-1.0, 0.0, 2.0]); // T_2 = 2x^2 - 1
        assert_eq!(rows[3], vec![0.0, -3.0, 0.0, 4.0]); // T_3 = 4x^3 - 3x
    }

    #[test]
    fn jacobi_normalized_matches_chebyshev_t() {
        // (a, b) = (-1/2, -1/2) normalized at one reproduces T_l pointwise.
        let jac = family64(
            Family::Jacobi {
                a: -0.5,
                b: -0.5,
                normalized: true,
            },
            6,
        );
        let cheb = chebyshev_t(6, 0.0);
        for &x in &[-0.9, -0.3, 0.1, 0.5, 0.99] {
            let pj = jac.eval_polys(7, x).unwrap();
            let pc = cheb.eval_polys(7, x).unwrap();
            for (a, b) in pj.iter().zip(&pc) {
                assert!((a - b).abs() < 1e-12, "{a} vs {b} at x={x}");
            }
        }
    }

    #[test]
    fn jacobi_normalized_is_one_at_one() {
        for (a, b) in [(-0.5, 0.5), (0.5, 0.5), (0.5, -0.5), (1.3, 0.2)] {
            let sys = family64(
                Family::Jacobi {
                    a,
                    b,
                    normalized: true,
                },
                8,
            );
            let p = sys.eval_polys(9, 1.0).unwrap();
            for v in p {
                assert!((v - 1.0).abs() < 1e-12, "({a},{b}) gave {v}");
            }
        }
    }

    #[test]
    fn chebyshev_u_value_at_one() {
        let sys = family64(Family::ChebyshevU, 5);
        let p = sys.eval_polys(6, 1.0).unwrap();
        for (l, v) in p.iter().enumerate() {
            assert!((v - (l as f64 + 1.0)).abs() < 1e-12);
        }
    }
}
