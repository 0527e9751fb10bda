//! Extremal polynomials with a spectral gap.
//!
//! For a family normalized at `t = 1` the extremal sign-preserving polynomial
//! of degree `2q - m + 1` is the squared top polynomial divided by its `m + 1`
//! largest zeros; the companion construction runs through the kernel family
//! orthogonal for `(1+t) dmu`. Membership in the nonnegative-coefficient cone
//! rests on the Krein property, certified here up to a finite degree.

use crate::error::{Error, Result};
use crate::poly;
use crate::real::{real, Real};
use crate::recurrence::{Family, RecurrenceSystem};
use crate::spectrum::compute_spectrum;
use crate::tolerances as tol;

/// A family with `U_l(1) = 1`, optionally switched to its kernel variant
/// (orthogonal for `(1+t) dmu`, renormalized at one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedFamily {
    base: Family,
    kernel: bool,
}

impl NormalizedFamily {
    pub fn new(base: Family) -> Result<Self> {
        if !base.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(Self {
            base,
            kernel: false,
        })
    }

    pub fn base(&self) -> Family {
        self.base
    }

    pub fn is_kernel(&self) -> bool {
        self.kernel
    }

    /// The kernel variant of a plain family.
    pub fn kernel_family(&self) -> Result<Self> {
        if self.kernel {
            return Err(Error::Input("family is already the kernel variant".into()));
        }
        Ok(Self {
            base: self.base,
            kernel: true,
        })
    }

    /// Materialize the coefficient tables at grid size `q` (eta = 0).
    pub fn table<R: Real>(&self, q: usize) -> Result<RecurrenceSystem<R>> {
        if self.kernel {
            christoffel_table(self.base, q)
        } else {
            self.base.system(q, R::zero())
        }
    }
}

/// One step of the Christoffel transformation at shift `-1`: factor the monic
/// Jacobi matrix as `J + I = LU` and reassemble as `UL - I`, then renormalize
/// the resulting family at `t = 1`.
fn christoffel_table<R: Real>(base: Family, q: usize) -> Result<RecurrenceSystem<R>> {
    let source = base.system::<R>(q + 1, R::zero())?;
    let weights = source.derive_weights()?;
    let monic_a = &weights.monic_a;
    let monic_b = &weights.monic_b;
    let one = R::one();

    let size = q + 2;
    let mut u = Vec::with_capacity(size);
    let mut lower = vec![R::zero(); size];
    u.push(monic_a[0] + one);
    for i in 1..size {
        if !(u[i - 1] > R::zero()) {
            return Err(Error::KernelPivot { index: i - 1 });
        }
        lower[i] = monic_b[i] / u[i - 1];
        u.push(monic_a[i] + one - lower[i]);
    }

    let mut kernel_a = Vec::with_capacity(q + 1);
    let mut kernel_b = vec![R::zero(); q + 1];
    for l in 0..=q {
        kernel_a.push(u[l] + lower[l + 1] - one);
        if l >= 1 {
            kernel_b[l] = u[l] * lower[l];
        }
    }

    // Values at one of the monic kernel polynomials, as consecutive ratios.
    let mut ratio = Vec::with_capacity(q + 1);
    ratio.push(one - kernel_a[0]);
    for l in 1..=q {
        if !(ratio[l - 1] > R::zero()) {
            return Err(Error::KernelPivot { index: l });
        }
        ratio.push(one - kernel_a[l] - kernel_b[l] / ratio[l - 1]);
    }

    let alpha = kernel_a.clone();
    let beta = ratio.clone();
    let gamma: Vec<R> = (1..=q).map(|l| kernel_b[l] / ratio[l - 1]).collect();
    let rho = vec![one; q + 1];
    RecurrenceSystem::new(q, alpha, beta, gamma, rho, R::zero())
}

/// Evidence for the Krein property up to degree `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinReport<R> {
    /// Certified range: products `U_m U_n` with `m, n <= degree`.
    pub degree: usize,
    pub pass: bool,
    pub min_coefficient: R,
    pub max_coefficient: R,
    /// Indices `(m, n, k)` of the most negative linearization coefficient.
    pub worst: (usize, usize, usize),
}

/// Linearization coefficients `U_m U_n = sum_k c_{m,n,k} U_k` by quadrature;
/// the property holds when none is meaningfully negative.
pub fn krein_check<R: Real>(family: &NormalizedFamily, degree: usize) -> Result<KreinReport<R>> {
    let table = family.table::<R>(2 * degree + 1)?;
    let rule = table.gauss_quadrature(2 * degree + 2)?;
    let d = table.derive_weights()?.d;
    let values: Vec<Vec<R>> = rule
        .nodes()
        .iter()
        .map(|&x| table.eval_polys(2 * degree, x))
        .collect::<Result<_>>()?;

    let mut min_c = R::infinity();
    let mut max_c = R::neg_infinity();
    let mut worst = (0, 0, 0);
    for m in 0..=degree {
        for n in m..=degree {
            for k in n - m..=n + m {
                let mut acc = R::zero();
                for (row, &wt) in values.iter().zip(rule.weights()) {
                    acc = acc + wt * row[m] * row[n] * row[k];
                }
                let c = d[k] * acc;
                max_c = max_c.max(c);
                if c < min_c {
                    min_c = c;
                    worst = (m, n, k);
                }
            }
        }
    }
    let pass = min_c >= -real::<R>(tol::KREIN_NEG) * max_c.max(R::min_positive_value());
    Ok(KreinReport {
        degree,
        pass,
        min_coefficient: min_c,
        max_coefficient: max_c,
        worst,
    })
}

/// Fourier coefficients `a_l = integral p U_l dmu` for `l <= l_max`.
pub fn fourier_coeffs<R: Real>(
    p_monomial: &[R],
    family: &NormalizedFamily,
    l_max: usize,
) -> Result<Vec<R>> {
    if p_monomial.is_empty() {
        return Err(Error::Input("empty polynomial".into()));
    }
    let degree = p_monomial.len() - 1;
    let nodes = (degree + l_max) / 2 + 1;
    let table = family.table::<R>(l_max.max(nodes.saturating_sub(1)).max(1))?;
    let rule = table.gauss_quadrature(nodes)?;
    let mut coeffs = vec![R::zero(); l_max + 1];
    for (&x, &wt) in rule.nodes().iter().zip(rule.weights()) {
        let px = poly::eval(p_monomial, x);
        let basis = table.eval_polys(l_max, x)?;
        for (slot, &u) in coeffs.iter_mut().zip(&basis) {
            *slot = *slot + wt * px * u;
        }
    }
    Ok(coeffs)
}

/// Pointwise residual of `sum d_l a_l U_l` against `p`, relative to `max |p|`
/// over the quadrature nodes.
pub fn fourier_reconstruction_residual<R: Real>(
    p_monomial: &[R],
    coeffs: &[R],
    family: &NormalizedFamily,
) -> Result<R> {
    let l_max = coeffs.len() - 1;
    let table = family.table::<R>(l_max.max(1))?;
    let d = table.derive_weights()?.d;
    let mut worst = R::zero();
    let mut scale = R::min_positive_value();
    let steps = 64;
    for i in 0..=steps {
        let x = real::<R>(-1.0 + 2.0 * i as f64 / steps as f64);
        let basis = table.eval_polys(l_max, x)?;
        let mut acc = R::zero();
        for l in 0..=l_max {
            acc = acc + d[l] * coeffs[l] * basis[l];
        }
        let target = poly::eval(p_monomial, x);
        worst = worst.max((acc - target).abs());
        scale = scale.max(target.abs());
    }
    Ok(worst / scale)
}

/// The extremal construction and its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct YudinResult<R> {
    pub n: usize,
    pub m: usize,
    pub variant: u8,
    /// The sign-preservation endpoint `B = t_{m+1}` (kernel zeros for variant 2).
    pub b: R,
    /// Fourier coefficients `a_0 .. a_n` of the extremal polynomial.
    pub coefficients: Vec<R>,
    /// Moments `mu_0 .. mu_m`.
    pub moments: Vec<R>,
    /// Minimum of `(-1)^{m-1} p` over the `[-1, B]` grid.
    pub sign_min: R,
    /// Sup norm of `p` over the `[-1, 1]` grid.
    pub sup_norm: R,
    pub coefficients_nonnegative: bool,
    /// The leading `m + 1` coefficients and moments vanish as required.
    pub gap_vanishes: bool,
    pub sign_condition: bool,
    /// `p` turns strictly the other way somewhere past `B`.
    pub changes_sign_after_b: bool,
    pub base_krein: KreinReport<R>,
    pub kernel_krein: Option<KreinReport<R>>,
    /// Monomial coefficients of the extremal polynomial.
    pub monomial: Vec<R>,
}

/// Build the extremal polynomial for the gap length `m`.
///
/// Variant 1 (`n = 2q - m + 1`) squares the top base polynomial; variant 2
/// (`n = 2q - m + 2`) squares the top kernel polynomial times `(1 + t)`.
/// The Krein hypotheses are certified up to degree `2q + 4`; a failed or
/// inapplicable certificate is refused unless `allow_unverified_krein` is set.
pub fn yudin_extremal<R: Real>(
    family: &NormalizedFamily,
    q: usize,
    m: usize,
    variant: u8,
    allow_unverified_krein: bool,
) -> Result<YudinResult<R>> {
    if family.is_kernel() {
        return Err(Error::Input(
            "pass the plain family; the kernel variant is selected internally".into(),
        ));
    }
    if m > q {
        return Err(Error::OutOfRange {
            value: m,
            min: 0,
            max: q,
        });
    }
    if variant != 1 && variant != 2 {
        return Err(Error::Input("variant must be 1 or 2".into()));
    }
    let certified_degree = 2 * q + 4;
    let base_krein = krein_check::<R>(family, certified_degree)?;
    if !base_krein.pass && !allow_unverified_krein {
        return Err(Error::KreinUnverified {
            worst: base_krein.min_coefficient.to_f64().unwrap_or(f64::NAN),
            m: base_krein.worst.0,
            n: base_krein.worst.1,
            k: base_krein.worst.2,
        });
    }

    let mut kernel_krein = None;
    let (n, b_value, mut monomial) = match variant {
        1 => {
            let table = family.table::<R>(q)?;
            let spectrum = compute_spectrum(&table)?;
            let zeros = spectrum.eigenvalues();
            let top = table.monomial_table(q + 1)?.swap_remove(q + 1);
            let mut p = poly::mul(&top, &top);
            for &root in &zeros[..=m] {
                poly::divide_by_root(&mut p, root);
            }
            (2 * q - m + 1, zeros[m], p)
        }
        _ => {
            // The kernel hypothesis: even measure, or the kernel family passes
            // its own Krein check.
            if !family.base().even_measure() {
                let report = krein_check::<R>(&family.kernel_family()?, certified_degree)?;
                let pass = report.pass;
                let worst = report.worst;
                let min_c = report.min_coefficient;
                kernel_krein = Some(report);
                if !pass && !allow_unverified_krein {
                    return Err(Error::KreinUnverified {
                        worst: min_c.to_f64().unwrap_or(f64::NAN),
                        m: worst.0,
                        n: worst.1,
                        k: worst.2,
                    });
                }
            }
            let table = family.kernel_family()?.table::<R>(q)?;
            let spectrum = compute_spectrum(&table)?;
            let zeros = spectrum.eigenvalues();
            let top = table.monomial_table(q + 1)?.swap_remove(q + 1);
            let mut p = poly::mul(&top, &top);
            p = poly::mul(&p, &[R::one(), R::one()]); // times (1 + t)
            for &root in &zeros[..=m] {
                poly::divide_by_root(&mut p, root);
            }
            (2 * q - m + 2, zeros[m], p)
        }
    };
    debug_assert_eq!(monomial.len(), n + 1);
    // Fix the leading coefficient to one (uniqueness is up to a positive
    // constant); the quotient construction already has a positive leader.
    let leading = monomial[n];
    for c in monomial.iter_mut() {
        *c = *c / leading;
    }

    let coefficients = fourier_coeffs(&monomial, family, n)?;
    let max_coeff = coefficients
        .iter()
        .map(|a| a.abs())
        .fold(R::zero(), R::max)
        .max(R::min_positive_value());
    let coefficients_nonnegative = coefficients
        .iter()
        .all(|&a| a >= -real::<R>(tol::COEFF_NONNEG) * max_coeff);

    // Moments against the base measure.
    let table = family.table::<R>(n + 1)?;
    let rule = table.gauss_quadrature((n + m) / 2 + 2)?;
    let mut moments = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut acc = R::zero();
        for (&x, &wt) in rule.nodes().iter().zip(rule.weights()) {
            let mut power = R::one();
            for _ in 0..i {
                power = power * x;
            }
            acc = acc + wt * power * poly::eval(&monomial, x);
        }
        moments.push(acc);
    }
    let moment_scale = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .fold(R::zero(), |acc, (&x, &wt)| {
            acc + wt * poly::eval(&monomial, x).abs()
        })
        .max(R::min_positive_value());
    let vanish = real::<R>(tol::VANISH_REL);
    let gap_vanishes = (0..=m).all(|i| {
        let coeff_ok = coefficients[i].abs() <= vanish * max_coeff;
        let moment_ok = moments[i].abs() <= vanish * moment_scale;
        coeff_ok && moment_ok
    });

    // Sign condition on a fine grid of [-1, B], and the strict flip past B.
    let grid = tol::SIGN_GRID_POINTS;
    let orientation = if m % 2 == 1 { R::one() } else { -R::one() };
    let mut sign_min = R::infinity();
    let mut sup_norm = R::zero();
    for i in 0..=grid {
        let t = real::<R>(-1.0 + 2.0 * i as f64 / grid as f64);
        sup_norm = sup_norm.max(poly::eval(&monomial, t).abs());
    }
    for i in 0..=grid {
        let span = b_value - (-R::one());
        let t = -R::one() + span * real(i as f64 / grid as f64);
        sign_min = sign_min.min(orientation * poly::eval(&monomial, t));
    }
    let sign_condition = sign_min >= -real::<R>(tol::SIGN_GRID_SLACK) * sup_norm;
    let mut changes_sign_after_b = false;
    let upper = if m == 0 { R::one() } else { R::one().min(b_value + (R::one() - b_value)) };
    let probe_hi = upper.max(b_value + real(0.05));
    for i in 1..200 {
        let t = b_value + (probe_hi - b_value) * real(i as f64 / 200.0);
        if orientation * poly::eval(&monomial, t) < -real::<R>(tol::SIGN_GRID_SLACK) * sup_norm {
            changes_sign_after_b = true;
            break;
        }
    }

    Ok(YudinResult {
        n,
        m,
        variant,
        b: b_value,
        coefficients,
        moments,
        sign_min,
        sup_norm,
        coefficients_nonnegative,
        gap_vanishes,
        sign_condition,
        changes_sign_after_b,
        base_krein,
        kernel_krein,
        monomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapfourier::gap_expand;

    fn chebyshev_t() -> NormalizedFamily {
        NormalizedFamily::new(Family::ChebyshevT).unwrap()
    }

    fn chebyshev_u_normalized() -> NormalizedFamily {
        NormalizedFamily::new(Family::Jacobi {
            a: 0.5,
            b: 0.5,
            normalized: true,
        })
        .unwrap()
    }

    #[test]
    fn rejects_unnormalized_base() {
        assert!(matches!(
            NormalizedFamily::new(Family::ChebyshevU),
            Err(Error::NotNormalized)
        ));
    }

    #[test]
    fn normalized_at_one_for_generated_degrees() {
        for family in [chebyshev_t(), chebyshev_u_normalized()] {
            for kernel in [false, true] {
                let f = if kernel {
                    family.kernel_family().unwrap()
                } else {
                    family
                };
                let table = f.table::<f64>(9).unwrap();
                let values = table.eval_polys(10, 1.0).unwrap();
                for v in values {
                    assert!((v - 1.0).abs() <= 1e-12, "kernel={kernel}: {v}");
                }
            }
        }
    }

    #[test]
    fn kernel_of_first_kind_is_half_integer_family() {
        // (1+t) against the arcsine weight shifts the exponents to (-1/2, 1/2).
        let kernel = chebyshev_t().kernel_family().unwrap();
        let table = kernel.table::<f64>(7).unwrap();
        let reference = crate::classical::AppendixCase::II
            .family()
            .system::<f64>(7, 0.0)
            .unwrap();
        for &x in &[-0.95, -0.4, 0.0, 0.3, 0.8] {
            let got = table.eval_polys(8, x).unwrap();
            let want = reference.eval_polys(8, x).unwrap();
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-11, "x={x}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn kernel_even_measure_closed_form() {
        // Even measure: U_l^(1) = (U_l + U_{l+1}) / (1 + t).
        let kernel = chebyshev_t().kernel_family().unwrap();
        let table = kernel.table::<f64>(6).unwrap();
        let base = chebyshev_t().table::<f64>(7).unwrap();
        for &x in &[-0.7, -0.2, 0.45, 0.9] {
            let got = table.eval_polys(6, x).unwrap();
            let plain = base.eval_polys(7, x).unwrap();
            for l in 0..=6 {
                let want = (plain[l] + plain[l + 1]) / (1.0 + x);
                assert!((got[l] - want).abs() < 1e-12, "l={l} x={x}");
            }
        }
    }

    #[test]
    fn kernel_orthogonality_under_shifted_measure() {
        let family = chebyshev_u_normalized();
        let kernel = family.kernel_family().unwrap();
        let k_table = kernel.table::<f64>(5).unwrap();
        let base_table = family.table::<f64>(12).unwrap();
        let rule = base_table.gauss_quadrature(10).unwrap();
        for l in 0..=5usize {
            for s in 0..=5usize {
                let mut acc = 0.0;
                let mut norm_l = 0.0;
                let mut norm_s = 0.0;
                for (&x, &wt) in rule.nodes().iter().zip(rule.weights()) {
                    let v = k_table.eval_polys(5, x).unwrap();
                    let shifted = wt * (1.0 + x);
                    acc += shifted * v[l] * v[s];
                    norm_l += shifted * v[l] * v[l];
                    norm_s += shifted * v[s] * v[s];
                }
                if l != s {
                    assert!(
                        acc.abs() <= 1e-9 * (norm_l * norm_s).sqrt(),
                        "({l},{s}): {acc}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_zeros_interlace_base_zeros() {
        let family = chebyshev_t();
        let base = compute_spectrum(&family.table::<f64>(5).unwrap()).unwrap();
        let kernel =
            compute_spectrum(&family.kernel_family().unwrap().table::<f64>(5).unwrap()).unwrap();
        // Both descending; the shifted measure pushes each zero toward +1,
        // and consecutive kernel zeros straddle the base zeros.
        for k in 0..=5 {
            assert!(kernel.eigenvalues()[k] > base.eigenvalues()[k]);
            if k < 5 {
                assert!(base.eigenvalues()[k] > kernel.eigenvalues()[k + 1]);
            }
        }
    }

    #[test]
    fn krein_chebyshev_product_formula() {
        // T_m T_n = (T_{m+n} + T_{|m-n|}) / 2: coefficients 1/2 (and 1 on the diagonal term).
        let report = krein_check::<f64>(&chebyshev_t(), 8).unwrap();
        assert!(report.pass, "{report:?}");
        let report = krein_check::<f64>(&chebyshev_u_normalized(), 8).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn krein_fails_with_witness_for_signed_family() {
        // Jacobi exponents with a < b produce genuinely negative
        // linearization coefficients.
        let family = NormalizedFamily::new(Family::Jacobi {
            a: -0.9,
            b: 0.9,
            normalized: true,
        })
        .unwrap();
        let report = krein_check::<f64>(&family, 6).unwrap();
        assert!(!report.pass, "{report:?}");
        assert!(report.min_coefficient < 0.0);
    }

    #[test]
    fn fourier_coeffs_pick_out_basis_elements() {
        let family = chebyshev_t();
        let table = family.table::<f64>(4).unwrap();
        let d = table.derive_weights().unwrap().d;
        // p = T_3: d_l a_l = delta_{l,3}.
        let t3 = table.monomial_table(3).unwrap().swap_remove(3);
        let a = fourier_coeffs(&t3, &family, 4).unwrap();
        for l in 0..=4usize {
            let want = if l == 3 { 1.0 / d[l] } else { 0.0 };
            assert!((a[l] - want).abs() < 1e-12, "l={l}");
        }
        // p = 1: a_0 = mass = 1 (rho_0 = 1 for the first-kind table).
        let a = fourier_coeffs(&[1.0f64], &family, 2).unwrap();
        assert!((a[0] - 1.0).abs() < 1e-13);
        assert!(a[1].abs() < 1e-13);
    }

    #[test]
    fn fourier_product_splits_into_two_terms() {
        // T_1 T_2 = (T_3 + T_1)/2: nonzero d_l a_l only at l = 1, 3.
        let family = chebyshev_t();
        let table = family.table::<f64>(4).unwrap();
        let d = table.derive_weights().unwrap().d;
        let rows = table.monomial_table(2).unwrap();
        let p = crate::poly::mul(&rows[1], &rows[2]);
        let a = fourier_coeffs(&p, &family, 4).unwrap();
        for l in 0..=4usize {
            let want = if l == 1 || l == 3 { 0.5 / d[l] } else { 0.0 };
            assert!((a[l] - want).abs() < 1e-12, "l={l}: {}", a[l]);
        }
        let residual = fourier_reconstruction_residual(&p, &a, &family).unwrap();
        assert!(residual < 1e-9);
    }

    #[test]
    fn variant1_second_kind_has_half_endpoint() {
        // q = 4, m = 1: B = cos(2 pi / 6) = 1/2.
        let result = yudin_extremal::<f64>(&chebyshev_u_normalized(), 4, 1, 1, false).unwrap();
        assert_eq!(result.n, 2 * 4 - 1 + 1);
        assert!((result.b - 0.5).abs() < 1e-12);
        assert!(result.coefficients_nonnegative);
        assert!(result.gap_vanishes);
        assert!(result.sign_condition);
        assert!(result.changes_sign_after_b);
    }

    #[test]
    fn variant1_m0_endpoint_is_largest_zero() {
        let family = chebyshev_u_normalized();
        let result = yudin_extremal::<f64>(&family, 3, 0, 1, false).unwrap();
        let spectrum = compute_spectrum(&family.table::<f64>(3).unwrap()).unwrap();
        assert!((result.b - spectrum.eigenvalues()[0]).abs() < 1e-12);
        assert!(result.coefficients_nonnegative);
    }

    #[test]
    fn variant1_full_removal_degree() {
        // q = m: everything removed, degree q + 1.
        let result = yudin_extremal::<f64>(&chebyshev_t(), 3, 3, 1, false).unwrap();
        assert_eq!(result.n, 4);
        assert_eq!(result.monomial.len(), 5);
    }

    #[test]
    fn variant2_even_measure() {
        let result = yudin_extremal::<f64>(&chebyshev_t(), 3, 1, 2, false).unwrap();
        assert_eq!(result.n, 2 * 3 - 1 + 2);
        assert!(result.coefficients_nonnegative, "{:?}", result.coefficients);
        assert!(result.gap_vanishes);
        assert!(result.sign_condition);
        // B is the second kernel zero.
        let kernel = chebyshev_t().kernel_family().unwrap();
        let spectrum = compute_spectrum(&kernel.table::<f64>(3).unwrap()).unwrap();
        assert!((result.b - spectrum.eigenvalues()[1]).abs() < 1e-12);
    }

    #[test]
    fn gap_expansion_mechanism_behind_positivity() {
        // Coefficients of U_{q+1} / prod (t - t_j) are strictly decreasing
        // positive for the normalized family at eta = 0.
        let family = chebyshev_u_normalized();
        let table = family.table::<f64>(5).unwrap();
        let spectrum = compute_spectrum(&table).unwrap();
        for m in 0..=3usize {
            let exp = gap_expand(&table, &spectrum, m, 1.0).unwrap();
            for w in exp.coefficients.windows(2) {
                assert!(w[0] > w[1] && w[1] > 0.0);
            }
        }
    }

    #[test]
    fn delta_alternating_sums_nonnegative_for_even_measure() {
        // For the even-measure variant-2 construction the alternating tail
        // sums of the kernel gap coefficients stay nonnegative.
        let family = chebyshev_t();
        let q = 5;
        for m in 0..=q {
            let kernel = family.kernel_family().unwrap();
            let k_table = kernel.table::<f64>(q).unwrap();
            let spectrum = compute_spectrum(&k_table).unwrap();
            let b_point = crate::gapfourier::right_endpoint(&k_table, &spectrum);
            let exp = gap_expand(&k_table, &spectrum, m, b_point).unwrap();
            let d = k_table.derive_weights().unwrap().d;
            // w_l of the base family; b_l = d~_l a~_l / w_l up to a constant.
            let base_w = family.table::<f64>(q).unwrap().derive_weights().unwrap().w;
            let b: Vec<f64> = exp
                .coefficients
                .iter()
                .enumerate()
                .map(|(l, &a)| d[l] * a / base_w[l])
                .collect();
            let scale = b.iter().cloned().fold(0.0f64, f64::max);
            for nu in 0..b.len() {
                let mut delta = 0.0;
                for (l, &bl) in b.iter().enumerate().skip(nu) {
                    let sign = if (l + nu) % 2 == 0 { 1.0 } else { -1.0 };
                    delta += sign * bl;
                }
                assert!(delta >= -1e-10 * scale, "m={m} nu={nu}: {delta}");
            }
        }
    }

    #[test]
    fn unverified_krein_is_refused_without_override() {
        let family = NormalizedFamily::new(Family::Jacobi {
            a: -0.9,
            b: 0.9,
            normalized: true,
        })
        .unwrap();
        assert!(matches!(
            yudin_extremal::<f64>(&family, 3, 1, 1, false),
            Err(Error::KreinUnverified { .. })
        ));
        // The override lets the construction run and report its findings.
        let result = yudin_extremal::<f64>(&family, 3, 1, 1, true).unwrap();
        assert_eq!(result.n, 6);
    }
}
