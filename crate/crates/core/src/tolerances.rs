//! Default tolerances and budgets, collected in one place.
//!
//! Every threshold used by the library has a named default here; the CLI
//! echoes the resolved values in its reports so runs are reproducible.

/// Relative tolerance for the leading-coefficient identity `w_l = k_l d_l / k_{l+1}`.
pub const W_IDENTITY_REL: f64 = 1e-12;

/// Relative agreement required between the two Christoffel-Darboux evaluation paths.
pub const CD_ROUTE_REL: f64 = 1e-9;

/// `|x - y| < CD_SWITCH * (1 + |x|)` selects the direct-sum kernel branch.
pub const CD_SWITCH: f64 = 1e-8;

/// Gauss-rule orthonormality residual bound.
pub const QUAD_ORTHO_RESIDUAL: f64 = 1e-10;

/// Favard orthonormality residual bound (library-level property checks).
pub const FAVARD_ORTHO: f64 = 1e-9;

/// Relative width at which eigenvalue bisection stops.
pub const EIGEN_REL: f64 = 1e-13;

/// Eigenvalue residual bound: `|ptilde(lambda_k)| <= PTILDE_RESIDUAL * scale`.
pub const PTILDE_RESIDUAL: f64 = 1e-8;

/// Boundary identity bound for eigenfunction rows.
pub const BOUNDARY_IDENTITY: f64 = 1e-8;

/// Normalized discrete-orthogonality residual expected from a spectrum.
pub const EIGENFUNC_ORTHO: f64 = 1e-8;

/// Default sign-decision tolerance, relative to `max |f|`.
pub const SIGN_TOL_DEFAULT: f64 = 1e-9;

/// Determinant singularity threshold factor (times the product of row norms).
pub const DET_TOL_FACTOR: f64 = 1e-10;

/// Annihilation residual bound for the cofactor dual functional.
pub const DUAL_RESIDUAL: f64 = 1e-9;

/// Alternance level tolerance: `|eps * (-1)^i e(nu_i) - E| <= ALTERNANCE_LEVEL * (1 + E)`.
pub const ALTERNANCE_LEVEL: f64 = 1e-9;

/// Agreement between the exchange algorithm and the exhaustive oracle (error level).
pub const ORACLE_LEVEL_AGREE: f64 = 1e-9;

/// Agreement between the exchange algorithm and the exhaustive oracle (coefficients).
pub const ORACLE_COEFF_AGREE: f64 = 1e-7;

/// `E <= DEGENERATE_LEVEL * scale` short-circuits to the exact-representation case.
pub const DEGENERATE_LEVEL: f64 = 1e-12;

/// Relative agreement required between the partial-fraction and quadrature gap routes.
pub const GAP_ROUTE_REL: f64 = 1e-8;

/// Relative residual allowed when the gap expansion reconstructs the perturbed polynomial.
pub const GAP_RECONSTRUCT_REL: f64 = 1e-8;

/// Equality tolerance for `eta == eta_b`, relative to `1 + |eta_b|`.
pub const ETA_CASE_EQ: f64 = 1e-10;

/// Maximum relative spread of coefficient ratios accepted as "all equal".
pub const RATIO_EQUAL_SPREAD: f64 = 1e-8;

/// Strictness margin for monotone ratio chains, relative to the largest ratio.
pub const RATIO_STRICT_MARGIN: f64 = 1e-10;

/// Relative spread allowed in the determinant cross-check ratio.
pub const CROSSCHECK_SPREAD: f64 = 1e-7;

/// Linearization coefficients may dip this far below zero (times the largest one).
pub const KREIN_NEG: f64 = 1e-10;

/// Fourier coefficients of extremal polynomials may dip this far below zero.
pub const COEFF_NONNEG: f64 = 1e-10;

/// Relative tolerance for coefficients/moments that must vanish.
pub const VANISH_REL: f64 = 1e-9;

/// Sign-condition slack on the `[-1, B]` grid, relative to the sup norm.
pub const SIGN_GRID_SLACK: f64 = 1e-9;

/// `U_l(1)` must equal one to this tolerance for normalized families.
pub const NORMALIZED_AT_ONE: f64 = 1e-12;

/// Pointwise residual allowed when Fourier coefficients reconstruct a polynomial.
pub const FOURIER_RECONSTRUCT: f64 = 1e-9;

/// Closed-form versus numeric determinant agreement for the classical families.
pub const APPENDIX_DET_REL: f64 = 1e-8;

/// Absolute floor used when closed form and numeric determinant both vanish.
pub const APPENDIX_DET_ABS: f64 = 1e-12;

/// Agreement between the trigonometric division route and the gap-expansion route.
pub const TRIG_ROUTE_REL: f64 = 1e-9;

/// Default cap on the number of subsets swept by `certify`.
pub const SUBSET_BUDGET: usize = 2_000_000;

/// Default cap on the number of subsets visited by the minimax oracle.
pub const ORACLE_BUDGET: usize = 100_000;

/// Maximum zero entries accepted by the exhaustive sign-assignment search.
pub const BRUTEFORCE_MAX_ZEROS: usize = 20;

/// Points in the sign-condition grid over `[-1, B]`.
pub const SIGN_GRID_POINTS: usize = 10_000;
