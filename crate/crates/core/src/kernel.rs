//! Closed-form Green's kernels on [0, 1] x [0, 1].
//!
//! All four kernels are Green's functions of two-point boundary value
//! problems with homogeneous Dirichlet data, so every kernel vanishes
//! identically on x = 0 and x = 1. The fractional kernels are not symmetric
//! for alpha < 2; both reduce to the Brownian bridge kernel
//! min(x, z) - x z at alpha = 2.

use crate::error::{Error, Result};
use crate::special::gamma;

/// Which Green's kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// min(x, z) - x z, the Green's function of -u'' (the alpha = 2 case).
    BrownianBridge,
    /// Green's function of the left Riemann-Liouville operator -D^a based at 0.
    RiemannLiouvilleLeft,
    /// Green's function of the right Riemann-Liouville operator based at 1,
    /// obtained from the left kernel by the reflection x -> 1-x, z -> 1-z.
    RiemannLiouvilleRight,
    /// Green's function of the left Caputo operator.
    Caputo,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::BrownianBridge => "bb",
            KernelKind::RiemannLiouvilleLeft => "rl-left",
            KernelKind::RiemannLiouvilleRight => "rl-right",
            KernelKind::Caputo => "caputo",
        }
    }
}

/// Fractional order alpha, restricted to (1, 2]. The kernel formulas are
/// stated for this range; alpha = 2 is the Brownian bridge limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 1.0 && alpha <= 2.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder { alpha })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// x^e for the fractional exponents appearing in the kernels, with the
/// convention that a non-positive base gives 0. The exponent is always
/// alpha - 1 > 0 here, so this is the continuous extension and avoids NaN
/// from 0^e in edge code paths.
#[inline]
fn frac_pow(base: f64, expo: f64) -> f64 {
    if base <= 0.0 {
        0.0
    } else {
        base.powf(expo)
    }
}

/// A kernel kind together with its order and the precomputed 1/Gamma(alpha)
/// prefactor.
#[derive(Debug, Clone, Copy)]
pub struct KernelSpec {
    kind: KernelKind,
    order: FractionalOrder,
    inv_gamma_alpha: f64,
}

impl KernelSpec {
    /// The order is ignored (and fixed to 2) for the Brownian bridge kernel.
    pub fn new(kind: KernelKind, alpha: f64) -> Result<Self> {
        let order = match kind {
            KernelKind::BrownianBridge => FractionalOrder::new(2.0)?,
            _ => FractionalOrder::new(alpha)?,
        };
        Ok(Self {
            kind,
            order,
            inv_gamma_alpha: 1.0 / gamma(order.value()),
        })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.order.value()
    }

    /// Kernel value at (x, z), both in [0, 1].
    ///
    /// Evaluation at x = z uses the z <= x branch; both branches agree there.
    pub fn eval(&self, x: f64, z: f64) -> f64 {
        match self.kind {
            KernelKind::BrownianBridge => x.min(z) - x * z,
            KernelKind::RiemannLiouvilleLeft => self.rl_left(x, z),
            KernelKind::RiemannLiouvilleRight => self.rl_left(1.0 - x, 1.0 - z),
            KernelKind::Caputo => self.caputo(x, z),
        }
    }

    /// Left Riemann-Liouville kernel:
    ///
    /// ```text
    ///               { (x(1-z))^(a-1) - (x-z)^(a-1),   z <= x
    /// Gamma(a) G =  {
    ///               { x^(a-1) (1-z)^(a-1),            x <= z
    /// ```
    fn rl_left(&self, x: f64, z: f64) -> f64 {
        let am1 = self.order.value() - 1.0;
        if z <= x {
            (frac_pow(x * (1.0 - z), am1) - frac_pow(x - z, am1)) * self.inv_gamma_alpha
        } else {
            frac_pow(x, am1) * frac_pow(1.0 - z, am1) * self.inv_gamma_alpha
        }
    }

    /// Left Caputo kernel:
    ///
    /// ```text
    ///               { x (1-z)^(a-1) - (x-z)^(a-1),   z <= x
    /// Gamma(a) G =  {
    ///               { x (1-z)^(a-1),                 x <= z
    /// ```
    fn caputo(&self, x: f64, z: f64) -> f64 {
        let am1 = self.order.value() - 1.0;
        if z <= x {
            (x * frac_pow(1.0 - z, am1) - frac_pow(x - z, am1)) * self.inv_gamma_alpha
        } else {
            x * frac_pow(1.0 - z, am1) * self.inv_gamma_alpha
        }
    }

    /// Kernel values on an equally spaced (nx x nz) grid including the
    /// endpoints; row i varies x, column j varies z.
    pub fn grid(&self, nx: usize, nz: usize) -> Result<Vec<Vec<f64>>> {
        if nx < 2 || nz < 2 {
            return Err(Error::InvalidRule {
                reason: format!("kernel grid needs nx, nz >= 2, got {nx} x {nz}"),
            });
        }
        let coord = |i: usize, n: usize| i as f64 / (n - 1) as f64;
        Ok((0..nx)
            .map(|i| {
                (0..nz)
                    .map(|j| self.eval(coord(i, nx), coord(j, nz)))
                    .collect()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: KernelKind, alpha: f64) -> KernelSpec {
        KernelSpec::new(kind, alpha).unwrap()
    }

    const ALL_KINDS: [KernelKind; 4] = [
        KernelKind::BrownianBridge,
        KernelKind::RiemannLiouvilleLeft,
        KernelKind::RiemannLiouvilleRight,
        KernelKind::Caputo,
    ];

    #[test]
    fn order_validation() {
        assert!(FractionalOrder::new(1.0).is_err());
        assert!(FractionalOrder::new(2.0000001).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
        assert!(FractionalOrder::new(1.5).is_ok());
        assert!(FractionalOrder::new(2.0).is_ok());
    }

    #[test]
    fn brownian_bridge_value() {
        let k = spec(KernelKind::BrownianBridge, 2.0);
        assert_eq!(k.eval(0.25, 0.5), 0.125);
        assert_eq!(k.eval(0.5, 0.5), 0.25);
    }

    #[test]
    fn rl_left_fractional_value() {
        // Upper branch at a = 1.5: 0.25^0.5 * 0.5^0.5 / Gamma(1.5).
        let k = spec(KernelKind::RiemannLiouvilleLeft, 1.5);
        let expected = 0.3989422804014327; // = sqrt(0.125)/Gamma(1.5)
        assert!((k.eval(0.25, 0.5) - expected).abs() < 1e-15);
    }

    #[test]
    fn boundary_vanishing_all_kinds() {
        for kind in ALL_KINDS {
            for alpha in [1.1, 1.5, 1.9, 2.0] {
                let k = spec(kind, alpha);
                for i in 0..=100 {
                    let z = i as f64 / 100.0;
                    assert!(
                        k.eval(0.0, z).abs() <= 1e-14 && k.eval(1.0, z).abs() <= 1e-14,
                        "{kind:?} alpha = {alpha} at z = {z}"
                    );
                }
            }
        }
    }

    #[test]
    fn alpha_two_reduces_to_brownian_bridge() {
        let bb = spec(KernelKind::BrownianBridge, 2.0);
        for kind in [
            KernelKind::RiemannLiouvilleLeft,
            KernelKind::RiemannLiouvilleRight,
            KernelKind::Caputo,
        ] {
            let k = spec(kind, 2.0);
            for i in 0..=100 {
                for j in 0..=100 {
                    let (x, z) = (i as f64 / 100.0, j as f64 / 100.0);
                    assert!(
                        (k.eval(x, z) - bb.eval(x, z)).abs() <= 1e-12,
                        "{kind:?} at ({x}, {z})"
                    );
                }
            }
        }
    }

    #[test]
    fn diagonal_branches_agree() {
        for kind in ALL_KINDS {
            for alpha in [1.25, 1.5, 1.75, 2.0] {
                let k = spec(kind, alpha);
                for i in 1..20 {
                    let z = i as f64 / 20.0;
                    // z <= x branch at x = z against the x <= z branch from above.
                    let below = k.eval(z, z);
                    let above = k.eval(z - 1e-13, z);
                    assert!(
                        (below - above).abs() <= 1e-12,
                        "{kind:?} alpha = {alpha} at z = {z}: {below} vs {above}"
                    );
                }
            }
        }
    }

    #[test]
    fn riemann_liouville_kernels_nonnegative() {
        // For z <= x, x(1-z) - (x-z) = z(1-x) >= 0 and t^(a-1) is increasing,
        // so the lower branch cannot go negative. (The Caputo kernel does not
        // share this property for small alpha and is excluded.)
        for kind in [
            KernelKind::BrownianBridge,
            KernelKind::RiemannLiouvilleLeft,
            KernelKind::RiemannLiouvilleRight,
        ] {
            for alpha in [1.1, 1.5, 1.9, 2.0] {
                let k = spec(kind, alpha);
                for i in 0..=200 {
                    for j in 0..=200 {
                        let (x, z) = (i as f64 / 200.0, j as f64 / 200.0);
                        assert!(
                            k.eval(x, z) >= -1e-14,
                            "{kind:?} alpha = {alpha} negative at ({x}, {z})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn non_symmetry_witnessed_for_fractional_orders() {
        for alpha in [1.25, 1.5, 1.75] {
            let k = spec(KernelKind::RiemannLiouvilleLeft, alpha);
            let mut max_asym: f64 = 0.0;
            for i in 0..=100 {
                for j in 0..=100 {
                    let (x, z) = (i as f64 / 100.0, j as f64 / 100.0);
                    max_asym = max_asym.max((k.eval(x, z) - k.eval(z, x)).abs());
                }
            }
            assert!(max_asym > 1e-3, "alpha = {alpha}: max asymmetry {max_asym}");
        }
    }

    #[test]
    fn right_kernel_is_reflection_of_left() {
        let left = spec(KernelKind::RiemannLiouvilleLeft, 1.6);
        let right = spec(KernelKind::RiemannLiouvilleRight, 1.6);
        for i in 0..=50 {
            for j in 0..=50 {
                let (x, z) = (i as f64 / 50.0, j as f64 / 50.0);
                assert_eq!(right.eval(x, z), left.eval(1.0 - x, 1.0 - z));
            }
        }
    }

    #[test]
    fn left_kernel_is_persymmetric() {
        // G(z, x) = G(1-x, 1-z): transposing the left kernel equals
        // reflecting it, which is why the reflection-defined right kernel is
        // also the Green's function of the adjoint operator.
        let k = spec(KernelKind::RiemannLiouvilleLeft, 1.4);
        for i in 0..=60 {
            for j in 0..=60 {
                let (x, z) = (i as f64 / 60.0, j as f64 / 60.0);
                let lhs = k.eval(z, x);
                let rhs = k.eval(1.0 - x, 1.0 - z);
                assert!((lhs - rhs).abs() <= 1e-15, "({x}, {z}): {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn grid_shape_and_corners() {
        let k = spec(KernelKind::BrownianBridge, 2.0);
        let g = k.grid(3, 3).unwrap();
        assert_eq!(g.len(), 3);
        // First/last rows and columns vanish; center is G(0.5, 0.5) = 0.25.
        for j in 0..3 {
            assert_eq!(g[0][j], 0.0);
            assert_eq!(g[2][j], 0.0);
            assert_eq!(g[j][0], 0.0);
        }
        assert_eq!(g[1][1], 0.25);
        assert!(k.grid(1, 3).is_err());
    }

    #[test]
    fn grid_symmetry_matches_kernel_symmetry() {
        let k2 = spec(KernelKind::RiemannLiouvilleLeft, 2.0);
        let g = k2.grid(101, 101).unwrap();
        let mut max_asym: f64 = 0.0;
        for i in 0..101 {
            for j in 0..101 {
                max_asym = max_asym.max((g[i][j] - g[j][i]).abs());
            }
        }
        assert!(max_asym <= 1e-12);

        let k = spec(KernelKind::RiemannLiouvilleLeft, 1.5);
        let g = k.grid(101, 101).unwrap();
        let mut max_asym: f64 = 0.0;
        for i in 0..101 {
            for j in 0..101 {
                max_asym = max_asym.max((g[i][j] - g[j][i]).abs());
            }
        }
        assert!(max_asym > 0.0, "non-symmetry not witnessed on the grid");
    }
}
