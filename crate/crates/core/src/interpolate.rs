//! Sampling centers, fill distance, and kernel interpolants
//! s(x) = sum_j c_j K(x, x_j).

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::linalg::{lu_solve, DenseMatrix};

/// How a node set was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Uniform,
    Chebyshev,
    Explicit,
}

/// Sorted, strictly increasing sampling centers in the open interval (0, 1).
///
/// Endpoints are excluded on purpose: every kernel in this crate vanishes at
/// 0 and 1, so endpoint samples would force zero rows in the kernel matrix.
#[derive(Debug, Clone)]
pub struct NodeSet {
    points: Vec<f64>,
    kind: NodeKind,
}

impl NodeSet {
    /// n equally spaced interior points x_j = j / (n + 1), j = 1..n.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "node count must be >= 1");
        let points = (1..=n).map(|j| j as f64 / (n + 1) as f64).collect();
        Self {
            points,
            kind: NodeKind::Uniform,
        }
    }

    /// First-kind Chebyshev roots mapped to (0, 1), ascending:
    /// x_j = (1 - cos((2j - 1) pi / 2n)) / 2, j = 1..n.
    pub fn chebyshev(n: usize) -> Self {
        assert!(n >= 1, "node count must be >= 1");
        let points = (1..=n)
            .map(|j| {
                let theta = (2 * j - 1) as f64 * std::f64::consts::PI / (2 * n) as f64;
                (1.0 - theta.cos()) / 2.0
            })
            .collect();
        Self {
            points,
            kind: NodeKind::Chebyshev,
        }
    }

    /// Caller-supplied centers; must be strictly increasing and interior.
    pub fn explicit(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidNodes {
                reason: "node set is empty".to_string(),
            });
        }
        for w in points.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidNodes {
                    reason: format!("points not strictly increasing: {} then {}", w[0], w[1]),
                });
            }
        }
        if points[0] <= 0.0 || *points.last().unwrap() >= 1.0 {
            return Err(Error::InvalidNodes {
                reason: "points must lie strictly inside (0, 1)".to_string(),
            });
        }
        Ok(Self {
            points,
            kind: NodeKind::Explicit,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    /// Fill distance over [0, 1]: the largest distance from a point of the
    /// domain to its nearest center, i.e. the maximum of x_1, 1 - x_N, and
    /// half of every interior gap.
    pub fn fill_distance(&self) -> f64 {
        let mut h = self.points[0].max(1.0 - self.points[self.points.len() - 1]);
        for w in self.points.windows(2) {
            h = h.max(0.5 * (w[1] - w[0]));
        }
        h
    }
}

/// Kernel matrix K with (K)_ij = K(x_i, x_j).
pub fn kernel_matrix(spec: &KernelSpec, nodes: &NodeSet) -> DenseMatrix {
    let pts = nodes.points();
    DenseMatrix::from_fn(pts.len(), |i, j| spec.eval(pts[i], pts[j]))
}

/// A fitted kernel interpolant. The kernels vanish on the boundary, so
/// s(0) = s(1) = 0 for every coefficient vector.
#[derive(Debug, Clone)]
pub struct Interpolant {
    spec: KernelSpec,
    nodes: NodeSet,
    coeffs: Vec<f64>,
}

impl Interpolant {
    /// Assemble an interpolant from parts; `galerkin` uses this to wrap
    /// coefficient vectors it solved for.
    pub fn from_coeffs(spec: KernelSpec, nodes: NodeSet, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != nodes.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                actual: coeffs.len(),
            });
        }
        Ok(Self {
            spec,
            nodes,
            coeffs,
        })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// s(x) = sum_j c_j K(x, x_j).
    pub fn eval(&self, x: f64) -> f64 {
        self.nodes
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(xj, c)| c * self.spec.eval(x, *xj))
            .sum()
    }

    pub fn eval_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// CSV dump of (node, coefficient) pairs for inspection.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,coefficient\n");
        for (x, c) in self.nodes.points().iter().zip(&self.coeffs) {
            out.push_str(&format!("{},{}\n", crate::study::sci(*x, 16), crate::study::sci(*c, 16)));
        }
        out
    }
}

/// Solve the kernel system K c = y so the interpolant matches the data at
/// the centers.
pub fn fit_interpolant(spec: KernelSpec, nodes: NodeSet, values: &[f64]) -> Result<Interpolant> {
    if values.len() != nodes.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            actual: values.len(),
        });
    }
    let k = kernel_matrix(&spec, &nodes);
    let coeffs = lu_solve(&k, values)?;
    Ok(Interpolant {
        spec,
        nodes,
        coeffs,
    })
}

/// The n-point evaluation grid for error studies: equally spaced on [0, 1]
/// including both endpoints, x_i = (i - 1) / (n - 1). Studies use n = 1000,
/// which makes endpoint behavior visible.
pub fn evaluation_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}
