//! Kernel Galerkin discretization of fractional two-point boundary value
//! problems and Crank-Nicolson time stepping for fractional diffusion.
//!
//! Trial and test space are both the span of kernel translates G(., x_j).
//! Because -D^a G(., x_j) is the Dirac delta at x_j, testing against
//! G(., x_i) collapses the stiffness entry <-D^a G(., x_j), G(., x_i)> to a
//! plain kernel evaluation G(x_j, x_i): the system matrix is the transposed
//! kernel matrix, assembled without any quadrature, and no fractional
//! derivative is ever computed numerically. The transpose matters: the
//! fractional kernels are non-symmetric, and orienting the matrix the other
//! way pairs the load with the adjoint problem and does not converge.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interpolate::{kernel_matrix, Interpolant, NodeSet};
use crate::kernel::KernelSpec;
use crate::linalg::{lu_solve, DenseMatrix};
use crate::quadrature::QuadratureRule;

/// A two-point boundary value problem -D^a u = f with homogeneous
/// Dirichlet data. The kernel must match the operator side: left kernel for
/// left derivatives, right kernel for right derivatives.
pub struct BvpProblem<'a> {
    pub spec: KernelSpec,
    pub forcing: &'a (dyn Fn(f64) -> f64 + Sync),
    pub exact: Option<&'a (dyn Fn(f64) -> f64 + Sync)>,
}

/// The fractional diffusion problem du/dt - D^a u = q on (0, 1) x (t0, t1]
/// with u(., t0) = g and homogeneous Dirichlet data. Unit diffusivity is
/// assumed throughout: a variable coefficient would break the delta
/// identity that collapses the stiffness matrix to kernel values.
pub struct DiffusionProblem<'a> {
    pub spec: KernelSpec,
    pub source: &'a (dyn Fn(f64, f64) -> f64 + Sync),
    pub initial: &'a (dyn Fn(f64) -> f64 + Sync),
    pub t0: f64,
    pub t1: f64,
    pub nt: usize,
}

/// Load vector f_i = int f(x) G(x, x_i) dx, with the kink at x_i added to
/// the quadrature breakpoints. Components are independent and computed in
/// parallel; each component's panel sum is sequential, so the result does
/// not depend on the schedule.
pub fn assemble_load(
    spec: &KernelSpec,
    nodes: &NodeSet,
    forcing: &(dyn Fn(f64) -> f64 + Sync),
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    nodes
        .points()
        .par_iter()
        .map(|&xi| {
            let cell = rule.with_breakpoints(&[xi]);
            cell.integrate(|x| forcing(x) * spec.eval(x, xi))
        })
        .collect()
}

/// Galerkin system matrix: entry (i, j) is G(x_j, x_i), the transposed
/// kernel matrix. Pure kernel evaluations, no quadrature.
pub fn galerkin_matrix(spec: &KernelSpec, nodes: &NodeSet) -> DenseMatrix {
    let pts = nodes.points();
    DenseMatrix::from_fn(pts.len(), |i, j| spec.eval(pts[j], pts[i]))
}

/// Solve the boundary value problem; the returned interpolant is the
/// Galerkin solution u_N = sum_j c_j G(., x_j).
pub fn solve_bvp(
    problem: &BvpProblem<'_>,
    nodes: &NodeSet,
    rule: &QuadratureRule,
) -> Result<Interpolant> {
    let stiffness = galerkin_matrix(&problem.spec, nodes);
    let load = assemble_load(&problem.spec, nodes, problem.forcing, rule)?;
    let coeffs = lu_solve(&stiffness, &load)?;
    Interpolant::from_coeffs(problem.spec, nodes.clone(), coeffs)
}

/// Max over the test points of |int G(x, z) f(z) dz - u(x)|.
///
/// The Green's representation holds exactly for the true kernel, so this is
/// the oracle validating both the kernel formulas and the reflection
/// construction of the right kernel, independent of any linear solve.
pub fn greens_reproduction(
    problem: &BvpProblem<'_>,
    rule: &QuadratureRule,
    test_points: &[f64],
) -> Result<f64> {
    let exact = problem.exact.ok_or(Error::MissingExactSolution)?;
    let mut worst = 0.0_f64;
    for &x in test_points {
        let cell = rule.with_breakpoints(&[x]);
        let value = cell.integrate(|z| problem.spec.eval(x, z) * (problem.forcing)(z))?;
        worst = worst.max((value - exact(x)).abs());
    }
    Ok(worst)
}

/// Mass matrix A_ij = int G(x, x_i) G(x, x_j) dx with kinks at both
/// centers. Symmetric by construction: the upper triangle is computed (in
/// parallel across entries) and mirrored.
pub fn assemble_mass(
    spec: &KernelSpec,
    nodes: &NodeSet,
    rule: &QuadratureRule,
) -> Result<DenseMatrix> {
    let pts = nodes.points();
    let n = pts.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let entries: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (xi, xj) = (pts[i], pts[j]);
            let cell = rule.with_breakpoints(&[xi, xj]);
            cell.integrate(|x| spec.eval(x, xi) * spec.eval(x, xj))
        })
        .collect::<Result<_>>()?;
    let mut a = DenseMatrix::zeros(n);
    for (&(i, j), &v) in pairs.iter().zip(&entries) {
        a.set(i, j, v);
        a.set(j, i, v);
    }
    Ok(a)
}

/// March the kernel Galerkin Crank-Nicolson scheme
///
/// ```text
/// (A + tau/2 S) c^(n+1) = (A - tau/2 S) c^n + tau f^(n+1/2)
/// ```
///
/// from the interpolated initial profile and return the coefficient history
/// c^0 .. c^nt. S is the Galerkin (transposed kernel) matrix, A the mass
/// matrix, and the source vector is evaluated at the interval midpoint
/// t0 + tau (n + 1/2). The left-hand matrix is factored once and reused.
pub fn crank_nicolson(
    problem: &DiffusionProblem<'_>,
    nodes: &NodeSet,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<f64>>> {
    if problem.nt < 1 {
        return Err(Error::InvalidStudy {
            reason: "diffusion needs at least one time step".to_string(),
        });
    }
    let tau = (problem.t1 - problem.t0) / problem.nt as f64;
    let spec = &problem.spec;

    // c^0 interpolates the initial profile: u_N(x_j, t0) = g(x_j).
    let g_values: Vec<f64> = nodes.points().iter().map(|&x| (problem.initial)(x)).collect();
    let interp_matrix = kernel_matrix(spec, nodes);
    let c0 = lu_solve(&interp_matrix, &g_values)?;

    let stiffness = galerkin_matrix(spec, nodes);
    let mass = assemble_mass(spec, nodes, rule)?;
    let lhs = mass.add_scaled(0.5 * tau, &stiffness).lu()?;
    let rhs_matrix = mass.add_scaled(-0.5 * tau, &stiffness);

    let mut history = Vec::with_capacity(problem.nt + 1);
    history.push(c0);
    for step in 0..problem.nt {
        let t_mid = problem.t0 + tau * (step as f64 + 0.5);
        let load = assemble_load(spec, nodes, &|x| (problem.source)(x, t_mid), rule)?;
        let prev = history.last().expect("history is nonempty");
        let mut rhs = rhs_matrix.mat_vec(prev);
        for (r, f) in rhs.iter_mut().zip(&load) {
            *r += tau * f;
        }
        history.push(lhs.solve(&rhs)?);
    }
    Ok(history)
}
