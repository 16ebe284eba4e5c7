//! Formal branches of the curve at nonsingular points, order sequences and
//! the Frobenius osculating-hyperplane test.

use crate::error::{Error, Result};
use crate::ff::{linalg, FieldCtx, FqElem, PowerSeries};
use crate::variety::{jacobian, jacobian_rank, DiagonalSystem, ProjPoint};

/// `x_i(t)`, one series per coordinate, centered at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub ctx: FieldCtx,
    pub center: ProjPoint,
    pub series: Vec<PowerSeries>,
    /// coordinate fixed to the constant `1`
    pub chart: usize,
    /// coordinate equal to `center + t`
    pub param: usize,
    pub precision: usize,
}

/// Lifts the branch through `center` coefficient by coefficient.
///
/// In the chart where the leading coordinate is `1`, the Jacobian of the
/// remaining `m - 1` coordinates has a one-dimensional kernel. The parameter
/// is the first coordinate on which that kernel is nonzero; every other
/// coefficient of degree `n` solves `J' a_n = -r_n`, where `r_n` is the
/// degree-`n` residual with the unknowns set to zero.
pub fn branch_expand(sys: &DiagonalSystem, center: &ProjPoint, precision: usize) -> Result<Branch> {
    let ctx = sys.ctx();
    let m = sys.m();
    if center.len() != m || !crate::variety::is_solution(sys, center.coords()) {
        return Err(Error::InvalidArgument("the center is not a point of the system".into()));
    }
    let r = sys.exponents().len();
    if r + 2 != m || jacobian_rank(sys, center.coords()) != r {
        return Err(Error::SingularPoint);
    }
    let xi = center.coords();
    let chart = xi.iter().position(|c| !c.is_zero()).expect("projective point");
    let others: Vec<usize> = (0..m).filter(|&i| i != chart).collect();
    let jac = jacobian(sys, xi);
    let jo: linalg::Matrix = jac.iter().map(|row| others.iter().map(|&i| row[i]).collect()).collect();
    let kernel = linalg::nullspace(ctx, &jo, others.len());
    if kernel.len() != 1 {
        return Err(Error::SingularPoint);
    }
    let kpos = kernel[0].iter().position(|c| !c.is_zero()).expect("kernel vector is nonzero");
    let param = others[kpos];
    let unknowns: Vec<usize> = others.iter().copied().filter(|&i| i != param).collect();
    let jsub: linalg::Matrix = jac.iter().map(|row| unknowns.iter().map(|&i| row[i]).collect()).collect();
    if linalg::rank(ctx, &jsub) != r {
        return Err(Error::InvariantViolation("Jacobian submatrix is singular".into()));
    }

    let n = precision.max(2);
    let mut series: Vec<PowerSeries> = xi.iter().map(|&c| PowerSeries::constant(ctx, c, n)).collect();
    series[param] = PowerSeries::linear(ctx, xi[param], n);
    for deg in 1..n {
        // residual coefficient of t^deg with the unknown degree-deg coefficients at zero
        let trunc: Vec<PowerSeries> = series.iter().map(|s| s.truncate(deg + 1)).collect();
        let rhs: Vec<FqElem> = sys
            .exponents()
            .iter()
            .map(|&k| {
                let s = trunc.iter().fold(ctx.zero(), |acc, x| ctx.add(acc, x.pow(k as u64).coeff(deg)));
                ctx.neg(s)
            })
            .collect();
        let sol = linalg::solve(ctx, &jsub, &rhs)?;
        for (&i, &a) in unknowns.iter().zip(&sol) {
            series[i].set_coeff(deg, a);
        }
    }
    Ok(Branch { ctx: ctx.clone(), center: center.clone(), series, chart, param, precision: n })
}

impl Branch {
    /// Every equation vanishes on the series to the working precision.
    pub fn residuals_vanish(&self, sys: &DiagonalSystem) -> bool {
        let ctx = &self.ctx;
        sys.exponents().iter().all(|&k| {
            let zero = PowerSeries::zero(ctx, self.precision);
            let s = self.series.iter().try_fold(zero, |acc, x| acc.add(&x.pow(k as u64)));
            s.is_ok_and(|s| s.is_zero())
        })
    }

    /// `m x N` matrix of series coefficients.
    pub fn coefficient_matrix(&self) -> linalg::Matrix {
        self.series.iter().map(|s| s.coeffs().to_vec()).collect()
    }

    /// Pivot columns of the row-reduced coefficient matrix.
    pub fn pivots(&self) -> Vec<usize> {
        let mut mat = self.coefficient_matrix();
        linalg::row_reduce(&self.ctx, &mut mat)
    }

    /// `ord(sum_i xi_i^p x_i(t))`, `None` if the series vanishes to precision.
    pub fn hermitian_tangent_order(&self) -> Option<usize> {
        let ctx = &self.ctx;
        let mut acc = PowerSeries::zero(ctx, self.precision);
        for (&c, s) in self.center.coords().iter().zip(&self.series) {
            acc = acc.add(&s.scale(ctx.frobenius(c, 1))).expect("same field");
        }
        acc.order()
    }

    /// Whether every hyperplane meeting the branch with order at least
    /// `last_order` passes through the Frobenius image of the center.
    pub fn frobenius_osculating_check(&self, last_order: usize) -> bool {
        let ctx = &self.ctx;
        let m = self.series.len();
        let cols = last_order.min(self.precision);
        // rows of the transpose: one per coefficient degree below the last order
        let mt: linalg::Matrix = (0..cols).map(|j| self.series.iter().map(|s| s.coeff(j)).collect()).collect();
        let phi: Vec<FqElem> = self.center.coords().iter().map(|&c| ctx.frobenius(c, 1)).collect();
        linalg::nullspace(ctx, &mt, m).iter().all(|h| {
            h.iter().zip(&phi).fold(ctx.zero(), |a, (&x, &y)| ctx.add(a, ctx.mul(x, y))).is_zero()
        })
    }
}

/// Orders of the curve at a point, with the branch that produced them.
///
/// When `complete` is false fewer than `m - 1` pivots appeared below the
/// precision cap; every missing order is then at least `branch.precision`.
#[derive(Clone, Debug)]
pub struct OrderSequence {
    pub orders: Vec<usize>,
    pub complete: bool,
    pub branch: Branch,
}

impl OrderSequence {
    /// The last order, or a lower bound for it when the sequence is incomplete.
    pub fn last_order_bound(&self) -> usize {
        if self.complete {
            *self.orders.last().expect("nonempty order sequence")
        } else {
            self.branch.precision
        }
    }

    pub fn last(&self) -> Option<usize> {
        self.complete.then(|| *self.orders.last().expect("nonempty order sequence"))
    }
}

/// Default starting precision `3p`.
pub fn default_precision(p: u64) -> usize {
    3 * p as usize
}

/// Default precision cap `8p`.
pub fn default_cap(p: u64) -> usize {
    8 * p as usize
}

/// Lifts at `center` and reads off the orders, doubling the precision while
/// fewer than `m - 1` pivots appear or the last one sits within `p` of the
/// end. Stops at `cap` and returns whatever was found.
pub fn order_sequence_partial(
    sys: &DiagonalSystem,
    center: &ProjPoint,
    start: Option<usize>,
    cap: Option<usize>,
) -> Result<OrderSequence> {
    let p = sys.ctx().p();
    let cap = cap.unwrap_or_else(|| default_cap(p));
    let want = sys.m() - 1;
    let mut n = start.unwrap_or_else(|| default_precision(p)).min(cap);
    loop {
        let branch = branch_expand(sys, center, n)?;
        let pivots = branch.pivots();
        if pivots.len() > want {
            return Err(Error::InvariantViolation(format!(
                "{} independent coordinates, expected {want}",
                pivots.len()
            )));
        }
        let complete = pivots.len() == want && pivots.last().is_some_and(|&l| l + p as usize <= n);
        if complete || n >= cap {
            return Ok(OrderSequence { orders: pivots, complete, branch });
        }
        n = (2 * n).min(cap);
    }
}

/// [`order_sequence_partial`] with the default start and cap; an incomplete
/// sequence is an error.
pub fn order_sequence(sys: &DiagonalSystem, center: &ProjPoint, start: Option<usize>) -> Result<OrderSequence> {
    let os = order_sequence_partial(sys, center, start, None)?;
    if os.complete {
        Ok(os)
    } else {
        Err(Error::PrecisionCap { cap: os.branch.precision })
    }
}

/// The rational point `(1 : eta^(p-2) : .. : eta)` for the smallest primitive root `eta`.
pub fn eigen_center(ctx: &FieldCtx) -> Result<ProjPoint> {
    let p = ctx.p();
    let eta = FieldCtx::prime(p)?.primitive_element();
    let eta = ctx.from_int(eta.code() as i64);
    ProjPoint::new(ctx, (0..p - 1).map(|j| ctx.pow(eta, (p - 1 - j) % (p - 1))).collect())
}

/// The branch in the frame `X_j = sum_i eta^((j-1)(i-1)) Y_i`, scaled so
/// `y_{p-1} = 1` and reparametrized so `y_{p-2} = t`.
#[derive(Clone, Debug)]
pub struct Eigenframe {
    pub eta: FqElem,
    /// `y[k-1]` is the series `y_k(t)`
    pub y: Vec<PowerSeries>,
}

impl Eigenframe {
    /// `alpha_{k,i}`: coefficient of `t^i` in `y_k`.
    pub fn alpha(&self, k: usize, i: usize) -> FqElem {
        self.y[k - 1].coeff(i)
    }

    /// Nonzero coefficients `alpha_{k,i}` with `2 <= k <= p-3`, `i >= 1`
    /// and `i + k` not divisible by `p - 1`.
    pub fn off_pattern(&self) -> Vec<(usize, usize)> {
        let pm1 = self.y.len();
        let mut bad = Vec::new();
        for k in 2..=pm1.saturating_sub(2) {
            for i in 1..self.y[k - 1].precision() {
                if !self.alpha(k, i).is_zero() && (i + k) % pm1 != 0 {
                    bad.push((k, i));
                }
            }
        }
        bad
    }
}

pub fn transform_to_eigenframe(branch: &Branch) -> Result<Eigenframe> {
    let ctx = &branch.ctx;
    let p = ctx.p();
    let m = branch.series.len();
    if m as u64 != p - 1 {
        return Err(Error::InvalidArgument(format!("the eigenframe needs m = p - 1, got m = {m}")));
    }
    let n = branch.precision;
    let eta = ctx.from_int(FieldCtx::prime(p)?.primitive_element().code() as i64);
    // W[j][i] = eta^(j i); its inverse is (1/(p-1)) eta^(-j i)
    let scale = ctx.inv(ctx.from_int(m as i64))?;
    let eta_inv = ctx.inv(eta)?;
    let mut y = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = PowerSeries::zero(ctx, n);
        for (j, x) in branch.series.iter().enumerate() {
            let w = ctx.mul(scale, ctx.pow(eta_inv, (i * j) as u64));
            acc = acc.add(&x.scale(w))?;
        }
        y.push(acc);
    }
    let last = y[m - 1].inverse().map_err(|_| {
        Error::InvalidArgument("the center lies on the hyperplane Y_(p-1) = 0".into())
    })?;
    let y: Vec<PowerSeries> = y.iter().map(|s| s.mul(&last)).collect::<Result<_>>()?;
    let reparam = y[m - 2].reverse()?;
    let y = y.iter().map(|s| s.compose(&reparam)).collect::<Result<Vec<_>>>()?;
    Ok(Eigenframe { eta, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::splitting_degree;
    use crate::symmetry::{apply_perm, Permutation};
    use crate::variety::{special_point_epsilon, special_point_omega, theta_polynomial};

    fn bring(p: u64, k: u32, m: usize) -> DiagonalSystem {
        DiagonalSystem::bring(&FieldCtx::new(p, k).unwrap(), m).unwrap()
    }

    #[test]
    fn residuals_vanish_at_omega() {
        for (p, m, n) in [(7, 6, 15), (11, 10, 25), (11, 5, 20)] {
            let sys = bring(p, 1, m);
            let center = special_point_omega(sys.ctx(), m).unwrap();
            let b = branch_expand(&sys, &center, n).unwrap();
            assert!(b.residuals_vanish(&sys));
            for (s, &c) in b.series.iter().zip(center.coords()) {
                assert_eq!(s.coeff(0), c);
            }
            assert_eq!(b.series[b.param].sub(&PowerSeries::constant(&b.ctx, c0(&b), n)).unwrap().order(), Some(1));
        }
    }

    fn c0(b: &Branch) -> FqElem {
        b.center.coords()[b.param]
    }

    #[test]
    fn singular_points_are_rejected() {
        let sys = bring(11, 1, 5);
        let ones = ProjPoint::from_ints(sys.ctx(), &[1, 1, 1, 1, 1]).unwrap();
        assert!(branch_expand(&sys, &ones, 10).is_err());
    }

    #[test]
    fn order_sequences_at_rational_points() {
        let sys = bring(7, 1, 6);
        let os = order_sequence(&sys, &eigen_center(sys.ctx()).unwrap(), None).unwrap();
        assert_eq!(os.orders, vec![0, 1, 2, 3, 10]);
        assert_eq!(os.branch.hermitian_tangent_order(), Some(10));

        let sys = bring(11, 1, 10);
        let center = eigen_center(sys.ctx()).unwrap();
        assert!(matches!(order_sequence(&sys, &center, None), Err(Error::PrecisionCap { cap: 88 })));
        let os = order_sequence_partial(&sys, &center, None, Some(200)).unwrap();
        assert!(os.complete);
        assert_eq!(os.orders, vec![0, 1, 2, 3, 4, 5, 16, 27, 148]);
        assert_eq!(os.branch.hermitian_tangent_order(), Some(148));
        assert!(os.branch.frobenius_osculating_check(148));
    }

    #[test]
    fn incomplete_sequence_bounds_the_last_order() {
        let sys = bring(13, 1, 12);
        let os = order_sequence_partial(&sys, &eigen_center(sys.ctx()).unwrap(), None, None).unwrap();
        assert!(!os.complete);
        assert_eq!(os.branch.precision, 104);
        assert_eq!(os.orders, vec![0, 1, 2, 3, 4, 5, 6, 19, 32]);
        assert!(os.last_order_bound() >= 22);
    }

    #[test]
    fn order_sequence_is_stabilizer_invariant() {
        let sys = bring(7, 1, 6);
        let ctx = sys.ctx();
        let center = special_point_omega(ctx, 6).unwrap();
        let base = order_sequence(&sys, &center, None).unwrap().orders;
        for g in ["2,3,4,5,6,1", "2,1,3,4,5,6", "6,5,4,3,2,1"] {
            let image = apply_perm(ctx, &Permutation::parse(g).unwrap(), &center).unwrap();
            assert_eq!(order_sequence(&sys, &image, None).unwrap().orders, base);
        }
    }

    #[test]
    fn frobenius_containment() {
        let sys = bring(7, 1, 6);
        let os = order_sequence(&sys, &eigen_center(sys.ctx()).unwrap(), None).unwrap();
        assert!(os.branch.frobenius_osculating_check(os.last().unwrap()));

        let sys = bring(7, 4, 6);
        let eps = special_point_epsilon(sys.ctx(), 6).unwrap();
        let os = order_sequence(&sys, &eps, None).unwrap();
        assert_eq!(&os.orders[..2], &[0, 1]);
        assert!(os.branch.frobenius_osculating_check(os.last().unwrap()), "epsilon: {:?}", os.orders);
    }

    #[test]
    fn frobenius_containment_at_theta_point() {
        let f = theta_polynomial(7, 6).unwrap();
        let d = splitting_degree(&f).unwrap() as u32;
        let sys = bring(7, d, 6);
        let ctx = sys.ctx();
        let mut c = f.lift(ctx).unwrap().roots();
        c.extend([ctx.one(), ctx.one()]);
        let center = ProjPoint::new(ctx, c).unwrap();
        let os = order_sequence(&sys, &center, None).unwrap();
        assert_eq!(&os.orders[..2], &[0, 1]);
        assert!(os.branch.frobenius_osculating_check(os.last().unwrap()), "theta: {:?}", os.orders);
    }

    #[test]
    fn eigenframe_coefficients() {
        for p in [7u64, 11] {
            let sys = bring(p, 1, p as usize - 1);
            let b = branch_expand(&sys, &eigen_center(sys.ctx()).unwrap(), 3 * p as usize).unwrap();
            let e = transform_to_eigenframe(&b).unwrap();
            let ctx = sys.ctx();
            let k = p as usize;
            assert!(e.y[0].is_zero(), "p={p}");
            assert_eq!(e.alpha(k - 3, 2), ctx.from_int(2), "p={p}");
            assert_eq!(e.alpha(k - 4, 3), ctx.from_int(5), "p={p}");
            assert!(e.off_pattern().is_empty(), "p={p}: {:?}", e.off_pattern());
            for kk in 2..=k - 3 {
                assert!(e.y[kk - 1].order().is_none_or(|o| o >= k - 1 - kk));
            }
        }
    }
}
