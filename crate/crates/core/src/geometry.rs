//! Degree and genus formulas, the plane quotient curve and Galois projections.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FqElem};
use crate::variety::{EnumConfig, ProjPoint};

fn factorial(n: u64) -> Result<i128> {
    (1..=n as i128).try_fold(1i128, |a, b| a.checked_mul(b)).ok_or(Error::Overflow("factorial"))
}

fn check_m(m: u64) -> Result<()> {
    if m < 5 {
        return Err(Error::InvalidArgument(format!("need m >= 5, got {m}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub m: u64,
    pub degree: i128,
    pub genus: i128,
    pub ambient_dim: u64,
}

pub fn invariants(m: u64) -> Result<CurveInvariants> {
    Ok(CurveInvariants { m, degree: degree(m)?, genus: genus(m)?, ambient_dim: m - 2 })
}

/// `(m-2)!`.
pub fn degree(m: u64) -> Result<i128> {
    check_m(m)?;
    factorial(m - 2)
}

/// `((m-2)(m-3)-4)(m-2)!/4 + 1`.
pub fn genus(m: u64) -> Result<i128> {
    check_m(m)?;
    let a = ((m - 2) * (m - 3) - 4) as i128;
    let t = a.checked_mul(factorial(m - 2)?).ok_or(Error::Overflow("genus"))?;
    if t % 4 != 0 {
        return Err(Error::InvariantViolation(format!("genus formula is not integral at m = {m}")));
    }
    Ok(t / 4 + 1)
}

/// Genus of the quotient by the permutations of the `m - l` coordinates
/// outside a set of `l` fixed ones.
pub fn quotient_genus(m: u64, l: u64) -> Result<i128> {
    check_m(m)?;
    if l < 2 || l > m - 2 {
        return Err(Error::InvalidArgument(format!("need 2 <= l <= m-2, got l = {l}")));
    }
    let n = ((m - 2) * (m - 3)) as i128 - 4 - ((m - l) * (m - 1 - l)) as i128;
    let num = n.checked_mul(factorial(m - 2)?).ok_or(Error::Overflow("quotient genus"))?;
    let den = 2 * factorial(m - l)?;
    if num % den != 0 || (num / den) % 2 != 0 {
        return Err(Error::InvariantViolation(format!("quotient genus is not integral at m = {m}, l = {l}")));
    }
    Ok((num / den + 2) / 2)
}

/// Homogeneous polynomial in `x, y, z` with integer coefficients; the
/// coefficient of `x^i y^j z^(d-i-j)` sits at `coeffs[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivariatePoly {
    degree: usize,
    coeffs: Vec<Vec<i64>>,
}

impl TrivariatePoly {
    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: (0..=degree).map(|i| vec![0; degree + 1 - i]).collect() }
    }

    /// Builds from `(i, j, k, c)` terms, all of degree `i + j + k`.
    pub fn from_terms(degree: usize, terms: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let mut p = Self::zero(degree);
        for &(i, j, k, c) in terms {
            if i + j + k != degree {
                return Err(Error::InvalidArgument(format!("term x^{i} y^{j} z^{k} is not of degree {degree}")));
            }
            p.coeffs[i][j] += c;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs[i][j]
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().flatten().filter(|&&c| c != 0).count()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (k, orow) in other.coeffs.iter().enumerate() {
                    for (l, &b) in orow.iter().enumerate() {
                        let t = a.checked_mul(b).ok_or(Error::Overflow("trivariate product"))?;
                        let c = &mut out.coeffs[i + k][j + l];
                        *c = c.checked_add(t).ok_or(Error::Overflow("trivariate product"))?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::InvalidArgument("degrees differ".into()));
        }
        let mut out = self.clone();
        for (r, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (a, &b) in r.iter_mut().zip(o) {
                *a -= b;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FqElem, y: FqElem, z: FqElem) -> FqElem {
        let mut acc = ctx.zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    let k = self.degree - i - j;
                    let t = ctx.mul(ctx.pow(x, i as u64), ctx.mul(ctx.pow(y, j as u64), ctx.pow(z, k as u64)));
                    acc = ctx.add(acc, ctx.mul(ctx.from_int(c), t));
                }
            }
        }
        acc
    }
}

/// The sum of all monomials of degree `m - 2`.
pub fn plane_quotient_poly(m: u64) -> Result<TrivariatePoly> {
    check_m(m)?;
    let d = (m - 2) as usize;
    let mut p = TrivariatePoly::zero(d);
    for row in p.coeffs.iter_mut() {
        row.iter_mut().for_each(|c| *c = 1);
    }
    Ok(p)
}

/// `G (x-y)(x-z)(y-z) = (x^m - z^m)(y - z) - (y^m - z^m)(x - z)` as integer polynomials.
pub fn verify_plane_identity(m: u64) -> Result<bool> {
    let g = plane_quotient_poly(m)?;
    let mu = m as usize;
    let lin = |a: (usize, usize, usize), b: (usize, usize, usize)| {
        TrivariatePoly::from_terms(1, &[(a.0, a.1, a.2, 1), (b.0, b.1, b.2, -1)])
    };
    let (x, y, z) = ((1, 0, 0), (0, 1, 0), (0, 0, 1));
    let lhs = g.mul(&lin(x, y)?)?.mul(&lin(x, z)?)?.mul(&lin(y, z)?)?;
    let xm_zm = TrivariatePoly::from_terms(mu, &[(mu, 0, 0, 1), (0, 0, mu, -1)])?;
    let ym_zm = TrivariatePoly::from_terms(mu, &[(0, mu, 0, 1), (0, 0, mu, -1)])?;
    let rhs = xm_zm.mul(&lin(y, z)?)?.sub(&ym_zm.mul(&lin(x, z)?)?)?;
    Ok(lhs == rhs)
}

/// `sum_{i+j+k=d} x^i y^j z^k = sum_e x^(d-e) h_e(y, z)` by Horner in `x`.
fn complete_sum(ctx: &FieldCtx, d: usize, x: FqElem, hyz: &[FqElem]) -> FqElem {
    (0..=d).fold(ctx.zero(), |acc, i| ctx.add(ctx.mul(acc, x), hyz[i]))
}

/// `h_e(y, z)` for `e = 0..=d`.
fn complete_sums_yz(ctx: &FieldCtx, d: usize, y: FqElem, z: FqElem) -> Vec<FqElem> {
    let mut h = vec![ctx.one()];
    let mut zp = ctx.one();
    for _ in 1..=d {
        zp = ctx.mul(zp, z);
        let next = ctx.add(ctx.mul(*h.last().unwrap(), y), zp);
        h.push(next);
    }
    h
}

/// Projective `F_q`-points of `G_{m-2} = 0`.
pub fn plane_point_count(ctx: &FieldCtx, m: u64, cfg: &EnumConfig) -> Result<u64> {
    check_m(m)?;
    let q = ctx.q();
    cfg.check(q as u128 * q as u128 + q as u128 + 1)?;
    let d = (m - 2) as usize;
    let one = ctx.one();
    let zero = ctx.zero();
    let on_curve = |x: FqElem, hyz: &[FqElem]| complete_sum(ctx, d, x, hyz).is_zero();
    // z = 1, split on y
    let affine: u64 = cfg.install(|| {
        (0..q)
            .into_par_iter()
            .map(|y| {
                let hyz = complete_sums_yz(ctx, d, FqElem(y), one);
                ctx.elements().filter(|&x| on_curve(x, &hyz)).count() as u64
            })
            .sum()
    });
    let h10 = complete_sums_yz(ctx, d, one, zero);
    let at_infinity = ctx.elements().filter(|&x| on_curve(x, &h10)).count() as u64;
    let h00 = complete_sums_yz(ctx, d, zero, zero);
    let corner = u64::from(on_curve(one, &h00));
    Ok(affine + at_infinity + corner)
}

/// Whether a classical plane-curve Stöhr–Voloch bound applies and its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvBound {
    pub bound: i128,
    /// `d < 2`: the `r = 2` bound does not apply.
    pub degenerate: bool,
}

/// `floor(((2g-2) + (q+2) d) / 2)`.
pub fn sv_plane_classical(q: u64, d: u64, g: i128) -> SvBound {
    sv_bound(q, d, g, &[1])
}

/// `floor(((nu_1 + .. + nu_{r-1})(2g-2) + (q+r) n) / r)` with `r - 1 = nus.len()`.
pub fn sv_bound(q: u64, n: u64, g: i128, nus: &[u64]) -> SvBound {
    let r = nus.len() as i128 + 1;
    let s: i128 = nus.iter().map(|&v| v as i128).sum();
    let num = s * (2 * g - 2) + (q as i128 + r) * n as i128;
    SvBound { bound: num.div_euclid(r), degenerate: (n as i128) < r }
}

/// The `(m-1)(m-2)` points `(a : b : 1)` with `a^m = b^m = 1`, `a, b != 1`, `a != b`.
pub fn plane_root_points(ctx: &FieldCtx, m: u64) -> Result<Vec<[FqElem; 3]>> {
    let roots = ctx.roots_of_unity(m)?;
    let mut out = Vec::new();
    for &a in &roots[1..] {
        for &b in &roots[1..] {
            if a != b {
                out.push([a, b, ctx.one()]);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    /// fiber size -> number of image points with that fiber size
    pub histogram: BTreeMap<usize, usize>,
    /// `(m - l)!`
    pub generic_size: usize,
    pub image_points: usize,
}

impl FiberReport {
    /// Every fiber divides `(m-l)!` and the largest fibers are generic.
    pub fn consistent(&self) -> bool {
        self.histogram.keys().all(|&s| s > 0 && self.generic_size.is_multiple_of(s))
            && self.histogram.keys().next_back().is_none_or(|&s| s == self.generic_size)
    }
}

/// Projects each point to the coordinates in `kept` (0-based) and counts fibers.
pub fn galois_projection_check(ctx: &FieldCtx, points: &[ProjPoint], kept: &[usize]) -> Result<FiberReport> {
    let m = points.first().map_or(0, |p| p.len());
    let mut kept = kept.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() < 2 || kept.iter().any(|&i| i >= m.max(1)) {
        return Err(Error::InvalidArgument(format!("need at least two kept indices below {m}")));
    }
    let mut fibers: HashMap<ProjPoint, usize> = HashMap::new();
    for pt in points {
        let img = ProjPoint::new(ctx, kept.iter().map(|&i| pt.coords()[i]).collect())?;
        *fibers.entry(img).or_default() += 1;
    }
    let mut histogram = BTreeMap::new();
    for &s in fibers.values() {
        *histogram.entry(s).or_default() += 1;
    }
    Ok(FiberReport {
        histogram,
        generic_size: factorial((m - kept.len()) as u64)? as usize,
        image_points: fibers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{enumerate_projective_points, DiagonalSystem};

    #[test]
    fn genus_examples() {
        assert_eq!(genus(5).unwrap(), 4);
        assert_eq!(genus(6).unwrap(), 49);
        assert_eq!(genus(10).unwrap(), 524161);
        assert_eq!(degree(5).unwrap(), 6);
        for m in 5..=12u64 {
            let lhs = 2 * genus(m).unwrap() - 2;
            let rhs = ((m - 2) * (m - 3) - 4) as i128 * factorial(m - 2).unwrap() / 2;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_genus_examples() {
        assert_eq!(quotient_genus(6, 3).unwrap(), 3);
        assert_eq!(quotient_genus(8, 3).unwrap(), 10);
        for m in 5..=12u64 {
            assert_eq!(quotient_genus(m, 2).unwrap(), 0);
            assert_eq!(quotient_genus(m, 3).unwrap(), ((m * m + 12 - 7 * m) / 2) as i128);
        }
        assert!(quotient_genus(6, 5).is_err());
    }

    #[test]
    fn plane_poly_shape() {
        assert_eq!(plane_quotient_poly(5).unwrap().term_count(), 10);
        assert_eq!(plane_quotient_poly(6).unwrap().term_count(), 15);
        assert_eq!(plane_quotient_poly(7).unwrap().term_count(), 21);
    }

    #[test]
    fn plane_identity() {
        for m in [5, 6, 20, 50] {
            assert!(verify_plane_identity(m).unwrap(), "m={m}");
        }
    }

    #[test]
    fn plane_counts_meet_the_bound() {
        let cfg = EnumConfig::default();
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(plane_point_count(&f7, 6, &cfg).unwrap(), 20);
        assert_eq!(sv_plane_classical(7, 4, 3), SvBound { bound: 20, degenerate: false });
        let f11 = FieldCtx::prime(11).unwrap();
        let g = quotient_genus(10, 3).unwrap();
        assert_eq!(g, 21);
        assert_eq!(plane_point_count(&f11, 10, &cfg).unwrap() as i128, sv_plane_classical(11, 8, g).bound);
    }

    #[test]
    fn plane_count_matches_naive_evaluation() {
        let cfg = EnumConfig::default();
        for (p, m) in [(7, 5), (7, 6), (11, 7)] {
            let ctx = FieldCtx::prime(p).unwrap();
            let g = plane_quotient_poly(m).unwrap();
            let mut n = 0;
            for x in ctx.elements() {
                for y in ctx.elements() {
                    n += u64::from(g.eval(&ctx, x, y, ctx.one()).is_zero());
                }
                n += u64::from(g.eval(&ctx, x, ctx.one(), ctx.zero()).is_zero());
            }
            n += u64::from(g.eval(&ctx, ctx.one(), ctx.zero(), ctx.zero()).is_zero());
            assert_eq!(plane_point_count(&ctx, m, &cfg).unwrap(), n, "p={p} m={m}");
        }
    }

    #[test]
    fn sv_examples() {
        assert_eq!(sv_plane_classical(49, 4, 3).bound, 104);
        assert!(sv_plane_classical(7, 1, 0).degenerate);
    }

    #[test]
    fn root_points_lie_on_the_plane_curve() {
        for (p, k, m) in [(7, 1, 6), (11, 1, 10), (11, 1, 5), (7, 2, 8)] {
            let ctx = FieldCtx::new(p, k).unwrap();
            let g = plane_quotient_poly(m).unwrap();
            let pts = plane_root_points(&ctx, m).unwrap();
            assert_eq!(pts.len() as u64, (m - 1) * (m - 2));
            for [a, b, c] in pts {
                assert!(g.eval(&ctx, a, b, c).is_zero());
            }
        }
    }

    #[test]
    fn projection_fibers() {
        let cfg = EnumConfig::default();
        let f7 = FieldCtx::prime(7).unwrap();
        let pts = enumerate_projective_points(&DiagonalSystem::bring(&f7, 6).unwrap(), &cfg).unwrap().points;
        let r = galois_projection_check(&f7, &pts, &[3, 4, 5]).unwrap();
        assert_eq!(r.generic_size, 6);
        assert!(r.consistent());
        assert_eq!(r.histogram.keys().next_back(), Some(&6));

        let all = galois_projection_check(&f7, &pts, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(all.histogram, BTreeMap::from([(1, 120)]));

        let q = FieldCtx::new(29, 2).unwrap();
        let pts = enumerate_projective_points(&DiagonalSystem::bring(&q, 5).unwrap(), &cfg).unwrap().points;
        let r = galois_projection_check(&q, &pts, &[2, 3, 4]).unwrap();
        assert_eq!(r.generic_size, 2);
        assert!(r.consistent());
    }
}
