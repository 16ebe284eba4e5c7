//! The symmetric group acting on coordinates, and the short orbits on the curve.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FqElem};
use crate::variety::{enumerate_weighted, power_sum, DiagonalSystem, EnumConfig, ProjPoint};

/// Largest degree for which whole orbits are listed.
pub const MAX_ORBIT_DEGREE: usize = 8;

/// A permutation of `{0, .., m-1}` given by its images; printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidArgument(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(m: usize) -> Self {
        Self { images: (0..m).collect() }
    }

    /// Transposition of two 0-based indices.
    pub fn transposition(m: usize, i: usize, j: usize) -> Result<Self> {
        if i >= m || j >= m || i == j {
            return Err(Error::InvalidArgument(format!("bad transposition ({i} {j}) in degree {m}")));
        }
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(i, j);
        Ok(Self { images })
    }

    /// `i -> i+1 mod m`.
    pub fn cycle(m: usize) -> Self {
        Self { images: (0..m).map(|i| (i + 1) % m).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.degree()), |acc, _| self.compose(&acc))
    }

    pub fn order(&self) -> usize {
        let id = Self::identity(self.degree());
        let mut g = self.clone();
        let mut n = 1;
        while g != id {
            g = self.compose(&g);
            n += 1;
        }
        n
    }

    /// Parses one-line image notation such as `2,3,1,4,5`.
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::Parse(format!("bad permutation entry {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.images.iter().map(|i| i + 1).join(","))
    }
}

/// Moves coordinate `i` to position `g(i)`.
pub fn apply_perm(ctx: &FieldCtx, g: &Permutation, pt: &ProjPoint) -> Result<ProjPoint> {
    if g.degree() != pt.len() {
        return Err(Error::InvalidArgument(format!(
            "permutation of degree {} applied to a point with {} coordinates",
            g.degree(),
            pt.len()
        )));
    }
    let mut c = vec![ctx.zero(); pt.len()];
    for (i, &x) in pt.coords().iter().enumerate() {
        c[g.images[i]] = x;
    }
    ProjPoint::new(ctx, c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: BTreeSet<ProjPoint>,
    pub stabilizer_order: u64,
}

pub fn orbit_and_stabilizer(ctx: &FieldCtx, pt: &ProjPoint) -> Result<Orbit> {
    let m = pt.len();
    if m > MAX_ORBIT_DEGREE {
        return Err(Error::InvalidArgument(format!("orbit listing is limited to m <= {MAX_ORBIT_DEGREE}")));
    }
    let mut points = BTreeSet::new();
    for images in (0..m).permutations(m) {
        points.insert(apply_perm(ctx, &Permutation { images }, pt)?);
    }
    let stabilizer_order = factorial(m as u32) / points.len() as u64;
    Ok(Orbit { points, stabilizer_order })
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitKind {
    OmegaOmega,
    OmegaEpsilon,
    OmegaTheta,
    Generic,
}

impl OrbitKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::OmegaOmega => "omega",
            Self::OmegaEpsilon => "epsilon",
            Self::OmegaTheta => "theta",
            Self::Generic => "generic",
        }
    }
}

/// Orbit class with the witnesses that decide it.
///
/// `s_theta` is the power sum of degree `m(m-1)/2`; it does not vanish on the
/// theta orbit in general (and vanishes on the epsilon orbit for odd `m`), so
/// the theta test uses the Vandermonde product of the same degree instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitLabel {
    pub kind: OrbitKind,
    pub s_m_minus_1: FqElem,
    pub s_m: FqElem,
    pub s_theta: FqElem,
    pub vandermonde: FqElem,
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(ctx: &FieldCtx, v: &[FqElem]) -> FqElem {
    let mut acc = ctx.one();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            acc = ctx.mul(acc, ctx.sub(a, b));
        }
    }
    acc
}

pub fn classify_orbit(ctx: &FieldCtx, pt: &ProjPoint) -> Result<OrbitLabel> {
    let m = pt.len() as u32;
    let s_m_minus_1 = power_sum(ctx, pt.coords(), m - 1);
    let s_m = power_sum(ctx, pt.coords(), m);
    let s_theta = power_sum(ctx, pt.coords(), m * (m - 1) / 2);
    let vandermonde = vandermonde(ctx, pt.coords());
    let fired: Vec<OrbitKind> = [
        (s_m_minus_1, OrbitKind::OmegaOmega),
        (s_m, OrbitKind::OmegaEpsilon),
        (vandermonde, OrbitKind::OmegaTheta),
    ]
    .into_iter()
    .filter(|(s, _)| s.is_zero())
    .map(|(_, k)| k)
    .collect();
    let kind = match fired.as_slice() {
        [] => OrbitKind::Generic,
        [k] => *k,
        _ => {
            return Err(Error::InvariantViolation(format!(
                "point {} lies in several short orbits: {fired:?}",
                pt.format(ctx)
            )))
        }
    };
    Ok(OrbitLabel { kind, s_m_minus_1, s_m, s_theta, vandermonde })
}

/// `((m-1)!, m (m-2)!, m!/2)`.
pub fn short_orbit_lengths(m: u32) -> (u64, u64, u64) {
    (factorial(m - 1), m as u64 * factorial(m - 2), factorial(m) / 2)
}

/// Points of the system with `x_i = x_j`, found by solving the system with
/// the two coordinates merged into one variable of weight 2.
pub fn transposition_fixed_points(
    sys: &DiagonalSystem,
    i: usize,
    j: usize,
    cfg: &EnumConfig,
) -> Result<Vec<ProjPoint>> {
    let m = sys.m();
    if i == j || i >= m || j >= m || m < 4 {
        return Err(Error::InvalidArgument(format!("bad coordinate pair ({i}, {j}) for m = {m}")));
    }
    let ctx = sys.ctx();
    let others: Vec<usize> = (0..m).filter(|&k| k != i && k != j).collect();
    let mut weights = vec![ctx.from_int(2)];
    weights.extend(std::iter::repeat_n(ctx.one(), m - 2));
    let (sols, _) = enumerate_weighted(ctx, &weights, sys.exponents(), cfg)?;
    let mut out = sols
        .into_iter()
        .map(|y| {
            let mut c = vec![ctx.zero(); m];
            c[i] = y[0];
            c[j] = y[0];
            for (&k, &v) in others.iter().zip(&y[1..]) {
                c[k] = v;
            }
            ProjPoint::new(ctx, c)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `2^(m/2) (m/2)! / m`. The odd-`m` variant is not integral and is refused.
pub fn involution_fixed_count(m: u32) -> Result<u64> {
    if m % 2 == 1 || m < 4 {
        return Err(Error::InvalidArgument(format!(
            "the fixed-point count is only defined for even m >= 4; for odd m the point stabilizer has odd order, got m = {m}"
        )));
    }
    let h = m / 2;
    Ok((1u64 << h) * factorial(h) / m as u64)
}

/// `((m-2)(m-3)(m-4), 3(m-2)^2)`.
pub fn theta_suborbit_counts(m: u64) -> (u64, u64) {
    ((m - 2) * (m - 3) * (m - 4), 3 * (m - 2) * (m - 2))
}

/// Counts the ordered final triples of the arrangements of the multiset
/// `{t, t, a_1, .., a_{m-2}}`, split by whether both `t`s stay in front.
pub fn theta_suborbit_counts_combinatorial(m: usize) -> Result<(u64, u64)> {
    if !(5..=MAX_ORBIT_DEGREE).contains(&m) {
        return Err(Error::InvalidArgument(format!("need 5 <= m <= {MAX_ORBIT_DEGREE}")));
    }
    // symbol 0 is the repeated value
    let mut multiset = vec![0usize, 0];
    multiset.extend(1..=m - 2);
    let mut short = BTreeSet::new();
    let mut long = BTreeSet::new();
    for arr in multiset.iter().copied().permutations(m).unique() {
        let tail = [arr[m - 3], arr[m - 2], arr[m - 1]];
        if tail.contains(&0) {
            long.insert(tail);
        } else {
            short.insert(tail);
        }
    }
    Ok((short.len() as u64, long.len() as u64))
}

/// Orbit-class histogram of a point set.
pub fn classify_all(ctx: &FieldCtx, points: &[ProjPoint]) -> Result<[usize; 4]> {
    let mut h = [0usize; 4];
    for pt in points {
        h[classify_orbit(ctx, pt)?.kind as usize] += 1;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{splitting_degree, FieldCtx};
    use crate::variety::{
        enumerate_projective_points, special_point_epsilon, special_point_omega, theta_polynomial,
    };

    fn pt(ctx: &FieldCtx, c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(ctx, c).unwrap()
    }

    #[test]
    fn apply_perm_examples() {
        let f = FieldCtx::prime(11).unwrap();
        let p = pt(&f, &[3, 9, 5, 4, 1]);
        assert_eq!(apply_perm(&f, &Permutation::identity(5), &p).unwrap(), p);
        let t = Permutation::transposition(5, 3, 4).unwrap();
        assert_eq!(apply_perm(&f, &t, &p).unwrap(), pt(&f, &[3, 9, 5, 1, 4]));
        let c = Permutation::cycle(5);
        let mut q = p.clone();
        for _ in 0..5 {
            q = apply_perm(&f, &c, &q).unwrap();
        }
        assert_eq!(q, p);
        assert!(apply_perm(&f, &Permutation::identity(4), &p).is_err());
    }

    #[test]
    fn permutation_notation() {
        let g = Permutation::parse("2,3,1,4,5").unwrap();
        assert_eq!(g.to_string(), "2,3,1,4,5");
        assert_eq!(g.order(), 3);
        assert!(Permutation::parse("1,1,2").is_err());
        assert!(Permutation::parse("0,1").is_err());
    }

    #[test]
    fn orbit_sizes_of_special_points() {
        let f11 = FieldCtx::prime(11).unwrap();
        let o = orbit_and_stabilizer(&f11, &special_point_omega(&f11, 5).unwrap()).unwrap();
        assert_eq!((o.points.len(), o.stabilizer_order), (24, 5));

        let f29 = FieldCtx::prime(29).unwrap();
        let o = orbit_and_stabilizer(&f29, &special_point_epsilon(&f29, 5).unwrap()).unwrap();
        assert_eq!((o.points.len(), o.stabilizer_order), (30, 4));
    }

    /// A theta point `(r_1 : r_2 : r_3 : 1 : 1)` built from the roots of the
    /// theta polynomial over its splitting field.
    fn theta_point(p: u64, m: usize) -> (FieldCtx, ProjPoint) {
        let f = theta_polynomial(p, m).unwrap();
        let d = splitting_degree(&f).unwrap() as u32;
        let big = FieldCtx::new(p, d).unwrap();
        let roots = f.lift(&big).unwrap().roots();
        assert_eq!(roots.len(), m - 2);
        let mut c = roots;
        c.extend([big.one(), big.one()]);
        (big.clone(), ProjPoint::new(&big, c).unwrap())
    }

    #[test]
    fn theta_point_orbit_and_label() {
        let (ctx, p) = theta_point(7, 5);
        let sys = DiagonalSystem::bring(&ctx, 5).unwrap();
        assert!(crate::variety::is_solution(&sys, p.coords()));
        let o = orbit_and_stabilizer(&ctx, &p).unwrap();
        assert_eq!((o.points.len(), o.stabilizer_order), (60, 2));
        let label = classify_orbit(&ctx, &p).unwrap();
        assert_eq!(label.kind, OrbitKind::OmegaTheta);
        // the degree-10 power sum is 80 on (r_1 : r_2 : r_3 : 1 : 1) over the integers
        let back = ctx.inv(p.coords()[4]).unwrap();
        assert_eq!(ctx.mul(label.s_theta, ctx.pow(back, 10)), ctx.from_int(80));
    }

    #[test]
    fn classify_examples() {
        let f11 = FieldCtx::prime(11).unwrap();
        assert_eq!(classify_orbit(&f11, &pt(&f11, &[3, 9, 5, 4, 1])).unwrap().kind, OrbitKind::OmegaOmega);
        let f29 = FieldCtx::prime(29).unwrap();
        assert_eq!(
            classify_orbit(&f29, &pt(&f29, &[12, 28, 17, 1, 0])).unwrap().kind,
            OrbitKind::OmegaEpsilon
        );
        // for odd m the epsilon points also kill the power sum of degree m(m-1)/2
        assert!(classify_orbit(&f29, &pt(&f29, &[12, 28, 17, 1, 0])).unwrap().s_theta.is_zero());
    }

    #[test]
    fn orbit_length_formulas() {
        assert_eq!(short_orbit_lengths(5), (24, 30, 60));
        assert_eq!(short_orbit_lengths(6), (120, 144, 360));
        assert_eq!(short_orbit_lengths(7), (720, 840, 2520));
    }

    #[test]
    fn class_sizes_over_full_fields() {
        // F_{29^2} contains the 5th and 4th roots of unity and splits the theta cubic
        let ctx = FieldCtx::new(29, 2).unwrap();
        let sys = DiagonalSystem::bring(&ctx, 5).unwrap();
        let pts = enumerate_projective_points(&sys, &EnumConfig::default()).unwrap().points;
        let h = classify_all(&ctx, &pts).unwrap();
        assert_eq!(&h[..3], &[24, 30, 60]);
        assert_eq!(h[3] % 120, 0);
    }

    #[test]
    fn transposition_fixed_point_counts() {
        let cfg = EnumConfig::default();
        for (m, want) in [(5usize, 6usize), (6, 24)] {
            let f = theta_polynomial(7, m).unwrap();
            let d = splitting_degree(&f).unwrap() as u32;
            let ctx = FieldCtx::new(7, d).unwrap();
            let sys = DiagonalSystem::bring(&ctx, m).unwrap();
            let fixed = transposition_fixed_points(&sys, m - 2, m - 1, &cfg).unwrap();
            assert_eq!(fixed.len(), want, "m={m} over 7^{d}");
            for p in &fixed {
                assert!(crate::variety::is_solution(&sys, p.coords()));
            }
        }
        // over F_7 itself the cubic does not split
        let ctx = FieldCtx::prime(7).unwrap();
        let sys = DiagonalSystem::bring(&ctx, 5).unwrap();
        assert!(transposition_fixed_points(&sys, 3, 4, &cfg).unwrap().len() < 6);
    }

    #[test]
    fn transposition_fixed_points_match_filter() {
        let ctx = FieldCtx::new(7, 2).unwrap();
        let sys = DiagonalSystem::bring(&ctx, 6).unwrap();
        let all = enumerate_projective_points(&sys, &EnumConfig::default()).unwrap().points;
        let want: Vec<ProjPoint> = all.into_iter().filter(|p| p.coords()[1] == p.coords()[4]).collect();
        assert_eq!(transposition_fixed_points(&sys, 1, 4, &EnumConfig::default()).unwrap(), want);
    }

    #[test]
    fn involution_counts() {
        assert_eq!(involution_fixed_count(6).unwrap(), 8);
        assert_eq!(involution_fixed_count(8).unwrap(), 48);
        assert!(involution_fixed_count(5).is_err());
    }

    #[test]
    fn stabilizer_of_omega_is_a_cycle() {
        let ctx = FieldCtx::prime(7).unwrap();
        let w = special_point_omega(&ctx, 6).unwrap();
        let c = Permutation::cycle(6);
        assert_eq!(c.order(), 6);
        assert_eq!(apply_perm(&ctx, &c, &w).unwrap(), w);
        // its involution fixes the predicted number of points of V(F_7)
        let u = c.pow(3);
        let sys = DiagonalSystem::bring(&ctx, 6).unwrap();
        let pts = enumerate_projective_points(&sys, &EnumConfig::default()).unwrap().points;
        let fixed = pts.iter().filter(|p| apply_perm(&ctx, &u, p).unwrap() == **p).count() as u64;
        assert_eq!(fixed, involution_fixed_count(6).unwrap());
    }

    #[test]
    fn suborbit_counts_match_combinatorics() {
        assert_eq!(theta_suborbit_counts(5), (6, 27));
        assert_eq!(theta_suborbit_counts(6), (24, 48));
        assert_eq!(theta_suborbit_counts(7), (60, 75));
        for m in 5..=8 {
            assert_eq!(theta_suborbit_counts_combinatorial(m).unwrap(), theta_suborbit_counts(m as u64));
        }
    }
}
