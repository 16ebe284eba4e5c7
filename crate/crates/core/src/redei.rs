//! Solutions of `sum x_i^k = 0` in `p` variables over `F_p`: the Rédei
//! classification, the cone through `(1, .., 1)` and its hyperplane section.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FqElem};
use crate::symmetry::factorial;
use crate::variety::{
    affine_solutions, enumerate_affine_solutions, enumerate_projective_points, is_solution, DiagonalSystem,
    EnumConfig, ProjPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Constant,
    Permutation,
    Other,
}

/// All coordinates equal, a rearrangement of `F_p`, or neither.
pub fn classify_vector(v: &[FqElem], p: u64) -> SolutionKind {
    if v.windows(2).all(|w| w[0] == w[1]) {
        return SolutionKind::Constant;
    }
    let distinct: BTreeSet<u64> = v.iter().map(|x| x.code()).collect();
    if v.len() as u64 == p && distinct.len() as u64 == p {
        SolutionKind::Permutation
    } else {
        SolutionKind::Other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RedeiReport {
    pub p: u64,
    pub constant: u64,
    pub permutation: u64,
    pub other: u64,
    pub total: u64,
}

/// The system with exponents `1..=(p-1)/2` in `p` variables.
pub fn redei_system(p: u64) -> Result<DiagonalSystem> {
    let ctx = FieldCtx::prime(p)?;
    DiagonalSystem::new(&ctx, p as usize, (1..=(p as u32 - 1) / 2).collect())
}

/// The system with exponents `1..=p-3` in `p` variables, whose solutions form `W`.
pub fn cone_system(p: u64) -> Result<DiagonalSystem> {
    let ctx = FieldCtx::prime(p)?;
    if p < 5 {
        return Err(Error::InvalidArgument(format!("the cone needs p >= 5, got {p}")));
    }
    DiagonalSystem::new(&ctx, p as usize, (1..=p as u32 - 3).collect())
}

/// Exhaustive scan of `F_p^p`; refused when `p^p` exceeds the budget.
pub fn classify_redei_solutions(p: u64, cfg: &EnumConfig) -> Result<RedeiReport> {
    let sys = redei_system(p)?;
    let sols = affine_solutions(&sys, cfg)?;
    let mut report = RedeiReport { p, constant: 0, permutation: 0, other: 0, total: sols.len() as u64 };
    for v in &sols {
        match classify_vector(v, p) {
            SolutionKind::Constant => report.constant += 1,
            SolutionKind::Permutation => report.permutation += 1,
            SolutionKind::Other => report.other += 1,
        }
    }
    Ok(report)
}

/// Applies `count` random coordinate permutations to each solution and
/// reports whether every image is still a solution.
pub fn permutation_spot_check(sys: &DiagonalSystem, solutions: &[Vec<FqElem>], count: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).all(|_| {
        let Some(v) = solutions.choose(&mut rng) else { return true };
        let mut w = v.clone();
        w.shuffle(&mut rng);
        is_solution(sys, &w)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub samples: usize,
    /// sampled from the full solution set rather than from rearrangements of `F_p`
    pub exhaustive_source: bool,
    pub holds: bool,
}

/// Checks that `a + lambda (1, .., 1)` stays in `W` for sampled points `a`
/// and every `lambda`. Samples come from the full scan of `W` when `p^p` fits
/// the budget, otherwise from scaled rearrangements of `F_p` and constants.
pub fn w_cone_check(p: u64, samples: usize, seed: u64, cfg: &EnumConfig) -> Result<ConeReport> {
    let sys = cone_system(p)?;
    let ctx = sys.ctx().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pool, exhaustive_source) = match affine_solutions(&sys, cfg) {
        Ok(all) => (all, true),
        Err(Error::BudgetExceeded { .. }) => {
            let field: Vec<FqElem> = (0..p).map(|a| ctx.from_int(a as i64)).collect();
            let pool = (0..samples)
                .map(|_| {
                    let c = ctx.from_int(rng.gen_range(0..p) as i64);
                    if rng.gen_bool(0.1) {
                        vec![c; p as usize]
                    } else {
                        let mut v: Vec<FqElem> = field.iter().map(|&x| ctx.mul(c, x)).collect();
                        v.shuffle(&mut rng);
                        v
                    }
                })
                .collect();
            (pool, false)
        }
        Err(e) => return Err(e),
    };
    let mut holds = true;
    for _ in 0..samples {
        let a = pool.choose(&mut rng).expect("W contains the constants");
        if !is_solution(&sys, a) {
            return Err(Error::InvariantViolation("sampled vector is not in W".into()));
        }
        for lambda in 0..p {
            let l = ctx.from_int(lambda as i64);
            let t: Vec<FqElem> = a.iter().map(|&x| ctx.add(x, l)).collect();
            holds &= is_solution(&sys, &t);
        }
    }
    Ok(ConeReport { samples, exhaustive_source, holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperplaneSection {
    pub p: u64,
    /// `|V(F_p)|` for `m = p - 1`
    pub points: u128,
    /// nonzero affine solutions, `(p - 1) |V(F_p)|`
    pub affine: u128,
    /// `(p - 2)!`
    pub predicted: u128,
    /// the point count comes from enumeration rather than the formula
    pub enumerated: bool,
    /// the affine count was also obtained by a direct scan
    pub affine_scanned: bool,
}

pub fn count_hyperplane_section(p: u64, cfg: &EnumConfig) -> Result<HyperplaneSection> {
    let ctx = FieldCtx::prime(p)?;
    let sys = DiagonalSystem::bring(&ctx, p as usize - 1)?;
    let predicted = factorial(p as u32 - 2) as u128;
    let (points, enumerated) = match enumerate_projective_points(&sys, cfg) {
        Ok(set) => (set.points.len() as u128, true),
        Err(Error::BudgetExceeded { .. }) => (predicted, false),
        Err(e) => return Err(e),
    };
    let affine = points * (p as u128 - 1);
    let affine_scanned = match enumerate_affine_solutions(&sys, cfg) {
        Ok(c) if c.nonzero as u128 == affine => true,
        Ok(c) => {
            return Err(Error::InvariantViolation(format!(
                "affine scan found {} solutions, projective count gives {affine}",
                c.nonzero
            )))
        }
        Err(Error::BudgetExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(HyperplaneSection { p, points, affine, predicted, enumerated, affine_scanned })
}

/// Whether the nonzero points of `W(F_p)` with last coordinate `0`, read as
/// projective points in the first `p - 1` coordinates, are exactly `V(F_p)`
/// for `m = p - 1`. Every point of `W` is reached from one of them by a
/// translate along `(1, .., 1)`.
pub fn hyperplane_section_matches(p: u64, cfg: &EnumConfig) -> Result<bool> {
    let w = cone_system(p)?;
    let ctx = w.ctx().clone();
    let mut section = BTreeSet::new();
    for v in affine_solutions(&w, cfg)? {
        let shifted: Vec<FqElem> = v.iter().map(|&x| ctx.sub(x, v[p as usize - 1])).collect();
        if shifted[..p as usize - 1].iter().any(|x| !x.is_zero()) {
            section.insert(ProjPoint::new(&ctx, shifted[..p as usize - 1].to_vec())?);
        }
    }
    let v = DiagonalSystem::bring(&ctx, p as usize - 1)?;
    let points: BTreeSet<ProjPoint> = enumerate_projective_points(&v, cfg)?.points.into_iter().collect();
    Ok(section == points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn redei_at_seven() {
        let r = classify_redei_solutions(7, &EnumConfig::default()).unwrap();
        assert_eq!((r.constant, r.permutation, r.other, r.total), (7, 5040, 0, 5047));
    }

    #[test]
    fn redei_refuses_eleven() {
        assert!(matches!(
            classify_redei_solutions(11, &EnumConfig::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let ctx = FieldCtx::prime(7).unwrap();
        let zero = vec![ctx.zero(); 7];
        assert_eq!(classify_vector(&zero, 7), SolutionKind::Constant);
        let id: Vec<FqElem> = (0..7).map(|a| ctx.from_int(a)).collect();
        assert_eq!(classify_vector(&id, 7), SolutionKind::Permutation);
        assert!(is_solution(&redei_system(7).unwrap(), &id));
        let mut other = id.clone();
        other[0] = ctx.one();
        assert_eq!(classify_vector(&other, 7), SolutionKind::Other);
    }

    #[test]
    fn permuted_solutions_stay_solutions() {
        let sys = redei_system(7).unwrap();
        let sols = affine_solutions(&sys, &EnumConfig::default()).unwrap();
        let perms: Vec<_> = sols.into_iter().filter(|v| classify_vector(v, 7) == SolutionKind::Permutation).collect();
        assert!(permutation_spot_check(&sys, &perms, 100, 0));
    }

    #[test]
    fn cone_translates() {
        let sys = cone_system(7).unwrap();
        let ctx = sys.ctx();
        assert!(is_solution(&sys, &[ctx.one(); 7]));
        let r = w_cone_check(7, 100, 0, &EnumConfig::default()).unwrap();
        assert!(r.holds && r.exhaustive_source);
        let r = w_cone_check(11, 100, 0, &EnumConfig::default()).unwrap();
        assert!(r.holds && !r.exhaustive_source);
    }

    #[test]
    fn hyperplane_section_counts() {
        let cfg = EnumConfig::default();
        let s = count_hyperplane_section(7, &cfg).unwrap();
        assert_eq!((s.points, s.affine), (120, 720));
        assert!(s.enumerated && s.affine_scanned);
        let s = count_hyperplane_section(13, &EnumConfig::with_budget(1_000_000)).unwrap();
        assert_eq!(s.points, 39_916_800);
        assert!(!s.enumerated);
        assert!(hyperplane_section_matches(7, &cfg).unwrap());
    }
}
