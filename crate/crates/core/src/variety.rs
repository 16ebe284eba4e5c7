//! Systems of diagonal power-sum equations and their solutions over finite fields.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{linalg, DensePoly, FieldCtx, FqElem};

/// Default cap on inner enumeration steps.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Resource limits for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub budget: u64,
    /// Worker threads; `0` means one per available core.
    pub threads: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, threads: 0 }
    }
}

impl EnumConfig {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget, ..Self::default() }
    }

    pub(crate) fn check(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }

    /// Runs `f` inside a worker pool of the configured size.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// The system `x_1^k + .. + x_m^k = 0` for every `k` in a set of exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSystem {
    ctx: FieldCtx,
    m: usize,
    exponents: Vec<u32>,
}

impl DiagonalSystem {
    pub fn new(ctx: &FieldCtx, m: usize, exponents: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("a system needs at least one variable".into()));
        }
        if exponents.first() == Some(&0) || exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "exponents must be strictly increasing positive integers, got {exponents:?}"
            )));
        }
        Ok(Self { ctx: ctx.clone(), m, exponents })
    }

    /// The generalized Bring curve: `K = {1, .., m-2}` with `5 <= m <= p-1`.
    pub fn bring(ctx: &FieldCtx, m: usize) -> Result<Self> {
        if m < 5 || m as u64 > ctx.p() - 1 {
            return Err(Error::InvalidArgument(format!(
                "the curve needs 5 <= m <= p-1, got m = {m}, p = {}",
                ctx.p()
            )));
        }
        Self::new(ctx, m, (1..=m as u32 - 2).collect())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Exponents at or above `p`, where the Vandermonde rank arguments lapse.
    pub fn large_exponents(&self) -> Vec<u32> {
        self.exponents.iter().copied().filter(|&k| k as u64 >= self.ctx.p()).collect()
    }

    /// Whether the system is the curve `K = {1, .., m-2}`.
    pub fn is_bring(&self) -> bool {
        self.m >= 3 && self.exponents.iter().copied().eq(1..=self.m as u32 - 2)
    }

    pub fn header(&self) -> String {
        let k: Vec<String> = self.exponents.iter().map(|k| k.to_string()).collect();
        format!("# m={} q={}^{} K={}", self.m, self.ctx.p(), self.ctx.k(), k.join(","))
    }
}

/// A point of projective space scaled so its first nonzero coordinate is `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<FqElem>,
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, coords: Vec<FqElem>) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidArgument("the zero vector is not a projective point".into()))?;
        let s = ctx.inv(lead)?;
        Ok(Self { coords: coords.into_iter().map(|c| ctx.mul(c, s)).collect() })
    }

    pub fn from_ints(ctx: &FieldCtx, coords: &[i64]) -> Result<Self> {
        Self::new(ctx, coords.iter().map(|&c| ctx.from_int(c)).collect())
    }

    /// Wraps coordinates already in canonical form.
    pub(crate) fn from_canonical(coords: Vec<FqElem>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[FqElem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        let c: Vec<String> = self.coords.iter().map(|&x| ctx.format_elem(x)).collect();
        c.join(";")
    }

    pub fn parse(ctx: &FieldCtx, line: &str) -> Result<Self> {
        let coords = line.split(';').map(|t| ctx.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, coords)
    }
}

pub fn power_sum(ctx: &FieldCtx, v: &[FqElem], k: u32) -> FqElem {
    v.iter().fold(ctx.zero(), |acc, &x| ctx.add(acc, ctx.pow(x, k as u64)))
}

pub fn is_solution(sys: &DiagonalSystem, v: &[FqElem]) -> bool {
    v.len() == sys.m && sys.exponents.iter().all(|&k| power_sum(&sys.ctx, v, k).is_zero())
}

/// `(w : w^2 : .. : w^m)` for the smallest primitive `m`-th root of unity `w`.
pub fn special_point_omega(ctx: &FieldCtx, m: usize) -> Result<ProjPoint> {
    let w = ctx.primitive_root_of_unity(m as u64)?;
    ProjPoint::new(ctx, (1..=m as u64).map(|i| ctx.pow(w, i)).collect())
}

/// `(e : e^2 : .. : e^(m-1) : 0)` for the smallest primitive `(m-1)`-th root `e`.
pub fn special_point_epsilon(ctx: &FieldCtx, m: usize) -> Result<ProjPoint> {
    let e = ctx.primitive_root_of_unity(m as u64 - 1)?;
    let mut c: Vec<FqElem> = (1..m as u64).map(|i| ctx.pow(e, i)).collect();
    c.push(ctx.zero());
    ProjPoint::new(ctx, c)
}

/// Affine solution count; the zero vector is reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineCount {
    pub nonzero: u64,
    pub zero_is_solution: bool,
    pub evaluations: u64,
}

fn affine_steps(q: u64, m: usize) -> u128 {
    (q as u128).saturating_pow(m as u32)
}

/// Calls `visit` on every vector of `F_q^m` (split across workers on the first
/// coordinate) and folds the per-vector results.
fn scan_affine<T, F>(sys: &DiagonalSystem, cfg: &EnumConfig, visit: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[FqElem]) -> Option<T> + Sync,
{
    let q = sys.ctx.q();
    cfg.check(affine_steps(q, sys.m))?;
    let ctx = &sys.ctx;
    let out = cfg.install(|| {
        (0..q)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut v = vec![ctx.zero(); sys.m];
                v[0] = FqElem(first);
                let mut found = Vec::new();
                loop {
                    if sys.exponents.iter().all(|&k| power_sum(ctx, &v, k).is_zero()) {
                        if let Some(t) = visit(&v) {
                            found.push(t);
                        }
                    }
                    if !odometer(&mut v[1..], q) {
                        break;
                    }
                }
                found
            })
            .collect()
    });
    Ok(out)
}

/// Advances the digits in lexicographic order; `false` once it wraps around.
fn odometer(v: &mut [FqElem], q: u64) -> bool {
    for d in v.iter_mut().rev() {
        d.0 += 1;
        if d.0 < q {
            return true;
        }
        d.0 = 0;
    }
    false
}

/// Exact count of nonzero solutions in `F_q^m` by exhaustive scan.
pub fn enumerate_affine_solutions(sys: &DiagonalSystem, cfg: &EnumConfig) -> Result<AffineCount> {
    let hits = scan_affine(sys, cfg, |v| v.iter().any(|x| !x.is_zero()).then_some(()))?;
    Ok(AffineCount {
        nonzero: hits.len() as u64,
        zero_is_solution: true,
        evaluations: affine_steps(sys.ctx.q(), sys.m) as u64,
    })
}

/// All affine solutions (including zero), in lexicographic order.
pub fn affine_solutions(sys: &DiagonalSystem, cfg: &EnumConfig) -> Result<Vec<Vec<FqElem>>> {
    let mut out = scan_affine(sys, cfg, |v| Some(v.to_vec()))?;
    out.sort();
    Ok(out)
}

/// Number of inner steps the chart enumeration will take for `n` variables.
fn chart_steps(q: u64, n: usize, two_coordinate_solve: bool) -> u128 {
    let q = q as u128;
    (0..n)
        .map(|c| {
            let free = if two_coordinate_solve && c + 3 <= n { n - 3 - c } else { n - 1 - c };
            q.saturating_pow(free as u32)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Projective solutions of `sum_i w_i x_i^k = 0 (k in exps)`, canonical and sorted.
///
/// Chart by chart (position of the leading `1`), the coordinates before the
/// last two run over the field and the last two are recovered from the
/// first two power sums as the roots of a quadratic. Falls back to a plain
/// scan when the system does not contain exponents 1 and 2 or the last two
/// weights are not 1.
pub(crate) fn enumerate_weighted(
    ctx: &FieldCtx,
    weights: &[FqElem],
    exps: &[u32],
    cfg: &EnumConfig,
) -> Result<(Vec<Vec<FqElem>>, u64)> {
    let n = weights.len();
    let q = ctx.q();
    let one = ctx.one();
    let solve2 = n >= 3
        && exps.contains(&1)
        && exps.contains(&2)
        && weights[n - 1] == one
        && weights[n - 2] == one;
    let steps = chart_steps(q, n, solve2);
    cfg.check(steps)?;
    let high: Vec<u32> = exps.iter().copied().filter(|&k| k > 2).collect();
    let max_k = exps.iter().copied().max().unwrap_or(0);
    let inv2 = ctx.inv(ctx.from_int(2))?;

    // prime fields get a table of powers so each weighted sum costs one reduction
    let p = ctx.p();
    let table: Option<Vec<u64>> = (ctx.k() == 1 && q * (max_k.max(2) as u64 + 1) <= 1 << 24).then(|| {
        let mut t = vec![0u64; (max_k.max(2) as usize + 1) * q as usize];
        for x in 0..q {
            let mut acc = 1u64;
            for k in 0..=max_k.max(2) as usize {
                t[k * q as usize + x as usize] = acc;
                acc = acc * x % p;
            }
        }
        t
    });
    let wraw: Vec<u64> = weights.iter().map(|w| w.code()).collect();
    let wsum = |v: &[FqElem], lo: usize, hi: usize, k: u32| -> FqElem {
        match &table {
            Some(t) => {
                let row = &t[k as usize * q as usize..];
                let s: u64 = (lo..hi).map(|i| wraw[i] * row[v[i].0 as usize]).sum();
                FqElem(s % p)
            }
            None => (lo..hi).fold(ctx.zero(), |a, i| ctx.add(a, ctx.mul(weights[i], ctx.pow(v[i], k as u64)))),
        }
    };
    let passes = |v: &[FqElem], rest: &[u32]| rest.iter().all(|&k| wsum(v, 0, n, k).is_zero());
    let four = ctx.from_int(4);

    let mut points = cfg.install(|| {
        let mut all = Vec::new();
        for c in 0..n {
            let solved = if solve2 && c + 3 <= n { 2 } else { 0 };
            let rest: &[u32] = if solved == 2 { &high } else { exps };
            let free_lo = c + 1;
            let free_hi = n - solved; // exclusive
            let tasks: Vec<u64> = if free_hi > free_lo { (0..q).collect() } else { vec![u64::MAX] };
            let chunk: Vec<Vec<FqElem>> = tasks
                .into_par_iter()
                .flat_map_iter(|first| {
                    let mut v = vec![ctx.zero(); n];
                    v[c] = one;
                    if first != u64::MAX {
                        v[free_lo] = FqElem(first);
                    }
                    let mut found = Vec::new();
                    loop {
                        if solved == 2 {
                            let s1 = wsum(&v, c, n - 2, 1);
                            let s2 = wsum(&v, c, n - 2, 2);
                            let e1 = ctx.neg(s1);
                            let e1sq = ctx.square(e1);
                            let prod = ctx.mul(ctx.add(e1sq, s2), inv2);
                            let disc = ctx.sub(e1sq, ctx.mul(four, prod));
                            if let Some(r) = ctx.sqrt(disc) {
                                let u = ctx.mul(ctx.add(e1, r), inv2);
                                let w = ctx.mul(ctx.sub(e1, r), inv2);
                                v[n - 2] = u;
                                v[n - 1] = w;
                                if passes(&v, rest) {
                                    found.push(v.clone());
                                }
                                if !r.is_zero() {
                                    v[n - 2] = w;
                                    v[n - 1] = u;
                                    if passes(&v, rest) {
                                        found.push(v.clone());
                                    }
                                }
                            }
                        } else if passes(&v, rest) {
                            found.push(v.clone());
                        }
                        let lo = if first == u64::MAX { free_hi } else { free_lo + 1 };
                        if lo >= free_hi || !odometer(&mut v[lo..free_hi], q) {
                            break;
                        }
                    }
                    found
                })
                .collect();
            all.extend(chunk);
        }
        all
    });
    points.sort();
    Ok((points, steps as u64))
}

/// Enumerated `V(F_q)` together with the work spent.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<ProjPoint>,
    pub evaluations: u64,
}

/// The exact set of projective `F_q`-points of the system, sorted by canonical form.
pub fn enumerate_projective_points(sys: &DiagonalSystem, cfg: &EnumConfig) -> Result<PointSet> {
    let weights = vec![sys.ctx.one(); sys.m];
    let (pts, evaluations) = enumerate_weighted(&sys.ctx, &weights, &sys.exponents, cfg)?;
    Ok(PointSet { points: pts.into_iter().map(ProjPoint::from_canonical).collect(), evaluations })
}

/// Jacobian matrix rows `(k x_i^(k-1))_i` for each exponent.
pub fn jacobian(sys: &DiagonalSystem, v: &[FqElem]) -> linalg::Matrix {
    let ctx = &sys.ctx;
    sys.exponents
        .iter()
        .map(|&k| {
            let kk = ctx.from_int(k as i64);
            v.iter().map(|&x| ctx.mul(kk, ctx.pow(x, k as u64 - 1))).collect()
        })
        .collect()
}

pub fn jacobian_rank(sys: &DiagonalSystem, v: &[FqElem]) -> usize {
    linalg::rank(&sys.ctx, &jacobian(sys, v))
}

/// Exponents of the additional power sums that vanish on the curve.
pub fn extra_exponents(p: u64, m: usize) -> Vec<u32> {
    let mut ks: Vec<u32> = (m as u32 + 2..=2 * m as u32 - 3).collect();
    if m as u64 == p - 1 {
        ks.push(p as u32 + 1);
    }
    ks
}

pub fn extra_equations_check(ctx: &FieldCtx, point: &[FqElem], m: usize) -> bool {
    extra_exponents(ctx.p(), m).into_iter().all(|k| power_sum(ctx, point, k).is_zero())
}

/// Monic polynomial of degree `m-2` over `F_p` whose roots are the free
/// coordinates of a point `(x_1 : .. : x_{m-2} : 1 : 1)` of the curve:
/// power sums `-2` converted to elementary symmetric functions by Newton's identities.
pub fn theta_polynomial(p: u64, m: usize) -> Result<DensePoly> {
    let ctx = FieldCtx::prime(p)?;
    if m < 3 || m as u64 > p - 1 {
        return Err(Error::InvalidArgument(format!("need 3 <= m <= p-1, got m = {m}")));
    }
    let n = m - 2;
    let pk = ctx.from_int(-2);
    // e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut e = vec![ctx.one()];
    for k in 1..=n {
        let mut s = ctx.zero();
        for i in 1..=k {
            let t = ctx.mul(e[k - i], pk);
            s = if i % 2 == 1 { ctx.add(s, t) } else { ctx.sub(s, t) };
        }
        e.push(ctx.mul(s, ctx.inv(ctx.from_int(k as i64))?));
    }
    // X^n - e_1 X^(n-1) + e_2 X^(n-2) - ..
    let mut coeffs = vec![ctx.zero(); n + 1];
    for (i, &ei) in e.iter().enumerate() {
        coeffs[n - i] = if i % 2 == 0 { ei } else { ctx.neg(ei) };
    }
    Ok(DensePoly::new(&ctx, coeffs))
}

/// Whether `theta_polynomial(p, p-1)` equals `g(1 - X)` exactly, where
/// `g = 1 + X + .. + X^(p-3)`.
pub fn theta_reflection_identity(p: u64) -> Result<bool> {
    let f = theta_polynomial(p, p as usize - 1)?;
    let ctx = f.ctx().clone();
    let g = DensePoly::new(&ctx, vec![ctx.one(); p as usize - 2]);
    Ok(g.compose(&DensePoly::from_ints(&ctx, &[1, -1]))? == f)
}

/// Finite-field evidence that `S_1, .., S_m` admit only the trivial common zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularProbe {
    /// `(extension degree, |V(F_{p^k})|, points where S_{m-1} = S_m = 0)`
    pub fields: Vec<(u32, usize, usize)>,
}

impl RegularProbe {
    pub fn holds(&self) -> bool {
        self.fields.iter().all(|&(_, _, bad)| bad == 0)
    }
}

pub fn regular_sequence_probe(m: usize, p: u64, max_ext: u32, cfg: &EnumConfig) -> Result<RegularProbe> {
    let mut fields = Vec::new();
    for k in 1..=max_ext {
        let ctx = FieldCtx::new(p, k)?;
        let sys = DiagonalSystem::bring(&ctx, m)?;
        let pts = enumerate_projective_points(&sys, cfg)?.points;
        let bad = pts
            .iter()
            .filter(|pt| {
                power_sum(&ctx, pt.coords(), m as u32 - 1).is_zero() && power_sum(&ctx, pt.coords(), m as u32).is_zero()
            })
            .count();
        fields.push((k, pts.len(), bad));
    }
    Ok(RegularProbe { fields })
}

/// Coordinate coincidences that no point of the curve may show.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructuralReport {
    pub two_zeros: usize,
    pub three_equal: usize,
    pub two_disjoint_pairs: usize,
    pub pair_with_zero: usize,
}

impl StructuralReport {
    pub fn is_clean(&self) -> bool {
        *self == Self::default()
    }
}

pub fn structural_scan(points: &[ProjPoint]) -> StructuralReport {
    let mut rep = StructuralReport::default();
    for pt in points {
        let mut c = pt.coords().to_vec();
        let zeros = c.iter().filter(|x| x.is_zero()).count();
        c.sort();
        let mut runs = Vec::new();
        let mut i = 0;
        while i < c.len() {
            let j = (i..c.len()).find(|&j| c[j] != c[i]).unwrap_or(c.len());
            runs.push(j - i);
            i = j;
        }
        let pairs = runs.iter().filter(|&&r| r >= 2).count();
        if zeros >= 2 {
            rep.two_zeros += 1;
        }
        if runs.iter().any(|&r| r >= 3) {
            rep.three_equal += 1;
        }
        if pairs >= 2 {
            rep.two_disjoint_pairs += 1;
        }
        if zeros >= 1 && runs.iter().zip(dedup_values(&c)).any(|(&r, v)| r >= 2 && !v.is_zero()) {
            rep.pair_with_zero += 1;
        }
    }
    rep
}

fn dedup_values(sorted: &[FqElem]) -> Vec<FqElem> {
    let mut v = sorted.to_vec();
    v.dedup();
    v
}

/// Point-set file: header line followed by one point per line.
pub fn write_point_set(sys: &DiagonalSystem, points: &[ProjPoint]) -> String {
    let mut out = sys.header();
    out.push('\n');
    for pt in points {
        let _ = writeln!(out, "{}", pt.format(&sys.ctx));
    }
    out
}

pub fn read_point_set(text: &str) -> Result<(DiagonalSystem, Vec<ProjPoint>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty point file".into()))?;
    let rest = header.strip_prefix("# ").ok_or_else(|| Error::Parse("missing header".into()))?;
    let (mut m, mut pk, mut exps) = (None, None, None);
    for field in rest.split_whitespace() {
        let (key, val) = field.split_once('=').ok_or_else(|| Error::Parse(format!("bad field {field:?}")))?;
        match key {
            "m" => m = Some(val.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
            "q" => {
                let (p, k) = val.split_once('^').ok_or_else(|| Error::Parse(format!("bad q {val:?}")))?;
                let p = p.parse::<u64>().map_err(|e| Error::Parse(e.to_string()))?;
                let k = k.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?;
                pk = Some((p, k));
            }
            "K" => {
                let list = if val.is_empty() {
                    Vec::new()
                } else {
                    val.split(',')
                        .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                        .collect::<Result<Vec<_>>>()?
                };
                exps = Some(list);
            }
            _ => return Err(Error::Parse(format!("unknown header key {key:?}"))),
        }
    }
    let (p, k) = pk.ok_or_else(|| Error::Parse("header lacks q".into()))?;
    let ctx = FieldCtx::new(p, k)?;
    let sys = DiagonalSystem::new(
        &ctx,
        m.ok_or_else(|| Error::Parse("header lacks m".into()))?,
        exps.ok_or_else(|| Error::Parse("header lacks K".into()))?,
    )?;
    let points = lines.map(|l| ProjPoint::parse(&ctx, l.trim())).collect::<Result<Vec<_>>>()?;
    Ok((sys, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(ctx: &FieldCtx, c: &[i64]) -> Vec<FqElem> {
        c.iter().map(|&x| ctx.from_int(x)).collect()
    }

    #[test]
    fn power_sum_examples() {
        let f = FieldCtx::prime(11).unwrap();
        let pt = v(&f, &[3, 9, 5, 4, 1]);
        assert_eq!(power_sum(&f, &pt, 2), f.zero());
        assert_eq!(power_sum(&f, &pt, 5), f.from_int(5));
        assert_eq!(power_sum(&f, &v(&f, &[0, 0, 0, 0, 1]), 1), f.one());
    }

    #[test]
    fn is_solution_examples() {
        let f = FieldCtx::prime(11).unwrap();
        let sys = DiagonalSystem::bring(&f, 5).unwrap();
        assert!(is_solution(&sys, &v(&f, &[3, 9, 5, 4, 1])));
        assert!(is_solution(&sys, &v(&f, &[0, 0, 0, 0, 0])));
        assert!(!is_solution(&sys, &v(&f, &[1, 1, 1, 1, 1])));
    }

    #[test]
    fn bring_system_bounds() {
        let f = FieldCtx::prime(7).unwrap();
        assert!(DiagonalSystem::bring(&f, 4).is_err());
        assert!(DiagonalSystem::bring(&f, 7).is_err());
        assert_eq!(DiagonalSystem::bring(&f, 6).unwrap().exponents(), &[1, 2, 3, 4]);
        assert!(DiagonalSystem::new(&f, 5, vec![2, 1]).is_err());
        let big = DiagonalSystem::new(&f, 5, vec![1, 7]).unwrap();
        assert_eq!(big.large_exponents(), vec![7]);
    }

    #[test]
    fn omega_points() {
        let f = FieldCtx::prime(11).unwrap();
        let pt = special_point_omega(&f, 5).unwrap();
        assert_eq!(pt, ProjPoint::from_ints(&f, &[3, 9, 5, 4, 1]).unwrap());
        let f7 = FieldCtx::prime(7).unwrap();
        let pt = special_point_omega(&f7, 6).unwrap();
        assert_eq!(pt, ProjPoint::from_ints(&f7, &[3, 2, 6, 4, 5, 1]).unwrap());
        assert!(is_solution(&DiagonalSystem::bring(&f7, 6).unwrap(), pt.coords()));
        assert!(special_point_omega(&f7, 5).is_err());
    }

    #[test]
    fn epsilon_points() {
        let f = FieldCtx::prime(29).unwrap();
        let pt = special_point_epsilon(&f, 5).unwrap();
        assert_eq!(pt, ProjPoint::from_ints(&f, &[12, 28, 17, 1, 0]).unwrap());
        assert!(is_solution(&DiagonalSystem::bring(&f, 5).unwrap(), pt.coords()));

        let f11 = FieldCtx::prime(11).unwrap();
        let pt = special_point_epsilon(&f11, 6).unwrap();
        assert!(pt.coords()[5].is_zero());
        assert!(is_solution(&DiagonalSystem::new(&f11, 6, vec![1, 2, 3, 4]).unwrap(), pt.coords()));

        assert!(special_point_epsilon(&FieldCtx::prime(7).unwrap(), 6).is_err());
    }

    #[test]
    fn affine_counts() {
        let f = FieldCtx::prime(7).unwrap();
        let cfg = EnumConfig::default();
        let sys = DiagonalSystem::new(&f, 6, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(enumerate_affine_solutions(&sys, &cfg).unwrap().nonzero, 720);
        let empty = DiagonalSystem::new(&f, 3, vec![]).unwrap();
        assert_eq!(enumerate_affine_solutions(&empty, &cfg).unwrap().nonzero, 342);
        let plane = DiagonalSystem::new(&f, 3, vec![1]).unwrap();
        assert_eq!(enumerate_affine_solutions(&plane, &cfg).unwrap().nonzero, 48);
    }

    #[test]
    fn budget_is_enforced() {
        let f = FieldCtx::prime(7).unwrap();
        let sys = DiagonalSystem::new(&f, 6, vec![1, 2, 3, 4]).unwrap();
        let err = enumerate_affine_solutions(&sys, &EnumConfig::with_budget(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 117649, budget: 1000 }));
        assert!(enumerate_projective_points(&sys, &EnumConfig::with_budget(10)).is_err());
    }

    #[test]
    fn projective_matches_affine() {
        let cfg = EnumConfig::default();
        for (p, k, m) in [(7, 1, 5), (7, 1, 6), (11, 1, 5), (13, 1, 6), (7, 2, 5), (11, 1, 7)] {
            let f = FieldCtx::new(p, k).unwrap();
            let sys = DiagonalSystem::bring(&f, m).unwrap();
            let pts = enumerate_projective_points(&sys, &cfg).unwrap().points;
            if (f.q() as u128).pow(m as u32) <= 50_000_000 {
                let aff = enumerate_affine_solutions(&sys, &cfg).unwrap();
                assert_eq!(aff.nonzero, pts.len() as u64 * (f.q() - 1), "p={p} k={k} m={m}");
            }
            for pt in &pts {
                assert!(is_solution(&sys, pt.coords()));
            }
        }
    }

    #[test]
    fn fallback_scan_agrees_with_chart_solver() {
        let cfg = EnumConfig::default();
        let f = FieldCtx::prime(11).unwrap();
        // exponents {1,3} force the plain scan; compare with the affine oracle
        let sys = DiagonalSystem::new(&f, 4, vec![1, 3]).unwrap();
        let pts = enumerate_projective_points(&sys, &cfg).unwrap().points;
        let aff = enumerate_affine_solutions(&sys, &cfg).unwrap();
        assert_eq!(aff.nonzero, pts.len() as u64 * 10);
    }

    #[test]
    fn jacobian_rank_examples() {
        let f = FieldCtx::prime(11).unwrap();
        let sys = DiagonalSystem::bring(&f, 5).unwrap();
        assert_eq!(jacobian_rank(&sys, &v(&f, &[3, 9, 5, 4, 1])), 3);
        assert_eq!(jacobian_rank(&sys, &v(&f, &[1, 1, 1, 1, 1])), 1);
        let f29 = FieldCtx::prime(29).unwrap();
        let sys29 = DiagonalSystem::bring(&f29, 5).unwrap();
        assert_eq!(jacobian_rank(&sys29, &v(&f29, &[12, 28, 17, 1, 0])), 3);
    }

    #[test]
    fn extra_equations_examples() {
        let f = FieldCtx::prime(11).unwrap();
        assert_eq!(extra_exponents(11, 5), vec![7]);
        assert!(extra_equations_check(&f, &v(&f, &[3, 9, 5, 4, 1]), 5));
        assert_eq!(extra_exponents(7, 6), vec![8, 9, 8]);
    }

    #[test]
    fn theta_polynomial_examples() {
        let p7 = theta_polynomial(7, 6).unwrap();
        assert_eq!(p7.prime_coeffs().unwrap(), vec![5, 4, 3, 2, 1]);
        let p5 = theta_polynomial(7, 5).unwrap();
        assert_eq!(p5.prime_coeffs().unwrap(), vec![4, 3, 2, 1]);
        for p in [7u64, 11, 13] {
            assert!(theta_reflection_identity(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn point_file_round_trip() {
        let f = FieldCtx::new(7, 2).unwrap();
        let sys = DiagonalSystem::bring(&f, 5).unwrap();
        let pts = enumerate_projective_points(&sys, &EnumConfig::default()).unwrap().points;
        let text = write_point_set(&sys, &pts);
        assert!(text.starts_with("# m=5 q=7^2 K=1,2,3\n"));
        let (sys2, pts2) = read_point_set(&text).unwrap();
        assert_eq!(sys2, sys);
        assert_eq!(pts2, pts);
    }
}
