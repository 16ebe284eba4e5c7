//! The quintic case `m = 5`: the elliptic curves E1 and E2, traces and the
//! supersingular prime scan, the isogeny E1 -> E2, the C4-invariant functions
//! and the C6 quotient map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{arith, FieldCtx, FqElem};
use crate::variety::{EnumConfig, ProjPoint};

/// `num * 2^e2 * 3^e3 * 5^e5` in the prime subfield.
fn konst(ctx: &FieldCtx, num: i64, e2: u32, e3: i32, e5: i32) -> Result<FqElem> {
    let pw = |b: i64, e: i32| -> Result<FqElem> {
        let x = ctx.pow(ctx.from_int(b), e.unsigned_abs() as u64);
        if e < 0 {
            ctx.inv(x)
        } else {
            Ok(x)
        }
    };
    let v = ctx.mul(ctx.from_int(num), pw(2, e2 as i32)?);
    Ok(ctx.mul(v, ctx.mul(pw(3, e3)?, pw(5, e5)?)))
}

fn check_char(ctx: &FieldCtx) -> Result<()> {
    if ctx.p() < 7 {
        return Err(Error::CharacteristicTooSmall(ctx.p()));
    }
    Ok(())
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub ctx: FieldCtx,
    pub a2: FqElem,
    pub a4: FqElem,
    pub a6: FqElem,
}

/// Affine point or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EcPoint {
    Infinity,
    Affine(FqElem, FqElem),
}

impl WeierstrassCurve {
    pub fn new(ctx: &FieldCtx, a2: FqElem, a4: FqElem, a6: FqElem) -> Result<Self> {
        let e = Self { ctx: ctx.clone(), a2, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::InvalidArgument(format!("singular curve over {}", ctx.describe())));
        }
        Ok(e)
    }

    pub fn rhs(&self, x: FqElem) -> FqElem {
        let f = &self.ctx;
        let t = f.add(f.mul(f.add(x, self.a2), x), self.a4);
        f.add(f.mul(t, x), self.a6)
    }

    pub fn contains(&self, pt: &EcPoint) -> bool {
        match *pt {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.ctx.square(y) == self.rhs(x),
        }
    }

    pub fn discriminant(&self) -> FqElem {
        let f = &self.ctx;
        let c = |n: i64| f.from_int(n);
        let b2 = f.mul(c(4), self.a2);
        let b4 = f.mul(c(2), self.a4);
        let b6 = f.mul(c(4), self.a6);
        let b8 = f.sub(f.mul(c(4), f.mul(self.a2, self.a6)), f.square(self.a4));
        let mut d = f.neg(f.mul(f.square(b2), b8));
        d = f.sub(d, f.mul(c(8), f.pow(b4, 3)));
        d = f.sub(d, f.mul(c(27), f.square(b6)));
        f.add(d, f.mul(c(9), f.mul(b2, f.mul(b4, b6))))
    }

    /// `a_p = -sum_x chi(x^3 + a2 x^2 + a4 x + a6)`; prime fields only.
    pub fn trace(&self) -> Result<i64> {
        let f = &self.ctx;
        if f.k() != 1 {
            return Err(Error::InvalidArgument("traces are computed over prime fields".into()));
        }
        let p = f.p();
        let mut is_sq = vec![false; p as usize];
        for r in 1..p {
            is_sq[arith::mul_mod(r, r, p) as usize] = true;
        }
        let (a2, a4, a6) = (self.a2.code(), self.a4.code(), self.a6.code());
        let mut s = 0i64;
        for x in 0..p {
            let v = ((((x + a2) % p) * x % p + a4) % p * x % p + a6) % p;
            if v != 0 {
                s += if is_sq[v as usize] { 1 } else { -1 };
            }
        }
        Ok(-s)
    }

    /// `#E(F_p)` by counting square roots over all `x`.
    pub fn count_points(&self) -> u64 {
        let f = &self.ctx;
        1 + f
            .elements()
            .map(|x| {
                let v = self.rhs(x);
                if v.is_zero() {
                    1
                } else if f.is_square(v) {
                    2
                } else {
                    0
                }
            })
            .sum::<u64>()
    }
}

pub fn e1_curve(ctx: &FieldCtx) -> Result<WeierstrassCurve> {
    check_char(ctx)?;
    WeierstrassCurve::new(ctx, konst(ctx, 1, 11, -4, -1)?, konst(ctx, 1, 20, -8, -2)?, konst(ctx, -1, 32, -12, -4)?)
}

pub fn e2_curve(ctx: &FieldCtx) -> Result<WeierstrassCurve> {
    check_char(ctx)?;
    WeierstrassCurve::new(
        ctx,
        konst(ctx, -71, 20, -8, -2)?,
        konst(ctx, -41, 43, -16, -4)?,
        konst(ctx, -23, 64, -24, -6)?,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub p: u64,
    pub a_p: i64,
    pub supersingular: bool,
    pub predicted_v_count_fp2: i128,
}

pub fn ec_trace(p: u64) -> Result<TraceReport> {
    let a_p = e1_curve(&FieldCtx::prime(p)?)?.trace()?;
    Ok(TraceReport { p, a_p, supersingular: a_p == 0, predicted_v_count_fp2: predicted_count(p, a_p) })
}

fn predicted_count(p: u64, a: i64) -> i128 {
    let (p, a) = (p as i128, a as i128);
    p * p + 1 - 4 * (a * a - 2 * p)
}

/// `|V(F_{p^2})| = p^2 + 1 - 4(a_p^2 - 2p)` from the splitting of the Jacobian into four copies of E1.
pub fn predicted_v_count_fp2(p: u64) -> Result<i128> {
    Ok(ec_trace(p)?.predicted_v_count_fp2)
}

/// Primes `7 <= p <= limit` at which E1 is supersingular.
pub fn maximality_scan(limit: u64, cfg: &EnumConfig) -> Result<Vec<u64>> {
    let primes: Vec<u64> = (7..=limit).filter(|&p| arith::is_prime(p)).collect();
    cfg.check(primes.iter().map(|&p| p as u128).sum())?;
    let flags = cfg.install(|| {
        primes.par_iter().map(|&p| ec_trace(p).map(|t| t.supersingular)).collect::<Result<Vec<_>>>()
    })?;
    Ok(primes.into_iter().zip(flags).filter(|&(_, s)| s).map(|(p, _)| p).collect())
}

/// The rational map E1 -> E2.
pub fn isogeny_apply(ctx: &FieldCtx, pt: &EcPoint) -> Result<EcPoint> {
    check_char(ctx)?;
    let EcPoint::Affine(x, y) = *pt else {
        return Ok(EcPoint::Infinity);
    };
    let f = ctx;
    let poly = |cs: &[FqElem]| cs.iter().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c));
    let xnum = poly(&[
        konst(f, 1, 10, -4, 0)?,
        konst(f, 17, 20, -8, -2)?,
        konst(f, 31, 30, -12, -3)?,
        konst(f, 11, 40, -16, -4)?,
    ]);
    let xden = poly(&[f.one(), konst(f, -1, 11, -4, -1)?, konst(f, 1, 20, -8, -2)?]);
    let ynum = f.mul(
        y,
        poly(&[
            konst(f, 1, 15, -6, 0)?,
            konst(f, -1, 25, -9, -1)?,
            konst(f, -13, 35, -14, -2)?,
            konst(f, -53, 45, -18, -4)?,
        ]),
    );
    let yden = poly(&[f.one(), konst(f, -1, 10, -3, -1)?, konst(f, 1, 20, -7, -2)?, konst(f, -1, 30, -12, -3)?]);
    if xden.is_zero() || yden.is_zero() {
        return Err(Error::ExceptionalPoint(format!("isogeny denominator vanishes at x = {}", f.format_elem(x))));
    }
    Ok(EcPoint::Affine(f.div(xnum, xden)?, f.div(ynum, yden)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub samples: usize,
    pub passed: usize,
    pub exceptional: usize,
    /// distinct affine points available; sampling is with replacement
    pub population: usize,
}

impl SampleReport {
    pub fn all_passed(&self) -> bool {
        self.samples > 0 && self.passed == self.samples
    }
}

/// Draws random affine points of E1(F_q) and checks their images lie on E2.
pub fn isogeny_check(ctx: &FieldCtx, samples: usize, seed: u64) -> Result<SampleReport> {
    let e1 = e1_curve(ctx)?;
    let e2 = e2_curve(ctx)?;
    let mut population = Vec::new();
    let mut exceptional = 0;
    for x in ctx.elements() {
        if let Some(r) = ctx.sqrt(e1.rhs(x)) {
            let roots = if r.is_zero() { vec![r] } else { vec![r, ctx.neg(r)] };
            for y in roots {
                let pt = EcPoint::Affine(x, y);
                match isogeny_apply(ctx, &pt) {
                    Ok(_) => population.push(pt),
                    Err(Error::ExceptionalPoint(_)) => exceptional += 1,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if population.is_empty() {
        return Err(Error::InvalidArgument("no non-exceptional affine points to sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..samples {
        let pt = population[rng.gen_range(0..population.len())];
        if e2.contains(&isogeny_apply(ctx, &pt)?) {
            passed += 1;
        }
    }
    Ok(SampleReport { samples, passed, exceptional, population: population.len() })
}

/// Coefficient `num/den` and exponents of `x_2, x_3, x_4, x_5`.
pub(crate) type Term = (i64, i64, [u8; 4]);

/// The C4-invariant forms `b, c, d` of degree 9, reduced into one field.
#[derive(Clone, Debug)]
pub struct C4Invariants {
    ctx: FieldCtx,
    b: Vec<(FqElem, [u8; 4])>,
    c: Vec<(FqElem, [u8; 4])>,
    d: Vec<(FqElem, [u8; 4])>,
}

impl C4Invariants {
    pub fn new(ctx: &FieldCtx) -> Result<Self> {
        check_char(ctx)?;
        let reduce = |terms: &[Term]| -> Result<Vec<(FqElem, [u8; 4])>> {
            terms.iter().map(|&(n, d, e)| Ok((ctx.div(ctx.from_int(n), ctx.from_int(d))?, e))).collect()
        };
        Ok(Self { ctx: ctx.clone(), b: reduce(B_TERMS)?, c: reduce(C_TERMS)?, d: reduce(D_TERMS)? })
    }

    fn eval(&self, terms: &[(FqElem, [u8; 4])], v: &[FqElem]) -> FqElem {
        let f = &self.ctx;
        terms.iter().fold(f.zero(), |acc, (c, e)| {
            let m = (0..4).fold(*c, |t, i| f.mul(t, f.pow(v[i + 1], e[i] as u64)));
            f.add(acc, m)
        })
    }

    /// `(b(v), c(v), d(v))`.
    pub fn forms(&self, v: &[FqElem]) -> (FqElem, FqElem, FqElem) {
        (self.eval(&self.b, v), self.eval(&self.c, v), self.eval(&self.d, v))
    }

    /// `(b/c, d/c)`; both are of degree 0, so any representative of the point works.
    pub fn b1_d1(&self, pt: &ProjPoint) -> Result<(FqElem, FqElem)> {
        if pt.len() != 5 {
            return Err(Error::InvalidArgument("the invariants are defined for m = 5".into()));
        }
        let (b, c, d) = self.forms(pt.coords());
        if c.is_zero() {
            return Err(Error::ExceptionalPoint(format!("c vanishes at {}", pt.format(&self.ctx))));
        }
        Ok((self.ctx.div(b, c)?, self.ctx.div(d, c)?))
    }

    /// `135 b^3 - 360 b^2 + 240 b + 256 + 256 d^2`.
    pub fn cubic_relation(&self, b1: FqElem, d1: FqElem) -> FqElem {
        let f = &self.ctx;
        let c = |n| f.from_int(n);
        let t = f.add(f.mul(f.sub(f.mul(c(135), b1), c(360)), b1), c(240));
        f.add(f.add(f.mul(t, b1), c(256)), f.mul(c(256), f.square(d1)))
    }

    /// `(x, y) = (-256/135 b1, -65536/18225 d1)`.
    pub fn to_e1(&self, b1: FqElem, d1: FqElem) -> Result<EcPoint> {
        let f = &self.ctx;
        let sx = f.div(f.from_int(-256), f.from_int(135))?;
        let sy = f.div(f.from_int(-65536), f.from_int(18225))?;
        Ok(EcPoint::Affine(f.mul(sx, b1), f.mul(sy, d1)))
    }
}

/// `(x_1, .., x_5) -> (x_2, x_3, x_4, x_1, x_5)`.
pub fn sigma_c4(ctx: &FieldCtx, pt: &ProjPoint) -> Result<ProjPoint> {
    let c = pt.coords();
    ProjPoint::new(ctx, vec![c[1], c[2], c[3], c[0], c[4]])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InvariantsReport {
    pub samples: usize,
    pub cubic_ok: usize,
    pub c4_ok: usize,
    pub e1_ok: usize,
    /// sampled points where `c` vanishes at `P` or at its image
    pub exceptional: usize,
}

impl InvariantsReport {
    pub fn all_passed(&self) -> bool {
        let n = self.samples - self.exceptional;
        n > 0 && self.cubic_ok == n && self.c4_ok == n && self.e1_ok == n
    }
}

/// Checks the cubic relation, C4-invariance and E1-membership on `samples`
/// points drawn without replacement (all points if fewer).
pub fn invariants_check(ctx: &FieldCtx, points: &[ProjPoint], samples: usize, seed: u64) -> Result<InvariantsReport> {
    let inv = C4Invariants::new(ctx)?;
    let e1 = e1_curve(ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = rand::seq::index::sample(&mut rng, points.len(), samples.min(points.len()));
    let mut r = InvariantsReport { samples: chosen.len(), ..Default::default() };
    for i in chosen.iter() {
        let pt = &points[i];
        let (b1, d1) = match inv.b1_d1(pt) {
            Ok(v) => v,
            Err(Error::ExceptionalPoint(_)) => {
                r.exceptional += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let image = match inv.b1_d1(&sigma_c4(ctx, pt)?) {
            Ok(v) => v,
            Err(Error::ExceptionalPoint(_)) => {
                r.exceptional += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        r.cubic_ok += usize::from(inv.cubic_relation(b1, d1).is_zero());
        r.c4_ok += usize::from(image == (b1, d1));
        r.e1_ok += usize::from(e1.contains(&inv.to_e1(b1, d1)?));
    }
    Ok(r)
}

/// The quartic relation between the generators `A, B` of the C6-fixed field.
pub fn c6_quartic(ctx: &FieldCtx, a: FqElem, b: FqElem) -> FqElem {
    const TERMS: [(i64, u64, u64); 9] = [
        (5585034240000, 4, 0),
        (23225726880000, 3, 1),
        (27897294510000, 2, 2),
        (7952734845000, 1, 3),
        (1056082140000, 0, 4),
        (13606338560000, 2, 1),
        (28775567360000, 1, 2),
        (6849136640000, 0, 3),
        (11767644160000, 0, 2),
    ];
    TERMS.iter().fold(ctx.zero(), |acc, &(c, i, j)| {
        ctx.add(acc, ctx.mul(ctx.from_int(c), ctx.mul(ctx.pow(a, i), ctx.pow(b, j))))
    })
}

/// `(A, B) -> (X/Z, Y/Z)` onto E2; `None` where `Z` vanishes.
pub fn c6_map(ctx: &FieldCtx, a: FqElem, b: FqElem) -> Result<Option<EcPoint>> {
    let f = ctx;
    let ab = f.mul(a, b);
    let aa = f.square(a);
    let bb = f.square(b);
    let x = f.add(f.mul(konst(f, 1, 19, -6, -2)?, ab), f.mul(konst(f, 1, 20, -6, -2)?, bb));
    let mut y = f.mul(konst(f, 37, 32, -12, -4)?, aa);
    y = f.add(y, f.mul(konst(f, 313, 30, -12, -4)?, ab));
    y = f.add(y, f.mul(konst(f, 149, 29, -12, -4)?, bb));
    y = f.add(y, f.mul(konst(f, 1, 38, -12, -4)?, b));
    let z = f.neg(f.add(f.add(aa, f.mul(f.from_int(4), ab)), f.mul(f.from_int(4), bb)));
    if z.is_zero() {
        return Ok(None);
    }
    Ok(Some(EcPoint::Affine(f.div(x, z)?, f.div(y, z)?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct C6Report {
    pub solutions: usize,
    pub mapped: usize,
    pub on_e2: usize,
}

impl C6Report {
    pub fn all_passed(&self) -> bool {
        self.mapped > 0 && self.on_e2 == self.mapped
    }
}

/// Scans all `(A, B)` in `F_p^2` on the quartic and maps them to E2.
pub fn c6_quartic_to_e2_check(p: u64) -> Result<C6Report> {
    if p > 1000 {
        return Err(Error::InvalidArgument("the quartic scan is limited to p <= 1000".into()));
    }
    let ctx = FieldCtx::prime(p)?;
    let e2 = e2_curve(&ctx)?;
    let mut r = C6Report { solutions: 0, mapped: 0, on_e2: 0 };
    for a in ctx.elements() {
        for b in ctx.elements() {
            if !c6_quartic(&ctx, a, b).is_zero() {
                continue;
            }
            r.solutions += 1;
            if let Some(pt) = c6_map(&ctx, a, b)? {
                r.mapped += 1;
                r.on_e2 += usize::from(e2.contains(&pt));
            }
        }
    }
    Ok(r)
}

pub(crate) const B_TERMS: &[Term] = &[
    (-48, 1, [1, 2, 4, 2]),
    (-24, 1, [1, 2, 3, 3]),
    (-36, 1, [1, 2, 2, 4]),
    (-208, 9, [1, 2, 1, 5]),
    (-16, 3, [1, 2, 0, 6]),
    (-24, 1, [1, 1, 4, 3]),
    (-12, 1, [1, 1, 3, 4]),
    (-28, 9, [1, 1, 2, 5]),
    (-104, 9, [1, 1, 1, 6]),
    (64, 27, [1, 1, 0, 7]),
    (-48, 1, [1, 0, 6, 2]),
    (-48, 1, [1, 0, 5, 3]),
    (-84, 1, [1, 0, 4, 4]),
    (-668, 9, [1, 0, 3, 5]),
    (-44, 1, [1, 0, 2, 6]),
    (-712, 27, [1, 0, 1, 7]),
    (-2128, 243, [1, 0, 0, 8]),
    (-48, 1, [0, 2, 5, 2]),
    (-48, 1, [0, 2, 4, 3]),
    (-48, 1, [0, 2, 3, 4]),
    (-370, 9, [0, 2, 2, 5]),
    (-152, 9, [0, 2, 1, 6]),
    (-8, 3, [0, 2, 0, 7]),
    (-24, 1, [0, 1, 5, 3]),
    (-24, 1, [0, 1, 4, 4]),
    (-82, 9, [0, 1, 3, 5]),
    (-118, 9, [0, 1, 2, 6]),
    (-92, 27, [0, 1, 1, 7]),
    (32, 27, [0, 1, 0, 8]),
    (-48, 1, [0, 0, 7, 2]),
    (-72, 1, [0, 0, 6, 3]),
    (-108, 1, [0, 0, 5, 4]),
    (-1046, 9, [0, 0, 4, 5]),
    (-730, 9, [0, 0, 3, 6]),
    (-1306, 27, [0, 0, 2, 7]),
    (-5332, 243, [0, 0, 1, 8]),
    (-1064, 243, [0, 0, 0, 9]),
];

pub(crate) const C_TERMS: &[Term] = &[
    (-67, 3, [1, 2, 2, 4]),
    (-68, 9, [1, 2, 0, 6]),
    (1, 3, [1, 1, 3, 4]),
    (-11, 1, [1, 1, 2, 5]),
    (2, 1, [1, 1, 1, 6]),
    (272, 81, [1, 1, 0, 7]),
    (-67, 3, [1, 0, 4, 4]),
    (-11, 1, [1, 0, 3, 5]),
    (-217, 9, [1, 0, 2, 6]),
    (-790, 81, [1, 0, 1, 7]),
    (-116, 81, [1, 0, 0, 8]),
    (68, 3, [0, 2, 3, 4]),
    (1, 6, [0, 2, 2, 5]),
    (86, 9, [0, 2, 1, 6]),
    (578, 81, [0, 2, 0, 7]),
    (23, 2, [0, 1, 3, 5]),
    (5, 18, [0, 1, 2, 6]),
    (-97, 81, [0, 1, 1, 7]),
    (632, 81, [0, 1, 0, 8]),
    (67, 3, [0, 0, 5, 4]),
    (67, 6, [0, 0, 4, 5]),
    (439, 18, [0, 0, 3, 6]),
    (107, 6, [0, 0, 2, 7]),
    (217, 81, [0, 0, 1, 8]),
    (554, 81, [0, 0, 0, 9]),
];

pub(crate) const D_TERMS: &[Term] = &[
    (72, 1, [1, 2, 5, 1]),
    (54, 1, [1, 2, 4, 2]),
    (63, 1, [1, 2, 3, 3]),
    (178, 3, [1, 2, 2, 4]),
    (50, 3, [1, 2, 1, 5]),
    (52, 9, [1, 2, 0, 6]),
    (36, 1, [1, 1, 5, 2]),
    (27, 1, [1, 1, 4, 3]),
    (9, 1, [1, 1, 3, 4]),
    (24, 1, [1, 1, 2, 5]),
    (-2, 9, [1, 1, 1, 6]),
    (-208, 81, [1, 1, 0, 7]),
    (72, 1, [1, 0, 7, 1]),
    (90, 1, [1, 0, 6, 2]),
    (144, 1, [1, 0, 5, 3]),
    (154, 1, [1, 0, 4, 4]),
    (298, 3, [1, 0, 3, 5]),
    (613, 9, [1, 0, 2, 6]),
    (2260, 81, [1, 0, 1, 7]),
    (4, 1, [1, 0, 0, 8]),
    (18, 1, [0, 2, 5, 2]),
    (36, 1, [0, 2, 4, 3]),
    (16, 1, [0, 2, 3, 4]),
    (29, 1, [0, 2, 2, 5]),
    (110, 9, [0, 2, 1, 6]),
    (532, 81, [0, 2, 0, 7]),
    (9, 1, [0, 1, 5, 3]),
    (55, 3, [0, 1, 4, 4]),
    (8, 3, [0, 1, 3, 5]),
    (74, 9, [0, 1, 2, 6]),
    (226, 27, [0, 1, 1, 7]),
    (208, 81, [0, 1, 0, 8]),
    (18, 1, [0, 0, 7, 2]),
    (45, 1, [0, 0, 6, 3]),
    (142, 3, [0, 0, 5, 4]),
    (209, 3, [0, 0, 4, 5]),
    (139, 3, [0, 0, 3, 6]),
    (2738, 81, [0, 0, 2, 7]),
    (1460, 81, [0, 0, 1, 8]),
    (676, 81, [0, 0, 0, 9]),
];
