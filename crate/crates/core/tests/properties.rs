use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use bring_core::branch::{branch_expand, eigen_center, transform_to_eigenframe};
use bring_core::ff::{FieldCtx, FqElem, PowerSeries};
use bring_core::geometry::{genus, quotient_genus};
use bring_core::redei::{classify_vector, cone_system, SolutionKind};
use bring_core::symmetry::{apply_perm, classify_orbit, Permutation};
use bring_core::variety::{
    extra_equations_check, is_solution, jacobian_rank, structural_scan, DiagonalSystem, EnumConfig, ProjPoint,
};

fn field(p: u64, k: u32) -> FieldCtx {
    FieldCtx::new(p, k).unwrap()
}

fn elem(ctx: &FieldCtx, code: u64) -> FqElem {
    ctx.from_code(code % ctx.q()).unwrap()
}

struct Enumerated {
    sys: DiagonalSystem,
    points: Vec<ProjPoint>,
}

fn enumerated(p: u64, k: u32, m: usize, cell: &'static OnceLock<Enumerated>) -> &'static Enumerated {
    cell.get_or_init(|| {
        let sys = DiagonalSystem::bring(&field(p, k), m).unwrap();
        let points =
            bring_core::variety::enumerate_projective_points(&sys, &EnumConfig::default()).unwrap().points;
        Enumerated { sys, points }
    })
}

fn v29() -> &'static Enumerated {
    static CELL: OnceLock<Enumerated> = OnceLock::new();
    enumerated(29, 2, 5, &CELL)
}

fn v7() -> &'static Enumerated {
    static CELL: OnceLock<Enumerated> = OnceLock::new();
    enumerated(7, 1, 6, &CELL)
}

fn v11() -> &'static Enumerated {
    static CELL: OnceLock<Enumerated> = OnceLock::new();
    enumerated(11, 1, 5, &CELL)
}

fn permutation(m: usize) -> impl Strategy<Value = Permutation> {
    Just((0..m).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), which in 0usize..4) {
        let ctx = [field(7, 1), field(7, 4), field(29, 2), field(11, 3)][which].clone();
        let (a, b, c) = (elem(&ctx, a), elem(&ctx, b), elem(&ctx, c));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), ctx.one());
        }
        prop_assert_eq!(ctx.frobenius(ctx.add(a, b), 1), ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
        prop_assert_eq!(ctx.frobenius(ctx.mul(a, b), 1), ctx.mul(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
        if let Some(r) = ctx.sqrt(a) {
            prop_assert_eq!(ctx.square(r), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_reverse_and_inverse(coeffs in prop::collection::vec(0u64..49, 2..20)) {
        let ctx = field(7, 2);
        let n = coeffs.len();
        let mut c: Vec<FqElem> = coeffs.iter().map(|&x| elem(&ctx, x)).collect();
        c[0] = ctx.zero();
        if c[1].is_zero() {
            c[1] = ctx.one();
        }
        let s = PowerSeries::new(&ctx, c.clone(), n);
        let r = s.reverse().unwrap();
        prop_assert_eq!(s.compose(&r).unwrap(), PowerSeries::linear(&ctx, ctx.zero(), n));
        c[0] = ctx.one();
        let u = PowerSeries::new(&ctx, c, n);
        prop_assert_eq!(u.mul(&u.inverse().unwrap()).unwrap(), PowerSeries::constant(&ctx, ctx.one(), n));
    }

    #[test]
    fn permutations_preserve_solutions(i in any::<Index>(), g in permutation(5)) {
        let e = v29();
        let pt = i.get(&e.points);
        let img = apply_perm(e.sys.ctx(), &g, pt).unwrap();
        prop_assert!(is_solution(&e.sys, img.coords()));
        prop_assert_eq!(
            classify_orbit(e.sys.ctx(), &img).unwrap().kind,
            classify_orbit(e.sys.ctx(), pt).unwrap().kind
        );
    }

    #[test]
    fn scaling_fixes_the_canonical_form(i in any::<Index>(), s in 1u64..841) {
        let e = v29();
        let ctx = e.sys.ctx();
        let pt = i.get(&e.points);
        let c = elem(ctx, s);
        let scaled = ProjPoint::new(ctx, pt.coords().iter().map(|&x| ctx.mul(c, x)).collect()).unwrap();
        prop_assert_eq!(&scaled, pt);
    }

    #[test]
    fn enumerated_points_are_nonsingular_and_clean(i in any::<Index>(), which in 0usize..3) {
        let e = [v29(), v7(), v11()][which];
        let pt = i.get(&e.points);
        let m = e.sys.m();
        prop_assert_eq!(jacobian_rank(&e.sys, pt.coords()), m - 2);
        prop_assert!(structural_scan(std::slice::from_ref(pt)).is_clean());
        prop_assert!(extra_equations_check(e.sys.ctx(), pt.coords(), m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn branches_satisfy_the_equations(i in any::<Index>(), which in 0usize..2) {
        let e = [v7(), v11()][which];
        let pt = i.get(&e.points);
        let b = branch_expand(&e.sys, pt, 3 * e.sys.ctx().p() as usize).unwrap();
        prop_assert!(b.residuals_vanish(&e.sys));
        let pivots = b.pivots();
        prop_assert_eq!(&pivots[..2], &[0, 1]);
        for (s, &c) in b.series.iter().zip(pt.coords()) {
            prop_assert_eq!(s.coeff(0), c);
        }
    }

    #[test]
    fn orders_agree_across_the_rational_orbit(g in permutation(6)) {
        let e = v7();
        let center = eigen_center(e.sys.ctx()).unwrap();
        let img = apply_perm(e.sys.ctx(), &g, &center).unwrap();
        let b = branch_expand(&e.sys, &img, 21).unwrap();
        prop_assert_eq!(b.pivots(), vec![0, 1, 2, 3, 10]);
        prop_assert_eq!(b.hermitian_tangent_order(), Some(10));
    }

    #[test]
    fn cone_is_closed_under_translation(g in permutation(7), c in 1i64..7, l in 0i64..7) {
        let sys = cone_system(7).unwrap();
        let ctx = sys.ctx();
        let v: Vec<FqElem> = g.images().iter().map(|&i| ctx.from_int(c * i as i64 + l)).collect();
        prop_assert!(is_solution(&sys, &v));
        prop_assert_eq!(classify_vector(&v, 7), SolutionKind::Permutation);
    }
}

#[test]
fn eigenframe_pattern_at_seven_and_eleven() {
    for p in [7u64, 11] {
        let sys = DiagonalSystem::bring(&field(p, 1), p as usize - 1).unwrap();
        let b = branch_expand(&sys, &eigen_center(sys.ctx()).unwrap(), 5 * p as usize).unwrap();
        assert!(transform_to_eigenframe(&b).unwrap().off_pattern().is_empty());
    }
}

#[test]
fn genus_formulas() {
    for m in 5..=12u64 {
        let g = genus(m).unwrap();
        let f = (2..=m as i128 - 2).product::<i128>();
        assert_eq!(2 * g - 2, ((m as i128 - 2) * (m as i128 - 3) - 4) * f / 2);
        assert_eq!(quotient_genus(m, 2).unwrap(), 0);
        let m = m as i128;
        assert_eq!(quotient_genus(m as u64, 3).unwrap(), (m * m - 7 * m + 12) / 2);
    }
}
