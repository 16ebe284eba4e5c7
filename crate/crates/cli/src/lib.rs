//! Command-line front end: argument model, dispatch and exit-code policy.

pub mod criteria;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use bring_core::branch::{eigen_center, order_sequence_partial};
use bring_core::bring5::{invariants_check, isogeny_check, maximality_scan};
use bring_core::ff::FieldCtx;
use bring_core::geometry::{
    degree, galois_projection_check, genus, plane_point_count, plane_quotient_poly, quotient_genus,
    sv_plane_classical, verify_plane_identity,
};
use bring_core::redei::classify_redei_solutions;
use bring_core::symmetry::classify_all;
use bring_core::variety::{
    enumerate_affine_solutions, enumerate_projective_points, regular_sequence_probe, special_point_omega,
    write_point_set, DiagonalSystem, EnumConfig, ProjPoint, DEFAULT_BUDGET,
};
use bring_core::Error;

#[derive(Parser, Debug)]
#[command(name = "bring", version, about = "Computations on generalized Bring curves over finite fields")]
pub struct Cli {
    /// Cap on inner enumeration steps
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for every sampled check
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0: one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Emit CSV instead of JSON where the payload is a flat table
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count projective points of V over F_{p^ext}
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// Also scan the affine cone and report nonzero solutions
        #[arg(long)]
        affine: bool,
        /// Write the point set to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit-class histogram of V(F_{p^ext})
    Classify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Degree and genus of V, for one m or the range m..=to
    Genus {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        to: Option<u64>,
    },
    /// Genus of the quotient fixing l coordinates
    QuotientGenus {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        to: Option<u64>,
    },
    /// The plane quotient curve: identity check and, with --p, its point count
    PlaneCurve {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Primes up to the limit at which the m = 5 Jacobian factor is supersingular
    MaximalScan {
        #[arg(long)]
        limit: u64,
    },
    /// Order sequence of V at a point
    OrderSeq {
        #[arg(long)]
        p: u64,
        /// Defaults to p - 1
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// Center as `a;b;..`; defaults to the rational point for m = p - 1
        #[arg(long)]
        point: Option<String>,
        /// Starting precision (default 3p)
        #[arg(long)]
        precision: Option<usize>,
        /// Precision cap (default 8p)
        #[arg(long)]
        cap: Option<usize>,
        /// Print the orders found when the cap is reached instead of failing
        #[arg(long)]
        allow_incomplete: bool,
    },
    /// Solutions of the power-sum system in p variables over F_p
    Redei {
        #[arg(long)]
        p: u64,
    },
    /// Looks for common zeros of S_{m-1}, S_m on V over F_{p^k}, k <= max-ext
    Regular {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        max_ext: u32,
    },
    /// Fiber sizes of the projection onto the kept coordinates
    ProjectCheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// 1-based coordinate indices, e.g. `1,2,3`
        #[arg(long)]
        kept: String,
    },
    /// Maps sampled points of E1 through the isogeny and checks they land on E2
    IsogenyCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Checks the C4-invariant relations at sampled points of V (m = 5)
    InvariantsCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        ext: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Runs every acceptance criterion
    VerifyAll,
}

/// Result of one invocation: the stdout payload and whether its check held.
#[derive(Debug)]
pub struct Report {
    pub payload: Value,
    pub csv: Option<String>,
    pub ok: bool,
}

impl Report {
    fn ok(payload: Value) -> Self {
        Self { payload, csv: None, ok: true }
    }

    fn checked(payload: Value, ok: bool) -> Self {
        Self { payload, csv: None, ok }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    /// What goes to stdout.
    pub fn render(&self, csv: bool) -> String {
        match (&self.csv, csv) {
            (Some(t), true) => t.clone(),
            _ => format!("{}\n", self.payload),
        }
    }
}

pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit code for a core error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::PrecisionCap { .. } => EXIT_BUDGET,
        Error::NotPrime(_)
        | Error::CharacteristicTooSmall(_)
        | Error::FieldTooLarge { .. }
        | Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::SingularPoint
        | Error::NoRootsOfUnity { .. } => EXIT_USAGE,
        _ => EXIT_ASSERTION,
    }
}

fn bring(p: u64, ext: u32, m: usize) -> bring_core::Result<DiagonalSystem> {
    DiagonalSystem::bring(&FieldCtx::new(p, ext)?, m)
}

pub fn dispatch(cli: &Cli) -> bring_core::Result<Report> {
    let cfg = EnumConfig { budget: cli.budget, threads: cli.threads };
    match &cli.command {
        Command::Count { m, p, ext, affine, out } => {
            let sys = bring(*p, *ext, *m)?;
            let set = enumerate_projective_points(&sys, &cfg)?;
            eprintln!("{} evaluations", set.evaluations);
            if let Some(path) = out {
                std::fs::write(path, write_point_set(&sys, &set.points))
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            }
            let n = set.points.len();
            if *affine {
                let a = enumerate_affine_solutions(&sys, &cfg)?;
                let expected = n as u64 * (sys.ctx().q() - 1);
                return Ok(Report::checked(json!({"points": n, "affineNonzero": a.nonzero}), a.nonzero == expected));
            }
            Ok(Report::ok(json!({"points": n})).with_csv(format!("points\n{n}\n")))
        }
        Command::Classify { m, p, ext } => {
            let sys = bring(*p, *ext, *m)?;
            let pts = enumerate_projective_points(&sys, &cfg)?.points;
            let h = classify_all(sys.ctx(), &pts)?;
            let payload = json!({"omega": h[0], "epsilon": h[1], "theta": h[2], "generic": h[3], "total": pts.len()});
            let csv = format!("class,count\nomega,{}\nepsilon,{}\ntheta,{}\ngeneric,{}\n", h[0], h[1], h[2], h[3]);
            Ok(Report::ok(payload).with_csv(csv))
        }
        Command::Genus { m, to } => match to {
            None => Ok(Report::ok(json!({"genus": genus(*m)?}))),
            Some(to) => {
                let mut rows = Vec::new();
                let mut csv = String::from("m,degree,genus\n");
                for m in *m..=*to {
                    let (d, g) = (degree(m)?, genus(m)?);
                    csv.push_str(&format!("{m},{d},{g}\n"));
                    rows.push(json!({"m": m, "degree": d.to_string(), "genus": g.to_string()}));
                }
                Ok(Report::ok(json!({"rows": rows})).with_csv(csv))
            }
        },
        Command::QuotientGenus { m, l, to } => match to {
            None => Ok(Report::ok(json!({"quotientGenus": quotient_genus(*m, *l)?}))),
            Some(to) => {
                let mut rows = Vec::new();
                let mut csv = String::from("m,l,quotient_genus\n");
                for m in *m..=*to {
                    let g = quotient_genus(m, *l)?;
                    csv.push_str(&format!("{m},{l},{g}\n"));
                    rows.push(json!({"m": m, "l": l, "quotientGenus": g.to_string()}));
                }
                Ok(Report::ok(json!({"rows": rows})).with_csv(csv))
            }
        },
        Command::PlaneCurve { m, p, ext } => {
            let identity = verify_plane_identity(*m)?;
            let terms = plane_quotient_poly(*m)?.term_count();
            let mut payload = json!({"m": m, "identity": identity, "terms": terms});
            if let Some(p) = p {
                let ctx = FieldCtx::new(*p, *ext)?;
                let n = plane_point_count(&ctx, *m, &cfg)?;
                payload["points"] = json!(n);
                if *ext == 1 && *m + 1 == *p {
                    let g = quotient_genus(*m, 3)?;
                    let sv = sv_plane_classical(*p, *m - 2, g);
                    payload["svBound"] = json!(sv.bound.to_string());
                    payload["attainsBound"] = json!(n as i128 == sv.bound);
                }
            }
            Ok(Report::checked(payload, identity))
        }
        Command::MaximalScan { limit } => {
            let primes = maximality_scan(*limit, &cfg)?;
            let csv = std::iter::once("p".to_string()).chain(primes.iter().map(u64::to_string)).collect::<Vec<_>>();
            Ok(Report::ok(json!({"primes": primes})).with_csv(csv.join("\n") + "\n"))
        }
        Command::OrderSeq { p, m, ext, point, precision, cap, allow_incomplete } => {
            let m = m.unwrap_or(*p as usize - 1);
            let sys = bring(*p, *ext, m)?;
            let ctx = sys.ctx();
            let center = match point {
                Some(s) => ProjPoint::parse(ctx, s)?,
                None if m as u64 + 1 == *p => eigen_center(ctx)?,
                None => special_point_omega(ctx, m)?,
            };
            let os = order_sequence_partial(&sys, &center, *precision, *cap)?;
            if !os.complete && !allow_incomplete {
                eprintln!("pivots found before the cap: {:?}", os.orders);
                return Err(Error::PrecisionCap { cap: os.branch.precision });
            }
            let frob = os.branch.frobenius_osculating_check(os.last_order_bound());
            let mut payload = json!({
                "orders": os.orders,
                "lastOrder": os.last(),
                "frobeniusOsculating": frob,
            });
            if !os.complete {
                payload["complete"] = json!(false);
                payload["lastOrderLowerBound"] = json!(os.last_order_bound());
            }
            Ok(Report::ok(payload))
        }
        Command::Redei { p } => {
            let r = classify_redei_solutions(*p, &cfg)?;
            let payload = json!({"constant": r.constant, "permutation": r.permutation, "other": r.other});
            let csv = format!("constant,permutation,other\n{},{},{}\n", r.constant, r.permutation, r.other);
            Ok(Report::checked(payload, r.other == 0).with_csv(csv))
        }
        Command::Regular { m, p, max_ext } => {
            let probe = regular_sequence_probe(*m, *p, *max_ext, &cfg)?;
            let fields: Vec<Value> = probe
                .fields
                .iter()
                .map(|&(k, n, bad)| json!({"ext": k, "points": n, "commonZeros": bad}))
                .collect();
            Ok(Report::checked(json!({"holds": probe.holds(), "fields": fields}), probe.holds()))
        }
        Command::ProjectCheck { m, p, ext, kept } => {
            let sys = bring(*p, *ext, *m)?;
            let kept = kept
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(i) if (1..=*m).contains(&i) => Ok(i - 1),
                    _ => Err(Error::Parse(format!("bad coordinate index {t:?}"))),
                })
                .collect::<bring_core::Result<Vec<_>>>()?;
            let pts = enumerate_projective_points(&sys, &cfg)?.points;
            let r = galois_projection_check(sys.ctx(), &pts, &kept)?;
            let histogram: serde_json::Map<String, Value> =
                r.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let payload = json!({
                "genericFiber": r.generic_size,
                "imagePoints": r.image_points,
                "histogram": histogram,
                "consistent": r.consistent(),
            });
            Ok(Report::checked(payload, r.consistent()))
        }
        Command::IsogenyCheck { p, ext, samples } => {
            let r = isogeny_check(&FieldCtx::new(*p, *ext)?, *samples, cli.seed)?;
            let payload = json!({
                "samples": r.samples,
                "passed": r.passed,
                "exceptional": r.exceptional,
                "population": r.population,
            });
            Ok(Report::checked(payload, r.all_passed()))
        }
        Command::InvariantsCheck { p, ext, samples } => {
            let sys = bring(*p, *ext, 5)?;
            let pts = enumerate_projective_points(&sys, &cfg)?.points;
            let r = invariants_check(sys.ctx(), &pts, *samples, cli.seed)?;
            let payload = json!({
                "samples": r.samples,
                "exceptional": r.exceptional,
                "cubicRelation": r.cubic_ok,
                "c4Invariant": r.c4_ok,
                "onE1": r.e1_ok,
            });
            Ok(Report::checked(payload, r.all_passed()))
        }
        Command::VerifyAll => {
            let settings = criteria::Settings { cfg, seed: cli.seed };
            let mut rows = Vec::new();
            let mut all = true;
            for c in criteria::all() {
                let v = criteria::evaluate(&c, &settings);
                eprintln!("{}", v.line());
                all &= v.passed;
                rows.push(json!({
                    "id": v.id,
                    "name": v.name,
                    "evidence": v.evidence.label(),
                    "passed": v.passed,
                    "detail": v.detail,
                }));
            }
            Ok(Report::checked(json!({"criteria": rows, "allPassed": all}), all))
        }
    }
}
