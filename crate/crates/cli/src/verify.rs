//! The built-in verification suite. Each check is self-contained, draws its
//! randomness from a seed derived from the run seed and its own id, and
//! reports the first residual that failed to vanish.

use std::panic::{self, AssertUnwindSafe};
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgk_core::curves::{
    deformation_dimensions, find_descending_susy, h0s_matrix, orbit_normalize_points, same_orbit,
    susy1_map, susy_component_fields, target_matrix, TargetPoint,
};
use sgk_core::poly::Poly;
use sgk_core::scalar::{q, Coefficient};
use sgk_core::superspace::Chart;
use sgk_core::trees::{forget_last_mark, glue};
use sgk_core::{
    grassmann, linalg, sample, scgroup, superspace, MarkedConfig, ProjPoint, RatFunc, Scalar, ScMatrix, Sl2,
    SpinorSection, SuperCurve, SuperNumber, Symbolic, TreeConfig,
};

use crate::report::{Record, Report, Status};

pub const DEFAULT_SEED: u64 = 0x5eed;

struct Failure {
    message: String,
    residual: Option<String>,
}

type Outcome = Result<Option<String>, Failure>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure {
            message: message(),
            residual: None,
        })
    }
}

/// Passes when `x` vanishes; otherwise reports `x` as the residual.
fn ensure_zero(x: &SuperNumber, what: impl FnOnce() -> String) -> Result<(), Failure> {
    if x.is_zero() {
        Ok(())
    } else {
        Err(Failure {
            message: what(),
            residual: Some(x.to_string()),
        })
    }
}

fn ensure_matrix(got: &ScMatrix, want: &ScMatrix, what: impl FnOnce() -> String) -> Result<(), Failure> {
    for (x, y) in got.rows().iter().flatten().zip(want.rows().iter().flatten()) {
        let d = x - y;
        if !d.is_zero() {
            return Err(Failure {
                message: what(),
                residual: Some(d.to_string()),
            });
        }
    }
    Ok(())
}

fn ensure_residuals(m: &ScMatrix, what: impl Fn() -> String) -> Result<(), Failure> {
    let report = m.check();
    ensure(report.parity_ok && report.identity_component, &what)?;
    for (name, r) in &report.residuals {
        ensure_zero(r, || format!("{}: {name}", what()))?;
    }
    Ok(())
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn(&mut ChaCha8Rng) -> Outcome,
}

pub const CHECKS: &[Check] = &[
    Check {
        id: "chart-formulas",
        anchor: "chart action formulas agree with the projective action",
        run: chart_formulas,
    },
    Check {
        id: "decomposition",
        anchor: "unique factorization into an SL(2) lift and a SUSY move",
        run: decomposition,
    },
    Check {
        id: "deformation-dimensions",
        anchor: "admissible psi has dimension 2d, phi deforms in dimension 2d+1",
        run: deformation_dims,
    },
    Check {
        id: "gluing-equivariance",
        anchor: "gluing and forgetting commute with the torus over one odd generator",
        run: gluing_equivariance,
    },
    Check {
        id: "inverse-formula",
        anchor: "closed-form inverse of a superconformal matrix",
        run: inverse_formula,
    },
    Check {
        id: "lift-multipliers",
        anchor: "lifted SL(2) elements rescale theta by the spinor multiplier",
        run: lift_multipliers,
    },
    Check {
        id: "non-descent-curves",
        anchor: "torus-twisted SUSY moves on maps are undone only over one generator",
        run: non_descent_curves,
    },
    Check {
        id: "pgl-action-h0s",
        anchor: "SL(2) acts on global spinor sections by (a alpha + b beta, c alpha + d beta)",
        run: pgl_action_h0s,
    },
    Check {
        id: "sp21-closure",
        anchor: "defining and derived equations are closed under products",
        run: sp21_closure,
    },
    Check {
        id: "susy-component-fields",
        anchor: "SUSY moves on component fields",
        run: susy_component_fields_check,
    },
    Check {
        id: "susy-not-group",
        anchor: "product of two SUSY moves",
        run: susy_not_group,
    },
    Check {
        id: "susy-r01-normal",
        anchor: "SUSY moves are normal over one odd generator",
        run: susy_r01_normal,
    },
    Check {
        id: "susy1-equivariance",
        anchor: "the SUSY map intertwines the SL(2) actions",
        run: susy1_equivariance,
    },
    Check {
        id: "susy1-ranks",
        anchor: "SUSY map has rank 2 and cokernel k + 2d - 2",
        run: susy1_ranks,
    },
    Check {
        id: "torus-counterexample",
        anchor: "torus translate of the SUSY image of (0, 1_eps, infinity)",
        run: torus_counterexample,
    },
    Check {
        id: "torus-fixed-points",
        anchor: "torus fixed points are exactly the configurations with vanishing odd part",
        run: torus_fixed_points,
    },
];

pub fn ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

/// FNV-1a, so each check's stream is independent of which others run.
fn check_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325 ^ seed, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn run_one(check: &Check, seed: u64) -> Record {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, check.id));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| (check.run)(&mut rng)));
    let millis = start.elapsed().as_millis() as u64;
    let (status, residual, message) = match outcome {
        Ok(Ok(residual)) => (Status::Pass, residual, None),
        Ok(Err(f)) => (Status::Fail, f.residual, Some(f.message)),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown failure".into());
            (Status::Error, None, Some(msg))
        }
    };
    Record {
        id: check.id.to_string(),
        anchor: check.anchor.to_string(),
        status,
        residual,
        millis,
        message,
    }
}

/// Run the selected checks (all when `select` is empty) concurrently and
/// merge the records by id. Unknown ids are reported as errors.
pub fn verify(select: &[String], seed: u64) -> Report {
    let mut records: Vec<Record> = select
        .iter()
        .filter(|s| !CHECKS.iter().any(|c| c.id == s.as_str()))
        .map(|s| Record {
            id: s.clone(),
            anchor: String::new(),
            status: Status::Error,
            residual: None,
            millis: 0,
            message: Some(format!("unknown check; known checks are {}", ids().join(", "))),
        })
        .collect();
    let chosen: Vec<&Check> = CHECKS
        .iter()
        .filter(|c| select.is_empty() || select.iter().any(|s| s == c.id))
        .collect();
    thread::scope(|s| {
        let handles: Vec<_> = chosen.iter().map(|c| s.spawn(move || run_one(c, seed))).collect();
        records.extend(handles.into_iter().map(|h| h.join().expect("checks catch their own panics")));
    });
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Report {
        records,
        outputs: vec![],
    }
}

fn int(n: usize, k: i64) -> SuperNumber {
    SuperNumber::from_int(n, k)
}

fn gen(n: usize, i: usize) -> SuperNumber {
    SuperNumber::generator(n, i).expect("generator in range")
}

fn sp21_closure(r: &mut ChaCha8Rng) -> Outcome {
    let n = 4;
    for case in 0..1000 {
        let (x, y) = (sample::sc_matrix(r, n), sample::sc_matrix(r, n));
        ensure_residuals(&x, || format!("sample {case} is not superconformal"))?;
        ensure_residuals(&x.mul(&y), || format!("product {case}"))?;
    }
    Ok(Some("0".into()))
}

fn inverse_formula(r: &mut ChaCha8Rng) -> Outcome {
    let n = 4;
    for case in 0..300 {
        let m = sample::sc_matrix(r, n);
        let [[a, c, ga], [b, d, de], [al, be, _]] = m.rows();
        let formula = ScMatrix::from_rows([
            [d, -c, be.clone()],
            [-b, a, -al.clone()],
            [-de, ga, &int(n, 1) - &(&al * &be)],
        ]);
        ensure_matrix(&m.inverse(), &formula, || format!("inverse {case} differs from the closed form"))?;
        ensure_matrix(&m.mul(&formula), &ScMatrix::identity(n), || format!("m · inverse, case {case}"))?;
        ensure_matrix(&formula.mul(&m), &ScMatrix::identity(n), || format!("inverse · m, case {case}"))?;
    }
    Ok(Some("0".into()))
}

fn decomposition(r: &mut ChaCha8Rng) -> Outcome {
    let n = 4;
    for case in 0..300 {
        let m = sample::sc_matrix(r, n);
        let f = &int(n, 1) - &(&m.alpha * &m.beta).scale(&q(1, 2));
        let left = ScMatrix::from_rows([
            [&m.a * &f, &m.c * &f, int(n, 0)],
            [&m.b * &f, &m.d * &f, int(n, 0)],
            [int(n, 0), int(n, 0), int(n, 1)],
        ]);
        ensure_matrix(&left.mul(&ScMatrix::susy(&m.alpha, &m.beta)), &m, || {
            format!("factorization, case {case}")
        })?;
        let (g, al, be) = m.decompose();
        ensure_zero(&(&g.det() - &int(n, 1)), || format!("det of the SL(2) factor, case {case}"))?;
        ensure_matrix(&ScMatrix::recompose(&g, &al, &be), &m, || format!("recomposition, case {case}"))?;
        let other = sample::sl2(r, n);
        let (a2, b2) = (sample::odd(r, n), sample::odd(r, n));
        let (g2, x2, y2) = ScMatrix::recompose(&other, &a2, &b2).decompose();
        ensure(g2 == other && x2 == a2 && y2 == b2, || format!("uniqueness, case {case}"))?;
    }
    Ok(Some("0".into()))
}

fn susy_not_group(_: &mut ChaCha8Rng) -> Outcome {
    let n = 4;
    let (s, t, a, b) = (gen(n, 1), gen(n, 2), gen(n, 3), gen(n, 4));
    let one = int(n, 1);
    let half = |x: &SuperNumber, y: &SuperNumber| &one + &(x * y).scale(&q(1, 2));
    let (hst, hab) = (half(&s, &t), half(&a, &b));
    let (est, eab) = (&one - &(&s * &t), &one - &(&a * &b));
    let expected = ScMatrix::from_rows([
        [&(&hst * &hab) - &(&t * &a), -(&t * &b), &-(&hst * &b) - &(&t * &eab)],
        [&s * &a, &(&hst * &hab) + &(&s * &b), &(&hst * &a) + &(&s * &eab)],
        [
            &(&s * &hab) + &(&est * &a),
            &(&t * &hab) + &(&est * &b),
            &(&-(&s * &b) + &(&t * &a)) + &(&est * &eab),
        ],
    ]);
    let product = ScMatrix::susy(&s, &t).mul(&ScMatrix::susy(&a, &b));
    ensure_matrix(&product, &expected, || "product of SUSY moves".into())?;
    ensure_residuals(&product, || "the product is superconformal".into())?;
    let (g, _, _) = product.decompose();
    ensure(g != Sl2::identity(n), || "the product should have a nontrivial SL(2) factor".into())?;
    Ok(Some("0".into()))
}

fn susy_r01_normal(r: &mut ChaCha8Rng) -> Outcome {
    for case in 0..200 {
        let l = sample::sc_matrix(r, 1);
        let (s, t) = (sample::odd(r, 1), sample::odd(r, 1));
        let conj = l.inverse().mul(&ScMatrix::susy(&s, &t)).mul(&l);
        let (a, b, c, d) = (&l.a, &l.b, &l.c, &l.d);
        let want = ScMatrix::susy(&(&(a * &s) + &(b * &t)), &(&(c * &s) + &(d * &t)));
        ensure_matrix(&conj, &want, || format!("conjugated SUSY move, case {case}"))?;
    }
    // with two generators the conjugate picks up an SL(2) part
    let g = Sl2::from_scalars(2, q(2, 1), q(1, 1), q(1, 1), q(1, 1)).expect("det 1");
    let l = ScMatrix::recompose(&g, &gen(2, 1), &int(2, 0));
    let (h, _, _) = l.inverse().mul(&ScMatrix::susy(&int(2, 0), &gen(2, 2))).mul(&l).decompose();
    ensure(h != Sl2::identity(2), || "conjugation over two generators should leave the SUSY set".into())?;
    Ok(Some("0".into()))
}

fn pgl_action_h0s(r: &mut ChaCha8Rng) -> Outcome {
    for case in 0..200 {
        let n = r.gen_range(0..=3);
        let (g, h) = (sample::sl2(r, n), sample::sl2(r, n));
        let s = SpinorSection::new(sample::odd(r, n), sample::odd(r, n));
        let pushed = s.to_section().sl2_pushforward(&g);
        let want = s.act(&g);
        ensure(want.alpha == &(&g.a * &s.alpha) + &(&g.b * &s.beta), || format!("alpha, case {case}"))?;
        ensure(want.beta == &(&g.c * &s.alpha) + &(&g.d * &s.beta), || format!("beta, case {case}"))?;
        let diff = pushed.chart1() - want.to_section().chart1();
        ensure(diff.is_zero(), || format!("pushforward of s(alpha, beta), case {case}"))?;
        ensure(s.act(&g).act(&h) == s.act(&g.mul(&h)), || format!("right action, case {case}"))?;
    }
    Ok(Some("0".into()))
}

fn chart_formulas(r: &mut ChaCha8Rng) -> Outcome {
    for case in 0..300 {
        let n = r.gen_range(0..=3);
        let m = sample::sc_matrix(r, n);
        let p = sample::point(r, n);
        let image = m.act_point(&p);
        for chart in [Chart::One, Chart::Two] {
            if p.in_chart(chart) && image.in_chart(chart) {
                let via = m.act_chart(&p.to_chart(chart).expect("in chart")).expect("image in chart");
                let want = image.to_chart(chart).expect("in chart");
                ensure_zero(&(&via.p - &want.p), || format!("even coordinate, case {case}"))?;
                ensure_zero(&(&via.pi - &want.pi), || format!("odd coordinate, case {case}"))?;
            }
        }
    }
    Ok(Some("0".into()))
}

fn lift_multipliers(r: &mut ChaCha8Rng) -> Outcome {
    for case in 0..300 {
        let n = r.gen_range(0..=3);
        let m = ScMatrix::lift(&sample::sl2(r, n));
        let mult = m.spinor_pushforward().expect("lifts have multipliers");
        let p = sample::point(r, n);
        for chart in [Chart::One, Chart::Two] {
            let Ok(cp) = p.to_chart(chart) else { continue };
            let (Ok(factor), Ok(out)) = (mult.eval(chart, &cp.p), m.act_chart(&cp)) else { continue };
            ensure_zero(&(&out.pi - &(&cp.pi * &factor)), || format!("theta multiplier, case {case}"))?;
        }
    }
    Ok(Some("0".into()))
}

type SymNum = grassmann::SuperNumber<Symbolic>;
type SymPoint = superspace::ProjPoint<Symbolic>;

fn symbolic(x: &SuperNumber) -> SymNum {
    x.map_coefficients(|c| RatFunc::constant(c.clone()))
}

fn unit_eps(e: &SymNum) -> SymPoint {
    let one = SymNum::one(e.n());
    SymPoint::new(one.clone(), one, e.clone()).expect("even coordinates")
}

fn torus_counterexample(_: &mut ChaCha8Rng) -> Outcome {
    let n = 2;
    let (eps, beta) = (gen(n, 1), gen(n, 2));
    let m = ScMatrix::susy(&int(n, 0), &beta);
    let expected = ScMatrix::from_rows([
        [int(n, 1), int(n, 0), -&beta],
        [int(n, 0), int(n, 1), int(n, 0)],
        [int(n, 0), beta.clone(), int(n, 1)],
    ]);
    ensure_matrix(&m, &expected, || "the SUSY move".into())?;
    let unit = ProjPoint::new(int(n, 1), int(n, 1), eps.clone()).expect("valid point");
    let images: Vec<ProjPoint> = [ProjPoint::origin(n), unit, ProjPoint::infinity(n)]
        .iter()
        .map(|p| m.act_point(p))
        .collect();
    let want = [
        ProjPoint::origin(n),
        ProjPoint::new(int(n, 1), &int(n, 1) + &(&eps * &beta), &eps - &beta).expect("valid point"),
        ProjPoint::new(int(n, 1), int(n, 0), -&beta).expect("valid point"),
    ];
    for (i, (got, w)) in images.iter().zip(&want).enumerate() {
        ensure(got == w, || format!("image of point {i}: {got} instead of {w}"))?;
    }

    // Adding a fourth point separates the orbits for a transcendental t.
    let t = SymNum::scalar(n, RatFunc::t());
    let (s_eps, s_beta) = (symbolic(&eps), symbolic(&beta));
    let sm = scgroup::ScMatrix::susy(&SymNum::zero(n), &s_beta);
    let two = SymPoint::reduced(n, <Symbolic as Coefficient>::from_int(2), <Symbolic as Coefficient>::from_int(1))
        .expect("valid point");
    let pts = vec![SymPoint::origin(n), unit_eps(&s_eps), SymPoint::infinity(n), two];
    let moved: Vec<SymPoint> = pts.iter().map(|p| sm.act_point(p).torus(&t)).collect();
    let twisted: Vec<SymPoint> = pts.iter().map(|p| p.torus(&t)).collect();
    let same = same_orbit(&moved, &twisted).map_err(|e| Failure {
        message: e.to_string(),
        residual: None,
    })?;
    ensure(!same, || "the twisted configurations should lie in different orbits".into())?;
    let (_, nf) = orbit_normalize_points(&moved).map_err(|e| Failure {
        message: e.to_string(),
        residual: None,
    })?;
    let z = nf.rest[0].to_chart(Chart::One).expect("finite").p;
    let t2 = RatFunc::t() * RatFunc::t();
    let shift = <Symbolic as Coefficient>::from_int(2) - <Symbolic as Coefficient>::from_int(2) * t2;
    let expect = &SymNum::from_int(n, 2) + &(&s_eps * &s_beta).scale(&shift);
    ensure(z == expect, || format!("fourth point normalizes to {z}"))?;
    let minus = SymNum::from_int(n, -1);
    let a: Vec<SymPoint> = pts.iter().map(|p| sm.act_point(p).torus(&minus)).collect();
    let b: Vec<SymPoint> = pts.iter().map(|p| p.torus(&minus)).collect();
    ensure(same_orbit(&a, &b).unwrap_or(false), || "at t = -1 the orbits must agree".into())?;
    Ok(Some((&z - &SymNum::from_int(n, 2)).to_string()))
}

fn non_descent_curves(_: &mut ChaCha8Rng) -> Outcome {
    let sym = |c: &SuperCurve| c.map_coefficients(|x| RatFunc::constant(x.clone()));
    let t = |n: usize| SymNum::scalar(n, RatFunc::t());
    let poly = |n: usize, cs: &[i64]| Poly::from_scalars(n, &cs.iter().map(|&c| q(c, 1)).collect::<Vec<_>>());

    let c1 = SuperCurve::from_components(2, poly(1, &[0, 0, 1]), poly(1, &[1, 1]), Poly::from_coeffs(1, vec![gen(1, 1)]))
        .expect("global map");
    let beta = symbolic(&gen(1, 1));
    let found = find_descending_susy(&t(1), &beta, &sym(&c1));
    ensure(found == Some(&t(1) * &beta), || "over one generator t·beta should undo the move".into())?;

    let n = 2;
    let c2 = SuperCurve::from_components(1, poly(n, &[0, 1]), poly(n, &[1]), Poly::from_coeffs(n, vec![gen(n, 2)]))
        .expect("global map");
    ensure(find_descending_susy(&t(n), &symbolic(&gen(n, 1)), &sym(&c2)).is_none(), || {
        "over two generators no SUSY move should undo the twisted one".into()
    })?;
    for s in [1, -1] {
        ensure(find_descending_susy(&int(n, s), &gen(n, 1), &c2).is_some(), || {
            format!("at t = {s} the move descends")
        })?;
    }
    Ok(None)
}

fn susy1_ranks(r: &mut ChaCha8Rng) -> Outcome {
    for k in 0..=6usize {
        for d in 0..=3usize {
            if k + 2 * d < 3 {
                continue;
            }
            for case in 0..50 {
                let map = susy1_map(&sample::reduced_config(r, 0, k, d));
                ensure(map.rank == 2 && map.cokernel_dim == k + 2 * d - 2, || {
                    format!(
                        "k = {k}, d = {d}, case {case}: rank {} and cokernel {}",
                        map.rank, map.cokernel_dim
                    )
                })?;
            }
        }
    }
    let pts = vec![ProjPoint::origin(0), ProjPoint::unit(0), ProjPoint::infinity(0)];
    let constant = SuperCurve::constant(int(0, 0), int(0, 1)).expect("constant map");
    let map = susy1_map(&MarkedConfig::new(pts, constant).expect("distinct points"));
    ensure(map.cokernel_dim == 1, || format!("three points: cokernel {}", map.cokernel_dim))?;
    Ok(None)
}

fn susy1_equivariance(r: &mut ChaCha8Rng) -> Outcome {
    let mut cases = 0;
    while cases < 100 {
        let (k, d) = (r.gen_range(0..=5usize), r.gen_range(0..=3usize));
        if k + 2 * d < 3 {
            continue;
        }
        cases += 1;
        let cfg = sample::reduced_config(r, 0, k, d);
        let g = sample::sl2(r, 0);
        let moved = cfg.act(&ScMatrix::lift(&g));
        let lhs = linalg::mat_mul(&susy1_map(&moved).matrix, &h0s_matrix(&g));
        let rhs = linalg::mat_mul(&target_matrix(&g, &cfg), &susy1_map(&cfg).matrix);
        ensure(lhs == rhs, || format!("square fails to commute, k = {k}, d = {d}"))?;
        let odd = sample::config(r, 1, k, d);
        let base = susy1_map(&odd).cokernel_dim;
        for t in torus_values(1) {
            let dim = susy1_map(&odd.torus(&t)).cokernel_dim;
            ensure(dim == base, || format!("cokernel changes under t = {t}"))?;
        }
    }
    Ok(None)
}

fn susy_component_fields_check(r: &mut ChaCha8Rng) -> Outcome {
    for case in 0..100 {
        let (n, d) = (r.gen_range(0..=4), r.gen_range(1..=3));
        let c = sample::curve(r, n, d);
        let (al, be) = (sample::odd(r, n), sample::odd(r, n));
        let moved = c.act_susy(&al, &be);
        let (phi, psi) = susy_component_fields(&al, &be, &c);
        ensure(moved.phi().same_as(&phi), || format!("phi, case {case}"))?;
        ensure(moved.psi().same_as(&psi), || format!("psi, case {case}"))?;
    }
    Ok(None)
}

fn deformation_dims(r: &mut ChaCha8Rng) -> Outcome {
    for d in 0..=4 {
        for _ in 0..10 {
            let c = sample::reduced_curve(r, 0, d);
            let dims = deformation_dimensions(&c);
            ensure(dims == (2 * d, 2 * d + 1), || format!("degree {d}: {dims:?}"))?;
        }
    }
    Ok(None)
}

fn torus_values(n: usize) -> Vec<SuperNumber> {
    [q(2, 1), Scalar::new(q(0, 1).re, q(1, 1).re), q(-3, 5)]
        .into_iter()
        .map(|t| SuperNumber::scalar(n, t))
        .collect()
}

/// Two random trees whose last marks map to the same target point, so they
/// can be glued.
fn matched_pair(r: &mut ChaCha8Rng, n: usize) -> (TreeConfig, TreeConfig) {
    loop {
        let c1 = sample::tree_config(r, n, 3);
        let c2 = sample::tree_config(r, n, 3);
        let at = |c: &TreeConfig| {
            let v = *c.tree().marking().last().expect("trees carry marks");
            let t: TargetPoint<Scalar> = c.curves()[v].eval(c.marked().last().expect("marked"));
            t.y.invert().ok().map(|inv| &t.x * &inv)
        };
        let (Some(x1), Some(x2)) = (at(&c1), at(&c2)) else { continue };
        return (c1, c2.translate_target(&(&x1 - &x2)));
    }
}

fn gluing_equivariance(r: &mut ChaCha8Rng) -> Outcome {
    for case in 0..50 {
        let (c1, c2) = matched_pair(r, 1);
        let glued = glue(&c1, &c2).map_err(|e| Failure {
            message: format!("case {case}: {e}"),
            residual: None,
        })?;
        ensure(glued.validate().is_valid(), || format!("glued tree {case} is invalid"))?;
        for t in torus_values(1) {
            let lhs = glue(&c1.torus(&t), &c2.torus(&t)).map_err(|e| Failure {
                message: format!("case {case}, t = {t}: {e}"),
                residual: None,
            })?;
            ensure(lhs.equivalent(&glued.torus(&t)), || format!("gluing, case {case}, t = {t}"))?;
        }
        if let Ok(f) = forget_last_mark(&c1) {
            for t in torus_values(1) {
                let lhs = forget_last_mark(&c1.torus(&t)).map_err(|e| Failure {
                    message: e.to_string(),
                    residual: None,
                })?;
                ensure(lhs.equivalent(&f.torus(&t)), || format!("forgetting, case {case}, t = {t}"))?;
            }
        }
    }
    Ok(None)
}

fn point_reduced(p: &ProjPoint) -> bool {
    p.odd_normal_part().map(|np| np.value == q(0, 1)).unwrap_or(false)
}

fn torus_fixed_points(r: &mut ChaCha8Rng) -> Outcome {
    let ts = torus_values(1);
    for case in 0..100 {
        let flatten = case % 2 == 0;
        let p = sample::point(r, 1);
        let p = if flatten { p.torus(&int(1, 0)) } else { p };
        let fixed = ts.iter().all(|t| p.torus(t).equivalent(&p));
        ensure(fixed == point_reduced(&p), || format!("point {p}"))?;

        let d = r.gen_range(0..=3);
        let c = sample::curve(r, 1, d);
        let c = if flatten { c.torus(&int(1, 0)) } else { c };
        let fixed = ts.iter().all(|t| c.torus(t).same_map(&c));
        ensure(fixed == c.psi().is_zero(), || format!("curve {c}"))?;

        let cfg = sample::tree_config(r, 1, 3);
        let cfg = if flatten { cfg.torus(&int(1, 0)) } else { cfg };
        let fixed = ts.iter().all(|t| cfg.torus(t).equivalent(&cfg));
        let reduced = cfg.nodal().values().chain(cfg.marked()).all(point_reduced)
            && cfg.curves().iter().all(|c| c.psi().is_zero());
        ensure(fixed == reduced, || format!("tree configuration, case {case}"))?;
    }
    Ok(None)
}
