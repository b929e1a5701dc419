//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a nonzero status when any criterion fails.

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgk_core::curves::{deformation_dimensions, h0s_matrix, susy1_map, target_matrix, TargetPoint};
use sgk_core::grassmann::{self, Monomial};
use sgk_core::linalg;
use sgk_core::scalar::{q, Coefficient};
use num_traits::{One, Zero};
use sgk_core::scgroup::{self, three_point_normalize};
use sgk_core::superspace;
use sgk_core::trees::{forget_last_mark, glue};
use sgk_core::{
    sample, MarkedConfig, ProjPoint, RatFunc, Scalar, ScMatrix, SuperCurve, SuperNumber, Symbolic, TreeConfig,
};

const SEED: u64 = 0x5eed;

type Verdict = Result<String, String>;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ criterion)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: usize, k: i64) -> SuperNumber {
    SuperNumber::from_int(n, k)
}

fn gen(n: usize, i: usize) -> SuperNumber {
    SuperNumber::generator(n, i).unwrap()
}

fn matrix_diff(got: &ScMatrix, want: &ScMatrix) -> Option<SuperNumber> {
    got.rows()
        .iter()
        .flatten()
        .zip(want.rows().iter().flatten())
        .map(|(x, y)| x - y)
        .find(|d| !d.is_zero())
}

fn torus_values(n: usize) -> Vec<SuperNumber> {
    [q(2, 1), Scalar::new(q(0, 1).re, q(1, 1).re), q(-3, 5)]
        .into_iter()
        .map(|t| SuperNumber::scalar(n, t))
        .collect()
}

// 1. Algebra kernel

/// Schoolbook product: the sign of `e_A e_B` is the parity of the number of
/// pairs `i ∈ A, j ∈ B` with `i > j`.
fn oracle_mul(x: &SuperNumber, y: &SuperNumber) -> SuperNumber {
    let n = x.n();
    let mut out = Vec::new();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.bits() & b.bits() != 0 {
                continue;
            }
            let swaps: usize = a.indices().map(|i| b.indices().filter(|&j| j < i).count()).sum();
            let c = ca.clone() * cb.clone();
            out.push((Monomial::from_bits(a.bits() | b.bits()), if swaps % 2 == 1 { -c } else { c }));
        }
    }
    SuperNumber::from_terms(n, out).unwrap()
}

fn homogeneous(r: &mut ChaCha8Rng, n: usize) -> (SuperNumber, bool) {
    let odd = r.gen_bool(0.5);
    let x = if odd { sample::odd(r, n) } else { sample::even(r, n) };
    (x, odd)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut r = rng(1);
    let cases = 1200;
    for case in 0..cases {
        let n = r.gen_range(0..=6);
        let (x, px) = homogeneous(&mut r, n);
        let (y, py) = homogeneous(&mut r, n);
        let z = sample::super_number(&mut r, n, None, 6);
        ensure(&x * &y == oracle_mul(&x, &y), || format!("product differs from the oracle, case {case}"))?;
        ensure(&(&x * &y) * &z == &x * &(&y * &z), || format!("associativity, case {case}"))?;
        let swapped = &y * &x;
        let want = if px && py { -swapped } else { swapped };
        ensure(&x * &y == want, || format!("graded commutativity, case {case}"))?;
        if !px {
            ensure(x.soul().pow(n as u32 / 2 + 1).is_zero(), || format!("even soul, case {case}"))?;
        } else {
            ensure((&x * &x).is_zero(), || format!("odd square, case {case}"))?;
        }
        ensure(z.soul().pow(n as u32 + 1).is_zero(), || format!("soul nilpotency, case {case}"))?;
        if z.is_invertible() {
            let inv = z.invert().map_err(|e| e.to_string())?;
            let one = SuperNumber::one(n);
            ensure(&z * &inv == one && &inv * &z == one, || format!("inverse, case {case}"))?;
        } else {
            ensure(z.body().is_zero(), || format!("invertibility misjudged, case {case}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:.2?}"))?;
    Ok(format!("{cases} cases over n <= 6 in {elapsed:.2?}"))
}

// 2. Closure

fn criterion_2() -> Verdict {
    let mut r = rng(2);
    let n = 4;
    let mut residuals = 0;
    for case in 0..1000 {
        let (x, y) = (sample::sc_matrix(&mut r, n), sample::sc_matrix(&mut r, n));
        for (what, m) in [("sample", x.clone()), ("product", x.mul(&y))] {
            let report = m.check();
            ensure(report.parity_ok && report.identity_component, || format!("{what} {case}: parity"))?;
            for (name, res) in &report.residuals {
                residuals += 1;
                ensure(res.is_zero(), || format!("{what} {case}: {name} leaves {res}"))?;
            }
        }
    }
    Ok(format!("1000 products over 4 generators, {residuals} residuals all exactly zero"))
}

// 3. Closed-form matrices

fn criterion_3() -> Verdict {
    let mut r = rng(3);
    let n = 4;
    for case in 0..300 {
        let m = sample::sc_matrix(&mut r, n);
        let [[a, c, ga], [b, d, de], [al, be, _]] = m.rows();
        let formula = ScMatrix::from_rows([
            [d, -c, be.clone()],
            [-b, a, -al.clone()],
            [-de, ga, &int(n, 1) - &(&al * &be)],
        ]);
        if let Some(diff) = matrix_diff(&m.inverse(), &formula) {
            return Err(format!("inverse formula, case {case}: {diff}"));
        }
        let f = &int(n, 1) - &(&m.alpha * &m.beta).scale(&q(1, 2));
        let left = ScMatrix::from_rows([
            [&m.a * &f, &m.c * &f, int(n, 0)],
            [&m.b * &f, &m.d * &f, int(n, 0)],
            [int(n, 0), int(n, 0), int(n, 1)],
        ]);
        if let Some(diff) = matrix_diff(&left.mul(&ScMatrix::susy(&m.alpha, &m.beta)), &m) {
            return Err(format!("decomposition, case {case}: {diff}"));
        }
        let (g, x, y) = m.decompose();
        ensure(ScMatrix::recompose(&g, &x, &y) == m, || format!("unique decomposition, case {case}"))?;
    }

    let (s, t, a, b) = (gen(n, 1), gen(n, 2), gen(n, 3), gen(n, 4));
    let one = int(n, 1);
    let half = |x: &SuperNumber, y: &SuperNumber| &one + &(x * y).scale(&q(1, 2));
    let (hst, hab) = (half(&s, &t), half(&a, &b));
    let (est, eab) = (&one - &(&s * &t), &one - &(&a * &b));
    let product = ScMatrix::from_rows([
        [&(&hst * &hab) - &(&t * &a), -(&t * &b), &-(&hst * &b) - &(&t * &eab)],
        [&s * &a, &(&hst * &hab) + &(&s * &b), &(&hst * &a) + &(&s * &eab)],
        [
            &(&s * &hab) + &(&est * &a),
            &(&t * &hab) + &(&est * &b),
            &(&-(&s * &b) + &(&t * &a)) + &(&est * &eab),
        ],
    ]);
    if let Some(diff) = matrix_diff(&ScMatrix::susy(&s, &t).mul(&ScMatrix::susy(&a, &b)), &product) {
        return Err(format!("product of SUSY moves: {diff}"));
    }

    for case in 0..200 {
        let l = sample::sc_matrix(&mut r, 1);
        let (s, t) = (sample::odd(&mut r, 1), sample::odd(&mut r, 1));
        let conj = l.inverse().mul(&ScMatrix::susy(&s, &t)).mul(&l);
        let want = ScMatrix::susy(&(&(&l.a * &s) + &(&l.b * &t)), &(&(&l.c * &s) + &(&l.d * &t)));
        if let Some(diff) = matrix_diff(&conj, &want) {
            return Err(format!("conjugation over one generator, case {case}: {diff}"));
        }
    }

    let n = 2;
    let (eps, beta) = (gen(n, 1), gen(n, 2));
    let t = SuperNumber::scalar(n, q(7, 3));
    let xi = ScMatrix::susy(&int(n, 0), &beta);
    let pts = [
        ProjPoint::origin(n),
        ProjPoint::new(int(n, 1), int(n, 1), eps.clone()).unwrap(),
        ProjPoint::infinity(n),
    ];
    let images = [
        [int(n, 0), int(n, 1), int(n, 0)],
        [int(n, 1), &int(n, 1) + &(&eps * &beta), &eps - &beta],
        [int(n, 1), int(n, 0), -&beta],
    ];
    for (i, (p, w)) in pts.iter().zip(&images).enumerate() {
        let got = xi.act_point(p);
        ensure([got.z1(), got.z2(), got.theta()] == [&w[0], &w[1], &w[2]], || {
            format!("image of point {i} is {got}")
        })?;
        let twisted = got.torus(&t);
        ensure(twisted.theta() == &(&t * &w[2]) && twisted.z2() == &w[1], || {
            format!("torus image of point {i} is {twisted}")
        })?;
    }
    Ok("inverse, decomposition, SUSY product, conjugation and counterexample products all exact".into())
}

// 4. Counterexample semantics

type SymNum = grassmann::SuperNumber<Symbolic>;
type SymPoint = superspace::ProjPoint<Symbolic>;
type SymMatrix = scgroup::ScMatrix<Symbolic>;

fn lift_symbolic(x: &SuperNumber) -> SymNum {
    x.map_coefficients(|c| RatFunc::constant(c.clone()))
}

fn unit_point(e: &SymNum) -> SymPoint {
    let one = SymNum::one(e.n());
    SymPoint::new(one.clone(), one, e.clone()).unwrap()
}

/// Normal forms `ε` of the twisted image triple and of `(0, 1_{tε}, ∞)`.
fn twisted_normal_forms(eps: &SuperNumber, beta: &SuperNumber) -> Result<(SymNum, SymNum), String> {
    let n = eps.n();
    let t = SymNum::scalar(n, RatFunc::t());
    let (eps, beta) = (lift_symbolic(eps), lift_symbolic(beta));
    let xi = SymMatrix::susy(&SymNum::zero(n), &beta);
    let image: Vec<SymPoint> = [SymPoint::origin(n), unit_point(&eps), SymPoint::infinity(n)]
        .iter()
        .map(|p| xi.act_point(p).torus(&t))
        .collect();
    let (_, e1) = three_point_normalize(&image[0], &image[1], &image[2]).map_err(|e| e.to_string())?;
    let (_, e2) = three_point_normalize(&SymPoint::origin(n), &unit_point(&(&t * &eps)), &SymPoint::infinity(n))
        .map_err(|e| e.to_string())?;
    Ok((e1, e2))
}

fn residual_group_commutes(r: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut checked = 0;
    for case in 0..200 {
        let n = r.gen_range(0..=3);
        let a = sample::even_invertible(r, n);
        let g = scgroup::g_prime(&a).map_err(|e| e.to_string())?;
        let elements = [g.clone(), g.mul(&ScMatrix::reflection(n))];
        let (zero, inf) = (ProjPoint::origin(n), ProjPoint::infinity(n));
        let k = r.gen_range(0..=3);
        let mut points = vec![zero.clone(), inf.clone()];
        points.extend(sample::distinct_points(r, n, k, &[zero.clone(), inf.clone()]));
        let d = r.gen_range(0..=2);
        let cfg = MarkedConfig::new(points, sample::curve(r, n, d)).map_err(|e| e.to_string())?;
        let t = if case % 4 == 3 {
            sample::even_invertible(r, n)
        } else {
            torus_values(n)[case % 3].clone()
        };
        for (which, h) in elements.iter().enumerate() {
            ensure(h.act_point(&zero).equivalent(&zero) && h.act_point(&inf).equivalent(&inf), || {
                format!("case {case}: residual element {which} moves 0 or infinity")
            })?;
            let lhs = cfg.act(h).torus(&t);
            let rhs = cfg.torus(&t).act(h);
            ensure(lhs == rhs, || format!("case {case}: torus and residual element {which} do not commute"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_4() -> Verdict {
    let mut r = rng(4);
    let mut problems = Vec::new();
    let pairs = [(gen(2, 1), gen(2, 2)), (&gen(4, 1) + &(&gen(4, 2) * &(&gen(4, 3) * &gen(4, 4))), &gen(4, 2) - &(&gen(4, 1) * &(&gen(4, 3) * &gen(4, 4))))];
    let mut forms = Vec::new();
    for (eps, beta) in &pairs {
        let (e1, e2) = twisted_normal_forms(eps, beta)?;
        if e1 == e2 {
            problems.push(format!(
                "twisted image triple and (0, 1_teps, inf) share the normal form eps' = {e1} (eps = {eps}, beta = {beta})"
            ));
        }
        forms.push(e1);
    }
    let commuting = match residual_group_commutes(&mut r) {
        Ok(k) => format!("torus commutes with diag(a, 1/a, 1) and its reflection on {k} slice configurations"),
        Err(e) => {
            problems.push(e.clone());
            e
        }
    };
    if problems.is_empty() {
        Ok(format!("normal forms distinct; {commuting}"))
    } else {
        problems.push(format!(
            "analysis: susy(0, t*beta) followed by diag(a, 1/a, 1) with a^2 = 1 + (t^2 - 1)*eps*beta maps \
             (0, 1_teps, inf) onto the twisted triple, so three points cannot separate the orbits; a fourth point does (see verify-paper torus-counterexample); {commuting}"
        ));
        Err(problems.join("; "))
    }
}

// 5. Dimensions

/// Rank of a matrix with two columns, from its minors.
fn rank2(rows: &[[Scalar; 2]]) -> usize {
    let zero = Scalar::zero();
    for (i, x) in rows.iter().enumerate() {
        for y in &rows[i + 1..] {
            if x[0].clone() * y[1].clone() - x[1].clone() * y[0].clone() != zero {
                return 2;
            }
        }
    }
    usize::from(rows.iter().any(|x| x[0] != zero || x[1] != zero))
}

/// Independent cokernel count: values of `s(α, β) = α - βz` at the points
/// and the coefficients of `(α - βz)·W` with `W = P'Q - PQ'`.
fn oracle_cokernel(cfg: &MarkedConfig) -> usize {
    let mut rows: Vec<[Scalar; 2]> = Vec::new();
    for p in &cfg.points {
        let p = p.reduce().normalize();
        if p.z2().body().is_zero() {
            rows.push([Scalar::zero(), -Scalar::one()]);
        } else {
            let z = p.z1().body() / p.z2().body();
            rows.push([Scalar::one(), -z]);
        }
    }
    let d = cfg.curve.degree();
    if d > 0 {
        let c = cfg.curve.reduce();
        let (pp, qq) = (c.phi_numerator().body(), c.phi_denominator().body());
        let at = |v: &[Scalar], i: usize| v.get(i).cloned().unwrap_or_else(Scalar::zero);
        let deriv = |v: &[Scalar], i: usize| at(v, i + 1) * Scalar::from_int(i as i64 + 1);
        let w: Vec<Scalar> = (0..2 * d)
            .map(|k| {
                (0..=k).fold(Scalar::zero(), |acc, i| {
                    acc + deriv(&pp, i) * at(&qq, k - i) - at(&pp, i) * deriv(&qq, k - i)
                })
            })
            .collect();
        for k in 0..2 * d {
            let prev = if k == 0 { Scalar::zero() } else { w[k - 1].clone() };
            rows.push([w[k].clone(), -prev]);
        }
    }
    rows.len() - rank2(&rows)
}

fn criterion_5() -> Verdict {
    let mut r = rng(5);
    for d in 0..=4 {
        for _ in 0..10 {
            let c = sample::reduced_curve(&mut r, 0, d);
            let dims = deformation_dimensions(&c);
            ensure(dims == (2 * d, 2 * d + 1), || format!("degree {d}: {dims:?}"))?;
        }
    }
    let mut configs = 0;
    for k in 0..=6usize {
        for d in 0..=3usize {
            if k + 2 * d < 3 {
                continue;
            }
            for case in 0..50 {
                let cfg = sample::reduced_config(&mut r, 0, k, d);
                let map = susy1_map(&cfg);
                let want = k + 2 * d - 2;
                ensure(map.cokernel_dim == want && oracle_cokernel(&cfg) == want, || {
                    format!("k = {k}, d = {d}, case {case}: cokernel {} (oracle {})", map.cokernel_dim, oracle_cokernel(&cfg))
                })?;
                configs += 1;
            }
        }
    }
    let pts = vec![ProjPoint::origin(0), ProjPoint::unit(0), ProjPoint::infinity(0)];
    let m03 = MarkedConfig::new(pts, SuperCurve::constant(int(0, 0), int(0, 1)).unwrap()).unwrap();
    let c = susy1_map(&m03).cokernel_dim;
    ensure(c == 1 && oracle_cokernel(&m03) == 1, || format!("three points: cokernel {c}"))?;
    Ok(format!("deformations (2d, 2d+1) for d <= 4; cokernel k+2d-2 on {configs} configurations; M_0,3 gives 1"))
}

// 6. Equivariance

fn matched_pair(r: &mut ChaCha8Rng, n: usize) -> (TreeConfig, TreeConfig) {
    loop {
        let c1 = sample::tree_config(r, n, 3);
        let c2 = sample::tree_config(r, n, 3);
        let at = |c: &TreeConfig| {
            let v = *c.tree().marking().last()?;
            let t: TargetPoint<Scalar> = c.curves()[v].eval(c.marked().last()?);
            t.y.invert().ok().map(|inv| &t.x * &inv)
        };
        let (Some(x1), Some(x2)) = (at(&c1), at(&c2)) else { continue };
        return (c1, c2.translate_target(&(&x1 - &x2)));
    }
}

fn criterion_6() -> Verdict {
    let mut r = rng(6);
    let mut cases = 0;
    while cases < 120 {
        let (k, d) = (r.gen_range(0..=5usize), r.gen_range(0..=3usize));
        if k + 2 * d < 3 {
            continue;
        }
        cases += 1;
        let cfg = sample::reduced_config(&mut r, 0, k, d);
        let g = sample::sl2(&mut r, 0);
        let lhs = linalg::mat_mul(&susy1_map(&cfg.act(&ScMatrix::lift(&g))).matrix, &h0s_matrix(&g));
        let rhs = linalg::mat_mul(&target_matrix(&g, &cfg), &susy1_map(&cfg).matrix);
        ensure(lhs == rhs, || format!("SL(2) square, k = {k}, d = {d}"))?;
        let odd = sample::config(&mut r, 1, k, d);
        let base = susy1_map(&odd).cokernel_dim;
        for t in torus_values(1) {
            let dim = susy1_map(&odd.torus(&t)).cokernel_dim;
            ensure(dim == base, || format!("cokernel {base} becomes {dim} under t = {t}"))?;
        }
    }
    let pairs = 60;
    let mut forgets = 0;
    for case in 0..pairs {
        let (c1, c2) = matched_pair(&mut r, 1);
        let glued = glue(&c1, &c2).map_err(|e| format!("pair {case}: {e}"))?;
        ensure(glued.validate().is_valid(), || format!("glued pair {case} is invalid"))?;
        for t in torus_values(1) {
            let lhs = glue(&c1.torus(&t), &c2.torus(&t)).map_err(|e| format!("pair {case}: {e}"))?;
            ensure(lhs.equivalent(&glued.torus(&t)), || format!("gluing, pair {case}, t = {t}"))?;
        }
        for c in [&c1, &c2] {
            let Ok(f) = forget_last_mark(c) else { continue };
            forgets += 1;
            for t in torus_values(1) {
                let lhs = forget_last_mark(&c.torus(&t)).map_err(|e| e.to_string())?;
                ensure(lhs.equivalent(&f.torus(&t)), || format!("forgetting, pair {case}, t = {t}"))?;
            }
        }
    }
    Ok(format!("{cases} SUSY map cases; {pairs} glued pairs and {forgets} forgetful images over one generator"))
}

// 7. Fixed points

fn point_reduced(p: &ProjPoint) -> bool {
    p.odd_normal_part().map(|np| np.value == q(0, 1)).unwrap_or(false)
}

fn criterion_7() -> Verdict {
    let mut r = rng(7);
    let ts = torus_values(1);
    let zero = int(1, 0);
    let (mut fixed_seen, mut moved_seen) = (0, 0);
    for case in 0..150 {
        let flatten = case % 2 == 0;
        let p = sample::point(&mut r, 1);
        let p = if flatten { p.torus(&zero) } else { p };
        let fixed = ts.iter().all(|t| p.torus(t).equivalent(&p));
        ensure(fixed == point_reduced(&p), || format!("point {p}"))?;

        let d = r.gen_range(0..=3);
        let c = sample::curve(&mut r, 1, d);
        let c = if flatten { c.torus(&zero) } else { c };
        let fixed_c = ts.iter().all(|t| c.torus(t).same_map(&c));
        ensure(fixed_c == c.psi().is_zero(), || format!("curve {c}"))?;

        let cfg = sample::tree_config(&mut r, 1, 3);
        let cfg = if flatten { cfg.torus(&zero) } else { cfg };
        let fixed_t = ts.iter().all(|t| cfg.torus(t).equivalent(&cfg));
        let reduced = cfg.nodal().values().chain(cfg.marked()).all(point_reduced)
            && cfg.curves().iter().all(|c| c.psi().is_zero());
        ensure(fixed_t == reduced, || format!("tree configuration, case {case}"))?;
        for f in [fixed, fixed_c, fixed_t] {
            if f {
                fixed_seen += 1;
            } else {
                moved_seen += 1;
            }
        }
    }
    ensure(fixed_seen > 0 && moved_seen > 0, || "samples never exercised both sides".into())?;
    Ok(format!("{fixed_seen} fixed and {moved_seen} moved objects, all matching their odd parts"))
}

// 8. CLI

fn criterion_8() -> Verdict {
    let corpus = include_str!("data/literals.txt");
    let mut count = 0;
    for line in corpus.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let v = sgk_cli::eval_str(line, 3).map_err(|e| format!("{line}: {e}"))?;
        let printed = v.to_string();
        ensure(printed == line, || format!("{line} prints as {printed}"))?;
        let again = sgk_cli::eval_str(&printed, 3).map_err(|e| format!("{printed}: {e}"))?;
        ensure(sgk_cli::value::compare(&v, &again).equal, || format!("{line} does not re-evaluate equal"))?;
        count += 1;
    }
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sgk"))
        .args(["--format", "json", "verify-paper"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let records = report["records"].as_array().map(Vec::len).unwrap_or(0);
    ensure(out.status.success() && report["passed"] == true, || {
        format!("verify-paper exited with {}: {}", out.status, String::from_utf8_lossy(&out.stdout))
    })?;
    ensure(elapsed < Duration::from_secs(60), || format!("verify-paper took {elapsed:.2?}"))?;
    Ok(format!("{count} literals round-trip; verify-paper passed {records} checks in {elapsed:.2?}"))
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("algebra kernel", criterion_1),
        ("closure of the superconformal group", criterion_2),
        ("closed-form matrices", criterion_3),
        ("counterexample semantics", criterion_4),
        ("dimension bookkeeping", criterion_5),
        ("equivariance", criterion_6),
        ("torus fixed points", criterion_7),
        ("command line", criterion_8),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let (status, detail) = match verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(out, "{status} {} {name}: {detail}", i + 1).unwrap();
        out.flush().unwrap();
    }
    writeln!(out, "{} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
