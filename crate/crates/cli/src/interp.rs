//! Evaluation of parsed scripts.

use std::collections::{BTreeMap, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use sgk_core::bundles::{contract_with_differential, h0_dim};
use sgk_core::curves::{
    deformation_dimensions, find_descending_susy, same_orbit, susy1_map, TargetPoint,
};
use sgk_core::poly::{Poly, RatFn};
use sgk_core::scgroup::three_point_normalize;
use sgk_core::superspace::Chart;
use sgk_core::trees::{forget_last_mark, glue, StableTree};
use sgk_core::{
    ChartPoint, MarkedConfig, ProjPoint, Scalar, ScMatrix, Section, Sl2, SpinorSection, SuperCurve,
    SuperNumber, TreeConfig,
};

use crate::error::{ScriptError, Span};
use crate::parser::{BinOp, Expr, ExprKind, Statement, StmtKind};
use crate::report::{Record, Report, Status};
use crate::value::{compare, generators, nonzero_part, Value};

type R<T> = Result<T, ScriptError>;

pub const DEFAULT_GENERATORS: usize = 3;

/// What running one statement produced.
#[derive(Debug)]
pub enum Event {
    /// A bare expression's value, printed.
    Output(String),
    Check(Record),
}

pub struct Interpreter {
    n: usize,
    env: HashMap<String, Result<Value, String>>,
}

impl Default for Interpreter {
    fn default() -> Self {
        Self::new(DEFAULT_GENERATORS)
    }
}

fn rt(span: Span, msg: impl Into<String>) -> ScriptError {
    ScriptError::runtime(span, msg)
}

fn core<T>(span: Span, r: sgk_core::Result<T>) -> R<T> {
    r.map_err(|e| rt(span, e.to_string()))
}

fn same_n(span: Span, a: usize, b: usize) -> R<()> {
    if a == b {
        Ok(())
    } else {
        Err(rt(span, format!("operands use {a} and {b} generators")))
    }
}

fn wrong(span: Span, want: &str, got: &Value) -> ScriptError {
    rt(span, format!("expected a {want}, found a {}", got.kind()))
}

fn num(span: Span, v: &Value) -> R<SuperNumber> {
    match v {
        Value::Num(x) => Ok(x.clone()),
        other => Err(wrong(span, "number", other)),
    }
}

fn int(span: Span, v: &Value) -> R<i64> {
    let x = num(span, v)?;
    let c = x.body();
    let ok = x.soul().is_zero() && c.im.is_zero() && c.re.is_integer();
    match c.re.to_integer().to_i64() {
        Some(k) if ok => Ok(k),
        _ => Err(rt(span, format!("expected an integer, found {x}"))),
    }
}

fn index(span: Span, v: &Value) -> R<usize> {
    let k = int(span, v)?;
    usize::try_from(k).map_err(|_| rt(span, format!("expected a nonnegative integer, found {k}")))
}

fn ratfn(span: Span, v: &Value) -> R<RatFn<Scalar>> {
    match v {
        Value::RatFn(r) => Ok(r.clone()),
        Value::Num(x) => Ok(RatFn::poly(Poly::constant(x.clone()))),
        other => Err(wrong(span, "rational function", other)),
    }
}

fn point(span: Span, v: &Value) -> R<ProjPoint> {
    match v {
        Value::Point(p) => Ok(p.clone()),
        Value::ChartPt(p) => Ok(p.to_proj()),
        other => Err(wrong(span, "point", other)),
    }
}

fn matrix(span: Span, v: &Value) -> R<ScMatrix> {
    match v {
        Value::Matrix(m) => Ok(m.clone()),
        Value::Sl2(g) => Ok(ScMatrix::lift(g)),
        other => Err(wrong(span, "superconformal matrix", other)),
    }
}

fn sl2(span: Span, v: &Value) -> R<Sl2> {
    match v {
        Value::Sl2(g) => Ok(g.clone()),
        other => Err(wrong(span, "SL(2) matrix", other)),
    }
}

fn curve(span: Span, v: &Value) -> R<SuperCurve> {
    match v {
        Value::Curve(c) => Ok(c.clone()),
        other => Err(wrong(span, "curve", other)),
    }
}

fn config(span: Span, v: &Value) -> R<MarkedConfig> {
    match v {
        Value::Config(c) => Ok(c.clone()),
        other => Err(wrong(span, "marked configuration", other)),
    }
}

fn tree(span: Span, v: &Value) -> R<TreeConfig> {
    match v {
        Value::Tree(t) => Ok(t.clone()),
        other => Err(wrong(span, "tree configuration", other)),
    }
}

fn section(span: Span, v: &Value) -> R<Section> {
    match v {
        Value::Section(s) => Ok(s.clone()),
        other => Err(wrong(span, "section", other)),
    }
}

fn list(span: Span, v: &Value) -> R<Vec<Value>> {
    match v {
        Value::List(xs) => Ok(xs.clone()),
        other => Err(wrong(span, "list", other)),
    }
}

fn all_same_n(span: Span, vs: &[&Value]) -> R<()> {
    let ns: Vec<usize> = vs.iter().filter_map(|v| generators(v)).collect();
    match ns.iter().find(|&&m| m != ns[0]) {
        Some(&m) => same_n(span, ns[0], m),
        None => Ok(()),
    }
}

fn scalar_literal(num: &BigInt, den: &BigInt, imaginary: bool) -> Scalar {
    let r = BigRational::new(num.clone(), den.clone());
    if imaginary {
        Scalar::new(BigRational::zero(), r)
    } else {
        Scalar::new(r, BigRational::zero())
    }
}

fn chart_of(span: Span, k: i64) -> R<Chart> {
    match k {
        1 => Ok(Chart::One),
        2 => Ok(Chart::Two),
        _ => Err(rt(span, format!("there is no chart {k}"))),
    }
}

/// Powers by repeated multiplication; negative exponents go through
/// `inverse`.
fn power<T: Clone>(base: T, k: i64, one: T, mul: impl Fn(&T, &T) -> T, inverse: impl Fn(&T) -> R<T>) -> R<T> {
    let b = if k < 0 { inverse(&base)? } else { base };
    let mut out = one;
    for _ in 0..k.unsigned_abs() {
        out = mul(&out, &b);
    }
    Ok(out)
}

impl Interpreter {
    pub fn new(n: usize) -> Self {
        Interpreter {
            n,
            env: HashMap::new(),
        }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    /// Run a whole script, collecting checks, errors and printed values.
    pub fn run(&mut self, script: &[Statement]) -> Report {
        let mut report = Report::default();
        for st in script {
            match self.statement(st) {
                Some(Event::Output(s)) => report.outputs.push(s),
                Some(Event::Check(r)) => report.records.push(r),
                None => {}
            }
        }
        report
    }

    /// Run one statement. Panics inside the core are caught and reported as
    /// runtime errors so one bad statement cannot end a session.
    pub fn statement(&mut self, st: &Statement) -> Option<Event> {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| self.statement_inner(st)));
        let millis = start.elapsed().as_millis() as u64;
        let record = |status, residual, message| {
            Some(Event::Check(Record {
                id: format!("line {}", st.span.line),
                anchor: st.text.clone(),
                status,
                residual,
                millis,
                message,
            }))
        };
        match outcome {
            Ok(Ok(Some(Event::Check(mut r)))) => {
                r.millis = millis;
                Some(Event::Check(r))
            }
            Ok(Ok(other)) => other,
            Ok(Err(e)) => {
                if let StmtKind::Let(name, _) = &st.kind {
                    self.env.insert(name.clone(), Err(e.to_string()));
                }
                record(Status::Error, None, Some(e.to_string()))
            }
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown failure".into());
                if let StmtKind::Let(name, _) = &st.kind {
                    self.env.insert(name.clone(), Err(msg.clone()));
                }
                record(Status::Error, None, Some(format!("{}: internal error: {msg}", st.span)))
            }
        }
    }

    fn statement_inner(&mut self, st: &Statement) -> R<Option<Event>> {
        let check = |status, residual: Option<String>, message: Option<String>| {
            Ok(Some(Event::Check(Record {
                id: format!("line {}", st.span.line),
                anchor: st.text.clone(),
                status,
                residual,
                millis: 0,
                message,
            })))
        };
        match &st.kind {
            StmtKind::Let(name, e) => {
                let v = self.eval(e)?;
                self.env.insert(name.clone(), Ok(v));
                Ok(None)
            }
            StmtKind::SetGenerators(n) => {
                self.n = *n;
                Ok(None)
            }
            StmtKind::Expr(e) => Ok(Some(Event::Output(self.eval(e)?.to_string()))),
            StmtKind::AssertEq(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let c = compare(&x, &y);
                let status = if c.equal { Status::Pass } else { Status::Fail };
                let message = (!c.equal).then(|| c.note.unwrap_or_else(|| format!("{x} != {y}")));
                check(status, c.residual, message)
            }
            StmtKind::AssertZero(a) => {
                let v = self.eval(a)?;
                match nonzero_part(&v) {
                    Ok(None) => check(Status::Pass, Some("0".into()), None),
                    Ok(Some(r)) => check(Status::Fail, Some(r), Some(format!("{v} is not zero"))),
                    Err(msg) => Err(rt(a.span, msg)),
                }
            }
            StmtKind::AssertError(a) => match self.eval(a) {
                Err(e) => check(Status::Pass, None, Some(e.message)),
                Ok(v) => check(Status::Fail, None, Some(format!("evaluated to {v} without error"))),
            },
        }
    }

    pub fn eval(&self, e: &Expr) -> R<Value> {
        let span = e.span;
        match &e.kind {
            ExprKind::Number { num, den, imaginary } => {
                Ok(Value::Num(SuperNumber::scalar(self.n, scalar_literal(num, den, *imaginary))))
            }
            ExprKind::Var(name) => match self.env.get(name) {
                Some(Ok(v)) => Ok(v.clone()),
                Some(Err(why)) => Err(rt(span, format!("'{name}' has no value because its definition failed ({why})"))),
                None => Err(rt(span, format!("'{name}' is not bound"))),
            },
            ExprKind::Const(name) => self.constant(name, span),
            ExprKind::Neg(inner) => neg(span, self.eval(inner)?),
            ExprKind::Binary(op, l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                arith(*op, span, a, b)
            }
            ExprKind::Call(name, args) => {
                let vs = args.iter().map(|a| self.eval(a)).collect::<R<Vec<_>>>()?;
                call(name, span, self.n, &vs)
            }
            ExprKind::Point(cs) => {
                let [a, b, c] = &**cs;
                let (x, y, t) = (self.eval(a)?, self.eval(b)?, self.eval(c)?);
                all_same_n(span, &[&x, &y, &t])?;
                let p = core(span, ProjPoint::new(num(a.span, &x)?, num(b.span, &y)?, num(c.span, &t)?))?;
                Ok(Value::Point(p))
            }
            ExprKind::List(items) => Ok(Value::List(items.iter().map(|x| self.eval(x)).collect::<R<_>>()?)),
            ExprKind::Sc(rows) => {
                let vals = self.entries(rows)?;
                let row = |i: usize| [vals[i][0].clone(), vals[i][1].clone(), vals[i][2].clone()];
                Ok(Value::Matrix(ScMatrix::from_rows([row(0), row(1), row(2)])))
            }
            ExprKind::Sl2(rows) => {
                let v = self.entries(rows)?;
                let [a, c] = [v[0][0].clone(), v[0][1].clone()];
                let [b, d] = [v[1][0].clone(), v[1][1].clone()];
                Ok(Value::Sl2(core(span, Sl2::new(a, b, c, d))?))
            }
            ExprKind::Chart(k, p, pi) => {
                let (x, y) = (self.eval(p)?, self.eval(pi)?);
                all_same_n(span, &[&x, &y])?;
                let chart = chart_of(span, *k as i64)?;
                Ok(Value::ChartPt(core(span, ChartPoint::new(chart, num(p.span, &x)?, num(pi.span, &y)?))?))
            }
            ExprKind::Sec(k, coeffs) => {
                let k = int(k.span, &self.eval(k)?)?;
                let k = i32::try_from(k).map_err(|_| rt(span, "bundle degree out of range"))?;
                let cs = coeffs
                    .iter()
                    .map(|c| num(c.span, &self.eval(c)?))
                    .collect::<R<Vec<_>>>()?;
                if let Some(c) = cs.iter().find(|c| c.n() != self.n) {
                    same_n(span, self.n, c.n())?;
                }
                Ok(Value::Section(core(span, Section::new(k, Poly::from_coeffs(self.n, cs)))?))
            }
            ExprKind::Curve { degree, phi, psi } => {
                let d = index(degree.span, &self.eval(degree)?)?;
                let (f, g) = (self.eval(phi)?, self.eval(psi)?);
                all_same_n(span, &[&f, &g])?;
                let (f, g) = (ratfn(phi.span, &f)?, ratfn(psi.span, &g)?);
                same_n(span, f.n(), self.n)?;
                Ok(Value::Curve(core(span, SuperCurve::from_fields(d, &f, &g))?))
            }
            ExprKind::Cfg { points, curve: c } => {
                let ps = list(points.span, &self.eval(points)?)?
                    .iter()
                    .map(|p| point(points.span, p))
                    .collect::<R<Vec<_>>>()?;
                let c = curve(c.span, &self.eval(c)?)?;
                Ok(Value::Config(core(span, MarkedConfig::new(ps, c))?))
            }
            ExprKind::Tree(fields) => self.tree_literal(span, fields),
            ExprKind::Target(x, y) => {
                let (a, b) = (self.eval(x)?, self.eval(y)?);
                all_same_n(span, &[&a, &b])?;
                let (a, b) = (num(x.span, &a)?, num(y.span, &b)?);
                if !(a.is_even() && b.is_even()) || !(a.is_invertible() || b.is_invertible()) {
                    return Err(rt(span, "a target point needs even coordinates, one of them invertible"));
                }
                Ok(Value::Target(TargetPoint { x: a, y: b }))
            }
        }
    }

    fn entries(&self, rows: &[Vec<Expr>]) -> R<Vec<Vec<SuperNumber>>> {
        let out = rows
            .iter()
            .map(|r| r.iter().map(|x| num(x.span, &self.eval(x)?)).collect::<R<Vec<_>>>())
            .collect::<R<Vec<_>>>()?;
        for (r, row) in rows.iter().zip(&out) {
            for (x, v) in r.iter().zip(row) {
                same_n(x.span, self.n, v.n())?;
            }
        }
        Ok(out)
    }

    fn tree_literal(&self, span: Span, f: &crate::parser::TreeFields) -> R<Value> {
        let ints = |e: &Expr| -> R<Vec<usize>> {
            list(e.span, &self.eval(e)?)?.iter().map(|v| index(e.span, v)).collect()
        };
        let degrees = ints(&f.degrees)?;
        let edges = list(f.edges.span, &self.eval(&f.edges)?)?
            .iter()
            .map(|e| match list(f.edges.span, e)?.as_slice() {
                [a, b] => Ok((index(f.edges.span, a)?, index(f.edges.span, b)?)),
                _ => Err(rt(f.edges.span, "an edge is a pair [a, b]")),
            })
            .collect::<R<Vec<_>>>()?;
        let marks = ints(&f.marks)?;
        let mut nodal = BTreeMap::new();
        for entry in list(f.nodal.span, &self.eval(&f.nodal)?)? {
            match list(f.nodal.span, &entry)?.as_slice() {
                [a, b, p] => {
                    nodal.insert(
                        (index(f.nodal.span, a)?, index(f.nodal.span, b)?),
                        point(f.nodal.span, p)?,
                    );
                }
                _ => return Err(rt(f.nodal.span, "a nodal entry is [from, to, point]")),
            }
        }
        let marked = list(f.marked.span, &self.eval(&f.marked)?)?
            .iter()
            .map(|p| point(f.marked.span, p))
            .collect::<R<Vec<_>>>()?;
        let curves = list(f.curves.span, &self.eval(&f.curves)?)?
            .iter()
            .map(|c| curve(f.curves.span, c))
            .collect::<R<Vec<_>>>()?;
        let shape = core(span, StableTree::new(degrees, edges, marks))?;
        Ok(Value::Tree(core(span, TreeConfig::new(shape, nodal, marked, curves))?))
    }

    fn constant(&self, name: &str, span: Span) -> R<Value> {
        let n = self.n;
        Ok(match name {
            "refl" => Value::Matrix(ScMatrix::reflection(n)),
            "identity" => Value::Matrix(ScMatrix::identity(n)),
            "z" => Value::RatFn(RatFn::poly(Poly::z(n))),
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => {
                let i = crate::builtins::generator_index(name).expect("parser admits only known constants");
                Value::Num(core(span, SuperNumber::generator(n, i))?)
            }
        })
    }
}

fn neg(span: Span, v: Value) -> R<Value> {
    Ok(match v {
        Value::Num(x) => Value::Num(-x),
        Value::RatFn(r) => Value::RatFn(-&r),
        Value::Matrix(m) => Value::Matrix(m.neg()),
        Value::Section(s) => Value::Section(s.scale(&SuperNumber::from_int(s.n(), -1))),
        other => return Err(rt(span, format!("cannot negate a {}", other.kind()))),
    })
}

fn op_name(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div => "/",
        BinOp::Pow => "^",
    }
}

fn arith(op: BinOp, span: Span, a: Value, b: Value) -> R<Value> {
    use Value::*;
    all_same_n(span, &[&a, &b])?;
    if op == BinOp::Pow {
        let k = int(span, &b)?;
        if k.unsigned_abs() > 10_000 {
            return Err(rt(span, "exponent too large"));
        }
        return Ok(match a {
            Num(x) => {
                let base = if k < 0 { core(span, x.invert())? } else { x };
                Num(base.pow(k.unsigned_abs() as u32))
            }
            RatFn(r) => {
                let one = sgk_core::poly::RatFn::poly(Poly::one(r.n()));
                RatFn(power(r, k, one, |x, y| x * y, |x| core(span, x.inverse()))?)
            }
            Matrix(m) => Matrix(power(m.clone(), k, ScMatrix::identity(m.n()), |x, y| x.mul(y), |x| Ok(x.inverse()))?),
            Sl2(g) => Sl2(power(g.clone(), k, sgk_core::Sl2::identity(g.n()), |x, y| x.mul(y), |x| Ok(x.inverse()))?),
            other => return Err(rt(span, format!("cannot raise a {} to a power", other.kind()))),
        });
    }
    let bad = |a: &Value, b: &Value| rt(span, format!("cannot apply '{}' to a {} and a {}", op_name(op), a.kind(), b.kind()));
    match (&a, &b) {
        (Num(x), Num(y)) => Ok(Num(core(
            span,
            match op {
                BinOp::Add => x.checked_add(y),
                BinOp::Sub => x.checked_sub(y),
                BinOp::Mul => x.checked_mul(y),
                _ => y.invert().and_then(|inv| x.checked_mul(&inv)),
            },
        )?)),
        (RatFn(_), RatFn(_) | Num(_)) | (Num(_), RatFn(_)) => {
            let (x, y) = (ratfn(span, &a)?, ratfn(span, &b)?);
            Ok(RatFn(match op {
                BinOp::Add => &x + &y,
                BinOp::Sub => &x - &y,
                BinOp::Mul => &x * &y,
                _ => core(span, x.div(&y))?,
            }))
        }
        (Matrix(x), Matrix(y)) if op == BinOp::Mul => Ok(Matrix(x.mul(y))),
        (Sl2(x), Sl2(y)) if op == BinOp::Mul => Ok(Sl2(x.mul(y))),
        (Num(c), Section(s)) if op == BinOp::Mul => Ok(Section(s.scale(c))),
        (Section(x), Section(y)) if matches!(op, BinOp::Add | BinOp::Sub) => {
            let y = if op == BinOp::Sub { y.scale(&SuperNumber::from_int(y.n(), -1)) } else { y.clone() };
            Ok(Section(core(span, x.add(&y))?))
        }
        _ => Err(bad(&a, &b)),
    }
}

fn map_list(span: Span, v: &Value, f: &dyn Fn(&Value) -> R<Value>) -> R<Value> {
    match v {
        Value::List(xs) => Ok(Value::List(xs.iter().map(|x| map_list(span, x, f)).collect::<R<_>>()?)),
        other => f(other),
    }
}

fn scalar_num(n: usize, c: Scalar) -> Value {
    Value::Num(SuperNumber::scalar(n, c))
}

fn count(n: usize, k: usize) -> Value {
    Value::Num(SuperNumber::from_int(n, k as i64))
}

fn call(name: &str, span: Span, n: usize, a: &[Value]) -> R<Value> {
    all_same_n(span, &a.iter().collect::<Vec<_>>())?;
    Ok(match name {
        "mul" => arith(BinOp::Mul, span, a[0].clone(), a[1].clone())?,
        "inverse" | "inv" => match &a[0] {
            Value::Matrix(m) => Value::Matrix(m.inverse()),
            Value::Sl2(g) => Value::Sl2(g.inverse()),
            Value::Num(x) => Value::Num(core(span, x.invert())?),
            Value::RatFn(r) => Value::RatFn(core(span, r.inverse())?),
            other => return Err(rt(span, format!("cannot invert a {}", other.kind()))),
        },
        "decompose" => {
            let (g, al, be) = matrix(span, &a[0])?.decompose();
            Value::List(vec![Value::Sl2(g), Value::Num(al), Value::Num(be)])
        }
        "recompose" => {
            let g = sl2(span, &a[0])?;
            Value::Matrix(ScMatrix::recompose(&g, &num(span, &a[1])?, &num(span, &a[2])?))
        }
        "check" => {
            let m = matrix(span, &a[0])?;
            let report = m.check();
            if !report.parity_ok {
                return Err(rt(span, "matrix entries have the wrong parity"));
            }
            let mut out: Vec<Value> = report.residuals.into_iter().map(|(_, r)| Value::Num(r)).collect();
            let e_body = SuperNumber::scalar(m.n(), m.e.body());
            out.push(Value::Num(&e_body - &SuperNumber::one(m.n())));
            Value::List(out)
        }
        "susy" => Value::Matrix(ScMatrix::susy(&num(span, &a[0])?, &num(span, &a[1])?)),
        "lift" => Value::Matrix(ScMatrix::lift(&sl2(span, &a[0])?)),
        "diag" => Value::Sl2(core(span, Sl2::diag(&num(span, &a[0])?))?),
        "det" => Value::Num(sl2(span, &a[0])?.det()),
        "same_auto" => Value::Bool(matrix(span, &a[0])?.same_automorphism(&matrix(span, &a[1])?)),
        "act" => act(span, &a[0], &a[1])?,
        "normalize" => Value::Point(point(span, &a[0])?.normalize()),
        "normalize3" => {
            let ps = [point(span, &a[0])?, point(span, &a[1])?, point(span, &a[2])?];
            let (m, eps) = core(span, three_point_normalize(&ps[0], &ps[1], &ps[2]))?;
            Value::List(vec![Value::Matrix(m), Value::Num(eps)])
        }
        "chart" => {
            let chart = chart_of(span, int(span, &a[1])?)?;
            Value::ChartPt(core(span, point(span, &a[0])?.to_chart(chart))?)
        }
        "proj" => Value::Point(point(span, &a[0])?),
        "multiplier" => {
            let mult = core(span, matrix(span, &a[0])?.spinor_pushforward())?;
            let chart = chart_of(span, int(span, &a[1])?)?;
            Value::Num(core(span, mult.eval(chart, &num(span, &a[2])?))?)
        }
        "torus" => {
            let t = num(span, &a[0])?;
            if !t.is_even() {
                return Err(rt(span, "the torus parameter must be even"));
            }
            map_list(span, &a[1], &|x| {
                Ok(match x {
                    Value::Point(p) => Value::Point(p.torus(&t)),
                    Value::Curve(c) => Value::Curve(c.torus(&t)),
                    Value::Config(c) => Value::Config(c.torus(&t)),
                    Value::Tree(c) => Value::Tree(c.torus(&t)),
                    other => return Err(rt(span, format!("the torus does not act on a {}", other.kind()))),
                })
            })?
        }
        "susy1" => {
            let c = config(span, &a[0])?;
            let m = susy1_map(&c);
            Value::List(
                m.matrix
                    .into_iter()
                    .map(|row| Value::List(row.into_iter().map(|x| scalar_num(c.n(), x)).collect()))
                    .collect(),
            )
        }
        "rank" => {
            let c = config(span, &a[0])?;
            count(c.n(), susy1_map(&c).rank)
        }
        "cokernel" => {
            let c = config(span, &a[0])?;
            count(c.n(), susy1_map(&c).cokernel_dim)
        }
        "glue" => Value::Tree(core(span, glue(&tree(span, &a[0])?, &tree(span, &a[1])?))?),
        "forget" => Value::Tree(core(span, forget_last_mark(&tree(span, &a[0])?))?),
        "validate" => {
            let t = tree(span, &a[0])?;
            let diag = t.validate();
            if let Some((v, p, q)) = diag.coincident.first() {
                return Err(rt(span, format!("special points {p:?} and {q:?} on vertex {v} coincide")));
            }
            Value::List(diag.edges.into_iter().map(|e| Value::Num(e.residual)).collect())
        }
        "reduce" => map_list(span, &a[0], &|x| {
            Ok(match x {
                Value::Num(v) => Value::Num(v.reduce()),
                Value::Point(p) => Value::Point(p.reduce()),
                Value::Curve(c) => Value::Curve(c.reduce()),
                Value::Config(c) => Value::Config(c.reduce()),
                other => return Err(rt(span, format!("cannot reduce a {}", other.kind()))),
            })
        })?,
        "body" => {
            let x = num(span, &a[0])?;
            scalar_num(x.n(), x.body())
        }
        "soul" => Value::Num(num(span, &a[0])?.soul()),
        "even" => Value::Num(num(span, &a[0])?.even_part()),
        "odd" => Value::Num(num(span, &a[0])?.odd_part()),
        "sqrt" => Value::Num(core(span, num(span, &a[0])?.sqrt())?),
        "phi" => Value::RatFn(curve(span, &a[0])?.phi()),
        "psi" => Value::RatFn(curve(span, &a[0])?.psi()),
        "eval" => match (&a[0], &a[1]) {
            (Value::Curve(c), p) => Value::Target(c.eval(&point(span, p)?)),
            (Value::Section(s), Value::ChartPt(p)) => Value::Num(core(span, s.eval_in_chart(&p.to_proj(), p.chart))?),
            (f, x) => Value::Num(core(span, ratfn(span, f)?.eval(&num(span, x)?))?),
        },
        "same" => Value::Bool(compare(&a[0], &a[1]).equal),
        "same_orbit" => {
            let pts = |v: &Value| list(span, v)?.iter().map(|p| point(span, p)).collect::<R<Vec<_>>>();
            Value::Bool(core(span, same_orbit(&pts(&a[0])?, &pts(&a[1])?))?)
        }
        "pushforward" => Value::Section(section(span, &a[1])?.sl2_pushforward(&sl2(span, &a[0])?)),
        "contract" => {
            let s = core(span, SpinorSection::from_section(&section(span, &a[0])?))?;
            Value::Section(contract_with_differential(&s, &curve(span, &a[1])?))
        }
        "h0" => {
            let k = int(span, &a[0])?;
            let k = i32::try_from(k).map_err(|_| rt(span, "bundle degree out of range"))?;
            count(n, h0_dim(k))
        }
        "dims" => {
            let c = curve(span, &a[0])?;
            let (psi, phi) = deformation_dimensions(&c);
            Value::List(vec![count(c.n(), psi), count(c.n(), phi)])
        }
        "descend" => {
            let (t, beta, c) = (num(span, &a[0])?, num(span, &a[1])?, curve(span, &a[2])?);
            match find_descending_susy(&t, &beta, &c) {
                Some(b) => Value::Num(b),
                None => return Err(rt(span, "no SUSY move undoes the twisted one")),
            }
        }
        "get" => {
            let xs = list(span, &a[0])?;
            let i = index(span, &a[1])?;
            xs.get(i)
                .cloned()
                .ok_or_else(|| rt(span, format!("index {i} out of range for a list of length {}", xs.len())))?
        }
        _ => unreachable!("the parser only admits known functions"),
    })
}

/// `act(g, x)`: `x · g`, the right action, threaded through lists.
fn act(span: Span, g: &Value, x: &Value) -> R<Value> {
    if let (Value::List(ms), Value::Tree(t)) = (g, x) {
        let ms = ms.iter().map(|m| matrix(span, m)).collect::<R<Vec<_>>>()?;
        return Ok(Value::Tree(core(span, t.act_vertexwise(&ms))?));
    }
    if let (Value::Sl2(h), Value::Section(s)) = (g, x) {
        return Ok(Value::Section(s.sl2_pushforward(h)));
    }
    let m = matrix(span, g)?;
    map_list(span, x, &|v| {
        Ok(match v {
            Value::Point(p) => Value::Point(m.act_point(p)),
            Value::ChartPt(p) => Value::ChartPt(core(span, m.act_chart(p))?),
            Value::Curve(c) => Value::Curve(c.act(&m)),
            Value::Config(c) => Value::Config(c.act(&m)),
            other => return Err(rt(span, format!("automorphisms do not act on a {}", other.kind()))),
        })
    })
}
