//! Runtime values. Every value prints as a literal that evaluates back to an
//! equal value (under the same generator count).

use std::fmt;

use sgk_core::curves::TargetPoint;
use sgk_core::poly::RatFn;
use sgk_core::{ChartPoint, MarkedConfig, ProjPoint, Scalar, ScMatrix, Section, Sl2, SuperCurve, SuperNumber, TreeConfig};

#[derive(Clone, Debug)]
pub enum Value {
    Num(SuperNumber),
    Bool(bool),
    Point(ProjPoint),
    ChartPt(ChartPoint),
    Matrix(ScMatrix),
    Sl2(Sl2),
    Section(Section),
    RatFn(RatFn<Scalar>),
    Curve(SuperCurve),
    Config(MarkedConfig),
    Tree(TreeConfig),
    Target(TargetPoint<Scalar>),
    List(Vec<Value>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Num(_) => "number",
            Value::Bool(_) => "boolean",
            Value::Point(_) => "point",
            Value::ChartPt(_) => "chart point",
            Value::Matrix(_) => "superconformal matrix",
            Value::Sl2(_) => "SL(2) matrix",
            Value::Section(_) => "section",
            Value::RatFn(_) => "rational function",
            Value::Curve(_) => "curve",
            Value::Config(_) => "marked configuration",
            Value::Tree(_) => "tree configuration",
            Value::Target(_) => "target point",
            Value::List(_) => "list",
        }
    }
}

struct Joined<'a, T>(&'a [T]);

impl<T: fmt::Display> fmt::Display for Joined<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn write_section(f: &mut fmt::Formatter<'_>, s: &Section) -> fmt::Result {
    write!(f, "sec({};", s.k())?;
    let cs = s.coefficients();
    if !cs.is_empty() {
        write!(f, " {}", Joined(&cs))?;
    }
    f.write_str(")")
}

fn write_tree(f: &mut fmt::Formatter<'_>, t: &TreeConfig) -> fmt::Result {
    let tree = t.tree();
    let edges: Vec<String> = tree.edges().iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
    let nodal: Vec<String> = t.nodal().iter().map(|((a, b), p)| format!("[{a}, {b}, {p}]")).collect();
    write!(
        f,
        "tree(degrees = [{}]; edges = [{}]; marks = [{}]; nodal = [{}]; marked = [{}]; curves = [{}])",
        Joined(tree.degrees()),
        Joined(&edges),
        Joined(tree.marking()),
        Joined(&nodal),
        Joined(t.marked()),
        Joined(t.curves()),
    )
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{x}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Point(p) => write!(f, "{p}"),
            Value::ChartPt(p) => write!(f, "{p}"),
            Value::Matrix(m) => write!(f, "{m}"),
            Value::Sl2(g) => write!(f, "{g}"),
            Value::Section(s) => write_section(f, s),
            Value::RatFn(r) => write!(f, "{r}"),
            Value::Curve(c) => write!(f, "{c}"),
            Value::Config(c) => write!(f, "cfg(points = [{}]; curve = {})", Joined(&c.points), c.curve),
            Value::Tree(t) => write_tree(f, t),
            Value::Target(t) => write!(f, "target({}; {})", t.x, t.y),
            Value::List(xs) => write!(f, "[{}]", Joined(xs)),
        }
    }
}

/// Outcome of comparing two values: whether they agree, and when it makes
/// sense the difference that should have vanished.
pub struct Comparison {
    pub equal: bool,
    pub residual: Option<String>,
    pub note: Option<String>,
}

impl Comparison {
    fn exact(equal: bool, residual: Option<String>) -> Self {
        Comparison {
            equal,
            residual,
            note: None,
        }
    }

    fn mismatch(note: String) -> Self {
        Comparison {
            equal: false,
            residual: None,
            note: Some(note),
        }
    }
}

fn first_nonzero<'a>(pairs: impl IntoIterator<Item = (&'a SuperNumber, &'a SuperNumber)>) -> SuperNumber {
    let mut last = None;
    for (a, b) in pairs {
        let d = a - b;
        if !d.is_zero() {
            return d;
        }
        last = Some(d);
    }
    last.unwrap_or_else(|| SuperNumber::zero(0))
}

fn matrix_entries(m: &ScMatrix) -> Vec<SuperNumber> {
    m.rows().into_iter().flatten().collect()
}

fn as_ratfn(v: &Value) -> Option<RatFn<Scalar>> {
    match v {
        Value::RatFn(r) => Some(r.clone()),
        Value::Num(x) => Some(RatFn::poly(sgk_core::poly::Poly::constant(x.clone()))),
        _ => None,
    }
}

/// Structural equality with the natural notion for each kind: projective
/// points and target points up to scaling, maps as maps, everything else
/// exactly.
pub fn compare(a: &Value, b: &Value) -> Comparison {
    let (na, nb) = (generators(a), generators(b));
    if let (Some(x), Some(y)) = (na, nb) {
        if x != y {
            return Comparison::mismatch(format!("operands use {x} and {y} generators"));
        }
    }
    match (a, b) {
        (Value::Num(x), Value::Num(y)) => {
            let d = x - y;
            Comparison::exact(d.is_zero(), Some(d.to_string()))
        }
        (Value::RatFn(_), Value::RatFn(_) | Value::Num(_)) | (Value::Num(_), Value::RatFn(_)) => {
            let (x, y) = (as_ratfn(a).unwrap(), as_ratfn(b).unwrap());
            let cross = &(&x.num * &y.den) - &(&y.num * &x.den);
            Comparison::exact(cross.is_zero(), Some(cross.to_string()))
        }
        (Value::Bool(x), Value::Bool(y)) => Comparison::exact(x == y, None),
        (Value::Point(x), Value::Point(y)) => {
            let (p, q) = (x.normalize(), y.normalize());
            let d = first_nonzero([(p.z1(), q.z1()), (p.z2(), q.z2()), (p.theta(), q.theta())]);
            Comparison::exact(x.equivalent(y), Some(d.to_string()))
        }
        (Value::ChartPt(x), Value::ChartPt(y)) => {
            if x.chart != y.chart {
                return Comparison::mismatch("points are given in different charts".into());
            }
            let d = first_nonzero([(&x.p, &y.p), (&x.pi, &y.pi)]);
            Comparison::exact(d.is_zero(), Some(d.to_string()))
        }
        (Value::Matrix(x), Value::Matrix(y)) => {
            let (ex, ey) = (matrix_entries(x), matrix_entries(y));
            let d = first_nonzero(ex.iter().zip(&ey));
            Comparison::exact(d.is_zero(), Some(d.to_string()))
        }
        (Value::Sl2(x), Value::Sl2(y)) => {
            let d = first_nonzero([(&x.a, &y.a), (&x.b, &y.b), (&x.c, &y.c), (&x.d, &y.d)]);
            Comparison::exact(d.is_zero(), Some(d.to_string()))
        }
        (Value::Section(x), Value::Section(y)) => {
            if x.k() != y.k() {
                return Comparison::mismatch(format!("sections of O({}) and O({})", x.k(), y.k()));
            }
            let d = x.chart1() - y.chart1();
            Comparison::exact(d.is_zero(), Some(d.to_string()))
        }
        (Value::Curve(x), Value::Curve(y)) => Comparison::exact(x.same_map(y), None),
        (Value::Config(x), Value::Config(y)) => Comparison::exact(x.equivalent(y), None),
        (Value::Tree(x), Value::Tree(y)) => Comparison::exact(x.equivalent(y), None),
        (Value::Target(x), Value::Target(y)) => {
            let r = x.residual(y);
            Comparison::exact(r.is_zero(), Some(r.to_string()))
        }
        (Value::List(xs), Value::List(ys)) => {
            if xs.len() != ys.len() {
                return Comparison::mismatch(format!("lists of length {} and {}", xs.len(), ys.len()));
            }
            for (x, y) in xs.iter().zip(ys) {
                let c = compare(x, y);
                if !c.equal {
                    return c;
                }
            }
            Comparison::exact(true, None)
        }
        _ => Comparison::mismatch(format!("cannot compare a {} with a {}", a.kind(), b.kind())),
    }
}

/// The zero test behind `assert_zero`: `Ok(None)` when zero, `Ok(Some(r))`
/// with the offending value otherwise.
pub fn nonzero_part(v: &Value) -> Result<Option<String>, String> {
    let found = match v {
        Value::Num(x) => (!x.is_zero()).then(|| x.to_string()),
        Value::RatFn(r) => (!r.is_zero()).then(|| r.num.to_string()),
        Value::Section(s) => (!s.chart1().is_zero()).then(|| s.chart1().to_string()),
        Value::Matrix(m) => matrix_entries(m).into_iter().find(|x| !x.is_zero()).map(|x| x.to_string()),
        Value::List(xs) => {
            for x in xs {
                if let Some(r) = nonzero_part(x)? {
                    return Ok(Some(r));
                }
            }
            None
        }
        other => return Err(format!("a {} has no zero test", other.kind())),
    };
    Ok(found)
}

/// Generator count of a value, when it carries one.
pub fn generators(v: &Value) -> Option<usize> {
    match v {
        Value::Num(x) => Some(x.n()),
        Value::Point(p) => Some(p.n()),
        Value::ChartPt(p) => Some(p.p.n()),
        Value::Matrix(m) => Some(m.n()),
        Value::Sl2(g) => Some(g.n()),
        Value::Section(s) => Some(s.n()),
        Value::RatFn(r) => Some(r.n()),
        Value::Curve(c) => Some(c.n()),
        Value::Config(c) => Some(c.n()),
        Value::Tree(t) => Some(t.n()),
        Value::Target(t) => Some(t.x.n()),
        Value::Bool(_) | Value::List(_) => None,
    }
}
