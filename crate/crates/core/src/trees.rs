//! Trees of genus-zero components for the stable-map compactification.
//!
//! Each vertex carries a map of some degree, each edge a pair of nodal
//! points, and marked points are distributed over the vertices. A
//! configuration is valid when the special points on every component are
//! distinct and the two sides of every node map to the same target point.

use std::collections::{BTreeMap, VecDeque};

use crate::curves::{SuperCurve, TargetPoint};
use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Coefficient;
use crate::scgroup::ScMatrix;
use crate::superspace::ProjPoint;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StableTree {
    degrees: Vec<usize>,
    edges: Vec<(usize, usize)>,
    marking: Vec<usize>,
}

impl StableTree {
    /// Checks that the edges form a tree on `degrees.len()` vertices and that
    /// every degree-zero vertex has at least three special points.
    pub fn new(degrees: Vec<usize>, edges: Vec<(usize, usize)>, marking: Vec<usize>) -> Result<Self> {
        let v = degrees.len();
        if v == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        for &(a, b) in &edges {
            if a >= v || b >= v || a == b {
                return Err(Error::InvalidTree(format!("bad edge ({a}, {b})")));
            }
        }
        if edges.len() != v - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges cannot form a tree on {v} vertices",
                edges.len()
            )));
        }
        if let Some(&m) = marking.iter().find(|&&m| m >= v) {
            return Err(Error::InvalidTree(format!("mark on missing vertex {m}")));
        }
        let tree = StableTree {
            degrees,
            edges,
            marking,
        };
        if !tree.connected() {
            return Err(Error::InvalidTree("edges do not connect all vertices".into()));
        }
        tree.check_stable()?;
        Ok(tree)
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for y in self.neighbours(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_stable(&self) -> Result<()> {
        for v in 0..self.vertex_count() {
            if self.degrees[v] == 0 && self.special_count(v) < 3 {
                return Err(Error::Unstable(format!(
                    "vertex {v} has degree 0 and only {} special points",
                    self.special_count(v)
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn marking(&self) -> &[usize] {
        &self.marking
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Marks plus nodes on a vertex.
    pub fn special_count(&self, v: usize) -> usize {
        self.marking.iter().filter(|&&m| m == v).count() + self.neighbours(v).count()
    }
}

/// A special point on a component.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Special {
    /// The node towards the given neighbour.
    Node(usize),
    /// A marked point, by global mark index.
    Mark(usize),
}

#[derive(Clone, PartialEq, Debug)]
pub struct EdgeResidual<T: Coefficient> {
    pub from: usize,
    pub to: usize,
    pub residual: SuperNumber<T>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TreeDiagnostic<T: Coefficient> {
    /// Pairs of special points on one vertex whose reductions coincide.
    pub coincident: Vec<(usize, Special, Special)>,
    pub edges: Vec<EdgeResidual<T>>,
}

impl<T: Coefficient> TreeDiagnostic<T> {
    pub fn is_valid(&self) -> bool {
        self.coincident.is_empty() && self.edges.iter().all(|e| e.residual.is_zero())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TreeConfig<T: Coefficient> {
    tree: StableTree,
    /// `nodal[(α, β)]` is the point on component `α` glued to component `β`.
    nodal: BTreeMap<(usize, usize), ProjPoint<T>>,
    marked: Vec<ProjPoint<T>>,
    curves: Vec<SuperCurve<T>>,
}

/// Image of a `B`-point under a map; a thin wrapper over
/// [`SuperCurve::eval`].
pub fn eval_curve_at_superpoint<T: Coefficient>(curve: &SuperCurve<T>, q: &ProjPoint<T>) -> TargetPoint<T> {
    curve.eval(q)
}

impl<T: Coefficient> TreeConfig<T> {
    pub fn new(
        tree: StableTree,
        nodal: BTreeMap<(usize, usize), ProjPoint<T>>,
        marked: Vec<ProjPoint<T>>,
        curves: Vec<SuperCurve<T>>,
    ) -> Result<Self> {
        if curves.len() != tree.vertex_count() {
            return Err(Error::InvalidTree("one map per vertex is required".into()));
        }
        if marked.len() != tree.marking.len() {
            return Err(Error::InvalidTree("one point per mark is required".into()));
        }
        for (v, c) in curves.iter().enumerate() {
            if c.degree() != tree.degrees[v] {
                return Err(Error::InvalidTree(format!(
                    "vertex {v} has degree {} but its map has degree {}",
                    tree.degrees[v],
                    c.degree()
                )));
            }
        }
        for &(a, b) in &tree.edges {
            if !nodal.contains_key(&(a, b)) || !nodal.contains_key(&(b, a)) {
                return Err(Error::InvalidTree(format!("edge ({a}, {b}) lacks nodal points")));
            }
        }
        let n = curves[0].n();
        let all_n = curves
            .iter()
            .map(|c| c.n())
            .chain(nodal.values().map(|p| p.n()))
            .chain(marked.iter().map(|p| p.n()));
        for m in all_n {
            if m != n {
                return Err(Error::MismatchedGenerators { left: n, right: m });
            }
        }
        Ok(TreeConfig {
            tree,
            nodal,
            marked,
            curves,
        })
    }

    pub fn tree(&self) -> &StableTree {
        &self.tree
    }

    pub fn nodal(&self) -> &BTreeMap<(usize, usize), ProjPoint<T>> {
        &self.nodal
    }

    pub fn marked(&self) -> &[ProjPoint<T>] {
        &self.marked
    }

    pub fn curves(&self) -> &[SuperCurve<T>] {
        &self.curves
    }

    pub fn n(&self) -> usize {
        self.curves[0].n()
    }

    /// Special points of a vertex.
    pub fn special_points(&self, v: usize) -> Vec<(Special, &ProjPoint<T>)> {
        let mut out: Vec<(Special, &ProjPoint<T>)> = self
            .tree
            .neighbours(v)
            .map(|w| (Special::Node(w), &self.nodal[&(v, w)]))
            .collect();
        out.extend(
            self.tree
                .marking
                .iter()
                .enumerate()
                .filter(|(_, &m)| m == v)
                .map(|(i, _)| (Special::Mark(i), &self.marked[i])),
        );
        out
    }

    pub fn validate(&self) -> TreeDiagnostic<T> {
        let mut coincident = Vec::new();
        for v in 0..self.tree.vertex_count() {
            let sp = self.special_points(v);
            for i in 0..sp.len() {
                for j in (i + 1)..sp.len() {
                    if !sp[i].1.reduced_distinct(sp[j].1) {
                        coincident.push((v, sp[i].0, sp[j].0));
                    }
                }
            }
        }
        let edges = self
            .tree
            .edges
            .iter()
            .map(|&(a, b)| {
                let ta = self.curves[a].eval(&self.nodal[&(a, b)]);
                let tb = self.curves[b].eval(&self.nodal[&(b, a)]);
                EdgeResidual {
                    from: a,
                    to: b,
                    residual: ta.residual(&tb),
                }
            })
            .collect();
        TreeDiagnostic { coincident, edges }
    }

    /// The torus action on every component.
    pub fn torus(&self, t: &SuperNumber<T>) -> Self {
        TreeConfig {
            tree: self.tree.clone(),
            nodal: self.nodal.iter().map(|(k, p)| (*k, p.torus(t))).collect(),
            marked: self.marked.iter().map(|p| p.torus(t)).collect(),
            curves: self.curves.iter().map(|c| c.torus(t)).collect(),
        }
    }

    /// Reparametrize each component by its own automorphism.
    pub fn act_vertexwise(&self, ms: &[ScMatrix<T>]) -> Result<Self> {
        if ms.len() != self.tree.vertex_count() {
            return Err(Error::InvalidArgument("one automorphism per vertex".into()));
        }
        Ok(TreeConfig {
            tree: self.tree.clone(),
            nodal: self
                .nodal
                .iter()
                .map(|(&(a, b), p)| ((a, b), ms[a].act_point(p)))
                .collect(),
            marked: self
                .marked
                .iter()
                .zip(&self.tree.marking)
                .map(|(p, &v)| ms[v].act_point(p))
                .collect(),
            curves: self.curves.iter().zip(ms).map(|(c, m)| c.act(m)).collect(),
        })
    }

    /// Same tree, projectively equal points and equal maps.
    pub fn equivalent(&self, o: &Self) -> bool {
        self.tree == o.tree
            && self.nodal.len() == o.nodal.len()
            && self
                .nodal
                .iter()
                .all(|(k, p)| o.nodal.get(k).is_some_and(|q| p.equivalent(q)))
            && self.marked.iter().zip(&o.marked).all(|(p, q)| p.equivalent(q))
            && self.curves.iter().zip(&o.curves).all(|(a, b)| a.same_map(b))
    }
}

/// Join two trees by turning the last mark of each into the two sides of a
/// new node. Marks are renumbered with the first tree's remaining marks
/// first.
pub fn glue<T: Coefficient>(c1: &TreeConfig<T>, c2: &TreeConfig<T>) -> Result<TreeConfig<T>> {
    let (Some(&v1), Some(&v2)) = (c1.tree.marking.last(), c2.tree.marking.last()) else {
        return Err(Error::InvalidTree("gluing needs a mark on each side".into()));
    };
    let (q1, q2) = (c1.marked.last().unwrap(), c2.marked.last().unwrap());
    let t1 = c1.curves[v1].eval(q1);
    let t2 = c2.curves[v2].eval(q2);
    if !t1.equivalent(&t2) {
        return Err(Error::InvalidTree(format!(
            "the glued marks map to different points {t1} and {t2}"
        )));
    }
    let off = c1.tree.vertex_count();
    let w2 = v2 + off;
    let mut degrees = c1.tree.degrees.clone();
    degrees.extend(&c2.tree.degrees);
    let mut edges = c1.tree.edges.clone();
    edges.extend(c2.tree.edges.iter().map(|&(a, b)| (a + off, b + off)));
    edges.push((v1, w2));
    let k1 = c1.marked.len() - 1;
    let k2 = c2.marked.len() - 1;
    let mut marking = c1.tree.marking[..k1].to_vec();
    marking.extend(c2.tree.marking[..k2].iter().map(|&v| v + off));
    let mut nodal = c1.nodal.clone();
    nodal.extend(c2.nodal.iter().map(|(&(a, b), p)| ((a + off, b + off), p.clone())));
    nodal.insert((v1, w2), q1.clone());
    nodal.insert((w2, v1), q2.clone());
    let mut marked = c1.marked[..k1].to_vec();
    marked.extend_from_slice(&c2.marked[..k2]);
    let mut curves = c1.curves.clone();
    curves.extend_from_slice(&c2.curves);
    TreeConfig::new(StableTree::new(degrees, edges, marking)?, nodal, marked, curves)
}

/// Drop the last mark; fails when that destabilizes its component.
pub fn forget_last_mark<T: Coefficient>(c: &TreeConfig<T>) -> Result<TreeConfig<T>> {
    if c.marked.is_empty() {
        return Err(Error::InvalidTree("no mark to forget".into()));
    }
    let k = c.marked.len() - 1;
    let tree = StableTree::new(
        c.tree.degrees.clone(),
        c.tree.edges.clone(),
        c.tree.marking[..k].to_vec(),
    )?;
    TreeConfig::new(tree, c.nodal.clone(), c.marked[..k].to_vec(), c.curves.clone())
}

impl<T: Coefficient> TreeConfig<T> {
    /// Post-compose every map with the target translation `X ↦ X + c`.
    pub fn translate_target(&self, c: &SuperNumber<T>) -> Self {
        TreeConfig {
            curves: self.curves.iter().map(|k| k.translate_target(c)).collect(),
            ..self.clone()
        }
    }
}
