//! The infinitesimal SUSY map at a reduced configuration.
//!
//! For marked points `z_1..z_k` and a reduced map `φ` of degree `d`, the map
//! `H^0(S) → ⊕ S|_{z_i} ⊕ H^0(O(2d-1))` sends `s` to its values at the
//! points and to `-⟨s, dφ⟩`. Everything is over the coefficient field, using
//! bodies of the configuration.

use super::SuperCurve;
use crate::bundles::Section;
use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::linalg;
use crate::poly::Poly;
use crate::scalar::Coefficient;
use crate::scgroup::{ScMatrix, Sl2};
use crate::superspace::{Chart, ProjPoint};

/// Marked points together with a map.
#[derive(Clone, PartialEq, Debug)]
pub struct MarkedConfig<T: Coefficient> {
    pub points: Vec<ProjPoint<T>>,
    pub curve: SuperCurve<T>,
}

impl<T: Coefficient> MarkedConfig<T> {
    pub fn new(points: Vec<ProjPoint<T>>, curve: SuperCurve<T>) -> Result<Self> {
        let n = curve.n();
        if let Some(p) = points.iter().find(|p| p.n() != n) {
            return Err(Error::MismatchedGenerators { left: n, right: p.n() });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| !q.reduced_distinct(p)) {
                return Err(Error::CoincidentPoints);
            }
        }
        Ok(MarkedConfig { points, curve })
    }

    pub fn n(&self) -> usize {
        self.curve.n()
    }

    pub fn act(&self, m: &ScMatrix<T>) -> Self {
        MarkedConfig {
            points: self.points.iter().map(|p| m.act_point(p)).collect(),
            curve: self.curve.act(m),
        }
    }

    pub fn torus(&self, t: &SuperNumber<T>) -> Self {
        MarkedConfig {
            points: self.points.iter().map(|p| p.torus(t)).collect(),
            curve: self.curve.torus(t),
        }
    }

    pub fn reduce(&self) -> Self {
        MarkedConfig {
            points: self.points.iter().map(|p| p.reduce()).collect(),
            curve: self.curve.reduce(),
        }
    }

    pub fn equivalent(&self, o: &Self) -> bool {
        self.points.len() == o.points.len()
            && self.points.iter().zip(&o.points).all(|(a, b)| a.equivalent(b))
            && self.curve.same_map(&o.curve)
    }
}

/// What a row of the SUSY map's matrix measures.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TargetRow {
    /// The fibre of `S` at a marked point, in the frame of its chart.
    Fibre { point: usize, frame: Chart },
    /// The coefficient of `z^power` in the `ψ`-numerator.
    Psi { power: usize },
}

#[derive(Clone, PartialEq, Debug)]
pub struct Susy1Map<T: Coefficient> {
    pub rows: Vec<TargetRow>,
    /// Columns are the coordinates `(α, β)` of `s(α, β)`.
    pub matrix: Vec<Vec<T>>,
    pub rank: usize,
    pub kernel: Vec<Vec<T>>,
    pub cokernel_dim: usize,
}

fn reduced_chart<T: Coefficient>(p: &ProjPoint<T>) -> (Chart, T) {
    let cp = p.reduce().to_canonical_chart();
    (cp.chart, cp.p.body())
}

pub fn susy1_map<T: Coefficient>(config: &MarkedConfig<T>) -> Susy1Map<T> {
    let mut rows = Vec::new();
    let mut matrix = Vec::new();
    for (i, p) in config.points.iter().enumerate() {
        let (frame, z) = reduced_chart(p);
        rows.push(TargetRow::Fibre { point: i, frame });
        // s(α, β) = s1(α - β z1) = -s2(α z2 + β)
        matrix.push(match frame {
            Chart::One => vec![T::one(), -z],
            Chart::Two => vec![-z, -T::one()],
        });
    }
    let d = config.curve.degree();
    if d > 0 {
        let c = config.curve.reduce();
        let (p, q) = (c.phi_numerator(), c.phi_denominator());
        let w = (&(&p.derivative() * q) - &(p * &q.derivative())).body();
        let at = |k: usize| w.get(k).cloned().unwrap_or_else(T::zero);
        for k in 0..2 * d {
            rows.push(TargetRow::Psi { power: k });
            // -(α - βz) W(z)
            let beta_part = if k == 0 { T::zero() } else { at(k - 1) };
            matrix.push(vec![-at(k), beta_part]);
        }
    }
    let rank = linalg::rank(&matrix);
    let kernel = linalg::kernel(&matrix, 2);
    Susy1Map {
        cokernel_dim: rows.len() - rank,
        rows,
        matrix,
        rank,
        kernel,
    }
}

/// `g` acting on `H^0(S)` in the coordinates `(α, β)`, as a matrix on
/// column vectors.
pub fn h0s_matrix<T: Coefficient>(g: &Sl2<T>) -> Vec<Vec<T>> {
    vec![vec![g.a.body(), g.b.body()], vec![g.c.body(), g.d.body()]]
}

/// `g` acting on the target of the SUSY map at `config`, sending the
/// coordinates at `config` to those at `config · g`.
pub fn target_matrix<T: Coefficient>(g: &Sl2<T>, config: &MarkedConfig<T>) -> Vec<Vec<T>> {
    let k = config.points.len();
    let d = config.curve.degree();
    let size = k + 2 * d;
    let mut out = vec![vec![T::zero(); size]; size];
    let (a, b, c, dd) = (g.a.body(), g.b.body(), g.c.body(), g.d.body());
    for (i, p) in config.points.iter().enumerate() {
        let p = p.reduce().normalize();
        let (z1, z2) = (p.z1().body(), p.z2().body());
        let w2 = c.clone() * z1.clone() + dd.clone() * z2.clone();
        // the fibre coordinate is Θ divided by the image's chart divisor
        out[i][i] = if w2.is_zero() {
            T::one() / (a.clone() * z1 + b.clone() * z2)
        } else {
            T::one() / w2
        };
    }
    if d > 0 {
        let n = config.n();
        let g0 = Sl2 {
            a: SuperNumber::scalar(n, a),
            b: SuperNumber::scalar(n, b),
            c: SuperNumber::scalar(n, c),
            d: SuperNumber::scalar(n, dd),
        };
        for j in 0..2 * d {
            let mut mono = vec![T::zero(); j + 1];
            mono[j] = T::one();
            let s = Section::new(2 * d as i32 - 1, Poly::from_scalars(n, &mono)).expect("degree bound");
            let image = s.sl2_pushforward(&g0).chart1().body();
            for (r, v) in image.into_iter().enumerate() {
                out[k + r][k + j] = v;
            }
        }
    }
    out
}
