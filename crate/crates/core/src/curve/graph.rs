use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::exact::{int, rational_direction, IntVec2, PointQ2, Rational};

/// Bounded edge between two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "w")]
    pub weight: i64,
}

/// Unbounded edge leaving `base` in the primitive direction `dir`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray {
    pub base: usize,
    pub dir: IntVec2,
    #[serde(rename = "w")]
    pub weight: i64,
}

/// A whole line without vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    pub base: PointQ2,
    pub dir: IntVec2,
    #[serde(rename = "w")]
    pub weight: i64,
}

impl Line {
    /// Canonical representative: direction with `x > 0` (or `x = 0, y > 0`),
    /// base point on the `y`-axis, or on the `x`-axis for vertical lines.
    pub fn normalized(&self) -> Line {
        let dir = canonical_sign(self.dir);
        let base = if dir.x != 0 {
            let t = -&self.base.x / int(dir.x);
            PointQ2::new(Rational::zero(), &self.base.y + t * int(dir.y))
        } else {
            PointQ2::new(self.base.x.clone(), Rational::zero())
        };
        Line { base, dir, weight: self.weight }
    }

    pub fn contains(&self, p: &PointQ2) -> bool {
        let (dx, dy) = p.sub(&self.base);
        cross(self.dir, &dx, &dy).is_zero()
    }
}

/// Flips `u` so that `u.x > 0`, or `u.x = 0` and `u.y > 0`.
pub fn canonical_sign(u: IntVec2) -> IntVec2 {
    if u.x < 0 || (u.x == 0 && u.y < 0) {
        -u
    } else {
        u
    }
}

/// `u x (dx, dy)`.
pub(crate) fn cross(u: IntVec2, dx: &Rational, dy: &Rational) -> Rational {
    int(u.x) * dy - int(u.y) * dx
}

/// An embedded weighted graph in the plane with rational vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct PlaneTropicalCurve {
    pub vertices: Vec<PointQ2>,
    pub edges: Vec<Edge>,
    pub rays: Vec<Ray>,
    #[serde(default)]
    pub lines: Vec<Line>,
}

#[derive(Deserialize)]
struct RawCurve {
    #[serde(default)]
    vertices: Vec<PointQ2>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    rays: Vec<Ray>,
    #[serde(default)]
    lines: Vec<Line>,
}

impl TryFrom<RawCurve> for PlaneTropicalCurve {
    type Error = CurveError;
    fn try_from(r: RawCurve) -> Result<Self, CurveError> {
        let c = PlaneTropicalCurve { vertices: r.vertices, edges: r.edges, rays: r.rays, lines: r.lines };
        c.validate()?;
        Ok(c)
    }
}

/// Per-vertex balancing outcome; only unbalanced vertices are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancingReport {
    pub balanced: bool,
    pub residuals: Vec<(usize, IntVec2)>,
}

impl PlaneTropicalCurve {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.lines.is_empty()
    }

    /// Structural checks: indices in range, distinct edge endpoints, positive
    /// weights, primitive nonzero directions, no repeated vertex positions.
    pub fn validate(&self) -> Result<(), CurveError> {
        let n = self.vertices.len();
        let distinct: BTreeSet<&PointQ2> = self.vertices.iter().collect();
        if distinct.len() != n {
            return Err(CurveError::Malformed("repeated vertex position".into()));
        }
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(CurveError::Malformed(format!("edge {}-{} out of range", e.from, e.to)));
            }
            if e.from == e.to {
                return Err(CurveError::Malformed("edge with equal endpoints".into()));
            }
            if e.weight < 1 {
                return Err(CurveError::Malformed("nonpositive weight".into()));
            }
        }
        for r in &self.rays {
            if r.base >= n {
                return Err(CurveError::Malformed(format!("ray base {} out of range", r.base)));
            }
            check_dir(r.dir, r.weight)?;
        }
        for l in &self.lines {
            check_dir(l.dir, l.weight)?;
        }
        Ok(())
    }

    /// Primitive direction and lattice length of edge `i`, oriented from `from` to `to`.
    pub fn edge_direction(&self, i: usize) -> (IntVec2, Rational) {
        let e = &self.edges[i];
        let (dx, dy) = self.vertices[e.to].sub(&self.vertices[e.from]);
        rational_direction(&dx, &dy).expect("distinct endpoints")
    }

    /// Outgoing primitive directions and weights of all edges at `v`.
    pub fn incident(&self, v: usize) -> Vec<(IntVec2, i64)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from == v {
                out.push((self.edge_direction(i).0, e.weight));
            }
            if e.to == v {
                out.push((-self.edge_direction(i).0, e.weight));
            }
        }
        for r in &self.rays {
            if r.base == v {
                out.push((r.dir, r.weight));
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v || e.to == v).count() + self.rays.iter().filter(|r| r.base == v).count()
    }

    pub fn check_balancing(&self) -> BalancingReport {
        let residuals: Vec<(usize, IntVec2)> = (0..self.vertices.len())
            .map(|v| (v, self.incident(v).into_iter().map(|(u, w)| u * w).sum::<IntVec2>()))
            .filter(|(_, r)| !r.is_zero())
            .collect();
        BalancingReport { balanced: residuals.is_empty(), residuals }
    }

    /// Weighted multiset of end directions; a line contributes both of its ends.
    pub fn ends(&self) -> BTreeMap<IntVec2, i64> {
        let mut out = BTreeMap::new();
        for r in &self.rays {
            *out.entry(r.dir).or_insert(0) += r.weight;
        }
        for l in &self.lines {
            *out.entry(l.dir).or_insert(0) += l.weight;
            *out.entry(-l.dir).or_insert(0) += l.weight;
        }
        out
    }

    /// `d` when the ends are exactly `d` times each of `(-1,0)`, `(0,-1)`, `(1,1)`.
    pub fn degree(&self) -> Option<u32> {
        let ends = self.ends();
        let d = *ends.get(&IntVec2::new(-1, 0))?;
        let expect = BTreeMap::from([(IntVec2::new(-1, 0), d), (IntVec2::new(0, -1), d), (IntVec2::new(1, 1), d)]);
        (d >= 1 && ends == expect).then_some(d as u32)
    }

    /// Connected components of the vertex graph (lines not included).
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    /// First Betti number `|edges| - |vertices| + #components`. Standalone
    /// lines are contractible and contribute nothing.
    pub fn genus(&self) -> i64 {
        let comps: BTreeSet<usize> = self.vertex_components().into_iter().collect();
        self.edges.len() as i64 - self.vertices.len() as i64 + comps.len() as i64
    }

    /// Exact membership of `p` in the underlying point set.
    pub fn contains(&self, p: &PointQ2) -> bool {
        self.vertices.iter().any(|v| v == p)
            || self.edges.iter().any(|e| on_segment(&self.vertices[e.from], &self.vertices[e.to], p))
            || self.rays.iter().any(|r| on_ray(&self.vertices[r.base], r.dir, p))
            || self.lines.iter().any(|l| l.contains(p))
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> PlaneTropicalCurve {
        let mut c = self.clone();
        for v in &mut c.vertices {
            v.x += dx;
            v.y += dy;
        }
        for l in &mut c.lines {
            l.base.x += dx;
            l.base.y += dy;
        }
        c
    }

    /// Canonical form: parallel duplicates merged with added weights, 2-valent
    /// straight junctions with equal weights dissolved, isolated vertices
    /// dropped, everything sorted.
    pub fn canonical(&self) -> PlaneTropicalCurve {
        let mut verts: Vec<Option<PointQ2>> = self.vertices.iter().cloned().map(Some).collect();
        let mut edges: Vec<Option<Edge>> = self.edges.iter().cloned().map(Some).collect();
        let mut rays: Vec<Option<Ray>> = self.rays.iter().cloned().map(Some).collect();
        let mut lines: Vec<Line> = self.lines.clone();

        loop {
            let mut changed = false;
            for v in 0..verts.len() {
                if verts[v].is_none() {
                    continue;
                }
                let es: Vec<usize> = (0..edges.len())
                    .filter(|&i| edges[i].as_ref().is_some_and(|e| e.from == v || e.to == v))
                    .collect();
                let rs: Vec<usize> =
                    (0..rays.len()).filter(|&i| rays[i].as_ref().is_some_and(|r| r.base == v)).collect();
                if es.len() + rs.len() == 0 {
                    verts[v] = None;
                    changed = true;
                    continue;
                }
                if es.len() + rs.len() != 2 {
                    continue;
                }
                let here = verts[v].clone().unwrap();
                // Each arm: (outgoing direction, weight, far end).
                let mut arms: Vec<(IntVec2, i64, Option<usize>)> = Vec::new();
                for &i in &es {
                    let e = edges[i].as_ref().unwrap();
                    let other = if e.from == v { e.to } else { e.from };
                    let (dx, dy) = verts[other].as_ref().unwrap().sub(&here);
                    arms.push((rational_direction(&dx, &dy).unwrap().0, e.weight, Some(other)));
                }
                for &i in &rs {
                    let r = rays[i].as_ref().unwrap();
                    arms.push((r.dir, r.weight, None));
                }
                if arms[0].0 != -arms[1].0 || arms[0].1 != arms[1].1 {
                    continue;
                }
                let w = arms[0].1;
                for &i in &es {
                    edges[i] = None;
                }
                for &i in &rs {
                    rays[i] = None;
                }
                match (arms[0].2, arms[1].2) {
                    (Some(a), Some(b)) => edges.push(Some(Edge { from: a, to: b, weight: w })),
                    (Some(a), None) => rays.push(Some(Ray { base: a, dir: arms[1].0, weight: w })),
                    (None, Some(b)) => rays.push(Some(Ray { base: b, dir: arms[0].0, weight: w })),
                    (None, None) => lines.push(Line { base: here.clone(), dir: arms[0].0, weight: w }),
                }
                verts[v] = None;
                changed = true;
            }
            if !changed {
                break;
            }
        }

        // Sort surviving vertices and reindex.
        let mut order: Vec<usize> = (0..verts.len()).filter(|&v| verts[v].is_some()).collect();
        order.sort_by(|&a, &b| verts[a].cmp(&verts[b]));
        let mut remap = vec![usize::MAX; verts.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let vertices: Vec<PointQ2> = order.iter().map(|&v| verts[v].clone().unwrap()).collect();

        let mut edge_w: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for e in edges.into_iter().flatten() {
            let (a, b) = (remap[e.from], remap[e.to]);
            *edge_w.entry((a.min(b), a.max(b))).or_insert(0) += e.weight;
        }
        let mut ray_w: BTreeMap<(usize, IntVec2), i64> = BTreeMap::new();
        for r in rays.into_iter().flatten() {
            *ray_w.entry((remap[r.base], r.dir)).or_insert(0) += r.weight;
        }
        let mut line_w: BTreeMap<(PointQ2, IntVec2), i64> = BTreeMap::new();
        for l in lines {
            let l = l.normalized();
            *line_w.entry((l.base, l.dir)).or_insert(0) += l.weight;
        }
        PlaneTropicalCurve {
            vertices,
            edges: edge_w.into_iter().map(|((from, to), weight)| Edge { from, to, weight }).collect(),
            rays: ray_w.into_iter().map(|((base, dir), weight)| Ray { base, dir, weight }).collect(),
            lines: line_w.into_iter().map(|((base, dir), weight)| Line { base, dir, weight }).collect(),
        }
    }

    /// Equality of canonical forms.
    pub fn equivalent(&self, other: &PlaneTropicalCurve) -> bool {
        self.canonical() == other.canonical()
    }
}

fn check_dir(dir: IntVec2, weight: i64) -> Result<(), CurveError> {
    if dir.is_zero() || dir.lattice_length() != 1 {
        return Err(CurveError::Malformed(format!("direction {dir} is not primitive")));
    }
    if weight < 1 {
        return Err(CurveError::Malformed("nonpositive weight".into()));
    }
    Ok(())
}

pub(crate) fn on_segment(a: &PointQ2, b: &PointQ2, p: &PointQ2) -> bool {
    let (ex, ey) = b.sub(a);
    let (px, py) = p.sub(a);
    if !(&ex * &py - &ey * &px).is_zero() {
        return false;
    }
    let dot = &ex * &px + &ey * &py;
    !dot.is_negative() && dot <= &ex * &ex + &ey * &ey
}

pub(crate) fn on_ray(base: &PointQ2, dir: IntVec2, p: &PointQ2) -> bool {
    let (px, py) = p.sub(base);
    cross(dir, &px, &py).is_zero() && !(int(dir.x) * px + int(dir.y) * py).is_negative()
}
