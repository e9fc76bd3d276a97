use std::collections::BTreeMap;

use super::graph::{PlaneTropicalCurve, Ray};
use super::CurveError;
use crate::exact::IntVec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Piece {
    Edge(usize),
    Ray(usize),
}

/// Splits a union of two curves meeting transversally. Every vertex must be
/// 3-valent or a 4-valent crossing of two straight strands; crossings are
/// pulled apart and the pieces grouped by connectivity. Returns `None` for a
/// connected curve. With more than two components the first is returned
/// against the union of the others.
pub fn decompose_transverse_union(
    c: &PlaneTropicalCurve,
) -> Result<Option<(PlaneTropicalCurve, PlaneTropicalCurve)>, CurveError> {
    let c = c.canonical();
    let pieces: Vec<Piece> =
        (0..c.edges.len()).map(Piece::Edge).chain((0..c.rays.len()).map(Piece::Ray)).collect();
    let slot: BTreeMap<Piece, usize> = pieces.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..pieces.len()).collect();

    for v in 0..c.vertices.len() {
        let mut arms: Vec<(IntVec2, i64, Piece)> = Vec::new();
        for (i, e) in c.edges.iter().enumerate() {
            if e.from == v {
                arms.push((c.edge_direction(i).0, e.weight, Piece::Edge(i)));
            } else if e.to == v {
                arms.push((-c.edge_direction(i).0, e.weight, Piece::Edge(i)));
            }
        }
        for (i, r) in c.rays.iter().enumerate() {
            if r.base == v {
                arms.push((r.dir, r.weight, Piece::Ray(i)));
            }
        }
        match arms.len() {
            3 => {
                union(&mut parent, slot[&arms[0].2], slot[&arms[1].2]);
                union(&mut parent, slot[&arms[0].2], slot[&arms[2].2]);
            }
            4 => {
                let partner = |k: usize| (0..4).find(|&j| j != k && arms[j].0 == -arms[k].0 && arms[j].1 == arms[k].1);
                let Some(j) = partner(0) else {
                    return Err(not_decomposable(&c, v));
                };
                let rest: Vec<usize> = (1..4).filter(|&k| k != j).collect();
                if partner(rest[0]) != Some(rest[1]) {
                    return Err(not_decomposable(&c, v));
                }
                union(&mut parent, slot[&arms[0].2], slot[&arms[j].2]);
                union(&mut parent, slot[&arms[rest[0]].2], slot[&arms[rest[1]].2]);
            }
            _ => return Err(not_decomposable(&c, v)),
        }
    }

    // Components: classes of pieces, then each standalone line on its own.
    let mut classes: BTreeMap<usize, Vec<Piece>> = BTreeMap::new();
    for (i, &p) in pieces.iter().enumerate() {
        classes.entry(find(&mut parent, i)).or_default().push(p);
    }
    let mut comps: Vec<PlaneTropicalCurve> = classes.values().map(|ps| sub_curve(&c, ps)).collect();
    for l in &c.lines {
        comps.push(PlaneTropicalCurve { lines: vec![l.clone()], ..Default::default() });
    }
    if comps.len() < 2 {
        return Ok(None);
    }
    for comp in &comps {
        if !comp.check_balancing().balanced {
            return Err(CurveError::NotDecomposable("a strand is unbalanced".into()));
        }
    }
    let first = comps.remove(0).canonical();
    let mut rest = PlaneTropicalCurve::empty();
    for comp in comps {
        rest = disjoint_sum(&rest, &comp);
    }
    Ok(Some((first, rest.canonical())))
}

fn not_decomposable(c: &PlaneTropicalCurve, v: usize) -> CurveError {
    CurveError::NotDecomposable(format!("vertex {} has valence {} and is not a transverse crossing", c.vertices[v], c.valence(v)))
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra] = rb;
    }
}

fn sub_curve(c: &PlaneTropicalCurve, pieces: &[Piece]) -> PlaneTropicalCurve {
    let mut out = PlaneTropicalCurve::empty();
    let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertex = |v: usize, out: &mut PlaneTropicalCurve| {
        *remap.entry(v).or_insert_with(|| {
            out.vertices.push(c.vertices[v].clone());
            out.vertices.len() - 1
        })
    };
    for p in pieces {
        match *p {
            Piece::Edge(i) => {
                let e = &c.edges[i];
                let (a, b) = (vertex(e.from, &mut out), vertex(e.to, &mut out));
                out.edges.push(super::graph::Edge { from: a, to: b, weight: e.weight });
            }
            Piece::Ray(i) => {
                let r = &c.rays[i];
                let base = vertex(r.base, &mut out);
                out.rays.push(Ray { base, dir: r.dir, weight: r.weight });
            }
        }
    }
    out
}

/// Disjoint union of graphs; vertices at equal positions are identified.
pub(crate) fn disjoint_sum(a: &PlaneTropicalCurve, b: &PlaneTropicalCurve) -> PlaneTropicalCurve {
    let mut out = a.clone();
    let mut remap = Vec::with_capacity(b.vertices.len());
    for v in &b.vertices {
        match out.vertices.iter().position(|w| w == v) {
            Some(i) => remap.push(i),
            None => {
                out.vertices.push(v.clone());
                remap.push(out.vertices.len() - 1);
            }
        }
    }
    for e in &b.edges {
        out.edges.push(super::graph::Edge { from: remap[e.from], to: remap[e.to], weight: e.weight });
    }
    for r in &b.rays {
        out.rays.push(Ray { base: remap[r.base], dir: r.dir, weight: r.weight });
    }
    out.lines.extend(b.lines.iter().cloned());
    out
}
