//! Placement of the points on the edges of one tree shape.
//!
//! For each admissible set of marked slots the points are assigned slot by
//! slot. A vertex is fixed as soon as two lines through it are known (from a
//! point, or from an already fixed neighbour), and every known length and
//! mark parameter must be positive. The slot order is chosen so vertices
//! get fixed early.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use super::tree::TreeShape;
use crate::exact::rational::common_denominator;
use crate::exact::{det2, IntVec2, PointQ2, Rational};

#[derive(Default, Clone, Debug)]
pub(crate) struct SearchStats {
    pub cut_sets: u64,
    pub nodes: u64,
    pub pruned: u64,
}

/// A complete placement with its vertex positions. `touching` is set when
/// some length or mark parameter is zero.
pub(crate) struct Found {
    pub marks: Vec<usize>,
    pub positions: Vec<PointQ2>,
    pub touching: bool,
}

/// Integer type for homogeneous coordinates. Overflow is checked; with
/// `i128` the input bound in [`search_shape`] keeps it out of reach.
pub(crate) trait Int: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> {}
impl<T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64>> Int for T {}

const OVERFLOW: &str = "homogeneous coordinate overflow";

fn mul<T: Int>(a: &T, b: &T) -> T {
    a.checked_mul(b).expect(OVERFLOW)
}

fn add<T: Int>(a: &T, b: &T) -> T {
    a.checked_add(b).expect(OVERFLOW)
}

fn sub<T: Int>(a: &T, b: &T) -> T {
    a.checked_sub(b).expect(OVERFLOW)
}

/// The point `(x / w, y / w)` with `w > 0`.
#[derive(Clone, Debug)]
pub(crate) struct HPoint<T> {
    x: T,
    y: T,
    w: T,
}

impl<T: Int> HPoint<T> {
    fn integer(x: T, y: T) -> Self {
        HPoint { x, y, w: T::one() }
    }

    /// `(p - q) * w_p * w_q`.
    fn diff(&self, q: &HPoint<T>) -> (T, T) {
        (sub(&mul(&self.x, &q.w), &mul(&q.x, &self.w)), sub(&mul(&self.y, &q.w), &mul(&q.y, &self.w)))
    }

    /// With `p - q = t v` (when parallel), the sign of `t`; `None` when
    /// `p - q` is not parallel to `v`.
    fn along(&self, q: &HPoint<T>, v: IntVec2) -> Option<i8> {
        let (dx, dy) = self.diff(q);
        let (vx, vy) = (T::from(v.x), T::from(v.y));
        if !sub(&mul(&dx, &vy), &mul(&dy, &vx)).is_zero() {
            return None;
        }
        let dot = add(&mul(&dx, &vx), &mul(&dy, &vy));
        Some(if dot.is_zero() { 0 } else if dot.is_positive() { 1 } else { -1 })
    }

    /// Intersection of the lines `self + s u` and `q + t v`.
    fn meet(&self, u: IntVec2, q: &HPoint<T>, v: IntVec2) -> HPoint<T> {
        let (dx, dy) = q.diff(self);
        let n = sub(&mul(&dx, &T::from(v.y)), &mul(&dy, &T::from(v.x)));
        let det = det2(u, v);
        let (n, det) = if det < 0 { (-n, T::from(-det)) } else { (n, T::from(det)) };
        // self + n / (w_p w_q det) u
        let scale = mul(&q.w, &det);
        let x = add(&mul(&self.x, &scale), &mul(&n, &T::from(u.x)));
        let y = add(&mul(&self.y, &scale), &mul(&n, &T::from(u.y)));
        HPoint { x, y, w: mul(&self.w, &scale) }
    }
}

struct State<T> {
    pos: Vec<Option<HPoint<T>>>,
    mark: Vec<Option<usize>>,
    used: Vec<bool>,
    /// Vertices fixed so far, in order, for undoing.
    trail: Vec<usize>,
    touching: bool,
}

struct Search<'a, T> {
    shape: &'a TreeShape,
    pts: Vec<HPoint<T>>,
    /// Common denominator the points were scaled by.
    scale: BigInt,
    incident: Vec<Vec<(usize, IntVec2)>>,
    order: Vec<usize>,
    stats: SearchStats,
    found: Vec<Found>,
}

enum Check {
    Bad,
    Ok { touching: bool },
}

/// Sign check for a parameter that must be positive.
fn positive(sign: Option<i8>, touching: &mut bool) -> bool {
    match sign {
        Some(1) => true,
        Some(0) => {
            *touching = true;
            true
        }
        _ => false,
    }
}

fn slot_ends(shape: &TreeShape, slot: usize) -> (usize, Option<usize>, IntVec2) {
    if shape.is_end(slot) {
        let e = &shape.ends[slot - shape.edges.len()];
        (e.vertex, None, e.dir)
    } else {
        let e = &shape.edges[slot];
        (e.from, Some(e.to), e.vector)
    }
}

impl<T: Int + Into<BigInt>> Search<'_, T> {
    fn to_point(&self, p: &HPoint<T>) -> PointQ2 {
        let den: BigInt = p.w.clone().into() * &self.scale;
        PointQ2::new(Rational::new(p.x.clone().into(), den.clone()), Rational::new(p.y.clone().into(), den))
    }

    /// Consistency of a slot with whatever is known about it.
    fn check_slot(&self, st: &State<T>, slot: usize) -> Check {
        let (a, b, v) = slot_ends(self.shape, slot);
        let pa = st.pos[a].as_ref();
        let pb = b.and_then(|b| st.pos[b].as_ref());
        let pm = st.mark[slot].map(|i| &self.pts[i]);
        let mut touching = false;
        let mut ok = |p: &HPoint<T>, q: &HPoint<T>| positive(p.along(q, v), &mut touching);
        if let (Some(pa), Some(pb)) = (pa, pb) {
            if !ok(pb, pa) {
                return Check::Bad;
            }
        }
        if let Some(pm) = pm {
            if pa.is_some_and(|pa| !ok(pm, pa)) || pb.is_some_and(|pb| !ok(pb, pm)) {
                return Check::Bad;
            }
        }
        Check::Ok { touching }
    }

    /// A point on the line of `slot` other than the vertex `v` itself.
    fn known_line(&self, st: &State<T>, slot: usize, v: usize) -> Option<HPoint<T>> {
        if let Some(i) = st.mark[slot] {
            return Some(self.pts[i].clone());
        }
        let (a, b, _) = slot_ends(self.shape, slot);
        let other = if a == v { b? } else { a };
        st.pos[other].clone()
    }

    /// Fixes every vertex with two known lines; false on a contradiction.
    fn propagate(&self, st: &mut State<T>, changed_slot: usize) -> bool {
        let mut dirty: Vec<usize> = vec![changed_slot];
        while let Some(slot) = dirty.pop() {
            match self.check_slot(st, slot) {
                Check::Bad => return false,
                Check::Ok { touching } => st.touching |= touching,
            }
            let (a, b, _) = slot_ends(self.shape, slot);
            for v in std::iter::once(a).chain(b) {
                if st.pos[v].is_some() {
                    continue;
                }
                let lines: Vec<(HPoint<T>, IntVec2)> = self.incident[v]
                    .iter()
                    .filter_map(|&(s, dir)| self.known_line(st, s, v).map(|p| (p, dir)))
                    .take(2)
                    .collect();
                if lines.len() == 2 {
                    st.pos[v] = Some(lines[0].0.meet(lines[0].1, &lines[1].0, lines[1].1));
                    st.trail.push(v);
                    dirty.extend(self.incident[v].iter().map(|&(s, _)| s));
                }
            }
        }
        true
    }

    fn dfs(&mut self, st: &mut State<T>, depth: usize) {
        self.stats.nodes += 1;
        if depth == self.order.len() {
            if st.pos.iter().all(Option::is_some) {
                let mut marks = vec![0; self.pts.len()];
                for (slot, m) in st.mark.iter().enumerate() {
                    if let Some(i) = m {
                        marks[*i] = slot;
                    }
                }
                let positions = st.pos.iter().map(|p| self.to_point(p.as_ref().unwrap()));
                self.found.push(Found { marks, positions: positions.collect(), touching: st.touching });
            }
            return;
        }
        let slot = self.order[depth];
        for i in 0..self.pts.len() {
            if st.used[i] {
                continue;
            }
            st.used[i] = true;
            st.mark[slot] = Some(i);
            let trail_len = st.trail.len();
            let touching = st.touching;
            if self.propagate(st, slot) {
                self.dfs(st, depth + 1);
            } else {
                self.stats.pruned += 1;
            }
            while st.trail.len() > trail_len {
                let v = st.trail.pop().unwrap();
                st.pos[v] = None;
            }
            st.touching = touching;
            st.mark[slot] = None;
            st.used[i] = false;
        }
    }
}

/// Greedy order of the marked slots: each step takes the slot that fixes
/// the most vertices, preferring slots next to a half-determined vertex.
fn slot_order(shape: &TreeShape, cut: &[usize]) -> Vec<usize> {
    let incident: Vec<Vec<(usize, IntVec2)>> = (0..shape.vertices).map(|v| shape.incident(v)).collect();
    let known = |marked: &[bool], fixed: &[bool], slot: usize, v: usize| {
        if marked[slot] {
            return true;
        }
        let (a, b, _) = slot_ends(shape, slot);
        match (a == v, b) {
            (true, Some(b)) => fixed[b],
            (true, None) => false,
            (false, _) => fixed[a],
        }
    };
    let closure = |marked: &[bool], fixed: &mut [bool]| {
        let mut grown = 0;
        loop {
            let before = grown;
            for v in 0..shape.vertices {
                if !fixed[v] && incident[v].iter().filter(|&&(s, _)| known(marked, fixed, s, v)).count() >= 2 {
                    fixed[v] = true;
                    grown += 1;
                }
            }
            if grown == before {
                return grown;
            }
        }
    };
    let mut marked = vec![false; shape.slot_count()];
    let mut fixed = vec![false; shape.vertices];
    let mut order = Vec::new();
    let mut left: Vec<usize> = cut.to_vec();
    while !left.is_empty() {
        let score = |s: usize| {
            let mut m = marked.clone();
            m[s] = true;
            let mut f = fixed.clone();
            let gained = closure(&m, &mut f);
            let (a, b, _) = slot_ends(shape, s);
            let half = std::iter::once(a)
                .chain(b)
                .filter(|&v| !fixed[v] && incident[v].iter().any(|&(t, _)| known(&marked, &fixed, t, v)))
                .count();
            (gained, half)
        };
        // highest score, lowest slot on ties
        let best = left.iter().copied().rev().max_by_key(|&s| score(s)).unwrap();
        left.retain(|&s| s != best);
        marked[best] = true;
        closure(&marked, &mut fixed);
        order.push(best);
    }
    order
}

/// Sets of `n` slots whose cut leaves one end per piece.
pub(crate) fn cut_sets(shape: &TreeShape, n: usize) -> Vec<Vec<usize>> {
    (0..shape.slot_count())
        .combinations(n)
        .filter(|set| {
            let mut cut = vec![false; shape.slot_count()];
            for &s in set {
                cut[s] = true;
            }
            shape.cut_ok(&cut, true)
        })
        .collect()
}

fn search_in<T: Int + Into<BigInt>>(shape: &TreeShape, pts: Vec<HPoint<T>>, scale: BigInt) -> (Vec<Found>, SearchStats) {
    let n = pts.len();
    let mut s = Search {
        shape,
        pts,
        scale,
        incident: (0..shape.vertices).map(|v| shape.incident(v)).collect(),
        order: Vec::new(),
        stats: SearchStats::default(),
        found: Vec::new(),
    };
    for cut in cut_sets(shape, n) {
        s.stats.cut_sets += 1;
        s.order = slot_order(shape, &cut);
        let mut st = State {
            pos: vec![None; shape.vertices],
            mark: vec![None; shape.slot_count()],
            used: vec![false; n],
            trail: Vec::new(),
            touching: false,
        };
        s.dfs(&mut st, 0);
    }
    (s.found, s.stats)
}

/// Bits allowed for the scaled input coordinates before the search falls
/// back to big integers. A vertex has weight at most the product of the
/// vertex multiplicities (below 2^25 for degree 3), so every product formed
/// stays below 2^127.
const SMALL_BITS: u64 = 40;

/// Points scaled to a common denominator.
fn scaled(pts: &[PointQ2]) -> (Vec<(BigInt, BigInt)>, BigInt) {
    let scale = common_denominator(pts.iter().flat_map(|p| [&p.x, &p.y]));
    let int = |r: &Rational| (r * Rational::from_integer(scale.clone())).to_integer();
    (pts.iter().map(|p| (int(&p.x), int(&p.y))).collect(), scale)
}

/// All placements of `pts` on `shape` that are realised by a curve with
/// non-negative lengths.
pub(crate) fn search_shape(shape: &TreeShape, pts: &[PointQ2]) -> (Vec<Found>, SearchStats) {
    let (ints, scale) = scaled(pts);
    if ints.iter().all(|(x, y)| x.bits() <= SMALL_BITS && y.bits() <= SMALL_BITS) {
        let small = ints.iter().map(|(x, y)| HPoint::integer(x.to_i128().unwrap(), y.to_i128().unwrap())).collect();
        search_in::<i128>(shape, small, scale)
    } else {
        search_in(shape, ints.into_iter().map(|(x, y)| HPoint::integer(x, y)).collect(), scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::tree::cached_shapes;
    use crate::exact::rat;

    #[test]
    fn big_and_small_fields_agree() {
        let pts: Vec<PointQ2> = [(0, 0), (5, 3), (-2, 7), (4, -6), (9, 1)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| PointQ2::new(rat(1000 * x + i as i64, 997), rat(1000 * y + 3 * i as i64, 991)))
            .collect();
        let mut total = 0;
        for shape in cached_shapes(2) {
            let (a, _) = search_shape(shape, &pts);
            let (ints, scale) = scaled(&pts);
            let (b, _) = search_in(shape, ints.into_iter().map(|(x, y)| HPoint::integer(x, y)).collect(), scale);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!((&x.marks, &x.positions), (&y.marks, &y.positions));
            }
            total += a.len();
        }
        assert_eq!(total, 1);
    }

    #[test]
    fn order_covers_the_cut() {
        for shape in cached_shapes(2) {
            for cut in cut_sets(shape, 5) {
                let mut order = slot_order(shape, &cut);
                order.sort();
                assert_eq!(order, cut);
            }
        }
    }
}
