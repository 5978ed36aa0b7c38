//! Arc graphs on the boundary of the upper half plane.
//!
//! A graph places vertices on the boundary line, labeled `L, R, L, R, ...`
//! from the left, and joins some of them by non-crossing arcs with at most
//! one connection per side of each vertex.  Segments are the connected
//! classes of the arc relation; the dual graph puts a vertex in each gap
//! between neighbouring vertices plus one at infinity and joins the gaps
//! that can see each other without crossing an arc.  The two lemmas proved
//! here exhaustively relate odd segments to the label pattern of segment
//! ends and to the dual graph's segment typing, and the overlap graph of a
//! profile pair carries its odd region condition onto these graphs.

use crate::error::{Error, Result};
use crate::folding::overlap_indices;
use crate::regions::{regions, HPair, RegionClass, Side, Unit};
use std::collections::{BTreeMap, BTreeSet};

/// Non-crossing arc diagram with side-degree at most one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcGraph {
    num_vertices: usize,
    /// Arcs as ordered pairs `(a, b)` with `a < b`.
    arcs: BTreeSet<(usize, usize)>,
}

/// Label of a vertex: they alternate `L, R, L, R, ...` from the left.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Label {
    L,
    R,
}

impl ArcGraph {
    /// Validate and build: arcs must stay in range, connect at most one
    /// vertex on each side of every vertex, and be mutually non-crossing.
    pub fn new(num_vertices: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (x, y) in arcs {
            if x == y || x >= num_vertices || y >= num_vertices {
                return Err(Error::Precondition(format!(
                    "arc ({x}, {y}) out of range for {num_vertices} vertices"
                )));
            }
            set.insert((x.min(y), x.max(y)));
        }
        let g = ArcGraph {
            num_vertices,
            arcs: set,
        };
        for v in 0..num_vertices {
            let right = g.arcs.iter().filter(|&&(a, _)| a == v).count();
            let left = g.arcs.iter().filter(|&&(_, b)| b == v).count();
            if right > 1 || left > 1 {
                return Err(Error::Precondition(format!(
                    "vertex {v} has more than one connection on a side"
                )));
            }
        }
        for &(a, b) in &g.arcs {
            for &(c, d) in &g.arcs {
                if a < c && c < b && b < d {
                    return Err(Error::Precondition(format!(
                        "arcs ({a}, {b}) and ({c}, {d}) cross"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn label(&self, v: usize) -> Label {
        if v % 2 == 0 {
            Label::L
        } else {
            Label::R
        }
    }
}

/// A segment: one class of the equivalence generated by the arc relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    /// Member vertices in ascending order.
    pub vertices: Vec<usize>,
    pub odd: bool,
}

/// The segments of the graph, leftmost first.
pub fn segments(g: &ArcGraph) -> Vec<Segment> {
    let n = g.num_vertices;
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for &(a, b) in &g.arcs {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp[ra.max(rb)] = ra.min(rb);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut comp, v);
        classes.entry(r).or_default().push(v);
    }
    classes
        .into_values()
        .map(|vertices| {
            let odd = vertices.len() % 2 == 1;
            Segment { vertices, odd }
        })
        .collect()
}

pub fn has_odd_segment(g: &ArcGraph) -> bool {
    segments(g).iter().any(|s| s.odd)
}

/// A vertex of the dual graph: the gap between original vertices `i` and
/// `i + 1`, or the far gap at infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum DualVertex {
    Gap(usize),
    Infinity,
}

impl DualVertex {
    /// A gap is LR-typed when its flanking labels read `L`, `R`; with the
    /// alternating labels this is every even gap.  Infinity has no type.
    pub fn lr_type(self) -> Option<bool> {
        match self {
            DualVertex::Gap(i) => Some(i % 2 == 0),
            DualVertex::Infinity => None,
        }
    }
}

/// A segment of the dual graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualSegment {
    pub vertices: Vec<DualVertex>,
}

impl DualSegment {
    pub fn contains_infinity(&self) -> bool {
        self.vertices.contains(&DualVertex::Infinity)
    }

    /// Does the segment hold LR- and RL-typed vertices simultaneously?
    pub fn mixed(&self) -> bool {
        let types: BTreeSet<bool> = self.vertices.iter().filter_map(|v| v.lr_type()).collect();
        types.len() > 1
    }

    pub fn has_lr(&self) -> bool {
        self.vertices.iter().any(|v| v.lr_type() == Some(true))
    }
}

/// The dual graph, reduced to its segment structure.  Gap vertices can see
/// each other exactly when the same arcs pass over them, so the segments of
/// the dual graph are the groups of gaps with equal covering arc sets;
/// infinity joins the group covered by no arc.
pub fn dual_graph(g: &ArcGraph) -> Vec<DualSegment> {
    let cover = |i: usize| -> BTreeSet<(usize, usize)> {
        // The gap between vertices i and i + 1.
        g.arcs
            .iter()
            .filter(|&&(a, b)| a <= i && i + 1 <= b)
            .copied()
            .collect()
    };
    let mut groups: BTreeMap<BTreeSet<(usize, usize)>, Vec<DualVertex>> = BTreeMap::new();
    for i in 0..g.num_vertices.saturating_sub(1) {
        groups.entry(cover(i)).or_default().push(DualVertex::Gap(i));
    }
    groups
        .entry(BTreeSet::new())
        .or_default()
        .push(DualVertex::Infinity);
    groups
        .into_values()
        .map(|vertices| DualSegment { vertices })
        .collect()
}

/// The dual criterion: an even vertex count, no mixed dual segment, and
/// every LR-typed dual segment bounded away from infinity.
pub fn lemma_a2_rhs(g: &ArcGraph) -> bool {
    if g.num_vertices % 2 != 0 {
        return false;
    }
    dual_graph(g)
        .iter()
        .all(|s| !s.mixed() && !(s.has_lr() && s.contains_infinity()))
}

/// The overlap graph of a profile pair at gap `k`: one vertex per even
/// `(k-1)`-overlap in left-to-right order, arcs joining neighbouring
/// overlaps that lie in the same I-region at gap `k - 1`.  An odd segment of
/// this graph corresponds to an odd I-region.
pub fn build_overlap_graph(h: &HPair, k: usize) -> Result<ArcGraph> {
    if k < 1 {
        return Err(Error::Precondition("the gap must be at least one".into()));
    }
    // Even overlaps ascending in index are descending in position; reverse
    // for the left-to-right vertex order.
    let mut idx = overlap_indices(h, k - 1);
    idx.reverse();
    let num_vertices = idx.len();
    let mut arcs = vec![];
    for v in regions(h, k - 1, RegionClass::I) {
        let members: Vec<usize> = (0..num_vertices)
            .filter(|&p| {
                let i = idx[p] as i64;
                v.contains(Unit {
                    rho: 0,
                    side: Side::Plus,
                    a2: h.alpha2(i, 0) as i32 - 2,
                })
            })
            .collect();
        for w in members.windows(2) {
            arcs.push((w[0], w[1]));
        }
    }
    ArcGraph::new(num_vertices, arcs)
}

/// All valid arc sets on `n` vertices, by depth-first extension in arc
/// lexicographic order with validity pruning.
pub fn all_graphs(n: usize) -> Vec<ArcGraph> {
    fn extend(
        n: usize,
        from: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<ArcGraph>,
    ) {
        out.push(ArcGraph::new(n, cur.iter().copied()).unwrap());
        let mut next = vec![];
        for a in from.0..n {
            for b in (a + 1).max(if a == from.0 { from.1 } else { 0 })..n {
                next.push((a, b));
            }
        }
        for (a, b) in next {
            let ok = cur.iter().all(|&(c, d)| {
                // Side degrees and crossings against the chosen arcs.
                c != a && d != b && !(c < a && a < d && d < b) && !(a < c && c < b && b < d)
            });
            if ok {
                cur.push((a, b));
                extend(n, (a, b + 1), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = vec![];
    extend(n, (0, 1), &mut vec![], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::{enumerate_p2, lr_rl_typing};
    use crate::partition::{Partition, SkewDiagram};
    use crate::regions::{components, project_pi, region_parity};

    #[test]
    fn construction_rejects_invalid() {
        assert!(ArcGraph::new(2, [(0, 2)]).is_err());
        assert!(ArcGraph::new(3, [(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(ArcGraph::new(4, [(0, 2), (1, 3)]).is_err());
        assert!(ArcGraph::new(4, [(0, 3), (1, 2)]).is_ok());
        assert!(ArcGraph::new(3, [(0, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn segment_examples() {
        let g = ArcGraph::new(0, []).unwrap();
        assert!(segments(&g).is_empty());
        let g = ArcGraph::new(2, [(0, 1)]).unwrap();
        let s = segments(&g);
        assert_eq!(s.len(), 1);
        assert!(!s[0].odd);
        let g = ArcGraph::new(1, []).unwrap();
        assert!(has_odd_segment(&g));
    }

    #[test]
    fn dual_examples() {
        // A single arc separates its gap from infinity.
        let g = ArcGraph::new(2, [(0, 1)]).unwrap();
        let d = dual_graph(&g);
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|s| s.vertices.len() == 1));
        assert!(lemma_a2_rhs(&g));
        // No vertices: only infinity.
        let g = ArcGraph::new(0, []).unwrap();
        let d = dual_graph(&g);
        assert_eq!(d.len(), 1);
        assert!(d[0].contains_infinity());
        // A single vertex fails the parity condition.
        let g = ArcGraph::new(1, []).unwrap();
        assert!(!lemma_a2_rhs(&g));
    }

    /// A chained example: arcs (0,1), (1,2), (3,4) on six vertices gives
    /// segments {0,1,2}, {3,4}, {5} and an odd segment.
    #[test]
    fn chains_count_as_single_segments() {
        let g = ArcGraph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let s = segments(&g);
        assert_eq!(
            s.iter().map(|x| x.vertices.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1, 2], vec![3, 4], vec![5]]
        );
        assert!(has_odd_segment(&g));
        assert!(!lemma_a2_rhs(&g));
    }

    /// No odd segment holds exactly when every segment runs from an L end
    /// to an R end or from an R end to an L end.
    #[test]
    fn end_label_lemma_exhaustive() {
        for n in 0..=10 {
            for g in all_graphs(n) {
                let lhs = !has_odd_segment(&g);
                let rhs = segments(&g).iter().all(|s| {
                    let first = g.label(*s.vertices.first().unwrap());
                    let last = g.label(*s.vertices.last().unwrap());
                    first != last
                });
                assert_eq!(lhs, rhs, "end-label lemma fails on {g:?}");
            }
        }
    }

    /// No odd segment holds exactly when the dual criterion does.
    #[test]
    fn dual_criterion_lemma_exhaustive() {
        let mut total = 0usize;
        for n in 0..=10 {
            for g in all_graphs(n) {
                total += 1;
                assert_eq!(
                    !has_odd_segment(&g),
                    lemma_a2_rhs(&g),
                    "dual criterion fails on {g:?}"
                );
            }
        }
        assert!(total > 1000, "the generator must cover many graphs");
    }

    /// The overlap graph carries the odd-region condition of the pair, and
    /// its dual criterion matches the component-typing conditions.
    #[test]
    fn overlap_graph_matches_regions() {
        let n = 2;
        let k = 2usize;
        let mut outer = Partition::all_in_box(2, 2);
        outer.retain(|p| !p.is_empty());
        for l in outer {
            for m in Partition::all_in_box(2, 2) {
                let Ok(d) = SkewDiagram::new(l.clone(), m) else {
                    continue;
                };
                for t in enumerate_p2(&d, n).unwrap() {
                    let h = project_pi(&t, n).unwrap();
                    if h.l() < k {
                        continue;
                    }
                    let g = build_overlap_graph(&h, k).unwrap();
                    let no_odd = regions(&h, k - 1, RegionClass::I)
                        .iter()
                        .all(|v| region_parity(&h, v) % 2 == 0);
                    assert_eq!(
                        !has_odd_segment(&g),
                        no_odd,
                        "overlap graph misses a region on {h:?}"
                    );
                    assert_eq!(no_odd, lemma_a2_rhs(&g), "dual criterion fails on {h:?}");
                    // The three typing conditions, stated on components.
                    let rhs = match lr_rl_typing(&h, k) {
                        Err(_) => false,
                        Ok(ty) => {
                            let regs = regions(&h, k, RegionClass::II);
                            components(&h, k, RegionClass::II).iter().all(|(c, _)| {
                                let types: BTreeSet<bool> = c
                                    .units
                                    .iter()
                                    .filter(|u| u.rho == 0)
                                    .map(|&u| ty.unit_is_lr(u))
                                    .collect();
                                types.len() <= 1
                                    && (!types.contains(&true)
                                        || regs.iter().any(|r| r.units == c.units))
                            })
                        }
                    };
                    assert_eq!(lemma_a2_rhs(&g), rhs, "typing conditions fail on {h:?}");
                }
            }
        }
    }
}
