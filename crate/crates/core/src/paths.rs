//! Lattice paths in the type-D strip, their labels and weights, tuples with
//! signs, intersection classification, the tail-swap involution, and the
//! signed / first sums.
//!
//! Horizontal positions are stored doubled (`pos2 = x - y`) so that every
//! geometric quantity stays an integer; `pos2` and the height `ht = x + y`
//! always have the same parity.

use crate::entry::Entry;
use crate::error::{Error, Result};
use crate::partition::SkewDiagram;
use crate::ring::{ZMonomial, ZPolynomial, ZVariable};

/// A lattice point, with height `x + y` and doubled position `x - y`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub fn ht(self) -> i32 {
        self.x + self.y
    }

    pub fn pos2(self) -> i32 {
        self.x - self.y
    }
}

/// A single path step.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Step {
    /// (x, y) -> (x+1, y): height +1, doubled position +1.
    NE,
    /// (x, y) -> (x, y+1): height +1, doubled position -1.
    NW,
    /// (x, y) -> (x+1, y-1): height unchanged, doubled position +2; only at
    /// height 0, in one contiguous even-length run.
    E,
}

impl Step {
    pub fn apply(self, p: Point) -> Point {
        match self {
            Step::NE => Point::new(p.x + 1, p.y),
            Step::NW => Point::new(p.x, p.y + 1),
            Step::E => Point::new(p.x + 1, p.y - 1),
        }
    }
}

/// A path from height `-n` to height `n`: `n` lower NE/NW steps, an optional
/// even E-run at height 0, then `n` upper NE/NW steps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DPath {
    start: Point,
    steps: Vec<Step>,
}

impl DPath {
    pub fn new(start: Point, steps: Vec<Step>, n: u8) -> Result<Self> {
        let n = n as i32;
        if start.ht() != -n {
            return Err(Error::Precondition(format!(
                "path must start at height {}, got {}",
                -n,
                start.ht()
            )));
        }
        let mut p = start;
        let mut e_run_seen = false;
        let mut in_e_run = false;
        let mut e_len = 0usize;
        for &s in &steps {
            match s {
                Step::E => {
                    if p.ht() != 0 {
                        return Err(Error::Precondition(
                            "E-step away from height 0".into(),
                        ));
                    }
                    if e_run_seen && !in_e_run {
                        return Err(Error::Precondition(
                            "E-steps must form one contiguous run".into(),
                        ));
                    }
                    e_run_seen = true;
                    in_e_run = true;
                    e_len += 1;
                }
                _ => in_e_run = false,
            }
            p = s.apply(p);
        }
        if e_len % 2 != 0 {
            return Err(Error::Precondition("E-run length must be even".into()));
        }
        if p.ht() != n {
            return Err(Error::Precondition(format!(
                "path must end at height {n}, got {}",
                p.ht()
            )));
        }
        Ok(DPath { start, steps })
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn end(&self) -> Point {
        self.steps.iter().fold(self.start, |p, &s| s.apply(p))
    }

    /// All visited lattice points, start to end (each visited exactly once:
    /// heights strictly increase off the E-run, and the E-run moves right).
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![self.start];
        let mut p = self.start;
        for &s in &self.steps {
            p = s.apply(p);
            out.push(p);
        }
        out
    }

    /// Doubled position of the leftmost height-0 point (the point where the
    /// path first reaches height 0; E-steps only move right afterwards).
    pub fn leftmost_h0_pos2(&self) -> i32 {
        self.points()
            .iter()
            .filter(|p| p.ht() == 0)
            .map(|p| p.pos2())
            .min()
            .expect("every path crosses height 0")
    }

    /// Doubled position of the rightmost height-0 point.
    pub fn rightmost_h0_pos2(&self) -> i32 {
        self.points()
            .iter()
            .filter(|p| p.ht() == 0)
            .map(|p| p.pos2())
            .max()
            .expect("every path crosses height 0")
    }

    /// Labels of the weighted steps (NE and E), in path order: the entry and
    /// the offset `x` encoding the parameter `a - 2x`.
    pub fn e_labels(&self, n: u8) -> Vec<(Entry, i32)> {
        let mut out = vec![];
        let mut p = self.start;
        let mut e_index = 0usize; // 1-based position within the E-run
        for &s in &self.steps {
            match s {
                Step::NE => {
                    let m = p.ht();
                    let entry = if m < 0 {
                        Entry::Unbarred((n as i32 + 1 + m) as u8)
                    } else {
                        Entry::Barred((n as i32 - m) as u8)
                    };
                    out.push((entry, p.x));
                }
                Step::E => {
                    e_index += 1;
                    let entry = if e_index % 2 == 0 {
                        Entry::Unbarred(n)
                    } else {
                        Entry::Barred(n)
                    };
                    out.push((entry, p.x));
                }
                Step::NW => {}
            }
            p = s.apply(p);
        }
        out
    }

    /// The weight monomial: product of `z_{label, a-2x}` over weighted steps.
    pub fn weight(&self, n: u8) -> ZMonomial {
        ZMonomial::from_vars(
            self.e_labels(n)
                .into_iter()
                .map(|(e, x)| ZVariable::new(e, x)),
        )
    }
}

/// All paths from `u` (height `-n`) to `v` (height `n`), in a deterministic
/// lexicographic order of their step sequences.
pub fn enumerate_paths(u: Point, v: Point, n: u8) -> Result<Vec<DPath>> {
    let ni = n as i32;
    if u.ht() != -ni || v.ht() != ni {
        return Err(Error::Precondition(format!(
            "endpoints must be at heights -{n} and {n}, got {} and {}",
            u.ht(),
            v.ht()
        )));
    }
    // Undoubled position change; s NE-steps and e E-steps satisfy
    // s + e = dpos + n with e even and 0 <= s <= 2n.
    let dpos = (v.pos2() - u.pos2()) / 2;
    let mut out = vec![];
    // One NE/NW choice per starting height -n..n-1 (2n slots); the E-run sits
    // at height 0 between slot n-1 and slot n.
    for mask in 0u32..1 << (2 * ni) {
        let s = mask.count_ones() as i32;
        let e = dpos + ni - s;
        if e < 0 || e % 2 != 0 {
            continue;
        }
        let mut steps = vec![];
        for slot in 0..2 * ni {
            if slot == ni {
                steps.extend(std::iter::repeat(Step::E).take(e as usize));
            }
            steps.push(if mask >> slot & 1 == 1 {
                Step::NE
            } else {
                Step::NW
            });
        }
        if ni == 0 {
            steps.extend(std::iter::repeat(Step::E).take(e as usize));
        }
        let p = DPath::new(u, steps, n)?;
        debug_assert_eq!(p.end().ht(), ni);
        if p.end() == v {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Sum of path weights over all paths `(k, -n-k) -> (k+r, n-k-r)`; this is
/// the path model of the coefficient `e_{r, a-2k}`.
pub fn path_sum_e(r: i64, k: i32, n: u8) -> ZPolynomial {
    if r < 0 {
        return ZPolynomial::zero();
    }
    let u = Point::new(k, -(n as i32) - k);
    let v = Point::new(k + r as i32, n as i32 - k - r as i32);
    let mut out = ZPolynomial::zero();
    for p in enumerate_paths(u, v, n).expect("endpoints at correct heights") {
        out.add_term(p.weight(n), 1);
    }
    out
}

/// How a pair of paths intersects.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairClass {
    Disjoint,
    /// Intersect only at height 0, and the undoubled leftmost height-0
    /// positions differ by an odd amount.
    Special,
    Ordinary,
}

pub fn classify_pair(p: &DPath, q: &DPath) -> PairClass {
    let qs: std::collections::HashSet<Point> = q.points().into_iter().collect();
    let common: Vec<Point> = p.points().into_iter().filter(|pt| qs.contains(pt)).collect();
    if common.is_empty() {
        return PairClass::Disjoint;
    }
    let only_h0 = common.iter().all(|pt| pt.ht() == 0);
    if only_h0 {
        let gap = (p.leftmost_h0_pos2() - q.leftmost_h0_pos2()) / 2;
        if gap.rem_euclid(2) == 1 {
            return PairClass::Special;
        }
    }
    PairClass::Ordinary
}

/// A tuple of paths `p_i: u_i -> v_{sigma(i)}` with its permutation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PathTuple {
    pub paths: Vec<DPath>,
    /// `sigma[i]` is the 0-based index of the target of `paths[i]`.
    pub sigma: Vec<usize>,
}

impl PathTuple {
    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.sigma.len()];
        let mut sign = 1i64;
        for i in 0..self.sigma.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.sigma[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn weight(&self, n: u8) -> ZMonomial {
        self.paths
            .iter()
            .fold(ZMonomial::one(), |acc, p| acc.mul(&p.weight(n)))
    }

    /// First lexicographic ordinarily intersecting pair `(i, j)`, `i < j`.
    pub fn first_ordinary_pair(&self) -> Option<(usize, usize)> {
        let l = self.paths.len();
        for i in 0..l {
            for j in i + 1..l {
                if classify_pair(&self.paths[i], &self.paths[j]) == PairClass::Ordinary {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// The canonical cut point of an ordinarily intersecting pair: the minimal
/// (height, position) common point of nonzero height if one exists, else the
/// leftmost height-0 common point.
///
/// Preferring nonzero height keeps the swap an involution (each path visits a
/// nonzero height exactly once, so the common set is unchanged by the swap)
/// and keeps E-runs even: a cut below (above) height 0 hands the whole E-run
/// of one path (the other) to a single output, while a height-0-only ordinary
/// intersection has an even position gap, so the merged run stays even.
fn swap_point(p: &DPath, q: &DPath) -> Point {
    let qs: std::collections::HashSet<Point> = q.points().into_iter().collect();
    let common: Vec<Point> = p.points().into_iter().filter(|pt| qs.contains(pt)).collect();
    common
        .iter()
        .copied()
        .filter(|pt| pt.ht() != 0)
        .min_by_key(|pt| (pt.ht(), pt.pos2()))
        .unwrap_or_else(|| {
            common
                .iter()
                .copied()
                .min_by_key(|pt| pt.pos2())
                .expect("ordinary pair intersects")
        })
}

/// Start point of the `i`-th path (1-based `i`), at height `-n`.
pub fn start_point(d: &SkewDiagram, n: u8, i: usize) -> Point {
    let mc = d.mu.conjugate();
    let mi = mc.part(i - 1) as i32;
    Point::new(mi + 1 - i as i32, -(n as i32) - mi - 1 + i as i32)
}

/// End point of the `i`-th column (1-based `i`), at height `n`.
pub fn end_point(d: &SkewDiagram, n: u8, i: usize) -> Point {
    let lc = d.lambda.conjugate();
    let li = lc.part(i - 1) as i32;
    Point::new(li + 1 - i as i32, n as i32 - li - 1 + i as i32)
}

/// Which tuples to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TupleMode {
    /// Every permutation, every path family.
    All,
    /// Only tuples with no ordinarily intersecting pair.
    NoOrdinary,
}

/// Enumerate path tuples for the shape.  The number of components is
/// `l = lambda_1`.
pub fn enumerate_tuples(d: &SkewDiagram, n: u8, mode: TupleMode) -> Result<Vec<PathTuple>> {
    let l = d.lambda.part(0) as usize;
    if l > 7 {
        return Err(Error::SizeGuard(format!(
            "tuple enumeration limited to 7 columns, got {l}"
        )));
    }
    let starts: Vec<Point> = (1..=l).map(|i| start_point(d, n, i)).collect();
    let ends: Vec<Point> = (1..=l).map(|i| end_point(d, n, i)).collect();
    // paths_to[i][t]: all paths u_i -> v_t.
    let mut paths_to = vec![vec![]; l];
    for i in 0..l {
        for t in 0..l {
            paths_to[i].push(enumerate_paths(starts[i], ends[t], n)?);
        }
    }
    let mut out = vec![];
    let mut sigma: Vec<usize> = vec![];
    let mut used = vec![false; l];
    let mut chosen: Vec<DPath> = vec![];
    fn rec(
        i: usize,
        l: usize,
        paths_to: &[Vec<Vec<DPath>>],
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        chosen: &mut Vec<DPath>,
        mode: TupleMode,
        out: &mut Vec<PathTuple>,
    ) {
        if i == l {
            out.push(PathTuple {
                paths: chosen.clone(),
                sigma: sigma.clone(),
            });
            return;
        }
        for t in 0..l {
            if used[t] {
                continue;
            }
            for p in &paths_to[i][t] {
                if mode == TupleMode::NoOrdinary
                    && chosen
                        .iter()
                        .any(|q| classify_pair(q, p) == PairClass::Ordinary)
                {
                    continue;
                }
                used[t] = true;
                sigma.push(t);
                chosen.push(p.clone());
                rec(i + 1, l, paths_to, sigma, used, chosen, mode, out);
                chosen.pop();
                sigma.pop();
                used[t] = false;
            }
        }
    }
    rec(
        0, l, &paths_to, &mut sigma, &mut used, &mut chosen, mode, &mut out,
    );
    Ok(out)
}

/// The tail-swap involution on tuples with an ordinary intersection: take the
/// first lexicographic ordinary pair, their common point of minimal height
/// then minimal position, and exchange the subpaths strictly after it
/// (together with the two targets).
pub fn iota1(t: &PathTuple) -> Result<PathTuple> {
    // Among all ordinarily intersecting pairs choose the one whose canonical
    // cut point is minimal (then lexicographic pair order); this choice is
    // stable under the swap itself, making the map an involution.
    let l = t.paths.len();
    let mut best: Option<(Point, usize, usize)> = None;
    for i in 0..l {
        for j in i + 1..l {
            if classify_pair(&t.paths[i], &t.paths[j]) != PairClass::Ordinary {
                continue;
            }
            let c = swap_point(&t.paths[i], &t.paths[j]);
            let key = (c, i, j);
            if best.map_or(true, |(bc, bi, bj)| {
                ((c.ht(), c.pos2()), i, j) < ((bc.ht(), bc.pos2()), bi, bj)
            }) {
                best = Some(key);
            }
        }
    }
    let (cut, i, j) = best
        .ok_or_else(|| Error::Precondition("tuple has no ordinary intersection".into()))?;
    let p = &t.paths[i];
    let q = &t.paths[j];
    let split = |path: &DPath| -> (Vec<Step>, Vec<Step>) {
        let pts = path.points();
        let idx = pts.iter().position(|&pt| pt == cut).expect("on the path");
        (path.steps[..idx].to_vec(), path.steps[idx..].to_vec())
    };
    let (p_head, p_tail) = split(p);
    let (q_head, q_tail) = split(q);
    let mut new_p = p_head;
    new_p.extend(q_tail);
    let mut new_q = q_head;
    new_q.extend(p_tail);
    // Re-validation catches any structural breakage (none occurs: the swap
    // point lies on both paths, and E-run parity is preserved for ordinary
    // intersections).
    let n = ((p.end().ht()) as i32) as u8;
    let mut paths = t.paths.clone();
    paths[i] = DPath::new(p.start(), new_p, n)?;
    paths[j] = DPath::new(q.start(), new_q, n)?;
    let mut sigma = t.sigma.clone();
    sigma.swap(i, j);
    Ok(PathTuple { paths, sigma })
}

/// The fully signed sum over all tuples (free ring; cancellation is real).
pub fn signed_total_sum(d: &SkewDiagram, n: u8) -> Result<ZPolynomial> {
    sum_over(d, n, TupleMode::All)
}

/// The first sum: tuples with no ordinarily intersecting pair.
pub fn first_sum(d: &SkewDiagram, n: u8) -> Result<ZPolynomial> {
    sum_over(d, n, TupleMode::NoOrdinary)
}

fn sum_over(d: &SkewDiagram, n: u8, mode: TupleMode) -> Result<ZPolynomial> {
    let mut out = ZPolynomial::zero();
    for t in enumerate_tuples(d, n, mode)? {
        out.add_term(t.weight(n), t.sign());
    }
    Ok(out)
}
