//! Lower/upper path profiles, the strip-unit calculus, connected regions,
//! the expansion/folding map on profiles and on path tuples, region parity,
//! and the second involution yielding the positive sum.
//!
//! All horizontal positions are doubled integers (`2 * position`), as in the
//! paths module.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::partition::SkewDiagram;
use crate::paths::{enumerate_tuples, DPath, PathTuple, Point, Step, TupleMode};
use crate::ring::ZPolynomial;

const INF: i64 = i64::MAX / 4;

/// A lower path: positions at heights `-n..0`.  `prof2[r]` is the doubled
/// position at height `-r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LowerPath {
    pub prof2: Vec<i32>,
}

/// An upper path: positions at heights `0..n`.  `prof2[r]` is the doubled
/// position at height `r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UpperPath {
    pub prof2: Vec<i32>,
}

fn steps_ok(prof2: &[i32]) -> bool {
    prof2.windows(2).all(|w| (w[0] - w[1]).abs() == 1)
}

impl LowerPath {
    pub fn new(prof2: Vec<i32>) -> Result<Self> {
        if !steps_ok(&prof2) {
            return Err(Error::Precondition(
                "profile entries must differ by 1 per height".into(),
            ));
        }
        Ok(LowerPath { prof2 })
    }

    /// Dual upper path: `alpha*(r) = alpha(-r) - 1` (doubled: `-2`).
    pub fn dual(&self) -> UpperPath {
        UpperPath {
            prof2: self.prof2.iter().map(|&p| p - 2).collect(),
        }
    }
}

impl UpperPath {
    pub fn new(prof2: Vec<i32>) -> Result<Self> {
        if !steps_ok(&prof2) {
            return Err(Error::Precondition(
                "profile entries must differ by 1 per height".into(),
            ));
        }
        Ok(UpperPath { prof2 })
    }

    /// Dual lower path: `beta*(-r) = beta(r) + 1` (doubled: `+2`).
    pub fn dual(&self) -> LowerPath {
        LowerPath {
            prof2: self.prof2.iter().map(|&p| p + 2).collect(),
        }
    }
}

/// A pair of `l` lower and `l` upper paths, nonintersecting within each
/// family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HPair {
    pub alphas: Vec<LowerPath>,
    pub betas: Vec<UpperPath>,
    pub n: u8,
}

impl HPair {
    pub fn new(alphas: Vec<LowerPath>, betas: Vec<UpperPath>, n: u8) -> Result<Self> {
        let h = HPair { alphas, betas, n };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n as usize;
        if self.alphas.len() != self.betas.len() {
            return Err(Error::Precondition("family size mismatch".into()));
        }
        for a in &self.alphas {
            if a.prof2.len() != n + 1 {
                return Err(Error::Precondition("lower profile length != n+1".into()));
            }
        }
        for b in &self.betas {
            if b.prof2.len() != n + 1 {
                return Err(Error::Precondition("upper profile length != n+1".into()));
            }
        }
        for i in 0..self.alphas.len() {
            for j in i + 1..self.alphas.len() {
                for r in 0..=n {
                    if self.alphas[i].prof2[r] <= self.alphas[j].prof2[r] {
                        return Err(Error::Precondition(format!(
                            "lower paths {} and {} intersect",
                            i + 1,
                            j + 1
                        )));
                    }
                    if self.betas[i].prof2[r] <= self.betas[j].prof2[r] {
                        return Err(Error::Precondition(format!(
                            "upper paths {} and {} intersect",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        self.alphas.len()
    }

    /// Doubled `alpha_i(-r)`, 1-based `i`; `+inf` for `i <= 0`, `-inf` for
    /// `i > l`.
    pub fn alpha2(&self, i: i64, r: usize) -> i64 {
        if i <= 0 {
            INF
        } else if i as usize > self.l() {
            -INF
        } else {
            self.alphas[i as usize - 1].prof2[r] as i64
        }
    }

    /// Doubled `alpha*_i(r)`.
    pub fn alpha_star2(&self, i: i64, r: usize) -> i64 {
        match self.alpha2(i, r) {
            v if v.abs() >= INF => v,
            v => v - 2,
        }
    }

    /// Doubled `beta_i(r)`.
    pub fn beta2(&self, i: i64, r: usize) -> i64 {
        if i <= 0 {
            INF
        } else if i as usize > self.l() {
            -INF
        } else {
            self.betas[i as usize - 1].prof2[r] as i64
        }
    }

    /// Doubled `beta*_i(-r)`.
    pub fn beta_star2(&self, i: i64, r: usize) -> i64 {
        match self.beta2(i, r) {
            v if v.abs() >= INF => v,
            v => v + 2,
        }
    }

    /// Membership in the set attached to the shape: boundary values at
    /// heights `-n` / `n` must match the conjugate partitions.
    pub fn matches_shape(&self, d: &SkewDiagram) -> bool {
        let n = self.n as usize;
        let l = d.lambda.part(0) as usize;
        if self.l() != l {
            return false;
        }
        let lc = d.lambda.conjugate();
        let mc = d.mu.conjugate();
        (1..=l).all(|i| {
            let a = self.n as i32 + 2 * (mc.part(i - 1) as i32 + 1 - i as i32);
            let b = -(self.n as i32) + 2 * (lc.part(i - 1) as i32 + 1 - i as i32);
            self.alphas[i - 1].prof2[n] == a && self.betas[i - 1].prof2[n] == b
        })
    }
}

/// The strip a unit lives in: `Plus` for heights `0..n`, `Minus` for
/// `-n..0`.  The strips are glued only along height 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// A lattice unit: a square (or boundary triangle) identified by the height
/// `rho` and doubled position `a2` of its left vertex, within one strip.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Unit {
    pub rho: i32,
    pub side: Side,
    pub a2: i32,
}

impl Unit {
    pub fn new(rho: i32, side: Side, a2: i32) -> Self {
        debug_assert!(match side {
            Side::Plus => rho >= 0,
            Side::Minus => rho <= 0,
        });
        debug_assert_eq!(a2.rem_euclid(2), rho.rem_euclid(2));
        Unit { rho, side, a2 }
    }

    /// Image under the dual map between the strips (position `+1` going from
    /// the plus strip to the minus strip, `-1` back; an involution).
    pub fn dual(self) -> Unit {
        match self.side {
            Side::Plus => Unit::new(-self.rho, Side::Minus, self.a2 + 2),
            Side::Minus => Unit::new(-self.rho, Side::Plus, self.a2 - 2),
        }
    }
}

/// Adjacency: the units share a left or right vertex.  Within a strip this
/// reduces to the first and third clauses; across the strips only height-0
/// units are glued (a unit and its dual share their slanted edge).
pub fn unit_adjacent(u: Unit, v: Unit) -> bool {
    if u.side == v.side {
        (u.rho == v.rho && (u.a2 - v.a2).abs() == 2)
            || ((u.rho - v.rho).abs() == 1 && (u.a2 - v.a2).abs() == 1)
    } else {
        // The strips are glued along height 0 through the dual map (which
        // shifts positions by one unit), not by raw coordinates: a plus unit
        // meets the minus units whose duals would touch it.
        let (p, m) = if u.side == Side::Plus { (u, v) } else { (v, u) };
        p.rho == 0 && m.rho == 0 && (m.a2 - p.a2 - 2).abs() <= 2
    }
}

/// Classification of a unit relative to an `HPair` and a gap parameter `k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnitClass {
    I,
    II { boundary: bool },
    Neither,
}

/// Test the class-defining inequalities for the unit.
pub fn unit_class(h: &HPair, u: Unit, k: usize) -> UnitClass {
    let l = h.l() as i64;
    let r = u.rho.unsigned_abs() as usize;
    let a2 = u.a2 as i64;
    let k = k as i64;
    let mut is_i = false;
    let mut is_ii = false;
    let mut ii_boundary = false;
    for i in 0..=l {
        let (lo_i, hi_i, lo_ii, hi_ii) = match u.side {
            Side::Plus => (
                h.alpha_star2(i, r),
                h.beta2(i + k, r),
                h.beta2(i + k, r),
                h.alpha_star2(i, r),
            ),
            Side::Minus => (
                h.alpha2(i, r),
                h.beta_star2(i + k, r),
                h.beta_star2(i + k, r),
                h.alpha2(i, r),
            ),
        };
        if lo_i <= a2 && a2 + 2 <= hi_i {
            is_i = true;
        }
        if lo_ii <= a2 && a2 + 2 <= hi_ii {
            is_ii = true;
            if i == 0 || i >= l - k + 1 || r == h.n as usize {
                ii_boundary = true;
            }
        }
    }
    match (is_i, is_ii) {
        (true, _) => UnitClass::I,
        (false, true) => UnitClass::II {
            boundary: ii_boundary,
        },
        _ => UnitClass::Neither,
    }
}

/// Which class of regions to extract.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegionClass {
    I,
    II,
}

/// A connected region of class-`klass` units with gap parameter `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    pub units: BTreeSet<Unit>,
    pub k: usize,
    pub klass: RegionClass,
}

impl Region {
    pub fn contains(&self, u: Unit) -> bool {
        self.units.contains(&u)
    }

    /// Greatest doubled height-0 position of the region (the right vertex of
    /// its rightmost height-0 unit).
    pub fn max_h0_pos2(&self) -> i32 {
        self.units
            .iter()
            .filter(|u| u.rho == 0)
            .map(|u| u.a2 + 2)
            .max()
            .expect("regions contain a height-0 unit")
    }

    /// Closure under the unit dual map.
    pub fn is_self_dual(&self) -> bool {
        self.units.iter().all(|u| self.units.contains(&u.dual()))
    }
}

/// All units of the given class within the finite search window around the
/// profiles.
fn window_units(h: &HPair, k: usize, klass: RegionClass) -> Vec<(Unit, bool)> {
    let n = h.n as i32;
    let mut lo = i32::MAX;
    let mut hi = i32::MIN;
    for a in &h.alphas {
        for &p in &a.prof2 {
            lo = lo.min(p - 2);
            hi = hi.max(p + 2);
        }
    }
    for b in &h.betas {
        for &p in &b.prof2 {
            lo = lo.min(p - 2);
            hi = hi.max(p + 2);
        }
    }
    let mut out = vec![];
    if lo > hi {
        return out;
    }
    for rho in -n..=n {
        let sides: &[Side] = if rho > 0 {
            &[Side::Plus]
        } else if rho < 0 {
            &[Side::Minus]
        } else {
            &[Side::Plus, Side::Minus]
        };
        for &side in sides {
            let mut a2 = lo + (rho.rem_euclid(2) - lo.rem_euclid(2)).rem_euclid(2);
            while a2 <= hi {
                let u = Unit::new(rho, side, a2);
                match (unit_class(h, u, k), klass) {
                    (UnitClass::I, RegionClass::I) => out.push((u, false)),
                    (UnitClass::II { boundary }, RegionClass::II) => out.push((u, boundary)),
                    _ => {}
                }
                a2 += 2;
            }
        }
    }
    out
}

/// Connected components of class-`klass` units under adjacency, before the
/// region filters; the flag marks components containing a boundary unit.
pub fn components(h: &HPair, k: usize, klass: RegionClass) -> Vec<(Region, bool)> {
    let units = window_units(h, k, klass);
    let m = units.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            if unit_adjacent(units[i].0, units[j].0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut comps: BTreeMap<usize, (BTreeSet<Unit>, bool)> = BTreeMap::new();
    for i in 0..m {
        let root = find(&mut parent, i);
        let e = comps.entry(root).or_default();
        e.0.insert(units[i].0);
        e.1 |= units[i].1;
    }
    comps
        .into_values()
        .map(|(set, boundary)| {
            (
                Region {
                    units: set,
                    k,
                    klass,
                },
                boundary,
            )
        })
        .collect()
}

/// Connected regions of the class: components under adjacency, filtered by
/// the height-0 requirement (and, for the II side, absence of boundary
/// units).
pub fn regions(h: &HPair, k: usize, klass: RegionClass) -> Vec<Region> {
    components(h, k, klass)
        .into_iter()
        .filter(|(r, boundary)| {
            r.units.iter().any(|u| u.rho == 0) && (klass == RegionClass::I || !*boundary)
        })
        .map(|(r, _)| r)
        .collect()
}

/// Does the strip vertex at (signed height `h0`, doubled position `p2`)
/// belong to the closed union of the region's units on the given side?
fn vertex_in_region(v: &Region, side: Side, h0: i32, p2: i32) -> bool {
    // Units having (h0, p2) as a vertex: left at (h0, p2), right at
    // (h0, p2 - 2), and top/bottom at (h0 -+ 1, p2 - 1).
    let candidates = [
        (h0, p2),
        (h0, p2 - 2),
        (h0 - 1, p2 - 1),
        (h0 + 1, p2 - 1),
    ];
    candidates.iter().any(|&(rho, a2)| {
        let ok_side = match side {
            Side::Plus => rho >= 0,
            Side::Minus => rho <= 0,
        };
        ok_side && v.contains(Unit { rho, side, a2 })
    })
}

/// The expansion/folding on profiles: replace `alpha_i` by `beta*_{i+k}` and
/// `beta_i` by `alpha*_{i-k}` on every vertex inside the region.
pub fn epsilon_k(h: &HPair, v: &Region, k: usize) -> Result<HPair> {
    let n = h.n as usize;
    let l = h.l();
    let mut alphas = h.alphas.clone();
    let mut betas = h.betas.clone();
    for i in 1..=l {
        for r in 0..=n {
            if vertex_in_region(v, Side::Minus, -(r as i32), h.alphas[i - 1].prof2[r]) {
                let rep = h.beta_star2(i as i64 + k as i64, r);
                if rep.abs() >= INF {
                    return Err(Error::Precondition(
                        "replacement profile undefined inside region".into(),
                    ));
                }
                alphas[i - 1].prof2[r] = rep as i32;
            }
            if vertex_in_region(v, Side::Plus, r as i32, h.betas[i - 1].prof2[r]) {
                let rep = h.alpha_star2(i as i64 - k as i64, r);
                if rep.abs() >= INF {
                    return Err(Error::Precondition(
                        "replacement profile undefined inside region".into(),
                    ));
                }
                betas[i - 1].prof2[r] = rep as i32;
            }
        }
    }
    for a in &alphas {
        if !steps_ok(&a.prof2) {
            return Err(Error::Precondition("expansion broke a lower path".into()));
        }
    }
    for b in &betas {
        if !steps_ok(&b.prof2) {
            return Err(Error::Precondition("expansion broke an upper path".into()));
        }
    }
    HPair::new(alphas, betas, h.n)
}

/// The height-0 gap statistic of the pair `(alpha_i, beta_{i+k})`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OverlapHole {
    /// `alpha_i(0) - beta_{i+k}(0)` (undoubled).
    pub gap: i64,
}

impl OverlapHole {
    pub fn is_overlap(self) -> bool {
        self.gap <= 0
    }

    pub fn is_even(self) -> bool {
        self.gap.rem_euclid(2) == 0
    }
}

pub fn overlap_hole(h: &HPair, i: usize, k: usize) -> Result<OverlapHole> {
    if i < 1 || i + k > h.l() {
        return Err(Error::Precondition(format!(
            "pair index {i} with gap {k} out of range for {} paths",
            h.l()
        )));
    }
    let gap = (h.alpha2(i as i64, 0) - h.beta2((i + k) as i64, 0)) / 2;
    Ok(OverlapHole { gap })
}

/// `n(V)`: the number of even `k`-overlaps (I-side) or even `k`-holes
/// (II-side) whose height-0 strip meets the region.
pub fn region_parity(h: &HPair, v: &Region) -> usize {
    let mut count = 0;
    for i in 1..=h.l().saturating_sub(v.k) {
        let oh = overlap_hole(h, i, v.k).expect("index in range");
        if !oh.is_even() {
            continue;
        }
        let hit = if v.klass == RegionClass::I {
            oh.is_overlap()
                && v.contains(Unit {
                    rho: 0,
                    side: Side::Plus,
                    a2: h.alpha2(i as i64, 0) as i32 - 2,
                })
        } else {
            !oh.is_overlap()
                && v.contains(Unit {
                    rho: 0,
                    side: Side::Plus,
                    a2: h.beta2((i + v.k) as i64, 0) as i32,
                })
        };
        if hit {
            count += 1;
        }
    }
    count
}

/// Remove the E-steps from every path: lower profiles keyed by start order,
/// upper profiles re-indexed so that `beta_i` is the upper part ending at the
/// `i`-th endpoint.
pub fn project_pi(t: &PathTuple, n: u8) -> Result<HPair> {
    let l = t.paths.len();
    let nn = n as usize;
    let mut alphas = vec![];
    let mut betas: Vec<Option<UpperPath>> = vec![None; l];
    for (idx, p) in t.paths.iter().enumerate() {
        let pts = p.points();
        let mut lower = vec![0i32; nn + 1];
        let mut upper = vec![0i32; nn + 1];
        // Only height 0 is visited more than once; there the leftmost point
        // is the lower endpoint and the rightmost the upper one.
        for r in 0..=nn {
            let hl = -(r as i32);
            lower[r] = pts
                .iter()
                .filter(|pt| pt.ht() == hl)
                .map(|pt| pt.pos2())
                .min()
                .expect("path spans all heights");
            let hu = r as i32;
            upper[r] = pts
                .iter()
                .filter(|pt| pt.ht() == hu)
                .map(|pt| pt.pos2())
                .max()
                .expect("path spans all heights");
        }
        alphas.push(LowerPath::new(lower)?);
        betas[t.sigma[idx]] = Some(UpperPath::new(upper)?);
    }
    let betas: Vec<UpperPath> = betas
        .into_iter()
        .map(|b| b.expect("sigma is a permutation"))
        .collect();
    HPair::new(alphas, betas, n)
}

/// Rebuild the unique path tuple with these profiles: pair each lower
/// height-0 endpoint with an upper one of the same position parity by
/// descending position, and join them with an E-run.
pub fn complete(h: &HPair) -> Result<PathTuple> {
    let l = h.l();
    // Indices by parity class of the doubled height-0 position mod 4
    // (equivalently the undoubled position mod 2).
    let mut sigma = vec![usize::MAX; l];
    for parity in 0..2 {
        let mut lows: Vec<usize> = (0..l)
            .filter(|&i| h.alphas[i].prof2[0].rem_euclid(4) == 2 * parity)
            .collect();
        let mut ups: Vec<usize> = (0..l)
            .filter(|&j| h.betas[j].prof2[0].rem_euclid(4) == 2 * parity)
            .collect();
        if lows.len() != ups.len() {
            return Err(Error::Precondition(
                "height-0 endpoint parity classes do not match".into(),
            ));
        }
        lows.sort_by_key(|&i| -h.alphas[i].prof2[0]);
        ups.sort_by_key(|&j| -h.betas[j].prof2[0]);
        for (&i, &j) in lows.iter().zip(&ups) {
            if h.betas[j].prof2[0] < h.alphas[i].prof2[0] {
                return Err(Error::Precondition(
                    "negative E-run length in reconstruction".into(),
                ));
            }
            sigma[i] = j;
        }
    }
    assemble(h, sigma)
}

/// Join `alpha_i` to `beta_{sigma[i]}` with an E-run for every `i`, producing
/// the path tuple with the given pairing.
pub fn assemble(h: &HPair, sigma: Vec<usize>) -> Result<PathTuple> {
    let l = h.l();
    let n = h.n;
    let mut paths = vec![];
    for i in 0..l {
        let j = sigma[i];
        let a = &h.alphas[i].prof2;
        let b = &h.betas[j].prof2;
        if b[0] < a[0] {
            return Err(Error::Precondition(
                "negative E-run length in reconstruction".into(),
            ));
        }
        let start = Point::new((-(n as i32) + a[n as usize]) / 2, (-(n as i32) - a[n as usize]) / 2);
        let mut steps = vec![];
        for r in (1..=n as usize).rev() {
            steps.push(if a[r - 1] > a[r] { Step::NE } else { Step::NW });
        }
        let e_len = (b[0] - a[0]) / 2;
        steps.extend(std::iter::repeat(Step::E).take(e_len as usize));
        for r in 1..=n as usize {
            steps.push(if b[r] > b[r - 1] { Step::NE } else { Step::NW });
        }
        paths.push(DPath::new(start, steps, n)?);
    }
    Ok(PathTuple { paths, sigma })
}

/// The path-level expansion/folding: apply `epsilon_k` (k = 1) to the
/// profiles and rebuild the unique completion.
pub fn epsilon_tuple(t: &PathTuple, v: &Region) -> Result<PathTuple> {
    let h = project_pi(t, infer_n(t))?;
    let h2 = epsilon_k(&h, v, v.k)?;
    complete(&h2)
}

fn infer_n(t: &PathTuple) -> u8 {
    t.paths[0].end().ht() as u8
}

/// All odd (parity-odd) I- or II-regions of the tuple, with `k = 1`.
pub fn odd_regions(t: &PathTuple, n: u8) -> Result<Vec<Region>> {
    let h = project_pi(t, n)?;
    let mut out = vec![];
    for klass in [RegionClass::I, RegionClass::II] {
        for v in regions(&h, 1, klass) {
            if region_parity(&h, &v) % 2 == 1 {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// The second involution: expansion/folding at the odd region with the
/// greatest height-0 position.
pub fn iota2(t: &PathTuple, n: u8) -> Result<PathTuple> {
    let odd = odd_regions(t, n)?;
    let v = odd
        .into_iter()
        .max_by_key(|v| v.max_h0_pos2())
        .ok_or_else(|| Error::Precondition("tuple has no odd region".into()))?;
    epsilon_tuple(t, &v)
}

/// Membership in the positive-sum index set: no ordinary intersection and no
/// odd region.
pub fn p2_membership(t: &PathTuple, n: u8) -> Result<bool> {
    if t.first_ordinary_pair().is_some() {
        return Ok(false);
    }
    Ok(odd_regions(t, n)?.is_empty())
}

/// The positive sum over the second index set; requires the positivity
/// condition on the shape.
pub fn positive_sum_p2(d: &SkewDiagram, n: u8) -> Result<ZPolynomial> {
    if !d.positivity_condition(n) {
        return Err(Error::Precondition(format!(
            "shape {d} violates the positivity condition for n = {n}"
        )));
    }
    let mut out = ZPolynomial::zero();
    for t in enumerate_tuples(d, n, TupleMode::NoOrdinary)? {
        if p2_membership(&t, n)? {
            debug_assert_eq!(t.sign(), 1);
            out.add_term(t.weight(n), 1);
        }
    }
    Ok(out)
}
