//! The staged folding bijection carrying the positive path sum onto the
//! non-crossing path family.
//!
//! The pipeline works on profile pairs `(alpha; beta)`: statistics `s`, `m_t`
//! and `m_inf` define a tower of membership conditions; each stage folds the
//! LR-typed regions at gap `2^t`, and the two ends of the tower are rebuilt
//! into path tuples by explicit pairings.

use crate::error::{Error, Result};
use crate::partition::SkewDiagram;
use crate::paths::{
    classify_pair, end_point, enumerate_paths, start_point, PairClass, PathTuple,
};
use crate::regions::{
    assemble, epsilon_k, overlap_hole, project_pi, region_parity, regions, HPair, Region,
    RegionClass, Side, Unit,
};
use crate::ring::ZPolynomial;

/// Minimal `t` with `2^t > l`.
pub fn t0(l: usize) -> u32 {
    let mut t = 1;
    while (1usize << t) <= l {
        t += 1;
    }
    t
}

/// Is `(alpha_i, beta_{i+k})` an even overlap?  Out-of-range pairs are not.
fn even_overlap(h: &HPair, i: i64, k: usize) -> bool {
    if i < 1 || i + k as i64 > h.l() as i64 {
        return false;
    }
    let oh = overlap_hole(h, i as usize, k).expect("index in range");
    oh.is_overlap() && oh.is_even()
}

/// Is `(alpha_i, beta_{i+k})` an even hole?  Out-of-range pairs are not.
fn even_hole(h: &HPair, i: i64, k: usize) -> bool {
    if i < 1 || i + k as i64 > h.l() as i64 {
        return false;
    }
    let oh = overlap_hole(h, i as usize, k).expect("index in range");
    !oh.is_overlap() && oh.is_even()
}

/// `s(alpha_i) = alpha_i(0) - beta_1(0) + i - 1` (undoubled positions).
pub fn s_alpha(h: &HPair, i: usize) -> i64 {
    (h.alpha2(i as i64, 0) - h.beta2(1, 0)) / 2 + i as i64 - 1
}

/// `s(beta_i) = beta_i(0) - beta_1(0) + i - 1`.
pub fn s_beta(h: &HPair, i: usize) -> i64 {
    (h.beta2(i as i64, 0) - h.beta2(1, 0)) / 2 + i as i64 - 1
}

/// `m_t(alpha_i)`: even `(2^t - 1)`-overlaps `(alpha_j, beta_{j + 2^t - 1})`
/// with `j <= i`, plus even 1-holes `(alpha_j, beta_{j+1})` with `j < i`.
pub fn m_t_alpha(h: &HPair, i: usize, t: u32) -> i64 {
    let k = (1usize << t) - 1;
    let mut m = 0;
    for j in 1..=i as i64 {
        if even_overlap(h, j, k) {
            m += 1;
        }
        if j < i as i64 && even_hole(h, j, 1) {
            m += 1;
        }
    }
    m
}

/// `m_t(beta_i)`: even `(2^t - 1)`-overlaps `(alpha_{j - 2^t + 1}, beta_j)`
/// with `j < i`, plus even 1-holes `(alpha_{j-1}, beta_j)` with `j <= i`.
pub fn m_t_beta(h: &HPair, i: usize, t: u32) -> i64 {
    let k = (1usize << t) - 1;
    let mut m = 0;
    for j in 1..=i as i64 {
        if j < i as i64 && even_overlap(h, j - k as i64, k) {
            m += 1;
        }
        if even_hole(h, j - 1, 1) {
            m += 1;
        }
    }
    m
}

/// `m_inf(alpha_i) = m_inf(beta_i)`: even 1-holes `(alpha_{j-1}, beta_j)`
/// with `j <= i`.
pub fn m_inf(h: &HPair, i: usize) -> i64 {
    (1..=i as i64).filter(|&j| even_hole(h, j - 1, 1)).count() as i64
}

/// The seven membership conditions at stage `t`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QConditions {
    /// `alpha_i(0) <= beta_i(0)` for all `i`.
    pub c1: bool,
    /// No odd II-region at gap 1.
    pub c2: bool,
    /// No odd I-region at gap `2^t - 1`.
    pub c3: bool,
    /// No `2^t`-overlap.
    pub c4: bool,
    /// For `t >= 2`: at least one `2^{t-1}`-overlap.
    pub c5: bool,
    /// `s ≡ m_t` (mod 2) on every lower and upper path.
    pub c6: bool,
    /// At least one even `(2^t - 1)`-overlap.
    pub c7: bool,
}

impl QConditions {
    /// Membership in the stage-`t` family (conditions 1-6).
    pub fn q(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4 && self.c5 && self.c6
    }

    /// Membership in the refined stage-`t` family (conditions 1-7).
    pub fn q_hat(&self) -> bool {
        self.q() && self.c7
    }
}

/// Evaluate the seven stage-`t` conditions on a profile pair.
pub fn q_conditions(h: &HPair, t: u32) -> QConditions {
    let l = h.l();
    let k = (1usize << t) - 1;
    let c1 = (1..=l as i64).all(|i| h.alpha2(i, 0) <= h.beta2(i, 0));
    let c2 = regions(h, 1, RegionClass::II)
        .iter()
        .all(|v| region_parity(h, v) % 2 == 0);
    let c3 = regions(h, k, RegionClass::I)
        .iter()
        .all(|v| region_parity(h, v) % 2 == 0);
    let c4 = !(1..=l as i64).any(|i| {
        i + k as i64 + 1 <= l as i64
            && overlap_hole(h, i as usize, k + 1)
                .expect("index in range")
                .is_overlap()
    });
    let c5 = t < 2
        || (1..=l as i64).any(|i| {
            let k5 = 1usize << (t - 1);
            i + k5 as i64 <= l as i64
                && overlap_hole(h, i as usize, k5)
                    .expect("index in range")
                    .is_overlap()
        });
    let c6 = (1..=l).all(|i| {
        (s_alpha(h, i) - m_t_alpha(h, i, t)) % 2 == 0
            && (s_beta(h, i) - m_t_beta(h, i, t)) % 2 == 0
    });
    let c7 = (1..=l as i64).any(|i| even_overlap(h, i, k));
    QConditions {
        c1,
        c2,
        c3,
        c4,
        c5,
        c6,
        c7,
    }
}

/// Alternating type of an even `(k-1)`-overlap, right to left.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OverlapType {
    R,
    L,
}

/// The typing data at gap `k`: the even `(k-1)`-overlaps in index order with
/// their alternating types, and enough geometry to type height-0 units.
#[derive(Clone, Debug)]
pub struct Typing {
    pub k: usize,
    /// `(i, type)` for each even `(k-1)`-overlap `(alpha_i, beta_{i+k-1})`,
    /// ascending in `i` (descending in position).
    pub overlaps: Vec<(usize, OverlapType)>,
    /// Doubled height-0 position of `alpha_i` for each listed overlap.
    alpha2_at: Vec<i64>,
}

impl Typing {
    /// Is the height-0 unit of LR type?  A unit is LR-typed exactly when the
    /// number of even `(k-1)`-overlaps strictly to its right is odd; a unit
    /// on the lower strip carries the type of the unit it is dual to.
    pub fn unit_is_lr(&self, u: Unit) -> bool {
        debug_assert_eq!(u.rho, 0);
        let a2 = match u.side {
            Side::Plus => u.a2,
            Side::Minus => u.a2 - 2,
        } as i64;
        let right = self
            .alpha2_at
            .iter()
            .filter(|&&p| p >= a2 + 2)
            .count();
        right % 2 == 1
    }
}

/// Type the even `(k-1)`-overlaps (alternately R, L from the right, i.e. in
/// ascending index order) and, through them, the height-0 units.  Errors if
/// the overlap count is odd.
pub fn lr_rl_typing(h: &HPair, k: usize) -> Result<Typing> {
    let mut overlaps = vec![];
    let mut alpha2_at = vec![];
    for i in 1..=h.l() as i64 {
        if even_overlap(h, i, k - 1) {
            let ty = if overlaps.len() % 2 == 0 {
                OverlapType::R
            } else {
                OverlapType::L
            };
            overlaps.push((i as usize, ty));
            alpha2_at.push(h.alpha2(i, 0));
        }
    }
    if overlaps.len() % 2 != 0 {
        return Err(Error::Precondition(format!(
            "odd number ({}) of even {}-overlaps",
            overlaps.len(),
            k - 1
        )));
    }
    Ok(Typing {
        k,
        overlaps,
        alpha2_at,
    })
}

/// Is the region LR-typed?  All its height-0 units must agree.
pub fn region_is_lr(typing: &Typing, v: &Region) -> bool {
    let types: Vec<bool> = v
        .units
        .iter()
        .filter(|u| u.rho == 0)
        .map(|&u| typing.unit_is_lr(u))
        .collect();
    debug_assert!(
        types.windows(2).all(|w| w[0] == w[1]),
        "height-0 units of a region must share a type"
    );
    types.first().copied().expect("regions have height-0 units")
}

/// Fold the given disjoint regions right-to-left at gap `k`.
fn fold_all(h: &HPair, mut vs: Vec<Region>, k: usize) -> Result<HPair> {
    vs.sort_by_key(|v| std::cmp::Reverse(v.max_h0_pos2()));
    let mut cur = h.clone();
    for v in &vs {
        cur = epsilon_k(&cur, v, k)?;
    }
    Ok(cur)
}

/// One stage of the tower: fold every LR-typed II-region at gap `2^t`.
/// Requires full stage-`t` membership (conditions 1-7).
pub fn phi_t(h: &HPair, t: u32) -> Result<HPair> {
    if !q_conditions(h, t).q_hat() {
        return Err(Error::Precondition(format!(
            "profile pair is not in the refined stage-{t} family"
        )));
    }
    let k = 1usize << t;
    let typing = lr_rl_typing(h, k)?;
    let vs: Vec<Region> = regions(h, k, RegionClass::II)
        .into_iter()
        .filter(|v| region_is_lr(&typing, v))
        .collect();
    fold_all(h, vs, k)
}

/// Inverse stage: expand every I-region at gap `2^t`.  Requires stage-`t+1`
/// membership (conditions 1-6).
pub fn phi_t_inv(h: &HPair, t: u32) -> Result<HPair> {
    if !q_conditions(h, t + 1).q() {
        return Err(Error::Precondition(format!(
            "profile pair is not in the stage-{} family",
            t + 1
        )));
    }
    let k = 1usize << t;
    let vs = regions(h, k, RegionClass::I);
    fold_all(h, vs, k)
}

/// Rebuild the path tuple of a stage-1 profile pair by the three-step
/// pairing: transposed pairs across even 1-overlaps first, then straight
/// pairs across even gaps, then minimal back-pairs.
pub fn pi_inv_q1(h: &HPair) -> Result<PathTuple> {
    if !q_conditions(h, 1).q() {
        return Err(Error::Precondition(
            "profile pair is not in the stage-1 family".into(),
        ));
    }
    let l = h.l();
    let mut sigma = vec![usize::MAX; l];
    let mut beta_used = vec![false; l];
    // Step 1: even 1-overlaps become transposed pairs.
    for i in 1..l {
        if even_overlap(h, i as i64, 1) {
            sigma[i - 1] = i;
            beta_used[i] = true;
        }
    }
    // Step 2: remaining indices with an even straight gap pair up in place.
    for i in 1..=l {
        if sigma[i - 1] != usize::MAX || beta_used[i - 1] {
            continue;
        }
        let gap = (h.alpha2(i as i64, 0) - h.beta2(i as i64, 0)) / 2;
        if gap.rem_euclid(2) == 0 {
            sigma[i - 1] = i - 1;
            beta_used[i - 1] = true;
        }
    }
    // Step 3: each leftover lower path pairs with the nearest free upper
    // path to its left that lies weakly right of it.
    for i in 1..=l {
        if sigma[i - 1] != usize::MAX {
            continue;
        }
        let j = (1..i)
            .rev()
            .find(|&j| !beta_used[j - 1] && h.alpha2(i as i64, 0) <= h.beta2(j as i64, 0))
            .ok_or_else(|| {
                Error::Precondition(format!("pairing failed for lower path {i}"))
            })?;
        let gap = (h.alpha2(i as i64, 0) - h.beta2(j as i64, 0)) / 2;
        if gap.rem_euclid(2) != 0 {
            return Err(Error::Precondition(format!(
                "odd back-pair gap for lower path {i}"
            )));
        }
        sigma[i - 1] = j - 1;
        beta_used[j - 1] = true;
    }
    assemble(h, sigma)
}

/// Membership at the far end of the tower: straight gaps, no odd II-region,
/// and `s ≡ m_inf` everywhere.
pub fn r_membership(h: &HPair) -> bool {
    let l = h.l();
    let c1 = (1..=l as i64).all(|i| h.alpha2(i, 0) <= h.beta2(i, 0));
    let c2 = regions(h, 1, RegionClass::II)
        .iter()
        .all(|v| region_parity(h, v) % 2 == 0);
    let c6p = (1..=l).all(|i| {
        let s = s_alpha(h, i);
        let m = m_inf(h, i);
        (s - s_beta(h, i)) % 2 == 0 && (s - m) % 2 == 0
    });
    c1 && c2 && c6p
}

/// Rebuild the path tuple at the far end of the tower: identity pairing.
pub fn pi_inv_r(h: &HPair) -> Result<PathTuple> {
    if !r_membership(h) {
        return Err(Error::Precondition(
            "profile pair is not in the tower's final family".into(),
        ));
    }
    assemble(h, (0..h.l()).collect())
}

/// The full folding map: project, fold stage by stage while the refined
/// membership holds, and rebuild with the identity pairing.
pub fn phi(p: &PathTuple, n: u8) -> Result<PathTuple> {
    let mut h = project_pi(p, n)?;
    let l = h.l();
    if l == 0 {
        return Ok(p.clone());
    }
    if !q_conditions(&h, 1).q() {
        return Err(Error::Precondition(
            "tuple is not in the positive-sum family".into(),
        ));
    }
    let mut t = 1;
    while t < t0(l) && q_conditions(&h, t).q_hat() {
        h = phi_t(&h, t)?;
        t += 1;
    }
    let qc = q_conditions(&h, t);
    debug_assert!(qc.q() && !qc.c7, "tower must end in a stage family minus its refinement");
    debug_assert_eq!(
        (1..=t0(l))
            .filter(|&s| {
                let qs = q_conditions(&h, s);
                qs.q() && !qs.q_hat()
            })
            .count(),
        1,
        "result must lie in exactly one stratum"
    );
    debug_assert!(r_membership(&h));
    pi_inv_r(&h)
}

/// Membership in the non-crossing family: identity pairing, no ordinarily
/// intersecting adjacent pair, no odd II-region.
pub fn p_membership(t: &PathTuple, n: u8) -> Result<bool> {
    if t.sigma.iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::Precondition(
            "membership requires an identity pairing".into(),
        ));
    }
    for w in t.paths.windows(2) {
        if classify_pair(&w[0], &w[1]) == PairClass::Ordinary {
            return Ok(false);
        }
    }
    let h = project_pi(t, n)?;
    Ok(regions(&h, 1, RegionClass::II)
        .iter()
        .all(|v| region_parity(&h, v) % 2 == 0))
}

/// Indices `i` of the even `k`-overlaps `(alpha_i, beta_{i+k})`, ascending.
pub fn overlap_indices(h: &HPair, k: usize) -> Vec<usize> {
    (1..=h.l() as i64)
        .filter(|&i| even_overlap(h, i, k))
        .map(|i| i as usize)
        .collect()
}

/// All members of the positive-sum family for the shape: tuples with the
/// identity pairing, no ordinary intersection, and no odd region at gap one.
pub fn enumerate_p2(d: &SkewDiagram, n: u8) -> Result<Vec<PathTuple>> {
    let mut out = crate::paths::enumerate_tuples(d, n, crate::paths::TupleMode::NoOrdinary)?;
    let mut kept = vec![];
    for t in out.drain(..) {
        if crate::regions::p2_membership(&t, n)? {
            kept.push(t);
        }
    }
    Ok(kept)
}

/// All members of the non-crossing family for the shape.
pub fn enumerate_p(d: &SkewDiagram, n: u8) -> Result<Vec<PathTuple>> {
    let l = d.num_cols();
    if l > 7 {
        return Err(Error::SizeGuard(format!(
            "shape has {l} columns; enumeration is limited to 7"
        )));
    }
    let mut per_col = vec![];
    for i in 1..=l as usize {
        per_col.push(enumerate_paths(
            start_point(d, n, i),
            end_point(d, n, i),
            n,
        )?);
    }
    let mut out = vec![];
    let mut partial = PathTuple {
        paths: vec![],
        sigma: (0..l as usize).collect(),
    };
    fn rec(
        per_col: &[Vec<crate::paths::DPath>],
        partial: &mut PathTuple,
        n: u8,
        out: &mut Vec<PathTuple>,
    ) -> Result<()> {
        let idx = partial.paths.len();
        if idx == per_col.len() {
            let h = project_pi(partial, n)?;
            if regions(&h, 1, RegionClass::II)
                .iter()
                .all(|v| region_parity(&h, v) % 2 == 0)
            {
                out.push(partial.clone());
            }
            return Ok(());
        }
        for p in &per_col[idx] {
            if idx > 0 && classify_pair(&partial.paths[idx - 1], p) == PairClass::Ordinary {
                continue;
            }
            partial.paths.push(p.clone());
            rec(per_col, partial, n, out)?;
            partial.paths.pop();
        }
        Ok(())
    }
    rec(&per_col, &mut partial, n, &mut out)?;
    Ok(out)
}

/// The sum of weights over the non-crossing family; equals the positive sum
/// and hence the determinant under the defining relations.
pub fn third_sum(d: &SkewDiagram, n: u8) -> Result<ZPolynomial> {
    if !d.positivity_condition(n) {
        return Err(Error::Precondition(format!(
            "shape {d} violates the positivity condition for n = {n}"
        )));
    }
    let mut out = ZPolynomial::zero();
    for t in enumerate_p(d, n)? {
        out.add_term(t.weight(n), 1);
    }
    Ok(out)
}
