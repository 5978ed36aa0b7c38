//! HV-tableaux and the tableau form of the positive sum.
//!
//! A tableau fills a skew shape with entries from the partially ordered set
//! `1 < ... < n-1 < {n, nbar} < n-1bar < ... < 1bar`.  Reading the weighted
//! steps of each column path top-to-bottom gives a weight-preserving
//! bijection between non-crossing path tuples and tableaux obeying a
//! horizontal and a vertical rule; the remaining membership condition (no odd
//! II-region) is implemented both through the path projection and directly on
//! the tableau via LU-configurations, together with the explicit pattern
//! lists for shapes of at most one/two/three rows or two columns.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::entry::Entry;
use crate::error::{Error, Result};
use crate::folding;
use crate::partition::SkewDiagram;
use crate::paths::{classify_pair, end_point, start_point, PairClass};
use crate::paths::{DPath, PathTuple, Step};
use crate::ring::{ZMonomial, ZPolynomial, ZVariable};

/// A filling of a skew shape with entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tableau {
    shape: SkewDiagram,
    entries: BTreeMap<(u32, u32), Entry>,
}

impl Tableau {
    /// Build from entries listed in the row-major cell order of the shape.
    pub fn new(shape: SkewDiagram, entries: Vec<Entry>) -> Result<Self> {
        let cells = shape.cells();
        if cells.len() != entries.len() {
            return Err(Error::Precondition(format!(
                "shape has {} cells, got {} entries",
                cells.len(),
                entries.len()
            )));
        }
        Ok(Tableau {
            shape,
            entries: cells.into_iter().zip(entries).collect(),
        })
    }

    pub fn shape(&self) -> &SkewDiagram {
        &self.shape
    }

    /// Entry at 1-based `(row, col)`, if the cell is in the shape.
    pub fn get(&self, i: u32, j: u32) -> Option<Entry> {
        self.entries.get(&(i, j)).copied()
    }

    /// The weight monomial: `z_{T(i,j), a-2x}` with `x = i - j` per cell.
    pub fn weight(&self) -> ZMonomial {
        ZMonomial::from_vars(
            self.entries
                .iter()
                .map(|(&(i, j), &e)| ZVariable::new(e, i as i32 - j as i32)),
        )
    }

    /// Rows of the column `j` (1-based): `mu'_j + 1 ..= lambda'_j`.
    fn col_rows(&self, j: u32) -> (u32, u32) {
        let top = self.shape.mu.conjugate().part(j as usize - 1) + 1;
        let bot = self.shape.lambda.conjugate().part(j as usize - 1);
        (top, bot)
    }
}

impl fmt::Display for Tableau {
    /// Rows of entry tokens, absent cells printed as ".".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.shape.num_rows().max(1);
        let cols = self.shape.num_cols().max(1);
        for i in 1..=rows {
            let line: Vec<String> = (1..=cols)
                .map(|j| match self.get(i, j) {
                    Some(e) => e.to_string(),
                    None => ".".into(),
                })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The horizontal and vertical rules: row-adjacent pairs satisfy `x <= y` or
/// are exactly `(n, nbar)`; column-adjacent pairs satisfy `not (x >= y)`.
pub fn hv_check(t: &Tableau, n: u8) -> bool {
    for (&(i, j), &x) in &t.entries {
        if let Some(y) = t.get(i, j + 1) {
            let escape = x == Entry::Unbarred(n) && y == Entry::Barred(n);
            if !x.le(y, n) && !escape {
                return false;
            }
        }
        if let Some(y) = t.get(i + 1, j) {
            if x.ge(y, n) {
                return false;
            }
        }
    }
    true
}

/// All HV-tableaux of the shape, by depth-first fill in row-major order.
pub fn enumerate_hv(d: &SkewDiagram, n: u8) -> Result<Vec<Tableau>> {
    if d.num_cells() > 20 {
        return Err(Error::SizeGuard(format!(
            "tableau enumeration limited to 20 cells, got {}",
            d.num_cells()
        )));
    }
    let cells = d.cells();
    let all = Entry::all(n);
    let mut out = vec![];
    let mut t = Tableau {
        shape: d.clone(),
        entries: BTreeMap::new(),
    };
    fn rec(
        idx: usize,
        cells: &[(u32, u32)],
        all: &[Entry],
        n: u8,
        t: &mut Tableau,
        out: &mut Vec<Tableau>,
    ) {
        if idx == cells.len() {
            out.push(t.clone());
            return;
        }
        let (i, j) = cells[idx];
        for &e in all {
            // Check against the already-placed left and upper neighbours.
            if let Some(x) = t.get(i, j - 1) {
                let escape = x == Entry::Unbarred(n) && e == Entry::Barred(n);
                if !x.le(e, n) && !escape {
                    continue;
                }
            }
            if let Some(x) = t.get(i - 1, j) {
                if x.ge(e, n) {
                    continue;
                }
            }
            t.entries.insert((i, j), e);
            rec(idx + 1, cells, all, n, t, out);
            t.entries.remove(&(i, j));
        }
    }
    rec(0, &cells, &all, n, &mut t, &mut out);
    Ok(out)
}

/// Column-reading map: the `k`-th weighted step of the `j`-th path fills the
/// cell at row `mu'_j + k` of column `j`.
pub fn tv(d: &SkewDiagram, p: &PathTuple, n: u8) -> Result<Tableau> {
    if p.sigma.iter().enumerate().any(|(i, &s)| s != i) {
        return Err(Error::Precondition(
            "tableau reading requires the identity connection".into(),
        ));
    }
    let mc = d.mu.conjugate();
    let lc = d.lambda.conjugate();
    let mut entries = BTreeMap::new();
    for (jz, path) in p.paths.iter().enumerate() {
        let j = jz as u32 + 1;
        let labels = path.e_labels(n);
        let height = lc.part(jz) - mc.part(jz);
        if labels.len() != height as usize {
            return Err(Error::Precondition(format!(
                "column {j} has {height} cells but the path has {} weighted steps",
                labels.len()
            )));
        }
        for (k, (e, _)) in labels.into_iter().enumerate() {
            entries.insert((mc.part(jz) + 1 + k as u32, j), e);
        }
    }
    let t = Tableau {
        shape: d.clone(),
        entries,
    };
    if !hv_check(&t, n) {
        return Err(Error::Precondition(
            "path tuple with ordinarily intersecting adjacent pair".into(),
        ));
    }
    Ok(t)
}

/// Rebuild the path of one column from its entry list (top to bottom).
fn column_path(d: &SkewDiagram, n: u8, j: u32, col: &[Entry]) -> Result<DPath> {
    let ni = n as i32;
    let bad = || Error::Precondition(format!("column {j} is not a valid column reading"));
    // Split into the unbarred prefix (< n), the middle block of value-n
    // entries, and the barred suffix (< n).
    let mut lower_ne: BTreeSet<i32> = BTreeSet::new();
    let mut upper_ne: BTreeSet<i32> = BTreeSet::new();
    let mut idx = 0;
    while idx < col.len() {
        match col[idx] {
            Entry::Unbarred(v) if v < n => {
                // NE step entered at height v - n - 1.
                if !lower_ne.insert(v as i32 - ni - 1) {
                    return Err(bad());
                }
                idx += 1;
            }
            _ => break,
        }
    }
    let mid_start = idx;
    while idx < col.len() && col[idx].value() == n {
        idx += 1;
    }
    let mut mid = &col[mid_start..idx];
    let back = &col[idx..];
    // Leading unbarred n is the NE step at height -1; then an even
    // alternating run nbar, n, nbar, ... of E steps; an odd tail ends with a
    // trailing nbar, the NE step at height 0.
    if mid.first() == Some(&Entry::Unbarred(n)) {
        lower_ne.insert(-1);
        mid = &mid[1..];
    }
    let mut e_len = mid.len();
    if e_len % 2 == 1 {
        upper_ne.insert(0);
        e_len -= 1;
    }
    for (i, &e) in mid.iter().enumerate() {
        let expect = if i < e_len {
            // E-run labels alternate starting barred.
            if i % 2 == 0 {
                Entry::Barred(n)
            } else {
                Entry::Unbarred(n)
            }
        } else {
            Entry::Barred(n)
        };
        if e != expect {
            return Err(bad());
        }
    }
    for &e in back {
        match e {
            Entry::Barred(v) if v < n => {
                // NE step entered at height n - v.
                if !upper_ne.insert(ni - v as i32) {
                    return Err(bad());
                }
            }
            _ => return Err(bad()),
        }
    }
    let mut steps = vec![];
    for m in -ni..0 {
        steps.push(if lower_ne.contains(&m) {
            Step::NE
        } else {
            Step::NW
        });
    }
    steps.extend(std::iter::repeat(Step::E).take(e_len));
    for m in 0..ni {
        steps.push(if upper_ne.contains(&m) {
            Step::NE
        } else {
            Step::NW
        });
    }
    let p = DPath::new(start_point(d, n, j as usize), steps, n)?;
    if p.end() != end_point(d, n, j as usize) {
        return Err(bad());
    }
    Ok(p)
}

/// Inverse of the column-reading map.
pub fn tv_inv(t: &Tableau, n: u8) -> Result<PathTuple> {
    if !hv_check(t, n) {
        return Err(Error::Precondition("not an HV-tableau".into()));
    }
    let d = &t.shape;
    let l = d.num_cols() as usize;
    let mut paths = vec![];
    for j in 1..=l as u32 {
        let (top, bot) = t.col_rows(j);
        let col: Vec<Entry> = (top..=bot).filter_map(|i| t.get(i, j)).collect();
        paths.push(column_path(d, n, j, &col)?);
    }
    let tuple = PathTuple {
        paths,
        sigma: (0..l).collect(),
    };
    debug_assert!(!tuple
        .paths
        .windows(2)
        .any(|w| classify_pair(&w[0], &w[1]) == PairClass::Ordinary));
    Ok(tuple)
}

/// The extra rule in path form: the projected profile pair of the rebuilt
/// tuple has no odd II-region at gap 1.
pub fn extra_rule_paths(t: &Tableau, n: u8) -> Result<bool> {
    folding::p_membership(&tv_inv(t, n)?, n)
}

// ---------------------------------------------------------------------------
// LU-configurations.
// ---------------------------------------------------------------------------

/// Which of the two defining conditions an LU-configuration satisfies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LUKind {
    /// Overlapping rows; `r` is the row overlap and `n - k + 1 = s + t - r`.
    Type1 { k: u8, r: u32 },
    /// `U` strictly below `L` with a gap of `n - k2` rows; `k2 - k = s + t - 1`.
    Type2 { k: u8, k2: u8 },
}

/// A matched pair of an unbarred column chain `L` (column `col`) and a barred
/// chain `U` (column `col + 1`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LUConfig {
    pub col: u32,
    /// Rows of `L`, top to bottom.
    pub l_rows: (u32, u32),
    /// Rows of `U`, top to bottom.
    pub u_rows: (u32, u32),
    /// Values of `L` top to bottom (strictly increasing).
    pub a: Vec<u8>,
    /// Values of `U` bottom to top (strictly increasing).
    pub b: Vec<u8>,
    /// Complement of `a` in `{k..n}` (type 1) or `{k..k2}` (type 2).
    pub a_comp: Vec<u8>,
    /// Complement of `b` in the same range.
    pub b_comp: Vec<u8>,
    pub kind: LUKind,
}

impl LUConfig {
    /// Odd means type 1 with odd row overlap.
    pub fn is_odd(&self) -> bool {
        matches!(self.kind, LUKind::Type1 { r, .. } if r % 2 == 1)
    }

    fn l_cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (self.l_rows.0..=self.l_rows.1).map(move |i| (i, self.col))
    }

    fn u_cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (self.u_rows.0..=self.u_rows.1).map(move |i| (i, self.col + 1))
    }
}

fn complement(range: (u8, u8), held: &[u8]) -> Vec<u8> {
    (range.0..=range.1).filter(|v| !held.contains(v)).collect()
}

/// Try to match a pair of chains as a configuration of either kind.
fn match_pair(
    t: &Tableau,
    n: u8,
    j: u32,
    l_rows: (u32, u32),
    a: &[u8],
    u_rows: (u32, u32),
    b: &[u8],
) -> Option<LUConfig> {
    let k = a[0];
    if b[0] != k {
        return None;
    }
    let (l1, l2) = l_rows;
    let (u1, u2) = u_rows;
    let (s, tt) = (a.len() as i64, b.len() as i64);
    let below_l = t.get(l2 + 1, j);
    let above_u = if u1 > 1 { t.get(u1 - 1, j + 1) } else { None };
    if u1 <= l2 {
        // Overlapping rows: candidate for the first kind.
        if l1 > u1 || l2 > u2 {
            return None;
        }
        let r = (l2 - u1 + 1) as i64;
        if n as i64 - k as i64 + 1 != s + tt - r {
            return None;
        }
        // The cell below L must be barred, the cell above U unbarred.
        if below_l.is_some_and(|e| !e.is_barred()) {
            return None;
        }
        if above_u.is_some_and(|e| e.is_barred()) {
            return None;
        }
        let a_comp = complement((k, n), a);
        let b_comp = complement((k, n), b);
        let (sp, tp) = ((tt - r) as usize, (s - r) as usize);
        debug_assert_eq!(a_comp.len(), sp);
        debug_assert_eq!(b_comp.len(), tp);
        // Interleaving: a_{i+1} <= b'_i and b_{i+1} <= a'_i.
        if (0..tp).any(|i| a[i + 1] > b_comp[i]) || (0..sp).any(|i| b[i + 1] > a_comp[i]) {
            return None;
        }
        Some(LUConfig {
            col: j,
            l_rows,
            u_rows,
            a: a.to_vec(),
            b: b.to_vec(),
            a_comp,
            b_comp,
            kind: LUKind::Type1 { k, r: r as u32 },
        })
    } else {
        // U strictly below L: candidate for the second kind.
        let gap = (u1 - l2 - 1) as i64;
        let k2 = n as i64 - gap;
        if k2 <= k as i64 || k2 > n as i64 {
            return None;
        }
        let k2 = k2 as u8;
        if k2 as i64 - k as i64 != s + tt - 1 {
            return None;
        }
        if a.contains(&k2) || b.contains(&k2) || *a.last().unwrap() > k2 || *b.last().unwrap() > k2
        {
            return None;
        }
        // The cell below L must not precede k2; the cell above U must not
        // succeed k2-bar.
        if below_l.is_some_and(|e| e.le(Entry::Unbarred(k2), n)) {
            return None;
        }
        if above_u.is_some_and(|e| e.ge(Entry::Barred(k2), n)) {
            return None;
        }
        let a_comp = complement((k, k2), a);
        let b_comp = complement((k, k2), b);
        debug_assert_eq!(a_comp.len(), tt as usize);
        debug_assert_eq!(b_comp.len(), s as usize);
        if (0..s as usize - 1).any(|i| a[i + 1] > b_comp[i])
            || (0..tt as usize - 1).any(|i| b[i + 1] > a_comp[i])
        {
            return None;
        }
        Some(LUConfig {
            col: j,
            l_rows,
            u_rows,
            a: a.to_vec(),
            b: b.to_vec(),
            a_comp,
            b_comp,
            kind: LUKind::Type2 { k, k2 },
        })
    }
}

/// All contiguous runs of cells in column `j` selected by `pick`, as
/// `(top_row, bottom_row, values top-to-bottom)`.
fn column_runs(t: &Tableau, j: u32, pick: fn(Entry) -> bool) -> Vec<(u32, u32, Vec<u8>)> {
    let (top, bot) = t.col_rows(j);
    let mut runs = vec![];
    if top > bot {
        return runs;
    }
    for r1 in top..=bot {
        let mut vals = vec![];
        for r2 in r1..=bot {
            match t.get(r2, j) {
                Some(e) if pick(e) => {
                    vals.push(e.value());
                    runs.push((r1, r2, vals.clone()));
                }
                _ => break,
            }
        }
    }
    runs
}

/// All LU-configurations of the tableau.
pub fn find_lu_configs(t: &Tableau, n: u8) -> Vec<LUConfig> {
    let mut out = vec![];
    for j in 1..t.shape.num_cols() {
        let ls = column_runs(t, j, |e| !e.is_barred());
        let us = column_runs(t, j + 1, |e| e.is_barred());
        for (l1, l2, a) in &ls {
            for (u1, u2, bdown) in &us {
                // U values are read bottom-up.
                let b: Vec<u8> = bdown.iter().rev().copied().collect();
                if let Some(c) = match_pair(t, n, j, (*l1, *l2), a, (*u1, *u2), &b) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Is the unbarred chain at `rows`/`vals` in column `c.col + 1` right-adjacent
/// to `c`: some entry right-next to `a_i` precedes `b'_i`?
fn l_chain_right_adjacent(rows: (u32, u32), vals: &[u8], c: &LUConfig) -> bool {
    let tp = c.b_comp.len() as u32;
    for (off, &v) in vals.iter().enumerate() {
        let row = rows.0 + off as u32;
        if row < c.l_rows.0 || row > c.l_rows.1 {
            continue;
        }
        let i = row - c.l_rows.0; // 0-based index of a_{i+1}
        if i < tp && v < c.b_comp[i as usize] {
            return true;
        }
    }
    false
}

/// Is the barred chain at `rows`/`vals` in column `c.col` left-adjacent to
/// `c`: some entry left-next to `b_i` succeeds `a'_i`-bar?
fn u_chain_left_adjacent(rows: (u32, u32), vals: &[u8], c: &LUConfig) -> bool {
    let sp = c.a_comp.len() as u32;
    for (off, &v) in vals.iter().enumerate() {
        let row = rows.0 + off as u32;
        if row < c.u_rows.0 || row > c.u_rows.1 {
            continue;
        }
        let i = c.u_rows.1 - row; // 0-based index of b_{i+1}
        if i < sp && v < c.a_comp[i as usize] {
            return true;
        }
    }
    false
}

/// The adjacency relation between configurations: the L (resp. U) chain of
/// one is right-adjacent (resp. left-adjacent) to the other.
fn diamond(c: &LUConfig, c2: &LUConfig) -> bool {
    if c2.col == c.col + 1 {
        // L of c2 right-next to L of c; U of c left-next to U of c2.
        let a2: Vec<u8> = c2.a.clone();
        if l_chain_right_adjacent(c2.l_rows, &a2, c) {
            return true;
        }
        let bdown: Vec<u8> = c.b.iter().rev().copied().collect();
        if u_chain_left_adjacent(c.u_rows, &bdown, c2) {
            return true;
        }
    }
    if c.col == c2.col + 1 {
        return diamond(c2, c);
    }
    false
}

/// The maximal unbarred prefix of column `j` that avoids every configuration's
/// L-chain, as `(rows, values)`.
fn boundary_l(t: &Tableau, configs: &[LUConfig], j: u32) -> Option<((u32, u32), Vec<u8>)> {
    if j > t.shape.num_cols() {
        return None;
    }
    let (top, bot) = t.col_rows(j);
    let in_l: BTreeSet<(u32, u32)> = configs.iter().flat_map(|c| c.l_cells()).collect();
    let mut vals = vec![];
    let mut end = top;
    for i in top..=bot {
        match t.get(i, j) {
            Some(e) if !e.is_barred() && !in_l.contains(&(i, j)) => {
                vals.push(e.value());
                end = i;
            }
            _ => break,
        }
    }
    if vals.is_empty() {
        None
    } else {
        Some(((top, end), vals))
    }
}

/// The maximal barred suffix of column `j` that avoids every configuration's
/// U-chain.
fn boundary_u(t: &Tableau, configs: &[LUConfig], j: u32) -> Option<((u32, u32), Vec<u8>)> {
    if j == 0 || j > t.shape.num_cols() {
        return None;
    }
    let (top, bot) = t.col_rows(j);
    if top > bot {
        return None;
    }
    let in_u: BTreeSet<(u32, u32)> = configs.iter().flat_map(|c| c.u_cells()).collect();
    let mut start = bot;
    let mut any = false;
    for i in (top..=bot).rev() {
        match t.get(i, j) {
            Some(e) if e.is_barred() && !in_u.contains(&(i, j)) => {
                start = i;
                any = true;
            }
            _ => break,
        }
    }
    if !any {
        return None;
    }
    let vals: Vec<u8> = (start..=bot).map(|i| t.get(i, j).unwrap().value()).collect();
    Some(((start, bot), vals))
}

/// An equivalence class of LU-configurations that no boundary chain touches.
#[derive(Clone, Debug)]
pub struct TabIIRegion {
    pub members: Vec<LUConfig>,
    pub odd: bool,
}

/// Group the configurations into classes and keep those not adjacent to a
/// boundary chain; a class is odd if it holds an odd number of odd members.
pub fn tab_ii_regions(t: &Tableau, n: u8) -> Vec<TabIIRegion> {
    regions_of(t, find_lu_configs(t, n))
}

fn regions_of(t: &Tableau, configs: Vec<LUConfig>) -> Vec<TabIIRegion> {
    let m = configs.len();
    // Components under the adjacency relation.
    let mut comp: Vec<usize> = (0..m).collect();
    loop {
        let mut changed = false;
        for i in 0..m {
            for j in i + 1..m {
                if diamond(&configs[i], &configs[j]) && comp[i] != comp[j] {
                    let (a, b) = (comp[i].min(comp[j]), comp[i].max(comp[j]));
                    for c in comp.iter_mut() {
                        if *c == b {
                            *c = a;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let classes: BTreeSet<usize> = comp.iter().copied().collect();
    let mut out = vec![];
    for cls in classes {
        let members: Vec<LUConfig> = (0..m)
            .filter(|&i| comp[i] == cls)
            .map(|i| configs[i].clone())
            .collect();
        // Boundary chains live in the column right of an L (left of nothing)
        // and in the column of a U.
        let touched = members.iter().any(|c| {
            boundary_l(t, &configs, c.col + 1)
                .is_some_and(|(rows, vals)| l_chain_right_adjacent(rows, &vals, c))
                || boundary_u(t, &configs, c.col)
                    .is_some_and(|(rows, vals)| u_chain_left_adjacent(rows, &vals, c))
        });
        if touched {
            continue;
        }
        let odd = members.iter().filter(|c| c.is_odd()).count() % 2 == 1;
        out.push(TabIIRegion { members, odd });
    }
    out
}

/// The extra rule in tableau form: no odd region of LU-configurations.
pub fn extra_rule_lu(t: &Tableau, n: u8) -> bool {
    !tab_ii_regions(t, n).iter().any(|r| r.odd)
}

// ---------------------------------------------------------------------------
// Explicit rule lists by shape class.
// ---------------------------------------------------------------------------

/// No row contains the adjacent pair `(n, nbar)`.  Valid for every shape.
pub fn rule_e1r(t: &Tableau, n: u8) -> bool {
    !t.entries.iter().any(|(&(i, j), &e)| {
        e == Entry::Unbarred(n) && t.get(i, j + 1) == Some(Entry::Barred(n))
    })
}

/// Two-column shapes: no odd configuration survives both boundary chains.
pub fn rule_e2c(t: &Tableau, n: u8) -> Result<bool> {
    if t.shape.num_cols() > 2 {
        return Err(Error::Precondition(
            "the two-column rule needs a shape of at most two columns".into(),
        ));
    }
    let configs = find_lu_configs(t, n);
    for c in configs.iter().filter(|c| c.is_odd()) {
        let blocked_l = boundary_l(t, &configs, 2)
            .is_some_and(|(rows, vals)| l_chain_right_adjacent(rows, &vals, c));
        let blocked_u = boundary_u(t, &configs, 1)
            .is_some_and(|(rows, vals)| u_chain_left_adjacent(rows, &vals, c));
        if !blocked_l && !blocked_u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check a horizontal two-row band pattern: fixed left column, a run of
/// middle columns, fixed right column.
fn band_match(
    t: &Tableau,
    rows: (u32, u32),
    c1: u32,
    c2: u32,
    left: (Entry, Entry),
    mid: (Entry, Entry),
    right: (Entry, Entry),
) -> bool {
    let (r1, r2) = rows;
    let ok = |i, j, e| t.get(i, j) == Some(e);
    if !(ok(r1, c1, left.0) && ok(r2, c1, left.1) && ok(r1, c2, right.0) && ok(r2, c2, right.1)) {
        return false;
    }
    (c1 + 1..c2).all(|j| ok(r1, j, mid.0) && ok(r2, j, mid.1))
}

/// Two-row shapes (and two-row bands of three-row shapes): the forbidden
/// bands `[n-1.. n-1, n / n, n-1bar ..]` and `[n-1 .., nbar / nbar, n-1bar ..]`.
pub fn rule_e2r(t: &Tableau, n: u8) -> Result<bool> {
    if t.shape.num_rows() > 3 {
        return Err(Error::Precondition(
            "the row rules are stated for shapes of at most three rows".into(),
        ));
    }
    if n < 2 {
        return Ok(true);
    }
    let (un, bn) = (Entry::Unbarred(n), Entry::Barred(n));
    let (un1, bn1) = (Entry::Unbarred(n - 1), Entry::Barred(n - 1));
    let rows = t.shape.num_rows();
    let cols = t.shape.num_cols();
    for r in 1..rows {
        for c1 in 1..=cols {
            for c2 in c1 + 1..=cols {
                if band_match(t, (r, r + 1), c1, c2, (un1, un), (un1, bn1), (un, bn1))
                    || band_match(t, (r, r + 1), c1, c2, (un1, bn), (un1, bn1), (bn, bn1))
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The eighteen two-column configuration templates that can occur in a shape
/// of at most three rows, as (a-values, b-values) offset from `n`, with their
/// parameter: `Some(r)` for overlapping templates, `None` for the gapped ones.
/// The nine templates with odd `r` are the odd ones; every other template is
/// even.  A forbidden three-row pattern is a horizontal band assembled from
/// these blocks: runs of repeated connector blocks form the stretchable
/// sections, and the corner entries select which end blocks (odd or even)
/// close the band.
const E3R_TEMPLATES: [(&[u8], &[u8], Option<u32>); 18] = [
    // Odd overlaps.
    (&[0], &[0], Some(1)),
    (&[1, 0], &[1], Some(1)),
    (&[1], &[1, 0], Some(1)),
    (&[2], &[2, 1, 0], Some(1)),
    (&[2, 1], &[2, 1], Some(1)),
    (&[2, 1], &[2, 0], Some(1)),
    (&[2, 0], &[2, 1], Some(1)),
    (&[2, 1, 0], &[2], Some(1)),
    (&[2, 1, 0], &[2, 1, 0], Some(3)),
    // Even overlaps.
    (&[1, 0], &[1, 0], Some(2)),
    (&[2, 1], &[2, 1, 0], Some(2)),
    (&[2, 0], &[2, 1, 0], Some(2)),
    (&[2, 1, 0], &[2, 1], Some(2)),
    (&[2, 1, 0], &[2, 0], Some(2)),
    // Gapped templates (always even).
    (&[1], &[1], None),
    (&[2], &[2, 1], None),
    (&[2, 1], &[2], None),
    (&[2], &[2], None),
];

/// Three-row shapes: no odd band of template configurations.  The explicit
/// list is the template catalog above; a tableau is excluded when the blocks
/// found in it chain into a band that no boundary chain touches and that
/// contains an odd number of odd blocks.
pub fn rule_e3r(t: &Tableau, n: u8) -> Result<bool> {
    if t.shape.num_rows() > 3 {
        return Err(Error::Precondition(
            "the row rules are stated for shapes of at most three rows".into(),
        ));
    }
    if t.shape.num_rows() < 3 || n < 2 {
        return Ok(true);
    }
    let offs = |vals: &[u8]| -> Option<Vec<u8>> {
        vals.iter().map(|&v| n.checked_sub(v)).collect()
    };
    let mut configs = vec![];
    for j in 1..t.shape.num_cols() {
        let ls = column_runs(t, j, |e| !e.is_barred());
        let us = column_runs(t, j + 1, |e| e.is_barred());
        for (l1, l2, a) in &ls {
            let Some(ao) = offs(a) else { continue };
            for (u1, u2, bdown) in &us {
                let b: Vec<u8> = bdown.iter().rev().copied().collect();
                let Some(bo) = offs(&b) else { continue };
                let listed = E3R_TEMPLATES.iter().any(|&(ta, tb, param)| {
                    if ao != ta || bo != tb {
                        return false;
                    }
                    match param {
                        Some(r) => *u1 <= *l2 && l2 - u1 + 1 == r,
                        None => *u1 > *l2,
                    }
                });
                if !listed {
                    continue;
                }
                if let Some(c) = match_pair(t, n, j, (*l1, *l2), a, (*u1, *u2), &b) {
                    configs.push(c);
                }
            }
        }
    }
    Ok(!regions_of(t, configs).iter().any(|r| r.odd))
}

/// The explicit rule list for the shape class of `t`, when one exists.
pub fn explicit_rules(t: &Tableau, n: u8) -> Result<bool> {
    let rows = t.shape.num_rows();
    let cols = t.shape.num_cols();
    if rows <= 1 {
        Ok(rule_e1r(t, n))
    } else if cols <= 2 {
        rule_e2c(t, n)
    } else if rows == 2 {
        Ok(rule_e1r(t, n) && rule_e2r(t, n)?)
    } else if rows == 3 {
        Ok(rule_e1r(t, n) && rule_e2r(t, n)? && rule_e3r(t, n)?)
    } else {
        Err(Error::Precondition(format!(
            "no explicit rule list for {rows} rows x {cols} columns"
        )))
    }
}

/// The tableau sum: over HV-tableaux passing the extra rule.
pub fn tableau_sum(d: &SkewDiagram, n: u8) -> Result<ZPolynomial> {
    if !d.positivity_condition(n) {
        return Err(Error::Precondition(format!(
            "shape {d} violates the positivity condition for n = {n}"
        )));
    }
    let mut sum = ZPolynomial::zero();
    for t in enumerate_hv(d, n)? {
        if extra_rule_paths(&t, n)? {
            sum.add_term(t.weight(), 1);
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::jt_det_h;
    use crate::partition::Partition;
    use crate::paths::enumerate_paths;
    use crate::ring::eq_in_z;

    fn shape(l: &[u32], m: &[u32]) -> SkewDiagram {
        SkewDiagram::new(
            Partition::new(l.to_vec()).unwrap(),
            Partition::new(m.to_vec()).unwrap(),
        )
        .unwrap()
    }

    /// All skew shapes with lambda inside a rows x cols box.
    fn shapes(rows: u32, cols: u32) -> Vec<SkewDiagram> {
        let mut out = vec![];
        for l in Partition::all_in_box(rows, cols) {
            for m in Partition::all_in_box(rows, cols) {
                if l.contains(&m) {
                    out.push(SkewDiagram::new(l.clone(), m).unwrap());
                }
            }
        }
        out
    }

    fn tab(l: &[u32], m: &[u32], entries: &[&str]) -> Tableau {
        let es = entries.iter().map(|s| s.parse().unwrap()).collect();
        Tableau::new(shape(l, m), es).unwrap()
    }

    /// Tuples with identity connection and no ordinarily intersecting
    /// adjacent pair.
    fn enumerate_p_hv(d: &SkewDiagram, n: u8) -> Vec<PathTuple> {
        let l = d.num_cols() as usize;
        let per_col: Vec<Vec<DPath>> = (1..=l)
            .map(|i| enumerate_paths(start_point(d, n, i), end_point(d, n, i), n).unwrap())
            .collect();
        let mut out = vec![];
        let mut partial: Vec<DPath> = vec![];
        fn rec(
            per_col: &[Vec<DPath>],
            partial: &mut Vec<DPath>,
            out: &mut Vec<PathTuple>,
        ) {
            if partial.len() == per_col.len() {
                out.push(PathTuple {
                    paths: partial.clone(),
                    sigma: (0..partial.len()).collect(),
                });
                return;
            }
            for p in &per_col[partial.len()] {
                if let Some(last) = partial.last() {
                    if classify_pair(last, p) == PairClass::Ordinary {
                        continue;
                    }
                }
                partial.push(p.clone());
                rec(per_col, partial, out);
                partial.pop();
            }
        }
        rec(&per_col, &mut partial, &mut out);
        out
    }

    #[test]
    fn single_cell_and_row_examples() {
        let d = shape(&[1], &[]);
        for n in 1..=4 {
            assert_eq!(enumerate_hv(&d, n).unwrap().len(), 2 * n as usize);
        }
        // The escaped row (n, nbar) passes the horizontal rule.
        let t = tab(&[2], &[], &["2", "2bar"]);
        assert!(hv_check(&t, 2));
        // nbar, n does not.
        let t = tab(&[2], &[], &["2bar", "2"]);
        assert!(!hv_check(&t, 2));
        // n = 2, one row of two cells: ten HV-tableaux.
        assert_eq!(enumerate_hv(&shape(&[2], &[]), 2).unwrap().len(), 10);
    }

    #[test]
    fn reading_map_roundtrip_and_weights() {
        for n in [2u8, 3] {
            for d in shapes(2, 2) {
                if d.num_cells() == 0 {
                    continue;
                }
                let tuples = enumerate_p_hv(&d, n);
                let hv: BTreeSet<Tableau> =
                    enumerate_hv(&d, n).unwrap().into_iter().collect();
                let mut images = BTreeSet::new();
                for p in &tuples {
                    let t = tv(&d, p, n).unwrap();
                    assert_eq!(t.weight(), p.weight(n), "weights differ on {d}");
                    let back = tv_inv(&t, n).unwrap();
                    assert_eq!(&back, p, "roundtrip failed on {d}");
                    images.insert(t);
                }
                assert_eq!(images.len(), tuples.len(), "reading map not injective");
                assert_eq!(images, hv, "reading map not onto the HV set for {d}");
            }
        }
    }

    #[test]
    fn extra_rule_paths_examples() {
        let t = tab(&[2], &[], &["2", "2bar"]);
        assert!(!extra_rule_paths(&t, 2).unwrap());
        let t = tab(&[2], &[], &["1", "2"]);
        assert!(extra_rule_paths(&t, 2).unwrap());
    }

    #[test]
    fn lu_config_examples() {
        // One row (n, nbar): a single odd configuration with s = t = r = 1.
        let t = tab(&[2], &[], &["2", "2bar"]);
        let cs = find_lu_configs(&t, 2);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].is_odd());
        assert_eq!(cs[0].kind, LUKind::Type1 { k: 2, r: 1 });
        assert_eq!((cs[0].a.as_slice(), cs[0].b.as_slice()), (&[2][..], &[2][..]));
        // The full 2x2 block with columns (n-1, n) and (nbar, n-1bar) is a
        // single even configuration with r = 2.
        let t = tab(&[2, 2], &[], &["1", "2bar", "2", "1bar"]);
        let cs = find_lu_configs(&t, 2);
        assert_eq!(cs.len(), 1);
        assert!(!cs[0].is_odd());
        assert_eq!(cs[0].kind, LUKind::Type1 { k: 1, r: 2 });
        // No matching pattern: no configurations.
        let t = tab(&[2], &[], &["1", "2"]);
        assert!(find_lu_configs(&t, 2).is_empty());
    }

    #[test]
    fn region_rule_examples() {
        let t = tab(&[2], &[], &["2", "2bar"]);
        let rs = tab_ii_regions(&t, 2);
        assert_eq!(rs.len(), 1);
        assert!(rs[0].odd);
        assert!(!extra_rule_lu(&t, 2));
        let t = tab(&[2], &[], &["1", "2"]);
        assert!(tab_ii_regions(&t, 2).is_empty());
        assert!(extra_rule_lu(&t, 2));
    }

    /// The two forms of the extra rule agree on every HV-tableau of the test
    /// family (at most three rows or at most two columns).
    #[test]
    fn path_and_tableau_rules_agree() {
        for n in [2u8, 3, 4] {
            let mut family = shapes(3, 3);
            family.extend(shapes(4, 2));
            for d in family {
                if d.num_cells() == 0 || d.num_cells() > 8 || !d.positivity_condition(n) {
                    continue;
                }
                for t in enumerate_hv(&d, n).unwrap() {
                    assert_eq!(
                        extra_rule_paths(&t, n).unwrap(),
                        extra_rule_lu(&t, n),
                        "rules disagree for n = {n} on\n{t}"
                    );
                }
            }
        }
    }

    /// Every configuration on a three-row shape matches one of the eighteen
    /// templates (nine odd, nine even/second-kind), and the parity agrees.
    #[test]
    fn template_table_is_complete_for_three_rows() {
        // (type1?, a offsets from n, b offsets from n, r or n - k2).
        let odd: [(&[u8], &[u8], u32); 9] = [
            (&[0], &[0], 1),
            (&[1, 0], &[1], 1),
            (&[1], &[1, 0], 1),
            (&[2], &[2, 1, 0], 1),
            (&[2, 1], &[2, 1], 1),
            (&[2, 1], &[2, 0], 1),
            (&[2, 0], &[2, 1], 1),
            (&[2, 1, 0], &[2], 1),
            (&[2, 1, 0], &[2, 1, 0], 3),
        ];
        let even1: [(&[u8], &[u8], u32); 5] = [
            (&[1, 0], &[1, 0], 2),
            (&[2, 1], &[2, 1, 0], 2),
            (&[2, 0], &[2, 1, 0], 2),
            (&[2, 1, 0], &[2, 1], 2),
            (&[2, 1, 0], &[2, 0], 2),
        ];
        let type2: [(&[u8], &[u8], u32); 4] = [
            (&[1], &[1], 0),
            (&[2], &[2, 1], 0),
            (&[2, 1], &[2], 0),
            (&[2], &[2], 1),
        ];
        let offs = |vals: &[u8], n: u8| -> Vec<u8> {
            let mut v: Vec<u8> = vals.iter().map(|&x| n - x).collect();
            v.sort_by(|a, b| b.cmp(a));
            v
        };
        for n in [3u8, 4] {
            for d in shapes(3, 3) {
                if d.num_cells() == 0 || d.num_cells() > 7 || !d.positivity_condition(n) {
                    continue;
                }
                for t in enumerate_hv(&d, n).unwrap() {
                    for c in find_lu_configs(&t, n) {
                        let (ao, bo) = (offs(&c.a, n), offs(&c.b, n));
                        let hit = match c.kind {
                            LUKind::Type1 { r, .. } => odd
                                .iter()
                                .chain(even1.iter())
                                .any(|&(a, b, rr)| ao == a && bo == b && r == rr),
                            LUKind::Type2 { k2, .. } => type2
                                .iter()
                                .any(|&(a, b, g)| ao == a && bo == b && (n - k2) as u32 == g),
                        };
                        assert!(hit, "unlisted configuration {c:?} in\n{t}");
                        if c.is_odd() {
                            assert!(odd.iter().any(|&(a, b, rr)| {
                                ao == a && bo == b && matches!(c.kind, LUKind::Type1 { r, .. } if r == rr)
                            }));
                        }
                    }
                }
            }
        }
    }

    /// The explicit per-class lists agree with the region rule.
    #[test]
    fn rules_match_regions() {
        for n in [2u8, 3, 4] {
            let mut family = shapes(3, 3);
            family.extend(shapes(4, 2));
            family.extend(shapes(2, 4));
            family.extend(shapes(3, 4));
            // Wide rectangles exercise the stretchable middle runs of the
            // three-row band patterns.
            family.push(shape(&[5, 5, 5], &[]));
            for d in family {
                if d.num_cells() == 0 || !d.positivity_condition(n) {
                    continue;
                }
                if d.num_cells() > 8 && !(n == 3 && d.num_rows() == 3) {
                    continue;
                }
                let rows = d.num_rows();
                let cols = d.num_cols();
                if rows > 3 && cols > 2 {
                    continue;
                }
                for t in enumerate_hv(&d, n).unwrap() {
                    assert_eq!(
                        explicit_rules(&t, n).unwrap(),
                        extra_rule_lu(&t, n),
                        "explicit list disagrees for n = {n} on {d}:\n{t}"
                    );
                }
            }
        }
    }

    #[test]
    fn tableau_sum_examples() {
        // Empty skew shape: the empty product.
        let d = shape(&[1], &[1]);
        let s = tableau_sum(&d, 2).unwrap();
        assert_eq!(s.terms().len(), 1);
        // n = 2, one row of two cells: nine terms survive the extra rule.
        let d = shape(&[2], &[]);
        let s = tableau_sum(&d, 2).unwrap();
        assert_eq!(s.terms().values().map(|&c| c).sum::<i64>(), 9);
        assert!(eq_in_z(&s, &jt_det_h(&d, 2), 2));
        // A two-row shape against the determinant.
        let d = shape(&[2, 1], &[]);
        assert!(eq_in_z(&tableau_sum(&d, 3).unwrap(), &jt_det_h(&d, 3), 3));
    }

    /// The tableau sum, the positive path sum, and the determinant agree.
    #[test]
    fn tableau_sum_equals_other_sums() {
        for n in [2u8, 3] {
            for d in shapes(2, 3) {
                if d.num_cells() == 0 || !d.positivity_condition(n) {
                    continue;
                }
                let ts = tableau_sum(&d, n).unwrap();
                let third = folding::third_sum(&d, n).unwrap();
                assert!(eq_in_z(&ts, &third, n), "sums differ on {d}, n = {n}");
                assert!(eq_in_z(&ts, &jt_det_h(&d, n), n));
            }
        }
    }

}
