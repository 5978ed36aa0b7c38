//! Deterministic ASCII and SVG pictures of path tuples and profile pairs.
//!
//! Coordinates follow the lattice conventions: the horizontal axis is the
//! doubled position, the vertical axis is the height (drawn upward).  Dual
//! paths are drawn dotted and regions are shaded.

use crate::paths::PathTuple;
use crate::regions::{HPair, Region, Side};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A character canvas indexed by (height, doubled position).
struct Canvas {
    cells: BTreeMap<(i32, i32), char>,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            cells: BTreeMap::new(),
        }
    }

    /// First write wins, so earlier layers take precedence.
    fn put(&mut self, ht: i32, pos2: i32, c: char) {
        self.cells.entry((ht, pos2)).or_insert(c);
    }

    fn draw(&self) -> String {
        if self.cells.is_empty() {
            return String::new();
        }
        let hts: Vec<i32> = self.cells.keys().map(|&(h, _)| h).collect();
        let ps: Vec<i32> = self.cells.keys().map(|&(_, p)| p).collect();
        let (h0, h1) = (*hts.iter().min().unwrap(), *hts.iter().max().unwrap());
        let (p0, p1) = (*ps.iter().min().unwrap(), *ps.iter().max().unwrap());
        let mut out = String::new();
        for h in (h0..=h1).rev() {
            let mut line = String::new();
            for p in p0..=p1 {
                line.push(self.cells.get(&(h, p)).copied().unwrap_or(' '));
            }
            let _ = writeln!(out, "{:>3} |{}", h, line.trim_end());
        }
        out
    }
}

fn index_char(i: usize) -> char {
    char::from_digit(((i + 1) % 36) as u32, 36).unwrap_or('?')
}

/// ASCII picture of a path tuple: vertices carry the 1-based path index,
/// E-runs are dashed, and each line is prefixed by its height.
pub fn ascii_paths(t: &PathTuple) -> String {
    let mut canvas = Canvas::new();
    for (i, p) in t.paths.iter().enumerate() {
        let c = index_char(i);
        let pts = p.points();
        for w in pts.windows(2) {
            if w[0].ht() == 0 && w[1].ht() == 0 {
                canvas.put(0, w[0].pos2() + 1, '-');
            }
        }
        for q in pts {
            canvas.put(q.ht(), q.pos2(), c);
        }
    }
    canvas.draw()
}

/// ASCII picture of a profile pair with shaded regions: lower paths sit at
/// non-positive heights, upper paths at non-negative heights, and each
/// region unit shades its centre with `#`.
pub fn ascii_hpair(h: &HPair, regions: &[Region]) -> String {
    let mut canvas = Canvas::new();
    for (i, a) in h.alphas.iter().enumerate() {
        let c = index_char(i);
        for (r, &p2) in a.prof2.iter().enumerate() {
            canvas.put(-(r as i32), p2, c);
        }
    }
    for (i, b) in h.betas.iter().enumerate() {
        let c = index_char(i);
        for (r, &p2) in b.prof2.iter().enumerate() {
            canvas.put(r as i32, p2, c);
        }
    }
    for v in regions {
        for u in &v.units {
            canvas.put(u.rho, u.a2 + 1, '#');
        }
    }
    canvas.draw()
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

const SCALE: i32 = 12;

fn svg_open(out: &mut String, p0: i32, p1: i32, h0: i32, h1: i32) {
    let w = (p1 - p0 + 2) * SCALE;
    let ht = (h1 - h0 + 2) * SCALE;
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{ht}\" \
         viewBox=\"0 0 {w} {ht}\">"
    );
}

/// Map (doubled position, height) to SVG coordinates: position rightward,
/// height upward.
fn xy(p2: i32, ht: i32, p0: i32, h1: i32) -> (i32, i32) {
    ((p2 - p0 + 1) * SCALE, (h1 - ht + 1) * SCALE)
}

fn polyline(out: &mut String, pts: &[(i32, i32)], color: &str, dotted: bool) {
    let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{x},{y}")).collect();
    let dash = if dotted {
        " stroke-dasharray=\"3,3\""
    } else {
        ""
    };
    let _ = writeln!(
        out,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\"{} />",
        coords.join(" "),
        color,
        dash
    );
}

/// SVG picture of a path tuple: one polyline per path.
pub fn svg_paths(t: &PathTuple) -> String {
    let mut pts_all = vec![];
    for p in &t.paths {
        pts_all.extend(p.points());
    }
    if pts_all.is_empty() {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1\" height=\"1\"/>\n"
            .to_string();
    }
    let p0 = pts_all.iter().map(|q| q.pos2()).min().unwrap();
    let p1 = pts_all.iter().map(|q| q.pos2()).max().unwrap();
    let h0 = pts_all.iter().map(|q| q.ht()).min().unwrap();
    let h1 = pts_all.iter().map(|q| q.ht()).max().unwrap();
    let mut out = String::new();
    svg_open(&mut out, p0, p1, h0, h1);
    for (i, p) in t.paths.iter().enumerate() {
        let pts: Vec<(i32, i32)> = p
            .points()
            .iter()
            .map(|q| xy(q.pos2(), q.ht(), p0, h1))
            .collect();
        polyline(&mut out, &pts, PALETTE[i % PALETTE.len()], false);
    }
    out.push_str("</svg>\n");
    out
}

/// SVG picture of a profile pair: lower paths solid in one colour, upper
/// paths in another, their duals dotted, region units shaded.
pub fn svg_hpair(h: &HPair, regions: &[Region]) -> String {
    let n = h.n as i32;
    let mut ps = vec![];
    for a in &h.alphas {
        ps.extend(a.prof2.iter().copied());
        ps.extend(a.prof2.iter().map(|&p| p - 2));
    }
    for b in &h.betas {
        ps.extend(b.prof2.iter().copied());
        ps.extend(b.prof2.iter().map(|&p| p + 2));
    }
    for v in regions {
        for u in &v.units {
            ps.push(u.a2);
            ps.push(u.a2 + 2);
        }
    }
    if ps.is_empty() {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1\" height=\"1\"/>\n"
            .to_string();
    }
    let p0 = *ps.iter().min().unwrap();
    let p1 = *ps.iter().max().unwrap();
    let (h0, h1) = (-n, n);
    let mut out = String::new();
    svg_open(&mut out, p0, p1, h0, h1);
    for v in regions {
        for u in &v.units {
            let corners = [
                xy(u.a2, u.rho, p0, h1),
                xy(u.a2 + 1, u.rho + 1, p0, h1),
                xy(u.a2 + 2, u.rho, p0, h1),
                xy(u.a2 + 1, u.rho - 1, p0, h1),
            ];
            let pts: Vec<String> = corners.iter().map(|&(x, y)| format!("{x},{y}")).collect();
            let shade = match u.side {
                Side::Plus => "#c0d8f0",
                Side::Minus => "#f0d0c0",
            };
            let _ = writeln!(
                out,
                "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" stroke=\"none\" />",
                pts.join(" "),
                shade
            );
        }
    }
    for a in &h.alphas {
        let pts: Vec<(i32, i32)> = a
            .prof2
            .iter()
            .enumerate()
            .map(|(r, &p2)| xy(p2, -(r as i32), p0, h1))
            .collect();
        polyline(&mut out, &pts, PALETTE[0], false);
        // The dual upper path, dotted.
        let dual: Vec<(i32, i32)> = a
            .dual()
            .prof2
            .iter()
            .enumerate()
            .map(|(r, &p2)| xy(p2, r as i32, p0, h1))
            .collect();
        polyline(&mut out, &dual, PALETTE[0], true);
    }
    for b in &h.betas {
        let pts: Vec<(i32, i32)> = b
            .prof2
            .iter()
            .enumerate()
            .map(|(r, &p2)| xy(p2, r as i32, p0, h1))
            .collect();
        polyline(&mut out, &pts, PALETTE[1], false);
        let dual: Vec<(i32, i32)> = b
            .dual()
            .prof2
            .iter()
            .enumerate()
            .map(|(r, &p2)| xy(p2, -(r as i32), p0, h1))
            .collect();
        polyline(&mut out, &dual, PALETTE[1], true);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{Partition, SkewDiagram};
    use crate::paths::{enumerate_paths, start_point, end_point};
    use crate::regions::{project_pi, regions, RegionClass};

    fn sample_tuple() -> PathTuple {
        let d = SkewDiagram::new(Partition::new(vec![2, 1]).unwrap(), Partition::empty()).unwrap();
        let n = 2;
        let paths: Vec<_> = (1..=2)
            .map(|i| {
                enumerate_paths(start_point(&d, n, i), end_point(&d, n, i), n).unwrap()[0].clone()
            })
            .collect();
        PathTuple {
            paths,
            sigma: vec![0, 1],
        }
    }

    #[test]
    fn empty_tuple_is_empty_canvas() {
        let t = PathTuple {
            paths: vec![],
            sigma: vec![],
        };
        assert_eq!(ascii_paths(&t), "");
        assert!(svg_paths(&t).starts_with("<svg"));
    }

    #[test]
    fn rendering_is_deterministic_and_marks_paths() {
        let t = sample_tuple();
        let a1 = ascii_paths(&t);
        let a2 = ascii_paths(&t);
        assert_eq!(a1, a2);
        assert!(a1.contains('1') && a1.contains('2'));
        let s = svg_paths(&t);
        assert_eq!(s, svg_paths(&t));
        assert_eq!(s.matches("<polyline").count(), 2);
    }

    #[test]
    fn hpair_rendering_shades_regions() {
        let t = sample_tuple();
        let h = project_pi(&t, 2).unwrap();
        let vs = regions(&h, 1, RegionClass::II);
        let a = ascii_hpair(&h, &vs);
        assert!(!a.is_empty());
        if !vs.is_empty() {
            assert!(a.contains('#'));
        }
        let s = svg_hpair(&h, &vs);
        assert!(s.contains("stroke-dasharray"));
        assert_eq!(s, svg_hpair(&h, &vs));
    }
}
