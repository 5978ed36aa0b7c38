//! Command-line driver for the type-D Jacobi-Trudi engine.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use djt::determinant::{jt_det_e, jt_det_h};
use djt::folding::{enumerate_p, enumerate_p2, phi, third_sum};
use djt::graphs::{all_graphs, has_odd_segment, lemma_a2_rhs, segments};
use djt::partition::SkewDiagram;
use djt::paths::{enumerate_tuples, first_sum, signed_total_sum, PathTuple, TupleMode};
use djt::regions::{positive_sum_p2, project_pi, regions, RegionClass};
use djt::render;
use djt::ring::{eq_in_z, ZPolynomial};
use djt::series::{series_e, series_h, series_mul};
use djt::tableaux::{
    enumerate_hv, explicit_rules, extra_rule_lu, extra_rule_paths, tableau_sum,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "djt",
    about = "Exact type-D Jacobi-Trudi determinants and their path/tableau expansions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFmt {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderObject {
    /// A tuple of lattice paths for the shape.
    Paths,
    /// Projected lower/upper profiles with their index-1 regions shaded.
    Hpair,
}

#[derive(Args)]
struct Common {
    /// Rank of the root system (2..=4).
    #[arg(long, default_value_t = 2)]
    n: u8,
    /// Skew shape, e.g. "3,2,1/1" (outer partition, optional /inner).
    #[arg(long)]
    shape: Option<String>,
    /// Series truncation degree; default lambda_1 + lambda'_1 + 2.
    #[arg(long)]
    trunc: Option<usize>,
    /// Seed for the randomized verification samples.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Rendering format for the render subcommand.
    #[arg(long = "render", value_enum, default_value_t = RenderFmt::Ascii)]
    render: RenderFmt,
    /// Refuse shapes with more cells than this.
    #[arg(long, default_value_t = 9)]
    max_cells: usize,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jacobi-Trudi determinant in h-entries.
    DetH(Common),
    /// Jacobi-Trudi determinant in e-entries.
    DetE(Common),
    /// Signed sum over all path tuples (Lindstrom-Gessel-Viennot form).
    SumPaths(Common),
    /// Signed sum over tuples with no ordinary intersection.
    SumFirst(Common),
    /// Positive sum over the sign-cancelled tuple family.
    SumPositive(Common),
    /// Positive sum over tableaux satisfying the extra rule.
    SumTableaux(Common),
    /// Run every identity and property check for one shape.
    Verify(Common),
    /// Draw a path tuple or a profile pair with shaded regions.
    Render {
        #[command(flatten)]
        common: Common,
        /// What to draw.
        #[arg(long, value_enum, default_value_t = RenderObject::Paths)]
        object: RenderObject,
        /// Which enumerated object to draw (modulo the family size).
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Check the tableau extra-rule variants against each other on one shape.
    CheckRules(Common),
    /// Exhaustively verify the arc-graph lemmas on small graphs.
    GraphsSelftest {
        #[command(flatten)]
        common: Common,
        /// Largest vertex count to enumerate.
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
    },
}

#[derive(Debug)]
enum CmdError {
    /// Bad arguments or violated size guards: exit 2.
    Usage(String),
    /// An identity failed to hold: exit 1.
    Verification(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

impl From<djt::error::Error> for CmdError {
    fn from(e: djt::error::Error) -> Self {
        CmdError::Usage(e.to_string())
    }
}

type CmdResult = Result<(), CmdError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::DetH(c) => cmd_det(c, true),
        Cmd::DetE(c) => cmd_det(c, false),
        Cmd::SumPaths(c) => cmd_sum(c, "sum-paths"),
        Cmd::SumFirst(c) => cmd_sum(c, "sum-first"),
        Cmd::SumPositive(c) => cmd_sum(c, "sum-positive"),
        Cmd::SumTableaux(c) => cmd_sum(c, "sum-tableaux"),
        Cmd::Verify(c) => cmd_verify(c),
        Cmd::Render {
            common,
            object,
            index,
        } => cmd_render(common, *object, *index),
        Cmd::CheckRules(c) => cmd_check_rules(c),
        Cmd::GraphsSelftest {
            common,
            max_vertices,
        } => cmd_graphs_selftest(common, *max_vertices),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(2)
        }
    }
}

fn shape_of(c: &Common) -> Result<SkewDiagram, CmdError> {
    let s = c
        .shape
        .as_deref()
        .ok_or_else(|| CmdError::Usage("--shape is required".into()))?;
    let d: SkewDiagram = s
        .parse()
        .map_err(|e: djt::error::Error| CmdError::Usage(e.to_string()))?;
    if c.n < 2 || c.n > 4 {
        return Err(CmdError::Usage(format!("--n must be in 2..=4, got {}", c.n)));
    }
    if d.num_cells() > c.max_cells {
        return Err(CmdError::Usage(format!(
            "shape has {} cells, exceeding the limit of {} (raise --max-cells)",
            d.num_cells(),
            c.max_cells
        )));
    }
    Ok(d)
}

fn default_trunc(c: &Common, d: &SkewDiagram) -> usize {
    c.trunc.unwrap_or_else(|| {
        (d.lambda.part(0) + d.lambda.conjugate().part(0) + 2) as usize
    })
}

fn emit(c: &Common, text: String) -> CmdResult {
    match &c.out {
        Some(p) => std::fs::write(p, text.as_bytes())?,
        None => println!("{text}"),
    }
    Ok(())
}

fn poly_payload(p: &ZPolynomial) -> serde_json::Value {
    p.to_json()
}

fn cmd_det(c: &Common, use_h: bool) -> CmdResult {
    let d = shape_of(c)?;
    let p = if use_h {
        jt_det_h(&d, c.n)
    } else {
        jt_det_e(&d, c.n)
    };
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": if use_h { "det-h" } else { "det-e" },
            "shape": d.to_string(),
            "n": c.n,
            "num_terms": p.num_terms(),
            "polynomial": poly_payload(&p),
        }))
        .unwrap(),
        Format::Text => format!("{p}"),
    };
    emit(c, text)
}

fn cmd_sum(c: &Common, which: &str) -> CmdResult {
    let d = shape_of(c)?;
    let needs_positivity = matches!(which, "sum-positive" | "sum-tableaux");
    if needs_positivity && !d.positivity_condition(c.n) {
        let text = match c.format {
            Format::Json => serde_json::to_string_pretty(&json!({
                "command": which,
                "shape": d.to_string(),
                "n": c.n,
                "status": "skipped",
                "reason": "positivity condition fails for this shape and rank",
            }))
            .unwrap(),
            Format::Text => {
                format!("skipped: positivity condition fails for {d} at n={}", c.n)
            }
        };
        return emit(c, text);
    }
    let p = match which {
        "sum-paths" => signed_total_sum(&d, c.n)?,
        "sum-first" => first_sum(&d, c.n)?,
        "sum-positive" => positive_sum_p2(&d, c.n)?,
        "sum-tableaux" => tableau_sum(&d, c.n)?,
        _ => unreachable!(),
    };
    let det = jt_det_h(&d, c.n);
    let matches = eq_in_z(&p, &det, c.n);
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": which,
            "shape": d.to_string(),
            "n": c.n,
            "num_terms": p.num_terms(),
            "matches_determinant": matches,
            "polynomial": poly_payload(&p),
        }))
        .unwrap(),
        Format::Text => format!(
            "{p}\n{} determinant",
            if matches { "matches" } else { "DIFFERS FROM" }
        ),
    };
    emit(c, text)?;
    if matches {
        Ok(())
    } else {
        Err(CmdError::Verification(format!(
            "{which} disagrees with the determinant for {d} at n={}",
            c.n
        )))
    }
}

struct Check {
    name: &'static str,
    status: &'static str,
    detail: String,
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check {
        name,
        status: if ok { "pass" } else { "fail" },
        detail,
    }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check {
        name,
        status: "skip",
        detail: why.to_string(),
    }
}

/// Weight multiset of a tuple family, specialized at rank `n`.
fn weight_multiset(ts: &[PathTuple], n: u8) -> Vec<String> {
    let mut w: Vec<String> = ts
        .iter()
        .map(|t| format!("{:?}", t.weight(n).specialize(n)))
        .collect();
    w.sort();
    w
}

fn cmd_verify(c: &Common) -> CmdResult {
    let d = shape_of(c)?;
    let n = c.n;
    let k = default_trunc(c, &d).min(8);
    let mut checks = vec![];

    // Generating-series duality up to the truncation degree.
    let prod = series_mul(&series_h(n, k), &series_e(n, k).negate_x())
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let dual_ok = (0..=k).all(|m| {
        if m == 0 {
            *prod.coeff(0) == ZPolynomial::one()
        } else {
            prod.coeff(m).is_zero()
        }
    });
    checks.push(check(
        "series-duality",
        dual_ok,
        format!("H*E(-X) = 1 up to degree {k}"),
    ));

    let det_h = jt_det_h(&d, n);
    let det_e = jt_det_e(&d, n);
    checks.push(check(
        "determinant-h-vs-e",
        eq_in_z(&det_h, &det_e, n),
        format!("{} vs {} terms", det_h.num_terms(), det_e.num_terms()),
    ));

    let signed = signed_total_sum(&d, n)?;
    let first = first_sum(&d, n)?;
    checks.push(check(
        "signed-equals-first",
        signed.sub(&first).is_zero(),
        "free-ring equality after ordinary-intersection cancellation".into(),
    ));
    checks.push(check(
        "first-equals-determinant",
        eq_in_z(&first, &det_h, n),
        format!("{} tuple terms", first.num_terms()),
    ));

    if d.positivity_condition(n) {
        let pos = positive_sum_p2(&d, n)?;
        checks.push(check(
            "positive-sum",
            eq_in_z(&pos, &det_h, n),
            format!("{} positive terms", pos.num_terms()),
        ));
        let p2 = enumerate_p2(&d, n)?;
        let p = enumerate_p(&d, n)?;
        let mut images: Vec<PathTuple> = p2
            .iter()
            .map(|t| phi(t, n))
            .collect::<Result<_, _>>()
            .map_err(|e| CmdError::Usage(e.to_string()))?;
        images.sort();
        images.dedup();
        let mut target = p.clone();
        target.sort();
        let bijective = images == target;
        let weights_ok = weight_multiset(&p2, n) == weight_multiset(&p, n);
        checks.push(check(
            "folding-bijection",
            bijective && weights_ok,
            format!("|P2| = {}, |P| = {}", p2.len(), p.len()),
        ));
        let third = third_sum(&d, n)?;
        checks.push(check(
            "third-sum",
            eq_in_z(&third, &det_h, n),
            format!("{} terms", third.num_terms()),
        ));
        let tabs = enumerate_hv(&d, n)?;
        let tab = tableau_sum(&d, n)?;
        checks.push(check(
            "tableau-sum",
            eq_in_z(&tab, &det_h, n),
            format!("{} HV-tableaux, {} satisfy the extra rule", tabs.len(), tab.num_terms()),
        ));
        let mut rules_ok = true;
        let explicit_applies = d.num_rows() <= 3 || d.num_cols() <= 2;
        for t in &tabs {
            let via_paths = extra_rule_paths(t, n)?;
            let via_lu = extra_rule_lu(t, n);
            if via_paths != via_lu {
                rules_ok = false;
            }
            if explicit_applies && explicit_rules(t, n)? != via_lu {
                rules_ok = false;
            }
        }
        checks.push(check(
            "rule-equivalence",
            rules_ok,
            format!(
                "path rule vs configuration rule{} on {} tableaux",
                if explicit_applies {
                    " vs explicit lists"
                } else {
                    ""
                },
                tabs.len()
            ),
        ));
    } else {
        for name in [
            "positive-sum",
            "folding-bijection",
            "third-sum",
            "tableau-sum",
            "rule-equivalence",
        ] {
            checks.push(skip(name, "positivity condition fails"));
        }
    }

    let failed: Vec<&Check> = checks.iter().filter(|c| c.status == "fail").collect();
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": "verify",
            "shape": d.to_string(),
            "n": n,
            "ok": failed.is_empty(),
            "checks": checks
                .iter()
                .map(|c| json!({"name": c.name, "status": c.status, "detail": c.detail}))
                .collect::<Vec<_>>(),
        }))
        .unwrap(),
        Format::Text => checks
            .iter()
            .map(|c| format!("{:<26} {:<4} {}", c.name, c.status, c.detail))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(c, text)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CmdError::Verification(format!(
            "{} check(s) failed for {d} at n={n}",
            failed.len()
        )))
    }
}

fn cmd_render(c: &Common, object: RenderObject, index: usize) -> CmdResult {
    let d = shape_of(c)?;
    let n = c.n;
    let text = match object {
        RenderObject::Paths => {
            let tuples = enumerate_tuples(&d, n, TupleMode::All)?;
            if tuples.is_empty() {
                return Err(CmdError::Usage(format!("no path tuples for {d} at n={n}")));
            }
            let t = &tuples[index % tuples.len()];
            match c.render {
                RenderFmt::Ascii => render::ascii_paths(t),
                RenderFmt::Svg => render::svg_paths(t),
            }
        }
        RenderObject::Hpair => {
            let tuples = enumerate_tuples(&d, n, TupleMode::NoOrdinary)?;
            if tuples.is_empty() {
                return Err(CmdError::Usage(format!("no path tuples for {d} at n={n}")));
            }
            let t = &tuples[index % tuples.len()];
            let h = project_pi(t, n)?;
            let mut vs = regions(&h, 1, RegionClass::I);
            vs.extend(regions(&h, 1, RegionClass::II));
            match c.render {
                RenderFmt::Ascii => render::ascii_hpair(&h, &vs),
                RenderFmt::Svg => render::svg_hpair(&h, &vs),
            }
        }
    };
    emit(c, text)
}

fn cmd_check_rules(c: &Common) -> CmdResult {
    let d = shape_of(c)?;
    let n = c.n;
    let tabs = enumerate_hv(&d, n)?;
    let explicit_applies = d.num_rows() <= 3 || d.num_cols() <= 2;
    let mut mismatches = vec![];
    let mut kept = 0usize;
    for (i, t) in tabs.iter().enumerate() {
        let via_paths = extra_rule_paths(t, n)?;
        let via_lu = extra_rule_lu(t, n);
        if via_lu {
            kept += 1;
        }
        if via_paths != via_lu {
            mismatches.push((i, "paths-vs-configurations"));
        }
        if explicit_applies && explicit_rules(t, n)? != via_lu {
            mismatches.push((i, "explicit-vs-configurations"));
        }
    }
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": "check-rules",
            "shape": d.to_string(),
            "n": n,
            "hv_tableaux": tabs.len(),
            "satisfying_extra_rule": kept,
            "explicit_lists_apply": explicit_applies,
            "mismatches": mismatches
                .iter()
                .map(|(i, kind)| json!({"index": i, "kind": kind}))
                .collect::<Vec<_>>(),
        }))
        .unwrap(),
        Format::Text => format!(
            "{} HV-tableaux, {} satisfy the extra rule, {} rule mismatches",
            tabs.len(),
            kept,
            mismatches.len()
        ),
    };
    emit(c, text)?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CmdError::Verification(format!(
            "{} rule mismatches for {d} at n={n}",
            mismatches.len()
        )))
    }
}

fn cmd_graphs_selftest(c: &Common, max_vertices: usize) -> CmdResult {
    let mut total = 0usize;
    let mut violations = 0usize;
    for nv in 0..=max_vertices {
        for g in all_graphs(nv) {
            total += 1;
            let no_odd = !has_odd_segment(&g);
            // End labels of every segment differ exactly when no segment is odd.
            let ends_differ = segments(&g).iter().all(|s| {
                let first = *s.vertices.first().unwrap();
                let last = *s.vertices.last().unwrap();
                g.label(first) != g.label(last)
            });
            if no_odd != ends_differ || no_odd != lemma_a2_rhs(&g) {
                violations += 1;
            }
        }
    }
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": "graphs-selftest",
            "max_vertices": max_vertices,
            "graphs_checked": total,
            "violations": violations,
        }))
        .unwrap(),
        Format::Text => format!(
            "{total} arc graphs on up to {max_vertices} vertices checked, {violations} violations"
        ),
    };
    emit(c, text)?;
    if violations == 0 {
        Ok(())
    } else {
        Err(CmdError::Verification(format!(
            "{violations} lemma violations among {total} arc graphs"
        )))
    }
}
