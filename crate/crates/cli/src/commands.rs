use std::path::Path;

use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use serde_json::json;
use vogel_core::configs::{
    emit_svg, enumerate_n3, extract_permutations, find_coloring, search_144 as run_search_144, sketch_from_q, Coloring,
    ConfigurationTable,
};
use vogel_core::formula::{adjoint_formula, EvalResult};
use vogel_core::identity::{check_on_lines, check_on_plane, IdentityReport, Verdict as IdVerdict, Witness};
use vogel_core::qsearch::builtins::{builtin_q_prop4, match_family_to};
use vogel_core::qsearch::search::{classify_three_line_classical, enumerate};
use vogel_core::qsearch::system::{LineSet, MultiplierAssignment};
use vogel_core::rational::{fmt_rational, int, rat, Rational};
use vogel_core::vogelplane::{vogel_point, Family, PlaneObject, ProjPoint};
use vogel_core::Error as CoreError;

use crate::{input, Ctx, FactorSource, LinesArg, TableSource, Verdict};

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Positive
    } else {
        Verdict::Negative
    }
}

pub fn verdict_text(v: &IdVerdict) -> String {
    match v {
        IdVerdict::IdenticallyOne => "IdenticallyOne".into(),
        IdVerdict::IdenticallyConstant { value } => format!("IdenticallyConstant({})", fmt_rational(value)),
        IdVerdict::NotConstant => "NotConstant".into(),
        IdVerdict::VanishingFactor { factors } => {
            let names: Vec<String> = factors.iter().map(|f| format!("{:?} {}", f.side, f.index + 1).to_lowercase()).collect();
            format!("VanishingFactor({})", names.join(", "))
        }
    }
}

fn witness_text(r: &IdentityReport) -> String {
    match &r.witness {
        Some(Witness::ClassicalSample { point, value }) => format!(" at {point}: {value}"),
        Some(Witness::QuantumSample { point, x, value }) => format!(" at {point}, x = {x}: {value:.12}"),
        _ => String::new(),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn eval(
    ctx: &Ctx,
    src: &FactorSource,
    algebra: Option<&str>,
    param: Option<&str>,
    point: Option<&str>,
    basis: &str,
    x: Option<f64>,
    symbolic: bool,
) -> Result<Verdict> {
    let f = input::factor(src)?;
    if symbolic {
        let family = Family::parse(algebra.expect("clap requires --algebra"))?;
        let var = if family == Family::Exc { "n" } else { "N" };
        let r = f.as_classical().on_family(family);
        let text = match (r.simplified(), r.reduced()) {
            (Some(p), _) => p.display_in(var),
            (None, Some((n, d))) => format!("({}) / ({})", n.display_in(var), d.display_in(var)),
            (None, None) => bail!("the formula has a vanishing denominator on the {family} line"),
        };
        if ctx.json {
            print_json(&json!({ "family": family, "variable": var, "polynomial": r.simplified().is_some(), "expression": text }))?;
        } else {
            println!("{family}: {text}");
        }
        return Ok(Verdict::Positive);
    }
    let p = match (algebra, point) {
        (Some(a), _) => {
            let family = Family::parse(a)?;
            let param = input::rational(param.ok_or_else(|| anyhow!("--algebra needs --param"))?)?;
            vogel_point(family, param).point
        }
        (None, Some(text)) => ProjPoint::new(input::point_coords(text)?, input::basis(basis)?)?,
        (None, None) => bail!("give --algebra with --param, or --point"),
    };
    match x {
        None => {
            let v = f.as_classical().eval_classical(&p);
            if ctx.json {
                print_json(&json!({ "point": p, "result": v }))?;
            } else {
                println!("{v}");
            }
        }
        Some(x) => {
            let v = f.as_quantum()?.eval_quantum(&p, x)?;
            if ctx.json {
                print_json(&json!({ "point": p, "x": x, "value": v, "exact": false }))?;
            } else {
                println!("{v:.15} (numeric, not exact)");
            }
        }
    }
    Ok(Verdict::Positive)
}

pub fn check_identity(ctx: &Ctx, src: &FactorSource, lines: &str, plane: bool) -> Result<Verdict> {
    let f = input::factor(src)?;
    if plane {
        let r = check_on_plane(&f, ctx.seed);
        if ctx.json {
            print_json(&r)?;
        } else {
            println!("plane: {}{}", verdict_text(&r.verdict), witness_text(&r));
        }
        return Ok(verdict(r.is_one()));
    }
    let ls = input::lines(lines)?;
    if ls.is_empty() {
        bail!("no lines given");
    }
    let forms: Vec<_> = ls.iter().map(|(_, f)| f.clone()).collect();
    let reports = check_on_lines(&f, &forms, ctx.seed);
    if ctx.json {
        let out: Vec<_> = ls.iter().zip(&reports).map(|((label, _), r)| json!({ "label": label, "report": r })).collect();
        print_json(&out)?;
    } else {
        for ((label, form), r) in ls.iter().zip(&reports) {
            println!("{label} ({form} = 0): {}{}", verdict_text(&r.verdict), witness_text(r));
        }
    }
    Ok(verdict(reports.iter().all(IdentityReport::is_one)))
}

fn signs(v: &[Rational]) -> String {
    v.iter().map(|x| if *x == int(1) { "+".to_string() } else if *x == int(-1) { "-".to_string() } else { fmt_rational(x) }).collect::<Vec<_>>().join("")
}

fn mult_text(m: &MultiplierAssignment) -> String {
    let mut s = format!("c={} k={}", signs(&m.c), signs(&m.kmul));
    if let Some(r) = &m.r {
        s.push_str(&format!(" r={}", signs(r)));
    }
    s
}

pub fn search(ctx: &Ctx, k: usize, lines: LinesArg, classical: bool, budget: Option<u64>, match_prop4: bool) -> Result<Verdict> {
    let lines = match lines {
        LinesArg::Three => LineSet::Three,
        LinesArg::Four => LineSet::Four,
    };
    if classical {
        if lines != LineSet::Three {
            bail!("the classical classification covers three lines only");
        }
        let rep = classify_three_line_classical(k, ctx.seed)?;
        let nt = rep.nontrivial_pairs();
        if ctx.json {
            print_json(&rep)?;
        } else {
            println!("k={k}, three lines, classical: {} of {} (s, p) pairs admit nontrivial solutions", nt.len(), rep.pairs.len());
            for p in &nt {
                println!(
                    "  s={} p={}: {}/{} multiplier components nontrivial, {} match the closed-form k=3 factor",
                    p.s, p.p, p.nontrivial_components, p.components, p.matched_closed_form
                );
            }
        }
        return Ok(verdict(!nt.is_empty()));
    }
    let rep = enumerate(k, lines, true, budget, ctx.seed)?;
    let matches: Option<Vec<bool>> = match_prop4.then(|| {
        let target = builtin_q_prop4(&int(2), &int(3), &int(5), &int(7), true).expect("nonzero forms");
        rep.families.iter().map(|f| match_family_to(f, &target).is_some()).collect()
    });
    if ctx.json {
        print_json(&json!({ "report": rep, "matches_prop4": matches }))?;
    } else {
        println!(
            "k={k}, {} lines, quantum: {} tuples, {} up to relabeling, {} examined{}; {} with nontrivial three-line part; {} nontrivial families",
            lines.count(),
            rep.prefixes_total,
            rep.prefixes_canonical,
            rep.prefixes_examined,
            if rep.partial { " (budget reached)" } else { "" },
            rep.prefixes_nontrivial,
            rep.families.len()
        );
        for (i, f) in rep.families.iter().enumerate() {
            let tag = match &matches {
                Some(m) if m[i] => "  [matches closed form]",
                _ => "",
            };
            println!("  {} {} dim={}{tag}", f.system.perms, mult_text(&f.system.mult), f.dim());
        }
        if let Some(m) = &matches {
            println!("families matching the closed-form four-line factor: {}", m.iter().filter(|&&b| b).count());
        }
    }
    Ok(verdict(!rep.families.is_empty()))
}

fn parse_n3(kind: &str) -> Result<usize> {
    let (n, g) = kind.split_once('_').ok_or_else(|| anyhow!("type must look like 9_3"))?;
    if g != "3" {
        bail!("only (n_3) types can be enumerated");
    }
    n.parse().map_err(|_| anyhow!("bad point count {n:?}"))
}

fn colorable(t: &ConfigurationTable) -> Result<Option<Coloring>> {
    if t.l % 3 != 0 || t.gamma != 3 {
        return Ok(None);
    }
    Ok(find_coloring(t, t.l / 3)?)
}

pub fn configs_enumerate(ctx: &Ctx, kind: &str, color: bool) -> Result<Verdict> {
    let n = parse_n3(kind)?;
    let tables = enumerate_n3(n)?;
    let colorings: Vec<Option<Coloring>> = if color { tables.iter().map(colorable).collect::<Result<_>>()? } else { Vec::new() };
    let ncol = colorings.iter().filter(|c| c.is_some()).count();
    if ctx.json {
        let items: Vec<_> = tables
            .iter()
            .enumerate()
            .map(|(i, t)| json!({ "table": t, "coloring": colorings.get(i).cloned().flatten() }))
            .collect();
        print_json(&json!({ "n": n, "classes": tables.len(), "colorable": color.then_some(ncol), "tables": items }))?;
    } else {
        if color {
            println!("{} classes, {} colorable", tables.len(), ncol);
        } else {
            println!("{} classes", tables.len());
        }
        for (i, t) in tables.iter().enumerate() {
            let mark = match colorings.get(i) {
                Some(Some(_)) => "  colorable",
                Some(None) => "  not colorable",
                None => "",
            };
            println!("  [{}] {}{mark}", i + 1, t.compact());
        }
    }
    Ok(Verdict::Positive)
}

fn validated(src: &TableSource) -> Result<ConfigurationTable> {
    let t = input::table(src)?;
    if let Err(v) = t.validate() {
        let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
        bail!("invalid table: {}", msgs.join("; "));
    }
    Ok(t)
}

fn class_text(t: &ConfigurationTable, idx: &[usize]) -> String {
    let cols: Vec<String> = idx.iter().map(|&j| t.columns[j].iter().map(usize::to_string).collect::<Vec<_>>().join(if t.p < 10 { "" } else { "," })).collect();
    format!("{{{}}}", cols.join(", "))
}

pub fn configs_color(ctx: &Ctx, src: &TableSource) -> Result<Verdict> {
    let t = validated(src)?;
    if t.gamma != 3 || t.l % 3 != 0 {
        bail!("a coloring needs gamma = 3 and a line count divisible by 3");
    }
    match find_coloring(&t, t.l / 3)? {
        Some(c) => {
            if ctx.json {
                print_json(&c)?;
            } else {
                println!("black={} red={} green={}", class_text(&t, &c.black), class_text(&t, &c.red), class_text(&t, &c.green));
            }
            Ok(Verdict::Positive)
        }
        None => {
            if ctx.json {
                print_json(&serde_json::Value::Null)?;
            } else {
                println!("no coloring");
            }
            Ok(Verdict::Negative)
        }
    }
}

pub fn extract_perms(ctx: &Ctx, src: &TableSource, coloring: Option<&Path>) -> Result<Verdict> {
    let t = validated(src)?;
    let c = match coloring {
        Some(path) => input::read_json::<Coloring>(path)?,
        None => match colorable(&t)? {
            Some(c) => c,
            None => {
                println!("no coloring");
                return Ok(Verdict::Negative);
            }
        },
    };
    let perms = extract_permutations(&t, &c)?;
    if ctx.json {
        print_json(&json!({
            "s": perms.s.to_string(),
            "p": perms.p.to_string(),
            "v": perms.v.as_ref().map(ToString::to_string),
            "images": perms,
        }))?;
    } else {
        println!("{perms}");
    }
    Ok(Verdict::Positive)
}

pub fn sketch(ctx: &Ctx, src: &FactorSource, lines: &str, out: Option<&Path>) -> Result<Verdict> {
    let f = input::factor(src)?;
    let ls = input::lines(lines)?;
    let forms: Vec<_> = ls.iter().map(|(_, f)| f.clone()).collect();
    let (sk, table) = match sketch_from_q(&f, &forms) {
        Ok(r) => r,
        Err(CoreError::NotAQPicture(msg)) => {
            if ctx.json {
                print_json(&json!({ "error": "not_a_q_picture", "message": msg }))?;
            } else {
                println!("not a Q picture: {msg}");
            }
            return Ok(Verdict::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = out {
        emit_svg(&sk, path)?;
    }
    if ctx.json {
        print_json(&json!({ "sketch": sk, "table": table, "svg": out }))?;
    } else {
        println!("({}_{} {}_{}) with {} triple points per black line", table.p, table.gamma, table.l, table.pi, sk.k());
        for (i, p) in sk.points.iter().enumerate() {
            println!("  point {}: {p}", i + 1);
        }
        for (b, tps) in sk.triple_points.iter().enumerate() {
            let pts: Vec<String> = tps.iter().map(|tp| format!("{}(r{} g{})", tp.point + 1, tp.red + 1, tp.green + 1)).collect();
            println!("  {}: {}", ls[b].0, pts.join(" "));
        }
        println!("table: {}", table.compact());
        if let Some(path) = out {
            println!("wrote {}", path.display());
        }
    }
    Ok(Verdict::Positive)
}

pub fn vogel_table(ctx: &Ctx) -> Result<Verdict> {
    let rows: [(&str, Family, Rational); 8] = [
        ("sl(5)", Family::Sl, int(5)),
        ("so(7)", Family::So, int(7)),
        ("sp(6)", Family::Sp, int(3)),
        ("G2", Family::Exc, rat(-2, 3)),
        ("F4", Family::Exc, int(1)),
        ("E6", Family::Exc, int(2)),
        ("E7", Family::Exc, int(4)),
        ("E8", Family::Exc, int(8)),
    ];
    let adj = adjoint_formula();
    let mut out = Vec::new();
    for (name, family, param) in rows {
        let ap = vogel_point(family, param.clone());
        let dim = match adj.eval_classical(&ap.point) {
            EvalResult::Finite(v) => fmt_rational(&v),
            other => other.to_string(),
        };
        out.push((name, ap, dim));
    }
    if ctx.json {
        let items: Vec<_> = out.iter().map(|(name, ap, dim)| json!({ "algebra": name, "row": ap, "primed": ap.point.to_primed().ok(), "adjoint_dim": dim })).collect();
        print_json(&items)?;
    } else {
        println!("sl(N)  (α, β, γ) = (-2, 2, N)        t = N");
        println!("so(N)  (α, β, γ) = (-2, 4, N-4)      t = N-2");
        println!("sp(2N) (α, β, γ) = (-2, 1, N+2)      t = N+1");
        println!("exc(n) (α, β, γ) = (-2, n+4, 2n+4)   t = 3n+6");
        println!();
        for (name, ap, dim) in &out {
            let primed = ap.point.to_primed().expect("unprimed row");
            println!("{name:6} {}  primed {}  t = {}  dim ad = {dim}", ap.point, primed, fmt_rational(&ap.t));
        }
    }
    Ok(Verdict::Positive)
}

pub fn search_144(ctx: &Ctx, budget: u64) -> Result<Verdict> {
    let rep = run_search_144(budget)?;
    if ctx.json {
        print_json(&rep)?;
    } else {
        println!(
            "{} black lines, pairwise distinct: {}; pool of {} red candidates",
            rep.black_lines, rep.black_lines_distinct, rep.pool_size
        );
        println!(
            "{} nodes of budget {}{}; deepest red set {} of 12, {} green candidates there",
            rep.nodes,
            rep.budget,
            if rep.exhausted { " (pool exhausted)" } else { "" },
            rep.max_depth,
            rep.green_candidates_at_best
        );
        for d in &rep.per_depth {
            println!("  depth {:2}: {} nodes, {} admissible extensions", d.depth, d.nodes, d.candidates);
        }
        println!("realization found: {}", rep.realization_found);
    }
    Ok(Verdict::Positive)
}
