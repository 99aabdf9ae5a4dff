//! Scripted checks behind `vogel reproduce`.

use anyhow::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vogel_core::configs::{enumerate_n3, extract_permutations, find_coloring, isomorphic, render_svg, sketch_from_q};
use vogel_core::identity::{basic_lines, check_on_lines, check_on_plane, check_symmetric, Verdict as IdVerdict, Witness};
use vogel_core::qsearch::builtins::{
    builtin_q33, builtin_q_prop4, match_family_to, prop4_multipliers, prop4_perms, prop4_values, Branch, Prop4Free,
};
use vogel_core::qsearch::perm::Perm;
use vogel_core::qsearch::search::{classify_three_line_classical, enumerate};
use vogel_core::qsearch::solve::{solve, SolveOutcome};
use vogel_core::qsearch::system::{build_system, verify_solution, LineSet};
use vogel_core::rational::{int, random_nonzero};
use vogel_core::vogelplane::{distinguished_line, Basis};

use crate::commands::verdict_text;
use crate::{Claim, Ctx, Verdict};

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }
}

pub fn reproduce(ctx: &Ctx, claim: Claim) -> Result<Verdict> {
    let mut c = Checks::default();
    let name = match claim {
        Claim::P1Remark => {
            p1(ctx, &mut c)?;
            "P1-remark"
        }
        Claim::P2K3 => {
            p2(ctx, &mut c)?;
            "P2-k3"
        }
        Claim::P3 => {
            p3(&mut c)?;
            "P3"
        }
        Claim::P4 => {
            p4(ctx, &mut c)?;
            "P4"
        }
    };
    let pass = c.0.iter().all(|x| x.pass);
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "claim": name, "pass": pass, "checks": c.0 }))?);
    } else {
        for x in &c.0 {
            println!("{} {}: {}", if x.pass { "PASS" } else { "FAIL" }, x.name, x.detail);
        }
        println!("{name}: {}", if pass { "all checks pass" } else { "some checks failed" });
    }
    Ok(if pass { Verdict::Positive } else { Verdict::Negative })
}

fn p1(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let q = builtin_q33(&int(2), &int(3), &int(1), &int(1), false)?;
    let three = check_on_lines(&q, &basic_lines(false), ctx.seed);
    let texts: Vec<String> = three.iter().map(|r| verdict_text(&r.verdict)).collect();
    c.add("q33 on the three lines", three.iter().all(|r| r.is_one()), texts.join(", "));

    let plane = check_on_plane(&q, ctx.seed);
    let witness = match &plane.witness {
        Some(Witness::ClassicalSample { point, value }) => format!("{point} -> {value}"),
        _ => "no witness".into(),
    };
    c.add("q33 on the plane", plane.verdict == IdVerdict::NotConstant && witness.ends_with("27/26"), witness);

    let sp = check_on_lines(&q, &[distinguished_line("sp", Basis::Primed)?], ctx.seed);
    c.add("q33 on 3α′−β′", sp[0].verdict == IdVerdict::NotConstant, verdict_text(&sp[0].verdict));

    let rep = classify_three_line_classical(3, ctx.seed)?;
    let nt = rep.nontrivial_pairs();
    let only_cycles = !nt.is_empty() && nt.iter().all(|p| p.s.is_fixed_point_free() && p.p.is_fixed_point_free() && p.s != p.p);
    let cycles_found = rep.pairs.iter().filter(|p| p.s.is_fixed_point_free() && p.p.is_fixed_point_free() && p.s != p.p).all(|p| p.nontrivial());
    let pairs: Vec<String> = nt.iter().map(|p| format!("s={} p={}", p.s, p.p)).collect();
    c.add(
        "k=3 nontrivial pairs are the fixed-point-free non-coinciding ones",
        only_cycles && cycles_found,
        format!("{} of {} pairs: {}", nt.len(), rep.pairs.len(), pairs.join("; ")),
    );
    let matched = nt.iter().all(|p| p.matched_closed_form == p.nontrivial_components);
    c.add("k=3 families match the closed-form factor", matched && !nt.is_empty(), "every nontrivial component matched");
    let id = Perm::identity(3);
    let trivial = rep.pairs.iter().find(|p| p.s == id && p.p == id).is_some_and(|p| !p.nontrivial());
    c.add("identity pairing is trivial", trivial, "s = p = id");
    Ok(())
}

fn p2(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    for k in 1..=3 {
        let rep = enumerate(k, LineSet::Three, true, None, ctx.seed)?;
        c.add(
            &format!("k={k} three-line quantum enumeration"),
            rep.families.is_empty() && !rep.partial,
            format!("{} tuples, {} examined, {} nontrivial families", rep.prefixes_total, rep.prefixes_examined, rep.families.len()),
        );
    }
    let rep = enumerate(4, LineSet::Four, true, None, ctx.seed)?;
    let target = builtin_q_prop4(&int(2), &int(3), &int(5), &int(7), true)?;
    let m = rep.families.iter().filter(|f| match_family_to(f, &target).is_some()).count();
    c.add(
        "k=4 four-line quantum search",
        m > 0,
        format!("{} nontrivial families, {m} match the closed-form four-line factor", rep.families.len()),
    );
    Ok(())
}

fn p3(c: &mut Checks) -> Result<()> {
    let tables = enumerate_n3(9)?;
    c.add("(9_3) classes", tables.len() == 3, format!("{} classes", tables.len()));
    let mut colorable = Vec::new();
    for t in &tables {
        if find_coloring(t, 3)?.is_some() {
            colorable.push(t.clone());
        }
    }
    c.add("colorable (9_3) classes", colorable.len() == 1, format!("{} colorable", colorable.len()));

    let q = builtin_q33(&int(2), &int(3), &int(1), &int(1), false)?;
    let (sk, table) = sketch_from_q(&q, &basic_lines(false))?;
    let iso = colorable.first().is_some_and(|t| isomorphic(t, &table));
    c.add("sketch of the three-line factor", iso, format!("table {} isomorphic to the colorable class: {iso}", table.compact()));
    let per_line: Vec<usize> = sk.triple_points.iter().map(Vec::len).collect();
    c.add("triple points per black line", per_line.iter().all(|&n| n == 3), format!("{per_line:?}"));
    let svg = render_svg(&sk)?;
    let circles = svg.matches("<circle").count();
    c.add("SVG sketch", circles == 9, format!("{circles} points drawn"));
    Ok(())
}

fn p4(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let q = builtin_q_prop4(&int(2), &int(3), &int(5), &int(7), false)?;
    let (sk, table) = sketch_from_q(&q, &basic_lines(true))?;
    let shape = (table.p, table.gamma, table.l, table.pi);
    c.add(
        "(16_3 12_4) table",
        table.is_valid() && shape == (16, 3, 12, 4),
        format!("({}_{} {}_{}) {}", shape.0, shape.1, shape.2, shape.3, table.compact()),
    );
    let coloring = sk.coloring();
    let valid = coloring.validate(&table);
    c.add("construction coloring", valid.is_ok(), valid.err().map_or("valid".to_string(), |e| e.to_string()));
    let perms = extract_permutations(&table, &coloring)?;
    c.add("extracted (s, p, v)", perms == prop4_perms(), perms.to_string());

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let (mut verified, mut trivial) = (0, 0);
    for _ in 0..10 {
        let free = Prop4Free::random(&mut rng, 50);
        let sys = build_system(4, LineSet::Four, prop4_perms(), prop4_multipliers(&free, Branch::Minus))?;
        if verify_solution(&sys, &prop4_values(&free)).passed() {
            verified += 1;
        }
        let plus = build_system(4, LineSet::Four, prop4_perms(), prop4_multipliers(&free, Branch::Plus))?;
        if matches!(solve(&plus, false, ctx.seed), SolveOutcome::Trivial(_)) {
            trivial += 1;
        }
    }
    c.add("displayed relations solve the system", verified == 10, format!("{verified}/10 draws"));
    c.add("plus branch is trivial", trivial == 10, format!("{trivial}/10 draws"));

    let lines = basic_lines(true);
    let (mut ok, mut asym, mut drawn) = (0, 0, 0);
    while drawn < 10 {
        let v: Vec<_> = (0..4).map(|_| random_nonzero(&mut rng, 30)).collect();
        let Ok(cl) = builtin_q_prop4(&v[0], &v[1], &v[2], &v[3], false) else { continue };
        let qu = builtin_q_prop4(&v[0], &v[1], &v[2], &v[3], true)?;
        drawn += 1;
        let both = [cl.clone(), qu].iter().all(|f| check_on_lines(f, &lines, ctx.seed).iter().all(|r| r.is_one()));
        if both {
            ok += 1;
        }
        if !check_symmetric(&cl) {
            asym += 1;
        }
    }
    c.add("four-line factor on α′, β′, γ′, 3α′−β′", ok == 10, format!("{ok}/10 draws, classical and quantum"));
    c.add("four-line factor is not symmetric", asym == 10, format!("{asym}/10 draws"));
    Ok(())
}
