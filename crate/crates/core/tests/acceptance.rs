//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vogel_core::configs::{enumerate_n3, extract_permutations, find_coloring, isomorphic, sketch_from_q};
use vogel_core::identity::{
    basic_lines, check_on_line, check_on_lines, check_on_plane, check_symmetric, numeric_crosscheck, LineParam,
    Verdict, Witness,
};
use vogel_core::poly::Poly;
use vogel_core::qsearch::builtins::{
    builtin_q33, builtin_q_prop4, match_family_to, prop4_multipliers, prop4_perms, prop4_values, Branch, Prop4Free,
};
use vogel_core::qsearch::perm::Perm;
use vogel_core::qsearch::search::{classify_three_line_classical, enumerate};
use vogel_core::qsearch::solve::{solve, SolveOutcome};
use vogel_core::qsearch::system::{build_system, verify_solution, LineSet};
use vogel_core::rational::{int, random_nonzero, rat, Rational};
use vogel_core::vogelplane::{distinguished_lines, vogel_point, Perm3};
use vogel_core::{adjoint_formula, x2k_adn_formula, Basis, EvalResult, Family, FactorProduct, LinearForm, PlaneObject};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dim(f: &FactorProduct, family: Family, param: Rational) -> Option<Rational> {
    f.eval_classical(&vogel_point(family, param).point).finite().cloned()
}

fn c1() -> Outcome {
    let adj = adjoint_formula().as_classical();
    for (family, param, d) in [(Family::Sl, int(5), 24), (Family::So, int(7), 21), (Family::Sp, int(3), 21), (Family::Exc, int(8), 248)] {
        let got = dim(&adj, family, param.clone());
        ensure(got == Some(int(d)), format!("{family:?} {param}: {got:?}, expected {d}"))?;
    }
    let expect = [
        (Family::Sl, Poly::from_ints(&[-1, 0, 1])),
        (Family::So, Poly::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)])),
        (Family::Sp, Poly::from_ints(&[0, 1, 2])),
    ];
    for (family, p) in expect {
        let got = adj.on_family(family).simplified();
        ensure(got.as_ref() == Some(&p), format!("{family:?}: {got:?}"))?;
    }
    Ok("24, 21, 21, 248; N^2-1, N(N-1)/2, N(2N+1)".into())
}

fn c2() -> Outcome {
    let adj = adjoint_formula().as_classical();
    let x2 = x2k_adn_formula(1, 0).as_classical().cancel();
    let ad = x2k_adn_formula(0, 1).as_classical().cancel();
    let points = [
        (Family::Sl, int(5)),
        (Family::So, int(7)),
        (Family::Sp, int(3)),
        (Family::Exc, int(1)),
        (Family::Exc, int(2)),
        (Family::Exc, int(8)),
    ];
    for (family, param) in points {
        let d = dim(&adj, family, param.clone()).ok_or("adjoint dimension undefined")?;
        let want = &d * (&d - int(3)) / int(2);
        let got = dim(&x2, family, param.clone());
        ensure(got.as_ref() == Some(&want), format!("X2 at {family:?} {param}: {got:?}, expected {want}"))?;
        let got = dim(&ad, family, param.clone());
        ensure(got.as_ref() == Some(&d), format!("ad at {family:?} {param}: {got:?}, expected {d}"))?;
    }
    Ok("6 points: X2 = d(d-3)/2 and ad = d".into())
}

fn c3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let three = basic_lines(false);
    let mut drawn = 0;
    while drawn < 20 {
        let v: Vec<Rational> = (0..4).map(|_| random_nonzero(&mut rng, 40)).collect();
        let Ok(q) = builtin_q33(&v[0], &v[1], &v[2], &v[3], false) else { continue };
        drawn += 1;
        let r = check_on_lines(&q, &three, SEED);
        ensure(r.iter().all(|r| r.is_one()), format!("not 1 on the three lines for {v:?}"))?;
    }
    let q = builtin_q33(&int(2), &int(3), &int(1), &int(1), false).map_err(|e| e.to_string())?;
    let plane = check_on_plane(&q, SEED);
    let Some(Witness::ClassicalSample { point, value }) = &plane.witness else {
        return Err(format!("plane verdict {:?} without classical witness", plane.verdict));
    };
    let one = vogel_core::ProjPoint::from_ints([1, 1, 1], Basis::Primed).map_err(|e| e.to_string())?;
    ensure(plane.verdict == Verdict::NotConstant, "plane verdict")?;
    ensure(*point == one && *value == EvalResult::Finite(rat(27, 26)), format!("witness {point} -> {value}"))?;
    let sp = LinearForm::primed([3, -1, 0]);
    for v in [[2, 3, 1, 1], [5, -7, 3, 2], [3, 4, -2, 7]] {
        let v = v.map(int);
        let q = builtin_q33(&v[0], &v[1], &v[2], &v[3], false).map_err(|e| e.to_string())?;
        let r = check_on_line(&q, &sp, SEED);
        ensure(r.verdict == Verdict::NotConstant, format!("3α′−β′ verdict {:?}", r.verdict))?;
    }
    Ok("20 draws IdenticallyOne; plane witness 27/26 at (1:1:1); NotConstant on 3α′−β′".into())
}

fn c4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let lines = basic_lines(true);
    let mut drawn = 0;
    while drawn < 20 {
        let v: Vec<Rational> = (0..4).map(|_| random_nonzero(&mut rng, 40)).collect();
        let Ok(cl) = builtin_q_prop4(&v[0], &v[1], &v[2], &v[3], false) else { continue };
        let qu = builtin_q_prop4(&v[0], &v[1], &v[2], &v[3], true).map_err(|e| e.to_string())?;
        drawn += 1;
        for f in [&cl, &qu] {
            let r = check_on_lines(f, &lines, SEED);
            ensure(r.iter().all(|r| r.is_one()), format!("not 1 on four lines for {v:?}, quantum={}", f.is_quantum()))?;
        }
        for l in &lines {
            let ok = numeric_crosscheck(&qu, l, 3, SEED).map_err(|e| e.to_string())?;
            ensure(ok, format!("numeric deviation above 1e-9 for {v:?}"))?;
        }
        ensure(!check_symmetric(&cl), format!("symmetric for {v:?}"))?;
    }
    Ok("20 draws, classical and quantum, numeric within 1e-9; not symmetric".into())
}

fn c5() -> Outcome {
    let mut counts = Vec::new();
    for k in 1..=3 {
        let rep = enumerate(k, LineSet::Three, true, None, SEED).map_err(|e| e.to_string())?;
        ensure(!rep.partial, format!("k={k} stopped early"))?;
        ensure(rep.families.is_empty(), format!("k={k}: {} nontrivial families", rep.families.len()))?;
        counts.push(format!("k={k}: {} tuples", rep.prefixes_total));
    }
    Ok(format!("no nontrivial family ({})", counts.join(", ")))
}

fn c6() -> Outcome {
    let rep = classify_three_line_classical(3, SEED).map_err(|e| e.to_string())?;
    ensure(rep.pairs.len() == 36, format!("{} pairs", rep.pairs.len()))?;
    for p in &rep.pairs {
        let expected = p.s.is_fixed_point_free() && p.p.is_fixed_point_free() && p.s != p.p;
        ensure(p.nontrivial() == expected, format!("s={} p={}: nontrivial={}", p.s, p.p, p.nontrivial()))?;
        if expected {
            ensure(
                p.matched_closed_form == p.nontrivial_components,
                format!("s={} p={}: {}/{} matched", p.s, p.p, p.matched_closed_form, p.nontrivial_components),
            )?;
        }
    }
    let id = Perm::identity(3);
    ensure(rep.pairs.iter().any(|p| p.s == id && p.p == id), "identity pair missing")?;
    Ok(format!("{} of 36 pairs nontrivial, all matching the closed form", rep.nontrivial_pairs().len()))
}

fn c7() -> Outcome {
    let rep = enumerate(4, LineSet::Four, true, None, SEED).map_err(|e| e.to_string())?;
    let target = builtin_q_prop4(&int(2), &int(3), &int(5), &int(7), true).map_err(|e| e.to_string())?;
    let m = rep.families.iter().filter(|f| match_family_to(f, &target).is_some()).count();
    ensure(m > 0, format!("{} families, none matching", rep.families.len()))?;
    Ok(format!("{} nontrivial families, {m} matching", rep.families.len()))
}

fn c8() -> Outcome {
    let tables = enumerate_n3(9).map_err(|e| e.to_string())?;
    ensure(tables.len() == 3, format!("{} classes", tables.len()))?;
    let colorable: Vec<_> = tables.iter().filter(|t| find_coloring(t, 3).ok().flatten().is_some()).collect();
    ensure(colorable.len() == 1, format!("{} colorable", colorable.len()))?;
    let q = builtin_q33(&int(2), &int(3), &int(1), &int(1), false).map_err(|e| e.to_string())?;
    let (sk, table) = sketch_from_q(&q, &basic_lines(false)).map_err(|e| e.to_string())?;
    ensure(isomorphic(colorable[0], &table), format!("sketch table {} not isomorphic", table.compact()))?;
    ensure(sk.triple_points.iter().all(|t| t.len() == 3), "triple points per line")?;
    Ok("3 classes, 1 colorable, sketch isomorphic, 3 triple points per black line".into())
}

fn c9() -> Outcome {
    let q = builtin_q_prop4(&int(2), &int(3), &int(5), &int(7), false).map_err(|e| e.to_string())?;
    let (sk, table) = sketch_from_q(&q, &basic_lines(true)).map_err(|e| e.to_string())?;
    ensure(table.is_valid(), "table invalid")?;
    ensure((table.p, table.gamma, table.l, table.pi) == (16, 3, 12, 4), "shape")?;
    let coloring = sk.coloring();
    coloring.validate(&table).map_err(|e| e.to_string())?;
    let perms = extract_permutations(&table, &coloring).map_err(|e| e.to_string())?;
    ensure(perms == prop4_perms(), format!("extracted {perms}"))?;
    Ok(perms.to_string())
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for i in 0..10 {
        let free = Prop4Free::random(&mut rng, 50);
        let sys = build_system(4, LineSet::Four, prop4_perms(), prop4_multipliers(&free, Branch::Minus)).map_err(|e| e.to_string())?;
        let rep = verify_solution(&sys, &prop4_values(&free));
        ensure(rep.passed(), format!("draw {i}: failed {:?}", rep.failed))?;
        let plus = build_system(4, LineSet::Four, prop4_perms(), prop4_multipliers(&free, Branch::Plus)).map_err(|e| e.to_string())?;
        ensure(matches!(solve(&plus, false, SEED), SolveOutcome::Trivial(_)), format!("draw {i}: plus branch not trivial"))?;
    }
    Ok("10 draws verified; plus branch trivial".into())
}

fn random_form(rng: &mut ChaCha8Rng) -> LinearForm {
    loop {
        let c = [0, 1, 2].map(|_| rng.gen_range(-9i64..=9));
        // nonzero after restriction to α′ = 0
        if c[1] != 0 || c[2] != 0 {
            return LinearForm::primed(c);
        }
    }
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let line = LinearForm::primed([1, 0, 0]);
    let lp = LineParam::new(&line);
    let mut max_dev: f64 = 0.0;
    for i in 0..200 {
        let k = rng.gen_range(1..=6);
        let num: Vec<LinearForm> = (0..k).map(|_| random_form(&mut rng)).collect();
        let mut signs: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
        if signs.iter().filter(|&&s| s).count() % 2 == 1 {
            signs[0] = !signs[0];
        }
        let mut den: Vec<LinearForm> = num.iter().zip(&signs).map(|(f, &s)| if s { f.neg() } else { f.clone() }).collect();
        for j in (1..k).rev() {
            den.swap(j, rng.gen_range(0..=j));
        }
        let q = FactorProduct::new(true, Basis::Primed, num.clone(), den.clone()).map_err(|e| e.to_string())?;
        let r = check_on_line(&q, &line, SEED);
        ensure(r.is_one(), format!("product {i}: {:?}", r.verdict))?;
        let p = lp.point(&random_nonzero(&mut rng, 20), &random_nonzero(&mut rng, 20)).ok_or("degenerate sample")?;
        for x in [0.01, 0.02, 0.03, 0.05, 0.07] {
            let Ok(v) = q.eval_quantum(&p, x) else { continue };
            max_dev = max_dev.max((v - 1.0).abs());
        }
        ensure(max_dev < 1e-9, format!("product {i}: |Q(x) - 1| = {max_dev:e}"))?;

        let j = rng.gen_range(0..k);
        let bumped = loop {
            let mut c = den[j].coeffs().clone();
            let slot = rng.gen_range(1..3);
            c[slot] += int(rng.gen_range(1..=3));
            let Ok(f) = LinearForm::new(c, Basis::Primed) else { continue };
            let restricted = lp.restrict_form(&f);
            let key = restricted.sign_normalized().0;
            if !restricted.is_zero() && !num.iter().any(|n| lp.restrict_form(n).sign_normalized().0 == key) {
                break f;
            }
        };
        let mut pden = den.clone();
        pden[j] = bumped;
        let q = FactorProduct::new(true, Basis::Primed, num, pden).map_err(|e| e.to_string())?;
        let r = check_on_line(&q, &line, SEED);
        ensure(r.verdict == Verdict::NotConstant, format!("perturbed product {i}: {:?}", r.verdict))?;
    }
    Ok(format!("200 matched products IdenticallyOne (max |Q(x)-1| = {max_dev:.1e}), 200 perturbations NotConstant"))
}

fn c12() -> Outcome {
    let primed: Vec<LinearForm> = distinguished_lines(Basis::Primed).into_iter().map(|l| l.form).collect();
    let unprimed: Vec<LinearForm> = distinguished_lines(Basis::Unprimed).into_iter().map(|l| l.form).collect();
    ensure(primed.len() == 12, "12 lines")?;
    for g in Perm3::generators() {
        for l in &primed {
            let img = l.act(&g);
            ensure(primed.iter().any(|m| m.same_line(&img)), format!("{l} maps outside the set under {g}"))?;
        }
    }
    let [g1, g2] = Perm3::generators();
    ensure(g1.compose(&g1) == Perm3::IDENTITY && g2.compose(&g2) == Perm3::IDENTITY, "involutions")?;
    let g12 = g1.compose(&g2);
    ensure(g12.compose(&g12).compose(&g12) == Perm3::IDENTITY, "(g1 g2)^3")?;
    for (a, b) in unprimed.iter().zip(&primed) {
        ensure(a.in_basis(Basis::Primed).same_line(b), format!("{a} does not convert to {b}"))?;
        ensure(b.in_basis(Basis::Unprimed).same_line(a), format!("{b} does not convert back to {a}"))?;
    }
    let listed = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 1],
        [4, -1, 1],
        [3, -1, 0],
        [3, 1, 2],
        [6, -1, 2],
        [0, 2, 1],
        [6, -2, 1],
        [-9, 3, -2],
        [0, -3, -2],
    ];
    let mut missing = Vec::new();
    for c in listed {
        let f = LinearForm::primed(c);
        if !primed.iter().any(|m| m.same_line(&f)) {
            missing.push(f.to_string());
        }
    }
    ensure(missing.is_empty(), format!("primed listing not matched: {}", missing.join(", ")))?;
    Ok("closed under both generators; relations hold; 12 lines correspond in both bases".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 12] = [
        ("1 adjoint dimensions", c1, Duration::from_secs(1)),
        ("2 X2 dimension count", c2, Duration::from_secs(1)),
        ("3 three-line closed form", c3, Duration::from_secs(1)),
        ("4 four-line closed form", c4, Duration::from_secs(5)),
        ("5 quantum non-existence up to k=3", c5, Duration::from_secs(120)),
        ("6 k=3 structure", c6, Duration::from_secs(60)),
        ("7 k=4 four-line search", c7, Duration::from_secs(600)),
        ("8 (9_3) chain", c8, Duration::from_secs(120)),
        ("9 permutation extraction", c9, Duration::from_secs(5)),
        ("10 parameter solution", c10, Duration::from_secs(1)),
        ("11 sign-matched products", c11, Duration::from_secs(30)),
        ("12 line set invariants", c12, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({took:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
