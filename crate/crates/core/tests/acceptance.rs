//! Acceptance criteria, one line per criterion. Time budgets are pinned
//! below; exact quantities are compared for equality.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphprod::arcshift::{
    bound_chain_instance, functoriality_check, lemma_rel_bounds_check, lemma_rel_transforms_check,
    schelp_check, underline_decomposition_mismatches,
};
use graphprod::catalog;
use graphprod::exponential::{
    default_theta_colors, exp_adjacent, materialize_exponential, shitov_context, shitov_mu,
    shitov_theta, verify_mu_clique, ExpCaps, ExpContext,
};
use graphprod::graph::{blowup, complete_graph, cycle, kneser, tensor_product, Digraph, Graph};
use graphprod::harness::random::{
    all_digraphs, random_digraph, random_graph, stream, Distribution,
};
use graphprod::harness::{run_suite, SuiteConfig};
use graphprod::solvers::{chromatic_number, fractional_chromatic, independence_number, Rational};

const SEED: u64 = 7;

const BUDGET_KNESER_INSTANCE: Duration = Duration::from_secs(60);
const BUDGET_ES_W5: Duration = Duration::from_secs(600);
const BUDGET_CLIQUE: Duration = Duration::from_secs(5);
const BUDGET_ADJACENT: Duration = Duration::from_secs(1);
const BUDGET_SCHELP: Duration = Duration::from_secs(30);
const BUDGET_LEM_REL: Duration = Duration::from_secs(900);
const BUDGET_FUNCTORIALITY: Duration = Duration::from_secs(120);

const DIGRAPH_PAIRS: Distribution = Distribution::new(1..=5, 0.4);
const LEM_REL_RANDOM: Distribution = Distribution::new(1..=6, 0.4);
const SMALL_GRAPHS: Distribution = Distribution::new(1..=8, 0.5);

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(
    budget: Duration,
    what: &str,
    f: impl FnOnce() -> Result<String, String>,
) -> Result<String, String> {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure(took < budget, || {
        format!("{what} took {took:?}, budget {budget:?}")
    })?;
    Ok(out)
}

fn digraph_pairs(stream_id: u64, count: usize) -> Vec<(Digraph, Digraph)> {
    let mut rng = stream(SEED, stream_id);
    (0..count)
        .map(|_| {
            let a = random_digraph(&mut rng, &DIGRAPH_PAIRS);
            (a, random_digraph(&mut rng, &DIGRAPH_PAIRS))
        })
        .collect()
}

fn c1_kneser() -> Result<String, String> {
    let instances = [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3), (8, 3)];
    for (m, k) in instances {
        within(BUDGET_KNESER_INSTANCE, &format!("K({m},{k})"), || {
            let chi = chromatic_number(&kneser(m, k).unwrap()).unwrap();
            ensure(chi == m + 2 - 2 * k, || format!("chi(K({m},{k})) = {chi}"))?;
            Ok(String::new())
        })?;
    }
    Ok(format!("{} instances match m - 2k + 2", instances.len()))
}

fn c2_es() -> Result<String, String> {
    let caps = ExpCaps::default();
    let mut sizes = Vec::new();
    for g in [
        complete_graph(4).unwrap(),
        complete_graph(5).unwrap(),
        catalog::wheel5(),
    ] {
        within(BUDGET_ES_W5, "K_3^G", || {
            let exp =
                materialize_exponential(&ExpContext::new(g.clone(), 3).unwrap(), &caps).unwrap();
            let chi = chromatic_number(&exp).unwrap();
            ensure(chi == 3, || {
                format!("chi(K_3^G) = {chi} on {} maps", exp.n())
            })?;
            sizes.push(exp.n());
            Ok(String::new())
        })?;
    }
    Ok(format!("chi = 3 on {sizes:?} maps"))
}

fn c3_clique() -> Result<String, String> {
    within(BUDGET_CLIQUE, "clique checks", || {
        let h = catalog::heawood();
        for q in 1..=3 {
            let r = verify_mu_clique(&h, 0, q).unwrap();
            ensure(
                r.pass && r.pairs_checked == (2 * q + 2) * (2 * q + 1) / 2,
                || format!("heawood q={q}: {:?}", r.violations),
            )?;
        }
        for (name, g) in [
            ("C5", cycle(5).unwrap()),
            ("K4", complete_graph(4).unwrap()),
        ] {
            let r = verify_mu_clique(&g, 0, 1).unwrap();
            ensure(!r.pass && !r.violations.is_empty(), || {
                format!("{name} did not fail")
            })?;
        }
        Ok("heawood q=1..3 cliques; C5 and K4 fail with witnesses".into())
    })
}

fn c4_adjacent() -> Result<String, String> {
    within(BUDGET_ADJACENT, "theta ~ mu", || {
        let h = catalog::heawood();
        for q in 1..=2 {
            let (b, t) = default_theta_colors(q);
            let theta = shitov_theta(&h, 0, q, b, t).unwrap();
            let mu = shitov_mu(&h, 0, q, t).unwrap();
            let adj = exp_adjacent(&shitov_context(&h, q).unwrap(), &theta.map, &mu.map).unwrap();
            ensure(adj, || format!("q={q}: theta not adjacent to mu_t"))?;
        }
        Ok("adjacent for q = 1, 2".into())
    })
}

fn c5_schelp() -> Result<String, String> {
    within(BUDGET_SCHELP, "schelp", || {
        let r = schelp_check().unwrap();
        ensure(r.pass(), || format!("{r:?}"))?;
        Ok(format!(
            "{} vertices, {} colors, proper, chi = {}",
            r.vertices, r.colors_used, r.chromatic_number
        ))
    })
}

fn c6_lem_rel() -> Result<String, String> {
    within(BUDGET_LEM_REL, "lem-rel", || {
        let mut digraphs: Vec<Digraph> = (1..=4).flat_map(all_digraphs).collect();
        let exhaustive = digraphs.len();
        let mut rng = stream(SEED, 3);
        digraphs.extend((0..100).map(|_| random_digraph(&mut rng, &LEM_REL_RANDOM)));
        for d in &digraphs {
            let b = lemma_rel_bounds_check(d).unwrap();
            ensure(b.pass, || format!("bounds fail on {d:?}: {b:?}"))?;
            let t = lemma_rel_transforms_check(d).unwrap();
            ensure(t.pass(), || format!("transforms fail on {d:?}: {t:?}"))?;
        }
        Ok(format!("{exhaustive} exhaustive + 100 random digraphs"))
    })
}

fn c7_functoriality() -> Result<String, String> {
    within(BUDGET_FUNCTORIALITY, "functoriality", || {
        let pairs = digraph_pairs(1, 100);
        let (mut product, mut reverse) = (0, 0);
        for (a, b) in &pairs {
            let r = functoriality_check(a, b);
            product += r.product_mismatches;
            reverse += r.reverse_mismatches;
        }
        ensure(product == 0 && reverse == 0, || {
            format!("{product} product, {reverse} reverse mismatches")
        })?;
        Ok("100 pairs, 0 mismatches".into())
    })
}

fn c8_underline() -> Result<String, String> {
    let total: usize = digraph_pairs(1, 100)
        .iter()
        .map(|(a, b)| underline_decomposition_mismatches(a, b))
        .sum();
    ensure(total == 0, || format!("{total} edge mismatches"))?;
    Ok("100 pairs, 0 mismatches".into())
}

fn c9_chain() -> Result<String, String> {
    let violations = digraph_pairs(2, 50)
        .iter()
        .filter(|(a, b)| !bound_chain_instance(a, b).unwrap().pass)
        .count();
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("50 pairs, 0 violations".into())
}

fn c10_fractional() -> Result<String, String> {
    let family: Vec<(&str, Graph)> = vec![
        ("K3", complete_graph(3).unwrap()),
        ("K4", complete_graph(4).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("C7", cycle(7).unwrap()),
        ("petersen", catalog::petersen()),
    ];
    let chi_f = |g: &Graph| fractional_chromatic(g).unwrap().value;
    let half = |n: i64, d: i64| Rational::new(n.into(), d.into());
    ensure(chi_f(&family[2].1) == half(5, 2), || {
        "chi_f(C5) != 5/2".into()
    })?;
    ensure(chi_f(&family[4].1) == half(5, 2), || {
        "chi_f(petersen) != 5/2".into()
    })?;
    let (mut checked, mut skipped) = (0, Vec::new());
    for i in 0..family.len() {
        for j in i..family.len() {
            let (ga, gb) = (&family[i], &family[j]);
            if ga.1.n() * gb.1.n() > 30 {
                skipped.push(format!("{}x{}", ga.0, gb.0));
                continue;
            }
            let p = chi_f(&tensor_product(&ga.1, &gb.1));
            let min = chi_f(&ga.1).min(chi_f(&gb.1));
            ensure(p == min, || format!("{}x{}: {p} != {min}", ga.0, gb.0))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} pairs equal; skipped over 30 vertices: {}",
        skipped.join(", ")
    ))
}

fn c11_hedetniemi() -> Result<String, String> {
    let mut rng = stream(SEED, 5);
    let mut found = 0;
    while found < 50 {
        let g = random_graph(&mut rng, &SMALL_GRAPHS);
        let h = random_graph(&mut rng, &SMALL_GRAPHS);
        let min = chromatic_number(&g)
            .unwrap()
            .min(chromatic_number(&h).unwrap());
        if min > 4 {
            continue;
        }
        found += 1;
        let chi = chromatic_number(&tensor_product(&g, &h)).unwrap();
        ensure(chi == min, || {
            format!("chi(GxH) = {chi}, min = {min} for {g:?} x {h:?}")
        })?;
    }
    Ok("50 pairs, 0 violations".into())
}

fn c12_blowup() -> Result<String, String> {
    let mut graphs = vec![
        cycle(5).unwrap(),
        catalog::petersen(),
        catalog::heawood(),
        catalog::grotzsch(),
    ];
    let mut rng = stream(SEED, 7);
    graphs.extend((0..10).map(|_| random_graph(&mut rng, &Distribution::new(1..=10, 0.4))));
    for g in &graphs {
        let alpha = independence_number(g).unwrap();
        for q in 1..=3 {
            let a = independence_number(&blowup(g, q).unwrap()).unwrap();
            ensure(a == alpha, || {
                format!("alpha changed {alpha} -> {a} at q={q}")
            })?;
        }
    }
    let chi = chromatic_number(&blowup(&cycle(5).unwrap(), 2).unwrap()).unwrap();
    ensure(chi == 5, || format!("chi(C5[K2]) = {chi}"))?;
    Ok(format!(
        "alpha preserved on {} graphs, chi(C5[K2]) = 5",
        graphs.len()
    ))
}

fn c13_determinism() -> Result<String, String> {
    let cfg = SuiteConfig::with_seed(SEED);
    let first = run_suite("all", &cfg).map_err(|e| e.to_string())?;
    let second = run_suite("all", &cfg).map_err(|e| e.to_string())?;
    ensure(first.masked_json() == second.masked_json(), || {
        "reports differ".into()
    })?;
    ensure(first.passed(), || "suite reported a failing claim".into())?;
    Ok(format!(
        "{} claims, identical masked reports",
        first.claims.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 13] = [
        ("kneser-lovasz", c1_kneser),
        ("exponential-k3", c2_es),
        ("clm-clique", c3_clique),
        ("clm-ad", c4_adjacent),
        ("schelp", c5_schelp),
        ("lem-rel", c6_lem_rel),
        ("functoriality", c7_functoriality),
        ("underline-decomp", c8_underline),
        ("bound-chain", c9_chain),
        ("frac-hedetniemi", c10_fractional),
        ("hedetniemi-min4", c11_hedetniemi),
        ("blowup", c12_blowup),
        ("determinism", c13_determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(summary) => println!(
                "criterion {:>2} PASS {name:<17} {secs:>7.2}s  {summary}",
                i + 1
            ),
            Err(reason) => {
                failures += 1;
                println!(
                    "criterion {:>2} FAIL {name:<17} {secs:>7.2}s  {reason}",
                    i + 1
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
