//! Acceptance suite: one PASS/FAIL line per criterion, each under its own
//! wall-time budget. Run with `cargo test -p interleave-core --test acceptance`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use interleave_core::counts::bigmath::{factorial, ln_biguint, rational_to_f64};
use interleave_core::counts::{
    asymptotic_size, catalan, eta_estimate, geometric_mean_width, hook_count, increasing_count,
    log_constant_l, mean_level_width, mean_size, mean_size_sequence, mean_width, mean_width_stirling,
    r_sequence, SizeMethod,
};
use interleave_core::cuts::{cut_count_sequence, level_profile, semantic_size, CutMethod, ProfileMethod};
use interleave_core::process::{
    annotate_weights, build_semantic_tree, degree_sequence_of_tree, enumerate_trees, parse_process,
    star_tree, suspended_view, tree_from_degree_sequence, DegreeSequence, RunPrefix, SyntaxTree,
};
use interleave_core::sampling::{
    chi_square_quantile, chi_square_statistic, count_runs_via_probability, prefix_probability,
    prefix_probability_counted, run_frequencies, sample_run, sample_runs, two_sample_chi_square,
    uniform_random_tree, NaiveSampler, PartialSumTree, Rng,
};

type Outcome = Result<String, String>;
/// Name, wall-time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

const EXAMPLE: &str = "a.b.(c || d.(e || f))";

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn example() -> SyntaxTree {
    parse_process(EXAMPLE, false).expect("example term parses")
}

fn children(t: &SyntaxTree) -> Vec<Vec<usize>> {
    t.ids().map(|v| t.children(v).map(|c| c.index()).collect()).collect()
}

/// Number of run prefixes of each length `1..=n`, by walking every
/// interleaving of the enabled actions.
fn prefix_counts_by_search(t: &SyntaxTree) -> Vec<BigUint> {
    fn walk(kids: &[Vec<usize>], enabled: &mut Vec<usize>, depth: usize, counts: &mut [u64]) {
        counts[depth] += 1;
        for i in 0..enabled.len() {
            let v = enabled.swap_remove(i);
            let added = kids[v].len();
            enabled.extend(&kids[v]);
            walk(kids, enabled, depth + 1, counts);
            enabled.truncate(enabled.len() - added);
            enabled.push(v);
            let last = enabled.len() - 1;
            enabled.swap(i, last);
        }
    }
    let kids = children(t);
    let mut counts = vec![0u64; t.len()];
    let mut enabled = kids[0].clone();
    walk(&kids, &mut enabled, 0, &mut counts);
    counts.into_iter().map(BigUint::from).collect()
}

/// Node subsets containing the root and closed under taking parents.
fn cut_count_by_masks(t: &SyntaxTree) -> u64 {
    let parents: Vec<Option<usize>> = t.ids().map(|v| t.parent(v).map(|p| p.index())).collect();
    (0u64..1 << t.len())
        .filter(|&mask| {
            mask & 1 == 1
                && parents
                    .iter()
                    .enumerate()
                    .all(|(v, p)| mask >> v & 1 == 0 || p.is_none_or(|p| mask >> p & 1 == 1))
        })
        .count() as u64
}

/// `(2n - 2)! / (2^(n-1) (n - 1)!)`.
fn double_factorial_closed_form(n: usize) -> BigUint {
    factorial(2 * n as u64 - 2) / ((BigUint::one() << (n - 1)) * factorial(n as u64 - 1))
}

fn all_trees(n: usize) -> Vec<SyntaxTree> {
    enumerate_trees(n).expect("within enumeration limit").collect()
}

fn example_anchors() -> Outcome {
    let w = annotate_weights(example());
    let runs = hook_count(&w);
    check(runs == big(8), || format!("run count {}", runs))?;
    let expected: Vec<BigUint> = [1u64, 1, 2, 4, 8, 8].iter().map(|&x| big(x)).collect();
    let profile = level_profile(w.tree(), ProfileMethod::Fast).map_err(|e| e.to_string())?;
    check(profile.counts() == expected.as_slice(), || format!("profile {:?}", profile.counts()))?;
    check(prefix_counts_by_search(w.tree()) == expected, || "search disagrees with the profile".into())?;
    check(profile.counts()[3] == big(4), || "length-4 entry".into())?;
    let size = semantic_size(w.tree()).map_err(|e| e.to_string())?;
    check(size == big(24), || format!("semantic size {}", size))?;
    let prefix = RunPrefix::from_names(w.tree(), &["a", "b", "d"]).map_err(|e| e.to_string())?;
    let rho = prefix_probability(&w, &prefix).map_err(|e| e.to_string())?;
    check(rho == BigRational::new(3.into(), 4.into()), || format!("P(a,b,d) = {}", rho))?;
    let view = suspended_view(&w, &prefix).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = view.frontier.iter().map(|&v| w.tree().label(v)).collect();
    check(labels == ["c", "e", "f"], || format!("suspended view {:?}", labels))?;
    Ok("runs 8, profile (1,1,2,4,8,8), size 24, P = 3/4, view (c,e,f)".into())
}

fn oracle_equivalence() -> Outcome {
    let mut trees = 0;
    for n in 1..=7 {
        for t in all_trees(n) {
            let w = annotate_weights(t);
            let shuf = build_semantic_tree(w.tree(), u64::MAX).map_err(|e| e.to_string())?;
            let runs = hook_count(&w);
            check(BigUint::from(shuf.leaf_count()) == runs, || format!("leaves of {}", w.tree().to_term()))?;
            let full = RunPrefix::prefix_order(w.tree());
            let rho = prefix_probability(&w, &full).map_err(|e| e.to_string())?;
            check(rho.recip() == BigRational::from_integer(runs.into()), || format!("1/rho of {}", w.tree().to_term()))?;
            let levels: Vec<BigUint> = shuf.level_counts().into_iter().map(BigUint::from).collect();
            let fast = level_profile(w.tree(), ProfileMethod::Fast).map_err(|e| e.to_string())?;
            let oracle = level_profile(w.tree(), ProfileMethod::Oracle).map_err(|e| e.to_string())?;
            check(fast.counts() == levels.as_slice() && oracle.counts() == levels.as_slice(), || {
                format!("profiles of {}", w.tree().to_term())
            })?;
            check(prefix_counts_by_search(w.tree()) == levels, || format!("search on {}", w.tree().to_term()))?;
            trees += 1;
        }
    }
    Ok(format!("{} trees, n <= 7", trees))
}

fn sequence_identities() -> Outcome {
    for n in 1..=9 {
        let trees = all_trees(n);
        let count = BigRational::from_integer(BigUint::from(trees.len()).into());
        check(catalan(n).map_err(|e| e.to_string())? == BigUint::from(trees.len()), || format!("C_{}", n))?;
        let mut runs = BigUint::zero();
        let mut sizes = BigUint::zero();
        let mut levels = vec![BigUint::zero(); n];
        for t in &trees {
            let w = annotate_weights(t.clone());
            runs += hook_count(&w);
            sizes += semantic_size(t).map_err(|e| e.to_string())?;
            let p = level_profile(t, ProfileMethod::Fast).map_err(|e| e.to_string())?;
            for (i, slot) in levels.iter_mut().enumerate() {
                *slot += p.from_leaves(i);
            }
        }
        let inc = increasing_count(n).map_err(|e| e.to_string())?;
        check(runs == inc && inc == double_factorial_closed_form(n), || format!("run total at n = {}", n))?;
        let mean = mean_size(n, SizeMethod::ExactSum).map_err(|e| e.to_string())?;
        check(BigRational::from_integer(sizes.into()) == mean * &count, || format!("size total at n = {}", n))?;
        for (i, level) in levels.into_iter().enumerate() {
            let expected = mean_level_width(n, i).map_err(|e| e.to_string())? * &count;
            check(BigRational::from_integer(level.into()) == expected, || format!("level {} at n = {}", i, n))?;
        }
    }
    Ok("n <= 9".into())
}

fn recurrences() -> Outcome {
    let exact = mean_size_sequence(30, SizeMethod::ExactSum).map_err(|e| e.to_string())?;
    let rec = mean_size_sequence(30, SizeMethod::Recurrence).map_err(|e| e.to_string())?;
    for n in 3..=30 {
        check(exact[n] == rec[n], || format!("mean size at n = {}", n))?;
    }
    let r = r_sequence(30).map_err(|e| e.to_string())?;
    for n in 1..=30usize {
        let scaled = &exact[n] * BigRational::from_integer((BigUint::one() << (n - 1)).into())
            / BigRational::from_integer(factorial(n as u64).into());
        check(scaled == r[n], || format!("R_{}", n))?;
    }
    let fast = cut_count_sequence(10, CutMethod::Recurrence).map_err(|e| e.to_string())?;
    let brute = cut_count_sequence(10, CutMethod::Brute).map_err(|e| e.to_string())?;
    for n in 4..=10 {
        let masks: u64 = all_trees(n).iter().map(cut_count_by_masks).sum();
        check(fast[n] == brute[n] && fast[n] == big(masks), || format!("m_{}: {} vs {}", n, fast[n], masks))?;
    }
    Ok("mean size 3..30, R_n 1..30, m_n 4..10".into())
}

fn asymptotics() -> Outcome {
    let deviation = |n: usize| -> Result<f64, String> {
        let exact = rational_to_f64(&mean_size(n, SizeMethod::ExactSum).map_err(|e| e.to_string())?);
        Ok((exact / asymptotic_size(n).map_err(|e| e.to_string())?.value - 1.0).abs())
    };
    let (d30, d60) = (deviation(30)?, deviation(60)?);
    check(d30 < 1e-3, || format!("deviation at 30 is {:e}", d30))?;
    check(d60 < d30, || format!("deviation at 60 ({:e}) not below 30 ({:e})", d60, d30))?;
    let w40 = rational_to_f64(&mean_width(40).map_err(|e| e.to_string())?);
    let rel = (w40 / mean_width_stirling(40) - 1.0).abs();
    check(rel < 0.01, || format!("width at 40 off by {:e}", rel))?;
    Ok(format!("size dev {:.2e} -> {:.2e}, width dev {:.2e}", d30, d60, rel))
}

fn constants() -> Outcome {
    let start = Instant::now();
    let l = log_constant_l(1e-6).map_err(|e| e.to_string())?;
    check(l.error <= 1e-6 && l.contains(0.5790439217), || format!("L = {}", l))?;
    check(start.elapsed() < Duration::from_secs(60), || "L took over a minute".into())?;
    let start = Instant::now();
    let eta = eta_estimate(400).map_err(|e| e.to_string())?;
    check((eta - 0.3383218).abs() < 1e-3, || format!("eta = {}", eta))?;
    check(start.elapsed() < Duration::from_secs(30), || "eta took over 30 s".into())?;
    Ok(format!("L = {}, eta = {:.7}", l, eta))
}

fn geometric_mean() -> Outcome {
    for n in 3..=9 {
        let trees = all_trees(n);
        let logs: f64 = trees.iter().map(|t| ln_biguint(&hook_count(&annotate_weights(t.clone())))).sum();
        let brute = (logs / trees.len() as f64).exp();
        let formula = geometric_mean_width(n, 53).map_err(|e| e.to_string())?.value;
        check((formula / brute - 1.0).abs() < 1e-9, || format!("n = {}: {} vs {}", n, formula, brute))?;
    }
    let g3 = geometric_mean_width(3, 53).map_err(|e| e.to_string())?.value;
    check((g3 - 2f64.sqrt()).abs() <= 2.0 * f64::EPSILON, || format!("G_3 = {}", g3))?;
    Ok("n = 3..9 within 1e-9, G_3 = sqrt 2".into())
}

fn sampler_uniformity() -> Outcome {
    let w = annotate_weights(example());
    let draws = 80_000;
    let freq = run_frequencies(&sample_runs(&w, 17, draws));
    check(freq.len() == 8, || format!("{} distinct runs", freq.len()))?;
    for (run, &k) in &freq {
        let f = k as f64 / draws as f64;
        check((f - 0.125).abs() <= 0.01, || format!("{} at {}", run.display(&w), f))?;
    }
    let observed: Vec<u64> = freq.values().copied().collect();
    let stat = chi_square_statistic(&observed, &[0.125; 8]);
    let limit = chi_square_quantile(7, 0.999);
    check(stat < limit, || format!("chi-square {:.2} >= {:.2}", stat, limit))?;

    let mut rng = Rng::seeded(23);
    let draws = 140_000;
    let mut shapes: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..draws {
        let t = uniform_random_tree(5, &mut rng).map_err(|e| e.to_string())?;
        *shapes.entry(t.structure()).or_default() += 1;
    }
    check(shapes.len() == 14, || format!("{} shapes", shapes.len()))?;
    for (shape, &k) in &shapes {
        let f = k as f64 / draws as f64;
        check((f - 1.0 / 14.0).abs() <= 0.01, || format!("shape {} at {}", shape, f))?;
    }
    Ok(format!("runs chi-square {:.2} < {:.2}; 14 shapes", stat, limit))
}

fn pst_contract() -> Outcome {
    let mut rng = Rng::seeded(99);
    let entries: Vec<(usize, u64)> = (0..1000).map(|i| (i, rng.below(50))).collect();
    let mut pst = PartialSumTree::build(&entries).map_err(|e| e.to_string())?;
    let bound = (entries.len() as f64).log2().ceil() as usize + 1;
    let mut max_touched = 0;
    for _ in 0..10_000 {
        if rng.below(2) == 0 || pst.total() == 0 {
            let touched = pst.update(rng.below(1000) as usize, rng.below(50)).map_err(|e| e.to_string())?;
            max_touched = max_touched.max(touched);
        } else {
            let id = pst.sample(&mut rng).map_err(|e| e.to_string())?;
            check(pst.weight(id).unwrap_or(0) > 0, || format!("sampled zero-weight {}", id))?;
        }
    }
    check(pst.audit(), || "audit failed".into())?;
    check(max_touched <= bound, || format!("update touched {} > {}", max_touched, bound))?;

    for id in (0..1000).step_by(3) {
        pst.update(id, 0).map_err(|e| e.to_string())?;
    }
    for _ in 0..100_000 {
        let id = pst.sample(&mut rng).map_err(|e| e.to_string())?;
        check(id % 3 != 0, || format!("zeroed element {} sampled", id))?;
    }

    let weights: Vec<(usize, u64)> = (0..40).map(|i| (i, 1 + (i as u64 * 7) % 13)).collect();
    let pst = PartialSumTree::build(&weights).map_err(|e| e.to_string())?;
    let naive = NaiveSampler::build(&weights).map_err(|e| e.to_string())?;
    let (mut a, mut b) = (vec![0u64; 40], vec![0u64; 40]);
    let (mut ra, mut rb) = (Rng::new(5, 0), Rng::new(5, 1));
    for _ in 0..100_000 {
        a[pst.sample(&mut ra).map_err(|e| e.to_string())?] += 1;
        b[naive.sample(&mut rb).map_err(|e| e.to_string())?] += 1;
    }
    let (stat, df) = two_sample_chi_square(&a, &b);
    let limit = chi_square_quantile(df, 0.999);
    check(stat < limit, || format!("differential chi-square {:.2} >= {:.2}", stat, limit))?;
    Ok(format!("touched <= {}, differential chi-square {:.2} < {:.2}", max_touched, stat, limit))
}

fn complexity_contract() -> Outcome {
    let mut rng = Rng::seeded(50);
    let w = annotate_weights(uniform_random_tree(50, &mut rng).map_err(|e| e.to_string())?);
    let run = sample_run(&w, &mut rng);
    for p in 2..=50 {
        let prefix = RunPrefix::new(w.tree(), run.actions()[..p].to_vec()).map_err(|e| e.to_string())?;
        let counted = prefix_probability_counted(&w, &prefix).map_err(|e| e.to_string())?;
        check(counted.steps == p - 1, || format!("{} steps for length {}", counted.steps, p))?;
    }
    let big_tree = annotate_weights(uniform_random_tree(100_000, &mut rng).map_err(|e| e.to_string())?);
    let full = RunPrefix::prefix_order(big_tree.tree());
    let start = Instant::now();
    let counted = prefix_probability_counted(&big_tree, &full).map_err(|e| e.to_string())?;
    let runs = count_runs_via_probability(&big_tree).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(counted.steps == 99_999, || format!("{} steps on 10^5 nodes", counted.steps))?;
    check(elapsed < Duration::from_secs(10), || format!("10^5 nodes took {:?}", elapsed))?;
    check(runs == hook_count(&big_tree), || "run count differs from hook formula".into())?;
    Ok(format!("steps = p - 1 for p = 2..50; 10^5 nodes in {:?}", elapsed))
}

fn degree_round_trip() -> Outcome {
    let mut trees = 0;
    for n in 1..=9 {
        for t in all_trees(n) {
            let back = tree_from_degree_sequence(&degree_sequence_of_tree(&t)).map_err(|e| e.to_string())?;
            check(back.structure() == t.structure(), || format!("round trip of {}", t.structure()))?;
            trees += 1;
        }
    }
    let u = DegreeSequence::new(vec![1, 2, 1, 2, 1, 0]).map_err(|e| e.to_string())?;
    let t = tree_from_degree_sequence(&u).map_err(|e| e.to_string())?;
    check(t.structure() == example().structure(), || format!("example sequence gives {}", t.structure()))?;
    Ok(format!("{} trees, example sequence", trees))
}

fn magnitude_anchor() -> Outcome {
    let size = semantic_size(&star_tree(40)).map_err(|e| e.to_string())?;
    let bound = BigUint::from(203u32) * BigUint::from(10u32).pow(44);
    check(size > bound, || format!("{} <= 2.03e46", size))?;
    Ok(format!("{:.4e} > 2.03e46", size.to_f64().unwrap_or(f64::INFINITY)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("example anchors", 1, example_anchors),
        ("oracle equivalence", 120, oracle_equivalence),
        ("sequence identities", 60, sequence_identities),
        ("recurrences", 10, recurrences),
        ("asymptotics", 10, asymptotics),
        ("constants", 90, constants),
        ("geometric mean", 60, geometric_mean),
        ("sampler uniformity", 60, sampler_uniformity),
        ("partial sum tree", 30, pst_contract),
        ("probability complexity", 10, complexity_contract),
        ("degree round trip", 10, degree_round_trip),
        ("magnitude anchor", 1, magnitude_anchor),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(*budget) {
                Ok(detail)
            } else {
                Err(format!("{:?} over the {} s budget ({})", elapsed, budget, detail))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {}: {} [{:.2?}]", k + 1, name, detail, elapsed),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {}: {} [{:.2?}]", k + 1, name, detail, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
