//! Desk-scale invariant checks, run by the command-line `selftest`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counts::{
    hook_count, increasing_count, mean_level_width, mean_size_sequence, r_sequence, SizeMethod,
};
use crate::cuts::{cut_count_sequence, level_profile, semantic_size, CutMethod, ProfileMethod};
use crate::process::{
    annotate_weights, build_semantic_tree, degree_sequence_of_tree, enumerate_trees, parse_process,
    suspended_view, tree_from_degree_sequence, RunPrefix,
};
use crate::sampling::{
    chi_square_quantile, chi_square_statistic, count_runs_via_probability, prefix_probability,
    run_frequencies, sample_runs, PartialSumTree, Rng,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> std::result::Result<String, String>;

const CHECKS: [(&str, Check); 8] = [
    ("example anchors", example_anchors),
    ("profiles agree with explicit semantics", profiles_agree),
    ("sequence identities", sequence_identities),
    ("recurrences", recurrences),
    ("degree-sequence round trip", degree_round_trip),
    ("run counting duality", counting_duality),
    ("partial sum tree audit", pst_audit),
    ("run sampler uniformity", sampler_uniformity),
];

pub fn run_selftest() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check() {
            Ok(detail) => CheckOutcome { name, passed: true, detail },
            Err(detail) => CheckOutcome { name, passed: false, detail },
        })
        .collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

const EXAMPLE: &str = "a.b.(c || d.(e || f))";

fn example_anchors() -> std::result::Result<String, String> {
    let t = annotate_weights(parse_process(EXAMPLE, false).map_err(err)?);
    ensure(hook_count(&t) == BigUint::from(8u32), || "hook count is not 8".into())?;
    let profile = level_profile(t.tree(), ProfileMethod::Fast).map_err(err)?;
    let expected: Vec<BigUint> = [1u32, 1, 2, 4, 8, 8].iter().map(|&x| x.into()).collect();
    ensure(profile.counts() == expected.as_slice(), || format!("profile {:?}", profile.counts()))?;
    ensure(semantic_size(t.tree()).map_err(err)? == BigUint::from(24u32), || "size is not 24".into())?;
    let prefix = RunPrefix::from_names(t.tree(), &["a", "b", "d"]).map_err(err)?;
    let rho = prefix_probability(&t, &prefix).map_err(err)?;
    ensure(rho == BigRational::new(3.into(), 4.into()), || format!("P(a,b,d) = {}", rho))?;
    let view = suspended_view(&t, &prefix).map_err(err)?;
    let labels: Vec<&str> = view.frontier.iter().map(|&v| t.tree().label(v)).collect();
    ensure(labels == ["c", "e", "f"], || format!("frontier {:?}", labels))?;
    Ok("runs 8, profile (1,1,2,4,8,8), size 24, P = 3/4".into())
}

fn profiles_agree() -> std::result::Result<String, String> {
    let mut trees = 0;
    for n in 1..=6 {
        for t in enumerate_trees(n).map_err(err)? {
            let explicit = build_semantic_tree(&t, u64::MAX).map_err(err)?.level_counts();
            let fast = level_profile(&t, ProfileMethod::Fast).map_err(err)?;
            let oracle = level_profile(&t, ProfileMethod::Oracle).map_err(err)?;
            let explicit: Vec<BigUint> = explicit.into_iter().map(BigUint::from).collect();
            ensure(fast == oracle && fast.counts() == explicit.as_slice(), || {
                format!("mismatch on {}", t.to_term())
            })?;
            trees += 1;
        }
    }
    Ok(format!("{} trees", trees))
}

fn sequence_identities() -> std::result::Result<String, String> {
    let sizes = mean_size_sequence(7, SizeMethod::Recurrence).map_err(err)?;
    for n in 1..=7 {
        let mut runs = BigUint::zero();
        let mut total = BigUint::zero();
        let mut levels = vec![BigUint::zero(); n];
        let mut count = 0u32;
        for t in enumerate_trees(n).map_err(err)? {
            let w = annotate_weights(t);
            runs += hook_count(&w);
            let p = level_profile(w.tree(), ProfileMethod::Fast).map_err(err)?;
            total += p.total();
            for (i, slot) in levels.iter_mut().enumerate() {
                *slot += p.from_leaves(i);
            }
            count += 1;
        }
        ensure(runs == increasing_count(n).map_err(err)?, || format!("run total at n = {}", n))?;
        let c = BigRational::from_integer(count.into());
        ensure(BigRational::from_integer(total.into()) == &sizes[n] * &c, || format!("size total at n = {}", n))?;
        for (i, level) in levels.into_iter().enumerate() {
            let expected = mean_level_width(n, i).map_err(err)? * &c;
            ensure(BigRational::from_integer(level.into()) == expected, || format!("level {} at n = {}", i, n))?;
        }
    }
    Ok("n <= 7".into())
}

fn recurrences() -> std::result::Result<String, String> {
    let exact = mean_size_sequence(30, SizeMethod::ExactSum).map_err(err)?;
    let rec = mean_size_sequence(30, SizeMethod::Recurrence).map_err(err)?;
    ensure(exact == rec, || "mean size methods differ".into())?;
    let r = r_sequence(30).map_err(err)?;
    let mut fact = BigUint::one();
    for n in 1..=30usize {
        fact *= n;
        let scaled = &exact[n] * BigRational::from_integer((BigUint::one() << (n - 1)).into())
            / BigRational::from_integer(fact.clone().into());
        ensure(scaled == r[n], || format!("R_{} mismatch", n))?;
    }
    let brute = cut_count_sequence(8, CutMethod::Brute).map_err(err)?;
    let fast = cut_count_sequence(8, CutMethod::Recurrence).map_err(err)?;
    ensure(brute == fast, || "cut totals differ".into())?;
    Ok("n <= 30, cuts n <= 8".into())
}

fn degree_round_trip() -> std::result::Result<String, String> {
    for n in 1..=8 {
        for t in enumerate_trees(n).map_err(err)? {
            let back = tree_from_degree_sequence(&degree_sequence_of_tree(&t)).map_err(err)?;
            ensure(back.structure() == t.structure(), || format!("round trip failed on {}", t.structure()))?;
        }
    }
    Ok("n <= 8".into())
}

fn counting_duality() -> std::result::Result<String, String> {
    for n in 1..=8 {
        for t in enumerate_trees(n).map_err(err)? {
            let w = annotate_weights(t);
            ensure(count_runs_via_probability(&w).map_err(err)? == hook_count(&w), || {
                format!("duality failed on {}", w.tree().structure())
            })?;
        }
    }
    Ok("n <= 8".into())
}

fn pst_audit() -> std::result::Result<String, String> {
    let entries: Vec<(usize, u64)> = (0..257).map(|i| (i, (i % 7) as u64)).collect();
    let mut pst = PartialSumTree::build(&entries).map_err(err)?;
    let mut rng = Rng::seeded(2024);
    let bound = (entries.len() as f64).log2().ceil() as usize + 1;
    for _ in 0..2000 {
        let id = rng.below(entries.len() as u64) as usize;
        let touched = pst.update(id, rng.below(10)).map_err(err)?;
        ensure(touched <= bound, || format!("update touched {} slots", touched))?;
        if pst.total() > 0 {
            let x = pst.sample(&mut rng).map_err(err)?;
            ensure(pst.weight(x).unwrap_or(0) > 0, || "sampled a zero-weight element".into())?;
        }
    }
    ensure(pst.audit(), || "cached sums are stale".into())?;
    Ok("2000 operations".into())
}

fn sampler_uniformity() -> std::result::Result<String, String> {
    let t = annotate_weights(parse_process(EXAMPLE, false).map_err(err)?);
    let runs = sample_runs(&t, 7, 16_000);
    let freq = run_frequencies(&runs);
    ensure(freq.len() == 8, || format!("{} distinct runs", freq.len()))?;
    let observed: Vec<u64> = freq.values().copied().collect();
    let stat = chi_square_statistic(&observed, &[1.0 / 8.0; 8]);
    let limit = chi_square_quantile(7, 0.999);
    ensure(stat < limit, || format!("chi-square {:.2} >= {:.2}", stat, limit))?;
    Ok(format!("chi-square {:.2} < {:.2}", stat, limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for outcome in run_selftest() {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }
}
