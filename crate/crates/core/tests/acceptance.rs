//! Acceptance suite: one line per criterion with its verdict, measured
//! values and wall time. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use jetlab::contact::{contact_codim, scaling_check, ContactQuery};
use jetlab::count::{dim_estimate, exhaustive_count, monte_carlo_count, origin_fiber_count_check, CountConfig, CountValue};
use jetlab::formulas::{lct_rank1, rank1_components, rank1_jet_dim, second_jet_fiber_dims, DEFAULT_LCT_WINDOW};
use jetlab::groebner::{verify_first_jet_components, Budget, DEFAULT_MAX_PAIRS};
use jetlab::jetideal::{jet_ideal_generators, jet_ideal_generators_over, verify_origin_fiber_isomorphism, DeterminantalSpec};
use jetlab::poly::{CoefficientField, Polynomial};
use num_rational::Ratio;

const Q: CoefficientField = CoefficientField::Rationals;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn spec(r: usize, s: usize, c: usize) -> DeterminantalSpec {
    DeterminantalSpec::new(r, s, c).unwrap()
}

fn generators() -> Outcome {
    let two = jet_ideal_generators(spec(2, 2, 1), 1).unwrap();
    let expected = [
        Polynomial::parse("x_1_1_0*x_2_2_0 - x_1_2_0*x_2_1_0", Q).unwrap(),
        Polynomial::parse("x_1_1_0*x_2_2_1 + x_1_1_1*x_2_2_0 \u{2212} x_1_2_0*x_2_1_1 \u{2212} x_1_2_1*x_2_1_0", Q).unwrap(),
    ];
    let two_ok = two.generators == expected;

    let three = jet_ideal_generators(spec(3, 3, 1), 1).unwrap();
    let quadratic = three.generators.iter().all(|g| g.homogeneous_degree() == Some(2));
    let weights: Vec<usize> = three.generators.iter().map(|g| g.isobaric_weight().unwrap()).collect();
    let w0 = weights.iter().filter(|&&w| w == 0).count();
    let w1 = weights.iter().filter(|&&w| w == 1).count();
    let three_ok = three.generators.len() == 18 && quadratic && w0 == 9 && w1 == 9;
    outcome(
        two_ok && three_ok,
        format!(
            "2x2 J_1 matches hand expansion: {two_ok}; 3x3 J_1: {} generators, quadratic {quadratic}, weights 0/1 = {w0}/{w1}",
            three.generators.len()
        ),
    )
}

fn two_components() -> Outcome {
    let rep = verify_first_jet_components(Q, Budget { max_pairs: DEFAULT_MAX_PAIRS }).unwrap();
    let statuses: Vec<String> = rep.checks.iter().map(|c| format!("({}) {:?}", c.id, c.status)).collect();
    let pass = rep.passed() && rep.dims == Some((9, 10));
    outcome(pass, format!("over QQ [{}]: {}; dims {:?}", rep.label, statuses.join(", "), rep.dims))
}

fn origin_fiber_symbolic() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (n, ms) in [(2usize, vec![2usize, 3, 4]), (3, vec![2, 3])] {
        let base = jet_ideal_generators(spec(n, n, 1), 0).unwrap();
        for m in ms {
            let rep = verify_origin_fiber_isomorphism(&base.generators, n * n, m).unwrap();
            pass &= rep.holds;
            lines.push(format!("{n}x{n} m={m}: {}", rep.holds));
        }
    }
    outcome(pass, lines.join(", "))
}

fn origin_fiber_numeric() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for m in [2, 3] {
        for q in [2, 3] {
            let rep = origin_fiber_count_check(spec(2, 2, 1), m, q, &CountConfig { cap: 1 << 28, workers: 1 }).unwrap();
            pass &= rep.holds;
            if (m, q) == (2, 2) {
                pass &= rep.left == 160 && rep.lower_jets == 10 && rep.free_factor == 16;
            }
            lines.push(format!("m={m} q={q}: {} = {}*{}", rep.left, rep.lower_jets, rep.free_factor));
        }
    }
    outcome(pass, format!("{} [EVIDENCE]", lines.join(", ")))
}

fn rank_one_formulas() -> Outcome {
    let mut recursion = 0;
    let mut maximum = 0;
    let mut checked = 0;
    for s in 3..=8 {
        for r in s + 1..=8 {
            for m in 0..=9 {
                let dims = rank1_components(r, s, m).dims;
                checked += 1;
                if dims.iter().max().copied() != Some(rank1_jet_dim(r, s, m).unwrap()) {
                    maximum += 1;
                }
                if m >= 2 {
                    let lower = rank1_components(r, s, m - 2).dims;
                    recursion += (0..lower.len()).filter(|&q| dims[q + 1] != lower[q] + (r * s) as u64).count();
                }
            }
        }
    }
    outcome(
        recursion == 0 && maximum == 0,
        format!("{checked} (r,s,m) cases; recursion failures {recursion}; max-dimension failures {maximum}"),
    )
}

fn threshold() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for s in 3..=12 {
        for r in s + 1..=12 {
            let rep = lct_rank1(r, s, DEFAULT_LCT_WINDOW).unwrap();
            checked += 1;
            if rep.lct != Ratio::new((r * s) as i64, 2) || !rep.attained_at_m1 || !rep.odd_orders_attain_half {
                bad.push(format!("({r},{s})"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} pairs, window m <= {DEFAULT_LCT_WINDOW}; lct = rs/2 attained at m=1 except {:?}", bad),
    )
}

fn equivalences() -> Outcome {
    let mut counterexamples = 0;
    let mut cases = 0;
    for c in 1..=6i64 {
        for r in c + 1..=20 {
            for s in c + 1..=20 {
                cases += 1;
                let prod = (r - c - 1) * (s - c - 1);
                let dx = c * (r + s - c);
                let j1 = r * s + (c - 1) * (r + s - c + 1);
                counterexamples += usize::from((j1 >= 2 * dx) != (prod >= 2));
                if c >= 2 {
                    let (low, stratum) = second_jet_fiber_dims(r as usize, s as usize, c as usize).unwrap();
                    counterexamples += usize::from((low >= 3 * dx) != (prod >= 3));
                    counterexamples += usize::from((stratum >= 3 * dx) != (prod >= 2));
                }
            }
        }
    }
    outcome(counterexamples == 0, format!("{cases} (r,s,c) cases, {counterexamples} counterexamples"))
}

fn contact() -> Outcome {
    let mut rng = common::rng(0x5eed);
    let mut mismatches = 0;
    let mut scaling_failures = 0;
    let mut scaling_checks = 0;
    for _ in 0..500 {
        let (res, orders) = common::random_instance(&mut rng);
        let got = contact_codim(&res, &ContactQuery { orders: orders.clone() }).unwrap();
        if got.value() != common::contact_oracle(&res, &orders) {
            mismatches += 1;
        }
        for p in 1..=3 {
            scaling_checks += 1;
            if res.a.len() == 2 {
                for z in 0..2 {
                    let rep = scaling_check(&res, orders[1 - z], p, z).unwrap();
                    let right_feasible = rep.right.value().is_some();
                    if rep.holds == Some(false) || (right_feasible && rep.holds.is_none()) {
                        scaling_failures += 1;
                    }
                }
            } else {
                let scaled: Vec<u64> = orders.iter().map(|m| m * p).collect();
                let left = contact_codim(&res, &ContactQuery { orders: scaled }).unwrap().value();
                if let Some(right) = got.value() {
                    if left.is_none_or(|l| l > p * right) {
                        scaling_failures += 1;
                    }
                }
            }
        }
    }
    let blowup = common::plane_blowup();
    let values: Vec<Option<u64>> =
        (1..=6).map(|m| contact_codim(&blowup, &ContactQuery { orders: vec![m] }).unwrap().value()).collect();
    let blowup_ok = values.iter().zip(1..=6u64).all(|(v, m)| *v == Some(2 * m));
    outcome(
        mismatches == 0 && scaling_failures == 0 && blowup_ok,
        format!(
            "500 random instances: {mismatches} oracle mismatches, {scaling_failures}/{scaling_checks} scaling failures; plane blow-up m=1..6 -> {:?}",
            values.iter().map(|v| v.unwrap_or(0)).collect::<Vec<_>>()
        ),
    )
}

const EVIDENCE_SAMPLES: u64 = 40_000_000;
const EVIDENCE_SEED: u64 = 2026;

fn point_count_evidence() -> Outcome {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let f2 = CoefficientField::prime(2).unwrap();
    let pres2 = jet_ideal_generators_over(spec(3, 3, 1), 1, f2).unwrap();
    let exact = exhaustive_count(&pres2.generators, &pres2.variables, 2, &CountConfig { cap: 1 << 28, workers }).unwrap();

    let f3 = CoefficientField::prime(3).unwrap();
    let pres3 = jet_ideal_generators_over(spec(3, 3, 1), 1, f3).unwrap();
    let cap = CountConfig { cap: 1 << 28, workers };
    let too_large = matches!(
        exhaustive_count(&pres3.generators, &pres3.variables, 3, &cap),
        Err(jetlab::Error::TooLarge { .. })
    );
    let sampled =
        monte_carlo_count(&pres3.generators, &pres3.variables, 3, EVIDENCE_SAMPLES, 0.99, EVIDENCE_SEED, workers).unwrap();
    let (estimate, half_width) = match sampled.count {
        CountValue::Estimate { estimate, half_width, .. } => (estimate, half_width),
        CountValue::Exact { exact } => (exact as f64, 0.0),
    };
    let c2 = exact.count.as_f64();
    let est = dim_estimate(&[(2, c2), (3, estimate)]).unwrap();
    // Slope range over the 99% interval of the q = 3 estimate.
    let slope = |c3: f64| (c3.ln() - c2.ln()) / (3f64.ln() - 2f64.ln());
    let (lo, hi) = (slope(estimate - half_width), slope(estimate + half_width));
    outcome(
        too_large && est.rounded == 10 && (est.slope - 10.0).abs() <= 0.5,
        format!(
            "[{}] |J_1(F_2)| = {c2} exact over 2^18; |J_1(F_3)| ~ {estimate:.0} +/- {half_width:.0} (99%, {EVIDENCE_SAMPLES} samples, seed {EVIDENCE_SEED}); slope {:.3} (interval {lo:.3}..{hi:.3}) rounds to {}",
            est.label, est.slope, est.rounded
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("generator construction", Duration::from_secs(1), generators),
        ("two components of the 3x3 first jet scheme", Duration::from_secs(600), two_components),
        ("origin fiber, symbolic", Duration::from_secs(30), origin_fiber_symbolic),
        ("origin fiber, point counts", Duration::from_secs(60), origin_fiber_numeric),
        ("rank-one component formulas", Duration::from_secs(1), rank_one_formulas),
        ("log canonical threshold", Duration::from_secs(1), threshold),
        ("proof inequality equivalences", Duration::from_secs(1), equivalences),
        ("contact solver", Duration::from_secs(60), contact),
        ("point-count dimension evidence", Duration::from_secs(900), point_count_evidence),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = out.pass && in_time;
        failures += usize::from(!pass);
        println!(
            "criterion {}: {} | {name} | {} | {:.3}s (limit {}s{})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
