//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use lagan::cpe::{derive_generator, make_loss, LossFamily};
use lagan::divergence::Family;
use lagan::equilibrium::{
    lemma2_identity, lemma3_divergence_identity, lemma4_corrected_identity, lemma4_identity, prop1_alpha_one_check,
    prop1_arimoto_identity, prop3_vajda_identity, renyi_hellinger_identity, run_suite, symmetrization_identity,
    IdentityReport, LkLabels, Suite, SuiteConfig, LEMMA3_ALPHAS, LEMMA3_REJECTED_ALPHA, LEMMA4_KS, PROP1_ALPHAS,
    RENYI_ALPHAS, SUPPORTS,
};
use lagan::gan::{discriminator_objective, train, LossScheme, TrainConfig, TrainRecord};
use lagan::nn::gradcheck::toy_gradient_survey;
use lagan::prob::rng::{derive_seed, rng_from_seed};
use lagan::prob::FiniteDistribution;
use ndarray::Array1;
use rand::Rng as _;

const PAIRS: u64 = 20;
const TRAIN_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];
const TRIAL_BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn pair(support: usize, seed: u64) -> (FiniteDistribution, FiniteDistribution) {
    let s = derive_seed(0xacce, (support as u64) << 32 | seed);
    (
        FiniteDistribution::random(support, derive_seed(s, 0)).unwrap(),
        FiniteDistribution::random(support, derive_seed(s, 1)).unwrap(),
    )
}

/// Runs `check` on `PAIRS` pairs at every support size.
fn over_pairs(mut check: impl FnMut(&FiniteDistribution, &FiniteDistribution) -> IdentityReport) -> (usize, usize, f64) {
    let (mut n, mut failed, mut worst) = (0, 0, 0.0f64);
    for support in SUPPORTS {
        for seed in 0..PAIRS {
            let (p, q) = pair(support, seed);
            let r = check(&p, &q);
            n += 1;
            failed += usize::from(!r.pass);
            worst = worst.max(r.residual());
        }
    }
    (n, failed, worst)
}

fn tally(label: &str, (n, failed, worst): (usize, usize, f64)) -> String {
    format!("{label}: {}/{n} ok, worst residual {worst:.2e}", n - failed)
}

fn canonical_value() -> Outcome {
    let start = Instant::now();
    let records = run_suite(Suite::Theorem1, SuiteConfig { seeds: 20, ..Default::default() }).unwrap();
    let elapsed = start.elapsed();
    let failed = records.iter().filter(|r| !r.pass).count();
    let worst = records.iter().filter_map(|r| r.residual).fold(0.0, f64::max);
    outcome(
        failed == 0 && records.len() == 12 * 3 * 20 && elapsed < Duration::from_secs(10),
        format!(
            "{}/{} ok, worst relative residual {worst:.2e}, {:.2}s",
            records.len() - failed,
            records.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn vanilla_jsd() -> Outcome {
    let (mut failed, mut worst) = (0, 0.0f64);
    for seed in 0..100 {
        let (p, q) = pair(SUPPORTS[(seed % 3) as usize], 1000 + seed);
        let r = lemma2_identity(&p, &q).unwrap();
        failed += usize::from(!r.pass);
        worst = worst.max(r.residual());
    }
    outcome(failed == 0, format!("{}/100 ok, worst residual {worst:.2e}", 100 - failed))
}

fn alpha_divergence_scaling() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for alpha in LEMMA3_ALPHAS {
        let t = over_pairs(|p, q| lemma3_divergence_identity(alpha, p, q).unwrap());
        pass &= t.1 == 0;
        lines.push(tally(&format!("alpha {alpha}"), t));
    }
    let (p, q) = pair(8, 0);
    let rejected = lemma3_divergence_identity(LEMMA3_REJECTED_ALPHA, &p, &q);
    let derive_rejected = derive_generator(&make_loss(LossFamily::Alpha { alpha: LEMMA3_REJECTED_ALPHA }).unwrap(), None);
    let both = rejected.is_err() && derive_rejected.is_err();
    pass &= both;
    lines.push(format!(
        "alpha {LEMMA3_REJECTED_ALPHA} rejected: {}",
        match (&rejected, &derive_rejected) {
            (Err(a), Err(b)) => format!("{a} / {b}"),
            _ => "NO".into(),
        }
    ));
    outcome(pass, lines.join("; "))
}

fn shifted_lk_printed_constant() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for k in LEMMA4_KS {
        let printed = over_pairs(|p, q| lemma4_identity(k, p, q).unwrap());
        let derived = over_pairs(|p, q| lemma4_corrected_identity(k, p, q).unwrap());
        let (p, q) = pair(8, 0);
        let r = lemma4_identity(k, &p, &q).unwrap();
        pass &= printed.1 == 0;
        lines.push(format!(
            "k {k}: printed {}/{} (lhs - rhs = {:+.12}), with -2 in place of -1/2 {}/{}",
            printed.0 - printed.1,
            printed.0,
            r.lhs - r.rhs,
            derived.0 - derived.1,
            derived.0
        ));
    }
    outcome(pass, lines.join("; "))
}

fn arimoto_value() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for alpha in PROP1_ALPHAS {
        let t = over_pairs(|p, q| prop1_arimoto_identity(alpha, p, q).unwrap());
        pass &= t.1 == 0;
        lines.push(tally(&format!("alpha {alpha}"), t));
    }
    let mut verdicts: Vec<&str> = Vec::new();
    for support in SUPPORTS {
        for seed in 0..PAIRS {
            let (p, q) = pair(support, seed);
            let v = prop1_alpha_one_check(&p, &q).unwrap();
            if !verdicts.contains(&v.summary()) {
                verdicts.push(v.summary());
            }
        }
    }
    pass &= verdicts.len() == 1;
    lines.push(format!("alpha 1: {}", verdicts.join(" | ")));
    outcome(pass, lines.join("; "))
}

fn least_squares_vajda() -> Outcome {
    let shifted = LkLabels {
        gamma: 0.9,
        beta: 0.1,
        c: 0.5,
    };
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, labels) in [("(1, 0, 1/2)", LkLabels::LSGAN), ("(0.9, 0.1, 1/2)", shifted)] {
        let t = over_pairs(|p, q| prop3_vajda_identity(2.0, labels, p, q).unwrap());
        pass &= t.1 == 0;
        lines.push(tally(&format!("labels {name}"), t));
    }
    outcome(pass, lines.join("; "))
}

fn symmetrization() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for family in Family::zoo() {
        let t = over_pairs(|p, q| symmetrization_identity(family, p, q).unwrap());
        pass &= t.1 == 0;
        lines.push(tally(&family.to_string(), t));
    }
    outcome(pass, lines.join("; "))
}

fn renyi_hellinger() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for alpha in RENYI_ALPHAS {
        let t = over_pairs(|p, q| renyi_hellinger_identity(alpha, p, q).unwrap());
        pass &= t.1 == 0;
        lines.push(tally(&format!("alpha {alpha}"), t));
    }
    outcome(pass, lines.join("; "))
}

fn gradient_checks() -> Outcome {
    let survey = toy_gradient_survey(10, 0).unwrap();
    let worst_net = survey.iter().map(|(g, _)| g.max_error()).fold(0.0, f64::max);
    let worst_logit = survey.iter().map(|(_, l)| *l).fold(0.0, f64::max);
    let skipped: usize = survey.iter().map(|(g, _)| g.skipped).sum();
    outcome(
        worst_net <= 1e-5 && worst_logit <= 1e-5,
        format!("10 nets, worst {worst_net:.2e}, penalty input gradient worst {worst_logit:.2e}, {skipped} kink entries skipped"),
    )
}

fn ring_config(text: &str, seed: u64) -> TrainConfig {
    TrainConfig {
        seed,
        ..TrainConfig::from_json(text).unwrap()
    }
}

fn csv_bytes(r: &TrainRecord) -> Vec<u8> {
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    buf
}

fn toy_training() -> Outcome {
    let configs = [
        ("(1,1)", include_str!("../../../configs/ring_alpha_1_1.json")),
        ("(1,5)", include_str!("../../../configs/ring_alpha_1_5.json")),
    ];
    let jobs: Vec<(usize, u64)> = (0..configs.len()).flat_map(|c| TRAIN_SEEDS.map(|s| (c, s))).collect();
    let results = Mutex::new(Vec::new());
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(&(c, seed)) = jobs.get(i) else { break };
                let start = Instant::now();
                let record = train(ring_config(configs[c].1, seed)).unwrap();
                results.lock().unwrap().push((c, seed, record, start.elapsed()));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(c, s, _, _)| (*c, *s));

    let mut pass = true;
    let mut lines = Vec::new();
    for (c, (name, _)) in configs.iter().enumerate() {
        let mut good = 0;
        let mut per_seed = Vec::new();
        for (_, seed, record, elapsed) in results.iter().filter(|r| r.0 == c) {
            let last = record.final_entry().expect("at least one evaluation");
            let ok = !record.collapsed && last.mode_coverage >= 7 && last.hist_jsd <= 0.15;
            good += usize::from(ok);
            pass &= *elapsed < TRIAL_BUDGET;
            per_seed.push(format!(
                "s{seed} {}/8 {:.3} {:.0}s",
                last.mode_coverage,
                last.hist_jsd,
                elapsed.as_secs_f64()
            ));
        }
        pass &= good >= 3;
        lines.push(format!("{name}-GAN {good}/5 [{}]", per_seed.join(", ")));
    }
    let first = &results[0];
    let again = train(ring_config(configs[first.0].1, first.1)).unwrap();
    let reproducible = csv_bytes(&again) == csv_bytes(&first.2);
    pass &= reproducible;
    lines.push(format!("rerun identical CSV: {reproducible}"));
    outcome(pass, lines.join("; "))
}

fn scheme_equivalence() -> Outcome {
    let mut rng = rng_from_seed(7);
    let mut worst = 0.0f64;
    for batch in 0..50 {
        let size = 1 + batch * 5;
        let mut draw = |_| {
            let u: f64 = rng.random();
            if batch % 10 == 0 {
                u.powi(8)
            } else {
                1e-6 + (1.0 - 2e-6) * u
            }
        };
        let real = Array1::from_shape_fn(size, &mut draw);
        let fake = Array1::from_shape_fn(size, &mut draw);
        let alpha = discriminator_objective(LossScheme::AlphaGan { alpha_d: 1.0, alpha_g: 1.0 }, &real, &fake).unwrap();
        let vanilla = discriminator_objective(LossScheme::VanillaSlkgan { k: 1.0 }, &real, &fake).unwrap();
        let mut gap = (alpha.value - vanilla.value).abs() / vanilla.value.abs().max(1.0);
        for (a, v) in alpha.d_real.iter().chain(&alpha.d_fake).zip(vanilla.d_real.iter().chain(&vanilla.d_fake)) {
            gap = gap.max((a - v).abs() / v.abs().max(1.0));
        }
        worst = worst.max(gap);
    }
    outcome(worst <= 1e-12, format!("50 batches, worst gap {worst:.2e} (values and gradients)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("canonical-loss value equals 2a J - 2ab", canonical_value),
        ("vanilla value equals 2 JSD - 2 ln 2", vanilla_jsd),
        ("alpha divergence equals 2^(1/alpha) J, alpha <= 1/2 rejected", alpha_divergence_scaling),
        ("shifted Lk value with printed constant -1/2", shifted_lk_printed_constant),
        ("alpha-GAN value equals Arimoto form, alpha = 1 adjudicated", arimoto_value),
        ("least-squares value equals Pearson-Vajda form", least_squares_vajda),
        ("symmetrized generator gives the Jensen-f divergence", symmetrization),
        ("Renyi through Hellinger", renyi_hellinger),
        ("analytic gradients match central differences", gradient_checks),
        ("toy ring training", toy_training),
        ("alpha_D = 1 and cross-entropy discriminator objectives agree", scheme_equivalence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "{} {name} [{:.1}s]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
