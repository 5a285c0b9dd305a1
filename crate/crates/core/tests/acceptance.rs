//! Acceptance criteria, one line of output per criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use genlog::rational::ratio;
use genlog::{
    approximate_models, bayes_decomposition, conditional_symbolic, entails_classical,
    entails_possible, fast_data_query, fast_data_query_limit, marginal, maximal_consistent_subsets,
    maximal_possible_subsets, models_of, parse_ground, possible_approximate_models,
    possible_models, query, Dataset, Formula, ModelDistribution, MuPolynomial, MuSetting, Outcome,
    Query, Rational, Regime, World,
};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn defined(n: i64, d: i64) -> Outcome {
    Outcome::Defined(ratio(n, d))
}

fn load(name: &str) -> Dataset {
    Dataset::load(fixture(name)).expect("fixture loads")
}

fn prior(name: &str) -> ModelDistribution {
    ModelDistribution::load(fixture(name)).expect("fixture loads")
}

fn q(vocab: &Arc<genlog::Vocabulary>, target: &str, premises: &str) -> Query {
    Query::parse(vocab.clone(), target, premises).expect("query parses")
}

/// 1. p(concave | upper) = 3/4 on the surface/shadow data, both routes.
fn perception_golden() -> Check {
    let ds = load("shadow.json");
    let query_ = q(ds.vocab(), "~convex", "upper");
    let fast = fast_data_query(&query_, &ds).map_err(|e| e.to_string())?;
    let enumerated = query(&query_, &ds.mle_prior(), &MuSetting::One).map_err(|e| e.to_string())?;
    ensure!(fast.value == defined(3, 4), "fast path gave {}", fast.value);
    ensure!(
        enumerated.value == defined(3, 4),
        "enumeration gave {}",
        enumerated.value
    );
    Ok(())
}

/// 2. p(wet | rain, rain→wet) = 1 and p(wet | rain) = 3/4 on the rain/wet data.
fn logic_golden() -> Check {
    let ds = load("rainwet.json");
    let prior = ds.mle_prior();
    let mp = q(ds.vocab(), "wet", "rain; rain -> wet");
    let single = q(ds.vocab(), "wet", "rain");
    for (query_, want) in [(&mp, defined(1, 1)), (&single, defined(3, 4))] {
        let fast = fast_data_query(query_, &ds).unwrap().value;
        let full = query(query_, &prior, &MuSetting::One).unwrap().value;
        ensure!(
            fast == want && full == want,
            "expected {want}, fast {fast}, enumeration {full}"
        );
    }
    Ok(())
}

/// 3. MLE prior, marginals, and the Bayes computation term by term.
fn mle_equivalence() -> Check {
    let ds = load("rainwet.json");
    let p = ds.mle_prior();
    let expected = vec![ratio(4, 10), ratio(2, 10), ratio(1, 10), ratio(3, 10)];
    ensure!(p.to_dense() == expected, "mle prior {:?}", p.to_dense());
    let m = |s: &str| {
        marginal(&parse_ground(s, ds.vocab()).unwrap(), &p, &MuSetting::One)
            .unwrap()
            .value
    };
    ensure!(m("rain") == defined(4, 10), "p(rain) = {}", m("rain"));
    ensure!(
        m("rain -> wet") == defined(9, 10),
        "p(rain -> wet) = {}",
        m("rain -> wet")
    );

    let shadow = load("shadow.json");
    let b =
        bayes_decomposition(&q(shadow.vocab(), "~convex", "upper"), &shadow.mle_prior()).unwrap();
    ensure!(b.posterior == defined(3, 4), "posterior {}", b.posterior);
    ensure!(
        b.likelihood == defined(3, 4),
        "p(upper | concave) {}",
        b.likelihood
    );
    ensure!(
        b.likelihood_complement == defined(1, 6),
        "p(upper | convex) {}",
        b.likelihood_complement
    );
    ensure!(b.prior == ratio(4, 10), "p(concave) {}", b.prior);
    ensure!(b.evidence == ratio(4, 10), "p(upper) {}", b.evidence);
    // 3/4·4/10 / (3/4·4/10 + 1/6·6/10)
    let lik = b.likelihood.value().unwrap();
    let lik_c = b.likelihood_complement.value().unwrap();
    let numerator = lik * &b.prior;
    let expanded = &numerator / (&numerator + lik_c * (Rational::one() - &b.prior));
    ensure!(
        expanded == ratio(3, 4),
        "term-by-term Bayes gave {expanded}"
    );
    ensure!(
        b.evidence_by_total_probability() == Some(ratio(4, 10)),
        "total probability expansion"
    );
    ensure!(
        b.identity_holds() == Some(true),
        "posterior·evidence ≠ likelihood·prior"
    );
    Ok(())
}

/// 4. The rain/wet/¬wet curve: limit 1, undefined at μ = 1.
fn limit_golden() -> Check {
    let p = prior("curveprior.json");
    let query_ = q(p.vocab(), "rain", "rain; wet; ~wet");
    let f = conditional_symbolic(&query_, &p).unwrap();
    ensure!(
        f.limit_at_one() == defined(1, 1),
        "limit {}",
        f.limit_at_one()
    );
    let at_one = f.evaluate_at(&ratio(1, 1)).unwrap();
    ensure!(at_one.is_undefined(), "value at μ = 1 is {at_one}");
    ensure!(
        query(&query_, &p, &MuSetting::LimitOne).unwrap().value == defined(1, 1),
        "LimitOne closed form"
    );
    ensure!(
        query(&query_, &p, &MuSetting::One)
            .unwrap()
            .value
            .is_undefined(),
        "One closed form"
    );
    Ok(())
}

/// 5. MCS / MPS families, approximate models, and the possible-approximate-model closed form.
fn mcs_mps_golden() -> Check {
    let ds = load("rainwet.json");
    let v = ds.vocab();
    let delta = genlog::parse_premises("rain; wet; rain -> wet; ~wet", v).unwrap();

    let mcs = maximal_consistent_subsets(&delta, v).unwrap();
    ensure!(
        mcs.position_sets() == [vec![0, 1, 2]].into(),
        "MCS = {}",
        mcs.render(&delta)
    );
    let approx = approximate_models(&delta, v).unwrap();
    ensure!(approx.indices() == vec![3], "approximate models {approx}");

    let mps_prior = prior("mpsprior.json");
    let mps = maximal_possible_subsets(&delta, &mps_prior).unwrap();
    ensure!(
        mps.position_sets() == [vec![1, 2], vec![2, 3]].into(),
        "MPS = {}",
        mps.render(&delta)
    );
    let pam = possible_approximate_models(&delta, &mps_prior);
    ensure!(
        pam.indices() == vec![0, 1],
        "possible approximate models {pam}"
    );

    let query_ = Query::new(v.clone(), parse_ground("wet", v).unwrap(), delta).unwrap();
    let closed = query(&query_, &mps_prior, &MuSetting::LimitOne).unwrap();
    let symbolic = conditional_symbolic(&query_, &mps_prior)
        .unwrap()
        .limit_at_one();
    ensure!(
        closed.value == defined(1, 10),
        "closed form {}",
        closed.value
    );
    ensure!(
        closed.regime == Regime::Theorem5,
        "regime {}",
        closed.regime
    );
    ensure!(symbolic == defined(1, 10), "symbolic limit {symbolic}");
    Ok(())
}

/// 6. Closed forms, fast paths and the symbolic route agree on random instances.
fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e_6c_6f_67);
    let instances = 2000;
    let mut undefined = 0;
    for i in 0..instances {
        let inst = random_instance(&mut rng);
        let sym = conditional_symbolic(&inst.query, &inst.prior).unwrap();
        let one = query(&inst.query, &inst.prior, &MuSetting::One)
            .unwrap()
            .value;
        let lim = query(&inst.query, &inst.prior, &MuSetting::LimitOne)
            .unwrap()
            .value;
        let at_one = sym.evaluate_at(&ratio(1, 1)).unwrap();
        ensure!(
            one == at_one,
            "instance {i}: One {one} vs symbolic {at_one}"
        );
        ensure!(
            lim == sym.limit_at_one(),
            "instance {i}: LimitOne {lim} vs symbolic {}",
            sym.limit_at_one()
        );
        let fast = fast_data_query(&inst.query, &inst.dataset).unwrap().value;
        let fast_lim = fast_data_query_limit(&inst.query, &inst.dataset)
            .unwrap()
            .value;
        ensure!(fast == one, "instance {i}: fast {fast} vs {one}");
        ensure!(
            fast_lim == lim,
            "instance {i}: fast limit {fast_lim} vs {lim}"
        );
        let mu = ratio(rng.gen_range(0..=16), 16);
        let exact = query(&inst.query, &inst.prior, &MuSetting::Exact(mu.clone()))
            .unwrap()
            .value;
        ensure!(
            exact == sym.evaluate_at(&mu).unwrap(),
            "instance {i}: Exact({mu}) mismatch"
        );
        undefined += usize::from(one.is_undefined());
    }
    ensure!(undefined > 0, "no instance exercised the undefined outcome");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "suite took {elapsed:?}");
    Ok(())
}

/// 7. Probability one coincides with the consequence relations.
fn consequence_correspondence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1500 {
        let inst = random_instance(&mut rng);
        // every third instance swaps in a full-support prior
        let dist = if i % 3 == 0 {
            random_full_support(&mut rng, &inst.vocab)
        } else {
            inst.prior.clone()
        };
        let (premises, target) = (inst.query.premises(), inst.query.target());

        let possible = entails_possible(premises, target, &dist);
        let classical = entails_classical(premises, target, &inst.vocab).unwrap();
        ensure!(
            !classical.holds || possible.holds,
            "instance {i}: ⊨ without ⊫"
        );

        let one = query(&inst.query, &dist, &MuSetting::One).unwrap().value;
        if !possible.witness.is_empty() {
            ensure!(
                one.is_one() == possible.holds,
                "instance {i}: p = {one} but ⊫ is {}",
                possible.holds
            );
            if dist.model_assumption_holds() {
                ensure!(
                    one.is_one() == classical.holds,
                    "instance {i}: p = {one} but ⊨ is {}",
                    classical.holds
                );
            }
        }

        let mps = maximal_possible_subsets(premises, &dist).unwrap();
        if !possible_approximate_models(premises, &dist).is_empty() {
            let alpha = possible_models(std::slice::from_ref(target), &dist);
            let contained = mps.members.iter().all(|s| s.models.is_subset(&alpha));
            let lim = query(&inst.query, &dist, &MuSetting::LimitOne)
                .unwrap()
                .value;
            ensure!(
                lim.is_one() == contained,
                "instance {i}: limit {lim} but MPS containment {contained}"
            );
        }
    }

    // ⊫ does not imply ⊨: the only classical countermodel has probability zero.
    let p = prior("mpsprior.json");
    let v = p.vocab();
    let premises = genlog::parse_premises("~wet", v).unwrap();
    let concl = parse_ground("~rain", v).unwrap();
    ensure!(
        entails_possible(&premises, &concl, &p).holds,
        "{{~wet}} ⊫ ~rain should hold"
    );
    ensure!(
        !entails_classical(&premises, &concl, v).unwrap().holds,
        "{{~wet}} ⊨ ~rain should fail"
    );
    Ok(())
}

/// 8. Kolmogorov axioms at μ = 1 and the normalisation identity for all μ.
fn kolmogorov() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..600 {
        let v = vocab(rng.gen_range(1..=4));
        let dist = if i % 2 == 0 {
            random_dataset(&mut rng, &v, 12).mle_prior()
        } else {
            random_full_support(&mut rng, &v)
        };
        let at_one = |f: &Formula| {
            marginal(f, &dist, &MuSetting::One)
                .unwrap()
                .value
                .value()
                .cloned()
                .unwrap()
        };

        let alpha = random_formula(&mut rng, &v, 3);
        let beta = random_formula(&mut rng, &v, 3);
        ensure!(
            !at_one(&alpha).is_negative(),
            "instance {i}: negative marginal"
        );
        ensure!(at_one(&Formula::Top).is_one(), "instance {i}: p(⊤) ≠ 1");

        let disjoint = Formula::and(beta.clone(), Formula::not(alpha.clone()));
        for b in [beta, disjoint] {
            if models_of(&[Formula::and(alpha.clone(), b.clone())], &v)
                .unwrap()
                .is_empty()
            {
                let union = at_one(&Formula::or(alpha.clone(), b.clone()));
                ensure!(
                    union == at_one(&alpha) + at_one(&b),
                    "instance {i}: additivity fails"
                );
            }
        }

        ensure!(
            at_one(&alpha) + at_one(&Formula::not(alpha.clone())) == Rational::one(),
            "instance {i}: complement"
        );
        let pos = conditional_symbolic(
            &Query::new(v.clone(), alpha.clone(), vec![]).unwrap(),
            &dist,
        )
        .unwrap();
        let neg = conditional_symbolic(
            &Query::new(v.clone(), Formula::not(alpha), vec![]).unwrap(),
            &dist,
        )
        .unwrap();
        ensure!(
            &pos.num + &neg.num == MuPolynomial::one(),
            "instance {i}: polynomial normalisation"
        );
        ensure!(
            pos.den == MuPolynomial::one() && neg.den == MuPolynomial::one(),
            "instance {i}: marginal denominator"
        );
    }
    Ok(())
}

/// 9. When no possible world satisfies any single premise, the limit is the marginal.
fn uninformative_premises() -> Check {
    let fixed = [
        (prior("curveprior.json"), "rain & ~rain; wet & ~wet"),
        (prior("mpsprior.json"), "rain; rain & wet"),
    ];
    for (dist, premises) in &fixed {
        let v = dist.vocab();
        for target in ["rain", "wet", "rain -> wet", "~wet"] {
            let query_ = q(v, target, premises);
            let lim = query(&query_, dist, &MuSetting::LimitOne).unwrap();
            let m = marginal(query_.target(), dist, &MuSetting::One)
                .unwrap()
                .value;
            ensure!(
                lim.value == m,
                "{target} | {premises}: {} vs marginal {m}",
                lim.value
            );
            let want = if dist.model_assumption_holds() {
                Regime::Theorem4
            } else {
                Regime::Theorem6
            };
            ensure!(
                lim.regime == want,
                "{target} | {premises}: regime {}",
                lim.regime
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut found = 0;
    for _ in 0..200_000 {
        let v = vocab(rng.gen_range(1..=4));
        let ds = random_dataset(&mut rng, &v, 4);
        let dist = ds.mle_prior();
        let premises: Vec<Formula> = (0..rng.gen_range(1..=4))
            .map(|_| random_formula(&mut rng, &v, 2))
            .collect();
        if !possible_approximate_models(&premises, &dist).is_empty() {
            continue;
        }
        let target = random_formula(&mut rng, &v, 3);
        let query_ = Query::new(v.clone(), target.clone(), premises).unwrap();
        let lim = query(&query_, &dist, &MuSetting::LimitOne).unwrap().value;
        let m = marginal(&target, &dist, &MuSetting::One).unwrap().value;
        ensure!(lim == m, "random instance: {lim} vs marginal {m}");
        ensure!(
            fast_data_query_limit(&query_, &ds).unwrap().value == m,
            "fast limit path disagrees"
        );
        ensure!(
            conditional_symbolic(&query_, &dist).unwrap().limit_at_one() == m,
            "symbolic limit disagrees"
        );
        found += 1;
        if found == 300 {
            break;
        }
    }
    ensure!(found >= 100, "only {found} filtered instances generated");
    Ok(())
}

/// 10. The data-side fast path only touches distinct worlds, whatever K is.
fn scale() -> Check {
    let v = vocab(4);
    let counts: Vec<u64> = (0..16u64).map(|i| 62_500 + i * 10 - 75).collect();
    let total: u64 = counts.iter().sum();
    ensure!(total == 1_000_000, "synthetic total is {total}");
    let entries = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (World::new(i, 4), c))
        .collect();
    let ds = Dataset::new(v.clone(), entries).unwrap();
    let query_ = q(&v, "a0 | a3", "a1 -> a2; ~a3 | a0");

    let reps = 100;
    let start = Instant::now();
    let mut result = None;
    for _ in 0..reps {
        result = Some(fast_data_query(&query_, &ds).unwrap());
    }
    let per_query = start.elapsed() / reps;
    ensure!(
        per_query < Duration::from_millis(50),
        "fast query took {per_query:?}"
    );
    let expected = query(&query_, &ds.mle_prior(), &MuSetting::One).unwrap();
    ensure!(
        result.unwrap().value == expected.value,
        "fast path disagrees with enumeration at K = 10^6"
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 perception golden: p(concave | upper) = 3/4",
            perception_golden,
        ),
        (
            "2 logic golden: p(wet | rain, rain->wet) = 1, p(wet | rain) = 3/4",
            logic_golden,
        ),
        ("3 MLE equivalence and Bayes decomposition", mle_equivalence),
        (
            "4 limit golden: first curve -> 1, undefined at mu = 1",
            limit_golden,
        ),
        (
            "5 MCS/MPS golden and possible approximate models",
            mcs_mps_golden,
        ),
        (
            "6 oracle equivalence on 2000 random instances",
            oracle_equivalence,
        ),
        (
            "7 consequence correspondence and ⊨ implies ⊫",
            consequence_correspondence,
        ),
        ("8 Kolmogorov axioms at mu = 1", kolmogorov),
        (
            "9 uninformative premises give the marginal",
            uninformative_premises,
        ),
        ("10 fast path at K = 10^6 under 50 ms", scale),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match std::panic::catch_unwind(check) {
            Ok(Ok(())) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Ok(Err(msg)) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
