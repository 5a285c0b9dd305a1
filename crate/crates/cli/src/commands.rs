use std::io::Write;

use anyhow::{bail, Context, Result};
use genlog::rational::{format_fraction, integer, to_f64};
use genlog::{
    approximate_models, conditional_symbolic, entails_classical, entails_possible,
    maximal_consistent_subsets, maximal_possible_subsets, parse_ground,
    possible_approximate_models, query as run_query, Dataset, Formula, ModelDistribution,
    MuSetting, Outcome, Query, SubsetFamily, Vocabulary, WorldSet,
};
use serde_json::{json, Map, Value};

use crate::{CheckArgs, ConsequenceArgs, Format, QueryArgs, RelationArg, Source, SweepArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_UNDEFINED: u8 = 3;
pub const EXIT_FAILS: u8 = 4;

pub struct Loaded {
    pub dataset: Option<Dataset>,
    pub dist: ModelDistribution,
}

impl Source {
    pub fn load(&self) -> Result<Loaded> {
        match (&self.dataset, &self.prior) {
            (Some(path), None) => {
                let ds = Dataset::load(path)
                    .with_context(|| format!("loading dataset {}", path.display()))?;
                let dist = ds.mle_prior();
                Ok(Loaded {
                    dataset: Some(ds),
                    dist,
                })
            }
            (None, Some(path)) => {
                let dist = ModelDistribution::load(path)
                    .with_context(|| format!("loading prior {}", path.display()))?;
                Ok(Loaded {
                    dataset: None,
                    dist,
                })
            }
            _ => bail!("give exactly one of --dataset or --prior"),
        }
    }
}

/// Premise texts as typed, for display, alongside their parsed formulas.
fn premises(text: &str, vocab: &Vocabulary) -> Result<(Vec<String>, Vec<Formula>)> {
    let labels: Vec<String> = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect();
    let formulas = labels
        .iter()
        .map(|s| parse_ground(s, vocab).with_context(|| format!("in premise `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok((labels, formulas))
}

fn build_query(loaded: &Loaded, target: &str, given: &str) -> Result<Query> {
    let vocab = loaded.dist.vocab();
    let target = parse_ground(target, vocab).with_context(|| format!("in target `{target}`"))?;
    let (_, given) = premises(given, vocab)?;
    Ok(Query::new(vocab.clone(), target, given)?)
}

fn decimal(outcome: &Outcome) -> Option<f64> {
    outcome.value().map(to_f64)
}

fn world_json(set: &WorldSet, vocab: &Vocabulary) -> Value {
    Value::Array(
        set.iter()
            .map(|w| {
                let map: Map<String, Value> = vocab
                    .ground_atoms()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), json!(u8::from(w.value(i)))))
                    .collect();
                Value::Object(map)
            })
            .collect(),
    )
}

fn atom_header(vocab: &Vocabulary) -> String {
    format!("({})", vocab.ground_atoms().join(","))
}

pub fn query(args: &QueryArgs, out: &mut impl Write) -> Result<u8> {
    let loaded = args.source.load()?;
    let setting: MuSetting = args.mu.parse().context("invalid --mu")?;
    let q = build_query(&loaded, &args.target, &args.given)?;
    let result = run_query(&q, &loaded.dist, &setting)?;
    let vocab = loaded.dist.vocab();

    match args.format {
        Format::Human => {
            match decimal(&result.value) {
                Some(d) => writeln!(out, "{} ({:?}) [{}]", result.value, d, result.regime)?,
                None => writeln!(out, "undefined [{}]", result.regime)?,
            }
            if let Some(w) = &result.witness {
                writeln!(out, "witness {}: {}", atom_header(vocab), w)?;
            }
        }
        Format::Json => {
            let doc = json!({
                "value": result.value.to_string(),
                "decimal": decimal(&result.value),
                "regime": result.regime,
                "witness": result.witness.as_ref().map_or(Value::Array(vec![]), |w| world_json(w, vocab)),
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            writeln!(out, "value,decimal,regime")?;
            let d = decimal(&result.value)
                .map(|d| format!("{d:?}"))
                .unwrap_or_default();
            writeln!(out, "{},{},{}", result.value, d, result.regime)?;
        }
    }
    Ok(if result.value.is_undefined() {
        EXIT_UNDEFINED
    } else {
        EXIT_OK
    })
}

pub fn sweep(args: &SweepArgs, out: &mut impl Write) -> Result<u8> {
    if args.steps < 2 {
        bail!("--steps must be at least 2");
    }
    let loaded = args.source.load()?;
    let q = build_query(&loaded, &args.target, &args.given)?;
    let f = conditional_symbolic(&q, &loaded.dist)?;
    let last = integer(args.steps as u64 - 1);
    writeln!(out, "mu,probability")?;
    for i in 0..args.steps {
        let mu = integer(i as u64) / &last;
        let cell = match f.evaluate_at(&mu)? {
            Outcome::Defined(p) => format_fraction(&p),
            Outcome::Undefined => String::new(),
        };
        writeln!(out, "{},{}", format_fraction(&mu), cell)?;
    }
    let limit = match f.limit_at_one() {
        Outcome::Defined(p) => format_fraction(&p),
        Outcome::Undefined => String::new(),
    };
    writeln!(out, "limit,{limit}")?;
    Ok(EXIT_OK)
}

fn render_family(family: &SubsetFamily, labels: &[String]) -> String {
    let sets: Vec<String> = family
        .members
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.positions.iter().map(|&i| labels[i].as_str()).collect();
            format!("{{{}}}", names.join(", "))
        })
        .collect();
    sets.join(", ")
}

pub fn consequence(args: &ConsequenceArgs, out: &mut impl Write) -> Result<u8> {
    let loaded = args.source.load()?;
    let vocab = loaded.dist.vocab();
    let (labels, formulas) = premises(&args.premises, vocab)?;
    let conclusion = args
        .conclusion
        .as_deref()
        .map(|c| parse_ground(c, vocab).with_context(|| format!("in conclusion `{c}`")))
        .transpose()?;
    if conclusion.is_none() && !args.explain {
        bail!("--conclusion is required unless --explain is given");
    }

    let report = match (&conclusion, args.relation) {
        (Some(c), RelationArg::Classical) => Some(entails_classical(&formulas, c, vocab)?),
        (Some(c), RelationArg::Possible) => Some(entails_possible(&formulas, c, &loaded.dist)),
        (None, _) => None,
    };
    let explanation = if args.explain {
        Some(match args.relation {
            RelationArg::Classical => (
                "MCS",
                maximal_consistent_subsets(&formulas, vocab)?,
                approximate_models(&formulas, vocab)?,
            ),
            RelationArg::Possible => (
                "MPS",
                maximal_possible_subsets(&formulas, &loaded.dist)?,
                possible_approximate_models(&formulas, &loaded.dist),
            ),
        })
    } else {
        None
    };

    match args.format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert(
                "relation".into(),
                json!(format!("{:?}", args.relation).to_lowercase()),
            );
            if let Some(r) = &report {
                doc.insert("holds".into(), json!(r.holds));
                doc.insert("witness".into(), world_json(&r.witness, vocab));
            }
            if let Some((name, family, models)) = &explanation {
                let sets: Vec<Vec<&str>> = family
                    .members
                    .iter()
                    .map(|s| s.positions.iter().map(|&i| labels[i].as_str()).collect())
                    .collect();
                doc.insert(name.to_lowercase(), json!(sets));
                doc.insert("approximate_models".into(), world_json(models, vocab));
            }
            writeln!(out, "{}", Value::Object(doc))?;
        }
        Format::Human | Format::Csv => {
            if let Some(r) = &report {
                let symbol = match args.relation {
                    RelationArg::Classical => "|=",
                    RelationArg::Possible => "||=",
                };
                let verdict = if r.holds { "holds" } else { "fails" };
                writeln!(
                    out,
                    "{verdict}: {{{}}} {symbol} {}",
                    labels.join("; "),
                    args.conclusion.as_deref().unwrap_or_default()
                )?;
                let which = if args.relation == RelationArg::Classical {
                    "models"
                } else {
                    "possible models"
                };
                writeln!(
                    out,
                    "{which} of premises {}: {}",
                    atom_header(vocab),
                    r.witness
                )?;
            }
            if let Some((name, family, models)) = &explanation {
                writeln!(out, "{name} = {}", render_family(family, &labels))?;
                let which = if args.relation == RelationArg::Classical {
                    "approximate models"
                } else {
                    "possible approximate models"
                };
                writeln!(out, "{which} {}: {}", atom_header(vocab), models)?;
            }
        }
    }
    Ok(match report {
        Some(r) if !r.holds => EXIT_FAILS,
        _ => EXIT_OK,
    })
}

pub fn check(args: &CheckArgs, out: &mut impl Write) -> Result<u8> {
    let loaded = args.source.load()?;
    let dist = &loaded.dist;
    let vocab = dist.vocab();
    let n = vocab.world_count();
    let assumption = if dist.model_assumption_holds() {
        "holds".to_owned()
    } else {
        format!("fails ({} zero-probability worlds)", dist.zero_worlds())
    };
    let report = crate::selftest::run(dist, loaded.dataset.as_ref())?;

    match args.format {
        Format::Json => {
            let mut doc = Map::new();
            if let Some(ds) = &loaded.dataset {
                doc.insert("K".into(), json!(ds.total()));
                doc.insert("counts".into(), json!(ds.model_counts().as_slice()));
            }
            doc.insert("N".into(), json!(n));
            doc.insert(
                "model_assumption".into(),
                json!(dist.model_assumption_holds()),
            );
            doc.insert("zero_probability_worlds".into(), json!(dist.zero_worlds()));
            doc.insert(
                "self_test".into(),
                json!({"queries": report.queries, "mismatches": report.mismatches.len()}),
            );
            writeln!(out, "{}", Value::Object(doc))?;
        }
        Format::Human | Format::Csv => {
            match &loaded.dataset {
                Some(ds) => writeln!(
                    out,
                    "K={}, N={}, model assumption: {}",
                    ds.total(),
                    n,
                    assumption
                )?,
                None => writeln!(out, "N={}, model assumption: {}", n, assumption)?,
            }
            writeln!(out, "world {} K_n p", atom_header(vocab))?;
            let counts = loaded.dataset.as_ref().map(Dataset::model_counts);
            // large vocabularies list the possible worlds only
            let listed: Vec<usize> = if n <= 64 {
                (0..n).collect()
            } else {
                dist.support().indices()
            };
            for i in listed {
                let w = genlog::World::new(i, vocab.atom_count());
                let k = counts
                    .as_ref()
                    .map_or("-".to_owned(), |c| c.get(i).to_string());
                writeln!(
                    out,
                    "m{} {} {} {}",
                    i + 1,
                    w,
                    k,
                    format_fraction(&dist.prob(w))
                )?;
            }
            writeln!(
                out,
                "self-test: {} queries, {} mismatches",
                report.queries,
                report.mismatches.len()
            )?;
            for m in &report.mismatches {
                writeln!(out, "  mismatch: {m}")?;
            }
        }
    }
    Ok(if report.mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_ERROR
    })
}
