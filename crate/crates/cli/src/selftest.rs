//! Cross-checks the closed-form, fast-path and symbolic routes on a small
//! query corpus built from the loaded vocabulary.

use anyhow::Result;
use genlog::{
    conditional_symbolic, fast_data_query, fast_data_query_limit, query, Dataset, Formula,
    ModelDistribution, MuSetting, Query,
};

pub struct Report {
    pub queries: usize,
    pub mismatches: Vec<String>,
}

/// Literals over at most the first four ground atoms.
fn literals(dist: &ModelDistribution) -> Result<Vec<Formula>> {
    let vocab = dist.vocab();
    let mut out = Vec::new();
    for name in vocab.ground_atoms().iter().take(4) {
        let atom = Formula::atom(vocab, name)?;
        out.push(Formula::not(atom.clone()));
        out.push(atom);
    }
    Ok(out)
}

pub fn run(dist: &ModelDistribution, dataset: Option<&Dataset>) -> Result<Report> {
    let lits = literals(dist)?;
    let mut premise_sets: Vec<Vec<Formula>> = vec![vec![]];
    for (i, a) in lits.iter().enumerate() {
        premise_sets.push(vec![a.clone()]);
        for b in &lits[i..] {
            premise_sets.push(vec![a.clone(), b.clone()]);
        }
    }
    let mut targets = lits.clone();
    targets.push(Formula::Top);

    let mut report = Report {
        queries: 0,
        mismatches: Vec::new(),
    };
    for target in &targets {
        for premises in &premise_sets {
            let q = Query::new(dist.vocab().clone(), target.clone(), premises.clone())?;
            let sym = conditional_symbolic(&q, dist)?;
            let one = query(&q, dist, &MuSetting::One)?.value;
            let lim = query(&q, dist, &MuSetting::LimitOne)?.value;
            let describe = || {
                let ps: Vec<String> = premises.iter().map(ToString::to_string).collect();
                format!("p({target} | {})", ps.join("; "))
            };
            if one != sym.evaluate_at(&genlog::rational::integer(1))? {
                report.mismatches.push(format!("{} at mu = 1", describe()));
            }
            if lim != sym.limit_at_one() {
                report.mismatches.push(format!("{} as mu -> 1", describe()));
            }
            if let Some(ds) = dataset {
                if fast_data_query(&q, ds)?.value != one {
                    report
                        .mismatches
                        .push(format!("{} fast path at mu = 1", describe()));
                }
                if fast_data_query_limit(&q, ds)?.value != lim {
                    report
                        .mismatches
                        .push(format!("{} fast path as mu -> 1", describe()));
                }
            }
            report.queries += 1;
        }
    }
    Ok(report)
}
