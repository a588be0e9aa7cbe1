use mvforge_core::finitemv::{hopfian_report, znk_surjective_implies_injective, FiniteMV};
use mvforge_core::mcnaughton::{from_term, random_term};
use mvforge_core::{BigInt, McNFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, CliError};

/// `x ⊕ ¬0 = ¬0` and `¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x`.
fn axioms_hold(x: &McNFunction, y: &McNFunction) -> Result<bool, CliError> {
    let n = x.arity();
    let top = McNFunction::zero(n)?.mv_neg();
    let first = x.mv_plus(&top)?.equal(&top)?;
    let lhs = x.mv_neg().mv_plus(y)?.mv_neg().mv_plus(y)?;
    let rhs = y.mv_neg().mv_plus(x)?.mv_neg().mv_plus(x)?;
    Ok(first && lhs.equal(&rhs)?)
}

pub fn axioms(trials: usize, seed: u64) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for i in 0..trials {
        let n = 1 + i % 2;
        let (tx, ty) = (random_term(&mut rng, n, 4), random_term(&mut rng, n, 4));
        let (x, y) = (from_term(&tx, n)?, from_term(&ty, n)?);
        if !axioms_hold(&x, &y)? {
            failures += 1;
            println!("FAILED on n={n}: x = {tx}, y = {ty}");
        }
    }
    println!("trials: {trials}, seed: {seed}, failures: {failures}");
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError::Math(format!("{failures} axiom failures")))
    }
}

pub fn hopfian(algebra: &str) -> Result<(), CliError> {
    let a = FiniteMV::parse(algebra).map_err(usage)?;
    let report = hopfian_report(&a)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("plain struct"));
    if report.hopfian {
        Ok(())
    } else {
        Err(CliError::Math(format!("{algebra} has a non-injective surjective endomorphism")))
    }
}

pub fn znk(matrix: &str) -> Result<(), CliError> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(matrix).map_err(|e| usage(format!("matrix {matrix:?}: {e}")))?;
    let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let report = znk_surjective_implies_injective(&m).map_err(usage)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("plain struct"));
    if report.implication_holds {
        Ok(())
    } else {
        Err(CliError::Math("surjective but not injective".into()))
    }
}
