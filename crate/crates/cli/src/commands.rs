use std::fmt::Write as _;

use num_bigint::BigInt;
use qtrep::diagrams::{self, canonical_decomposition, concat, enumerate_diagrams, gamma_eval, Diagram};
use qtrep::lr::{b_coeff, f_coeff, pieri_f};
use qtrep::oracle::{gamma_rank_check, singular_mult};
use qtrep::partitions::{bipartitions_up_to, enumerate_strict, strict_up_to};
use qtrep::trep::{self, HomTable, KoszulReport, Report, ReportEntry};
use qtrep::{Bipartition, Error, GradedInt, StrictPartition};
use serde::Serialize;
use serde_json::json;

use crate::cache::{Cache, CacheError};
use crate::config::{Config, OutputFormat};
use crate::Command;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{error}; this contradicts: {statement}")]
    Hard { error: Error, statement: &'static str },
    #[error("check failed")]
    CheckFailed { output: String },
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        let statement = match &error {
            Error::NotThetaDivisible { .. } => {
                "multiplicities between injectives are whole numbers after dividing out θ-powers"
            }
            Error::ExponentUncalibrated(_) => "every length class up to the size cap has a calibrated θ-exponent",
            Error::BasisSolveFailure(_) => "the Schur Q-functions form a basis of the symmetric functions they span",
            Error::RankTooSmall { .. } | Error::ShapeMismatch(..) | Error::Invalid(_) | Error::Parse(_) => {
                return CliError::Usage(error.to_string())
            }
            _ => "the inputs satisfy the documented preconditions",
        };
        CliError::Hard { error, statement }
    }
}

type CliResult<T> = Result<T, CliError>;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn run(config: &Config, command: &Command) -> CliResult<String> {
    if let Some(threads) = config.num_threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads {threads}: {e}")))?;
    }
    let cache = config.cache_path.as_deref().map(Cache::open).transpose()?;
    if let Some(c) = cache.as_ref().filter(|c| c.was_corrupt()) {
        eprintln!("note: cache {} was unreadable and is being rebuilt", c.path().display());
    }
    let outcome = dispatch(config, command);
    if let Some(cache) = cache {
        cache.flush()?;
    }
    outcome
}

fn dispatch(config: &Config, command: &Command) -> CliResult<String> {
    let json = config.output == OutputFormat::Json;
    match command {
        Command::Lr { lambda, nu, mu } => cmd_lr(json, lambda, nu, mu.as_ref()),
        Command::Homdim { src, dst } => cmd_homdim(json, src, dst),
        Command::Socle { bp, depth } => cmd_socle(json, bp, *depth),
        Command::Tensor { a, b } => cmd_tensor(json, a, b),
        Command::Blocks { confined } => cmd_blocks(json, config.max_size, *confined),
        Command::Koszul => cmd_koszul(json, config.max_size),
        Command::Diagrams { p, q, r, rank } => cmd_diagrams(json, *p, *q, *r, *rank),
        Command::Verify { suite } => cmd_verify(config.max_size, suite),
    }
}

fn check_degree(total: usize) -> CliResult<()> {
    if total > crate::config::MAX_SIZE_CAP {
        return Err(CliError::Usage(format!(
            "total degree {total} exceeds the supported bound {}",
            crate::config::MAX_SIZE_CAP
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct LrEntry {
    mu: StrictPartition,
    b: String,
    f: GradedInt,
}

fn cmd_lr(json: bool, lambda: &StrictPartition, nu: &StrictPartition, mu: Option<&StrictPartition>) -> CliResult<String> {
    check_degree(lambda.size() + nu.size())?;
    let targets = match mu {
        Some(m) => vec![m.clone()],
        None => enumerate_strict(lambda.size() + nu.size()),
    };
    let mut entries = Vec::new();
    for m in targets {
        let f = f_coeff(lambda, nu, &m)?;
        if mu.is_some() || !f.is_zero() {
            entries.push(LrEntry { b: b_coeff(lambda, nu, &m)?.to_string(), mu: m, f });
        }
    }
    if json {
        return Ok(to_json(&json!({ "query": format!("lr {lambda} {nu}"), "entries": entries })));
    }
    let mut out = format!("f^mu for lambda = {lambda}, nu = {nu}\n");
    let _ = writeln!(out, "{:<12} {:>6} {:>12} {:>8}", "mu", "b", "f", "total");
    for e in &entries {
        let _ = writeln!(out, "{:<12} {:>6} {:>12} {:>8}", e.mu.to_string(), e.b, e.f.to_string(), e.f.eval_plus());
    }
    Ok(out)
}

fn describe(m: &trep::Multiplicity) -> String {
    match &m.graded {
        Some(g) => format!("{g} (total {})", m.total),
        None => format!("{} (total; parity ambiguous)", m.total),
    }
}

fn cmd_homdim(json: bool, src: &Bipartition, dst: &Bipartition) -> CliResult<String> {
    check_degree(src.lambda.size().max(src.mu.size()))?;
    let m = trep::hom_dim_z(src, dst)?;
    let layer = src.lambda.size().saturating_sub(dst.lambda.size());
    if json {
        let report = Report { query: format!("homdim {src} {dst}"), entries: vec![ReportEntry::new(src, dst, layer, &m)] };
        return Ok(to_json(&report));
    }
    Ok(format!("dim Hom(Z({src}), Z({dst})) = {}\n", describe(&m)))
}

fn cmd_socle(json: bool, bp: &Bipartition, depth: usize) -> CliResult<String> {
    check_degree(bp.lambda.size().max(bp.mu.size()))?;
    let (l, m) = bp.sizes();
    let mut entries = Vec::new();
    for r in 0..depth.min(l.min(m) + 1) {
        for lower_l in enumerate_strict(l - r) {
            for lower_m in enumerate_strict(m - r) {
                let lower = Bipartition::new(lower_l.clone(), lower_m);
                let mult = trep::socle_mult(bp, &lower, r)?;
                if !mult.is_zero() {
                    entries.push(ReportEntry::new(bp, &lower, r, &mult));
                }
            }
        }
    }
    if json {
        return Ok(to_json(&Report { query: format!("socle {bp} depth {depth}"), entries }));
    }
    let mut out = format!("socle layers of Z({bp})\n");
    for r in 0..depth {
        let layer: Vec<String> = entries
            .iter()
            .filter(|e| e.layer == r)
            .map(|e| {
                let m = trep::Multiplicity { total: e.total.clone(), graded: e.graded.clone(), parity_ambiguous: e.parity_ambiguous };
                format!("V({}) x {}", e.dst, describe(&m))
            })
            .collect();
        let body = if layer.is_empty() { "0".to_string() } else { layer.join(", ") };
        let _ = writeln!(out, "layer {r}: {body}");
    }
    Ok(out)
}

fn cmd_tensor(json: bool, a: &Bipartition, b: &Bipartition) -> CliResult<String> {
    check_degree((a.lambda.size() + b.lambda.size()).max(a.mu.size() + b.mu.size()))?;
    let decomposition = trep::tensor_zz(a, b)?;
    if json {
        let entries = decomposition.iter().map(|(label, m)| ReportEntry::new(a, label, 0, m)).collect();
        return Ok(to_json(&Report { query: format!("tensor {a} {b}"), entries }));
    }
    let mut out = format!("Z({a}) ⊗ Z({b})\n");
    for (label, m) in &decomposition {
        let _ = writeln!(out, "  Z({label}) x {}", describe(m));
    }
    Ok(out)
}

fn cmd_blocks(json: bool, bound: usize, confined: bool) -> CliResult<String> {
    let components =
        if confined { trep::block_components(bound) } else { trep::block_components_ambient(bound, bound + 1) };
    let mut rows: Vec<(i64, Vec<String>)> = components
        .iter()
        .map(|c| (trep::block_of(&c[0]), c.iter().map(ToString::to_string).collect()))
        .collect();
    rows.sort_by_key(|r| r.0);
    if json {
        let blocks: Vec<_> = rows.iter().map(|(m, labels)| json!({ "m": m, "labels": labels })).collect();
        return Ok(to_json(&json!({ "query": format!("blocks {bound}"), "confined": confined, "blocks": blocks })));
    }
    let mut out = format!("{} components on labels with |λ|, |μ| ≤ {bound}\n", rows.len());
    for (m, labels) in rows {
        let _ = writeln!(out, "m = {m:>2}: {}", labels.join(" "));
    }
    Ok(out)
}

fn cmd_koszul(json: bool, bound: usize) -> CliResult<String> {
    let report: KoszulReport = trep::koszul_check(&HomTable::socle_layers(bound)?);
    let out = if json {
        to_json(&json!({ "query": format!("koszul {bound}"), "report": report }))
    } else {
        let mut out = format!(
            "Koszul grading on |λ|, |μ| ≤ {bound}: {} ({} nonzero layers among {} cells)\n",
            if report.pass { "PASS" } else { "FAIL" },
            report.nonzero,
            report.checked
        );
        for v in &report.violations {
            let _ = writeln!(out, "  Z({}) layer {} ∋ V({}): {}", v.src, v.layer, v.dst, v.reason);
        }
        out
    };
    if report.pass {
        Ok(out)
    } else {
        Err(CliError::CheckFailed { output: out })
    }
}

fn word_text(d: &Diagram) -> Vec<String> {
    canonical_decomposition(d).iter().map(ToString::to_string).collect()
}

fn cmd_diagrams(json: bool, p: usize, q: usize, r: usize, rank: Option<usize>) -> CliResult<String> {
    if p + q > 8 {
        return Err(CliError::Usage(format!("p + q = {} exceeds the listing bound 8", p + q)));
    }
    let all = enumerate_diagrams(p, q, r);
    let independent = rank.map(|n| gamma_rank_check(p, q, r, n)).transpose()?;
    if json {
        let list: Vec<_> =
            all.iter().map(|d| json!({ "text": d.to_string(), "diagram": d, "word": word_text(d) })).collect();
        return Ok(to_json(&json!({
            "query": format!("diagrams {p} {q} {r}"),
            "count": all.len(),
            "dimension": diagrams::dim_c(p, q, r),
            "independent": independent,
            "diagrams": list,
        })));
    }
    let mut out = format!("D({p},{q},{r}): {} diagrams, graded dimension {}\n", all.len(), diagrams::dim_c(p, q, r));
    for d in &all {
        let word = word_text(d);
        let word = if word.is_empty() { "id".to_string() } else { word.join(" ") };
        let _ = writeln!(out, "{d}    = {word}");
    }
    if let (Some(n), Some(ok)) = (rank, independent) {
        let _ = writeln!(out, "operators at rank {n}: {}", if ok { "linearly independent" } else { "DEPENDENT" });
    }
    Ok(out)
}

struct Suite {
    out: String,
    failed: usize,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: CliResult<bool>) {
        let status = match outcome {
            Ok(true) => "ok",
            Ok(false) => "FAIL",
            Err(e) => {
                self.failed += 1;
                let _ = writeln!(self.out, "FAIL  {name}: {e}");
                return;
            }
        };
        if status == "FAIL" {
            self.failed += 1;
        }
        let _ = writeln!(self.out, "{status:<4}  {name}");
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn verify_diagrams(suite: &mut Suite) {
    suite.record("diagram counts p!q!2^(p+q-r)/r! for p, q ≤ 3", {
        let mut ok = true;
        for p in 0..=3 {
            for q in 0..=3 {
                for r in 0..=p.min(q) {
                    let expected = (BigInt::from(1) << (p + q - r)) * factorial(p) * factorial(q) / factorial(r);
                    ok &= BigInt::from(enumerate_diagrams(p, q, r).len()) == expected;
                }
            }
        }
        Ok(ok)
    });
    suite.record("realized operators independent for p, q ≤ 2", (|| {
        let mut ok = true;
        for p in 0..=2 {
            for q in 0..=2 {
                for r in 0..=p.min(q) {
                    ok &= gamma_rank_check(p, q, r, p + q)?;
                }
            }
        }
        Ok(ok)
    })());
    suite.record("concatenation realized up to sign for p, q ≤ 2", (|| {
        for p in 0..=2 {
            for q in 0..=2 {
                let n = (p + q).max(1);
                for r in 0..=p.min(q) {
                    for d1 in enumerate_diagrams(p, q, r) {
                        let (bp, bq) = d1.bottom_shape();
                        for s in 0..=bp.min(bq) {
                            for d2 in enumerate_diagrams(bp, bq, s) {
                                let lhs = gamma_eval(&concat(&d1, &d2)?, n);
                                if lhs.sign_relative_to(&gamma_eval(&d1, n).then(&gamma_eval(&d2, n))?).is_none() {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    })());
}

fn verify_lr(suite: &mut Suite) {
    suite.record("Pieri rule for |ν| ≤ 4", (|| {
        let mut ok = true;
        for nu in strict_up_to(4) {
            for mu in enumerate_strict(nu.size() + 1) {
                ok &= f_coeff(&StrictPartition::cell(), &nu, &mu)? == pieri_f(&nu, &mu);
            }
        }
        Ok(ok)
    })());
    suite.record("formula matches singular vectors at rank 4 for degree ≤ 3", (|| {
        let mut ok = true;
        for l in strict_up_to(3) {
            for v in strict_up_to(3 - l.size()) {
                for mu in enumerate_strict(l.size() + v.size()) {
                    ok &= f_coeff(&l, &v, &mu)?.eval_plus() == BigInt::from(singular_mult(&l, &v, &mu, 4)?);
                }
            }
        }
        Ok(ok)
    })());
}

fn verify_trep(suite: &mut Suite, bound: usize) {
    suite.record("Hom(Z(λ, μ), C) = δ(λ, μ) for |λ|, |μ| ≤ 3", (|| {
        let mut ok = true;
        for label in bipartitions_up_to(3) {
            let h = trep::hom_dim_z(&label, &Bipartition::trivial())?;
            ok &= h.total == BigInt::from(u8::from(label.lambda == label.mu));
        }
        Ok(ok)
    })());
    suite.record(&format!("Koszul grading for |λ|, |μ| ≤ {bound}"), (|| {
        Ok(trep::koszul_check(&HomTable::socle_layers(bound)?).pass)
    })());
    suite.record(&format!("blocks are the fibers of |λ| − |μ| for |λ|, |μ| ≤ {bound}"), {
        Ok(trep::block_components_ambient(bound, bound + 1) == trep::block_fibers(bound))
    });
}

fn cmd_verify(bound: usize, name: &str) -> CliResult<String> {
    let mut suite = Suite { out: String::new(), failed: 0 };
    match name {
        "diagrams" => verify_diagrams(&mut suite),
        "lr" => verify_lr(&mut suite),
        "trep" => verify_trep(&mut suite, bound),
        "all" => {
            verify_diagrams(&mut suite);
            verify_lr(&mut suite);
            verify_trep(&mut suite, bound);
        }
        other => return Err(CliError::Usage(format!("unknown suite {other:?} (expected diagrams, lr, trep or all)"))),
    }
    if suite.failed == 0 {
        Ok(suite.out)
    } else {
        Err(CliError::CheckFailed { output: suite.out })
    }
}
