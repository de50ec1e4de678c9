use std::io::Read;
use std::path::Path;

use serde::Serialize;

use torsade_core::arthur::{
    e_psi, e_psi_total, endoscopic_catalog, factor_through, s_psi_is_central, validate, ArthurParameter,
    EndoscopicDatum, ParameterFile,
};
use torsade_core::campaign::{denom_campaign, MAX_DENOM_N, describe, family_outcome, unipotent_family, FamilyOutcome, Sampler};
use torsade_core::exact::{cplx_strs, format_cq, parse_q_list, rat_strs, CplxStr, DisplayQ, RatStr};
use torsade_core::langlands::{reduce_to_langlands, verify_theorem, DatumFile, InducedDatum, Limits, StepKind};
use torsade_core::orders::{compare_diff, cone_witness, OrderKind};
use torsade_core::twisted::{classify_restricted_roots, norm_torus, restriction_norm, RootType, TorusPoint};
use torsade_core::{Cq, Error, Exponent, HKind};

use crate::{Format, KindArg, ParamAction, TableArg};

/// Exit 1 for a failed mathematical check, exit 2 for bad input.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Largest `N` accepted by the table commands.
const MAX_TABLE_N: usize = 64;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable report"));
}

fn show_param(psi: &ArthurParameter) -> String {
    if psi.blocks.is_empty() {
        "trivial".into()
    } else {
        describe(psi)
    }
}

fn show_exp(e: &Exponent) -> String {
    format!("({})", e.coords.iter().map(format_cq).collect::<Vec<_>>().join(", "))
}

#[derive(Serialize)]
struct FactorReport {
    datum: EndoscopicDatum,
    prime: ParameterFile,
    second: ParameterFile,
}

#[derive(Serialize)]
struct ParamReport {
    valid: bool,
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_psi_central: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorization: Option<FactorReport>,
    #[serde(rename = "E_psi", skip_serializing_if = "Option::is_none")]
    e_total: Option<Vec<CplxStr>>,
    #[serde(rename = "e_psi", skip_serializing_if = "Option::is_none")]
    e_normed: Option<Vec<CplxStr>>,
}

pub fn param(action: ParamAction, path: &Path, fmt: Format) -> CmdResult {
    let file: ParameterFile = read_json(path)?;
    let psi = ArthurParameter::from(file);
    let violations: Vec<String> = validate(&psi).iter().map(ToString::to_string).collect();
    let valid = violations.is_empty();
    let mut report = ParamReport {
        valid,
        violations,
        s_psi_central: None,
        factorization: None,
        e_total: None,
        e_normed: None,
    };
    if valid && matches!(action, ParamAction::Show) {
        let f = factor_through(&psi)?;
        report.s_psi_central = Some(s_psi_is_central(&psi));
        report.factorization = Some(FactorReport {
            datum: f.datum,
            prime: ParameterFile::from(&f.prime),
            second: ParameterFile::from(&f.second),
        });
        report.e_total = Some(cplx_strs(&e_psi_total(&psi)?.coords));
        report.e_normed = Some(cplx_strs(&e_psi(&psi)?.coords));
    }
    match fmt {
        Format::Json => print_json(&report),
        Format::Text => {
            println!("parameter: {} on {} (N={})", describe(&psi), psi.target, psi.n);
            println!("valid: {}", if valid { "yes" } else { "no" });
            for v in &report.violations {
                println!("  violation: {v}");
            }
            if valid && matches!(action, ParamAction::Show) {
                let f = factor_through(&psi)?;
                let central = s_psi_is_central(&psi);
                println!("s_psi central: {}", if central { "yes" } else { "no" });
                println!("factorization: {}", f.datum);
                println!("  psi'  = {} on {}", show_param(&f.prime), f.prime.target);
                println!("  psi'' = {} on {}", show_param(&f.second), f.second.target);
                println!("E_psi: {}", show_exp(&e_psi_total(&psi)?));
                println!("e_psi: {}", show_exp(&e_psi(&psi)?));
            }
        }
    }
    if valid {
        Ok(())
    } else {
        Err(Failure::Check(format!("invalid parameter: {}", report.violations.join("; "))))
    }
}

#[derive(Serialize)]
struct OrderReport {
    kind: String,
    lhs: Vec<RatStr>,
    rhs: Vec<RatStr>,
    leq: bool,
    /// Coefficients of `rhs - lhs` on the simple roots, when `leq` holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<RatStr>>,
}

pub fn order(kind: KindArg, lhs: &str, rhs: &str, split: Option<usize>, n_odd: bool, fmt: Format) -> CmdResult {
    let a = parse_q_list(lhs)?;
    let b = parse_q_list(rhs)?;
    if a.len() != b.len() {
        return Err(Failure::Usage(format!("length mismatch: {} vs {}", a.len(), b.len())));
    }
    let kind = match kind {
        KindArg::G => OrderKind::G,
        KindArg::Theta => OrderKind::Theta,
        KindArg::E => OrderKind::E { n_odd },
        KindArg::HSoEven => OrderKind::H(HKind::SoEven),
        KindArg::HSoOdd => OrderKind::H(HKind::SoOdd),
        KindArg::HSp => OrderKind::H(HKind::Sp),
        KindArg::Product => {
            OrderKind::Product { split: split.ok_or_else(|| Failure::Usage("product needs --split".into()))? }
        }
    };
    let x: Vec<_> = b.iter().zip(&a).map(|(v, u)| v - u).collect();
    let leq = compare_diff(kind, &x)?;
    let witness = if leq { cone_witness(kind, &x)? } else { None };
    let report = OrderReport {
        kind: format!("{kind:?}"),
        lhs: rat_strs(&a),
        rhs: rat_strs(&b),
        leq,
        witness: witness.as_deref().map(rat_strs),
    };
    match fmt {
        Format::Json => print_json(&report),
        Format::Text => {
            println!("{}: {}", report.kind, leq);
            if let Some(w) = &witness {
                let parts: Vec<String> = w.iter().map(|c| DisplayQ(c).to_string()).collect();
                println!("witness: rhs - lhs = Σ c_i α_i with c = ({})", parts.join(", "));
            }
        }
    }
    Ok(())
}

pub fn denom(n: usize, samples: usize, seed: u64, fmt: Format) -> CmdResult {
    if n == 0 || n > MAX_DENOM_N {
        return Err(Failure::Usage(format!("N = {n} outside 1..={MAX_DENOM_N}")));
    }
    let r = denom_campaign(n, samples, seed)?;
    match fmt {
        Format::Json => print_json(&r),
        Format::Text => {
            println!("N={}: {} points, {} mismatches", r.n, r.points, r.mismatches.len());
            println!("  WD identity: {} checked, {} failures", r.wd_checked, r.wd_failures.len());
            println!(
                "  transfer lemmas: {} checked, {} failures, max rel error {:.2e}",
                r.lemma_checked,
                r.lemma_failures.len(),
                r.lemma_max_rel_error
            );
            println!("  max |Δ-1| (SO_odd, Sp): {:.2e}", r.unit_transfer_max_dev);
            println!("  irregular points skipped: {}", r.skipped_irregular);
            for m in r.mismatches.iter().chain(&r.wd_failures).chain(&r.lemma_failures) {
                println!("  {m}");
            }
        }
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("denominator identities failed at N={n}")))
    }
}

#[derive(Serialize)]
struct CandidateRow {
    exponent: Vec<i64>,
    theta_ok: bool,
    chain_ok: bool,
}

#[derive(Serialize)]
struct SingleReport {
    parameter: ParameterFile,
    #[serde(rename = "E_psi")]
    e_total: Vec<CplxStr>,
    #[serde(rename = "e_psi")]
    e_normed: Vec<CplxStr>,
    candidates: usize,
    theta_stable: usize,
    checked: Vec<CandidateRow>,
    passed: bool,
}

#[derive(Serialize)]
struct FamilyReport {
    max_n: usize,
    parameters: usize,
    failures: usize,
    outcomes: Vec<FamilyOutcome>,
}

pub fn verify(file: Option<&Path>, family: Option<usize>, fmt: Format) -> CmdResult {
    let limits = Limits::from_env();
    if let Some(path) = file {
        let pf: ParameterFile = read_json(path)?;
        let psi = ArthurParameter::from(pf);
        if let Some(v) = validate(&psi).first() {
            return Err(Failure::Usage(format!("invalid parameter: {v}")));
        }
        let r = verify_theorem(&psi, &limits)?;
        let report = SingleReport {
            parameter: ParameterFile::from(&psi),
            e_total: cplx_strs(&e_psi_total(&psi)?.coords),
            e_normed: cplx_strs(&e_psi(&psi)?.coords),
            candidates: r.candidates,
            theta_stable: r.theta_stable,
            checked: r
                .checked
                .iter()
                .map(|c| CandidateRow { exponent: c.exponent.clone(), theta_ok: c.theta_ok, chain_ok: c.chain_ok })
                .collect(),
            passed: r.passed(),
        };
        match fmt {
            Format::Json => print_json(&report),
            Format::Text => {
                println!("parameter: {} on {} (N={})", describe(&psi), psi.target, psi.n);
                println!("E_psi: {}", show_exp(&e_psi_total(&psi)?));
                println!("e_psi: {}", show_exp(&e_psi(&psi)?));
                println!(
                    "{} candidates, {} θ-stable, {} above E_psi for ≤_G",
                    r.candidates,
                    r.theta_stable,
                    r.checked.len()
                );
                println!("{:<28} {:>6} {:>6}", "exponent", "≥_θ", "chain");
                for c in &report.checked {
                    let e = format!("{:?}", c.exponent);
                    println!("{e:<28} {:>6} {:>6}", c.theta_ok, c.chain_ok);
                }
                println!("{}", if report.passed { "PASS" } else { "FAIL" });
            }
        }
        return if report.passed { Ok(()) } else { Err(Failure::Check("inequality fails for some candidate".into())) };
    }
    let max_n = family.expect("clap enforces --file or --family");
    if max_n == 0 || max_n > limits.max_rank {
        return Err(Failure::Usage(format!(
            "--family {max_n} outside 1..={} (raise {} to extend)",
            limits.max_rank,
            torsade_core::langlands::MAX_RANK_ENV
        )));
    }
    let params = unipotent_family(max_n);
    let mut outcomes = Vec::with_capacity(params.len());
    for p in &params {
        outcomes.push(family_outcome(p, &verify_theorem(p, &limits)?));
    }
    let failures = outcomes.iter().filter(|o| o.failures > 0).count();
    match fmt {
        Format::Json => print_json(&FamilyReport { max_n, parameters: params.len(), failures, outcomes }),
        Format::Text => {
            for o in &outcomes {
                println!(
                    "{:<4} {:<8} {:<20} candidates {:>6} checked {:>5}",
                    if o.failures == 0 { "ok" } else { "FAIL" },
                    o.target.to_string(),
                    o.parameter,
                    o.candidates,
                    o.checked
                );
            }
            println!("{} parameters, {} failures", params.len(), failures);
        }
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failures} parameters fail")))
    }
}

#[derive(Serialize)]
struct StepRow {
    position: usize,
    kind: StepKind,
    p: CplxStr,
    q: CplxStr,
    borderline: bool,
    before: Vec<CplxStr>,
    after: Vec<CplxStr>,
    /// `before - after = decrement · α_position` on real parts.
    decrement: RatStr,
}

#[derive(Serialize)]
struct ReduceReport {
    initial: DatumFile,
    steps: Vec<StepRow>,
    #[serde(rename = "final")]
    final_datum: DatumFile,
    kernel_steps: usize,
    total_decrement: Vec<RatStr>,
}

pub fn reduce(path: &Path, fmt: Format) -> CmdResult {
    let file: DatumFile = read_json(path)?;
    let d = InducedDatum::try_from(file)?;
    let trace = reduce_to_langlands(&d);
    let report = ReduceReport {
        initial: DatumFile::from(&trace.initial),
        steps: trace
            .steps
            .iter()
            .map(|s| StepRow {
                position: s.position,
                kind: s.kind,
                p: CplxStr::from(&s.p),
                q: CplxStr::from(&s.q),
                borderline: s.borderline,
                before: cplx_strs(&s.before.coords),
                after: cplx_strs(&s.after.coords),
                decrement: RatStr(s.decrement.clone()),
            })
            .collect(),
        final_datum: DatumFile::from(&trace.final_datum),
        kernel_steps: trace.kernel_steps(),
        total_decrement: rat_strs(&trace.total_decrement()),
    };
    match fmt {
        Format::Json => print_json(&report),
        Format::Text => {
            for s in &trace.steps {
                println!(
                    "({},{}) {:<6} p={} q={}{}  {} -> {}  decrement {}·α_{}",
                    s.position + 1,
                    s.position + 2,
                    format!("{:?}", s.kind).to_lowercase(),
                    format_cq(&s.p),
                    format_cq(&s.q),
                    if s.borderline { " (borderline)" } else { "" },
                    show_exp(&s.before),
                    show_exp(&s.after),
                    DisplayQ(&s.decrement),
                    s.position + 1
                );
            }
            println!(
                "{} steps, {} kernel; final exponent {}",
                trace.steps.len(),
                trace.kernel_steps(),
                show_exp(&trace.final_datum.exponent())
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RootRow {
    source: (usize, usize),
    kind: RootType,
    d: u32,
    restricted: Vec<RatStr>,
}

#[derive(Serialize)]
struct NormRow {
    t: Vec<CplxStr>,
    norm: Vec<CplxStr>,
    y: Vec<CplxStr>,
    restricted_norm: Vec<CplxStr>,
}

#[derive(Serialize)]
struct NormTable {
    n: usize,
    /// `N(t)_k = t_k / t_{N+1-k}`.
    formulas: Vec<String>,
    samples: Vec<NormRow>,
}

pub fn tables(table: TableArg, n: usize, samples: usize, seed: u64, fmt: Format) -> CmdResult {
    if n > MAX_TABLE_N {
        return Err(Failure::Usage(format!("N = {n} exceeds {MAX_TABLE_N}")));
    }
    match table {
        TableArg::Endoscopy => {
            let rows: Vec<EndoscopicDatum> = HKind::ALL
                .iter()
                .filter(|h| h.accepts(n))
                .map(|&h| endoscopic_catalog(h, n))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect();
            match fmt {
                Format::Json => print_json(&rows),
                Format::Text => {
                    println!("{:<8} {:>4} {:>4}  groups", "target", "N'", "N''");
                    for d in &rows {
                        let (h1, h2) = d.groups();
                        println!(
                            "{:<8} {:>4} {:>4}  {} x {}",
                            d.target.to_string(),
                            d.n_prime,
                            d.n_second,
                            h1.label(),
                            h2.label()
                        );
                    }
                }
            }
        }
        TableArg::RestrictedRoots => {
            let rows: Vec<RootRow> = classify_restricted_roots(n)
                .into_iter()
                .map(|r| RootRow { source: r.source, kind: r.kind, d: r.kind.d(), restricted: rat_strs(&r.restricted) })
                .collect();
            match fmt {
                Format::Json => print_json(&rows),
                Format::Text => {
                    println!("{:<10} {:<4} {:>2}  restriction", "root", "type", "d");
                    for r in &rows {
                        let parts: Vec<String> = r.restricted.iter().map(|c| DisplayQ(&c.0).to_string()).collect();
                        println!(
                            "{:<10} {:<4} {:>2}  ({})",
                            format!("e{}-e{}", r.source.0, r.source.1),
                            format!("{:?}", r.kind),
                            r.d,
                            parts.join(", ")
                        );
                    }
                }
            }
        }
        TableArg::Norm => {
            let mut sampler = Sampler::new(seed);
            let mut rows = Vec::new();
            for _ in 0..samples {
                let t = TorusPoint::new(sampler.point(n))?;
                let y = sampler.point(n / 2);
                let fixed = TorusPoint::theta_fixed(n, &y)?;
                rows.push(NormRow {
                    t: cplx_strs(t.coords()),
                    norm: cplx_strs(&norm_torus(&t)),
                    y: cplx_strs(&y),
                    restricted_norm: cplx_strs(&restriction_norm(&fixed)?),
                });
            }
            let formulas = (1..=n / 2).map(|k| format!("t{k}/t{}", n + 1 - k)).collect();
            let report = NormTable { n, formulas, samples: rows };
            match fmt {
                Format::Json => print_json(&report),
                Format::Text => {
                    println!("N(t) = ({})", report.formulas.join(", "));
                    for r in &report.samples {
                        let show = |v: &[CplxStr]| {
                            let z: Vec<String> = v.iter().map(|c| format_cq(&Cq::from(c.clone()))).collect();
                            format!("({})", z.join(", "))
                        };
                        println!("t = {} -> N(t) = {}", show(&r.t), show(&r.norm));
                        println!("  y = {} -> restricted {}", show(&r.y), show(&r.restricted_norm));
                    }
                }
            }
        }
    }
    Ok(())
}
