//! qcf: expand, verify, scan and count everything the workbench builds.
//!
//! Orders on the command line are powers of q; commands scale them onto
//! the lattice a case needs. `QCF_DEFAULT_ORDER` overrides the built-in
//! default order of any command that takes `--order` (and `--n-max` for
//! the partition verifier). Exit code 0 means every scored case passed.
//! JSON output is deterministic: identical invocations produce identical
//! bytes (timing appears only in human-readable output).

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qseries::cf::{certify, CfFamily, CfId, NamedCf};
use qseries::dissection::{
    scan_vanishing, table_rows, theorem_claims, verify_row, DissectionSpec, VanishingClaim,
};
use qseries::identities::{
    all_cases, case_by_id, corrupted_case, proof_steps, verify_case, verify_modular,
};
use qseries::partitions::{
    identity_by_label, verify_partition_identity, verify_series_chain, ColorClass,
    ColoredPartitionSpec,
};
use qseries::report::{CheckStatus, RunReport, SCHEMA_VERSION};
use qseries::products::ProductSpec;

#[derive(Parser)]
#[command(name = "qcf", version, about = "Exact q-series workbench for the continued fractions of order 34 and 68")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy)]
enum TableFamily {
    X,
    Y,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product quotient (q^a1,...;q^m)/(q^b1,...;q^m) and print
    /// the canonical JSON series
    Expand {
        /// Comma-separated numerator exponents (may be empty)
        #[arg(long, default_value = "")]
        num: String,
        /// Comma-separated denominator exponents (may be empty)
        #[arg(long, default_value = "")]
        den: String,
        /// Base modulus m
        #[arg(long = "mod")]
        modulus: i64,
        #[arg(long)]
        order: Option<i64>,
    },
    /// Verify theta identities: a case id (T2.1-a .. T2.2-p), a modular
    /// relation (T2.3-X1-n4, T2.4-Y3-n1), "all", or "all-modular"
    VerifyTheta {
        #[arg(long)]
        case: String,
        /// Verification order as a power of q (lattice-scaled internally)
        #[arg(long)]
        order: Option<i64>,
        /// Run the documented corruption of the case instead; it must fail
        #[arg(long)]
        negative_control: bool,
        #[arg(long)]
        json: bool,
    },
    /// Certify that a continued fraction's convergents match its product form
    VerifyCf {
        /// X1..X8, Y1..Y8 or "all"
        #[arg(long)]
        id: String,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long, default_value_t = 80)]
        max_depth: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify the intermediate identities behind the sum/difference forms
    VerifyProofSteps {
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Expand a dissection and check the left side equals the term sum
    Dissect {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        z: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Scan one arithmetic progression of a product quotient for zeros
    ScanVanishing {
        #[arg(long, default_value = "")]
        num: String,
        #[arg(long, default_value = "")]
        den: String,
        #[arg(long = "mod")]
        modulus: i64,
        /// Progression "m,r" meaning coefficients of q^{m·n + r}
        #[arg(long)]
        progression: String,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Scan every row of one family's vanishing-coefficient table
    VerifyTable {
        #[arg(long, value_enum, ignore_case = true)]
        which: TableFamily,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Count colored partitions for residue classes "s:colors" (± expanded)
    CountPartitions {
        #[arg(long = "mod")]
        modulus: u64,
        /// Repeatable class spec "s:colors", residues mod the modulus
        #[arg(long = "class")]
        classes: Vec<String>,
        #[arg(long)]
        n: Option<u64>,
        /// Also run the exhaustive-enumeration oracle and cross-check
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify a partition identity ("4.1" or "4.2") via generating functions
    VerifyPartitions {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run the whole verification suite with one exit code
    VerifyAll {
        #[arg(long)]
        json: bool,
        /// Order (power of q) for the 32 identities and proof steps
        #[arg(long)]
        identity_order: Option<i64>,
        /// Order (power of q) for the 16 certificates
        #[arg(long)]
        cf_order: Option<i64>,
        #[arg(long)]
        dissect_order: Option<i64>,
        #[arg(long)]
        scan_bound: Option<i64>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Inject one corrupted identity case; the run must then fail
        #[arg(long)]
        negative_control: bool,
    },
}

fn env_default_order() -> Option<i64> {
    std::env::var("QCF_DEFAULT_ORDER").ok().and_then(|v| v.parse().ok())
}

fn pick_order(flag: Option<i64>, builtin: i64) -> i64 {
    flag.or_else(env_default_order).unwrap_or(builtin)
}

fn parse_exponents(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i64>().map_err(|_| format!("bad exponent {p:?}")))
        .collect()
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

struct Emitter {
    json: bool,
    started: Instant,
}

impl Emitter {
    fn new(json: bool) -> Self {
        Emitter { json, started: Instant::now() }
    }

    /// Print the envelope and convert the aggregate into an exit code.
    fn finish<T: Serialize>(
        &self,
        cases: Vec<T>,
        status: CheckStatus,
        defaults: Vec<(String, i64)>,
        human: impl Fn(),
    ) -> ExitCode {
        if self.json {
            let mut report = RunReport::new(command_echo(), cases, status);
            report.defaults = defaults;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        } else {
            human();
            println!(
                "status: {status}   ({} ms)",
                self.started.elapsed().as_millis()
            );
        }
        if status.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

fn aggregate(statuses: impl IntoIterator<Item = CheckStatus>) -> CheckStatus {
    let mut agg = CheckStatus::Pass;
    for s in statuses {
        if !s.passed() {
            agg = CheckStatus::Fail;
        }
    }
    agg
}

fn run_expand(num: &str, den: &str, modulus: i64, order: Option<i64>) -> Result<ExitCode, String> {
    let order = pick_order(order, 60);
    let num = parse_exponents(num)?;
    let den = parse_exponents(den)?;
    let spec = ProductSpec::quotient(1, &num, &den, modulus);
    let series = spec.expand(order).map_err(|e| e.to_string())?;
    println!("{}", serde_json::to_string(&series).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

/// Case selector for verify-theta: theorem cases, modular relations, or
/// the two "all" groups.
enum ThetaSelection {
    Cases(Vec<String>),
    Modular(Vec<(CfFamily, u8, u32)>),
}

fn parse_theta_selection(case: &str) -> Result<ThetaSelection, String> {
    if case == "all" {
        return Ok(ThetaSelection::Cases(all_cases().into_iter().map(|c| c.id).collect()));
    }
    if case == "all-modular" {
        let mut v = Vec::new();
        for i in 1u8..=8 {
            for n in [4u32, 8] {
                v.push((CfFamily::X, i, n));
            }
            for n in [1u32, 2, 3] {
                v.push((CfFamily::Y, i, n));
            }
        }
        return Ok(ThetaSelection::Modular(v));
    }
    if let Some(rest) = case.strip_prefix("T2.3-").or_else(|| case.strip_prefix("T2.4-")) {
        let (id_part, n_part) = rest
            .split_once("-n")
            .ok_or_else(|| format!("modular case {case:?} should look like T2.3-X1-n4"))?;
        let id: CfId = id_part.parse().map_err(|e| format!("{e}"))?;
        let expect_family = if case.starts_with("T2.3-") { CfFamily::X } else { CfFamily::Y };
        if id.family != expect_family {
            return Err(format!("case {case:?} names a fraction from the other family"));
        }
        let n: u32 = n_part.parse().map_err(|_| format!("bad power in {case:?}"))?;
        return Ok(ThetaSelection::Modular(vec![(id.family, id.index, n)]));
    }
    Ok(ThetaSelection::Cases(vec![case.to_string()]))
}

fn run_verify_theta(
    case: &str,
    order: Option<i64>,
    negative_control: bool,
    json: bool,
) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let selection = parse_theta_selection(case)?;
    match selection {
        ThetaSelection::Cases(ids) => {
            let mut reports = Vec::new();
            for id in ids {
                let case = if negative_control {
                    corrupted_case(&id).map_err(|e| e.to_string())?
                } else {
                    case_by_id(&id).map_err(|e| e.to_string())?
                };
                let scaled = order.or_else(env_default_order).map(|o| o * i64::from(case.denom));
                reports.push(verify_case(&case, scaled));
            }
            let status = aggregate(reports.iter().map(|r| r.status));
            let defaults = vec![("order-units-x".into(), 100), ("order-units-y".into(), 120)];
            Ok(emitter.finish(reports.clone(), status, defaults, || {
                for r in &reports {
                    println!(
                        "{:12} d={} through {} units: {}{}",
                        r.case,
                        r.denom,
                        r.order,
                        r.status,
                        r.first_mismatch
                            .as_ref()
                            .map(|m| format!("  first mismatch at {} ({} vs {})", m.exp_num, m.lhs, m.rhs))
                            .unwrap_or_default()
                    );
                }
            }))
        }
        ThetaSelection::Modular(specs) => {
            let mut reports = Vec::new();
            for (family, i, n) in specs {
                let builtin = match family {
                    CfFamily::X => 60,
                    CfFamily::Y => 100,
                };
                let o = pick_order(order, builtin);
                reports.push(verify_modular(family, i, n, o).map_err(|e| e.to_string())?);
            }
            let status = aggregate(reports.iter().map(|r| r.status));
            let defaults = vec![("order-x".into(), 60), ("order-y".into(), 100)];
            Ok(emitter.finish(reports.clone(), status, defaults, || {
                for r in &reports {
                    println!(
                        "{:10} strict={} conjugate={} computed-sign={} stated-sign={} {}",
                        r.case, r.strict_series, r.conjugate_series, r.computed_sign, r.stated_sign, r.status
                    );
                }
            }))
        }
    }
}

fn run_verify_cf(id: &str, order: Option<i64>, max_depth: u32, json: bool) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let ids: Vec<CfId> = if id == "all" {
        CfId::all()
    } else {
        vec![id.parse().map_err(|e| format!("{e}"))?]
    };
    let order_q = pick_order(order, 60);
    let certs: Vec<_> = ids
        .iter()
        .map(|&id| {
            let denom = NamedCf::new(id).denom();
            certify(id, order_q * i64::from(denom), max_depth)
        })
        .collect();
    let status = aggregate(certs.iter().map(|c| c.status));
    Ok(emitter.finish(certs.clone(), status, vec![("order".into(), order_q)], || {
        for c in &certs {
            println!(
                "{:4} order {} units: {}  depth {}",
                c.id,
                c.order,
                c.status,
                c.depth.map(|d| d.to_string()).unwrap_or_else(|| "-".into())
            );
        }
    }))
}

fn run_proof_steps(order: Option<i64>, json: bool) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let order_q = pick_order(order, 40);
    let reports = proof_steps(order_q * 4);
    let status = aggregate(reports.iter().map(|r| r.status));
    Ok(emitter.finish(reports.clone(), status, vec![("order".into(), order_q)], || {
        for r in &reports {
            println!("{:26} {}", r.case, r.status);
        }
    }))
}

fn run_dissect(x: u64, y: u64, z: u64, w: u64, order: Option<i64>, json: bool) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let order = pick_order(order, 300);
    let spec = DissectionSpec::new(x, y, z, w).map_err(|e| e.to_string())?;
    let report = spec.dissect(order).and_then(|o| o.report()).map_err(|e| e.to_string())?;
    let status = report.status;
    Ok(emitter.finish(vec![report.clone()], status, vec![("order".into(), order)], || {
        println!(
            "dissection x={x} y={y} z={z} w={w}: {} terms, zero terms {:?}, left side == term sum: {}",
            report.term_count, report.zero_terms, report.status
        );
    }))
}

fn run_scan(
    num: &str,
    den: &str,
    modulus: i64,
    progression: &str,
    bound: Option<i64>,
    json: bool,
) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let bound = pick_order(bound, 600);
    let (m, r) = progression
        .split_once(',')
        .ok_or_else(|| "progression must look like \"17,6\"".to_string())?;
    let m: u64 = m.trim().parse().map_err(|_| "bad modulus".to_string())?;
    let r: u64 = r.trim().parse().map_err(|_| "bad residue".to_string())?;
    let spec = ProductSpec::quotient(1, &parse_exponents(num)?, &parse_exponents(den)?, modulus);
    let claim = VanishingClaim::new(format!("({num};{modulus})/({den};{modulus})"), spec, m, r, bound)
        .map_err(|e| e.to_string())?;
    let report = scan_vanishing(&claim).map_err(|e| e.to_string())?;
    let status = report.status;
    Ok(emitter.finish(vec![report.clone()], status, vec![("bound".into(), bound)], || {
        println!(
            "coefficients of q^({m}n+{r}) through q^{bound}: {} checked, {}{}",
            report.checked,
            report.status,
            report
                .violations
                .first()
                .map(|(n, c)| format!("  first violation n={n} coefficient {c}"))
                .unwrap_or_default()
        );
    }))
}

fn run_verify_table(which: TableFamily, bound: Option<i64>, json: bool) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let bound = pick_order(bound, 600);
    let family = match which {
        TableFamily::X => CfFamily::X,
        TableFamily::Y => CfFamily::Y,
    };
    let reports: Vec<_> = table_rows(family)
        .iter()
        .map(|row| verify_row(row, bound))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let status = aggregate(reports.iter().map(|r| r.status));
    Ok(emitter.finish(reports.clone(), status, vec![("bound".into(), bound)], || {
        for r in &reports {
            println!(
                "{:8} q^({}n+{}): {}  vanishing orientation: {}  dissection route agrees: {}",
                r.label,
                r.modulus,
                r.residue,
                r.status,
                r.orientation,
                r.dissection_agrees.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
            );
        }
    }))
}

fn run_count_partitions(
    modulus: u64,
    classes: &[String],
    n: Option<u64>,
    oracle: bool,
    json: bool,
) -> Result<ExitCode, String> {
    let n = n.or_else(|| env_default_order().map(|o| o as u64)).unwrap_or(40);
    let mut pm = Vec::new();
    for c in classes {
        let (s, colors) = c
            .split_once(':')
            .ok_or_else(|| format!("class {c:?} should look like \"16:1\""))?;
        pm.push((
            s.trim().parse::<u64>().map_err(|_| format!("bad residue in {c:?}"))?,
            colors.trim().parse::<u32>().map_err(|_| format!("bad color count in {c:?}"))?,
        ));
    }
    let spec = if modulus == 1 && pm.iter().all(|&(s, _)| s == 1) {
        // mod-1 classes denote "all parts"
        ColoredPartitionSpec::new(
            1,
            pm.iter().map(|&(_, colors)| ColorClass { residue: 1, colors }).collect(),
        )
    } else {
        ColoredPartitionSpec::from_pm(modulus, &pm)
    }
    .map_err(|e| e.to_string())?;
    let counts = spec.count_gf(n).map_err(|e| e.to_string())?;
    let oracle_counts = if oracle {
        Some(spec.count_enumerate(n).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let agree = oracle_counts.as_ref().map(|o| *o == counts);
    let payload = json!({
        "schema_version": SCHEMA_VERSION,
        "modulus": modulus,
        "classes": spec.classes.iter().map(|c| json!({"residue": c.residue, "colors": c.colors})).collect::<Vec<_>>(),
        "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "oracle_counts": oracle_counts.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        "oracle_agrees": agree,
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
    } else {
        for (i, c) in counts.iter().enumerate() {
            println!("{i:4} {c}");
        }
        if let Some(agree) = agree {
            println!("enumeration oracle agrees: {agree}");
        }
    }
    Ok(if agree.unwrap_or(true) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_verify_partitions(theorem: &str, n_max: Option<u64>, json: bool) -> Result<ExitCode, String> {
    let emitter = Emitter::new(json);
    let n_max = n_max.or_else(|| env_default_order().map(|o| o as u64)).unwrap_or(200);
    let identity = identity_by_label(theorem).map_err(|e| e.to_string())?;
    let report = verify_partition_identity(&identity, n_max).map_err(|e| e.to_string())?;
    // second proof path: the product-form chain behind both identities
    let chain = verify_series_chain((n_max as i64).max(120)).map_err(|e| e.to_string())?;
    let mut status = report.status;
    if chain.iter().any(|r| !r.status.passed()) {
        status = CheckStatus::Fail;
    }
    let mut cases = vec![serde_json::to_value(&report).expect("serializable")];
    cases.extend(chain.iter().map(|r| serde_json::to_value(r).expect("serializable")));
    Ok(emitter.finish(cases, status, vec![("n-max".into(), n_max as i64)], || {
        println!(
            "identity {} through n={}: {}  (signed sum nonzero below threshold at {} points)",
            report.identity,
            report.n_max,
            report.status,
            report.below_threshold_nonzero.len()
        );
        for r in &chain {
            println!("  series route {:32} {}", r.case, r.status);
        }
    }))
}

fn run_verify_all(
    json: bool,
    identity_order: Option<i64>,
    cf_order: Option<i64>,
    dissect_order: Option<i64>,
    scan_bound: Option<i64>,
    n_max: Option<u64>,
    negative_control: bool,
) -> Result<ExitCode, String> {
    let started = Instant::now();
    let identity_order = identity_order.or_else(env_default_order);
    let cf_order = pick_order(cf_order, 60);
    let dissect_order = pick_order(dissect_order, 300);
    let scan_bound = pick_order(scan_bound, 600);
    let n_max = n_max.unwrap_or(200);

    let mut scored = Vec::new(); // (section, case, status, detail)
    let mut push = |section: &str, case: String, status: CheckStatus, detail: String| {
        scored.push(json!({
            "section": section,
            "case": case,
            "status": status,
            "detail": detail,
        }));
        status
    };
    let mut all_pass = true;

    // 32 sum/difference identities (+ optional corrupted control)
    for case in all_cases() {
        let scaled = identity_order.map(|o| o * i64::from(case.denom));
        let r = verify_case(&case, scaled);
        all_pass &= push(
            "theta-identities",
            r.case.clone(),
            r.status,
            r.first_mismatch.as_ref().map(|m| format!("first mismatch at {}", m.exp_num)).unwrap_or_default(),
        )
        .passed();
    }
    if negative_control {
        let control = corrupted_case("T2.1-a").map_err(|e| e.to_string())?;
        let r = verify_case(&control, None);
        // a healthy failure path: the corrupted case must fail, and the run
        // reports it as a scored failure on purpose
        all_pass &= push("theta-identities", r.case.clone(), r.status, "injected corruption".into()).passed();
    }

    // proof steps
    for r in proof_steps(4 * identity_order.unwrap_or(40)) {
        all_pass &= push("proof-steps", r.case.clone(), r.status, String::new()).passed();
    }

    // 16 certificates
    for id in CfId::all() {
        let denom = NamedCf::new(id).denom();
        let c = certify(id, cf_order * i64::from(denom), 80);
        all_pass &= push(
            "cf-certificates",
            c.id.clone(),
            c.status,
            c.depth.map(|d| format!("depth {d}")).unwrap_or_default(),
        )
        .passed();
    }

    // dissection instantiations
    for (x, y, z, w) in [(34u64, 9u64, 17u64, 17u64), (68, 3, 34, 34)] {
        let report = DissectionSpec::new(x, y, z, w)
            .and_then(|s| s.dissect(dissect_order))
            .and_then(|o| o.report())
            .map_err(|e| e.to_string())?;
        all_pass &= push(
            "dissections",
            format!("x={x},y={y},z={z},w={w}"),
            report.status,
            format!("{} terms, zero terms {:?}", report.term_count, report.zero_terms),
        )
        .passed();
    }

    // vanishing progressions: the two standalone claims and both tables
    for row in theorem_claims()
        .iter()
        .chain(table_rows(CfFamily::X).iter())
        .chain(table_rows(CfFamily::Y).iter())
    {
        let r = verify_row(row, scan_bound).map_err(|e| e.to_string())?;
        let routes_agree = r.dissection_agrees == Some(true);
        let status = if routes_agree { r.status } else { CheckStatus::Fail };
        all_pass &= push(
            "vanishing",
            r.label.clone(),
            status,
            format!("q^({}n+{}), orientation {}", r.modulus, r.residue, r.orientation),
        )
        .passed();
    }

    // partition identities and the product-form chain behind them
    for label in ["4.1", "4.2"] {
        let identity = identity_by_label(label).map_err(|e| e.to_string())?;
        let r = verify_partition_identity(&identity, n_max).map_err(|e| e.to_string())?;
        all_pass &= push("partitions", label.to_string(), r.status, format!("n <= {}", r.n_max)).passed();
    }
    for r in verify_series_chain((n_max as i64).max(120)).map_err(|e| e.to_string())? {
        all_pass &= push("partition-series-chain", r.case.clone(), r.status, String::new()).passed();
    }

    // informational: the modular relations, strict and corrected readings;
    // not scored because the strict X reading is refuted as printed
    let mut informational = Vec::new();
    for i in 1u8..=8 {
        for (family, powers) in [(CfFamily::X, vec![4u32, 8]), (CfFamily::Y, vec![1, 2, 3])] {
            for n in powers {
                let order = match family {
                    CfFamily::X => 60,
                    CfFamily::Y => 100,
                };
                let r = verify_modular(family, i, n, order).map_err(|e| e.to_string())?;
                informational.push(serde_json::to_value(&r).expect("serializable"));
            }
        }
    }

    let status = if all_pass { CheckStatus::Pass } else { CheckStatus::Fail };
    if json {
        let report = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command_echo(),
            "status": status,
            "cases": scored,
            "informational_modular_relations": informational,
            "defaults": {
                "cf_order": cf_order,
                "dissect_order": dissect_order,
                "scan_bound": scan_bound,
                "n_max": n_max,
            },
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        let mut last_section = String::new();
        for case in &scored {
            let section = case["section"].as_str().unwrap_or_default();
            if section != last_section {
                println!("== {section}");
                last_section = section.to_string();
            }
            println!(
                "  {:28} {}  {}",
                case["case"].as_str().unwrap_or_default(),
                case["status"].as_str().unwrap_or_default(),
                case["detail"].as_str().unwrap_or_default()
            );
        }
        println!("== modular relations (informational; strict readings refuted as printed)");
        for r in &informational {
            println!(
                "  {:10} strict={} conjugate={} sign {} vs stated {}  {}",
                r["case"].as_str().unwrap_or_default(),
                r["strict_series"].as_str().unwrap_or_default(),
                r["conjugate_series"].as_str().unwrap_or_default(),
                r["computed_sign"],
                r["stated_sign"],
                r["status"].as_str().unwrap_or_default()
            );
        }
        println!("status: {status}   ({} ms)", started.elapsed().as_millis());
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Expand { num, den, modulus, order } => run_expand(&num, &den, modulus, order),
        Command::VerifyTheta { case, order, negative_control, json } => {
            run_verify_theta(&case, order, negative_control, json)
        }
        Command::VerifyCf { id, order, max_depth, json } => run_verify_cf(&id, order, max_depth, json),
        Command::VerifyProofSteps { order, json } => run_proof_steps(order, json),
        Command::Dissect { x, y, z, w, order, json } => run_dissect(x, y, z, w, order, json),
        Command::ScanVanishing { num, den, modulus, progression, bound, json } => {
            run_scan(&num, &den, modulus, &progression, bound, json)
        }
        Command::VerifyTable { which, bound, json } => run_verify_table(which, bound, json),
        Command::CountPartitions { modulus, classes, n, oracle, json } => {
            run_count_partitions(modulus, &classes, n, oracle, json)
        }
        Command::VerifyPartitions { theorem, n_max, json } => {
            run_verify_partitions(&theorem, n_max, json)
        }
        Command::VerifyAll {
            json,
            identity_order,
            cf_order,
            dissect_order,
            scan_bound,
            n_max,
            negative_control,
        } => run_verify_all(
            json,
            identity_order,
            cf_order,
            dissect_order,
            scan_bound,
            n_max,
            negative_control,
        ),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
