use std::path::Path;

use packmech_core::corpus::{generate, CorpusKind, CorpusSpec};
use packmech_core::mechanism::{confirm_thresholds, run_mechanism, PaymentConfig};
use packmech_core::rational::{format_rational, int, parse_rational, rat};
use packmech_core::verify::{
    brute_opt_knapsack, brute_opt_multiknapsack, brute_opt_online, check_bitonic,
    check_loser_independent, check_monotone, check_stability, max_greedy_counterexample,
    ratio_report, PerturbationGrid, Property, PropertyReport, RatioBound, Target, Tally,
};
use packmech_core::{simulate_online, Allocator, Bid, Instance, Item, OracleKind, Rational};
use serde::Serialize;

use crate::format::{self, bins_of, FormatError, WitnessFile};
use crate::report::{agent_set, Report};
use crate::{Cli, Command, KindArg, Level, PropertyArg, TargetArgs, VerifyArgs, DEFAULT_SEED};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Disallowed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Disallowed(_) => 3,
        }
    }
}

impl From<packmech_core::Error> for CliError {
    fn from(e: packmech_core::Error) -> Self {
        match e {
            packmech_core::Error::DisallowedAllocator { .. } => CliError::Disallowed(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Report text plus the exit code it maps to (0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finished {
    pub stdout: String,
    pub code: u8,
}

impl Finished {
    fn ok(report: &Report) -> Self {
        Finished {
            stdout: report.to_string(),
            code: 0,
        }
    }

    fn verdict(report: &Report, passed: bool) -> Self {
        Finished {
            stdout: report.to_string(),
            code: if passed { 0 } else { 1 },
        }
    }
}

/// Runs one command. `env_seed` is the value of `GM_SEED`, if set.
pub fn execute(cli: &Cli, env_seed: Option<&str>) -> Result<Finished, CliError> {
    match &cli.command {
        Command::Solve { file, target } => solve(file, target),
        Command::Pay {
            file,
            target,
            delta,
            breakpoint,
        } => pay(file, target, delta, *breakpoint),
        Command::Verify(args) => verify(args, env_seed),
        Command::Simulate {
            file,
            oracle,
            trace,
        } => simulate(file, oracle, trace.as_deref()),
        Command::Counterexample {
            eps,
            instance,
            witness,
        } => counterexample(eps, instance, witness),
    }
}

fn parse_exact(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Input(format!("--{flag}: {e}")))
}

fn compatible(inst: &Instance, allocator: &Allocator) -> Result<(), CliError> {
    let online = matches!(allocator, Allocator::Online(_));
    if inst.online && !online {
        return Err(CliError::Input(format!(
            "online instance needs --allocator online, got {}",
            allocator.name()
        )));
    }
    if !inst.online && online {
        return Err(CliError::Input("--allocator online needs an online instance".into()));
    }
    Ok(())
}

fn assignment_lines(report: &mut Report, inst: &Instance, bins: &[Vec<usize>]) {
    for (j, agents) in bins.iter().enumerate() {
        let items: Vec<String> = agents
            .iter()
            .map(|&a| {
                let b = &inst.bids[a];
                format!(
                    "({},{})",
                    format_rational(b.size_in(j)),
                    format_rational(&b.value)
                )
            })
            .collect();
        let key = match inst.bins[j].slot {
            Some(s) => format!("bin {j} (slot {s})"),
            None => format!("bin {j}"),
        };
        report.field(key, format!("{} {}", agent_set(agents), items.join(" ")).trim_end().to_string());
    }
}

/// `value V size S [sizes (..)] [window A..D]`.
fn bid_text(b: &Bid) -> String {
    let mut out = format!("value {} size {}", format_rational(&b.value), format_rational(&b.size));
    if let Some(v) = &b.size_vector {
        let parts: Vec<String> = v.iter().map(format_rational).collect();
        out.push_str(&format!(" sizes ({})", parts.join(",")));
    }
    if let (Some(a), Some(d)) = (b.arrival, b.departure) {
        out.push_str(&format!(" window {a}..{d}"));
    }
    out
}

fn solve(file: &Path, target: &TargetArgs) -> Result<Finished, CliError> {
    let inst = format::read_instance(file)?;
    let allocator = target.allocator(inst.online);
    compatible(&inst, &allocator)?;
    let packing = allocator.allocate_counted(&inst)?;
    let mut r = Report::new();
    r.field("allocator", &allocator);
    r.field("agents", inst.num_agents()).field("bins", inst.num_bins());
    assignment_lines(&mut r, &inst, &bins_of(&packing.assignment));
    r.rational("value", &packing.assignment.value(&inst));
    r.field("oracle_calls", packing.oracle_calls);
    Ok(Finished::ok(&r))
}

fn pay(file: &Path, target: &TargetArgs, delta: &str, breakpoint: bool) -> Result<Finished, CliError> {
    let inst = format::read_instance(file)?;
    let allocator = target.allocator(inst.online);
    compatible(&inst, &allocator)?;
    let delta = parse_exact("delta", delta)?;
    let cfg = if breakpoint {
        PaymentConfig::breakpoint()
    } else {
        PaymentConfig::bisection(delta.clone())?
    };
    let outcome = run_mechanism(&inst, &allocator, &cfg)?;
    let checks = confirm_thresholds(&inst, &allocator, &outcome, &delta)?;
    let mut r = Report::new();
    r.field("allocator", &allocator);
    r.field("payment_mode", if breakpoint { "breakpoint" } else { "bisection" });
    r.field("delta", format_rational(&delta));
    assignment_lines(&mut r, &inst, &bins_of(&outcome.assignment));
    r.field("winners", agent_set(&outcome.assignment.selected()));
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    for check in &checks {
        let a = check.agent;
        r.rational(format!("agent {a} payment"), &check.payment);
        r.field(format!("agent {a} wins_at_p_plus_delta"), yes_no(check.wins_above));
        r.field(
            format!("agent {a} loses_at_p_minus_delta"),
            check.loses_below.map_or("n/a (payment 0)", yes_no),
        );
    }
    let revenue = outcome.payments.iter().fold(int(0), |acc, p| acc + p);
    r.rational("revenue", &revenue);
    let confirmed = checks.iter().all(|c| c.confirmed());
    r.field("thresholds", if confirmed { "confirmed" } else { "NOT CONFIRMED" });
    Ok(Finished::verdict(&r, confirmed))
}

fn corpus_kind(k: KindArg) -> CorpusKind {
    match k {
        KindArg::Knapsack => CorpusKind::Knapsack,
        KindArg::Multi => CorpusKind::MultiKnapsack,
        KindArg::Identical => CorpusKind::IdenticalBins,
        KindArg::Gap => CorpusKind::Gap,
        KindArg::OnlineUnit => CorpusKind::OnlineUnit,
        KindArg::OnlineMulti => CorpusKind::OnlineMulti,
    }
}

fn parse_seed(text: &str, what: &str) -> Result<u64, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{what}: expected an unsigned integer, got {text:?}")))
}

/// `(seed, count)` from `SEED,N` or `N`.
pub fn parse_corpus(text: &str, env_seed: Option<&str>) -> Result<(u64, usize), CliError> {
    let (seed, count) = match text.split_once(',') {
        Some((s, n)) => (parse_seed(s, "--corpus seed")?, n),
        None => match env_seed {
            Some(s) => (parse_seed(s, "GM_SEED")?, text),
            None => (DEFAULT_SEED, text),
        },
    };
    let count = count
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("--corpus count: expected an integer, got {count:?}")))?;
    Ok((seed, count))
}

/// Ascending sweep for one agent: zero plus multiples of its value.
fn bitonic_grid(value: &Rational) -> Vec<Rational> {
    let base = if *value > int(0) { value.clone() } else { int(1) };
    let mut grid: Vec<Rational> = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2), (2, 1), (4, 1)]
        .iter()
        .map(|&(p, q)| &base * rat(p, q))
        .collect();
    grid.dedup();
    grid
}

fn check_one(
    property: PropertyArg,
    target: &Target,
    inst: &Instance,
) -> Result<PropertyReport, packmech_core::Error> {
    let grid = PerturbationGrid::default();
    match property {
        PropertyArg::Monotone => check_monotone(target, inst, &grid),
        PropertyArg::Loser => check_loser_independent(target, inst, &grid),
        PropertyArg::Stable => check_stability(target, inst, &grid),
        PropertyArg::Bitonic => {
            let mut total = 0;
            for agent in 0..inst.num_agents() {
                let r = check_bitonic(target, inst, agent, &bitonic_grid(&inst.bids[agent].value))?;
                total += r.trials;
                if !r.passed() {
                    return Ok(PropertyReport { trials: total, ..r });
                }
            }
            Ok(PropertyReport {
                property: Property::Bitonic,
                verdict: packmech_core::verify::Verdict::Pass,
                witness: None,
                trials: total,
            })
        }
        PropertyArg::Ratio => unreachable!("ratio is handled separately"),
    }
}

fn property_of(p: PropertyArg) -> Property {
    match p {
        PropertyArg::Monotone => Property::Monotone,
        PropertyArg::Loser => Property::LoserIndependent,
        PropertyArg::Bitonic => Property::Bitonic,
        PropertyArg::Stable => Property::Stable,
        PropertyArg::Ratio => unreachable!("ratio is not a perturbation property"),
    }
}

/// Exhaustive optimum, picking the cheapest applicable search.
pub fn brute_opt(inst: &Instance) -> Result<Rational, packmech_core::Error> {
    if inst.online {
        return brute_opt_online(inst);
    }
    if inst.num_bins() == 1 && inst.bids.iter().all(|b| b.size_vector.is_none()) {
        let items: Vec<Item> = inst.bids.iter().map(|b| Item::from_bid(b, 0)).collect();
        return Ok(brute_opt_knapsack(&items, &inst.bins[0].capacity)?.0);
    }
    Ok(brute_opt_multiknapsack(inst)?.0)
}

fn verify(args: &VerifyArgs, env_seed: Option<&str>) -> Result<Finished, CliError> {
    let (instances, source) = match (&args.file, &args.corpus) {
        (Some(file), _) => (vec![format::read_instance(file)?], file.display().to_string()),
        (None, Some(spec)) => {
            let (seed, count) = parse_corpus(spec, env_seed)?;
            let kind = corpus_kind(args.kind);
            let corpus = generate(&CorpusSpec::new(kind, seed, count));
            (corpus, format!("corpus kind={kind:?} seed={seed} n={count}"))
        }
        (None, None) => return Err(CliError::Input("pass an instance file or --corpus".into())),
    };
    let from_corpus = args.file.is_none();
    let online = instances.first().is_some_and(|i| i.online);
    let allocator = args.target.allocator(online);
    for inst in &instances {
        compatible(inst, &allocator)?;
    }
    if args.property == PropertyArg::Ratio {
        return verify_ratio(args, &instances, &allocator, &source, from_corpus);
    }
    let target = match args.level {
        Level::Oracle => Target::Oracle(args.target.oracle.clone()),
        Level::Allocator => Target::Allocator(allocator),
    };
    let property = property_of(args.property);
    let mut tally = Tally::new(property);
    for (index, inst) in instances.iter().enumerate() {
        tally.add(index, check_one(args.property, &target, inst)?);
    }
    let mut r = Report::new();
    r.field("property", property).field("target", &target).field("source", &source);
    r.field("instances", tally.instances).field("trials", tally.trials);
    r.field("failures", tally.failures);
    r.field("verdict", if tally.passed() { "PASS" } else { "FAIL" });
    if let Some((index, w)) = &tally.first_failure {
        let inst = &instances[*index];
        let file = WitnessFile::new(property, &target, from_corpus.then_some(*index), inst, w);
        format::write_text(&args.witness, &file.to_text())?;
        r.field("witness_instance", index);
        r.field("witness_agent", w.agent);
        r.field("witness_from", bid_text(&w.old_bid));
        r.field("witness_to", bid_text(&w.new_bid));
        r.field("witness_before", format!("{:?}", bins_of(&w.old_output)));
        r.field("witness_after", format!("{:?}", bins_of(&w.new_output)));
        r.field("witness_file", args.witness.display());
    }
    r.field(
        "summary",
        format!(
            "{} {} on {} of {} instances over {} trials",
            target,
            if tally.passed() { "holds" } else { "fails" },
            if tally.passed() { tally.instances } else { tally.failures },
            tally.instances,
            tally.trials
        ),
    );
    Ok(Finished::verdict(&r, tally.passed()))
}

fn verify_ratio(
    args: &VerifyArgs,
    instances: &[Instance],
    allocator: &Allocator,
    source: &str,
    from_corpus: bool,
) -> Result<Finished, CliError> {
    let factor = match &args.bound {
        Some(text) => parse_exact("bound", text)?,
        None => allocator.composition_bound().ok_or_else(|| {
            CliError::Input(format!("{allocator} has no known ratio; pass --bound"))
        })?,
    };
    let bound = RatioBound::exact(factor.clone());
    let report = ratio_report(instances, allocator, brute_opt, &bound)?;
    let mut r = Report::new();
    r.field("property", "ratio").field("target", allocator).field("source", source);
    r.field("instances", report.instances);
    r.rational("bound", &factor);
    match &report.worst_ratio {
        Some(w) => r.rational("worst_ratio", w),
        None => r.field("worst_ratio", "unbounded (ALG = 0 < OPT)"),
    };
    if let Some(i) = report.worst_index {
        r.field("worst_instance", i);
    }
    r.field("violations", report.violations.len());
    r.field("verdict", if report.passed() { "PASS" } else { "FAIL" });
    if let Some(&index) = report.violations.first() {
        format::write_text(&args.witness, &format::serialize_instance(&instances[index]))?;
        r.field("witness_instance", if from_corpus { index } else { 0 });
        r.field("witness_file", args.witness.display());
    }
    r.field(
        "summary",
        format!(
            "ALG >= {} * OPT {} on {} instances",
            format_rational(&factor),
            if report.passed() { "holds" } else { "fails" },
            report.instances
        ),
    );
    Ok(Finished::verdict(&r, report.passed()))
}

#[derive(Serialize)]
struct TraceEntry {
    bin: usize,
    slot: u32,
    present: Vec<usize>,
    chosen: Vec<usize>,
}

fn simulate(file: &Path, oracle: &OracleKind, trace: Option<&Path>) -> Result<Finished, CliError> {
    let inst = format::read_instance(file)?;
    if !inst.online {
        return Err(CliError::Input("simulate needs an online instance (\"online\": true)".into()));
    }
    let run = simulate_online(&inst, oracle)?;
    let mut r = Report::new();
    r.field("oracle", oracle);
    for e in &run.trace {
        r.field(
            format!("slot {}", e.slot),
            format!("present {} chosen {}", agent_set(&e.present), agent_set(&e.chosen)),
        );
    }
    let alg = run.assignment.value(&inst);
    r.rational("alg", &alg);
    match brute_opt_online(&inst) {
        Ok(opt) => {
            r.rational("opt", &opt);
            if alg > int(0) {
                r.rational("ratio", &(&opt / &alg));
            } else if opt == int(0) {
                r.rational("ratio", &int(1));
            } else {
                r.field("ratio", "unbounded (ALG = 0 < OPT)");
            }
        }
        Err(packmech_core::Error::BoundExceeded { .. }) => {
            r.field("opt", "skipped (instance exceeds exhaustive-search limits)");
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(path) = trace {
        let entries: Vec<TraceEntry> = run
            .trace
            .iter()
            .map(|e| TraceEntry {
                bin: e.bin,
                slot: e.slot,
                present: e.present.iter().copied().collect(),
                chosen: e.chosen.iter().copied().collect(),
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&entries).expect("in-memory serialization");
        text.push('\n');
        format::write_text(path, &text)?;
        r.field("trace_file", path.display());
    }
    Ok(Finished::ok(&r))
}

fn counterexample(eps: &str, instance: &Path, witness: &Path) -> Result<Finished, CliError> {
    let eps = parse_exact("eps", eps)?;
    let (inst, report) = max_greedy_counterexample(&eps)?;
    let target = Target::Allocator(Allocator::Iterative(OracleKind::MaxGreedy));
    format::write_text(instance, &format::serialize_instance(&inst))?;
    let mut r = Report::new();
    r.field("eps", format_rational(&eps));
    r.field("target", &target).field("property", report.property);
    r.field("instance_file", instance.display());
    let passed = report.passed();
    if let Some(w) = &report.witness {
        let raised = inst.with_bid(w.new_bid.clone());
        r.field("raised_agent", w.agent);
        r.field("raise", format!("{} -> {}", bid_text(&w.old_bid), bid_text(&w.new_bid)));
        let mut before = Report::new();
        assignment_lines(&mut before, &inst, &bins_of(&w.old_output));
        for line in before.to_string().lines() {
            r.field("before", line);
        }
        r.rational("before_value", &w.old_output.value(&inst));
        let mut after = Report::new();
        assignment_lines(&mut after, &raised, &bins_of(&w.new_output));
        for line in after.to_string().lines() {
            r.field("after", line);
        }
        r.rational("after_value", &w.new_output.value(&raised));
        r.field("raised_agent_selected_after", w.new_output.contains(w.agent));
        let file = WitnessFile::new(report.property, &target, None, &inst, w);
        format::write_text(witness, &file.to_text())?;
        r.field("witness_file", witness.display());
    }
    r.field("verdict", if passed { "PASS" } else { "FAIL" });
    Ok(Finished::verdict(&r, passed))
}
