//! Command-line laboratory for word maps on powers of finite matrix groups.
//!
//! Every subcommand prints a single JSON run report to stdout and a short
//! human-readable summary to stderr. Reports are deterministic for a fixed
//! `--seed` (the `timing_ms` field is excluded from that contract). Exit
//! code 0 means every verdict passed; domain errors exit 1 with a
//! structured error object on stdout.

use std::fmt;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use wordmap::endomorphism::{
    braid_generator, compose, embed_aut, nielsen_generators, Endomorphism,
};
use wordmap::free_group;
use wordmap::group_backend::{Group, GroupDescriptor, GroupElement};
use wordmap::kernel_lab::{
    faithfulness_search, kernel_witness_solvable, SearchMode, SearchOutcome, DEFAULT_SAMPLES,
    DEFAULT_TUPLE_CAP,
};
use wordmap::quotient_lab::{
    build_orbit_space, categorical_quotient_note, kernel_criterion, power_identity_scan,
};
use wordmap::weyl::{all_factors, classify_semisimple_factors, Factor};
use wordmap::word_map::{
    check_law_a, check_law_b, check_law_c, check_law_e, check_law_f, check_law_g, evaluate,
    Tuple,
};

#[derive(Parser)]
#[command(
    name = "wordmap",
    version,
    about = "Word-map experiments on powers of finite matrix groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word on a tuple of group elements.
    Eval {
        #[arg(long)]
        group: String,
        /// Word over f1..fn, e.g. "f1 f2^-1"; "1" is the identity.
        #[arg(long)]
        word: String,
        /// JSON list of matrices, e.g. "[[[1,0],[0,1]],[[1,1],[0,1]]]".
        #[arg(long)]
        tuple: String,
        /// Free-group rank; defaults to the tuple length.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compose two endomorphisms loaded from files.
    Compose {
        /// Path to the left factor (applied to generators first).
        #[arg(long)]
        sigma: String,
        /// Path to the right factor.
        #[arg(long)]
        tau: String,
    },
    /// Check the structural laws of the induced maps on random instances.
    Props {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances per law.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Build the non-faithfulness witness for a solvable group.
    KernelWitness {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a tuple moved by an endomorphism.
    FaithfulSearch {
        #[arg(long)]
        group: String,
        /// Path to the endomorphism file.
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        budget: u64,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Partition G^n into diagonal-conjugation orbits of a subgroup.
    Orbits {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// "full", "trivial", "gen:<matrix JSON>", or "set:<matrix list JSON>".
        #[arg(long, default_value = "full")]
        subgroup: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Kernel criterion for the descended action on the orbit space.
    KernelCriterion {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "full")]
        subgroup: String,
        /// Path to the endomorphism file.
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Scan for exponents d with g^d = s g s^-1 for all g.
    PowerScan {
        #[arg(long)]
        group: String,
        /// Matrix JSON for s, e.g. "[[0,1],[2,0]]".
        #[arg(long)]
        s: String,
    },
    /// Classify a semisimple factor list by the w0 = -1 test.
    WeylClassify {
        /// Comma-separated irreducible types, e.g. "A2,D5,E6".
        #[arg(long)]
        factors: String,
    },
    /// Tabulate the -1-in-W test over all irreducible types up to a rank.
    WeylTable {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Verify the Artin braid relations in Aut(F_n).
    BraidVerify {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Verify that the rank embedding of Aut(F_n) preserves composition.
    EmbedVerify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of random pairs.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    seed: u64,
    mode: String,
    verdicts: Value,
    timing_ms: u128,
}

/// Outcome of one subcommand, before timing is attached.
struct Run {
    seed: u64,
    mode: String,
    verdicts: Value,
    pass: bool,
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

fn err(msg: impl Into<String>) -> Box<dyn std::error::Error> {
    Box::new(CliError(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let started = Instant::now();
    match run(cli.command) {
        Ok(run) => {
            let report = RunReport {
                command: name.to_string(),
                seed: run.seed,
                mode: run.mode,
                verdicts: run.verdicts,
                timing_ms: started.elapsed().as_millis(),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            eprintln!(
                "{name}: {} ({} ms)",
                if run.pass { "pass" } else { "FAIL" },
                report.timing_ms
            );
            if run.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            let error = json!({ "command": name, "error": e.to_string() });
            println!("{}", serde_json::to_string_pretty(&error).expect("error serializes"));
            eprintln!("{name}: error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Eval { .. } => "eval",
        Command::Compose { .. } => "compose",
        Command::Props { .. } => "props",
        Command::KernelWitness { .. } => "kernel-witness",
        Command::FaithfulSearch { .. } => "faithful-search",
        Command::Orbits { .. } => "orbits",
        Command::KernelCriterion { .. } => "kernel-criterion",
        Command::PowerScan { .. } => "power-scan",
        Command::WeylClassify { .. } => "weyl-classify",
        Command::WeylTable { .. } => "weyl-table",
        Command::BraidVerify { .. } => "braid-verify",
        Command::EmbedVerify { .. } => "embed-verify",
    }
}

fn run(cmd: Command) -> Result<Run, Box<dyn std::error::Error>> {
    match cmd {
        Command::Eval { group, word, tuple, n } => cmd_eval(&group, &word, &tuple, n),
        Command::Compose { sigma, tau } => cmd_compose(&sigma, &tau),
        Command::Props { group, n, seed, budget } => cmd_props(&group, n, seed, budget),
        Command::KernelWitness { group, n, cap, seed } => {
            cmd_kernel_witness(&group, n, resolve_cap(cap), seed)
        }
        Command::FaithfulSearch { group, sigma, budget, cap, seed } => {
            cmd_faithful_search(&group, &sigma, budget, resolve_cap(cap), seed)
        }
        Command::Orbits { group, n, subgroup, cap } => {
            cmd_orbits(&group, n, &subgroup, resolve_cap(cap))
        }
        Command::KernelCriterion { group, n, subgroup, sigma, cap } => {
            cmd_kernel_criterion(&group, n, &subgroup, &sigma, resolve_cap(cap))
        }
        Command::PowerScan { group, s } => cmd_power_scan(&group, &s),
        Command::WeylClassify { factors } => cmd_weyl_classify(&factors),
        Command::WeylTable { max_rank } => cmd_weyl_table(max_rank),
        Command::BraidVerify { n } => cmd_braid_verify(n),
        Command::EmbedVerify { n, budget, seed } => cmd_embed_verify(n, budget, seed),
    }
}

/// Tuple-scan cap: flag beats the WORDMAP_CAP environment variable beats
/// the built-in default.
fn resolve_cap(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("WORDMAP_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_TUPLE_CAP)
}

fn load_group(descriptor: &str) -> Result<Group, Box<dyn std::error::Error>> {
    let descriptor: GroupDescriptor = descriptor.parse()?;
    Ok(Group::new(descriptor)?)
}

fn parse_matrix(group: &Group, text: &str) -> Result<GroupElement, Box<dyn std::error::Error>> {
    let rows: Vec<Vec<u64>> = serde_json::from_str(text)
        .map_err(|e| err(format!("bad matrix JSON: {e}")))?;
    Ok(group.element_from_rows(&rows)?)
}

fn parse_tuple(group: &Group, text: &str) -> Result<Tuple, Box<dyn std::error::Error>> {
    let matrices: Vec<Vec<Vec<u64>>> = serde_json::from_str(text)
        .map_err(|e| err(format!("bad tuple JSON: {e}")))?;
    let entries = matrices
        .iter()
        .map(|rows| group.element_from_rows(rows))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Tuple::new(group, entries)?)
}

/// Load an endomorphism from a file holding either the JSON form or the
/// bracketed textual form `[f1 f2, f1]`.
fn load_endomorphism(path: &str) -> Result<Endomorphism, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| err(format!("cannot read {path}: {e}")))?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        Ok(serde_json::from_str(trimmed).map_err(|e| err(format!("bad endomorphism JSON: {e}")))?)
    } else {
        let rank = trimmed.matches(',').count() + 1;
        Ok(Endomorphism::parse(rank, trimmed)?)
    }
}

/// Subgroup grammar: `full`, `trivial`, `gen:<matrix or matrix list JSON>`
/// (closure is taken), or `set:<matrix list JSON>` (must already be closed).
fn parse_subgroup(
    group: &Group,
    spec: &str,
) -> Result<Vec<GroupElement>, Box<dyn std::error::Error>> {
    match spec {
        "full" => Ok(group.elements().to_vec()),
        "trivial" => Ok(vec![group.identity()]),
        _ => {
            if let Some(body) = spec.strip_prefix("gen:") {
                let generators = parse_matrix_list(group, body)?;
                Ok(group.subgroup_closure(&generators))
            } else if let Some(body) = spec.strip_prefix("set:") {
                parse_matrix_list(group, body)
            } else {
                Err(err(format!(
                    "bad subgroup spec {spec:?}; expected full, trivial, gen:<json>, or set:<json>"
                )))
            }
        }
    }
}

fn parse_matrix_list(
    group: &Group,
    body: &str,
) -> Result<Vec<GroupElement>, Box<dyn std::error::Error>> {
    // accept either one matrix [[..],[..]] or a list of matrices
    if let Ok(list) = serde_json::from_str::<Vec<Vec<Vec<u64>>>>(body) {
        return list
            .iter()
            .map(|rows| Ok(group.element_from_rows(rows)?))
            .collect();
    }
    Ok(vec![parse_matrix(group, body)?])
}

fn cmd_eval(
    group: &str,
    word: &str,
    tuple: &str,
    n: Option<usize>,
) -> Result<Run, Box<dyn std::error::Error>> {
    let group = load_group(group)?;
    let x = parse_tuple(&group, tuple)?;
    let rank = n.unwrap_or(x.len());
    if rank != x.len() {
        return Err(err(format!("rank {rank} does not match tuple length {}", x.len())));
    }
    let w = free_group::parse(rank, word)?;
    let result = evaluate(&group, &w, &x)?;
    let verdicts = json!({
        "word": w.to_string(),
        "result": result.rows(),
        "is_identity": result == group.identity(),
    });
    eprintln!("w(x) = {:?}", result.rows());
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass: true })
}

fn cmd_compose(sigma: &str, tau: &str) -> Result<Run, Box<dyn std::error::Error>> {
    let sigma = load_endomorphism(sigma)?;
    let tau = load_endomorphism(tau)?;
    let composed = compose(&sigma, &tau)?;
    let verdicts = json!({
        "sigma": sigma.to_string(),
        "tau": tau.to_string(),
        "composed": serde_json::to_value(&composed)?,
        "composed_display": composed.to_string(),
    });
    eprintln!("{sigma} . {tau} = {composed}");
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass: true })
}

/// Compose a short random product of the Nielsen generators.
fn random_automorphism<R: Rng>(rank: usize, rng: &mut R) -> Endomorphism {
    let generators = nielsen_generators(rank).expect("rank >= 2");
    let mut sigma = Endomorphism::identity(rank);
    for _ in 0..4 {
        let pick = &generators[rng.gen_range(0..generators.len())];
        sigma = compose(&sigma, pick).expect("equal ranks");
    }
    sigma
}

fn random_tuple<R: Rng>(group: &Group, n: usize, rng: &mut R) -> Tuple {
    Tuple::new(group, (0..n).map(|_| group.random_element(rng)).collect())
        .expect("elements drawn from the group")
}

fn cmd_props(
    group: &str,
    n: usize,
    seed: u64,
    budget: u64,
) -> Result<Run, Box<dyn std::error::Error>> {
    if n < 2 {
        return Err(err("props needs n >= 2 (the generator sets require it)"));
    }
    let group = load_group(group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = group.center();
    let mut failures: std::collections::BTreeMap<&str, u64> = Default::default();
    for law in ["a", "b", "c", "e", "f", "g"] {
        failures.insert(law, 0);
    }
    for _ in 0..budget {
        let sigma = random_automorphism(n, &mut rng);
        let tau = random_automorphism(n, &mut rng);
        let x = random_tuple(&group, n, &mut rng);
        let g = group.random_element(&mut rng);

        if !check_law_a(&group, &sigma, &tau, &x)? {
            *failures.get_mut("a").unwrap() += 1;
        }
        if !check_law_b(&group, &x)? {
            *failures.get_mut("b").unwrap() += 1;
        }
        // cyclic subgroup instance: x drawn from <g>
        let cyclic = group.subgroup_closure(std::slice::from_ref(&g));
        let x_sub = Tuple::new(
            &group,
            (0..n).map(|_| cyclic[rng.gen_range(0..cyclic.len())].clone()).collect(),
        )?;
        if !check_law_c(&group, &cyclic, &sigma, &x_sub)? {
            *failures.get_mut("c").unwrap() += 1;
        }
        // inner automorphism as the coordinate-wise homomorphism
        let gamma = |h: &GroupElement| group.conjugate(&g, h).expect("elements of the group");
        if !check_law_e(&group, &group, gamma, &sigma, &x)? {
            *failures.get_mut("e").unwrap() += 1;
        }
        let z = Tuple::new(
            &group,
            (0..n).map(|_| center[rng.gen_range(0..center.len())].clone()).collect(),
        )?;
        if !check_law_f(&group, &sigma, &x, &z)? {
            *failures.get_mut("f").unwrap() += 1;
        }
        if !check_law_g(&group, &sigma, &g, &x)? {
            *failures.get_mut("g").unwrap() += 1;
        }
    }
    let pass = failures.values().all(|&k| k == 0);
    let verdicts = json!({
        "instances_per_law": budget,
        "failures": failures,
        "all_pass": pass,
    });
    eprintln!(
        "laws a,b,c,e,f,g on {budget} instances: {}",
        if pass { "all hold" } else { "FAILURES" }
    );
    Ok(Run { seed, mode: "sampled".into(), verdicts, pass })
}

fn mode_name(mode: &SearchMode) -> &'static str {
    match mode {
        SearchMode::Exhaustive { .. } => "exhaustive",
        SearchMode::Sampled { .. } => "sampled",
    }
}

fn cmd_kernel_witness(
    group: &str,
    n: usize,
    cap: u64,
    seed: u64,
) -> Result<Run, Box<dyn std::error::Error>> {
    let group = load_group(group)?;
    let (sigma, report) = kernel_witness_solvable(&group, n, cap, seed)?;
    let pass = report.all_fixed && report.tower_vanishes && !report.sigma_is_identity;
    let mode = mode_name(&report.mode).to_string();
    let verdicts = json!({
        "sigma": sigma.to_string(),
        "report": serde_json::to_value(&report)?,
    });
    eprintln!(
        "derived length {}, sigma = {sigma}, acts trivially: {}",
        report.derived_length, report.all_fixed
    );
    Ok(Run { seed, mode, verdicts, pass })
}

fn cmd_faithful_search(
    group: &str,
    sigma: &str,
    budget: u64,
    cap: u64,
    seed: u64,
) -> Result<Run, Box<dyn std::error::Error>> {
    let group = load_group(group)?;
    let sigma = load_endomorphism(sigma)?;
    let outcome = faithfulness_search(&group, &sigma, budget, cap, seed)?;
    let (pass, mode) = match &outcome {
        SearchOutcome::Witness { mode, .. } => (true, mode_name(mode)),
        SearchOutcome::NoneFound { mode } => (false, mode_name(mode)),
    };
    let verdicts = json!({
        "sigma": sigma.to_string(),
        "search": serde_json::to_value(&outcome)?,
    });
    eprintln!(
        "{}",
        if pass { "moved tuple found" } else { "no moved tuple found" }
    );
    Ok(Run { seed, mode: mode.to_string(), verdicts, pass })
}

fn cmd_orbits(
    group: &str,
    n: usize,
    subgroup: &str,
    cap: u64,
) -> Result<Run, Box<dyn std::error::Error>> {
    let group = load_group(group)?;
    let subgroup = parse_subgroup(&group, subgroup)?;
    let space = build_orbit_space(&group, n, &subgroup, cap)?;
    let mut size_histogram: std::collections::BTreeMap<usize, usize> = Default::default();
    for size in space.orbit_sizes() {
        *size_histogram.entry(size).or_insert(0) += 1;
    }
    let verdicts = json!({
        "group_order": group.order(),
        "subgroup_order": subgroup.len(),
        "tuples": space.orbit_sizes().iter().sum::<usize>(),
        "orbit_count": space.orbit_count(),
        "orbit_size_histogram": size_histogram,
    });
    eprintln!(
        "{} tuples fall into {} orbits under |S| = {}",
        space.orbit_sizes().iter().sum::<usize>(),
        space.orbit_count(),
        subgroup.len()
    );
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass: true })
}

fn cmd_kernel_criterion(
    group: &str,
    n: usize,
    subgroup: &str,
    sigma: &str,
    cap: u64,
) -> Result<Run, Box<dyn std::error::Error>> {
    let group = load_group(group)?;
    let subgroup = parse_subgroup(&group, subgroup)?;
    let sigma = load_endomorphism(sigma)?;
    let verdict = kernel_criterion(&group, &sigma, n, &subgroup, cap)?;
    let note = categorical_quotient_note(&group, &sigma, n, &subgroup, cap)?;
    let pass = note.verdicts_agree;
    let verdicts = json!({
        "sigma": sigma.to_string(),
        "verdict": serde_json::to_value(&verdict)?,
        "note": serde_json::to_value(&note)?,
    });
    eprintln!(
        "in_kernel = {}, global witness: {}",
        verdict.in_kernel,
        verdict.witness_s.is_some()
    );
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass })
}

fn cmd_power_scan(group: &str, s: &str) -> Result<Run, Box<dyn std::error::Error>> {
    let group = load_group(group)?;
    let s = parse_matrix(&group, s)?;
    let found = power_identity_scan(&group, &s)?;
    let verdicts = json!({
        "s": s.rows(),
        "s_central": group.is_central(&s),
        "s_order": group.element_order(&s),
        "exponent": group.exponent(),
        "found_d": found,
    });
    eprintln!("exponents d with g^d = s g s^-1 for all g: {found:?}");
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass: true })
}

fn parse_factors(spec: &str) -> Result<Vec<Factor>, Box<dyn std::error::Error>> {
    spec.split(',')
        .map(|part| part.trim().parse::<Factor>().map_err(|e| err(e.to_string())))
        .collect()
}

fn cmd_weyl_classify(factors: &str) -> Result<Run, Box<dyn std::error::Error>> {
    let factors = parse_factors(factors)?;
    let classification = classify_semisimple_factors(&factors);
    eprintln!(
        "n = 1 quotient action embeds: {} (witness: {:?})",
        classification.embedding_for_n1, classification.witnessing_factor
    );
    let verdicts = serde_json::to_value(&classification)?;
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass: true })
}

fn cmd_weyl_table(max_rank: usize) -> Result<Run, Box<dyn std::error::Error>> {
    let factors = all_factors(max_rank);
    if factors.is_empty() {
        return Err(err("no irreducible types within the rank bound"));
    }
    let classification = classify_semisimple_factors(&factors);
    for row in &classification.rows {
        eprintln!(
            "{:<4} -1 in W: {}",
            row.factor,
            if row.minus_one { "yes" } else { "no " }
        );
    }
    let failing: Vec<&str> = classification
        .rows
        .iter()
        .filter(|r| !r.minus_one)
        .map(|r| r.factor.as_str())
        .collect();
    let verdicts = json!({
        "max_rank": max_rank,
        "rows": serde_json::to_value(&classification.rows)?,
        "without_minus_one": failing,
    });
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass: true })
}

fn cmd_braid_verify(n: usize) -> Result<Run, Box<dyn std::error::Error>> {
    if n < 3 {
        return Err(err("braid-verify needs n >= 3"));
    }
    let gens: Vec<Endomorphism> = (1..n)
        .map(|i| braid_generator(n, i))
        .collect::<Result<_, _>>()?;
    let mut adjacent_ok = true;
    for i in 0..gens.len().saturating_sub(1) {
        let lhs = compose(&compose(&gens[i], &gens[i + 1])?, &gens[i])?;
        let rhs = compose(&compose(&gens[i + 1], &gens[i])?, &gens[i + 1])?;
        if lhs.images() != rhs.images() {
            adjacent_ok = false;
        }
    }
    let mut distant_ok = true;
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            let lhs = compose(&gens[i], &gens[j])?;
            let rhs = compose(&gens[j], &gens[i])?;
            if lhs.images() != rhs.images() {
                distant_ok = false;
            }
        }
    }
    let pass = adjacent_ok && distant_ok;
    let verdicts = json!({
        "rank": n,
        "generators": gens.len(),
        "adjacent_relations_hold": adjacent_ok,
        "distant_relations_hold": distant_ok,
    });
    eprintln!(
        "Artin relations for {} generators in rank {n}: {}",
        gens.len(),
        if pass { "hold" } else { "FAIL" }
    );
    Ok(Run { seed: 0, mode: "exhaustive".into(), verdicts, pass })
}

fn cmd_embed_verify(n: usize, budget: u64, seed: u64) -> Result<Run, Box<dyn std::error::Error>> {
    if n < 2 {
        return Err(err("embed-verify needs n >= 2"));
    }
    let target = n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    for _ in 0..budget {
        let a = random_automorphism(n, &mut rng);
        let b = random_automorphism(n, &mut rng);
        let lhs = embed_aut(&compose(&a, &b)?, target)?;
        let rhs = compose(&embed_aut(&a, target)?, &embed_aut(&b, target)?)?;
        if lhs.images() != rhs.images() {
            failures += 1;
        }
    }
    let pass = failures == 0;
    let verdicts = json!({
        "source_rank": n,
        "target_rank": target,
        "pairs": budget,
        "failures": failures,
    });
    eprintln!(
        "embedding rank {n} -> {target} preserves composition on {budget} pairs: {}",
        if pass { "yes" } else { "NO" }
    );
    Ok(Run { seed, mode: "sampled".into(), verdicts, pass })
}
