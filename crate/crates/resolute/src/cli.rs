//! Command-line front end: input parsing, dispatch, and report
//! rendering. The binary in `src/main.rs` is a thin wrapper over
//! [`run_args`], so the exit-code contract is testable in-process.
//!
//! Exit codes: 0 on success (including a negative gate verdict), 2 when a
//! requested refinement cleanly does not exist, 1 on input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::perm::{parse_cycles, GROUP_CAP};
use crate::profile::{
    is_regular_with_table, orbit_decomposition_capped, GroupElement, Profile, SymmetryGroup,
    PROFILE_SPACE_CAP,
};
use crate::refine::{
    build_consistent_kscc_refinement, build_consistent_spc_refinement,
    build_symmetric_refinement, count_consistent_kscc_refinements,
    count_consistent_spc_refinements, count_symmetric_refinements, existence_gate, uk_correspondence,
    ChoicePolicy, GateMode, GateVerdict, RefinementCount, ResoluteFunction,
};
use crate::relation::{parse_relation, Relation, Reversal};
use crate::rules::{
    check_consistent_kscc, check_consistent_spc, check_symmetric, evaluate_all, induce_kscc,
    parse_custom_table, KsccValue, NamedGroup, RuleId, SpcValue,
};

#[derive(Parser, Debug)]
#[command(name = "resolute", version, about = "Symmetry-respecting tie-breaking for voting correspondences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Worker threads for the parallel scans; output is identical for any
    /// value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Print per-phase wall-clock timings to stderr.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Dims {
    /// Number of voters.
    #[arg(long = "h")]
    pub h: usize,
    /// Number of alternatives.
    #[arg(long = "n")]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct Caps {
    /// Cap on explicit group closures.
    #[arg(long, default_value_t = GROUP_CAP)]
    pub group_cap: usize,
    /// Cap on the profile-space size (n!)^h.
    #[arg(long, default_value_t = PROFILE_SPACE_CAP)]
    pub space_cap: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide refinement existence from power relations R (voters) and Q
    /// (alternatives).
    Gate {
        #[command(flatten)]
        dims: Dims,
        /// Relation on voters: total | president | `file:<path>`.
        #[arg(long = "R")]
        r: String,
        /// Relation on alternatives: total | president | `file:<path>`.
        #[arg(long = "Q")]
        q: String,
        /// sym_id | sym_reversal | cons_spc_reversal | cons_kscc_id |
        /// cons_kscc_reversal.
        #[arg(long)]
        mode: String,
        /// Committee size, for the committee modes.
        #[arg(long = "k")]
        k: Option<usize>,
    },
    /// Summarize the orbit decomposition of the profile space under a
    /// group.
    Orbits {
        #[command(flatten)]
        dims: Dims,
        /// Group: preset name(s), `file:<path>`, or comma joins.
        #[arg(long = "U")]
        u: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check a rule for symmetry or consistency with respect to a group.
    Check {
        #[command(flatten)]
        dims: Dims,
        #[arg(long = "U")]
        u: String,
        /// borda | copeland | minimax | kemeny | `custom:<file>` | uk.
        #[arg(long)]
        rule: String,
        /// Committee size: check the induced k-winner correspondence.
        #[arg(long = "k")]
        k: Option<usize>,
        /// symmetric | consistent.
        #[arg(long)]
        property: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Count the resolute refinements with the requested symmetry.
    Count {
        #[command(flatten)]
        dims: Dims,
        #[arg(long = "U")]
        u: String,
        #[arg(long)]
        rule: String,
        #[arg(long = "k")]
        k: Option<usize>,
        /// symmetric | consistent (committee rules are always
        /// consistent-mode).
        #[arg(long, default_value = "consistent")]
        refine: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Build one resolute refinement and count them all.
    Build {
        #[command(flatten)]
        dims: Dims,
        #[arg(long = "U")]
        u: String,
        #[arg(long)]
        rule: String,
        #[arg(long = "k")]
        k: Option<usize>,
        #[arg(long, default_value = "consistent")]
        refine: String,
        /// lex-min | lex-max | seeded.
        #[arg(long, default_value = "lex-min")]
        policy: String,
        /// Seed for the seeded policy; recorded in the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the full refinement table in the report even when the
        /// profile space is large.
        #[arg(long)]
        emit_table: bool,
        /// Also write the table as TSV to this path.
        #[arg(long)]
        table_tsv: Option<String>,
        #[command(flatten)]
        caps: Caps,
    },
}

/// Everything a run produces; stdout is byte-identical across thread
/// counts, timing lines go to stderr.
#[derive(Debug)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses argv (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                RunOutput { exit_code: 0, stdout: rendered, stderr: String::new() }
            } else {
                RunOutput { exit_code: 1, stdout: String::new(), stderr: rendered }
            };
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> RunOutput {
    let threads = cli.threads;
    let exec = || match dispatch(&cli) {
        Ok((report, timings, code)) => {
            let stdout = render(&report, cli.format);
            let stderr = if cli.timings { timings } else { String::new() };
            RunOutput { exit_code: code, stdout, stderr }
        }
        Err(e) => {
            let hint = match &e {
                Error::ProfileSpaceTooLarge { .. } => " (raise --space-cap)",
                Error::GroupTooLarge { .. } => " (raise --group-cap)",
                _ => "",
            };
            RunOutput {
                exit_code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}{hint}\n"),
            }
        }
    };
    match threads {
        None => exec(),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => RunOutput {
                exit_code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        },
    }
}

fn render(report: &serde_json::Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut out = String::new();
            render_text(report, "", &mut out);
            out
        }
    }
}

fn render_text(v: &serde_json::Value, prefix: &str, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                if k == "schema" {
                    continue;
                }
                match v {
                    serde_json::Value::Object(_) => {
                        let nested = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        render_text(v, &nested, out);
                    }
                    serde_json::Value::Array(items)
                        if items.iter().any(|i| i.is_object() || i.is_array()) =>
                    {
                        let nested = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        for (i, item) in items.iter().enumerate() {
                            render_text(item, &format!("{nested}[{i}]"), out);
                        }
                    }
                    other => {
                        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        out.push_str(&format!("{key}: {}\n", render_scalar(other)));
                    }
                }
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", render_scalar(other))),
    }
}

fn render_scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(render_scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Parses `total`, `president`, or `file:<path>` into a relation of the
/// given degree.
pub fn parse_relation_spec(degree: usize, spec: &str) -> Result<Relation> {
    match spec {
        "total" => Ok(Relation::total(degree)),
        "president" => Ok(crate::refine::president_preset(degree)?.0),
        other => {
            let path = other.strip_prefix("file:").unwrap_or(other);
            let text = std::fs::read_to_string(path)?;
            let r = parse_relation(&text)?;
            if r.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: r.degree() });
            }
            Ok(r)
        }
    }
}

/// Parses a group file: one generator per line,
/// `phi:<cycles> psi:<cycles> rho:id|rho0`.
pub fn parse_group_file(h: usize, n: usize, text: &str) -> Result<SymmetryGroup> {
    parse_group_file_capped(h, n, text, GROUP_CAP)
}

pub fn parse_group_file_capped(
    h: usize,
    n: usize,
    text: &str,
    cap: usize,
) -> Result<SymmetryGroup> {
    let mut gens = Vec::new();
    for (ln0, line) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        // cycles contain spaces, so split on the labelled prefixes
        let phi_at = line.find("phi:").ok_or(Error::Parse { line: ln, msg: "missing phi:".into() })?;
        let psi_at = line.find("psi:").ok_or(Error::Parse { line: ln, msg: "missing psi:".into() })?;
        let rho_at = line.find("rho:").ok_or(Error::Parse { line: ln, msg: "missing rho:".into() })?;
        if !(phi_at < psi_at && psi_at < rho_at) {
            return Err(Error::Parse { line: ln, msg: "expected phi: psi: rho: in order".into() });
        }
        let phi = parse_cycles(h, line[phi_at + 4..psi_at].trim()).map_err(|e| at_line(e, ln))?;
        let psi = parse_cycles(n, line[psi_at + 4..rho_at].trim()).map_err(|e| at_line(e, ln))?;
        let rho = match line[rho_at + 4..].trim() {
            "id" => Reversal::Id,
            "rho0" => Reversal::Rev,
            other => {
                return Err(Error::Parse { line: ln, msg: format!("bad rho {other:?}") });
            }
        };
        gens.push(GroupElement { phi, psi, rho });
    }
    SymmetryGroup::generate(h, n, &gens, cap)
}

fn at_line(e: Error, ln: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line: ln, msg },
        other => other,
    }
}

/// Parses a group spec: preset names (`anonymity`, `neutrality`,
/// `reversal`, `full`), `R_anon:<relation file>`, `Q_neut:<relation
/// file>`, `file:<group file>`, joined with commas.
pub fn parse_group_spec(h: usize, n: usize, spec: &str, cap: usize) -> Result<SymmetryGroup> {
    let mut acc = SymmetryGroup::trivial(h, n);
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let g = if let Some(path) = part.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)?;
            parse_group_file_capped(h, n, &text, cap)?
        } else if let Some(path) = part.strip_prefix("R_anon:") {
            let text = std::fs::read_to_string(path)?;
            let r = parse_relation(&text)?;
            crate::rules::named_group(h, n, &NamedGroup::RAnon(&r))?
        } else if let Some(path) = part.strip_prefix("Q_neut:") {
            let text = std::fs::read_to_string(path)?;
            let q = parse_relation(&text)?;
            crate::rules::named_group(h, n, &NamedGroup::QNeut(&q))?
        } else {
            let name = match part {
                "anonymity" => NamedGroup::Anonymity,
                "neutrality" => NamedGroup::Neutrality,
                "reversal" => NamedGroup::Reversal,
                "full" => NamedGroup::FullG,
                other => {
                    return Err(Error::Parse { line: 0, msg: format!("unknown group spec {other:?}") })
                }
            };
            crate::rules::named_group(h, n, &name)?
        };
        acc = acc.join(&g, cap)?;
    }
    Ok(acc)
}

fn parse_mode(mode: &str) -> Result<GateMode> {
    Ok(match mode {
        "sym_id" => GateMode::SymId,
        "sym_reversal" => GateMode::SymReversal,
        "cons_spc_reversal" => GateMode::ConsSpcReversal,
        "cons_kscc_id" => GateMode::ConsKsccId,
        "cons_kscc_reversal" => GateMode::ConsKsccReversal,
        other => return Err(Error::Parse { line: 0, msg: format!("unknown mode {other:?}") }),
    })
}

fn parse_policy(policy: &str, seed: u64) -> Result<ChoicePolicy> {
    Ok(match policy {
        "lex-min" => ChoicePolicy::LexMin,
        "lex-max" => ChoicePolicy::LexMax,
        "seeded" => ChoicePolicy::Seeded(seed),
        other => return Err(Error::Parse { line: 0, msg: format!("unknown policy {other:?}") }),
    })
}

enum RuleTable {
    Spc(SpcValue),
    Kscc(KsccValue),
}

/// Resolves `--rule`/`--k` into a tabulated correspondence.
fn resolve_rule(
    h: usize,
    n: usize,
    rule: &str,
    k: Option<usize>,
    group: &SymmetryGroup,
) -> Result<(RuleTable, String)> {
    if rule == "uk" {
        let k = k.ok_or(Error::InvalidK { k: 0, n })?;
        return Ok((RuleTable::Kscc(uk_correspondence(group, k)?), "uk".into()));
    }
    let id = match rule {
        "borda" => RuleId::Borda,
        "copeland" => RuleId::Copeland,
        "minimax" => RuleId::Minimax,
        "kemeny" => RuleId::Kemeny,
        other => {
            let path = other
                .strip_prefix("custom:")
                .ok_or(Error::Parse { line: 0, msg: format!("unknown rule {other:?}") })?;
            let text = std::fs::read_to_string(path)?;
            let table = parse_custom_table(&text, h, n)?;
            RuleId::Custom(std::sync::Arc::new(table))
        }
    };
    let name = id.name().to_string();
    let spc = evaluate_all(&id, h, n)?;
    Ok(match k {
        None => (RuleTable::Spc(spc), name),
        Some(k) => (RuleTable::Kscc(induce_kscc(&spc, k)?), name),
    })
}

fn check_dims(dims: &Dims) -> Result<()> {
    if dims.h < 2 {
        return Err(Error::Parse { line: 0, msg: format!("need at least 2 voters, got {}", dims.h) });
    }
    if dims.n < 2 {
        return Err(Error::Parse {
            line: 0,
            msg: format!("need at least 2 alternatives, got {}", dims.n),
        });
    }
    Ok(())
}

fn check_space(h: usize, n: usize, cap: u64) -> Result<()> {
    let size = Profile::space_size(h, n);
    if size > cap as u128 {
        return Err(Error::ProfileSpaceTooLarge { size, cap });
    }
    Ok(())
}

fn gate_json(v: &GateVerdict) -> serde_json::Value {
    serde_json::json!({
        "mode": v.mode.name(),
        "verdict": v.verdict.to_string(),
        "gamma_aut_r": v.gamma_aut_r,
        "aut_q_order": v.aut_q_order,
        "gcd_id": v.gcd_id,
        "lcm_rev": v.lcm_rev,
        "gcd_rev": v.gcd_rev,
        "conditions": v.conditions,
        "reason": v.reason,
    })
}

fn count_json(c: &RefinementCount) -> serde_json::Value {
    serde_json::json!({
        "value": c.value().to_string(),
        "factors": c.factors(),
    })
}

type Dispatched = (serde_json::Value, String, i32);

fn dispatch(cli: &Cli) -> Result<Dispatched> {
    let dims = match &cli.command {
        Command::Gate { dims, .. }
        | Command::Orbits { dims, .. }
        | Command::Check { dims, .. }
        | Command::Count { dims, .. }
        | Command::Build { dims, .. } => dims,
    };
    check_dims(dims)?;
    match &cli.command {
        Command::Gate { dims, r, q, mode, k } => {
            let started = Instant::now();
            let rel_r = parse_relation_spec(dims.h, r)?;
            let rel_q = parse_relation_spec(dims.n, q)?;
            let gate_mode = parse_mode(mode)?;
            let verdict = existence_gate(&rel_r, &rel_q, gate_mode, *k)?;
            let report = serde_json::json!({
                "schema": 1,
                "command": "gate",
                "config": { "h": dims.h, "n": dims.n, "R": r, "Q": q, "mode": mode, "k": k },
                "relations": { "R": rel_r.to_json(), "Q": rel_q.to_json() },
                "gate": gate_json(&verdict),
            });
            let timings = format!("timing gate_ms={}\n", started.elapsed().as_millis());
            Ok((report, timings, 0))
        }
        Command::Orbits { dims, u, caps } => {
            check_space(dims.h, dims.n, caps.space_cap)?;
            let t0 = Instant::now();
            let group = parse_group_spec(dims.h, dims.n, u, caps.group_cap)?;
            let closure_ms = t0.elapsed().as_millis();
            let t1 = Instant::now();
            let table = orbit_decomposition_capped(&group, caps.space_cap)?;
            let orbits_ms = t1.elapsed().as_millis();
            let regularity = is_regular_with_table(&group, &table)?;
            let (p1, p2) = table.class_counts();
            let report = serde_json::json!({
                "schema": 1,
                "command": "orbits",
                "config": { "h": dims.h, "n": dims.n, "U": u },
                "group": {
                    "order": group.order(),
                    "id_slice": group.contained_in_id_slice(),
                    "product_shape": group.product_shape().map(|s| serde_json::json!({
                        "voters": s.voters.to_json(),
                        "alts": s.alts.to_json(),
                        "omega_full": s.omega_full,
                    })),
                },
                "regular": {
                    "verdict": regularity.regular,
                    "witness": regularity.witness,
                    "criterion": regularity.criterion,
                    "criterion_agreement": regularity.criterion_agreement,
                },
                "orbits": {
                    "total": table.orbits().len(),
                    "p1": p1,
                    "p2": p2,
                    "table": table.to_json()["orbits"],
                },
            });
            let timings = format!("timing closure_ms={closure_ms} orbits_ms={orbits_ms}\n");
            Ok((report, timings, 0))
        }
        Command::Check { dims, u, rule, k, property, caps } => {
            check_space(dims.h, dims.n, caps.space_cap)?;
            let t0 = Instant::now();
            let group = parse_group_spec(dims.h, dims.n, u, caps.group_cap)?;
            let closure_ms = t0.elapsed().as_millis();
            let t1 = Instant::now();
            let (table, rule_name) = resolve_rule(dims.h, dims.n, rule, *k, &group)?;
            let (holds, witness) = match (property.as_str(), &table) {
                ("symmetric", RuleTable::Spc(c)) => check_symmetric(c, &group)?,
                ("consistent", RuleTable::Spc(c)) => check_consistent_spc(c, &group)?,
                ("consistent", RuleTable::Kscc(c)) => check_consistent_kscc(c, &group)?,
                ("symmetric", RuleTable::Kscc(_)) => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "committee correspondences have no symmetry property; use consistent"
                            .into(),
                    })
                }
                (other, _) => {
                    return Err(Error::Parse { line: 0, msg: format!("unknown property {other:?}") })
                }
            };
            let check_ms = t1.elapsed().as_millis();
            let report = serde_json::json!({
                "schema": 1,
                "command": "check",
                "config": { "h": dims.h, "n": dims.n, "U": u, "rule": rule_name, "k": k, "property": property },
                "check": {
                    "holds": holds,
                    "counterexample": witness.map(|(p, g)| serde_json::json!({
                        "profile_index": p.index(),
                        "element": g.to_string(),
                    })),
                },
            });
            let timings = format!("timing closure_ms={closure_ms} check_ms={check_ms}\n");
            Ok((report, timings, 0))
        }
        Command::Count { dims, u, rule, k, refine, caps } => {
            check_space(dims.h, dims.n, caps.space_cap)?;
            let t0 = Instant::now();
            let group = parse_group_spec(dims.h, dims.n, u, caps.group_cap)?;
            let closure_ms = t0.elapsed().as_millis();
            let t1 = Instant::now();
            let (table, rule_name) = resolve_rule(dims.h, dims.n, rule, *k, &group)?;
            let count = match (refine.as_str(), &table) {
                ("symmetric", RuleTable::Spc(c)) => count_symmetric_refinements(&group, c)?,
                ("consistent", RuleTable::Spc(c)) => count_consistent_spc_refinements(&group, c)?,
                ("consistent", RuleTable::Kscc(c)) => count_consistent_kscc_refinements(&group, c)?,
                ("symmetric", RuleTable::Kscc(_)) => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "committee refinements are consistent-mode only".into(),
                    })
                }
                (other, _) => {
                    return Err(Error::Parse { line: 0, msg: format!("unknown refine {other:?}") })
                }
            };
            let count_ms = t1.elapsed().as_millis();
            let zero_orbit = count.factors().iter().position(|&f| f == 0);
            let exit = if zero_orbit.is_some() { 2 } else { 0 };
            let zero_reason =
                if refine == "symmetric" { "EmptyIntersection" } else { "A2Empty" };
            let report = serde_json::json!({
                "schema": 1,
                "command": "count",
                "config": { "h": dims.h, "n": dims.n, "U": u, "rule": rule_name, "k": k, "refine": refine },
                "count": count_json(&count),
                "outcome": match zero_orbit {
                    None => serde_json::json!({ "refinement": "exists" }),
                    Some(orbit) => serde_json::json!({
                        "refinement": "none",
                        "orbit": orbit,
                        "reason": zero_reason,
                    }),
                },
            });
            let timings = format!("timing closure_ms={closure_ms} count_ms={count_ms}\n");
            Ok((report, timings, exit))
        }
        Command::Build { dims, u, rule, k, refine, policy, seed, emit_table, table_tsv, caps } => {
            check_space(dims.h, dims.n, caps.space_cap)?;
            let t0 = Instant::now();
            let group = parse_group_spec(dims.h, dims.n, u, caps.group_cap)?;
            let closure_ms = t0.elapsed().as_millis();
            let t1 = Instant::now();
            let (table, rule_name) = resolve_rule(dims.h, dims.n, rule, *k, &group)?;
            let chosen_policy = parse_policy(policy, *seed)?;
            let built: Result<(ResoluteFunction, RefinementCount)> =
                match (refine.as_str(), &table) {
                    ("symmetric", RuleTable::Spc(c)) => {
                        build_symmetric_refinement(&group, c, chosen_policy)
                    }
                    ("consistent", RuleTable::Spc(c)) => {
                        build_consistent_spc_refinement(&group, c, chosen_policy)
                    }
                    ("consistent", RuleTable::Kscc(c)) => {
                        build_consistent_kscc_refinement(&group, c, chosen_policy)
                    }
                    ("symmetric", RuleTable::Kscc(_)) => Err(Error::Parse {
                        line: 0,
                        msg: "committee refinements are consistent-mode only".into(),
                    }),
                    (other, _) => {
                        Err(Error::Parse { line: 0, msg: format!("unknown refine {other:?}") })
                    }
                };
            let build_ms = t1.elapsed().as_millis();
            let config = serde_json::json!({
                "h": dims.h, "n": dims.n, "U": u, "rule": rule_name, "k": k,
                "refine": refine, "policy": policy, "seed": seed,
            });
            match built {
                Ok((f, count)) => {
                    if let Some(path) = table_tsv {
                        std::fs::write(path, f.to_tsv())?;
                    }
                    // table emission defaults off above 10^5 profiles
                    let include_table =
                        *emit_table || Profile::space_size(dims.h, dims.n) <= 100_000;
                    let report = serde_json::json!({
                        "schema": 1,
                        "command": "build",
                        "config": config,
                        "count": count_json(&count),
                        "outcome": { "refinement": "built" },
                        "table": if include_table { Some(f.to_json()) } else { None },
                    });
                    let timings =
                        format!("timing closure_ms={closure_ms} build_ms={build_ms}\n");
                    Ok((report, timings, 0))
                }
                Err(Error::NoRefinement { orbit, reason }) => {
                    let report = serde_json::json!({
                        "schema": 1,
                        "command": "build",
                        "config": config,
                        "outcome": {
                            "refinement": "none",
                            "orbit": orbit,
                            "reason": reason.to_string(),
                        },
                    });
                    let timings =
                        format!("timing closure_ms={closure_ms} build_ms={build_ms}\n");
                    Ok((report, timings, 2))
                }
                Err(Error::EmptyIntersection { orbit }) => {
                    let report = serde_json::json!({
                        "schema": 1,
                        "command": "build",
                        "config": config,
                        "outcome": {
                            "refinement": "none",
                            "orbit": orbit,
                            "reason": "EmptyIntersection",
                        },
                    });
                    let timings =
                        format!("timing closure_ms={closure_ms} build_ms={build_ms}\n");
                    Ok((report, timings, 2))
                }
                Err(e) => Err(e),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_parse() {
        let g = parse_group_file(2, 2, "phi:(1 2) psi:id rho:id\n").unwrap();
        assert_eq!(g.order(), 2);

        let g = parse_group_file(2, 4, "phi:id psi:(1 4)(2 3) rho:rho0\n").unwrap();
        assert_eq!(g.order(), 2);
        assert!(!g.contained_in_id_slice());

        assert!(parse_group_file(2, 2, "phi:(1 2)\n").is_err());
        assert!(parse_group_file(2, 2, "phi:(1 2) psi:id rho:banana\n").is_err());
    }

    #[test]
    fn group_spec_presets() {
        assert_eq!(parse_group_spec(3, 2, "anonymity", GROUP_CAP).unwrap().order(), 6);
        assert_eq!(parse_group_spec(2, 2, "full", GROUP_CAP).unwrap().order(), 8);
        assert_eq!(parse_group_spec(2, 3, "reversal", GROUP_CAP).unwrap().order(), 2);
        let joined = parse_group_spec(2, 3, "anonymity,neutrality", GROUP_CAP).unwrap();
        assert_eq!(joined.order(), 12);
        assert!(parse_group_spec(2, 2, "nonsense", GROUP_CAP).is_err());
    }

    #[test]
    fn gate_command_runs() {
        let out = run_args([
            "resolute", "gate", "--h", "7", "--n", "4", "--R", "total", "--Q", "total",
            "--mode", "sym_id", "--format", "json",
        ]);
        assert_eq!(out.exit_code, 0);
        let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(report["gate"]["verdict"], "exists");
        assert_eq!(report["gate"]["gcd_id"], 1);
    }

    #[test]
    fn bad_input_exits_one() {
        let out = run_args(["resolute", "gate", "--h", "2", "--n", "2", "--R", "total",
            "--Q", "total", "--mode", "bogus"]);
        assert_eq!(out.exit_code, 1);
        assert!(out.stderr.contains("unknown mode"));

        let out = run_args(["resolute", "nonsense"]);
        assert_eq!(out.exit_code, 1);
    }
}
