//! Command-line front end: instance text format, seeded random generation,
//! pipeline orchestration and report emission.
//!
//! Instance format: line 1 is `n m |T|`; line 2 lists the T vertices (blank
//! when |T| = 0); then m lines `u v weight` where weight is a decimal or a
//! `p/q` rational. `#` starts a comment. Reports are JSON by default with
//! rationals as `p/q` strings, and byte-identical for identical inputs.

use crate::analysis::{self, BetaPoint, Certificate, ExactBetaPoint, MixedBoundMin, MixedBoundPoint};
use crate::bom::{self, BomReport};
use crate::caps::Caps;
use crate::decomposition;
use crate::error::Error;
use crate::graph::{Graph, Instance};
use crate::rat::Rat;
use crate::tjoin;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

// ---------------------------------------------------------------------------
// Instance text format
// ---------------------------------------------------------------------------

/// Parses the instance text format. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<Instance, Error> {
    let mut lines = text.lines().enumerate().map(|(i, l)| {
        let stripped = match l.find('#') {
            Some(pos) => &l[..pos],
            None => l,
        };
        (i + 1, stripped.trim())
    });

    // header: first non-blank line
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "missing header line `n m |T|`".into(),
        })?;
    let header_fields: Vec<&str> = header.split_whitespace().collect();
    if header_fields.len() != 3 {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("header must be `n m |T|`, got {header:?}"),
        });
    }
    let parse_count = |s: &str, what: &str, line: usize| -> Result<usize, Error> {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("bad {what}: {s:?}"),
        })
    };
    let n = parse_count(header_fields[0], "vertex count", header_line)?;
    let m = parse_count(header_fields[1], "edge count", header_line)?;
    let t_count = parse_count(header_fields[2], "terminal count", header_line)?;
    if t_count % 2 != 0 {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("terminal count must be even, got {t_count}"),
        });
    }

    // terminal line: the very next line, possibly blank
    let (term_line, term_text) = lines.next().unwrap_or((header_line + 1, ""));
    let mut terminals = BTreeSet::new();
    let fields: Vec<&str> = term_text.split_whitespace().collect();
    if fields.len() != t_count {
        return Err(Error::Parse {
            line: term_line,
            msg: format!("expected {t_count} terminals, got {}", fields.len()),
        });
    }
    for f in fields {
        let v = parse_count(f, "terminal", term_line)?;
        if v >= n {
            return Err(Error::Parse {
                line: term_line,
                msg: format!("terminal {v} out of range (n = {n})"),
            });
        }
        if !terminals.insert(v) {
            return Err(Error::Parse {
                line: term_line,
                msg: format!("terminal {v} listed twice"),
            });
        }
    }

    // edge lines: the next m non-blank lines
    let mut edges = Vec::with_capacity(m);
    let mut lengths = Vec::with_capacity(m);
    let mut last_line = term_line;
    for (line, text) in lines {
        if text.is_empty() {
            continue;
        }
        last_line = line;
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                msg: format!("expected {m} edges, found more"),
            });
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: format!("edge line must be `u v weight`, got {text:?}"),
            });
        }
        let u = parse_count(fields[0], "endpoint", line)?;
        let v = parse_count(fields[1], "endpoint", line)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("edge endpoint out of range (n = {n})"),
            });
        }
        let w = Rat::from_str(fields[2]).map_err(|e| Error::Parse {
            line,
            msg: format!("bad weight: {e}"),
        })?;
        if w.is_negative() {
            return Err(Error::Parse {
                line,
                msg: "negative weight".into(),
            });
        }
        edges.push((u, v));
        lengths.push(w);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("expected {m} edges, found {}", edges.len()),
        });
    }

    let graph = Graph::new(n, edges).map_err(|e| Error::Parse {
        line: header_line,
        msg: e.to_string(),
    })?;
    Instance::new(graph, terminals, lengths).map_err(|e| Error::Parse {
        line: header_line,
        msg: e.to_string(),
    })
}

/// Renders an instance in the text format `parse_instance` accepts.
pub fn format_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} {}\n",
        inst.vertex_count(),
        inst.edge_count(),
        inst.terminals().len()
    ));
    let terms: Vec<String> = inst.terminals().iter().map(|v| v.to_string()).collect();
    out.push_str(&terms.join(" "));
    out.push('\n');
    for (e, (u, v)) in inst.graph().edges() {
        out.push_str(&format!("{u} {v} {}\n", inst.length(e)));
    }
    out
}

/// Deterministic random instance: a random spanning tree plus random extra
/// edges (parallels allowed), weights numerator/denominator with numerators
/// in 1..=max_numerator and denominators from {1, 2, 3, 4}.
pub fn gen_random(
    n: usize,
    m: usize,
    seed: u64,
    t_size: usize,
    max_numerator: i64,
) -> Result<Instance, Error> {
    if n == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if n == 1 && m > 0 {
        return Err(Error::invalid("a single vertex admits no edges"));
    }
    if m + 1 < n {
        return Err(Error::invalid(format!(
            "need at least n-1 = {} edges to connect {n} vertices, got {m}",
            n - 1
        )));
    }
    if !t_size.is_multiple_of(2) {
        return Err(Error::invalid("terminal count must be even"));
    }
    if t_size > n {
        return Err(Error::invalid("more terminals than vertices"));
    }
    if max_numerator < 1 {
        return Err(Error::invalid("weight numerators need max >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        edges.push((u.min(v), u.max(v)));
    }
    const DENOMS: [i64; 4] = [1, 2, 3, 4];
    let lengths: Vec<Rat> = (0..m)
        .map(|_| {
            let num = rng.random_range(1..=max_numerator);
            let den = DENOMS[rng.random_range(0..DENOMS.len())];
            Rat::new(num, den)
        })
        .collect();
    let mut vertices: Vec<usize> = (0..n).collect();
    let (chosen, _) = vertices.partial_shuffle(&mut rng, t_size);
    let terminals: BTreeSet<usize> = chosen.iter().copied().collect();

    let graph = Graph::new(n, edges)?;
    Instance::new(graph, terminals, lengths)
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Certify,
    Oracle,
    Constants,
    Gen {
        n: usize,
        m: usize,
        t_size: usize,
        max_numerator: i64,
        family: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    /// instance path; `-` reads stdin
    pub instance: Option<String>,
    pub beta: Rat,
    pub seed: u64,
    pub caps: Caps,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

/// Report text plus the process exit code (0 unless a certificate failed).
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub exit_code: i32,
    pub report: String,
}

/// Exit code classes: parse errors 2, capacity errors 3, everything else 1.
/// (Certificate failures exit 4 but are not `Error`s; see `run`.)
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::Capacity { .. } => 3,
        _ => 1,
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct InstanceSummary {
    path: String,
    vertices: usize,
    edges: usize,
    terminals: Vec<usize>,
}

impl InstanceSummary {
    fn new(path: &str, inst: &Instance) -> Self {
        InstanceSummary {
            path: path.to_string(),
            vertices: inst.vertex_count(),
            edges: inst.edge_count(),
            terminals: inst.terminals().iter().copied().collect(),
        }
    }
}

#[derive(Serialize)]
struct ComboEntry {
    lambda: Rat,
    edges: Vec<usize>,
}

#[derive(Serialize)]
struct TourEntry {
    tree: Vec<usize>,
    join: Vec<usize>,
    tour: Vec<u8>,
    length: Rat,
    tree_length: Rat,
    join_length: Rat,
}

#[derive(Serialize)]
struct PipelineReport {
    command: String,
    instance: InstanceSummary,
    lp_value: Rat,
    combo: Vec<ComboEntry>,
    tours: Vec<TourEntry>,
    best: usize,
    #[serde(rename = "ratio_R")]
    ratio_r: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

impl PipelineReport {
    fn new(
        command: &str,
        path: &str,
        inst: &Instance,
        report: &BomReport,
        certificate: Option<Certificate>,
    ) -> Self {
        PipelineReport {
            command: command.to_string(),
            instance: InstanceSummary::new(path, inst),
            lp_value: report.lp.value.clone(),
            combo: report
                .combo
                .members
                .iter()
                .map(|m| ComboEntry {
                    lambda: m.lambda.clone(),
                    edges: m.tree.iter().copied().collect(),
                })
                .collect(),
            tours: report
                .per_tree
                .iter()
                .map(|t| TourEntry {
                    tree: t.tree.iter().copied().collect(),
                    join: t.join.iter().copied().collect(),
                    tour: t.tour.multiplicities().to_vec(),
                    length: t.length.clone(),
                    tree_length: t.tree_length.clone(),
                    join_length: t.join_length.clone(),
                })
                .collect(),
            best: report.best,
            ratio_r: report.ratio_r.clone(),
            certificate,
        }
    }

    fn to_text(&self, bom: &BomReport) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "instance {} (n={} m={} |T|={})\n",
            self.instance.path,
            self.instance.vertices,
            self.instance.edges,
            self.instance.terminals.len()
        ));
        out.push_str(&format!("lp value: {}\n", self.lp_value));
        out.push_str("constraints:\n");
        for line in bom.lp.constraint_lines() {
            out.push_str(&format!("  {line}\n"));
        }
        out.push_str("combination:\n");
        for line in bom.combo.text_lines() {
            out.push_str(&format!("  {line}\n"));
        }
        out.push_str("tours:\n");
        for (i, t) in self.tours.iter().enumerate() {
            let marker = if i == self.best { "  <- best" } else { "" };
            out.push_str(&format!(
                "  [{i}] tree {} + join {} = {}{marker}\n",
                t.tree_length, t.join_length, t.length
            ));
        }
        out.push_str(&format!("best length: {}\n", self.tours[self.best].length));
        out.push_str(&format!("ratio_R: {}\n", self.ratio_r));
        if let Some(cert) = &self.certificate {
            out.push_str(&format!(
                "certificate (beta {}): {}\n",
                cert.beta,
                if cert.all_pass { "PASS" } else { "FAIL" }
            ));
            for c in &cert.checks {
                let status = if c.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("  {:<18} {status}", c.name));
                if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                    out.push_str(&format!("  ({l} <= {r})"));
                }
                if let Some(w) = &c.witness {
                    out.push_str(&format!("  [{w}]"));
                }
                if let Some(n) = &c.note {
                    out.push_str(&format!("  ({n})"));
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Serialize)]
struct OracleCheck {
    name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct OracleReport {
    command: String,
    instance: InstanceSummary,
    lp_value: Rat,
    best_length: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    opt_length: Option<Rat>,
    checks: Vec<OracleCheck>,
}

#[derive(Serialize)]
struct ExactConstants {
    beta: Rat,
    omega: Rat,
    f: Rat,
    epsilon: Rat,
    /// 1/2 + ε
    expectation_coefficient: Rat,
    /// 1 + (1/2 + ε)
    tour_ratio: Rat,
}

#[derive(Serialize)]
struct ConstantsReport {
    command: String,
    exact: ExactConstants,
    table: Vec<BetaPoint>,
    mixed_minimum: MixedBoundMin,
    mixed_at_optimum: MixedBoundPoint,
}

// ---------------------------------------------------------------------------
// Command execution
// ---------------------------------------------------------------------------

fn load_instance(config: &RunConfig) -> Result<(String, Instance), Error> {
    let path = config
        .instance
        .clone()
        .ok_or_else(|| Error::invalid("this command needs an instance path"))?;
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(&path)?
    };
    Ok((path, parse_instance(&text)?))
}

/// Executes one command; pure apart from instance loading. The report is
/// returned as a string for the caller to place (stdout or `--out`).
pub fn run(config: &RunConfig) -> Result<RunOutput, Error> {
    match &config.command {
        CommandKind::Solve => {
            let (path, inst) = load_instance(config)?;
            let report = bom::best_of_many(&inst, &config.caps)?;
            let pipeline = PipelineReport::new("solve", &path, &inst, &report, None);
            let rendered = match config.format {
                OutputFormat::Json => to_json(&pipeline),
                OutputFormat::Text => pipeline.to_text(&report),
            };
            Ok(RunOutput {
                exit_code: 0,
                report: rendered,
            })
        }
        CommandKind::Certify => {
            let (path, inst) = load_instance(config)?;
            let report = bom::best_of_many(&inst, &config.caps)?;
            let cert = analysis::verify_certificates(&inst, &report, &config.beta, &config.caps)?;
            let all_pass = cert.all_pass;
            let pipeline = PipelineReport::new("certify", &path, &inst, &report, Some(cert));
            let rendered = match config.format {
                OutputFormat::Json => to_json(&pipeline),
                OutputFormat::Text => pipeline.to_text(&report),
            };
            Ok(RunOutput {
                exit_code: if all_pass { 0 } else { 4 },
                report: rendered,
            })
        }
        CommandKind::Oracle => {
            let (path, inst) = load_instance(config)?;
            let report = oracle_report(&path, &inst, &config.caps)?;
            let rendered = match config.format {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Text => to_json(&report), // oracle output is structural
            };
            Ok(RunOutput {
                exit_code: 0,
                report: rendered,
            })
        }
        CommandKind::Constants => {
            let report = constants_report()?;
            let rendered = match config.format {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Text => constants_text(&report),
            };
            Ok(RunOutput {
                exit_code: 0,
                report: rendered,
            })
        }
        CommandKind::Gen {
            n,
            m,
            t_size,
            max_numerator,
            family,
        } => {
            if let Some(name) = family {
                return Err(Error::invalid(format!(
                    "generator family {name:?} is reserved but not implemented"
                )));
            }
            let inst = gen_random(*n, *m, config.seed, *t_size, *max_numerator)?;
            Ok(RunOutput {
                exit_code: 0,
                report: format_instance(&inst),
            })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// JSON solve report for an in-memory instance (binding surface).
pub fn solve_report_json(inst: &Instance, label: &str, caps: &Caps) -> Result<String, Error> {
    let report = bom::best_of_many(inst, caps)?;
    Ok(to_json(&PipelineReport::new("solve", label, inst, &report, None)))
}

/// JSON certify report for an in-memory instance; the flag is `all_pass`.
pub fn certify_report_json(
    inst: &Instance,
    label: &str,
    beta: &Rat,
    caps: &Caps,
) -> Result<(bool, String), Error> {
    let report = bom::best_of_many(inst, caps)?;
    let cert = analysis::verify_certificates(inst, &report, beta, caps)?;
    let all_pass = cert.all_pass;
    let rendered = to_json(&PipelineReport::new("certify", label, inst, &report, Some(cert)));
    Ok((all_pass, rendered))
}

/// JSON oracle report for an in-memory instance (binding surface).
pub fn oracle_report_json(inst: &Instance, label: &str, caps: &Caps) -> Result<String, Error> {
    Ok(to_json(&oracle_report(label, inst, caps)?))
}

/// JSON constants report (binding surface).
pub fn constants_report_json() -> Result<String, Error> {
    Ok(to_json(&constants_report()?))
}

fn oracle_report(path: &str, inst: &Instance, caps: &Caps) -> Result<OracleReport, Error> {
    let report = bom::best_of_many(inst, caps)?;
    let mut checks = Vec::new();
    let m = inst.edge_count();
    let n = inst.vertex_count();

    let opt = if m <= caps.bruteforce_edges {
        Some(bom::brute_force_opt(inst, caps.bruteforce_edges)?.length)
    } else {
        None
    };

    match &opt {
        Some(opt_len) => {
            checks.push(OracleCheck {
                name: "lp_value_le_opt",
                pass: Some(&report.lp.value <= opt_len),
                lhs: Some(report.lp.value.clone()),
                rhs: Some(opt_len.clone()),
                note: None,
            });
            let best = &report.best_tour().length;
            checks.push(OracleCheck {
                name: "best_le_8_5_opt",
                pass: Some((&Rat::from_int(5) * best) <= (&Rat::from_int(8) * opt_len)),
                lhs: Some(best.clone()),
                rhs: Some(&Rat::new(8, 5) * opt_len),
                note: None,
            });
            let baseline = bom::christofides_single(inst, &bom::min_cost_spanning_tree(inst), caps)?;
            checks.push(OracleCheck {
                name: "baseline_correction_le_2_3_opt",
                pass: Some(
                    (&Rat::from_int(3) * &baseline.join_length)
                        <= (&Rat::from_int(2) * opt_len),
                ),
                lhs: Some(baseline.join_length.clone()),
                rhs: Some(&Rat::new(2, 3) * opt_len),
                note: None,
            });
        }
        None => checks.push(OracleCheck {
            name: "lp_value_le_opt",
            pass: None,
            lhs: None,
            rhs: None,
            note: Some("skipped: brute-force optimum above cap".into()),
        }),
    }

    let best = &report.best_tour().length;
    checks.push(OracleCheck {
        name: "best_le_8_5_lp",
        pass: Some((&Rat::from_int(5) * best) <= (&Rat::from_int(8) * &report.lp.value)),
        lhs: Some(best.clone()),
        rhs: Some(&Rat::new(8, 5) * &report.lp.value),
        note: None,
    });
    if inst.terminals().is_empty() {
        checks.push(OracleCheck {
            name: "closed_tour_le_3_2_lp",
            pass: Some((&Rat::from_int(2) * best) <= (&Rat::from_int(3) * &report.lp.value)),
            lhs: Some(best.clone()),
            rhs: Some(&Rat::new(3, 2) * &report.lp.value),
            note: None,
        });
    }

    // join DP against the subset oracle, for the terminal set and for every
    // member parity set
    if m <= caps.bruteforce_edges {
        let mut all_match = true;
        let mut worst: Option<(Rat, Rat)> = None;
        let mut parities: Vec<BTreeSet<usize>> = vec![inst.terminals().clone()];
        for mb in &report.combo.members {
            let t_f = crate::graph::odd_degree_vertices(inst.graph(), &mb.tree);
            parities.push(t_f.symmetric_difference(inst.terminals()).copied().collect());
        }
        for t in &parities {
            let fast = tjoin::min_tjoin(inst, t, caps.matching)?;
            let slow = tjoin::min_tjoin_bruteforce(inst, t, caps.bruteforce_edges)?;
            if fast.length != slow.length {
                all_match = false;
                worst = Some((fast.length.clone(), slow.length.clone()));
                break;
            }
        }
        checks.push(OracleCheck {
            name: "tjoin_dp_matches_subsets",
            pass: Some(all_match),
            lhs: worst.as_ref().map(|(a, _)| a.clone()),
            rhs: worst.map(|(_, b)| b),
            note: None,
        });
    } else {
        checks.push(OracleCheck {
            name: "tjoin_dp_matches_subsets",
            pass: None,
            lhs: None,
            rhs: None,
            note: Some("skipped: subset oracle above cap".into()),
        });
    }

    // decomposition verdict against the full tree-packing oracle
    if m <= caps.tree_enum {
        let nu = decomposition::packing_value_oracle(inst.graph(), &report.lp.x_star, caps.tree_enum)?;
        checks.push(OracleCheck {
            name: "packing_value_ge_1",
            pass: Some(nu >= Rat::one()),
            lhs: Some(Rat::one()),
            rhs: Some(nu),
            note: None,
        });
    } else {
        checks.push(OracleCheck {
            name: "packing_value_ge_1",
            pass: None,
            lhs: None,
            rhs: None,
            note: Some("skipped: tree enumeration above cap".into()),
        });
    }

    // narrow cuts: fundamental enumeration against full enumeration
    if n <= caps.cut_enum && n <= 14 {
        let fast = analysis::narrow_cuts(inst, &report.lp.x_star, &report.combo)?;
        let full = analysis::narrow_cuts_all_cuts(inst, &report.lp.x_star, &report.combo, 14)?;
        let agree = fast.len() == full.len()
            && fast.iter().zip(&full).all(|(a, b)| {
                a.cut == b.cut
                    && a.x_star_value == b.x_star_value
                    && a.xq == b.xq
                    && a.one_tree_prob == b.one_tree_prob
            });
        checks.push(OracleCheck {
            name: "narrow_cuts_match_full_enumeration",
            pass: Some(agree),
            lhs: None,
            rhs: None,
            note: None,
        });
    } else {
        checks.push(OracleCheck {
            name: "narrow_cuts_match_full_enumeration",
            pass: None,
            lhs: None,
            rhs: None,
            note: Some("skipped: cut enumeration above cap".into()),
        });
    }

    Ok(OracleReport {
        command: "oracle".into(),
        instance: InstanceSummary::new(path, inst),
        lp_value: report.lp.value.clone(),
        best_length: report.best_tour().length.clone(),
        opt_length: opt,
        checks,
    })
}

fn constants_report() -> Result<ConstantsReport, Error> {
    let four_ninths = Rat::new(4, 9);
    let ExactBetaPoint { omega, f, epsilon } = analysis::beta_point_exact(&four_ninths)?
        .expect("the square root is rational at 4/9");
    let expectation_coefficient = Rat::new(1, 2) + &epsilon;
    let tour_ratio = Rat::one() + &expectation_coefficient;
    let exact = ExactConstants {
        beta: four_ninths.clone(),
        omega,
        f,
        epsilon,
        expectation_coefficient,
        tour_ratio,
    };

    let mut betas: Vec<Rat> = vec![Rat::new(1, 3)];
    for pct in (34..=49).step_by(1) {
        betas.push(Rat::new(pct, 100));
    }
    betas.push(four_ninths.clone());
    betas.sort();
    betas.dedup();
    let table: Vec<BetaPoint> = betas
        .iter()
        .map(analysis::f_beta)
        .collect::<Result<_, _>>()?;

    Ok(ConstantsReport {
        command: "constants".into(),
        exact,
        table,
        mixed_minimum: analysis::minimize_mixed_bound(0.2),
        mixed_at_optimum: analysis::mixed_bound_point(4.0 / 9.0, 0.0)?,
    })
}

fn constants_text(report: &ConstantsReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "exact at beta {}: omega {}, f {}, epsilon {}, expectation {}, ratio {}\n",
        report.exact.beta,
        report.exact.omega,
        report.exact.f,
        report.exact.epsilon,
        report.exact.expectation_coefficient,
        report.exact.tour_ratio
    ));
    out.push_str("beta        omega      f          epsilon\n");
    for p in &report.table {
        out.push_str(&format!(
            "{:<10} {:<10.6} {:<10.6} {:<10.6}\n",
            p.beta.to_string(),
            p.omega,
            p.f_of_beta,
            p.epsilon
        ));
    }
    out.push_str(&format!(
        "mixed bound minimum: beta {:.6}, y {:.6}, epsilon {:.6}\n",
        report.mixed_minimum.beta, report.mixed_minimum.y, report.mixed_minimum.epsilon
    ));
    out
}

// ---------------------------------------------------------------------------
// clap surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "ttour",
    version,
    about = "Exact best-of-many parity-corrected tours with certified ratio analysis"
)]
pub struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Solve the relaxation and run best-of-many parity correction
    Solve {
        /// instance path, or `-` for stdin
        instance: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Solve, then verify every analysis inequality exactly (exit 4 on fail)
    Certify {
        instance: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Brute-force optimum and oracle cross-checks
    Oracle {
        instance: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Constants table and mixed-bound minimization
    Constants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write a random instance in the text format
    Gen {
        /// reserved generator family name
        family: Option<String>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 9)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        t_size: usize,
        #[arg(long, default_value_t = 9)]
        max_numerator: i64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// beta as a rational `p/q` in (1/3, 1/2)
    #[arg(long, default_value = "4/9")]
    beta: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long, default_value_t = crate::caps::DEFAULT_CUT_ENUM_CAP)]
    cap_cut_enum: usize,
    #[arg(long, default_value_t = crate::caps::DEFAULT_PARTITION_ENUM_CAP)]
    cap_partition_enum: usize,
    #[arg(long, default_value_t = crate::caps::DEFAULT_MATCHING_CAP)]
    cap_matching: usize,
    #[arg(long, default_value_t = crate::caps::DEFAULT_TREE_ENUM_CAP)]
    cap_tree_enum: usize,
    #[arg(long, default_value_t = crate::caps::DEFAULT_BRUTEFORCE_EDGES_CAP)]
    cap_bruteforce_edges: usize,
    #[arg(long, default_value_t = crate::caps::DEFAULT_UNIVERSAL_TPRIME_CAP)]
    cap_universal_tprime: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl CommonArgs {
    fn into_parts(self) -> Result<(Rat, u64, Caps, Option<PathBuf>, OutputFormat), Error> {
        let beta = Rat::from_str(&self.beta)?;
        let caps = Caps {
            cut_enum: self.cap_cut_enum,
            partition_enum: self.cap_partition_enum,
            matching: self.cap_matching,
            tree_enum: self.cap_tree_enum,
            bruteforce_edges: self.cap_bruteforce_edges,
            universal_tprime: self.cap_universal_tprime,
        };
        let format = match self.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Text => OutputFormat::Text,
        };
        Ok((beta, self.seed, caps, self.out, format))
    }
}

impl CliArgs {
    pub fn into_config(self) -> Result<RunConfig, Error> {
        let (command, instance, common) = match self.command {
            CliCommand::Solve { instance, common } => {
                (CommandKind::Solve, Some(instance), common)
            }
            CliCommand::Certify { instance, common } => {
                (CommandKind::Certify, Some(instance), common)
            }
            CliCommand::Oracle { instance, common } => {
                (CommandKind::Oracle, Some(instance), common)
            }
            CliCommand::Constants { common } => (CommandKind::Constants, None, common),
            CliCommand::Gen {
                family,
                n,
                m,
                t_size,
                max_numerator,
                common,
            } => (
                CommandKind::Gen {
                    n,
                    m,
                    t_size,
                    max_numerator,
                    family,
                },
                None,
                common,
            ),
        };
        let (beta, seed, caps, out, format) = common.into_parts()?;
        Ok(RunConfig {
            command,
            instance,
            beta,
            seed,
            caps,
            out,
            format,
        })
    }
}

/// Binary entry point: parse, run, place the report, map errors to exit
/// codes (parse 2, capacity 3, certificate failure 4, otherwise 1).
pub fn cli_main() -> i32 {
    let args = CliArgs::parse();
    let config = match args.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    match run(&config) {
        Ok(output) => {
            match &config.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &output.report) {
                        eprintln!("error: {e}");
                        return 1;
                    }
                }
                None => print!("{}", output.report),
            }
            output.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_the_fixture_texts() {
        let tri = parse_instance("3 3 2\n0 2\n0 1 1\n1 2 1\n0 2 1\n").unwrap();
        assert_eq!(tri, fixtures::fix_tri_path());

        let edge = parse_instance("2 1 2\n0 1\n0 1 1\n").unwrap();
        assert_eq!(edge, fixtures::fix_edge());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        // header says 2 edges, file has 1
        match parse_instance("3 2 2\n0 2\n0 1 1\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("expected 2 edges"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_instance(""),
            Err(Error::Parse { line: 1, .. })
        ));
        // odd terminal count
        assert!(parse_instance("2 1 1\n0\n0 1 1\n").is_err());
        // negative weight
        assert!(parse_instance("2 1 0\n\n0 1 -1\n").is_err());
        // disconnected
        assert!(parse_instance("4 2 0\n\n0 1 1\n2 3 1\n").is_err());
        // duplicate terminal
        assert!(parse_instance("2 1 2\n0 0\n0 1 1\n").is_err());
    }

    #[test]
    fn parse_accepts_comments_decimals_and_fractions() {
        let text = "# a triangle\n3 3 2  # header\n0 2\n0 1 0.5\n1 2 3/2\n0 2 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(*inst.length(0), Rat::new(1, 2));
        assert_eq!(*inst.length(1), Rat::new(3, 2));
        assert_eq!(*inst.length(2), Rat::from_int(2));
    }

    #[test]
    fn format_round_trips() {
        for (_, inst) in fixtures::all() {
            let text = format_instance(&inst);
            assert_eq!(parse_instance(&text).unwrap(), inst);
        }
    }

    #[test]
    fn single_vertex_instance_parses_and_solves() {
        let inst = parse_instance("1 0 0\n").unwrap();
        assert_eq!(inst.vertex_count(), 1);
        assert_eq!(inst.edge_count(), 0);
        let report = crate::bom::best_of_many(&inst, &Caps::default()).unwrap();
        assert!(report.best_tour().length.is_zero());
    }

    #[test]
    fn gen_is_deterministic_per_seed() {
        let a = gen_random(4, 5, 1, 2, 9).unwrap();
        let b = gen_random(4, 5, 1, 2, 9).unwrap();
        assert_eq!(a, b);
        let c = gen_random(4, 5, 2, 2, 9).unwrap();
        assert_ne!(a, c);
        assert_eq!(a.vertex_count(), 4);
        assert_eq!(a.edge_count(), 5);
        assert_eq!(a.terminals().len(), 2);
    }

    #[test]
    fn gen_small_cases_and_errors() {
        let e = gen_random(2, 1, 0, 2, 1).unwrap();
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.edge_count(), 1);
        assert_eq!(e.terminals().len(), 2);

        assert!(gen_random(5, 3, 0, 2, 9).is_err()); // m < n-1
        assert!(gen_random(4, 5, 0, 3, 9).is_err()); // odd terminals
        assert!(gen_random(4, 5, 0, 6, 9).is_err()); // too many terminals
        assert!(gen_random(0, 0, 0, 0, 9).is_err());
    }

    fn config_for(command: CommandKind, path: Option<String>) -> RunConfig {
        RunConfig {
            command,
            instance: path,
            beta: Rat::new(4, 9),
            seed: 0,
            caps: Caps::default(),
            out: None,
            format: OutputFormat::Json,
        }
    }

    fn write_fixture(inst: &Instance, name: &str) -> String {
        let dir = std::env::temp_dir().join("ttour-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, format_instance(inst)).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn solve_and_certify_reports() {
        let path = write_fixture(&fixtures::fix_tri_path(), "tri_path.txt");
        let out = run(&config_for(CommandKind::Solve, Some(path.clone()))).unwrap();
        assert_eq!(out.exit_code, 0);
        let json: serde_json::Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(json["command"], "solve");
        assert_eq!(json["lp_value"], "2");
        assert_eq!(json["ratio_R"], "1");
        assert!(json.get("certificate").is_none());

        let out = run(&config_for(CommandKind::Certify, Some(path))).unwrap();
        assert_eq!(out.exit_code, 0);
        let json: serde_json::Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(json["certificate"]["all_pass"], true);
        assert_eq!(json["certificate"]["beta"], "4/9");
        assert_eq!(json["certificate"]["checks"].as_array().unwrap().len(), 13);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let path = write_fixture(&fixtures::fix_c4(), "c4.txt");
        let config = config_for(CommandKind::Certify, Some(path));
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn oracle_reports_all_pass_on_fixtures() {
        for (name, inst) in fixtures::all() {
            let path = write_fixture(&inst, &format!("oracle_{name}.txt"));
            let out = run(&config_for(CommandKind::Oracle, Some(path))).unwrap();
            assert_eq!(out.exit_code, 0);
            let json: serde_json::Value = serde_json::from_str(&out.report).unwrap();
            for check in json["checks"].as_array().unwrap() {
                assert_ne!(check["pass"], false, "{name}: {check}");
            }
        }
    }

    #[test]
    fn constants_reports_exact_values() {
        let out = run(&config_for(CommandKind::Constants, None)).unwrap();
        let json: serde_json::Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(json["exact"]["omega"], "1/2");
        assert_eq!(json["exact"]["f"], "1/9");
        assert_eq!(json["exact"]["epsilon"], "1/10");
        assert_eq!(json["exact"]["expectation_coefficient"], "3/5");
        assert_eq!(json["exact"]["tour_ratio"], "8/5");
        let y = json["mixed_minimum"]["y"].as_f64().unwrap();
        assert!(y <= 1e-4);
    }

    #[test]
    fn gen_command_and_reserved_family() {
        let out = run(&config_for(
            CommandKind::Gen {
                n: 5,
                m: 7,
                t_size: 2,
                max_numerator: 9,
                family: None,
            },
            None,
        ))
        .unwrap();
        let inst = parse_instance(&out.report).unwrap();
        assert_eq!(inst.vertex_count(), 5);
        assert_eq!(inst.edge_count(), 7);

        let err = run(&config_for(
            CommandKind::Gen {
                n: 5,
                m: 7,
                t_size: 2,
                max_numerator: 9,
                family: Some("lowerbound-figure2".into()),
            },
            None,
        ))
        .unwrap_err();
        assert!(err.to_string().contains("reserved"));
    }

    #[test]
    fn exit_codes_by_failure_class() {
        let parse = Error::Parse {
            line: 1,
            msg: "x".into(),
        };
        assert_eq!(exit_code_for(&parse), 2);
        let cap = Error::Capacity {
            what: "x",
            limit: 1,
            actual: 2,
        };
        assert_eq!(exit_code_for(&cap), 3);
        assert_eq!(exit_code_for(&Error::invalid("x")), 1);
    }
}
