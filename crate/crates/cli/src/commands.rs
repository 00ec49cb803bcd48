use std::fmt::Write as _;
use std::fs;

use quiverlab_core::class::class_dump;
use quiverlab_core::cluster::{depth1_upper_report, is_totally_coprime_over_class};
use quiverlab_core::obstructions::checker::{check_la_certificate, check_no_mgs_certificate};
use quiverlab_core::obstructions::{LaNode, ObstructionError};
use quiverlab_core::sequence::{replay_from, search_g2r_with, SearchError, SearchStrategy};
use quiverlab_core::{
    admissible_coloring, class_no_mgs_certificate, column_gcds, covering_pairs, degree,
    enumerate_class, grading_check, is_mutation_finite, local_acyclicity_certificate,
    multiple_arrow_cycle, no_mgs_certificate, parse_laurent, search_mgs, verify_green,
    verify_green_to_red, verify_maximal_green, CertificateCaps, ClassCaps, ColoringOutcome,
    Degree, ExchangeMatrix, GradingVector, IceQuiver, LaOutcome, LaurentPoly, NoMgsCertificate,
    QuiverError, SearchOptions, SearchOutcome, VertexStatus,
};
use serde::Serialize;
use serde_json::json;

use crate::cli::{
    ClassCommand, Cli, Command, CoverCommand, Format, ObstructCommand, PaperCommand,
    SearchKindArg, StrategyArg, UpperCommand, VerifyKind,
};
use crate::input::{load, load_plain};
use crate::{paper, structured};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 1 for computations that could not finish.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Quiver(QuiverError::Overflow) => 1,
            Self::Quiver(_) => 2,
            Self::Search(_) | Self::Obstruction(_) | Self::Io(_) => 1,
        }
    }
}

/// Output of one command in both formats, with its exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub code: u8,
    pub text: String,
    pub structured: String,
}

impl Report {
    fn new<T: Serialize>(code: u8, text: String, value: &T) -> Self {
        Self {
            code,
            text,
            structured: structured(value),
        }
    }

    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Text => &self.text,
            Format::Structured => &self.structured,
        }
    }
}

fn verdict_code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

pub fn colors_text(statuses: &[VertexStatus]) -> String {
    statuses
        .iter()
        .map(|s| match s {
            VertexStatus::Green => "G",
            VertexStatus::Red => "R",
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn labels(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn seq_text(s: &quiverlab_core::MutationSequence) -> String {
    if s.is_empty() {
        "()".into()
    } else {
        s.to_string()
    }
}

pub fn certificate_text(c: &NoMgsCertificate) -> String {
    match c {
        NoMgsCertificate::MultipleArrowCycle { cycle } => {
            format!("oriented cycle of multiple arrows through {}", labels(cycle))
        }
        NoMgsCertificate::ClassLevel {
            column_gcds,
            refutation,
        } => {
            let cycles: Vec<String> = refutation
                .iter()
                .map(|c| {
                    let kind = if c.oriented { "oriented" } else { "not oriented" };
                    format!("[{}] {kind}", labels(&c.vertices))
                })
                .collect();
            format!(
                "column gcds {:?} and no admissible colouring, refuted by {}",
                column_gcds,
                cycles.join(", ")
            )
        }
    }
}

pub fn search_text(out: &SearchOutcome) -> String {
    match out {
        SearchOutcome::Found { sequence } => format!("found: {}", seq_text(sequence)),
        SearchOutcome::ExhaustedToDepth { depth } => {
            format!("no sequence of length <= {depth} (not a proof that none exists)")
        }
        SearchOutcome::Obstructed { certificate } => {
            format!("obstructed: {}", certificate_text(certificate))
        }
    }
}

fn tree_text(node: &LaNode, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match node {
        LaNode::Leaf {
            vertices, sequence, ..
        } => {
            let _ = writeln!(
                out,
                "{pad}acyclic on {{{}}} after {}",
                labels(vertices),
                seq_text(sequence)
            );
        }
        LaNode::Split {
            vertices,
            sequence,
            arrow,
            freeze_source,
            freeze_target,
            ..
        } => {
            let _ = writeln!(
                out,
                "{pad}on {{{}}} after {}: covering pair {}->{}",
                labels(vertices),
                seq_text(sequence),
                arrow.0 + 1,
                arrow.1 + 1
            );
            let _ = writeln!(out, "{pad}  freeze {}:", arrow.0 + 1);
            tree_text(freeze_source, indent + 2, out);
            let _ = writeln!(out, "{pad}  freeze {}:", arrow.1 + 1);
            tree_text(freeze_target, indent + 2, out);
        }
    }
}

fn parse_poly(text: &str, n: usize) -> Result<LaurentPoly, CliError> {
    parse_laurent(text, n, n).map_err(|e| CliError::Usage(format!("polynomial: {e}")))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Mutate { input, seq, framed } => {
            let mut q = load(&input.quiver)?;
            if *framed {
                if q.frozen_count() > 0 {
                    return Err(CliError::Usage("--framed needs a quiver without frozen vertices".into()));
                }
                q = IceQuiver::frame(q.principal());
            }
            let q = q.mutate_seq(seq.seq.steps())?;
            Ok(Report::new(0, quiverlab_core::quiver::write_quiver(&q), &q))
        }
        Command::Frame { input } => {
            let q = IceQuiver::frame(&load_plain(&input.quiver)?);
            Ok(Report::new(0, quiverlab_core::quiver::write_quiver(&q), &q))
        }
        Command::Replay { input, seq } => {
            let q = load(&input.quiver)?;
            let start = if q.frozen_count() > 0 {
                q
            } else {
                IceQuiver::frame(q.principal())
            };
            let trace = replay_from(&start, &seq.seq)?;
            let mut text = String::from("step vertex colours\n");
            for (t, colors) in trace.statuses.iter().enumerate() {
                let vertex = match t {
                    0 => "-".to_string(),
                    _ => (trace.sequence.steps()[t - 1] + 1).to_string(),
                };
                let _ = writeln!(text, "{t:>4} {vertex:>6} {}", colors_text(colors));
            }
            let _ = write!(
                text,
                "all steps green: {}, ends all red: {}",
                trace.all_steps_green(),
                trace.ends_all_red()
            );
            Ok(Report::new(0, text, &trace))
        }
        Command::Verify { kind, input, seq } => {
            let b = load_plain(&input.quiver)?;
            let (name, holds) = match kind {
                VerifyKind::Green => ("green", verify_green(&b, &seq.seq)?),
                VerifyKind::Mgs => ("mgs", verify_maximal_green(&b, &seq.seq)?),
                VerifyKind::G2r => ("g2r", verify_green_to_red(&b, &seq.seq)?),
            };
            let text = format!(
                "{name} {}: {}",
                seq_text(&seq.seq),
                if holds { "holds" } else { "fails" }
            );
            Ok(Report::new(
                verdict_code(holds),
                text,
                &json!({"kind": name, "sequence": seq.seq, "holds": holds}),
            ))
        }
        Command::Search {
            kind,
            input,
            max_depth,
            strategy,
            no_prune,
            no_obstructions,
            max_states,
        } => {
            let b = load_plain(&input.quiver)?;
            let options = SearchOptions {
                prune_bad_head: !no_prune,
                check_obstructions: !no_obstructions,
                max_states: *max_states,
                strategy: match strategy {
                    StrategyArg::Bfs => SearchStrategy::BreadthFirst,
                    StrategyArg::Iddfs => SearchStrategy::IterativeDeepening,
                },
                ..SearchOptions::default()
            };
            let out = match kind {
                SearchKindArg::Mgs => search_mgs(&b, *max_depth, &options)?,
                SearchKindArg::G2r => search_g2r_with(&b, *max_depth, &options)?,
            };
            Ok(Report::new(0, search_text(&out), &out))
        }
        Command::Class(c) => class(c),
        Command::Obstruct(c) => obstruct(c),
        Command::Cover(c) => cover(c),
        Command::Upper(c) => upper(c),
        Command::Paper(PaperCommand::Reproduce { case }) => {
            let r = paper::reproduce(*case);
            Ok(Report::new(verdict_code(r.all_hold), r.text(), &r))
        }
        Command::Serve { .. } => Err(CliError::Usage("serve runs from the quiverlab binary".into())),
    }
}

fn class(c: &ClassCommand) -> Result<Report, CliError> {
    match c {
        ClassCommand::Enumerate {
            input,
            max_quivers,
            max_multiplicity,
            dump,
        } => {
            let b = load_plain(&input.quiver)?;
            let class = enumerate_class(
                &b,
                ClassCaps {
                    max_quivers: *max_quivers,
                    max_multiplicity: *max_multiplicity,
                },
            )?;
            let mut text = format!(
                "{} quivers{}\n",
                class.len(),
                if class.complete { ", complete" } else { " (partial: a cap was hit)" }
            );
            for (i, m) in class.representatives.iter().enumerate() {
                let _ = writeln!(text, "{:>5}  reached by {}", i + 1, seq_text(&m.sequence));
            }
            if let Some(dir) = dump {
                let (index, files) = class_dump(&class);
                fs::create_dir_all(dir)?;
                for (name, doc) in &files {
                    fs::write(dir.join(name), doc)?;
                }
                fs::write(
                    dir.join("index.json"),
                    serde_json::to_string_pretty(&index).expect("index serializes"),
                )?;
                let _ = writeln!(text, "wrote {} documents to {}", files.len(), dir.display());
            }
            Ok(Report::new(0, text.trim_end().to_string(), &class))
        }
        ClassCommand::Finite { input } => {
            let finite = is_mutation_finite(&load_plain(&input.quiver)?);
            Ok(Report::new(
                0,
                format!("mutation finite: {}", if finite { "yes" } else { "no" }),
                &json!({ "mutation_finite": finite }),
            ))
        }
        ClassCommand::Gcds { input } => {
            let g = column_gcds(&load_plain(&input.quiver)?);
            let text = g.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            Ok(Report::new(0, text, &json!({ "column_gcds": g })))
        }
    }
}

#[derive(Serialize)]
struct CertificateReport<'a> {
    certificate: Option<&'a NoMgsCertificate>,
    /// Whether the independent checker accepted the certificate.
    checked: Option<bool>,
}

fn no_mgs_report(b: &ExchangeMatrix, cert: Option<NoMgsCertificate>) -> Report {
    let checked = cert.as_ref().map(|c| check_no_mgs_certificate(b, c).is_ok());
    let text = match (&cert, checked) {
        (Some(c), Some(ok)) => format!(
            "{}\nchecker: {}",
            certificate_text(c),
            if ok { "accepted" } else { "REJECTED" }
        ),
        _ => "no certificate found (this does not mean a maximal green sequence exists)".into(),
    };
    Report::new(
        0,
        text,
        &CertificateReport {
            certificate: cert.as_ref(),
            checked,
        },
    )
}

fn obstruct(c: &ObstructCommand) -> Result<Report, CliError> {
    match c {
        ObstructCommand::Coloring { input } => {
            let b = load_plain(&input.quiver)?;
            let out = admissible_coloring(&b)?;
            let text = match &out {
                ColoringOutcome::Admissible { coloring } => {
                    let mut t = String::from("admissible colouring:");
                    for a in &coloring.arcs {
                        let _ = write!(t, "\n  {}->{}: {}", a.source + 1, a.target + 1, a.color);
                    }
                    t
                }
                ColoringOutcome::Unsatisfiable { witness } => {
                    let mut t = String::from("no admissible colouring; contradictory cycles:");
                    for c in witness {
                        let kind = if c.oriented { "oriented" } else { "not oriented" };
                        let _ = write!(t, "\n  [{}] {kind}", labels(&c.vertices));
                    }
                    t
                }
            };
            Ok(Report::new(0, text, &out))
        }
        ObstructCommand::Cycle { input } => {
            let cycle = multiple_arrow_cycle(&load_plain(&input.quiver)?);
            let text = match &cycle {
                Some(c) => format!("oriented cycle of multiple arrows: {}", labels(c)),
                None => "no oriented cycle of multiple arrows".into(),
            };
            let one_based = cycle.map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>());
            Ok(Report::new(0, text, &json!({ "cycle": one_based })))
        }
        ObstructCommand::NoMgs { input } => {
            let b = load_plain(&input.quiver)?;
            let cert = no_mgs_certificate(&b);
            Ok(no_mgs_report(&b, cert))
        }
        ObstructCommand::ClassNoMgs { input } => {
            let b = load_plain(&input.quiver)?;
            let cert = class_no_mgs_certificate(&b);
            Ok(no_mgs_report(&b, cert))
        }
    }
}

#[derive(Serialize)]
struct LaReport<'a> {
    #[serde(flatten)]
    outcome: &'a LaOutcome,
    checked: Option<bool>,
}

fn cover(c: &CoverCommand) -> Result<Report, CliError> {
    match c {
        CoverCommand::Pairs { input } => {
            let q = load(&input.quiver)?;
            let pairs = covering_pairs(&q);
            let text = if pairs.is_empty() {
                "no covering pairs".to_string()
            } else {
                pairs
                    .iter()
                    .map(|(i, j)| format!("{}->{}", i + 1, j + 1))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let one_based: Vec<[usize; 2]> = pairs.iter().map(|(i, j)| [i + 1, j + 1]).collect();
            Ok(Report::new(0, text, &json!({ "pairs": one_based })))
        }
        CoverCommand::Certificate { input, depths } => {
            let q = load(&input.quiver)?;
            let caps = CertificateCaps {
                mutation_depth: depths.mutation_depth,
                recursion_depth: depths.recursion_depth,
            };
            let outcome = local_acyclicity_certificate(&q, caps);
            let checked = outcome.certificate().map(|c| check_la_certificate(&q, c).is_ok());
            let text = match (outcome.certificate(), checked) {
                (Some(cert), Some(ok)) => {
                    let mut t = String::new();
                    tree_text(&cert.root, 0, &mut t);
                    let _ = write!(t, "checker: {}", if ok { "accepted" } else { "REJECTED" });
                    t
                }
                _ => format!(
                    "no certificate within mutation depth {} and recursion depth {}",
                    caps.mutation_depth, caps.recursion_depth
                ),
            };
            Ok(Report::new(0, text, &LaReport { outcome: &outcome, checked }))
        }
    }
}

fn upper(c: &UpperCommand) -> Result<Report, CliError> {
    match c {
        UpperCommand::Check { input, poly } => {
            let b = load_plain(&input.quiver)?;
            let p = parse_poly(poly, b.n())?;
            let report = depth1_upper_report(&p, &b);
            let member = report.member();
            let mut text = if member {
                format!("in the initial and all {} adjacent Laurent rings", b.n())
            } else {
                let dirs: Vec<String> = report
                    .failures
                    .iter()
                    .map(|f| format!("{} (power {})", f.direction + 1, f.power))
                    .collect();
                format!("not in the adjacent Laurent ring in direction {}", dirs.join(", "))
            };
            let coprime = is_totally_coprime_over_class(&b, ClassCaps::default())?;
            let _ = write!(
                text,
                "\ncoprime over the {} enumerated class members: {}{}",
                coprime.checked,
                coprime.coprime,
                if coprime.exhaustive { "" } else { " (class enumeration hit a cap)" }
            );
            Ok(Report::new(
                verdict_code(member),
                text,
                &json!({
                    "member": member,
                    "failures": &report.failures,
                    "coprimality": coprime,
                }),
            ))
        }
        UpperCommand::Grading {
            input,
            degrees,
            poly,
        } => {
            let b = load_plain(&input.quiver)?;
            if degrees.len() != b.n() {
                return Err(CliError::Usage(format!(
                    "expected {} degrees, got {}",
                    b.n(),
                    degrees.len()
                )));
            }
            let d = GradingVector(degrees.clone());
            let valid = grading_check(&b, &d);
            let deg = poly.as_deref().map(|t| parse_poly(t, b.n())).transpose()?.map(|p| degree(&p, &d));
            let mut text = format!("grading valid: {}", if valid { "yes" } else { "no" });
            match deg {
                Some(Degree::Homogeneous { degree }) => {
                    let _ = write!(text, "\ndegree: {degree}");
                }
                Some(Degree::NotHomogeneous) => text.push_str("\ndegree: not homogeneous"),
                None => {}
            }
            Ok(Report::new(
                verdict_code(valid),
                text,
                &json!({ "valid": valid, "degree": deg }),
            ))
        }
    }
}
