//! Command dispatch for the `splitgraph` binary, kept in a library so tests
//! can drive it with in-memory output streams.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use splitgraph::audit::{
    audit_pair, classify_order8, exponent2_abelian_check, klein_by_c2_description,
    dihedral_description, matches_published, policy_sweep, reproduce_counterexample, AuditReport,
    Exponent2Report, Order8Classification, PolicySweep, Verdict, PUBLISHED_DS_DIHEDRAL,
    PUBLISHED_DS_KLEIN_BY_C2,
};
use splitgraph::gamma::{build_gamma, InterpretationPolicy};
use splitgraph::invariants::{degree_sequence, export_dot, export_report, summarize, GraphSummary};
use splitgraph::presentation::{
    check_generator_condition, parse_split_description, realize, GeneratorConditionReport,
    Realization, SplitDescription, DEFAULT_MAX_WORD_LEN,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ILL_DEFINED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Graph,
    Ds,
    Audit,
    Counterexample,
    Classify,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Graph => "graph",
            Command::Ds => "ds",
            Command::Audit => "audit",
            Command::Counterexample => "counterexample",
            Command::Classify => "classify",
            Command::Sweep => "sweep",
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Graph | Command::Ds => Format::Text,
            _ => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub policy: InterpretationPolicy,
    /// `None` picks the command's default (text for `graph`/`ds`, JSON
    /// otherwise).
    pub format: Option<Format>,
    pub max_word_len: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            inputs: Vec::new(),
            policy: InterpretationPolicy::default(),
            format: None,
            max_word_len: DEFAULT_MAX_WORD_LEN,
        }
    }

    pub fn with_inputs<P: Into<PathBuf>>(mut self, inputs: impl IntoIterator<Item = P>) -> Self {
        self.inputs = inputs.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = Some(format);
        self
    }

    pub fn with_policy(mut self, policy: InterpretationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(self.command.default_format())
    }

    pub fn validate(&self) -> Result<(), String> {
        let n = self.inputs.len();
        let want = match self.command {
            Command::Graph | Command::Ds => n == 1,
            Command::Audit => n == 2,
            Command::Counterexample | Command::Classify => n == 0,
            Command::Sweep => n == 0 || n == 2,
        };
        if !want {
            let expected = match self.command {
                Command::Graph | Command::Ds => "exactly one input file",
                Command::Audit => "exactly two input files",
                Command::Counterexample | Command::Classify => "no input files",
                Command::Sweep => "zero or two input files",
            };
            return Err(format!("{} takes {expected}, got {n}", self.command.name()));
        }
        if self.format() == Format::Dot && self.command != Command::Graph {
            return Err("--format dot is only valid for the graph command".into());
        }
        if self.max_word_len == 0 {
            return Err("--max-word-len must be positive".into());
        }
        Ok(())
    }
}

/// Runs one command. Results go to `out`, diagnostics to `err`.
///
/// Exit status: 0 on success, 2 when `audit` finds an ill-definedness
/// witness, 1 on any error (and when `counterexample` or `classify` fail to
/// confirm their expected results).
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn input_names(config: &RunConfig) -> Vec<String> {
    config.inputs.iter().map(|p| p.display().to_string()).collect()
}

fn load(path: &PathBuf) -> Result<SplitDescription, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_split_description(&text).map_err(|e| format!("{}:{e}", path.display()))
}

fn load_realized(path: &PathBuf) -> Result<Realization, String> {
    let d = load(path)?;
    realize(&d).map_err(|e| format!("{}: {e}", path.display()))
}

fn dispatch(config: &RunConfig) -> Result<(String, i32), String> {
    config.validate()?;
    let inputs = input_names(config);
    let policy = &config.policy;
    let format = config.format();
    let name = config.command.name();
    match config.command {
        Command::Graph => {
            let r = load_realized(&config.inputs[0])?;
            let g = build_gamma(&r, policy);
            let generator_condition = check_generator_condition(&r, config.max_word_len);
            let text = match format {
                Format::Dot => export_dot(&g),
                Format::Json => export_report(
                    name,
                    Some(policy),
                    &inputs,
                    &GraphResults {
                        order: r.group().order(),
                        graph: summarize(&g),
                        generator_condition,
                    },
                ),
                Format::Text => graph_text(&r, &summarize(&g), policy, &generator_condition),
            };
            Ok((text, EXIT_OK))
        }
        Command::Ds => {
            let r = load_realized(&config.inputs[0])?;
            let ds = degree_sequence(&build_gamma(&r, policy));
            let text = match format {
                Format::Json => export_report(name, Some(policy), &inputs, &ds),
                _ => format!("{ds}\n"),
            };
            Ok((text, EXIT_OK))
        }
        Command::Audit => {
            let d1 = load(&config.inputs[0])?;
            let d2 = load(&config.inputs[1])?;
            let report = audit_pair(&d1, &d2, policy).map_err(|e| match &e {
                splitgraph::audit::AuditError::Realization { which, source } => {
                    format!("{}: {source}", config.inputs[which - 1].display())
                }
                other => other.to_string(),
            })?;
            let code = if report.verdict == Verdict::IllDefinedWitness {
                EXIT_ILL_DEFINED
            } else {
                EXIT_OK
            };
            let text = match format {
                Format::Json => export_report(name, Some(policy), &inputs, &report),
                _ => audit_text(&report),
            };
            Ok((text, code))
        }
        Command::Counterexample => {
            // always the built-in pair under the default policy
            let report = reproduce_counterexample();
            let results = CounterexampleResults {
                matches_published: matches_published(&report),
                published: [PUBLISHED_DS_DIHEDRAL.to_vec(), PUBLISHED_DS_KLEIN_BY_C2.to_vec()],
                report,
            };
            let code = if results.matches_published { EXIT_OK } else { EXIT_ERROR };
            let text = match format {
                Format::Json => export_report(
                    name,
                    Some(&InterpretationPolicy::default()),
                    &inputs,
                    &results,
                ),
                _ => {
                    let mut s = audit_text(&results.report);
                    let _ = writeln!(s, "matches published sequences: {}", yes_no(results.matches_published));
                    s
                }
            };
            Ok((text, code))
        }
        Command::Classify => {
            let results = ClassifyResults {
                order8: classify_order8(),
                exponent2: exponent2_abelian_check(4).map_err(|e| e.to_string())?,
            };
            let ok = results.order8.passed() && results.exponent2.holds;
            let text = match format {
                Format::Json => export_report(name, None, &inputs, &results),
                _ => classify_text(&results),
            };
            Ok((text, if ok { EXIT_OK } else { EXIT_ERROR }))
        }
        Command::Sweep => {
            let (d1, d2) = if config.inputs.is_empty() {
                (dihedral_description(), klein_by_c2_description())
            } else {
                (load(&config.inputs[0])?, load(&config.inputs[1])?)
            };
            let sweep = policy_sweep(&d1, &d2, &InterpretationPolicy::all())
                .map_err(|e| e.to_string())?;
            let text = match format {
                Format::Json => export_report(name, None, &inputs, &sweep),
                _ => sweep_text(&sweep),
            };
            Ok((text, EXIT_OK))
        }
    }
}

#[derive(Serialize)]
struct GraphResults {
    order: usize,
    graph: GraphSummary,
    generator_condition: GeneratorConditionReport,
}

#[derive(Serialize)]
struct CounterexampleResults {
    report: AuditReport,
    published: [Vec<usize>; 2],
    matches_published: bool,
}

#[derive(Serialize)]
struct ClassifyResults {
    order8: Order8Classification,
    exponent2: Exponent2Report,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn graph_text(
    r: &Realization,
    g: &GraphSummary,
    policy: &InterpretationPolicy,
    cond: &GeneratorConditionReport,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "order: {}", r.group().order());
    let _ = writeln!(s, "policy: {policy}");
    let _ = writeln!(s, "vertices:");
    for v in &g.vertices {
        let _ = writeln!(s, "  {:>3}  {:<12} degree {}", v.element, v.word, v.degree);
    }
    let _ = writeln!(s, "edges: {}", g.edge_count);
    for [a, b] in &g.edges {
        let _ = writeln!(s, "  {a} -- {b}");
    }
    let _ = writeln!(s, "degree sequence: {}", g.degree_sequence);
    let _ = writeln!(s, "connected: {}", yes_no(g.connected));
    if let Some(d) = g.diameter {
        let _ = writeln!(s, "diameter: {d}");
    }
    if cond.passed() {
        let _ = writeln!(s, "generator condition: no violation up to length {}", cond.max_len);
    } else {
        let _ = writeln!(s, "generator condition: violated (searched up to length {})", cond.max_len);
        for c in cond.violations() {
            let _ = writeln!(s, "  {} = {}", c.generator, c.witness.as_deref().unwrap_or(""));
        }
    }
    s
}

fn audit_text(r: &AuditReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", r.verdict);
    let _ = writeln!(s, "policy: {}", r.policy);
    let _ = writeln!(s, "groups isomorphic: {}", yes_no(r.groups_isomorphic));
    let _ = writeln!(
        s,
        "degree sequences: {} vs {}",
        r.degree_sequences[0], r.degree_sequences[1]
    );
    let _ = writeln!(s, "edge counts: {} vs {}", r.edge_counts[0], r.edge_counts[1]);
    s
}

fn classify_text(c: &ClassifyResults) -> String {
    let mut s = String::new();
    for g in &c.order8.groups {
        let _ = writeln!(
            s,
            "{:<6} abelian={} exponent={} involutions={}",
            g.name,
            yes_no(g.abelian),
            g.exponent,
            g.involutions
        );
    }
    let _ = writeln!(s, "pairwise non-isomorphic: {}", yes_no(c.order8.pairwise_non_isomorphic));
    let _ = writeln!(s, "nonabelian groups: {}", c.order8.nonabelian_count);
    let _ = writeln!(
        s,
        "involutions in the V4 kernel of V4:C2: {}",
        c.order8.klein_kernel_involutions
    );
    let _ = writeln!(
        s,
        "semidirect products of order 8 classified: {}/{}",
        c.order8.corpus.iter().filter(|e| e.isomorphic_to.is_some()).count(),
        c.order8.corpus.len()
    );
    let _ = writeln!(s, "exponent 2 implies abelian: {}", yes_no(c.exponent2.holds));
    s
}

fn sweep_text(sweep: &PolicySweep) -> String {
    let mut s = String::new();
    for r in &sweep.reports {
        let _ = writeln!(
            s,
            "{}  {} vs {}  {}",
            r.policy, r.degree_sequences[0], r.degree_sequences[1], r.verdict
        );
    }
    let _ = writeln!(s, "any policy consistent: {}", yes_no(sweep.any_consistent));
    let _ = writeln!(s, "scope: {}", sweep.scope);
    s
}
