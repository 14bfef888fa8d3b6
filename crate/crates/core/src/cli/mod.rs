//! Command implementations behind the `qzero` binary. Each command returns a
//! [`Report`]; printing and exit codes are decided from it.

pub mod reproduce;

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::channel::{ChannelFile, KrausChannel};
use crate::constructions::certificates::fixture_knowledge;
use crate::constructions::synthesis::{synthesize, PseudoDiagonalSpec};
use crate::error::Error;
use crate::gaussian::{classify_zero_error, GaussianClassification, GaussianFile, GaussianSpec};
use crate::rank1::certificate::{Certificate, Subject, Verdict};
use crate::rank1::{is_transitive, SearchConfig};
use crate::subspace::{Subspace, SubspaceFile};
use crate::zeroerr::ledger::{nonsuperactivation_ledger, LedgerChannel};
use crate::zeroerr::superactivation::{ri2_classify_subject, Ri2};
use crate::zeroerr::{commutant_analysis, qbar0_positive, PositivityVerdict, Route, Status, ZeroErrorContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    /// Wall-clock budget for each top-level decision; `None` runs every strategy to completion.
    pub budget_ms: Option<u64>,
    pub max_denominator: u64,
    pub format: Format,
    pub deep: bool,
    pub verbose: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SearchConfig::default();
        RunConfig { seed: s.seed, budget_ms: None, max_denominator: s.max_denominator, format: Format::Text, deep: false, verbose: false }
    }
}

impl RunConfig {
    /// Fresh search settings; the deadline starts now.
    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            seed: self.seed,
            max_denominator: self.max_denominator,
            deadline: self.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
            ..SearchConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub index: usize,
    pub check: String,
    pub outcome: Outcome,
    pub detail: Value,
}

/// A re-checkable object produced by a command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Artifact {
    Verdict(VerdictFile),
    Gaussian(GaussianVerdictFile),
    Certificate(Certificate),
}

/// A positivity verdict bundled with the graph it is about.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictFile {
    pub kind: String,
    pub subject: Subject,
    pub verdict: PositivityVerdict,
    /// SHA-256 of the JSON of `(subject, verdict)`.
    pub digest: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaussianVerdictFile {
    pub kind: String,
    pub spec: GaussianSpec,
    pub cbar0: crate::gaussian::GaussianCapacity,
    pub qbar0: crate::gaussian::GaussianCapacity,
    pub kernel_dim: usize,
    pub digest: String,
}

fn digest_of<T: Serialize>(body: &T) -> String {
    let json = serde_json::to_string(body).expect("artifact body serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

impl VerdictFile {
    fn compute_digest(&self) -> String {
        digest_of(&(&self.subject, &self.verdict))
    }
}

impl GaussianVerdictFile {
    fn compute_digest(&self) -> String {
        digest_of(&(&self.spec, self.cbar0, self.qbar0, self.kernel_dim))
    }
}

impl Artifact {
    pub fn verdict(subject: Subject, verdict: PositivityVerdict) -> Self {
        let mut v = VerdictFile { kind: "verdict".into(), subject, verdict, digest: String::new() };
        v.digest = v.compute_digest();
        Artifact::Verdict(v)
    }

    pub fn gaussian(spec: GaussianSpec, c: &GaussianClassification) -> Self {
        let mut g = GaussianVerdictFile {
            kind: "gaussian_verdict".into(),
            spec,
            cbar0: c.cbar0,
            qbar0: c.qbar0,
            kernel_dim: c.kernel_dim,
            digest: String::new(),
        };
        g.digest = g.compute_digest();
        Artifact::Gaussian(g)
    }

    /// Exact re-check without any search.
    pub fn verify(&self) -> Result<(), Error> {
        match self {
            Artifact::Certificate(c) => c.verify(),
            Artifact::Verdict(v) => {
                if v.kind != "verdict" {
                    return Err(Error::Parse(format!("unknown artifact kind {:?}", v.kind)));
                }
                if v.digest != v.compute_digest() {
                    return Err(Error::Certificate("digest does not match verdict body".into()));
                }
                v.verdict.verify(&v.subject)
            }
            Artifact::Gaussian(g) => {
                if g.kind != "gaussian_verdict" {
                    return Err(Error::Parse(format!("unknown artifact kind {:?}", g.kind)));
                }
                if g.digest != g.compute_digest() {
                    return Err(Error::Certificate("digest does not match verdict body".into()));
                }
                let c = classify_zero_error(&g.spec)?;
                if (c.cbar0, c.qbar0, c.kernel_dim) == (g.cbar0, g.qbar0, g.kernel_dim) {
                    Ok(())
                } else {
                    Err(Error::Certificate("Gaussian classification differs from the recorded one".into()))
                }
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
    #[serde(skip)]
    pub artifacts: Vec<(String, Artifact)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: impl Into<String>, outcome: Outcome, detail: Value) {
        let index = self.records.len();
        self.records.push(Record { index, check: check.into(), outcome, detail });
    }

    pub fn pass_if(&mut self, check: impl Into<String>, ok: bool, detail: Value) {
        self.push(check, if ok { Outcome::Pass } else { Outcome::Fail }, detail);
    }

    pub fn info(&mut self, check: impl Into<String>, detail: Value) {
        self.push(check, Outcome::Info, detail);
    }

    pub fn artifact(&mut self, name: impl Into<String>, a: Artifact) {
        self.artifacts.push((name.into(), a));
    }

    /// Record a verdict and keep it as an artifact when it is decided.
    pub fn verdict(&mut self, check: &str, subject: &Subject, v: &PositivityVerdict) {
        let outcome = match v.verify(subject) {
            Err(e) => {
                self.push(check, Outcome::Fail, json!({ "error": e.to_string() }));
                return;
            }
            Ok(()) if v.status == Status::Undecided => Outcome::Undecided,
            Ok(()) => Outcome::Pass,
        };
        self.push(check, outcome, verdict_summary(v));
        if v.status != Status::Undecided {
            self.artifact(check, Artifact::verdict(subject.clone(), v.clone()));
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.outcome != Outcome::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            EXIT_INCONSISTENT
        } else if self.records.iter().any(|r| r.outcome == Outcome::Undecided) {
            EXIT_UNDECIDED
        } else {
            EXIT_OK
        }
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == outcome).count()
    }

    /// Newline-delimited records, or one aligned line per record.
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                for r in &self.records {
                    out.push_str(&serde_json::to_string(r).expect("records serialize"));
                    out.push('\n');
                }
                let summary = json!({
                    "command": self.command,
                    "exit": self.exit_code(),
                    "pass": self.count(Outcome::Pass),
                    "fail": self.count(Outcome::Fail),
                    "undecided": self.count(Outcome::Undecided),
                });
                out.push_str(&summary.to_string());
                out.push('\n');
            }
            Format::Text => {
                for r in &self.records {
                    let tag = match r.outcome {
                        Outcome::Pass => "PASS",
                        Outcome::Fail => "FAIL",
                        Outcome::Undecided => "UNDECIDED",
                        Outcome::Info => "info",
                    };
                    out.push_str(&format!("{:>3} {:<9} {}  {}\n", r.index, tag, r.check, r.detail));
                }
                let status = match self.exit_code() {
                    EXIT_OK => "PASS",
                    EXIT_UNDECIDED => "UNDECIDED",
                    _ => "FAIL",
                };
                out.push_str(&format!(
                    "{}: {status} ({} pass, {} fail, {} undecided)\n",
                    self.command,
                    self.count(Outcome::Pass),
                    self.count(Outcome::Fail),
                    self.count(Outcome::Undecided)
                ));
            }
        }
        out
    }

    /// Write each artifact as `NN-name.json` under `dir`.
    pub fn emit(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>, Error> {
        fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for (k, (name, a)) in self.artifacts.iter().enumerate() {
            let slug: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '-' }).collect();
            let p = dir.join(format!("{k:02}-{slug}.json"));
            fs::write(&p, serde_json::to_string_pretty(a)?)?;
            paths.push(p);
        }
        Ok(paths)
    }
}

pub fn verdict_summary(v: &PositivityVerdict) -> Value {
    let mut d = json!({
        "capacity": v.capacity,
        "status": v.status,
        "route": v.route,
    });
    if let Some(c) = &v.certificate {
        d["certificate"] = json!({ "verdict": c.verdict, "strategy": c.strategy, "evidence": c.evidence.kind() });
    }
    if v.witness.is_some() {
        d["witness"] = json!(true);
    }
    if !v.note.is_empty() {
        d["note"] = json!(v.note);
    }
    d
}

pub fn certificate_summary(c: &Certificate) -> Value {
    json!({ "verdict": c.verdict, "strategy": c.strategy, "evidence": c.evidence.kind(), "digest": c.digest })
}

/// Input files, dispatched on `"kind"`.
pub enum InputFile {
    Subspace(Subspace),
    Channel(KrausChannel),
    Gaussian(GaussianSpec),
}

pub fn parse_input(text: &str) -> Result<InputFile, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing \"kind\"".into()))?;
    let parse = |e: serde_json::Error| Error::Parse(e.to_string());
    match kind {
        "subspace" => {
            let f: SubspaceFile = serde_json::from_value(v).map_err(parse)?;
            Ok(InputFile::Subspace(f.to_subspace()?))
        }
        "channel" => {
            let f: ChannelFile = serde_json::from_value(v).map_err(parse)?;
            Ok(InputFile::Channel(KrausChannel::from_file(f)?))
        }
        "gaussian" => {
            let f: GaussianFile = serde_json::from_value(v).map_err(parse)?;
            Ok(InputFile::Gaussian(GaussianSpec::from_file(f)?))
        }
        other => Err(Error::Parse(format!("unknown kind {other:?}"))),
    }
}

pub fn read_input(path: &Path) -> Result<InputFile, Error> {
    parse_input(&fs::read_to_string(path)?)
}

fn context(cfg: &RunConfig) -> Result<ZeroErrorContext, Error> {
    ZeroErrorContext::with_fixtures(cfg.search())
}

/// Transitivity and, for graphs, both positivity verdicts plus the commutant analysis.
fn check_graph_space(r: &mut Report, g: &Subspace, ctx: &ZeroErrorContext) -> Result<(), Error> {
    let subject = Subject::Space { space: g.clone() };
    let t = is_transitive(g, &ctx.knowledge, &ctx.config);
    match t.verify() {
        Ok(()) => {
            let o = if t.verdict == Verdict::Undecided { Outcome::Undecided } else { Outcome::Pass };
            r.push("transitivity", o, certificate_summary(&t));
            if t.verdict != Verdict::Undecided {
                r.artifact("transitivity", Artifact::Certificate(t.clone()));
            }
        }
        Err(e) => r.push("transitivity", Outcome::Fail, json!({ "error": e.to_string() })),
    }
    if !(g.is_symmetric() && g.contains_identity()) {
        r.info("positivity", json!({ "skipped": "not the graph of a channel: needs a symmetric subspace containing I" }));
        return Ok(());
    }
    let ri2 = ri2_classify_subject(&subject, ctx)?;
    r.verdict("cbar0", &subject, &ri2.verdicts.cbar0);
    let q = if ri2.verdicts.qbar0.route == Route::ClassicalZero { ri2.verdicts.qbar0.clone() } else { qbar0_positive(&subject, ctx)? };
    r.verdict("qbar0", &subject, &q);
    let o = if matches!(ri2.ri2, Ri2::Undecided { .. }) { Outcome::Undecided } else { Outcome::Pass };
    r.push("ri2", o, serde_json::to_value(ri2.ri2)?);
    r.info("commutant", serde_json::to_value(commutant_analysis(g))?);
    Ok(())
}

pub fn cmd_check(path: &Path, cfg: &RunConfig) -> Result<Report, Error> {
    let input = read_input(path)?;
    check_input(&input, cfg)
}

pub fn check_input(input: &InputFile, cfg: &RunConfig) -> Result<Report, Error> {
    let mut r = Report::new("check");
    match input {
        InputFile::Subspace(g) => {
            r.info("subspace", json!({ "ambient": g.ambient(), "dim": g.dim() }));
            r.info("symmetric", json!(g.is_symmetric()));
            r.info("contains_identity", json!(g.contains_identity()));
            check_graph_space(&mut r, g, &context(cfg)?)?;
        }
        InputFile::Channel(ch) => {
            r.pass_if("valid", true, json!({ "dim_in": ch.dim_in(), "dim_out": ch.dim_out(), "kraus": ch.kraus().len(), "choi_rank": ch.choi_rank() }));
            let g = ch.graph();
            r.pass_if(
                "graph",
                g.is_symmetric() && g.contains_identity(),
                json!({ "dim": g.dim(), "symmetric": g.is_symmetric(), "contains_identity": g.contains_identity() }),
            );
            check_graph_space(&mut r, &g, &context(cfg)?)?;
            let ledger = nonsuperactivation_ledger(&LedgerChannel::finite(ch), None);
            r.info("ledger", serde_json::to_value(&ledger)?);
        }
        InputFile::Gaussian(spec) => {
            r.pass_if("valid", spec.validate()?, json!({ "s_a": spec.s_a, "s_b": spec.s_b }));
            let c = classify_zero_error(spec)?;
            r.pass_if("classification", true, serde_json::to_value(&c)?);
            r.artifact("gaussian", Artifact::gaussian(spec.clone(), &c));
        }
    }
    Ok(r)
}

/// Parse errors surface as `Error::Parse` (exit 64); failed checks as a FAIL record.
pub fn cmd_verify(path: &Path) -> Result<Report, Error> {
    let text = fs::read_to_string(path)?;
    verify_text(&text)
}

pub fn verify_text(text: &str) -> Result<Report, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if !(v.get("subject").is_some() || v.get("spec").is_some()) {
        return Err(Error::Parse("not a certificate or verdict file".into()));
    }
    let mut r = Report::new("verify");
    // well-formed JSON of the right shape that no longer deserializes has been altered
    let a: Artifact = match serde_json::from_value(v) {
        Ok(a) => a,
        Err(e) => {
            r.pass_if("verify", false, json!({ "error": format!("malformed artifact: {e}") }));
            return Ok(r);
        }
    };
    let what = match &a {
        Artifact::Certificate(c) => certificate_summary(c),
        Artifact::Verdict(v) => verdict_summary(&v.verdict),
        Artifact::Gaussian(g) => json!({ "cbar0": g.cbar0, "qbar0": g.qbar0 }),
    };
    match a.verify() {
        Ok(()) => r.pass_if("verify", true, what),
        Err(Error::Parse(e)) => return Err(Error::Parse(e)),
        Err(e) => r.pass_if("verify", false, json!({ "error": e.to_string(), "artifact": what })),
    }
    Ok(r)
}

/// Synthesize a channel for the subspace and check its graph equals the input.
pub fn cmd_synthesize(path: &Path, out: Option<&Path>) -> Result<(Report, Option<PseudoDiagonalSpec>), Error> {
    let g = match read_input(path)? {
        InputFile::Subspace(g) => g,
        _ => return Err(Error::Parse("synthesize needs a subspace file".into())),
    };
    let mut r = Report::new("synthesize");
    let spec = match synthesize(&g) {
        Ok(s) => s,
        Err(Error::Invalid(msg)) => {
            r.pass_if("graph conditions", false, json!({ "violated": msg, "needs": "symmetric subspace containing the identity" }));
            return Ok((r, None));
        }
        Err(e) => return Err(e),
    };
    r.pass_if("graph conditions", true, json!({ "symmetric": true, "contains_identity": true }));
    r.pass_if("valid", spec.validate().is_ok(), json!({ "n": spec.n, "d": spec.d, "m": spec.m }));
    r.pass_if("graph equality", spec.graph() == g, json!({ "dim": g.dim() }));
    r.info("dims", json!({ "n": spec.n, "d": spec.d, "m": spec.m, "choi_rank": spec.choi_rank(), "output_bound": spec.output_bound() }));
    if let Some(p) = out {
        fs::write(p, serde_json::to_string_pretty(&spec)?)?;
    }
    Ok((r, Some(spec)))
}

pub(crate) fn knowledge_only(cfg: &RunConfig) -> Result<ZeroErrorContext, Error> {
    Ok(ZeroErrorContext::new(fixture_knowledge()?, cfg.search()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subspace_json(g: &Subspace) -> String {
        serde_json::to_string(&SubspaceFile::from(g)).unwrap()
    }

    #[test]
    fn theorem1_file_is_transitive_with_zero_cbar0() {
        let g = crate::constructions::fixtures::l_theorem1();
        let r = check_input(&parse_input(&subspace_json(&g)).unwrap(), &RunConfig::default()).unwrap();
        let rec = |name: &str| r.records.iter().find(|x| x.check == name).unwrap().clone();
        assert_eq!(rec("transitivity").detail["verdict"], json!("TRANSITIVE"));
        assert_eq!(rec("cbar0").detail["status"], json!("ZERO"));
        assert_eq!(r.exit_code(), EXIT_OK);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(parse_input("{\"kind\": \"subspace\", \"ambient\": 2"), Err(Error::Parse(_))));
        assert!(matches!(parse_input("{\"kind\": \"moon\"}"), Err(Error::Parse(_))));
    }

    #[test]
    fn structured_output_is_deterministic() {
        let g = crate::constructions::fixtures::remark1_subspace();
        let input = parse_input(&subspace_json(&g)).unwrap();
        let cfg = RunConfig { format: Format::Json, ..RunConfig::default() };
        let a = check_input(&input, &cfg).unwrap().render(Format::Json);
        let b = check_input(&input, &cfg).unwrap().render(Format::Json);
        assert_eq!(a, b);
    }
}
