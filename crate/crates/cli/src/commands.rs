use std::time::Instant;

use trivext_core::algebra::{build_algebra, FDAlgebra};
use trivext_core::corpus::{run_corpus, CorpusOptions};
use trivext_core::criteria::{hhdim_verdict_for_algebra, verify_certificate, Certificate, Conclusion, VerdictOptions};
use trivext_core::hochschild::{hh_dims, HHOptions, Variant};
use trivext_core::quiver::parse_presentation;
use trivext_core::report::{summarize_algebra, summarize_cartan, summarize_trivial_extension};
use trivext_core::trivial_ext::{graded_trivial_extension, trivial_extension};
use trivext_core::Error;

use crate::report::{CartanSection, Corroboration, HHCheck, Input, RunReport, StageTime};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_CAP: i32 = 4;

pub struct Outcome {
    pub report: RunReport,
    pub exit: i32,
    /// Message for stderr.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(report: RunReport) -> Self {
        Outcome {
            report,
            exit: EXIT_CERTIFIED,
            diagnostic: None,
        }
    }
}

/// Failure before a report exists.
pub struct Failure {
    pub exit: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Invariant(_) => EXIT_FAILURE,
            _ => EXIT_INPUT,
        };
        Failure {
            exit,
            message: e.to_string(),
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

/// Per-stage wall clock, kept only when requested.
pub struct Clock {
    enabled: bool,
    stages: Vec<StageTime>,
}

impl Clock {
    pub fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            stages: Vec::new(),
        }
    }

    pub fn stage<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.stages.push(StageTime {
                stage: name,
                millis: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        out
    }

    pub fn finish(self, report: &mut RunReport) {
        if self.enabled {
            report.timing = Some(self.stages);
        }
    }
}

pub struct Loaded {
    pub input: Input,
    pub algebra: FDAlgebra,
}

pub fn load(path: &str, clock: &mut Clock) -> Result<Loaded, Failure> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure {
        exit: EXIT_INPUT,
        message: format!("cannot read {path}: {e}"),
    })?;
    let algebra = clock.stage("build", || -> Result<FDAlgebra, Error> {
        build_algebra(&parse_presentation(&text)?)
    })?;
    Ok(Loaded {
        input: Input::new(path, &text),
        algebra,
    })
}

pub fn info(path: &str, clock: &mut Clock) -> CmdResult {
    let l = load(path, clock)?;
    let mut r = RunReport::new("info");
    r.algebra = Some(clock.stage("summary", || summarize_algebra(&l.algebra)));
    r.input = Some(l.input);
    Ok(Outcome::ok(r))
}

pub fn trivext(path: &str, graded: bool, relations_cap: Option<usize>, clock: &mut Clock) -> CmdResult {
    let l = load(path, clock)?;
    let mut r = RunReport::new("trivext");
    r.option("graded", graded);
    r.option("relations_cap", relations_cap);
    let data = clock.stage("extend", || {
        if graded {
            graded_trivial_extension(&l.algebra)
        } else {
            Ok(trivial_extension(&l.algebra))
        }
    })?;
    r.algebra = Some(summarize_algebra(&l.algebra));
    r.trivial_extension = Some(clock.stage("relations", || summarize_trivial_extension(&data, Some(relations_cap)))?);
    r.input = Some(l.input);
    Ok(Outcome::ok(r))
}

pub fn verdict(path: &str, extend: bool, hh_check: Option<usize>, clock: &mut Clock) -> CmdResult {
    let l = load(path, clock)?;
    let hh_options = HHOptions::from_env()?;
    let mut r = RunReport::new("verdict");
    r.option("extend", extend);
    r.option("hh_check", hh_check);
    let judged = clock.stage("verdict", || hhdim_verdict_for_algebra(&l.algebra, VerdictOptions { extend }));
    let v = judged.verdict;
    let certified = v.conclusion == Conclusion::InfiniteHHdim;
    if let Some(Certificate::TruncatedCycle(c)) = &v.certificate {
        r.certificate_verified = Some(verify_certificate(&judged.algebra, c).is_ok());
    }
    let mut exit = if certified { EXIT_CERTIFIED } else { EXIT_UNKNOWN };
    let mut diagnostic = None;
    if let Some(n) = hh_check {
        r.option("dim_cap", hh_options.cap);
        let report = clock.stage("homology", || hh_dims(&judged.algebra, n, &hh_options))?;
        let degrees: Vec<Corroboration> = report
            .dims
            .iter()
            .filter(|h| h.n >= 1)
            .map(|h| Corroboration {
                n: h.n,
                dim: h.dim,
                nonzero: h.dim > 0,
            })
            .collect();
        let consistent = !certified || degrees.iter().all(|c| c.nonzero);
        if let Some(hit) = &report.cap_hit {
            exit = EXIT_CAP;
            diagnostic = Some(format!(
                "chain module in degree {} needs {} tuples, cap is {}; set TRIVEXT_DIM_CAP to raise it",
                hit.degree, hit.required, hit.cap
            ));
        }
        r.hh_check = Some(HHCheck {
            report,
            degrees,
            consistent,
        });
    }
    r.algebra = Some(summarize_algebra(&l.algebra));
    r.verdict = Some(v);
    r.input = Some(l.input);
    Ok(Outcome {
        report: r,
        exit,
        diagnostic,
    })
}

pub fn cartan(path: &str, clock: &mut Clock) -> CmdResult {
    let l = load(path, clock)?;
    let mut r = RunReport::new("cartan");
    let mut section = CartanSection {
        algebra: None,
        algebra_note: None,
        trivial_extension: None,
        trivial_extension_note: None,
    };
    clock.stage("cartan", || {
        match l.algebra.graded_version() {
            Some(g) => match summarize_cartan(&g, false) {
                Ok(s) => section.algebra = Some(s),
                Err(e) => section.algebra_note = Some(e.to_string()),
            },
            None => section.algebra_note = Some("no grading available".into()),
        }
        match graded_trivial_extension(&l.algebra).and_then(|t| summarize_cartan(t.t(), true)) {
            Ok(s) => section.trivial_extension = Some(s),
            Err(e) => section.trivial_extension_note = Some(e.to_string()),
        }
    });
    r.algebra = Some(summarize_algebra(&l.algebra));
    r.cartan = Some(section);
    r.input = Some(l.input);
    Ok(Outcome::ok(r))
}

pub fn hh(path: &str, max: usize, full_bar: bool, clock: &mut Clock) -> CmdResult {
    let l = load(path, clock)?;
    let mut options = HHOptions::from_env()?;
    if full_bar {
        options.variant = Variant::Full;
    }
    let mut r = RunReport::new("hh");
    r.option("max", max);
    r.option("full_bar", full_bar);
    r.option("dim_cap", options.cap);
    let report = clock.stage("homology", || hh_dims(&l.algebra, max, &options))?;
    let diagnostic = report.cap_hit.as_ref().map(|hit| {
        format!(
            "chain module in degree {} needs {} tuples, cap is {}; set TRIVEXT_DIM_CAP to raise it",
            hit.degree, hit.required, hit.cap
        )
    });
    let exit = if diagnostic.is_some() { EXIT_CAP } else { EXIT_CERTIFIED };
    r.hh = Some(report);
    r.input = Some(l.input);
    Ok(Outcome {
        report: r,
        exit,
        diagnostic,
    })
}

pub fn corpus(clock: &mut Clock) -> CmdResult {
    let mut r = RunReport::new("corpus");
    let report = clock.stage("corpus", || run_corpus(&CorpusOptions::default()));
    let diagnostic = report
        .first_failure()
        .map(|c| format!("criterion {} ({}) failed: {}", c.criterion, c.name, c.detail));
    let exit = if report.all_passed { EXIT_CERTIFIED } else { EXIT_FAILURE };
    r.corpus = Some(report);
    Ok(Outcome {
        report: r,
        exit,
        diagnostic,
    })
}
