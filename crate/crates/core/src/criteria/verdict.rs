//! Running the criteria in order and recording what each one found.

use serde::Serialize;

use super::cartan::{cartan_criterion, graded_cartan, CartanOutcome, GradedCartanData};
use super::cycles::{find_two_truncated_cycle, find_two_truncated_cycle_among, TruncatedCycleCertificate};
use crate::algebra::{build_algebra, FDAlgebra, SelfinjectivityCertificate};
use crate::error::Result;
use crate::linalg::IntPolynomial;
use crate::quiver::Presentation;
use crate::trivial_ext::{graded_trivial_extension, trivial_extension, TrivialExtensionData};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Judge `T(A)` instead of `A`.
    pub extend: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    InfiniteHHdim,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    TruncatedCycle(TruncatedCycleCertificate),
    CartanDeterminant { determinant: IntPolynomial, rendered: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub criterion: String,
    pub fired: bool,
    pub detail: String,
}

/// Which hypotheses of the infinite-dimension theorems the base algebra
/// meets, when judging a trivial extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub local: bool,
    pub selfinjective: Option<SelfinjectivityCertificate>,
    pub graded: bool,
    pub left_socle_in_bimodule_socle: bool,
}

impl Hypotheses {
    pub fn any(&self) -> bool {
        self.local || self.selfinjective.is_some() || self.graded
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// `"A"` or `"T(A)"`.
    pub subject: String,
    pub conclusion: Conclusion,
    pub certificate: Option<Certificate>,
    pub trace: Vec<TraceEntry>,
    pub hypotheses: Option<Hypotheses>,
    pub cartan: Option<GradedCartanData>,
}

/// What the verdict was computed on, kept for further analysis.
pub struct Judged {
    pub verdict: Verdict,
    pub algebra: FDAlgebra,
    pub extension: Option<TrivialExtensionData>,
}

pub fn hhdim_verdict(p: &Presentation, options: VerdictOptions) -> Result<Verdict> {
    Ok(hhdim_verdict_for_algebra(&build_algebra(p)?, options).verdict)
}

pub fn hhdim_verdict_for_algebra(a: &FDAlgebra, options: VerdictOptions) -> Judged {
    let mut trace = Vec::new();
    let (subject, algebra, extension, hypotheses) = if options.extend {
        let graded_ext = graded_trivial_extension(a).ok();
        let graded = graded_ext.is_some();
        let t = graded_ext.unwrap_or_else(|| trivial_extension(a));
        let h = Hypotheses {
            local: a.is_local(),
            selfinjective: a.is_selfinjective().ok(),
            graded,
            left_socle_in_bimodule_socle: a.left_socle_in_bimodule_socle(),
        };
        ("T(A)".to_string(), t.algebra.clone(), Some(t), Some(h))
    } else {
        ("A".to_string(), a.clone(), None, None)
    };

    let cycle = find_two_truncated_cycle(&algebra);
    trace.push(TraceEntry {
        criterion: "two_truncated_cycle".into(),
        fired: cycle.is_some(),
        detail: match &cycle {
            Some(c) => format!("cycle {}", c.names.join(", ")),
            None => "zero composition graph is acyclic".into(),
        },
    });

    if let (Some(t), Some(h)) = (&extension, &hypotheses) {
        if h.selfinjective.is_some() || h.left_socle_in_bimodule_socle {
            let new: Vec<usize> = (t.old_arrow_count..algebra.arrows().len()).collect();
            let restricted = find_two_truncated_cycle_among(&algebra, &new);
            trace.push(TraceEntry {
                criterion: "two_truncated_cycle_new_arrows".into(),
                fired: restricted.is_some(),
                detail: match &restricted {
                    Some(c) => format!("cycle {}", c.names.join(", ")),
                    None => "no cycle among the new arrows".into(),
                },
            });
        }
    }

    let graded = algebra.graded_version();
    let mut cartan = None;
    let mut cartan_outcome = None;
    match graded.as_ref().map(graded_cartan) {
        Some(Ok(g)) => {
            let outcome = cartan_criterion(&g, algebra.field().characteristic());
            trace.push(TraceEntry {
                criterion: "graded_cartan_determinant".into(),
                fired: matches!(outcome, CartanOutcome::InfiniteHHdim { .. }),
                detail: match &outcome {
                    CartanOutcome::InfiniteHHdim { determinant } => format!("det C(x) = {determinant}"),
                    CartanOutcome::Inconclusive { reason } => format!("{reason} (det C(x) = {})", g.determinant),
                },
            });
            cartan = Some(g);
            cartan_outcome = Some(outcome);
        }
        Some(Err(e)) => trace.push(TraceEntry {
            criterion: "graded_cartan_determinant".into(),
            fired: false,
            detail: e.to_string(),
        }),
        None => trace.push(TraceEntry {
            criterion: "graded_cartan_determinant".into(),
            fired: false,
            detail: "no grading available".into(),
        }),
    }

    let certificate = match (cycle, cartan_outcome) {
        (Some(c), _) => Some(Certificate::TruncatedCycle(c)),
        (None, Some(CartanOutcome::InfiniteHHdim { determinant })) => Some(Certificate::CartanDeterminant {
            rendered: determinant.to_string(),
            determinant,
        }),
        _ => None,
    };
    let conclusion = if certificate.is_some() {
        Conclusion::InfiniteHHdim
    } else {
        Conclusion::Unknown
    };
    Judged {
        verdict: Verdict {
            subject,
            conclusion,
            certificate,
            trace,
            hypotheses,
            cartan,
        },
        algebra,
        extension,
    }
}
