//! Serializable summaries of each pipeline stage.
//!
//! Everything here is deterministic: no timing, no hash maps.

use serde::Serialize;

use crate::algebra::{BuildRule, FDAlgebra};
use crate::criteria::{
    cartan_criterion, determinant_at_one, graded_cartan, trivial_extension_determinant_shape, CartanOutcome,
    DeterminantShape, GradedCartanData,
};
use crate::error::Result;
use crate::linalg::IntPolynomial;
use crate::trivial_ext::{relations_up_to, RelationSet, TrivialExtensionData};

pub const SCHEMA: &str = "trivext-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowSummary {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleSummary {
    /// `dim soc(A e_i)` per vertex.
    pub left: Vec<usize>,
    /// `dim soc(e_i A)` per vertex.
    pub right: Vec<usize>,
    pub bimodule: usize,
    pub bimodule_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfinjectiveSummary {
    pub holds: bool,
    /// `pi(i)` by vertex name, when selfinjective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nakayama_permutation: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub dim: usize,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSummary>,
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build_rule: Option<BuildRule>,
    /// `dim rad^m A` for `m = 0, 1, ..., LL(A)`.
    pub radical_filtration: Vec<usize>,
    pub loewy_length: usize,
    pub socles: SocleSummary,
    pub local: bool,
    pub selfinjective: SelfinjectiveSummary,
    /// Carries a grading, given or by path length.
    pub graded: bool,
    /// `"degrees"` or `"path_length"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<u32>,
    pub left_socle_in_bimodule_socle: bool,
}

fn arrow_summaries(a: &FDAlgebra) -> Vec<ArrowSummary> {
    let v = a.vertex_names();
    a.arrows()
        .iter()
        .map(|x| ArrowSummary {
            name: x.name.clone(),
            source: v[x.source].clone(),
            target: v[x.target].clone(),
            degree: a.degrees().map(|deg| {
                let k = x.element.iter().position(|c| !c.is_zero()).expect("nonzero arrow");
                deg[k]
            }),
        })
        .collect()
}

pub fn summarize_algebra(a: &FDAlgebra) -> AlgebraSummary {
    let v = a.vertex_names();
    let socles = a.socles();
    let ll = a.loewy_length();
    let mut filtration = vec![a.dim()];
    filtration.extend((1..=ll).map(|m| a.radical_power(m).dim()));
    let selfinjective = match a.is_selfinjective() {
        Ok(c) => SelfinjectiveSummary {
            holds: true,
            nakayama_permutation: Some(c.permutation.iter().map(|&j| v[j].clone()).collect()),
            refusal: None,
        },
        Err(e) => SelfinjectiveSummary {
            holds: false,
            nakayama_permutation: None,
            refusal: Some(format!("vertex {}: {}", v[e.vertex], e.reason)),
        },
    };
    let graded = a.graded_version();
    let grading = graded.as_ref().map(|_| if a.is_graded() { "degrees" } else { "path_length" });
    AlgebraSummary {
        field: a.field().to_string(),
        dim: a.dim(),
        vertices: v.to_vec(),
        arrows: arrow_summaries(a),
        basis: a.labels().to_vec(),
        degrees: a.degrees().map(<[u32]>::to_vec),
        build_rule: a.build_rule(),
        radical_filtration: filtration,
        loewy_length: ll,
        socles: SocleSummary {
            left: socles.left.iter().map(|s| s.dim()).collect(),
            right: socles.right.iter().map(|s| s.dim()).collect(),
            bimodule: socles.bimodule.dim(),
            bimodule_basis: socles.bimodule.basis().iter().map(|x| a.render(x)).collect(),
        },
        local: a.is_local(),
        selfinjective,
        graded: graded.is_some(),
        grading,
        top_degree: graded.as_ref().and_then(FDAlgebra::top_degree),
        left_socle_in_bimodule_socle: a.left_socle_in_bimodule_socle(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewArrowSummary {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// The chosen representative in `T(A)`.
    pub representative: String,
    /// Base basis element whose dual the representative is.
    pub dual_of: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsSummary {
    pub cap: usize,
    pub generators: Vec<String>,
    pub complete: bool,
    pub evaluation_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_dim: Option<usize>,
}

impl From<&RelationSet> for RelationsSummary {
    fn from(r: &RelationSet) -> Self {
        RelationsSummary {
            cap: r.cap,
            generators: r.rendered(),
            complete: r.complete,
            evaluation_rank: r.evaluation_rank,
            quotient_dim: r.quotient_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn from_result(r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => CheckResult { ok: true, detail: None },
            Err(e) => CheckResult {
                ok: false,
                detail: Some(e),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialExtensionSummary {
    pub dim: usize,
    pub base_dim: usize,
    pub graded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<u32>,
    pub basis: Vec<String>,
    pub old_arrows: Vec<ArrowSummary>,
    pub new_arrows: Vec<NewArrowSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsSummary>,
    pub new_arrow_products_vanish: bool,
    pub symmetric_form: CheckResult,
    pub associative: CheckResult,
}

/// `relations_cap` of `None` skips the relation computation; `Some(None)`
/// uses the default cap.
pub fn summarize_trivial_extension(
    data: &TrivialExtensionData,
    relations_cap: Option<Option<usize>>,
) -> Result<TrivialExtensionSummary> {
    let t = data.t();
    let arrows = arrow_summaries(t);
    let (old, new) = arrows.split_at(data.old_arrow_count);
    let new_arrows = data
        .new_arrows()
        .iter()
        .zip(new)
        .map(|(b, s)| NewArrowSummary {
            name: b.name.clone(),
            source: s.source.clone(),
            target: s.target.clone(),
            degree: s.degree,
            representative: t.render(&b.element),
            dual_of: t.labels()[b.dual_of].clone(),
        })
        .collect();
    let relations = match relations_cap {
        Some(cap) => Some(RelationsSummary::from(&relations_up_to(data, cap)?)),
        None => None,
    };
    let associative = match t.check_associativity() {
        None => Ok(()),
        Some((i, j, k)) => Err(format!(
            "associativity fails on ({}, {}, {})",
            t.labels()[i],
            t.labels()[j],
            t.labels()[k]
        )),
    };
    Ok(TrivialExtensionSummary {
        dim: t.dim(),
        base_dim: data.base_dim,
        graded: t.is_graded(),
        top_degree: t.top_degree(),
        basis: t.labels().to_vec(),
        old_arrows: old.to_vec(),
        new_arrows,
        relations,
        new_arrow_products_vanish: data.check_new_products_vanish(),
        symmetric_form: CheckResult::from_result(data.check_symmetric_form()),
        associative: CheckResult::from_result(associative),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanSummary {
    pub r: usize,
    pub s: u32,
    /// `C(x)` with entries rendered.
    pub matrix: Vec<Vec<String>>,
    pub determinant: IntPolynomial,
    pub determinant_rendered: String,
    pub determinant_at_one: String,
    pub ungraded_determinant: String,
    pub outcome: CartanOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_extension_shape: Option<ShapeSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeSummary {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<DeterminantShapeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantShapeSummary {
    pub base_top_degree: u32,
    pub determinant_degree: usize,
    pub off_identity: Vec<Vec<String>>,
}

impl From<&DeterminantShape> for DeterminantShapeSummary {
    fn from(s: &DeterminantShape) -> Self {
        DeterminantShapeSummary {
            base_top_degree: s.s,
            determinant_degree: s.determinant_degree,
            off_identity: s
                .off_identity
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

/// Cartan data of a graded algebra; `of_trivial_extension` adds the shape
/// test expected of a graded `T(A)`.
pub fn summarize_cartan(a: &FDAlgebra, of_trivial_extension: bool) -> Result<CartanSummary> {
    let g = graded_cartan(a)?;
    Ok(cartan_summary(a, &g, of_trivial_extension))
}

pub fn cartan_summary(a: &FDAlgebra, g: &GradedCartanData, of_trivial_extension: bool) -> CartanSummary {
    let (at_one, ungraded) = determinant_at_one(a, g);
    let shape = of_trivial_extension.then(|| match trivial_extension_determinant_shape(g) {
        Ok(s) => ShapeSummary {
            ok: true,
            shape: Some((&s).into()),
            failure: None,
        },
        Err(e) => ShapeSummary {
            ok: false,
            shape: None,
            failure: Some(e.to_string()),
        },
    });
    CartanSummary {
        r: g.r,
        s: g.s,
        matrix: (0..g.r)
            .map(|i| (0..g.r).map(|j| g.matrix.get(i, j).to_string()).collect())
            .collect(),
        determinant: g.determinant.clone(),
        determinant_rendered: g.determinant.to_string(),
        determinant_at_one: at_one.to_string(),
        ungraded_determinant: ungraded.to_string(),
        outcome: cartan_criterion(g, a.field().characteristic()),
        trivial_extension_shape: shape,
    }
}
