//! Constructions producing new bundles from verified inputs. Every
//! constructor re-checks its preconditions and fails with the violated one.

mod algebra;
mod operator;
mod rep;

use thiserror::Error;

use crate::linear::MatrixS;
use crate::model::{AlgebraBundle, ModelError, ViolationReport};
use crate::verify::CheckError;

pub use algebra::{
    admissible_product, black_transform, commutator_bihom_lie, double_bracket, flip_post_lie, lr_to_post,
    rota_baxter_induced, splitting_rota_baxter, sub_adjacent, tridend_to_assoc, tridend_to_post, twist_lie,
    twist_post_lie,
};
pub use operator::{compatible_from_invertible_o, induced_on_image, o_operator_induced};
pub use rep::{
    adjoint_post_representation, canonical_representations, pi_operators, pi_representation, semidirect_lie,
    semidirect_module_algebra, semidirect_post_lie, twist_lie_representation, twist_post_lie_representation,
    PI_READING_NOTE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("{0} is singular")]
    NotRegular(String),
    #[error("precondition `{check}` failed: {}", failing_list(.report))]
    PreconditionFailed { check: String, report: Box<ViolationReport> },
    #[error("{0} do not commute")]
    NotCommuting(String),
    #[error("{map} is not a morphism of `{op}`")]
    NotMorphism { map: String, op: String },
    #[error("input must have identity structure maps ({0} is not the identity)")]
    NotClassical(String),
    #[error("T is not injective (rank {rank} < {vdim})")]
    NotInjective { rank: usize, vdim: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("postcondition `{check}` failed: {}", failing_list(.report))]
    PostconditionFailed { check: String, report: Box<ViolationReport> },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn failing_list(r: &ViolationReport) -> String {
    let f = r.failing();
    if f.is_empty() {
        "no failing axioms".into()
    } else {
        format!("failing {}", f.join(", "))
    }
}

impl From<crate::linear::LinearError> for ConstructError {
    fn from(e: crate::linear::LinearError) -> Self {
        ConstructError::Invalid(e.to_string())
    }
}

pub(crate) fn require(report: ViolationReport, check: &str) -> Result<(), ConstructError> {
    if report.passed() {
        Ok(())
    } else {
        Err(ConstructError::PreconditionFailed { check: check.into(), report: Box::new(report) })
    }
}

pub(crate) fn inverse_of(m: &MatrixS, label: &str) -> Result<MatrixS, ConstructError> {
    m.inverse().map_err(|e| match e {
        crate::linear::LinearError::Singular => ConstructError::NotRegular(label.into()),
        other => ConstructError::Invalid(format!("{label}: {other}")),
    })
}

/// `(α⁻¹, β⁻¹)` or the name of the singular map.
pub(crate) fn regular_inverses(b: &AlgebraBundle) -> Result<(MatrixS, MatrixS), ConstructError> {
    Ok((inverse_of(b.alpha()?, "alpha")?, inverse_of(b.beta()?, "beta")?))
}

/// Names for a direct sum, renaming the second list on collision.
pub(crate) fn disjoint_names(first: &[String], second: &[String], suffix: &str) -> Vec<String> {
    let mut out: Vec<String> = first.to_vec();
    for n in second {
        let mut candidate = n.clone();
        while out.contains(&candidate) {
            candidate.push_str(suffix);
        }
        out.push(candidate);
    }
    out
}

/// Names `X_1, …, X_2, …` for two copies of one basis.
pub(crate) fn doubled_names(basis: &[String]) -> Vec<String> {
    let first: Vec<String> = basis.iter().map(|n| format!("{n}_1")).collect();
    let second: Vec<String> = basis.iter().map(|n| format!("{n}_2")).collect();
    disjoint_names(&first, &second, "_")
}
