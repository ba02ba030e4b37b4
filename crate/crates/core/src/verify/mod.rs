//! Axiom checking by exhaustive basis evaluation.
//!
//! Every identity is multilinear, so it holds on all vectors iff it holds on
//! all basis tuples. Each axiom is stored as a closure over arbitrary vectors
//! (see [`AxiomSystem`]) and the runner feeds it unit vectors.

mod algebra;
mod rep;

use thiserror::Error;

use crate::exec::{decode_tuple, map_indexed};
use crate::linear::{is_zero_vector, unit_vector, LinearError, MatrixS, Vector};
use crate::model::{AlgebraBundle, AxiomEntry, Kind, ModelError, RepresentationBundle, Status, ViolationReport, Witness};
use crate::scalar::Scalar;

pub use algebra::{
    bihom_lie_axioms, bihom_lr_axioms, bihom_post_lie_axioms, product_axioms, structure_map_axioms,
    tridendriform_axioms,
};
pub use rep::{adjoint_module_algebra, adjoint_representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("{0} is singular")]
    Singular(String),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Unsupported(String),
}

pub(crate) type Eval = Box<dyn Fn(&[&[Scalar]]) -> Vector + Send + Sync>;

/// One multilinear identity; `eval` returns the residual (zero iff it holds).
pub struct Axiom {
    pub id: String,
    /// Index into [`AxiomSystem::spaces`] for each argument slot.
    pub slots: Vec<usize>,
    pub advisory: bool,
    pub(crate) eval: Eval,
}

impl Axiom {
    pub(crate) fn new(id: impl Into<String>, slots: Vec<usize>, eval: Eval) -> Self {
        Axiom { id: id.into(), slots, advisory: false, eval }
    }

    pub(crate) fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    /// Residual on arbitrary vectors.
    pub fn residual(&self, args: &[&[Scalar]]) -> Vector {
        (self.eval)(args)
    }

    pub(crate) fn prefixed(mut self, prefix: &str) -> Self {
        self.id = format!("{prefix}{}", self.id);
        self
    }
}

/// A list of axioms over named spaces, ready to run.
pub struct AxiomSystem {
    pub structure: String,
    pub parameters: Vec<String>,
    /// Basis names of each space the axioms range over.
    pub spaces: Vec<Vec<String>>,
    pub axioms: Vec<Axiom>,
    pub notes: Vec<String>,
}

impl AxiomSystem {
    pub fn new(structure: impl Into<String>, parameters: Vec<String>, spaces: Vec<Vec<String>>) -> Self {
        AxiomSystem { structure: structure.into(), parameters, spaces, axioms: Vec::new(), notes: Vec::new() }
    }

    pub(crate) fn extend(&mut self, axioms: impl IntoIterator<Item = Axiom>) {
        self.axioms.extend(axioms);
    }

    pub(crate) fn extend_prefixed(&mut self, prefix: &str, axioms: impl IntoIterator<Item = Axiom>) {
        self.axioms.extend(axioms.into_iter().map(|a| a.prefixed(prefix)));
    }

    pub fn axiom(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    pub fn run(&self, opts: &CheckOptions) -> ViolationReport {
        let mut report = ViolationReport::new(self.structure.clone(), self.parameters.clone());
        report.notes = self.notes.clone();
        let units: Vec<Vec<Vector>> =
            self.spaces.iter().map(|s| (0..s.len()).map(|i| unit_vector(s.len(), i)).collect()).collect();
        for (n, axiom) in self.axioms.iter().enumerate() {
            let entry = self.run_axiom(axiom, &units, opts);
            let stop = opts.fail_fast && !entry.advisory && !entry.passed();
            report.entries.push(entry);
            if stop {
                let skipped = self.axioms.len() - n - 1;
                if skipped > 0 {
                    report.notes.push(format!("fail-fast: {skipped} remaining axioms not evaluated"));
                }
                break;
            }
        }
        report
    }

    fn run_axiom(&self, axiom: &Axiom, units: &[Vec<Vector>], opts: &CheckOptions) -> AxiomEntry {
        let dims: Vec<usize> = axiom.slots.iter().map(|&s| self.spaces[s].len()).collect();
        let total: usize = dims.iter().product();
        let residuals = map_indexed(total, opts.parallel, |idx| {
            let tuple = decode_tuple(idx, &dims);
            let args: Vec<&[Scalar]> =
                tuple.iter().zip(&axiom.slots).map(|(&i, &s)| units[s][i].as_slice()).collect();
            let r = axiom.residual(&args);
            (!is_zero_vector(&r)).then_some((tuple, r))
        });
        let failing: Vec<(Vec<usize>, Vector)> = residuals.into_iter().flatten().collect();
        let witnesses = failing
            .iter()
            .take(opts.witness_cap)
            .map(|(tuple, r)| Witness {
                names: tuple.iter().zip(&axiom.slots).map(|(&i, &s)| self.spaces[s][i].clone()).collect(),
                indices: tuple.clone(),
                residual: r.clone(),
            })
            .collect();
        AxiomEntry {
            axiom: axiom.id.clone(),
            status: if failing.is_empty() { Status::Pass } else { Status::Fail },
            advisory: axiom.advisory,
            checked: total,
            failures: failing.len(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub witness_cap: usize,
    pub fail_fast: bool,
    pub parallel: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { witness_cap: 16, fail_fast: false, parallel: true }
    }
}

/// Runs the checkers with fixed options.
#[derive(Debug, Clone, Copy, Default)]
pub struct Verifier {
    pub options: CheckOptions,
}

impl Verifier {
    pub fn new(options: CheckOptions) -> Self {
        Verifier { options }
    }

    pub fn sequential() -> Self {
        Verifier { options: CheckOptions { parallel: false, ..CheckOptions::default() } }
    }

    pub fn check_structure_maps(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::structure_maps_system(b)?.run(&self.options))
    }

    pub fn check_bihom_lie(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::bihom_lie_system(b)?.run(&self.options))
    }

    pub fn check_bihom_post_lie(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::bihom_post_lie_system(b)?.run(&self.options))
    }

    pub fn check_bihom_lr(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::bihom_lr_system(b)?.run(&self.options))
    }

    pub fn check_tridendriform(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::tridendriform_system(b)?.run(&self.options))
    }

    pub fn check_bihom_associative(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::associative_system(b)?.run(&self.options))
    }

    pub fn check_product(&self, b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
        Ok(algebra::product_system(b)?.run(&self.options))
    }

    pub fn check_lie_representation(&self, r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
        Ok(rep::lie_representation_system(r)?.run(&self.options))
    }

    pub fn check_module_k_algebra(&self, r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
        Ok(rep::module_k_algebra_system(r)?.run(&self.options))
    }

    pub fn check_o_operator(&self, r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
        Ok(rep::o_operator_system(r)?.run(&self.options))
    }

    pub fn check_rota_baxter(&self, b: &AlgebraBundle, weight: &Scalar) -> Result<ViolationReport, CheckError> {
        Ok(rep::rota_baxter_system(b, weight)?.run(&self.options))
    }

    pub fn check_post_lie_representation(&self, r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
        Ok(rep::post_lie_representation_system(r)?.run(&self.options))
    }

    /// Run the checker matching the bundle's kind tag (or `kind` if given).
    pub fn check_kind(&self, b: &AlgebraBundle, kind: Option<Kind>) -> Result<ViolationReport, CheckError> {
        Ok(system_for_kind(b, kind.unwrap_or(b.kind))?.run(&self.options))
    }
}

/// The axiom system checked for a given kind.
pub fn system_for_kind(b: &AlgebraBundle, kind: Kind) -> Result<AxiomSystem, CheckError> {
    match kind {
        Kind::BiHomLie => algebra::bihom_lie_system(b),
        Kind::BiHomPostLie => algebra::bihom_post_lie_system(b),
        Kind::BiHomLr => algebra::bihom_lr_system(b),
        Kind::BiHomTridendriform => algebra::tridendriform_system(b),
        Kind::BiHomProduct => algebra::product_system(b),
    }
}

pub use algebra::{
    associative_system, bihom_lie_system, bihom_lr_system, bihom_post_lie_system, product_system,
    structure_maps_system, tridendriform_system,
};
pub use rep::{
    lie_representation_system, module_k_algebra_system, o_operator_system, post_lie_representation_system,
    rota_baxter_system,
};

pub fn check_structure_maps(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_structure_maps(b)
}

pub fn check_bihom_lie(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_bihom_lie(b)
}

pub fn check_bihom_post_lie(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_bihom_post_lie(b)
}

pub fn check_bihom_lr(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_bihom_lr(b)
}

pub fn check_tridendriform(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_tridendriform(b)
}

pub fn check_bihom_associative(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_bihom_associative(b)
}

pub fn check_product(b: &AlgebraBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_product(b)
}

pub fn check_lie_representation(r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_lie_representation(r)
}

pub fn check_module_k_algebra(r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_module_k_algebra(r)
}

pub fn check_o_operator(r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_o_operator(r)
}

pub fn check_rota_baxter(b: &AlgebraBundle, weight: &Scalar) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_rota_baxter(b, weight)
}

pub fn check_post_lie_representation(r: &RepresentationBundle) -> Result<ViolationReport, CheckError> {
    Verifier::default().check_post_lie_representation(r)
}

/// Both structure maps have nonzero determinant.
pub fn check_regular(b: &AlgebraBundle) -> bool {
    [b.alpha(), b.beta()].into_iter().all(|m| m.is_ok_and(|m| m.determinant().is_ok_and(|d| !d.is_zero())))
}

pub(crate) fn invert(m: &MatrixS, label: &str) -> Result<MatrixS, CheckError> {
    m.inverse().map_err(|e| match e {
        LinearError::Singular => CheckError::Singular(label.to_string()),
        other => CheckError::Unsupported(format!("{label}: {other}")),
    })
}
