//! Typed bundles: algebras and representations given by structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linear::{MatrixS, StructureTensor, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    BiHomLie,
    BiHomPostLie,
    BiHomLr,
    BiHomTridendriform,
    BiHomProduct,
}

impl Kind {
    pub const ALL: [Kind; 5] =
        [Kind::BiHomLie, Kind::BiHomPostLie, Kind::BiHomLr, Kind::BiHomTridendriform, Kind::BiHomProduct];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::BiHomLie => "bihom-lie",
            Kind::BiHomPostLie => "bihom-post-lie",
            Kind::BiHomLr => "bihom-lr",
            Kind::BiHomTridendriform => "bihom-tridendriform",
            Kind::BiHomProduct => "bihom-product",
        }
    }

    pub fn required_ops(self) -> &'static [OpName] {
        match self {
            Kind::BiHomLie => &[OpName::Bracket],
            Kind::BiHomPostLie => &[OpName::Bracket, OpName::Triangle],
            Kind::BiHomLr | Kind::BiHomProduct => &[OpName::Dot],
            Kind::BiHomTridendriform => &[OpName::Prec, OpName::Succ, OpName::Dot],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| ModelError::UnknownName(s.to_string()))
    }
}

/// Closed vocabulary of operation names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpName {
    Bracket,
    Triangle,
    Dot,
    Prec,
    Succ,
}

impl OpName {
    pub const ALL: [OpName; 5] = [OpName::Bracket, OpName::Triangle, OpName::Dot, OpName::Prec, OpName::Succ];

    pub fn as_str(self) -> &'static str {
        match self {
            OpName::Bracket => "bracket",
            OpName::Triangle => "triangle",
            OpName::Dot => "dot",
            OpName::Prec => "prec",
            OpName::Succ => "succ",
        }
    }
}

impl FromStr for OpName {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        OpName::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| ModelError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapName {
    Alpha,
    Beta,
    R,
}

impl MapName {
    pub const ALL: [MapName; 3] = [MapName::Alpha, MapName::Beta, MapName::R];

    pub fn as_str(self) -> &'static str {
        match self {
            MapName::Alpha => "alpha",
            MapName::Beta => "beta",
            MapName::R => "R",
        }
    }
}

impl FromStr for MapName {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        MapName::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| ModelError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("missing op `{0}`")]
    MissingOp(OpName),
    #[error("missing map `{0}`")]
    MissingMap(MapName),
    #[error("missing {0}")]
    MissingField(&'static str),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("shape errors: {}", .0.join("; "))]
    Shape(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBundle {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub parameters: Vec<String>,
    pub ops: BTreeMap<OpName, StructureTensor>,
    pub maps: BTreeMap<MapName, MatrixS>,
    pub kind: Kind,
}

impl AlgebraBundle {
    /// A bundle with identity structure maps and no operations.
    pub fn new(name: impl Into<String>, kind: Kind, basis: Vec<String>, parameters: Vec<String>) -> Self {
        let dim = basis.len();
        let mut maps = BTreeMap::new();
        maps.insert(MapName::Alpha, MatrixS::identity(dim));
        maps.insert(MapName::Beta, MatrixS::identity(dim));
        AlgebraBundle { name: name.into(), dim, basis, parameters, ops: BTreeMap::new(), maps, kind }
    }

    pub fn with_op(mut self, name: OpName, t: StructureTensor) -> Self {
        self.ops.insert(name, t);
        self
    }

    pub fn with_map(mut self, name: MapName, m: MatrixS) -> Self {
        self.maps.insert(name, m);
        self
    }

    pub fn op(&self, name: OpName) -> Result<&StructureTensor, ModelError> {
        self.ops.get(&name).ok_or(ModelError::MissingOp(name))
    }

    pub fn map(&self, name: MapName) -> Result<&MatrixS, ModelError> {
        self.maps.get(&name).ok_or(ModelError::MissingMap(name))
    }

    pub fn alpha(&self) -> Result<&MatrixS, ModelError> {
        self.map(MapName::Alpha)
    }

    pub fn beta(&self) -> Result<&MatrixS, ModelError> {
        self.map(MapName::Beta)
    }

    /// Evaluate a named operation on coordinate vectors.
    pub fn apply_op(&self, name: OpName, u: &[Scalar], v: &[Scalar]) -> Result<Vector, ModelError> {
        Ok(self.op(name)?.eval(u, v))
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        validate_algebra(self)
    }
}

/// A module `V` over an algebra, with the optional data used by the
/// module-algebra, O-operator and post-Lie representation layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationBundle {
    pub algebra: AlgebraBundle,
    pub vdim: usize,
    pub vbasis: Vec<String>,
    /// `rho[i]` is the action of basis element `i`.
    pub rho: Vec<MatrixS>,
    pub mu: Option<Vec<MatrixS>>,
    pub nu: Option<Vec<MatrixS>>,
    pub phi: MatrixS,
    pub psi: MatrixS,
    pub vbracket: Option<StructureTensor>,
    /// `V → A`, shape `dim × vdim`.
    pub t: Option<MatrixS>,
    pub weight: Option<Scalar>,
}

impl RepresentationBundle {
    pub fn new(algebra: AlgebraBundle, vbasis: Vec<String>, rho: Vec<MatrixS>, phi: MatrixS, psi: MatrixS) -> Self {
        RepresentationBundle {
            algebra,
            vdim: vbasis.len(),
            vbasis,
            rho,
            mu: None,
            nu: None,
            phi,
            psi,
            vbracket: None,
            t: None,
            weight: None,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        validate_representation(self)
    }

    pub fn weight_or_zero(&self) -> Scalar {
        self.weight.clone().unwrap_or_default()
    }
}

/// `Σ_i w_i · maps[i]`: a linear family of operators evaluated at `w`.
pub fn family_at(maps: &[MatrixS], w: &[Scalar], rows: usize, cols: usize) -> MatrixS {
    let mut acc = MatrixS::zeros(rows, cols);
    for (m, c) in maps.iter().zip(w) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

/// `(Σ_i w_i · maps[i]) v` without forming the matrix.
pub fn family_apply(maps: &[MatrixS], w: &[Scalar], v: &[Scalar]) -> Vector {
    let n = maps.first().map(MatrixS::rows).unwrap_or(0);
    let mut out = crate::linear::zero_vector(n);
    for (m, c) in maps.iter().zip(w) {
        if !c.is_zero() {
            crate::linear::vec_axpy(&mut out, c, &m.apply(v));
        }
    }
    out
}

/// Validate shape invariants of either bundle type.
pub fn validate_bundle(b: &BundleRef<'_>) -> Result<(), ModelError> {
    match b {
        BundleRef::Algebra(a) => validate_algebra(a),
        BundleRef::Representation(r) => validate_representation(r),
    }
}

pub enum BundleRef<'a> {
    Algebra(&'a AlgebraBundle),
    Representation(&'a RepresentationBundle),
}

fn algebra_shape_errors(b: &AlgebraBundle) -> Vec<String> {
    let mut errs = Vec::new();
    if b.dim == 0 {
        errs.push("dimension must be positive".into());
    }
    if b.basis.len() != b.dim {
        errs.push(format!("basis has {} names for dimension {}", b.basis.len(), b.dim));
    }
    for op in b.kind.required_ops() {
        if !b.ops.contains_key(op) {
            errs.push(format!("missing op `{op}` for kind {}", b.kind));
        }
    }
    for m in [MapName::Alpha, MapName::Beta] {
        if !b.maps.contains_key(&m) {
            errs.push(format!("missing map `{m}`"));
        }
    }
    for (name, t) in &b.ops {
        if t.dim() != b.dim {
            errs.push(format!("op `{name}` has dimension {} (expected {})", t.dim(), b.dim));
        }
    }
    for (name, m) in &b.maps {
        if m.rows() != b.dim || m.cols() != b.dim {
            errs.push(format!("map `{name}` is {}x{} (expected {}x{})", m.rows(), m.cols(), b.dim, b.dim));
        }
    }
    errs
}

fn validate_algebra(b: &AlgebraBundle) -> Result<(), ModelError> {
    let errs = algebra_shape_errors(b);
    if errs.is_empty() {
        Ok(())
    } else {
        Err(ModelError::Shape(errs))
    }
}

fn validate_representation(r: &RepresentationBundle) -> Result<(), ModelError> {
    let mut errs: Vec<String> = algebra_shape_errors(&r.algebra).into_iter().map(|e| format!("algebra: {e}")).collect();
    let (n, m) = (r.algebra.dim, r.vdim);
    if m == 0 {
        errs.push("module dimension must be positive".into());
    }
    if r.vbasis.len() != m {
        errs.push(format!("module basis has {} names for dimension {m}", r.vbasis.len()));
    }
    let mut family = |label: &str, maps: &[MatrixS]| {
        if maps.len() != n {
            errs.push(format!("{label} has {} operators (expected {n})", maps.len()));
        }
        for (i, x) in maps.iter().enumerate() {
            if x.rows() != m || x.cols() != m {
                errs.push(format!("{label}({i}) is {}x{} (expected {m}x{m})", x.rows(), x.cols()));
            }
        }
    };
    family("rho", &r.rho);
    if let Some(mu) = &r.mu {
        family("mu", mu);
    }
    if let Some(nu) = &r.nu {
        family("nu", nu);
    }
    let mut square_ok = true;
    for (label, x) in [("phi", &r.phi), ("psi", &r.psi)] {
        if x.rows() != m || x.cols() != m {
            errs.push(format!("{label} is {}x{} (expected {m}x{m})", x.rows(), x.cols()));
            square_ok = false;
        }
    }
    if square_ok && r.phi.mul(&r.psi) != r.psi.mul(&r.phi) {
        errs.push("phi psi do not commute".into());
    }
    if let Some(vb) = &r.vbracket {
        if vb.dim() != m {
            errs.push(format!("vbracket has dimension {} (expected {m})", vb.dim()));
        }
    }
    if let Some(t) = &r.t {
        if t.rows() != n || t.cols() != m {
            errs.push(format!("T is {}x{} (expected {n}x{m})", t.rows(), t.cols()));
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(ModelError::Shape(errs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub names: Vec<String>,
    pub residual: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomEntry {
    pub axiom: String,
    pub status: Status,
    /// Informational entries do not affect the overall verdict.
    pub advisory: bool,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl AxiomEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Itemized result of a structure check. Failing entries carry witnesses
/// (basis tuple and nonzero residual); passing entries carry none.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ViolationReport {
    pub structure: String,
    pub parameters: Vec<String>,
    pub entries: Vec<AxiomEntry>,
    pub notes: Vec<String>,
}

impl ViolationReport {
    pub fn new(structure: impl Into<String>, parameters: Vec<String>) -> Self {
        ViolationReport { structure: structure.into(), parameters, entries: Vec::new(), notes: Vec::new() }
    }

    /// True when every non-advisory axiom passes.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.advisory || e.passed())
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    /// Ids of non-advisory failing axioms.
    pub fn failing(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.advisory && !e.passed()).map(|e| e.axiom.as_str()).collect()
    }

    pub fn status_of(&self, axiom: &str) -> Option<Status> {
        self.entry(axiom).map(|e| e.status)
    }

    /// Human-readable multi-line rendering.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "structure: {}", self.structure);
        let width = self.entries.iter().map(|e| e.axiom.len()).max().unwrap_or(0);
        for e in &self.entries {
            let tag = match (e.status, e.advisory) {
                (Status::Pass, _) => "PASS",
                (Status::Fail, false) => "FAIL",
                (Status::Fail, true) => "NOTE",
            };
            let _ = write!(out, "  {tag} {:<width$}  ({} checked", e.axiom, e.checked);
            if e.failures > 0 {
                let _ = write!(out, ", {} failing", e.failures);
            }
            let _ = writeln!(out, ")");
            for w in &e.witnesses {
                let residual: Vec<String> = w.residual.iter().map(|s| s.to_text(&self.parameters)).collect();
                let _ = writeln!(out, "       witness ({}): [{}]", w.names.join(","), residual.join(", "));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let failing = self.failing().len();
        if failing == 0 {
            let _ = writeln!(out, "verdict: PASS ({} axioms)", self.entries.len());
        } else {
            let _ = writeln!(out, "verdict: FAIL ({failing} of {} axioms)", self.entries.len());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn post_lie_bundle_missing_triangle() {
        let b = AlgebraBundle::new("p", Kind::BiHomPostLie, names(&["e1", "e2"]), vec![])
            .with_op(OpName::Bracket, StructureTensor::zero(2));
        let err = b.validate().unwrap_err();
        assert!(err.to_string().contains("missing op `triangle`"), "{err}");
    }

    #[test]
    fn non_commuting_phi_psi_rejected() {
        let alg = AlgebraBundle::new("a", Kind::BiHomLie, names(&["e1"]), vec![])
            .with_op(OpName::Bracket, StructureTensor::zero(1));
        let s = |n: i64| Scalar::from_int(n);
        // phi psi = [[2,1],[1,1]], psi phi = [[1,1],[1,2]]
        let phi = MatrixS::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(1)]]).unwrap();
        let psi = MatrixS::from_rows(vec![vec![s(1), s(0)], vec![s(1), s(1)]]).unwrap();
        let r = RepresentationBundle::new(alg, names(&["v1", "v2"]), vec![MatrixS::zeros(2, 2)], phi, psi);
        let err = r.validate().unwrap_err();
        assert!(err.to_string().contains("phi psi do not commute"), "{err}");
    }

    #[test]
    fn dimension_mismatch_reported() {
        let b = AlgebraBundle::new("a", Kind::BiHomLie, names(&["e1", "e2"]), vec![])
            .with_op(OpName::Bracket, StructureTensor::zero(3))
            .with_map(MapName::R, MatrixS::identity(3));
        match b.validate().unwrap_err() {
            ModelError::Shape(errs) => assert_eq!(errs.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
