//! JSON bundle documents.
//!
//! Algebra documents carry `name`, `kind`, `dimension`, `basis`,
//! `parameters`, `operations` and `maps`. Operation tables are sparse,
//! keyed `"b_i,b_j"`, with linear combinations such as `"2*gamma^2*X - H"`
//! as values. Maps are dense row lists of scalar expressions, where column
//! `j` holds the image of basis element `j`.
//!
//! Representation documents have `kind = "representation"` and embed the
//! algebra document under `algebra`.
//!
//! Emission is canonical: object keys sorted, scalars in normal form, so
//! emit → parse → emit is a fixed point.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::linear::{MatrixS, StructureTensor, Vector};
use crate::model::{AlgebraBundle, Kind, MapName, ModelError, OpName, RepresentationBundle, ViolationReport};
use crate::scalar::{parse_scalar_expr, ExprError, ExprErrorKind, Rational, Scalar, ScalarError, ScalarExpr};

pub const REPRESENTATION_KIND: &str = "representation";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: {source}")]
    Expr { path: String, source: ExprError },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn field_err(path: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Field { path: path.into(), message: message.into() }
}

/// Either kind of bundle document.
#[derive(Debug, Clone)]
pub enum Document {
    Algebra(AlgebraBundle),
    Representation(RepresentationBundle),
}

// ---------------------------------------------------------------- emission

fn scalar_text(s: &Scalar, params: &[String]) -> String {
    s.to_text(params)
}

/// `c*name` with sign pulled out, or `None` for a zero coefficient.
fn term_text(c: &Scalar, name: &str, params: &[String]) -> Option<(bool, String)> {
    if c.is_zero() {
        return None;
    }
    if c.is_one() {
        return Some((false, name.to_string()));
    }
    if (-c).is_one() {
        return Some((true, name.to_string()));
    }
    let text = c.to_text(params);
    if c.is_simple_factor() {
        if let Some(rest) = text.strip_prefix('-') {
            return Some((true, format!("{rest}*{name}")));
        }
        return Some((false, format!("{text}*{name}")));
    }
    if c.denom().is_one() {
        return Some((false, format!("({text})*{name}")));
    }
    // fractions print as a product/quotient chain; a leading sign only
    // appears on single-term numerators
    match text.strip_prefix('-') {
        Some(rest) => Some((true, format!("{rest}*{name}"))),
        None => Some((false, format!("{text}*{name}"))),
    }
}

/// Canonical text of a vector in the given basis.
pub fn combination_text(v: &[Scalar], basis: &[String], params: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(basis) {
        if let Some((neg, t)) = term_text(c, name, params) {
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&t),
                (true, true) => {
                    out.push('-');
                    out.push_str(&t);
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&t);
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&t);
                }
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn table_value(t: &StructureTensor, basis: &[String], out_basis: &[String], params: &[String]) -> Value {
    let mut table = Map::new();
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            let v = t.product(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                table.insert(format!("{},{}", basis[i], basis[j]), Value::String(combination_text(&v, out_basis, params)));
            }
        }
    }
    Value::Object(table)
}

fn matrix_value(m: &MatrixS, params: &[String]) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(scalar_text(m.get(i, j), params))).collect()))
            .collect(),
    )
}

fn names_value(v: &[String]) -> Value {
    Value::Array(v.iter().cloned().map(Value::String).collect())
}

pub fn algebra_to_value(b: &AlgebraBundle) -> Value {
    let p = &b.parameters;
    let ops: Map<String, Value> =
        b.ops.iter().map(|(k, t)| (k.as_str().to_string(), table_value(t, &b.basis, &b.basis, p))).collect();
    let maps: Map<String, Value> = b.maps.iter().map(|(k, m)| (k.as_str().to_string(), matrix_value(m, p))).collect();
    json!({
        "name": b.name,
        "kind": b.kind.as_str(),
        "dimension": b.dim,
        "basis": names_value(&b.basis),
        "parameters": names_value(p),
        "operations": ops,
        "maps": maps,
    })
}

fn family_value(family: &[MatrixS], basis: &[String], params: &[String]) -> Value {
    Value::Object(family.iter().zip(basis).map(|(m, n)| (n.clone(), matrix_value(m, params))).collect())
}

pub fn representation_to_value(r: &RepresentationBundle) -> Value {
    let a = &r.algebra;
    let p = &a.parameters;
    let mut obj = Map::new();
    obj.insert("kind".into(), REPRESENTATION_KIND.into());
    obj.insert("algebra".into(), algebra_to_value(a));
    obj.insert("module_basis".into(), names_value(&r.vbasis));
    obj.insert("module_dimension".into(), r.vdim.into());
    obj.insert("rho".into(), family_value(&r.rho, &a.basis, p));
    if let Some(mu) = &r.mu {
        obj.insert("mu".into(), family_value(mu, &a.basis, p));
    }
    if let Some(nu) = &r.nu {
        obj.insert("nu".into(), family_value(nu, &a.basis, p));
    }
    obj.insert("phi".into(), matrix_value(&r.phi, p));
    obj.insert("psi".into(), matrix_value(&r.psi, p));
    if let Some(vb) = &r.vbracket {
        obj.insert("module_bracket".into(), table_value(vb, &r.vbasis, &r.vbasis, p));
    }
    if let Some(t) = &r.t {
        obj.insert("T".into(), matrix_value(t, p));
    }
    if let Some(w) = &r.weight {
        obj.insert("weight".into(), Value::String(scalar_text(w, p)));
    }
    Value::Object(obj)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

pub fn emit_algebra(b: &AlgebraBundle) -> String {
    pretty(&algebra_to_value(b))
}

pub fn emit_representation(r: &RepresentationBundle) -> String {
    pretty(&representation_to_value(r))
}

pub fn emit(doc: &Document) -> String {
    match doc {
        Document::Algebra(b) => emit_algebra(b),
        Document::Representation(r) => emit_representation(r),
    }
}

// ---------------------------------------------------------------- reports

#[derive(Serialize)]
struct ReportDoc<'a> {
    structure: &'a str,
    parameters: &'a [String],
    verdict: &'static str,
    failing: Vec<&'a str>,
    entries: Vec<EntryDoc<'a>>,
    notes: &'a [String],
}

#[derive(Serialize)]
struct EntryDoc<'a> {
    axiom: &'a str,
    status: &'static str,
    advisory: bool,
    checked: usize,
    failures: usize,
    witnesses: Vec<WitnessDoc<'a>>,
}

#[derive(Serialize)]
struct WitnessDoc<'a> {
    indices: &'a [usize],
    names: &'a [String],
    residual: Vec<String>,
}

/// Machine-readable report, one field per report field.
pub fn report_to_value(r: &ViolationReport) -> Value {
    let doc = ReportDoc {
        structure: &r.structure,
        parameters: &r.parameters,
        verdict: if r.passed() { "pass" } else { "fail" },
        failing: r.failing(),
        entries: r
            .entries
            .iter()
            .map(|e| EntryDoc {
                axiom: &e.axiom,
                status: if e.passed() { "pass" } else { "fail" },
                advisory: e.advisory,
                checked: e.checked,
                failures: e.failures,
                witnesses: e
                    .witnesses
                    .iter()
                    .map(|w| WitnessDoc {
                        indices: &w.indices,
                        names: &w.names,
                        residual: w.residual.iter().map(|c| c.to_text(&r.parameters)).collect(),
                    })
                    .collect(),
            })
            .collect(),
        notes: &r.notes,
    };
    serde_json::to_value(doc).expect("report values serialize")
}

pub fn emit_report(r: &ViolationReport) -> String {
    pretty(&report_to_value(r))
}

// ---------------------------------------------------------------- parsing

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, DocumentError> {
    obj.get(key).ok_or_else(|| field_err(path, format!("missing field `{key}`")))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, DocumentError> {
    v.as_object().ok_or_else(|| field_err(path, "expected an object"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, DocumentError> {
    v.as_str().ok_or_else(|| field_err(path, "expected a string"))
}

fn name_list(v: &Value, path: &str) -> Result<Vec<String>, DocumentError> {
    let arr = v.as_array().ok_or_else(|| field_err(path, "expected a list of names"))?;
    let mut out: Vec<String> = Vec::with_capacity(arr.len());
    for (i, x) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let s = as_str(x, &p)?;
        let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(field_err(&p, format!("`{s}` is not a valid identifier")));
        }
        if out.iter().any(|o| o == s) {
            return Err(field_err(&p, format!("duplicate name `{s}`")));
        }
        out.push(s.to_string());
    }
    Ok(out)
}

fn eval_error(path: &str, e: ScalarError) -> DocumentError {
    DocumentError::Expr { path: path.into(), source: ExprError { offset: 0, kind: ExprErrorKind::Eval(e) } }
}

/// A scalar expression from a string (or a JSON integer).
fn parse_scalar(v: &Value, params: &[String], path: &str) -> Result<Scalar, DocumentError> {
    if let Some(n) = v.as_i64() {
        return Ok(Scalar::from_int(n));
    }
    let text = as_str(v, path)?;
    let e = parse_scalar_expr(text, params).map_err(|source| DocumentError::Expr { path: path.into(), source })?;
    e.eval(params).map_err(|e| eval_error(path, e))
}

/// Scalar-or-vector value while evaluating a linear combination.
enum Lin {
    S(Scalar),
    V(Vector),
}

fn lin_eval(e: &ScalarExpr, params: &[String], basis: &[String], path: &str) -> Result<Lin, DocumentError> {
    let bad = |msg: &str| field_err(path, msg.to_string());
    let rec = |x: &ScalarExpr| lin_eval(x, params, basis, path);
    let ev = |r: Result<Scalar, ScalarError>| r.map_err(|e| eval_error(path, e));
    Ok(match e {
        ScalarExpr::Lit(r) => Lin::S(Scalar::from_rational(r.clone())),
        ScalarExpr::Ident(name) => match basis.iter().position(|b| b == name) {
            Some(k) => Lin::V(crate::linear::unit_vector(basis.len(), k)),
            None => Lin::S(ev(e.eval(params))?),
        },
        ScalarExpr::Neg(a) => match rec(a)? {
            Lin::S(s) => Lin::S(-s),
            Lin::V(v) => Lin::V(crate::linear::vec_neg(&v)),
        },
        ScalarExpr::Add(a, b) | ScalarExpr::Sub(a, b) => {
            let sub = matches!(e, ScalarExpr::Sub(..));
            match (rec(a)?, rec(b)?) {
                (Lin::S(x), Lin::S(y)) => Lin::S(if sub { x - y } else { x + y }),
                (Lin::V(x), Lin::V(y)) => {
                    Lin::V(if sub { crate::linear::vec_sub(&x, &y) } else { crate::linear::vec_add(&x, &y) })
                }
                // a bare zero is allowed next to vectors
                (Lin::V(x), Lin::S(s)) if s.is_zero() => Lin::V(x),
                (Lin::S(s), Lin::V(y)) if s.is_zero() => {
                    Lin::V(if sub { crate::linear::vec_neg(&y) } else { y })
                }
                _ => return Err(bad("cannot add a scalar to a basis element")),
            }
        }
        ScalarExpr::Mul(a, b) => match (rec(a)?, rec(b)?) {
            (Lin::S(x), Lin::S(y)) => Lin::S(x * y),
            (Lin::S(s), Lin::V(v)) | (Lin::V(v), Lin::S(s)) => Lin::V(crate::linear::vec_scale(&s, &v)),
            (Lin::V(_), Lin::V(_)) => return Err(bad("product of two basis elements")),
        },
        ScalarExpr::Div(a, b) => match (rec(a)?, rec(b)?) {
            (Lin::S(x), Lin::S(y)) => Lin::S(ev(x.checked_div(&y))?),
            (Lin::V(v), Lin::S(s)) => Lin::V(crate::linear::vec_scale(&ev(s.inv())?, &v)),
            _ => return Err(bad("division by a basis element")),
        },
        ScalarExpr::Pow(a, k) => match rec(a)? {
            Lin::S(x) => Lin::S(ev(x.pow(*k as i64))?),
            Lin::V(_) if *k == 1 => rec(a)?,
            Lin::V(_) => return Err(bad("power of a basis element")),
        },
    })
}

/// Parse `"coeff*b + …"` into coordinates over `basis`.
pub fn parse_combination(text: &str, basis: &[String], params: &[String]) -> Result<Vector, DocumentError> {
    parse_combination_at(text, basis, params, "expression")
}

fn parse_combination_at(text: &str, basis: &[String], params: &[String], path: &str) -> Result<Vector, DocumentError> {
    let names: Vec<String> = params.iter().chain(basis).cloned().collect();
    let e = parse_scalar_expr(text, &names).map_err(|source| DocumentError::Expr { path: path.into(), source })?;
    match lin_eval(&e, params, basis, path)? {
        Lin::V(v) => Ok(v),
        Lin::S(s) if s.is_zero() => Ok(crate::linear::zero_vector(basis.len())),
        Lin::S(_) => Err(field_err(path, "expected a linear combination of basis elements")),
    }
}

fn parse_table(
    v: &Value,
    in_basis: &[String],
    out_basis: &[String],
    params: &[String],
    path: &str,
) -> Result<StructureTensor, DocumentError> {
    let obj = as_object(v, path)?;
    let mut t = StructureTensor::zero(in_basis.len());
    for (key, val) in obj {
        let p = format!("{path}[\"{key}\"]");
        let (l, r) = key.split_once(',').ok_or_else(|| field_err(&p, "key must have the form `b_i,b_j`"))?;
        let idx = |n: &str| {
            in_basis
                .iter()
                .position(|b| b == n.trim())
                .ok_or_else(|| field_err(&p, format!("unknown basis element `{}`", n.trim())))
        };
        let (i, j) = (idx(l)?, idx(r)?);
        let text = as_str(val, &p)?;
        t.set_product(i, j, &parse_combination_at(text, out_basis, params, &p)?);
    }
    Ok(t)
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, params: &[String], path: &str) -> Result<MatrixS, DocumentError> {
    let arr = v.as_array().ok_or_else(|| field_err(path, "expected a list of rows"))?;
    if arr.len() != rows {
        return Err(field_err(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in arr.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let row = row.as_array().ok_or_else(|| field_err(&rp, "expected a row"))?;
        if row.len() != cols {
            return Err(field_err(&rp, format!("expected {cols} entries, found {}", row.len())));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| parse_scalar(x, params, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if rows == 0 {
        return Ok(MatrixS::zeros(0, cols));
    }
    MatrixS::from_rows(out).map_err(|e| field_err(path, e.to_string()))
}

fn check_disjoint(a: &[String], b: &[String], path: &str) -> Result<(), DocumentError> {
    match a.iter().find(|n| b.contains(n)) {
        Some(n) => Err(field_err(path, format!("`{n}` is both a parameter and a basis name"))),
        None => Ok(()),
    }
}

pub fn algebra_from_value(v: &Value, path: &str) -> Result<AlgebraBundle, DocumentError> {
    let obj = as_object(v, path)?;
    let p = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    let name = as_str(get(obj, "name", path)?, &p("name"))?.to_string();
    let kind_text = as_str(get(obj, "kind", path)?, &p("kind"))?;
    let kind: Kind = kind_text.parse().map_err(|_| field_err(&p("kind"), format!("unknown kind `{kind_text}`")))?;
    let basis = name_list(get(obj, "basis", path)?, &p("basis"))?;
    let params = match obj.get("parameters") {
        Some(x) => name_list(x, &p("parameters"))?,
        None => Vec::new(),
    };
    check_disjoint(&params, &basis, &p("parameters"))?;
    let dim = basis.len();
    if let Some(d) = obj.get("dimension") {
        if d.as_u64() != Some(dim as u64) {
            return Err(field_err(&p("dimension"), format!("does not match the basis length {dim}")));
        }
    }
    let mut b = AlgebraBundle::new(name, kind, basis.clone(), params.clone());
    if let Some(ops) = obj.get("operations") {
        for (k, t) in as_object(ops, &p("operations"))? {
            let op_path = format!("{}.{k}", p("operations"));
            let op: OpName = k.parse().map_err(|_| field_err(&op_path, format!("unknown operation `{k}`")))?;
            b.ops.insert(op, parse_table(t, &basis, &basis, &params, &op_path)?);
        }
    }
    if let Some(maps) = obj.get("maps") {
        for (k, m) in as_object(maps, &p("maps"))? {
            let map_path = format!("{}.{k}", p("maps"));
            let name: MapName = k.parse().map_err(|_| field_err(&map_path, format!("unknown map `{k}`")))?;
            b.maps.insert(name, parse_matrix(m, dim, dim, &params, &map_path)?);
        }
    }
    b.validate()?;
    Ok(b)
}

fn parse_family(v: &Value, a: &AlgebraBundle, vdim: usize, path: &str) -> Result<Vec<MatrixS>, DocumentError> {
    let obj = as_object(v, path)?;
    if let Some(k) = obj.keys().find(|k| !a.basis.contains(k)) {
        return Err(field_err(path, format!("unknown basis element `{k}`")));
    }
    a.basis
        .iter()
        .map(|n| match obj.get(n) {
            Some(m) => parse_matrix(m, vdim, vdim, &a.parameters, &format!("{path}.{n}")),
            None => Ok(MatrixS::zeros(vdim, vdim)),
        })
        .collect()
}

pub fn representation_from_value(v: &Value) -> Result<RepresentationBundle, DocumentError> {
    let obj = as_object(v, "")?;
    let a = algebra_from_value(get(obj, "algebra", "")?, "algebra")?;
    let params = a.parameters.clone();
    let vbasis = name_list(get(obj, "module_basis", "")?, "module_basis")?;
    check_disjoint(&params, &vbasis, "module_basis")?;
    let m = vbasis.len();
    if let Some(d) = obj.get("module_dimension") {
        if d.as_u64() != Some(m as u64) {
            return Err(field_err("module_dimension", format!("does not match the module basis length {m}")));
        }
    }
    let rho = parse_family(get(obj, "rho", "")?, &a, m, "rho")?;
    let phi = match obj.get("phi") {
        Some(x) => parse_matrix(x, m, m, &params, "phi")?,
        None => MatrixS::identity(m),
    };
    let psi = match obj.get("psi") {
        Some(x) => parse_matrix(x, m, m, &params, "psi")?,
        None => MatrixS::identity(m),
    };
    let mut r = RepresentationBundle::new(a, vbasis.clone(), rho, phi, psi);
    if let Some(x) = obj.get("mu") {
        r.mu = Some(parse_family(x, &r.algebra, m, "mu")?);
    }
    if let Some(x) = obj.get("nu") {
        r.nu = Some(parse_family(x, &r.algebra, m, "nu")?);
    }
    if let Some(x) = obj.get("module_bracket") {
        r.vbracket = Some(parse_table(x, &vbasis, &vbasis, &params, "module_bracket")?);
    }
    if let Some(x) = obj.get("T") {
        r.t = Some(parse_matrix(x, r.algebra.dim, m, &params, "T")?);
    }
    if let Some(x) = obj.get("weight") {
        r.weight = Some(parse_scalar(x, &params, "weight")?);
    }
    r.validate()?;
    Ok(r)
}

pub fn parse_value(v: &Value) -> Result<Document, DocumentError> {
    let kind = v.get("kind").and_then(Value::as_str);
    if kind == Some(REPRESENTATION_KIND) {
        Ok(Document::Representation(representation_from_value(v)?))
    } else {
        Ok(Document::Algebra(algebra_from_value(v, "")?))
    }
}

pub fn parse(text: &str) -> Result<Document, DocumentError> {
    let v: Value = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
    parse_value(&v)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraBundle, DocumentError> {
    match parse(text)? {
        Document::Algebra(b) => Ok(b),
        Document::Representation(_) => Err(field_err("kind", "expected an algebra document")),
    }
}

pub fn parse_representation(text: &str) -> Result<RepresentationBundle, DocumentError> {
    match parse(text)? {
        Document::Representation(r) => Ok(r),
        Document::Algebra(_) => Err(field_err("kind", "expected a representation document")),
    }
}

/// A scalar expression over the given parameters.
pub fn parse_scalar_text(text: &str, params: &[String]) -> Result<Scalar, DocumentError> {
    parse_scalar(&Value::String(text.to_string()), params, "expression")
}

/// A square matrix given either as JSON rows of scalar strings or as a
/// comma-separated list of diagonal entries.
pub fn parse_matrix_text(text: &str, dim: usize, params: &[String], label: &str) -> Result<MatrixS, DocumentError> {
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| field_err(label, e.to_string()))?;
        return parse_matrix(&v, dim, dim, params, label);
    }
    let entries: Vec<&str> = text.split(',').collect();
    if entries.len() != dim {
        return Err(field_err(label, format!("expected {dim} diagonal entries, found {}", entries.len())));
    }
    let diag = entries
        .iter()
        .enumerate()
        .map(|(i, e)| parse_scalar(&Value::String(e.trim().to_string()), params, &format!("{label}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixS::diagonal(diag))
}

// ---------------------------------------------------------------- specialization

/// Substitute rational values for named parameters. The parameter list is
/// kept so the remaining names stay aligned with their indices.
pub fn specialize_algebra(b: &AlgebraBundle, values: &BTreeMap<String, Rational>) -> Result<AlgebraBundle, DocumentError> {
    let idx = index_values(&b.parameters, values)?;
    let sub = |s: &Scalar| s.substitute(&idx);
    let mut out = b.clone();
    for t in out.ops.values_mut() {
        *t = try_map_tensor(t, &sub)?;
    }
    for m in out.maps.values_mut() {
        *m = try_map_matrix(m, &sub)?;
    }
    Ok(out)
}

pub fn specialize_representation(
    r: &RepresentationBundle,
    values: &BTreeMap<String, Rational>,
) -> Result<RepresentationBundle, DocumentError> {
    let idx = index_values(&r.algebra.parameters, values)?;
    let sub = |s: &Scalar| s.substitute(&idx);
    let fam = |f: &[MatrixS]| f.iter().map(|m| try_map_matrix(m, &sub)).collect::<Result<Vec<_>, _>>();
    let mut out = r.clone();
    out.algebra = specialize_algebra(&r.algebra, values)?;
    out.rho = fam(&r.rho)?;
    out.mu = r.mu.as_deref().map(fam).transpose()?;
    out.nu = r.nu.as_deref().map(fam).transpose()?;
    out.phi = try_map_matrix(&r.phi, &sub)?;
    out.psi = try_map_matrix(&r.psi, &sub)?;
    out.vbracket = r.vbracket.as_ref().map(|t| try_map_tensor(t, &sub)).transpose()?;
    out.t = r.t.as_ref().map(|m| try_map_matrix(m, &sub)).transpose()?;
    out.weight = r.weight.as_ref().map(|w| sub(w).map_err(|e| eval_error("weight", e))).transpose()?;
    Ok(out)
}

fn index_values(
    params: &[String],
    values: &BTreeMap<String, Rational>,
) -> Result<BTreeMap<usize, Rational>, DocumentError> {
    values
        .iter()
        .map(|(k, v)| match params.iter().position(|p| p == k) {
            Some(i) => Ok((i, v.clone())),
            None => Err(field_err("parameters", format!("unknown parameter `{k}`"))),
        })
        .collect()
}

fn try_map_tensor(
    t: &StructureTensor,
    f: &impl Fn(&Scalar) -> Result<Scalar, ScalarError>,
) -> Result<StructureTensor, DocumentError> {
    let mut out = StructureTensor::zero(t.dim());
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in t.entries(i, j) {
                out.set(i, j, *k, f(c).map_err(|e| eval_error("operations", e))?);
            }
        }
    }
    Ok(out)
}

fn try_map_matrix(
    m: &MatrixS,
    f: &impl Fn(&Scalar) -> Result<Scalar, ScalarError>,
) -> Result<MatrixS, DocumentError> {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, f(m.get(i, j)).map_err(|e| eval_error("maps", e))?);
        }
    }
    Ok(out)
}
