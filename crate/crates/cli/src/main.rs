//! `bihom`: check and construct algebras stored as JSON bundle documents.
//!
//! Exit status: 0 when every checked axiom holds, 1 when some axiom fails,
//! 2 on unreadable input, shape errors and failed preconditions.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bihom_core::catalog;
use bihom_core::construct::{self, ConstructError, PI_READING_NOTE};
use bihom_core::document::{self, Document};
use bihom_core::model::{AlgebraBundle, Kind, RepresentationBundle};
use bihom_core::scalar::{Rational, Scalar};
use bihom_core::verify::{CheckOptions, Verifier};
use bihom_core::ViolationReport;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bihom", version, about = "Exact checks and constructions for BiHom-type algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms of a bundle document.
    Check(CheckArgs),
    /// Build a new bundle from one or more input documents.
    Construct(ConstructArgs),
    /// Emit a built-in bundle.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ReportFlags {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Stop after the first failing axiom.
    #[arg(long)]
    fail_fast: bool,
    /// Witnesses kept per failing axiom.
    #[arg(long, default_value_t = 16)]
    witness_cap: usize,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Algebra kind, or one of rota-baxter, structure-maps, bihom-associative,
    /// lie-representation, module-algebra, o-operator, post-lie-representation.
    #[arg(long)]
    kind: Option<String>,
    /// Weight for rota-baxter checks.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Specialize a parameter, e.g. `--param lambda=2`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[command(flatten)]
    report: ReportFlags,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction name; `bihom construct list` prints them.
    construction: String,
    #[arg(long = "input", short = 'i')]
    inputs: Vec<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Twist maps on the algebra: JSON rows or comma-separated diagonal.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Twist maps on the module.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    /// Output document path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    report: ReportFlags,
}

#[derive(Args)]
struct CatalogArgs {
    name: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Base algebra for splitting-rb: a catalog name or a document path.
    #[arg(long)]
    base: Option<String>,
    /// Splitting of the basis, e.g. `X,H|Y` (names or indices).
    #[arg(long)]
    partition: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

/// Input or precondition failure; always exit 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

const CONSTRUCTIONS: &[(&str, &str)] = &[
    ("sub-adjacent", "post-Lie -> BiHom-Lie"),
    ("admissible-product", "post-Lie -> product x.y = x>y + 1/2[x,y]"),
    ("commutator", "product -> BiHom-Lie"),
    ("black", "post-Lie -> post-Lie (-[,], > + [,])"),
    ("double-bracket", "post-Lie -> BiHom-Lie on A x A"),
    ("flip", "BiHom-Lie -> candidate post-Lie with x>y = [y,x]"),
    ("lr-to-post", "BiHom-LR -> post-Lie"),
    ("tridend-to-post", "tri-dendriform -> post-Lie"),
    ("tridend-to-assoc", "tri-dendriform -> product"),
    ("rota-baxter-induced", "BiHom-Lie with R, --weight -> post-Lie"),
    ("twist-lie", "Lie, --alpha --beta -> BiHom-Lie"),
    ("twist-post-lie", "post-Lie, --alpha --beta -> BiHom-post-Lie"),
    ("adjoint-representation", "BiHom-Lie -> representation"),
    ("adjoint-module-algebra", "BiHom-Lie -> module algebra"),
    ("adjoint-post-representation", "post-Lie -> post-Lie representation"),
    ("semidirect-lie", "representation -> BiHom-Lie on A + V"),
    ("semidirect-module", "module algebra -> BiHom-Lie on A + V"),
    ("semidirect-post-lie", "post-Lie representation -> post-Lie on A + V"),
    ("o-operator-induced", "representation with T -> post-Lie on V"),
    ("induced-on-image", "representation with injective T -> post-Lie on T(V)"),
    ("compatible", "representation with invertible T -> post-Lie on A"),
    ("pi-representation", "post-Lie representation -> representation of the sub-adjacent algebra"),
    ("twist-lie-representation", "representation, --alpha --beta --phi --psi"),
    ("twist-post-lie-representation", "post-Lie representation, --alpha --beta --phi --psi"),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Catalog(a) => cmd_catalog(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_document(path: &Path) -> Result<Document, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    document::parse(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn parse_bindings(raw: &[String]) -> Result<BTreeMap<String, Rational>, Fail> {
    let mut out = BTreeMap::new();
    for b in raw {
        let (name, value) = b.split_once('=').ok_or_else(|| Fail(format!("--param `{b}`: expected NAME=VALUE")))?;
        let v = document::parse_scalar_text(value.trim(), &[])
            .map_err(|e| Fail(format!("--param {name}: {e}")))?
            .as_rational()
            .ok_or_else(|| Fail(format!("--param {name}: value must be a rational number")))?;
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

fn specialize(doc: Document, values: &BTreeMap<String, Rational>) -> Result<Document, Fail> {
    if values.is_empty() {
        return Ok(doc);
    }
    Ok(match doc {
        Document::Algebra(b) => Document::Algebra(document::specialize_algebra(&b, values)?),
        Document::Representation(r) => Document::Representation(document::specialize_representation(&r, values)?),
    })
}

fn verifier(flags: &ReportFlags) -> Verifier {
    Verifier::new(CheckOptions { witness_cap: flags.witness_cap, fail_fast: flags.fail_fast, ..CheckOptions::default() })
}

fn render(report: &ViolationReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => document::emit_report(report),
    }
}

fn exit_for(report: &ViolationReport) -> u8 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn weight_of(raw: Option<&str>, params: &[String]) -> Result<Option<Scalar>, Fail> {
    raw.map(|w| document::parse_scalar_text(w, params).map_err(|e| Fail(format!("--weight: {e}")))).transpose()
}

// ---------------------------------------------------------------- check

fn check_algebra(v: &Verifier, b: &AlgebraBundle, kind: Option<&str>, weight: Option<Scalar>) -> Result<ViolationReport, Fail> {
    Ok(match kind {
        None => v.check_kind(b, None)?,
        Some("rota-baxter") => {
            let w = weight.ok_or_else(|| Fail("rota-baxter checks need --weight".into()))?;
            v.check_rota_baxter(b, &w)?
        }
        Some("structure-maps") => v.check_structure_maps(b)?,
        Some("bihom-associative") => v.check_bihom_associative(b)?,
        Some(k) => {
            let kind: Kind = k.parse().map_err(|_| Fail(format!("unknown kind `{k}` for an algebra document")))?;
            v.check_kind(b, Some(kind))?
        }
    })
}

fn default_rep_check(r: &RepresentationBundle) -> &'static str {
    if r.mu.is_some() || r.nu.is_some() {
        "post-lie-representation"
    } else if r.t.is_some() {
        "o-operator"
    } else if r.vbracket.is_some() {
        "module-algebra"
    } else {
        "lie-representation"
    }
}

fn check_representation(v: &Verifier, r: &RepresentationBundle, kind: Option<&str>) -> Result<ViolationReport, Fail> {
    Ok(match kind.unwrap_or_else(|| default_rep_check(r)) {
        "lie-representation" => v.check_lie_representation(r)?,
        "module-algebra" => v.check_module_k_algebra(r)?,
        "o-operator" => v.check_o_operator(r)?,
        "post-lie-representation" => v.check_post_lie_representation(r)?,
        k => return Err(Fail(format!("unknown kind `{k}` for a representation document"))),
    })
}

fn check_document(v: &Verifier, doc: &Document, kind: Option<&str>, weight: Option<Scalar>) -> Result<ViolationReport, Fail> {
    match doc {
        Document::Algebra(b) => check_algebra(v, b, kind, weight),
        Document::Representation(r) => check_representation(v, r, kind),
    }
}

fn cmd_check(a: CheckArgs) -> Result<u8, Fail> {
    let doc = specialize(read_document(&a.file)?, &parse_bindings(&a.params)?)?;
    let params = match &doc {
        Document::Algebra(b) => b.parameters.clone(),
        Document::Representation(r) => r.algebra.parameters.clone(),
    };
    let weight = weight_of(a.weight.as_deref(), &params)?;
    let report = check_document(&verifier(&a.report), &doc, a.kind.as_deref(), weight)?;
    print!("{}", render(&report, a.report.format));
    Ok(exit_for(&report))
}

// ---------------------------------------------------------------- construct

struct Inputs {
    docs: Vec<Document>,
}

impl Inputs {
    fn algebra(&self) -> Result<&AlgebraBundle, Fail> {
        match self.docs.first() {
            Some(Document::Algebra(b)) => Ok(b),
            Some(Document::Representation(_)) => Err(Fail("this construction takes an algebra document".into())),
            None => Err(Fail("missing --input".into())),
        }
    }

    fn representation(&self) -> Result<&RepresentationBundle, Fail> {
        match self.docs.first() {
            Some(Document::Representation(r)) => Ok(r),
            Some(Document::Algebra(_)) => Err(Fail("this construction takes a representation document".into())),
            None => Err(Fail("missing --input".into())),
        }
    }
}

fn required_matrix(raw: &Option<String>, flag: &str, dim: usize, params: &[String]) -> Result<bihom_core::MatrixS, Fail> {
    let text = raw.as_deref().ok_or_else(|| Fail(format!("this construction needs --{flag}")))?;
    Ok(document::parse_matrix_text(text, dim, params, &format!("--{flag}"))?)
}

fn describe(e: ConstructError) -> Fail {
    Fail(e.to_string())
}

fn construct_document(a: &ConstructArgs, inputs: &Inputs) -> Result<Document, Fail> {
    use construct::*;
    let alg = |f: fn(&AlgebraBundle) -> Result<AlgebraBundle, ConstructError>| -> Result<Document, Fail> {
        Ok(Document::Algebra(f(inputs.algebra()?).map_err(describe)?))
    };
    let rep_to_alg = |f: fn(&RepresentationBundle) -> Result<AlgebraBundle, ConstructError>| -> Result<Document, Fail> {
        Ok(Document::Algebra(f(inputs.representation()?).map_err(describe)?))
    };
    let alg_to_rep = |f: fn(&AlgebraBundle) -> Result<RepresentationBundle, ConstructError>| -> Result<Document, Fail> {
        Ok(Document::Representation(f(inputs.algebra()?).map_err(describe)?))
    };
    match a.construction.as_str() {
        "sub-adjacent" => alg(sub_adjacent),
        "admissible-product" => alg(admissible_product),
        "commutator" => alg(commutator_bihom_lie),
        "black" => alg(black_transform),
        "double-bracket" => alg(double_bracket),
        "flip" => alg(flip_post_lie),
        "lr-to-post" => alg(lr_to_post),
        "tridend-to-post" => alg(tridend_to_post),
        "tridend-to-assoc" => alg(tridend_to_assoc),
        "rota-baxter-induced" => {
            let b = inputs.algebra()?;
            let w = weight_of(a.weight.as_deref(), &b.parameters)?
                .ok_or_else(|| Fail("rota-baxter-induced needs --weight".into()))?;
            Ok(Document::Algebra(rota_baxter_induced(b, &w).map_err(describe)?))
        }
        "twist-lie" | "twist-post-lie" => {
            let b = inputs.algebra()?;
            let am = required_matrix(&a.alpha, "alpha", b.dim, &b.parameters)?;
            let bm = required_matrix(&a.beta, "beta", b.dim, &b.parameters)?;
            let out = if a.construction == "twist-lie" { twist_lie(b, &am, &bm) } else { twist_post_lie(b, &am, &bm) };
            Ok(Document::Algebra(out.map_err(describe)?))
        }
        "adjoint-representation" => {
            Ok(Document::Representation(bihom_core::verify::adjoint_representation(inputs.algebra()?)?))
        }
        "adjoint-module-algebra" => {
            Ok(Document::Representation(bihom_core::verify::adjoint_module_algebra(inputs.algebra()?)?))
        }
        "adjoint-post-representation" => alg_to_rep(adjoint_post_representation),
        "semidirect-lie" => rep_to_alg(semidirect_lie),
        "semidirect-module" => rep_to_alg(semidirect_module_algebra),
        "semidirect-post-lie" => rep_to_alg(semidirect_post_lie),
        "o-operator-induced" => rep_to_alg(o_operator_induced),
        "induced-on-image" => rep_to_alg(induced_on_image),
        "compatible" => rep_to_alg(compatible_from_invertible_o),
        "pi-representation" => Ok(Document::Representation(pi_representation(inputs.representation()?).map_err(describe)?)),
        "twist-lie-representation" | "twist-post-lie-representation" => {
            let r = inputs.representation()?;
            let p = &r.algebra.parameters;
            let am = required_matrix(&a.alpha, "alpha", r.algebra.dim, p)?;
            let bm = required_matrix(&a.beta, "beta", r.algebra.dim, p)?;
            let f = required_matrix(&a.phi, "phi", r.vdim, p)?;
            let g = required_matrix(&a.psi, "psi", r.vdim, p)?;
            let out = if a.construction == "twist-lie-representation" {
                twist_lie_representation(r, &am, &bm, &f, &g)
            } else {
                twist_post_lie_representation(r, &am, &bm, &f, &g)
            };
            Ok(Document::Representation(out.map_err(describe)?))
        }
        other => Err(Fail(format!("unknown construction `{other}` (try `bihom construct list`)"))),
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Report goes to stdout when the document goes to a file, else stderr.
fn print_report(out: &Option<PathBuf>, text: &str) {
    if out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

fn cmd_construct(a: ConstructArgs) -> Result<u8, Fail> {
    if a.construction == "list" {
        for (name, what) in CONSTRUCTIONS {
            println!("{name:<32} {what}");
        }
        return Ok(0);
    }
    let bindings = parse_bindings(&a.params)?;
    let docs = a
        .inputs
        .iter()
        .map(|p| read_document(p).and_then(|d| specialize(d, &bindings)))
        .collect::<Result<Vec<_>, _>>()?;
    let inputs = Inputs { docs };
    let output = construct_document(&a, &inputs)?;
    let mut report = check_document(&verifier(&a.report), &output, None, None)?;
    if a.construction == "pi-representation" {
        report.notes.push(PI_READING_NOTE.to_string());
    }
    write_output(&a.out, &document::emit(&output))?;
    print_report(&a.out, &render(&report, a.report.format));
    Ok(exit_for(&report))
}

// ---------------------------------------------------------------- catalog

fn parse_partition(text: &str, basis: &[String]) -> Result<(Vec<usize>, Vec<usize>), Fail> {
    let (l, r) = text.split_once('|').ok_or_else(|| Fail("--partition: expected `A|B`".into()))?;
    let side = |s: &str| -> Result<Vec<usize>, Fail> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                basis
                    .iter()
                    .position(|b| b == x)
                    .or_else(|| x.parse::<usize>().ok().filter(|&i| i < basis.len()))
                    .ok_or_else(|| Fail(format!("--partition: unknown basis element `{x}`")))
            })
            .collect()
    };
    Ok((side(l)?, side(r)?))
}

fn cmd_catalog(a: CatalogArgs) -> Result<u8, Fail> {
    if a.list || a.name.is_none() {
        for n in catalog::NAMES.iter().chain(std::iter::once(&"splitting-rb")) {
            println!("{n}");
        }
        return Ok(0);
    }
    let name = a.name.as_deref().expect("checked above");
    let bundle = if name == "splitting-rb" {
        let base_name = a.base.as_deref().unwrap_or("sl2");
        let base = match catalog::emit(base_name) {
            Some(b) => b,
            None => match read_document(Path::new(base_name))? {
                Document::Algebra(b) => b,
                Document::Representation(_) => return Err(Fail("--base must be an algebra".into())),
            },
        };
        let partition = a.partition.as_deref().ok_or_else(|| Fail("splitting-rb needs --partition".into()))?;
        let (first, second) = parse_partition(partition, &base.basis)?;
        let weight = weight_of(Some(a.weight.as_deref().unwrap_or("1")), &base.parameters)?.expect("given");
        catalog::splitting_rb(&base, &first, &second, &weight).map_err(describe)?
    } else {
        catalog::emit(name).ok_or_else(|| Fail(format!("unknown catalog entry `{name}`")))?
    };
    let doc = specialize(Document::Algebra(bundle), &parse_bindings(&a.params)?)?;
    write_output(&a.out, &document::emit(&doc))?;
    Ok(0)
}
